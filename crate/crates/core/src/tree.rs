//! Node-labelled trees used as layouts and as representation hosts.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::graph::{fresh_label, SimpleGraph};

/// An undirected graph over labelled nodes that is meant to be a tree.
/// Acyclicity is not enforced on construction; see [`Tree::is_tree`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tree {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
}

impl Tree {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_graph(g: &SimpleGraph) -> Self {
        let mut t = Self::new();
        for l in g.labels() {
            t.add_node(l);
        }
        for (a, b) in g.edges() {
            t.add_edge(a, b);
        }
        t
    }

    pub fn to_graph(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new();
        for l in &self.labels {
            g.add_vertex(l);
        }
        for (a, b) in self.edges() {
            g.add_edge_idx(a, b);
        }
        g
    }

    /// Adds a node if absent and returns its index.
    pub fn add_node(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), i);
        self.adj.push(Vec::new());
        i
    }

    /// Adds a node under a label derived from `base` that is not yet taken.
    pub fn add_fresh_node(&mut self, base: &str) -> usize {
        let mut label = base.to_string();
        while self.index.contains_key(&label) {
            label.push('\'');
        }
        self.add_node(&label)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert_ne!(a, b, "loop in tree");
        if !self.adj[a].contains(&b) {
            self.adj[a].push(b);
            self.adj[b].push(a);
        }
    }

    pub fn add_edge_labels(&mut self, u: &str, v: &str) {
        let a = self.add_node(u);
        let b = self.add_node(v);
        self.add_edge(a, b);
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        self.adj[a].retain(|&x| x != b);
        self.adj[b].retain(|&x| x != a);
    }

    /// Replaces edge `ab` by `a–s–b` for a fresh node `s`, returned.
    pub fn subdivide(&mut self, a: usize, b: usize, base: &str) -> usize {
        assert!(self.adj[a].contains(&b), "subdivide: no edge {}-{}", self.labels[a], self.labels[b]);
        self.remove_edge(a, b);
        let s = self.add_fresh_node(base);
        self.add_edge(a, s);
        self.add_edge(s, b);
        s
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_leaf(&self, i: usize) -> bool {
        self.adj[i].len() <= 1
    }

    /// 𝓛(T): the nodes of degree at most 1.
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.order()).filter(|&i| self.is_leaf(i)).collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(a, nb)| nb.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Connected, acyclic and non-empty.
    pub fn is_tree(&self) -> bool {
        let n = self.order();
        if n == 0 || self.size() != n - 1 {
            return false;
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Parent pointers and depths from node 0. Only meaningful on trees.
    pub fn rooted(&self) -> RootedTree {
        let n = self.order();
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0; n];
        if n > 0 {
            let mut seen = vec![false; n];
            seen[0] = true;
            let mut queue = VecDeque::from([0]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = v;
                        depth[w] = depth[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        RootedTree { parent, depth }
    }

    /// Nodes of the unique path between `a` and `b`, from `a` to `b`.
    pub fn path(&self, a: usize, b: usize) -> Vec<usize> {
        self.rooted().path(a, b)
    }

    /// Copy without the nodes in `remove`; labels of the rest are kept.
    pub fn without_nodes(&self, remove: &HashSet<usize>) -> (Tree, Vec<Option<usize>>) {
        let mut t = Tree::new();
        let mut map = vec![None; self.order()];
        for v in 0..self.order() {
            if !remove.contains(&v) {
                map[v] = Some(t.add_node(&self.labels[v]));
            }
        }
        for (a, b) in self.edges() {
            if let (Some(x), Some(y)) = (map[a], map[b]) {
                t.add_edge(x, y);
            }
        }
        (t, map)
    }

    /// Appends a copy of `other`, renaming clashing labels. Returns the
    /// index of every node of `other` in `self`.
    pub fn absorb(&mut self, other: &Tree) -> Vec<usize> {
        let mut taken: HashSet<String> = self.labels.iter().cloned().collect();
        taken.extend(other.labels().iter().cloned());
        let mut map = Vec::with_capacity(other.order());
        for l in other.labels() {
            let label = if self.index.contains_key(l) {
                fresh_label(&taken, l)
            } else {
                l.clone()
            };
            taken.insert(label.clone());
            map.push(self.add_node(&label));
        }
        for (a, b) in other.edges() {
            self.add_edge(map[a], map[b]);
        }
        map
    }
}

#[derive(Debug, Clone)]
pub struct RootedTree {
    pub parent: Vec<usize>,
    pub depth: Vec<usize>,
}

impl RootedTree {
    pub fn path(&self, mut a: usize, mut b: usize) -> Vec<usize> {
        let mut front = Vec::new();
        let mut back = Vec::new();
        while self.depth[a] > self.depth[b] {
            front.push(a);
            a = self.parent[a];
        }
        while self.depth[b] > self.depth[a] {
            back.push(b);
            b = self.parent[b];
        }
        while a != b {
            front.push(a);
            back.push(b);
            a = self.parent[a];
            b = self.parent[b];
        }
        front.push(a);
        front.extend(back.into_iter().rev());
        front
    }

    pub fn distance(&self, a: usize, b: usize) -> usize {
        self.path(a, b).len() - 1
    }
}

/// Fixed-width bitset over tree nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct NodeSet(Vec<u64>);

impl NodeSet {
    pub fn new(n: usize) -> Self {
        NodeSet(vec![0; n.div_ceil(64).max(1)])
    }

    pub fn from_nodes(n: usize, nodes: &[usize]) -> Self {
        let mut s = Self::new(n);
        for &v in nodes {
            s.insert(v);
        }
        s
    }

    pub fn insert(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    pub fn shared(&self, other: &NodeSet) -> usize {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter_common<'a>(&'a self, other: &'a NodeSet) -> impl Iterator<Item = usize> + 'a {
        self.0.iter().zip(&other.0).enumerate().flat_map(|(w, (a, b))| {
            let mut bits = a & b;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + i)
            })
        })
    }
}
