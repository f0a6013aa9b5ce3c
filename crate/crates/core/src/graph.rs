//! Labelled simple graphs and multigraphs, plus the classical decompositions
//! the recognition pipeline is built from: blocks, twin classes, line graphs
//! and a small exhaustive isomorphism test.
//!
//! Vertices carry opaque string labels. Internally every vertex also has a
//! dense index (its insertion position); indices never appear in reports.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};

/// Largest order accepted by [`is_isomorphic`].
pub const ISOMORPHISM_ORDER_CAP: usize = 12;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimpleGraph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<BTreeSet<usize>>,
}

impl SimpleGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from `(u, v)` label pairs. Panics on a loop; meant for
    /// literals in tests and generators.
    pub fn from_edges<S: AsRef<str>>(edges: &[(S, S)]) -> Self {
        let mut g = Self::new();
        for (u, v) in edges {
            g.add_edge(u.as_ref(), v.as_ref()).expect("loop in edge literal");
        }
        g
    }

    /// Adds a vertex if absent and returns its index.
    pub fn add_vertex(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), i);
        self.adj.push(BTreeSet::new());
        i
    }

    /// Adds the edge `uv`, declaring missing endpoints. Returns `false` when
    /// the edge was already present.
    pub fn add_edge(&mut self, u: &str, v: &str) -> Result<bool> {
        if u == v {
            return Err(Error::LoopEdge(u.to_string()));
        }
        let a = self.add_vertex(u);
        let b = self.add_vertex(v);
        Ok(self.add_edge_idx(a, b))
    }

    pub fn add_edge_idx(&mut self, a: usize, b: usize) -> bool {
        assert_ne!(a, b, "loop edge");
        let fresh = self.adj[a].insert(b);
        self.adj[b].insert(a);
        fresh
    }

    pub fn remove_edge_idx(&mut self, a: usize, b: usize) -> bool {
        let had = self.adj[a].remove(&b);
        self.adj[b].remove(&a);
        had
    }

    /// n(G)
    pub fn order(&self) -> usize {
        self.labels.len()
    }

    /// m(G)
    pub fn size(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
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

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[i].iter().copied()
    }

    pub fn neighbor_set(&self, i: usize) -> &BTreeSet<usize> {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }

    pub fn has_edge_labels(&self, u: &str, v: &str) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(a), Some(b)) => self.has_edge(a, b),
            _ => false,
        }
    }

    /// Edges as index pairs `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for (a, nb) in self.adj.iter().enumerate() {
            for &b in nb.range(a + 1..) {
                out.push((a, b));
            }
        }
        out
    }

    pub fn closed_neighborhood(&self, i: usize) -> BTreeSet<usize> {
        let mut set = self.adj[i].clone();
        set.insert(i);
        set
    }

    /// The subgraph induced by `vertices`, keeping labels. Vertices appear
    /// in the order given.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> SimpleGraph {
        let mut g = SimpleGraph::new();
        for &v in vertices {
            g.add_vertex(&self.labels[v]);
        }
        for (i, &v) in vertices.iter().enumerate() {
            for (j, &w) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(v, w) {
                    g.add_edge_idx(i, j);
                }
            }
        }
        g
    }

    pub fn induced_by_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<SimpleGraph> {
        let idx = labels
            .iter()
            .map(|l| {
                self.index_of(l.as_ref())
                    .ok_or_else(|| Error::UnknownVertex(l.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.induced_subgraph(&idx))
    }

    /// Connected components, each sorted by index; components ordered by
    /// their smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.order() > 0 && self.components().len() == 1
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        self.adj.iter().all(|nb| nb.len() + 1 == n)
    }

    /// L(G), with the vertex for edge `ab` labelled `a-b`.
    pub fn line_graph(&self) -> SimpleGraph {
        line_graph(&Multigraph::from_simple(self))
    }

    // Generators. Vertex labels are decimal indices unless noted.

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge_idx(a, b);
            }
        }
        g
    }

    pub fn empty(n: usize) -> Self {
        let mut g = Self::new();
        for i in 0..n {
            g.add_vertex(&i.to_string());
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for a in 1..n {
            g.add_edge_idx(a - 1, a);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n >= 3 {
            g.add_edge_idx(0, n - 1);
        }
        g
    }

    pub fn star(leaves: usize) -> Self {
        let mut g = Self::empty(leaves + 1);
        for a in 1..=leaves {
            g.add_edge_idx(0, a);
        }
        g
    }

    /// K_{a,b} with parts labelled `a0..` and `b0..`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Self::new();
        for i in 0..a {
            g.add_vertex(&format!("a{i}"));
        }
        for j in 0..b {
            g.add_vertex(&format!("b{j}"));
        }
        for i in 0..a {
            for j in 0..b {
                g.add_edge_idx(i, a + j);
            }
        }
        g
    }

    pub fn petersen() -> Self {
        let mut g = Self::empty(10);
        for i in 0..5 {
            g.add_edge_idx(i, (i + 1) % 5);
            g.add_edge_idx(i, i + 5);
            g.add_edge_idx(5 + i, 5 + (i + 2) % 5);
        }
        g
    }
}

/// A loop-free multigraph. Parallel edges are distinct and carry a
/// multiplicity index in their line-graph label.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Multigraph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_simple(g: &SimpleGraph) -> Self {
        let mut m = Self::new();
        for l in g.labels() {
            m.add_vertex(l);
        }
        for (a, b) in g.edges() {
            m.add_edge_idx(a, b);
        }
        m
    }

    pub fn add_vertex(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), i);
        i
    }

    /// Adds one more `uv` edge and returns its edge id.
    pub fn add_edge(&mut self, u: &str, v: &str) -> Result<usize> {
        if u == v {
            return Err(Error::LoopEdge(u.to_string()));
        }
        let a = self.add_vertex(u);
        let b = self.add_vertex(v);
        Ok(self.add_edge_idx(a, b))
    }

    pub fn add_edge_idx(&mut self, a: usize, b: usize) -> usize {
        assert_ne!(a, b, "loop edge");
        self.edges.push((a.min(b), a.max(b)));
        self.edges.len() - 1
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn size(&self) -> usize {
        self.edges.len()
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

    /// Endpoints of every edge, indexed by edge id.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn has_parallel_edges(&self) -> bool {
        let mut seen = HashSet::new();
        self.edges.iter().any(|e| !seen.insert(*e))
    }

    /// Labels of the line-graph vertices, one per edge id: `a-b` for the
    /// first copy of an edge and `a-b#k` for its k-th parallel copy.
    pub fn edge_labels(&self) -> Vec<String> {
        let mut copies: HashMap<(usize, usize), usize> = HashMap::new();
        let mut used = HashSet::new();
        let mut out = Vec::with_capacity(self.edges.len());
        for &(a, b) in &self.edges {
            let k = copies.entry((a, b)).or_insert(0);
            let base = if *k == 0 {
                format!("{}-{}", self.labels[a], self.labels[b])
            } else {
                format!("{}-{}#{}", self.labels[a], self.labels[b], k)
            };
            *k += 1;
            let label = fresh_label(&used, &base);
            used.insert(label.clone());
            out.push(label);
        }
        out
    }

    /// The simple graph with the same edges, or `None` if some edge is
    /// repeated.
    pub fn to_simple(&self) -> Option<SimpleGraph> {
        let mut g = SimpleGraph::new();
        for l in &self.labels {
            g.add_vertex(l);
        }
        for &(a, b) in &self.edges {
            if !g.add_edge_idx(a, b) {
                return None;
            }
        }
        Some(g)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.order();
        if n == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }
}

/// Appends `'` until `base` is not in `used`.
pub(crate) fn fresh_label(used: &HashSet<String>, base: &str) -> String {
    let mut label = base.to_string();
    while used.contains(&label) {
        label.push('\'');
    }
    label
}

/// L(H): one vertex per edge of `h` (parallel edges stay distinct), two
/// vertices adjacent iff their edges share an endpoint.
pub fn line_graph(h: &Multigraph) -> SimpleGraph {
    let mut g = SimpleGraph::new();
    for l in h.edge_labels() {
        g.add_vertex(&l);
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); h.order()];
    for (e, &(a, b)) in h.edges().iter().enumerate() {
        incident[a].push(e);
        incident[b].push(e);
    }
    for edges_at in &incident {
        for (i, &e) in edges_at.iter().enumerate() {
            for &f in &edges_at[i + 1..] {
                g.add_edge_idx(e, f);
            }
        }
    }
    g
}

/// Blocks (maximal 2-connected subgraphs and bridges) with the block-cut
/// tree. Isolated vertices form singleton blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Vertex sets, each sorted by index.
    pub blocks: Vec<Vec<usize>>,
    /// Edges of every block, parallel to `blocks`.
    pub block_edges: Vec<Vec<(usize, usize)>>,
    pub cut_vertices: Vec<usize>,
    /// Block-cut tree edges as `(block id, cut vertex)`.
    pub block_cut_tree: Vec<(usize, usize)>,
}

impl BlockDecomposition {
    pub fn max_block_order(&self) -> usize {
        self.blocks.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// The first block with more than `limit` vertices.
    pub fn oversized_block(&self, limit: usize) -> Option<&[usize]> {
        self.blocks
            .iter()
            .find(|b| b.len() > limit)
            .map(Vec::as_slice)
    }
}

/// Hopcroft–Tarjan biconnected components with an explicit edge stack.
pub fn blocks(g: &SimpleGraph) -> BlockDecomposition {
    const UNSEEN: usize = usize::MAX;
    let n = g.order();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_edges: Vec<Vec<(usize, usize)>> = Vec::new();

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        if adj[root].is_empty() {
            blocks.push(vec![root]);
            block_edges.push(Vec::new());
            continue;
        }
        let mut edge_stack: Vec<(usize, usize)> = Vec::new();
        // (vertex, parent, next neighbour position)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, UNSEEN, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, parent, pos) = *top;
            if pos < adj[v].len() {
                top.2 += 1;
                let w = adj[v][pos];
                if disc[w] == UNSEEN {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            stack.pop();
            if let Some(&(u, _, _)) = stack.last() {
                low[u] = low[u].min(low[v]);
                if low[v] >= disc[u] {
                    let mut edges = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        edges.push((e.0.min(e.1), e.0.max(e.1)));
                        if e == (u, v) {
                            break;
                        }
                    }
                    edges.sort_unstable();
                    let mut verts: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
                    verts.sort_unstable();
                    verts.dedup();
                    blocks.push(verts);
                    block_edges.push(edges);
                }
            }
        }
    }

    let mut membership = vec![0usize; n];
    for b in &blocks {
        for &v in b {
            membership[v] += 1;
        }
    }
    let cut_vertices: Vec<usize> = (0..n).filter(|&v| membership[v] > 1).collect();
    let mut block_cut_tree = Vec::new();
    for (id, b) in blocks.iter().enumerate() {
        for &v in b {
            if membership[v] > 1 {
                block_cut_tree.push((id, v));
            }
        }
    }
    BlockDecomposition {
        blocks,
        block_edges,
        cut_vertices,
        block_cut_tree,
    }
}

/// Partition of V(G) into maximal classes of pairwise twins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinPartition {
    /// Each class sorted by label; classes ordered by smallest vertex index.
    pub classes: Vec<Vec<usize>>,
}

impl TwinPartition {
    pub fn is_trivial(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }
}

/// u and v share a class iff N[u] = N[v].
pub fn twin_classes(g: &SimpleGraph) -> TwinPartition {
    let mut by_nbhd: HashMap<BTreeSet<usize>, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..g.order() {
        let key = g.closed_neighborhood(v);
        match by_nbhd.get(&key) {
            Some(&c) => classes[c].push(v),
            None => {
                by_nbhd.insert(key, classes.len());
                classes.push(vec![v]);
            }
        }
    }
    for c in &mut classes {
        c.sort_by(|&a, &b| g.label(a).cmp(g.label(b)));
    }
    TwinPartition { classes }
}

/// Identifies every twin class with its lexicographically smallest label.
/// Returns the twin-free quotient and the map vertex → representative.
pub fn reduce_twins(g: &SimpleGraph) -> (SimpleGraph, BTreeMap<String, String>) {
    let partition = twin_classes(g);
    let mut reduced = SimpleGraph::new();
    let mut class_of = vec![0usize; g.order()];
    let mut map = BTreeMap::new();
    for (c, class) in partition.classes.iter().enumerate() {
        let rep = g.label(class[0]);
        reduced.add_vertex(rep);
        for &v in class {
            class_of[v] = c;
            map.insert(g.label(v).to_string(), rep.to_string());
        }
    }
    for (a, b) in g.edges() {
        let (ca, cb) = (class_of[a], class_of[b]);
        if ca != cb {
            reduced.add_edge_idx(ca, cb);
        }
    }
    (reduced, map)
}

/// Exhaustive isomorphism test with degree pruning, for orders up to
/// [`ISOMORPHISM_ORDER_CAP`].
pub fn is_isomorphic(g1: &SimpleGraph, g2: &SimpleGraph) -> Result<bool> {
    let n = g1.order().max(g2.order());
    if n > ISOMORPHISM_ORDER_CAP {
        return Err(Error::CapExceeded {
            what: "isomorphism testing",
            order: n,
            cap: ISOMORPHISM_ORDER_CAP,
        });
    }
    if g1.order() != g2.order() || g1.size() != g2.size() {
        return Ok(false);
    }
    let mut d1: Vec<usize> = (0..n).map(|v| g1.degree(v)).collect();
    let mut d2: Vec<usize> = (0..n).map(|v| g2.degree(v)).collect();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return Ok(false);
    }
    // Map high-degree vertices first; ties by index.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g1.degree(v)));
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend_isomorphism(g1, g2, &order, 0, &mut image, &mut used))
}

fn extend_isomorphism(
    g1: &SimpleGraph,
    g2: &SimpleGraph,
    order: &[usize],
    depth: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..g2.order() {
        if used[w] || g2.degree(w) != g1.degree(v) {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| g1.has_edge(u, v) == g2.has_edge(image[u], w));
        if !consistent {
            continue;
        }
        image[v] = w;
        used[w] = true;
        if extend_isomorphism(g1, g2, order, depth + 1, image, used) {
            return true;
        }
        used[w] = false;
    }
    image[v] = usize::MAX;
    false
}

/// Parses the edge-list format: one `u v` pair per line, a single label
/// declares an isolated vertex, `#` starts a comment line. Duplicate edges
/// collapse.
pub fn parse_graph(text: &str) -> Result<SimpleGraph> {
    let mut g = SimpleGraph::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            [v] => {
                g.add_vertex(v);
            }
            [u, v] if u == v => {
                return Err(Error::Loop {
                    line: lineno + 1,
                    label: u.to_string(),
                })
            }
            [u, v] => {
                g.add_edge(u, v)?;
            }
            _ => {
                return Err(Error::Syntax {
                    line: lineno + 1,
                    text: line.to_string(),
                })
            }
        }
    }
    if g.order() == 0 {
        return Err(Error::EmptyDocument);
    }
    Ok(g)
}

/// Inverse of [`parse_graph`]: edges in index order, then isolated vertices.
pub fn write_graph(g: &SimpleGraph) -> String {
    let mut out = String::new();
    for (a, b) in g.edges() {
        out.push_str(g.label(a));
        out.push(' ');
        out.push_str(g.label(b));
        out.push('\n');
    }
    for v in 0..g.order() {
        if g.degree(v) == 0 {
            out.push_str(g.label(v));
            out.push('\n');
        }
    }
    out
}
