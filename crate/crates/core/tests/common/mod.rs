//! Independent oracles and generators shared by the integration tests.
//! Nothing here calls into the crate's algorithms; only its data types.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, HashSet, VecDeque};

use orthkit::{LayoutTree, SimpleGraph, Tree};
use rand::{Rng, RngExt};

/// All-pairs distances in a tree by BFS from every node.
pub fn tree_distances(tree: &Tree) -> Vec<Vec<usize>> {
    let n = tree.order();
    let mut d = vec![vec![usize::MAX; n]; n];
    for s in 0..n {
        d[s][s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &w in tree.neighbors(v) {
                if d[s][w] == usize::MAX {
                    d[s][w] = d[s][v] + 1;
                    q.push_back(w);
                }
            }
        }
    }
    d
}

/// Nodes common to the tree paths a–b and c–e, from the distance identity
/// x ∈ P(a,b) ⇔ d(a,x) + d(x,b) = d(a,b).
pub fn shared_nodes(d: &[Vec<usize>], (a, b): (usize, usize), (c, e): (usize, usize)) -> usize {
    (0..d.len())
        .filter(|&x| d[a][x] + d[x][b] == d[a][b] && d[c][x] + d[x][e] == d[c][e])
        .count()
}

/// From-scratch (h,t)-layout check: tree, leaves ↔ vertices bijection,
/// degrees ≤ h, and paths of independent edges share at most t−1 nodes.
pub fn oracle_layout_ok(layout: &LayoutTree, g: &SimpleGraph, h: usize, t: usize) -> bool {
    let tree = &layout.tree;
    let n = tree.order();
    let d = tree_distances(tree);
    if n == 0 || d[0].contains(&usize::MAX) || tree.size() != n - 1 {
        return false;
    }
    let leaves: Vec<usize> = (0..n).filter(|&v| tree.degree(v) <= 1).collect();
    if leaves.len() != layout.leaf_map.len() || leaves.iter().any(|l| !layout.leaf_map.contains_key(l)) {
        return false;
    }
    let mut node_of: BTreeMap<&str, usize> = BTreeMap::new();
    for (&node, v) in &layout.leaf_map {
        if node_of.insert(v.as_str(), node).is_some() {
            return false;
        }
    }
    if node_of.len() != g.order() || g.labels().iter().any(|v| !node_of.contains_key(v.as_str())) {
        return false;
    }
    if (0..n).any(|v| tree.degree(v) > h) {
        return false;
    }
    let ends: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .map(|(x, y)| (node_of[g.label(x)], node_of[g.label(y)]))
        .collect();
    for i in 0..ends.len() {
        for j in i + 1..ends.len() {
            let (a, b) = ends[i];
            let (c, e) = ends[j];
            if a == c || a == e || b == c || b == e {
                continue;
            }
            if shared_nodes(&d, ends[i], ends[j]) >= t {
                return false;
            }
        }
    }
    true
}

/// Whether the graph has a simple cycle of length at least 4. Such a cycle
/// exists exactly when some block has at least 4 vertices. Exhaustive, so
/// only for small graphs.
pub fn has_long_cycle(g: &SimpleGraph) -> bool {
    fn extend(g: &SimpleGraph, start: usize, v: usize, len: usize, on: &mut Vec<bool>) -> bool {
        for w in g.neighbors(v) {
            if w == start && len >= 4 {
                return true;
            }
            // only cycles whose smallest vertex is `start`
            if w > start && !on[w] {
                on[w] = true;
                let found = extend(g, start, w, len + 1, on);
                on[w] = false;
                if found {
                    return true;
                }
            }
        }
        false
    }
    (0..g.order()).any(|s| {
        let mut on = vec![false; g.order()];
        on[s] = true;
        extend(g, s, s, 1, &mut on)
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn pair_index(n: usize) -> Vec<Vec<usize>> {
    let mut idx = vec![vec![0; n]; n];
    let mut k = 0;
    for a in 0..n {
        for b in a + 1..n {
            idx[a][b] = k;
            idx[b][a] = k;
            k += 1;
        }
    }
    idx
}

fn mask_connected(n: usize, mask: u32, idx: &[Vec<usize>]) -> bool {
    let mut seen = 1u32;
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if w != v && mask >> idx[v][w] & 1 == 1 && seen >> w & 1 == 0 {
                seen |= 1 << w;
                stack.push(w);
            }
        }
    }
    seen == (1 << n) - 1
}

/// One representative per isomorphism class of connected simple graphs on
/// n vertices (canonical form = least relabelled edge mask).
pub fn connected_graphs(n: usize) -> Vec<SimpleGraph> {
    assert!(n <= 7);
    let idx = pair_index(n);
    let pairs = n * (n - 1) / 2;
    let perms = permutations(n);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs {
        if !mask_connected(n, mask, &idx) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut m = 0u32;
                for a in 0..n {
                    for b in a + 1..n {
                        if mask >> idx[a][b] & 1 == 1 {
                            m |= 1 << idx[p[a]][p[b]];
                        }
                    }
                }
                m
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            let mut g = SimpleGraph::empty(n);
            for a in 0..n {
                for b in a + 1..n {
                    if canon >> idx[a][b] & 1 == 1 {
                        g.add_edge_idx(a, b);
                    }
                }
            }
            out.push(g);
        }
    }
    out
}

/// A connected graph on about `n` vertices built from bridges and
/// triangles glued at cut vertices, so every block has order ≤ 3. With
/// `big_block`, one block of order 4 or 5 is glued in as well.
pub fn random_block_graph<R: Rng>(rng: &mut R, n: usize, big_block: bool) -> SimpleGraph {
    let mut g = SimpleGraph::empty(1);
    let fresh = |g: &mut SimpleGraph| {
        let l = g.order().to_string();
        g.add_vertex(&l)
    };
    let big_at = if big_block { rng.random_range(0..3) } else { usize::MAX };
    let mut step = 0;
    while g.order() < n {
        let v = rng.random_range(0..g.order());
        if step == big_at {
            // C4, diamond, K4, or C5
            let k = rng.random_range(0..4);
            let size = if k == 3 { 5 } else { 4 };
            let mut cyc = vec![v];
            for _ in 1..size {
                cyc.push(fresh(&mut g));
            }
            for i in 0..size {
                g.add_edge_idx(cyc[i], cyc[(i + 1) % size]);
            }
            if (1..=2).contains(&k) {
                g.add_edge_idx(cyc[0], cyc[2]);
            }
            if k == 2 {
                g.add_edge_idx(cyc[1], cyc[3]);
            }
        } else if rng.random_bool(0.5) {
            let w = fresh(&mut g);
            g.add_edge_idx(v, w);
        } else {
            let (a, b) = (fresh(&mut g), fresh(&mut g));
            g.add_edge_idx(v, a);
            g.add_edge_idx(a, b);
            g.add_edge_idx(b, v);
        }
        step += 1;
    }
    if big_block && step <= big_at {
        // too small to reach the big block; try again
        return random_block_graph(rng, n, big_block);
    }
    g
}

/// Deletes each edge with probability `p` and keeps the largest component.
pub fn random_connected_subgraph<R: Rng>(rng: &mut R, g: &SimpleGraph, p: f64) -> SimpleGraph {
    let mut h = g.clone();
    for (a, b) in g.edges() {
        if rng.random_bool(p) {
            h.remove_edge_idx(a, b);
        }
    }
    let comp = h.components().into_iter().max_by_key(|c| c.len()).unwrap();
    h.induced_subgraph(&comp)
}

/// A random tree on `n` nodes: node i attaches to a uniformly random
/// earlier node.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Tree {
    let mut t = Tree::new();
    t.add_node("n0");
    for i in 1..n {
        let v = t.add_node(&format!("n{i}"));
        let p = rng.random_range(0..i);
        t.add_edge(p, v);
    }
    t
}
