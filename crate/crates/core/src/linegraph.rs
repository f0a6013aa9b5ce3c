//! Line-graph recognition and root reconstruction.
//!
//! A connected graph is a line graph iff it has a Krausz cover: a family of
//! cliques such that every edge lies in exactly one clique and every vertex
//! in exactly two (counting a singleton clique for a pendant end). Once the
//! two cliques at one vertex are fixed, the cover is forced along edges: a
//! vertex `w` already known to lie in clique `K` must have `{w} ∪ N(w) \ K`
//! as its other clique. So the search only branches at the start vertex,
//! where a line graph admits at most two splits of the neighbourhood.
//!
//! Twins are handled by solving the twin-free quotient and re-expanding each
//! twin class as pendant edges (when the class edge ends in a leaf) or as
//! parallel edges.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{fresh_label, reduce_twins, twin_classes, Multigraph, SimpleGraph};

/// A root H of G together with φ: V(G) → E(H) (edge ids of `root`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineGraphRoot {
    pub root: Multigraph,
    pub phi: BTreeMap<String, usize>,
}

impl LineGraphRoot {
    /// Checks that φ is a bijection onto E(H) and that adjacency in `g`
    /// matches edge intersection in H, pair by pair.
    pub fn verify(&self, g: &SimpleGraph) -> bool {
        if self.phi.len() != g.order() || self.root.size() != g.order() {
            return false;
        }
        let mut image = vec![usize::MAX; g.order()];
        let mut hit = vec![false; self.root.size()];
        for (label, &e) in &self.phi {
            let Some(v) = g.index_of(label) else { return false };
            if e >= hit.len() || hit[e] {
                return false;
            }
            hit[e] = true;
            image[v] = e;
        }
        let edges = self.root.edges();
        for u in 0..g.order() {
            for v in u + 1..g.order() {
                let (a, b) = edges[image[u]];
                let (c, d) = edges[image[v]];
                let meet = a == c || a == d || b == c || b == d;
                if meet != g.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// The root as a simple graph, if it has no parallel edges.
    pub fn simple_root(&self) -> Option<SimpleGraph> {
        self.root.to_simple()
    }

    /// Endpoint labels of φ(u).
    pub fn endpoints(&self, u: &str) -> Option<(&str, &str)> {
        let &e = self.phi.get(u)?;
        let (a, b) = self.root.edges()[e];
        Some((self.root.label(a), self.root.label(b)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotLineGraph {
    /// An induced K_{1,3}; the centre's neighbourhood has no cover by two
    /// cliques.
    Claw { center: String, leaves: [String; 3] },
    /// No Krausz cover extends any two-clique split at `vertex`.
    NoKrauszCover { vertex: String },
}

impl std::fmt::Display for NotLineGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotLineGraph::Claw { center, leaves } => write!(
                f,
                "induced claw centred at {center} with leaves {}, {}, {}",
                leaves[0], leaves[1], leaves[2]
            ),
            NotLineGraph::NoKrauszCover { vertex } => write!(
                f,
                "no Krausz clique cover extends any two-clique split of N({vertex})"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootResult {
    Root(LineGraphRoot),
    NotLineGraph(NotLineGraph),
}

impl RootResult {
    pub fn root(&self) -> Option<&LineGraphRoot> {
        match self {
            RootResult::Root(r) => Some(r),
            RootResult::NotLineGraph(_) => None,
        }
    }
}

/// Reconstructs a root multigraph of a connected graph.
///
/// Twin-free inputs of order at least 4 get their unique simple root. For
/// K1, K2 and K3 the roots are K2, P3 and K_{1,3}. Other inputs with twins
/// get a root that may contain parallel edges.
pub fn root_graph(g: &SimpleGraph) -> Result<RootResult> {
    if g.order() == 0 {
        return Err(Error::EmptyGraph);
    }
    let components = g.components().len();
    if components > 1 {
        return Err(Error::Disconnected { components });
    }

    let (reduced, rep_of) = reduce_twins(g);
    let reduced_root = if reduced.order() == 1 {
        let mut h = Multigraph::new();
        h.add_edge("h0", "h1")?;
        let mut phi = BTreeMap::new();
        phi.insert(reduced.label(0).to_string(), 0);
        LineGraphRoot { root: h, phi }
    } else {
        match krausz_root(&reduced) {
            Some(r) => r,
            None => return Ok(RootResult::NotLineGraph(refutation(&reduced))),
        }
    };

    if reduced.order() == g.order() {
        return Ok(RootResult::Root(reduced_root));
    }
    Ok(RootResult::Root(expand_twins(g, &rep_of, reduced_root)))
}

fn expand_twins(
    g: &SimpleGraph,
    rep_of: &BTreeMap<String, String>,
    base: LineGraphRoot,
) -> LineGraphRoot {
    let LineGraphRoot { mut root, mut phi } = base;
    let base_degree: Vec<usize> = (0..root.order()).map(|v| root.degree(v)).collect();
    let mut used: HashSet<String> = root.labels().iter().cloned().collect();
    let mut next = root.order();

    for class in twin_classes(g).classes {
        let rep = rep_of[g.label(class[0])].clone();
        let e = phi[&rep];
        let (mut x, mut y) = root.edges()[e];
        if base_degree[y] != 1 && base_degree[x] == 1 {
            std::mem::swap(&mut x, &mut y);
        }
        for &v in &class {
            let label = g.label(v);
            if *label == rep {
                continue;
            }
            let id = if base_degree[y] == 1 {
                let fresh = fresh_label(&used, &format!("h{next}"));
                next += 1;
                used.insert(fresh.clone());
                let leaf = root.add_vertex(&fresh);
                root.add_edge_idx(x, leaf)
            } else {
                root.add_edge_idx(x, y)
            };
            phi.insert(label.to_string(), id);
        }
    }
    LineGraphRoot { root, phi }
}

/// Krausz cover of a connected twin-free graph of order ≥ 2, as a root.
fn krausz_root(g: &SimpleGraph) -> Option<LineGraphRoot> {
    let start = (0..g.order()).min_by_key(|&v| (g.degree(v), v))?;
    for (first, second) in start_splits(g, start)? {
        if let Some(cover) = propagate_cover(g, start, first, second) {
            return Some(cover_to_root(g, &cover));
        }
    }
    None
}

/// Candidate splits of N(start) into two sides, each a clique together with
/// `start`. `None` if no split exists at all.
fn start_splits(g: &SimpleGraph, start: usize) -> Option<Vec<(Vec<usize>, Vec<usize>)>> {
    let nbrs: Vec<usize> = g.neighbors(start).collect();
    let k = nbrs.len();
    // 2-colour the complement of G[N(start)].
    let mut colour = vec![usize::MAX; k];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut complement_has_edge = false;
    for s in 0..k {
        if colour[s] != usize::MAX {
            continue;
        }
        colour[s] = 0;
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(i) = queue.pop_front() {
            for j in 0..k {
                if i == j || g.has_edge(nbrs[i], nbrs[j]) {
                    continue;
                }
                complement_has_edge = true;
                if colour[j] == usize::MAX {
                    colour[j] = 1 - colour[i];
                    comp.push(j);
                    queue.push_back(j);
                } else if colour[j] == colour[i] {
                    return None;
                }
            }
        }
        comps.push(comp);
    }

    if !complement_has_edge {
        let mut splits = vec![(nbrs.clone(), Vec::new())];
        if k == 2 {
            splits.push((vec![nbrs[0]], vec![nbrs[1]]));
        }
        return Some(splits);
    }
    // A line graph has at most two complement components here; more means
    // no cover, but the propagation check below decides that anyway.
    if comps.len() > 12 {
        return None;
    }
    let mut splits = Vec::new();
    for mask in 0u32..(1 << (comps.len() - 1)) {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (ci, comp) in comps.iter().enumerate() {
            let flip = ci > 0 && mask & (1 << (ci - 1)) != 0;
            for &i in comp {
                if (colour[i] == 0) != flip {
                    a.push(nbrs[i]);
                } else {
                    b.push(nbrs[i]);
                }
            }
        }
        a.sort_unstable();
        b.sort_unstable();
        splits.push((a, b));
    }
    Some(splits)
}

struct Cover {
    cliques: Vec<Vec<usize>>,
    member_of: Vec<Vec<usize>>,
}

fn propagate_cover(
    g: &SimpleGraph,
    start: usize,
    first: Vec<usize>,
    second: Vec<usize>,
) -> Option<Cover> {
    let n = g.order();
    let mut cover = Cover {
        cliques: Vec::new(),
        member_of: vec![Vec::new(); n],
    };
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut queue = VecDeque::new();

    let mut assign = |cover: &mut Cover, mut clique: Vec<usize>, queue: &mut VecDeque<usize>| -> bool {
        clique.sort_unstable();
        let id = match ids.get(&clique) {
            Some(&id) => id,
            None => {
                let id = cover.cliques.len();
                ids.insert(clique.clone(), id);
                cover.cliques.push(clique.clone());
                id
            }
        };
        for &w in &clique {
            let m = &mut cover.member_of[w];
            if m.contains(&id) {
                continue;
            }
            if m.len() == 2 {
                return false;
            }
            m.push(id);
            if m.len() == 1 {
                queue.push_back(w);
            }
        }
        true
    };

    let mut a = first;
    a.push(start);
    let mut b = second;
    b.push(start);
    if !assign(&mut cover, a, &mut queue) || !assign(&mut cover, b, &mut queue) {
        return None;
    }

    while let Some(w) = queue.pop_front() {
        if cover.member_of[w].len() != 1 {
            continue;
        }
        let known = &cover.cliques[cover.member_of[w][0]];
        let mut other: Vec<usize> = g.neighbors(w).filter(|x| !known.contains(x)).collect();
        let is_clique = other
            .iter()
            .enumerate()
            .all(|(i, &p)| other[i + 1..].iter().all(|&q| g.has_edge(p, q)));
        if !is_clique {
            return None;
        }
        other.push(w);
        if !assign(&mut cover, other, &mut queue) {
            return None;
        }
    }

    // Every vertex in exactly two cliques, every edge in exactly one.
    if cover.member_of.iter().any(|m| m.len() != 2) {
        return None;
    }
    for q in &cover.cliques {
        for (i, &p) in q.iter().enumerate() {
            if q[i + 1..].iter().any(|&r| !g.has_edge(p, r)) {
                return None;
            }
        }
    }
    for (u, v) in g.edges() {
        let shared = cover.member_of[u]
            .iter()
            .filter(|c| cover.member_of[v].contains(c))
            .count();
        if shared != 1 {
            return None;
        }
    }
    Some(cover)
}

fn cover_to_root(g: &SimpleGraph, cover: &Cover) -> LineGraphRoot {
    let mut root = Multigraph::new();
    for i in 0..cover.cliques.len() {
        root.add_vertex(&format!("h{i}"));
    }
    let mut phi = BTreeMap::new();
    for u in 0..g.order() {
        let m = &cover.member_of[u];
        let id = root.add_edge_idx(m[0], m[1]);
        phi.insert(g.label(u).to_string(), id);
    }
    LineGraphRoot { root, phi }
}

fn refutation(g: &SimpleGraph) -> NotLineGraph {
    if let Some((c, [x, y, z])) = find_claw(g) {
        return NotLineGraph::Claw {
            center: g.label(c).to_string(),
            leaves: [x, y, z].map(|v| g.label(v).to_string()),
        };
    }
    let start = (0..g.order())
        .min_by_key(|&v| (g.degree(v), v))
        .unwrap_or(0);
    NotLineGraph::NoKrauszCover {
        vertex: g.label(start).to_string(),
    }
}

/// An induced K_{1,3}, if any.
pub fn find_claw(g: &SimpleGraph) -> Option<(usize, [usize; 3])> {
    for c in 0..g.order() {
        let nb: Vec<usize> = g.neighbors(c).collect();
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                if g.has_edge(nb[i], nb[j]) {
                    continue;
                }
                for k in j + 1..nb.len() {
                    if !g.has_edge(nb[i], nb[k]) && !g.has_edge(nb[j], nb[k]) {
                        return Some((c, [nb[i], nb[j], nb[k]]));
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_isomorphic, line_graph};

    fn root_of(g: &SimpleGraph) -> LineGraphRoot {
        match root_graph(g).unwrap() {
            RootResult::Root(r) => {
                assert!(r.verify(g), "phi does not certify the root");
                r
            }
            RootResult::NotLineGraph(w) => panic!("expected a root, got {w}"),
        }
    }

    #[test]
    fn claw_is_not_a_line_graph() {
        let claw = SimpleGraph::star(3);
        match root_graph(&claw).unwrap() {
            RootResult::NotLineGraph(NotLineGraph::Claw { center, .. }) => assert_eq!(center, "0"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn p3_root_is_p4() {
        let r = root_of(&SimpleGraph::path(3));
        let h = r.simple_root().unwrap();
        assert!(is_isomorphic(&h, &SimpleGraph::path(4)).unwrap());
    }

    #[test]
    fn octahedron_root_is_k4() {
        let r = root_of(&SimpleGraph::complete(4).line_graph());
        assert!(is_isomorphic(&r.simple_root().unwrap(), &SimpleGraph::complete(4)).unwrap());
    }

    #[test]
    fn small_complete_graphs_get_canonical_roots() {
        let r = root_of(&SimpleGraph::complete(1));
        assert!(is_isomorphic(&r.simple_root().unwrap(), &SimpleGraph::path(2)).unwrap());
        let r = root_of(&SimpleGraph::complete(2));
        assert!(is_isomorphic(&r.simple_root().unwrap(), &SimpleGraph::path(3)).unwrap());
        let r = root_of(&SimpleGraph::complete(3));
        assert!(is_isomorphic(&r.simple_root().unwrap(), &SimpleGraph::star(3)).unwrap());
    }

    #[test]
    fn twin_classes_expand_into_parallel_edges_when_needed() {
        let mut h = Multigraph::new();
        h.add_edge("a", "b").unwrap();
        h.add_edge("b", "c").unwrap();
        h.add_edge("b", "c").unwrap();
        h.add_edge("c", "d").unwrap();
        let g = line_graph(&h);
        let r = root_of(&g);
        assert_eq!(r.root.size(), 4);
    }

    #[test]
    fn disconnected_and_empty_inputs_are_errors() {
        let g = SimpleGraph::empty(2);
        assert_eq!(root_graph(&g), Err(Error::Disconnected { components: 2 }));
        assert_eq!(root_graph(&SimpleGraph::new()), Err(Error::EmptyGraph));
    }

    #[test]
    fn classic_non_line_graphs_are_rejected() {
        // K5 minus an edge is not the line graph of a simple graph, but it is
        // L(P4 with its middle edge tripled).
        let mut k5e = SimpleGraph::complete(5);
        k5e.remove_edge_idx(0, 1);
        let r = root_of(&k5e);
        assert!(r.verify(&k5e));
        assert!(r.root.has_parallel_edges());
        assert_eq!(r.root.order(), 4);
        let mut w5 = SimpleGraph::cycle(5);
        let hub = w5.add_vertex("hub");
        for v in 0..5 {
            w5.add_edge_idx(hub, v);
        }
        assert!(root_graph(&w5).unwrap().root().is_none());
    }

    #[test]
    fn whitney_roots_of_twin_free_line_graphs() {
        let petersen = SimpleGraph::petersen();
        let r = root_of(&petersen.line_graph());
        let h = r.simple_root().unwrap();
        assert_eq!(h.order(), 10);
        assert!((0..10).all(|v| h.degree(v) == 3));
    }
}
