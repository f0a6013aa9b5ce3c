//! Forbidden subdivisions in root graphs and the planarity test behind
//! them.
//!
//! Subdivision search is exhaustive: branch vertices are assigned one
//! pattern vertex at a time and pattern edges are routed as internally
//! disjoint host paths by backtracking. Two shortcuts keep common cases
//! cheap: nonplanar patterns are skipped on planar hosts, and K_{2,m}
//! patterns reduce to counting disjoint paths with a max-flow.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use rustworkx_core::petgraph::graph::UnGraph;
use rustworkx_core::planar;

use crate::error::{Error, Result};
use crate::graph::{blocks, SimpleGraph};
use crate::linegraph::{root_graph, RootResult};
use crate::recognize::Obstruction;

/// Hosts above this order are refused by the subdivision and planarity
/// searches.
pub const SUBDIVISION_CAP: usize = 64;
const PATTERN_CAP: usize = 7;

/// Annotation attached to K_{2,5} verdicts.
pub const K25_NOTE: &str = "stated without published proof; treat as unproven";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    K5Minus2K2,
    K33,
    K25,
}

impl Pattern {
    pub const ALL: [Pattern; 3] = [Pattern::K5Minus2K2, Pattern::K33, Pattern::K25];

    pub fn name(self) -> &'static str {
        match self {
            Pattern::K5Minus2K2 => "K5_minus_2K2",
            Pattern::K33 => "K33",
            Pattern::K25 => "K25",
        }
    }

    /// The pattern graph. K5 − 2K2 is K5 on `0..5` without `01` and `23`.
    pub fn graph(self) -> SimpleGraph {
        match self {
            Pattern::K5Minus2K2 => {
                let mut g = SimpleGraph::complete(5);
                g.remove_edge_idx(0, 1);
                g.remove_edge_idx(2, 3);
                g
            }
            Pattern::K33 => SimpleGraph::complete_bipartite(3, 3),
            Pattern::K25 => SimpleGraph::complete_bipartite(2, 5),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "K5_minus_2K2" | "K5-2K2" => Ok(Pattern::K5Minus2K2),
            "K33" | "K3,3" => Ok(Pattern::K33),
            "K25" | "K2,5" => Ok(Pattern::K25),
            other => Err(Error::Parameters(format!(
                "unknown pattern `{other}` (expected K5_minus_2K2, K33 or K25)"
            ))),
        }
    }
}

/// Look-up by name, for callers holding strings.
pub fn pattern(name: &str) -> Result<SimpleGraph> {
    Ok(name.parse::<Pattern>()?.graph())
}

/// A subgraph of the host that is a subdivision of the pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionWitness {
    pub pattern: String,
    /// Pattern vertex → host vertex.
    pub branch_map: BTreeMap<String, String>,
    /// Pattern edge `(u, v)` → host path from the image of u to that of v.
    pub path_map: BTreeMap<(String, String), Vec<String>>,
}

impl SubdivisionWitness {
    /// Structural re-check against host and pattern: injective branch map,
    /// one host path per pattern edge with matching ends, and interiors
    /// disjoint from each other and from the branch vertices.
    pub fn verify(&self, host: &SimpleGraph, pattern: &SimpleGraph) -> bool {
        if self.branch_map.len() != pattern.order() {
            return false;
        }
        let mut images = std::collections::HashSet::new();
        for p in pattern.labels() {
            match self.branch_map.get(p) {
                Some(x) if host.index_of(x).is_some() && images.insert(x.as_str()) => {}
                _ => return false,
            }
        }
        if self.path_map.len() != pattern.size() {
            return false;
        }
        let mut interior = std::collections::HashSet::new();
        for (u, v) in pattern.edges() {
            let key = (pattern.label(u).to_string(), pattern.label(v).to_string());
            let rev = (key.1.clone(), key.0.clone());
            let (path, reversed) = match (self.path_map.get(&key), self.path_map.get(&rev)) {
                (Some(p), _) => (p, false),
                (None, Some(p)) => (p, true),
                _ => return false,
            };
            let (mut s, mut e) = (&self.branch_map[&key.0], &self.branch_map[&key.1]);
            if reversed {
                std::mem::swap(&mut s, &mut e);
            }
            if path.len() < 2 || &path[0] != s || path.last() != Some(e) {
                return false;
            }
            if path.windows(2).any(|w| !host.has_edge_labels(&w[0], &w[1])) {
                return false;
            }
            for x in &path[1..path.len() - 1] {
                if images.contains(x.as_str()) || !interior.insert(x.clone()) {
                    return false;
                }
            }
        }
        true
    }
}

fn check_caps(host: &SimpleGraph, pattern: &SimpleGraph) -> Result<()> {
    if host.order() > SUBDIVISION_CAP {
        return Err(Error::CapExceeded {
            what: "subdivision search",
            order: host.order(),
            cap: SUBDIVISION_CAP,
        });
    }
    if pattern.order() > PATTERN_CAP {
        return Err(Error::Parameters(format!(
            "patterns are limited to {PATTERN_CAP} vertices"
        )));
    }
    Ok(())
}

fn lr_planar(edges: &[(usize, usize)]) -> bool {
    let g = UnGraph::<(), ()>::from_edges(edges.iter().map(|&(a, b)| (a as u32, b as u32)));
    planar::is_planar(&g)
}

fn is_two_connected(g: &SimpleGraph) -> bool {
    g.order() >= 3 && g.is_connected() && blocks(g).blocks.len() == 1
}

/// Searches H for a subgraph that is a subdivision of `pattern`.
pub fn contains_subdivision(host: &SimpleGraph, pattern: &SimpleGraph) -> Result<Option<SubdivisionWitness>> {
    check_caps(host, pattern)?;
    if pattern.order() == 0 {
        return Err(Error::Parameters("empty pattern".into()));
    }
    if pattern.order() > host.order() || pattern.size() > host.size() {
        return Ok(None);
    }
    if !lr_planar(&pattern.edges()) && lr_planar(&host.edges()) {
        return Ok(None);
    }
    if let Some((u, v)) = k2m_poles(pattern) {
        return Ok(k2m_search(host, pattern, u, v));
    }

    let prune = pattern.order() > 1 && (0..pattern.order()).all(|v| pattern.degree(v) >= 2);
    let core = if prune { strip_low_degree(host) } else { (0..host.order()).collect() };
    let pieces: Vec<Vec<usize>> = if is_two_connected(pattern) {
        let sub = host.induced_subgraph(&core);
        blocks(&sub)
            .blocks
            .into_iter()
            .filter(|b| b.len() >= pattern.order())
            .map(|b| b.into_iter().map(|i| core[i]).collect())
            .collect()
    } else {
        vec![core]
    };
    for piece in pieces {
        if piece.len() < pattern.order() {
            continue;
        }
        let sub = host.induced_subgraph(&piece);
        if let Some(w) = Search::new(&sub, pattern).run() {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Vertices left after repeatedly deleting vertices of degree ≤ 1.
fn strip_low_degree(g: &SimpleGraph) -> Vec<usize> {
    let n = g.order();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut gone = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    while let Some(v) = stack.pop() {
        if gone[v] {
            continue;
        }
        gone[v] = true;
        for w in g.neighbors(v) {
            if !gone[w] {
                deg[w] -= 1;
                if deg[w] <= 1 {
                    stack.push(w);
                }
            }
        }
    }
    (0..n).filter(|&v| !gone[v]).collect()
}

/// Backtracking embedding of a pattern subdivision into a host.
struct Search<'a> {
    host: &'a SimpleGraph,
    pattern: &'a SimpleGraph,
    adj: Vec<Vec<usize>>,
    order: Vec<usize>,
    p_edges: Vec<(usize, usize)>,
    /// Pattern edges routed right after `order[i]` is placed.
    step_edges: Vec<Vec<usize>>,
    branch: Vec<usize>,
    is_branch: Vec<bool>,
    used: Vec<bool>,
    remaining: Vec<usize>,
    routes: Vec<Vec<usize>>,
    committed: Vec<bool>,
}

const UNSET: usize = usize::MAX;

impl<'a> Search<'a> {
    fn new(host: &'a SimpleGraph, pattern: &'a SimpleGraph) -> Self {
        let k = pattern.order();
        let mut order: Vec<usize> = Vec::with_capacity(k);
        let mut placed = vec![false; k];
        while order.len() < k {
            let next = (0..k)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let back = pattern.neighbors(v).filter(|&w| placed[w]).count();
                    (back, pattern.degree(v), std::cmp::Reverse(v))
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }
        let p_edges = pattern.edges();
        let pos: Vec<usize> = {
            let mut pos = vec![0; k];
            for (i, &v) in order.iter().enumerate() {
                pos[v] = i;
            }
            pos
        };
        let mut step_edges = vec![Vec::new(); k];
        for (e, &(a, b)) in p_edges.iter().enumerate() {
            step_edges[pos[a].max(pos[b])].push(e);
        }
        let n = host.order();
        Search {
            host,
            pattern,
            adj: (0..n).map(|v| host.neighbors(v).collect()).collect(),
            order,
            p_edges,
            step_edges,
            branch: vec![UNSET; k],
            is_branch: vec![false; n],
            used: vec![false; n],
            remaining: (0..k).map(|v| pattern.degree(v)).collect(),
            routes: Vec::new(),
            committed: Vec::new(),
        }
    }

    fn run(mut self) -> Option<SubdivisionWitness> {
        self.routes = vec![Vec::new(); self.p_edges.len()];
        self.committed = vec![false; self.p_edges.len()];
        if !self.assign(0) {
            return None;
        }
        let label = |v: usize| self.host.label(v).to_string();
        let branch_map = (0..self.pattern.order())
            .map(|p| (self.pattern.label(p).to_string(), label(self.branch[p])))
            .collect();
        let path_map = self
            .p_edges
            .iter()
            .zip(&self.routes)
            .map(|(&(a, b), path)| {
                let key = (self.pattern.label(a).to_string(), self.pattern.label(b).to_string());
                (key, path.iter().map(|&v| label(v)).collect())
            })
            .collect();
        Some(SubdivisionWitness {
            pattern: String::new(),
            branch_map,
            path_map,
        })
    }

    fn assign(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let p = self.order[i];
        let need = self.pattern.degree(p);
        for c in 0..self.host.order() {
            if self.used[c] || self.adj[c].len() < need {
                continue;
            }
            self.used[c] = true;
            self.is_branch[c] = true;
            self.branch[p] = c;
            if self.feasible() && self.route(i, 0) {
                return true;
            }
            self.branch[p] = UNSET;
            self.is_branch[c] = false;
            self.used[c] = false;
        }
        false
    }

    fn route(&mut self, i: usize, j: usize) -> bool {
        if j == self.step_edges[i].len() {
            return self.assign(i + 1);
        }
        let e = self.step_edges[i][j];
        let (a, b) = self.p_edges[e];
        let (s, goal) = (self.branch[a], self.branch[b]);
        let mut path = vec![s];
        self.extend(i, j, e, &mut path, goal)
    }

    fn extend(&mut self, i: usize, j: usize, e: usize, path: &mut Vec<usize>, goal: usize) -> bool {
        let cur = *path.last().unwrap();
        for k in 0..self.adj[cur].len() {
            let w = self.adj[cur][k];
            if w == goal {
                path.push(goal);
                let (a, b) = self.p_edges[e];
                self.remaining[a] -= 1;
                self.remaining[b] -= 1;
                self.committed[e] = true;
                if self.feasible() {
                    self.routes[e] = path.clone();
                    if self.route(i, j + 1) {
                        return true;
                    }
                }
                self.committed[e] = false;
                self.remaining[a] += 1;
                self.remaining[b] += 1;
                path.pop();
            } else if !self.used[w] {
                self.used[w] = true;
                path.push(w);
                if self.extend(i, j, e, path, goal) {
                    return true;
                }
                path.pop();
                self.used[w] = false;
            }
        }
        false
    }

    /// Every placed branch vertex must still have enough free neighbours for
    /// its unrouted pattern edges, and every pending pair of placed branch
    /// vertices must still be connected through free vertices.
    fn feasible(&self) -> bool {
        for p in 0..self.pattern.order() {
            let c = self.branch[p];
            if c == UNSET || self.remaining[p] == 0 {
                continue;
            }
            let free = self.adj[c]
                .iter()
                .filter(|&&w| !self.used[w] || self.is_branch[w])
                .count();
            if free < self.remaining[p] {
                return false;
            }
        }
        for (e, &(a, b)) in self.p_edges.iter().enumerate() {
            let (s, g) = (self.branch[a], self.branch[b]);
            if s == UNSET || g == UNSET || self.committed[e] {
                continue;
            }
            if !self.reachable(s, g) {
                return false;
            }
        }
        true
    }

    fn reachable(&self, s: usize, g: usize) -> bool {
        let mut seen = vec![false; self.host.order()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if w == g {
                    return true;
                }
                if !seen[w] && !self.used[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        false
    }
}

/// The two poles of a K_{2,m} pattern (m ≥ 2), if it is one.
fn k2m_poles(pattern: &SimpleGraph) -> Option<(usize, usize)> {
    let k = pattern.order();
    if k < 4 {
        return None;
    }
    let m = k - 2;
    let poles: Vec<usize> = (0..k).filter(|&v| pattern.degree(v) == m).collect();
    if m == 2 || poles.len() != 2 {
        // K_{2,2} = C4 is left to the general search
        return None;
    }
    let (u, v) = (poles[0], poles[1]);
    let ok = !pattern.has_edge(u, v)
        && (0..k)
            .filter(|&x| x != u && x != v)
            .all(|x| pattern.degree(x) == 2 && pattern.has_edge(x, u) && pattern.has_edge(x, v));
    ok.then_some((u, v))
}

/// K_{2,m} subdivisions are pairs of host vertices joined by m internally
/// disjoint paths of length at least 2.
fn k2m_search(host: &SimpleGraph, pattern: &SimpleGraph, pu: usize, pv: usize) -> Option<SubdivisionWitness> {
    let m = pattern.order() - 2;
    let n = host.order();
    for s in 0..n {
        if host.degree(s) < m {
            continue;
        }
        for t in s + 1..n {
            if host.degree(t) < m {
                continue;
            }
            let paths = disjoint_paths(host, s, t, m);
            if paths.len() < m {
                continue;
            }
            let label = |v: usize| host.label(v).to_string();
            let mut branch_map = BTreeMap::new();
            let mut path_map = BTreeMap::new();
            branch_map.insert(pattern.label(pu).to_string(), label(s));
            branch_map.insert(pattern.label(pv).to_string(), label(t));
            let middles: Vec<usize> = (0..pattern.order()).filter(|&x| x != pu && x != pv).collect();
            for (&x, path) in middles.iter().zip(&paths) {
                let mid = path[1];
                branch_map.insert(pattern.label(x).to_string(), label(mid));
                for pole in [pu, pv] {
                    let (a, b) = if pole < x { (pole, x) } else { (x, pole) };
                    let mut seg: Vec<usize> = if pole == pu { path[..=1].to_vec() } else { path[1..].to_vec() };
                    // orient from pattern vertex a to pattern vertex b
                    let starts_at_pole = pole == pu;
                    if (a == pole) != starts_at_pole {
                        seg.reverse();
                    }
                    path_map.insert(
                        (pattern.label(a).to_string(), pattern.label(b).to_string()),
                        seg.into_iter().map(label).collect(),
                    );
                }
            }
            return Some(SubdivisionWitness {
                pattern: String::new(),
                branch_map,
                path_map,
            });
        }
    }
    None
}

/// Up to `want` internally vertex-disjoint s–t paths of length ≥ 2, by
/// unit-capacity augmenting paths on the split-vertex network.
fn disjoint_paths(g: &SimpleGraph, s: usize, t: usize, want: usize) -> Vec<Vec<usize>> {
    let n = g.order();
    // node v_in = 2v, v_out = 2v+1
    let mut head: Vec<usize> = Vec::new();
    let mut cap: Vec<i32> = Vec::new();
    let mut arcs: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    let mut add = |a: usize, b: usize, arcs: &mut Vec<Vec<usize>>| {
        arcs[a].push(head.len());
        head.push(b);
        cap.push(1);
        arcs[b].push(head.len());
        head.push(a);
        cap.push(0);
    };
    for v in 0..n {
        if v != s && v != t {
            add(2 * v, 2 * v + 1, &mut arcs);
        }
    }
    for (a, b) in g.edges() {
        if (a == s && b == t) || (a == t && b == s) {
            continue;
        }
        add(2 * a + 1, 2 * b, &mut arcs);
        add(2 * b + 1, 2 * a, &mut arcs);
    }
    let (src, sink) = (2 * s + 1, 2 * t);
    let mut flow = 0;
    while flow < want {
        let mut prev = vec![usize::MAX; 2 * n];
        let mut queue = VecDeque::from([src]);
        prev[src] = usize::MAX - 1;
        while let Some(x) = queue.pop_front() {
            if x == sink {
                break;
            }
            for &arc in &arcs[x] {
                let y = head[arc];
                if cap[arc] > 0 && prev[y] == usize::MAX {
                    prev[y] = arc;
                    queue.push_back(y);
                }
            }
        }
        if prev[sink] == usize::MAX {
            break;
        }
        let mut x = sink;
        while x != src {
            let arc = prev[x];
            cap[arc] -= 1;
            cap[arc ^ 1] += 1;
            x = head[arc ^ 1];
        }
        flow += 1;
    }
    // decompose: follow saturated forward arcs (even index with cap 0)
    let mut paths = Vec::new();
    let mut taken = vec![false; head.len()];
    for _ in 0..flow {
        let mut path = vec![s];
        let mut x = src;
        while x != sink {
            let arc = *arcs[x]
                .iter()
                .find(|&&a| a % 2 == 0 && cap[a] == 0 && !taken[a])
                .expect("flow decomposition");
            taken[arc] = true;
            x = head[arc];
            if x % 2 == 0 {
                path.push(x / 2);
            }
        }
        paths.push(path);
    }
    paths
}

/// A Kuratowski subgraph of a nonplanar graph: edges are deleted greedily
/// while the rest stays nonplanar, leaving a subdivision of K5 or K3,3.
fn kuratowski_edges(g: &SimpleGraph) -> Vec<(usize, usize)> {
    let mut edges = g.edges();
    let mut i = 0;
    while i < edges.len() {
        let e = edges.remove(i);
        if lr_planar(&edges) {
            edges.insert(i, e);
            i += 1;
        }
    }
    edges
}

/// Branch vertices and the paths between them of a subgraph in which every
/// vertex has degree 0, 2 or more.
fn trace_paths(n: usize, edges: &[(usize, usize)]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    let mut paths = Vec::new();
    for &b in &branch {
        for &first in &adj[b] {
            let mut path = vec![b, first];
            while adj[*path.last().unwrap()].len() == 2 {
                let cur = *path.last().unwrap();
                let prev = path[path.len() - 2];
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                path.push(next);
            }
            if b < *path.last().unwrap() {
                paths.push(path);
            }
        }
    }
    (branch, paths)
}

/// Kuratowski witness of a nonplanar graph, as K5 (`0..5`) or K3,3
/// (`a0..a2`, `b0..b2`).
fn kuratowski_witness(g: &SimpleGraph) -> SubdivisionWitness {
    let edges = kuratowski_edges(g);
    let (branch, paths) = trace_paths(g.order(), &edges);
    let label = |v: usize| g.label(v).to_string();
    let mut names: BTreeMap<usize, String> = BTreeMap::new();
    let pattern = if branch.len() == 5 {
        for (i, &b) in branch.iter().enumerate() {
            names.insert(b, i.to_string());
        }
        "K5"
    } else {
        // 2-colour the branch vertices along the traced paths
        let mut side: BTreeMap<usize, usize> = BTreeMap::new();
        side.insert(branch[0], 0);
        let mut changed = true;
        while changed {
            changed = false;
            for p in &paths {
                let (a, b) = (p[0], *p.last().unwrap());
                match (side.get(&a).copied(), side.get(&b).copied()) {
                    (Some(x), None) => {
                        side.insert(b, 1 - x);
                        changed = true;
                    }
                    (None, Some(y)) => {
                        side.insert(a, 1 - y);
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
        let mut counts = [0, 0];
        for &b in &branch {
            let s = side[&b];
            names.insert(b, format!("{}{}", ["a", "b"][s], counts[s]));
            counts[s] += 1;
        }
        "K33"
    };
    let branch_map = names.iter().map(|(&v, name)| (name.clone(), label(v))).collect();
    let path_map = paths
        .into_iter()
        .map(|mut p| {
            let (mut a, mut b) = (names[&p[0]].clone(), names[p.last().unwrap()].clone());
            if a > b {
                std::mem::swap(&mut a, &mut b);
                p.reverse();
            }
            ((a, b), p.into_iter().map(label).collect())
        })
        .collect();
    SubdivisionWitness {
        pattern: pattern.to_string(),
        branch_map,
        path_map,
    }
}

/// Planarity with a Kuratowski witness on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Planarity {
    Planar,
    NonPlanar(SubdivisionWitness),
}

pub fn is_planar(g: &SimpleGraph) -> Result<Planarity> {
    if g.order() > SUBDIVISION_CAP {
        return Err(Error::CapExceeded {
            what: "planarity witness search",
            order: g.order(),
            cap: SUBDIVISION_CAP,
        });
    }
    let euler_nonplanar = g.order() >= 3 && g.size() > 3 * g.order() - 6;
    if !euler_nonplanar && lr_planar(&g.edges()) {
        return Ok(Planarity::Planar);
    }
    Ok(Planarity::NonPlanar(kuratowski_witness(g)))
}

/// The pattern graph for a Kuratowski witness name.
pub fn kuratowski_pattern(name: &str) -> SimpleGraph {
    if name == "K5" {
        SimpleGraph::complete(5)
    } else {
        SimpleGraph::complete_bipartite(3, 3)
    }
}

/// Drops the paths of `01` and `23` from a K5 witness.
fn k5_to_k5_minus_2k2(w: &SubdivisionWitness) -> SubdivisionWitness {
    let mut out = w.clone();
    out.pattern = Pattern::K5Minus2K2.name().to_string();
    out.path_map.remove(&("0".to_string(), "1".to_string()));
    out.path_map.remove(&("2".to_string(), "3".to_string()));
    out
}

/// Finds a subdivision of one of the named patterns.
pub fn find_pattern(host: &SimpleGraph, p: Pattern) -> Result<Option<SubdivisionWitness>> {
    let graph = p.graph();
    check_caps(host, &graph)?;
    // A nonplanar host yields K5 or K3,3 directly; K5 contains K5 − 2K2.
    if matches!(p, Pattern::K5Minus2K2 | Pattern::K33) && !lr_planar(&host.edges()) {
        let w = kuratowski_witness(host);
        match (p, w.pattern.as_str()) {
            (Pattern::K5Minus2K2, "K5") => return Ok(Some(k5_to_k5_minus_2k2(&w))),
            (Pattern::K33, "K33") => {
                let mut w = w;
                w.pattern = p.name().to_string();
                return Ok(Some(w));
            }
            _ => {}
        }
    }
    Ok(contains_subdivision(host, &graph)?.map(|mut w| {
        w.pattern = p.name().to_string();
        w
    }))
}

/// Outcome of the necessary-condition check for ORTH[3,2,3].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NecessaryCheck {
    NonMember(Obstruction),
    Inconclusive(String),
}

/// Refutes membership of G in ORTH[3,2,3] when G is not a line graph or its
/// root contains a subdivision of K5 − 2K2 or K3,3 (or, with `include_k25`,
/// K2,5). Passing the check decides nothing.
pub fn check_orth323_necessary(g: &SimpleGraph, include_k25: bool) -> Result<NecessaryCheck> {
    let root = match root_graph(g)? {
        RootResult::NotLineGraph(reason) => {
            return Ok(NecessaryCheck::NonMember(Obstruction::NotLineGraph {
                component: g.labels().to_vec(),
                reason,
            }))
        }
        RootResult::Root(r) => r,
    };
    let Some(h) = root.simple_root() else {
        return Ok(NecessaryCheck::Inconclusive(
            "root has parallel edges; reduce twins first".into(),
        ));
    };
    root_obstruction(&h, include_k25)
}

/// The pattern checks on a simple root graph.
pub(crate) fn root_obstruction(h: &SimpleGraph, include_k25: bool) -> Result<NecessaryCheck> {
    if h.order() > SUBDIVISION_CAP {
        return Ok(NecessaryCheck::Inconclusive(format!(
            "root of order {} exceeds the subdivision search cap of {SUBDIVISION_CAP}",
            h.order()
        )));
    }
    let mut patterns = vec![Pattern::K5Minus2K2, Pattern::K33];
    if include_k25 {
        patterns.push(Pattern::K25);
    }
    for p in patterns {
        if let Some(witness) = find_pattern(h, p)? {
            let note = (p == Pattern::K25).then(|| K25_NOTE.to_string());
            return Ok(NecessaryCheck::NonMember(Obstruction::Subdivision {
                pattern: p,
                root: h.clone(),
                witness,
                note,
            }));
        }
    }
    Ok(NecessaryCheck::Inconclusive(
        "root contains none of the forbidden subdivisions; membership is not decided by this check".into(),
    ))
}
