//! Membership decisions for ORTH[h,2,t].
//!
//! Every decision runs the same pipeline: identify twins, split the
//! quotient into components, reconstruct each component's root graph H and
//! decide whether H has an (h,t)-tree layout. Member verdicts carry a
//! representation of the input validated against it; NonMember verdicts
//! carry an obstruction for one component of the quotient.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use rayon::prelude::*;

use crate::bounds::{complete_graph_layout, max_leaves};
use crate::error::{Error, Result};
use crate::graph::{blocks, fresh_label, reduce_twins, SimpleGraph};
use crate::layout::{
    combine_layouts, join_representations, representation_from_pairs, validate_layout,
    validate_representation, LayoutTree, OrthodoxRepresentation,
};
use crate::linegraph::{root_graph, NotLineGraph, RootResult};
use crate::obstructions::{root_obstruction, NecessaryCheck, Pattern, SubdivisionWitness};
use crate::tree::Tree;

pub const DEFAULT_MAX_INPUT: usize = 512;
pub const BRUTE_FORCE_CAP: usize = 9;
/// Hard ceiling for the exhaustive search: node sets are 64-bit masks.
const BRUTE_FORCE_HARD_CAP: usize = 32;
/// Pieces at or below this order go straight to the exhaustive search.
const RECURSION_BASE: usize = 8;
const SEPARATOR_CANDIDATES_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest accepted input order.
    pub max_input: usize,
    /// Largest root order handed to the exhaustive layout search.
    pub brute_force: usize,
    pub include_k25: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_input: DEFAULT_MAX_INPUT,
            brute_force: BRUTE_FORCE_CAP,
            include_k25: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Member,
    NonMember,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Member => "Member",
            Verdict::NonMember => "NonMember",
            Verdict::Inconclusive => "Inconclusive",
        })
    }
}

/// Why a graph is not in the class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// A component of the twin quotient is not a line graph.
    NotLineGraph { component: Vec<String>, reason: NotLineGraph },
    /// A block of the root with more than 3 vertices.
    OversizedBlock { root: SimpleGraph, block: Vec<String> },
    Subdivision {
        pattern: Pattern,
        root: SimpleGraph,
        witness: SubdivisionWitness,
        note: Option<String>,
    },
    /// The induced subgraph of the root on `piece` has no layout.
    NoLayout { root: SimpleGraph, piece: Vec<String>, reason: String },
    /// The root is K_n with n above the leaf bound.
    CompleteGraphBound { order: usize, max_leaves: usize },
    /// Host trees of maximum degree 2 are paths; see the reason.
    SmallDegree { reason: String },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::NotLineGraph { reason, .. } => write!(f, "not a line graph: {reason}"),
            Obstruction::OversizedBlock { block, .. } => write!(
                f,
                "root has a block of order {} > 3: {{{}}}",
                block.len(),
                block.join(", ")
            ),
            Obstruction::Subdivision { pattern, note, .. } => {
                write!(f, "root contains a subdivision of {pattern}")?;
                if let Some(note) = note {
                    write!(f, " ({note})")?;
                }
                Ok(())
            }
            Obstruction::NoLayout { piece, reason, .. } => {
                write!(f, "root subgraph on {{{}}} has no layout: {reason}", piece.join(", "))
            }
            Obstruction::CompleteGraphBound { order, max_leaves } => write!(
                f,
                "root is K{order} but trees of this degree and leaf diameter have at most {max_leaves} leaves"
            ),
            Obstruction::SmallDegree { reason } => f.write_str(reason),
        }
    }
}

/// Layout of one component's root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentCertificate {
    pub root: SimpleGraph,
    pub layout: LayoutTree,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    /// Validated against the input graph.
    pub representation: OrthodoxRepresentation,
    pub layouts: Vec<ComponentCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecognitionReport {
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
    pub obstruction: Option<Obstruction>,
    /// Reason for an Inconclusive verdict.
    pub note: Option<String>,
    pub log: Vec<String>,
}

impl RecognitionReport {
    fn member(certificate: Certificate, log: Vec<String>) -> Self {
        RecognitionReport {
            verdict: Verdict::Member,
            certificate: Some(certificate),
            obstruction: None,
            note: None,
            log,
        }
    }

    fn non_member(obstruction: Obstruction, log: Vec<String>) -> Self {
        RecognitionReport {
            verdict: Verdict::NonMember,
            certificate: None,
            obstruction: Some(obstruction),
            note: None,
            log,
        }
    }

    fn inconclusive(note: String, log: Vec<String>) -> Self {
        RecognitionReport {
            verdict: Verdict::Inconclusive,
            certificate: None,
            obstruction: None,
            note: Some(note),
            log,
        }
    }
}

/// Per-root outcome of a decision procedure.
#[derive(Debug, Clone)]
enum Decision {
    Layout(LayoutTree),
    No(Obstruction),
    Unknown(String),
}

fn check_params(h: usize, t: usize) -> Result<()> {
    if h < 2 || t < 1 {
        return Err(Error::Parameters(format!("need h >= 2 and t >= 1, got h = {h}, t = {t}")));
    }
    Ok(())
}

fn describe(g: &SimpleGraph) -> String {
    format!("order {}, size {}", g.order(), g.size())
}

/// Runs the reductions and asks `decide` about every component root.
fn pipeline(
    g: &SimpleGraph,
    h: usize,
    t: usize,
    limits: &Limits,
    decide: &dyn Fn(&SimpleGraph, &mut Vec<String>) -> Result<Decision>,
) -> Result<RecognitionReport> {
    if g.order() == 0 {
        return Err(Error::EmptyGraph);
    }
    if g.order() > limits.max_input {
        return Err(Error::CapExceeded {
            what: "recognition",
            order: g.order(),
            cap: limits.max_input,
        });
    }
    let mut log = Vec::new();
    let (reduced, reps) = reduce_twins(g);
    log.push(format!(
        "twin reduction: {} -> {} vertices",
        g.order(),
        reduced.order()
    ));
    let components = reduced.components();
    log.push(format!("components: {}", components.len()));

    let mut reps_out: Vec<OrthodoxRepresentation> = Vec::new();
    let mut layouts = Vec::new();
    let mut unknown: Option<String> = None;
    for (i, comp) in components.iter().enumerate() {
        let sub = reduced.induced_subgraph(comp);
        let root = match root_graph(&sub)? {
            RootResult::NotLineGraph(reason) => {
                log.push(format!("component {i}: not a line graph"));
                return Ok(RecognitionReport::non_member(
                    Obstruction::NotLineGraph {
                        component: sub.labels().to_vec(),
                        reason,
                    },
                    log,
                ));
            }
            RootResult::Root(r) => r,
        };
        let hgraph = root
            .simple_root()
            .ok_or_else(|| Error::Precondition("twin-free component produced a multigraph root".into()))?;
        log.push(format!("component {i}: root {}", describe(&hgraph)));
        match decide(&hgraph, &mut log)? {
            Decision::Layout(layout) => {
                validate_layout(&layout, &hgraph, h, t).map_err(Error::Invalid)?;
                let pairs: Vec<(String, String, String)> = sub
                    .labels()
                    .iter()
                    .map(|u| {
                        let (x, y) = root.endpoints(u).expect("phi covers the component");
                        (u.clone(), x.to_string(), y.to_string())
                    })
                    .collect();
                let rep = representation_from_pairs(
                    &layout,
                    pairs.iter().map(|(u, x, y)| (u.clone(), x.as_str(), y.as_str())),
                    h,
                    t,
                );
                reps_out.push(rep);
                layouts.push(ComponentCertificate { root: hgraph, layout });
            }
            Decision::No(obstruction) => {
                log.push(format!("component {i}: {obstruction}"));
                return Ok(RecognitionReport::non_member(obstruction, log));
            }
            Decision::Unknown(why) => {
                log.push(format!("component {i}: undecided ({why})"));
                unknown.get_or_insert(why);
            }
        }
    }
    if let Some(why) = unknown {
        return Ok(RecognitionReport::inconclusive(why, log));
    }

    let mut iter = reps_out.into_iter();
    let mut rep = iter.next().expect("at least one component");
    for next in iter {
        rep = join_representations(&rep, &next)?;
    }
    for (v, r) in &reps {
        if v != r {
            let ends = rep.paths[r];
            rep.paths.insert(v.clone(), ends);
        }
    }
    validate_representation(&rep, g, h, t).map_err(Error::Invalid)?;
    log.push(format!("representation validated: host order {}", rep.host.order()));
    Ok(RecognitionReport::member(
        Certificate {
            representation: rep,
            layouts,
        },
        log,
    ))
}

fn blocks_decision(hgraph: &SimpleGraph) -> Result<Decision> {
    let bd = blocks(hgraph);
    if let Some(block) = bd.oversized_block(3) {
        return Ok(Decision::No(Obstruction::OversizedBlock {
            root: hgraph.clone(),
            block: block.iter().map(|&v| hgraph.label(v).to_string()).collect(),
        }));
    }
    Ok(Decision::Layout(build_layout_blocks(hgraph)?))
}

/// ORTH[3,2,2]: a connected twin-free line graph is a member iff every block
/// of its root has at most 3 vertices.
pub fn recognize_orth322(g: &SimpleGraph) -> Result<RecognitionReport> {
    pipeline(g, 3, 2, &Limits::default(), &|hg, _| blocks_decision(hg))
}

/// A (3,1)-tree layout of a connected graph whose blocks have order ≤ 3,
/// built along the block-cut tree: a K2 block uv at u subdivides u's leaf
/// edge by x and hangs v on x; a K3 block uvw additionally inserts y with
/// edges xy, yv, yw.
pub fn build_layout_blocks(hgraph: &SimpleGraph) -> Result<LayoutTree> {
    let n = hgraph.order();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if !hgraph.is_connected() {
        return Err(Error::Disconnected {
            components: hgraph.components().len(),
        });
    }
    let bd = blocks(hgraph);
    if let Some(block) = bd.oversized_block(3) {
        let names: Vec<&str> = block.iter().map(|&v| hgraph.label(v)).collect();
        return Err(Error::Precondition(format!(
            "block {{{}}} has order {} > 3",
            names.join(", "),
            block.len()
        )));
    }
    let mut taken: HashSet<String> = hgraph.labels().iter().cloned().collect();
    let mut fresh = |base: &str| {
        let l = fresh_label(&taken, base);
        taken.insert(l.clone());
        l
    };
    let mut tree = Tree::new();
    if n == 1 {
        tree.add_node(hgraph.label(0));
        return Ok(LayoutTree::identity(tree));
    }

    let mut blocks_at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (b, block) in bd.blocks.iter().enumerate() {
        for &v in block {
            blocks_at[v].push(b);
        }
    }
    let mut done = vec![false; bd.blocks.len()];
    let mut placed = vec![false; n];
    let first = &bd.blocks[0];
    let label = |v: usize| hgraph.label(v).to_string();
    match first.len() {
        2 => tree.add_edge_labels(&label(first[0]), &label(first[1])),
        _ => {
            let c = fresh("c");
            for &v in first {
                tree.add_edge_labels(&label(v), &c);
            }
        }
    }
    for &v in first {
        placed[v] = true;
    }
    done[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(b) = queue.pop_front() {
        for &u in &bd.blocks[b] {
            for &nb in &blocks_at[u] {
                if done[nb] {
                    continue;
                }
                done[nb] = true;
                queue.push_back(nb);
                let leaf = tree.index_of(hgraph.label(u)).expect("cut vertex placed");
                let z = tree.neighbors(leaf)[0];
                let x = tree.subdivide(leaf, z, &fresh("x"));
                let others: Vec<usize> = bd.blocks[nb].iter().copied().filter(|&v| v != u).collect();
                let anchor = if others.len() == 2 {
                    let y = tree.add_node(&fresh("y"));
                    tree.add_edge(x, y);
                    y
                } else {
                    x
                };
                for &v in &others {
                    debug_assert!(!placed[v]);
                    placed[v] = true;
                    let leaf = tree.add_node(&label(v));
                    tree.add_edge(anchor, leaf);
                }
            }
        }
    }
    let leaf_map: BTreeMap<usize, String> = (0..n)
        .map(|v| (tree.index_of(hgraph.label(v)).unwrap(), label(v)))
        .collect();
    Ok(LayoutTree::new(tree, leaf_map))
}

/// Output of the balanced separator search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorSplit {
    pub x: BTreeSet<String>,
    pub a: BTreeSet<String>,
    pub b: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitOutcome {
    Split(SeparatorSplit),
    /// No split exists, so the graph has no (h,t)-tree layout.
    NoSplit,
}

/// max{1, (h−1)^(t−2)}, saturating.
pub fn separator_bound(h: usize, t: usize) -> usize {
    if t <= 2 {
        return 1;
    }
    u32::try_from(t - 2)
        .ok()
        .and_then(|e| (h - 1).checked_pow(e))
        .unwrap_or(usize::MAX)
        .max(1)
}

impl SeparatorSplit {
    /// Re-checks the balance, separator size and separation conditions.
    pub fn verify(&self, graph: &SimpleGraph, h: usize, t: usize) -> bool {
        let n = graph.order();
        let (na, nb) = (self.a.len(), self.b.len());
        let balanced = |k: usize| h * k >= n && h * k <= (h - 1) * n;
        let partition = na + nb == n
            && self.a.is_disjoint(&self.b)
            && graph.labels().iter().all(|v| self.a.contains(v) || self.b.contains(v));
        let x_ok = self.x.len() <= separator_bound(h, t) && self.x.iter().all(|v| graph.index_of(v).is_some());
        let separated = graph.edges().into_iter().all(|(u, v)| {
            let (lu, lv) = (graph.label(u), graph.label(v));
            if self.x.contains(lu) || self.x.contains(lv) {
                return true;
            }
            self.a.contains(lu) == self.a.contains(lv)
        });
        partition && balanced(na) && balanced(nb) && x_ok && separated
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n.saturating_sub(k));
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    r
}

/// Sets X, A, B with n/h ≤ |A|,|B| ≤ (h−1)n/h, |X| ≤ max{1,(h−1)^(t−2)} and
/// no edge between A∖X and B∖X, found by trying every X of the maximal size
/// and assembling A from components of H − X.
pub fn separator_split(graph: &SimpleGraph, h: usize, t: usize) -> Result<SplitOutcome> {
    let n = graph.order();
    if n < 2 {
        return Err(Error::Precondition("separator search needs at least 2 vertices".into()));
    }
    if h < 3 || t < 1 {
        return Err(Error::Parameters(format!("need h >= 3 and t >= 1, got h = {h}, t = {t}")));
    }
    let p = separator_bound(h, t);
    let to_set = |vs: &mut dyn Iterator<Item = usize>| -> BTreeSet<String> {
        vs.map(|v| graph.label(v).to_string()).collect()
    };
    if p.saturating_mul(h) >= (h - 1) * n {
        let k = n.div_ceil(h);
        let b = to_set(&mut (k..n));
        return Ok(SplitOutcome::Split(SeparatorSplit {
            x: b.clone(),
            a: to_set(&mut (0..k)),
            b,
        }));
    }
    if binomial(n, p) > SEPARATOR_CANDIDATES_CAP {
        return Err(Error::CapExceeded {
            what: "separator candidate enumeration",
            order: n,
            cap: n,
        });
    }

    let adj: Vec<Vec<usize>> = (0..n).map(|v| graph.neighbors(v).collect()).collect();
    let split = |combo: &[usize], a: Vec<usize>| {
        let in_a: HashSet<usize> = a.iter().copied().collect();
        SplitOutcome::Split(SeparatorSplit {
            x: to_set(&mut combo.iter().copied()),
            a: to_set(&mut a.into_iter()),
            b: to_set(&mut (0..n).filter(|v| !in_a.contains(v))),
        })
    };
    if p == 1 {
        // single separating vertex: take the most balanced split overall
        let best = (0..n)
            .filter_map(|x| split_for(&adj, &[x], h).map(|a| (x, a)))
            .max_by_key(|(x, a)| (a.len().min(n - a.len()), std::cmp::Reverse(*x)));
        return Ok(match best {
            Some((x, a)) => split(&[x], a),
            None => SplitOutcome::NoSplit,
        });
    }
    let mut combo: Vec<usize> = (0..p).collect();
    loop {
        if let Some(a) = split_for(&adj, &combo, h) {
            return Ok(split(&combo, a));
        }
        // next combination in lexicographic order
        let mut i = p;
        loop {
            if i == 0 {
                return Ok(SplitOutcome::NoSplit);
            }
            i -= 1;
            if combo[i] < n - p + i {
                combo[i] += 1;
                for j in i + 1..p {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn split_for(adj: &[Vec<usize>], x: &[usize], h: usize) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut removed = vec![false; n];
    for &v in x {
        removed[v] = true;
    }
    let mut comp_of = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if removed[s] || comp_of[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        comp_of[s] = id;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for &w in &adj[v] {
                if !removed[w] && comp_of[w] == usize::MAX {
                    comp_of[w] = id;
                    comp.push(w);
                }
            }
        }
        comps.push(comp);
    }
    let (lo_ok, hi_ok) = (|k: usize| h * k >= n, |k: usize| h * k <= (h - 1) * n);
    if comps.iter().any(|c| !hi_ok(c.len())) {
        return None;
    }
    // subset sums over component sizes; keep the sum closest to n/2
    let mut reach: Vec<Vec<bool>> = vec![vec![false; n + 1]; comps.len() + 1];
    reach[0][0] = true;
    for (i, c) in comps.iter().enumerate() {
        for sum in 0..=n {
            if reach[i][sum] {
                reach[i + 1][sum] = true;
                if sum + c.len() <= n {
                    reach[i + 1][sum + c.len()] = true;
                }
            }
        }
    }
    let best = (0..=n)
        .filter(|&sum| reach[comps.len()][sum] && lo_ok(sum) && hi_ok(sum))
        .max_by_key(|&sum| (sum.min(n - sum), std::cmp::Reverse(sum)))?;
    let mut a = Vec::new();
    let mut sum = best;
    for i in (0..comps.len()).rev() {
        if !reach[i][sum] {
            a.extend_from_slice(&comps[i]);
            sum -= comps[i].len();
        }
    }
    a.sort_unstable();
    Some(a)
}

/// Result of the recursive layout search.
#[derive(Debug, Clone)]
enum Piece {
    Layout(LayoutTree),
    NoLayout { piece: Vec<String>, reason: String },
    Unknown(String),
}

fn star_layout(graph: &SimpleGraph) -> LayoutTree {
    let taken: HashSet<String> = graph.labels().iter().cloned().collect();
    let centre = fresh_label(&taken, "c");
    let mut tree = Tree::new();
    for v in graph.labels() {
        tree.add_edge_labels(v, &centre);
    }
    let leaf_map = graph
        .labels()
        .iter()
        .map(|v| (tree.index_of(v).unwrap(), v.clone()))
        .collect();
    LayoutTree::new(tree, leaf_map)
}

/// Joins layouts of vertex-disjoint graphs: each further tree is hung from a
/// new node subdividing a leaf edge of the tree built so far.
fn join_layouts(parts: Vec<LayoutTree>) -> LayoutTree {
    let mut iter = parts.into_iter();
    let mut acc = iter.next().expect("at least one part");
    for next in iter {
        let mut tree = acc.tree.clone();
        let map = tree.absorb(&next.tree);
        let anchor_other = map[*next.leaf_map.keys().next().expect("non-empty layout")];
        let leaf = *acc.leaf_map.keys().next().expect("non-empty layout");
        let anchor = match acc.tree.neighbors(leaf).first() {
            Some(&nb) => tree.subdivide(leaf, nb, "join"),
            None => leaf,
        };
        // a single-node part stays a leaf when hung directly
        let other = if next.tree.order() == 1 {
            anchor_other
        } else {
            let first = *next.leaf_map.keys().next().unwrap();
            let nb = next.tree.neighbors(first)[0];
            tree.subdivide(map[first], map[nb], "join")
        };
        tree.add_edge(anchor, other);
        let mut leaf_map = acc.leaf_map.clone();
        for (&k, v) in &next.leaf_map {
            leaf_map.insert(map[k], v.clone());
        }
        acc = LayoutTree::new(tree, leaf_map);
    }
    acc
}

fn layout_rec(graph: &SimpleGraph, h: usize, t: usize, limits: &Limits, log: &mut Vec<String>) -> Result<Piece> {
    let n = graph.order();
    if n == 1 {
        let mut tree = Tree::new();
        tree.add_node(graph.label(0));
        return Ok(Piece::Layout(LayoutTree::identity(tree)));
    }
    let comps = graph.components();
    if comps.len() > 1 {
        let mut parts = Vec::new();
        for comp in comps {
            match layout_rec(&graph.induced_subgraph(&comp), h, t, limits, log)? {
                Piece::Layout(l) => parts.push(l),
                other => return Ok(other),
            }
        }
        return Ok(Piece::Layout(join_layouts(parts)));
    }
    let exhaustive = |log: &mut Vec<String>| -> Result<Piece> {
        log.push(format!("exhaustive layout search on {} vertices", n));
        Ok(match bruteforce_layout_capped(graph, h, t, limits.brute_force)? {
            Some(l) => Piece::Layout(l),
            None => Piece::NoLayout {
                piece: graph.labels().to_vec(),
                reason: "exhaustive search over all leaf-labelled trees found none".into(),
            },
        })
    };
    if n <= RECURSION_BASE.min(limits.brute_force) {
        return exhaustive(log);
    }
    if t == 2 && n <= h {
        return Ok(Piece::Layout(star_layout(graph)));
    }

    let split = match separator_split(graph, h, t)? {
        SplitOutcome::NoSplit => {
            log.push(format!("no balanced separator on {} vertices", n));
            return Ok(Piece::NoLayout {
                piece: graph.labels().to_vec(),
                reason: "no balanced separator with a single separating vertex exists".into(),
            });
        }
        SplitOutcome::Split(s) => s,
    };
    let x = split.x.iter().next().cloned().expect("t <= 2 separators have one vertex");
    let xi = graph.index_of(&x).unwrap();
    let (mut a_side, mut b_side) = (split.a.clone(), split.b.clone());
    a_side.remove(&x);
    b_side.remove(&x);
    // x joins one side and needs a neighbour b on the other; of the
    // admissible orientations take the one with the smaller larger piece
    let neighbour_in = |side: &BTreeSet<String>| {
        graph
            .neighbors(xi)
            .map(|w| graph.label(w))
            .find(|w| side.contains(*w))
            .map(str::to_string)
    };
    let orientation = [(a_side.clone(), b_side.clone()), (b_side, a_side)]
        .into_iter()
        .filter_map(|(side, rest)| neighbour_in(&rest).map(|b| (side, rest, b)))
        .min_by_key(|(side, rest, _)| (side.len() + 2).max(rest.len() + 1));
    let Some((mut side, rest, b)) = orientation else {
        return Ok(Piece::Unknown("separator vertex has no neighbour in the graph".into()));
    };
    side.insert(x.clone());
    let mut left: Vec<&str> = side.iter().map(String::as_str).collect();
    left.push(&b);
    let mut right: Vec<&str> = rest.iter().map(String::as_str).collect();
    right.push(&x);
    if left.len() >= n || right.len() >= n {
        if n <= limits.brute_force {
            return exhaustive(log);
        }
        return Ok(Piece::Unknown(format!(
            "split of {n} vertices does not shrink and the exhaustive search cap is {}",
            limits.brute_force
        )));
    }
    log.push(format!(
        "split {} vertices at {x}: {} + {}",
        n,
        left.len(),
        right.len()
    ));
    let h_left = graph.induced_by_labels(&left)?;
    let h_right = graph.induced_by_labels(&right)?;
    let l_left = match layout_rec(&h_left, h, t, limits, log)? {
        Piece::Layout(l) => l,
        other => return Ok(other),
    };
    let l_right = match layout_rec(&h_right, h, t, limits, log)? {
        Piece::Layout(l) => l,
        other => return Ok(other),
    };
    let glued = combine_layouts(graph, &l_left, &l_right, &x, &b)?;
    if let Err(v) = validate_layout(&glued, graph, h, t) {
        return Ok(Piece::Unknown(format!("glued layout failed validation: {v}")));
    }
    Ok(Piece::Layout(glued))
}

fn h2t_decision(hgraph: &SimpleGraph, h: usize, t: usize, limits: &Limits, log: &mut Vec<String>) -> Result<Decision> {
    Ok(match layout_rec(hgraph, h, t, limits, log)? {
        Piece::Layout(l) => Decision::Layout(l),
        Piece::NoLayout { piece, reason } => Decision::No(Obstruction::NoLayout {
            root: hgraph.clone(),
            piece,
            reason,
        }),
        Piece::Unknown(why) => Decision::Unknown(why),
    })
}

/// ORTH[h,2,t] for t ∈ {1,2} by recursive balanced splitting of the root,
/// exhaustive search on small pieces, and gluing of the piece layouts.
pub fn recognize_orth_h2t(g: &SimpleGraph, h: usize, t: usize) -> Result<RecognitionReport> {
    recognize_orth_h2t_with(g, h, t, &Limits::default())
}

pub fn recognize_orth_h2t_with(g: &SimpleGraph, h: usize, t: usize, limits: &Limits) -> Result<RecognitionReport> {
    if h < 3 {
        return Err(Error::Parameters(format!("need h >= 3, got {h}")));
    }
    if !(1..=2).contains(&t) {
        return Err(Error::Parameters(format!(
            "the separator recursion needs t in {{1, 2}}, got {t}; use bruteforce_layout"
        )));
    }
    pipeline(g, h, t, limits, &|hg, log| h2t_decision(hg, h, t, limits, log))
}

/// Exhaustive search for an (h,t)-tree layout of H with at most
/// [`BRUTE_FORCE_CAP`] vertices.
pub fn bruteforce_layout(graph: &SimpleGraph, h: usize, t: usize) -> Result<Option<LayoutTree>> {
    bruteforce_layout_capped(graph, h, t, BRUTE_FORCE_CAP)
}

/// As [`bruteforce_layout`] with an explicit cap.
///
/// Trees are grown by inserting the vertices one at a time, either on a
/// new node subdividing an existing edge or on an internal node of degree
/// below h. Every leaf-labelled tree with internal degrees in [3,h] arises
/// exactly once, and since deleting a leaf never increases shared path
/// counts, a partial tree that already violates the layout condition is
/// abandoned with all its extensions.
pub fn bruteforce_layout_capped(graph: &SimpleGraph, h: usize, t: usize, cap: usize) -> Result<Option<LayoutTree>> {
    let n = graph.order();
    if h < 3 || t < 1 {
        return Err(Error::Parameters(format!("need h >= 3 and t >= 1, got h = {h}, t = {t}")));
    }
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let cap = cap.min(BRUTE_FORCE_HARD_CAP);
    if n > cap {
        return Err(Error::CapExceeded {
            what: "exhaustive layout search",
            order: n,
            cap,
        });
    }
    let search = BruteForce::new(graph, h, t);
    let found = search.run();
    let Some(state) = found else { return Ok(None) };
    let layout = search.to_layout(&state);
    validate_layout(&layout, graph, h, t).map_err(Error::Invalid)?;
    Ok(Some(layout))
}

#[derive(Debug, Clone)]
struct Partial {
    adj: Vec<Vec<usize>>,
}

impl Partial {
    fn add_edge(&mut self, a: usize, b: usize) {
        self.adj[a].push(b);
        self.adj[b].push(a);
    }

    fn remove_edge(&mut self, a: usize, b: usize) {
        self.adj[a].retain(|&x| x != b);
        self.adj[b].retain(|&x| x != a);
    }
}

struct BruteForce<'a> {
    graph: &'a SimpleGraph,
    n: usize,
    h: usize,
    t: usize,
    /// Graph vertex at each insertion position.
    order: Vec<usize>,
    /// Edges (as positions) with both ends among the first k+1 positions.
    edges_upto: Vec<Vec<(usize, usize)>>,
}

impl<'a> BruteForce<'a> {
    fn new(graph: &'a SimpleGraph, h: usize, t: usize) -> Self {
        let n = graph.order();
        // BFS from a vertex of maximum degree so that edges appear early
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        let mut starts: Vec<usize> = (0..n).collect();
        starts.sort_by_key(|&v| (std::cmp::Reverse(graph.degree(v)), v));
        for s in starts {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                let mut nbs: Vec<usize> = graph.neighbors(v).filter(|&w| !seen[w]).collect();
                nbs.sort_by_key(|&w| (std::cmp::Reverse(graph.degree(w)), w));
                for w in nbs {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut edges_upto = vec![Vec::new(); n];
        for (a, b) in graph.edges() {
            let (pa, pb) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
            for list in edges_upto.iter_mut().skip(pb) {
                list.push((pa, pb));
            }
        }
        BruteForce {
            graph,
            n,
            h,
            t,
            order,
            edges_upto,
        }
    }

    fn run(&self) -> Option<Partial> {
        let n = self.n;
        let mut start = Partial {
            adj: vec![Vec::new(); (2 * n).max(2)],
        };
        match n {
            1 => return Some(start),
            2 => {
                start.add_edge(0, 1);
                return Some(start);
            }
            _ => {
                for leaf in 0..3 {
                    start.add_edge(leaf, n);
                }
            }
        }
        // Expand a few levels sequentially, then search the frontier in
        // parallel; `find_map_first` keeps the result deterministic.
        let split_depth = n.min(6);
        let mut frontier = vec![(start, n + 1)];
        for k in 3..split_depth {
            let mut next = Vec::new();
            for (state, next_internal) in &frontier {
                for (child, ni) in self.children(state, k, *next_internal) {
                    next.push((child, ni));
                }
            }
            frontier = next;
        }
        frontier
            .into_par_iter()
            .find_map_first(|(state, ni)| self.dfs(state, split_depth, ni))
    }

    fn dfs(&self, state: Partial, k: usize, next_internal: usize) -> Option<Partial> {
        if k == self.n {
            return Some(state);
        }
        for (child, ni) in self.children(&state, k, next_internal) {
            if let Some(found) = self.dfs(child, k + 1, ni) {
                return Some(found);
            }
        }
        None
    }

    /// All valid trees obtained by inserting leaf `k`.
    fn children(&self, state: &Partial, k: usize, next_internal: usize) -> Vec<(Partial, usize)> {
        let n = self.n;
        let mut out = Vec::new();
        let nodes: Vec<usize> = (0..k).chain(n..next_internal).collect();
        // subdivide an edge
        for &u in &nodes {
            for &v in &state.adj[u] {
                if u < v {
                    let mut child = state.clone();
                    let w = next_internal;
                    child.remove_edge(u, v);
                    child.add_edge(u, w);
                    child.add_edge(w, v);
                    child.add_edge(w, k);
                    if self.valid(&child, k, next_internal + 1) {
                        out.push((child, next_internal + 1));
                    }
                }
            }
        }
        // attach to an internal node
        for c in n..next_internal {
            if state.adj[c].len() < self.h {
                let mut child = state.clone();
                child.add_edge(c, k);
                if self.valid(&child, k, next_internal) {
                    out.push((child, next_internal));
                }
            }
        }
        out
    }

    fn valid(&self, state: &Partial, k: usize, next_internal: usize) -> bool {
        let edges = &self.edges_upto[k];
        if edges.len() < 2 {
            return true;
        }
        // root at leaf 0; parents by DFS
        let size = next_internal;
        let mut parent = vec![usize::MAX; size];
        let mut depth = vec![0usize; size];
        let mut stack = vec![0usize];
        parent[0] = 0;
        while let Some(v) = stack.pop() {
            for &w in &state.adj[v] {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    depth[w] = depth[v] + 1;
                    stack.push(w);
                }
            }
        }
        let path_mask = |mut a: usize, mut b: usize| -> u64 {
            let mut mask = 0u64;
            while depth[a] > depth[b] {
                mask |= 1 << a;
                a = parent[a];
            }
            while depth[b] > depth[a] {
                mask |= 1 << b;
                b = parent[b];
            }
            while a != b {
                mask |= (1 << a) | (1 << b);
                a = parent[a];
                b = parent[b];
            }
            mask | (1 << a)
        };
        let masks: Vec<u64> = edges.iter().map(|&(a, b)| path_mask(a, b)).collect();
        let limit = self.t - 1;
        for i in 0..edges.len() {
            let (a, b) = edges[i];
            for j in i + 1..edges.len() {
                let (c, d) = edges[j];
                if a == c || a == d || b == c || b == d {
                    continue;
                }
                if (masks[i] & masks[j]).count_ones() as usize > limit {
                    return false;
                }
            }
        }
        true
    }

    fn to_layout(&self, state: &Partial) -> LayoutTree {
        let taken: HashSet<String> = self.graph.labels().iter().cloned().collect();
        let mut tree = Tree::new();
        let mut leaf_map = BTreeMap::new();
        let mut node = vec![usize::MAX; state.adj.len()];
        for (i, &v) in self.order.iter().enumerate() {
            let label = self.graph.label(v);
            node[i] = tree.add_node(label);
            leaf_map.insert(node[i], label.to_string());
        }
        let mut next = 0;
        for i in self.n..state.adj.len() {
            if state.adj[i].is_empty() {
                continue;
            }
            let label = fresh_label(&taken, &format!("n{next}"));
            next += 1;
            node[i] = tree.add_node(&label);
        }
        for (a, list) in state.adj.iter().enumerate() {
            for &b in list {
                if a < b {
                    tree.add_edge(node[a], node[b]);
                }
            }
        }
        LayoutTree::new(tree, leaf_map)
    }
}

fn relabel_layout(layout: &LayoutTree, graph: &SimpleGraph, names: &BTreeMap<String, String>) -> LayoutTree {
    // internal labels must avoid the new leaf labels
    let taken: HashSet<String> = graph.labels().iter().cloned().collect();
    let mut tree = Tree::new();
    let mut leaf_map = BTreeMap::new();
    let mut map = vec![0; layout.tree.order()];
    for v in 0..layout.tree.order() {
        map[v] = match layout.leaf_map.get(&v) {
            Some(vertex) => {
                let name = &names[vertex];
                let id = tree.add_node(name);
                leaf_map.insert(id, name.clone());
                id
            }
            None => tree.add_node(&fresh_label(&taken, layout.tree.label(v))),
        };
    }
    for (a, b) in layout.tree.edges() {
        tree.add_edge(map[a], map[b]);
    }
    LayoutTree::new(tree, leaf_map)
}

fn general_decision(hgraph: &SimpleGraph, h: usize, t: usize, limits: &Limits, log: &mut Vec<String>) -> Result<Decision> {
    let n = hgraph.order();
    if blocks(hgraph).max_block_order() <= 3 {
        log.push("root blocks have order <= 3: block layout".into());
        return blocks_decision(hgraph);
    }
    if h == 3 && t == 3 {
        match root_obstruction(hgraph, limits.include_k25)? {
            NecessaryCheck::NonMember(o) => return Ok(Decision::No(o)),
            NecessaryCheck::Inconclusive(why) => log.push(format!("forbidden subdivisions: {why}")),
        }
    }
    if n >= 4 && hgraph.is_complete() {
        let bound = max_leaves(h, t)?;
        if n > bound {
            return Ok(Decision::No(Obstruction::CompleteGraphBound {
                order: n,
                max_leaves: bound,
            }));
        }
        let layout = complete_graph_layout(n, h, t)?.expect("n within the bound");
        let names: BTreeMap<String, String> = (0..n).map(|i| (i.to_string(), hgraph.label(i).to_string())).collect();
        return Ok(Decision::Layout(relabel_layout(&layout, hgraph, &names)));
    }
    if n <= limits.brute_force {
        log.push(format!("exhaustive layout search on {n} vertices"));
        return Ok(match bruteforce_layout_capped(hgraph, h, t, limits.brute_force)? {
            Some(l) => Decision::Layout(l),
            None => Decision::No(Obstruction::NoLayout {
                root: hgraph.clone(),
                piece: hgraph.labels().to_vec(),
                reason: "exhaustive search over all leaf-labelled trees found none".into(),
            }),
        });
    }
    Ok(Decision::Unknown(format!(
        "recognition for h = {h}, t = {t} is open and the root has {n} > {} vertices for exhaustive search",
        limits.brute_force
    )))
}

/// Host trees of maximum degree 2 are paths with two leaves a, b, so every
/// path is a, b or the whole host. For t = 1 the twin quotient must be an
/// induced subgraph of P3; for t ≥ 2 single-leaf paths meet others in only
/// one node, which leaves complete graphs and 2K1.
fn small_degree_table(g: &SimpleGraph, t: usize) -> Result<RecognitionReport> {
    if g.order() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut log = vec!["h = 2: host trees are paths".to_string()];
    let path_host = |len: usize| {
        let mut host = Tree::new();
        host.add_node("p0");
        for i in 1..len {
            host.add_edge_labels(&format!("p{}", i - 1), &format!("p{i}"));
        }
        host
    };
    let (reduced, reps) = reduce_twins(g);
    let class_of = |v: &str| reduced.index_of(&reps[v]).unwrap();
    let mut paths: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    let host;
    let (a, b) = (0usize, 1usize);
    if t == 1 {
        host = path_host(2);
        let ends: Option<Vec<(usize, usize)>> = match (reduced.order(), reduced.size()) {
            (1, _) => Some(vec![(a, b)]),
            (2, 0) => Some(vec![(a, a), (b, b)]),
            (3, 2) => {
                let mid = (0..3).find(|&v| reduced.degree(v) == 2).unwrap();
                let mut ends = vec![(a, a); 3];
                let mut sides = [(a, a), (b, b)].into_iter();
                for (v, e) in ends.iter_mut().enumerate() {
                    *e = if v == mid { (a, b) } else { sides.next().unwrap() };
                }
                Some(ends)
            }
            _ => None,
        };
        let Some(ends) = ends else {
            return Ok(RecognitionReport::non_member(
                Obstruction::SmallDegree {
                    reason: format!(
                        "twin quotient ({}) is not an induced subgraph of P3",
                        describe(&reduced)
                    ),
                },
                log,
            ));
        };
        for v in g.labels() {
            paths.insert(v.clone(), ends[class_of(v)]);
        }
    } else if g.is_complete() {
        host = path_host(t.max(2));
        for v in g.labels() {
            paths.insert(v.clone(), (0, host.order() - 1));
        }
    } else if g.order() == 2 {
        host = path_host(2);
        paths.insert(g.label(0).to_string(), (a, a));
        paths.insert(g.label(1).to_string(), (b, b));
    } else {
        return Ok(RecognitionReport::non_member(
            Obstruction::SmallDegree {
                reason: format!(
                    "for t >= 2 only complete graphs and 2K1 are representable on a path host; got {}",
                    describe(g)
                ),
            },
            log,
        ));
    }
    let rep = OrthodoxRepresentation { host, paths, h: 2, t };
    validate_representation(&rep, g, 2, t).map_err(Error::Invalid)?;
    log.push("representation validated".into());
    Ok(RecognitionReport::member(
        Certificate {
            representation: rep,
            layouts: Vec::new(),
        },
        log,
    ))
}

/// Dispatches to the strongest applicable procedure.
///
/// * h = 2: path-host table.
/// * t = 1: block criterion (ORTH[h,2,1] coincides with ORTH[3,2,2]).
/// * h = 3, t = 2: block criterion.
/// * h ≥ 4, t = 2: separator recursion.
/// * t ≥ 3: block layouts, forbidden subdivisions for (3,3), the complete
///   graph bound and exhaustive search on small roots; otherwise
///   Inconclusive.
pub fn recognize(g: &SimpleGraph, h: usize, t: usize, limits: &Limits) -> Result<RecognitionReport> {
    check_params(h, t)?;
    if g.order() > limits.max_input {
        return Err(Error::CapExceeded {
            what: "recognition",
            order: g.order(),
            cap: limits.max_input,
        });
    }
    match (h, t) {
        (2, _) => small_degree_table(g, t),
        (_, 1) => {
            let mut report = pipeline(g, h, 1, limits, &|hg, _| blocks_decision(hg))?;
            report
                .log
                .insert(0, format!("t = 1: block criterion applies for every h >= 3 (h = {h})"));
            Ok(report)
        }
        (3, 2) => pipeline(g, 3, 2, limits, &|hg, _| blocks_decision(hg)),
        (_, 2) => recognize_orth_h2t_with(g, h, 2, limits),
        _ => pipeline(g, h, t, limits, &|hg, log| general_decision(hg, h, t, limits, log)),
    }
}
