//! Leaf bounds for trees of bounded degree and leaf diameter, and the
//! separating intervals they induce for line graphs of complete graphs.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::layout::{restrict_layout, validate_layout, LayoutTree};
use crate::tree::Tree;

fn check(h: usize, t: usize) -> Result<()> {
    if h < 3 || t < 3 {
        return Err(Error::Parameters(format!(
            "leaf bounds need h >= 3 and t >= 3, got h = {h}, t = {t}"
        )));
    }
    Ok(())
}

fn power(base: usize, exp: usize) -> Result<usize> {
    u32::try_from(exp)
        .ok()
        .and_then(|e| base.checked_pow(e))
        .ok_or_else(|| Error::Parameters(format!("{base}^{exp} overflows")))
}

/// Maximum number of leaves of a tree with maximum degree at most h in
/// which every two leaves are at distance at most t.
pub fn max_leaves(h: usize, t: usize) -> Result<usize> {
    check(h, t)?;
    let n = if t % 2 == 1 {
        power(h - 1, (t - 1) / 2)?.checked_mul(2)
    } else {
        power(h - 1, t / 2 - 1)?.checked_mul(h)
    };
    n.ok_or_else(|| Error::Parameters("leaf bound overflows".into()))
}

/// Two adjacent roots, each carrying a full (h−1)-ary tree; depths
/// (t−1)/2 on both sides for odd t, t/2 and t/2−1 for even t. Leaves are
/// labelled `l0, l1, …` and internal nodes `i0, i1, …`, both in BFS order.
pub fn extremal_tree(h: usize, t: usize) -> Result<Tree> {
    let leaves = max_leaves(h, t)?;
    let depths = if t % 2 == 1 {
        [(t - 1) / 2; 2]
    } else {
        [t / 2, t / 2 - 1]
    };
    // cheap guard against absurd sizes before allocating
    if leaves > 1 << 20 {
        return Err(Error::Parameters(format!("extremal tree with {leaves} leaves is too large")));
    }

    // Build with temporary labels, then relabel in BFS order.
    let mut tree = Tree::new();
    let roots = [tree.add_node("r0"), tree.add_node("r1")];
    tree.add_edge(roots[0], roots[1]);
    let mut counter = 0usize;
    for (side, &depth) in depths.iter().enumerate() {
        let mut frontier = vec![roots[side]];
        for _ in 0..depth {
            let mut next = Vec::new();
            for &v in &frontier {
                for _ in 0..h - 1 {
                    let c = tree.add_node(&format!("_{counter}"));
                    counter += 1;
                    tree.add_edge(v, c);
                    next.push(c);
                }
            }
            frontier = next;
        }
    }

    let order = bfs_order(&tree, roots[0]);
    let mut out = Tree::new();
    let mut map = vec![0; tree.order()];
    let (mut li, mut ii) = (0, 0);
    for &v in &order {
        let label = if tree.is_leaf(v) {
            li += 1;
            format!("l{}", li - 1)
        } else {
            ii += 1;
            format!("i{}", ii - 1)
        };
        map[v] = out.add_node(&label);
    }
    for (a, b) in tree.edges() {
        out.add_edge(map[a], map[b]);
    }
    debug_assert_eq!(out.leaves().len(), leaves);
    Ok(out)
}

fn bfs_order(tree: &Tree, start: usize) -> Vec<usize> {
    let mut seen = vec![false; tree.order()];
    seen[start] = true;
    let mut order = vec![start];
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for &w in tree.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
    }
    order
}

/// Orders n with L(K_n) ∈ ORTH[h+1,2,t] ∖ ORTH[h,2,t], as `lo..=hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeparatingInterval {
    pub h: usize,
    pub t: usize,
    pub lo: usize,
    pub hi: usize,
}

impl SeparatingInterval {
    pub fn contains(&self, n: usize) -> bool {
        (self.lo..=self.hi).contains(&n)
    }
}

pub fn separating_interval(h: usize, t: usize) -> Result<SeparatingInterval> {
    Ok(SeparatingInterval {
        h,
        t,
        lo: max_leaves(h, t)? + 1,
        hi: max_leaves(h + 1, t)?,
    })
}

/// An (h,t)-layout of K_n with vertices `0..n`, cut out of the extremal
/// tree, when n does not exceed the leaf bound.
pub fn complete_graph_layout(n: usize, h: usize, t: usize) -> Result<Option<LayoutTree>> {
    if n == 0 || n > max_leaves(h, t)? {
        return Ok(None);
    }
    let tree = extremal_tree(h, t)?;
    let leaf_map = tree
        .leaves()
        .into_iter()
        .enumerate()
        .map(|(i, v)| (v, i.to_string()))
        .collect();
    let full = LayoutTree::new(tree, leaf_map);
    let keep: HashSet<String> = (0..n).map(|i| i.to_string()).collect();
    Ok(Some(restrict_layout(&full, &keep)))
}

/// Whether L(K_n) ∈ ORTH[h,2,t]. Orders up to 3 are settled by explicit
/// layouts; beyond that by the leaf bound.
pub fn complete_line_graph_member(n: usize, h: usize, t: usize) -> Result<bool> {
    let bound = max_leaves(h, t)?;
    if n == 0 {
        return Err(Error::Parameters("n must be at least 1".into()));
    }
    if n >= 4 {
        return Ok(n <= bound);
    }
    // K1 has an edgeless line graph; K2 and K3 are laid out by an edge and a star.
    let mut tree = Tree::new();
    match n {
        1 => {
            tree.add_node("0");
        }
        2 => tree.add_edge_labels("0", "1"),
        _ => {
            for v in ["0", "1", "2"] {
                tree.add_edge_labels(v, "c");
            }
        }
    }
    let layout = LayoutTree::identity(tree);
    Ok(validate_layout(&layout, &SimpleGraph::complete(n), h, t).is_ok())
}
