//! Text formats for layouts and representations, and DOT export.
//!
//! A layout file is the tree as an edge list (single-label lines declare
//! lone nodes), then a `leaves:` section of `node vertex` lines. A
//! representation file is the host edge list followed by a `paths:` section
//! of `vertex leaf1 leaf2` lines. `#` starts a comment line.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::layout::{LayoutTree, OrthodoxRepresentation};
use crate::obstructions::SubdivisionWitness;
use crate::tree::Tree;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Tree,
    Leaves,
    Paths,
}

struct Parsed {
    tree: Tree,
    leaves: Vec<(usize, String, String)>,
    paths: Vec<(usize, String, String, String)>,
}

fn parse_sections(text: &str, what: &'static str) -> Result<Parsed> {
    let err = |line: usize, message: String| Error::Format { what, line, message };
    let mut section = Section::Tree;
    let mut tree = Tree::new();
    let mut leaves = Vec::new();
    let mut paths = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        match s {
            "leaves:" => {
                section = Section::Leaves;
                continue;
            }
            "paths:" => {
                section = Section::Paths;
                continue;
            }
            _ => {}
        }
        let fields: Vec<&str> = s.split_whitespace().collect();
        match (section, fields.as_slice()) {
            (Section::Tree, [a]) => {
                tree.add_node(a);
            }
            (Section::Tree, [a, b]) => {
                if a == b {
                    return Err(err(line, format!("loop `{a} {a}`")));
                }
                tree.add_edge_labels(a, b);
            }
            (Section::Leaves, [node, vertex]) => leaves.push((line, node.to_string(), vertex.to_string())),
            (Section::Paths, [vertex, x, y]) => {
                paths.push((line, vertex.to_string(), x.to_string(), y.to_string()))
            }
            (Section::Tree, _) => return Err(err(line, format!("expected one or two node labels, found `{s}`"))),
            (Section::Leaves, _) => return Err(err(line, format!("expected `node vertex`, found `{s}`"))),
            (Section::Paths, _) => return Err(err(line, format!("expected `vertex leaf leaf`, found `{s}`"))),
        }
    }
    if tree.order() == 0 {
        return Err(err(0, "no tree nodes".into()));
    }
    Ok(Parsed { tree, leaves, paths })
}

pub fn parse_layout(text: &str) -> Result<LayoutTree> {
    let parsed = parse_sections(text, "layout")?;
    if !parsed.paths.is_empty() {
        return Err(Error::Format {
            what: "layout",
            line: parsed.paths[0].0,
            message: "`paths:` belongs in representation files".into(),
        });
    }
    let mut leaf_map = BTreeMap::new();
    for (line, node, vertex) in parsed.leaves {
        let Some(id) = parsed.tree.index_of(&node) else {
            return Err(Error::Format {
                what: "layout",
                line,
                message: format!("unknown tree node `{node}`"),
            });
        };
        if leaf_map.insert(id, vertex).is_some() {
            return Err(Error::Format {
                what: "layout",
                line,
                message: format!("node `{node}` mapped twice"),
            });
        }
    }
    Ok(LayoutTree::new(parsed.tree, leaf_map))
}

pub fn write_layout(layout: &LayoutTree) -> String {
    let mut out = String::new();
    write_tree(&mut out, &layout.tree);
    out.push_str("leaves:\n");
    let mut rows: Vec<(&str, &str)> = layout
        .leaf_map
        .iter()
        .map(|(&n, v)| (layout.tree.label(n), v.as_str()))
        .collect();
    rows.sort_unstable();
    for (n, v) in rows {
        let _ = writeln!(out, "{n} {v}");
    }
    out
}

fn write_tree(out: &mut String, tree: &Tree) {
    let mut rows: Vec<(&str, &str)> = tree
        .edges()
        .into_iter()
        .map(|(a, b)| {
            let (x, y) = (tree.label(a), tree.label(b));
            if x <= y { (x, y) } else { (y, x) }
        })
        .collect();
    rows.sort_unstable();
    for v in 0..tree.order() {
        if tree.degree(v) == 0 {
            let _ = writeln!(out, "{}", tree.label(v));
        }
    }
    for (a, b) in rows {
        let _ = writeln!(out, "{a} {b}");
    }
}

pub fn parse_representation(text: &str, h: usize, t: usize) -> Result<OrthodoxRepresentation> {
    let parsed = parse_sections(text, "representation")?;
    if let Some((line, ..)) = parsed.leaves.first() {
        return Err(Error::Format {
            what: "representation",
            line: *line,
            message: "`leaves:` belongs in layout files".into(),
        });
    }
    let mut paths = BTreeMap::new();
    for (line, vertex, x, y) in parsed.paths {
        let lookup = |label: &str| {
            parsed.tree.index_of(label).ok_or_else(|| Error::Format {
                what: "representation",
                line,
                message: format!("unknown host node `{label}`"),
            })
        };
        let ends = (lookup(&x)?, lookup(&y)?);
        if paths.insert(vertex.clone(), ends).is_some() {
            return Err(Error::Format {
                what: "representation",
                line,
                message: format!("vertex `{vertex}` has two paths"),
            });
        }
    }
    Ok(OrthodoxRepresentation {
        host: parsed.tree,
        paths,
        h,
        t,
    })
}

pub fn write_representation(rep: &OrthodoxRepresentation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# h={} t={}", rep.h, rep.t);
    write_tree(&mut out, &rep.host);
    out.push_str("paths:\n");
    for (v, &(a, b)) in &rep.paths {
        let _ = writeln!(out, "{v} {} {}", rep.host.label(a), rep.host.label(b));
    }
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn graph_to_dot(g: &SimpleGraph) -> String {
    let mut out = String::from("graph G {\n");
    let mut names: Vec<&String> = g.labels().iter().collect();
    names.sort();
    for v in names {
        let _ = writeln!(out, "  {};", quote(v));
    }
    let mut edges: Vec<(&str, &str)> = g
        .edges()
        .into_iter()
        .map(|(a, b)| {
            let (x, y) = (g.label(a), g.label(b));
            if x <= y { (x, y) } else { (y, x) }
        })
        .collect();
    edges.sort_unstable();
    for (a, b) in edges {
        let _ = writeln!(out, "  {} -- {};", quote(a), quote(b));
    }
    out.push_str("}\n");
    out
}

fn tree_dot(tree: &Tree, leaf_label: &dyn Fn(usize) -> Option<String>, highlight: &HashSet<(usize, usize)>) -> String {
    let mut out = String::from("graph T {\n");
    let mut order: Vec<usize> = (0..tree.order()).collect();
    order.sort_by(|&a, &b| tree.label(a).cmp(tree.label(b)));
    for v in order {
        match leaf_label(v) {
            Some(l) if l != tree.label(v) => {
                let _ = writeln!(out, "  {} [shape=box, label={}];", quote(tree.label(v)), quote(&l));
            }
            Some(_) => {
                let _ = writeln!(out, "  {} [shape=box];", quote(tree.label(v)));
            }
            None => {
                let _ = writeln!(out, "  {} [shape=point];", quote(tree.label(v)));
            }
        }
    }
    let mut edges: Vec<(usize, usize)> = tree.edges();
    edges.sort_by(|x, y| (tree.label(x.0), tree.label(x.1)).cmp(&(tree.label(y.0), tree.label(y.1))));
    for (a, b) in edges {
        let style = if highlight.contains(&(a.min(b), a.max(b))) {
            " [color=red, penwidth=2]"
        } else {
            ""
        };
        let _ = writeln!(out, "  {} -- {}{};", quote(tree.label(a)), quote(tree.label(b)), style);
    }
    out.push_str("}\n");
    out
}

/// Leaves drawn as boxes labelled with their vertex, internal nodes as
/// points.
pub fn layout_to_dot(layout: &LayoutTree) -> String {
    tree_dot(&layout.tree, &|v| layout.leaf_map.get(&v).cloned(), &HashSet::new())
}

/// The host tree; path endpoints go to [`representation_sidecar`].
pub fn representation_to_dot(rep: &OrthodoxRepresentation) -> String {
    let leaves: BTreeSet<usize> = rep.host.leaves().into_iter().collect();
    tree_dot(
        &rep.host,
        &|v| leaves.contains(&v).then(|| rep.host.label(v).to_string()),
        &HashSet::new(),
    )
}

/// One line per vertex: `vertex leaf1 leaf2 | node node …`.
pub fn representation_sidecar(rep: &OrthodoxRepresentation) -> String {
    let mut out = String::new();
    let rooted = rep.host.rooted();
    for (v, &(a, b)) in &rep.paths {
        let nodes: Vec<&str> = rooted.path(a, b).into_iter().map(|x| rep.host.label(x)).collect();
        let _ = writeln!(
            out,
            "{v} {} {} | {}",
            rep.host.label(a),
            rep.host.label(b),
            nodes.join(" ")
        );
    }
    out
}

/// The host graph with the witness paths in red and branch vertices boxed.
pub fn witness_to_dot(host: &SimpleGraph, witness: &SubdivisionWitness) -> String {
    let branch: BTreeMap<&str, &str> = witness
        .branch_map
        .iter()
        .map(|(p, h)| (h.as_str(), p.as_str()))
        .collect();
    let mut used: HashSet<(String, String)> = HashSet::new();
    for path in witness.path_map.values() {
        for w in path.windows(2) {
            let (a, b) = if w[0] <= w[1] { (&w[0], &w[1]) } else { (&w[1], &w[0]) };
            used.insert((a.clone(), b.clone()));
        }
    }
    let mut out = format!("graph {} {{\n", quote(&witness.pattern));
    let mut names: Vec<&String> = host.labels().iter().collect();
    names.sort();
    for v in names {
        match branch.get(v.as_str()) {
            Some(p) => {
                let _ = writeln!(
                    out,
                    "  {} [shape=box, color=red, xlabel={}];",
                    quote(v),
                    quote(p)
                );
            }
            None => {
                let _ = writeln!(out, "  {};", quote(v));
            }
        }
    }
    let mut edges: Vec<(String, String)> = host
        .edges()
        .into_iter()
        .map(|(a, b)| {
            let (x, y) = (host.label(a).to_string(), host.label(b).to_string());
            if x <= y { (x, y) } else { (y, x) }
        })
        .collect();
    edges.sort();
    for (a, b) in edges {
        let style = if used.contains(&(a.clone(), b.clone())) {
            " [color=red, penwidth=2]"
        } else {
            ""
        };
        let _ = writeln!(out, "  {} -- {}{};", quote(&a), quote(&b), style);
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::{orthodox_representation, validate_layout, validate_representation};

    const DOUBLE_STAR: &str = "# double star\np q\na p\nb p\nc q\nd q\nleaves:\na 0\nb 1\nc 2\nd 3\n";

    #[test]
    fn layout_round_trip() {
        let layout = parse_layout(DOUBLE_STAR).unwrap();
        let k4 = SimpleGraph::complete(4);
        assert_eq!(validate_layout(&layout, &k4, 3, 3), Ok(()));
        let again = parse_layout(&write_layout(&layout)).unwrap();
        assert_eq!(write_layout(&again), write_layout(&layout));
    }

    #[test]
    fn representation_round_trip() {
        let layout = parse_layout(DOUBLE_STAR).unwrap();
        let k4 = SimpleGraph::complete(4);
        let rep = orthodox_representation(&layout, &k4, 3, 3).unwrap();
        let text = write_representation(&rep);
        let back = parse_representation(&text, 3, 3).unwrap();
        assert_eq!(validate_representation(&back, &k4.line_graph(), 3, 3), Ok(()));
        assert_eq!(write_representation(&back), text);
        assert_eq!(representation_sidecar(&back).lines().count(), 6);
    }

    #[test]
    fn malformed_files() {
        assert!(matches!(parse_layout("a a\n"), Err(Error::Format { line: 1, .. })));
        assert!(matches!(parse_layout("a b\nleaves:\nz 0\n"), Err(Error::Format { line: 3, .. })));
        assert!(parse_layout("").is_err());
        assert!(parse_representation("a b\npaths:\nu a\n", 3, 1).is_err());
    }

    #[test]
    fn dot_output() {
        let dot = graph_to_dot(&SimpleGraph::path(3));
        assert!(dot.starts_with("graph G {"));
        assert!(dot.contains("\"0\" -- \"1\";"));
        let layout = parse_layout(DOUBLE_STAR).unwrap();
        let dot = layout_to_dot(&layout);
        assert!(dot.contains("\"a\" [shape=box, label=\"0\"];"));
    }
}
