use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use orthkit::bounds::{extremal_tree, max_leaves, separating_interval};
use orthkit::io::{
    graph_to_dot, layout_to_dot, parse_layout, parse_representation, representation_sidecar,
    representation_to_dot, witness_to_dot, write_layout, write_representation,
};
use orthkit::obstructions::{check_orth323_necessary, find_pattern, NecessaryCheck, Pattern};
use orthkit::{
    orthodox_representation, parse_graph, recognize, root_graph, validate_layout,
    validate_representation, write_graph, Limits, LayoutTree, Obstruction, RecognitionReport,
    RootResult, SimpleGraph, Tree, Verdict,
};

/// Exit code for usage, I/O and input errors.
const EXIT_ERROR: u8 = 3;
const MAX_N_VAR: &str = "ORTHKIT_MAX_N";

#[derive(Parser)]
#[command(name = "orthkit", version)]
#[command(about = "Recognize ORTH[h,2,t] graphs and produce layouts, representations and obstructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Copy)]
struct Params {
    /// Maximum degree of the host tree (>= 2)
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    h: u64,
    /// Intersection threshold (>= 1)
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    t: u64,
}

impl Params {
    fn get(self) -> (usize, usize) {
        (self.h as usize, self.t as usize)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide membership of a graph (edge list) in ORTH[h,2,t].
    ///
    /// Exit status: 0 member, 1 non-member, 2 inconclusive, 3 error.
    Recognize {
        #[command(flatten)]
        params: Params,
        graph: PathBuf,
        /// Write the certificate (members) or witness (subdivision
        /// obstructions) as DOT; members also get a `.rep` file next to it
        #[arg(long, value_name = "DOT_PATH")]
        emit_certificate: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        /// Also test for K2,5 subdivisions at (3,3)
        #[arg(long)]
        include_k25: bool,
        /// Largest root order for the exhaustive layout search
        #[arg(long)]
        brute_force_cap: Option<usize>,
    },
    /// Check a layout of H or a representation of G.
    ///
    /// Exit status: 0 valid, 1 violation, 3 error.
    Validate {
        #[command(flatten)]
        params: Params,
        /// H for a layout, G for a representation
        graph: PathBuf,
        #[arg(long, conflicts_with = "representation", required_unless_present = "representation")]
        layout: Option<PathBuf>,
        #[arg(long)]
        representation: Option<PathBuf>,
    },
    /// Turn a layout of H into an orthodox representation of L(H).
    Represent {
        #[command(flatten)]
        params: Params,
        graph: PathBuf,
        layout: PathBuf,
        #[arg(long, value_enum, default_value_t = RepFormat::Text)]
        format: RepFormat,
        /// Also write L(H) as an edge list, for later validation
        #[arg(long, value_name = "PATH")]
        line_graph_out: Option<PathBuf>,
    },
    /// Reconstruct the root of a line graph; prints the edge list and φ.
    ///
    /// Exit status: 0 root found, 1 not a line graph, 3 error.
    Root { graph: PathBuf },
    /// Leaf bound, separating interval and extremal tree for (h,t), t >= 3.
    Bounds {
        #[command(flatten)]
        params: Params,
        /// Append the extremal tree as DOT
        #[arg(long)]
        dot: bool,
    },
    /// Look for forbidden subdivisions.
    ///
    /// Without --pattern the input is G and its root is checked against the
    /// ORTH[3,2,3] obstructions (exit 1 non-member, 2 inconclusive). With
    /// --pattern the input itself is searched (exit 0 found, 1 not found).
    Obstruct {
        graph: PathBuf,
        #[arg(long, value_parser = parse_pattern)]
        pattern: Option<Pattern>,
        #[arg(long)]
        include_k25: bool,
        /// Write the witness overlay as DOT
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Generate example graphs and trees.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Convert a graph, layout or representation file to DOT.
    ExportDot {
        #[arg(value_enum)]
        kind: DotKind,
        input: PathBuf,
        /// Needed to read representation files
        #[arg(long, default_value_t = 3)]
        h: usize,
        #[arg(long, default_value_t = 2)]
        t: usize,
    },
}

#[derive(Subcommand)]
enum Family {
    /// L(K_n) as an edge list.
    LineOfComplete { n: usize },
    /// A tree with the maximum number of leaves for (h,t).
    ExtremalTree {
        #[command(flatten)]
        params: Params,
        #[arg(long, value_enum, default_value_t = TreeFormat::Dot)]
        format: TreeFormat,
    },
    /// L(K_n) for the smallest n separating ORTH[h+1,2,t] from ORTH[h,2,t].
    SeparatingExample {
        #[command(flatten)]
        params: Params,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RepFormat {
    Text,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeFormat {
    Dot,
    Layout,
}

#[derive(Clone, Copy, ValueEnum)]
enum DotKind {
    Graph,
    Layout,
    Representation,
}

fn parse_pattern(s: &str) -> Result<Pattern, String> {
    s.parse::<Pattern>().map_err(|e| e.to_string())
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_graph(path: &Path) -> anyhow::Result<SimpleGraph> {
    parse_graph(&read(path)?).with_context(|| format!("invalid graph file {}", path.display()))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn limits_from_env(include_k25: bool, brute_force_cap: Option<usize>) -> anyhow::Result<Limits> {
    let mut limits = Limits {
        include_k25,
        ..Limits::default()
    };
    if let Ok(v) = std::env::var(MAX_N_VAR) {
        let n: usize = v
            .trim()
            .parse()
            .with_context(|| format!("{MAX_N_VAR} must be a non-negative integer, got `{v}`"))?;
        limits.max_input = n;
        limits.brute_force = limits.brute_force.min(n);
    }
    if let Some(cap) = brute_force_cap {
        limits.brute_force = cap;
    }
    Ok(limits)
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Member => 0,
        Verdict::NonMember => 1,
        Verdict::Inconclusive => 2,
    }
}

fn obstruction_kind(o: &Obstruction) -> &'static str {
    match o {
        Obstruction::NotLineGraph { .. } => "not_line_graph",
        Obstruction::OversizedBlock { .. } => "oversized_block",
        Obstruction::Subdivision { .. } => "subdivision",
        Obstruction::NoLayout { .. } => "no_layout",
        Obstruction::CompleteGraphBound { .. } => "complete_graph_bound",
        Obstruction::SmallDegree { .. } => "small_degree",
    }
}

/// Writes the certificate files and returns their paths.
fn emit_certificate(report: &RecognitionReport, dot_path: &Path) -> anyhow::Result<Vec<PathBuf>> {
    if let Some(cert) = &report.certificate {
        let rep_path = dot_path.with_extension("rep");
        write(dot_path, &representation_to_dot(&cert.representation))?;
        write(&rep_path, &write_representation(&cert.representation))?;
        return Ok(vec![dot_path.to_path_buf(), rep_path]);
    }
    if let Some(Obstruction::Subdivision { root, witness, .. }) = &report.obstruction {
        write(dot_path, &witness_to_dot(root, witness))?;
        return Ok(vec![dot_path.to_path_buf()]);
    }
    Ok(Vec::new())
}

fn cmd_recognize(
    params: Params,
    graph: &Path,
    certificate: Option<&Path>,
    as_json: bool,
    include_k25: bool,
    brute_force_cap: Option<usize>,
) -> anyhow::Result<u8> {
    let (h, t) = params.get();
    let g = read_graph(graph)?;
    let limits = limits_from_env(include_k25, brute_force_cap)?;
    let report = recognize(&g, h, t, &limits)?;
    let written = match certificate {
        Some(p) => emit_certificate(&report, p)?,
        None => Vec::new(),
    };

    if as_json {
        let obstruction = report.obstruction.as_ref().map(|o| {
            json!({
                "kind": obstruction_kind(o),
                "description": o.to_string(),
            })
        });
        let representation = report
            .certificate
            .as_ref()
            .map(|c| write_representation(&c.representation));
        let out = json!({
            "schema": 1,
            "h": h,
            "t": t,
            "order": g.order(),
            "size": g.size(),
            "verdict": report.verdict.to_string(),
            "obstruction": obstruction,
            "note": report.note,
            "representation": representation,
            "certificate_files": written.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
            "pipeline_log": report.log,
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!("verdict: {}", report.verdict);
        if let Some(o) = &report.obstruction {
            println!("obstruction: {o}");
        }
        if let Some(note) = &report.note {
            println!("note: {note}");
        }
        for p in &written {
            println!("certificate: {}", p.display());
        }
        for line in &report.log {
            println!("  {line}");
        }
    }
    Ok(verdict_code(report.verdict))
}

fn cmd_validate(
    params: Params,
    graph: &Path,
    layout: Option<&Path>,
    representation: Option<&Path>,
) -> anyhow::Result<u8> {
    let (h, t) = params.get();
    let g = read_graph(graph)?;
    let outcome = match (layout, representation) {
        (Some(p), _) => {
            let layout = parse_layout(&read(p)?)?;
            validate_layout(&layout, &g, h, t)
        }
        (None, Some(p)) => {
            let rep = parse_representation(&read(p)?, h, t)?;
            validate_representation(&rep, &g, h, t)
        }
        (None, None) => bail!("pass --layout or --representation"),
    };
    match outcome {
        Ok(()) => {
            println!("ok");
            Ok(0)
        }
        Err(v) => {
            println!("violation: {v}");
            if !v.witness.is_empty() {
                println!("witness: {}", v.witness.join(" "));
            }
            Ok(1)
        }
    }
}

fn cmd_represent(
    params: Params,
    graph: &Path,
    layout: &Path,
    format: RepFormat,
    line_graph_out: Option<&Path>,
) -> anyhow::Result<u8> {
    let (h, t) = params.get();
    let g = read_graph(graph)?;
    let layout = parse_layout(&read(layout)?)?;
    let rep = orthodox_representation(&layout, &g, h, t)?;
    if let Some(p) = line_graph_out {
        write(p, &write_graph(&g.line_graph()))?;
    }
    match format {
        RepFormat::Text => print!("{}", write_representation(&rep)),
        RepFormat::Dot => {
            print!("{}", representation_to_dot(&rep));
            for line in representation_sidecar(&rep).lines() {
                println!("// {line}");
            }
        }
    }
    Ok(0)
}

fn cmd_root(graph: &Path) -> anyhow::Result<u8> {
    let g = read_graph(graph)?;
    if !g.is_connected() {
        bail!("root reconstruction needs a connected graph; split components first");
    }
    match root_graph(&g)? {
        RootResult::NotLineGraph(reason) => {
            println!("not a line graph: {reason}");
            Ok(1)
        }
        RootResult::Root(r) => {
            println!("root:");
            for &(a, b) in r.root.edges() {
                println!("{} {}", r.root.label(a), r.root.label(b));
            }
            println!("phi:");
            for v in r.phi.keys() {
                let (a, b) = r.endpoints(v).expect("phi covers every vertex");
                println!("{v} {a} {b}");
            }
            Ok(0)
        }
    }
}

fn cmd_bounds(params: Params, dot: bool) -> anyhow::Result<u8> {
    let (h, t) = params.get();
    let m = max_leaves(h, t)?;
    let iv = separating_interval(h, t)?;
    println!("max_leaves({h},{t}) = {m}");
    println!(
        "L(K_n) in ORTH[{},2,{t}] \\ ORTH[{h},2,{t}] for n in [{}, {}]",
        h + 1,
        iv.lo,
        iv.hi
    );
    if dot {
        print!("{}", tree_dot(&extremal_tree(h, t)?));
    }
    Ok(0)
}

fn tree_dot(tree: &Tree) -> String {
    layout_to_dot(&LayoutTree::identity(tree.clone()))
}

fn cmd_obstruct(graph: &Path, pattern: Option<Pattern>, include_k25: bool, dot: Option<&Path>) -> anyhow::Result<u8> {
    let g = read_graph(graph)?;
    if let Some(p) = pattern {
        return match find_pattern(&g, p)? {
            Some(w) => {
                println!("found subdivision of {p}");
                for (pv, hv) in &w.branch_map {
                    println!("branch {pv} -> {hv}");
                }
                for ((a, b), path) in &w.path_map {
                    println!("path {a}-{b}: {}", path.join(" "));
                }
                if let Some(d) = dot {
                    write(d, &witness_to_dot(&g, &w))?;
                }
                Ok(0)
            }
            None => {
                println!("no subdivision of {p}");
                Ok(1)
            }
        };
    }
    match check_orth323_necessary(&g, include_k25)? {
        NecessaryCheck::NonMember(o) => {
            println!("NonMember: {o}");
            if let (Obstruction::Subdivision { root, witness, .. }, Some(d)) = (&o, dot) {
                write(d, &witness_to_dot(root, witness))?;
            }
            Ok(1)
        }
        NecessaryCheck::Inconclusive(why) => {
            println!("Inconclusive: {why}");
            Ok(2)
        }
    }
}

fn cmd_generate(family: &Family) -> anyhow::Result<u8> {
    match *family {
        Family::LineOfComplete { n } => {
            if n < 2 {
                bail!("n must be at least 2");
            }
            print!("{}", write_graph(&SimpleGraph::complete(n).line_graph()));
        }
        Family::ExtremalTree { params, format } => {
            let (h, t) = params.get();
            let tree = extremal_tree(h, t)?;
            match format {
                TreeFormat::Dot => print!("{}", tree_dot(&tree)),
                TreeFormat::Layout => {
                    // leaves l0, l1, … carry the vertices 0, 1, … of K_n
                    let leaf_map = tree
                        .leaves()
                        .into_iter()
                        .map(|v| (v, tree.label(v)[1..].to_string()))
                        .collect();
                    print!("{}", write_layout(&LayoutTree::new(tree, leaf_map)));
                }
            }
        }
        Family::SeparatingExample { params } => {
            let (h, t) = params.get();
            let iv = separating_interval(h, t)?;
            println!("# L(K{}) ∈ ORTH[{},2,{t}] ∖ ORTH[{h},2,{t}]", iv.lo, h + 1);
            print!("{}", write_graph(&SimpleGraph::complete(iv.lo).line_graph()));
        }
    }
    Ok(0)
}

fn cmd_export_dot(kind: DotKind, input: &Path, h: usize, t: usize) -> anyhow::Result<u8> {
    let text = read(input)?;
    let dot = match kind {
        DotKind::Graph => graph_to_dot(&parse_graph(&text)?),
        DotKind::Layout => layout_to_dot(&parse_layout(&text)?),
        DotKind::Representation => representation_to_dot(&parse_representation(&text, h, t)?),
    };
    print!("{dot}");
    Ok(0)
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Recognize {
            params,
            graph,
            emit_certificate,
            json,
            include_k25,
            brute_force_cap,
        } => cmd_recognize(
            params,
            &graph,
            emit_certificate.as_deref(),
            json,
            include_k25,
            brute_force_cap,
        ),
        Command::Validate {
            params,
            graph,
            layout,
            representation,
        } => cmd_validate(params, &graph, layout.as_deref(), representation.as_deref()),
        Command::Represent {
            params,
            graph,
            layout,
            format,
            line_graph_out,
        } => cmd_represent(params, &graph, &layout, format, line_graph_out.as_deref()),
        Command::Root { graph } => cmd_root(&graph),
        Command::Bounds { params, dot } => cmd_bounds(params, dot),
        Command::Obstruct {
            graph,
            pattern,
            include_k25,
            dot,
        } => cmd_obstruct(&graph, pattern, include_k25, dot.as_deref()),
        Command::Generate { family } => cmd_generate(&family),
        Command::ExportDot { kind, input, h, t } => cmd_export_dot(kind, &input, h, t),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
