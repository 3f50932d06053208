use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use listcast::binomial::make_binomial_tree;
use listcast::bounds::{edge_budget_subcube, leading_ones};
use listcast::graph::make_two_cycles;
use listcast::instance::{to_dot, InstanceFile, Metadata};
use listcast::schemes::{binomial_forest, clique_lists, forest_decompose, hypercube_lists, subcube_union};
use listcast::search::{optimal_list_assignment, ListSpace, SearchConfig};
use listcast::sim::{ceil_log2, max_broadcast_time, simulate};
use listcast::verify::{separation_report, verify_family, Family, VerificationRecord};
use listcast::{Error, Graph, ListAssignment, Model, NodeId};

#[derive(Parser)]
#[command(name = "listcast", version, about = "Source-oblivious broadcast schemes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph (and its lists, where defined) and write it as JSON.
    Construct {
        #[command(flatten)]
        target: Target,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate a broadcast on an instance file.
    Simulate {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 0)]
        source: NodeId,
        /// Report the worst case over every source instead.
        #[arg(long, conflicts_with = "source")]
        all_sources: bool,
        #[arg(long, default_value = "fa", value_parser = parse_model)]
        model: Model,
        /// Print the per-round calls and per-node informed rounds.
        #[arg(long)]
        trace: bool,
        /// Print the trace as JSON.
        #[arg(long, requires = "trace")]
        json: bool,
    },
    /// Check a family over a parameter range.
    Verify {
        #[arg(value_name = "FAMILY", required_unless_present = "family")]
        family_pos: Option<String>,
        #[arg(long, conflicts_with = "family_pos")]
        family: Option<String>,
        /// Inclusive range `A..B` of `n` (of `d` for the hypercube).
        #[arg(long, value_parser = parse_range)]
        range: RangeInclusive<u64>,
        /// Extra model to report alongside the fully-adaptive verdict.
        #[arg(long, value_parser = parse_model)]
        model: Option<Model>,
        /// Line-delimited JSON output path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classic versus list broadcast time on the two-cycle graphs.
    Separation {
        /// Inclusive range of `k`.
        #[arg(long, value_parser = parse_range, default_value = "1..2")]
        range: RangeInclusive<u64>,
        #[arg(long, value_parser = parse_model)]
        model: Option<Model>,
    },
    /// Exhaustively search for the best list assignment.
    Search {
        #[command(flatten)]
        target: OptionalTarget,
        #[arg(long, conflicts_with = "family_pos")]
        instance: Option<PathBuf>,
        #[arg(long, default_value = "fa", value_parser = parse_model)]
        model: Model,
        #[arg(long, default_value = "perm", value_parser = parse_list_space)]
        list_space: ListSpace,
        /// Maximum number of assignments to evaluate.
        #[arg(long, default_value_t = SearchConfig::DEFAULT_ASSIGNMENT_BUDGET)]
        budget: u64,
    },
    /// Print rounds, L(n), forest decomposition and edge budgets for n.
    Bounds {
        #[arg(long)]
        n: u64,
    },
    /// Write an instance as Graphviz DOT.
    ExportDot {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Hypercube,
    Clique,
    #[value(name = "theorem1", alias = "subcube-union")]
    SubcubeUnion,
    #[value(name = "theorem2", alias = "binomial-forest")]
    BinomialForest,
    TwoCycles,
    BinomialTree,
}

#[derive(Args)]
struct Target {
    #[arg(value_enum, value_name = "FAMILY", required_unless_present = "family")]
    family_pos: Option<Kind>,
    #[arg(long, value_enum, conflicts_with = "family_pos")]
    family: Option<Kind>,
    #[command(flatten)]
    params: Params,
}

#[derive(Args)]
struct OptionalTarget {
    #[arg(value_enum, value_name = "FAMILY")]
    family_pos: Option<Kind>,
    #[arg(long, value_enum, conflicts_with = "family_pos")]
    family: Option<Kind>,
    #[command(flatten)]
    params: Params,
}

#[derive(Args, Clone, Copy)]
struct Params {
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    d: Option<u64>,
}

fn parse_model(s: &str) -> Result<Model, Error> {
    s.parse()
}

fn parse_list_space(s: &str) -> Result<ListSpace, Error> {
    s.parse()
}

fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: u64 = a.trim().parse().map_err(|e| format!("bad range start {a:?}: {e}"))?;
    let b: u64 = b.trim().parse().map_err(|e| format!("bad range end {b:?}: {e}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}

enum Failure {
    Usage(String),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn need(p: Option<u64>, flag: &str, kind: &str) -> Result<u64, Failure> {
    p.ok_or_else(|| Failure::Usage(format!("{kind} needs --{flag}")))
}

fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Hypercube => "hypercube",
        Kind::Clique => "clique",
        Kind::SubcubeUnion => "subcube-union",
        Kind::BinomialForest => "binomial-forest",
        Kind::TwoCycles => "two-cycles",
        Kind::BinomialTree => "binomial-tree",
    }
}

fn build(kind: Kind, p: Params) -> Result<(Graph, Option<ListAssignment>, Metadata), Failure> {
    let name = kind_name(kind);
    let (g, lists, param) = match kind {
        Kind::Hypercube => {
            let d = need(p.d, "d", name)?;
            let s = hypercube_lists(d as u32)?;
            (s.graph, Some(s.lists), ("d", d))
        }
        Kind::Clique => {
            let n = need(p.n, "n", name)?;
            let s = clique_lists(n as usize)?;
            (s.graph, Some(s.lists), ("n", n))
        }
        Kind::SubcubeUnion => {
            let n = need(p.n, "n", name)?;
            if n.is_power_of_two() {
                return Err(Failure::Usage(format!(
                    "n = {n} is a power of two; use the hypercube family with --d {}",
                    n.trailing_zeros()
                )));
            }
            let s = subcube_union(n as usize)?;
            (s.graph, Some(s.lists), ("n", n))
        }
        Kind::BinomialForest => {
            let n = need(p.n, "n", name)?;
            let s = binomial_forest(n as usize)?.into_scheme();
            (s.graph, Some(s.lists), ("n", n))
        }
        Kind::TwoCycles => {
            let k = need(p.k, "k", name)?;
            (make_two_cycles(k as usize)?, None, ("k", k))
        }
        Kind::BinomialTree => {
            let d = need(p.d, "d", name)?;
            (make_binomial_tree(d as u32)?.graph, None, ("d", d))
        }
    };
    Ok((g, lists, Metadata::new(name, [param])))
}

fn write_output(out: Option<&Path>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn load(path: &Path) -> Result<InstanceFile, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    InstanceFile::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn cmd_construct(target: Target, out: Option<PathBuf>) -> CmdResult {
    let kind = target.family.or(target.family_pos).expect("clap requires a family");
    let (g, lists, meta) = build(kind, target.params)?;
    let file = InstanceFile::new(&g, lists.as_ref(), Some(meta));
    write_output(out.as_deref(), &file.to_json())?;
    Ok(())
}

fn cmd_simulate(
    instance: &Path,
    source: NodeId,
    all_sources: bool,
    model: Model,
    trace: bool,
    json: bool,
) -> CmdResult {
    let file = load(instance)?;
    let g = file.graph()?;
    let lists = file
        .list_assignment()?
        .ok_or_else(|| Failure::Usage(format!("{} has no lists", instance.display())))?;

    if all_sources {
        let times = max_broadcast_time(&g, &lists, model)?;
        for (s, t) in times.per_source.iter().enumerate() {
            println!("source {s}: {t}");
        }
        println!("completion: {}", times.worst);
        return if times.worst.is_finite() { Ok(()) } else { Err(Failure::Check) };
    }

    let t = simulate(&g, &lists, source, model)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&t).expect("trace serialization cannot fail"));
    } else {
        println!("completion: {}", t.completion);
        if trace {
            for (i, calls) in t.calls.iter().enumerate() {
                let calls: Vec<String> = calls.iter().map(|(u, v)| format!("{u}->{v}")).collect();
                println!("round {}: {}", i + 1, calls.join(" "));
            }
            let informed: Vec<String> = t.informed_at.iter().map(|r| r.to_string()).collect();
            println!("informed_at: {}", informed.join(" "));
        }
    }
    if t.completion.is_finite() { Ok(()) } else { Err(Failure::Check) }
}

fn verify_row(r: &VerificationRecord) -> String {
    let mut row = format!(
        "{:>6} {:>3} {:>8} {:>8} {:>4}..{:<4} {:>5} {:>5}",
        r.n, r.m, r.edges, r.edge_budget, r.min_degree, r.max_degree, r.worst_rounds, r.expected_rounds
    );
    if let Some(f) = r.forest {
        row += &format!(
            " {:>3} {:>5} {:>3} {:>5} {:>9}{}",
            f.k,
            f.r,
            f.leading_ones,
            f.trees_minus_one,
            f.sparsity_limit,
            if f.flagged { " FLAG" } else { "" }
        );
    }
    if let Some(c) = r.comparison {
        row += &format!(" {}={}", c.model.short_name(), c.worst_rounds);
    }
    row += if r.pass && r.forest.is_none_or(|f| f.sparsity_ok) { "  pass" } else { "  FAIL" };
    row
}

fn cmd_verify(family: &str, range: RangeInclusive<u64>, model: Option<Model>, out: Option<&Path>) -> CmdResult {
    let family: Family = family.parse()?;
    let report = verify_family(family, range, model)?;

    if let Some(path) = out {
        let mut text = String::new();
        for r in &report.records {
            text += &serde_json::to_string(r).expect("record serialization cannot fail");
            text.push('\n');
        }
        fs::write(path, text)?;
    }

    let mut header = format!(
        "{:>6} {:>3} {:>8} {:>8} {:>10} {:>5} {:>5}",
        if family == Family::Hypercube { "d" } else { "n" },
        "m",
        "edges",
        "budget",
        "degree",
        "worst",
        "want"
    );
    if family == Family::BinomialForest {
        header += &format!(" {:>3} {:>5} {:>3} {:>5} {:>9}", "k", "r", "L", "m-k-1", "sparsity");
    }
    let mut stdout = io::stdout().lock();
    writeln!(stdout, "{header}")?;
    for r in &report.records {
        writeln!(stdout, "{}", verify_row(r))?;
    }
    let passed = report.records.iter().filter(|r| r.pass).count();
    writeln!(
        stdout,
        "{family}: {passed}/{} pass, {} skipped",
        report.records.len(),
        report.skipped.len()
    )?;
    if report.all_pass() { Ok(()) } else { Err(Failure::Check) }
}

fn cmd_separation(range: RangeInclusive<u64>, model: Option<Model>) -> CmdResult {
    let rows = separation_report(*range.start() as usize..=*range.end() as usize, model)?;
    let mut ok = true;
    for row in &rows {
        let mut line = format!(
            "k={} nodes={} classic={} (want {}) list-optimum={}{}",
            row.k,
            row.nodes,
            row.classic,
            row.expected_classic,
            row.list_optimum,
            if row.exact { "" } else { " (non-exact)" }
        );
        if let Some(c) = row.comparison {
            line += &format!(" {}={}", c.model.short_name(), c.worst_rounds);
        }
        line += if row.strict { " strict" } else { " not-strict" };
        println!("{line}");
        ok &= row.exact && row.strict && row.classic == row.expected_classic;
    }
    if ok { Ok(()) } else { Err(Failure::Check) }
}

fn cmd_search(
    target: OptionalTarget,
    instance: Option<&Path>,
    model: Model,
    list_space: ListSpace,
    budget: u64,
) -> CmdResult {
    let g = match (target.family.or(target.family_pos), instance) {
        (Some(kind), None) => build(kind, target.params)?.0,
        (None, Some(path)) => load(path)?.graph()?,
        _ => return Err(Failure::Usage("search needs a family or --instance".into())),
    };
    let mut cfg = SearchConfig::new(model, list_space);
    cfg.assignment_budget = budget;
    let out = optimal_list_assignment(&g, &cfg)?;
    println!("best: {}", out.best);
    println!("exact: {}", out.exact);
    println!("enumerated: {} of {}", out.enumerated, out.space_size);
    for (v, list) in out.witness.lists().iter().enumerate() {
        let list: Vec<String> = list.iter().map(u32::to_string).collect();
        println!("  {v}: [{}]", list.join(", "));
    }
    if out.exact && out.best.is_finite() { Ok(()) } else { Err(Failure::Check) }
}

fn cmd_bounds(n: u64) -> CmdResult {
    if n < 2 {
        return Err(Failure::Usage(format!("bounds needs n >= 2, got {n}")));
    }
    println!("n: {n}");
    println!("m: {}", ceil_log2(n));
    println!("L: {}", leading_ones(n)?);
    println!("subcube-union budget: {}", edge_budget_subcube(n as usize));
    if n.is_power_of_two() {
        println!("binomial-forest: n is a power of two; use the hypercube (d = {})", n.trailing_zeros());
    } else if n >= 3 {
        let dec = forest_decompose(n as usize)?;
        println!("binomial-forest: (m, k, r) = ({}, {}, {})", dec.m, dec.k, dec.r);
        println!("binomial-forest budget: {}", dec.edge_budget());
    }
    Ok(())
}

fn cmd_export_dot(instance: &Path, out: Option<&Path>) -> CmdResult {
    let g = load(instance)?.graph()?;
    write_output(out, &to_dot(&g))?;
    Ok(())
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Construct { target, out } => cmd_construct(target, out),
        Command::Simulate { instance, source, all_sources, model, trace, json } => {
            cmd_simulate(&instance, source, all_sources, model, trace, json)
        }
        Command::Verify { family_pos, family, range, model, out } => {
            let family = family.or(family_pos).expect("clap requires a family");
            cmd_verify(&family, range, model, out.as_deref())
        }
        Command::Separation { range, model } => cmd_separation(range, model),
        Command::Search { target, instance, model, list_space, budget } => {
            cmd_search(target, instance.as_deref(), model, list_space, budget)
        }
        Command::Bounds { n } => cmd_bounds(n),
        Command::ExportDot { instance, out } => cmd_export_dot(&instance, out.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
