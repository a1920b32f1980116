//! `cutoffgame`: play and solve the numbers game with a cutoff on Dynkin,
//! extended Dynkin, and general Coxeter graphs.
//!
//! Exit codes: 0 on success, 1 on input errors, 2 when `sweep` finds a
//! classifier/oracle disagreement.

mod render;

use anyhow::{anyhow, bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use cutoffgame_core::classify::{Classifier, Tag};
use cutoffgame_core::game::{legal_moves, play, usual_game_terminates, Configuration, Strategy};
use cutoffgame_core::graph::{build_family, CoxeterGraph, Family};
use cutoffgame_core::io::{config_from_json_str, graph_from_json_str};
use cutoffgame_core::minuscule::{extract_witness, verify_minuscule};
use cutoffgame_core::oracle::{explore, Budgets, OracleTag};
use cutoffgame_core::rat::parse_rat_list;
use cutoffgame_core::roots::positive_roots;
use rayon::prelude::*;
use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cutoffgame",
    version,
    about = "Numbers game with a cutoff: play, classify, solve"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a configuration (winning / losing / looping) with a certificate
    Classify(ClassifyArgs),
    /// Play the game under a strategy and print the trace
    Play(PlayArgs),
    /// Exhaustive game-tree exploration, independent of the theorems
    Oracle(OracleArgs),
    /// Enumerate positive roots with heights and depths
    Roots(RootsArgs),
    /// Extract and verify a witness word for a winning configuration
    Witness(WitnessArgs),
    /// Minimal losing configurations: enumeration versus closed form
    Catalog(CatalogArgs),
    /// Classifier-versus-oracle agreement sweep over an integral box
    Sweep(SweepArgs),
    /// Interactive play on stdin/stdout
    Repl(ReplArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct GraphArgs {
    /// Named family: A2, D4, E8, A~2, D~4, E~8, ...
    #[arg(long, conflicts_with = "graph_file")]
    family: Option<String>,
    /// JSON graph file: {"family": "D~", "rank": 4} or {"cartan": [...], "coxeter": {...}}
    #[arg(long)]
    graph_file: Option<PathBuf>,
}

impl GraphArgs {
    fn build(&self) -> Result<CoxeterGraph> {
        match (&self.family, &self.graph_file) {
            (Some(name), None) => {
                let family = Family::parse(name)
                    .ok_or_else(|| anyhow!("unknown family {name:?} (try A2, D~4, E~8)"))?;
                Ok(build_family(family)?)
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                Ok(graph_from_json_str(&text)?)
            }
            _ => bail!("exactly one of --family or --graph-file is required"),
        }
    }
}

#[derive(Args)]
struct ConfigArgs {
    /// Inline amplitudes: integers or p/q, comma separated, e.g. -1,0,1/2
    #[arg(long, conflicts_with = "config_file", allow_hyphen_values = true)]
    config: Option<String>,
    /// JSON array file of amplitudes
    #[arg(long)]
    config_file: Option<PathBuf>,
}

impl ConfigArgs {
    fn build(&self) -> Result<Configuration> {
        match (&self.config, &self.config_file) {
            (Some(inline), None) => Ok(Configuration::new(parse_rat_list(inline)?)),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                Ok(config_from_json_str(&text)?)
            }
            _ => bail!("exactly one of --config or --config-file is required"),
        }
    }
}

#[derive(Args)]
struct BudgetArgs {
    /// Oracle budget: maximum distinct states
    #[arg(long, default_value_t = 1_000_000)]
    max_states: usize,
    /// Oracle budget: maximum exploration depth
    #[arg(long, default_value_t = 10_000)]
    max_depth: usize,
}

impl BudgetArgs {
    fn budgets(&self) -> Budgets {
        Budgets {
            max_states: self.max_states,
            max_depth: self.max_depth,
        }
    }
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    config: ConfigArgs,
    /// Depth bound for root enumeration
    #[arg(long, default_value_t = 64)]
    depth_bound: u32,
    #[command(flatten)]
    budgets: BudgetArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyKind {
    Lowest,
    Random,
    Scripted,
}

#[derive(Args)]
struct PlayArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    config: ConfigArgs,
    /// Move selection: lowest index, seeded random, or a fixed script
    #[arg(long, value_enum, default_value_t = StrategyKind::Lowest)]
    strategy: StrategyKind,
    /// Seed for --strategy random
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Vertex script for --strategy scripted, e.g. 1,0,1
    #[arg(long)]
    script: Option<String>,
    #[arg(long, default_value_t = 10_000)]
    max_steps: usize,
    /// Play the usual game instead (no -1 cutoff)
    #[arg(long)]
    no_cutoff: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    config: ConfigArgs,
    #[command(flatten)]
    budgets: BudgetArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct RootsArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Depth bound for the enumeration
    #[arg(long, default_value_t = 64)]
    depth_bound: u32,
    /// Print the canonical vertex order and exit
    #[arg(long)]
    show_order: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct WitnessArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    config: ConfigArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct CatalogArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Lower amplitude bound of the integral box
    #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
    box_low: i64,
    /// Upper amplitude bound of the integral box
    #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
    box_high: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Integral amplitude box, e.g. -2..2
    #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
    r#box: String,
    #[command(flatten)]
    budgets: BudgetArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct ReplArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    config: ConfigArgs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    if let Ok(threads) = std::env::var("CUTOFFGAME_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Classify(args) => classify_cmd(args),
        Command::Play(args) => play_cmd(args),
        Command::Oracle(args) => oracle_cmd(args),
        Command::Roots(args) => roots_cmd(args),
        Command::Witness(args) => witness_cmd(args),
        Command::Catalog(args) => catalog_cmd(args),
        Command::Sweep(args) => sweep_cmd(args),
        Command::Repl(args) => repl_cmd(args),
    }
}

fn classify_cmd(args: ClassifyArgs) -> Result<ExitCode> {
    let graph = args.graph.build()?;
    let v = args.config.build()?;
    let classifier = Classifier::with_bound(&graph, args.depth_bound, args.budgets.budgets());
    let verdict = classifier.classify(&v)?;
    match args.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&render::verdict_json(&verdict, &classifier, &graph))?
        ),
        Format::Text => print!("{}", render::verdict_text(&verdict)),
    }
    Ok(ExitCode::SUCCESS)
}

fn play_cmd(args: PlayArgs) -> Result<ExitCode> {
    let graph = args.graph.build()?;
    let v = args.config.build()?;
    let strategy = match args.strategy {
        StrategyKind::Lowest => Strategy::LowestIndex,
        StrategyKind::Random => Strategy::Random { seed: args.seed },
        StrategyKind::Scripted => {
            let script = args
                .script
                .as_deref()
                .ok_or_else(|| anyhow!("--strategy scripted needs --script"))?;
            let moves = script
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .context("parsing --script")?;
            Strategy::Scripted(moves)
        }
    };
    let p = play(&graph, &v, &strategy, args.max_steps, !args.no_cutoff)?;
    match args.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&render::play_json(&p, &graph))?
        ),
        Format::Text => print!("{}", render::play_text(&p, &graph)?),
    }
    Ok(ExitCode::SUCCESS)
}

fn oracle_cmd(args: OracleArgs) -> Result<ExitCode> {
    let graph = args.graph.build()?;
    let v = args.config.build()?;
    let exploration = explore(&graph, &v, args.budgets.budgets());
    let termination = usual_game_terminates(&graph, &v, 64);
    match args.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&render::oracle_json(&exploration, &termination))?
        ),
        Format::Text => print!("{}", render::oracle_text(&exploration, &termination)),
    }
    Ok(ExitCode::SUCCESS)
}

fn roots_cmd(args: RootsArgs) -> Result<ExitCode> {
    let graph = args.graph.build()?;
    if args.show_order {
        for (i, label) in graph.vertex_labels().iter().enumerate() {
            println!("{i}: {label}");
        }
        return Ok(ExitCode::SUCCESS);
    }
    let rs = positive_roots(&graph, args.depth_bound);
    match args.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&render::roots_json(&rs))?
        ),
        Format::Text => {
            for (root, depth) in rs.iter() {
                println!("{root}  h={}  dp={depth}", root.height());
            }
            if rs.complete() {
                println!("complete: all {} positive roots enumerated", rs.len());
            } else {
                println!(
                    "incomplete: {} roots within depth {}",
                    rs.len(),
                    rs.max_depth()
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn witness_cmd(args: WitnessArgs) -> Result<ExitCode> {
    let graph = args.graph.build()?;
    let v = args.config.build()?;
    let classifier = Classifier::new(&graph);
    let word = extract_witness(&classifier, &v)?;
    let integral_ok = verify_minuscule(&graph, &word, &v, true).is_ok();
    let relaxed_ok = verify_minuscule(&graph, &word, &v, false).is_ok();
    match args.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&render::witness_json(
                &word,
                &v,
                &graph,
                integral_ok,
                relaxed_ok
            )?)?
        ),
        Format::Text => print!(
            "{}",
            render::witness_text(&word, &v, &graph, integral_ok, relaxed_ok)?
        ),
    }
    Ok(ExitCode::SUCCESS)
}

fn catalog_cmd(args: CatalogArgs) -> Result<ExitCode> {
    let graph = args.graph.build()?;
    let classifier = Classifier::new(&graph);
    let enumerated = classifier.minimal_losing_catalog(args.box_low, args.box_high)?;
    let closed = classifier.closed_form_catalog(args.box_low, args.box_high)?;
    let only_enumerated: Vec<_> = enumerated.iter().filter(|v| !closed.contains(v)).collect();
    let only_closed: Vec<_> = closed.iter().filter(|v| !enumerated.contains(v)).collect();
    match args.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&render::catalog_json(&enumerated, &closed))?
        ),
        Format::Text => {
            println!(
                "minimal losing configurations in [{}, {}]^{}:",
                args.box_low,
                args.box_high,
                graph.n_vertices()
            );
            for v in &enumerated {
                println!("  {v}");
            }
            println!("closed form:");
            for v in &closed {
                println!("  {v}");
            }
            if only_enumerated.is_empty() && only_closed.is_empty() {
                println!("diff: none (sets are equal)");
            } else {
                for v in &only_enumerated {
                    println!("diff: enumerated only {v}");
                }
                for v in &only_closed {
                    println!("diff: closed form only {v}");
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

struct SweepOutcome {
    v: Configuration,
    classifier: Tag,
    oracle: OracleTag,
}

impl SweepOutcome {
    fn agree(&self) -> bool {
        matches!(
            (self.classifier, self.oracle),
            (Tag::Winning, OracleTag::Winning | OracleTag::Mixed)
                | (Tag::Losing, OracleTag::Losing)
                | (Tag::Looping, OracleTag::Looping)
        )
    }
}

fn sweep_cmd(args: SweepArgs) -> Result<ExitCode> {
    let graph = args.graph.build()?;
    let (low, high) = parse_box(&args.r#box)?;
    let classifier = Classifier::with_bound(&graph, 64, args.budgets.budgets());
    let n = graph.n_vertices();
    let mut configs = Vec::new();
    let mut amps = vec![low; n];
    'outer: loop {
        configs.push(Configuration::from_ints(&amps));
        for k in 0..n {
            if amps[k] < high {
                amps[k] += 1;
                continue 'outer;
            }
            amps[k] = low;
        }
        break;
    }
    let budgets = args.budgets.budgets();
    let results: Vec<SweepOutcome> = configs
        .par_iter()
        .map(|v| {
            let classified = classifier
                .classify(v)
                .map(|verdict| verdict.tag)
                .unwrap_or(Tag::Unknown);
            let oracle = explore(&graph, v, budgets).verdict.tag;
            SweepOutcome {
                v: v.clone(),
                classifier: classified,
                oracle,
            }
        })
        .collect();
    let total = results.len();
    let agreed = results.iter().filter(|r| r.agree()).count();
    let first_disagreement = results.iter().find(|r| !r.agree());
    let mut counts = std::collections::BTreeMap::new();
    for r in &results {
        *counts.entry(r.classifier.to_string()).or_insert(0usize) += 1;
    }
    match args.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&render::sweep_json(
                total,
                agreed,
                &counts,
                first_disagreement.map(|r| (&r.v, r.classifier, r.oracle))
            ))?
        ),
        Format::Text => {
            println!("sweep over [{low}, {high}]^{n}: {total} configurations");
            println!("agreement: {agreed}/{total}");
            for (tag, count) in &counts {
                println!("  {tag}: {count}");
            }
            if let Some(r) = first_disagreement {
                println!(
                    "first disagreement: {} classifier={} oracle={}",
                    r.v, r.classifier, r.oracle
                );
            }
        }
    }
    Ok(if agreed == total {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn parse_box(s: &str) -> Result<(i64, i64)> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| anyhow!("--box must look like -2..2"))?;
    let low: i64 = lo.trim().parse().context("parsing box lower bound")?;
    let high: i64 = hi.trim().parse().context("parsing box upper bound")?;
    if low > high {
        bail!("empty box {s:?}");
    }
    Ok((low, high))
}

fn repl_cmd(args: ReplArgs) -> Result<ExitCode> {
    let graph = args.graph.build()?;
    let mut current = args.config.build()?;
    if current.len() != graph.n_vertices() {
        bail!(
            "configuration has {} amplitudes, graph has {}",
            current.len(),
            graph.n_vertices()
        );
    }
    let stdin = std::io::stdin();
    let mut out = std::io::stdout();
    let mut seen = std::collections::HashSet::new();
    seen.insert(current.clone());
    loop {
        let moves = legal_moves(&graph, &current, true);
        if current.is_dominant() {
            writeln!(out, "amps: {current}")?;
            writeln!(out, "result: Won (dominant configuration)")?;
            break;
        }
        if current.is_forbidden() {
            writeln!(out, "amps: {current}")?;
            writeln!(out, "result: Forbidden (an amplitude fell below -1)")?;
            break;
        }
        writeln!(out, "amps: {current}   legal: {moves:?}")?;
        write!(out, "fire> ")?;
        out.flush()?;
        let mut line = String::new();
        if stdin.lock().read_line(&mut line)? == 0 {
            writeln!(out, "result: aborted (end of input)")?;
            break;
        }
        let token = line.trim();
        if token.is_empty() {
            continue;
        }
        if token == "q" || token == "quit" {
            writeln!(out, "result: aborted")?;
            break;
        }
        let Ok(vertex) = token.parse::<usize>() else {
            writeln!(
                out,
                "illegal: {token:?} is not a vertex index (or q to quit)"
            )?;
            continue;
        };
        if !moves.contains(&vertex) {
            writeln!(out, "illegal: vertex {vertex} may not fire here")?;
            continue;
        }
        current = cutoffgame_core::game::fire(&graph, &current, vertex)?;
        if !seen.insert(current.clone()) {
            writeln!(out, "amps: {current}")?;
            writeln!(out, "result: Loop (configuration revisited)")?;
            break;
        }
    }
    Ok(ExitCode::SUCCESS)
}
