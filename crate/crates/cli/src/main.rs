use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use cubewalk_core::cubefunc::{
    gray_to_cycle, is_strongly_connected, recover_removed_permutation, remove_cycle, BooleanMap, Connectivity,
    IterationGraph,
};
use cubewalk_core::graycode::{
    choose_l, count_all_decompositions, count_all_decompositions_excluding_l2, count_fixed_l_decompositions,
    generate_balanced, Balance, GenerateOptions, GrayCode, TransitionSequence,
};
use cubewalk_core::markov::{
    default_sweep, epsilon_sweep, markov_of, mixing_time_with, MixingOptions, DEFAULT_EPSILON,
};
use cubewalk_core::oracle::verify_theorems;
use cubewalk_core::prng::{GeneratorConfig, Profile};
use cubewalk_core::stats::{export_raw, run_battery, BatteryReport, DEFAULT_ALPHA};

#[derive(Parser)]
#[command(name = "cubewalk", version, about = "Gray codes, hypercube maps and the random walks they drive")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Balanced Gray codes.
    #[command(subcommand)]
    Gray(GrayCommand),
    /// Boolean maps obtained by removing a Hamiltonian cycle.
    #[command(subcommand)]
    Func(FuncCommand),
    /// Mixing time of the walk driven by a map.
    Mix(MixArgs),
    /// Raw generator output.
    Rand(RandArgs),
    /// Statistical battery over a file or a generator.
    Stats(StatsArgs),
    /// Exhaustive checks on small cubes.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum GrayCommand {
    /// Emit balanced transition sequences, one per line.
    Gen {
        #[arg(long)]
        n: u32,
        /// Maximum number of decompositions examined.
        #[arg(long)]
        limit: Option<usize>,
        /// Keep only totally balanced codes.
        #[arg(long)]
        totally_balanced: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print decomposition counts.
    Count {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum FuncCommand {
    /// Gray code to function table.
    Build {
        /// File holding a transition sequence (or words with --words).
        #[arg(long, conflicts_with = "inline", required_unless_present = "inline")]
        code: Option<PathBuf>,
        /// Transition sequence given on the command line.
        #[arg(long)]
        inline: Option<String>,
        /// Input lists codewords instead of transitions.
        #[arg(long)]
        words: bool,
    },
    /// Doubly-stochastic and strong-connectivity verdict for a table.
    Check {
        #[arg(long)]
        table: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct MapSource {
    /// Function table such as '[13,10,9,...]'.
    #[arg(long)]
    table: Option<String>,
    /// Built-in function a..e.
    #[arg(long)]
    profile: Option<Profile>,
}

impl MapSource {
    fn resolve(&self) -> Result<(BooleanMap, Option<Profile>)> {
        match (&self.table, self.profile) {
            (Some(t), _) => Ok((BooleanMap::parse_table(t)?, None)),
            (None, Some(p)) => Ok((p.map(), Some(p))),
            (None, None) => bail!("one of --table or --profile is required"),
        }
    }
}

#[derive(Args)]
struct MixArgs {
    #[command(flatten)]
    source: MapSource,
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    /// Report mixing times for epsilon = 1e-1 .. 1e-8.
    #[arg(long)]
    sweep: bool,
    #[arg(long, default_value_t = 1_000_000)]
    cap: u64,
    /// Print the full distance trace.
    #[arg(long)]
    trace: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RandArgs {
    #[command(flatten)]
    source: MapSource,
    /// Walk length per block; defaults to the profile's value.
    #[arg(long)]
    b: Option<u32>,
    #[arg(long, value_parser = parse_hex)]
    seed_x: u64,
    #[arg(long, value_parser = parse_hex)]
    seed_s: u64,
    #[arg(long)]
    bytes: u64,
    #[arg(long, conflicts_with = "binary_stdout")]
    out: Option<PathBuf>,
    /// Write raw bytes to standard output.
    #[arg(long)]
    binary_stdout: bool,
}

#[derive(Args)]
struct StatsArgs {
    /// Raw byte file to test.
    #[arg(long, conflicts_with_all = ["profile", "table"])]
    r#in: Option<PathBuf>,
    #[arg(long, conflicts_with = "table")]
    profile: Option<Profile>,
    #[arg(long)]
    table: Option<String>,
    #[arg(long)]
    b: Option<u32>,
    /// Number of generated bits (rounded up to whole bytes).
    #[arg(long, default_value_t = 10_000_000)]
    bits: u64,
    #[arg(long, value_parser = parse_hex, default_value = "0")]
    seed_x: u64,
    #[arg(long, value_parser = parse_hex, default_value = "1")]
    seed_s: u64,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    alpha: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Remove every Hamiltonian cycle of the n-cube and check the results.
    Verify {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        json: bool,
    },
}

fn parse_hex(s: &str) -> std::result::Result<u64, String> {
    let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
    u64::from_str_radix(digits, 16).map_err(|e| format!("invalid hex value {s:?}: {e}"))
}

/// Outcome of a command that ran to completion.
enum Verdict {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out).and_then(|v| {
        out.flush()?;
        Ok(v)
    });
    match result {
        Ok(Verdict::Ok) => ExitCode::SUCCESS,
        Ok(Verdict::Failed) => ExitCode::from(1),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Result<Verdict> {
    match command {
        Command::Gray(GrayCommand::Gen { n, limit, totally_balanced, jobs, json }) => {
            gray_gen(out, n, limit, totally_balanced, jobs, json)
        }
        Command::Gray(GrayCommand::Count { n, json }) => gray_count(out, n, json),
        Command::Func(FuncCommand::Build { code, inline, words }) => func_build(out, code, inline, words),
        Command::Func(FuncCommand::Check { table, json }) => func_check(out, &table, json),
        Command::Mix(args) => mix(out, &args),
        Command::Rand(args) => rand(out, &args),
        Command::Stats(args) => stats(out, &args),
        Command::Oracle(OracleCommand::Verify { n, json }) => oracle_verify(out, n, json),
    }
}

fn print_json(out: &mut impl Write, value: &impl Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn gray_gen(
    out: &mut impl Write,
    n: u32,
    limit: Option<usize>,
    totally_balanced: bool,
    jobs: usize,
    json: bool,
) -> Result<Verdict> {
    let mut found = generate_balanced(n, GenerateOptions { limit, jobs: jobs.max(1) })?;
    if totally_balanced {
        found.retain(|c| c.balance == Balance::TotallyBalanced);
    }
    if json {
        print_json(out, &found)?;
    } else {
        for c in &found {
            writeln!(out, "{}", c.sequence)?;
        }
    }
    Ok(Verdict::Ok)
}

#[derive(Serialize)]
struct Counts {
    n: u32,
    l: usize,
    all: String,
    fixed_l: String,
    all_excluding_l2: String,
}

fn gray_count(out: &mut impl Write, n: u32, json: bool) -> Result<Verdict> {
    let counts = Counts {
        n,
        l: choose_l(n)?,
        all: count_all_decompositions(n)?.to_string(),
        fixed_l: count_fixed_l_decompositions(n)?.to_string(),
        all_excluding_l2: count_all_decompositions_excluding_l2(n)?.to_string(),
    };
    if json {
        print_json(out, &counts)?;
    } else {
        writeln!(out, "n: {}", counts.n)?;
        writeln!(out, "l: {}", counts.l)?;
        writeln!(out, "decompositions, all l: {}", counts.all)?;
        writeln!(out, "decompositions, l = {}: {}", counts.l, counts.fixed_l)?;
        writeln!(out, "decompositions, all l except 2: {}", counts.all_excluding_l2)?;
    }
    Ok(Verdict::Ok)
}

fn func_build(out: &mut impl Write, code: Option<PathBuf>, inline: Option<String>, words: bool) -> Result<Verdict> {
    let text = match (code, inline) {
        (Some(path), _) => fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?,
        (None, Some(s)) => s,
        (None, None) => bail!("one of --code or --inline is required"),
    };
    let gray = if words { GrayCode::parse(&text)? } else { TransitionSequence::parse(&text)?.to_gray(0)? };
    writeln!(out, "{}", remove_cycle(&gray_to_cycle(&gray)).format_table())?;
    Ok(Verdict::Ok)
}

#[derive(Serialize)]
struct CheckReport {
    n: u32,
    doubly_stochastic: bool,
    strongly_connected: bool,
    unreachable: Option<(u32, u32)>,
    /// `None` when the map is not a cycle removal.
    cycle_lengths: Option<Vec<usize>>,
    not_a_removal: Option<String>,
    hamiltonian: bool,
    transitions: Option<Vec<u32>>,
    transition_counts: Option<Vec<usize>>,
    balance: Option<String>,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn func_check(out: &mut impl Write, table: &str, json: bool) -> Result<Verdict> {
    let f = BooleanMap::parse_table(table)?;
    let graph = IterationGraph::build(&f);
    let doubly_stochastic = markov_of(&graph).is_doubly_stochastic();
    let unreachable = match is_strongly_connected(&graph) {
        Connectivity::Strong => None,
        Connectivity::NotStrong { from, to, .. } => Some((from, to)),
    };
    let removed = recover_removed_permutation(&f);
    let seq = removed.as_ref().ok().and_then(|r| r.as_hamiltonian()).map(|c| c.to_gray().to_transitions());
    let report = CheckReport {
        n: f.n(),
        doubly_stochastic,
        strongly_connected: unreachable.is_none(),
        unreachable,
        cycle_lengths: removed.as_ref().ok().map(|r| r.cycle_lengths()),
        not_a_removal: removed.as_ref().err().map(ToString::to_string),
        hamiltonian: seq.is_some(),
        transitions: seq.as_ref().map(|s| s.items().to_vec()),
        transition_counts: seq.as_ref().map(|s| s.transition_count().counts().to_vec()),
        balance: seq.as_ref().map(|s| s.transition_count().classify().to_string()),
    };
    if json {
        print_json(out, &report)?;
    } else {
        writeln!(out, "doubly stochastic: {}", yes_no(report.doubly_stochastic))?;
        writeln!(out, "strongly connected: {}", yes_no(report.strongly_connected))?;
        if let Some((from, to)) = report.unreachable {
            writeln!(out, "unreachable: {to} from {from}")?;
        }
        match (&report.cycle_lengths, &report.not_a_removal) {
            (Some(lengths), _) => {
                let lengths: Vec<String> = lengths.iter().map(ToString::to_string).collect();
                writeln!(out, "removed cycles: {} (lengths {})", lengths.len(), lengths.join(","))?;
            }
            (None, Some(reason)) => writeln!(out, "removed cycles: none ({reason})")?,
            (None, None) => {}
        }
        if let (Some(seq), Some(counts), Some(balance)) = (&seq, &report.transition_counts, &report.balance) {
            writeln!(out, "transitions: {seq}")?;
            let counts: Vec<String> = counts.iter().map(ToString::to_string).collect();
            writeln!(out, "transition counts: {}", counts.join(","))?;
            writeln!(out, "balance: {balance}")?;
        }
    }
    Ok(if report.doubly_stochastic && report.strongly_connected { Verdict::Ok } else { Verdict::Failed })
}

#[derive(Serialize)]
struct SweepReport {
    n: u32,
    profile: Option<char>,
    published_b: Option<u32>,
    points: Vec<cubewalk_core::markov::SweepPoint>,
}

fn mix(out: &mut impl Write, args: &MixArgs) -> Result<Verdict> {
    let (f, profile) = args.source.resolve()?;
    let m = markov_of(&IterationGraph::build(&f));
    let opts = MixingOptions { cap: args.cap, ..MixingOptions::default() };
    if args.sweep {
        let report = SweepReport {
            n: f.n(),
            profile: profile.map(Profile::tag),
            published_b: profile.map(Profile::b),
            points: epsilon_sweep(&m, &default_sweep(), &opts)?,
        };
        let mixed = report.points.iter().all(|p| p.t.is_some());
        if args.json {
            print_json(out, &report)?;
        } else {
            writeln!(out, "n: {}", report.n)?;
            if let (Some(p), Some(b)) = (report.profile, report.published_b) {
                writeln!(out, "profile: {p} (published b = {b})")?;
            }
            for p in &report.points {
                match p.t {
                    Some(t) => writeln!(out, "epsilon={:e} t={t}", p.epsilon)?,
                    None => writeln!(out, "epsilon={:e} t=none", p.epsilon)?,
                }
            }
        }
        return Ok(if mixed { Verdict::Ok } else { Verdict::Failed });
    }
    let report = mixing_time_with(&m, args.epsilon, &opts)?;
    if args.json {
        print_json(out, &report)?;
    } else if args.trace {
        write!(out, "{}", report.to_lines())?;
    } else {
        writeln!(out, "n: {}", report.n)?;
        writeln!(out, "epsilon: {:e}", report.epsilon)?;
        match report.t {
            Some(t) => writeln!(out, "mixing time: {t}")?,
            None => writeln!(out, "mixing time: did not mix after {} steps", report.trace.len())?,
        }
        if let Some(exact) = report.exact_tv_at_t {
            writeln!(out, "exact tv at t: {exact:.12e}")?;
        }
    }
    Ok(if report.mixed() { Verdict::Ok } else { Verdict::Failed })
}

fn generator_config(
    source: (BooleanMap, Option<Profile>),
    b: Option<u32>,
    seed_x: u64,
    seed_s: u64,
) -> Result<GeneratorConfig> {
    let (map, profile) = source;
    let b = b.or(profile.map(Profile::b)).ok_or_else(|| anyhow!("--b is required with --table"))?;
    let seed_x = u32::try_from(seed_x).map_err(|_| anyhow!("--seed-x {seed_x:#x} does not fit the state"))?;
    Ok(GeneratorConfig::new(map, b, seed_x, seed_s)?)
}

fn rand(out: &mut impl Write, args: &RandArgs) -> Result<Verdict> {
    let config = generator_config(args.source.resolve()?, args.b, args.seed_x, args.seed_s)?;
    if let Some(path) = &args.out {
        let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
        let mut sink = BufWriter::new(file);
        export_raw(&config, args.bytes, &mut sink).with_context(|| format!("writing {}", path.display()))?;
    } else if args.binary_stdout {
        export_raw(&config, args.bytes, out)?;
    } else if args.bytes > 0 {
        bail!("raw output needs --out FILE or --binary-stdout");
    }
    Ok(Verdict::Ok)
}

fn stats(out: &mut impl Write, args: &StatsArgs) -> Result<Verdict> {
    let report = if let Some(path) = &args.r#in {
        let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        BatteryReport {
            source: path.display().to_string(),
            n: None,
            b: None,
            seed_state: None,
            seed_strategy: None,
            alpha: args.alpha,
            tests: run_battery(&bytes, args.alpha)?,
        }
    } else {
        let source = match (&args.table, args.profile) {
            (Some(t), _) => (BooleanMap::parse_table(t)?, None),
            (None, Some(p)) => (p.map(), Some(p)),
            (None, None) => bail!("one of --in, --profile or --table is required"),
        };
        let name = source.1.map_or_else(|| "table".to_string(), |p| format!("profile {p}"));
        let config = generator_config(source, args.b, args.seed_x, args.seed_s)?;
        let len = usize::try_from(args.bits.div_ceil(8))?;
        let bytes = config.generator().bytes(len);
        let tests = run_battery(&bytes, args.alpha)?;
        BatteryReport::for_config(&config, name, args.alpha, tests)
    };
    if args.json {
        print_json(out, &report)?;
    } else {
        writeln!(out, "source: {}", report.source)?;
        if let (Some(n), Some(b), Some(x), Some(s)) = (report.n, report.b, report.seed_state, report.seed_strategy) {
            writeln!(out, "n: {n} b: {b} seed-x: {x:#x} seed-s: {s:#x}")?;
        }
        writeln!(out, "alpha: {}", report.alpha)?;
        for t in &report.tests {
            writeln!(
                out,
                "{:<18} bits={:<10} statistic={:<14.6} p={:.6} {}",
                t.test_name,
                t.sample_bits,
                t.statistic,
                t.p_value,
                if t.pass { "PASS" } else { "FAIL" }
            )?;
        }
    }
    Ok(if report.all_pass() { Verdict::Ok } else { Verdict::Failed })
}

fn oracle_verify(out: &mut impl Write, n: u32, json: bool) -> Result<Verdict> {
    let summary = verify_theorems(n)?;
    if json {
        print_json(out, &summary)?;
    } else {
        writeln!(out, "n: {}", summary.n)?;
        writeln!(out, "hamiltonian cycles: {}", summary.cycles)?;
        writeln!(out, "removals checked: {}", summary.removals_checked)?;
        writeln!(out, "doubly stochastic: {}", summary.doubly_stochastic)?;
        writeln!(out, "strongly connected: {}", summary.strongly_connected)?;
        writeln!(out, "failures: {}", summary.failures())?;
    }
    Ok(if summary.failures() == 0 { Verdict::Ok } else { Verdict::Failed })
}
