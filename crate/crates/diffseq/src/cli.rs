//! Command-line surface: word dumps, coloring construction, witness
//! verification, number computation by either engine, greedy lower bounds,
//! CNF emission, and the certification suites.
//!
//! Exit codes: `verify` returns 0 when no witness exists, 1 when one is
//! found (printed as JSON), 2 on input errors. `proofcheck` returns 0 when
//! every check passes, 1 otherwise. All other commands return 0 on
//! success, 2 on input or solver errors.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::colorings::{self, Coloring};
use crate::detect::{self, PatternKind};
use crate::diffsets::DiffSet;
use crate::proofcheck;
use crate::satgen::{self, Backend, ComputeOptions, ComputeOutcome, Strategy};
use crate::search::{self, ExactOutcome, GreedyOutcome, GreedyPolicy, SearchOptions};
use crate::words::{self, WordId};

/// Environment variable consulted for the solver command when
/// `--solver-cmd` is absent.
pub const SOLVER_ENV: &str = "DIFFSEQ_SOLVER_CMD";

#[derive(Parser)]
#[command(
    name = "diffseq",
    about = "Ramsey numbers for diffsequences and restricted-gap arithmetic progressions",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: CommandKind,
}

#[derive(Subcommand)]
enum CommandKind {
    /// Print or dump a prefix of the word F, S or T.
    Word(WordArgs),
    /// Build a named coloring and write it in the witness text format.
    Coloring(ColoringArgs),
    /// Check a coloring file for monochromatic patterns.
    Verify(VerifyArgs),
    /// Compute a Ramsey number with the exact or the SAT engine.
    Number(NumberArgs),
    /// Greedy construction of an avoiding coloring.
    Greedy(GreedyArgs),
    /// Emit a DIMACS CNF instance.
    Encode(EncodeArgs),
    /// Run a certification suite.
    Proofcheck(ProofcheckArgs),
}

#[derive(Args)]
struct WordArgs {
    /// F, S or T.
    word: String,
    #[arg(long)]
    len: usize,
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = WordFormat::Text)]
    format: WordFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum WordFormat {
    Text,
    /// 8 symbols per byte, first symbol in the most significant bit.
    Bits,
}

#[derive(Args)]
struct ColoringArgs {
    #[command(subcommand)]
    kind: ColoringKind,
}

#[derive(Subcommand)]
enum ColoringKind {
    /// 2-coloring induced by a word prefix.
    Word {
        word: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// The 4-coloring of residues mod 8.
    LucasMod8 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Colors by congruence class mod m.
    Congruence {
        #[arg(long)]
        modulus: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Parity lift of a 2-coloring file to a 4-coloring of [n].
    Lift {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct DiffSetArgs {
    /// Short set name: F, G, L or P.
    #[arg(long = "D")]
    d: Option<String>,
    /// File with one positive integer per line.
    #[arg(long = "D-file")]
    d_file: Option<PathBuf>,
}

impl DiffSetArgs {
    fn resolve(&self) -> Result<DiffSet, String> {
        match (&self.d, &self.d_file) {
            (Some(name), None) => {
                DiffSet::from_short_name(name).ok_or_else(|| format!("unknown set name {name:?}"))
            }
            (None, Some(path)) => DiffSet::from_file(path).map_err(|e| e.to_string()),
            _ => Err("give exactly one of --D or --D-file".into()),
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Coloring file in the witness text format.
    coloring: PathBuf,
    #[command(flatten)]
    set: DiffSetArgs,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value = "diffseq")]
    mode: PatternKind,
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Exact,
    Sat,
}

#[derive(Args)]
struct NumberArgs {
    #[command(flatten)]
    set: DiffSetArgs,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    r: u32,
    #[arg(long, default_value = "diffseq")]
    mode: PatternKind,
    #[arg(long, value_enum, default_value_t = Engine::Exact)]
    engine: Engine,
    /// Largest n to test before reporting a bound instead of a value.
    #[arg(long, default_value_t = 10_000)]
    n_cap: u64,
    /// First n to test (defaults to k).
    #[arg(long)]
    start: Option<u64>,
    /// Exact engine: restrict to canonical color introduction order.
    #[arg(long)]
    canonical: bool,
    /// SAT engine: search schedule over n.
    #[arg(long, value_enum, default_value_t = ScheduleArg::Linear)]
    strategy: ScheduleArg,
    /// SAT engine: external solver command; {cnf} is replaced by the
    /// instance path. Falls back to DIFFSEQ_SOLVER_CMD, then the built-in
    /// solver.
    #[arg(long)]
    solver_cmd: Option<String>,
    /// SAT engine: per-solve timeout for external solvers, in seconds.
    #[arg(long)]
    timeout_secs: Option<u64>,
    /// Write the last avoiding coloring beside the result.
    #[arg(long)]
    witness_out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScheduleArg {
    Linear,
    Bisect,
}

#[derive(Args)]
struct GreedyArgs {
    #[command(flatten)]
    set: DiffSetArgs,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    n: u64,
    #[arg(long, default_value = "diffseq")]
    mode: PatternKind,
    #[arg(long, value_enum, default_value_t = PolicyArg::FirstFit)]
    policy: PolicyArg,
    /// Backtracking window for the backtrack policy.
    #[arg(long, default_value_t = 30)]
    window: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    FirstFit,
    Backtrack,
}

#[derive(Args)]
struct EncodeArgs {
    #[command(flatten)]
    set: DiffSetArgs,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    n: u64,
    #[arg(long, default_value = "diffseq")]
    mode: PatternKind,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ProofcheckArgs {
    /// lemma32, chains, lemma33, thm2, modular or closedforms.
    suite: String,
    /// Largest gap index for lemma32.
    #[arg(long, default_value_t = 30)]
    imax: u64,
    /// Prefix length for chains, table range for thm2.
    #[arg(long = "N", default_value_t = 10_000)]
    n: u64,
    /// Range for lemma33 and closedforms.
    #[arg(long, default_value_t = 13)]
    n_lo: u64,
    #[arg(long, default_value_t = 200)]
    n_hi: u64,
    /// Emit the report as JSON instead of text.
    #[arg(long)]
    json: bool,
}

/// Parses arguments and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version with success exits
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, String> {
    match cli.command {
        CommandKind::Word(args) => cmd_word(args),
        CommandKind::Coloring(args) => cmd_coloring(args),
        CommandKind::Verify(args) => cmd_verify(args),
        CommandKind::Number(args) => cmd_number(args),
        CommandKind::Greedy(args) => cmd_greedy(args),
        CommandKind::Encode(args) => cmd_encode(args),
        CommandKind::Proofcheck(args) => cmd_proofcheck(args),
    }
}

fn cmd_word(args: WordArgs) -> Result<i32, String> {
    let id: WordId = args.word.parse()?;
    if args.len == 0 {
        return Err("--len must be at least 1".into());
    }
    let bits = words::prefix(id, args.len);
    let write = |out: &mut dyn Write| -> io::Result<()> {
        match args.format {
            WordFormat::Text => words::write_text(&bits, &mut BufWriter::new(out)),
            WordFormat::Bits => words::write_packed(&bits, &mut BufWriter::new(out)),
        }
    };
    match &args.out {
        Some(path) => {
            let mut file = File::create(path).map_err(|e| e.to_string())?;
            write(&mut file).map_err(|e| e.to_string())?;
        }
        None => {
            let stdout = io::stdout();
            write(&mut stdout.lock()).map_err(|e| e.to_string())?;
        }
    }
    Ok(0)
}

fn write_coloring(c: &Coloring, path: &PathBuf) -> Result<(), String> {
    let file = File::create(path).map_err(|e| e.to_string())?;
    let mut out = BufWriter::new(file);
    colorings::emit(c, &mut out).map_err(|e| e.to_string())
}

fn read_coloring(path: &PathBuf) -> Result<Coloring, String> {
    let file = File::open(path).map_err(|e| e.to_string())?;
    colorings::parse(&mut BufReader::new(file)).map_err(|e| e.to_string())
}

fn cmd_coloring(args: ColoringArgs) -> Result<i32, String> {
    match args.kind {
        ColoringKind::Word { word, n, out } => {
            let id: WordId = word.parse()?;
            if n == 0 {
                return Err("--n must be at least 1".into());
            }
            write_coloring(&colorings::from_word(id, n), &out)?;
        }
        ColoringKind::LucasMod8 { n, out } => {
            if n == 0 {
                return Err("--n must be at least 1".into());
            }
            write_coloring(&colorings::lucas_mod8(n), &out)?;
        }
        ColoringKind::Congruence { modulus, n, out } => {
            if modulus < 2 {
                return Err("--modulus must be at least 2".into());
            }
            if n == 0 {
                return Err("--n must be at least 1".into());
            }
            write_coloring(&colorings::congruence_coloring(modulus, n), &out)?;
        }
        ColoringKind::Lift { base, n, out } => {
            let base = read_coloring(&base)?;
            let lifted = colorings::lift_parity(&base, n).map_err(|e| e.to_string())?;
            write_coloring(&lifted, &out)?;
        }
    }
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> Result<i32, String> {
    let d = args.set.resolve()?;
    if args.k < 2 {
        return Err("--k must be at least 2".into());
    }
    let coloring = read_coloring(&args.coloring)?;
    match detect::find_mono(&coloring, &d, args.k, args.mode) {
        None => Ok(0),
        Some(witness) => {
            println!(
                "{}",
                serde_json::to_string(&witness).map_err(|e| e.to_string())?
            );
            Ok(1)
        }
    }
}

fn cmd_number(args: NumberArgs) -> Result<i32, String> {
    let d = args.set.resolve()?;
    if args.k < 2 || args.r < 1 {
        return Err("need --k >= 2 and --r >= 1".into());
    }
    if args.start.is_some_and(|s| s > args.n_cap) {
        return Err("--start exceeds --n-cap".into());
    }
    let started = Instant::now();
    let mut result = json!({
        "D": d.label(),
        "k": args.k,
        "r": args.r,
        "mode": args.mode.name(),
    });
    let witness: Option<Coloring>;

    match args.engine {
        Engine::Exact => {
            result["engine"] = json!("exact");
            result["options"] = json!({
                "canonical_colors": args.canonical,
                "n_cap": args.n_cap,
            });
            let opts = SearchOptions {
                canonical_colors: args.canonical,
                start: args.start,
            };
            match search::exact_number(&d, args.k, args.r, args.mode, args.n_cap, opts) {
                ExactOutcome::Value {
                    value,
                    witness_below,
                } => {
                    result["value"] = json!(value);
                    witness = witness_below;
                }
                ExactOutcome::ExceedsCap { cap, witness: w } => {
                    result["bound"] = json!({ "lower": cap + 1 });
                    witness = Some(w);
                }
            }
        }
        Engine::Sat => {
            result["engine"] = json!("sat");
            let command = args
                .solver_cmd
                .clone()
                .or_else(|| std::env::var(SOLVER_ENV).ok());
            let backend = match command {
                Some(command) => {
                    result["solver"] = json!(command);
                    Backend::External {
                        command,
                        timeout: args.timeout_secs.map(Duration::from_secs),
                    }
                }
                None => {
                    result["solver"] = json!("builtin");
                    Backend::Internal { max_conflicts: None }
                }
            };
            let strategy = match args.strategy {
                ScheduleArg::Linear => Strategy::Linear,
                ScheduleArg::Bisect => Strategy::DoublingBisection,
            };
            result["options"] = json!({
                "strategy": match args.strategy {
                    ScheduleArg::Linear => "linear",
                    ScheduleArg::Bisect => "bisect",
                },
                "n_cap": args.n_cap,
            });
            let opts = ComputeOptions {
                strategy,
                n_cap: args.n_cap,
                backend,
                start: args.start,
            };
            match satgen::compute_number(&d, args.k, args.r, args.mode, &opts)
                .map_err(|e| e.to_string())?
            {
                ComputeOutcome::Value {
                    value,
                    witness_below,
                    solver_banner,
                } => {
                    result["value"] = json!(value);
                    if let Some(banner) = solver_banner {
                        result["solver_banner"] = json!(banner);
                    }
                    witness = witness_below;
                }
                ComputeOutcome::Bracket {
                    lower,
                    upper,
                    witness: w,
                } => {
                    result["bound"] = json!({ "lower": lower, "upper": upper });
                    witness = w;
                }
            }
        }
    }

    result["witness_file"] = match (&args.witness_out, &witness) {
        (Some(path), Some(w)) => {
            write_coloring(w, path)?;
            json!(path.display().to_string())
        }
        _ => json!(null),
    };
    result["elapsed_ms"] = json!(started.elapsed().as_millis() as u64);
    println!("{}", serde_json::to_string(&result).map_err(|e| e.to_string())?);
    Ok(0)
}

fn cmd_greedy(args: GreedyArgs) -> Result<i32, String> {
    let d = args.set.resolve()?;
    if args.k < 2 || args.r < 1 || args.n < 1 {
        return Err("need --k >= 2, --r >= 1 and --n >= 1".into());
    }
    let policy = match args.policy {
        PolicyArg::FirstFit => GreedyPolicy::FirstFit,
        PolicyArg::Backtrack => GreedyPolicy::BoundedBacktrack {
            window: args.window,
        },
    };
    let started = Instant::now();
    let outcome = search::greedy_color(&d, args.k, args.r, args.mode, args.n, policy);
    let mut result = json!({
        "D": d.label(),
        "k": args.k,
        "r": args.r,
        "n": args.n,
        "mode": args.mode.name(),
        "policy": policy,
    });
    let code = match outcome {
        GreedyOutcome::Complete(c) => {
            // any returned coloring must pass detection
            search::lower_bound_from_witness(&c, &d, args.k, args.mode)
                .map_err(|e| e.to_string())?;
            result["outcome"] = json!("complete");
            if let Some(path) = &args.out {
                write_coloring(&c, path)?;
                result["witness_file"] = json!(path.display().to_string());
            }
            0
        }
        GreedyOutcome::Stuck { position } => {
            result["outcome"] = json!("stuck");
            result["stuck_position"] = json!(position);
            1
        }
    };
    result["elapsed_ms"] = json!(started.elapsed().as_millis() as u64);
    println!("{}", serde_json::to_string(&result).map_err(|e| e.to_string())?);
    Ok(code)
}

fn cmd_encode(args: EncodeArgs) -> Result<i32, String> {
    let d = args.set.resolve()?;
    if args.k < 2 || args.r < 1 || args.n < 1 {
        return Err("need --k >= 2, --r >= 1 and --n >= 1".into());
    }
    let inst = satgen::encode(&d, args.k, args.r, args.n, args.mode);
    match &args.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| e.to_string())?;
            satgen::emit_dimacs(&inst, &mut BufWriter::new(file)).map_err(|e| e.to_string())?;
        }
        None => {
            let stdout = io::stdout();
            satgen::emit_dimacs(&inst, &mut BufWriter::new(stdout.lock()))
                .map_err(|e| e.to_string())?;
        }
    }
    Ok(0)
}

fn cmd_proofcheck(args: ProofcheckArgs) -> Result<i32, String> {
    let report = match args.suite.as_str() {
        "lemma32" => proofcheck::check_lemma32(args.imax.max(2)),
        "chains" => proofcheck::check_chains(args.n.max(10)),
        "lemma33" => {
            if args.n_lo < 13 {
                return Err("lemma33 needs --n-lo >= 13".into());
            }
            proofcheck::check_lemma33(args.n_lo, args.n_hi.max(args.n_lo))
        }
        "thm2" => proofcheck::check_thm2(args.n.max(13)),
        "modular" => proofcheck::check_modular_facts(),
        "closedforms" => {
            let report = crate::numerics::verify_closed_forms(args.n_hi.max(2));
            let mut wrapped = serde_json::Map::new();
            wrapped.insert("suite".into(), json!("closedforms"));
            let failures: Vec<u64> = report
                .entries
                .iter()
                .filter(|e| !e.pass)
                .map(|e| e.n)
                .collect();
            wrapped.insert(
                "entries".into(),
                json!([{
                    "label": format!("identities exact to n = {}", report.n_max),
                    "pass": report.passed(),
                    "detail": format!("{} checks, failures at {:?}", report.entries.len(), failures),
                }]),
            );
            if args.json {
                println!("{}", serde_json::Value::Object(wrapped));
            } else {
                println!(
                    "suite closedforms: {} checks, {} failed",
                    report.entries.len(),
                    failures.len()
                );
            }
            return Ok(if report.passed() { 0 } else { 1 });
        }
        other => return Err(format!("unknown suite {other:?}")),
    };
    if args.json {
        println!(
            "{}",
            serde_json::to_string(&report).map_err(|e| e.to_string())?
        );
    } else {
        print!("{}", report.render_text());
        if report.suite == "thm2" {
            print!("{}", proofcheck::render_tables());
        }
    }
    Ok(if report.passed() { 0 } else { 1 })
}
