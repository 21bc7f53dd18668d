use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use delshadow_core::io::{format_family, parse_family};
use delshadow_core::{
    canonical_family, canonicalize_traced, compress, delta, delta_r, initial_segment_leq, min_delta_shadow_size,
    prop10_lower_bound, CanonicalKind, Family, ReducedWord, ShadowRadius,
};
use delshadow_verify::{configure_threads, run_suite, SearchBudget, SearchMode, SuiteConfig};
use num_rational::Ratio;
use serde_json::{json, Value};

/// Coordinate-deletion shadows on words over {0,…,k}.
///
/// Families are read and written in a plain-text format: a header line `n k`
/// followed by one word per line as `n` integers in [0, k]. Lines starting
/// with `#` are comments. `-` names standard input or output.
#[derive(Debug, Parser)]
#[command(name = "delshadow", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// δ_r-shadow of a family: delete one coordinate of value at most r.
    Shadow {
        /// Deletion radius, 0 (δ) through k, or `max` for Δ.
        #[arg(long)]
        r: Radius,
        #[command(flatten)]
        io: InOut,
    },
    /// The first M words of the ≤ order.
    Initseg {
        #[command(flatten)]
        dims: Dims,
        #[arg(long)]
        size: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Smallest possible δ-shadow of an M-word family.
    Minshadow {
        #[command(flatten)]
        dims: Dims,
        #[arg(long)]
        size: u64,
        #[arg(long)]
        json: bool,
    },
    /// The compression moving words of component s towards component t.
    Compress {
        /// Reduced word labelling the source component (`ε` or `""` for the empty word).
        #[arg(long)]
        s: String,
        /// Reduced word labelling the target component.
        #[arg(long)]
        t: String,
        #[command(flatten)]
        io: InOut,
    },
    /// Rewrites a family into the initial segment of ≤ of the same size.
    Canonicalize {
        #[command(flatten)]
        io: InOut,
    },
    /// Averaging lower bound on |δ_r A| next to the actual shadow size.
    Bound {
        #[arg(long)]
        r: Radius,
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// A named extremal family.
    Family(FamilyArgs),
    /// Runs named checks against brute-force oracles.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct Dims {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: u8,
}

#[derive(Debug, Args)]
struct Out {
    #[arg(long, value_name = "FILE", default_value = "-")]
    out: PathBuf,
    /// Write JSON instead of the family text format.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct InOut {
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    #[command(flatten)]
    out: Out,
}

#[derive(Debug, Clone, Copy)]
enum Radius {
    Value(u8),
    Max,
}

impl std::str::FromStr for Radius {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "max" {
            return Ok(Radius::Max);
        }
        s.parse().map(Radius::Value).map_err(|_| format!("expected an integer or `max`, got {s:?}"))
    }
}

impl Radius {
    fn resolve(self, k: u8) -> Result<ShadowRadius> {
        Ok(match self {
            Radius::Max => ShadowRadius::max(k),
            Radius::Value(r) => ShadowRadius::new(r, k)?,
        })
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    /// L_(≤s): words with at most s entries ≤ r (needs --r, --s).
    Lleq,
    /// B_(r,t): entries in {0,…,t} with at most r zeros (needs --r, --t).
    Brt,
    /// A_t = {0,…,t−1}^n (needs --t).
    At,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[command(flatten)]
    dims: Dims,
    #[arg(long)]
    r: Option<u8>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    t: Option<u8>,
    #[command(flatten)]
    out: Out,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    /// Every family up to --max-size members, sampling above it.
    Bounded,
    Random,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Comma-separated check names, or `all`.
    #[arg(long, value_delimiter = ',', required = true)]
    suite: Vec<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<u8>,
    #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
    mode: Mode,
    /// Random families per size, and per sweep for the random parts of sweeps.
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest family size enumerated in full in bounded mode.
    #[arg(long, default_value_t = 6)]
    max_size: usize,
    #[arg(long)]
    json: bool,
    /// Leave out elapsed times so identical runs print identical output.
    #[arg(long)]
    no_timing: bool,
}

fn read_input(path: &PathBuf) -> Result<Family> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text).context("reading standard input")?;
    } else {
        let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
        BufReader::new(file)
            .read_to_string(&mut text)
            .with_context(|| format!("reading {}", path.display()))?;
    }
    parse_family(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_output(path: &PathBuf, text: &str) -> Result<()> {
    if path.as_os_str() == "-" {
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes())?;
        return out.flush().context("writing standard output");
    }
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    w.write_all(text.as_bytes())?;
    w.flush().with_context(|| format!("writing {}", path.display()))
}

fn family_json(f: &Family) -> Value {
    json!({
        "n": f.n(),
        "k": f.k(),
        "size": f.len(),
        "family": f.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    })
}

fn emit_family(out: &Out, f: &Family, extra: Value) -> Result<()> {
    let text = if out.json {
        let mut v = family_json(f);
        if let (Value::Object(map), Value::Object(more)) = (&mut v, extra) {
            map.extend(more);
        }
        format!("{v}\n")
    } else {
        format_family(f)
    };
    write_output(&out.out, &text)
}

fn print_line(json: bool, value: Value, text: String) -> Result<()> {
    let line = if json { value.to_string() } else { text };
    write_output(&PathBuf::from("-"), &format!("{line}\n"))
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let mut budget = match args.mode {
        Mode::Exhaustive => SearchBudget::exhaustive(),
        Mode::Bounded => SearchBudget::up_to_size(args.max_size, args.samples, args.seed),
        Mode::Random => SearchBudget::random(args.samples, args.seed),
    };
    if budget.mode == SearchMode::Exhaustive {
        budget.samples = args.samples;
        budget.rng_seed = args.seed;
    }
    let names: Vec<String> = if args.suite.iter().any(|s| s == "all") {
        delshadow_verify::CheckName::ALL.iter().map(|c| c.to_string()).collect()
    } else {
        args.suite
    };
    let config = SuiteConfig {
        budget,
        n: args.n,
        k: args.k,
    };
    let reports = run_suite(&names, &config)?;
    let passed = reports.iter().all(|r| r.passed());
    let text = if args.json {
        let values: Vec<Value> = reports
            .iter()
            .map(|r| if args.no_timing { r.to_json_untimed() } else { r.to_json() })
            .collect();
        format!("{}\n", Value::Array(values))
    } else {
        let mut text = String::new();
        for r in &reports {
            let mut line = r.summary();
            if args.no_timing {
                if let Some(at) = line.rfind(" elapsed_ms=") {
                    line.truncate(at);
                }
            }
            text.push_str(&line);
            text.push('\n');
            for o in &r.observations {
                text.push_str(&format!("  {o}\n"));
            }
            for v in r.violations.iter().take(10) {
                text.push_str(&format!("  VIOLATION {}: {{{}}}\n", v.note, v.family.join(",")));
            }
            if r.violations.len() > 10 {
                text.push_str(&format!("  ... {} more violations\n", r.violations.len() - 10));
            }
        }
        text
    };
    write_output(&PathBuf::from("-"), &text)?;
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Shadow { r, io } => {
            let a = read_input(&io.input)?;
            let radius = r.resolve(a.k())?;
            let s = delta_r(&a, radius)?;
            emit_family(&io.out, &s, json!({"r": radius.get()}))?;
        }
        Command::Initseg { dims, size, out } => {
            let f = initial_segment_leq(dims.n, dims.k, size)?;
            emit_family(&out, &f, json!({}))?;
        }
        Command::Minshadow { dims, size, json } => {
            let v = min_delta_shadow_size(dims.n, dims.k, size)?;
            print_line(json, json!({"n": dims.n, "k": dims.k, "size": size, "min_shadow": v}), v.to_string())?;
        }
        Command::Compress { s, t, io } => {
            let a = read_input(&io.input)?;
            let s = ReducedWord::parse(a.k(), &s).context("parsing --s")?;
            let t = ReducedWord::parse(a.k(), &t).context("parsing --t")?;
            let out = compress(&a, &s, &t)?;
            emit_family(&io.out, &out, json!({"s": s.to_string(), "t": t.to_string()}))?;
        }
        Command::Canonicalize { io } => {
            let a = read_input(&io.input)?;
            let (out, trace) = canonicalize_traced(&a)?;
            let extra = json!({
                "steps": trace.len(),
                "shadow_before": delta(&a)?.len(),
                "shadow_after": delta(&out)?.len(),
            });
            emit_family(&io.out, &out, extra)?;
        }
        Command::Bound { r, input, json } => {
            let a = read_input(&input)?;
            let radius = r.resolve(a.k())?;
            let bound: Ratio<u64> = prop10_lower_bound(&a, radius)?;
            let shadow = delta_r(&a, radius)?.len();
            print_line(
                json,
                json!({"r": radius.get(), "size": a.len(), "bound": bound.to_string(), "shadow": shadow}),
                format!("bound {bound}\nshadow {shadow}"),
            )?;
        }
        Command::Family(args) => {
            let need = |v: Option<u8>, flag: &str| v.with_context(|| format!("--kind {:?} needs {flag}", args.kind));
            let kind = match args.kind {
                Kind::Lleq => CanonicalKind::LevelUnion {
                    r_del: need(args.r, "--r")?,
                    s: args.s.context("--kind lleq needs --s")?,
                },
                Kind::Brt => CanonicalKind::BoundedZeros {
                    r: need(args.r, "--r")?,
                    t: need(args.t, "--t")?,
                },
                Kind::At => CanonicalKind::SubCube { t: need(args.t, "--t")? },
            };
            let f = canonical_family(args.dims.n, args.dims.k, kind)?;
            emit_family(&args.out, &f, json!({}))?;
        }
        Command::Verify(args) => return verify(args),
    }
    Ok(ExitCode::SUCCESS)
}

fn threads_from_env() -> Result<()> {
    let Ok(raw) = std::env::var("DELSHADOW_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .with_context(|| format!("DELSHADOW_THREADS must be a positive integer, got {raw:?}"))?;
    // a sequential build has no pool to size
    configure_threads(n);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match threads_from_env().and_then(|()| run(cli)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
