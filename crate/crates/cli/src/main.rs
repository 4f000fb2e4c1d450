//! `gaussint`: command-line front end. JSON on stdout, diagnostics on
//! stderr.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 inconclusive intersectivity.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use gaussint::intersective::Verdict;
use gaussint::json::rational_value;
use gaussint::lab::{
    avoidance_witness, balanced_laws, dp_domain, expansion_terms, max_avoiding_density_with_limit, MAX_EXACT_LIMIT,
};
use gaussint::suites::{run_suite, SuiteConfig};
use gaussint::{
    correlation, decide_intersective, factor_ideal, indicator_correlation, lattice_partition, parse_gaussian,
    parse_poly, threshold_report, AuxiliaryBuilder, BoxSubset, CorrelationSpec, Effort, Error, GIPolynomial,
    SearchMode, ShiftedBox, SmallGaussian,
};

#[derive(Parser, Debug)]
#[command(name = "gaussint", version, about = "Exact experiments over the Gaussian integers")]
struct Cli {
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (GAUSSINT_THREADS takes precedence).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Primes are checked up to this norm when no global root is known.
    #[arg(long, global = true, default_value_t = 1000)]
    effort: u64,
    /// Largest box side for exact extremal search.
    #[arg(long, global = true, default_value_t = 4)]
    exact_limit: u64,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Exact,
    Greedy,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Prime factorization of the ideal (α).
    Factor { alpha: String },
    /// Decide whether a polynomial has a root modulo every nonzero ideal.
    Intersective { poly: String },
    /// The auxiliary polynomial q_a(x) = q(r_a + αx)/γ.
    BuildQa { poly: String, alpha: String },
    /// Check (A − A) ∩ I(q) = ∅.
    VerifyAvoidance {
        #[arg(long)]
        poly: String,
        /// A file with one Gaussian integer per line, or an inline list.
        #[arg(long)]
        set: String,
    },
    /// Largest subset of [N] avoiding I(q).
    MaxDensity {
        #[arg(long)]
        poly: String,
        #[arg(long = "N")]
        n: u64,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
    },
    /// Correlation functionals of A against p.
    Correlate {
        #[arg(long)]
        poly: String,
        #[arg(long = "N")]
        n: u64,
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 0)]
        j: usize,
        #[arg(long, default_value_t = 1)]
        hside: u64,
        /// `dp` or `box:<s>`.
        #[arg(long, default_value = "dp")]
        domain: String,
    },
    /// Partition Box(M) into cells u + ξ·[m] and an error set.
    Partition {
        #[arg(long = "M")]
        big_m: u64,
        #[arg(long)]
        xi: String,
        #[arg(long)]
        m: u64,
    },
    /// Threshold constants of the density increment.
    Thresholds {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        mp2: String,
    },
    /// Run a named suite, e.g. `suite:expansion-identity`.
    Sweep {
        suite: String,
        #[arg(long)]
        cases: Option<usize>,
    },
}

/// Failure of a command, carrying its exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::Domain(_)
            | Error::ZeroPolynomial
            | Error::Limit(_)
            | Error::NotCoprime(..) => 2,
            Error::Inconclusive(_) => 3,
            Error::NotIntersective(_) | Error::Invariant(_) => 1,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        msg: msg.into(),
    }
}

/// What a command produced: the text to emit and its exit code.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn json(v: &impl serde::Serialize, code: u8) -> Self {
        Output {
            text: serde_json::to_string_pretty(v).expect("serializable") + "\n",
            code,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(f) = configure_threads(cli.threads) {
        eprintln!("error: {}", f.msg);
        return ExitCode::from(f.code);
    }
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &out.text),
                None => std::io::stdout().write_all(out.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn configure_threads(flag: Option<usize>) -> Result<(), Failure> {
    let threads = match std::env::var("GAUSSINT_THREADS") {
        Ok(s) => Some(
            s.trim()
                .parse::<usize>()
                .map_err(|_| usage(format!("GAUSSINT_THREADS={s} is not a number")))?,
        ),
        Err(_) => flag,
    };
    if let Some(n) = threads {
        if n == 0 {
            return Err(usage("thread count must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| usage(format!("cannot configure threads: {e}")))?;
    }
    Ok(())
}

fn poly(src: &str) -> Result<GIPolynomial, Failure> {
    Ok(parse_poly(src)?)
}

fn small(src: &str) -> Result<SmallGaussian, Failure> {
    parse_gaussian(src)?
        .to_small()
        .ok_or_else(|| usage(format!("{src} does not fit 64-bit coordinates")))
}

/// A file of Gaussian integers, one per line, or an inline list separated
/// by commas, semicolons or newlines.
fn read_set(arg: &str) -> Result<Vec<SmallGaussian>, Failure> {
    let text = if Path::new(arg).is_file() {
        fs::read_to_string(arg).map_err(|e| usage(format!("cannot read {arg}: {e}")))?
    } else {
        arg.to_string()
    };
    text.split([',', ';', '\n'])
        .map(str::trim)
        .filter(|s| !s.is_empty() && !s.starts_with('#'))
        .map(small)
        .collect()
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let effort = Effort::with_bound(cli.effort);
    if cli.exact_limit == 0 || cli.exact_limit > MAX_EXACT_LIMIT {
        return Err(usage(format!("--exact-limit must lie in 1..={MAX_EXACT_LIMIT}")));
    }
    match &cli.cmd {
        Command::Factor { alpha } => {
            let a = parse_gaussian(alpha)?;
            let fac = factor_ideal(&a)?;
            Ok(Output::json(
                &json!({ "alpha": a, "unit": fac.unit(), "factors": fac }),
                0,
            ))
        }
        Command::Intersective { poly: src } => {
            let v = decide_intersective(&poly(src)?, &effort)?;
            let code = if v.verdict == Verdict::Inconclusive { 3 } else { 0 };
            if code == 3 {
                eprintln!("inconclusive: {}", v.note);
            }
            Ok(Output::json(&v, code))
        }
        Command::BuildQa { poly: src, alpha } => {
            let b = AuxiliaryBuilder::new(&poly(src)?, &effort)?;
            let aux = b.build(&parse_gaussian(alpha)?)?;
            Ok(Output::json(&aux, 0))
        }
        Command::VerifyAvoidance { poly: src, set } => {
            let q = poly(src)?;
            let pts = read_set(set)?;
            let witness = avoidance_witness(&pts, &q)?;
            let code = if witness.is_some() { 1 } else { 0 };
            if let Some(w) = &witness {
                eprintln!("violation: {} - {} = q({}) = {}", w.a, w.a_prime, w.z, w.value);
            }
            Ok(Output::json(
                &json!({ "q": q.to_string(), "size": pts.len(), "avoids": witness.is_none(), "witness": witness }),
                code,
            ))
        }
        Command::MaxDensity { poly: src, n, mode } => {
            let mode = match mode {
                Mode::Exact => SearchMode::Exact,
                Mode::Greedy => SearchMode::Greedy,
            };
            let res = max_avoiding_density_with_limit(*n, &poly(src)?, mode, cli.exact_limit)?;
            Ok(Output::json(&res, 0))
        }
        Command::Correlate {
            poly: src,
            n,
            set,
            j,
            hside,
            domain,
        } => {
            let p = poly(src)?;
            let a = BoxSubset::new(*n, &read_set(set)?)?;
            let (points, note) = domain_points(&p, *n, domain)?;
            let spec = CorrelationSpec::new(p, points, *hside, *j);
            let terms = expansion_terms(&a, &spec)?;
            let out = json!({
                "set": a,
                "p": spec.p.to_string(),
                "domain": note,
                "h_side": hside,
                "j": j,
                "laws": balanced_laws(&a),
                "correlation": rational_value(&correlation(&a, &spec)?),
                "indicator_correlation": rational_value(&indicator_correlation(&a, &spec)?),
                "expansion": terms,
            });
            Ok(Output::json(&out, if terms.holds { 0 } else { 1 }))
        }
        Command::Partition { big_m, xi, m } => {
            let p = lattice_partition(*big_m, &small(xi)?, *m)?;
            let code = if p.exact_cover && p.error_bound_holds { 0 } else { 1 };
            Ok(Output::json(&p, code))
        }
        Command::Thresholds { d, r, delta, mp2 } => {
            let delta: BigRational = delta
                .parse()
                .map_err(|_| usage(format!("--delta {delta} is not p/q")))?;
            let mp2: BigInt = mp2
                .parse()
                .map_err(|_| usage(format!("--mp2 {mp2} is not an integer")))?;
            Ok(Output::json(&threshold_report(*d, *r, &delta, &mp2)?, 0))
        }
        Command::Sweep { suite, cases } => {
            let cfg = SuiteConfig {
                seed: cli.seed,
                cases: *cases,
                effort,
                exact_limit: cli.exact_limit,
            };
            let report = run_suite(suite, &cfg)?;
            eprintln!("{}: {} passed, {} failed", report.suite, report.passed, report.failed);
            Ok(Output {
                text: report.to_jsonl(),
                code: if report.all_passed() { 0 } else { 1 },
            })
        }
    }
}

fn domain_points(p: &GIPolynomial, n: u64, spec: &str) -> Result<(Vec<SmallGaussian>, Value), Failure> {
    if spec == "dp" {
        let dp = dp_domain(n, p)?;
        let note = json!({
            "kind": "dp",
            "side": dp.side,
            "offset": dp.offset,
            "mp_squared": dp.mp_squared.to_string(),
            "note": "offset c = ceil(M_p) replaces M_p(1+i); every point has norm above M_p^2",
        });
        return Ok((dp.points, note));
    }
    let side = spec
        .strip_prefix("box:")
        .and_then(|s| s.parse::<i64>().ok())
        .filter(|s| *s > 0)
        .ok_or_else(|| usage(format!("--domain {spec}: expected dp or box:<s>")))?;
    let pts = ShiftedBox::new(side, SmallGaussian::new(0, 0)).iter().collect();
    Ok((pts, json!({ "kind": "box", "side": side })))
}
