//! `qclim`: limit points of one-dimensional regular chain quasi-components.
//!
//! Exit codes: 0 success, 1 input error (unreadable/malformed file, bad
//! flags, invalid chain), 2 internal limit (accuracy ceiling, failed
//! cross-check). Diagnostics go to stderr, results to stdout.

mod parse;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use parse::{parse_system, SystemFile};
use qclim_core::accuracy::AccuracyMode;
use qclim_core::chain::{
    limit_points, limit_points_at, puiseux_expansions, ChainError, LimitConfig, LimitPoint,
    RegularChain,
};
use qclim_core::closure::{closure, remove_redundant};
use qclim_core::numeric::{
    cross_check, numeric_branch_limits, numeric_h_r_roots, Complex64, NumericPoint,
    DEFAULT_EPSILONS,
};
use qclim_core::puiseux::PuiseuxClass;
use qclim_core::rat::Rational;

const CROSS_CHECK_TOL: f64 = 1e-4;

#[derive(Parser)]
#[command(
    name = "qclim",
    version,
    about = "Limit points of quasi-components of one-dimensional regular chains"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// A-priori accuracy bound from the main degrees (default)
    Degree,
    /// Probe increasing accuracies until the output stabilizes
    Iterative,
    /// Generic-position shortcut
    Generic,
}

impl From<ModeArg> for AccuracyMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Degree => AccuracyMode::DegreeBound,
            ModeArg::Iterative => AccuracyMode::Iterative,
            ModeArg::Generic => AccuracyMode::Generic,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Non-trivial limit points of the chain's quasi-component
    Limits {
        file: PathBuf,
        /// A rational X1-value, or `all` for every root of h_R
        #[arg(long, default_value = "all", allow_hyphen_values = true)]
        at: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Degree)]
        accuracy_mode: ModeArg,
        #[arg(long, default_value_t = 64)]
        accuracy_ceiling: usize,
        /// Verify the exact output against the floating-point probe
        #[arg(long)]
        crosscheck: bool,
        #[arg(long)]
        json: bool,
    },
    /// Puiseux expansions of a single bivariate polynomial
    Puiseux {
        file: PathBuf,
        /// Number of series terms per expansion
        #[arg(long)]
        tau: usize,
        #[arg(long)]
        json: bool,
    },
    /// Closure description: the chain together with its limit points
    Closure { file: PathBuf },
    /// Drop components of a decomposition contained in the closure of another
    RemoveRedundant {
        file: PathBuf,
        /// Certify equal-dimension inclusion tests (requires radical
        /// saturated ideals)
        #[arg(long)]
        assume_radical: bool,
    },
}

enum Failure {
    /// Unreadable or malformed input, bad flags, invalid chain: exit 1.
    Input(String),
    /// Internal limit (accuracy ceiling, cross-check mismatch): exit 2.
    Limit(String),
}

impl From<ChainError> for Failure {
    fn from(e: ChainError) -> Self {
        match e {
            ChainError::Invalid(v) => Failure::Input(v.join("; ")),
            ChainError::Accuracy(m) | ChainError::Internal(m) => Failure::Limit(m),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Limit(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<SystemFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_system(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn single_chain(sys: &SystemFile) -> Result<RegularChain, Failure> {
    if sys.chains.len() != 1 {
        return Err(Failure::Input(format!(
            "file contains {} chains; this command expects exactly one",
            sys.chains.len()
        )));
    }
    Ok(RegularChain::new(sys.vars.clone(), sys.chains[0].clone()))
}

fn parse_rational(s: &str) -> Result<Rational, Failure> {
    let bad = || Failure::Input(format!("invalid rational `{s}` for --at (use e.g. 0, -2, 1/2)"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d == 0.into() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

fn zname(i: usize) -> String {
    format!("z{}", i + 1)
}

/// Deterministic output order: tower moduli first, then the coordinate
/// strings, lexicographically.
fn point_key(p: &LimitPoint) -> (Vec<String>, Vec<String>) {
    (
        p.tower.moduli().iter().map(|m| m.render_with(zname)).collect(),
        p.coords.iter().map(|c| c.render()).collect(),
    )
}

#[derive(Serialize)]
struct PointOut {
    tower: Vec<String>,
    coords: Vec<String>,
}

#[derive(Serialize)]
struct PointsOut {
    points: Vec<PointOut>,
}

fn print_points(pts: &[LimitPoint], json: bool) {
    if json {
        let out = PointsOut {
            points: pts
                .iter()
                .map(|p| {
                    let (tower, coords) = point_key(p);
                    PointOut { tower, coords }
                })
                .collect(),
        };
        println!("{}", serde_json::to_string(&out).expect("serialization cannot fail"));
    } else if pts.is_empty() {
        println!("no limit points");
    } else {
        for p in pts {
            println!("{}", p.render());
        }
    }
}

fn run_crosscheck(chain: &RegularChain, at: &str, sym: &[LimitPoint]) -> Result<(), Failure> {
    let alphas: Vec<Complex64> = if at == "all" {
        numeric_h_r_roots(chain).unwrap_or_default()
    } else {
        let r = parse_rational(at)?;
        vec![Complex64::new(rational_to_f64(&r), 0.0)]
    };
    let mut numeric: Vec<NumericPoint> = Vec::new();
    for a in alphas {
        numeric.extend(numeric_branch_limits(chain, a, &DEFAULT_EPSILONS).points);
    }
    let report = cross_check(sym, &numeric, CROSS_CHECK_TOL);
    eprintln!("{}", report.render());
    if report.is_full_match() {
        Ok(())
    } else {
        Err(Failure::Limit("numeric cross-check mismatch".into()))
    }
}

fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Serialize)]
struct ExpansionOut {
    sigma: String,
    g: String,
    tower: Vec<String>,
    count: String,
}

fn print_expansions(classes: &[PuiseuxClass], json: bool) {
    let mut rows: Vec<(Vec<String>, String, &PuiseuxClass)> = classes
        .iter()
        .map(|c| {
            let tower: Vec<String> = c.tower.moduli().iter().map(|m| m.render_with(zname)).collect();
            (tower, c.param.render(&c.tower), c)
        })
        .collect();
    rows.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    if json {
        let out: Vec<ExpansionOut> = rows
            .iter()
            .map(|(tower, _, c)| ExpansionOut {
                sigma: c.param.sigma.to_string(),
                g: c.param.g_series(&c.tower).render("T"),
                tower: tower.clone(),
                count: c.expansion_count().to_string(),
            })
            .collect();
        let mut top = serde_json::Map::new();
        top.insert("expansions".into(), serde_json::to_value(out).expect("serialization cannot fail"));
        println!("{}", serde_json::Value::Object(top));
    } else if rows.is_empty() {
        println!("no bounded expansions");
    } else {
        for (tower, text, c) in &rows {
            let mut line = text.clone();
            if !tower.is_empty() {
                line.push_str(&format!(" where {} = 0", tower.join(", ")));
            }
            let n = c.expansion_count();
            if n > 1 {
                line.push_str(&format!("  [{n} expansions]"));
            }
            println!("{line}");
        }
    }
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Limits { file, at, accuracy_mode, accuracy_ceiling, crosscheck, json } => {
            let sys = load(&file)?;
            let chain = single_chain(&sys)?;
            let cfg = LimitConfig {
                mode: accuracy_mode.into(),
                ceiling: accuracy_ceiling,
                extra: 0,
            };
            let mut pts = if at == "all" {
                limit_points(&chain, &cfg)?
            } else {
                limit_points_at(&chain, &parse_rational(&at)?, &cfg)?
            };
            pts.sort_by_key(point_key);
            if crosscheck {
                run_crosscheck(&chain, &at, &pts)?;
            }
            print_points(&pts, json);
            Ok(())
        }
        Cmd::Puiseux { file, tau, json } => {
            let sys = load(&file)?;
            if tau == 0 {
                return Err(Failure::Input("--tau must be at least 1".into()));
            }
            if sys.vars.len() != 2 {
                return Err(Failure::Input(format!(
                    "puiseux expects a bivariate file; {} variables declared",
                    sys.vars.len()
                )));
            }
            if sys.chains.len() != 1 || sys.chains[0].len() != 1 {
                return Err(Failure::Input("puiseux expects exactly one polynomial".into()));
            }
            let classes = puiseux_expansions(&sys.chains[0][0], tau)?;
            print_expansions(&classes, json);
            Ok(())
        }
        Cmd::Closure { file } => {
            let sys = load(&file)?;
            let chain = single_chain(&sys)?;
            let desc = closure(&chain, &LimitConfig::default())?;
            println!("chain:");
            for p in desc.chain.polys() {
                println!("  {}", p.render_with(|i| sys.vars.name(i).to_string()));
            }
            println!("limit points:");
            if desc.limit_set.is_empty() {
                println!("  none");
            } else {
                let mut pts = desc.limit_set.clone();
                pts.sort_by_key(point_key);
                for p in &pts {
                    println!("  {}", p.render());
                }
            }
            Ok(())
        }
        Cmd::RemoveRedundant { file, assume_radical } => {
            let sys = load(&file)?;
            let chains: Vec<RegularChain> = sys
                .chains
                .iter()
                .map(|polys| RegularChain::new(sys.vars.clone(), polys.clone()))
                .collect();
            let kept = remove_redundant(&chains, assume_radical, &LimitConfig::default())?;
            let out = SystemFile {
                vars: sys.vars.clone(),
                chains: kept.iter().map(|c| c.polys().to_vec()).collect(),
            };
            print!("{}", out.render());
            Ok(())
        }
    }
}
