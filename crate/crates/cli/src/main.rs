//! Batch front end: parse words and loop polynomials, load surface
//! representations, run bracket computations and verification suites, and
//! emit JSON or CSV reports.
//!
//! Exit codes: 0 success, 1 verification violation, 2 input error,
//! 3 numeric or enumeration failure.

mod expr;

use clap::{Args, Parser, Subcommand};
use loopalg::center::{
    center_theorem_suite, is_central, probe_set, CenterElement, CenterSuiteParams, Reading,
};
use loopalg::coeff::coeff_parse;
use loopalg::goldman::Context;
use loopalg::hyperbolic::{
    rep_modular_torus, rep_once_holed_torus, rep_pair_of_pants, HypError, Representation,
};
use loopalg::intersect::EnumerationConfig;
use loopalg::poisson::{PbwElement, SymPoly};
use loopalg::suites;
use loopalg::words::{OrientedClass, UnorientedClass};
use loopalg::EngineError;
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "loopalg",
    version,
    about = "Goldman and Thurston-Wolpert-Goldman loop brackets on hyperbolic surfaces"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct SurfaceOpt {
    /// Surface: `modular`, `holed-torus:TRA,TRB,TRAB`, `pants:L1,L2,L3`,
    /// or a path to a representation JSON file.
    #[arg(long)]
    surface: String,
}

#[derive(Args, Clone)]
struct EngineOpts {
    /// Maximum conjugator word length (default: adaptive).
    #[arg(long)]
    radius: Option<usize>,
    /// Radius increments with unchanged output before accepting.
    #[arg(long, default_value_t = 2)]
    window: usize,
    /// Numeric decision tolerance.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Goldman bracket of two classes, with crossing diagnostics.
    Bracket {
        #[command(flatten)]
        surface: SurfaceOpt,
        /// First class word (a..z generators, A..Z inverses).
        x: String,
        /// Second class word.
        y: String,
        #[command(flatten)]
        engine: EngineOpts,
    },
    /// Centrality verdict for a loop polynomial.
    CenterCheck {
        #[command(flatten)]
        surface: SurfaceOpt,
        /// Loop polynomial, e.g. `3*(ab)(ab) + 1/2*(aB) - 2*()`.
        expr: String,
        /// Algebra reading: sym, sk, gw, vh, gw-vh.
        #[arg(long, default_value = "sym")]
        reading: String,
        /// Deformation parameter for the sk reading (rational, e.g. -1 or 1/2).
        #[arg(long, default_value = "1")]
        k: String,
        /// Probe classes up to this length.
        #[arg(long, default_value_t = 2)]
        probe_len: usize,
        /// Probe powers up to this exponent.
        #[arg(long, default_value_t = 3)]
        max_power: u32,
        #[command(flatten)]
        engine: EngineOpts,
    },
    /// Run a verification suite: beardon, zigzag, twist, jacobi-k, pbw,
    /// center, or skein.
    Verify {
        /// Suite name.
        suite: String,
        #[command(flatten)]
        surface: SurfaceOpt,
        /// Class length bound where the suite enumerates classes.
        #[arg(long)]
        max_len: Option<usize>,
        /// Essential classes certified up to this length (center suite).
        #[arg(long)]
        essential_max_len: Option<usize>,
        /// Probe powers (center suite).
        #[arg(long, default_value_t = 3)]
        max_power: u32,
        /// Probe length bound (center suite).
        #[arg(long, default_value_t = 2)]
        probe_len: usize,
        /// Sample count for sampled suites.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// RNG seed for sampled suites.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Twist curve (twist suite).
        #[arg(long, default_value = "a")]
        curve: String,
        /// Twist parameter range end (twist suite).
        #[arg(long, default_value_t = 1.0)]
        t_max: f64,
        /// Twist sample count (twist suite).
        #[arg(long, default_value_t = 11)]
        steps: usize,
        /// Also write the twist series as CSV here (twist suite).
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        engine: EngineOpts,
    },
    /// Scan a Fenchel-Nielsen twist family and emit a CSV series.
    TwistScan {
        #[command(flatten)]
        surface: SurfaceOpt,
        /// Twist curve word.
        #[arg(long)]
        curve: String,
        #[arg(long, default_value_t = 1.0)]
        t_max: f64,
        #[arg(long, default_value_t = 11)]
        steps: usize,
        #[command(flatten)]
        engine: EngineOpts,
    },
}

enum CliError {
    Input(String),
    Engine(String),
    Violation,
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Violation => 1,
            CliError::Input(_) => 2,
            CliError::Engine(_) => 3,
        }
    }
}

fn input_err<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn engine_err<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Engine(e.to_string())
}

fn from_engine(e: EngineError) -> CliError {
    match &e {
        EngineError::Word(_) => CliError::Input(e.to_string()),
        EngineError::Hyp(h) => match h {
            HypError::InvalidParameter(_) | HypError::NotDiscreteInput(_) => {
                CliError::Input(e.to_string())
            }
            _ => CliError::Engine(e.to_string()),
        },
        _ => CliError::Engine(e.to_string()),
    }
}

fn parse_surface(spec: &str) -> Result<Representation, CliError> {
    if spec == "modular" {
        return Ok(rep_modular_torus());
    }
    if let Some(rest) = spec.strip_prefix("holed-torus:") {
        let v = parse_floats(rest, 3)?;
        return rep_once_holed_torus(v[0], v[1], v[2]).map_err(input_err);
    }
    if let Some(rest) = spec.strip_prefix("pants:") {
        let v = parse_floats(rest, 3)?;
        return rep_pair_of_pants(v[0], v[1], v[2]).map_err(input_err);
    }
    let path = spec.strip_prefix("file:").unwrap_or(spec);
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read surface {path}: {e}")))?;
    Representation::from_json_str(&text).map_err(input_err)
}

fn parse_floats(s: &str, n: usize) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != n {
        return Err(CliError::Input(format!(
            "expected {n} comma-separated numbers, got {s}"
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Input(format!("bad number {p}: {e}")))
        })
        .collect()
}

fn engine_cfg(e: &EngineOpts) -> EnumerationConfig {
    EnumerationConfig {
        radius: e.radius,
        stabilization_window: e.window,
        tol: e.tol,
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        None => {
            println!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, format!("{text}\n"))
            .map_err(|e| CliError::Engine(format!("cannot write {}: {e}", path.display()))),
    }
}

#[derive(Serialize)]
struct CrossingOut {
    sign: i8,
    angle: f64,
    product: String,
    position: f64,
    witness: String,
    point: [f64; 2],
}

#[derive(Serialize)]
struct BracketOut {
    schema: u32,
    surface: String,
    x: String,
    y: String,
    terms: BTreeMap<String, String>,
    crossings: Vec<CrossingOut>,
}

fn cmd_bracket(
    surface: &SurfaceOpt,
    x: &str,
    y: &str,
    engine: &EngineOpts,
) -> Result<(), CliError> {
    let rep = parse_surface(&surface.surface)?;
    let cx = OrientedClass::parse(x, rep.rank()).map_err(input_err)?;
    let cy = OrientedClass::parse(y, rep.rank()).map_err(input_err)?;
    let ctx = Context::new(&rep, engine_cfg(engine));
    let terms = ctx.bracket(&cx, &cy).map_err(engine_err)?;
    let crossings = if terms.is_zero() {
        Vec::new()
    } else {
        ctx.intersection(&cx, &cy)
            .map_err(engine_err)?
            .iter()
            .map(|d| CrossingOut {
                sign: d.sign,
                angle: d.angle,
                product: d.product.to_string(),
                position: d.position,
                witness: d.witness.to_string(),
                point: [d.point.x, d.point.y],
            })
            .collect()
    };
    let doc = BracketOut {
        schema: 1,
        surface: rep.label().to_string(),
        x: x.to_string(),
        y: y.to_string(),
        terms: terms.to_string_map(),
        crossings,
    };
    emit(&engine.out, &serde_json::to_string_pretty(&doc).unwrap())
}

#[derive(Serialize)]
struct CenterCheckOut {
    schema: u32,
    surface: String,
    reading: String,
    expr: String,
    status: loopalg::center::CentralityStatus,
    witness: Option<loopalg::center::Witness>,
    probe_bound: loopalg::center::ProbeBound,
}

fn cmd_center_check(
    surface: &SurfaceOpt,
    expr_text: &str,
    reading: &str,
    k: &str,
    probe_len: usize,
    max_power: u32,
    engine: &EngineOpts,
) -> Result<(), CliError> {
    let rep = parse_surface(&surface.surface)?;
    let poly = expr::parse_loop_expr(expr_text, rep.rank()).map_err(CliError::Input)?;
    let elem = match reading {
        "sym" => CenterElement::Sym(poly.clone()),
        "sk" => CenterElement::Sk {
            elem: poly.clone(),
            k: coeff_parse(k).ok_or_else(|| CliError::Input(format!("bad rational: {k}")))?,
        },
        "gw" => {
            let mut folded = SymPoly::zero();
            for (m, c) in poly.iter() {
                let mono: Vec<UnorientedClass> =
                    m.iter().map(UnorientedClass::from_oriented).collect();
                folded.add_term(mono, c.clone());
            }
            CenterElement::SymUnoriented(folded)
        }
        "vh" => {
            let mut e = PbwElement::zero();
            for (m, c) in poly.iter() {
                e.add_term(m.clone(), loopalg::poisson::HPoly::constant(c.clone()));
            }
            CenterElement::Vh(e)
        }
        "gw-vh" => {
            let mut e = PbwElement::zero();
            for (m, c) in poly.iter() {
                let mut mono: Vec<UnorientedClass> =
                    m.iter().map(UnorientedClass::from_oriented).collect();
                mono.sort();
                e.add_term(mono, loopalg::poisson::HPoly::constant(c.clone()));
            }
            CenterElement::VhUnoriented(e)
        }
        other => {
            return Err(CliError::Input(format!(
                "unknown reading {other}; use sym, sk, gw, vh, or gw-vh"
            )))
        }
    };
    let ctx = Context::new(&rep, engine_cfg(engine));
    let probes = probe_set(&ctx, probe_len).map_err(engine_err)?;
    let verdict = is_central(&ctx, &elem, &probes, max_power).map_err(engine_err)?;
    let doc = CenterCheckOut {
        schema: 1,
        surface: rep.label().to_string(),
        reading: reading.to_string(),
        expr: expr_text.to_string(),
        status: verdict.status,
        witness: verdict.witness,
        probe_bound: verdict.probe_bound,
    };
    emit(&engine.out, &serde_json::to_string_pretty(&doc).unwrap())
}

fn twist_csv(report: &suites::TwistReport) -> String {
    let mut out = String::from("t,theta,theta_reversed,l_other,l_product,trace_curve\n");
    for r in &report.rows {
        out.push_str(&format!(
            "{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}\n",
            r.t, r.theta, r.theta_reversed, r.l_other, r.l_product, r.trace_curve
        ));
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    suite: &str,
    surface: &SurfaceOpt,
    max_len: Option<usize>,
    essential_max_len: Option<usize>,
    max_power: u32,
    probe_len: usize,
    samples: usize,
    seed: u64,
    curve: &str,
    t_max: f64,
    steps: usize,
    csv: &Option<PathBuf>,
    engine: &EngineOpts,
) -> Result<(), CliError> {
    let rep = parse_surface(&surface.surface)?;
    let cfg = engine_cfg(engine);
    let ctx = Context::new(&rep, cfg);
    let (text, pass) = match suite {
        "beardon" => {
            let r = suites::beardon_sweep(&ctx, max_len.unwrap_or(3), 1e-8)
                .map_err(from_engine)?;
            (serde_json::to_string_pretty(&r).unwrap(), r.pass)
        }
        "zigzag" => {
            let r = suites::zigzag_sweep(&ctx, max_len.unwrap_or(3), samples, seed, 1e-8)
                .map_err(from_engine)?;
            (serde_json::to_string_pretty(&r).unwrap(), r.pass)
        }
        "twist" => {
            let c = OrientedClass::parse(curve, rep.rank()).map_err(input_err)?;
            let r = suites::twist_scan(&rep, &c, t_max, steps, &cfg).map_err(from_engine)?;
            if let Some(path) = csv {
                std::fs::write(path, twist_csv(&r))
                    .map_err(|e| CliError::Engine(format!("cannot write csv: {e}")))?;
            }
            (serde_json::to_string_pretty(&r).unwrap(), r.pass)
        }
        "jacobi-k" => {
            let r = suites::jacobi_k_sweep(
                &ctx,
                max_len.unwrap_or(2),
                samples.max(1),
                seed,
                &[0, 1, 2, -1],
            )
            .map_err(from_engine)?;
            (serde_json::to_string_pretty(&r).unwrap(), r.pass)
        }
        "pbw" => {
            let r = suites::pbw_sweep(&ctx, samples.max(1), seed).map_err(from_engine)?;
            (serde_json::to_string_pretty(&r).unwrap(), r.pass)
        }
        "center" => {
            let params = CenterSuiteParams {
                max_len: max_len.unwrap_or(4),
                essential_max_len: essential_max_len.or(max_len).unwrap_or(3).min(max_len.unwrap_or(4)),
                max_power,
                probe_max_len: probe_len,
                readings: vec![
                    Reading::Sym,
                    Reading::GwSym,
                    Reading::Sk(0),
                    Reading::Sk(1),
                    Reading::Sk(-1),
                    Reading::Vh,
                    Reading::GwVh,
                ],
            };
            let r = center_theorem_suite(&ctx, &params).map_err(from_engine)?;
            (serde_json::to_string_pretty(&r).unwrap(), r.pass)
        }
        "skein" => {
            let r = suites::skein_sweep(&ctx).map_err(from_engine)?;
            (serde_json::to_string_pretty(&r).unwrap(), r.pass)
        }
        other => {
            return Err(CliError::Input(format!(
                "unknown suite {other}; use beardon, zigzag, twist, jacobi-k, pbw, center, or skein"
            )))
        }
    };
    emit(&engine.out, &text)?;
    if pass {
        Ok(())
    } else {
        Err(CliError::Violation)
    }
}

fn cmd_twist_scan(
    surface: &SurfaceOpt,
    curve: &str,
    t_max: f64,
    steps: usize,
    engine: &EngineOpts,
) -> Result<(), CliError> {
    let rep = parse_surface(&surface.surface)?;
    let c = OrientedClass::parse(curve, rep.rank()).map_err(input_err)?;
    let report =
        suites::twist_scan(&rep, &c, t_max, steps, &engine_cfg(engine)).map_err(from_engine)?;
    emit(&engine.out, twist_csv(&report).trim_end())
}

fn run() -> Result<(), CliError> {
    if let Ok(threads) = std::env::var("LOOPALG_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    match &cli.cmd {
        Cmd::Bracket {
            surface,
            x,
            y,
            engine,
        } => cmd_bracket(surface, x, y, engine),
        Cmd::CenterCheck {
            surface,
            expr,
            reading,
            k,
            probe_len,
            max_power,
            engine,
        } => cmd_center_check(surface, expr, reading, k, *probe_len, *max_power, engine),
        Cmd::Verify {
            suite,
            surface,
            max_len,
            essential_max_len,
            max_power,
            probe_len,
            samples,
            seed,
            curve,
            t_max,
            steps,
            csv,
            engine,
        } => cmd_verify(
            suite,
            surface,
            *max_len,
            *essential_max_len,
            *max_power,
            *probe_len,
            *samples,
            *seed,
            curve,
            *t_max,
            *steps,
            csv,
            engine,
        ),
        Cmd::TwistScan {
            surface,
            curve,
            t_max,
            steps,
            engine,
        } => cmd_twist_scan(surface, curve, *t_max, *steps, engine),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Input(msg) => eprintln!("input error: {msg}"),
                CliError::Engine(msg) => eprintln!("engine error: {msg}"),
                CliError::Violation => eprintln!("verification found violations"),
            }
            ExitCode::from(e.code())
        }
    }
}
