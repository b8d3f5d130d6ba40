//! Command-line front end: single-point queries, figure-style sweeps,
//! crossover solves and CSV/JSON emission.

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use photsub::sweep::{find_measure_crossing, uniform_grid, DEFAULT_CROSSING_TOL};
use photsub::{
    build_pt_blocks, channel_matrix, dense_coding_limit_study, erf, fid_mixed, fid_pure,
    fid_xp_integrand, i_sq, mutual_information, negativity_from_blocks, pure_subtracted_state,
    quad, schmidt_negativity, schmidt_pt_blocks, squeezed_vacuum_state, sv_negativity,
    BlockDiagonalPT, EntanglementReport, Measure, ModelParams, Resource, SignalParams,
};
use serde_json::json;
use std::f64::consts::SQRT_2;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "photsub",
    version,
    about = "Negativity, teleportation fidelity and dense-coding mutual information \
             of photon-subtracted two-mode squeezed vacuum states"
)]
struct Cli {
    /// Worker threads for sweeps and block assembly (0 = all cores)
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

/// Inclusive grid specification `start:stop:count`.
#[derive(Clone, Copy, Debug)]
struct GridSpec {
    start: f64,
    stop: f64,
    count: usize,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("grid `{s}` is not of the form a:b:n"));
        }
        let start: f64 = parts[0].parse().map_err(|e| format!("grid start: {e}"))?;
        let stop: f64 = parts[1].parse().map_err(|e| format!("grid stop: {e}"))?;
        let count: usize = parts[2].parse().map_err(|e| format!("grid count: {e}"))?;
        if count == 0 {
            return Err("grid count must be positive".into());
        }
        if start.is_nan() || stop.is_nan() || start >= stop {
            return Err(format!("grid start {start} must be below stop {stop}"));
        }
        Ok(Self { start, stop, count })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Entanglement report (negativity, log-negativity, trace diagnostic)
    /// for one parameter point
    Negativity {
        /// Squeezing parameter lambda = tanh r
        #[arg(long)]
        lambda: f64,
        /// Tap transmittance
        #[arg(long = "T", default_value_t = 0.9)]
        transmittance: f64,
        /// Fock cutoff
        #[arg(long, default_value_t = 50)]
        kmax: usize,
        /// Entangled resource
        #[arg(long, default_value = "mixed", value_parser = <Resource as FromStr>::from_str)]
        case: Resource,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        /// Write here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also report the squeezing as -10 log10((1-lambda)/(1+lambda)) dB
        #[arg(long)]
        db: bool,
    },

    /// Tabulate one measure for all three resources over a lambda grid
    Sweep {
        #[arg(long, value_parser = <Measure as FromStr>::from_str)]
        measure: Measure,
        /// Lambda grid as start:stop:count
        #[arg(long, default_value = "0.05:0.9:50")]
        grid: GridSpec,
        #[arg(long = "T", default_value_t = 0.9)]
        transmittance: f64,
        #[arg(long, default_value_t = 50)]
        kmax: usize,
        /// QPSK amplitude (mutualinfo only)
        #[arg(long, default_value_t = 1.5)]
        beta: f64,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Locate the intersection of a subtracted-resource curve with the
    /// squeezed-vacuum curve
    Crossover {
        #[arg(long, value_parser = <Measure as FromStr>::from_str)]
        measure: Measure,
        /// Which subtracted resource to intersect (pure or mixed)
        #[arg(long, default_value = "mixed", value_parser = <Resource as FromStr>::from_str)]
        case: Resource,
        #[arg(long = "T", default_value_t = 0.9)]
        transmittance: f64,
        #[arg(long, default_value_t = 50)]
        kmax: usize,
        #[arg(long, default_value_t = 1.5)]
        beta: f64,
        /// Scan range and resolution used to bracket the root, as a:b:n
        #[arg(long, default_value = "0.05:0.98:40")]
        grid: GridSpec,
        /// Bisection tolerance in lambda
        #[arg(long, default_value_t = DEFAULT_CROSSING_TOL)]
        tol: f64,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Dense-coding crossings along a decreasing beta ladder
    DenseLimit {
        #[arg(long = "T", default_value_t = 0.9)]
        transmittance: f64,
        #[arg(long, default_value_t = 50)]
        kmax: usize,
        /// Beta ladder, comma separated
        #[arg(long, value_delimiter = ',', default_values_t = photsub::sweep::DEFAULT_LIMIT_BETAS)]
        betas: Vec<f64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Dump the partial-transpose blocks of a state
    State {
        #[arg(long)]
        lambda: f64,
        #[arg(long = "T", default_value_t = 0.9)]
        transmittance: f64,
        #[arg(long, default_value_t = 50)]
        kmax: usize,
        #[arg(long, default_value = "mixed", value_parser = <Resource as FromStr>::from_str)]
        case: Resource,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Run the built-in oracle checks
    Selftest,
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    };
    if let Err(e) = pool.install(|| run(cli.command)) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

/// >= 16 significant decimal digits, stable across runs.
fn fmt(v: f64) -> String {
    format!("{v:.15e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt).unwrap_or_default()
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), Box<dyn std::error::Error + Send + Sync>> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn squeezing_db(lambda: f64) -> f64 {
    -10.0 * ((1.0 - lambda) / (1.0 + lambda)).log10()
}

fn report_json(r: &EntanglementReport, lambda: f64, transmittance: f64, db: bool) -> serde_json::Value {
    let mut obj = json!({
        "negativity": r.negativity,
        "log_negativity": r.log_negativity,
        "delta_trace": r.delta_trace,
        "kmax": r.kmax,
        "lambda": lambda,
        "transmittance": transmittance,
        "negativity_raw": r.negativity_raw,
    });
    if db {
        obj["squeezing_db"] = json!(squeezing_db(lambda));
    }
    obj
}

fn run(command: Command) -> Result<(), Box<dyn std::error::Error + Send + Sync>> {
    match command {
        Command::Negativity { lambda, transmittance, kmax, case, format, out, db } => {
            let report = match case {
                Resource::Sq => sv_negativity(lambda)?,
                Resource::Pure => {
                    let params = ModelParams::new(lambda, transmittance, kmax, 1e-16)?;
                    schmidt_negativity(&pure_subtracted_state(&params)?)
                }
                Resource::Mixed => {
                    let params = ModelParams::new(lambda, transmittance, kmax, 1e-16)?;
                    negativity_from_blocks(&build_pt_blocks(&params)?)?
                }
            };
            let content = match format {
                OutputFormat::Json => {
                    let obj = report_json(&report, lambda, transmittance, db);
                    format!("{}\n", serde_json::to_string_pretty(&obj)?)
                }
                OutputFormat::Csv => {
                    let mut header =
                        "lambda,transmittance,kmax,negativity,log_negativity,delta_trace".to_string();
                    let mut row = format!(
                        "{},{},{},{},{},{}",
                        fmt(lambda),
                        fmt(transmittance),
                        report.kmax.map(|k| k.to_string()).unwrap_or_default(),
                        fmt(report.negativity),
                        fmt(report.log_negativity),
                        fmt(report.delta_trace),
                    );
                    if db {
                        header.push_str(",squeezing_db");
                        row.push_str(&format!(",{}", fmt(squeezing_db(lambda))));
                    }
                    format!("{header}\n{row}\n")
                }
            };
            emit(&out, &content)
        }

        Command::Sweep { measure, grid, transmittance, kmax, beta, format, out } => {
            let base = ModelParams::new(0.0, transmittance, kmax, 1e-16)?;
            let signal = SignalParams::new(beta)?;
            let points = uniform_grid(grid.start, grid.stop, grid.count);
            let records = photsub::sweep::sweep(measure, &points, &base, Some(&signal));
            let content = match format {
                OutputFormat::Csv => {
                    let mut s = String::from("lambda,value_sq,value_pure,value_mixed\n");
                    for r in &records {
                        s.push_str(&format!(
                            "{},{},{},{}\n",
                            fmt(r.lambda),
                            fmt_opt(r.value_sq),
                            fmt_opt(r.value_pure),
                            fmt_opt(r.value_mixed),
                        ));
                    }
                    s
                }
                OutputFormat::Json => {
                    let rows: Vec<_> = records
                        .iter()
                        .map(|r| {
                            json!({
                                "lambda": r.lambda,
                                "value_sq": r.value_sq,
                                "value_pure": r.value_pure,
                                "value_mixed": r.value_mixed,
                            })
                        })
                        .collect();
                    let obj = json!({
                        "measure": measure.to_string(),
                        "transmittance": transmittance,
                        "kmax": kmax,
                        "beta": beta,
                        "records": rows,
                    });
                    format!("{}\n", serde_json::to_string_pretty(&obj)?)
                }
            };
            emit(&out, &content)
        }

        Command::Crossover { measure, case, transmittance, kmax, beta, grid, tol, format, out } => {
            if case == Resource::Sq {
                eprintln!("error: --case must be pure or mixed (the squeezed vacuum is the reference curve)");
                std::process::exit(2);
            }
            let base = ModelParams::new(0.0, transmittance, kmax, 1e-16)?;
            let signal = SignalParams::new(beta)?;
            let result = find_measure_crossing(
                measure,
                case,
                &base,
                Some(&signal),
                (grid.start, grid.stop, grid.count),
                tol,
            )?;
            let content = match format {
                None => format!("lambda_star = {:.6}\n", result.lambda_star),
                Some(OutputFormat::Json) => {
                    let obj = json!({
                        "measure": measure.to_string(),
                        "case": case.to_string(),
                        "transmittance": transmittance,
                        "lambda_star": result.lambda_star,
                        "bracket": [result.bracket.0, result.bracket.1],
                        "residual": result.residual,
                        "iterations": result.iterations,
                    });
                    format!("{}\n", serde_json::to_string_pretty(&obj)?)
                }
                Some(OutputFormat::Csv) => format!(
                    "measure,case,lambda_star,residual,iterations\n{},{},{},{},{}\n",
                    measure,
                    case,
                    fmt(result.lambda_star),
                    fmt(result.residual),
                    result.iterations
                ),
            };
            emit(&out, &content)
        }

        Command::DenseLimit { transmittance, kmax, betas, format, out } => {
            let base = ModelParams::new(0.0, transmittance, kmax, 1e-16)?;
            let records = dense_coding_limit_study(&betas, &base);
            let content = match format {
                OutputFormat::Csv => {
                    let mut s = String::from("beta,lambda_star_pure,lambda_star_mixed\n");
                    for r in &records {
                        s.push_str(&format!(
                            "{},{},{}\n",
                            fmt(r.beta),
                            fmt_opt(r.lambda_star_pure),
                            fmt_opt(r.lambda_star_mixed),
                        ));
                    }
                    s
                }
                OutputFormat::Json => {
                    let rows: Vec<_> = records
                        .iter()
                        .map(|r| {
                            json!({
                                "beta": r.beta,
                                "lambda_star_pure": r.lambda_star_pure,
                                "lambda_star_mixed": r.lambda_star_mixed,
                            })
                        })
                        .collect();
                    format!("{}\n", serde_json::to_string_pretty(&json!({
                        "transmittance": transmittance,
                        "records": rows,
                    }))?)
                }
            };
            emit(&out, &content)
        }

        Command::State { lambda, transmittance, kmax, case, format, out } => {
            let params = ModelParams::new(lambda, transmittance, kmax, 1e-16)?;
            let pt: BlockDiagonalPT = match case {
                Resource::Mixed => build_pt_blocks(&params)?,
                Resource::Pure => schmidt_pt_blocks(&pure_subtracted_state(&params)?),
                Resource::Sq => schmidt_pt_blocks(&squeezed_vacuum_state(lambda, kmax)?),
            };
            let content = match format {
                OutputFormat::Json => {
                    let blocks: Vec<Vec<Vec<f64>>> = pt
                        .blocks
                        .iter()
                        .map(|b| b.matrix.outer_iter().map(|row| row.to_vec()).collect())
                        .collect();
                    let obj = json!({
                        "lambda": lambda,
                        "transmittance": transmittance,
                        "kmax": kmax,
                        "case": case.to_string(),
                        "delta_trace": pt.delta_trace,
                        "blocks": blocks,
                    });
                    format!("{}\n", serde_json::to_string_pretty(&obj)?)
                }
                OutputFormat::Csv => {
                    let mut s = String::from("k,row,col,value\n");
                    for b in &pt.blocks {
                        for i in 0..b.matrix.nrows() {
                            for j in 0..b.matrix.ncols() {
                                s.push_str(&format!(
                                    "{},{},{},{}\n",
                                    b.k_total,
                                    i,
                                    j,
                                    fmt(b.matrix[(i, j)])
                                ));
                            }
                        }
                    }
                    s
                }
            };
            emit(&out, &content)
        }

        Command::Selftest => {
            let failures = selftest();
            if failures > 0 {
                eprintln!("selftest: {failures} check(s) failed");
                std::process::exit(1);
            }
            println!("selftest: all checks passed");
            Ok(())
        }
    }
}

/// Quick oracle suite: closed forms against the numeric pipeline, quadrature
/// and reference values. Prints one line per check.
fn selftest() -> usize {
    let mut failures = 0;
    let mut check = |name: &str, pass: bool, detail: String| {
        println!("{} — {name} ({detail})", if pass { "ok  " } else { "FAIL" });
        if !pass {
            failures += 1;
        }
    };

    let err = (erf(1.0) - 0.842_700_792_949_714_9).abs();
    check("erf reference value", err < 1e-14, format!("|err| = {err:.1e}"));

    let sv_block = negativity_from_blocks(&schmidt_pt_blocks(&squeezed_vacuum_state(0.5, 40).unwrap()))
        .unwrap()
        .negativity;
    check(
        "squeezed-vacuum pipeline vs closed form",
        (sv_block - 1.0).abs() < 1e-8,
        format!("N = {sv_block:.10}"),
    );

    let params = ModelParams::with_defaults(0.5).unwrap();
    let state = pure_subtracted_state(&params).unwrap();
    let gap = (schmidt_negativity(&state).log_negativity
        - negativity_from_blocks(&schmidt_pt_blocks(&state)).unwrap().log_negativity)
        .abs();
    check("pure state: Schmidt vs block route", gap < 1e-8, format!("|dE| = {gap:.1e}"));

    let pt = build_pt_blocks(&ModelParams::new(0.5, 0.9, 30, 1e-16).unwrap()).unwrap();
    check(
        "mixed-state truncated trace",
        pt.delta_trace > 0.9999 && pt.delta_trace <= 1.0 + 1e-12,
        format!("Delta = {:.8}", pt.delta_trace),
    );

    let closed = fid_mixed(&params).unwrap().value;
    let a0 = Complex64::new(0.5, -1.0);
    let integral = quad::integrate_2d(
        &|x, y| fid_xp_integrand(Resource::Mixed, x, y, a0, &params).unwrap(),
        SQRT_2 * a0.re - 12.0,
        SQRT_2 * a0.re + 12.0,
        SQRT_2 * a0.im - 12.0,
        SQRT_2 * a0.im + 12.0,
        1e-10,
    );
    check(
        "teleportation fidelity vs quadrature",
        (closed - integral).abs() < 1e-8,
        format!("|diff| = {:.1e}", (closed - integral).abs()),
    );

    let sig = SignalParams::new(1.5).unwrap();
    let ch = channel_matrix(Resource::Mixed, &params, &sig).unwrap();
    let worst_row = ch
        .row_sums()
        .iter()
        .map(|s| (s - 1.0).abs())
        .fold(0.0f64, f64::max);
    check("channel rows stochastic", worst_row < 1e-9, format!("worst dev = {worst_row:.1e}"));

    let identity_gap =
        (i_sq(0.5, 1.5).unwrap() - mutual_information(&channel_matrix(Resource::Sq, &params, &sig).unwrap())).abs();
    check("closed-form info vs channel pipeline", identity_gap < 1e-10, format!("|diff| = {identity_gap:.1e}"));

    let near = ModelParams::new(0.5, 0.9999, 50, 1e-16).unwrap();
    let t1_gap = (fid_mixed(&near).unwrap().value - fid_pure(&near).unwrap().value).abs();
    check("T -> 1 fidelity consistency", t1_gap < 1e-3, format!("|diff| = {t1_gap:.1e}"));

    check(
        "squeezing dB helper",
        (squeezing_db(0.772) - 8.905).abs() < 0.01,
        format!("dB(0.772) = {:.3}", squeezing_db(0.772)),
    );

    failures
}
