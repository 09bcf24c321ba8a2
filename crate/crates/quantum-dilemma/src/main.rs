//! Command-line front end. All computation lives in the library; this
//! binary parses arguments, picks renderers and maps errors to exit
//! codes: 0 success, 2 constraint or validation error, 3 check-mode
//! mismatch, 4 I/O or parse error.

use std::fs::File;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use quantum_dilemma::dataset::{builtin_datasets, read_csv};
use quantum_dilemma::equilibria::{
    nash_scan, StrategyGrid, DEFAULT_NASH_TOL, DEFAULT_TOL_GAMMA, NAMED_STRATEGIES,
};
use quantum_dilemma::indicators::{cooperation_gap, indicator_set_with};
use quantum_dilemma::ranking::CompareTolerances;
use quantum_dilemma::report::{
    check_against_reference, render_csv, render_json, render_text, scatter_csv, sweep_csv,
    table_report,
};
use quantum_dilemma::series::{scatter_series, sweep_series, PayoffParam};
use quantum_dilemma::{
    expected_payoffs, final_state, outcome_distribution, Entanglement, Error, PayoffMatrix,
    StrategyParams,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "quantum-dilemma",
    version,
    about = "Quantum prisoner's dilemma: protocol evaluation, equilibria, cooperation indicators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format (commands without a natural CSV shape fall back to text)
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Bisection tolerance for the entanglement barriers, radians
    #[arg(long, global = true, default_value_t = DEFAULT_TOL_GAMMA)]
    tol_gamma: f64,

    /// Deviation grid as THETAxPHI points, endpoints included
    #[arg(long, global = true, default_value = "181x91")]
    grid: String,

    /// Display angles in degrees (inputs are always radians)
    #[arg(long, global = true)]
    degrees: bool,
}

#[derive(Subcommand)]
enum Command {
    /// All six cooperation indicators of one payoff matrix
    Analyze {
        a: f64,
        b: f64,
        c: f64,
        d: f64,
        /// Also evaluate the cooperation gap at this entanglement
        #[arg(long)]
        gamma: Option<f64>,
    },
    /// Indicator table plus quantum and classical rankings for a dataset
    Table {
        /// `builtin` or a path to a dataset CSV
        #[arg(long, default_value = "builtin")]
        dataset: String,
        /// Compare every cell against the bundled expected values;
        /// exits 3 on any out-of-tolerance cell
        #[arg(long)]
        check: bool,
    },
    /// Sweep one payoff parameter; emits delta_star, gamma_star, n_value
    Sweep {
        /// Which parameter to vary: a, b, c or d
        #[arg(long)]
        param: String,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        step: f64,
        /// Fixed payoffs; the swept one is overridden at each point
        #[arg(long, default_value_t = 12.0)]
        a: f64,
        #[arg(long, default_value_t = 50.0)]
        b: f64,
        #[arg(long, default_value_t = 40.0)]
        c: f64,
        #[arg(long, default_value_t = 25.0)]
        d: f64,
    },
    /// Observed cooperation against n_value, with inversion counts
    Scatter {
        #[arg(long, default_value = "builtin")]
        dataset: String,
    },
    /// One protocol evaluation: final state, outcome distribution, payoffs
    Payoff {
        a: f64,
        b: f64,
        c: f64,
        d: f64,
        #[arg(long)]
        theta_a: f64,
        #[arg(long, default_value_t = 0.0)]
        phi_a: f64,
        #[arg(long)]
        theta_b: f64,
        #[arg(long, default_value_t = 0.0)]
        phi_b: f64,
        #[arg(long)]
        gamma: f64,
    },
    /// Nash scan over the named strategies {C, D, Q} x {C, D, Q}
    Equilibria {
        a: f64,
        b: f64,
        c: f64,
        d: f64,
        #[arg(long)]
        gamma: f64,
        /// Certification tolerance in game units
        #[arg(long, default_value_t = DEFAULT_NASH_TOL)]
        tol: f64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::Io(_) => 4,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let grid = parse_grid(&cli.grid)?;
    // negated so a NaN tolerance is rejected too
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(cli.tol_gamma > 0.0) {
        return Err(Failure {
            code: 2,
            message: format!("--tol-gamma must be positive, got {}", cli.tol_gamma),
        });
    }

    match &cli.command {
        Command::Analyze { a, b, c, d, gamma } => {
            let payoff = PayoffMatrix::new(*a, *b, *c, *d).map_err(Failure::from)?;
            let set = indicator_set_with(&payoff, &grid, cli.tol_gamma).map_err(Failure::from)?;
            let gap = match gamma {
                Some(g) => {
                    let g = Entanglement::new(*g).map_err(Failure::from)?;
                    Some((g.gamma(), cooperation_gap(&payoff, g)))
                }
                None => None,
            };
            let output = match cli.format {
                Format::Json => {
                    let mut value = json!({
                        "payoff": payoff,
                        "indicators": set,
                        "rounded": {
                            "delta_lower": round3(set.delta_lower),
                            "delta_star": round3(set.delta_star),
                            "gamma2": round3(set.gamma2.gamma),
                            "gamma1": round3(set.gamma1.gamma),
                            "gamma_star": set.gamma_star.map(round3),
                            "n_value": round2(set.n_value),
                        },
                    });
                    if let Some((g, v)) = gap {
                        value["gap_at_gamma"] = json!({"gamma": g, "value": v});
                    }
                    pretty(&value)
                }
                Format::Csv => {
                    let gs = set.gamma_star.map(|g| format!("{g}")).unwrap_or_default();
                    let mut s = String::from(
                        "a,b,c,d,delta_lower,delta_star,gamma2,gamma1,gamma_star,n_value\n",
                    );
                    s.push_str(&format!(
                        "{},{},{},{},{},{},{},{},{},{}\n",
                        a,
                        b,
                        c,
                        d,
                        set.delta_lower,
                        set.delta_star,
                        set.gamma2.gamma,
                        set.gamma1.gamma,
                        gs,
                        set.n_value
                    ));
                    s
                }
                Format::Text => {
                    let ang = |x: f64| angle(x, cli.degrees);
                    let unit = if cli.degrees { "deg" } else { "rad" };
                    let mut s = format!(
                        "payoffs             a={a} b={b} c={c} d={d}\n\
                         delta_lower         {:.3}\n\
                         delta_star          {:.3}\n\
                         gamma2 [{unit}]        {:.3}\n\
                         gamma1 [{unit}]        {:.3}\n",
                        set.delta_lower,
                        set.delta_star,
                        ang(set.gamma2.gamma),
                        ang(set.gamma1.gamma),
                    );
                    match set.gamma_star {
                        Some(g) => s.push_str(&format!("gamma_star [{unit}]    {:.3}\n", ang(g))),
                        None => s.push_str("gamma_star          none (gap has no zero)\n"),
                    }
                    s.push_str(&format!("n_value             {:.2}\n", set.n_value));
                    if let Some((g, v)) = gap {
                        s.push_str(&format!("gap at gamma={g:.4}  {v:.6}\n"));
                    }
                    s
                }
            };
            emit(&cli, output)
        }

        Command::Table { dataset, check } => {
            if *check && dataset != "builtin" {
                return Err(Failure {
                    code: 2,
                    message: "check mode requires --dataset builtin".into(),
                });
            }
            let records = load_dataset(dataset)?;
            let report = table_report(
                &records,
                &grid,
                cli.tol_gamma,
                &CompareTolerances::default(),
            )
            .map_err(Failure::from)?;
            let output = match cli.format {
                Format::Json => pretty(&render_json(&report)),
                Format::Csv => render_csv(&report),
                Format::Text => render_text(&report, cli.degrees),
            };
            emit(&cli, output)?;
            if *check {
                let (checked, mismatches) = check_against_reference(&report.rows);
                if mismatches.is_empty() {
                    eprintln!("check: {checked} cells within tolerance");
                } else {
                    for m in &mismatches {
                        eprintln!(
                            "check: {} {} computed {:.6} expected {:.6} (tolerance {})",
                            m.game_id, m.column, m.computed, m.expected, m.tolerance
                        );
                    }
                    return Err(Failure {
                        code: 3,
                        message: format!(
                            "{} of {} cells out of tolerance",
                            mismatches.len(),
                            checked
                        ),
                    });
                }
            }
            Ok(())
        }

        Command::Sweep {
            param,
            from,
            to,
            step,
            a,
            b,
            c,
            d,
        } => {
            let param: PayoffParam = param.parse().map_err(Failure::from)?;
            let rows =
                sweep_series(param, *from, *to, *step, (*a, *b, *c, *d)).map_err(Failure::from)?;
            let output = match cli.format {
                Format::Json => pretty(&json!({ "param": param, "rows": rows })),
                _ => sweep_csv(param, &rows),
            };
            emit(&cli, output)
        }

        Command::Scatter { dataset } => {
            let records = load_dataset(dataset)?;
            let (points, inversions) = scatter_series(&records).map_err(Failure::from)?;
            let output = match cli.format {
                Format::Json => pretty(&json!({
                    "points": points,
                    "inversions": inversions
                        .iter()
                        .map(|(e, n)| json!({"experiment": e, "count": n}))
                        .collect::<Vec<_>>(),
                })),
                _ => scatter_csv(&points, &inversions),
            };
            emit(&cli, output)
        }

        Command::Payoff {
            a,
            b,
            c,
            d,
            theta_a,
            phi_a,
            theta_b,
            phi_b,
            gamma,
        } => {
            let payoff = PayoffMatrix::new(*a, *b, *c, *d).map_err(Failure::from)?;
            let ua = StrategyParams::new(*theta_a, *phi_a).map_err(Failure::from)?;
            let ub = StrategyParams::new(*theta_b, *phi_b).map_err(Failure::from)?;
            let gamma = Entanglement::new(*gamma).map_err(Failure::from)?;
            let state = final_state(ua, ub, gamma);
            let dist = outcome_distribution(&state).map_err(Failure::from)?;
            let pay = expected_payoffs(&payoff, &dist);
            let amps: Vec<(f64, f64)> = state.amplitudes().iter().map(|z| (z.re, z.im)).collect();
            let output = match cli.format {
                Format::Json => pretty(&json!({
                    "amplitudes": amps,
                    "distribution": dist,
                    "payoff_a": pay.payoff_a,
                    "payoff_b": pay.payoff_b,
                })),
                _ => {
                    let mut s = String::from("state (basis CC, CD, DC, DD):\n");
                    for (label, (re, im)) in ["CC", "CD", "DC", "DD"].iter().zip(&amps) {
                        s.push_str(&format!("  {label}  {re:+.6} {im:+.6}i\n"));
                    }
                    s.push_str(&format!(
                        "probabilities  CC={:.6} CD={:.6} DC={:.6} DD={:.6}\n",
                        dist.p_cc, dist.p_cd, dist.p_dc, dist.p_dd
                    ));
                    s.push_str(&format!(
                        "payoffs        A={:.6} B={:.6}\n",
                        pay.payoff_a, pay.payoff_b
                    ));
                    s
                }
            };
            emit(&cli, output)
        }

        Command::Equilibria {
            a,
            b,
            c,
            d,
            gamma,
            tol,
        } => {
            #[allow(clippy::neg_cmp_op_on_partial_ord)]
            if !(*tol > 0.0) {
                return Err(Failure {
                    code: 2,
                    message: format!("--tol must be positive, got {tol}"),
                });
            }
            let payoff = PayoffMatrix::new(*a, *b, *c, *d).map_err(Failure::from)?;
            let gamma = Entanglement::new(*gamma).map_err(Failure::from)?;
            let certs = nash_scan(&payoff, gamma, &grid, *tol);
            let labels: Vec<String> = NAMED_STRATEGIES
                .iter()
                .flat_map(|(na, _)| {
                    NAMED_STRATEGIES
                        .iter()
                        .map(move |(nb, _)| format!("{na},{nb}"))
                })
                .collect();
            let output = match cli.format {
                Format::Json => pretty(&json!({
                    "gamma": gamma.gamma(),
                    "profiles": labels
                        .iter()
                        .zip(&certs)
                        .map(|(label, cert)| json!({
                            "profile": label,
                            "epsilon": cert.epsilon,
                            "nash": cert.certified,
                        }))
                        .collect::<Vec<_>>(),
                })),
                Format::Csv => {
                    let mut s = String::from("profile,epsilon,nash\n");
                    for (label, cert) in labels.iter().zip(&certs) {
                        s.push_str(&format!(
                            "\"{label}\",{},{}\n",
                            cert.epsilon, cert.certified
                        ));
                    }
                    s
                }
                Format::Text => {
                    let unit = if cli.degrees { "deg" } else { "rad" };
                    let mut s = format!(
                        "nash scan at gamma = {:.4} {unit}\n",
                        angle(gamma.gamma(), cli.degrees)
                    );
                    for (label, cert) in labels.iter().zip(&certs) {
                        s.push_str(&format!(
                            "  ({label})  epsilon = {:>12.6}  {}\n",
                            cert.epsilon,
                            if cert.certified { "nash" } else { "-" }
                        ));
                    }
                    s
                }
            };
            emit(&cli, output)
        }
    }
}

fn parse_grid(spec: &str) -> Result<StrategyGrid, Failure> {
    let bad = || Failure {
        code: 2,
        message: format!("--grid must look like 181x91, got '{spec}'"),
    };
    let (nt, np) = spec.split_once('x').ok_or_else(bad)?;
    let nt: usize = nt.trim().parse().map_err(|_| bad())?;
    let np: usize = np.trim().parse().map_err(|_| bad())?;
    StrategyGrid::new(nt, np).map_err(Failure::from)
}

fn load_dataset(spec: &str) -> Result<Vec<quantum_dilemma::dataset::GameRecord>, Failure> {
    if spec == "builtin" {
        return Ok(builtin_datasets());
    }
    let file = File::open(spec).map_err(|e| Failure {
        code: 4,
        message: format!("{spec}: {e}"),
    })?;
    read_csv(file).map_err(Failure::from)
}

fn emit(cli: &Cli, output: String) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => std::fs::write(path, output).map_err(|e| Failure {
            code: 4,
            message: format!("{}: {e}", path.display()),
        }),
        None => {
            print!("{output}");
            Ok(())
        }
    }
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON serialization cannot fail");
    s.push('\n');
    s
}

fn angle(radians: f64, degrees: bool) -> f64 {
    if degrees {
        radians.to_degrees()
    } else {
        radians
    }
}

fn round3(x: f64) -> f64 {
    (x * 1000.0).round() / 1000.0
}

fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}
