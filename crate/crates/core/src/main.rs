use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Value};

use goldilocks::chambers::{self, CountRow, WeightVector};
use goldilocks::config::{Config, OutputFormat};
use goldilocks::enumerate::{Engine, EnumerationBudget, Genus};
use goldilocks::ltf::{self, Constraints};
use goldilocks::{classify, selftest, BooleanFunction, Error};

#[derive(Parser)]
#[command(
    name = "goldilocks",
    version,
    about = "Count chambers of admissible weights via Goldilocks threshold functions"
)]
struct Cli {
    /// Worker threads (default: $GOLDILOCKS_WORKERS or all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Output format.
    #[arg(long, global = true)]
    format: Option<OutputFormat>,
    /// Optional key = value configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count Semi-Goldilocks (positive genus) or Goldilocks (genus 0) functions.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        genus: Genus,
        #[arg(long, default_value = "sd")]
        engine: Engine,
        /// Also print the number of permutation orbits.
        #[arg(long)]
        orbits: bool,
    },
    /// Classify a truth table; prints a JSON report.
    Classify(TableArg),
    /// Find an exact realization under optional side constraints.
    Realize {
        #[command(flatten)]
        table: TableArg,
        #[arg(long)]
        positive: bool,
        #[arg(long)]
        small: bool,
        #[arg(long)]
        ample: bool,
    },
    /// Map weights to their chamber, or a function to a weight vector.
    Chamber {
        /// Comma-separated rationals, e.g. 3/4,3/4,3/4.
        #[arg(
            long,
            conflicts_with = "truth_table",
            required_unless_present = "truth_table"
        )]
        weights: Option<String>,
        #[arg(long)]
        truth_table: Option<String>,
        #[arg(long)]
        arity: Option<usize>,
        #[arg(long)]
        genus: Genus,
    },
    /// Print the chamber count tables for n = 1..max-n.
    Table {
        #[arg(long)]
        max_n: usize,
        /// 0, positive or both.
        #[arg(long, default_value = "both")]
        genus: String,
        #[arg(long, default_value = "sd")]
        engine: Engine,
    },
    /// Compare a brute-force threshold count with the chamber-count sum.
    IdentityCheck {
        #[arg(long)]
        n: usize,
        /// Use this value for the threshold count instead of brute force.
        #[arg(long)]
        lhs: Option<BigUint>,
    },
    /// Evaluate the asymptotic estimate and the ratios of known counts.
    Asymptotics {
        #[arg(long)]
        n: usize,
    },
    /// Run the exhaustive small-arity checks.
    Selftest {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
}

#[derive(Args)]
struct TableArg {
    /// Binary (bit k = f at code k) or 0x-prefixed hex.
    #[arg(long)]
    truth_table: String,
    /// Needed only when a short hex table is ambiguous.
    #[arg(long)]
    arity: Option<usize>,
}

impl TableArg {
    fn function(&self) -> Result<BooleanFunction, Error> {
        BooleanFunction::parse_with_arity(&self.truth_table, self.arity)
    }
}

/// Failure with an exit code: 1 usage or parse, 2 consistency, 3 budget.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match e {
            Error::EngineMismatch { .. } => (2, "engine_mismatch"),
            Error::Budget(_) => (3, "budget"),
            Error::Admissibility(_) => (1, "admissibility"),
            Error::Class(_) => (1, "class"),
            _ => (1, "input"),
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let json_errors = cli.format == Some(OutputFormat::Json);
    let result = configure(&cli).and_then(|config| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Failure {
                code: 1,
                kind: "input",
                message: e.to_string(),
            })?;
        pool.install(|| run(&cli.command, &config))
    });
    match result {
        Ok(output) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(output.text.as_bytes());
            let _ = out.flush();
            ExitCode::from(output.code)
        }
        Err(f) => {
            if json_errors {
                eprintln!("{}", json!({"error": f.kind, "message": f.message}));
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn configure(cli: &Cli) -> Result<Config, Failure> {
    let mut config = Config::from_env()?;
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).map_err(|e| Failure {
            code: 1,
            kind: "input",
            message: format!("{}: {e}", path.display()),
        })?;
        config = config.merge_str(&text)?;
    }
    if let Some(w) = cli.workers {
        config.workers = w;
    }
    if let Some(f) = cli.format {
        config.format = f;
    }
    config.validate()?;
    Ok(config)
}

struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }

    fn json(value: &Value) -> Self {
        Output::ok(format!("{value}\n"))
    }
}

fn run(command: &Command, config: &Config) -> Result<Output, Failure> {
    let budget = config.budget()?;
    match command {
        Command::Count {
            n,
            genus,
            engine,
            orbits,
        } => {
            let row = chambers::count_chambers_with(*n, *genus, *engine, &budget)?;
            Ok(match config.format {
                OutputFormat::Json => Output::json(&serde_json::to_value(row).expect("plain data")),
                _ if *orbits => Output::ok(format!("{} {}\n", row.count, row.orbit_count)),
                _ => Output::ok(format!("{}\n", row.count)),
            })
        }
        Command::Classify(table) => {
            let f = table.function()?;
            let report = classify::classify(&f);
            Ok(Output::json(
                &serde_json::to_value(report).expect("plain data"),
            ))
        }
        Command::Realize {
            table,
            positive,
            small,
            ample,
        } => {
            let f = table.function()?;
            let constraints = Constraints {
                positive: *positive,
                small: *small,
                ample: *ample,
            };
            let value = match ltf::find_realization(&f, constraints) {
                Ok(r) => json!({
                    "feasible": true,
                    "realization": r,
                    "positive": r.is_positive(),
                    "small": r.is_small(),
                    "ample": r.is_ample(),
                }),
                Err(inf) => json!({
                    "feasible": false,
                    "witness": inf.witness.map(|w| w.counts),
                    "farkas": inf.certificate.multipliers.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                }),
            };
            Ok(Output::json(&value))
        }
        Command::Chamber {
            weights,
            truth_table,
            arity,
            genus,
        } => {
            let value = if let Some(text) = weights {
                let w = WeightVector::parse(text, *genus)?;
                let f = chambers::phi_map(&w);
                json!({
                    "genus": genus,
                    "function": f,
                    "hex": f.to_hex(),
                    "on_wall": w.on_wall(),
                })
            } else {
                let text = truth_table.as_deref().expect("clap requires one input");
                let f = BooleanFunction::parse_with_arity(text, *arity)?;
                let w = chambers::chamber_representative(&f, *genus)?;
                json!({
                    "genus": genus,
                    "function": f,
                    "weights": w.weights().iter().map(ltf::fraction_string).collect::<Vec<_>>(),
                    "on_wall": w.on_wall(),
                })
            };
            Ok(Output::json(&value))
        }
        Command::Table {
            max_n,
            genus,
            engine,
        } => {
            let genera = match genus.trim().to_ascii_lowercase().as_str() {
                "both" => vec![Genus::Positive, Genus::Zero],
                other => vec![other.parse::<Genus>()?],
            };
            let rows = table_rows(*max_n, &genera, *engine, &budget)?;
            Ok(Output::ok(render_table(
                &rows,
                genera.len() > 1,
                config.format,
            )))
        }
        Command::IdentityCheck { n, lhs } => {
            let check = match lhs {
                Some(lhs) => chambers::ltf_identity_check_with_lhs(*n, lhs.clone())?,
                None => chambers::ltf_identity_check(*n)?,
            };
            let code = if check.ok { 0 } else { 2 };
            let text = match config.format {
                OutputFormat::Json => format!("{}\n", json!(check)),
                _ => format!(
                    "n = {}: {} {} {}\n",
                    check.n,
                    check.lhs,
                    if check.ok { "=" } else { "≠" },
                    check.rhs
                ),
            };
            Ok(Output { text, code })
        }
        Command::Asymptotics { n } => {
            let report = chambers::ratio_report(*n)?;
            let text = match config.format {
                OutputFormat::Json => format!("{}\n", json!(report)),
                _ => {
                    let (g, e) = report.approximations();
                    let show = |v: &Option<num_rational::BigRational>, a: Option<f64>| match v {
                        Some(v) => {
                            format!("{} ≈ {:.6}", ltf::fraction_string(v), a.unwrap_or(f64::NAN))
                        }
                        None => "unknown".to_string(),
                    };
                    format!(
                        "n = {}\nestimate: {}\nGold_0 / Gold_g+: {}\n2^n Gold_g+ / estimate: {}\n",
                        report.n,
                        report.estimate,
                        show(&report.genus_ratio, g),
                        show(&report.estimate_ratio, e),
                    )
                }
            };
            Ok(Output::ok(text))
        }
        Command::Selftest { max_n } => {
            let checks = selftest::run(*max_n);
            let passed = checks.iter().all(|c| c.passed);
            let text = match config.format {
                OutputFormat::Json => format!("{}\n", json!(checks)),
                _ => checks
                    .iter()
                    .map(|c| {
                        format!(
                            "{} {} ({})\n",
                            if c.passed { "PASS" } else { "FAIL" },
                            c.name,
                            c.detail
                        )
                    })
                    .collect(),
            };
            Ok(Output {
                text,
                code: if passed { 0 } else { 2 },
            })
        }
    }
}

fn table_rows(
    max_n: usize,
    genera: &[Genus],
    engine: Engine,
    budget: &EnumerationBudget,
) -> Result<Vec<CountRow>, Failure> {
    let mut rows = Vec::new();
    for &genus in genera {
        // Genus zero has no chambers below three points.
        let start = if genus == Genus::Zero { 3 } else { 1 };
        for n in start..=max_n {
            rows.push(chambers::count_chambers_with(n, genus, engine, budget)?);
        }
    }
    Ok(rows)
}

fn render_table(rows: &[CountRow], with_genus: bool, format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Csv => {
            out.push_str(if with_genus {
                "genus,n,count,count/S_n\n"
            } else {
                "n,count,count/S_n\n"
            });
            for r in rows {
                if with_genus {
                    out.push_str(&format!("{},", r.genus));
                }
                out.push_str(&format!("{},{},{}\n", r.n, r.count, r.orbit_count));
            }
        }
        OutputFormat::Json => {
            out.push_str(&serde_json::to_string(rows).expect("plain data"));
            out.push('\n');
        }
        OutputFormat::Md => {
            let mut current = None;
            for r in rows {
                if current != Some(r.genus) {
                    if current.is_some() {
                        out.push('\n');
                    }
                    if with_genus {
                        out.push_str(&format!("genus {}\n\n", r.genus));
                    }
                    out.push_str("| n | count | count/S_n |\n|---|---|---|\n");
                    current = Some(r.genus);
                }
                out.push_str(&format!("| {} | {} | {} |\n", r.n, r.count, r.orbit_count));
            }
        }
    }
    out
}
