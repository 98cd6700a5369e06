//! Command-line frontend: ingestion, summation, remainder bounds,
//! certification, scanning, recheck, and oracle checks, with JSON/CSV/text
//! reports.
//!
//! Exit codes: 0 success or certificate; 1 rejection (margin <= 0);
//! 2 usage or validation error; 3 internal inconsistency (recheck failure,
//! oracle violation).

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crossover_core::certifier::{
    certify, certify_rechecked, high_precision_recheck, ErrorBudgets, Verdict,
    DEFAULT_MACHINE_BUDGET,
};
use crossover_core::error::Error;
use crossover_core::explicit_sum::{evaluate_H, weyl_diagnostic, zero_accuracy_bound};
use crossover_core::oracle::{
    self, identity_gap, j_of_x, panaitopol_check, rs_bound_check, SievePi,
};
use crossover_core::remainder::{check_conditions, compute_remainder, LehmanParams, Mode};
use crossover_core::report::CertifyReport;
use crossover_core::scan::{heuristic_params, refine, scan_omega};
use crossover_core::zero_table::ZeroTable;

#[derive(Parser)]
#[command(name = "crossover", version, about = "Certified pi(x) > li(x) crossover intervals from tabulated Riemann zeros")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct TableArgs {
    /// Text table of ordinates ('-' for stdin); mutually exclusive with --cache.
    #[arg(long)]
    zeros: Option<String>,
    /// Binary cache produced by `ingest`; mutually exclusive with --zeros.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Per-ordinate absolute accuracy for text input.
    #[arg(long, default_value_t = 1e-8)]
    epsilon: f64,
}

impl TableArgs {
    fn load(&self) -> Result<ZeroTable, Error> {
        match (&self.zeros, &self.cache) {
            (Some(_), Some(_)) => Err(Error::Argument(
                "--zeros and --cache are mutually exclusive".into(),
            )),
            (None, None) => Err(Error::Argument(
                "one of --zeros or --cache is required".into(),
            )),
            (Some(path), None) => {
                if path == "-" {
                    let stdin = std::io::stdin();
                    ZeroTable::parse(stdin.lock(), self.epsilon)
                } else {
                    ZeroTable::parse(BufReader::new(File::open(path)?), self.epsilon)
                }
            }
            (None, Some(path)) => ZeroTable::read_cache(BufReader::new(File::open(path)?)),
        }
    }
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long)]
    omega: f64,
    #[arg(long)]
    eta: f64,
    #[arg(long)]
    alpha: f64,
    /// Verified-RH height A.
    #[arg(long = "A")]
    a_height: f64,
    /// Truncation height T; defaults to min(gamma_max, A).
    #[arg(long = "T")]
    t_height: Option<f64>,
    #[arg(long, default_value = "refined")]
    mode: String,
}

impl ParamArgs {
    fn build(&self, table: &ZeroTable) -> Result<LehmanParams, Error> {
        let mode: Mode = self.mode.parse()?;
        let t_height = self
            .t_height
            .unwrap_or_else(|| table.gamma_max().min(self.a_height));
        LehmanParams::new(self.omega, self.eta, self.alpha, self.a_height, t_height, mode)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse a text zero table, validate it, and write the binary cache.
    Ingest {
        #[command(flatten)]
        table: TableArgs,
        /// Output cache path.
        #[arg(long, required = true)]
        out: PathBuf,
    },
    /// Evaluate H(T, alpha, omega) over a table.
    Sum {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        omega: f64,
        /// Truncation height; defaults to the table top.
        #[arg(long = "T")]
        t_height: Option<f64>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        output: OutputFormat,
    },
    /// Remainder terms and hypothesis checks for a parameter block.
    Remainder {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        output: OutputFormat,
    },
    /// Full certification: margin, certificate or rejection.
    Certify {
        #[command(flatten)]
        table: TableArgs,
        #[command(flatten)]
        params: ParamArgs,
        /// Zero-accuracy budget; defaults to the bound derived from epsilon.
        #[arg(long)]
        zero_accuracy: Option<f64>,
        /// Machine rounding budget.
        #[arg(long, default_value_t = DEFAULT_MACHINE_BUDGET)]
        machine: f64,
        /// Run the extended-precision recheck at this many digits before
        /// issuing the certificate.
        #[arg(long)]
        recheck: Option<usize>,
        /// Exclude timestamps for byte-identical reports.
        #[arg(long)]
        deterministic: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        output: OutputFormat,
    },
    /// Grid scan over omega with optional refinement rounds.
    Scan {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        omega_lo: f64,
        #[arg(long)]
        omega_hi: f64,
        #[arg(long)]
        step: f64,
        #[arg(long)]
        eta: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long = "A")]
        a_height: f64,
        #[arg(long, default_value = "refined")]
        mode: String,
        #[arg(long)]
        zero_accuracy: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_MACHINE_BUDGET)]
        machine: f64,
        /// Refinement rounds after the initial scan.
        #[arg(long, default_value_t = 0)]
        refine_rounds: usize,
        /// Window/step shrink factor per refinement round.
        #[arg(long, default_value_t = 0.1)]
        shrink: f64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        output: OutputFormat,
    },
    /// Extended-precision recheck of H, remainder terms, and margin.
    Recheck {
        #[command(flatten)]
        table: TableArgs,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 50)]
        digits: usize,
        #[arg(long)]
        zero_accuracy: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_MACHINE_BUDGET)]
        machine: f64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        output: OutputFormat,
    },
    /// Order-of-magnitude parameter suggestions for a table size.
    Suggest {
        #[arg(long)]
        n_zeros: u64,
        #[arg(long)]
        omega_hint: f64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        output: OutputFormat,
    },
    /// Equidistribution diagnostic histogram of {gamma omega mod 2 pi}.
    Weyl {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        omega: f64,
        #[arg(long, default_value_t = 100)]
        bins: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        output: OutputFormat,
    },
    /// Desk-scale ground-truth checks.
    Oracle {
        #[command(subcommand)]
        op: OracleOp,
    },
}

#[derive(Subcommand)]
enum OracleOp {
    /// Exact prime count pi(x) by segmented sieve.
    Pi {
        #[arg(long)]
        limit: u64,
        #[arg(long)]
        x: f64,
    },
    /// Logarithmic integral li(x), series/continued-fraction route.
    Li {
        #[arg(long)]
        x: f64,
    },
    /// Weighted prime count J(x).
    J {
        #[arg(long)]
        limit: u64,
        #[arg(long)]
        x: f64,
    },
    /// theta4 tail integral.
    Theta4 {
        #[arg(long)]
        x: f64,
    },
    /// Exhaustive Panaitopol inequality sweep.
    Panaitopol {
        #[arg(long)]
        limit: u64,
        #[arg(long)]
        lo: u64,
        #[arg(long)]
        hi: u64,
    },
    /// Exhaustive theta1/theta2 bound sweep.
    RsBounds {
        #[arg(long)]
        limit: u64,
        #[arg(long)]
        lo: u64,
        #[arg(long)]
        hi: u64,
    },
    /// Direct-quadrature vs zero-sum identity gap.
    IdentityGap {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        omega: f64,
        #[arg(long)]
        eta: f64,
        #[arg(long)]
        alpha: f64,
    },
    /// CSV samples of (u, F(u)) with F(u) = u e^{-u/2} (pi - li)(e^u).
    Fsamples {
        #[arg(long)]
        limit: u64,
        #[arg(long)]
        u_lo: f64,
        #[arg(long)]
        u_hi: f64,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

fn init_threads() {
    if let Ok(v) = std::env::var("LEHMAN_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Recheck(_) | Error::OracleViolation(_) => 3,
        _ => 2,
    }
}

fn emit_json<T: serde::Serialize>(value: &T) -> Result<(), Error> {
    let mut stdout = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut stdout, value)
        .map_err(|e| Error::Argument(format!("serialization failed: {e}")))?;
    writeln!(stdout)?;
    Ok(())
}

fn budgets_for(
    table: &ZeroTable,
    params: &LehmanParams,
    zero_accuracy: Option<f64>,
    machine: f64,
) -> Result<ErrorBudgets, Error> {
    let za = match zero_accuracy {
        Some(v) => v,
        None => zero_accuracy_bound(table, params.alpha, params.omega)?,
    };
    ErrorBudgets::new(za, machine)
}

fn run() -> Result<u8, Error> {
    let cli = Cli::parse();
    init_threads();
    match cli.command {
        Command::Ingest { table, out } => {
            let t = table.load()?;
            let mut sink = BufWriter::new(File::create(&out)?);
            t.write_cache(&mut sink)?;
            sink.flush()?;
            eprintln!(
                "ingested {} ordinates (gamma_max {:.6}, sum 1/gamma {:.9}) -> {}",
                t.count(),
                t.gamma_max(),
                t.reciprocal_sum(),
                out.display()
            );
            Ok(0)
        }
        Command::Sum {
            table,
            alpha,
            omega,
            t_height,
            output,
        } => {
            let t = table.load()?;
            let height = t_height.unwrap_or_else(|| t.gamma_max());
            let r = evaluate_H(&t, alpha, omega, height)?;
            match output {
                OutputFormat::Json => emit_json(&r)?,
                _ => println!(
                    "H = {:.15}  terms {}  zero-accuracy bound {:.3e}  largest term {:.3e}",
                    r.h_value, r.terms_used, r.zero_accuracy_bound, r.largest_term_magnitude
                ),
            }
            Ok(0)
        }
        Command::Remainder { params, output } => {
            // Remainder terms need no table; T is required explicitly here.
            let t_height = params.t_height.ok_or_else(|| {
                Error::Argument("--T is required for the remainder subcommand".into())
            })?;
            let mode: Mode = params.mode.parse()?;
            let p = LehmanParams::new(
                params.omega,
                params.eta,
                params.alpha,
                params.a_height,
                t_height,
                mode,
            )?;
            let breakdown = compute_remainder(&p)?;
            let conditions = check_conditions(&p);
            match output {
                OutputFormat::Json => {
                    emit_json(&serde_json::json!({
                        "terms": breakdown.terms().into_iter()
                            .map(|(k, v)| (k.to_string(), v))
                            .collect::<std::collections::BTreeMap<_, _>>(),
                        "total_bound": breakdown.total_bound,
                        "conditions": conditions.checks,
                        "mode": p.mode,
                    }))?;
                }
                _ => {
                    for (name, term) in breakdown.terms() {
                        match term.value {
                            Some(v) => println!("{name:>4} = {v:.6e}   (log10 {:.4})", term.log10),
                            None => println!("{name:>4} = underflow  (log10 {:.4})", term.log10),
                        }
                    }
                    println!("total = {:.6e}", breakdown.total_bound);
                    println!("{conditions}");
                }
            }
            Ok(0)
        }
        Command::Certify {
            table,
            params,
            zero_accuracy,
            machine,
            recheck,
            deterministic,
            output,
        } => {
            let t = table.load()?;
            let p = params.build(&t)?;
            let budgets = budgets_for(&t, &p, zero_accuracy, machine)?;
            let verdict = match recheck {
                Some(digits) => certify_rechecked(&t, &p, &budgets, digits)?,
                None => certify(&t, &p, &budgets)?,
            };
            let report = CertifyReport::from_verdict(&verdict, deterministic);
            match output {
                OutputFormat::Json => emit_json(&report)?,
                _ => print!("{}", report.render_text()),
            }
            Ok(match verdict {
                Verdict::Certified(_) => 0,
                Verdict::Rejected(_) => 1,
            })
        }
        Command::Scan {
            table,
            omega_lo,
            omega_hi,
            step,
            eta,
            alpha,
            a_height,
            mode,
            zero_accuracy,
            machine,
            refine_rounds,
            shrink,
            output,
        } => {
            let t = table.load()?;
            let mode: Mode = mode.parse()?;
            let za = match zero_accuracy {
                Some(v) => v,
                None => zero_accuracy_bound(&t, alpha, omega_hi)?,
            };
            let budgets = ErrorBudgets::new(za, machine)?;
            let mut report = scan_omega(
                &t,
                (omega_lo, omega_hi),
                step,
                eta,
                alpha,
                a_height,
                &budgets,
                mode,
            )?;
            for _ in 0..refine_rounds {
                match refine(&t, &report, shrink, &budgets, mode) {
                    Ok(next) => report = next,
                    Err(Error::WindowExhausted(_)) => break,
                    Err(e) => return Err(e),
                }
            }
            match output {
                OutputFormat::Json => emit_json(&report)?,
                OutputFormat::Csv => print!("{}", report.to_csv()),
                OutputFormat::Text => {
                    for e in &report.entries {
                        println!(
                            "omega {:.12}  margin {:?}  {:?}",
                            e.omega, e.margin, e.verdict
                        );
                    }
                    if let Some(best) = report.best_entry() {
                        println!("best: omega {:.12} margin {:?}", best.omega, best.margin);
                    }
                }
            }
            Ok(0)
        }
        Command::Recheck {
            table,
            params,
            digits,
            zero_accuracy,
            machine,
            output,
        } => {
            let t = table.load()?;
            let p = params.build(&t)?;
            let budgets = budgets_for(&t, &p, zero_accuracy, machine)?;
            let report = high_precision_recheck(&t, &p, &budgets, digits)?;
            match output {
                OutputFormat::Json => emit_json(&report)?,
                _ => {
                    for item in &report.items {
                        println!(
                            "[{}] {}: fast {:.10e} precise {:.10e}",
                            if item.pass { "ok" } else { "FAIL" },
                            item.name,
                            item.fast,
                            item.precise
                        );
                    }
                    println!("recheck: {}", if report.pass { "pass" } else { "FAIL" });
                }
            }
            if report.pass {
                Ok(0)
            } else {
                Err(Error::Recheck(
                    "extended-precision recheck disagreed with the fast path".into(),
                ))
            }
        }
        Command::Suggest {
            n_zeros,
            omega_hint,
            output,
        } => {
            let h = heuristic_params(n_zeros, omega_hint)?;
            match output {
                OutputFormat::Json => emit_json(&h)?,
                _ => {
                    println!(
                        "alpha {:.4e}  eta {:.4e}  A {:.4e}  T {:.4e}",
                        h.alpha, h.eta, h.a_height, h.t_height
                    );
                    for r in &h.rationale {
                        println!("  - {r}");
                    }
                }
            }
            Ok(0)
        }
        Command::Weyl {
            table,
            omega,
            bins,
            output,
        } => {
            let t = table.load()?;
            let h = weyl_diagnostic(&t, omega, bins)?;
            match output {
                OutputFormat::Json => emit_json(&h)?,
                _ => println!(
                    "bins {}  max relative deviation {:.4}",
                    h.bins.len(),
                    h.max_relative_deviation
                ),
            }
            Ok(0)
        }
        Command::Oracle { op } => run_oracle(op),
    }
}

fn run_oracle(op: OracleOp) -> Result<u8, Error> {
    match op {
        OracleOp::Pi { limit, x } => {
            let sieve = SievePi::new(limit)?;
            println!("{}", sieve.query(x)?);
            Ok(0)
        }
        OracleOp::Li { x } => {
            println!("{:.15}", oracle::li(x)?);
            Ok(0)
        }
        OracleOp::J { limit, x } => {
            let sieve = SievePi::new(limit)?;
            println!("{:.15}", j_of_x(&sieve, x)?);
            Ok(0)
        }
        OracleOp::Theta4 { x } => {
            println!("{:.15}", oracle::theta4(x)?);
            Ok(0)
        }
        OracleOp::Panaitopol { limit, lo, hi } => {
            let sieve = SievePi::new(limit)?;
            let r = panaitopol_check(&sieve, lo, hi)?;
            emit_json(&r)?;
            Ok(0)
        }
        OracleOp::RsBounds { limit, lo, hi } => {
            let sieve = SievePi::new(limit)?;
            let r = rs_bound_check(&sieve, lo, hi)?;
            emit_json(&r)?;
            Ok(0)
        }
        OracleOp::IdentityGap {
            table,
            omega,
            eta,
            alpha,
        } => {
            let t = table.load()?;
            let limit = (omega + eta).exp().ceil() as u64 + 1;
            let sieve = SievePi::new(limit)?;
            let gamma_max = t.gamma_max();
            let params = LehmanParams::new(omega, eta, alpha, gamma_max, gamma_max, Mode::Original)?;
            let gap = identity_gap(&t, &sieve, &params)?;
            emit_json(&gap)?;
            if gap.pass {
                Ok(0)
            } else {
                Err(Error::OracleViolation(format!(
                    "identity gap {} exceeds bound {}",
                    gap.gap, gap.bound
                )))
            }
        }
        OracleOp::Fsamples {
            limit,
            u_lo,
            u_hi,
            count,
        } => {
            let sieve = SievePi::new(limit)?;
            let samples = oracle::f_samples(&sieve, u_lo, u_hi, count)?;
            println!("u,f");
            for (u, f) in samples {
                println!("{u:.12e},{f:.12e}");
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
