//! `matfield`: run finite-field recognition and spread-set analyses on JSON
//! inputs and print JSON certificates.
//!
//! Exit codes: 0 when the verdict holds (or the command has no verdict),
//! 1 when it does not, 2 on malformed input, 3 when a size guard refuses.

mod report;

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use matfield::format::{parse_dopoly, parse_elem, parse_matrix_list};
use matfield::oracle;
use matfield::twisted::{verify_conjugation_identities, verify_twisted_structure};
use matfield::{
    compute_generator, decide_x2, finite_field_decide, quot_set, quot_upper_bound, rcf_multiset,
    DOPoly, Error,
};

#[derive(Parser)]
#[command(name = "matfield", version, about)]
struct Cli {
    /// Cap on worker threads used by parallel enumerations.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Input JSON file, or `-` for standard input.
    input: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a matrix list generates a finite field.
    FfDecide {
        #[command(flatten)]
        input: Input,
        #[arg(long, hide = true)]
        oracle: bool,
    },
    /// Combine two matrices into a single generator.
    Gen {
        #[command(flatten)]
        input: Input,
    },
    /// Decide planarity of a DO polynomial.
    Planar {
        #[command(flatten)]
        input: Input,
        /// Cross-check by exhaustive evaluation.
        #[arg(long, hide = true)]
        oracle: bool,
    },
    /// Print the derivative matrices for the basis directions.
    Spread {
        #[command(flatten)]
        input: Input,
    },
    /// Enumerate the quotient set of the spread set.
    Quot {
        #[command(flatten)]
        input: Input,
        /// Include every element in the output.
        #[arg(long)]
        elements: bool,
        /// Largest quotient set printed with `--elements`.
        #[arg(long, default_value_t = 100_000)]
        max_elements: usize,
        #[arg(long, hide = true)]
        oracle: bool,
    },
    /// Digest of the similarity-class multiset of the quotient set.
    Invariant {
        #[command(flatten)]
        input: Input,
        /// Include the sorted class list.
        #[arg(long)]
        full: bool,
    },
    /// Decide linear equivalence to x^2.
    X2Equiv {
        #[command(flatten)]
        input: Input,
    },
    /// Check the field structure and conjugation identities for x^(p^k+1).
    TwistedCheck {
        #[command(flatten)]
        input: Input,
        /// Direction alpha as comma-separated coordinates.
        #[arg(long)]
        alpha: String,
        /// Direction beta as comma-separated coordinates.
        #[arg(long)]
        beta: String,
        /// Frobenius exponent k; inferred when the input is a monomial.
        #[arg(long)]
        k: Option<usize>,
        /// Scaling element for the self-equivalence identity; defaults to 1.
        #[arg(long)]
        gamma: Option<String>,
    },
}

struct Outcome {
    report: Value,
    verdict: bool,
}

fn read_input(input: &Input) -> io::Result<String> {
    if input.input.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(&input.input)
    }
}

fn load_dopoly(input: &Input) -> Result<DOPoly, Failure> {
    Ok(parse_dopoly(&read_input(input)?)?)
}

enum Failure {
    Io(io::Error),
    Lib(Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::Lib(e)
    }
}

fn monomial_exponent(g: &DOPoly) -> Option<usize> {
    let mut terms = g.terms().keys();
    let &(i, j) = terms.next()?;
    terms.next().is_none().then_some(j - i)
}

fn run(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::FfDecide { input, oracle } => {
            let s = parse_matrix_list(&read_input(input)?)?;
            let d = finite_field_decide(&s)?;
            let mut report = report::field_decision(&d);
            if *oracle {
                let o = oracle::brute_force_field_check(&s)?;
                let agrees = o.is_field() == d.is_field() && o.degree() == d.degree();
                report["oracle"] = json!({"field": o.is_field(), "degree": o.degree(), "agrees": agrees});
            }
            Ok(Outcome {
                verdict: d.is_field(),
                report,
            })
        }
        Command::Gen { input } => {
            let s = parse_matrix_list(&read_input(input)?)?;
            let [a, b] = s.as_slice() else {
                return Err(Error::Parse(format!("expected exactly 2 matrices, got {}", s.len())).into());
            };
            Ok(match compute_generator(a, b)? {
                Some(c) => Outcome {
                    report: json!({"generator": report::matrix(&c)}),
                    verdict: true,
                },
                None => Outcome {
                    report: json!({"generator": "no_generator"}),
                    verdict: false,
                },
            })
        }
        Command::Planar { input, oracle } => {
            let g = load_dopoly(input)?;
            let planar = g.is_planar()?;
            let mut report = json!({"planar": planar});
            if *oracle {
                let o = oracle::exhaustive_planarity(&g)?;
                report["oracle"] = json!({"planar": o, "agrees": o == planar});
            }
            Ok(Outcome {
                report,
                verdict: planar,
            })
        }
        Command::Spread { input } => {
            let g = load_dopoly(input)?;
            let sb = g.spread_basis();
            let ctx = g.ctx();
            Ok(Outcome {
                report: report::matrix_list(ctx.p(), ctx.n(), sb.mats()),
                verdict: true,
            })
        }
        Command::Quot {
            input,
            elements,
            max_elements,
            oracle,
        } => {
            let g = load_dopoly(input)?;
            let ctx = g.ctx();
            let q = quot_set(&g)?;
            if *elements && q.len() > *max_elements {
                return Err(Error::SizeGuard {
                    size: q.len() as u128,
                    limit: *max_elements as u128,
                }
                .into());
            }
            let lower = u128::from(ctx.p().value()).pow(ctx.n() as u32);
            let upper = quot_upper_bound(ctx.p(), ctx.n())?;
            let mut report = report::quot(&q, lower, upper, *elements);
            if *oracle {
                let o = oracle::exhaustive_quot(&g)?;
                report["oracle"] = json!({"size": o.len(), "agrees": o == q});
            }
            Ok(Outcome {
                report,
                verdict: true,
            })
        }
        Command::Invariant { input, full } => {
            let g = load_dopoly(input)?;
            let ms = rcf_multiset(&quot_set(&g)?);
            Ok(Outcome {
                report: report::invariant(&ms, *full),
                verdict: true,
            })
        }
        Command::X2Equiv { input } => {
            let g = load_dopoly(input)?;
            let c = decide_x2(&g)?;
            Ok(Outcome {
                report: report::x2(&c),
                verdict: c.verdict(),
            })
        }
        Command::TwistedCheck {
            input,
            alpha,
            beta,
            k,
            gamma,
        } => {
            let g = load_dopoly(input)?;
            let ctx = g.ctx();
            let alpha = parse_elem(ctx, alpha)?;
            let beta = parse_elem(ctx, beta)?;
            let gamma = match gamma {
                Some(s) => parse_elem(ctx, s)?,
                None => ctx.one(),
            };
            let k = match k.or_else(|| monomial_exponent(&g)) {
                Some(k) => k,
                None => {
                    return Err(Error::InvalidInput(
                        "--k is required when the input is not a monomial".into(),
                    )
                    .into())
                }
            };
            let structure = verify_twisted_structure(&g, &alpha, &beta)?;
            let identities = verify_conjugation_identities(ctx, k, &alpha, &beta, &gamma)?;
            let verdict = structure.passed() && identities.passed();
            Ok(Outcome {
                report: json!({
                    "k": k,
                    "passed": verdict,
                    "structure": report::twisted(&structure),
                    "identities": report::conjugation(&identities),
                }),
                verdict,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("matfield: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli.command) {
        Ok(outcome) => {
            let text = serde_json::to_string_pretty(&outcome.report).expect("reports serialize");
            let mut out = io::stdout().lock();
            if writeln!(out, "{text}").is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(if outcome.verdict { 0 } else { 1 })
        }
        Err(Failure::Lib(e @ Error::SizeGuard { .. })) => {
            eprintln!("matfield: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("matfield: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("matfield: {e}");
            ExitCode::from(2)
        }
    }
}
