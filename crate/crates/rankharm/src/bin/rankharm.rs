use clap::{Parser, Subcommand, ValueEnum};
use rankharm::element::Element;
use rankharm::heisenberg::{ext_to_quad, quad_to_ext, HeisExt, HeisQuad, HeisTilde};
use rankharm::suites::{oracle_report, run_suite, Report, Status};
use rankharm::value_group::{BreveElement, GammaElement};
use rankharm::Error;
use serde::de::DeserializeOwned;
use serde::Serialize;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "rankharm", version, about = "Exact harmonic analysis on the rank-two value group Z+Z")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a randomized or exhaustive verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        size: usize,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the local-field model against the discrete spaces.
    Oracle {
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long = "M", default_value_t = 3)]
        radius: i64,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fourier transform of a rank-two function or distribution.
    Fourier {
        /// Transform parameter as `[n, p]`.
        #[arg(long)]
        gamma: String,
        /// Expected base point of the input, as `[n, p]` or `[n, "-inf"]`.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a group element to a rank-two function or distribution.
    Act {
        #[arg(long, value_enum, default_value_t = Repr::Quad)]
        repr: Repr,
        /// The group element as JSON in the chosen representation.
        #[arg(long)]
        by: String,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pair a function with a distribution.
    Pair {
        #[arg(long = "in", num_args = 2, required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Group operations in the Heisenberg groups.
    Heis {
        #[arg(value_enum)]
        op: HeisOp,
        #[arg(long, value_enum, default_value_t = Repr::Quad)]
        repr: Repr,
        /// One or two group elements as JSON.
        #[arg(num_args = 1..=2, required = true)]
        elements: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Repr {
    Quad,
    Tilde,
    Ext,
}

#[derive(Clone, Copy, ValueEnum)]
enum HeisOp {
    Mul,
    Inv,
    Comm,
    Iso,
}

enum Failure {
    Usage(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Usage(format!("invalid {what}: {e}")))
}

fn read_input(path: Option<&PathBuf>) -> Result<String, Failure> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut text).map_err(|e| Failure::Usage(e.to_string()))?;
        }
    }
    Ok(text)
}

fn write_output(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, format!("{text}\n")).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn to_text<T: Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("serializable")
}

fn emit_report(report: &Report, json: bool, out: Option<&PathBuf>) -> Result<(), Failure> {
    let text = if json {
        serde_json::to_string_pretty(report).expect("serializable")
    } else {
        let mut lines = vec![format!("suite {}", report.suite)];
        for c in &report.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            lines.push(format!("{status} {} ({} cases)", c.name, c.cases));
            if let Some(w) = &c.witness {
                lines.push(format!("  witness: {w}"));
            }
        }
        lines.join("\n")
    };
    write_output(&text, out)?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn run_heis(op: HeisOp, repr: Repr, elements: &[String]) -> Result<String, Failure> {
    let need = |n: usize| {
        if elements.len() != n {
            Err(Failure::Usage(format!("this operation takes {n} element(s), got {}", elements.len())))
        } else {
            Ok(())
        }
    };
    match (op, repr) {
        (HeisOp::Iso, Repr::Quad) => {
            need(1)?;
            Ok(to_text(&quad_to_ext(&parse_json::<HeisQuad>(&elements[0], "quadruple")?)))
        }
        (HeisOp::Iso, Repr::Ext) => {
            need(1)?;
            Ok(to_text(&ext_to_quad(&parse_json::<HeisExt>(&elements[0], "extended element")?)?))
        }
        (HeisOp::Iso, Repr::Tilde) => {
            need(1)?;
            let x = parse_json::<HeisTilde>(&elements[0], "tilde element")?;
            Ok(to_text(&ext_to_quad(&HeisExt::new(x, 0))?))
        }
        (_, Repr::Quad) => {
            let xs = elements.iter().map(|e| parse_json::<HeisQuad>(e, "quadruple")).collect::<Result<Vec<_>, _>>()?;
            Ok(to_text(&match op {
                HeisOp::Mul => {
                    need(2)?;
                    xs[0].mul(&xs[1])
                }
                HeisOp::Comm => {
                    need(2)?;
                    xs[0].commutator(&xs[1])
                }
                _ => {
                    need(1)?;
                    xs[0].inverse()
                }
            }))
        }
        (_, Repr::Tilde) => {
            let xs = elements.iter().map(|e| parse_json::<HeisTilde>(e, "tilde element")).collect::<Result<Vec<_>, _>>()?;
            Ok(to_text(&match op {
                HeisOp::Mul => {
                    need(2)?;
                    xs[0].mul(&xs[1])?
                }
                HeisOp::Comm => {
                    need(2)?;
                    xs[0].commutator(&xs[1])?
                }
                _ => {
                    need(1)?;
                    xs[0].inverse()
                }
            }))
        }
        (_, Repr::Ext) => {
            let xs = elements.iter().map(|e| parse_json::<HeisExt>(e, "extended element")).collect::<Result<Vec<_>, _>>()?;
            Ok(to_text(&match op {
                HeisOp::Mul => {
                    need(2)?;
                    xs[0].mul(&xs[1])?
                }
                HeisOp::Comm => {
                    need(2)?;
                    xs[0].mul(&xs[1])?.mul(&xs[0].inverse())?.mul(&xs[1].inverse())?
                }
                _ => {
                    need(1)?;
                    xs[0].inverse()
                }
            }))
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify { suite, seed, size, json, out } => emit_report(&run_suite(&suite, seed, size)?, json, out.as_ref()),
        Command::Oracle { p, radius, suite, json, out } => emit_report(&oracle_report(p, radius, &suite)?, json, out.as_ref()),
        Command::Fourier { gamma, alpha, input, out } => {
            let gamma: GammaElement = parse_json(&gamma, "--gamma")?;
            let x = Element::parse(&read_input(input.as_ref())?)?;
            if let Some(a) = alpha {
                let a: BreveElement = parse_json(&a, "--alpha")?;
                if a != x.alpha() {
                    return Err(Error::BasePointMismatch(format!("--alpha {a} but input lives over {}", x.alpha())).into());
                }
            }
            write_output(&x.fourier(gamma)?.revalidated_json()?, out.as_ref())
        }
        Command::Act { repr, by, input, out } => {
            let x = Element::parse(&read_input(input.as_ref())?)?;
            let y = match repr {
                Repr::Quad => x.act_ext(&quad_to_ext(&parse_json(&by, "--by")?))?,
                Repr::Tilde => x.act_tilde(&parse_json(&by, "--by")?)?,
                Repr::Ext => x.act_ext(&parse_json(&by, "--by")?)?,
            };
            write_output(&y.revalidated_json()?, out.as_ref())
        }
        Command::Pair { inputs } => {
            let a = Element::parse(&read_input(Some(&inputs[0]))?)?;
            let b = Element::parse(&read_input(Some(&inputs[1]))?)?;
            write_output(&to_text(&a.pair(&b)?), None)
        }
        Command::Heis { op, repr, elements } => write_output(&run_heis(op, repr, &elements)?, None),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
