//! Command dispatch for the `wormcalc` binary.
//!
//! Exit codes: 0 success or a positive verdict, 1 a negative verdict or an
//! invalid proof, 2 malformed input, 3 an engine-side failure.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use wormcalc_core::ignatiev::axis_menu;
use wormcalc_core::rcnorm::{normalize, rc_entails};
use wormcalc_core::{check_proof, compare_worms, decide, Ordinal, RcFormula, TruncatedModel, Worm};

use crate::format::{model_to_dot, model_to_json, proof_from_json, proof_to_json, FormatError};
use crate::selftest;

#[derive(Parser, Debug)]
#[command(
    name = "wormcalc",
    version,
    about = "Worm calculus prover, decision procedure and model checker"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide A |- B; prints PROVABLE or NOT-PROVABLE.
    Decide { a: String, b: String },
    /// Print a checked proof of A |- B as JSON.
    Prove { a: String, b: String },
    /// Check a proof document (path, or `-` for standard input).
    CheckProof { file: String },
    /// Compare A and B in the order <_alpha; prints LT, EQV or GT.
    Compare { alpha: String, a: String, b: String },
    /// Print a worm equivalent to a closed formula.
    Normalize { phi: String },
    /// Decide phi |- psi for closed formulas.
    Entails { phi: String, psi: String },
    /// Print the hyper-logarithm l^xi(zeta).
    Hyperlog { xi: String, zeta: String },
    /// Truncated model utilities.
    Model {
        #[command(subcommand)]
        action: ModelCommand,
    },
    /// Print the main-axis point defined by a worm.
    Axis {
        a: String,
        /// Number of coordinates; defaults to one past the largest modality.
        #[arg(long = "N")]
        n: Option<usize>,
    },
    /// Run the exhaustive consistency suites.
    Selftest {
        #[arg(long = "max-len", default_value_t = 3)]
        max_len: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ModelCommand {
    /// Generate the truncation of width N over a menu of ordinals.
    Gen {
        #[arg(long = "N")]
        n: usize,
        /// Comma-separated ordinals, closed under end_log.
        #[arg(long)]
        menu: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Json,
    Dot,
}

enum Failure {
    Syntax(String),
    Engine(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Syntax(_) => 2,
            Failure::Engine(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Syntax(m) | Failure::Engine(m) => m,
        }
    }
}

fn syntax(what: &str, e: impl std::fmt::Display) -> Failure {
    Failure::Syntax(format!("{what}: {e}"))
}

fn worm(arg: &str) -> Result<Worm, Failure> {
    arg.parse().map_err(|e| syntax(&format!("worm `{arg}`"), e))
}

fn ordinal(arg: &str) -> Result<Ordinal, Failure> {
    arg.parse()
        .map_err(|e| syntax(&format!("ordinal `{arg}`"), e))
}

fn formula(arg: &str) -> Result<RcFormula, Failure> {
    arg.parse()
        .map_err(|e| syntax(&format!("formula `{arg}`"), e))
}

fn verdict(out: &mut dyn Write, provable: bool) -> std::io::Result<i32> {
    writeln!(
        out,
        "{}",
        if provable { "PROVABLE" } else { "NOT-PROVABLE" }
    )?;
    Ok(if provable { 0 } else { 1 })
}

/// Why `a |- b` fails, when the failure is an instance of irreflexivity.
fn refutation(a: &Worm, b: &Worm) -> String {
    if let Some(alpha) = b.first() {
        let c = b.tail();
        if decide(&c, a).is_provable() {
            return format!(
                "{a} |- {b} is not provable: with {c} |- {a} it would give {a} <_{alpha} {a}, \
                 but <_{alpha} is irreflexive"
            );
        }
    }
    format!("{a} |- {b} is not provable")
}

fn dispatch(
    command: Command,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let io = |e: std::io::Error| Failure::Engine(format!("output error: {e}"));
    match command {
        Command::Decide { a, b } => {
            let (a, b) = (worm(&a)?, worm(&b)?);
            verdict(out, decide(&a, &b).is_provable()).map_err(io)
        }
        Command::Prove { a, b } => {
            let (a, b) = (worm(&a)?, worm(&b)?);
            match decide(&a, &b).proof() {
                Some(p) => {
                    out.write_all(proof_to_json(p).as_bytes()).map_err(io)?;
                    Ok(0)
                }
                None => {
                    writeln!(err, "{}", refutation(&a, &b)).map_err(io)?;
                    Ok(1)
                }
            }
        }
        Command::CheckProof { file } => {
            let mut text = String::new();
            if file == "-" {
                stdin.read_to_string(&mut text).map(drop)
            } else {
                fs::read_to_string(&file).map(|t| text = t)
            }
            .map_err(|e| Failure::Syntax(format!("cannot read `{file}`: {e}")))?;
            let proof =
                proof_from_json(&text).map_err(|e: FormatError| Failure::Syntax(e.to_string()))?;
            match check_proof(&proof) {
                Ok(()) => {
                    writeln!(out, "VALID {}", proof.conclusion).map_err(io)?;
                    Ok(0)
                }
                Err(e) => {
                    writeln!(out, "INVALID").map_err(io)?;
                    writeln!(err, "{e}").map_err(io)?;
                    Ok(1)
                }
            }
        }
        Command::Compare { alpha, a, b } => {
            let (alpha, a, b) = (ordinal(&alpha)?, worm(&a)?, worm(&b)?);
            let c = compare_worms(&alpha, &a, &b).map_err(|_| {
                Failure::Syntax(format!("both worms must have all modalities >= {alpha}"))
            })?;
            writeln!(out, "{}", c.verdict()).map_err(io)?;
            Ok(0)
        }
        Command::Normalize { phi } => {
            writeln!(out, "{}", normalize(&formula(&phi)?)).map_err(io)?;
            Ok(0)
        }
        Command::Entails { phi, psi } => {
            let (phi, psi) = (formula(&phi)?, formula(&psi)?);
            verdict(out, rc_entails(&phi, &psi)).map_err(io)
        }
        Command::Hyperlog { xi, zeta } => {
            let (xi, zeta) = (ordinal(&xi)?, ordinal(&zeta)?);
            writeln!(out, "{}", Ordinal::hyper_log(&xi, &zeta)).map_err(io)?;
            Ok(0)
        }
        Command::Model {
            action: ModelCommand::Gen { n, menu, format },
        } => {
            let menu = menu
                .split(',')
                .map(|s| ordinal(s.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let model =
                TruncatedModel::generate(n, &menu).map_err(|e| Failure::Engine(e.to_string()))?;
            let text = match format {
                OutputFormat::Json => model_to_json(&model),
                OutputFormat::Dot => model_to_dot(&model),
            };
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(0)
        }
        Command::Axis { a, n } => {
            let a = worm(&a)?;
            if let Some(m) = a.modalities().iter().find(|m| m.as_nat().is_none()) {
                return Err(Failure::Engine(format!(
                    "modality {m} is not a natural number"
                )));
            }
            let top = a.modalities().iter().filter_map(Ordinal::as_nat).max();
            let width = n.unwrap_or(top.map_or(1, |k| k as usize + 1));
            if let Some(k) = top.filter(|&k| k as usize >= width) {
                return Err(Failure::Engine(format!(
                    "modality {k} is out of range for a truncation of width {width}"
                )));
            }
            let model = TruncatedModel::generate(width, &axis_menu([&a], width))
                .map_err(|e| Failure::Engine(e.to_string()))?;
            let x = model
                .main_axis_point(&a)
                .map_err(|e| Failure::Engine(e.to_string()))?;
            writeln!(out, "{}", model.point(x).display_width(width)).map_err(io)?;
            Ok(0)
        }
        Command::Selftest { max_len } => {
            let (report, pass) = selftest::run(max_len);
            out.write_all(report.as_bytes()).map_err(io)?;
            Ok(if pass { 0 } else { 1 })
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                2
            } else {
                let _ = write!(out, "{e}");
                0
            };
            return code;
        }
    };
    match dispatch(cli.command, stdin, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}
