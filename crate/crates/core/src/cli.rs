//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on a mathematical failure or unsupported
//! input, 2 on usage or parse errors. Wherever a model file is expected the
//! built-in names `heisenberg`, `torus:N`, `paper:x7` and `paper:x8` also
//! work.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand};

use crate::algebra::{Dga, Element};
use crate::cohomology::Cohomology;
use crate::massey::{self, MasseyError, ScanLimits};
use crate::minimal::{self, MinimalModelError};
use crate::model_io::{self, render, ModelError};
use crate::scenarios;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "cdga",
    version,
    about = "Exact cohomology and Massey products of CDGA models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a model and check d^2 = 0.
    Check { model: String },
    /// Print the Betti numbers.
    Betti {
        model: String,
        /// Highest degree, required for models with even generators.
        #[arg(long)]
        up_to: Option<usize>,
    },
    /// Print cocycle representatives of a cohomology basis.
    Cohomology {
        model: String,
        #[arg(long)]
        degree: usize,
    },
    /// Compute the triple Massey product <[a],[b],[c]>.
    Massey {
        model: String,
        a: String,
        b: String,
        c: String,
        /// Class of complementary degree to pair against.
        #[arg(long)]
        dual: Option<String>,
    },
    /// Verify the non-formality certificate on N x T^4 or N x T^5.
    VerifyPaper {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(["7", "8"]))]
        dim: String,
        #[arg(long)]
        json: bool,
    },
    /// List all nonvanishing triple Massey products of basis classes.
    Scan {
        model: String,
        /// Degrees as p,q,r.
        #[arg(long, value_parser = parse_degrees)]
        degrees: (usize, usize, usize),
        /// Visit at most this many basis classes per degree.
        #[arg(long)]
        max_classes: Option<usize>,
    },
    /// Build the minimal model through a degree.
    Minimal {
        model: String,
        #[arg(long)]
        up_to: usize,
    },
}

fn parse_degrees(s: &str) -> Result<(usize, usize, usize), String> {
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    match parts[..] {
        [p, q, r] => Ok((p, q, r)),
        _ => Err(format!("expected p,q,r, got `{s}`")),
    }
}

/// An error message paired with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }

    fn math(message: impl ToString) -> Self {
        Self {
            code: EXIT_FAILURE,
            message: message.to_string(),
        }
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Syntax { .. }
            | ModelError::UnknownGenerator { .. }
            | ModelError::OddPower { .. } => Failure::usage(e),
            _ => Failure::math(e),
        }
    }
}

fn load_model(spec: &str) -> Result<Dga, Failure> {
    match spec {
        "heisenberg" => return Ok(scenarios::heisenberg_model()),
        "paper:x7" | "paper:x8" => {
            let dim = if spec.ends_with('7') { 7 } else { 8 };
            return Ok(scenarios::paper_x(dim).map_err(Failure::math)?.dga);
        }
        _ => {}
    }
    if let Some(n) = spec.strip_prefix("torus:") {
        let n: usize = n
            .parse()
            .map_err(|_| Failure::usage(format!("bad torus size `{n}`")))?;
        return scenarios::torus_model(n).map_err(Failure::usage);
    }
    let text = std::fs::read_to_string(Path::new(spec))
        .map_err(|e| Failure::usage(format!("{spec}: {e}")))?;
    model_io::parse_model(&text).map_err(|e| {
        let sep = if e.line().is_some() { ":" } else { ": " };
        let mut f = Failure::from(e);
        f.message = format!("{spec}{sep}{}", f.message);
        f
    })
}

fn cohomology_of(dga: &Dga, up_to: Option<usize>) -> Result<Cohomology, Failure> {
    match up_to {
        Some(k) => Ok(Cohomology::up_to(dga, k)),
        None => Cohomology::new(dga).map_err(Failure::math),
    }
}

fn parse_expr(dga: &Dga, expr: &str) -> Result<Element, Failure> {
    model_io::parse_element(dga, expr).map_err(|e| Failure::usage(format!("`{expr}`: {e}")))
}

fn massey_failure(e: MasseyError) -> Failure {
    Failure::math(e)
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::math(e);
    match command {
        Command::Check { model } => {
            let dga = load_model(&model)?;
            writeln!(
                out,
                "ok: d²=0, {} generators",
                dga.algebra().num_generators()
            )
            .map_err(io)?;
        }
        Command::Betti { model, up_to } => {
            let dga = load_model(&model)?;
            let h = cohomology_of(&dga, up_to)?;
            let betti = h.betti().map_err(Failure::math)?;
            let line: Vec<String> = betti.iter().map(usize::to_string).collect();
            writeln!(out, "{}", line.join(" ")).map_err(io)?;
        }
        Command::Cohomology { model, degree } => {
            let dga = load_model(&model)?;
            let h = Cohomology::up_to(&dga, degree);
            let basis = h.basis(degree).map_err(Failure::math)?;
            let reps: Vec<String> = basis.representatives().iter().map(render).collect();
            writeln!(out, "{}", reps.join(", ")).map_err(io)?;
        }
        Command::Massey {
            model,
            a,
            b,
            c,
            dual,
        } => {
            let dga = load_model(&model)?;
            let (a, b, c) = (
                parse_expr(&dga, &a)?,
                parse_expr(&dga, &b)?,
                parse_expr(&dga, &c)?,
            );
            let dual = dual.map(|d| parse_expr(&dga, &d)).transpose()?;
            let h = cohomology_of(&dga, None)?;
            let res = massey::triple_massey(&h, &a, &b, &c).map_err(massey_failure)?;
            writeln!(
                out,
                "representative {}; indeterminacy dim {}; {}",
                render(&res.representative),
                res.indeterminacy.dim(),
                if res.vanishes { "VANISHES" } else { "NONZERO" }
            )
            .map_err(io)?;
            if let Some(dual) = dual {
                let cert = massey::certify_nonvanishing(&h, &res, &dual).map_err(massey_failure)?;
                let verdict = if cert.certified {
                    "certified nonzero mod indeterminacy"
                } else {
                    "not certified"
                };
                writeln!(out, "pairing {}; {verdict}", cert.pairing).map_err(io)?;
            }
        }
        Command::VerifyPaper { dim, json } => {
            let dim: usize = dim.parse().map_err(Failure::usage)?;
            let report = scenarios::verify_paper(dim).map_err(Failure::math)?;
            if json {
                let doc = serde_json::to_string_pretty(&report.to_json()).map_err(Failure::math)?;
                writeln!(out, "{doc}").map_err(io)?;
            } else {
                write!(out, "{}", report.render_text()).map_err(io)?;
            }
            if !report.pass {
                return Err(Failure::math("verification failed"));
            }
        }
        Command::Scan {
            model,
            degrees,
            max_classes,
        } => {
            let dga = load_model(&model)?;
            let h = cohomology_of(&dga, None)?;
            let found = massey::scan_triple_massey(&h, degrees, ScanLimits { max_classes })
                .map_err(massey_failure)?;
            if found.is_empty() {
                writeln!(out, "no nonvanishing products").map_err(io)?;
            }
            for res in &found {
                writeln!(
                    out,
                    "<[{}], [{}], [{}]> = [{}]",
                    render(&res.a),
                    render(&res.b),
                    render(&res.c),
                    render(&res.representative)
                )
                .map_err(io)?;
            }
        }
        Command::Minimal { model, up_to } => {
            let dga = load_model(&model)?;
            let res = minimal::minimal_model(&dga, up_to).map_err(|e| match e {
                MinimalModelError::NotConnected(_) | MinimalModelError::NotSimplyConnected(_) => {
                    Failure::math(format!("unsupported input: {e}"))
                }
                other => Failure::math(other),
            })?;
            if res.already_minimal {
                writeln!(out, "input already minimal").map_err(io)?;
            } else {
                let alg = res.model.algebra();
                let max = alg.generators().iter().map(|g| g.degree).max().unwrap_or(0);
                for k in 1..=max {
                    let names: Vec<&str> = alg
                        .generators()
                        .iter()
                        .filter(|g| g.degree == k)
                        .map(|g| g.name.as_str())
                        .collect();
                    if !names.is_empty() {
                        writeln!(out, "degree {k}: {}", names.join(" ")).map_err(io)?;
                    }
                }
                for (i, d) in res.model.differential_values().iter().enumerate() {
                    if !d.is_zero() {
                        writeln!(out, "d {} = {}", alg.name(i), render(d)).map_err(io)?;
                    }
                }
            }
            let ok = minimal::check_quasi_iso(&res);
            writeln!(
                out,
                "quasi-isomorphism through degree {up_to}: {}",
                if ok { "yes" } else { "no" }
            )
            .map_err(io)?;
            if !ok {
                return Err(Failure::math("morphism is not a quasi-isomorphism"));
            }
        }
    }
    Ok(())
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
