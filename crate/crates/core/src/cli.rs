//! The `threelie` command-line frontend.
//!
//! Exit codes: 0 when every check passes or the computation succeeds, 1 when a
//! mathematical check fails (the report lists witnesses), 2 on unreadable,
//! malformed or oversized input.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::ThreeLieAlgebra;
use crate::cohomology::{CohomologyGroup, ETComplex, TCochain};
use crate::deformation::{check_equivalence, infinitesimals_cohomologous, DeformationSeries, Extension};
use crate::embedding::EmbeddingTensor;
use crate::error::{Error, Result};
use crate::graded::{Cochain, VData, DEFAULT_CAP};
use crate::io::InputFile;
use crate::linalg::Matrix;
use crate::report::Report;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "threelie", version, about = "Exact checks for 3-Lie algebras, embedding tensors and their deformations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Largest dense cochain size any step may build.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: u128,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the fundamental identity of the bracket.
    VerifyAlgebra { input: PathBuf },
    /// Check that rho is a representation of the algebra.
    VerifyRep { input: PathBuf },
    /// Check the embedding-tensor identity for T.
    CheckEt { input: PathBuf },
    /// Compute the Maurer-Cartan defect (1/6){T,T,T}.
    McCheck { input: PathBuf },
    /// Compute Z^k, B^k and H^k of the embedding tensor.
    Cohomology {
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Check that taus is an order-n deformation of T.
    DeformCheck {
        input: PathBuf,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Extend an order-n deformation to order n+1 or report the obstruction.
    DeformExtend {
        input: PathBuf,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Check that (X, phis, psis) carries taus to taus_tilde.
    EquivalenceCheck {
        input: PathBuf,
        #[arg(long)]
        order: Option<usize>,
    },
}

/// A finished job: exit code and the text for standard output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Rendered {
    code: i32,
    json: Value,
    table: String,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("values serialize")
}

fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers.to_vec());
    out += &line(widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(|s| s.as_str()).collect());
    for r in rows {
        out += &line(r.iter().map(|s| s.as_str()).collect());
    }
    out
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn report_table(report: &Report) -> String {
    let rows: Vec<Vec<String>> = report
        .witnesses
        .iter()
        .map(|w| vec![w.axiom.clone(), join(&w.indices), join(&w.residual)])
        .collect();
    format!(
        "status: {}\n{}",
        report.status(),
        table(&["axiom", "indices", "residual"], &rows)
    )
}

fn cochain_table(c: &Cochain) -> String {
    let rows: Vec<Vec<String>> = c
        .entries()
        .map(|(k, x)| vec![join(k), x.to_string()])
        .collect();
    format!("degree {} {} cochain\n{}", c.degree(), c.space().tag(), table(&["index", "value"], &rows))
}

fn matrix_table(m: &Matrix) -> String {
    let rows: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    let headers: Vec<String> = (0..m.cols()).map(|j| j.to_string()).collect();
    table(&headers.iter().map(|s| s.as_str()).collect::<Vec<_>>(), &rows)
}

fn report_output(report: Report, extra: &[(&str, Value)]) -> Rendered {
    let mut json = to_value(&report);
    let mut text = String::new();
    for (k, v) in extra {
        json[*k] = v.clone();
        text += &format!("{k}: {v}\n");
    }
    Rendered {
        code: if report.passed() { 0 } else { 1 },
        table: text + &report_table(&report),
        json,
    }
}

fn verified_algebra(f: &InputFile) -> Result<ThreeLieAlgebra> {
    f.algebra()?.verify()
}

fn verified_tensor(f: &InputFile) -> Result<EmbeddingTensor> {
    let g = verified_algebra(f)?;
    let rho = f.representation(&g)?.verify(&g)?;
    EmbeddingTensor::new(g, rho, f.tensor_map()?)?.verify()
}

fn verified_series(f: &InputFile, order: Option<usize>, cap: u128) -> Result<DeformationSeries> {
    let e = verified_tensor(f)?;
    f.series(&e, order)?.with_cap(cap).verify()
}

fn cohomology_output(h: &CohomologyGroup) -> Rendered {
    let mut text = table(
        &["k", "dim_Z", "dim_B", "dim_H"],
        &[vec![h.k.to_string(), h.dim_z.to_string(), h.dim_b.to_string(), h.dim_h.to_string()]],
    );
    for (i, r) in h.representatives.iter().enumerate() {
        text += &format!("\nrepresentative {i}\n");
        text += &match r {
            TCochain::Wedge { wedge } => format!("wedge: {}\n", join(wedge)),
            TCochain::Map(c) => cochain_table(c),
        };
    }
    Rendered {
        code: 0,
        json: to_value(h),
        table: text,
    }
}

fn execute(cli: &Cli) -> Result<Rendered> {
    let cap = cli.cap;
    match &cli.command {
        Command::VerifyAlgebra { input } => {
            let f = InputFile::load(input)?;
            Ok(report_output(f.algebra()?.check_fundamental_identity(), &[]))
        }
        Command::VerifyRep { input } => {
            let f = InputFile::load(input)?;
            let g = verified_algebra(&f)?;
            Ok(report_output(f.representation(&g)?.check(&g), &[]))
        }
        Command::CheckEt { input } => {
            let f = InputFile::load(input)?;
            let g = verified_algebra(&f)?;
            let rho = f.representation(&g)?.verify(&g)?;
            let e = EmbeddingTensor::new(g, rho, f.tensor_map()?)?;
            Ok(report_output(e.check(), &[]))
        }
        Command::McCheck { input } => {
            let f = InputFile::load(input)?;
            let g = verified_algebra(&f)?;
            let rho = f.representation(&g)?.verify(&g)?;
            let t = f.tensor_map()?;
            EmbeddingTensor::new(g.clone(), rho.clone(), t.clone())?;
            let defect = VData::new(&g, &rho)?.with_cap(cap).mc_defect(&t)?;
            let status = if defect.is_zero() { "pass" } else { "fail" };
            Ok(Rendered {
                code: if defect.is_zero() { 0 } else { 1 },
                table: format!("status: {status}\n{}", cochain_table(&defect)),
                json: json!({ "status": status, "mc_defect": to_value(&defect) }),
            })
        }
        Command::Cohomology { input, degree } => {
            let f = InputFile::load(input)?;
            let e = verified_tensor(&f)?;
            let h = ETComplex::new(&e)?.with_cap(cap).cohomology(*degree)?;
            Ok(cohomology_output(&h))
        }
        Command::DeformCheck { input, order } => {
            let f = InputFile::load(input)?;
            let e = verified_tensor(&f)?;
            let d = f.series(&e, *order)?.with_cap(cap);
            Ok(report_output(d.check_order_n(), &[("order", json!(d.order()))]))
        }
        Command::DeformExtend { input, order } => {
            let f = InputFile::load(input)?;
            let d = verified_series(&f, *order, cap)?;
            Ok(match d.extend()? {
                Extension::Extended { tau_next, .. } => Rendered {
                    code: 0,
                    table: format!("status: extended\norder: {}\ntau_next\n{}", d.order() + 1, matrix_table(&tau_next)),
                    json: json!({ "status": "extended", "order": d.order() + 1, "tau_next": to_value(&tau_next) }),
                },
                Extension::Obstructed { obstruction } => Rendered {
                    code: 1,
                    table: format!("status: obstructed\norder: {}\n{}", d.order(), cochain_table(&obstruction)),
                    json: json!({ "status": "obstructed", "order": d.order(), "obstruction": to_value(&obstruction) }),
                },
            })
        }
        Command::EquivalenceCheck { input, order } => {
            let f = InputFile::load(input)?;
            let d = verified_series(&f, *order, cap)?;
            let e = d.tensor().clone();
            let d2 = f.series_tilde(&e, *order)?.with_cap(cap).verify()?;
            let eq = f.equivalence(&e, d.order())?;
            let report = check_equivalence(&d, &d2, &eq)?;
            let mut extra = vec![("order", json!(d.order()))];
            if d.order() >= 1 {
                let same = infinitesimals_cohomologous(&d, &d2)?.is_some();
                extra.push(("cohomologous_infinitesimals", json!(same)));
            }
            Ok(report_output(report, &extra))
        }
    }
}

fn failure(err: Error) -> Rendered {
    match err {
        Error::Rejected { reason, report } => {
            let mut out = report_output(report, &[("reason", json!(reason))]);
            out.code = 1;
            out
        }
        other => {
            let message = other.to_string();
            Rendered {
                code: 2,
                table: format!("status: error\n{message}\n"),
                json: json!({ "status": "error", "message": message }),
            }
        }
    }
}

/// Runs one parsed job.
pub fn run(cli: &Cli) -> Outcome {
    let r = execute(cli).unwrap_or_else(failure);
    let stdout = match cli.format {
        Format::Json => serde_json::to_string_pretty(&r.json).expect("values serialize") + "\n",
        Format::Table => r.table,
    };
    Outcome {
        code: r.code,
        stdout,
        stderr: String::new(),
    }
}

/// Parses `args` (including the program name) and runs the job. Usage errors
/// exit with code 2.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            }
        }
    }
}
