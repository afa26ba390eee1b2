//! The `psdc` command-line tool.
//!
//! | exit | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | usage, I/O or parse error, or input the command does not accept |
//! | 2 | specification pattern is not chordal |
//! | 3 | a clique submatrix is not positive semidefinite |
//! | 4 | maximal-rank precondition violated |
//! | 5 | numerical verification failed |
//!
//! Data and reports go to stdout (or the given output files), diagnostics to stderr.

pub mod format;
pub mod report;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::chordal::{clique_tree, is_chordal, maximal_cliques, pattern_graph, Chordality};
use crate::completion::{
    complete, verify_det_maximality, verify_pinv_zero_pattern, PartialHermitianMatrix,
};
use crate::error::Error;
use crate::numeric::{hermitian_eig, relative_distance, TolerancePolicy, PINV_RTOL};
use crate::semidefinite::{banachiewicz_pinv, BlockPartition};
use format::{emit_hermitian, format_float, parse_phm};
use report::ReportDocument;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NOT_CHORDAL: i32 = 2;
pub const EXIT_CLIQUE_NOT_PSD: i32 = 3;
pub const EXIT_NOT_MAXIMAL_RANK: i32 = 4;
pub const EXIT_VERIFICATION: i32 = 5;

/// Random perturbations drawn by `complete --verify`.
const VERIFY_TRIALS: usize = 100;
/// Perturbation size for `complete --verify`, relative to the largest entry.
const VERIFY_MAGNITUDE: f64 = 1e-3;
const VERIFY_SEED: u64 = 0;

#[derive(Parser, Debug)]
#[command(
    name = "psdc",
    version,
    about = "Positive semidefinite completion of partial Hermitian matrices"
)]
struct Cli {
    /// Relative tolerance for numerical rank and PSD tests.
    #[arg(long, global = true, value_name = "FLOAT")]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Test the specification pattern for chordality; list cliques and the clique tree.
    Check { input: PathBuf },
    /// Complete a partial matrix and write the fully specified result.
    Complete {
        input: PathBuf,
        /// Output file, `-` for stdout.
        output: PathBuf,
        /// Also check the uniqueness properties and print a report.
        #[arg(long)]
        verify: bool,
        /// Write the report here instead of stdout (implies --verify).
        #[arg(long, value_name = "PATH")]
        report: Option<PathBuf>,
    },
    /// Generalized determinant and rank of a fully specified matrix.
    Gendet { input: PathBuf },
    /// Moore-Penrose inverse of a fully specified matrix.
    Pinv {
        input: PathBuf,
        /// Output file, `-` for stdout.
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Eig)]
        method: Method,
        /// Size of the leading block for the block formula.
        #[arg(long, value_name = "K")]
        split: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Eig,
    Banachiewicz,
}

/// A failed command: exit code plus the diagnostic for stderr.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(EXIT_INPUT, format!("I/O error: {e}"))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NotChordal { .. } => EXIT_NOT_CHORDAL,
            Error::CliqueNotPsd { .. } => EXIT_CLIQUE_NOT_PSD,
            Error::NotMaximalRank { .. } | Error::NotPsd { .. } => EXIT_NOT_MAXIMAL_RANK,
            Error::Verification(_) | Error::NoConvergence { .. } => EXIT_VERIFICATION,
            _ => EXIT_INPUT,
        };
        let message = match &e {
            Error::NotChordal { witness } => {
                format!(
                    "pattern is not chordal; chordless cycle {}",
                    one_based(witness)
                )
            }
            Error::CliqueNotPsd {
                clique,
                min_eigenvalue,
            } => format!(
                "clique {} is not positive semidefinite (smallest eigenvalue {})",
                one_based(clique),
                format_float(*min_eigenvalue)
            ),
            _ => e.to_string(),
        };
        Failure::new(code, message)
    }
}

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_INPUT
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "psdc: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let tol = tolerance(cli.tol)?;
    match cli.command {
        Command::Check { input } => cmd_check(&input, out),
        Command::Complete {
            input,
            output,
            verify,
            report,
        } => cmd_complete(&input, &output, verify, report.as_deref(), &tol, out),
        Command::Gendet { input } => cmd_gendet(&input, &tol, out),
        Command::Pinv {
            input,
            output,
            method,
            split,
        } => cmd_pinv(&input, &output, method, split, &tol, out),
    }
}

fn tolerance(t: Option<f64>) -> Result<TolerancePolicy, Failure> {
    let mut tol = TolerancePolicy::default();
    if let Some(t) = t {
        tol.rank_rtol = t;
        tol.psd_rtol = t;
    }
    tol.validate()
        .map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))?;
    Ok(tol)
}

fn read_input(path: &Path) -> Result<PartialHermitianMatrix, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_INPUT, format!("cannot read {}: {e}", path.display())))?;
    parse_phm(&text).map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn write_output(path: &Path, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    if path.as_os_str() == "-" {
        out.write_all(text.as_bytes())?;
        return Ok(());
    }
    fs::write(path, text)
        .map_err(|e| Failure::new(EXIT_INPUT, format!("cannot write {}: {e}", path.display())))
}

fn one_based(idx: &[usize]) -> String {
    let items: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn cmd_check(input: &Path, out: &mut dyn Write) -> Result<(), Failure> {
    let p = read_input(input)?;
    let g = pattern_graph(&p)?;
    match is_chordal(&g) {
        Chordality::NotChordal { witness } => {
            writeln!(out, "chordal = no")?;
            let cycle: Vec<String> = witness.iter().map(|i| (i + 1).to_string()).collect();
            writeln!(out, "chordless cycle: {}", cycle.join(" - "))?;
            Err(Failure::new(
                EXIT_NOT_CHORDAL,
                format!(
                    "pattern is not chordal; chordless cycle {}",
                    one_based(&witness)
                ),
            ))
        }
        Chordality::Chordal { peo } => {
            let tree = clique_tree(&maximal_cliques(&g, &peo)?)?;
            writeln!(out, "chordal = yes")?;
            let order: Vec<String> = peo.as_slice().iter().map(|i| (i + 1).to_string()).collect();
            writeln!(out, "perfect elimination order: {}", order.join(" "))?;
            writeln!(out, "maximal cliques:")?;
            for (k, c) in tree.cliques.iter().enumerate() {
                writeln!(out, "  C{} = {}", k + 1, one_based(c))?;
            }
            writeln!(out, "clique intersection graph:")?;
            for e in &tree.intersection_edges {
                writeln!(
                    out,
                    "  C{} -- C{}  {}",
                    e.a + 1,
                    e.b + 1,
                    one_based(&e.separator)
                )?;
            }
            writeln!(out, "clique tree (root C{}):", tree.root + 1)?;
            for step in &tree.merge_order {
                match step.parent {
                    Some(parent) => writeln!(
                        out,
                        "  C{} -- C{}  separator {}",
                        parent + 1,
                        step.clique + 1,
                        one_based(&step.separator)
                    )?,
                    None => writeln!(out, "  C{}  (new component)", step.clique + 1)?,
                }
            }
            Ok(())
        }
    }
}

fn cmd_complete(
    input: &Path,
    output: &Path,
    verify: bool,
    report_path: Option<&Path>,
    tol: &TolerancePolicy,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let p = read_input(input)?;
    let r = complete(&p, tol)?;
    write_output(output, &emit_hermitian(&r.completed), out)?;
    if !(verify || report_path.is_some()) {
        return Ok(());
    }

    let zero = verify_pinv_zero_pattern(&p, &r.completed, tol)?;
    let magnitude = VERIFY_MAGNITUDE * r.completed.as_matrix().max_abs().max(f64::MIN_POSITIVE);
    let maximality =
        verify_det_maximality(&p, &r.completed, tol, VERIFY_TRIALS, magnitude, VERIFY_SEED)?;

    let mut doc = ReportDocument::new();
    doc.note(format!("completion of {}", input.display()))
        .note(format!(
            "{} maximal cliques, {} merges, {} free positions",
            r.tree.cliques.len(),
            r.merge_log.len(),
            p.unspecified_positions().len()
        ))
        .note(format!(
            "maximality: {} of {} perturbations stayed PSD with the same rank",
            maximality.accepted, maximality.attempts
        ));
    for w in &r.warnings {
        doc.note(format!("warning: {w}"));
    }
    doc.put("n", p.dim())
        .put("chordal", true)
        .put("psd", r.psd)
        .put("rank", r.rank)
        .put_float("gendet", r.gendet_value)
        .put("rank_additive", r.rank_additive)
        .put("hypotheses_hold", r.hypotheses_hold)
        .put("pinv_zero_ok", zero.ok)
        .put_float("pinv_zero_max_relative", zero.max_relative)
        .put("maximality", maximality.status.as_str())
        .put("maximality_accepted", maximality.accepted)
        .put("maximality_attempts", maximality.attempts)
        .put("warnings", r.warnings.len())
        .put_tolerance(tol);
    let text = doc.to_string();
    match report_path {
        Some(path) => write_output(path, &text, out),
        None => {
            out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn cmd_gendet(input: &Path, tol: &TolerancePolicy, out: &mut dyn Write) -> Result<(), Failure> {
    let h = read_input(input)?
        .to_hermitian()
        .map_err(|_| Failure::new(EXIT_INPUT, "gendet needs a fully specified matrix"))?;
    let eig = hermitian_eig(&h)?;
    writeln!(out, "gendet = {}", format_float(eig.gendet(tol)))?;
    writeln!(out, "rank = {}", eig.rank(tol))?;
    writeln!(out, "psd = {}", eig.is_psd(tol))?;
    Ok(())
}

fn cmd_pinv(
    input: &Path,
    output: &Path,
    method: Method,
    split: Option<usize>,
    tol: &TolerancePolicy,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let h = read_input(input)?
        .to_hermitian()
        .map_err(|_| Failure::new(EXIT_INPUT, "pinv needs a fully specified matrix"))?;
    let reference = crate::numeric::pinv(&h, tol)?;
    let result = match method {
        Method::Eig => reference,
        Method::Banachiewicz => {
            let k = split.ok_or_else(|| {
                Failure::new(EXIT_INPUT, "--method banachiewicz needs --split <K>")
            })?;
            let part = BlockPartition::leading(h.dim(), k)?;
            let b = banachiewicz_pinv(&h, part, tol)?;
            let d = relative_distance(b.as_matrix(), reference.as_matrix());
            if d > PINV_RTOL {
                return Err(Failure::new(
                    EXIT_VERIFICATION,
                    format!(
                        "block formula disagrees with the eigendecomposition (relative difference {})",
                        format_float(d)
                    ),
                ));
            }
            b
        }
    };
    write_output(output, &emit_hermitian(&result), out)
}
