//! Command-line front door: problem-definition files in, JSON reports
//! out.
//!
//! Every subcommand reads one problem file (schema in
//! [`crate::coefficients::ProblemDefinition`]) and writes a report to
//! stdout or `--out`. Exit codes are CI-friendly: `0` success, `1` a
//! verification tolerance failed, `2` malformed input or a domain error.
//! Output depends only on the inputs — identical invocations produce
//! byte-identical bytes.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bethe::{self, Energy, ResidualReport, RootResidual};
use crate::circuit::{self, build_full, Circuit, ExportFormat, GateCounts};
use crate::coefficients::{AmplitudeTable, ProblemDefinition, ProblemSource, Provenance};
use crate::hamiltonian::OperatorMatrix;
use crate::simulator::{target_state, StateVector};
use crate::{Error, Result};

/// Parsed command line.
#[derive(Debug, Parser)]
#[command(
    name = "bethe-prep",
    about = "Synthesize and verify Bethe-state preparation circuits",
    version
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

/// Arguments shared by every subcommand.
#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Problem-definition JSON file.
    pub problem_file: PathBuf,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Synthesize the preparation circuit and print it as JSON.
    Synth {
        #[command(flatten)]
        common: CommonArgs,
        /// Drop u-gates that equal the identity to within 1e-14.
        #[arg(long)]
        prune: bool,
    },
    /// Run the circuit on |0…0⟩ and report the outcome.
    Run {
        #[command(flatten)]
        common: CommonArgs,
        /// Drop u-gates that equal the identity to within 1e-14.
        #[arg(long)]
        prune: bool,
        /// Print the full statevector as a JSON array of [re, im] pairs.
        #[arg(long)]
        dump_state: bool,
    },
    /// Check the prepared state: fidelity, energy, eigen-residual, S^z,
    /// and Bethe residuals. Exits 1 if any tolerance fails.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Verify the pruned circuit instead of the full one.
        #[arg(long)]
        prune: bool,
        /// Tolerance on |overlap − 1|.
        #[arg(long, default_value_t = 1e-8)]
        fidelity_tol: f64,
        /// Tolerance on the Hamiltonian eigen-residual.
        #[arg(long, default_value_t = 1e-4)]
        eigen_tol: f64,
        /// Tolerance on the Bethe-equation residuals.
        #[arg(long, default_value_t = 1e-4)]
        residual_tol: f64,
    },
    /// Print gate tallies: synthesized, closed-form, and pruned.
    Counts {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check the problem's Bethe roots against their equations and print
    /// per-root residuals, E, and S^z. Exits 1 if the residuals exceed
    /// the tolerance.
    CheckRoots {
        #[command(flatten)]
        common: CommonArgs,
        /// Tolerance on the residual maximum.
        #[arg(long, default_value_t = 1e-4)]
        residual_tol: f64,
    },
    /// Export the circuit as JSON or qasm-like text.
    Export {
        #[command(flatten)]
        common: CommonArgs,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Drop u-gates that equal the identity to within 1e-14.
        #[arg(long)]
        prune: bool,
    },
}

/// Circuit wire formats exposed on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Qasm,
}

impl From<Format> for ExportFormat {
    fn from(f: Format) -> ExportFormat {
        match f {
            Format::Json => ExportFormat::Json,
            Format::Qasm => ExportFormat::QasmLike,
        }
    }
}

/// Entry point: parses `argv` and runs the command, translating every
/// failure into the documented exit codes.
pub fn main() -> i32 {
    let config = match RunConfig::try_parse() {
        Ok(config) => config,
        Err(err) => {
            // --help/--version land here too; clap distinguishes them.
            let _ = err.print();
            return err.exit_code();
        }
    };
    match execute(&config) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

/// Runs one parsed command; `Ok` carries the exit code, `Err` means a
/// domain or input error (exit 2).
pub fn execute(config: &RunConfig) -> Result<i32> {
    match &config.command {
        Command::Synth { common, prune } => cmd_synth(common, *prune),
        Command::Run {
            common,
            prune,
            dump_state,
        } => cmd_run(common, *prune, *dump_state),
        Command::Verify {
            common,
            prune,
            fidelity_tol,
            eigen_tol,
            residual_tol,
        } => cmd_verify(common, *prune, *fidelity_tol, *eigen_tol, *residual_tol),
        Command::Counts { common } => cmd_counts(common),
        Command::CheckRoots {
            common,
            residual_tol,
        } => cmd_check_roots(common, *residual_tol),
        Command::Export {
            common,
            format,
            prune,
        } => cmd_export(common, *format, *prune),
    }
}

fn check_tolerance(name: &'static str, value: f64) -> Result<()> {
    if value <= 0.0 || value.is_nan() {
        return Err(Error::InvalidInput {
            what: name,
            reason: format!("tolerance must be positive, got {value}"),
        });
    }
    Ok(())
}

fn load_table(common: &CommonArgs) -> Result<AmplitudeTable> {
    ProblemDefinition::from_file(&common.problem_file)?.build_table()
}

fn synthesize(table: &AmplitudeTable, prune: bool) -> Result<Circuit> {
    let circuit = build_full(table)?;
    Ok(if prune {
        circuit::prune(&circuit)
    } else {
        circuit
    })
}

fn emit(common: &CommonArgs, text: &str) -> Result<()> {
    match &common.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_value(common: &CommonArgs, value: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(common, &text)
}

fn cmd_synth(common: &CommonArgs, prune: bool) -> Result<i32> {
    let table = load_table(common)?;
    let circuit = synthesize(&table, prune)?;
    emit(common, &circuit::export(&circuit, ExportFormat::Json))?;
    Ok(0)
}

fn cmd_run(common: &CommonArgs, prune: bool, dump_state: bool) -> Result<i32> {
    let table = load_table(common)?;
    let circuit = synthesize(&table, prune)?;
    let mut state = StateVector::zero_state(table.l())?;
    state.run(&circuit)?;
    if dump_state {
        let mut text = state.to_json();
        text.push('\n');
        emit(common, &text)?;
    } else {
        let report = json!({
            "n_wires": circuit.n_wires(),
            "gates": circuit.gates().len(),
            "norm": state.norm(),
        });
        emit_value(common, &report)?;
    }
    Ok(0)
}

fn residual_report(table: &AmplitudeTable) -> Option<ResidualReport> {
    match table.source() {
        Provenance::Closed { delta, roots } => {
            Some(bethe::closed_residuals(roots, *delta, table.l()))
        }
        Provenance::Open {
            delta,
            h,
            h_prime,
            roots,
        } => Some(bethe::open_residuals(
            roots,
            *delta,
            *h,
            *h_prime,
            table.l(),
        )),
        Provenance::Dicke | Provenance::Custom => None,
    }
}

fn hamiltonian_for(table: &AmplitudeTable) -> Result<Option<OperatorMatrix>> {
    Ok(match table.source() {
        Provenance::Closed { delta, .. } => Some(OperatorMatrix::closed_xxz(table.l(), *delta)?),
        Provenance::Open {
            delta, h, h_prime, ..
        } => Some(OperatorMatrix::open_xxz(table.l(), *delta, *h, *h_prime)?),
        Provenance::Dicke | Provenance::Custom => None,
    })
}

fn cmd_verify(
    common: &CommonArgs,
    prune: bool,
    fidelity_tol: f64,
    eigen_tol: f64,
    residual_tol: f64,
) -> Result<i32> {
    check_tolerance("fidelity tolerance", fidelity_tol)?;
    check_tolerance("eigen-residual tolerance", eigen_tol)?;
    check_tolerance("Bethe-residual tolerance", residual_tol)?;

    let table = load_table(common)?;
    let circuit = synthesize(&table, prune)?;
    let mut state = StateVector::zero_state(table.l())?;
    state.run(&circuit)?;
    let fidelity = target_state(&table)?.overlap(&state)?;
    let mut pass = (fidelity - 1.0).norm() <= fidelity_tol;

    // The magnetization of the prepared state must be the sector value.
    let sz_measured = OperatorMatrix::sz(table.l()).expectation(&state)?.re;
    pass &= (sz_measured - bethe::sz_eigenvalue(table.l(), table.m())).abs() <= 1e-10;

    // Physics checks apply only when the table came from Bethe roots.
    let mut energy_value: Option<f64> = None;
    let mut eigen_residual: Option<f64> = None;
    let mut bethe_residual_max: Option<f64> = None;
    if let Some(report) = residual_report(&table) {
        bethe_residual_max = Some(report.max_abs);
        pass &= report.max_abs <= residual_tol;
        let roots = match table.source() {
            Provenance::Closed { roots, .. } | Provenance::Open { roots, .. } => roots.clone(),
            _ => unreachable!("residual report implies Bethe provenance"),
        };
        let delta = match table.source() {
            Provenance::Closed { delta, .. } | Provenance::Open { delta, .. } => *delta,
            _ => unreachable!(),
        };
        match bethe::energy(&roots, delta) {
            Energy::Real(e) => {
                energy_value = Some(e);
                let h = hamiltonian_for(&table)?.expect("Bethe provenance has a Hamiltonian");
                let residual = h.eigen_residual(&state, e)?;
                eigen_residual = Some(residual);
                pass &= residual <= eigen_tol;
            }
            Energy::Complex(_) => {
                // Not a self-conjugate root set: no real eigenvalue to
                // verify against.
                pass = false;
            }
        }
    }

    let report = json!({
        "fidelity_re": fidelity.re,
        "fidelity_im": fidelity.im,
        "energy": energy_value,
        "eigen_residual": eigen_residual,
        "sz": sz_measured,
        "bethe_residual_max": bethe_residual_max,
    });
    emit_value(common, &report)?;
    Ok(if pass { 0 } else { 1 })
}

fn cmd_counts(common: &CommonArgs) -> Result<i32> {
    let table = load_table(common)?;
    let circuit = build_full(&table)?;
    let report = json!({
        "synthesized": gate_counts_value(circuit::gate_counts(&circuit)),
        "closed_form": gate_counts_value(GateCounts::formula(table.l(), table.m())),
        "pruned": gate_counts_value(circuit::gate_counts(&circuit::prune(&circuit))),
    });
    emit_value(common, &report)?;
    Ok(0)
}

fn gate_counts_value(counts: GateCounts) -> Value {
    json!({ "x": counts.x, "cnot": counts.cnot, "cu": counts.cu })
}

fn cmd_check_roots(common: &CommonArgs, residual_tol: f64) -> Result<i32> {
    check_tolerance("Bethe-residual tolerance", residual_tol)?;
    let problem = ProblemDefinition::from_file(&common.problem_file)?;
    let (report, energy) = match &problem.source {
        ProblemSource::Closed { delta, roots } => (
            bethe::closed_residuals(roots, *delta, problem.l),
            bethe::energy(roots, *delta),
        ),
        ProblemSource::Open {
            delta,
            h,
            h_prime,
            roots,
        } => (
            bethe::open_residuals(roots, *delta, *h, *h_prime, problem.l),
            bethe::energy(roots, *delta),
        ),
        ProblemSource::Dicke | ProblemSource::Custom { .. } => {
            return Err(Error::InvalidInput {
                what: "problem definition",
                reason: "check-roots needs a Bethe source with roots".into(),
            })
        }
    };

    let residuals: Vec<Value> = report
        .per_root
        .iter()
        .map(|r| match r {
            RootResidual::Value(v) => json!([v.re, v.im]),
            RootResidual::Singular => Value::Null,
        })
        .collect();
    let value = json!({
        "residuals": residuals,
        "max_abs": report.max_abs.is_finite().then_some(report.max_abs),
        "duplicate_roots": report.duplicate_roots,
        "energy": match energy {
            Energy::Real(e) => json!(e),
            Energy::Complex(e) => json!([e.re, e.im]),
        },
        "sz": bethe::sz_eigenvalue(problem.l, problem.m),
    });
    emit_value(common, &value)?;
    Ok(if report.max_abs <= residual_tol { 0 } else { 1 })
}

fn cmd_export(common: &CommonArgs, format: Format, prune: bool) -> Result<i32> {
    let table = load_table(common)?;
    let circuit = synthesize(&table, prune)?;
    emit(common, &circuit::export(&circuit, format.into()))?;
    Ok(0)
}
