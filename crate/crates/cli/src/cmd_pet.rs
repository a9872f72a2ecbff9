//! `pet`: general-position checks, weight matrices and linearization.

use clap::{Args, Subcommand};
use serde_json::Value;
use std::path::PathBuf;

use polyprime::polysys::{self, json};

use crate::out;
use crate::CliError;

#[derive(Args)]
pub struct PetArgs {
    #[command(subcommand)]
    cmd: PetCmd,
}

#[derive(Subcommand)]
enum PetCmd {
    /// Check general position; with --wrt also the distinguished-node
    /// refinement. Exits 1 with a witness on failure.
    CheckGp {
        system: PathBuf,
        /// Node id to check relative general position against.
        #[arg(long)]
        wrt: Option<usize>,
    },
    /// Weight matrix of the system relative to a node.
    Weights {
        system: PathBuf,
        #[arg(long)]
        node: usize,
        /// Restrict the tally to active nodes.
        #[arg(long)]
        active_only: bool,
    },
    /// Run the shift-and-double loop to completion and write the
    /// certificate.
    Linearize {
        system: PathBuf,
        /// Print one line per step.
        #[arg(long)]
        trace: bool,
        /// Certificate output path (default: stdout JSON detail only).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Iteration guard.
        #[arg(long, default_value_t = polysys::DEFAULT_STEP_CAP)]
        cap: usize,
    },
}

fn load_system(path: &PathBuf) -> Result<polysys::ShiftPolySystem, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("{}: {}", path.display(), e)))?;
    json::system_from_json(&text).map_err(|e| CliError::input(e.to_string()))
}

pub fn run(args: PetArgs) -> Result<(), CliError> {
    match args.cmd {
        PetCmd::CheckGp { system, wrt } => {
            let s = load_system(&system)?;
            let mut detail = out::provenance("pet check-gp", None);
            let verdict = match wrt {
                None => s.general_position(),
                Some(node) => s
                    .general_position_wrt(node)
                    .map_err(CliError::from_poly)?,
            };
            match verdict {
                Ok(()) => {
                    detail.insert("general_position".into(), Value::Bool(true));
                    out::emit(detail);
                    Ok(())
                }
                Err(w) => {
                    detail.insert("general_position".into(), Value::Bool(false));
                    detail.insert("witness".into(), Value::String(w.to_string()));
                    out::emit(detail);
                    Err(CliError::validation(format!("not in general position: {}", w)))
                }
            }
        }
        PetCmd::Weights {
            system,
            node,
            active_only,
        } => {
            let s = load_system(&system)?;
            let w = polysys::weight_matrix(&s, node, active_only).map_err(CliError::from_poly)?;
            let mut detail = out::provenance("pet weights", None);
            detail.insert("node".into(), Value::Number(node.into()));
            detail.insert(
                "matrix".into(),
                serde_json::to_value(w.to_vecs()).expect("matrix encodes"),
            );
            out::emit(detail);
            Ok(())
        }
        PetCmd::Linearize {
            system,
            trace,
            out: out_path,
            cap,
        } => {
            let s = load_system(&system)?;
            let cert = polysys::pet_linearize(&s, cap).map_err(CliError::from_poly)?;
            if trace {
                for (i, step) in cert.steps.iter().enumerate() {
                    eprintln!(
                        "step {}: shift by node {}, descent witness node {}, params {:?}",
                        i + 1,
                        step.chosen,
                        step.produced,
                        step.params_added
                    );
                    eprintln!("  before:\n{}", indent(&step.weight_before.to_string()));
                    eprintln!("  after:\n{}", indent(&step.weight_after.to_string()));
                }
            }
            let mut detail = out::provenance("pet linearize", None);
            detail.insert("steps".into(), Value::Number(cert.steps.len().into()));
            detail.insert(
                "linear_nodes".into(),
                Value::Number(cert.linear.len().into()),
            );
            detail.insert("exponent".into(), Value::Number(cert.exponent.into()));
            detail.insert(
                "parameters".into(),
                Value::Number(cert.final_system.num_params().into()),
            );
            if let Some(path) = out_path {
                std::fs::write(&path, json::certificate_to_json(&cert))
                    .map_err(|e| CliError::input(format!("{}: {}", path.display(), e)))?;
                detail.insert(
                    "certificate".into(),
                    Value::String(path.display().to_string()),
                );
            }
            out::emit(detail);
            Ok(())
        }
    }
}

fn indent(s: &str) -> String {
    s.lines()
        .map(|l| format!("    {}", l))
        .collect::<Vec<_>>()
        .join("\n")
}
