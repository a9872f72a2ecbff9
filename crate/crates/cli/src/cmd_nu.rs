//! `nu`: majorant tables, correlation averages and shifted-product
//! checks.

use clap::{Args, Subcommand};
use serde_json::Value;
use std::io::Write;
use std::path::PathBuf;

use polyprime::sieve::{
    self, correlation_average, make_context, polynomial_forms_check, FormsOptions, NuTable,
    PrimeTable, SieveContext,
};

use crate::out;
use crate::parse;
use crate::CliError;

#[derive(Args)]
pub struct NuArgs {
    #[command(subcommand)]
    cmd: NuCmd,
}

#[derive(Args, Clone)]
struct ContextArgs {
    /// Initial range bound N'.
    #[arg(long = "nprime")]
    n_prime: u64,
    /// Truncation exponent; R = floor(N'^eps0).
    #[arg(long)]
    eps0: f64,
    /// Small-prime cutoff override (default: clamped growth formula).
    #[arg(long)]
    w: Option<u64>,
    /// Residue vector, comma separated, one entry per axis.
    #[arg(long, default_value = "1")]
    b: String,
    /// Indicator normalization override (default eps0 / 10).
    #[arg(long)]
    c0: Option<f64>,
    /// Cutoff kind: cosine or bump.
    #[arg(long, default_value = "cosine")]
    chi: String,
    /// Binary smallest-prime-factor cache to reuse across runs.
    #[arg(long)]
    spf_cache: Option<PathBuf>,
}

impl ContextArgs {
    fn build(&self) -> Result<(SieveContext, PrimeTable), CliError> {
        let kind = self
            .chi
            .parse::<sieve::ChiKind>()
            .map_err(CliError::input)?;
        let b = parse::parse_u64_list(&self.b)?;
        let ctx = make_context(self.n_prime, self.eps0, self.w, self.c0)
            .map_err(CliError::from_sieve)?
            .with_chi(kind)
            .with_residues(b.clone())
            .map_err(CliError::from_sieve)?;
        let limit = ctx.big_w * ctx.n + b.iter().copied().max().unwrap_or(1);
        let pt = match &self.spf_cache {
            Some(path) => PrimeTable::cached(limit, path).map_err(CliError::from_sieve)?,
            None => PrimeTable::build(limit).map_err(CliError::from_sieve)?,
        };
        Ok((ctx, pt))
    }
}

#[derive(Subcommand)]
enum NuCmd {
    /// Build the per-axis majorant table and export it as CSV.
    Build {
        #[command(flatten)]
        ctx: ContextArgs,
        /// CSV output path (default stdout summary only).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also export the product grid (binary, or .csv by extension).
        #[arg(long)]
        out_grid: Option<PathBuf>,
    },
    /// Build the truncated weighted indicator of the prime lattice and
    /// its majorant grid, ready for decomposition runs.
    Fa {
        #[command(flatten)]
        ctx: ContextArgs,
        /// Weighted-indicator grid output.
        #[arg(long)]
        out: PathBuf,
        /// Majorant grid output.
        #[arg(long)]
        out_nu: Option<PathBuf>,
    },
    /// Average of shifted products of the first-axis table.
    Correlate {
        #[command(flatten)]
        ctx: ContextArgs,
        /// Comma-separated shifts, e.g. "0,0" or "0,1".
        #[arg(long)]
        shifts: String,
        /// Wrap cyclically instead of truncating the range.
        #[arg(long)]
        cyclic: bool,
        /// Optional band: exit 1 when |value - 1| exceeds it.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Shifted-product statistic along a polynomial direction family.
    FormsCheck {
        #[command(flatten)]
        ctx: ContextArgs,
        /// Averaged-spec JSON holding the direction maps (H and M fields
        /// are read for the parameter range; side length is ignored).
        #[arg(long)]
        system: PathBuf,
        /// Parameter range override.
        #[arg(long = "big-h")]
        h_range: Option<u64>,
        #[arg(long, default_value_t = 1_000_000_000)]
        budget: u128,
        #[arg(long, default_value_t = 512)]
        max_samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Optional band: exit 1 when |statistic - 1| exceeds it.
        #[arg(long)]
        tol: Option<f64>,
    },
}

pub fn run(args: NuArgs) -> Result<(), CliError> {
    match args.cmd {
        NuCmd::Build {
            ctx,
            out: path,
            out_grid,
        } => {
            let (ctx, pt) = ctx.build()?;
            let nu = NuTable::build(&ctx, &pt).map_err(CliError::from_sieve)?;
            let mut detail = out::provenance("nu build", None);
            detail.insert(
                "context".into(),
                serde_json::from_str(&ctx.to_json()).expect("context json"),
            );
            for (i, axis) in nu.axes.iter().enumerate() {
                let mean = axis.iter().sum::<f64>() / axis.len() as f64;
                detail.insert(format!("mean_axis_{}", i + 1), out::json_num(mean));
            }
            if let Some(p) = path {
                let mut f = std::fs::File::create(&p)
                    .map_err(|e| CliError::input(format!("{}: {}", p.display(), e)))?;
                writeln!(f, "{}", out::csv_header("nu build"))
                    .and_then(|_| writeln!(f, "x,nu"))
                    .map_err(|e| CliError::input(e.to_string()))?;
                for (i, v) in nu.axis(0).iter().enumerate() {
                    writeln!(f, "{},{}", i + 1, out::fmt_f64(*v))
                        .map_err(|e| CliError::input(e.to_string()))?;
                }
                detail.insert("csv".into(), Value::String(p.display().to_string()));
            }
            if let Some(p) = out_grid {
                let grid = nu.to_grid().map_err(CliError::from_sieve)?;
                crate::cmd_grid::save_grid(&grid, &p)?;
                detail.insert("grid".into(), Value::String(p.display().to_string()));
            }
            out::emit(detail);
            Ok(())
        }
        NuCmd::Fa { ctx, out, out_nu } => {
            let (ctx, pt) = ctx.build()?;
            let nu = NuTable::build(&ctx, &pt).map_err(CliError::from_sieve)?;
            let member = |p: &[u64]| p.iter().all(|&v| pt.is_prime(v));
            let (fa, violations) =
                sieve::build_f_a(&ctx, &member, &nu).map_err(CliError::from_sieve)?;
            let mut detail = out::provenance("nu fa", None);
            detail.insert("mean".into(), out::json_num(fa.mean()));
            detail.insert(
                "majorant_violations".into(),
                Value::Number(violations.len().into()),
            );
            crate::cmd_grid::save_grid(&fa, &out)?;
            detail.insert("out".into(), Value::String(out.display().to_string()));
            if let Some(p) = out_nu {
                let grid = nu.to_grid().map_err(CliError::from_sieve)?;
                crate::cmd_grid::save_grid(&grid, &p)?;
                detail.insert("nu_grid".into(), Value::String(p.display().to_string()));
            }
            out::emit(detail);
            if violations.is_empty() {
                Ok(())
            } else {
                eprintln!(
                    "warning: majorant bound fails at {} points",
                    violations.len()
                );
                Ok(())
            }
        }
        NuCmd::Correlate {
            ctx,
            shifts,
            cyclic,
            tol,
        } => {
            let (ctx, pt) = ctx.build()?;
            let nu = NuTable::build(&ctx, &pt).map_err(CliError::from_sieve)?;
            let shifts = parse::parse_i64_list(&shifts)?;
            let value =
                correlation_average(nu.axis(0), &shifts, cyclic).map_err(CliError::from_sieve)?;
            let mut detail = out::provenance("nu correlate", None);
            detail.insert("shifts".into(), serde_json::to_value(&shifts).unwrap());
            detail.insert("value".into(), out::json_num(value));
            detail.insert("deviation".into(), out::json_num(value - 1.0));
            let verdict = tol.map(|t| (value - 1.0).abs() <= t);
            if let Some(v) = verdict {
                detail.insert("within_tolerance".into(), Value::Bool(v));
            }
            out::emit(detail);
            match verdict {
                Some(false) => Err(CliError::validation(format!(
                    "correlation {} outside the tolerance band",
                    out::fmt_f64(value)
                ))),
                _ => Ok(()),
            }
        }
        NuCmd::FormsCheck {
            ctx,
            system,
            h_range,
            budget,
            max_samples,
            seed,
            tol,
        } => {
            let (ctx, pt) = ctx.build()?;
            let nu = NuTable::build(&ctx, &pt).map_err(CliError::from_sieve)?;
            let spec = parse::load_avg_spec(&system)?;
            let h = h_range.unwrap_or(spec.h_range);
            let stat = polynomial_forms_check(
                &nu,
                &spec.maps,
                h,
                FormsOptions {
                    budget,
                    max_samples,
                    seed,
                },
            )
            .map_err(CliError::from_sieve)?;
            let mut detail = out::provenance("nu forms-check", Some(seed));
            detail.insert("value".into(), out::json_num(stat.value));
            detail.insert("deviation".into(), out::json_num(stat.deviation));
            if let Some(se) = stat.std_error {
                detail.insert("std_error".into(), out::json_num(se));
            }
            detail.insert("samples".into(), Value::Number(stat.samples.into()));
            detail.insert("exhaustive".into(), Value::Bool(stat.exhaustive));
            let verdict = tol.map(|t| stat.deviation.abs() <= t);
            if let Some(v) = verdict {
                detail.insert("within_tolerance".into(), Value::Bool(v));
            }
            out::emit(detail);
            match verdict {
                Some(false) => Err(CliError::validation(format!(
                    "statistic {} outside the tolerance band",
                    out::fmt_f64(stat.value)
                ))),
                _ => Ok(()),
            }
        }
    }
}
