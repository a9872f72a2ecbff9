//! Grid commands: norms, dual functions, decomposition and pattern
//! averages.

use clap::{Args, Subcommand};
use serde_json::Value;
use std::path::{Path, PathBuf};

use polyprime::grid::{
    avg_box_norm, box_norm, dense_decompose, dual_function, lambda_average, orthogonality_check,
    BoxSpec, CubeFamily, DecomposeOptions, EvalOptions, GridFunction,
};

use crate::out;
use crate::parse;
use crate::CliError;

pub fn load_grid(path: &Path) -> Result<GridFunction, CliError> {
    let res = if path.extension().is_some_and(|e| e == "csv") {
        let f = std::fs::File::open(path)
            .map_err(|e| CliError::input(format!("{}: {}", path.display(), e)))?;
        GridFunction::read_csv(f)
    } else {
        GridFunction::read_binary(path)
    };
    res.map_err(|e| CliError::input(format!("{}: {}", path.display(), e)))
}

pub fn save_grid(g: &GridFunction, path: &Path) -> Result<(), CliError> {
    let res = if path.extension().is_some_and(|e| e == "csv") {
        let f = std::fs::File::create(path)
            .map_err(|e| CliError::input(format!("{}: {}", path.display(), e)))?;
        g.write_csv(f)
    } else {
        g.write_binary(path)
    };
    res.map_err(|e| CliError::input(format!("{}: {}", path.display(), e)))
}

#[derive(Args, Clone, Copy)]
pub struct EvalArgs {
    #[arg(long, default_value_t = 1_000_000_000)]
    budget: u128,
    #[arg(long, default_value_t = 256)]
    max_samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl From<EvalArgs> for EvalOptions {
    fn from(a: EvalArgs) -> Self {
        EvalOptions {
            budget: a.budget,
            max_samples: a.max_samples,
            seed: a.seed,
        }
    }
}

#[derive(Args)]
pub struct NormArgs {
    #[command(subcommand)]
    cmd: NormCmd,
}

#[derive(Subcommand)]
enum NormCmd {
    /// Local box norm with fixed directions.
    Box {
        #[arg(long)]
        grid: PathBuf,
        /// Semicolon-separated direction vectors, e.g. "1,0;0,1".
        #[arg(long)]
        directions: String,
        #[arg(long = "side-m")]
        side_m: usize,
    },
    /// Averaged box norm along polynomial directions from a spec file.
    Avg {
        #[arg(long)]
        grid: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        /// Fail instead of sampling when the box exceeds the budget.
        #[arg(long)]
        exhaustive: bool,
        #[command(flatten)]
        eval: EvalArgs,
    },
}

pub fn run_norm(args: NormArgs) -> Result<(), CliError> {
    match args.cmd {
        NormCmd::Box {
            grid,
            directions,
            side_m,
        } => {
            let g = load_grid(&grid)?;
            let dirs = parse::parse_dirs(&directions)?;
            let spec = BoxSpec::new(dirs, side_m).map_err(CliError::from_grid)?;
            let v = box_norm(&g, &spec).map_err(CliError::from_grid)?;
            let mut detail = out::provenance("norm box", None);
            detail.insert("value".into(), out::json_num(v));
            out::emit(detail);
            println!("{}", out::fmt_f64(v));
            Ok(())
        }
        NormCmd::Avg {
            grid,
            spec,
            exhaustive,
            eval,
        } => {
            let g = load_grid(&grid)?;
            let spec = parse::load_avg_spec(&spec)?;
            let norm = avg_box_norm(&g, &spec, eval.into(), exhaustive)
                .map_err(CliError::from_grid)?;
            let mut detail = out::provenance("norm avg", Some(eval.seed));
            detail.insert("value".into(), out::json_num(norm.value));
            detail.insert("mean_pow".into(), out::json_num(norm.mean_pow));
            detail.insert("samples".into(), Value::Number(norm.samples.into()));
            detail.insert("exhaustive".into(), Value::Bool(norm.exhaustive));
            if let Some(se) = norm.std_error {
                detail.insert("std_error".into(), out::json_num(se));
            }
            out::emit(detail);
            println!("{}", out::fmt_f64(norm.value));
            Ok(())
        }
    }
}

#[derive(Args)]
pub struct DualArgs {
    /// Grid function used on every nonzero vertex pattern.
    #[arg(long)]
    grid: PathBuf,
    #[arg(long)]
    spec: PathBuf,
    /// Output grid (binary, or .csv by extension).
    #[arg(long)]
    out: PathBuf,
    /// Also report E (nu - 1) D against this majorant grid.
    #[arg(long)]
    nu: Option<PathBuf>,
    #[command(flatten)]
    eval: EvalArgs,
}

pub fn run_dual(args: DualArgs) -> Result<(), CliError> {
    let g = load_grid(&args.grid)?;
    let spec = parse::load_avg_spec(&args.spec)?;
    let family = CubeFamily::uniform(spec.order(), &g);
    let d = dual_function(&spec, &family, args.eval.into()).map_err(CliError::from_grid)?;
    save_grid(&d, &args.out)?;
    let mut detail = out::provenance("dual", Some(args.eval.seed));
    detail.insert("pairing".into(), out::json_num(g.inner(&d).map_err(CliError::from_grid)?));
    detail.insert("sup_abs".into(), out::json_num(d.sup_abs()));
    if let Some(nu_path) = &args.nu {
        let nu = load_grid(nu_path)?;
        let ortho = orthogonality_check(&nu, &[&d]).map_err(CliError::from_grid)?;
        detail.insert("orthogonality".into(), out::json_num(ortho));
    }
    detail.insert("out".into(), Value::String(args.out.display().to_string()));
    out::emit(detail);
    Ok(())
}

#[derive(Args)]
pub struct DecomposeArgs {
    #[arg(long)]
    grid: PathBuf,
    /// Majorant grid dominating the input.
    #[arg(long)]
    nu: PathBuf,
    #[arg(long)]
    spec: PathBuf,
    #[arg(long)]
    eps: f64,
    #[arg(long, default_value_t = 0.25)]
    eta: f64,
    #[arg(long, default_value_t = 500)]
    cap: usize,
    #[arg(long = "out-g")]
    out_g: Option<PathBuf>,
    #[arg(long = "out-h")]
    out_h: Option<PathBuf>,
    #[command(flatten)]
    eval: EvalArgs,
}

pub fn run_decompose(args: DecomposeArgs) -> Result<(), CliError> {
    let f = load_grid(&args.grid)?;
    let nu = load_grid(&args.nu)?;
    let spec = parse::load_avg_spec(&args.spec)?;
    let opts = DecomposeOptions {
        eta: args.eta,
        cap: args.cap,
        eval: args.eval.into(),
    };
    let r = dense_decompose(&f, &nu, &spec, args.eps, opts).map_err(CliError::from_grid)?;
    let mut detail = out::provenance("decompose", Some(args.eval.seed));
    detail.insert("achieved".into(), out::json_num(r.achieved_norm));
    detail.insert("eps".into(), out::json_num(args.eps));
    detail.insert("iterations".into(), Value::Number(r.iterations.into()));
    detail.insert("converged".into(), Value::Bool(r.converged));
    detail.insert(
        "norm_trace".into(),
        Value::Array(r.norm_trace.iter().map(|&v| out::json_num(v)).collect()),
    );
    if let Some(p) = &args.out_g {
        save_grid(&r.g, p)?;
        detail.insert("g".into(), Value::String(p.display().to_string()));
    }
    if let Some(p) = &args.out_h {
        save_grid(&r.h, p)?;
        detail.insert("h".into(), Value::String(p.display().to_string()));
    }
    out::emit(detail);
    if r.converged {
        Ok(())
    } else {
        Err(CliError::validation(format!(
            "norm target missed: achieved {} > eps {}",
            out::fmt_f64(r.achieved_norm),
            out::fmt_f64(args.eps)
        )))
    }
}

#[derive(Args)]
pub struct LambdaArgs {
    /// Semicolon-separated polynomials, e.g. "0;y;2*y^2".
    #[arg(long)]
    poly: String,
    /// Semicolon-separated direction vectors, e.g. "1,1;1,2".
    #[arg(long)]
    dirs: String,
    /// Weight grids, comma separated, one per polynomial; a single path
    /// is reused for all slots.
    #[arg(long)]
    fns: String,
    #[arg(long = "side-m")]
    side_m: usize,
    /// Skip the zero-constant-term validation.
    #[arg(long)]
    allow_offset: bool,
}

pub fn run_lambda(args: LambdaArgs) -> Result<(), CliError> {
    let polys = parse::parse_poly_list(&args.poly)?;
    let dirs = parse::parse_dirs(&args.dirs)?;
    let paths: Vec<&str> = args.fns.split(',').collect();
    let grids: Vec<GridFunction> = if paths.len() == 1 {
        vec![load_grid(Path::new(paths[0]))?; polys.len()]
    } else {
        paths
            .iter()
            .map(|p| load_grid(Path::new(p)))
            .collect::<Result<_, _>>()?
    };
    let refs: Vec<&GridFunction> = grids.iter().collect();
    let v = lambda_average(&polys, &dirs, &refs, args.side_m, !args.allow_offset)
        .map_err(CliError::from_grid)?;
    let mut detail = out::provenance("lambda", None);
    detail.insert("value".into(), out::json_num(v));
    out::emit(detail);
    println!("{}", out::fmt_f64(v));
    Ok(())
}
