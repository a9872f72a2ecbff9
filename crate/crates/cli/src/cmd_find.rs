//! `find`: brute-force configuration search with CSV/JSON output.

use clap::Args;
use serde_json::Value;
use std::io::Write;
use std::path::PathBuf;

use polyprime::search::{
    count_weighted, find_configurations, min_y_profile, ConfigurationQuery, TargetSet,
};
use polyprime::sieve::PrimeTable;

use crate::out;
use crate::parse;
use crate::CliError;

#[derive(Args)]
pub struct FindArgs {
    /// Box bound: points live in [1, N]^d.
    #[arg(long = "n")]
    n_bound: u64,
    #[arg(long)]
    dims: usize,
    /// Semicolon-separated polynomials with zero constant term.
    #[arg(long)]
    poly: String,
    /// Semicolon-separated direction vectors; defaults to all-ones.
    #[arg(long)]
    dirs: Option<String>,
    #[arg(long)]
    ymax: u64,
    /// Target: "primes" or a JSON file with {"points": [[..], ..]}.
    #[arg(long, default_value = "primes")]
    target: String,
    #[arg(long)]
    limit: Option<usize>,
    /// Hits CSV output path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Wrap points cyclically (cross-checking grid averages only).
    #[arg(long)]
    cyclic: bool,
    /// Also report the per-base minimal witness parameter summary.
    #[arg(long)]
    min_y_profile: bool,
    /// Also report the weighted pattern average with indicator weights.
    #[arg(long)]
    weighted: bool,
}

fn load_target(spec: &str, dims: usize, n: u64) -> Result<TargetSet, CliError> {
    if spec == "primes" {
        let pt = PrimeTable::build(n.max(2)).map_err(CliError::from_sieve)?;
        return TargetSet::prime_lattice(dims, n, &pt).map_err(CliError::from_search);
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| CliError::input(format!("{}: {}", spec, e)))?;
    #[derive(serde::Deserialize)]
    struct PointsFile {
        points: Vec<Vec<u64>>,
    }
    let pf: PointsFile =
        serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: {}", spec, e)))?;
    if pf.points.iter().any(|p| p.len() != dims) {
        return Err(CliError::input("point dimension differs from --dims"));
    }
    Ok(TargetSet::from_points(dims, pf.points))
}

pub fn run(args: FindArgs) -> Result<(), CliError> {
    let polys = parse::parse_poly_list(&args.poly)?;
    let dirs = match &args.dirs {
        Some(d) => parse::parse_dirs(d)?,
        None => vec![vec![1; args.dims]; polys.len()],
    };
    let target = load_target(&args.target, args.dims, args.n_bound)?;
    let query = ConfigurationQuery {
        dim: args.dims,
        polys,
        directions: dirs,
        n_bound: args.n_bound,
        y_max: args.ymax,
        target,
        cyclic: args.cyclic,
    };
    let hits = find_configurations(&query, args.limit).map_err(CliError::from_search)?;

    let mut detail = out::provenance("find", None);
    detail.insert("hits".into(), Value::Number(hits.len().into()));
    if let Some(first) = hits.first() {
        detail.insert(
            "first_hit".into(),
            serde_json::json!({
                "y": first.y,
                "base": first.base,
                "points": first.points,
            }),
        );
    }

    if let Some(path) = &args.out {
        let mut f = std::fs::File::create(path)
            .map_err(|e| CliError::input(format!("{}: {}", path.display(), e)))?;
        writeln!(f, "{}", out::csv_header("find")).map_err(|e| CliError::input(e.to_string()))?;
        let mut header: Vec<String> = vec!["y".into()];
        header.extend((1..=query.dim).map(|i| format!("x{}", i)));
        for j in 0..query.polys.len() {
            header.extend((1..=query.dim).map(move |i| format!("p{}_{}", j, i)));
        }
        writeln!(f, "{}", header.join(",")).map_err(|e| CliError::input(e.to_string()))?;
        for h in &hits {
            let mut row: Vec<String> = vec![h.y.to_string()];
            row.extend(h.base.iter().map(|c| c.to_string()));
            for p in &h.points {
                row.extend(p.iter().map(|c| c.to_string()));
            }
            writeln!(f, "{}", row.join(",")).map_err(|e| CliError::input(e.to_string()))?;
        }
        detail.insert("csv".into(), Value::String(path.display().to_string()));
    }

    if args.min_y_profile {
        let profile = min_y_profile(&query).map_err(CliError::from_search)?;
        detail.insert(
            "min_y".into(),
            serde_json::json!({
                "bases_with_hits": profile.entries.len(),
                "max_min_y": profile.max_min_y,
                "histogram": profile.histogram,
            }),
        );
    }

    if args.weighted {
        let n = query.n_bound as usize;
        let target = &query.target;
        let indicators: Vec<polyprime::grid::GridFunction> = (0..query.polys.len())
            .map(|_| {
                polyprime::grid::GridFunction::from_fn(query.dim, n, |coords| {
                    let point: Vec<u64> = coords.iter().map(|&c| (c + 1) as u64).collect();
                    if target.contains(&point) {
                        1.0
                    } else {
                        0.0
                    }
                })
            })
            .collect::<Result<_, _>>()
            .map_err(CliError::from_grid)?;
        let refs: Vec<&polyprime::grid::GridFunction> = indicators.iter().collect();
        let avg = count_weighted(&query, &refs).map_err(CliError::from_search)?;
        detail.insert("weighted_average".into(), out::json_num(avg));
    }

    out::emit(detail);
    Ok(())
}
