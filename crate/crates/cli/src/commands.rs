use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use zetat_core::orbifold::enumerate_signatures;
use zetat_core::ruelle::{Route, RuelleZeroReport, CLOSED_FORM_TOL, QUADRATURE_ROUTE_TOL};
use zetat_core::torsion::{asymptotic_limit, leading_coefficient, TorsionReport, MAX_N};
use zetat_core::{Error, OrbifoldSignature, QuadratureConfig};

use crate::args::{Command, OutputArgs, QuadArgs, RouteArg, SignatureArgs};
use crate::output::{emit, Table};
use crate::suites;
use crate::CliError;

pub fn init_thread_pool() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("ZETAT_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("ZETAT_THREADS = {v:?} is not a thread count")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    Ok(())
}

pub fn run(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Torsion { sig, n, out } => torsion(&sig, &n, &out),
        Command::Ruelle { sig, n, route, tol, quad, out } => ruelle(&sig, &n, route, tol, &quad, &out),
        Command::Verify { suite, tol, n, quad, out } => {
            let cfg = load_config(&quad)?;
            let range = n.as_deref().map(parse_n_range).transpose()?;
            let report = suites::run(suite, tol, range, &cfg);
            crate::output::write_json(&report, out.as_deref())?;
            if report.passed {
                Ok(())
            } else {
                Err(CliError::CheckFailed(format!("suite {} has failing checks", suite.name())))
            }
        }
        Command::Sweep { sig, enumerate, max_genus, max_cones, max_order, n_max, n, out } => {
            let range = match (n_max, n) {
                (Some(m), _) => parse_n_range(&format!("1..{m}"))?,
                (None, Some(r)) => parse_n_range(&r)?,
                (None, None) => (1, 100),
            };
            let sigs = if enumerate {
                enumerate_signatures(max_genus, max_cones, max_order)
            } else {
                vec![parse_signature(&sig)?]
            };
            sweep(&sigs, range, &out)
        }
    }
}

pub fn parse_signature(args: &SignatureArgs) -> Result<OrbifoldSignature, CliError> {
    let cones = args
        .cones
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u32>().map_err(|e| Error::SignatureParse {
                input: args.cones.clone(),
                reason: format!("cone order {s:?}: {e}"),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OrbifoldSignature::new(args.genus, cones)?)
}

/// `"5"` or the inclusive range `"A..B"`.
pub fn parse_n_range(text: &str) -> Result<(u64, u64), CliError> {
    let bad = |reason: String| Error::InvalidN { n: 0, reason };
    let num = |s: &str| {
        s.trim()
            .parse::<u64>()
            .map_err(|e| bad(format!("cannot read {s:?} as N: {e}")))
    };
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let n = num(text)?;
            (n, n)
        }
    };
    for n in [a, b] {
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidN { n, reason: format!("N must lie in 1..={MAX_N}") }.into());
        }
    }
    if a > b {
        return Err(bad(format!("empty range {text}")).into());
    }
    Ok((a, b))
}

pub fn load_config(args: &QuadArgs) -> Result<QuadratureConfig, CliError> {
    let cfg = match &args.config {
        None => QuadratureConfig::default(),
        Some(path) => read_config(path)?,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn read_config(path: &Path) -> Result<QuadratureConfig, CliError> {
    let text = std::fs::read_to_string(path)?;
    toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn torsion(sig: &SignatureArgs, n: &str, out: &OutputArgs) -> Result<(), CliError> {
    let sig = parse_signature(sig)?;
    let (a, b) = parse_n_range(n)?;
    let reports = (a..=b)
        .map(|n| TorsionReport::compute(&sig, n))
        .collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(TorsionReport::CSV_HEADER);
    for r in &reports {
        table.push(r.csv_record());
    }
    emit(out.format, &reports, &table, out.out.as_deref())
}

fn ruelle(
    sig: &SignatureArgs,
    n: &str,
    route: RouteArg,
    tol: Option<f64>,
    quad: &QuadArgs,
    out: &OutputArgs,
) -> Result<(), CliError> {
    let sig = parse_signature(sig)?;
    let (a, b) = parse_n_range(n)?;
    let cfg = load_config(quad)?;
    let routes: Vec<Route> = match route {
        RouteArg::Closed => vec![Route::Closed],
        RouteArg::Residue => vec![Route::Residue],
        RouteArg::Quadrature => vec![Route::Quadrature],
        RouteArg::All => vec![Route::Closed, Route::Residue, Route::Quadrature],
    };
    let tol = tol.unwrap_or(if routes.contains(&Route::Quadrature) { QUADRATURE_ROUTE_TOL } else { CLOSED_FORM_TOL });
    let reports = (a..=b)
        .into_par_iter()
        .map(|n| RuelleZeroReport::compute(&sig, n, &routes, &cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(RuelleZeroReport::CSV_HEADER);
    for r in &reports {
        table.push(r.csv_record());
    }
    emit(out.format, &reports, &table, out.out.as_deref())?;
    if let Some(bad) = reports.iter().find(|r| r.route_spread() > tol) {
        let vals: Vec<f64> = [bad.log_abs_closed, bad.log_abs_residue, bad.log_abs_quadrature]
            .into_iter()
            .flatten()
            .collect();
        return Err(Error::IdentityViolation {
            what: format!("routes disagree by more than {tol:e} at N = {}", bad.n),
            lhs: vals[0],
            rhs: vals[vals.len() - 1],
        }
        .into());
    }
    Ok(())
}

#[derive(Serialize)]
struct SweepRow {
    #[serde(rename = "N")]
    n: u64,
    leading_coeff: f64,
    limit: f64,
    gap: f64,
}

#[derive(Serialize)]
struct SweepBlock {
    genus: u32,
    cones: Vec<u32>,
    /// `Σ_j (log α_j + log 2)`; the sweep asserts `|gap|·N ≤ C`.
    bound_constant: f64,
    max_scaled_gap: f64,
    passed: bool,
    rows: Vec<SweepRow>,
}

fn sweep_block(sig: &OrbifoldSignature, (a, b): (u64, u64)) -> Result<SweepBlock, Error> {
    let limit = asymptotic_limit(sig);
    let c: f64 = sig.cones().iter().map(|&a| (a as f64).ln() + std::f64::consts::LN_2).sum();
    let rows = (a..=b)
        .map(|n| {
            let lead = leading_coefficient(sig, n)?;
            Ok(SweepRow { n, leading_coeff: lead, limit, gap: lead - limit })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let max_scaled_gap = rows.iter().map(|r| r.gap.abs() * r.n as f64).fold(0.0, f64::max);
    let passed = if sig.cones().is_empty() {
        rows.iter().all(|r| r.gap == 0.0)
    } else {
        max_scaled_gap <= c
    };
    Ok(SweepBlock {
        genus: sig.genus(),
        cones: sig.cones().to_vec(),
        bound_constant: c,
        max_scaled_gap,
        passed,
        rows,
    })
}

fn sweep(sigs: &[OrbifoldSignature], range: (u64, u64), out: &OutputArgs) -> Result<(), CliError> {
    let blocks = sigs
        .par_iter()
        .map(|s| sweep_block(s, range))
        .collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(["genus", "cones", "N", "leading_coeff", "limit", "gap"]);
    for blk in &blocks {
        let cones: Vec<_> = blk.cones.iter().map(u32::to_string).collect();
        for r in &blk.rows {
            table.push([
                blk.genus.to_string(),
                cones.join(";"),
                r.n.to_string(),
                r.leading_coeff.to_string(),
                r.limit.to_string(),
                r.gap.to_string(),
            ]);
        }
    }
    emit(out.format, &blocks, &table, out.out.as_deref())?;
    if let Some(b) = blocks.iter().find(|b| !b.passed) {
        return Err(CliError::CheckFailed(format!(
            "g={} cones={:?}: max |gap|·N = {} exceeds {}",
            b.genus, b.cones, b.max_scaled_gap, b.bound_constant
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_ranges() {
        assert_eq!(parse_n_range("4").unwrap(), (4, 4));
        assert_eq!(parse_n_range("1..3").unwrap(), (1, 3));
        assert_eq!(parse_n_range("2..=5").unwrap(), (2, 5));
        assert!(matches!(parse_n_range("0"), Err(CliError::Core(Error::InvalidN { .. }))));
        assert!(matches!(parse_n_range("5..2"), Err(CliError::Core(Error::InvalidN { .. }))));
        assert!(parse_n_range("x").is_err());
    }

    #[test]
    fn signatures() {
        let s = parse_signature(&SignatureArgs { genus: 0, cones: "7, 2,3".into() }).unwrap();
        assert_eq!(s.cones(), [2, 3, 7]);
        let e = parse_signature(&SignatureArgs { genus: 0, cones: "2,3,6".into() }).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = parse_signature(&SignatureArgs { genus: 0, cones: "2,x".into() }).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn sweep_blocks() {
        let s = OrbifoldSignature::new(3, vec![]).unwrap();
        let b = sweep_block(&s, (1, 10)).unwrap();
        assert!(b.passed && b.rows.iter().all(|r| r.gap == 0.0));
        let s = OrbifoldSignature::new(0, vec![2, 3, 7]).unwrap();
        let b = sweep_block(&s, (1, 50)).unwrap();
        assert!(b.passed);
        assert_eq!(b.rows.len(), 50);
    }
}
