//! The `verify` suites. Every check records the error it achieved; a check
//! whose computation fails is reported as failed with the error message.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use zetat_core::orbifold::enumerate_signatures;
use zetat_core::ruelle::{
    elliptic_term_total, identity_term_closed, Route, RuelleZeroReport, CLOSED_FORM_TOL, QUADRATURE_ROUTE_TOL,
    VERIFY_QUADRATURE_MAX_N,
};
use zetat_core::selberg::{
    cot_series_identity, elliptic_residue_expansion, functional_eq_antiderivative, functional_eq_rhs,
    functional_eq_rhs_integral, g_from_q, identity_term_partial_fraction, phi_recovery, q_from_phi,
    selberg_forward, selberg_inverse, tan_moment_by_parts, FnProfile, Grid, SampledFunction, TestPair,
};
use zetat_core::torsion::log_torsion_closed;
use zetat_core::{area, OrbifoldSignature, QuadratureConfig, Result};

use crate::args::Suite;

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    /// Achieved error; `None` when the computation itself failed.
    pub error: Option<f64>,
    pub tol: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
}

struct Checks {
    override_tol: Option<f64>,
    list: Vec<Check>,
}

impl Checks {
    fn new(override_tol: Option<f64>) -> Self {
        Checks { override_tol, list: Vec::new() }
    }

    fn tol(&self, default: f64) -> f64 {
        self.override_tol.unwrap_or(default)
    }

    /// Runs `f` with the effective tolerance and compares its error to it.
    fn add(&mut self, name: impl Into<String>, default_tol: f64, f: impl FnOnce(f64) -> Result<f64>) {
        let tol = self.tol(default_tol);
        self.list.push(make_check(name.into(), tol, f(tol)));
    }
}

fn make_check(name: String, tol: f64, outcome: Result<f64>) -> Check {
    match outcome {
        Ok(err) => Check { name, error: Some(err), tol, passed: err <= tol, detail: None },
        Err(e) => Check { name, error: None, tol, passed: false, detail: Some(e.to_string()) },
    }
}

pub fn run(suite: Suite, tol: Option<f64>, n_range: Option<(u64, u64)>, cfg: &QuadratureConfig) -> SuiteReport {
    let mut checks = Checks::new(tol);
    match suite {
        Suite::Transforms => transforms(&mut checks, cfg),
        Suite::FunctionalEq => functional_eq(&mut checks, cfg),
        Suite::Residues => residues(&mut checks, cfg),
        Suite::RuelleTorsion => ruelle_torsion(&mut checks, n_range.unwrap_or((1, 8)), cfg),
    }
    SuiteReport {
        suite: suite.name(),
        passed: checks.list.iter().all(|c| c.passed),
        checks: checks.list,
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn max_dev<'a>(pairs: impl Iterator<Item = (f64, &'a f64)>, exact: impl Fn(f64) -> f64) -> f64 {
    pairs.map(|(x, v)| (v - exact(x)).abs()).fold(0.0, f64::max)
}

fn transforms(checks: &mut Checks, cfg: &QuadratureConfig) {
    for (a, b) in [(1.0, 2.0), (0.75, 3.0)] {
        checks.add(format!("fourier pair ({a}, {b}) on r in [0, 10]"), 1e-6, |tol| {
            let p = TestPair::real(a, b)?;
            let g = p.sample_g(40.0, 8000)?;
            let r = Grid::linspace(0.0, 10.0, 101)?;
            let h = selberg_forward(&g, &r, tol)?;
            Ok(r.points().zip(&h.values).map(|(r, v)| (v - p.h(r)).norm()).fold(0.0, f64::max))
        });
    }
    checks.add("inverse pair (1, 2) at u = 0", 1e-5, |tol| {
        let p = TestPair::real(1.0, 2.0)?;
        let h = p.sample_h(200.0, 40_000)?;
        let g = selberg_inverse(&h, &Grid::uniform(0.0, 1.0, 1)?, tol)?;
        Ok((g.values[0] - 0.25).norm())
    });
    checks.add("gaussian round trip g -> h -> g", 1e-6, |_| {
        let g = SampledFunction::from_fn(Grid::symmetric(10.0, 2000)?, |u: f64| (-u * u).exp()).with_tail_bound(1e-40);
        let h = selberg_forward(&g, &Grid::symmetric(16.0, 3200)?, 1e-12)?.with_tail_bound(1e-25);
        let u = Grid::linspace(-4.0, 4.0, 81)?;
        let back = selberg_inverse(&h, &u, 1e-12)?;
        Ok(max_dev(u.points().zip(&back.values), |u| (-u * u).exp()))
    });
    checks.add("forward transform preserves evenness", 1e-12, |_| {
        let p = TestPair::real(1.0, 2.0)?;
        let h = selberg_forward(&p.sample_g(40.0, 8000)?, &Grid::symmetric(5.0, 50)?, 1e-8)?;
        Ok(h.asymmetry())
    });
    checks.add("abel transform of exp(-t) at 0 is sqrt(pi)", 1e-6, |_| {
        let q = q_from_phi(&FnProfile::new(|t: f64| (-t).exp(), 60.0), &Grid::uniform(0.0, 1.0, 1)?, cfg)?;
        Ok((q.values[0] - PI.sqrt()).abs())
    });
    checks.add("abel transform of the unit box at 0 is 2", 1e-6, |_| {
        let profile = FnProfile::new(|t: f64| if t <= 1.0 { 1.0 } else { 0.0 }, 1.0).with_breakpoints(vec![1.0]);
        let q = q_from_phi(&profile, &Grid::uniform(0.0, 1.0, 1)?, cfg)?;
        Ok((q.values[0] - 2.0).abs())
    });
    checks.add("g from Q composes with 4 sinh^2(u/2)", 1e-6, |_| {
        let exp = FnProfile::new(|t: f64| (-t).exp(), 60.0);
        let q = q_from_phi(&exp, &Grid::linspace(0.0, 4.0, 801)?, cfg)?;
        let g = g_from_q(&q, &Grid::uniform(1.0, 1.0, 1)?)?;
        let v = 1f64.exp() + (-1f64).exp() - 2.0;
        let direct = q_from_phi(&exp, &Grid::uniform(v, 1.0, 1)?, cfg)?;
        Ok((g.values[0] - direct.values[0]).abs())
    });
    checks.add("abel round trip exp(-t) on [0, 5]", 1e-4, |_| {
        let q = q_from_phi(&FnProfile::new(|t: f64| (-t).exp(), 40.0), &Grid::linspace(0.0, 40.0, 8001)?, cfg)?;
        let t = Grid::linspace(0.0, 5.0, 51)?;
        let phi = phi_recovery(&q, &t, cfg)?;
        Ok(max_dev(t.points().zip(&phi.values), |t| (-t).exp()))
    });
    checks.add("abel round trip (1-t)_+^2 on [0, 1]", 1e-4, |_| {
        let bump = |t: f64| if t < 1.0 { (1.0 - t).powi(2) } else { 0.0 };
        let q = q_from_phi(&FnProfile::new(bump, 1.0), &Grid::linspace(0.0, 1.5, 1501)?, cfg)?;
        let t = Grid::linspace(0.0, 1.0, 21)?;
        let phi = phi_recovery(&q, &t, cfg)?;
        Ok(max_dev(t.points().zip(&phi.values), bump))
    });
}

fn functional_eq(checks: &mut Checks, cfg: &QuadratureConfig) {
    let sig = |g: u32, cones: &[u32]| OrbifoldSignature::new(g, cones.to_vec());
    checks.add("rhs (2;) at s = 1/2 is 0", 1e-14, |_| Ok(functional_eq_rhs(&sig(2, &[])?, c(0.5))?.norm()));
    checks.add("rhs (2;) at s = 3/4 is pi", 1e-12, |_| {
        Ok((functional_eq_rhs(&sig(2, &[])?, c(0.75))? - PI).norm())
    });
    let corpus: [(u32, &[u32]); 5] = [(0, &[2, 3, 7]), (0, &[3, 3, 4]), (1, &[2]), (0, &[2, 2, 2, 3]), (2, &[5, 6])];
    for (g, cones) in corpus {
        for n in [1u64, 2, 3] {
            checks.add(format!("antiderivative to N + 1/2 equals -log|R(0)| for ({g}; {cones:?}), N = {n}"), 1e-7, |_| {
                let s = sig(g, cones)?;
                let v = functional_eq_antiderivative(&s, n as f64, cfg)?;
                Ok((v - (identity_term_closed(&s, n)? + elliptic_term_total(&s, n)?)).abs())
            });
        }
    }
    for x in [0.1, 0.3, 0.45, 0.55, 0.8, 0.97, 1.25] {
        checks.add(format!("no-elliptic specialisation at s = {}", 0.5 + x), 1e-8, |_| {
            let s = sig(2, &[])?;
            let lhs = functional_eq_antiderivative(&s, x, cfg)?;
            Ok((lhs - area(&s) * tan_moment_by_parts(x, cfg)?).abs())
        });
    }
    checks.add("plain integral of rhs over [1/2, 9/10] off the pole", 1e-8, |_| {
        let s = sig(2, &[])?;
        let plain = functional_eq_rhs_integral(&s, 0.5, 0.9, cfg)?;
        Ok((plain - area(&s) * tan_moment_by_parts(0.4, cfg)?).abs())
    });
    checks.add("tan moment over a full period is -log 2 / pi", 1e-10, |_| {
        Ok((tan_moment_by_parts(1.0, cfg)? + LN_2 / PI).abs())
    });
}

const S_GRID: [f64; 5] = [0.8, 1.3, 1.7, 2.2, 2.9];
const BETA_GRID: [f64; 5] = [0.7, 1.2, 1.9, 2.6, 3.3];

fn residues(checks: &mut Checks, cfg: &QuadratureConfig) {
    for s in S_GRID {
        for b in BETA_GRID {
            checks.add(format!("partial fractions s = {s}, beta = {b}"), 1e-6, |tol| {
                Ok(identity_term_partial_fraction(c(s), c(b), 2000, tol, cfg)?.discrepancy())
            });
        }
    }
    for (label, theta) in [("pi/2", PI / 2.0), ("pi/3", PI / 3.0), ("pi/5", PI / 5.0), ("pi/7", PI / 7.0)] {
        for s in S_GRID {
            for b in BETA_GRID {
                checks.add(format!("residue expansion theta = {label}, s = {s}, beta = {b}"), 1e-6, |tol| {
                    Ok(elliptic_residue_expansion(theta, c(s), c(b), 2000, tol, cfg)?.discrepancy())
                });
            }
        }
    }
    let points = [
        c(0.1),
        c(0.25),
        c(0.4),
        c(0.5),
        c(0.7),
        c(1.3),
        c(2.6),
        c(-0.6),
        Complex64::new(0.9, 0.3),
        Complex64::new(0.3, -1.2),
    ];
    for s in points {
        checks.add(format!("cotangent series at s = {s}"), 1e-7, |tol| {
            Ok(cot_series_identity(s, 1000, tol)?.discrepancy())
        });
    }
}

fn ruelle_torsion(checks: &mut Checks, (a, b): (u64, u64), cfg: &QuadratureConfig) {
    let closed_tol = checks.tol(CLOSED_FORM_TOL);
    let quad_tol = checks.tol(QUADRATURE_ROUTE_TOL);
    let cases: Vec<(OrbifoldSignature, u64)> = enumerate_signatures(2, 3, 7)
        .into_iter()
        .flat_map(|s| (a..=b).map(move |n| (s.clone(), n)))
        .collect();
    let results: Vec<Vec<Check>> = cases
        .par_iter()
        .map(|(sig, n)| {
            let mut out = Vec::new();
            let mut routes = vec![Route::Closed, Route::Residue];
            if *n <= VERIFY_QUADRATURE_MAX_N {
                routes.push(Route::Quadrature);
            }
            let report = RuelleZeroReport::compute(sig, *n, &routes, cfg);
            let closed = report.as_ref().map_err(Clone::clone).and_then(|r| {
                let tor = log_torsion_closed(sig, *n)?;
                let cl = r.log_abs_closed.unwrap_or(f64::NAN);
                let re = r.log_abs_residue.unwrap_or(f64::NAN);
                Ok((cl - tor).abs().max((re - cl).abs()))
            });
            out.push(make_check(format!("log|R(0)| = log Tor for {sig}, N = {n}"), closed_tol, closed));
            if *n <= VERIFY_QUADRATURE_MAX_N {
                let quad = report.as_ref().map_err(Clone::clone).map(|r| {
                    (r.log_abs_quadrature.unwrap_or(f64::NAN) - r.log_abs_closed.unwrap_or(f64::NAN)).abs()
                });
                out.push(make_check(format!("quadrature route for {sig}, N = {n}"), quad_tol, quad));
            }
            out
        })
        .collect();
    checks.list.extend(results.into_iter().flatten());
}
