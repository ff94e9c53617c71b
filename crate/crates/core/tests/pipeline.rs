use std::f64::consts::{LN_2, PI};

use zetat_core::orbifold::enumerate_signatures;
use zetat_core::ruelle::{verify_ruelle_equals_torsion, Route, RuelleZeroReport};
use zetat_core::torsion::{log_torsion_closed, TorsionReport};
use zetat_core::{area, Error, OrbifoldSignature, QuadratureConfig};

fn sig(g: u32, cones: &[u32]) -> OrbifoldSignature {
    OrbifoldSignature::new(g, cones.to_vec()).unwrap()
}

/// Direct product `2^{-2N(2-2g-m)} ∏_j ∏_k (2 sin(π(2k-1)/(2α_j)))^{-2}`.
fn brute_log_torsion(g: u32, cones: &[u32], n: u64) -> f64 {
    let e = 2.0 - 2.0 * g as f64 - cones.len() as f64;
    let mut log = -2.0 * n as f64 * e * LN_2;
    for &a in cones {
        for k in 1..=n {
            let x = PI * (2 * k - 1) as f64 / (2.0 * a as f64);
            log -= 2.0 * (2.0 * x.sin()).abs().ln();
        }
    }
    log
}

#[test]
fn torsion_matches_direct_product() {
    for (g, cones) in [(0u32, &[2u32, 3, 7][..]), (0, &[3, 3, 4]), (1, &[2]), (2, &[]), (0, &[2, 2, 2, 3]), (3, &[11, 12])] {
        let s = sig(g, cones);
        for n in [1u64, 2, 5, 13, 40] {
            let v = log_torsion_closed(&s, n).unwrap();
            let oracle = brute_log_torsion(g, cones, n);
            assert!((v - oracle).abs() < 1e-11 * oracle.abs().max(1.0), "{s} N={n}: {v} vs {oracle}");
        }
    }
}

#[test]
fn ruelle_equals_torsion_on_small_corpus() {
    let cfg = QuadratureConfig::default();
    for s in enumerate_signatures(1, 3, 5) {
        for n in [1u64, 3, 20] {
            let r = verify_ruelle_equals_torsion(&s, n, &cfg).unwrap();
            assert_eq!(r.log_abs_quadrature.is_some(), n <= 16);
        }
    }
}

#[test]
fn area_from_gauss_bonnet() {
    // χ(0;2,3,7) = -1/42
    assert!((area(&sig(0, &[2, 3, 7])) - PI / 21.0).abs() < 1e-15);
    assert!((area(&sig(2, &[])) - 4.0 * PI).abs() < 1e-15);
}

#[test]
fn reports_serialise_with_stable_keys() {
    let t = TorsionReport::compute(&sig(0, &[2, 3, 7]), 1).unwrap();
    let v = serde_json::to_value(&t).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys.len(), 6);
    for k in ["genus", "cones", "N", "log_torsion", "leading_coeff", "limit"] {
        assert!(keys.contains(&k), "{k}");
    }
    let cfg = QuadratureConfig::default();
    let r = RuelleZeroReport::compute(&sig(2, &[]), 4, &[Route::Closed], &cfg).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert!(v["log_abs_residue"].is_null());
    assert!((v["log_abs_closed"].as_f64().unwrap() - 16.0 * LN_2).abs() < 1e-12);
}

#[test]
fn routes_parse_and_print() {
    for r in [Route::Closed, Route::Residue, Route::Quadrature] {
        assert_eq!(r.to_string().parse::<Route>().unwrap(), r);
    }
    assert!(matches!("exact".parse::<Route>(), Err(Error::InvalidConfig(_))));
}

#[test]
fn config_deserialises_partially() {
    let cfg: QuadratureConfig = serde_json::from_str(r#"{"pv_window": 0.01}"#).unwrap();
    assert_eq!(cfg.pv_window, 0.01);
    assert_eq!(cfg.abs_tol, QuadratureConfig::default().abs_tol);
    assert!(serde_json::from_str::<QuadratureConfig>(r#"{"window": 0.01}"#).is_err());
}

#[test]
fn invalid_inputs_are_rejected() {
    assert!(matches!(OrbifoldSignature::new(0, vec![2, 3, 6]), Err(Error::InvalidSignature(_))));
    assert!(matches!(OrbifoldSignature::new(1, vec![]), Err(Error::InvalidSignature(_))));
    assert!(matches!(OrbifoldSignature::new(0, vec![1, 3, 7]), Err(Error::InvalidSignature(_))));
    let s = sig(0, &[2, 3, 7]);
    assert!(matches!(log_torsion_closed(&s, 0), Err(Error::InvalidN { .. })));
    let cfg = QuadratureConfig::default();
    assert!(matches!(
        RuelleZeroReport::compute(&s, 65, &[Route::Quadrature], &cfg),
        Err(Error::QuadratureCapExceeded { .. })
    ));
}
