//! Symmetric-power representations `σ_n` of SL₂ and the images of the
//! distinguished elements `h`, `q_j`, `ℓ_j` of `π₁(Γ\PSL₂(ℝ))`.
//!
//! `σ_n` acts on homogeneous polynomials of degree `n-1` by
//! `(A·p)(x, y) = p(dx - by, -cx + ay)`. Matrices are written on the monomial
//! basis `x^{n-1}, x^{n-2}y, ..., y^{n-1}` with column `i` holding the image
//! of `x^{n-1-i} y^i`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logvalue::{LogValue, Sign};
use crate::orbifold::OrbifoldSignature;
use crate::trig::PiFraction;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sl2Matrix {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl Sl2Matrix {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let det = a * d - b * c;
        let scale = [a, b, c, d].iter().map(|z| z.norm()).fold(1.0, f64::max);
        if (det - 1.0).norm() > 1e-10 * scale * scale {
            return Err(Error::NotUnimodular {
                det: format!("{det}"),
            });
        }
        Ok(Sl2Matrix { a, b, c, d })
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Sl2Matrix::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Sl2Matrix {
            a: 1.0.into(),
            b: 0.0.into(),
            c: 0.0.into(),
            d: 1.0.into(),
        }
    }

    pub fn diag(lambda: Complex64) -> Self {
        Sl2Matrix {
            a: lambda,
            b: 0.0.into(),
            c: 0.0.into(),
            d: lambda.inv(),
        }
    }

    /// The hyperbolic element `diag(e^{ℓ/2}, e^{-ℓ/2})` of translation length `ℓ`.
    pub fn hyperbolic(length: f64) -> Self {
        Sl2Matrix::diag((0.5 * length).exp().into())
    }

    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Sl2Matrix {
            a: c.into(),
            b: (-s).into(),
            c: s.into(),
            d: c.into(),
        }
    }

    pub fn neg(&self) -> Self {
        Sl2Matrix {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }

    pub fn mul(&self, o: &Sl2Matrix) -> Self {
        Sl2Matrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Self {
        Sl2Matrix {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    /// One eigenvalue `λ`; the other is `1/λ`.
    pub fn eigenvalue(&self) -> Complex64 {
        let tr = self.trace();
        let disc = (tr * tr - 4.0).sqrt();
        let l1 = 0.5 * (tr + disc);
        let l2 = 0.5 * (tr - disc);
        if l1.norm() >= l2.norm() {
            l1
        } else {
            l2
        }
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Coefficients (index = power of y) of `(u x + v y)^m`.
fn linear_power(u: Complex64, v: Complex64, m: usize) -> Vec<Complex64> {
    (0..=m)
        .map(|l| binomial(m, l) * u.powu((m - l) as u32) * v.powu(l as u32))
        .collect()
}

/// Matrix of `σ_n(A)` on the monomial basis. Rejects `n = 0`.
pub fn sym_power_matrix(m: &Sl2Matrix, n: usize) -> Result<DMatrix<Complex64>> {
    if n == 0 {
        return Err(Error::InvalidN {
            n: 0,
            reason: "representation dimension must be at least 1".into(),
        });
    }
    let deg = n - 1;
    let mut out = DMatrix::zeros(n, n);
    for i in 0..n {
        // (d x - b y)^{deg - i} (-c x + a y)^i
        let left = linear_power(m.d, -m.b, deg - i);
        let right = linear_power(-m.c, m.a, i);
        for (l, &lc) in left.iter().enumerate() {
            for (t, &rc) in right.iter().enumerate() {
                out[(l + t, i)] += lc * rc;
            }
        }
    }
    Ok(out)
}

/// Multiset of eigenvalues of some matrix in `SL_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenSpectrum {
    values: Vec<Complex64>,
}

impl EigenSpectrum {
    /// Wraps `values`, checking that the multiset is closed under `λ ↦ 1/λ`.
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        let spec = EigenSpectrum { values };
        let inverted: Vec<_> = spec.values.iter().map(|z| z.inv()).collect();
        if !multiset_close(&spec.values, &inverted, 1e-9) {
            return Err(Error::InvalidConfig(
                "spectrum is not closed under inversion".into(),
            ));
        }
        Ok(spec)
    }

    /// Spectrum of `σ_n` applied to the rotation by `θ`:
    /// `e^{i(n-1-2j)θ}` for `j = 0..n`, with angles reduced exactly.
    pub fn of_rotation(theta: PiFraction, n: usize) -> Self {
        let values = (0..n)
            .map(|j| theta.scale(n as i64 - 1 - 2 * j as i64).expi())
            .collect();
        EigenSpectrum { values }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Multiset equality up to `tol · max(1, |λ|)` per eigenvalue.
    pub fn approx_eq(&self, other: &EigenSpectrum, tol: f64) -> bool {
        multiset_close(&self.values, &other.values, tol)
    }
}

fn multiset_close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    'outer: for x in a {
        let mut best: Option<(usize, f64)> = None;
        for (j, y) in b.iter().enumerate() {
            if used[j] {
                continue;
            }
            let dist = (x - y).norm();
            if best.is_none_or(|(_, d)| dist < d) {
                best = Some((j, dist));
            }
        }
        if let Some((j, dist)) = best {
            if dist <= tol * x.norm().max(1.0) {
                used[j] = true;
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// `{a^{n-1}, a^{n-3}, ..., a^{-(n-1)}}`: the eigenvalues of `σ_n(A)` when
/// `A` has eigenvalues `a^{±1}`.
pub fn sym_power_eigenvalues(a: Complex64, n: usize) -> EigenSpectrum {
    let values = (0..n)
        .map(|j| a.powi(n as i32 - 1 - 2 * j as i32))
        .collect();
    EigenSpectrum { values }
}

/// Conjugation-invariant data of `ρ(x)` for a distinguished element `x`:
/// `ρ(x)` is conjugate to the rotation by `angle` in SL₂.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElementImage {
    pub angle: PiFraction,
    /// Order of `ρ(x)` in SL₂.
    pub order: u64,
    pub spectrum: EigenSpectrum,
}

impl ElementImage {
    fn from_angle(angle: PiFraction) -> Self {
        ElementImage {
            angle,
            order: angle.order(),
            spectrum: EigenSpectrum::of_rotation(angle, 2),
        }
    }

    /// Spectrum of `ρ_{2N}(x) = σ_{2N}(ρ(x))`.
    pub fn spectrum_2n(&self, n_half: usize) -> EigenSpectrum {
        EigenSpectrum::of_rotation(self.angle, 2 * n_half)
    }
}

/// Images of the regular fiber `h`, the cone loops `q_j` and the
/// exceptional fibers `ℓ_j = q_j^{-1} h^{-1}` under the geometric
/// representation `ρ : π₁(M) → SL₂(ℝ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorImages {
    pub h: ElementImage,
    pub q: Vec<ElementImage>,
    pub ell: Vec<ElementImage>,
}

pub fn rep_on_generators(sig: &OrbifoldSignature) -> GeneratorImages {
    // ρ(h) = -1 is the rotation by π.
    let h_angle = PiFraction::new(1, 1);
    let q: Vec<_> = sig
        .cones()
        .iter()
        .map(|&a| ElementImage::from_angle(PiFraction::new(1 - a as i64, a as i64)))
        .collect();
    // rotation angles add under multiplication: ρ(q)^{-1} ρ(h)^{-1}
    let ell = q
        .iter()
        .map(|qi| ElementImage::from_angle(qi.angle.neg().add(h_angle.neg())))
        .collect();
    GeneratorImages {
        h: ElementImage::from_angle(h_angle),
        q,
        ell,
    }
}

/// `det(1 - A)` from the eigenvalues of `A`, as a sign and log-magnitude.
pub fn det_one_minus(spec: &EigenSpectrum) -> Result<LogValue> {
    let mut log_mag = 0.0;
    // running product, rescaled to unit modulus whenever it drifts far from 1
    let mut prod = Complex64::new(1.0, 0.0);
    for &lambda in spec.values() {
        let factor = Complex64::new(1.0, 0.0) - lambda;
        if factor.norm_sqr() <= 1e-24 * lambda.norm_sqr().max(1.0) {
            return Err(Error::DegenerateDeterminant {
                eigenvalue: format!("{lambda}"),
            });
        }
        prod *= factor;
        let m = prod.norm_sqr();
        if !(1e-200..=1e200).contains(&m) {
            let norm = m.sqrt();
            log_mag += norm.ln();
            prod /= norm;
        }
    }
    log_mag += prod.norm().ln();
    let phase = prod.arg().rem_euclid(2.0 * std::f64::consts::PI);
    let sign = if phase < 1e-8 || (2.0 * std::f64::consts::PI - phase) < 1e-8 {
        Sign::Positive
    } else if (phase - std::f64::consts::PI).abs() < 1e-8 {
        Sign::Negative
    } else {
        return Err(Error::NonRealDeterminant { phase });
    };
    Ok(LogValue::new(sign, log_mag))
}

/// The factor `det(1 - σ_{2N}(γ) e^{-sℓ})` of a closed orbit of length `ℓ`,
/// evaluated two ways.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalFactor {
    /// Determinant of the explicit `2N × 2N` matrix.
    pub via_matrix: Complex64,
    /// `∏_k (1 - e^{-(s-(2k-1)/2)ℓ})(1 - e^{-(s+(2k-1)/2)ℓ})`.
    pub via_product: Complex64,
}

pub fn local_ruelle_factor(length: f64, s: Complex64, n_half: usize) -> Result<LocalFactor> {
    if n_half == 0 {
        return Err(Error::InvalidN {
            n: 0,
            reason: "N must be at least 1".into(),
        });
    }
    let weight = (-s * length).exp();
    let sigma = sym_power_matrix(&Sl2Matrix::hyperbolic(length), 2 * n_half)?;
    let via_matrix = (DMatrix::identity(2 * n_half, 2 * n_half) - sigma * weight).determinant();

    let via_product = (1..=n_half)
        .map(|k| {
            let shift = (2 * k - 1) as f64 / 2.0;
            (1.0 - (-(s - shift) * length).exp()) * (1.0 - (-(s + shift) * length).exp())
        })
        .product();
    Ok(LocalFactor {
        via_matrix,
        via_product,
    })
}
