//! Trigonometry at rational multiples of π with exact argument reduction.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// `sin(π x)`, reduced so that the argument handed to `sin` lies in `[-π/2, π/2]`.
pub fn sin_pi(x: f64) -> f64 {
    // sin(π(n + t)) = (-1)^n sin(π t), |t| ≤ 1/2
    let n = x.round();
    let t = x - n;
    let s = (std::f64::consts::PI * t).sin();
    if n.rem_euclid(2.0) == 0.0 {
        s
    } else {
        -s
    }
}

/// `cos(π x)`, accurate in relative terms near the zeros `x = j + 1/2`.
pub fn cos_pi(x: f64) -> f64 {
    // cos(π(j + 1/2 + t)) = -(-1)^j sin(π t)
    let j = (x - 0.5).round();
    let t = x - 0.5 - j;
    let s = (std::f64::consts::PI * t).sin();
    if j.rem_euclid(2.0) == 0.0 {
        -s
    } else {
        s
    }
}

/// An angle `π·p/q`, stored as the reduced fraction `p/q ∈ (-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PiFraction {
    num: i64,
    den: i64,
}

impl PiFraction {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let r = Ratio::new(num, den);
        let (n, d) = (*r.numer(), *r.denom());
        // reduce mod 2 into (-1, 1]; shifting by multiples of d keeps n/d in lowest terms
        let mut n = n.mod_floor(&(2 * d));
        if n > d {
            n -= 2 * d;
        }
        PiFraction { num: n, den: d }
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    /// The angle in radians, in `(-π, π]`.
    pub fn radians(&self) -> f64 {
        std::f64::consts::PI * self.num as f64 / self.den as f64
    }

    /// `k · self`, reduced exactly.
    pub fn scale(&self, k: i64) -> Self {
        let num = (self.num as i128 * k as i128).rem_euclid(2 * self.den as i128) as i64;
        PiFraction::new(num, self.den)
    }

    pub fn add(&self, other: PiFraction) -> Self {
        let r = Ratio::new(self.num, self.den) + Ratio::new(other.num, other.den);
        PiFraction::new(*r.numer(), *r.denom())
    }

    pub fn neg(&self) -> Self {
        PiFraction::new(-self.num, self.den)
    }

    pub fn sin(&self) -> f64 {
        sin_pi(self.num as f64 / self.den as f64)
    }

    pub fn cos(&self) -> f64 {
        cos_pi(self.num as f64 / self.den as f64)
    }

    /// `e^{iθ}`.
    pub fn expi(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.cos(), self.sin())
    }

    /// Order of the rotation by this angle in SL₂ (the smallest `k ≥ 1`
    /// with `k·θ ∈ 2πℤ`).
    pub fn order(&self) -> u64 {
        // k p/q ∈ 2ℤ with gcd(p, q) = 1
        let q = self.den as u64;
        if self.num % 2 == 0 {
            q
        } else {
            2 * q
        }
    }

    /// Whether `self ≡ ±other`; rotations by `θ` and `-θ` are conjugate.
    pub fn eq_up_to_sign(&self, other: PiFraction) -> bool {
        *self == other || *self == other.neg()
    }
}

impl fmt::Display for PiFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num, self.den) {
            (0, _) => write!(f, "0"),
            (n, 1) => write!(f, "{n}π"),
            (1, d) => write!(f, "π/{d}"),
            (-1, d) => write!(f, "-π/{d}"),
            (n, d) => write!(f, "{n}π/{d}"),
        }
    }
}
