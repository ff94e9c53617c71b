//! Closed hyperbolic 2-orbifolds and the Seifert fibration of their unit
//! tangent bundles.
//!
//! An orbifold is described by the genus of its underlying surface and the
//! orders of its cone points. Everything downstream (area, Seifert index,
//! torsion, zeta values) is a function of that signature alone.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational used for orbifold Euler characteristics.
pub type Rational = Ratio<i128>;

/// Genus plus cone orders of a closed hyperbolic orbifold.
///
/// Cone orders are kept sorted ascending, so equality is multiset equality.
/// Construction rejects orders below 2 and any signature with `χ^orb ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSignature", into = "RawSignature")]
pub struct OrbifoldSignature {
    genus: u32,
    cones: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct RawSignature {
    genus: u32,
    cones: Vec<u32>,
}

impl TryFrom<RawSignature> for OrbifoldSignature {
    type Error = Error;
    fn try_from(raw: RawSignature) -> Result<Self> {
        OrbifoldSignature::new(raw.genus, raw.cones)
    }
}

impl From<OrbifoldSignature> for RawSignature {
    fn from(sig: OrbifoldSignature) -> Self {
        RawSignature {
            genus: sig.genus,
            cones: sig.cones,
        }
    }
}

fn chi_orb_raw(genus: u32, cones: &[u32]) -> Rational {
    let mut chi = Rational::from_integer(2 - 2 * genus as i128);
    for &a in cones {
        chi -= Rational::new(a as i128 - 1, a as i128);
    }
    chi
}

impl OrbifoldSignature {
    pub fn new(genus: u32, mut cones: Vec<u32>) -> Result<Self> {
        if let Some(&bad) = cones.iter().find(|&&a| a < 2) {
            return Err(Error::InvalidSignature(format!(
                "cone order {bad} is below 2"
            )));
        }
        cones.sort_unstable();
        let chi = chi_orb_raw(genus, &cones);
        if chi >= Rational::zero() {
            return Err(Error::InvalidSignature(format!(
                "orbifold (g={genus}; {cones:?}) is not hyperbolic: chi_orb = {chi}"
            )));
        }
        Ok(OrbifoldSignature { genus, cones })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// Cone orders, ascending.
    pub fn cones(&self) -> &[u32] {
        &self.cones
    }

    /// Number of cone points `m`.
    pub fn cone_count(&self) -> usize {
        self.cones.len()
    }

    /// `2 - 2g - m`, the exponent of the regular-fiber factor in the torsion.
    pub fn fiber_exponent(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.cones.len() as i64
    }
}

impl fmt::Display for OrbifoldSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g={};cones=", self.genus)?;
        for (i, a) in self.cones.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for OrbifoldSignature {
    type Err = Error;

    /// Parses `g=INT;cones=INT,INT,...`. The cones clause may be omitted or
    /// left empty for orbifolds without cone points.
    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::SignatureParse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let mut genus = None;
        let mut cones = Vec::new();
        for clause in s.trim().split(';').filter(|c| !c.trim().is_empty()) {
            let (key, value) = clause
                .split_once('=')
                .ok_or_else(|| parse_err("expected key=value"))?;
            match key.trim() {
                "g" => {
                    genus = Some(
                        value
                            .trim()
                            .parse::<u32>()
                            .map_err(|_| parse_err("genus is not a nonnegative integer"))?,
                    )
                }
                "cones" => {
                    cones = value
                        .split(',')
                        .map(str::trim)
                        .filter(|v| !v.is_empty())
                        .map(|v| v.parse::<u32>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| parse_err("cone orders must be integers"))?;
                }
                other => return Err(parse_err(&format!("unknown key {other:?}"))),
            }
        }
        let genus = genus.ok_or_else(|| parse_err("missing g="))?;
        OrbifoldSignature::new(genus, cones)
    }
}

/// `χ^orb = 2 - 2g - Σ (α_j - 1)/α_j`, exactly.
pub fn euler_char_orb(sig: &OrbifoldSignature) -> Rational {
    chi_orb_raw(sig.genus, &sig.cones)
}

/// Hyperbolic area `-2π χ^orb` (Gauss–Bonnet).
pub fn area(sig: &OrbifoldSignature) -> f64 {
    let chi = euler_char_orb(sig);
    -2.0 * std::f64::consts::PI * chi.to_f64().expect("rational fits in f64")
}

/// Seifert invariants `(g; (1, b), (α_1, β_1), ...)` of `Γ\PSL₂(ℝ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertIndex {
    pub genus: u32,
    pub b0: (i64, i64),
    pub pairs: Vec<(i64, i64)>,
}

impl fmt::Display for SeifertIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; ({},{})", self.genus, self.b0.0, self.b0.1)?;
        for (a, b) in &self.pairs {
            write!(f, ", ({a},{b})")?;
        }
        write!(f, ")")
    }
}

pub fn seifert_index(sig: &OrbifoldSignature) -> SeifertIndex {
    SeifertIndex {
        genus: sig.genus,
        b0: (1, 2 * sig.genus as i64 - 2),
        pairs: sig
            .cones
            .iter()
            .map(|&a| (a as i64, a as i64 - 1))
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    /// Loop around the j-th cone point (1-based).
    Q(usize),
    /// Regular fiber.
    H,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Q(j) => write!(f, "q{j}"),
            Generator::H => write!(f, "h"),
        }
    }
}

/// A word `x_1^{e_1} x_2^{e_2} ...` in the generators of `π₁(M)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberWord {
    pub letters: Vec<(Generator, i32)>,
}

impl fmt::Display for FiberWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (g, e)) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

/// The exceptional fiber over cone point j is `q_j^{-1} h^{-1}`.
pub fn exceptional_fibers(sig: &OrbifoldSignature) -> Vec<FiberWord> {
    (1..=sig.cone_count())
        .map(|j| FiberWord {
            letters: vec![(Generator::Q(j), -1), (Generator::H, -1)],
        })
        .collect()
}

/// All hyperbolic signatures with `genus ≤ max_genus`, at most `max_cones`
/// cone points and cone orders in `2..=max_order`, sorted by genus and then
/// by the (ascending) cone list.
pub fn enumerate_signatures(max_genus: u32, max_cones: usize, max_order: u32) -> Vec<OrbifoldSignature> {
    fn extend(
        genus: u32,
        prefix: &mut Vec<u32>,
        remaining: usize,
        min_order: u32,
        max_order: u32,
        out: &mut Vec<OrbifoldSignature>,
    ) {
        if chi_orb_raw(genus, prefix) < Rational::zero() {
            out.push(OrbifoldSignature {
                genus,
                cones: prefix.clone(),
            });
        }
        if remaining == 0 {
            return;
        }
        for a in min_order..=max_order {
            prefix.push(a);
            extend(genus, prefix, remaining - 1, a, max_order, out);
            prefix.pop();
        }
    }

    let mut out = Vec::new();
    for genus in 0..=max_genus {
        extend(genus, &mut Vec::new(), max_cones, 2, max_order, &mut out);
    }
    out.sort();
    out
}
