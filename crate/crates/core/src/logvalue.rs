//! Sign and log-magnitude representation of real numbers.
//!
//! Torsion values grow like `2^{4N}`; keeping only `ln|x|` and the sign lets
//! products over thousands of factors stay finite.

use std::fmt;
use std::ops::{Div, Mul};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    fn from_i8(v: i8) -> Self {
        match v.signum() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_i8(self.as_i8() * rhs.as_i8())
    }
}

/// A real number stored as `sign · exp(log_magnitude)`.
///
/// When `sign` is [`Sign::Zero`] the magnitude field is meaningless and is
/// normalised to `-inf`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogValue {
    sign: Sign,
    log_magnitude: f64,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue {
        sign: Sign::Zero,
        log_magnitude: f64::NEG_INFINITY,
    };

    pub const ONE: LogValue = LogValue {
        sign: Sign::Positive,
        log_magnitude: 0.0,
    };

    pub fn new(sign: Sign, log_magnitude: f64) -> Self {
        match sign {
            Sign::Zero => Self::ZERO,
            _ => LogValue { sign, log_magnitude },
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else if x > 0.0 {
            LogValue::new(Sign::Positive, x.ln())
        } else {
            LogValue::new(Sign::Negative, (-x).ln())
        }
    }

    /// A positive value given by its natural log.
    pub fn from_ln(log_magnitude: f64) -> Self {
        LogValue::new(Sign::Positive, log_magnitude)
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn ln_abs(&self) -> f64 {
        self.log_magnitude
    }

    pub fn is_zero(&self) -> bool {
        self.sign == Sign::Zero
    }

    /// Overflows to `±inf` when the magnitude exceeds `f64::MAX`.
    pub fn to_f64(&self) -> f64 {
        match self.sign {
            Sign::Zero => 0.0,
            Sign::Positive => self.log_magnitude.exp(),
            Sign::Negative => -self.log_magnitude.exp(),
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero LogValue");
        LogValue::new(self.sign, -self.log_magnitude)
    }

    pub fn powi(&self, exp: i64) -> Self {
        if exp == 0 {
            return Self::ONE;
        }
        if self.is_zero() {
            assert!(exp > 0, "negative power of zero LogValue");
            return Self::ZERO;
        }
        let sign = if self.sign == Sign::Negative && exp % 2 != 0 {
            Sign::Negative
        } else {
            Sign::Positive
        };
        LogValue::new(sign, self.log_magnitude * exp as f64)
    }
}

impl Mul for LogValue {
    type Output = LogValue;
    fn mul(self, rhs: LogValue) -> LogValue {
        let sign = self.sign * rhs.sign;
        LogValue::new(sign, self.log_magnitude + rhs.log_magnitude)
    }
}

impl Div for LogValue {
    type Output = LogValue;
    fn div(self, rhs: LogValue) -> LogValue {
        assert!(!rhs.is_zero(), "division by zero LogValue");
        let sign = self.sign * rhs.sign;
        LogValue::new(sign, self.log_magnitude - rhs.log_magnitude)
    }
}

impl std::iter::Product for LogValue {
    fn product<I: Iterator<Item = LogValue>>(iter: I) -> Self {
        iter.fold(LogValue::ONE, |acc, x| acc * x)
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Zero => write!(f, "0"),
            Sign::Positive => write!(f, "exp({})", self.log_magnitude),
            Sign::Negative => write!(f, "-exp({})", self.log_magnitude),
        }
    }
}
