//! Cost-model calculators: the predicted time ratio between the two
//! algorithms and the size at which the asymptotically faster one wins.
//!
//! With Dijkstra modeled as `c1 * n * log n` and BMSSP as
//! `c2 * n * log^(2/3) n` on sparse graphs, the ratio is
//! `(c2 / c1) * log^(-1/3) n`, and BMSSP wins once `log^(1/3) n > c2 / c1`.
//! Logarithms are base 2.

use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum AnalysisError {
    #[error("theoretical ratio needs n >= 2, got {0}")]
    TooSmall(f64),
    #[error("constant ratio must be a positive finite number, got {0}")]
    BadConstantRatio(f64),
    #[error("exponent range {p_min}..={p_max} must satisfy 1 <= min <= max <= 63")]
    BadExponentRange { p_min: u32, p_max: u32 },
}

/// `log2(n)^(-1/3)`: predicted BMSSP/Dijkstra time ratio with equal constants.
pub fn theoretical_ratio(n: f64) -> Result<f64, AnalysisError> {
    // Also rejects NaN.
    if n.partial_cmp(&2.0).is_none_or(|o| o.is_lt()) {
        return Err(AnalysisError::TooSmall(n));
    }
    Ok(1.0 / n.log2().cbrt())
}

/// Smallest `n` with `log2(n)^(1/3) > c_ratio`, i.e. `n > 2^(c_ratio^3)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Threshold {
    pub c_ratio: f64,
    /// `c_ratio^3`: the threshold is the first integer above `2^exponent`.
    pub exponent: f64,
    /// Exact value when `exponent` is an integer (up to a size cap) or small
    /// enough for double precision.
    pub exact: Option<BigUint>,
    pub log10: f64,
}

impl Threshold {
    /// Nearest power of ten.
    pub fn order_of_magnitude(&self) -> i64 {
        self.log10.round() as i64
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(n) => write!(f, "{n}")?,
            None => write!(f, "2^{} (approx.)", self.exponent)?,
        }
        write!(
            f,
            " ~ 10^{} (log10 = {:.3})",
            self.order_of_magnitude(),
            self.log10
        )
    }
}

const MAX_EXACT_BITS: f64 = 65536.0;

pub fn crossover_threshold(c_ratio: f64) -> Result<Threshold, AnalysisError> {
    if !(c_ratio > 0.0 && c_ratio.is_finite()) {
        return Err(AnalysisError::BadConstantRatio(c_ratio));
    }
    let exponent = c_ratio.powi(3);
    let exact = if exponent.fract() == 0.0 && exponent <= MAX_EXACT_BITS {
        Some((BigUint::from(1u8) << exponent as u64) + 1u8)
    } else if exponent < 52.0 {
        Some(BigUint::from(first_integer_with_log2_above(exponent)))
    } else {
        None
    };
    let log10 = match &exact {
        Some(n) => log10_big(n),
        None => exponent * std::f64::consts::LOG10_2,
    };
    Ok(Threshold {
        c_ratio,
        exponent,
        exact,
        log10,
    })
}

/// Smallest integer `n >= 1` with `log2(n) > x`, for `0 <= x < 52`.
fn first_integer_with_log2_above(x: f64) -> u64 {
    let mut n = x.exp2().floor() as u64 + 1;
    while n > 1 && ((n - 1) as f64).log2() > x {
        n -= 1;
    }
    while (n as f64).log2() <= x {
        n += 1;
    }
    n
}

fn log10_big(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        return (n.iter_u64_digits().next().unwrap_or(0) as f64).log10();
    }
    // Keep the top 64 bits as the mantissa.
    let shift = bits - 64;
    let top = (n >> shift).iter_u64_digits().next().unwrap_or(0) as f64;
    top.log10() + shift as f64 * std::f64::consts::LOG10_2
}
