//! Working-precision management. Laurent divisions lose λ-orders, so a
//! computation is rerun at a larger internal order until its output is known
//! to the requested order.

use crate::algebra::{AlgebraError, Coeff, Series};
use crate::error::{QkmError, Result};

pub trait Known {
    /// λ-order below which every coefficient is known.
    fn known_to(&self) -> i64;
}

impl<K: Coeff> Known for Series<K> {
    fn known_to(&self) -> i64 {
        self.raw_order()
    }
}

impl<T: Known> Known for Vec<T> {
    fn known_to(&self) -> i64 {
        self.iter().map(Known::known_to).min().unwrap_or(i64::MAX)
    }
}

impl<A: Known, B: Known> Known for (A, B) {
    fn known_to(&self) -> i64 {
        self.0.known_to().min(self.1.known_to())
    }
}

impl<A: Known, B: Known, C: Known> Known for (A, B, C) {
    fn known_to(&self) -> i64 {
        self.0.known_to().min(self.1.known_to()).min(self.2.known_to())
    }
}

const MARGINS: [i64; 7] = [2, 4, 7, 10, 14, 20, 28];

/// Runs `f(work)` with increasing working orders until the result is known
/// to `order`.
pub fn at_order<T: Known>(order: i64, mut f: impl FnMut(i64) -> Result<T>) -> Result<T> {
    let mut best = i64::MIN;
    for m in MARGINS {
        match f(order + m) {
            Ok(v) if v.known_to() >= order => return Ok(v),
            Ok(v) => best = best.max(v.known_to()),
            // A divisor whose known coefficients all vanish is a precision
            // shortfall as well.
            Err(QkmError::Algebra(
                AlgebraError::PrecisionExhausted { .. } | AlgebraError::DivisionByZero,
            )) => {}
            Err(e) => return Err(e),
        }
    }
    Err(QkmError::Precision {
        wanted: order,
        got: best,
    })
}
