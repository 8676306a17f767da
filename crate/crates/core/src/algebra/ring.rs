use std::fmt;

use super::scalar::ExactScalar;
use super::AlgebraError;

/// Exact commutative coefficient ring containing ℚ(i).
///
/// Implemented by [`ExactScalar`], by truncated series over any `Coeff`
/// (so series nest), and by forward-mode dual numbers.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn try_inv(&self) -> Result<Self, AlgebraError>;
    fn from_scalar(s: &ExactScalar) -> Self;

    /// Square root of a leading coefficient, when it exists in the ring.
    fn try_sqrt(&self) -> Result<Self, AlgebraError> {
        Err(AlgebraError::NoSquareRoot(format!("{self:?}")))
    }

    fn from_int(n: i64) -> Self {
        Self::from_scalar(&ExactScalar::from_int(n))
    }

    fn scale(&self, s: &ExactScalar) -> Self {
        self.mul(&Self::from_scalar(s))
    }

    fn try_div(&self, o: &Self) -> Result<Self, AlgebraError> {
        Ok(self.mul(&o.try_inv()?))
    }

    fn powi(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Integer power, negative exponents via inversion.
    fn try_pow(&self, k: i32) -> Result<Self, AlgebraError> {
        if k >= 0 {
            Ok(self.powi(k as u32))
        } else {
            Ok(self.try_inv()?.powi((-k) as u32))
        }
    }
}
