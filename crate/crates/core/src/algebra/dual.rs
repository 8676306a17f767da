//! Forward-mode dual numbers `v + d·δ` with `δ² = 0`.

use super::ring::Coeff;
use super::scalar::ExactScalar;
use super::AlgebraError;

/// A value together with its first derivative along one direction.
#[derive(Clone, PartialEq, Debug)]
pub struct Dual<C> {
    pub v: C,
    pub d: C,
}

impl<C: Coeff> Dual<C> {
    pub fn new(v: C, d: C) -> Self {
        Dual { v, d }
    }

    /// A constant, derivative zero.
    pub fn constant(v: C) -> Self {
        Dual { v, d: C::zero() }
    }

    /// The seeded variable itself, derivative one.
    pub fn variable(v: C) -> Self {
        Dual { v, d: C::one() }
    }
}

impl<C: Coeff> Coeff for Dual<C> {
    fn zero() -> Self {
        Dual::constant(C::zero())
    }
    fn one() -> Self {
        Dual::constant(C::one())
    }
    fn is_zero(&self) -> bool {
        self.v.is_zero() && self.d.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Dual::new(self.v.add(&o.v), self.d.add(&o.d))
    }
    fn sub(&self, o: &Self) -> Self {
        Dual::new(self.v.sub(&o.v), self.d.sub(&o.d))
    }
    fn mul(&self, o: &Self) -> Self {
        Dual::new(
            self.v.mul(&o.v),
            self.v.mul(&o.d).add(&self.d.mul(&o.v)),
        )
    }
    fn neg(&self) -> Self {
        Dual::new(self.v.neg(), self.d.neg())
    }
    fn try_inv(&self) -> Result<Self, AlgebraError> {
        let iv = self.v.try_inv()?;
        let d = self.d.mul(&iv).mul(&iv).neg();
        Ok(Dual::new(iv, d))
    }
    fn from_scalar(s: &ExactScalar) -> Self {
        Dual::constant(C::from_scalar(s))
    }
    fn try_sqrt(&self) -> Result<Self, AlgebraError> {
        let r = self.v.try_sqrt()?;
        let d = self.d.try_div(&r.add(&r))?;
        Ok(Dual::new(r, d))
    }
    fn scale(&self, s: &ExactScalar) -> Self {
        Dual::new(self.v.scale(s), self.d.scale(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactScalar {
        ExactScalar::ratio(n, d)
    }

    #[test]
    fn product_and_quotient_rules() {
        let x = Dual::variable(q(3, 2));
        let f = x.mul(&x).mul(&x);
        assert_eq!(f.d, q(27, 4));
        let g = x.try_inv().unwrap();
        assert_eq!(g.d, q(-4, 9));
    }

    #[test]
    fn sqrt_derivative() {
        let x = Dual::variable(q(9, 4));
        let r = x.try_sqrt().unwrap();
        assert_eq!(r.v, q(3, 2));
        assert_eq!(r.d, q(1, 3));
    }
}
