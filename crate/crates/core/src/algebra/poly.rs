//! Dense univariate polynomials and rational functions over a coefficient
//! ring (in practice λ-series).

use super::ring::Coeff;
use super::scalar::ExactScalar;
use super::AlgebraError;

/// `c_0 + c_1 z + … + c_n z^n`, stored low to high with no trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `z + a`.
    pub fn linear(a: C) -> Self {
        Self::new(vec![a, C::one()])
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k).add(&o.coeff(k))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(C::neg).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.scale(s)).collect())
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut acc = Self::constant(C::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&ExactScalar::from_int(k as i64)))
                .collect(),
        )
    }

    /// `p(-z)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { c.neg() } else { c.clone() })
                .collect(),
        )
    }

    pub fn eval(&self, x: &C) -> C {
        self.eval_in(x, C::clone)
    }

    /// Horner evaluation in an extension ring.
    pub fn eval_in<F: Coeff>(&self, x: &F, lift: impl Fn(&C) -> F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&lift(c));
        }
        acc
    }

    /// Remainder modulo a polynomial with invertible leading coefficient.
    pub fn rem(&self, m: &Self) -> Result<Self, AlgebraError> {
        let dm = m.degree().ok_or(AlgebraError::DivisionByZero)?;
        let lead_inv = m.coeffs[dm].try_inv()?;
        let mut r = self.coeffs.clone();
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top].mul(&lead_inv);
            if !c.is_zero() {
                for (j, mj) in m.coeffs.iter().enumerate() {
                    let slot = &mut r[top - dm + j];
                    *slot = slot.sub(&c.mul(mj));
                }
            }
            r.pop();
        }
        Ok(Self::new(r))
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

/// Quotient `num / den` of polynomials, kept unreduced.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc<C> {
    pub num: Poly<C>,
    pub den: Poly<C>,
}

impl<C: Coeff> RatFunc<C> {
    pub fn new(num: Poly<C>, den: Poly<C>) -> Result<Self, AlgebraError> {
        if den.degree().is_none() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: Poly<C>) -> Self {
        RatFunc {
            num: p,
            den: Poly::constant(C::one()),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        RatFunc {
            num: self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        RatFunc {
            num: self.num.mul(&o.num),
            den: self.den.mul(&o.den),
        }
    }

    pub fn derivative(&self) -> Self {
        RatFunc {
            num: self
                .num
                .derivative()
                .mul(&self.den)
                .sub(&self.num.mul(&self.den.derivative())),
            den: self.den.mul(&self.den),
        }
    }

    pub fn reflect(&self) -> Self {
        RatFunc {
            num: self.num.reflect(),
            den: self.den.reflect(),
        }
    }

    pub fn eval_in<F: Coeff>(&self, x: &F, lift: impl Fn(&C) -> F) -> Result<F, AlgebraError> {
        let n = self.num.eval_in(x, &lift);
        let d = self.den.eval_in(x, &lift);
        n.try_div(&d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly<ExactScalar> {
        Poly::new(cs.iter().map(|&c| ExactScalar::from_int(c)).collect())
    }

    #[test]
    fn remainder_and_eval() {
        let a = p(&[1, 2, 3, 4]);
        let m = p(&[-1, 0, 1]);
        let r = a.rem(&m).unwrap();
        assert_eq!(r, p(&[4, 6]));
        assert_eq!(a.eval(&ExactScalar::from_int(1)), ExactScalar::from_int(10));
    }

    #[test]
    fn reflect_and_derivative() {
        let a = p(&[1, 2, 3]);
        assert_eq!(a.reflect(), p(&[1, -2, 3]));
        assert_eq!(a.derivative(), p(&[2, 6]));
    }

    #[test]
    fn ratfunc_derivative() {
        let f = RatFunc::new(p(&[1]), p(&[0, 1])).unwrap();
        let v = f
            .derivative()
            .eval_in(&ExactScalar::from_int(2), ExactScalar::clone)
            .unwrap();
        assert_eq!(v, ExactScalar::ratio(-1, 4));
    }
}
