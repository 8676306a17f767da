//! Sums over ramification points, `Σ_i f(β_i)`, through two interchangeable
//! backends: the quotient ring `L[x]/P` (any `d`), and explicit h-series
//! roots (`d = 1`).

use std::sync::Arc;

use super::branch::{lift_h, to_lambda, BranchD1, H};
use super::{Curve, Deformation, SpectralError, L};
use crate::algebra::{AlgebraError, Coeff, QElem, RootSystem, Series};

/// Where a family of per-root values stops vanishing.
#[derive(Debug, Clone, PartialEq)]
pub struct Vanishing {
    /// Lowest λ-order with a nonzero value, if any.
    pub first_nonzero: Option<i64>,
    /// λ-order up to which the values are known.
    pub known_to: i64,
}

impl Vanishing {
    pub fn holds_to(&self, order: i64) -> bool {
        self.first_nonzero.is_none_or(|k| k >= order) && self.known_to >= order
    }
}

pub type RootFn<'a, F> = dyn Fn(&F) -> Result<F, AlgebraError> + 'a;
pub type RootVecFn<'a, F> = dyn Fn(&F) -> Result<Vec<F>, AlgebraError> + 'a;

pub trait RootSum<K: Coeff> {
    type F: Coeff;

    /// The curve over λ-series.
    fn base(&self) -> &Curve<L<K>>;

    /// The curve lifted to the ring in which the roots live.
    fn curve(&self) -> &Curve<Self::F>;

    fn lift(&self, s: &L<K>) -> Self::F;

    /// `Σ_i f(β_i)` as a λ-series.
    fn sum(&self, f: &RootFn<'_, Self::F>) -> Result<L<K>, AlgebraError>;

    /// Several sums `Σ_i f_j(β_i)` from one evaluation per root.
    fn sum_vec(&self, f: &RootVecFn<'_, Self::F>) -> Result<Vec<L<K>>, AlgebraError>;

    /// Checks `f(β_i) = 0` for every root.
    fn vanishing(&self, f: &RootFn<'_, Self::F>) -> Result<Vanishing, AlgebraError>;

    fn lift_scalar(&self, c: &K) -> Self::F {
        self.lift(&Series::constant(c.clone()))
    }
}

pub struct QuotientBackend<K: Coeff> {
    base: Curve<L<K>>,
    sys: Arc<RootSystem<L<K>>>,
    curve: Curve<QElem<L<K>>>,
}

impl<K: Coeff> QuotientBackend<K> {
    pub fn new(def: &Deformation<K>) -> Result<Self, SpectralError> {
        let base = def.curve();
        let sys = RootSystem::new(&def.p_poly())?;
        let curve = base.lift(|s| QElem::Scalar(s.clone()));
        Ok(QuotientBackend { base, sys, curve })
    }

    pub fn system(&self) -> &Arc<RootSystem<L<K>>> {
        &self.sys
    }
}

fn series_vanishing<K: Coeff>(vals: &[L<K>]) -> Vanishing {
    let first = vals.iter().filter_map(|s| s.valuation()).min();
    let known = vals.iter().map(|s| s.raw_order()).min().unwrap_or(i64::MAX);
    Vanishing {
        first_nonzero: first,
        known_to: known,
    }
}

impl<K: Coeff> RootSum<K> for QuotientBackend<K> {
    type F = QElem<L<K>>;

    fn base(&self) -> &Curve<L<K>> {
        &self.base
    }

    fn curve(&self) -> &Curve<Self::F> {
        &self.curve
    }

    fn lift(&self, s: &L<K>) -> Self::F {
        QElem::Scalar(s.clone())
    }

    fn sum(&self, f: &RootFn<'_, Self::F>) -> Result<L<K>, AlgebraError> {
        Ok(self.sys.trace(&f(&self.sys.root())?))
    }

    fn sum_vec(&self, f: &RootVecFn<'_, Self::F>) -> Result<Vec<L<K>>, AlgebraError> {
        Ok(f(&self.sys.root())?.iter().map(|v| self.sys.trace(v)).collect())
    }

    fn vanishing(&self, f: &RootFn<'_, Self::F>) -> Result<Vanishing, AlgebraError> {
        let v = f(&self.sys.root())?;
        Ok(series_vanishing(&v.coefficients(self.sys.degree())))
    }
}

pub struct HBackend<K: Coeff> {
    base: Curve<L<K>>,
    branch: BranchD1<K>,
    curve: Curve<H<K>>,
}

impl<K: Coeff> HBackend<K> {
    pub fn new(def: &Deformation<K>) -> Result<Self, SpectralError> {
        let branch = BranchD1::new(def)?;
        Ok(HBackend {
            base: def.curve(),
            curve: branch.curve(),
            branch,
        })
    }

    pub fn branch(&self) -> &BranchD1<K> {
        &self.branch
    }

    /// `Σ_± f(β_±)` as a raw h-series, before reading it back in λ.
    pub fn sum_h(&self, f: &RootFn<'_, H<K>>) -> Result<H<K>, AlgebraError> {
        let mut acc = Series::zero();
        for b in self.branch.betas() {
            acc = acc.checked_add(&f(b)?)?;
        }
        Ok(acc)
    }
}

impl<K: Coeff> RootSum<K> for HBackend<K> {
    type F = H<K>;

    fn base(&self) -> &Curve<L<K>> {
        &self.base
    }

    fn curve(&self) -> &Curve<Self::F> {
        &self.curve
    }

    fn lift(&self, s: &L<K>) -> Self::F {
        lift_h(s)
    }

    fn sum(&self, f: &RootFn<'_, Self::F>) -> Result<L<K>, AlgebraError> {
        let mut acc = Series::zero();
        for b in self.branch.betas() {
            acc = acc.checked_add(&f(b)?)?;
        }
        to_lambda(&acc)
    }

    fn sum_vec(&self, f: &RootVecFn<'_, Self::F>) -> Result<Vec<L<K>>, AlgebraError> {
        let mut acc: Vec<H<K>> = Vec::new();
        for b in self.branch.betas() {
            let v = f(b)?;
            if acc.is_empty() {
                acc = vec![Series::zero(); v.len()];
            }
            for (a, x) in acc.iter_mut().zip(&v) {
                *a = a.checked_add(x)?;
            }
        }
        acc.iter().map(to_lambda).collect()
    }

    fn vanishing(&self, f: &RootFn<'_, Self::F>) -> Result<Vanishing, AlgebraError> {
        let mut first: Option<i64> = None;
        let mut known = i64::MAX;
        for b in self.branch.betas() {
            let v = f(b)?;
            if let Some(k) = v.valuation() {
                let k = k.div_euclid(2);
                first = Some(first.map_or(k, |f| f.min(k)));
            }
            known = known.min(v.raw_order().div_euclid(2));
        }
        Ok(Vanishing {
            first_nonzero: first,
            known_to: known,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ExactScalar;
    use crate::spectral::{solve_deformation, SpectralInput};

    #[test]
    fn backends_agree_on_inverse_square_sum() {
        let def = solve_deformation(&SpectralInput::default(), 6).unwrap();
        let q = QuotientBackend::new(&def).unwrap();
        let h = HBackend::new(&def).unwrap();
        let z = Series::constant(ExactScalar::from_int(2));
        let zq = q.lift(&z);
        let zh = h.lift(&z);
        let a = q.sum(&|b| zq.sub(b).try_inv().map(|x| x.mul(&x))).unwrap();
        let b = h.sum(&|b| zh.sub(b).try_inv().map(|x| x.mul(&x))).unwrap();
        assert!(a.checked_sub(&b).unwrap().is_zero());
        assert!(a.order().unwrap() >= 5);
    }

    #[test]
    fn roots_annihilate_r_prime() {
        let inp = SpectralInput::from_ratios(&[(1, 2, 1), (1, 3, 2)], 5);
        let def = solve_deformation(&inp, 5).unwrap();
        let q = QuotientBackend::new(&def).unwrap();
        let c = q.curve().clone();
        let v = q.vanishing(&|b| c.rp(b)).unwrap();
        assert!(v.holds_to(3), "{v:?}");
    }
}
