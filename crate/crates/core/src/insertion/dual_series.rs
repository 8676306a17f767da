use crate::algebra::{Dual, ExactScalar, Series};
use crate::spectral::L;

/// A λ-series together with its `∂/∂e_b`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualSeries {
    pub value: L<ExactScalar>,
    pub deriv_b: L<ExactScalar>,
}

impl DualSeries {
    pub fn from_dual(s: &L<Dual<ExactScalar>>) -> Self {
        DualSeries {
            value: s.map_coeffs(|c| c.v.clone()),
            deriv_b: s.map_coeffs(|c| c.d.clone()),
        }
    }

    pub fn to_dual(&self) -> L<Dual<ExactScalar>> {
        let lo = self
            .value
            .valuation()
            .into_iter()
            .chain(self.deriv_b.valuation())
            .min()
            .unwrap_or(0);
        let hi = self.value.raw_order().min(self.deriv_b.raw_order());
        Series::from_fn(self.value.var(), lo, hi, |k| {
            Dual::new(self.value.coeff_unchecked(k), self.deriv_b.coeff_unchecked(k))
        })
    }
}

/// Derivative part of a dual-coefficient series.
pub fn deriv(s: &L<Dual<ExactScalar>>) -> L<ExactScalar> {
    s.map_coeffs(|c| c.d.clone())
}

/// Value part of a dual-coefficient series.
pub fn value(s: &L<Dual<ExactScalar>>) -> L<ExactScalar> {
    s.map_coeffs(|c| c.v.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Coeff, Var};
    use proptest::prelude::*;

    fn ds(v: &[i64], d: &[i64]) -> DualSeries {
        DualSeries {
            value: Series::from_ints(Var::Lambda, 0, v, 4),
            deriv_b: Series::from_ints(Var::Lambda, 0, d, 4),
        }
    }

    proptest! {
        #[test]
        fn product_rule(a in proptest::collection::vec(-5i64..5, 4), b in proptest::collection::vec(-5i64..5, 4),
                        da in proptest::collection::vec(-5i64..5, 4), db in proptest::collection::vec(-5i64..5, 4)) {
            let x = ds(&a, &da);
            let y = ds(&b, &db);
            let p = DualSeries::from_dual(&x.to_dual().mul(&y.to_dual()));
            let want = x.value.checked_mul(&y.deriv_b).unwrap().checked_add(&x.deriv_b.checked_mul(&y.value).unwrap()).unwrap();
            prop_assert!(p.deriv_b.checked_sub(&want).unwrap().is_zero());
            prop_assert!(p.value.checked_sub(&x.value.checked_mul(&y.value).unwrap()).unwrap().is_zero());
        }
    }
}
