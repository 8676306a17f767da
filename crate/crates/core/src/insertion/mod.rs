//! Boundary creation `T̂_b = −(N/r_b)∂/∂e_b`, genus-zero correlators and the
//! identities used to move derivatives through the spectral curve.

pub mod correlators;
mod dual_series;
pub mod identities;

pub use correlators::{omega02, omega02_diag, omega03, omega03_diag};
pub use dual_series::{deriv, value, DualSeries};

use crate::algebra::{Coeff, Dual, ExactScalar, Series, Var};
use crate::error::{QkmError, Result};
use crate::precision::at_order;
use crate::spectral::{
    solve_deformation_seeded, Deformation, QuotientBackend,
    RootSum, SpectralInput, L,
};
use crate::table::CoeffTable;

/// `∂ε_k/∂e_b` and `∂ϱ_k/∂e_b` for all `k`.
#[derive(Debug, Clone)]
pub struct DeformationDerivatives {
    pub b: usize,
    pub d_eps: Vec<L<ExactScalar>>,
    pub d_rho: Vec<L<ExactScalar>>,
}

/// Differentiates the defining equations of the deformation along `e_b` by
/// solving them over dual numbers.
pub fn deformation_derivatives(
    input: &SpectralInput,
    b: usize,
    order: i64,
) -> Result<DeformationDerivatives> {
    let def = solve_deformation_seeded(input, b, order)?;
    Ok(DeformationDerivatives {
        b,
        d_eps: def.eps.iter().map(deriv).collect(),
        d_rho: def.rho.iter().map(deriv).collect(),
    })
}

/// Derivative parts of the seeded residuals `R(ε_k) − e_k` and
/// `ϱ_kR′(ε_k) − r_k`; all vanish when the derivatives are consistent.
pub fn derivative_residuals(def: &Deformation<Dual<ExactScalar>>) -> Result<Vec<L<ExactScalar>>> {
    let mut out = Vec::new();
    for (a, c) in def.residuals()? {
        out.push(deriv(&a));
        out.push(deriv(&c));
    }
    Ok(out)
}

/// `∂ε_a/∂e_b` from the closed form
/// `δ_ab/R′(ε_a) − (λ/N)(r_b/R′(ε_b)) Σ_i ω(β_i)/((ε_a−β_i)R′(−β_i)R″(β_i))`,
/// `ω(β) = 1/(β+ε_b)² + 1/(β−ε_b)²`.
pub fn eps_derivative_closed(def: &Deformation<ExactScalar>, b: usize) -> Result<Vec<L<ExactScalar>>> {
    let be = QuotientBackend::new(def)?;
    let c = be.base().clone();
    let fc = be.curve().clone();
    let eb = be.lift(&def.eps[b]);
    let rpb = c.rp(&def.eps[b])?;
    let pref = c
        .lambda
        .scale(&ExactScalar::ratio(def.r[b] as i64, def.n as i64))
        .checked_div(&rpb)?;
    let mut out = Vec::new();
    for a in 0..def.d() {
        let ea = be.lift(&def.eps[a]);
        let s = be.sum(&|beta| {
            let p = beta.add(&eb).try_inv()?;
            let m = beta.sub(&eb).try_inv()?;
            let w = p.mul(&p).add(&m.mul(&m));
            let den = ea
                .sub(beta)
                .mul(&fc.rp(&beta.neg())?)
                .mul(&fc.r_deriv(2, beta)?);
            w.try_div(&den)
        })?;
        let mut v = pref.checked_mul(&s)?.neg_series();
        if a == b {
            v = v.checked_add(&c.rp(&def.eps[a])?.inv()?)?;
        }
        out.push(v);
    }
    Ok(out)
}

/// `∂ε/∂e` of `ε = (4e + √(4e²+12λ))/6`, i.e. `(2/3)(1 + e/√(4e²+12λ))`
/// at `N = r`.
pub fn d1_eps_derivative_closed(e: &ExactScalar, order: i64) -> Result<L<ExactScalar>> {
    let q = |a: i64, b: i64| ExactScalar::ratio(a, b);
    let disc = Series::new(Var::Lambda, 0, vec![e.mul(e).scale(&q(4, 1)), q(12, 1)], order);
    let inv = disc.sqrt()?.inv()?;
    Ok(Series::one()
        .checked_add(&inv.mul_coeff(e))?
        .scale(&q(2, 3))
        .truncate(order))
}

/// Applies `T̂_b` to a quantity built from a seeded deformation.
pub fn create<F>(input: &SpectralInput, b: usize, order: i64, f: F) -> Result<L<ExactScalar>>
where
    F: Fn(&Deformation<Dual<ExactScalar>>) -> Result<L<Dual<ExactScalar>>>,
{
    let s = ExactScalar::ratio(-(input.big_n() as i64), input.r()[b] as i64);
    at_order(order, |work| {
        let def = solve_deformation_seeded(input, b, work)?;
        Ok(deriv(&f(&def)?).scale(&s))
    })
}

/// `T̂ = −∂/∂e` on a `d = 1` table graded by `λ^n (2e)^{−m}`:
/// `c ↦ 2m·c` with `m ↦ m+1`.
pub fn creation_d1(t: &CoeffTable) -> Result<CoeffTable> {
    let mut out = t.clone();
    for e in &mut out.entries {
        let m = e.weight.ok_or_else(|| {
            QkmError::Unsupported(format!("{} carries no (2e)-grading", t.quantity))
        })?;
        e.coefficient = e.coefficient.scale(&ExactScalar::from_int(2 * m));
        e.weight = Some(m + 1);
    }
    out.quantity = format!("T({})", t.quantity);
    Ok(out)
}

/// `−4λ∂_λ` at `2e = 1`, the one-matrix-model form of the creation operator.
pub fn creation_one_matrix(s: &L<ExactScalar>) -> L<ExactScalar> {
    s.derivative().shift(1).scale(&ExactScalar::from_int(-4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::solve_deformation;
    use crate::table::SignConvention;

    #[test]
    fn derivatives_vanish_at_lambda_zero_offdiagonal() {
        let inp = SpectralInput::from_ratios(&[(1, 2, 1), (1, 3, 2)], 5);
        let dd = deformation_derivatives(&inp, 0, 5).unwrap();
        assert_eq!(dd.d_eps[0].coeff(0).unwrap(), ExactScalar::from_int(1));
        assert_eq!(dd.d_eps[1].coeff(0).unwrap(), ExactScalar::from_int(0));
        assert_eq!(dd.d_rho[0].coeff(0).unwrap(), ExactScalar::from_int(0));
        let def = solve_deformation_seeded(&inp, 0, 5).unwrap();
        for r in derivative_residuals(&def).unwrap() {
            assert!(r.truncate(4).is_zero(), "{r}");
        }
    }

    #[test]
    fn d1_derivative_matches_closed_form() {
        let inp = SpectralInput::default();
        let dd = deformation_derivatives(&inp, 0, 8).unwrap();
        let want = d1_eps_derivative_closed(&ExactScalar::ratio(1, 2), 8).unwrap();
        assert!(dd.d_eps[0].checked_sub(&want).unwrap().is_zero());
    }

    #[test]
    fn appendix_formula_for_eps_derivative() {
        let inp = SpectralInput::from_ratios(&[(1, 2, 1), (1, 3, 2)], 6);
        for b in 0..2 {
            let dd = deformation_derivatives(&inp, b, 12).unwrap();
            let def = solve_deformation(&inp, 12).unwrap();
            let cf = eps_derivative_closed(&def, b).unwrap();
            for a in 0..2 {
                let diff = dd.d_eps[a].checked_sub(&cf[a]).unwrap();
                assert!(diff.truncate(6).is_zero(), "a={a} b={b}: {diff}");
            }
        }
    }

    #[test]
    fn creation_on_graded_table() {
        let s = Series::from_ints(Var::Lambda, 0, &[0, -1], 2).scale(&ExactScalar::ratio(1, 4));
        let t = CoeffTable::from_series("F1", &s, 0, 2, SignConvention::Lambda).unwrap().with_weights(2, 0);
        let out = creation_d1(&t).unwrap();
        assert_eq!(out.get(1).unwrap(), &ExactScalar::from_int(-1));
        assert_eq!(out.get(0).unwrap(), &ExactScalar::from_int(0));
        let ungraded = CoeffTable::from_series("F1", &s, 0, 2, SignConvention::Lambda).unwrap();
        assert!(creation_d1(&ungraded).is_err());
    }
}
