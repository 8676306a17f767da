//! The Bergman τ-function of the single-eigenvalue curve and the bipartite
//! combination `−½ ln τ_B + F⁽¹⁾`.
//!
//! `τ_B` is defined up to a constant by
//! `∂_{b_i} ln τ_B = (R⁗(β_i)/R″(β_i)² − R‴(β_i)²/R″(β_i)³)/24`, with
//! `b_i = R(β_i)`. With two branch points this integrates to
//! `ln τ_B = ¼ ln(b₁ − b₂) + const`. The normalisation `ln((b₁−b₂)/4)` is
//! checked against the same equation and reported separately.
//! Non-analytic pieces (`ln λ`, `ln i`) are kept as labels.

use serde::Serialize;

use crate::algebra::{Coeff, ExactScalar, Series, Var};
use crate::error::{QkmError, Result};
use crate::precision::{at_order, Known};
use crate::report::CheckResult;
use crate::spectral::{real_and_even, solve_deformation, to_lambda, BranchD1, Curve, SpectralInput, H, L};
use crate::table::{CoeffTable, SignConvention};

use super::f1;

type E = ExactScalar;

#[derive(Debug, Clone, Serialize)]
pub struct TauResult {
    /// `(b₁ − b₂)/4 = i h √ϱ̂`, compared through the ratio.
    pub quarter_difference: CheckResult,
    /// The λ-series part `½ ln ϱ̂` of `ln((b₁−b₂)/4)`.
    pub ln_tau_series: CoeffTable,
    /// Non-series pieces of `ln((b₁−b₂)/4)`.
    pub tags: Vec<String>,
    /// The defining equation with `ln τ_B = ¼ ln(b₁−b₂)`.
    pub ode: CheckResult,
    /// The defining equation with `ln τ_B = ln((b₁−b₂)/4)`.
    pub ode_quarter_log: CheckResult,
    /// Whether every assembled h-series was real and even.
    pub real_even: bool,
}

/// `d/dλ` of an h-series, `h² = λ`.
fn d_lambda(s: &H<E>) -> H<E> {
    s.derivative().shift(-1).scale(&E::ratio(1, 2))
}

/// `∂_{b} ln τ_B` at a ramification point.
fn tau_slope(c: &Curve<H<E>>, beta: &H<E>) -> Result<H<E>> {
    let r2 = c.r_deriv(2, beta)?;
    let r3 = c.r_deriv(3, beta)?;
    let r4 = c.r_deriv(4, beta)?;
    let a = r4.checked_div(&r2.powi(2))?;
    let b = r3.powi(2).checked_div(&r2.powi(3))?;
    Ok(a.checked_sub(&b)?.scale(&E::ratio(1, 24)))
}

struct TauSeries {
    ratio: L<E>,
    lhs: L<E>,
    rhs: L<E>,
    rho_log: L<E>,
    real_even: bool,
}

impl Known for TauSeries {
    fn known_to(&self) -> i64 {
        self.ratio
            .raw_order()
            .min(self.lhs.raw_order())
            .min(self.rhs.raw_order())
            .min(self.rho_log.raw_order())
    }
}

pub fn tau_d1(input: &SpectralInput, order: i64) -> Result<TauResult> {
    if input.d() != 1 {
        return Err(QkmError::Unsupported(format!(
            "the τ-function is computed at d = 1 only, got d = {}",
            input.d()
        )));
    }
    let ts = at_order(order + 1, |work| {
        let def = solve_deformation(input, work)?;
        let br = BranchD1::new(&def)?;
        let c = br.curve();
        let bp = c.r(&br.beta_plus)?;
        let bm = c.r(&br.beta_minus)?;
        let diff = bp.checked_sub(&bm)?;
        let root = br.rho_hat.sqrt()?.shift(1).mul_coeff(&E::i());
        let ratio_h = diff.scale(&E::ratio(1, 4)).checked_div(&root)?;
        let lhs_h = d_lambda(&diff).checked_div(&diff)?;
        let mut rhs_h: H<E> = Series::zero_in(Var::H);
        for (beta, b) in [(&br.beta_plus, &bp), (&br.beta_minus, &bm)] {
            rhs_h = rhs_h.checked_add(&tau_slope(&c, beta)?.checked_mul(&d_lambda(b))?)?;
        }
        let real_even = [&ratio_h, &lhs_h, &rhs_h].iter().all(|s| real_and_even(s));
        Ok(TauSeries {
            ratio: to_lambda(&ratio_h)?,
            lhs: to_lambda(&lhs_h)?,
            rhs: to_lambda(&rhs_h)?,
            rho_log: def.rho_hat()[0].log()?.scale(&E::ratio(1, 2)),
            real_even,
        })
    })?;
    let target = order + 1;
    let quarter = CheckResult::equal("tau_quarter_difference", 1, vec![], &ts.ratio, &Series::one(), target);
    let ode = CheckResult::equal(
        "tau_ode",
        1,
        vec![],
        &ts.lhs.scale(&E::ratio(1, 4)),
        &ts.rhs,
        target,
    );
    let ode_quarter_log = CheckResult::equal("tau_ode_quarter_log", 1, vec![], &ts.lhs, &ts.rhs, target);
    Ok(TauResult {
        quarter_difference: quarter,
        ln_tau_series: CoeffTable::from_series("ln tau_B series part", &ts.rho_log, 0, target, SignConvention::Lambda)?
            .with_note("ln((b1-b2)/4) = i*pi/2 + (1/2) ln(lambda) + (1/2) ln(rho_hat)"),
        tags: vec!["(1/2) ln(lambda)".into(), "i*pi/2".into()],
        ode,
        ode_quarter_log,
        real_even: ts.real_even,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BipartiteResult {
    /// `−¼ ln ϱ̂ + F⁽¹⁾`, the series part of `−½ ln((b₁−b₂)/4) + F⁽¹⁾`.
    pub direct: CoeffTable,
    /// `(1/12) Σ_n 3^{n+1}/(n+1) Σ_p C(2n+2, n−p)(1 − (−3)^{−p}) λ^{n+1}/(2e)^{2n+1}`.
    pub closed: CoeffTable,
    /// `direct − closed`.
    pub difference: CoeffTable,
    /// `direct − closed` with `λ^{n+1}` read as `(−λ)^{n+1}`.
    pub difference_minus_lambda: CoeffTable,
    pub tags: Vec<String>,
}

/// The double-sum series through `λ^order`.
pub fn bipartite_closed(e: &E, order: i64) -> Result<L<E>> {
    let two_e_inv = e.scale(&E::from_int(2)).inv()?;
    let mut coeffs = vec![E::zero()];
    for n in 0..order {
        let mut inner = E::zero();
        for p in 0..=n {
            // C(2n+2, n−p)
            let mut binom = E::one();
            for j in 0..(n - p) {
                binom = binom.mul(&E::ratio(2 * n + 2 - j, j + 1));
            }
            let m3 = E::from_int(-3).pow(p as u32).inv()?;
            inner = inner.add(&binom.mul(&E::one().sub(&m3)));
        }
        let c = inner
            .mul(&E::from_int(3).pow(n as u32 + 1))
            .scale(&E::ratio(1, 12 * (n + 1)))
            .mul(&two_e_inv.pow(2 * n as u32 + 1));
        coeffs.push(c);
    }
    Ok(Series::new(Var::Lambda, 0, coeffs, order + 1))
}

pub fn bipartite_f1(input: &SpectralInput, order: i64) -> Result<BipartiteResult> {
    if input.d() != 1 {
        return Err(QkmError::Unsupported("the bipartite combination needs d = 1".into()));
    }
    let f = f1(input, order)?;
    let rho = at_order(order + 1, |work| {
        Ok(solve_deformation(input, work)?.rho_hat()[0].log()?)
    })?;
    let direct = f.series.checked_sub(&rho.scale(&E::ratio(1, 4)))?;
    let closed = bipartite_closed(&input.e()[0], order)?;
    let flipped = Series::from_fn(Var::Lambda, 0, order + 1, |k| {
        let c = closed.coeff_unchecked(k);
        if k % 2 == 0 {
            c
        } else {
            c.neg()
        }
    });
    let tab = |q: &str, s: &L<E>| CoeffTable::from_series(q, s, 0, order + 1, SignConvention::Lambda);
    Ok(BipartiteResult {
        direct: tab("-1/4 ln rho_hat + F1", &direct)?,
        closed: tab("bipartite double sum", &closed)?,
        difference: tab("direct - closed", &direct.checked_sub(&closed)?)?,
        difference_minus_lambda: tab("direct - closed((-lambda))", &direct.checked_sub(&flipped)?)?,
        tags: vec!["-(1/4) ln(lambda)".into(), "-i*pi/4".into()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_at_d1() {
        let t = tau_d1(&SpectralInput::default(), 5).unwrap();
        assert!(t.quarter_difference.passed(), "{:?}", t.quarter_difference);
        assert!(t.ode.passed(), "{:?}", t.ode);
        assert!(!t.ode_quarter_log.passed());
        assert!(t.real_even);
        let s = t.ln_tau_series.to_series();
        assert_eq!(s.coeff(0).unwrap(), E::zero());
        assert_eq!(s.coeff(1).unwrap(), E::ratio(-1, 2));
    }

    #[test]
    fn tau_at_other_eigenvalue() {
        let inp = SpectralInput::from_ratios(&[(3, 2, 1)], 4);
        let t = tau_d1(&inp, 4).unwrap();
        assert!(t.ode.passed() && t.quarter_difference.passed());
    }

    #[test]
    fn closed_double_sum_coefficients() {
        let c = bipartite_closed(&E::ratio(1, 2), 6).unwrap();
        let want = [
            E::zero(),
            E::ratio(1, 2),
            E::ratio(20, 3),
            E::ratio(307, 4),
            E::ratio(4280, 5),
            E::ratio(56914, 6),
        ];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(&c.coeff(k as i64 + 1).unwrap(), w);
        }
    }

    #[test]
    fn direct_matches_under_minus_lambda_at_half() {
        let r = bipartite_f1(&SpectralInput::default(), 7).unwrap();
        assert!(r.difference_minus_lambda.coefficients().iter().all(|c| c.is_zero()));
        assert!(r.difference.coefficients().iter().any(|c| !c.is_zero()));
    }

    #[test]
    fn rejects_d2() {
        let inp = SpectralInput::from_ratios(&[(1, 2, 1), (1, 3, 2)], 4);
        assert!(tau_d1(&inp, 3).is_err());
        assert!(bipartite_f1(&inp, 3).is_err());
    }
}
