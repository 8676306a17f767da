//! The genus-one free energy `F⁽¹⁾ = R_≠/24 − ln(R′(0) Π_i R′(−β_i))/24`,
//! its creation-operator checks, and the Bergman τ-function at `d = 1`.
//!
//! The product over ramification points is a norm in `L[x]/P`, so no root
//! is ever extracted. The compensation term `R_≠` is obtained exactly from
//! homogeneity: at order `λⁿ` the free energy has degree `−2n` in the `e_k`,
//! and `∂_{e_b} F = −(r_b/N) Ω₁,₁(ε_b)`, hence
//! `F_n = (1/2n) Σ_b (r_b/N) e_b Ω₁,₁⁽ⁿ⁾(ε_b)`.

pub mod tau;

use serde::Serialize;

use crate::algebra::{Coeff, ExactScalar, QElem, Series, Var};
use crate::error::{QkmError, Result};
use crate::insertion::create;
use crate::precision::{at_order, Known};
use crate::report::CheckResult;
use crate::spectral::{solve_deformation, Deformation, QuotientBackend, RootSum, SpectralInput, L};
use crate::table::{CoeffTable, SignConvention};
use crate::trengine::omega11_parts;

pub use tau::{bipartite_f1, tau_d1, BipartiteResult, TauResult};

type E = ExactScalar;

/// `ln R′(0)` and `ln Π_i R′(−β_i)`.
pub fn log_terms<K: Coeff>(def: &Deformation<K>) -> Result<(L<K>, L<K>)> {
    let c = def.curve();
    let rp0 = c.rp(&Series::zero_in(Var::Lambda))?;
    let be = QuotientBackend::new(def)?;
    let sys = be.system();
    let v = be.curve().rp(&sys.root().neg())?;
    Ok((rp0.log()?, sys.norm(&v).log()?))
}

/// `Σ_b (r_b/N) e_b Ω₁,₁(ε_b)`, the Euler operator applied to `−F⁽¹⁾`.
fn euler_sum<K: Coeff>(def: &Deformation<K>) -> Result<L<K>> {
    let be = QuotientBackend::new(def)?;
    let mut acc = Series::zero_in(Var::Lambda);
    for b in 0..def.d() {
        let om = omega11_parts(&be, &def.eps[b])?.total()?;
        let w = def.e[b].scale(&E::ratio(def.r[b] as i64, def.n as i64));
        acc = acc.checked_add(&om.mul_coeff(&w))?;
    }
    Ok(acc)
}

/// `F⁽¹⁾` from homogeneity: divides the `λⁿ` coefficient of the Euler sum
/// by `2n`.
pub fn f1_homogeneous<K: Coeff>(def: &Deformation<K>) -> Result<L<K>> {
    let s = euler_sum(def)?;
    let c0 = s.coeff_unchecked(0);
    if !c0.is_zero() {
        return Err(QkmError::Unsupported("Ω₁,₁ has a λ⁰ term".into()));
    }
    let top = s.top().unwrap_or(0).max(0);
    let coeffs: Vec<K> = (0..=top)
        .map(|k| {
            if k == 0 {
                K::zero()
            } else {
                s.coeff_unchecked(k).scale(&E::ratio(1, 2 * k))
            }
        })
        .collect();
    Ok(Series::new(Var::Lambda, 0, coeffs, s.raw_order()))
}

/// The printed first-order approximant `−(λ/N) Σ_{k≠l} r_k r_l/(e_k+e_l)²`.
pub fn r_neq_printed(input: &SpectralInput) -> L<E> {
    let e = input.e();
    let r = input.r();
    let mut s = E::zero();
    for k in 0..e.len() {
        for l in 0..e.len() {
            if k != l {
                let den = e[k].add(&e[l]);
                s = s.add(&E::from_int(r[k] as i64 * r[l] as i64).mul(&den.mul(&den).try_inv().unwrap()));
            }
        }
    }
    let c = s.scale(&E::ratio(-1, input.big_n() as i64));
    Series::exact(Var::Lambda, 1, vec![c])
}

#[derive(Debug, Clone, Serialize)]
pub struct FreeEnergyResult {
    pub d: usize,
    /// `F⁽¹⁾` with the exact compensation term.
    pub f1: CoeffTable,
    pub ln_r_prime_zero: CoeffTable,
    pub ln_prod_r_prime_minus_beta: CoeffTable,
    pub r_neq: CoeffTable,
    /// `F⁽¹⁾` with `R_≠` replaced by its printed first-order approximant;
    /// valid at most through `λ¹` when `d > 1`.
    pub f1_with_approximant: CoeffTable,
    pub r_neq_truncated: bool,
    #[serde(skip)]
    pub series: L<E>,
}

impl Known for (L<E>, L<E>, L<E>, L<E>) {
    fn known_to(&self) -> i64 {
        [&self.0, &self.1, &self.2, &self.3]
            .iter()
            .map(|s| s.raw_order())
            .min()
            .unwrap_or(i64::MAX)
    }
}

/// `F⁽¹⁾` and its components through `λ^order`.
pub fn f1(input: &SpectralInput, order: i64) -> Result<FreeEnergyResult> {
    let (f, l0, lp, rn) = at_order(order + 1, |work| {
        let def = solve_deformation(input, work)?;
        let (l0, lp) = log_terms(&def)?;
        let f = f1_homogeneous(&def)?;
        let rn = f
            .scale(&E::from_int(24))
            .checked_add(&l0)?
            .checked_add(&lp)?;
        Ok((f, l0, lp, rn))
    })?;
    let approx = r_neq_printed(input)
        .checked_sub(&l0)?
        .checked_sub(&lp)?
        .scale(&E::ratio(1, 24));
    let tab = |q: &str, s: &L<E>, lo: i64| CoeffTable::from_series(q, s, lo, order + 1, SignConvention::MinusLambda);
    let mut f1t = tab("F1", &f, 1)?;
    if input.d() == 1 {
        f1t = f1t.with_weights(2, 0);
    }
    let d = input.d();
    Ok(FreeEnergyResult {
        d,
        f1: f1t,
        ln_r_prime_zero: tab("ln R'(0)", &l0, 0)?,
        ln_prod_r_prime_minus_beta: tab("ln prod R'(-beta_i)", &lp, 0)?,
        r_neq: tab("R_neq", &rn, 0)?,
        f1_with_approximant: tab("F1 (first-order R_neq)", &approx, 1)?
            .with_note("R_neq truncated after λ¹; higher orders omit its contribution"),
        r_neq_truncated: d > 1,
        series: f,
    })
}

/// `F⁽¹⁾` at `2e = 1`, `d = 1`: `(1/12) Σ (3ⁿ/n)(2^{2n−1} − (2n−1)!/(n!(n−1)!)) (−λ)ⁿ`.
pub fn f1_d1_closed_sum(order: i64) -> L<E> {
    let mut coeffs = vec![E::zero()];
    for n in 1..=order {
        let mut binom = E::one();
        // (2n−1)!/(n!(n−1)!) = C(2n−1, n)
        for j in 0..n {
            binom = binom.mul(&E::ratio(2 * n - 1 - j, j + 1));
        }
        let pow = |b: i64, k: i64| (0..k).fold(E::one(), |a, _| a.scale(&E::from_int(b)));
        let c = pow(2, 2 * n - 1)
            .sub(&binom)
            .mul(&pow(3, n))
            .scale(&E::ratio(1, 12 * n));
        coeffs.push(if n % 2 == 0 { c } else { c.neg() });
    }
    Series::new(Var::Lambda, 0, coeffs, order + 1)
}

/// The printed right side of the `T̂_b R_≠/24` formula, summed over the
/// ramification points. `R‴(−β_i)/R′(β_i)` is read as `R‴(−β_i)/R′(−β_i)`
/// (`R′(β_i)` vanishes), the bare `ε` as `ε_b`, and `ω₀,₂(ε_b, β_i)` as
/// `1/(ε_b−β_i)² + 1/(ε_b+β_i)²`.
pub fn r_neq_creation_printed(def: &Deformation<E>, b: usize) -> Result<L<E>> {
    let be = QuotientBackend::new(def)?;
    let sys = be.system().clone();
    let c = be.curve();
    let x = sys.root();
    let mx = x.neg();
    let lift = |s: &L<E>| QElem::Scalar(s.clone());
    let eb = lift(&def.eps[b]);
    let p = def.p_poly();
    let pe = |q: &crate::algebra::Poly<L<E>>| q.eval_in(&mx, lift);
    let (p0, p1, p2) = (pe(&p), pe(&p.derivative()), pe(&p.derivative().derivative()));
    // Σ_j 1/(β_i+β_j)² = ((P′/P)² − P″/P)(−β_i)
    let l1 = p1.try_div(&p0)?;
    let all = l1.mul(&l1).sub(&p2.try_div(&p0)?);
    let self_term = x.mul(&x).scale(&E::from_int(4)).try_inv()?;
    let others = all.sub(&self_term);
    let half_all = all.scale(&E::ratio(1, 2));
    let mut eps_sum = QElem::Scalar(L::zero());
    for e in &def.eps {
        eps_sum = eps_sum.add(&lift(e).add(&x).powi(2).try_inv()?.scale(&E::from_int(4)));
    }
    let r1m = c.rp(&mx)?;
    let r2 = c.r_deriv(2, &x)?;
    let r2m = c.r_deriv(2, &mx)?;
    let r3m = c.r_deriv(3, &mx)?;
    let bm = x.sub(&eb);
    let bp = x.add(&eb);
    let t1 = half_all.add(&eps_sum).add(&others).mul(&bm.powi(2).try_inv()?).neg();
    let t2 = r3m
        .try_div(&r1m)?
        .add(&half_all)
        .add(&others)
        .mul(&bp.powi(2).try_inv()?);
    let t3 = r2m
        .scale(&E::from_int(2))
        .try_div(&r1m.mul(&bp.powi(3)))?
        .neg();
    let t4 = x.mul(&eb.sub(&x).powi(3)).try_inv()?.neg();
    let t5 = x.mul(&x).mul(&eb.sub(&x).powi(2)).try_inv()?;
    let w02 = bm.powi(2).try_inv()?.add(&bp.powi(2).try_inv()?);
    let t6 = r2m
        .mul(&w02)
        .try_div(&r1m.mul(&x).scale(&E::from_int(2)))?
        .neg();
    let bracket = t1.add(&t2).add(&t3).add(&t4).add(&t5).add(&t6);
    let summand = bracket.try_div(&r1m.mul(&r2).scale(&E::from_int(24)))?;
    Ok(sys.trace(&summand))
}

struct Creation {
    omega: L<E>,
    blob: L<E>,
    pure: L<E>,
    t_log0: L<E>,
    t_logp: L<E>,
    t_f: L<E>,
}

impl Known for Creation {
    fn known_to(&self) -> i64 {
        [&self.omega, &self.blob, &self.pure, &self.t_log0, &self.t_logp, &self.t_f]
            .iter()
            .map(|s| s.raw_order())
            .min()
            .unwrap_or(i64::MAX)
    }
}

/// `T̂_b F⁽¹⁾ = Ω₁,₁(ε_b)` and its split into the two logarithms, through
/// `λ^order`.
///
/// Checks reported:
/// * `creation_f1`: the full identity with the exact `R_≠`;
/// * `step_a`: `−T̂_b ln R′(0)/24 = (2/3) Ω^{BTR}_{1,1}(ε_b)`;
/// * `step_bc`: `T̂_b(R_≠ − ln Π R′(−β_i))/24 = Ω^{TR}_{1,1} + Ω^{BTR}_{1,1}/3`;
/// * `creation_f1_printed_r_neq` (`d > 1`): the identity with `T̂_b R_≠/24`
///   taken from the printed closed formula.
pub fn f1_creation_check(input: &SpectralInput, b: usize, order: i64) -> Result<Vec<CheckResult>> {
    let d = input.d();
    if b >= d {
        return Err(QkmError::Unsupported(format!("eigenvalue index {b} out of range")));
    }
    let target = order + 1;
    let cr = at_order(target, |work| {
        let def = solve_deformation(input, work)?;
        let be = QuotientBackend::new(&def)?;
        let parts = omega11_parts(&be, &def.eps[b])?;
        let t_log0 = create(input, b, target, |dd| Ok(log_terms(dd)?.0))?;
        let t_logp = create(input, b, target, |dd| Ok(log_terms(dd)?.1))?;
        let t_f = create(input, b, target, f1_homogeneous)?;
        Ok(Creation {
            omega: parts.total()?,
            blob: parts.blob()?,
            pure: parts.pure()?,
            t_log0,
            t_logp,
            t_f,
        })
    })?;
    let simpl = if d > 1 {
        Some(at_order(target, |work| {
            r_neq_creation_printed(&solve_deformation(input, work)?, b)
        })?)
    } else {
        None
    };
    let pts = vec![format!("eps_{}", b + 1)];
    let s24 = E::ratio(1, 24);
    let mut out = vec![CheckResult::equal("creation_f1", d, pts.clone(), &cr.t_f, &cr.omega, target)];
    let lhs_a = cr.t_log0.scale(&s24).neg_series();
    let rhs_a = cr.blob.scale(&E::ratio(2, 3));
    out.push(CheckResult::equal("step_a", d, pts.clone(), &lhs_a, &rhs_a, target));
    let t_rneq = cr
        .t_f
        .scale(&E::from_int(24))
        .checked_add(&cr.t_log0)?
        .checked_add(&cr.t_logp)?;
    let lhs_bc = t_rneq.checked_sub(&cr.t_logp)?.scale(&s24);
    let rhs_bc = cr.pure.checked_add(&cr.blob.scale(&E::ratio(1, 3)))?;
    out.push(CheckResult::equal("step_bc", d, pts.clone(), &lhs_bc, &rhs_bc, target));
    if let Some(s) = &simpl {
        let lhs = s.checked_sub(&cr.t_log0.checked_add(&cr.t_logp)?.scale(&s24))?;
        out.push(CheckResult::equal(
            "creation_f1_printed_r_neq",
            d,
            pts,
            &lhs,
            &cr.omega,
            target,
        ));
    }
    Ok(out)
}

/// At `d = 1`: `−∂/∂e` on the `(2e)`-graded table of `F⁽¹⁾` reproduces the
/// table of `Ω₁,₁(ε)`.
pub fn creation_d1_check(input: &SpectralInput, order: i64) -> Result<CheckResult> {
    if input.d() != 1 {
        return Err(QkmError::Unsupported("graded creation needs d = 1".into()));
    }
    let half = E::ratio(1, 2);
    if input.e()[0] != half {
        return Err(QkmError::Unsupported("graded creation is tabulated at 2e = 1".into()));
    }
    let f = f1(input, order)?;
    let created = crate::insertion::creation_d1(&f.f1)?;
    let om = crate::trengine::omega11_closed(input, 0, crate::trengine::Part::Total, order)?;
    let lhs = created.to_series();
    let rhs = om.to_series();
    Ok(CheckResult::equal("creation_d1_graded", 1, vec![], &lhs, &rhs, order + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d2() -> SpectralInput {
        SpectralInput::from_ratios(&[(1, 2, 1), (1, 3, 2)], 4)
    }

    #[test]
    fn f1_table_at_d1() {
        let r = f1(&SpectralInput::default(), 6).unwrap();
        let want = [
            E::ratio(1, 4),
            E::ratio(15, 8),
            E::ratio(33, 2),
            E::ratio(2511, 16),
            E::ratio(15633, 10),
            E::ratio(64233, 4),
        ];
        assert_eq!(r.f1.coefficients(), want);
        assert!(r.r_neq.coefficients().iter().all(|c| c.is_zero()));
        assert_eq!(r.f1.entries[1].weight, Some(4));
    }

    #[test]
    fn closed_sum_matches_f1_to_order_ten() {
        let r = f1(&SpectralInput::default(), 10).unwrap();
        let c = f1_d1_closed_sum(10);
        assert!(r.series.checked_sub(&c).unwrap().truncate(11).is_zero());
    }

    #[test]
    fn components_exponentiate_back() {
        let def = solve_deformation(&SpectralInput::default(), 8).unwrap();
        let (l0, lp) = log_terms(&def).unwrap();
        let f = f1_homogeneous(&def).unwrap();
        let lhs = f.scale(&E::from_int(-24)).exp().unwrap();
        let be = crate::spectral::HBackend::new(&def).unwrap();
        let c = def.curve();
        let rp0 = c.rp(&Series::zero_in(Var::Lambda)).unwrap();
        let hc = be.curve().clone();
        let prod_h = be.branch().betas().iter().fold(Ok(Series::one()), |acc: Result<_>, b| {
            Ok(acc?.checked_mul(&hc.rp(&b.neg_series())?)?)
        });
        let prod = crate::spectral::to_lambda(&prod_h.unwrap()).unwrap();
        assert!(lp.checked_sub(&prod.log().unwrap()).unwrap().truncate(6).is_zero());
        let rhs = rp0.checked_mul(&prod).unwrap();
        assert!(lhs.checked_sub(&rhs).unwrap().truncate(6).is_zero());
        assert!(l0.checked_sub(&rp0.log().unwrap()).unwrap().is_zero());
    }

    #[test]
    fn compensation_term_at_first_order() {
        let inp = d2();
        let r = f1(&inp, 3).unwrap();
        let rn = r.r_neq.to_series();
        // λ Σ_{k≠l} 1/(e_k+e_l)² with e = (1/2, 1/3): 2·36/25
        assert_eq!(rn.coeff(0).unwrap(), E::zero());
        assert_eq!(rn.coeff(1).unwrap(), E::ratio(72, 25));
        assert_eq!(r_neq_printed(&inp).coeff(1).unwrap(), E::ratio(-48, 25));
    }

    #[test]
    fn creation_identities_d2() {
        let rs = f1_creation_check(&d2(), 0, 3).unwrap();
        for r in &rs[..3] {
            assert!(r.passed(), "{r:?}");
        }
        assert!(!rs[3].passed());
        let rs = f1_creation_check(&d2(), 1, 2).unwrap();
        assert!(rs[..3].iter().all(|r| r.passed()), "{rs:?}");
    }

    #[test]
    fn creation_identities_d1() {
        let rs = f1_creation_check(&SpectralInput::default(), 0, 5).unwrap();
        assert_eq!(rs.len(), 3);
        assert!(rs.iter().all(|r| r.passed()), "{rs:?}");
        assert!(creation_d1_check(&SpectralInput::default(), 5).unwrap().passed());
    }
}
