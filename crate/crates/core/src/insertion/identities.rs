//! Exact checks of the identities that carry `∂/∂e_b` through the spectral
//! curve, at rational sample points.
//!
//! Every identity is a rational function of bounded degree in the sample
//! variable at each λ-order, so three points per identity separate it from
//! any single spurious cancellation.

use crate::algebra::{Coeff, Dual, ExactScalar, QElem, Series};
use crate::error::Result;
use crate::precision::{at_order, Known};
use crate::report::CheckResult;
use crate::spectral::{
    solve_deformation, solve_deformation_seeded, Curve, Deformation, QuotientBackend, RootSum,
    SpectralInput, L,
};

use super::correlators::{omega02, omega03};
use super::{deriv, eps_derivative_closed};

type E = ExactScalar;
type Q = QElem<L<E>>;

/// Differences that must vanish, for one identity at one point.
#[derive(Debug, Clone)]
pub struct Residual {
    pub name: &'static str,
    pub points: Vec<String>,
    pub diffs: Vec<L<E>>,
}

impl Known for Residual {
    fn known_to(&self) -> i64 {
        self.diffs.known_to()
    }
}

impl Residual {
    fn eq(name: &'static str, points: Vec<String>, lhs: &L<E>, rhs: &L<E>) -> Result<Self> {
        Ok(Residual {
            name,
            points,
            diffs: vec![lhs.checked_sub(rhs)?],
        })
    }

    fn per_root(name: &'static str, points: Vec<String>, v: &Q, deg: usize) -> Self {
        Residual {
            name,
            points,
            diffs: v.coefficients(deg),
        }
    }

    pub fn to_check(&self, d: usize, order: i64) -> CheckResult {
        let mut worst: Option<CheckResult> = None;
        for diff in &self.diffs {
            let r = CheckResult::vanishing(self.name, d, self.points.clone(), diff, order);
            let replace = match &worst {
                None => true,
                Some(w) => r.first_failing_order.unwrap_or(i64::MAX) < w.first_failing_order.unwrap_or(i64::MAX),
            };
            if replace {
                worst = Some(r);
            }
        }
        worst.unwrap_or_else(|| CheckResult::vanishing(self.name, d, self.points.clone(), &Series::zero(), order))
    }
}

/// The data every identity reads.
pub struct Setting<'a> {
    pub def: &'a Deformation<E>,
    pub seeded: &'a Deformation<Dual<E>>,
    pub b: usize,
}

struct Ctx {
    c: Curve<L<E>>,
    cd: Curve<L<Dual<E>>>,
    be: QuotientBackend<E>,
    deg: usize,
    b: usize,
    eb: L<E>,
    rb_n: E,
    n: E,
    rb: E,
}

impl Ctx {
    fn new(s: &Setting<'_>) -> Result<Self> {
        let be = QuotientBackend::new(s.def)?;
        let deg = be.system().degree();
        Ok(Ctx {
            c: s.def.curve(),
            cd: s.seeded.curve(),
            deg,
            b: s.b,
            eb: s.def.eps[s.b].clone(),
            rb_n: E::ratio(s.def.r[s.b] as i64, s.def.n as i64),
            n: E::from_int(s.def.n as i64),
            rb: E::from_int(s.def.r[s.b] as i64),
            be,
        })
    }

    fn q(&self, x: &L<E>) -> Q {
        self.be.lift(x)
    }

    fn root(&self) -> Q {
        self.be.system().root()
    }

    /// `∂R(x)/∂e_b` at fixed `x`.
    fn d_r(&self, x: &E) -> Result<L<E>> {
        let xd = Series::constant(Dual::constant(x.clone()));
        Ok(deriv(&self.cd.r(&xd)?))
    }

    fn fc(&self) -> &Curve<Q> {
        self.be.curve()
    }
}

fn cst(x: &E) -> L<E> {
    Series::constant(x.clone())
}

fn sq_inv<F: Coeff>(x: &F) -> Result<F, crate::algebra::AlgebraError> {
    x.try_inv().map(|i| i.mul(&i))
}

/// `ω(x) = 1/(x−ε_b)² + 1/(x+ε_b)²`.
fn omega_b<F: Coeff>(x: &F, eb: &F) -> Result<F, crate::algebra::AlgebraError> {
    Ok(sq_inv(&x.sub(eb))?.add(&sq_inv(&x.add(eb))?))
}

fn lemma1(x: &Ctx, z: &E) -> Result<Residual> {
    let (zp, zm) = (cst(z), cst(&z.neg()));
    let lhs = x.d_r(&z.neg())?.checked_add(
        &x.c.rp(&zm)?.checked_div(&x.c.rp(&zp)?)?.checked_mul(&x.d_r(z)?)?,
    )?;
    let rhs = x
        .c
        .lambda
        .scale(&x.rb_n)
        .checked_mul(&omega_b(&zp, &x.eb)?)?
        .checked_div(&x.c.rp(&zp)?.checked_mul(&x.c.rp(&x.eb)?)?)?;
    Residual::eq("lemma1", vec![z.to_string()], &lhs, &rhs)
}

fn lemma2(x: &Ctx, z: &E) -> Result<Residual> {
    let zp = cst(z);
    let dint = x.d_r(z)?.checked_div(&x.c.rp(&zp)?)?.neg_series();
    let lhs = dint
        .checked_mul(&x.c.rp(&x.eb)?)?
        .scale(&x.n.mul(&x.rb.try_inv()?).neg())
        .checked_div(&x.c.lambda)?;
    let first = sq_inv(&zp.checked_add(&x.eb)?)?
        .checked_div(&x.c.rp(&zp)?.checked_mul(&x.c.rp(&cst(&z.neg()))?)?)?;
    let (zq, ebq, fc) = (x.q(&zp), x.q(&x.eb), x.fc());
    let b = x.root();
    let qz = zq.add(&b).try_inv()?.add(&zq.sub(&b).try_inv()?);
    let term = qz.try_div(
        &b.sub(&ebq).powi(2).mul(&fc.rp(&b.neg())?).mul(&fc.r_deriv(2, &b)?),
    )?;
    let sum = x.be.system().trace(&term);
    Residual::eq("lemma2", vec![z.to_string()], &lhs, &first.checked_add(&sum)?)
}

fn pfe0(x: &Ctx, z: &E, w: &E) -> Result<Residual> {
    let c = &x.c;
    let (zp, wp) = (cst(z), cst(w));
    let (mz, mw) = (cst(&z.neg()), cst(&w.neg()));
    let zw = cst(&z.add(w));
    let lhs = sq_inv(&zw)?.checked_div(&c.rp(&zp)?.checked_mul(&c.rp(&mz)?)?)?;
    let aw = c.rp(&wp)?.checked_mul(&c.rp(&mw)?)?;
    let r1 = sq_inv(&zw)?.checked_div(&aw)?;
    let log_w = c
        .r_deriv(2, &wp)?
        .checked_div(&c.rp(&wp)?)?
        .checked_sub(&c.r_deriv(2, &mw)?.checked_div(&c.rp(&mw)?)?)?;
    let r2 = log_w.checked_div(&aw.checked_mul(&zw)?)?;
    let (zq, wq, fc) = (x.q(&zp), x.q(&wp), x.fc());
    let b = x.root();
    let inner = zq
        .sub(&b)
        .mul(&wq.add(&b).powi(2))
        .try_inv()?
        .sub(&zq.add(&b).mul(&wq.sub(&b).powi(2)).try_inv()?);
    let term = inner.try_div(&fc.r_deriv(2, &b)?.mul(&fc.rp(&b.neg())?))?;
    let rhs = r1.checked_add(&r2)?.checked_add(&x.be.system().trace(&term))?;
    Residual::eq("pfe0", vec![z.to_string(), w.to_string()], &lhs, &rhs)
}

fn pfe(x: &Ctx, z: &E) -> Result<Residual> {
    let zp = cst(z);
    let lhs = x.c.r_deriv(2, &zp)?.checked_div(&x.c.rp(&zp)?)?;
    let zq = x.q(&zp);
    let b = x.root();
    let roots = x.be.system().trace(&zq.sub(&b).try_inv()?);
    let mut poles = Series::zero();
    for e in &x.c.eps {
        poles = poles.checked_add(&zp.checked_add(e)?.inv()?)?;
    }
    let rhs = roots.checked_sub(&poles.scale(&E::from_int(2)))?;
    Residual::eq("pfe", vec![z.to_string()], &lhs, &rhs)
}

/// `Σ_{j≠i} 1/(β_i−β_j)²` as an element of the quotient ring, from the
/// derivatives of `P` at the class of `x`.
fn other_roots_sq(x: &Ctx) -> Result<Q> {
    let p = x.be.system().clone();
    let b = x.root();
    let poly = x.c.p_poly();
    let lift = |s: &L<E>| QElem::Scalar(s.clone());
    let d1 = poly.derivative();
    let d2 = d1.derivative();
    let d3 = d2.derivative();
    let p1 = d1.eval_in(&b, lift);
    let p2 = d2.eval_in(&b, lift);
    let p3 = d3.eval_in(&b, lift);
    drop(p);
    let half = p2.try_div(&p1.scale(&E::from_int(2)))?;
    Ok(half.mul(&half).sub(&p3.try_div(&p1.scale(&E::from_int(3)))?))
}

fn id2(x: &Ctx) -> Result<Residual> {
    let fc = x.fc();
    let b = x.root();
    let (r2, r3, r4) = (fc.r_deriv(2, &b)?, fc.r_deriv(3, &b)?, fc.r_deriv(4, &b)?);
    let lhs = r4
        .try_div(&r2.scale(&E::from_int(3)))?
        .sub(&r3.mul(&r3).try_div(&r2.mul(&r2).scale(&E::from_int(4)))?);
    let mut poles = Q::zero();
    for e in &x.c.eps {
        poles = poles.add(&sq_inv(&b.add(&x.q(e)))?);
    }
    let rhs = other_roots_sq(x)?.neg().add(&poles.scale(&E::from_int(2)));
    Ok(Residual::per_root("id2", vec![], &lhs.sub(&rhs), x.deg))
}

fn betaid(x: &Ctx, s: &Setting<'_>) -> Result<Residual> {
    let fc = x.fc();
    let b = x.root();
    let mut lhs = Q::zero();
    for k in 0..s.def.d() {
        let ek = &s.seeded.eps[k];
        let d_rp = deriv(&x.cd.rp(ek)?);
        let d_eps = deriv(ek);
        let rpk = x.c.rp(&s.def.eps[k])?;
        let rk = E::from_int(s.def.r[k] as i64);
        let ekq = x.q(&s.def.eps[k]);
        let t1 = x.q(&d_rp.checked_div(&rpk.powi(2))?).try_div(&ekq.add(&b))?;
        let t2 = x.q(&d_eps.checked_div(&rpk)?).mul(&sq_inv(&ekq.add(&b))?);
        lhs = lhs.add(&t1.add(&t2).scale(&rk));
    }
    let lhs = lhs.scale(&x.rb.try_inv()?);
    let ebq = x.q(&x.eb);
    let rhs = omega_b(&b, &ebq)?.try_div(&fc.rp(&b.neg())?.mul(&x.q(&x.c.rp(&x.eb)?)))?;
    Ok(Residual::per_root("betaid", vec![], &lhs.sub(&rhs), x.deg))
}

fn eps_derivative(x: &Ctx, s: &Setting<'_>) -> Result<Residual> {
    let closed = eps_derivative_closed(s.def, x.b)?;
    let mut diffs = Vec::new();
    for (a, cf) in closed.iter().enumerate() {
        diffs.push(deriv(&s.seeded.eps[a]).checked_sub(cf)?);
    }
    Ok(Residual {
        name: "eps_derivative",
        points: vec![],
        diffs,
    })
}

/// `−(r_b/N)·Ω₀,₃(z,v,ε_b)` against `∂_bΩ₀,₂(z,v) − Σ_x ∂_RΩ₀,₂·∂_bR(x)`.
fn omega03_creation(x: &Ctx, z: &E, v: &E) -> Result<Residual> {
    let lhs = omega03(&x.be, &cst(z), &cst(v), &x.eb)?.scale(&x.rb_n.neg());
    let (zd, vd) = (
        Series::constant(Dual::constant(z.clone())),
        Series::constant(Dual::constant(v.clone())),
    );
    let d_om = deriv(&omega02(&x.cd, &zd, &vd)?);
    // ∂Ω₀,₂/∂R(z) = ∂_zΩ₀,₂ / R′(z), by a dual in z over the plain curve.
    let dc = x.c.lift(|t| Dual::constant(t.clone()));
    let seed = |p: &E| Dual::new(cst(p), L::one());
    let dz = omega02(&dc, &seed(z), &Dual::constant(cst(v)))?.d;
    let dv = omega02(&dc, &Dual::constant(cst(z)), &seed(v))?.d;
    let corr = dz
        .checked_div(&x.c.rp(&cst(z))?)?
        .checked_mul(&x.d_r(z)?)?
        .checked_add(&dv.checked_div(&x.c.rp(&cst(v))?)?.checked_mul(&x.d_r(v)?)?)?;
    let rhs = d_om.checked_sub(&corr)?;
    Residual::eq("omega03_creation", vec![z.to_string(), v.to_string()], &lhs, &rhs)
}

pub fn sample_points() -> Vec<E> {
    vec![E::from_int(2), E::from_int(3), E::ratio(5, 2)]
}

/// All residuals at the precision of the given deformations.
pub fn residuals(s: &Setting<'_>, points: &[E]) -> Result<Vec<Residual>> {
    let x = Ctx::new(s)?;
    let mut out = Vec::new();
    for z in points {
        out.push(lemma1(&x, z)?);
    }
    for z in points {
        out.push(lemma2(&x, z)?);
    }
    for (i, z) in points.iter().enumerate() {
        let w = &points[(i + 1) % points.len()];
        out.push(pfe0(&x, z, w)?);
    }
    for z in points {
        out.push(pfe(&x, z)?);
    }
    out.push(id2(&x)?);
    out.push(betaid(&x, s)?);
    out.push(eps_derivative(&x, s)?);
    for (i, z) in points.iter().enumerate() {
        let w = &points[(i + 1) % points.len()];
        out.push(omega03_creation(&x, z, w)?);
    }
    Ok(out)
}

/// Runs every identity for boundary `b`, raising the working precision until
/// each difference is known to `order`.
pub fn lemma_checks(
    input: &SpectralInput,
    b: usize,
    points: &[E],
    order: i64,
) -> Result<Vec<CheckResult>> {
    let rs = at_order(order, |work| {
        let def = solve_deformation(input, work)?;
        let seeded = solve_deformation_seeded(input, b, work)?;
        residuals(&Setting { def: &def, seeded: &seeded, b }, points)
    })?;
    Ok(rs.iter().map(|r| r.to_check(input.d(), order)).collect())
}

/// Identity checks on caller-supplied deformations, which may be corrupted
/// on purpose.
pub fn lemma_checks_with(s: &Setting<'_>, points: &[E], order: i64) -> Result<Vec<CheckResult>> {
    let rs = residuals(s, points)?;
    Ok(rs.iter().map(|r| r.to_check(s.def.d(), order)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_identities_hold_d1_and_d2() {
        for inp in [
            SpectralInput::default(),
            SpectralInput::from_ratios(&[(1, 2, 1), (1, 3, 2)], 6),
        ] {
            let rs = lemma_checks(&inp, 0, &sample_points(), 4).unwrap();
            for r in &rs {
                assert!(r.passed(), "{r:?}");
            }
        }
    }
}
