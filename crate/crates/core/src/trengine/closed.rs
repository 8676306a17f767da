//! Closed forms for `Ω₁,₁(z)` at any number of distinct eigenvalues, its
//! blob part, and the symplectic-exchange identity.

use serde::Serialize;

use crate::algebra::{AlgebraError, Coeff, Dual, ExactScalar, Series, Var};
use crate::error::{QkmError, Result};
use crate::precision::at_order;
use crate::spectral::{
    lift_h, solve_deformation, Curve, HBackend, QuotientBackend, RootSum, SpectralInput, H, L,
};
use crate::table::{CoeffTable, SignConvention};

type E = ExactScalar;

/// `R′(z)Ω₁,₁(z)` split into its pieces. `pole0` has poles only at `z = 0`;
/// `blob_roots` and `tr` have poles only at the ramification points.
#[derive(Debug, Clone)]
pub struct Omega11Parts<K: Coeff> {
    pub pole0: L<K>,
    pub blob_roots: L<K>,
    pub tr: L<K>,
    /// `R′(z)`, the factor converting the pieces into `Ω₁,₁`.
    pub rp: L<K>,
}

impl<K: Coeff> Omega11Parts<K> {
    pub fn total_rhs(&self) -> Result<L<K>, AlgebraError> {
        self.pole0.checked_add(&self.blob_roots)?.checked_add(&self.tr)
    }

    pub fn total(&self) -> Result<L<K>, AlgebraError> {
        self.total_rhs()?.checked_div(&self.rp)
    }

    /// The blob contribution `Ω^{BTR}_{1,1}`.
    pub fn blob(&self) -> Result<L<K>, AlgebraError> {
        self.pole0.checked_add(&self.blob_roots)?.checked_div(&self.rp)
    }

    /// The pure-recursion contribution `Ω^{TR}_{1,1}`.
    pub fn pure(&self) -> Result<L<K>, AlgebraError> {
        self.tr.checked_div(&self.rp)
    }

    /// Everything with poles at the ramification points.
    pub fn polar(&self) -> Result<L<K>, AlgebraError> {
        self.blob_roots.checked_add(&self.tr)?.checked_div(&self.rp)
    }

    pub fn pole0_part(&self) -> Result<L<K>, AlgebraError> {
        self.pole0.checked_div(&self.rp)
    }
}

fn pole0_terms<F: Coeff>(c: &Curve<F>, z: &F) -> Result<F, AlgebraError> {
    let zero = F::zero();
    let r1 = c.rp(&zero)?;
    let r2 = c.r_deriv(2, &zero)?;
    let zi = z.try_inv()?;
    let a = c
        .lambda
        .mul(&zi.powi(3))
        .try_div(&r1.powi(2).scale(&E::from_int(8)))?
        .neg();
    let b = c
        .lambda
        .mul(&r2)
        .mul(&zi.powi(2))
        .try_div(&r1.powi(3).scale(&E::from_int(16)))?;
    Ok(a.add(&b))
}

/// Summand of the blob sum at a ramification point `b`.
fn blob_summand<F: Coeff>(c: &Curve<F>, z: &F, b: &F) -> Result<F, AlgebraError> {
    let r2 = c.r_deriv(2, b)?;
    let r1m = c.rp(&b.neg())?;
    blob_from(c, z, b, &r2, &r1m)
}

fn blob_from<F: Coeff>(c: &Curve<F>, z: &F, b: &F, r2: &F, r1m: &F) -> Result<F, AlgebraError> {
    let den = b
        .powi(2)
        .mul(r2)
        .mul(r1m)
        .mul(&z.sub(b).powi(2))
        .scale(&E::from_int(8));
    c.lambda.try_div(&den).map(|x| x.neg())
}

/// Summand of the pure-recursion sum at a ramification point `b`.
fn tr_summand<F: Coeff>(c: &Curve<F>, z: &F, b: &F) -> Result<F, AlgebraError> {
    let at = c.r_derivs(b, 4)?;
    let atm = c.r_derivs(&b.neg(), 3)?;
    tr_from(c, z, b, &at, &atm)
}

/// `at = R^{(j)}(b)`, `atm = R^{(j)}(−b)`.
fn tr_from<F: Coeff>(c: &Curve<F>, z: &F, b: &F, at: &[F], atm: &[F]) -> Result<F, AlgebraError> {
    let (r2, r3, r4) = (&at[2], &at[3], &at[4]);
    let (r1m, r2m, r3m) = (&atm[1], &atm[2], &atm[3]);
    let d = z.sub(b).try_inv()?;
    let i1 = r1m.try_inv()?;
    let i2 = r2.try_inv()?;
    let (d2, d3, d4) = (d.powi(2), d.powi(3), d.powi(4));
    let q = |n: i64| E::ratio(1, n);
    let a = i1.mul(&i2);
    let t1 = d4.mul(&a).scale(&q(-8));
    let t2 = r3.mul(&d3).mul(&a).mul(&i2).scale(&q(24));
    let t3 = r3m.mul(&d2).mul(&a).mul(&i1).scale(&q(48));
    let t4 = r3.mul(r2m).mul(&d2).mul(&a.powi(2)).scale(&q(48));
    let t5 = r4.mul(&d2).mul(&a).mul(&i2).scale(&q(48));
    let t6 = r3.powi(2).mul(&d2).mul(&a).mul(&i2.powi(2)).scale(&q(-48));
    Ok(c.lambda.mul(&t1.add(&t2).add(&t3).add(&t4).add(&t5).add(&t6)))
}

/// The pieces of `R′(z)Ω₁,₁(z)` at a λ-series point `z`.
pub fn omega11_parts<K: Coeff, B: RootSum<K>>(be: &B, z: &L<K>) -> Result<Omega11Parts<K>, AlgebraError> {
    let c = be.base();
    let fc = be.curve();
    let zq = be.lift(z);
    let sums = be.sum_vec(&|b| {
        let at = fc.r_derivs(b, 4)?;
        let atm = fc.r_derivs(&b.neg(), 3)?;
        Ok(vec![
            blob_from(fc, &zq, b, &at[2], &atm[1])?,
            tr_from(fc, &zq, b, &at, &atm)?,
        ])
    })?;
    Ok(Omega11Parts {
        pole0: pole0_terms(c, z)?,
        blob_roots: sums[0].clone(),
        tr: sums[1].clone(),
        rp: c.rp(z)?,
    })
}

/// `R′(z)Ω₁,₁(z)` in an arbitrary ring, summing over explicit roots.
pub fn omega11_rhs_at<F: Coeff>(c: &Curve<F>, z: &F, roots: &[F]) -> Result<F, AlgebraError> {
    let mut acc = pole0_terms(c, z)?;
    for b in roots {
        acc = acc.add(&blob_summand(c, z, b)?).add(&tr_summand(c, z, b)?);
    }
    Ok(acc)
}

/// `R′(z)Ω₁,₁(z) − R′(−z)Ω₁,₁(−z)` and the derivative
/// `∂_z [λ/(24R′(z)R′(−z)) (3/z² − R‴(z)/R′(z) − R‴(−z)/R′(−z)
///  + R″(z)²/R′(z)² + R″(−z)²/R′(−z)² − R″(z)R″(−z)/(R′(z)R′(−z)))]`.
pub fn symplectic_sides<K: Coeff, B: RootSum<K>>(
    be: &B,
    z: &L<K>,
) -> Result<(L<K>, L<K>), AlgebraError> {
    let plus = omega11_parts(be, z)?.total_rhs()?;
    let minus = omega11_parts(be, &z.neg_series())?.total_rhs()?;
    let lhs = plus.checked_sub(&minus)?;

    let dc = be.base().lift(|s| Dual::constant(s.clone()));
    let zd = Dual::new(z.clone(), L::one());
    let mz = zd.neg();
    let (a, b) = (dc.rp(&zd)?, dc.rp(&mz)?);
    let (a2, b2) = (dc.r_deriv(2, &zd)?, dc.r_deriv(2, &mz)?);
    let (a3, b3) = (dc.r_deriv(3, &zd)?, dc.r_deriv(3, &mz)?);
    let bracket = zd
        .powi(2)
        .try_inv()?
        .scale(&E::from_int(3))
        .sub(&a3.try_div(&a)?)
        .sub(&b3.try_div(&b)?)
        .add(&a2.powi(2).try_div(&a.powi(2))?)
        .add(&b2.powi(2).try_div(&b.powi(2))?)
        .sub(&a2.mul(&b2).try_div(&a.mul(&b))?);
    let g = dc
        .lambda
        .mul(&bracket)
        .try_div(&a.mul(&b).scale(&E::from_int(24)))?;
    Ok((lhs, g.d))
}

/// `S_B(z) = 6·lim_{u→z} 1/(u+z)²`, the projective connection of the
/// reflected kernel, read off from the `δ⁰` coefficient of its expansion.
pub fn bergman_projective_connection(z: &E) -> Result<E, AlgebraError> {
    let s = Series::new(Var::Delta, 0, vec![z.scale(&E::from_int(2)), E::one()], 4);
    let phi = s.inv()?.powi(2);
    Ok(phi.coeff(0)?.scale(&E::from_int(6)))
}

/// Which piece of `Ω₁,₁` to tabulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Part {
    Total,
    Blob,
    Pure,
    Polar,
}

impl Part {
    fn pick<K: Coeff>(self, p: &Omega11Parts<K>) -> Result<L<K>, AlgebraError> {
        match self {
            Part::Total => p.total(),
            Part::Blob => p.blob(),
            Part::Pure => p.pure(),
            Part::Polar => p.polar(),
        }
    }
}

/// `Ω₁,₁(ε_b)` (or one of its pieces) through `λ^order`, any `d`.
pub fn omega11_closed(input: &SpectralInput, b: usize, part: Part, order: i64) -> Result<CoeffTable> {
    if b >= input.d() {
        return Err(QkmError::Unsupported(format!("eigenvalue index {b} out of range")));
    }
    let s = at_order(order + 1, |work| {
        let def = solve_deformation(input, work)?;
        let be = QuotientBackend::new(&def)?;
        Ok(part.pick(&omega11_parts(&be, &def.eps[b])?)?)
    })?;
    let name = match part {
        Part::Total => "Omega_{1,1}(eps)",
        Part::Blob => "Omega^BTR_{1,1}(eps)",
        Part::Pure => "Omega^TR_{1,1}(eps)",
        Part::Polar => "P Omega_{1,1}(eps)",
    };
    Ok(CoeffTable::from_series(name, &s, 1, order + 1, SignConvention::MinusLambda)?)
}

/// The pieces of `Ω₁,₁(ε)` summed over the explicit h-series roots at
/// `d = 1`, before reading back in λ; each must be real and even.
pub fn omega11_h_pieces(input: &SpectralInput, order: i64) -> Result<Vec<H<E>>> {
    let def = solve_deformation(input, order + 4)?;
    let be = HBackend::new(&def)?;
    let fc = be.curve().clone();
    let z = lift_h(&def.eps[0]);
    let blob = be.sum_h(&|b| blob_summand(&fc, &z, b))?;
    let tr = be.sum_h(&|b| tr_summand(&fc, &z, b))?;
    Ok(vec![blob, tr])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::minus_lambda;
    use crate::spectral::{solve_deformation, HBackend, QuotientBackend, SpectralInput};

    #[test]
    fn omega11_table_and_split() {
        let def = solve_deformation(&SpectralInput::default(), 14).unwrap();
        let be = QuotientBackend::new(&def).unwrap();
        let p = omega11_parts(&be, &def.eps[0]).unwrap();
        let tot = p.total().unwrap();
        for (k, want) in minus_lambda(1, &[1, 15, 198, 2511, 31266, 385398]).into_iter().enumerate() {
            assert_eq!(tot.coeff(k as i64 + 1).unwrap(), want);
        }
        let pure = p.pure().unwrap();
        for (k, want) in minus_lambda(1, &[0, 1, 20, 307, 4280, 56914]).into_iter().enumerate() {
            assert_eq!(pure.coeff(k as i64 + 1).unwrap(), want);
        }
    }

    #[test]
    fn closed_tables_at_d1() {
        let inp = SpectralInput::default();
        let t = omega11_closed(&inp, 0, Part::Blob, 3).unwrap();
        assert_eq!(t.coefficients(), [1, 14, 178].map(E::from_int));
        for h in omega11_h_pieces(&inp, 5).unwrap() {
            assert!(crate::spectral::real_and_even(&h));
        }
    }

    #[test]
    fn backends_agree_for_omega11() {
        let def = solve_deformation(&SpectralInput::default(), 8).unwrap();
        let q = QuotientBackend::new(&def).unwrap();
        let h = HBackend::new(&def).unwrap();
        let z = Series::constant(E::from_int(2));
        let a = omega11_parts(&q, &z).unwrap().total().unwrap();
        let b = omega11_parts(&h, &z).unwrap().total().unwrap();
        assert!(a.checked_sub(&b).unwrap().truncate(5).is_zero());
    }

    #[test]
    fn symplectic_identity_d2() {
        let inp = SpectralInput::from_ratios(&[(1, 2, 1), (1, 3, 2)], 6);
        let def = solve_deformation(&inp, 8).unwrap();
        let be = QuotientBackend::new(&def).unwrap();
        let (l, r) = symplectic_sides(&be, &Series::constant(E::from_int(2))).unwrap();
        assert!(l.checked_sub(&r).unwrap().truncate(6).is_zero());
    }

    #[test]
    fn projective_connection_at_two() {
        assert_eq!(bergman_projective_connection(&E::from_int(2)).unwrap(), E::ratio(3, 8));
    }
}
