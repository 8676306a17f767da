//! Genus-zero correlators `Ω₀,₂` and `Ω₀,₃`, off and on the diagonal.

use crate::algebra::{AlgebraError, Coeff, Dual, ExactScalar, Poly, Series, Var};
use crate::spectral::{Curve, RootSum, L};

type D3<C> = Dual<Dual<Dual<C>>>;

/// `Ω₀,₂(z,w) = (1/(R′(z)R′(w)))(1/(z−w)² + 1/(z+w)²)`.
pub fn omega02<F: Coeff>(c: &Curve<F>, z: &F, w: &F) -> Result<F, AlgebraError> {
    let a = z.sub(w).try_inv()?;
    let b = z.add(w).try_inv()?;
    a.mul(&a)
        .add(&b.mul(&b))
        .try_div(&c.rp(z)?.mul(&c.rp(w)?))
}

const TAYLOR: i64 = 6;

/// `Σ_m R^{(m+j)}(x) δ^m/m!` for `m < TAYLOR`, dropping `m < skip`.
fn taylor<K: Coeff>(
    c: &Curve<L<K>>,
    x: &L<K>,
    j: u32,
    skip: i64,
) -> Result<Series<L<K>>, AlgebraError> {
    let mut cs = Vec::new();
    let mut fact = 1i64;
    for m in 0..TAYLOR {
        if m > 0 {
            fact *= m;
        }
        cs.push(if m < skip {
            L::zero()
        } else {
            c.r_deriv(j + m as u32, x)?.scale(&ExactScalar::ratio(1, fact))
        });
    }
    Ok(Series::new(Var::Delta, 0, cs, TAYLOR))
}

/// The regularized diagonal
/// `lim_{w→x} [Ω₀,₂(x,w) − 1/(R(x)−R(w))²]`.
pub fn omega02_diag<K: Coeff>(c: &Curve<L<K>>, x: &L<K>) -> Result<L<K>, AlgebraError> {
    let delta = Series::new(Var::Delta, 0, vec![x.clone(), L::one()], TAYLOR);
    let rp_w = taylor(c, x, 1, 0)?;
    let dr = taylor(c, x, 0, 1)?;
    let inv_sq = |s: &Series<L<K>>| s.inv().map(|i| i.powi(2));
    let poles = Series::monomial(Var::Delta, L::one(), -2).checked_add(&inv_sq(&delta.checked_add(&Series::constant(x.clone()))?)?)?;
    let plain = poles.checked_mul(&rp_w.inv()?)?.mul_coeff(&c.rp(x)?.try_inv()?);
    plain.checked_sub(&inv_sq(&dr)?)?.coeff(0)
}

fn lift3<C: Coeff>(c: &C) -> D3<C> {
    Dual::constant(Dual::constant(Dual::constant(c.clone())))
}

/// `1/(R′(x)R′(−x)(x+u))` written through `R′ = P/D²`, so that it stays
/// finite where `R′(−x)` has a pole.
fn f_kernel<F: Coeff, C: Coeff>(
    p: &Poly<C>,
    dd: &Poly<C>,
    x: &F,
    u: &F,
    lift: impl Fn(&C) -> F + Copy,
) -> Result<F, AlgebraError> {
    let mx = x.neg();
    let num = dd.eval_in(x, lift).mul(&dd.eval_in(&mx, lift));
    let den = p.eval_in(x, lift).mul(&p.eval_in(&mx, lift)).mul(&x.add(u));
    num.mul(&num).try_div(&den)
}

/// `Σ_i ∂_zQ(z;β_i)∂_vQ(v;β_i)∂_u(1/(u−β_i))/(R′(−β_i)R″(β_i))` with
/// `Q(a;b) = 1/(a+b) + 1/(a−b)`.
fn omega03_root_part<K: Coeff, B: RootSum<K>>(
    be: &B,
    z: &L<K>,
    v: &L<K>,
    u: &L<K>,
) -> Result<L<K>, AlgebraError> {
    let (z, v, u) = (be.lift(z), be.lift(v), be.lift(u));
    let c = be.curve();
    let dq = |a: &B::F, b: &B::F| -> Result<B::F, AlgebraError> {
        let p = a.add(b).try_inv()?;
        let m = a.sub(b).try_inv()?;
        Ok(p.mul(&p).add(&m.mul(&m)).neg())
    };
    be.sum(&|b| {
        let w = u.sub(b).try_inv()?;
        let den = c.rp(&b.neg())?.mul(&c.r_deriv(2, b)?);
        dq(&z, b)?
            .mul(&dq(&v, b)?)
            .mul(&w.mul(&w).neg())
            .try_div(&den)
    })
}

/// `Ω₀,₃(z,v,u)` for pairwise distinct arguments.
pub fn omega03<K: Coeff, B: RootSum<K>>(
    be: &B,
    z: &L<K>,
    v: &L<K>,
    u: &L<K>,
) -> Result<L<K>, AlgebraError> {
    let c = be.base();
    let (p, dd) = (c.p_poly(), c.d_poly());
    let one = L::<K>::one();
    let zs: D3<L<K>> = Dual::new(Dual::constant(Dual::constant(z.clone())), Dual::constant(Dual::constant(one.clone())));
    let vs: D3<L<K>> = Dual::constant(Dual::new(Dual::constant(v.clone()), Dual::constant(one.clone())));
    let us: D3<L<K>> = Dual::constant(Dual::constant(Dual::new(u.clone(), one)));
    let fz = f_kernel(&p, &dd, &zs, &us, lift3)?;
    let fv = f_kernel(&p, &dd, &vs, &us, lift3)?;
    let phi = fz
        .add(&fv)
        .try_div(&zs.add(&vs))?
        .add(&fz.sub(&fv).try_div(&vs.sub(&zs))?);
    let smooth = phi.d.d.d;
    let total = smooth.checked_add(&omega03_root_part(be, z, v, u)?)?;
    let den = c.rp(z)?.checked_mul(&c.rp(v)?)?.checked_mul(&c.rp(u)?)?;
    c.lambda.checked_mul(&total)?.checked_div(&den)
}

/// `Ω₀,₃(x,x,x)`. The divided difference `(f(z)−f(v))/(v−z)` contributes
/// `−∂_u f‴(x)/6` on the diagonal.
pub fn omega03_diag<K: Coeff, B: RootSum<K>>(be: &B, x: &L<K>) -> Result<L<K>, AlgebraError> {
    let c = be.base();
    let (p, dd) = (c.p_poly(), c.d_poly());
    let one = L::<K>::one();
    let zs: D3<L<K>> = Dual::new(Dual::constant(Dual::constant(x.clone())), Dual::constant(Dual::constant(one.clone())));
    let vs: D3<L<K>> = Dual::constant(Dual::new(Dual::constant(x.clone()), Dual::constant(one.clone())));
    let us: D3<L<K>> = Dual::constant(Dual::constant(Dual::new(x.clone(), one.clone())));
    let fz = f_kernel(&p, &dd, &zs, &us, lift3)?;
    let fv = f_kernel(&p, &dd, &vs, &us, lift3)?;
    let smooth = fz.add(&fv).try_div(&zs.add(&vs))?.d.d.d;

    // f(x+δ; u) with u carrying ∂_u.
    type S<K> = Series<Dual<L<K>>>;
    let xd: S<K> = Series::new(
        Var::Delta,
        0,
        vec![Dual::constant(x.clone()), Dual::one()],
        4,
    );
    let ud: S<K> = Series::constant(Dual::new(x.clone(), one));
    let lift = |s: &L<K>| -> S<K> { Series::constant(Dual::constant(s.clone())) };
    let fd = f_kernel(&p, &dd, &xd, &ud, lift)?;
    let cubic = fd.coeff(3)?.d;

    let total = smooth
        .checked_sub(&cubic)?
        .checked_add(&omega03_root_part(be, x, x, x)?)?;
    let rp = c.rp(x)?;
    c.lambda.checked_mul(&total)?.checked_div(&rp.powi(3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::minus_lambda;
    use crate::spectral::{solve_deformation, QuotientBackend, SpectralInput};

    #[test]
    fn two_point_diagonal_table() {
        let def = solve_deformation(&SpectralInput::default(), 9).unwrap();
        let c = def.curve();
        let v = omega02_diag(&c, &def.eps[0]).unwrap();
        for (k, want) in minus_lambda(0, &[1, 7, 58, 522, 4941]).into_iter().enumerate() {
            assert_eq!(v.coeff(k as i64).unwrap(), want, "λ^{k}");
        }
    }

    #[test]
    fn three_point_diagonal_table() {
        let def = solve_deformation(&SpectralInput::default(), 10).unwrap();
        let be = QuotientBackend::new(&def).unwrap();
        let v = omega03_diag(&be, &def.eps[0]).unwrap();
        assert!(v.valuation().unwrap() >= 1, "{v}");
        for (k, want) in minus_lambda(1, &[12, 240, 3628, 49464]).into_iter().enumerate() {
            assert_eq!(v.coeff(k as i64 + 1).unwrap(), want, "λ^{}", k + 1);
        }
    }
}
