//! Symmetric functions of the roots of a monic polynomial, computed in the
//! quotient ring `C[x]/P` without ever isolating a root.
//!
//! An element of the quotient stands for "the same expression evaluated at
//! every root at once". Traces of such elements are sums over roots and
//! norms are products over roots.

use std::sync::Arc;

use super::poly::Poly;
use super::ring::Coeff;
use super::scalar::ExactScalar;
use super::AlgebraError;

/// The quotient ring `C[x]/P` for a monic `P` of degree `n ≥ 1`.
#[derive(Debug)]
pub struct RootSystem<C> {
    /// `P = x^n + a[n-1] x^{n-1} + … + a[0]`.
    a: Vec<C>,
    /// `tr(x^k)` for `0 ≤ k < n`.
    power_sums: Vec<C>,
}

impl<C: Coeff> RootSystem<C> {
    /// Normalises `p` by its leading coefficient.
    pub fn new(p: &Poly<C>) -> Result<Arc<Self>, AlgebraError> {
        let n = p
            .degree()
            .filter(|&n| n >= 1)
            .ok_or_else(|| AlgebraError::Domain("root system of a constant".into()))?;
        let li = p.coeffs()[n].try_inv()?;
        let a: Vec<C> = p.coeffs()[..n].iter().map(|c| c.mul(&li)).collect();
        let mut ps = vec![C::from_int(n as i64)];
        for k in 1..n {
            // Newton: p_k = -(k a_{n-k} + Σ_{i<k} a_{n-i} p_{k-i})
            let mut acc = a[n - k].scale(&ExactScalar::from_int(k as i64));
            for i in 1..k {
                acc = acc.add(&a[n - i].mul(&ps[k - i]));
            }
            ps.push(acc.neg());
        }
        Ok(Arc::new(RootSystem { a, power_sums: ps }))
    }

    pub fn degree(&self) -> usize {
        self.a.len()
    }

    /// Reduce coefficients of an arbitrary polynomial in `x`.
    fn reduce(&self, mut c: Vec<C>) -> Vec<C> {
        let n = self.degree();
        while c.len() > n {
            let top = c.len() - 1;
            let t = c.pop().unwrap();
            if t.is_zero() {
                continue;
            }
            for j in 0..n {
                let slot = &mut c[top - n + j];
                *slot = slot.sub(&t.mul(&self.a[j]));
            }
        }
        c.resize(n, C::zero());
        c
    }

    /// Class of `x`, i.e. "the root".
    pub fn root(self: &Arc<Self>) -> QElem<C> {
        let n = self.degree();
        let mut c = vec![C::zero(); n.max(2)];
        c[1] = C::one();
        QElem::Full(self.clone(), self.reduce(c))
    }

    pub fn trace(&self, e: &QElem<C>) -> C {
        match e {
            QElem::Scalar(c) => c.scale(&ExactScalar::from_int(self.degree() as i64)),
            QElem::Full(_, v) => v
                .iter()
                .zip(&self.power_sums)
                .fold(C::zero(), |acc, (a, p)| acc.add(&a.mul(p))),
        }
    }

    /// Matrix of multiplication by `e` in the basis `1, x, …, x^{n-1}`,
    /// column `j` holding `e·x^j`.
    fn mult_matrix(&self, v: &[C]) -> Vec<Vec<C>> {
        let n = self.degree();
        let mut cols = Vec::with_capacity(n);
        let mut cur = v.to_vec();
        for _ in 0..n {
            cols.push(cur.clone());
            let mut sh = vec![C::zero()];
            sh.extend(cur);
            cur = self.reduce(sh);
        }
        (0..n)
            .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
            .collect()
    }

    /// Product of the values of `e` over all roots.
    pub fn norm(&self, e: &QElem<C>) -> C {
        match e {
            QElem::Scalar(c) => c.powi(self.degree() as u32),
            QElem::Full(_, v) => faddeev_leverrier(&self.mult_matrix(v)).0,
        }
    }
}

/// Determinant and adjugate by the Faddeev–LeVerrier recursion.
fn faddeev_leverrier<C: Coeff>(a: &[Vec<C>]) -> (C, Vec<Vec<C>>) {
    let n = a.len();
    let ident = |c: &C| -> Vec<Vec<C>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { c.clone() } else { C::zero() }).collect())
            .collect()
    };
    let matmul = |x: &[Vec<C>], y: &[Vec<C>]| -> Vec<Vec<C>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(C::zero(), |acc, k| acc.add(&x[i][k].mul(&y[k][j]))))
                    .collect()
            })
            .collect()
    };
    let mut m = ident(&C::one());
    let mut c = C::one();
    for k in 1..=n {
        if k > 1 {
            let am = matmul(a, &m);
            let ci = ident(&c);
            m = (0..n)
                .map(|i| (0..n).map(|j| am[i][j].add(&ci[i][j])).collect())
                .collect();
        }
        let am = matmul(a, &m);
        let tr = (0..n).fold(C::zero(), |acc, i| acc.add(&am[i][i]));
        c = tr.scale(&ExactScalar::ratio(-1, k as i64));
    }
    // c is now the constant term c_0 of det(tI - A), m is M_n
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let det = c.scale(&ExactScalar::from_int(sign));
    let adj_sign = ExactScalar::from_int(-sign);
    let adj = m
        .into_iter()
        .map(|row| row.into_iter().map(|x| x.scale(&adj_sign)).collect())
        .collect();
    (det, adj)
}

/// Element of `C[x]/P`. Scalars carry no reference to the ring so that the
/// type can implement [`Coeff`].
#[derive(Clone, Debug)]
pub enum QElem<C> {
    Scalar(C),
    Full(Arc<RootSystem<C>>, Vec<C>),
}

impl<C: Coeff> QElem<C> {
    /// Coefficients in the basis `1, x, …`, padded to length `n`.
    pub fn coefficients(&self, n: usize) -> Vec<C> {
        match self {
            QElem::Scalar(c) => {
                let mut v = vec![C::zero(); n.max(1)];
                v[0] = c.clone();
                v
            }
            QElem::Full(_, v) => v.clone(),
        }
    }

    fn ring<'a>(&'a self, o: &'a Self) -> Option<&'a Arc<RootSystem<C>>> {
        match (self, o) {
            (QElem::Full(r, _), QElem::Full(s, _)) => {
                assert!(Arc::ptr_eq(r, s), "elements of different quotient rings");
                Some(r)
            }
            (QElem::Full(r, _), _) | (_, QElem::Full(r, _)) => Some(r),
            _ => None,
        }
    }

    fn zip(&self, o: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        match self.ring(o) {
            None => match (self, o) {
                (QElem::Scalar(a), QElem::Scalar(b)) => QElem::Scalar(f(a, b)),
                _ => unreachable!(),
            },
            Some(r) => {
                let n = r.degree();
                let (a, b) = (self.coefficients(n), o.coefficients(n));
                QElem::Full(r.clone(), a.iter().zip(&b).map(|(x, y)| f(x, y)).collect())
            }
        }
    }
}

impl<C: Coeff> PartialEq for QElem<C> {
    fn eq(&self, o: &Self) -> bool {
        let n = match self.ring(o) {
            Some(r) => r.degree(),
            None => 1,
        };
        self.coefficients(n) == o.coefficients(n)
    }
}

impl<C: Coeff> Coeff for QElem<C> {
    fn zero() -> Self {
        QElem::Scalar(C::zero())
    }
    fn one() -> Self {
        QElem::Scalar(C::one())
    }
    fn is_zero(&self) -> bool {
        match self {
            QElem::Scalar(c) => c.is_zero(),
            QElem::Full(_, v) => v.iter().all(C::is_zero),
        }
    }
    fn add(&self, o: &Self) -> Self {
        self.zip(o, C::add)
    }
    fn sub(&self, o: &Self) -> Self {
        self.zip(o, C::sub)
    }
    fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (QElem::Scalar(a), QElem::Scalar(b)) => QElem::Scalar(a.mul(b)),
            (QElem::Scalar(a), QElem::Full(r, v)) | (QElem::Full(r, v), QElem::Scalar(a)) => {
                QElem::Full(r.clone(), v.iter().map(|x| x.mul(a)).collect())
            }
            (QElem::Full(r, a), QElem::Full(_, b)) => {
                self.ring(o);
                let mut out = vec![C::zero(); a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        out[i + j] = out[i + j].add(&x.mul(y));
                    }
                }
                QElem::Full(r.clone(), r.reduce(out))
            }
        }
    }
    fn neg(&self) -> Self {
        match self {
            QElem::Scalar(c) => QElem::Scalar(c.neg()),
            QElem::Full(r, v) => QElem::Full(r.clone(), v.iter().map(C::neg).collect()),
        }
    }
    fn try_inv(&self) -> Result<Self, AlgebraError> {
        match self {
            QElem::Scalar(c) => Ok(QElem::Scalar(c.try_inv()?)),
            QElem::Full(r, v) => {
                if v.iter().skip(1).all(C::is_zero) {
                    let inv = v[0].try_inv()?;
                    let mut out = vec![C::zero(); v.len()];
                    out[0] = inv;
                    return Ok(QElem::Full(r.clone(), out));
                }
                let (det, adj) = faddeev_leverrier(&r.mult_matrix(v));
                let dinv = det.try_inv()?;
                let y = adj.iter().map(|row| row[0].mul(&dinv)).collect();
                Ok(QElem::Full(r.clone(), y))
            }
        }
    }
    fn from_scalar(s: &ExactScalar) -> Self {
        QElem::Scalar(C::from_scalar(s))
    }
    fn scale(&self, s: &ExactScalar) -> Self {
        match self {
            QElem::Scalar(c) => QElem::Scalar(c.scale(s)),
            QElem::Full(r, v) => QElem::Full(r.clone(), v.iter().map(|x| x.scale(s)).collect()),
        }
    }
}

/// `Σ_i f(β_i)` over the roots of `p`.
pub fn sum_over_roots<C: Coeff>(
    p: &Poly<C>,
    f: impl Fn(&QElem<C>) -> Result<QElem<C>, AlgebraError>,
) -> Result<C, AlgebraError> {
    let sys = RootSystem::new(p)?;
    Ok(sys.trace(&f(&sys.root())?))
}

/// `Π_i g(β_i)` over the roots of `p`.
pub fn product_over_roots<C: Coeff>(p: &Poly<C>, g: &Poly<C>) -> Result<C, AlgebraError> {
    let sys = RootSystem::new(p)?;
    let x = sys.root();
    let v = g.eval_in(&x, |c| QElem::Scalar(c.clone()));
    Ok(sys.norm(&v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Series, Var};
    use proptest::prelude::*;

    fn q(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    fn poly_from_roots(r: &[i64]) -> Poly<ExactScalar> {
        r.iter()
            .fold(Poly::constant(q(1)), |acc, &x| acc.mul(&Poly::linear(q(-x))))
    }

    #[test]
    fn traces_of_powers_match_power_sums() {
        let p = poly_from_roots(&[1, 2, -3]);
        let s = sum_over_roots(&p, |x| Ok(x.mul(x).mul(x))).unwrap();
        assert_eq!(s, q(1 + 8 - 27));
    }

    #[test]
    fn reciprocal_sum() {
        let p = poly_from_roots(&[2, 3, 5]);
        let s = sum_over_roots(&p, |x| x.try_inv()).unwrap();
        assert_eq!(s, ExactScalar::ratio(31, 30));
    }

    #[test]
    fn resultant_as_product() {
        let p = poly_from_roots(&[1, 4]);
        let g = poly_from_roots(&[2]);
        assert_eq!(product_over_roots(&p, &g).unwrap(), q(-2));
    }

    #[test]
    fn series_coefficients() {
        // roots ±sqrt(λ) of x^2 - λ: Σ 1/(1 - β) = 2/(1 - λ)
        let lam = Series::<ExactScalar>::gen(Var::Lambda);
        let p = Poly::new(vec![lam.neg(), Series::zero(), Series::one()]);
        let s = sum_over_roots(&p, |x| {
            let one = QElem::Scalar(Series::one().truncate(8));
            one.sub(x).try_inv()
        })
        .unwrap();
        for k in 0..8 {
            assert_eq!(s.coeff(k).unwrap(), q(2));
        }
    }

    proptest! {
        #[test]
        fn sum_of_inverse_squares(a in 1i64..9, b in 1i64..9, c in 1i64..9) {
            prop_assume!(a != b && b != c && a != c);
            let p = poly_from_roots(&[a, -b, c]);
            let s = sum_over_roots(&p, |x| x.mul(x).try_inv()).unwrap();
            let expect = ExactScalar::ratio(1, a * a)
                .add(&ExactScalar::ratio(1, b * b))
                .add(&ExactScalar::ratio(1, c * c));
            prop_assert_eq!(s, expect);
        }

        #[test]
        fn norm_is_multiplicative(a in -5i64..5, b in -5i64..5) {
            let p = poly_from_roots(&[1, 3, -2]);
            let sys = RootSystem::new(&p).unwrap();
            let x = sys.root();
            let u = x.add(&QElem::Scalar(q(a)));
            let v = x.mul(&x).sub(&QElem::Scalar(q(b)));
            prop_assert_eq!(sys.norm(&u.mul(&v)), sys.norm(&u).mul(&sys.norm(&v)));
        }
    }
}
