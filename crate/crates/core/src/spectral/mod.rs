//! The deformed spectral curve: λ-series solutions `ε_k(λ)`, `ϱ_k(λ)` of
//! `R(ε_k) = e_k`, `ϱ_k R′(ε_k) = r_k`, the rational function `R` and its
//! derivatives, ramification data, and the Zhukovsky coordinate at `d = 1`.

mod branch;
mod curve;
mod sums;

pub use branch::{lift_h, real_and_even, to_lambda, BranchD1, Zhukovsky, H};
pub use curve::Curve;
pub use sums::{HBackend, QuotientBackend, RootFn, RootSum, RootVecFn, Vanishing};

use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, Coeff, Dual, ExactScalar, Poly, Series, Var};

/// λ-series over a coefficient ring `K`.
pub type L<K> = Series<K>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("invalid spectral input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn de_scalar<'de, D: Deserializer<'de>>(d: D) -> Result<ExactScalar, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        S(String),
        I(i64),
    }
    match Raw::deserialize(d)? {
        Raw::S(s) => s.parse().map_err(serde::de::Error::custom),
        Raw::I(i) => Ok(ExactScalar::from_int(i)),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    #[serde(deserialize_with = "de_scalar")]
    pub e: ExactScalar,
    pub r: u32,
}

/// Spectral data `(e_k, r_k)` with `N` and a truncation order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralInput {
    #[serde(default)]
    pub d: Option<usize>,
    #[serde(rename = "N", default)]
    pub n: Option<u32>,
    pub eigenvalues: Vec<Eigenvalue>,
    #[serde(default = "default_order")]
    pub order: usize,
}

fn default_order() -> usize {
    6
}

impl Default for SpectralInput {
    /// `d = 1`, `2e = 1`, `N = r = 1`.
    fn default() -> Self {
        SpectralInput::new(&[(ExactScalar::ratio(1, 2), 1)], None, 6)
    }
}

impl SpectralInput {
    pub fn new(eig: &[(ExactScalar, u32)], n: Option<u32>, order: usize) -> Self {
        SpectralInput {
            d: Some(eig.len()),
            n,
            eigenvalues: eig
                .iter()
                .map(|(e, r)| Eigenvalue { e: e.clone(), r: *r })
                .collect(),
            order,
        }
    }

    /// Convenience constructor from `(numerator, denominator, multiplicity)`.
    pub fn from_ratios(eig: &[(i64, i64, u32)], order: usize) -> Self {
        let v: Vec<_> = eig
            .iter()
            .map(|&(p, q, r)| (ExactScalar::ratio(p, q), r))
            .collect();
        Self::new(&v, None, order)
    }

    pub fn d(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn big_n(&self) -> u32 {
        self.n
            .unwrap_or_else(|| self.eigenvalues.iter().map(|x| x.r).sum())
    }

    pub fn e(&self) -> Vec<ExactScalar> {
        self.eigenvalues.iter().map(|x| x.e.clone()).collect()
    }

    pub fn r(&self) -> Vec<u32> {
        self.eigenvalues.iter().map(|x| x.r).collect()
    }

    pub fn validate(&self) -> Result<(), SpectralError> {
        let bad = |m: String| Err(SpectralError::Invalid(m));
        if self.eigenvalues.is_empty() {
            return bad("no eigenvalues".into());
        }
        if let Some(d) = self.d {
            if d != self.eigenvalues.len() {
                return bad(format!("d = {d} but {} eigenvalues given", self.eigenvalues.len()));
            }
        }
        if self.order < 1 {
            return bad("order must be at least 1".into());
        }
        let n = self.big_n();
        if n == 0 {
            return bad("N must be positive".into());
        }
        for (k, ev) in self.eigenvalues.iter().enumerate() {
            if !ev.e.is_real() || !num_traits::Signed::is_positive(ev.e.re()) {
                return bad(format!("eigenvalue e_{} = {} is not a positive rational", k + 1, ev.e));
            }
            if ev.r == 0 {
                return bad(format!("multiplicity r_{} is zero", k + 1));
            }
            for other in &self.eigenvalues[..k] {
                if other.e == ev.e {
                    return bad(format!("eigenvalue {} repeated", ev.e));
                }
            }
        }
        Ok(())
    }
}

/// Solution of the deformation system over a coefficient ring `K`
/// (`ExactScalar`, or dual numbers carrying `∂/∂e_b`).
#[derive(Debug, Clone)]
pub struct Deformation<K> {
    pub e: Vec<K>,
    pub r: Vec<u32>,
    pub n: u32,
    pub eps: Vec<L<K>>,
    /// `ϱ_k`, normalised so that `ϱ_k(0) = r_k`.
    pub rho: Vec<L<K>>,
    pub order: i64,
}

/// Jacobi fixed-point sweeps in the λ-graded ring. Each sweep fixes one
/// more order.
pub fn solve_with<K: Coeff>(
    e: &[K],
    r: &[u32],
    n: u32,
    order: i64,
) -> Result<Deformation<K>, SpectralError> {
    let d = e.len();
    for k in 0..d {
        for l in 0..d {
            if e[k].add(&e[l]).is_zero() {
                return Err(SpectralError::Invalid(format!(
                    "e_{} + e_{} vanishes",
                    k + 1,
                    l + 1
                )));
            }
        }
    }
    let lam_n = Series::<K>::monomial(Var::Lambda, K::from_scalar(&ExactScalar::ratio(1, n as i64)), 1);
    let cst = |c: K| Series::new(Var::Lambda, 0, vec![c], order);
    let rk: Vec<K> = r.iter().map(|&x| K::from_int(x as i64)).collect();
    let mut eps: Vec<L<K>> = e.iter().map(|x| cst(x.clone())).collect();
    let mut rho: Vec<L<K>> = rk.iter().map(|x| cst(x.clone())).collect();
    for _ in 0..order {
        let mut ne = Vec::with_capacity(d);
        let mut nr = Vec::with_capacity(d);
        for k in 0..d {
            let mut s1 = Series::zero_in(Var::Lambda);
            let mut s2 = Series::zero_in(Var::Lambda);
            for l in 0..d {
                let inv = eps[l].checked_add(&eps[k])?.inv()?;
                let t = rho[l].checked_mul(&inv)?;
                s2 = s2.checked_add(&t.checked_mul(&inv)?)?;
                s1 = s1.checked_add(&t)?;
            }
            ne.push(cst(e[k].clone()).checked_add(&lam_n.checked_mul(&s1)?)?);
            let rp = Series::one().checked_add(&lam_n.checked_mul(&s2)?)?;
            nr.push(cst(rk[k].clone()).checked_mul(&rp.inv()?)?);
        }
        eps = ne;
        rho = nr;
    }
    Ok(Deformation {
        e: e.to_vec(),
        r: r.to_vec(),
        n,
        eps,
        rho,
        order,
    })
}

pub fn solve_deformation(
    input: &SpectralInput,
    order: i64,
) -> Result<Deformation<ExactScalar>, SpectralError> {
    input.validate()?;
    solve_with(&input.e(), &input.r(), input.big_n(), order)
}

/// Deformation with `e_b` seeded as a dual variable, so every derived
/// quantity carries its `∂/∂e_b` alongside.
pub fn solve_deformation_seeded(
    input: &SpectralInput,
    b: usize,
    order: i64,
) -> Result<Deformation<Dual<ExactScalar>>, SpectralError> {
    input.validate()?;
    if b >= input.d() {
        return Err(SpectralError::Invalid(format!("boundary index {b} out of range")));
    }
    let e: Vec<_> = input
        .e()
        .into_iter()
        .enumerate()
        .map(|(k, x)| if k == b { Dual::variable(x) } else { Dual::constant(x) })
        .collect();
    solve_with(&e, &input.r(), input.big_n(), order)
}

impl<K: Coeff> Deformation<K> {
    pub fn d(&self) -> usize {
        self.e.len()
    }

    /// `ϱ_k / N`.
    pub fn rho_hat(&self) -> Vec<L<K>> {
        let s = ExactScalar::ratio(1, self.n as i64);
        self.rho.iter().map(|x| x.scale(&s)).collect()
    }

    pub fn curve(&self) -> Curve<L<K>> {
        Curve {
            lambda: Series::gen(Var::Lambda),
            eps: self.eps.clone(),
            rho_hat: self.rho_hat(),
        }
    }

    /// `R(ε_k) − e_k` and `ϱ_k R′(ε_k) − r_k` for every `k`.
    pub fn residuals(&self) -> Result<Vec<(L<K>, L<K>)>, AlgebraError> {
        let c = self.curve();
        (0..self.d())
            .map(|k| {
                let r0 = c.r_deriv(0, &self.eps[k])?.checked_sub(&Series::constant(self.e[k].clone()))?;
                let r1 = self.rho[k]
                    .checked_mul(&c.r_deriv(1, &self.eps[k])?)?
                    .checked_sub(&Series::constant(K::from_int(self.r[k] as i64)))?;
                Ok((r0, r1))
            })
            .collect()
    }

    /// Numerator `P` of `R′ = P/D²`, `D = Π(z+ε_k)`.
    pub fn p_poly(&self) -> Poly<L<K>> {
        self.curve().p_poly()
    }

    pub fn d_poly(&self) -> Poly<L<K>> {
        self.curve().d_poly()
    }
}

/// Expansions of `ε = (4e + √(4e²+12λ))/6` and
/// `ϱ = N(2e√(4e²+12λ) − 4e² + 12λ)/(18λ)` for a single eigenvalue.
pub fn d1_closed_form(
    e: &ExactScalar,
    n: u32,
    order: i64,
) -> Result<(L<ExactScalar>, L<ExactScalar>), AlgebraError> {
    let q = |a: i64, b: i64| ExactScalar::ratio(a, b);
    let disc = Series::new(
        Var::Lambda,
        0,
        vec![e.mul(e).scale(&q(4, 1)), q(12, 1)],
        order + 1,
    );
    let root = disc.sqrt()?;
    let eps = Series::constant(e.scale(&q(4, 1)))
        .checked_add(&root)?
        .scale(&q(1, 6))
        .truncate(order);
    let num = root
        .mul_coeff(&e.scale(&q(2, 1)))
        .checked_sub(&Series::constant(e.mul(e).scale(&q(4, 1))))?
        .checked_add(&Series::monomial(Var::Lambda, q(12, 1), 1))?;
    let rho = num.shift(-1).scale(&q(n as i64, 18));
    Ok((eps, rho.truncate(order)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &L<ExactScalar>, k: usize) -> Vec<ExactScalar> {
        s.coeff_range(0, k as i64).unwrap()
    }

    #[test]
    fn d1_half_expansion() {
        let def = solve_deformation(&SpectralInput::default(), 5).unwrap();
        let f = |v: &[i64]| v.iter().map(|&x| ExactScalar::from_int(x)).collect::<Vec<_>>();
        assert_eq!(ints(&def.eps[0], 5)[1..], f(&[1, -3, 18, -135])[..]);
        assert_eq!(ints(&def.rho[0], 5), f(&[1, -1, 6, -45, 378]));
    }

    #[test]
    fn order_one_is_undeformed() {
        let inp = SpectralInput::from_ratios(&[(1, 2, 1), (1, 3, 2)], 1);
        let def = solve_deformation(&inp, 1).unwrap();
        assert_eq!(def.eps[1].coeff(0).unwrap(), ExactScalar::ratio(1, 3));
        assert_eq!(def.rho[1].coeff(0).unwrap(), ExactScalar::from_int(2));
        assert!(def.eps[1].coeff(1).is_err());
    }

    #[test]
    fn residuals_vanish_d2() {
        let inp = SpectralInput::from_ratios(&[(1, 2, 1), (1, 3, 2)], 6);
        let def = solve_deformation(&inp, 6).unwrap();
        for (a, b) in def.residuals().unwrap() {
            assert!(a.is_zero() && a.order().unwrap() >= 6, "{a}");
            assert!(b.is_zero() && b.order().unwrap() >= 6, "{b}");
        }
    }

    #[test]
    fn closed_form_matches_solver() {
        for (p, q) in [(1, 2), (1, 3), (3, 2)] {
            let inp = SpectralInput::from_ratios(&[(p, q, 1)], 8);
            let def = solve_deformation(&inp, 8).unwrap();
            let (eps, rho) = d1_closed_form(&ExactScalar::ratio(p, q), 1, 8).unwrap();
            assert_eq!(def.eps[0], eps);
            assert_eq!(def.rho[0], rho);
        }
    }

    #[test]
    fn seeded_solution_at_order_zero() {
        let inp = SpectralInput::from_ratios(&[(1, 2, 1), (1, 3, 2)], 4);
        let def = solve_deformation_seeded(&inp, 0, 4).unwrap();
        assert_eq!(def.eps[0].coeff(0).unwrap().d, ExactScalar::from_int(1));
        assert_eq!(def.eps[1].coeff(0).unwrap().d, ExactScalar::from_int(0));
        assert!(def.rho[0].coeff(0).unwrap().d.is_zero());
    }

    #[test]
    fn config_parsing_and_validation() {
        let js = r#"{"d":2,"N":3,"eigenvalues":[{"e":"1/2","r":1},{"e":"1/3","r":2}],"order":5}"#;
        let inp: SpectralInput = serde_json::from_str(js).unwrap();
        assert!(inp.validate().is_ok());
        assert_eq!(inp.big_n(), 3);
        let bad = r#"{"eigenvalues":[{"e":"-1/2","r":1}]}"#;
        let inp: SpectralInput = serde_json::from_str(bad).unwrap();
        assert!(inp.validate().is_err());
        let dup = r#"{"eigenvalues":[{"e":1,"r":1},{"e":"2/2","r":1}]}"#;
        let inp: SpectralInput = serde_json::from_str(dup).unwrap();
        assert!(inp.validate().is_err());
    }
}
