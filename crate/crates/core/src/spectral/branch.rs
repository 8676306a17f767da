use super::{Curve, Deformation, SpectralError, L};
use crate::algebra::{AlgebraError, Coeff, ExactScalar, Series, Var};

/// h-series, `h² = λ`.
pub type H<K> = Series<K>;

/// Ramification data of the single-eigenvalue curve in the variable `h`.
///
/// `R′(z) = 1 + λϱ̂/(ε+z)²` vanishes at `z = −ε ± γ̃` with `γ̃² = −λϱ̂`.
#[derive(Debug, Clone)]
pub struct BranchD1<K> {
    pub eps: H<K>,
    pub rho_hat: H<K>,
    /// `γ̃ = i h √ϱ̂`.
    pub gamma: H<K>,
    pub beta_plus: H<K>,
    pub beta_minus: H<K>,
    pub b_plus: H<K>,
    pub b_minus: H<K>,
}

pub fn lift_h<K: Coeff>(s: &L<K>) -> H<K> {
    s.substitute_power(2, Var::H)
}

/// Reads an even h-series back as a λ-series.
pub fn to_lambda<K: Coeff>(s: &H<K>) -> Result<L<K>, AlgebraError> {
    s.even_part_as(Var::Lambda)
}

impl<K: Coeff> BranchD1<K> {
    pub fn new(def: &Deformation<K>) -> Result<Self, SpectralError> {
        if def.d() != 1 {
            return Err(SpectralError::Invalid(format!(
                "branch-point expansions need d = 1, got d = {}",
                def.d()
            )));
        }
        let eps = lift_h(&def.eps[0]);
        let rho_hat = lift_h(&def.rho_hat()[0]);
        let i = K::from_scalar(&ExactScalar::i());
        let gamma = rho_hat.sqrt()?.shift(1).mul_coeff(&i);
        let two_g = gamma.scale(&ExactScalar::from_int(2));
        let me = eps.neg_series();
        Ok(BranchD1 {
            beta_plus: me.checked_add(&gamma)?,
            beta_minus: me.checked_sub(&gamma)?,
            b_plus: me.checked_add(&two_g)?,
            b_minus: me.checked_sub(&two_g)?,
            eps,
            rho_hat,
            gamma,
        })
    }

    pub fn betas(&self) -> [&H<K>; 2] {
        [&self.beta_plus, &self.beta_minus]
    }

    pub fn curve(&self) -> Curve<H<K>> {
        Curve {
            lambda: Series::monomial(Var::H, K::one(), 2),
            eps: vec![self.eps.clone()],
            rho_hat: vec![self.rho_hat.clone()],
        }
    }

    pub fn zhukovsky(&self) -> Zhukovsky<K> {
        Zhukovsky {
            eps: self.eps.clone(),
            gamma: self.gamma.clone(),
        }
    }
}

/// The coordinate `t = (ε+z)/γ̃`, in which `R = −ε + γ̃(t + 1/t)` and the
/// sheet exchange is `t ↦ 1/t`.
#[derive(Debug, Clone)]
pub struct Zhukovsky<K> {
    pub eps: H<K>,
    pub gamma: H<K>,
}

impl<K: Coeff> Zhukovsky<K> {
    pub fn t_of_z(&self, z: &H<K>) -> Result<H<K>, AlgebraError> {
        self.eps.checked_add(z)?.checked_div(&self.gamma)
    }

    pub fn z_of_t(&self, t: &H<K>) -> Result<H<K>, AlgebraError> {
        self.gamma.checked_mul(t)?.checked_sub(&self.eps)
    }

    pub fn x_of_t(&self, t: &H<K>) -> Result<H<K>, AlgebraError> {
        let s = t.checked_add(&t.inv()?)?;
        self.gamma.checked_mul(&s)?.checked_sub(&self.eps)
    }

    /// `σ(q) = −ε + γ̃²/(q+ε)`, the image of `q` under `t ↦ 1/t`.
    pub fn sigma(&self, q: &H<K>) -> Result<H<K>, AlgebraError> {
        let g2 = self.gamma.checked_mul(&self.gamma)?;
        g2.checked_div(&q.checked_add(&self.eps)?)?
            .checked_sub(&self.eps)
    }
}

/// True when a Gaussian h-series is real with vanishing odd part.
pub fn real_and_even(s: &H<ExactScalar>) -> bool {
    s.is_real() && s.terms().all(|(k, _)| k % 2 == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{solve_deformation, SpectralInput};

    fn branch(order: i64) -> BranchD1<ExactScalar> {
        let def = solve_deformation(&SpectralInput::default(), order).unwrap();
        BranchD1::new(&def).unwrap()
    }

    #[test]
    fn derivative_vanishes_at_branch_points() {
        let br = branch(6);
        let c = br.curve();
        for b in br.betas() {
            let v = c.rp(b).unwrap();
            assert!(v.is_zero());
            assert!(v.order().unwrap() >= 9, "{v}");
        }
    }

    #[test]
    fn gamma_leading_terms() {
        let br = branch(4);
        let i = ExactScalar::i();
        assert_eq!(br.gamma.coeff(1).unwrap(), i);
        assert_eq!(br.gamma.coeff(3).unwrap(), i.scale(&ExactScalar::ratio(-1, 2)));
    }

    #[test]
    fn zhukovsky_round_trips() {
        let br = branch(5);
        let zh = br.zhukovsky();
        let t = Series::constant(ExactScalar::ratio(3, 2));
        let x1 = zh.x_of_t(&t).unwrap();
        let x2 = zh.x_of_t(&t.inv().unwrap()).unwrap();
        assert!(x1.checked_sub(&x2).unwrap().is_zero());
        let tb = zh.t_of_z(&br.beta_plus).unwrap();
        assert_eq!(tb.coeff(0).unwrap(), ExactScalar::from_int(1));
        assert!(tb.checked_sub(&Series::one()).unwrap().is_zero());
        let z = Series::constant(ExactScalar::from_int(2)).truncate(9);
        let back = zh.z_of_t(&zh.t_of_z(&z).unwrap()).unwrap();
        assert!(back.checked_sub(&z).unwrap().is_zero());
    }

    #[test]
    fn sigma_preserves_x() {
        let br = branch(5);
        let zh = br.zhukovsky();
        let c = br.curve();
        let q = Series::constant(ExactScalar::from_int(2)).truncate(10);
        let sq = zh.sigma(&q).unwrap();
        let d = c.r(&q).unwrap().checked_sub(&c.r(&sq).unwrap()).unwrap();
        assert!(d.is_zero(), "{d}");
    }
}
