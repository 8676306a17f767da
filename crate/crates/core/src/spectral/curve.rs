use crate::algebra::{AlgebraError, Coeff, ExactScalar, Poly};

/// `R(x) = x − λ Σ_k ϱ̂_k/(ε_k + x)` with its data lifted into a ring `F`
/// (λ-series, h-series, or the quotient ring of the ramification points).
#[derive(Debug, Clone)]
pub struct Curve<F> {
    pub lambda: F,
    pub eps: Vec<F>,
    pub rho_hat: Vec<F>,
}

impl<F: Coeff> Curve<F> {
    pub fn d(&self) -> usize {
        self.eps.len()
    }

    pub fn lift<G: Coeff>(&self, f: impl Fn(&F) -> G) -> Curve<G> {
        Curve {
            lambda: f(&self.lambda),
            eps: self.eps.iter().map(&f).collect(),
            rho_hat: self.rho_hat.iter().map(&f).collect(),
        }
    }

    /// `R^{(j)}(x)`.
    pub fn r_deriv(&self, j: u32, x: &F) -> Result<F, AlgebraError> {
        let mut s = F::zero();
        for (e, r) in self.eps.iter().zip(&self.rho_hat) {
            let inv = e.add(x).try_inv()?;
            s = s.add(&r.mul(&inv.powi(j + 1)));
        }
        let fact: i64 = (1..=j as i64).product();
        let sign = if j % 2 == 0 { -1 } else { 1 };
        let mut out = self.lambda.mul(&s).scale(&ExactScalar::from_int(sign * fact));
        match j {
            0 => out = out.add(x),
            1 => out = out.add(&F::one()),
            _ => {}
        }
        Ok(out)
    }

    /// `R(x), R′(x), …, R^{(jmax)}(x)` with one inversion per eigenvalue.
    pub fn r_derivs(&self, x: &F, jmax: u32) -> Result<Vec<F>, AlgebraError> {
        let invs: Vec<F> = self.eps.iter().map(|e| e.add(x).try_inv()).collect::<Result<_, _>>()?;
        let mut pows: Vec<F> = invs.clone();
        let mut out = Vec::with_capacity(jmax as usize + 1);
        let mut fact: i64 = 1;
        for j in 0..=jmax {
            if j > 0 {
                fact *= j as i64;
            }
            let mut s = F::zero();
            for (p, r) in pows.iter().zip(&self.rho_hat) {
                s = s.add(&r.mul(p));
            }
            let sign = if j % 2 == 0 { -1 } else { 1 };
            let mut v = self.lambda.mul(&s).scale(&ExactScalar::from_int(sign * fact));
            match j {
                0 => v = v.add(x),
                1 => v = v.add(&F::one()),
                _ => {}
            }
            out.push(v);
            for (p, i) in pows.iter_mut().zip(&invs) {
                *p = p.mul(i);
            }
        }
        Ok(out)
    }

    pub fn r(&self, x: &F) -> Result<F, AlgebraError> {
        self.r_deriv(0, x)
    }

    pub fn rp(&self, x: &F) -> Result<F, AlgebraError> {
        self.r_deriv(1, x)
    }

    /// `D(z) = Π_k (z + ε_k)`.
    pub fn d_poly(&self) -> Poly<F> {
        self.eps
            .iter()
            .fold(Poly::constant(F::one()), |acc, e| acc.mul(&Poly::linear(e.clone())))
    }

    /// `P(z) = D(z)² + λ Σ_k ϱ̂_k Π_{l≠k} (z+ε_l)²`, so that `R′ = P/D²`.
    pub fn p_poly(&self) -> Poly<F> {
        let dd = self.d_poly();
        let mut p = dd.mul(&dd);
        for k in 0..self.d() {
            let mut prod = Poly::constant(self.lambda.mul(&self.rho_hat[k]));
            for (l, e) in self.eps.iter().enumerate() {
                if l != k {
                    let f = Poly::linear(e.clone());
                    prod = prod.mul(&f).mul(&f);
                }
            }
            p = p.add(&prod);
        }
        p
    }
}
