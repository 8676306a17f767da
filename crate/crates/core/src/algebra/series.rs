//! Truncated Laurent series `Σ_{k ≥ val} c_k x^k + O(x^order)`.
//!
//! The absolute order is tracked through every operation, so a result never
//! claims a coefficient it cannot know. `EXACT` marks a finite expansion with
//! no truncation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ring::Coeff;
use super::scalar::ExactScalar;
use super::AlgebraError;

/// Sentinel order for series without truncation error.
pub const EXACT: i64 = i64::MAX / 4;

fn oadd(a: i64, b: i64) -> i64 {
    if a >= EXACT || b >= EXACT {
        EXACT
    } else {
        a + b
    }
}

fn omul(a: i64, k: i64) -> i64 {
    if a >= EXACT {
        EXACT
    } else {
        a * k
    }
}

/// Expansion variable. `Any` is carried by constants and adopts the variable
/// of whatever it is combined with.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Var {
    Any,
    Lambda,
    H,
    T,
    U,
    W,
    Z,
    Delta,
    X,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::Any => "any",
            Var::Lambda => "lambda",
            Var::H => "h",
            Var::T => "t",
            Var::U => "u",
            Var::W => "w",
            Var::Z => "z",
            Var::Delta => "delta",
            Var::X => "x",
        }
    }

    pub fn parse(s: &str) -> Option<Var> {
        Some(match s {
            "any" => Var::Any,
            "lambda" | "λ" => Var::Lambda,
            "h" => Var::H,
            "t" => Var::T,
            "u" => Var::U,
            "w" => Var::W,
            "z" => Var::Z,
            "delta" | "δ" => Var::Delta,
            "x" => Var::X,
            _ => return None,
        })
    }

    fn join(self, o: Var) -> Result<Var, AlgebraError> {
        match (self, o) {
            (Var::Any, v) | (v, Var::Any) => Ok(v),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(AlgebraError::VariableMismatch(
                a.name().into(),
                b.name().into(),
            )),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Series<C> {
    var: Var,
    /// Exponent of `coeffs[0]`. Equals `order` when no coefficient is known
    /// to be nonzero.
    val: i64,
    coeffs: Vec<C>,
    order: i64,
}

impl<C: Coeff> Series<C> {
    pub fn new(var: Var, val: i64, coeffs: Vec<C>, order: i64) -> Self {
        let mut s = Series {
            var,
            val,
            coeffs,
            order,
        };
        s.normalize();
        s
    }

    pub fn exact(var: Var, val: i64, coeffs: Vec<C>) -> Self {
        Self::new(var, val, coeffs, EXACT)
    }

    pub fn from_fn(var: Var, val: i64, order: i64, mut f: impl FnMut(i64) -> C) -> Self {
        let coeffs = (val..order).map(&mut f).collect();
        Self::new(var, val, coeffs, order)
    }

    pub fn constant(c: C) -> Self {
        Self::exact(Var::Any, 0, vec![c])
    }

    pub fn monomial(var: Var, c: C, k: i64) -> Self {
        Self::exact(var, k, vec![c])
    }

    /// The variable itself, `x`.
    pub fn gen(var: Var) -> Self {
        Self::monomial(var, C::one(), 1)
    }

    pub fn zero_in(var: Var) -> Self {
        Self::exact(var, 0, vec![])
    }

    /// `O(x^order)`.
    pub fn big_o(var: Var, order: i64) -> Self {
        Self::new(var, order, vec![], order)
    }

    fn normalize(&mut self) {
        if self.order < EXACT {
            let keep = (self.order - self.val).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.val = self.order;
            }
            Some(i) => {
                if i > 0 {
                    self.coeffs.drain(..i);
                    self.val += i as i64;
                }
                while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                    self.coeffs.pop();
                }
            }
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    /// Lowest exponent with a known nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }

    /// Absolute truncation order, `None` for exact series.
    pub fn order(&self) -> Option<i64> {
        (self.order < EXACT).then_some(self.order)
    }

    pub fn raw_order(&self) -> i64 {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order >= EXACT
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest exponent with a stored coefficient.
    pub fn top(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.val + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, k: i64) -> Result<C, AlgebraError> {
        if k >= self.order {
            return Err(AlgebraError::PrecisionExhausted {
                exponent: k,
                order: self.order,
            });
        }
        Ok(self.coeff_unchecked(k))
    }

    /// Stored coefficient, zero outside the stored range even past the order.
    pub fn coeff_unchecked(&self, k: i64) -> C {
        if k < self.val || self.coeffs.is_empty() {
            return C::zero();
        }
        self.coeffs
            .get((k - self.val) as usize)
            .cloned()
            .unwrap_or_else(C::zero)
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.val + i as i64, c))
    }

    pub fn truncate(&self, order: i64) -> Self {
        Self::new(self.var, self.val, self.coeffs.clone(), self.order.min(order))
    }

    pub fn map_coeffs<D: Coeff>(&self, mut f: impl FnMut(&C) -> D) -> Series<D> {
        Series::new(
            self.var,
            self.val,
            self.coeffs.iter().map(&mut f).collect(),
            self.order,
        )
    }

    pub fn try_map_coeffs<D: Coeff, E>(
        &self,
        mut f: impl FnMut(&C) -> Result<D, E>,
    ) -> Result<Series<D>, E> {
        let coeffs = self.coeffs.iter().map(&mut f).collect::<Result<_, _>>()?;
        Ok(Series::new(self.var, self.val, coeffs, self.order))
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, AlgebraError> {
        let var = self.var.join(o.var)?;
        let order = self.order.min(o.order);
        if self.coeffs.is_empty() && o.coeffs.is_empty() {
            return Ok(Self::new(var, order, vec![], order));
        }
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for s in [self, o] {
            if let Some(t) = s.top() {
                lo = lo.min(s.val);
                hi = hi.max(t + 1);
            }
        }
        let hi = hi.min(order);
        if hi <= lo {
            return Ok(Self::new(var, order, vec![], order));
        }
        let mut out = vec![C::zero(); (hi - lo) as usize];
        for s in [self, o] {
            for (i, c) in s.coeffs.iter().enumerate() {
                let k = s.val + i as i64;
                if k < hi {
                    let slot = &mut out[(k - lo) as usize];
                    *slot = slot.add(c);
                }
            }
        }
        Ok(Self::new(var, lo, out, order))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.checked_add(&o.neg_series())
    }

    pub fn neg_series(&self) -> Self {
        Series {
            var: self.var,
            val: self.val,
            coeffs: self.coeffs.iter().map(C::neg).collect(),
            order: self.order,
        }
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, AlgebraError> {
        let var = self.var.join(o.var)?;
        let order = oadd(self.val, o.order).min(oadd(o.val, self.order));
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Ok(Self::new(var, order, vec![], order));
        }
        let val = self.val + o.val;
        let (la, lb) = (self.coeffs.len(), o.coeffs.len());
        let mut n = la + lb - 1;
        if order < EXACT {
            n = n.min((order - val).max(0) as usize);
        }
        let mut out = vec![C::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= n || a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Ok(Self::new(var, val, out, order))
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        Self::new(
            self.var,
            self.val,
            self.coeffs.iter().map(|a| a.mul(c)).collect(),
            self.order,
        )
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        self.mul_coeff(&C::from_scalar(s))
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        Series {
            var: self.var,
            val: self.val + k,
            coeffs: self.coeffs.clone(),
            order: oadd(self.order, k),
        }
    }

    pub fn powi(&self, k: u32) -> Self {
        <Self as Coeff>::powi(self, k)
    }

    /// Multiplicative inverse, keeping the relative precision of the input.
    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.coeffs.is_empty() {
            return Err(AlgebraError::DivisionByZero);
        }
        if self.is_exact() {
            if self.coeffs.len() == 1 {
                return Ok(Self::exact(self.var, -self.val, vec![self.coeffs[0].try_inv()?]));
            }
            return Err(AlgebraError::Unbounded(self.to_string()));
        }
        let n = (self.order - self.val) as usize;
        let b0 = self.coeffs[0].try_inv()?;
        let mut b: Vec<C> = Vec::with_capacity(n);
        b.push(b0.clone());
        for k in 1..n {
            let mut acc = C::zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[j].mul(&b[k - j]));
            }
            b.push(acc.mul(&b0).neg());
        }
        Ok(Self::new(self.var, -self.val, b, -self.val + n as i64))
    }

    /// Inverse truncated at absolute order `target`.
    pub fn inv_to(&self, target: i64) -> Result<Self, AlgebraError> {
        let v = self.valuation().ok_or(AlgebraError::DivisionByZero)?;
        self.truncate(target + 2 * v).inv()
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.checked_mul(&o.inv()?)
    }

    /// Quotient truncated at absolute order `target`, for exact divisors.
    pub fn div_to(&self, o: &Self, target: i64) -> Result<Self, AlgebraError> {
        let vs = self.valuation().unwrap_or(target);
        let inv = o.inv_to(target - vs)?;
        Ok(self.checked_mul(&inv)?.truncate(target))
    }

    pub fn sqrt(&self) -> Result<Self, AlgebraError> {
        if self.coeffs.is_empty() {
            let o = if self.is_exact() { EXACT } else { self.order.div_euclid(2) };
            return Ok(Self::new(self.var, o, vec![], o));
        }
        if self.val % 2 != 0 {
            return Err(AlgebraError::NoSquareRoot(format!(
                "odd valuation {}",
                self.val
            )));
        }
        if self.is_exact() && self.coeffs.len() > 1 {
            return Err(AlgebraError::Unbounded(self.to_string()));
        }
        let n = if self.is_exact() {
            1
        } else {
            (self.order - self.val) as usize
        };
        let r0 = self.coeffs[0].try_sqrt()?;
        let inv2r0 = r0.add(&r0).try_inv()?;
        let mut r: Vec<C> = Vec::with_capacity(n);
        r.push(r0);
        for k in 1..n {
            let mut acc = self.coeff_unchecked(self.val + k as i64);
            for j in 1..k {
                acc = acc.sub(&r[j].mul(&r[k - j]));
            }
            r.push(acc.mul(&inv2r0));
        }
        let half = self.val / 2;
        let order = if self.is_exact() { EXACT } else { half + n as i64 };
        Ok(Self::new(self.var, half, r, order))
    }

    /// Logarithm of a series `1 + O(x)`.
    pub fn log(&self) -> Result<Self, AlgebraError> {
        if self.val != 0 || self.coeffs.is_empty() || self.coeffs[0] != C::one() {
            return Err(AlgebraError::LogPrecondition(self.to_string()));
        }
        if self.is_exact() {
            if self.coeffs.len() == 1 {
                return Ok(Self::zero_in(self.var));
            }
            return Err(AlgebraError::Unbounded(self.to_string()));
        }
        let n = self.order as usize;
        let a = |k: usize| self.coeff_unchecked(k as i64);
        let mut b: Vec<C> = vec![C::zero(); n];
        for k in 1..n {
            let mut acc = a(k).scale(&ExactScalar::from_int(k as i64));
            for j in 1..k {
                if b[j].is_zero() {
                    continue;
                }
                acc = acc.sub(&b[j].mul(&a(k - j)).scale(&ExactScalar::from_int(j as i64)));
            }
            b[k] = acc.scale(&ExactScalar::ratio(1, k as i64));
        }
        Ok(Self::new(self.var, 0, b, self.order))
    }

    /// Exponential of a series of positive valuation.
    pub fn exp(&self) -> Result<Self, AlgebraError> {
        if self.coeffs.is_empty() {
            let o = self.order;
            return Ok(Self::new(self.var, 0, vec![C::one()], o));
        }
        if self.val < 1 {
            return Err(AlgebraError::Domain(
                "exponential needs positive valuation".into(),
            ));
        }
        if self.is_exact() {
            return Err(AlgebraError::Unbounded(self.to_string()));
        }
        let n = self.order as usize;
        let a = |k: usize| self.coeff_unchecked(k as i64);
        let mut b: Vec<C> = vec![C::zero(); n];
        b[0] = C::one();
        for k in 1..n {
            let mut acc = C::zero();
            for j in 1..=k {
                let aj = a(j);
                if aj.is_zero() {
                    continue;
                }
                acc = acc.add(&aj.mul(&b[k - j]).scale(&ExactScalar::from_int(j as i64)));
            }
            b[k] = acc.scale(&ExactScalar::ratio(1, k as i64));
        }
        Ok(Self::new(self.var, 0, b, self.order))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.scale(&ExactScalar::from_int(self.val + i as i64)))
            .collect();
        Self::new(self.var, self.val - 1, coeffs, oadd(self.order, -1))
    }

    /// Antiderivative with zero constant term.
    pub fn integrate(&self) -> Result<Self, AlgebraError> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.val + i as i64;
            if k == -1 {
                if !c.is_zero() {
                    return Err(AlgebraError::Domain("integral of x^-1".into()));
                }
                coeffs.push(C::zero());
            } else {
                coeffs.push(c.scale(&ExactScalar::ratio(1, k + 1)));
            }
        }
        Ok(Self::new(self.var, self.val + 1, coeffs, oadd(self.order, 1)))
    }

    /// Coefficient of `x^{-1}`.
    pub fn residue(&self) -> Result<C, AlgebraError> {
        self.coeff(-1)
    }

    /// `self(inner(x))` for `inner` of positive valuation.
    pub fn compose(&self, inner: &Self) -> Result<Self, AlgebraError> {
        let vb = match inner.valuation() {
            Some(v) if v >= 1 => v,
            _ => return Err(AlgebraError::CompositionPrecondition),
        };
        if self.coeffs.is_empty() {
            let o = omul(self.order, vb);
            return Ok(Self::new(inner.var, o, vec![], o));
        }
        let va = self.val;
        let cap = omul(self.order, vb);
        let poly_cap = oadd(cap, -va * vb);
        let b = inner.truncate(poly_cap);
        let mut acc = Series::<C>::zero_in(inner.var);
        for c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(&b)?.truncate(poly_cap);
            acc = acc.checked_add(&Series::constant(c.clone()))?;
        }
        if va != 0 {
            let factor = if va > 0 {
                inner.truncate(oadd(poly_cap, vb)).powi(va as u32)
            } else {
                let rel = oadd(cap, -vb * va);
                let binv = if inner.is_exact() && inner.coeffs.len() == 1 {
                    inner.inv()?
                } else if rel >= EXACT {
                    return Err(AlgebraError::Unbounded(inner.to_string()));
                } else {
                    inner.truncate(vb + rel).inv()?
                };
                binv.powi((-va) as u32)
            };
            acc = acc.checked_mul(&factor)?;
        }
        Ok(acc.truncate(cap).with_var(inner.var))
    }

    /// Compositional inverse of `c_1 x + c_2 x^2 + …`, `c_1` invertible.
    pub fn revert(&self) -> Result<Self, AlgebraError> {
        if self.valuation() != Some(1) {
            return Err(AlgebraError::CompositionPrecondition);
        }
        if self.is_exact() {
            if self.coeffs.len() == 1 {
                let c = self.coeffs[0].try_inv()?;
                return Ok(Self::exact(self.var, 1, vec![c]));
            }
            return Err(AlgebraError::Unbounded(self.to_string()));
        }
        let p = self.order;
        let c1inv = self.coeffs[0].try_inv()?;
        let mut b = vec![C::zero(), c1inv.clone()];
        for k in 2..p {
            let bs = Self::new(self.var, 0, b.clone(), k + 1);
            let e = self.compose(&bs)?.coeff(k)?;
            b.push(e.mul(&c1inv).neg());
        }
        Ok(Self::new(self.var, 0, b, p))
    }

    /// Substitution `x = y^k` with `y` the new variable, `k ≥ 1`.
    pub fn substitute_power(&self, k: i64, var: Var) -> Self {
        assert!(k >= 1);
        let ku = k as usize;
        let mut coeffs = vec![C::zero(); (self.coeffs.len().max(1) - 1) * ku + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * ku] = c.clone();
        }
        if self.coeffs.is_empty() {
            coeffs.clear();
        }
        Self::new(var, self.val * k, coeffs, omul(self.order, k))
    }

    /// Inverse of [`Series::substitute_power`] with `k = 2`: a series in `y`
    /// whose odd part vanishes, read as a series in `x = y^2`.
    pub fn even_part_as(&self, var: Var) -> Result<Self, AlgebraError> {
        let mut coeffs = Vec::new();
        let lo = self.val.div_euclid(2);
        for (k, c) in self.terms() {
            if k.rem_euclid(2) != 0 {
                return Err(AlgebraError::OddPart(k));
            }
            let idx = (k / 2 - lo) as usize;
            if coeffs.len() <= idx {
                coeffs.resize(idx + 1, C::zero());
            }
            coeffs[idx] = c.clone();
        }
        let order = if self.is_exact() {
            EXACT
        } else {
            (self.order + 1).div_euclid(2)
        };
        Ok(Self::new(var, lo, coeffs, order))
    }

    /// Substitution `x ↦ c·x`.
    pub fn scale_var(&self, c: &C) -> Result<Self, AlgebraError> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut p = c.try_pow(self.val as i32)?;
        for a in &self.coeffs {
            out.push(a.mul(&p));
            p = p.mul(c);
        }
        Ok(Self::new(self.var, self.val, out, self.order))
    }

    /// Evaluate a finite series at a coefficient value.
    pub fn eval_exact(&self, x: &C) -> Result<C, AlgebraError> {
        if !self.is_exact() {
            return Err(AlgebraError::Domain(
                "evaluation of a truncated series".into(),
            ));
        }
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        Ok(acc.mul(&x.try_pow(self.val as i32)?))
    }
}

impl<C: Coeff> Coeff for Series<C> {
    fn zero() -> Self {
        Series::zero_in(Var::Any)
    }
    fn one() -> Self {
        Series::constant(C::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        self.checked_add(o).expect("series addition")
    }
    fn sub(&self, o: &Self) -> Self {
        self.checked_sub(o).expect("series subtraction")
    }
    fn mul(&self, o: &Self) -> Self {
        self.checked_mul(o).expect("series multiplication")
    }
    fn neg(&self) -> Self {
        self.neg_series()
    }
    fn try_inv(&self) -> Result<Self, AlgebraError> {
        self.inv()
    }
    fn from_scalar(s: &ExactScalar) -> Self {
        Series::constant(C::from_scalar(s))
    }
    fn try_sqrt(&self) -> Result<Self, AlgebraError> {
        self.sqrt()
    }
}

macro_rules! series_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<C: Coeff> $tr<&Series<C>> for &Series<C> {
            type Output = Series<C>;
            /// Panics on a variable mismatch.
            fn $m(self, o: &Series<C>) -> Series<C> {
                self.$checked(o).expect("series variables must agree")
            }
        }
        impl<C: Coeff> $tr<Series<C>> for Series<C> {
            type Output = Series<C>;
            fn $m(self, o: Series<C>) -> Series<C> {
                self.$checked(&o).expect("series variables must agree")
            }
        }
        impl<C: Coeff> $tr<&Series<C>> for Series<C> {
            type Output = Series<C>;
            fn $m(self, o: &Series<C>) -> Series<C> {
                self.$checked(o).expect("series variables must agree")
            }
        }
        impl<C: Coeff> $tr<Series<C>> for &Series<C> {
            type Output = Series<C>;
            fn $m(self, o: Series<C>) -> Series<C> {
                self.$checked(&o).expect("series variables must agree")
            }
        }
    };
}

series_binop!(Add, add, checked_add);
series_binop!(Sub, sub, checked_sub);
series_binop!(Mul, mul, checked_mul);

impl<C: Coeff> Neg for Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        self.neg_series()
    }
}

impl<C: Coeff> Neg for &Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        self.neg_series()
    }
}

impl<C: Coeff> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c:?})")?,
                1 => write!(f, "({c:?}){}", self.var)?,
                _ => write!(f, "({c:?}){}^{k}", self.var)?,
            }
        }
        if self.order < EXACT {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "O({}^{})", self.var, self.order)?;
        } else if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Series<ExactScalar> {
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(ExactScalar::is_real)
    }

    pub fn conj(&self) -> Self {
        self.map_coeffs(ExactScalar::conj)
    }

    pub fn from_ints(var: Var, val: i64, coeffs: &[i64], order: i64) -> Self {
        Self::new(
            var,
            val,
            coeffs.iter().map(|&c| ExactScalar::from_int(c)).collect(),
            order,
        )
    }

    /// Coefficients at exponents `lo..hi`, failing beyond the known order.
    pub fn coeff_range(&self, lo: i64, hi: i64) -> Result<Vec<ExactScalar>, AlgebraError> {
        (lo..hi).map(|k| self.coeff(k)).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    variable: String,
    lowest_exponent: i64,
    order: Option<i64>,
    coefficients: Vec<ExactScalar>,
}

impl Serialize for Series<ExactScalar> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let lowest = if self.coeffs.is_empty() && self.is_exact() {
            0
        } else {
            self.val
        };
        SeriesJson {
            variable: self.var.name().into(),
            lowest_exponent: lowest,
            order: self.order(),
            coefficients: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Series<ExactScalar> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = SeriesJson::deserialize(d)?;
        let var = Var::parse(&j.variable)
            .ok_or_else(|| serde::de::Error::custom(format!("unknown variable {}", j.variable)))?;
        Ok(Series::new(
            var,
            j.lowest_exponent,
            j.coefficients,
            j.order.unwrap_or(EXACT),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type S = Series<ExactScalar>;

    fn q(n: i64, d: i64) -> ExactScalar {
        ExactScalar::ratio(n, d)
    }

    fn ints(v: &[i64], order: i64) -> S {
        S::from_ints(Var::Lambda, 0, v, order)
    }

    #[test]
    fn geometric_inverse() {
        let s = ints(&[1, -1], 4);
        let inv = s.inv().unwrap();
        assert_eq!(inv, ints(&[1, 1, 1, 1], 4));
        let exact = S::exact(Var::Lambda, 0, vec![q(1, 1), q(-1, 1)]);
        assert!(matches!(exact.inv(), Err(AlgebraError::Unbounded(_))));
        assert_eq!(exact.inv_to(4).unwrap(), ints(&[1, 1, 1, 1], 4));
    }

    #[test]
    fn laurent_precision_tracking() {
        let s = S::from_ints(Var::Lambda, -2, &[1, 3], 1);
        assert_eq!(s.inv().unwrap().order(), Some(5));
        let p = s.checked_mul(&s).unwrap();
        assert_eq!(p.valuation(), Some(-4));
        assert_eq!(p.order(), Some(-1));
        assert!(p.coeff(-1).is_err());
    }

    #[test]
    fn mismatched_variables_fail() {
        let a = S::gen(Var::Lambda);
        let b = S::gen(Var::H);
        assert!(matches!(
            a.checked_add(&b),
            Err(AlgebraError::VariableMismatch(_, _))
        ));
        assert_eq!(a.checked_add(&S::one()).unwrap().var(), Var::Lambda);
    }

    #[test]
    fn log_exp_known_values() {
        let s = ints(&[1, 1], 5);
        let l = s.log().unwrap();
        assert_eq!(
            l.coeff_range(0, 5).unwrap(),
            vec![q(0, 1), q(1, 1), q(-1, 2), q(1, 3), q(-1, 4)]
        );
        let e = S::from_ints(Var::Lambda, 1, &[1], 5).exp().unwrap();
        assert_eq!(
            e.coeff_range(0, 5).unwrap(),
            vec![q(1, 1), q(1, 1), q(1, 2), q(1, 6), q(1, 24)]
        );
    }

    #[test]
    fn sqrt_of_square() {
        let s = ints(&[4, 4, 1], 8);
        let r = s.sqrt().unwrap();
        assert_eq!(r, ints(&[2, 1], 8));
        let neg = ints(&[-1], 3);
        assert_eq!(neg.sqrt().unwrap().coeff(0).unwrap(), ExactScalar::i());
    }

    #[test]
    fn revert_of_x_minus_x_squared() {
        // Catalan numbers.
        let s = ints(&[0, 1, -1], 7);
        let r = s.revert().unwrap();
        assert_eq!(r, ints(&[0, 1, 1, 2, 5, 14, 42], 7));
    }

    #[test]
    fn even_part_round_trip() {
        let s = ints(&[1, -4, 28], 3);
        let h = s.substitute_power(2, Var::H);
        assert_eq!(h.order(), Some(6));
        assert_eq!(h.coeff(4).unwrap(), q(28, 1));
        assert_eq!(h.even_part_as(Var::Lambda).unwrap(), s);
        let odd = S::from_ints(Var::H, 0, &[1, 1], 4);
        assert_eq!(odd.even_part_as(Var::Lambda), Err(AlgebraError::OddPart(1)));
    }

    #[test]
    fn residue_and_derivative() {
        let s = S::from_ints(Var::Z, -2, &[1, 5, 7], 3);
        assert_eq!(s.residue().unwrap(), q(5, 1));
        let d = s.derivative();
        assert_eq!(d.coeff(-3).unwrap(), q(-2, 1));
        assert_eq!(d.residue().unwrap(), q(0, 1));
        assert_eq!(d.order(), Some(2));
    }

    #[test]
    fn json_shape() {
        let s = S::new(Var::Lambda, 1, vec![q(-1, 4), q(15, 8)], 3);
        let j = serde_json::to_value(&s).unwrap();
        assert_eq!(j["variable"], "lambda");
        assert_eq!(j["lowest_exponent"], 1);
        assert_eq!(j["order"], 3);
        assert_eq!(j["coefficients"][0], "-1/4");
        let back: S = serde_json::from_value(j).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn nested_series_coefficients() {
        type SS = Series<S>;
        let w = S::gen(Var::W).truncate(4);
        let inner = SS::new(Var::U, 0, vec![S::one(), w.clone()], 3);
        let sq = inner.checked_mul(&inner).unwrap();
        assert_eq!(sq.coeff(1).unwrap(), w.scale(&q(2, 1)));
    }

    fn arb_series() -> impl Strategy<Value = S> {
        (prop::collection::vec(-20i64..20, 1..7), -2i64..2, 2i64..6).prop_map(|(c, v, extra)| {
            S::from_ints(Var::Lambda, v, &c, v + extra)
        })
    }

    fn arb_unit() -> impl Strategy<Value = S> {
        (prop::collection::vec(-20i64..20, 0..6), 1i64..5, 2i64..7).prop_map(|(mut c, lead, o)| {
            c.insert(0, lead);
            S::from_ints(Var::Lambda, 0, &c, o)
        })
    }

    proptest! {
        #[test]
        fn product_with_inverse_is_one(a in arb_unit()) {
            let p = a.checked_mul(&a.inv().unwrap()).unwrap();
            prop_assert_eq!(p.order(), a.order());
            prop_assert_eq!(p, ints(&[1], a.order().unwrap()));
        }

        #[test]
        fn multiplication_is_commutative(a in arb_series(), b in arb_series()) {
            prop_assert_eq!(a.checked_mul(&b).unwrap(), b.checked_mul(&a).unwrap());
        }

        #[test]
        fn distributivity(a in arb_series(), b in arb_series(), c in arb_series()) {
            let l = a.checked_mul(&b.checked_add(&c).unwrap()).unwrap();
            let r = a.checked_mul(&b).unwrap().checked_add(&a.checked_mul(&c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn log_of_product_is_sum(a in arb_unit(), b in arb_unit()) {
            let a = a.scale(&a.coeff(0).unwrap().inv().unwrap());
            let b = b.scale(&b.coeff(0).unwrap().inv().unwrap());
            let l = a.checked_mul(&b).unwrap().log().unwrap();
            let r = a.log().unwrap().checked_add(&b.log().unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn revert_composes_to_identity(c in prop::collection::vec(-9i64..9, 0..5), lead in 1i64..4) {
            let mut v = vec![0, lead];
            v.extend(c);
            let a = ints(&v, 6);
            let b = a.revert().unwrap();
            prop_assert_eq!(a.compose(&b).unwrap(), S::from_ints(Var::Lambda, 1, &[1], 6));
        }
    }
}
