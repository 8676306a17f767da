//! Topological recursion on the single-eigenvalue curve in the coordinate
//! `t = (ε+z)/γ̃`, where `x = −ε + γ̃(t + 1/t)` and the sheet exchange is the
//! global involution `t ↦ 1/t` with fixed points `t = ±1`.
//!
//! Writing `w = γ̃/(2ε)`, the curve data become
//!
//! * `y(t) − y(1/t) = γ̃ (t − 1/t) br(t)`, `br = 1 − w²/((1−wt)(1−w/t))`,
//! * `dx = γ̃ (1 − 1/t²) dt`,
//! * `B(t₁,t₂) = dt₁dt₂/(t₁−t₂)²` and the reflected kernel
//!   `φ(t₁,t₂) = w² dt₁dt₂/(w(t₁+t₂) − 1)²`.
//!
//! The recursion is run with the `γ̃` factors stripped; the correlators
//! `ω_{g,n}` differ from the stripped forms by `γ̃^{−2χ}`, `χ = 2g−2+n`.
//! Stripped forms are finite sums `Σ C(w) Π_i (t_i − p_i)^{−m_i−1} dt_i`,
//! `p_i = ±1`, with `C` a power series in `w`. Residues at `t = p` are
//! coefficient extractions in the local variable `u = t − p`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::algebra::{AlgebraError, Coeff, ExactScalar, Series, Var};
use crate::error::{QkmError, Result};
use crate::precision::{at_order, Known};
use crate::report::CheckResult;
use crate::spectral::{lift_h, real_and_even, solve_deformation, to_lambda, BranchD1, SpectralInput, H, L};
use crate::table::{CoeffTable, SignConvention};

type E = ExactScalar;
/// Power series in `w`.
pub type WSeries = Series<E>;
/// Laurent series in `u` with `w`-series coefficients.
type Uw = Series<WSeries>;

/// The basis differential `(t − p)^{−m−1} dt`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Key {
    pub p: i8,
    pub m: u32,
}

/// A stripped correlator `Σ C(w) Π_i (t_i − p_i)^{−m_i−1} dt_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Form {
    pub g: u32,
    pub n: usize,
    pub convention: Convention,
    pub terms: BTreeMap<Vec<Key>, WSeries>,
}

impl Form {
    pub fn chi(&self) -> i64 {
        2 * self.g as i64 - 2 + self.n as i64
    }

    /// Largest pole order at the branch points.
    pub fn pole_order(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|ks| ks.iter().map(|k| k.m + 1))
            .max()
            .unwrap_or(0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// Only the Bergman kernel enters the recursion.
    Pure,
    /// The reflected kernel is added to `ω₀,₂`; the result is the polar part.
    BlobbedPolar,
}

/// How a slot of a form is specialised inside the recursion bracket.
#[derive(Clone, Copy, Debug)]
enum Slot {
    Q,
    SigmaQ,
    Free(usize),
}

/// A bracket term: `u`-Laurent coefficients times basis keys in the free
/// variables, listed in output order.
type Local = BTreeMap<Vec<Key>, Uw>;

/// Local expansions at one branch point.
struct Site {
    p: i8,
    nw: i64,
    u: Uw,
    /// `1/t − p`.
    v: Uw,
    /// `d(1/t)/dt = −1/t²`.
    dsig: Uw,
    /// `t³ / (2 (t²−1)² br)`, the kernel with `γ̃²` stripped.
    kernel: Uw,
    /// `B(t, 1/t)` per `dt²`.
    b_sigma: Uw,
    /// `φ(t, 1/t)` per `dt²`.
    phi_sigma: Uw,
    cache: std::cell::RefCell<HashMap<(bool, i8, u32), Uw>>,
}

fn wconst(c: i64, nw: i64) -> WSeries {
    Series::new(Var::W, 0, vec![E::from_int(c)], nw)
}

fn uw(val: i64, cs: Vec<WSeries>, nu: i64) -> Uw {
    Series::new(Var::U, val, cs, nu)
}

impl Site {
    fn new(p: i8, nu: i64, nw: i64) -> Result<Self, AlgebraError> {
        let pw = wconst(p as i64, nw);
        let one = wconst(1, nw);
        let w = Series::new(Var::W, 1, vec![E::one()], nw);
        let u = uw(1, vec![one.clone()], nu);
        let t = uw(0, vec![pw.clone(), one.clone()], nu);
        let tinv = t.inv()?;
        let v = tinv.checked_sub(&Series::constant(pw.clone()))?;
        let one_u = Series::constant(one.clone());
        let a = one_u.checked_sub(&t.mul_coeff(&w))?;
        let b = one_u.checked_sub(&tinv.mul_coeff(&w))?;
        let w2 = w.checked_mul(&w)?;
        let br = one_u.checked_sub(&a.checked_mul(&b)?.inv()?.mul_coeff(&w2))?;
        let t2m1 = t.checked_mul(&t)?.checked_sub(&one_u)?;
        let kernel = t
            .powi(3)
            .checked_mul(&t2m1.powi(2).checked_mul(&br)?.inv()?)?
            .scale(&E::ratio(1, 2));
        let dsig = tinv.checked_mul(&tinv)?.neg_series();
        let b_sigma = dsig.checked_mul(&t.checked_sub(&tinv)?.powi(2).inv()?)?;
        let s = t.checked_add(&tinv)?.mul_coeff(&w).checked_sub(&one_u)?;
        let phi_sigma = dsig.checked_mul(&s.powi(2).inv()?)?.mul_coeff(&w2);
        Ok(Site {
            p,
            nw,
            u,
            v,
            dsig,
            kernel,
            b_sigma,
            phi_sigma,
            cache: Default::default(),
        })
    }

    /// `(t − key.p)^{−m−1}` (at `q`) or `(1/t − key.p)^{−m−1}·d(1/t)/dt`
    /// (at `σ(q)`).
    fn basis(&self, sigma: bool, k: Key) -> Result<Uw, AlgebraError> {
        if let Some(x) = self.cache.borrow().get(&(sigma, k.p, k.m)) {
            return Ok(x.clone());
        }
        let shift = Series::constant(wconst((self.p - k.p) as i64, self.nw));
        let base = if sigma {
            self.v.checked_add(&shift)?
        } else {
            self.u.checked_add(&shift)?
        };
        let mut out = base.inv()?.powi(k.m + 1);
        if sigma {
            out = out.checked_mul(&self.dsig)?;
        }
        self.cache.borrow_mut().insert((sigma, k.p, k.m), out.clone());
        Ok(out)
    }

    /// `B(q, t₁)` expanded in `u`: `Σ_m (m+1) u^m (t₁−p)^{−m−2}`, or the
    /// same at `σ(q)` with `v` and `d(1/t)/dt`.
    fn bergman_free(&self, sigma: bool, mmax: u32) -> Result<Local, AlgebraError> {
        let base = if sigma { &self.v } else { &self.u };
        let mut out = Local::new();
        let mut pw: Uw = Series::constant(Series::constant(E::one()));
        for m in 0..mmax {
            let mut c = pw.scale(&E::from_int(m as i64 + 1));
            if sigma {
                c = c.checked_mul(&self.dsig)?;
            }
            out.insert(vec![Key { p: self.p, m: m + 1 }], c);
            pw = pw.checked_mul(base)?;
        }
        Ok(out)
    }

    fn specialise(&self, f: &Form, slots: &[Slot], nfree: usize) -> Result<Local, AlgebraError> {
        let mut out = Local::new();
        for (keys, c) in &f.terms {
            let mut val: Uw = Series::constant(c.clone());
            let mut free = vec![Key { p: 0, m: 0 }; nfree];
            for (k, s) in keys.iter().zip(slots) {
                match s {
                    Slot::Q => val = val.checked_mul(&self.basis(false, *k)?)?,
                    Slot::SigmaQ => val = val.checked_mul(&self.basis(true, *k)?)?,
                    Slot::Free(j) => free[*j] = *k,
                }
            }
            add_into(&mut out, free, val)?;
        }
        Ok(out)
    }

    /// `Res_{u=0} K(t₀, q)·bracket`, with `K = ½(1/(t₀−t) − 1/(t₀−1/t))·kernel`
    /// and `1/(t₀−t) = Σ_m u^m (t₀−p)^{−m−1}` near `t = p`.
    fn residue(&self, bracket: &Local, out: &mut BTreeMap<Vec<Key>, WSeries>) -> Result<(), AlgebraError> {
        for (keys, c) in bracket {
            let g = self.kernel.checked_mul(c)?;
            let Some(val) = g.valuation() else { continue };
            if val >= 0 {
                continue;
            }
            let mut up: Uw = self.u.clone();
            let mut vp: Uw = self.v.clone();
            for m in 1..(-val) as u32 {
                let r = up.checked_sub(&vp)?.checked_mul(&g)?.residue()?;
                if !r.is_zero() {
                    let mut k = vec![Key { p: self.p, m }];
                    k.extend_from_slice(keys);
                    let e = out.entry(k).or_insert_with(Series::zero);
                    *e = e.checked_add(&r)?;
                }
                up = up.checked_mul(&self.u)?;
                vp = vp.checked_mul(&self.v)?;
            }
        }
        Ok(())
    }
}

fn add_into(out: &mut Local, k: Vec<Key>, v: Uw) -> Result<(), AlgebraError> {
    match out.get_mut(&k) {
        Some(e) => *e = e.checked_add(&v)?,
        None => {
            out.insert(k, v);
        }
    }
    Ok(())
}

/// Product of bracket pieces; `order` places the free keys of both factors.
fn mul_local(
    a: &Local,
    b: &Local,
    order: impl Fn(&[Key], &[Key]) -> Vec<Key>,
    kernel_val: i64,
) -> Result<Local, AlgebraError> {
    let mut out = Local::new();
    for (ka, ca) in a {
        let va = ca.valuation().unwrap_or(i64::MAX / 4);
        for (kb, cb) in b {
            let vb = cb.valuation().unwrap_or(i64::MAX / 4);
            // Terms regular enough that the kernel cannot produce a residue.
            if va + vb + kernel_val + 1 >= 0 {
                continue;
            }
            add_into(&mut out, order(ka, kb), ca.checked_mul(cb)?)?;
        }
    }
    Ok(out)
}

fn concat(a: &[Key], b: &[Key]) -> Vec<Key> {
    a.iter().chain(b).copied().collect()
}

fn sum_local(a: &mut Local, b: Local) -> Result<(), AlgebraError> {
    for (k, v) in b {
        add_into(a, k, v)?;
    }
    Ok(())
}

/// Recursion driver with fixed `u`- and `w`-precision.
pub struct Engine {
    sites: [Site; 2],
    kernel_val: i64,
}

impl Engine {
    /// `nu`: relative `u`-precision of local expansions; `nw`: `w`-order.
    pub fn new(nu: i64, nw: i64) -> Result<Self, AlgebraError> {
        let sites = [Site::new(1, nu, nw)?, Site::new(-1, nu, nw)?];
        let kernel_val = sites[0].kernel.valuation().unwrap_or(0);
        Ok(Engine { sites, kernel_val })
    }

    fn step(
        &self,
        g: u32,
        n: usize,
        convention: Convention,
        bracket: impl Fn(&Site) -> Result<Local, AlgebraError>,
    ) -> Result<Form, AlgebraError> {
        let mut terms = BTreeMap::new();
        for s in &self.sites {
            s.residue(&bracket(s)?, &mut terms)?;
        }
        terms.retain(|_, c: &mut WSeries| !c.is_zero());
        Ok(Form {
            g,
            n,
            convention,
            terms,
        })
    }

    /// `ω₁,₁`.
    pub fn omega11(&self, conv: Convention) -> Result<Form, AlgebraError> {
        self.step(1, 1, conv, |s| {
            let mut c = s.b_sigma.clone();
            if conv == Convention::BlobbedPolar {
                c = c.checked_add(&s.phi_sigma)?;
            }
            Ok(Local::from([(vec![], c)]))
        })
    }

    /// `ω₀,₃(t₀,t₁,t₂)` from `B(q,t₁)B(σq,t₂) + B(q,t₂)B(σq,t₁)`.
    pub fn omega03(&self) -> Result<Form, AlgebraError> {
        let kv = self.kernel_val;
        self.step(0, 3, Convention::Pure, |s| {
            let m = (1 - kv) as u32 + 1;
            let bq = s.bergman_free(false, m)?;
            let bs = s.bergman_free(true, m)?;
            let mut out = mul_local(&bq, &bs, concat, kv)?;
            sum_local(&mut out, mul_local(&bq, &bs, |a, b| concat(b, a), kv)?)?;
            Ok(out)
        })
    }

    /// `ω₁,₂(t₀,t₁)` from `ω₀,₃(q,σq,t₁) + B(q,t₁)ω₁,₁(σq) + ω₁,₁(q)B(σq,t₁)`.
    pub fn omega12(&self, w03: &Form, w11: &Form) -> Result<Form, AlgebraError> {
        let kv = self.kernel_val;
        let mmax = (2 * w11.pole_order() as i64 + 1 - kv) as u32 + 1;
        self.step(1, 2, Convention::Pure, |s| {
            let mut out = s.specialise(w03, &[Slot::Q, Slot::SigmaQ, Slot::Free(0)], 1)?;
            let a11q = s.specialise(w11, &[Slot::Q], 0)?;
            let a11s = s.specialise(w11, &[Slot::SigmaQ], 0)?;
            let bq = s.bergman_free(false, mmax)?;
            let bs = s.bergman_free(true, mmax)?;
            sum_local(&mut out, mul_local(&bq, &a11s, concat, kv)?)?;
            sum_local(&mut out, mul_local(&a11q, &bs, concat, kv)?)?;
            Ok(out)
        })
    }

    /// `ω₂,₁(t₀)` from `ω₁,₂(q,σq) + ω₁,₁(q)ω₁,₁(σq)`.
    pub fn omega21(&self, w12: &Form, w11: &Form) -> Result<Form, AlgebraError> {
        let kv = self.kernel_val;
        self.step(2, 1, Convention::Pure, |s| {
            let mut out = s.specialise(w12, &[Slot::Q, Slot::SigmaQ], 0)?;
            let a = s.specialise(w11, &[Slot::Q], 0)?;
            let b = s.specialise(w11, &[Slot::SigmaQ], 0)?;
            sum_local(&mut out, mul_local(&a, &b, concat, kv)?)?;
            Ok(out)
        })
    }

    /// Principal part at `t = p` of `ω₁,₁(t) + ω₁,₁(1/t)`, which the linear
    /// loop equation requires to vanish.
    pub fn loop_equation_defect(&self, w11: &Form) -> Result<Vec<Uw>, AlgebraError> {
        let mut out = Vec::new();
        for s in &self.sites {
            let a = s.specialise(w11, &[Slot::Q], 0)?;
            let b = s.specialise(w11, &[Slot::SigmaQ], 0)?;
            let mut sum: Uw = Series::zero();
            for (_, c) in a.into_iter().chain(b) {
                sum = sum.checked_add(&c)?;
            }
            out.push(sum);
        }
        Ok(out)
    }
}

/// Evaluates a stripped form at λ-series points, restoring `γ̃` powers:
/// `Ω_{g,n} = (−1)^χ S/(ϱ̂^χ γ̃^n Π R′(z_i))` with
/// `S = Σ C(w) Π γ̃^{m_i+1}/(ε+z_i−p_iγ̃)^{m_i+1}`. The result is an h-series.
pub fn evaluate_h(f: &Form, br: &BranchD1<E>, zs: &[L<E>]) -> Result<H<E>, AlgebraError> {
    assert_eq!(zs.len(), f.n, "one point per slot");
    let hz: Vec<_> = zs.iter().map(lift_h).collect();
    let gamma = &br.gamma;
    let w_of_h = gamma.checked_div(&br.eps.scale(&E::from_int(2)))?;
    let curve = br.curve();
    let mut ratios: HashMap<(usize, i8), H<E>> = HashMap::new();
    for (i, z) in hz.iter().enumerate() {
        for p in [1i8, -1] {
            let den = br
                .eps
                .checked_add(z)?
                .checked_sub(&gamma.scale(&E::from_int(p as i64)))?;
            ratios.insert((i, p), gamma.checked_div(&den)?);
        }
    }
    let mut s: H<E> = Series::zero_in(Var::H);
    for (keys, c) in &f.terms {
        let mut term = c.compose(&w_of_h)?;
        for (i, k) in keys.iter().enumerate() {
            term = term.checked_mul(&ratios[&(i, k.p)].powi(k.m + 1))?;
        }
        s = s.checked_add(&term)?;
    }
    let chi = f.chi();
    let mut den = br.rho_hat.powi(chi as u32).checked_mul(&gamma.powi(f.n as u32))?;
    for z in &hz {
        den = den.checked_mul(&curve.rp(z)?)?;
    }
    let out = s.checked_div(&den)?;
    Ok(if chi % 2 == 0 { out } else { out.neg_series() })
}

/// [`evaluate_h`] read back as a λ-series, with the reality flag.
pub fn evaluate(f: &Form, br: &BranchD1<E>, zs: &[L<E>]) -> Result<(L<E>, bool), AlgebraError> {
    let h = evaluate_h(f, br, zs)?;
    let ok = real_and_even(&h);
    Ok((to_lambda(&h)?, ok))
}

/// All forms needed for `(g, n)`, built at `w`-order `nw`.
pub fn build_form(g: u32, n: usize, conv: Convention, nw: i64) -> Result<Form> {
    let supported = matches!((g, n), (0, 3) | (1, 1) | (1, 2) | (2, 1));
    if !supported {
        return Err(QkmError::Unsupported(format!(
            "recursion target ({g},{n}); supported: (0,3), (1,1), (1,2), (2,1)"
        )));
    }
    if conv == Convention::BlobbedPolar && (g, n) != (1, 1) {
        return Err(QkmError::Unsupported(format!(
            "blobbed-polar ({g},{n}): lower correlators with their holomorphic parts are not available"
        )));
    }
    let eng = Engine::new(U_ORDER, nw)?;
    Ok(match (g, n) {
        (1, 1) => eng.omega11(conv)?,
        (0, 3) => eng.omega03()?,
        _ => {
            let w11 = eng.omega11(Convention::Pure)?;
            let w12 = eng.omega12(&eng.omega03()?, &w11)?;
            if n == 2 {
                w12
            } else {
                eng.omega21(&w12, &w11)?
            }
        }
    })
}

/// Relative `u`-precision of the local expansions; enough for every
/// supported target.
const U_ORDER: i64 = 24;

#[derive(Debug, Clone, Serialize)]
pub struct OmegaResult {
    pub g: u32,
    pub n: usize,
    pub convention: Convention,
    /// `Ω_{g,n}(ε, …, ε)` on `λ¹ … λ^order`.
    pub table: CoeffTable,
    /// Whether the assembled h-series was real with vanishing odd part.
    pub real_even: bool,
    #[serde(skip)]
    pub series: L<E>,
    #[serde(skip)]
    pub form: Form,
}

/// `Ω_{g,n}` from the recursion at `z_i = ε`, through `λ^order` (`d = 1`).
pub fn tr_omega(input: &SpectralInput, g: u32, n: usize, conv: Convention, order: i64) -> Result<OmegaResult> {
    if input.d() != 1 {
        return Err(QkmError::Unsupported(format!(
            "the recursion runs at d = 1 only, got d = {}",
            input.d()
        )));
    }
    let (series, real_even, form) = at_order(order + 1, |work| {
        let form = build_form(g, n, conv, 2 * work + 4)?;
        let def = solve_deformation(input, work)?;
        let br = BranchD1::new(&def)?;
        let (s, ok) = evaluate(&form, &br, &vec![def.eps[0].clone(); n])?;
        Ok(Tagged(s, (ok, form)))
    })?
    .into_parts();
    let label = match conv {
        Convention::Pure => format!("Omega^TR_{{{g},{n}}}(eps)"),
        Convention::BlobbedPolar => format!("P Omega_{{{g},{n}}}(eps)"),
    };
    let table = CoeffTable::from_series(&label, &series, 1, order + 1, SignConvention::MinusLambda)?;
    Ok(OmegaResult {
        g,
        n,
        convention: conv,
        table,
        real_even,
        series,
        form,
    })
}

/// A series carrying extra data through [`at_order`].
struct Tagged<T>(L<E>, T);

impl<T> Known for Tagged<T> {
    fn known_to(&self) -> i64 {
        self.0.raw_order()
    }
}

impl<A, B> Tagged<(A, B)> {
    fn into_parts(self) -> (L<E>, A, B) {
        (self.0, self.1 .0, self.1 .1)
    }
}

/// Symmetry of `ω₀,₃` and `ω₁,₂` under exchange of arguments, at the given
/// λ-constant points (`d = 1`).
pub fn symmetry_checks(input: &SpectralInput, points: &[E], order: i64) -> Result<Vec<CheckResult>> {
    let pts: Vec<L<E>> = points.iter().map(|p| Series::constant(p.clone())).collect();
    let names: Vec<String> = points.iter().map(|p| p.to_string()).collect();
    let mut out = Vec::new();
    for (g, n) in [(0u32, 3usize), (1, 2)] {
        let check = format!("omega{g}{n}_symmetry");
        let diffs = at_order(order, |work| {
            let form = build_form(g, n, Convention::Pure, 2 * work + 4)?;
            let def = solve_deformation(input, work)?;
            let br = BranchD1::new(&def)?;
            let base: Vec<_> = pts[..n].to_vec();
            let (a, _) = evaluate(&form, &br, &base)?;
            let mut ds = Vec::new();
            for i in 1..n {
                let mut sw = base.clone();
                sw.swap(0, i);
                ds.push(evaluate(&form, &br, &sw)?.0.checked_sub(&a)?);
            }
            Ok(ds)
        })?;
        for d in diffs {
            out.push(CheckResult::vanishing(&check, 1, names[..n].to_vec(), &d, order));
        }
    }
    Ok(out)
}

/// `ω₁,₁(t) + ω₁,₁(1/t)` has no principal part at `t = ±1`.
pub fn loop_equation_check(conv: Convention) -> Result<CheckResult> {
    let eng = Engine::new(U_ORDER, 12)?;
    let w11 = eng.omega11(conv)?;
    let defects = eng.loop_equation_defect(&w11)?;
    let bad = defects
        .iter()
        .find_map(|d| d.valuation().filter(|&k| k < 0));
    Ok(CheckResult::boolean(
        "linear_loop_equation",
        1,
        bad.is_none(),
        bad.map(|k| format!("principal part at u^{k}")),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::minus_lambda;
    use crate::spectral::HBackend;
    use crate::trengine::omega11_parts;

    #[test]
    fn kernel_has_double_pole_with_airy_leading_term() {
        let eng = Engine::new(10, 4).unwrap();
        assert_eq!(eng.kernel_val, -2);
        for (s, c) in eng.sites.iter().zip([E::ratio(1, 8), E::ratio(-1, 8)]) {
            assert_eq!(s.kernel.coeff(-2).unwrap().coeff(0).unwrap(), c);
        }
    }

    #[test]
    fn pure_omega11_table() {
        let r = tr_omega(&SpectralInput::default(), 1, 1, Convention::Pure, 6).unwrap();
        assert_eq!(r.table.coefficients(), [0, 1, 20, 307, 4280, 56914].map(E::from_int));
        assert!(r.real_even);
        assert!(r.form.terms.keys().all(|k| k[0].p.abs() == 1));
    }

    #[test]
    fn pure_omega21_table() {
        let r = tr_omega(&SpectralInput::default(), 2, 1, Convention::Pure, 7).unwrap();
        let c = r.table.coefficients();
        assert!(c[..3].iter().all(|x| *x == E::zero()));
        assert_eq!(c[3..], [21, 966, 27954, 650076].map(E::from_int));
        assert!(r.real_even);
    }

    #[test]
    fn blobbed_polar_plus_pole_at_zero_is_closed_form() {
        let order = 6;
        let def = solve_deformation(&SpectralInput::default(), order + 4).unwrap();
        let br = BranchD1::new(&def).unwrap();
        let be = HBackend::new(&def).unwrap();
        let form = build_form(1, 1, Convention::BlobbedPolar, 2 * order + 10).unwrap();
        for z in [def.eps[0].clone(), Series::constant(E::from_int(2))] {
            let parts = omega11_parts(&be, &z).unwrap();
            let lhs = evaluate_h(&form, &br, &[z.clone()])
                .unwrap()
                .checked_add(&lift_h(&parts.pole0_part().unwrap()))
                .unwrap();
            let rhs = lift_h(&parts.total().unwrap());
            let d = lhs.checked_sub(&rhs).unwrap();
            assert!(d.truncate(2 * order + 1).is_zero(), "{d}");
            assert!(d.raw_order() > 2 * order);
        }
        let total = omega11_parts(&be, &def.eps[0]).unwrap().total().unwrap();
        assert_eq!(total.coeff(1).unwrap(), minus_lambda(1, &[1])[0]);
    }

    #[test]
    fn symmetric_in_arguments() {
        let pts = [E::from_int(2), E::from_int(3), E::ratio(5, 2)];
        let rs = symmetry_checks(&SpectralInput::default(), &pts, 5).unwrap();
        assert_eq!(rs.len(), 3);
        assert!(rs.iter().all(|r| r.passed()), "{rs:?}");
    }

    #[test]
    fn loop_equation_holds() {
        assert!(loop_equation_check(Convention::Pure).unwrap().passed());
        assert!(loop_equation_check(Convention::BlobbedPolar).unwrap().passed());
    }

    #[test]
    fn unsupported_targets() {
        let inp = SpectralInput::default();
        assert!(matches!(
            tr_omega(&inp, 0, 4, Convention::Pure, 3),
            Err(QkmError::Unsupported(_))
        ));
        assert!(matches!(
            tr_omega(&inp, 2, 1, Convention::BlobbedPolar, 3),
            Err(QkmError::Unsupported(_))
        ));
        let d2 = SpectralInput::from_ratios(&[(1, 2, 1), (1, 3, 2)], 4);
        assert!(tr_omega(&d2, 1, 1, Convention::Pure, 3).is_err());
    }
}
