//! The polynomial H_s(t_1..t_s; Y) with F_d(1;s) = Π_{s,d}·H_s|_{Y=θ^{q^{d−m}}}, where
//! Π_{s,d} = ∏_i b_{d−m}(t_i)/l_{d−1}.

use std::collections::HashMap;

use crate::carlitz::Carlitz;
use crate::error::{Error, Result};
use crate::fq::{Fq, FqElem};
use crate::mpoly::{MPoly, MPolyK, Var};
use crate::poly::PolyA;
use crate::sums::{distinct_permutations, SymTPoly};

pub mod closed;
pub mod crosscheck;
pub mod interp;
pub mod restrict;
pub mod rows;
pub mod univ;
pub mod universal;

pub use crosscheck::{interp_crosscheck, CrosscheckReport};
pub use interp::h_interpolate;
pub use restrict::{h_restrict, power_sum_via_h};
pub use rows::{h_row, HTableRow, RowMode};
pub use univ::UnivRelTable;
pub use universal::h_universal;

/// m = (s−1)/(q−1) and μ = (q^m−1)/(q−1) − m for s ≡ 1 mod q−1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HParams {
    pub q: u32,
    pub s: usize,
    pub m: usize,
    pub mu: usize,
}

impl HParams {
    pub fn new(q: u32, s: usize) -> Result<HParams> {
        let qm1 = q as usize - 1;
        if s == 0 || (s - 1) % qm1 != 0 {
            return Err(Error::Domain(format!("s = {s} is not 1 mod {qm1}")));
        }
        let m = (s - 1) / qm1;
        let geo: u128 = (0..m).map(|i| (q as u128).pow(i as u32)).sum();
        let mu = usize::try_from(geo - m as u128).map_err(|_| Error::Domain("μ overflows".into()))?;
        Ok(HParams { q, s, m, mu })
    }
    /// Total θ-degree bound δ_{s,d} = m − 1 + μ·q^{d−m}.
    pub fn delta(&self, d: usize) -> Result<i64> {
        if d < self.m {
            return Err(Error::Domain(format!("d = {d} < m = {}", self.m)));
        }
        Ok(self.m as i64 - 1 + (self.mu as i64) * (self.q as i64).pow((d - self.m) as u32))
    }
    /// κ_0 = ⌊log_q s⌋ − 1.
    pub fn kappa0(&self) -> usize {
        let mut k = 0;
        let mut p = self.q as usize;
        while p <= self.s {
            k += 1;
            p *= self.q as usize;
        }
        k - 1
    }
}

/// How an [`HPolynomial`] was built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Universal,
    Vandermonde,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Universal => "universal",
            Route::Vandermonde => "vandermonde",
        }
    }
}

/// H_s as its Y-coefficients 𝔻_0..𝔻_μ, each a symmetric polynomial in t_1..t_s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolynomial {
    pub params: HParams,
    pub slices: Vec<SymTPoly>,
    pub route: Route,
}

impl HPolynomial {
    pub fn s(&self) -> usize {
        self.params.s
    }
    /// 𝔻_i, zero above μ.
    pub fn y_coeff(&self, i: usize) -> SymTPoly {
        self.slices.get(i).cloned().unwrap_or_else(|| SymTPoly::zero(self.s()))
    }
    pub fn deg_y(&self) -> Option<usize> {
        self.slices.iter().rposition(|c| !c.is_zero())
    }
    pub fn deg_t(&self) -> Option<u32> {
        self.slices.iter().filter_map(|c| c.deg_t()).max()
    }
    pub fn deg_theta(&self) -> Option<usize> {
        self.slices.iter().filter_map(|c| c.deg_theta()).max()
    }
    /// Corner coefficient: θ-free part of t_1^{m−1}…t_s^{m−1} Y^0.
    pub fn corner(&self) -> PolyA {
        let m = self.params.m as u32;
        self.y_coeff(0).get(&vec![m.saturating_sub(1); self.s()])
    }
    /// H_s at Y = θ^{q^k}, symmetric in t.
    pub fn eval_frobenius(&self, k: usize, fq: &Fq) -> SymTPoly {
        let step = (fq.q() as usize).pow(k as u32);
        let mut out = SymTPoly::zero(self.s());
        for (i, slice) in self.slices.iter().enumerate() {
            for (lam, c) in slice.classes() {
                out.add_class(lam, &c.shift(i * step), fq);
            }
        }
        out
    }
    /// Expanded polynomial in t_1..t_s, Y.
    pub fn to_mpoly(&self, fq: &Fq) -> MPoly {
        let nt = self.s();
        let mut out = MPoly::zero(nt);
        for (i, slice) in self.slices.iter().enumerate() {
            out.add_assign(&slice.to_mpoly(fq).shift_var(Var::Y, i as u32).expect("Y slot"), fq);
        }
        out
    }
    /// Split a polynomial in t, Y into symmetric Y-slices.
    pub fn from_mpoly(params: HParams, f: &MPoly, route: Route, fq: &Fq) -> Result<HPolynomial> {
        if f.nt() != params.s {
            return Err(Error::ArityMismatch(format!("H_{} needs {} t-variables", params.s, params.s)));
        }
        let top = f.deg_in(Var::Y)?.unwrap_or(0) as usize;
        let mut slices = Vec::with_capacity(top + 1);
        for i in 0..=top {
            slices.push(SymTPoly::from_mpoly(&f.coeff_in(Var::Y, i as u32)?, fq)?);
        }
        while slices.len() > 1 && slices.last().is_some_and(|c| c.is_zero()) {
            slices.pop();
        }
        Ok(HPolynomial { params, slices, route })
    }
    /// Text form: header line then one `Y^i` block per slice.
    pub fn emit(&self, fq: &Fq) -> String {
        let mut out = String::new();
        for (i, slice) in self.slices.iter().enumerate() {
            out.push_str(&format!("Y^{i}\n{}\n", slice.emit(fq)));
        }
        out
    }
}

/// Π_{s,d} = ∏_i b_{d−m}(t_i)/l_{d−1}; s = 1 gives b_d(t_1)/l_{d−1}.
pub fn pi_factor(c: &Carlitz, s: usize, d: usize) -> Result<MPolyK> {
    let fq = c.fq();
    let p = HParams::new(fq.q(), s)?;
    if d < p.m.max(1) {
        return Err(Error::Domain(format!("Π_{{s,d}} needs d ≥ max(m,1), got d = {d}")));
    }
    let mut num = MPoly::one(s);
    for i in 1..=s {
        num = num.mul(&c.b_poly(d - p.m, Var::T(i), s)?, fq);
    }
    MPolyK::new(num, c.l(d - 1), fq)
}

/// Σ_{e'} h_{sort e'}·∏_j β_{f_j − e'_j} for one exponent vector f, where β are the
/// t-coefficients of a single-variable factor applied to every t_j.
pub(crate) fn b_product_coeff(
    h: &SymTPoly,
    beta: &[PolyA],
    f: &[u32],
    memo: &mut HashMap<Vec<u32>, PolyA>,
    fq: &Fq,
) -> PolyA {
    let top = beta.len() as i64 - 1;
    let mut acc = PolyA::zero();
    for (e, he) in h.classes() {
        let mut counts: HashMap<Vec<u32>, u64> = HashMap::new();
        for perm in distinct_permutations(e) {
            let mut delta = Vec::with_capacity(f.len());
            let mut ok = true;
            for (fj, pj) in f.iter().zip(&perm) {
                let dl = *fj as i64 - *pj as i64;
                if dl < 0 || dl > top {
                    ok = false;
                    break;
                }
                delta.push(dl as u32);
            }
            if ok {
                delta.sort_unstable();
                *counts.entry(delta).or_insert(0) += 1;
            }
        }
        for (delta, n) in counts {
            let k = fq.from_int((n % fq.p() as u64) as i64);
            if k.is_zero() {
                continue;
            }
            let prod = memo
                .entry(delta.clone())
                .or_insert_with(|| delta.iter().fold(PolyA::one(), |a, &dl| a.mul(&beta[dl as usize], fq)))
                .clone();
            acc.add_assign(&prod.mul(he, fq).scale(k, fq), fq);
        }
    }
    acc
}

/// ∏_i b(t_i)·h in symmetric form, where b has t-coefficients `beta`.
pub fn mul_by_b_product(h: &SymTPoly, beta: &[PolyA], fq: &Fq) -> SymTPoly {
    let s = h.s();
    let top = h.deg_t().unwrap_or(0) + beta.len() as u32 - 1;
    let mut memo = HashMap::new();
    let mut out = SymTPoly::zero(s);
    if h.is_zero() {
        return out;
    }
    for f in crate::sums::sorted_classes(s, 0, top) {
        let c = b_product_coeff(h, beta, &f, &mut memo, fq);
        out.add_class(&f, &c, fq);
    }
    out
}

/// U = (Y^{q^M} − θ)·quotient + remainder with deg_Y remainder < q^M.
pub fn divrem_y_qpow_minus_theta(u: &MPoly, big_m: u32, fq: &Fq) -> Result<(MPoly, MPoly)> {
    let nt = u.nt();
    let n = fq.q().pow(big_m);
    let top = u.deg_in(Var::Y)?.unwrap_or(0);
    let mut rem = (0..=top).map(|k| u.coeff_in(Var::Y, k)).collect::<Result<Vec<_>>>()?;
    let mut quot = vec![MPoly::zero(nt); rem.len()];
    for k in (n..=top).rev() {
        let c = std::mem::replace(&mut rem[k as usize], MPoly::zero(nt));
        if c.is_zero() {
            continue;
        }
        let j = (k - n) as usize;
        rem[j] = rem[j].add(&c.scale(&PolyA::theta(), fq), fq);
        quot[j] = c;
    }
    let join = |parts: Vec<MPoly>| -> Result<MPoly> {
        let mut out = MPoly::zero(nt);
        for (k, c) in parts.into_iter().enumerate() {
            out = out.add(&c.shift_var(Var::Y, k as u32)?, fq);
        }
        Ok(out)
    };
    Ok((join(quot)?, join(rem)?))
}

/// Whether every coefficient of U(θ^{q^d}) is divisible by θ^{q^{d+M}} − θ.
pub fn row_divisible(u: &MPoly, big_m: u32, d: usize, fq: &Fq) -> Result<bool> {
    let q = fq.q() as usize;
    let row = u.eval_var_theta_power(Var::Y, q.pow(d as u32), fq)?;
    let modulus = PolyA::monomial(FqElem::ONE, q.pow(d as u32 + big_m)).sub(&PolyA::theta(), fq);
    for c in row.terms().values() {
        if !c.rem(&modulus, fq)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
