//! Limits at the infinite place, modelled by truncated Laurent series in 1/θ.
//!
//! Ω = ∏ω(t_i)/π̃ is never expanded from scratch: it factors as Ω = Γ_d·Ω_d with the
//! finite part Ω_d = ∏ω_{d−m}(t_i)/π̃_d exact, and Γ_d = ∏_{i≥d}(1 − θ^{1−q^i}) /
//! ∏_{i≥d−m}∏_j(1 − t_jθ^{−q^i}) a series whose t-degree is bounded by the window.

use rayon::prelude::*;

use crate::carlitz::{digit_profile, Carlitz};
use crate::error::{Error, Result};
use crate::fq::{Fq, FqElem};
use crate::hpoly::{h_row, pi_factor, HParams, HPolynomial, RowMode};
use crate::mpoly::{MPoly, MPolyK, Var};
use crate::poly::PolyA;

pub mod laurent;

pub use laurent::{geometric, TruncLaurent};

/// Extra exponents kept below the −2q^{d−m} comparison window.
const SLACK: i64 = 16;

/// (−1)^n as a field element.
fn sign(n: usize, fq: &Fq) -> FqElem {
    if n % 2 == 0 {
        FqElem::ONE
    } else {
        fq.neg(FqElem::ONE)
    }
}

fn sum_t(s: usize, fq: &Fq) -> MPoly {
    (1..=s).fold(MPoly::zero(s), |acc, i| acc.add(&MPoly::var(Var::T(i), s).expect("t slot"), fq))
}

/// π̃_d/∏_j ω_{d−m}(t_j) built from the defining products, compared with
/// −(−θ)^{δ_{s,d}−m+1}·∏_j b_{d−m}(t_j)/l_{d−1}.
pub fn period_identity_check(c: &Carlitz, s: usize, d: usize) -> Result<bool> {
    let fq = c.fq();
    let p = HParams::new(fq.q(), s)?;
    if d < p.m.max(1) {
        return Err(Error::Domain(format!("d = {d} below m")));
    }
    // θ·(−θ)^{−m}·∏_j∏_{i<d−m}(θ^{q^i} − t_j)θ^{−q^i} · ∏_{i=1}^{d−1} θ^{q^i}/(θ^{q^i} − θ)
    let mut num = MPoly::constant(PolyA::constant(sign(p.m, fq)), s);
    let mut den = PolyA::monomial(FqElem::ONE, p.m.saturating_sub(1));
    if p.m == 0 {
        num = num.scale(&PolyA::theta(), fq);
    }
    for j in 1..=s {
        for i in 0..d - p.m {
            let th = c.theta_qpow(i);
            let f = MPoly::constant(th.clone(), s).sub(&MPoly::var(Var::T(j), s)?, fq);
            num = num.mul(&f, fq);
            den = den.mul(&th, fq);
        }
    }
    for i in 1..d {
        let th = c.theta_qpow(i);
        num = num.scale(&th, fq);
        den = den.mul(&th.sub(&PolyA::theta(), fq), fq);
    }
    let lhs = MPolyK::new(num, den, fq)?;
    let delta = p.delta(d)?;
    let power = (delta - p.m as i64 + 1) as usize;
    let scal = PolyA::monomial(sign(power + 1, fq), power);
    let rhs = pi_factor(c, s, d)?.mul(&MPolyK::from_mpoly(MPoly::constant(scal, s)), fq);
    Ok(lhs == rhs)
}

/// Outcome of a stabilisation run: the stable polynomial part and, per d, the top
/// θ-exponent of what remains (None when nothing remains above the floor).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitReport {
    pub value: MPoly,
    pub residual_tops: Vec<(usize, Option<i64>, Option<i64>)>,
}

impl LimitReport {
    /// Residual top exponents are negative and strictly decreasing in d.
    pub fn valuation_grows(&self) -> bool {
        let eff: Vec<i64> = self
            .residual_tops
            .iter()
            .map(|(_, top, floor)| top.unwrap_or(floor.map(|f| f - 1).unwrap_or(i64::MIN)))
            .collect();
        eff.iter().all(|&t| t < 0) && eff.windows(2).all(|w| w[1] < w[0])
    }
}

/// Common polynomial part of a family of series and the residual tops.
fn stabilise(series: Vec<(usize, TruncLaurent)>, fq: &Fq) -> Result<LimitReport> {
    let (_, last) = series.last().ok_or_else(|| Error::Domain("empty window".into()))?;
    let value = last.polynomial_part(fq)?;
    let exact = TruncLaurent::from_mpoly(&value, 0)?;
    let mut residual_tops = Vec::new();
    for (d, x) in &series {
        if x.polynomial_part(fq)? != value {
            return Err(Error::NotStabilized(format!("polynomial part at d = {d} differs from the last row")));
        }
        let r = x.sub(&exact, fq);
        residual_tops.push((*d, r.top(), r.floor()));
    }
    let report = LimitReport { value, residual_tops };
    if !report.valuation_grows() {
        return Err(Error::NotStabilized(format!("residual tops {:?} do not decrease", report.residual_tops)));
    }
    Ok(report)
}

/// −θ^{−μq^{d−m}}·H_s(θ^{q^{d−m}}) for d in the window; its stable part is λ_{1,s}.
pub fn lambda_limit(h: &HPolynomial, d_lo: usize, d_hi: usize, fq: &Fq) -> Result<LimitReport> {
    let p = h.params;
    if d_lo < p.m || d_hi <= d_lo {
        return Err(Error::Domain(format!("window {d_lo}..={d_hi} must satisfy m ≤ d_lo < d_hi")));
    }
    let series = (d_lo..=d_hi)
        .map(|d| {
            let k = (p.q as i64).pow((d - p.m) as u32);
            let hd = h.eval_frobenius(d - p.m, fq).to_mpoly(fq);
            Ok((d, TruncLaurent::from_mpoly(&hd, -(p.mu as i64) * k)?.neg(fq)))
        })
        .collect::<Result<Vec<_>>>()?;
    stabilise(series, fq)
}

/// Smallest d ≥ m + 1 at which the polynomial part of −θ^{−μq^{d−m}}·H(θ^{q^{d−m}}) is the
/// Y^μ coefficient alone, i.e. deg_θ H_i < (μ − i)·q^{d−m} for every i < μ.
pub fn lambda_stable_from(h: &HPolynomial) -> usize {
    let p = h.params;
    let mut d = p.m + 1;
    loop {
        let k = (p.q as usize).pow((d - p.m) as u32);
        let ok = (0..p.mu).all(|i| h.y_coeff(i).deg_theta().is_none_or(|t| t < (p.mu - i) * k));
        if ok {
            return d;
        }
        d += 1;
    }
}

/// Which product the Γ-polynomials expand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaSide {
    /// h = g·f^{-1}, the expansion of Γ_d itself.
    Direct,
    /// h = f·g^{-1}, the expansion of Γ_d^{-1}.
    Inverse,
}

/// Coefficients h_0..h_upto of the chosen Γ-series, each in A[t_1..t_s].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaSeries {
    pub s: usize,
    pub m: usize,
    pub side: GammaSide,
    pub h: Vec<MPoly>,
}

fn series_mul(a: &[MPoly], b: &[MPoly], n: usize, nt: usize, fq: &Fq) -> Vec<MPoly> {
    (0..=n)
        .map(|k| (0..=k).fold(MPoly::zero(nt), |acc, i| acc.add(&a[i].mul(&b[k - i], fq), fq)))
        .collect()
}

fn series_inv(a: &[MPoly], n: usize, nt: usize, fq: &Fq) -> Vec<MPoly> {
    let mut inv = vec![MPoly::one(nt)];
    for k in 1..=n {
        let acc = (1..=k).fold(MPoly::zero(nt), |acc, i| acc.add(&a[i].mul(&inv[k - i], fq), fq));
        inv.push(acc.neg(fq));
    }
    inv
}

/// Σ' over n with base-q digits in {0,1}: weight(ℓ_q(n)) at Y^{stride·n}, up to Y^upto.
fn binary_digit_series<F: Fn(u32) -> MPoly>(q: u32, stride: usize, upto: usize, nt: usize, weight: F) -> Vec<MPoly> {
    let mut out = vec![MPoly::zero(nt); upto + 1];
    let mut n = 0usize;
    while n * stride <= upto {
        let dp = digit_profile(n as u64, q);
        if dp.digits.iter().all(|&x| x <= 1) {
            out[n * stride] = weight(dp.ell);
        }
        n += 1;
    }
    out
}

pub fn gamma_series(fq: &Fq, s: usize, upto: usize, side: GammaSide) -> Result<GammaSeries> {
    let p = HParams::new(fq.q(), s)?;
    if p.m == 0 {
        return Err(Error::Domain("Γ-series need m ≥ 1".into()));
    }
    let q = fq.q();
    let mut f = vec![MPoly::zero(s); upto + 1];
    f[0] = MPoly::one(s);
    for j in 1..=s {
        let neg_t = MPoly::var(Var::T(j), s)?.neg(fq);
        let fj = binary_digit_series(q, 1, upto, s, |l| neg_t.pow(l as u64, fq));
        f = series_mul(&f, &fj, upto, s, fq);
    }
    let neg_theta = MPoly::constant(PolyA::theta().neg(fq), s);
    let g = binary_digit_series(q, (q as usize).pow(p.m as u32), upto, s, |l| neg_theta.pow(l as u64, fq));
    let h = match side {
        GammaSide::Direct => series_mul(&g, &series_inv(&f, upto, s, fq), upto, s, fq),
        GammaSide::Inverse => series_mul(&f, &series_inv(&g, upto, s, fq), upto, s, fq),
    };
    Ok(GammaSeries { s, m: p.m, side, h })
}

/// Γ_{s,r}(Y) = Σ_{n=0}^{μ−r} h_n·Y^{μ−r−n}.
pub fn gamma_poly(series: &GammaSeries, mu: usize, r: usize, fq: &Fq) -> Result<MPoly> {
    if r > mu || series.h.len() <= mu - r {
        return Err(Error::IndexOutOfRange(format!("Γ_{{s,{r}}} needs r ≤ μ = {mu} and μ − r < series length")));
    }
    let s = series.s;
    let mut out = MPoly::zero(s);
    for n in 0..=mu - r {
        out = out.add(&series.h[n].shift_var(Var::Y, (mu - r - n) as u32)?, fq);
    }
    Ok(out)
}

/// Γ_d (or Γ_d^{-1}) as a series known down to θ^{floor}.
pub fn gamma_product(fq: &Fq, s: usize, m: usize, d: usize, floor: i64, side: GammaSide) -> Result<TruncLaurent> {
    let q = fq.q() as i64;
    let mut theta_part = TruncLaurent::one(s);
    let mut i = d;
    while 1 - q.pow(i as u32) >= floor {
        let x = TruncLaurent::theta_power(s, 1 - q.pow(i as u32));
        let factor = match side {
            GammaSide::Direct => TruncLaurent::one(s).sub(&x, fq),
            GammaSide::Inverse => geometric(&x, floor, fq)?,
        };
        theta_part = theta_part.mul(&factor, fq).truncate(floor);
        i += 1;
    }
    let mut t_part = TruncLaurent::one(s);
    let mut i = d - m;
    while -q.pow(i as u32) >= floor {
        for j in 0..s {
            let mut mono = vec![0; s];
            mono[j] = 1;
            let x = TruncLaurent::monomial(mono, -q.pow(i as u32), FqElem::ONE);
            let factor = match side {
                GammaSide::Direct => geometric(&x, floor, fq)?,
                GammaSide::Inverse => TruncLaurent::one(s).sub(&x, fq),
            };
            t_part = t_part.mul(&factor, fq).truncate(floor);
        }
        i += 1;
    }
    Ok(theta_part.mul(&t_part, fq).truncate(floor))
}

/// Top θ-exponents of θ^{(μ−r)q^{d−m}}Γ_d − Γ_{s,r}(θ^{q^{d−m}}) for each d.
pub fn gamma_defect_tops(fq: &Fq, s: usize, r: usize, ds: &[usize]) -> Result<Vec<Option<i64>>> {
    let p = HParams::new(fq.q(), s)?;
    let series = gamma_series(fq, s, p.mu, GammaSide::Direct)?;
    let gp = gamma_poly(&series, p.mu, r, fq)?;
    ds.iter()
        .map(|&d| {
            let k = (p.q as i64).pow((d - p.m) as u32);
            let shift = (p.mu - r) as i64 * k;
            let floor = -2 * k - SLACK;
            let gd = gamma_product(fq, s, p.m, d, floor - shift, GammaSide::Direct)?.shift(shift);
            let ev = gp.eval_var_theta_power(Var::Y, k as usize, fq)?;
            Ok(gd.sub(&TruncLaurent::from_mpoly(&ev, 0)?, fq).top())
        })
        .collect()
}

/// Ω·F_d(1;s) = Γ_d·(−θ^{−μq^{d−m}}·H_{s,d}) with H_{s,d} from enumeration, known down to `floor`.
fn omega_times_f(c: &Carlitz, p: &HParams, d: usize, floor: i64) -> Result<TruncLaurent> {
    let fq = c.fq();
    let k = (p.q as i64).pow((d - p.m) as u32);
    let row = h_row(c, p.s, d, RowMode::Auto)?;
    let hpart = TruncLaurent::from_mpoly(&row.h.to_mpoly(fq), -(p.mu as i64) * k)?.neg(fq);
    let top = hpart.top().unwrap_or(0);
    let gd = gamma_product(fq, p.s, p.m, d, floor - top, GammaSide::Direct)?;
    Ok(gd.mul(&hpart, fq).truncate(floor))
}

/// Per-d residuals of −(Ω·Γ_{s,r}(θ^{q^{d−m}})·F_d + Σ_{i=1}^{μ−r} 𝔻_{i+r}θ^{iq^{d−m}}) − 𝔻_r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerCoeffReport {
    pub r: usize,
    pub side: GammaSide,
    pub residual_tops: Vec<(usize, Option<i64>, Option<i64>)>,
}

impl LowerCoeffReport {
    pub fn valuation_grows(&self) -> bool {
        LimitReport { value: MPoly::zero(0), residual_tops: self.residual_tops.clone() }.valuation_grows()
    }
}

pub fn lower_coeff_verify(
    c: &Carlitz,
    h: &HPolynomial,
    r: usize,
    d_lo: usize,
    d_hi: usize,
    side: GammaSide,
) -> Result<LowerCoeffReport> {
    let fq = c.fq();
    let p = h.params;
    if r >= p.mu {
        return Err(Error::Domain(format!("r = {r} must be below μ = {}", p.mu)));
    }
    if d_lo < p.m || d_hi <= d_lo {
        return Err(Error::Domain(format!("window {d_lo}..={d_hi} must satisfy m ≤ d_lo < d_hi")));
    }
    let series = gamma_series(fq, p.s, p.mu, side)?;
    let gp = gamma_poly(&series, p.mu, r, fq)?;
    let dcoef: Vec<MPoly> = (0..=p.mu).map(|i| h.y_coeff(i).to_mpoly(fq)).collect();
    let residual_tops = (d_lo..=d_hi)
        .into_par_iter()
        .map(|d| {
            let k = (p.q as i64).pow((d - p.m) as u32);
            let floor = -2 * k - SLACK;
            let gr = TruncLaurent::from_mpoly(&gp.eval_var_theta_power(Var::Y, k as usize, fq)?, 0)?;
            let of = omega_times_f(c, &p, d, floor - gr.top().unwrap_or(0))?;
            let mut x = gr.mul(&of, fq);
            for i in 1..=p.mu - r {
                x = x.add(&TruncLaurent::from_mpoly(&dcoef[i + r], i as i64 * k)?, fq);
            }
            let resid = x.neg(fq).sub(&TruncLaurent::from_mpoly(&dcoef[r], 0)?, fq).truncate(floor);
            Ok((d, resid.top(), resid.floor()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LowerCoeffReport { r, side, residual_tops })
}

/// ν_{1,s} by the tail limit (route a) and the two readings of 𝔻_{μ−1} = ν ∓ (Σt)λ (route b).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuReport {
    pub limit: LimitReport,
    /// 𝔻_{μ−1} + (Σt_i)λ_{1,s}.
    pub plus_form: MPoly,
    /// 𝔻_{μ−1} − (Σt_i)λ_{1,s}.
    pub minus_form: MPoly,
}

impl NuReport {
    pub fn agrees_plus(&self) -> bool {
        self.limit.value == self.plus_form
    }
    pub fn agrees_minus(&self) -> bool {
        self.limit.value == self.minus_form
    }
}

/// Route (a): stable part of θ^{q^{d−m}}·Ω·Σ_{i=d}^{d+extra} S_i(1;s) over the window.
pub fn nu_value(c: &Carlitz, h: &HPolynomial, d_lo: usize, d_hi: usize, extra: usize) -> Result<NuReport> {
    let fq = c.fq();
    let p = h.params;
    if p.mu == 0 {
        return Err(Error::PreconditionUnmet("ν needs μ ≥ 1, i.e. s ≥ 2q − 1".into()));
    }
    if d_lo < p.m || d_hi <= d_lo {
        return Err(Error::Domain(format!("window {d_lo}..={d_hi} must satisfy m ≤ d_lo < d_hi")));
    }
    let series = (d_lo..=d_hi)
        .into_par_iter()
        .map(|d| {
            let k = (p.q as i64).pow((d - p.m) as u32);
            let floor = -2 * k - SLACK;
            let head = omega_times_f(c, &p, d, floor - k)?;
            let whole = omega_times_f(c, &p, d + extra + 1, floor - k)?;
            Ok((d, whole.sub(&head, fq).shift(k).truncate(floor)))
        })
        .collect::<Result<Vec<_>>>()?;
    let limit = stabilise(series, fq)?;
    let lambda = h.y_coeff(p.mu).to_mpoly(fq).neg(fq);
    let d_low = h.y_coeff(p.mu - 1).to_mpoly(fq);
    let st = sum_t(p.s, fq).mul(&lambda, fq);
    Ok(NuReport { limit, plus_form: d_low.add(&st, fq), minus_form: d_low.sub(&st, fq) })
}
