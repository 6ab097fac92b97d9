//! Power sums S_d(1;s') for s' < s read off from H_s:
//! S_d(1;s') = l_d^{-1}·∏_{i≤s'} b_{d+1−m}(t_i)·H_{s,s'}(θ^{q^{d+1−m}}),
//! where H_{s,s'} is the coefficient of t_{s'+1}^{m−1}…t_s^{m−1} in H_s.

use crate::carlitz::Carlitz;
use crate::error::{Error, Result};
use crate::fq::Fq;
use crate::mpoly::{MPoly, MPolyK, Var};
use crate::poly::PolyA;
use crate::sums::SymTPoly;

use super::{mul_by_b_product, HPolynomial};

/// H_{s,s'} as Y-slices, each symmetric in t_1..t_{s'}.
pub fn h_restrict_sym(h: &HPolynomial, s_prime: usize, fq: &Fq) -> Result<Vec<SymTPoly>> {
    let s = h.s();
    if s_prime >= s {
        return Err(Error::Domain(format!("s' = {s_prime} must be below s = {s}")));
    }
    let top = h.params.m as u32 - 1;
    Ok(h
        .slices
        .iter()
        .map(|slice| {
            let mut out = SymTPoly::zero(s_prime);
            for (lam, c) in slice.classes() {
                if lam[s_prime..].iter().all(|&e| e == top) {
                    out.add_class(&lam[..s_prime], c, fq);
                }
            }
            out
        })
        .collect())
}

/// H_{s,s'} as a polynomial in t_1..t_{s'}, Y.
pub fn h_restrict(h: &HPolynomial, s_prime: usize, fq: &Fq) -> Result<MPoly> {
    let mut out = MPoly::zero(s_prime);
    for (i, slice) in h_restrict_sym(h, s_prime, fq)?.iter().enumerate() {
        out.add_assign(&slice.to_mpoly(fq).shift_var(Var::Y, i as u32)?, fq);
    }
    Ok(out)
}

/// l_d·S_d(1;s') in symmetric form, returned with the denominator l_d.
pub fn power_sum_via_h_sym(c: &Carlitz, h: &HPolynomial, s_prime: usize, d: usize) -> Result<(SymTPoly, PolyA)> {
    let fq = c.fq();
    let m = h.params.m;
    if d + 1 < m {
        return Err(Error::Domain(format!("d = {d} below m − 1 = {}", m - 1)));
    }
    let k = d + 1 - m;
    let step = (fq.q() as usize).pow(k as u32);
    let mut spec = SymTPoly::zero(s_prime);
    for (i, slice) in h_restrict_sym(h, s_prime, fq)?.iter().enumerate() {
        for (lam, cf) in slice.classes() {
            spec.add_class(lam, &cf.shift(i * step), fq);
        }
    }
    Ok((mul_by_b_product(&spec, &c.b_coeffs(k), fq), c.l(d)))
}

/// S_d(1;s') from H_s.
pub fn power_sum_via_h(c: &Carlitz, h: &HPolynomial, s_prime: usize, d: usize) -> Result<MPolyK> {
    let (num, den) = power_sum_via_h_sym(c, h, s_prime, d)?;
    MPolyK::new(num.to_mpoly(c.fq()), den, c.fq())
}
