//! Closed forms for small s: H_{2q−1} and S_{d−1}(1;s') for s' ≤ q.

use crate::carlitz::{elem_sym, Carlitz};
use crate::error::{Error, Result};
use crate::fq::{Fq, FqElem};
use crate::mpoly::{MPoly, MPolyK, Var};
use crate::poly::PolyA;

/// ∏_i (t_i − Y) + (Y^q − θ)·e_{q−1}(t_1 − Y, …, t_s − Y) with s = 2q − 1, q > 2.
pub fn h_two_q_minus_one(fq: &Fq) -> Result<MPoly> {
    let q = fq.q() as usize;
    if q == 2 {
        return Err(Error::Domain("the product form needs q > 2".into()));
    }
    let s = 2 * q - 1;
    let y = MPoly::var(Var::Y, s)?;
    let z = MPoly::var(Var::Z, s)?;
    // ∏_i (1 + z(t_i − Y)); the z^j coefficient is e_j(t − Y)
    let mut gen = MPoly::one(s);
    for i in 1..=s {
        let lin = MPoly::var(Var::T(i), s)?.sub(&y, fq);
        gen = gen.mul(&MPoly::one(s).add(&z.mul(&lin, fq), fq), fq);
    }
    let prod = gen.coeff_in(Var::Z, s as u32)?;
    let e = gen.coeff_in(Var::Z, q as u32 - 1)?;
    let yq = y.pow(q as u64, fq).sub(&MPoly::constant(PolyA::theta(), s), fq);
    Ok(prod.add(&yq.mul(&e, fq), fq))
}

/// Σ_{i=0}^{q−1} (−1)^i (e_{2q−1−i} − θ·e_{q−1−i}) Y^i.
pub fn h_two_q_minus_one_expanded(fq: &Fq) -> Result<MPoly> {
    let q = fq.q() as usize;
    let s = 2 * q - 1;
    let mut out = MPoly::zero(s);
    for i in 0..q {
        let c = elem_sym(s - i, s, fq)?.sub(&elem_sym(q - 1 - i, s, fq)?.scale(&PolyA::theta(), fq), fq);
        let c = if i % 2 == 1 { c.neg(fq) } else { c };
        out = out.add(&c.shift_var(Var::Y, i as u32)?, fq);
    }
    Ok(out)
}

/// θ − e_q(t_1..t_{2q−1}).
pub fn lambda_two_q_minus_one(fq: &Fq) -> Result<MPoly> {
    let s = 2 * fq.q() as usize - 1;
    Ok(MPoly::constant(PolyA::theta(), s).sub(&elem_sym(fq.q() as usize, s, fq)?, fq))
}

/// S_{d−1}(1;s') from the closed forms: ∏b_{d−1}(t_i)/l_{d−1} for s' < q (d ≥ 1), and
/// ∏b_{d−2}(t_i)/l_{d−1}·(∏(t_i − θ^{q^{d−2}}) + θ^{q^{d−1}} − θ) for s' = q (d ≥ 2).
pub fn small_power_sum(c: &Carlitz, s_prime: usize, d: usize) -> Result<MPolyK> {
    let fq = c.fq();
    let q = fq.q() as usize;
    if s_prime > q || d == 0 || (s_prime == q && d < 2) {
        return Err(Error::Domain(format!("no closed form for s' = {s_prime}, d = {d}")));
    }
    let nt = s_prime;
    let k = if s_prime < q { d - 1 } else { d - 2 };
    let mut num = MPoly::one(nt);
    for i in 1..=nt {
        num = num.mul(&c.b_poly(k, Var::T(i), nt)?, fq);
    }
    if s_prime == q {
        let root = MPoly::constant(c.theta_qpow(d - 2), nt);
        let mut prod = MPoly::one(nt);
        for i in 1..=nt {
            prod = prod.mul(&MPoly::var(Var::T(i), nt)?.sub(&root, fq), fq);
        }
        let shift = c.theta_qpow(d - 1).sub(&PolyA::monomial(FqElem::ONE, 1), fq);
        num = num.mul(&prod.add(&MPoly::constant(shift, nt), fq), fq);
    }
    MPolyK::new(num, c.l(d - 1), fq)
}
