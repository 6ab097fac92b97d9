//! Reciprocal sums over affine F_q-subspaces of A, used as a second route to S_i(1;1)
//! that never enumerates polynomials.
//!
//! For a subspace V with e_V(x) = ∏_{b∈V}(x − b) = Σ_j γ_j x^{q^j}, the logarithmic
//! derivative gives Σ_{b∈V} 1/(x + b) = γ_0/e_V(x).

use crate::carlitz::Carlitz;
use crate::error::Result;
use crate::fq::{Fq, FqElem};
use crate::poly::PolyA;

/// q-coefficients γ_0..γ_n of e_V for V spanned by `basis` (assumed independent).
pub fn subspace_poly(basis: &[PolyA], fq: &Fq) -> Vec<PolyA> {
    let mut gam = vec![PolyA::one()];
    for v in basis {
        // e_{V+<v>} = e_V^q − e_V(v)^{q−1}·e_V
        let w = eval_q_poly(&gam, v, fq).pow(fq.q() as u64 - 1, fq);
        let mut next = vec![PolyA::zero(); gam.len() + 1];
        for (j, g) in gam.iter().enumerate() {
            next[j + 1].add_assign(&g.frobenius(1, fq), fq);
            next[j].sub_assign(&w.mul(g, fq), fq);
        }
        gam = next;
    }
    gam
}

/// Σ_j γ_j x^{q^j}.
pub fn eval_q_poly(gam: &[PolyA], x: &PolyA, fq: &Fq) -> PolyA {
    gam.iter()
        .enumerate()
        .fold(PolyA::zero(), |acc, (j, g)| acc.add(&g.mul(&x.frobenius(j as u32, fq), fq), fq))
}

fn theta_pow(k: usize) -> PolyA {
    PolyA::monomial(FqElem::ONE, k)
}

/// l_i·S_i(1;1) = b_i(t), checked coefficient by coefficient in t. The t^k coefficient of
/// S_i(1;1) is Σ_{c ≠ 0} c·Σ_{b∈V_k} 1/(θ^i + cθ^k + b) with V_k spanned by θ^j, j < i, j ≠ k.
pub fn level_one_power_sum_check(c: &Carlitz, i: usize) -> Result<bool> {
    let fq = c.fq();
    if i == 0 {
        return Ok(true);
    }
    let l = c.l(i);
    let b = c.b_coeffs(i);
    for (k, bk) in b.iter().enumerate() {
        let basis: Vec<PolyA> = (0..i).filter(|&j| j != k).map(theta_pow).collect();
        let gam = subspace_poly(&basis, fq);
        let e_top = eval_q_poly(&gam, &theta_pow(i), fq);
        if k == i {
            // every monic a of degree i
            if gam[0].mul(&l, fq) != e_top {
                return Ok(false);
            }
            continue;
        }
        let e_k = eval_q_poly(&gam, &theta_pow(k), fq);
        let units: Vec<FqElem> = fq.elements().filter(|x| !x.is_zero()).collect();
        let dens: Vec<PolyA> = units.iter().map(|&u| e_top.add(&e_k.scale(u, fq), fq)).collect();
        let mut num = PolyA::zero();
        for (a, &u) in units.iter().enumerate() {
            let others = dens.iter().enumerate().filter(|&(x, _)| x != a).fold(PolyA::one(), |acc, (_, d)| acc.mul(d, fq));
            num.add_assign(&others.scale(u, fq), fq);
        }
        let all = dens.iter().fold(PolyA::one(), |acc, d| acc.mul(d, fq));
        if l.mul(&gam[0], fq).mul(&num, fq) != bk.mul(&all, fq) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// (t − θ)·Σ_{i<d} b_i(t)·l_{d−1}/l_i = b_d(t); with l_i·S_i(1;1) = b_i this is
/// F_d(1;1) = b_d(t)/((t − θ)l_{d−1}).
pub fn level_one_telescopes(c: &Carlitz, d: usize) -> Result<bool> {
    let fq = c.fq();
    let top = c.l(d - 1);
    let mut acc = vec![PolyA::zero(); d + 1];
    for i in 0..d {
        let f = top.div_exact(&c.l(i), fq)?;
        for (k, bk) in c.b_coeffs(i).iter().enumerate() {
            let v = bk.mul(&f, fq);
            acc[k + 1].add_assign(&v, fq);
            acc[k].sub_assign(&v.mul(&PolyA::theta(), fq), fq);
        }
    }
    Ok(acc == c.b_coeffs(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::{MPolyK, Var};
    use crate::sums::{power_sum, SumSpec};

    #[test]
    fn subspace_poly_vanishes_on_its_space() {
        let fq = Fq::with_order(3).unwrap();
        let basis = [PolyA::one(), theta_pow(2)];
        let gam = subspace_poly(&basis, &fq);
        for a in fq.elements() {
            for b in fq.elements() {
                let v = PolyA::constant(a).add(&theta_pow(2).scale(b, &fq), &fq);
                assert!(eval_q_poly(&gam, &v, &fq).is_zero());
            }
        }
        assert!(!eval_q_poly(&gam, &PolyA::theta(), &fq).is_zero());
    }

    #[test]
    fn agrees_with_enumeration() {
        for q in [2u32, 3, 4] {
            let fq = Fq::with_order(q).unwrap();
            let c = Carlitz::new(&fq);
            for i in 0..=4usize {
                assert!(level_one_power_sum_check(&c, i).unwrap(), "q={q} i={i}");
                let s = power_sum(&c, &SumSpec { n: 1, s: 1, d: i });
                let want = MPolyK::new(c.b_poly(i, Var::T(1), 1).unwrap(), c.l(i), &fq).unwrap();
                assert_eq!(s, want);
                assert!(level_one_telescopes(&c, i + 1).unwrap());
            }
        }
    }
}
