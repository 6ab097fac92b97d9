//! H_s in closed form from the universal relations:
//! H_s = −Σ_{h=0}^{κ_0} Σ_{j ∈ [0,m−1]^s} c_{j,q^{h+m}}(Y)·∏_i B_{j_i}(t_i) / ∏_{u=0}^{h}(θ − Y^{q^{m+u}}),
//! with B_k(t) = ∏_{r<k}(t − Y^{q^r}).

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fq::Fq;
use crate::mpoly::{MPoly, Var};
use crate::poly::PolyA;
use crate::sums::{distinct_permutations, sorted_classes};

use super::univ::UnivRelTable;
use super::{HParams, HPolynomial, Route};

/// θ − Y^k in a ring with `nt` t-variables.
fn theta_minus_y_pow(k: u32, nt: usize, fq: &Fq) -> MPoly {
    MPoly::constant(PolyA::theta(), nt).sub(&MPoly::monomial(Var::Y, k, PolyA::one(), nt).expect("Y slot"), fq)
}

/// B_k(t_i) = ∏_{r<k}(t_i − Y^{q^r}).
fn b_upper(k: u32, i: usize, nt: usize, fq: &Fq) -> MPoly {
    let q = fq.q();
    let t = MPoly::var(Var::T(i), nt).expect("t slot");
    (0..k).fold(MPoly::one(nt), |acc, r| {
        let f = t.sub(&MPoly::monomial(Var::Y, q.pow(r), PolyA::one(), nt).expect("Y slot"), fq);
        acc.mul(&f, fq)
    })
}

/// H_s assembled over the common denominator Q = ∏_{u=0}^{κ_0}(θ − Y^{q^{m+u}}).
pub fn h_universal(fq: &Fq, s: usize) -> Result<HPolynomial> {
    let p = HParams::new(fq.q(), s)?;
    if p.m == 0 {
        return Err(Error::Domain("s = 1 has no polynomial H".into()));
    }
    let q = fq.q();
    let k0 = p.kappa0();
    let factors: Vec<MPoly> = (0..=k0).map(|u| theta_minus_y_pow(q.pow((p.m + u) as u32), s, fq)).collect();
    let tails: Vec<MPoly> =
        (0..=k0).map(|h| factors[h + 1..].iter().fold(MPoly::one(s), |a, f| a.mul(f, fq))).collect();
    let denom = factors.iter().fold(MPoly::one(s), |a, f| a.mul(f, fq));

    let table = UnivRelTable::new(fq);
    let classes = sorted_classes(s, 0, p.m as u32 - 1);
    let lift: Vec<MPoly> = classes
        .iter()
        .map(|j| {
            (0..=k0).fold(MPoly::zero(s), |acc, h| {
                let i = (q as u64).pow((h + p.m) as u32);
                let c = table.coeff(j, i).rename_t(&[], s, fq).expect("lift to t-ring");
                acc.add(&c.mul(&tails[h], fq), fq)
            })
        })
        .collect();
    let b: Vec<Vec<MPoly>> =
        (0..p.m as u32).map(|k| (1..=s).map(|i| b_upper(k, i, s, fq)).collect()).collect();
    let numer = classes
        .par_iter()
        .zip(lift.par_iter())
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| {
            let w = distinct_permutations(j).iter().fold(MPoly::zero(s), |acc, perm| {
                let prod = perm.iter().enumerate().fold(MPoly::one(s), |a, (i, &k)| a.mul(&b[k as usize][i], fq));
                acc.add(&prod, fq)
            });
            w.mul(c, fq)
        })
        .reduce(|| MPoly::zero(s), |a, b| a.add(&b, fq));
    let h = numer.exact_div(&denom, fq)?.neg(fq);
    HPolynomial::from_mpoly(p, &h, Route::Universal, fq)
}
