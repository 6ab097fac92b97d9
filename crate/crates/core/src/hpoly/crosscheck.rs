//! Interpolation in z of a ↦ a(t_1)…a(t_s) over A(d), the set of polynomials of degree < d.
//!
//! N_{1,d} = Σ_{j<d} E_j(z)·b_j(t) interpolates a ↦ a(t); M_{s,d} = ∏_i N_{1,d}(t_i);
//! N_{s,d} is the interpolation of degree < q^d in z. Then e_d(z) = ∏_{a∈A(d)}(z − a)
//! divides M − N and, for s ≥ 2, ((M − N)/(l_d E_d))|_{z=0} = −F_d(1;s) when s ≡ 1 mod q−1.

use crate::carlitz::Carlitz;
use crate::error::Result;
use crate::fq::Fq;
use crate::mpoly::{MPoly, MPolyK, Var};
use crate::poly::PolyA;
use crate::sums::{harmonic_sum, SumSpec};

/// Outcome of each sub-check; `z_zero` is `None` when s = 1 (nothing to extract).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub s: usize,
    pub d: usize,
    pub interpolates: bool,
    pub divisible: bool,
    pub z_zero: Option<bool>,
}

impl CrosscheckReport {
    pub fn all_pass(&self) -> bool {
        self.interpolates && self.divisible && self.z_zero.unwrap_or(true)
    }
}

/// Every polynomial of degree < d, including 0.
fn all_below(d: usize, fq: &Fq) -> Vec<PolyA> {
    let q = fq.q() as u64;
    (0..q.pow(d as u32)).map(|n| PolyA::from_index(n, fq.q())).collect()
}

/// a(t_i) with coefficients of a moved onto powers of t_i.
fn a_of_t(a: &PolyA, i: usize, nt: usize) -> MPoly {
    let coeffs: Vec<PolyA> = a.coeffs().iter().map(|&c| PolyA::constant(c)).collect();
    MPoly::univariate(Var::T(i), &coeffs, nt).expect("t slot")
}

/// N_{1,d}(t_i, z).
pub fn n_one(c: &Carlitz, d: usize, i: usize, nt: usize) -> MPolyK {
    let fq = c.fq();
    (0..d).fold(MPolyK::zero(nt), |acc, j| {
        let b = MPolyK::from_mpoly(c.b_poly(j, Var::T(i), nt).expect("t slot"));
        acc.add(&c.e_poly(j, nt).mul(&b, fq), fq)
    })
}

/// e_d(z) = D_d·E_d(z) = Σ_j α_j z^{q^j}.
fn e_vanishing(c: &Carlitz, d: usize, nt: usize) -> MPoly {
    let q = c.q() as u32;
    let mut out = MPoly::zero(nt);
    for (j, a) in c.e_numerator(d).into_iter().enumerate() {
        out.add_assign(&MPoly::monomial(Var::Z, q.pow(j as u32), a, nt).expect("z slot"), c.fq());
    }
    out
}

pub fn interp_crosscheck(c: &Carlitz, s: usize, d: usize) -> Result<CrosscheckReport> {
    let fq = c.fq();
    let points = all_below(d, fq);

    let n1 = n_one(c, d, 1, 1);
    let interpolates = points.iter().all(|a| {
        n1.eval_var(Var::Z, a, fq).map(|v| v == MPolyK::from_mpoly(a_of_t(a, 1, 1))).unwrap_or(false)
    });

    let ev = e_vanishing(c, d, s);
    let z = MPoly::var(Var::Z, s)?;
    let mut n_sum = MPoly::zero(s);
    for a in &points {
        let prod = (1..=s).fold(MPoly::one(s), |acc, i| acc.mul(&a_of_t(a, i, s), fq));
        if prod.is_zero() {
            continue;
        }
        let lin = z.sub(&MPoly::constant(a.clone(), s), fq);
        n_sum.add_assign(&prod.mul(&ev.exact_div(&lin, fq)?, fq), fq);
    }
    let n_s = MPolyK::new(n_sum.scale(&c.l(d), fq), c.d(d), fq)?;
    let m_s = (1..=s).fold(MPolyK::one(s), |acc, i| acc.mul(&n_one(c, d, i, s), fq));
    let diff = m_s.sub(&n_s, fq);
    let quotient = diff.num().exact_div(&ev, fq).ok();
    let divisible = quotient.is_some();

    let z_zero = if s >= 2 {
        quotient.map(|r| -> Result<bool> {
            let at0 = MPolyK::new(
                r.eval_var(Var::Z, &PolyA::zero(), fq)?.scale(&c.d(d), fq),
                diff.den().mul(&c.l(d), fq),
                fq,
            )?;
            let mut want = harmonic_sum(c, &SumSpec { n: 1, s, d })?.neg(fq);
            if (s - 1) % (fq.q() as usize - 1) != 0 {
                want = MPolyK::zero(s);
            }
            Ok(at0 == want)
        })
        .transpose()?
        .or(Some(false))
    } else {
        None
    };
    Ok(CrosscheckReport { s, d, interpolates, divisible, z_zero })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_one_q2_d2_values() {
        let fq = Fq::with_order(2).unwrap();
        let c = Carlitz::new(&fq);
        let n1 = n_one(&c, 2, 1, 1);
        for a in all_below(2, &fq) {
            assert_eq!(n1.eval_var(Var::Z, &a, &fq).unwrap(), MPolyK::from_mpoly(a_of_t(&a, 1, 1)));
        }
    }

    #[test]
    fn small_grid_passes() {
        for q in [2u32, 3] {
            let fq = Fq::with_order(q).unwrap();
            let c = Carlitz::new(&fq);
            for d in 1..=2 {
                for s in 1..=3 {
                    let r = interp_crosscheck(&c, s, d).unwrap();
                    assert!(r.all_pass(), "{r:?} q={q}");
                }
            }
        }
    }
}
