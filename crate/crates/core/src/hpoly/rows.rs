//! One specialisation H_s(θ^{q^{d−m}}) recovered from l_{d−1}F_d(1;s) by dividing out
//! ∏_i b_{d−m}(t_i).

use std::collections::HashMap;

use rayon::prelude::*;

use crate::carlitz::Carlitz;
use crate::error::{Error, Result};
use crate::fq::{Fq, FqElem};
use crate::poly::PolyA;
use crate::sums::{class_sum, monic_range, sorted_classes, SymTPoly};

use super::{b_product_coeff, mul_by_b_product, HParams};

/// Work budget (coefficient operations) below which rows are computed by full enumeration.
pub const DIRECT_BUDGET: f64 = 5e8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowMode {
    /// Full enumeration when affordable, otherwise the top block only.
    Auto,
    /// Enumerate every monic a with deg a < d and check the whole quotient.
    Direct,
    /// Sum over affine subspaces, producing only the classes with entries ≥ d−m.
    TopBlock,
}

/// H_s at Y = θ^{q^{d−m}} in symmetric form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HTableRow {
    pub d: usize,
    pub h: SymTPoly,
    /// Largest θ-degree among the coefficients.
    pub theta_degree: usize,
    /// Whether H·∏b_{d−m}(t_i) was compared with l_{d−1}F_d(1;s) on every class.
    pub verified_full: bool,
    pub mode: RowMode,
}

fn binom(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Estimated coefficient operations of the direct enumeration.
pub fn direct_cost(q: u32, s: usize, d: usize) -> f64 {
    let q = q as f64;
    let polys = (q.powi(d as i32) - 1.0) / (q - 1.0);
    let classes = binom((d - 1 + s) as u64, s as u64);
    let deg_l = q * (q.powi(d as i32 - 1) - 1.0) / (q - 1.0);
    polys * classes * (deg_l + 1.0)
}

/// Solve the unitriangular system G_{D+e} = Σ_{e' ≥ e} h_{e'} ∏_j β_{D+e_j−e'_j}
/// for e ∈ [0, m−1]^s, from the largest class sums down.
fn solve_top_block(g: &SymTPoly, beta: &[PolyA], p: &HParams, big_d: u32, fq: &Fq) -> SymTPoly {
    let mut classes = sorted_classes(p.s, 0, p.m as u32 - 1);
    classes.sort_by_key(|e| std::cmp::Reverse(e.iter().sum::<u32>()));
    let mut h = SymTPoly::zero(p.s);
    let mut memo = HashMap::new();
    for e in classes {
        let f: Vec<u32> = e.iter().map(|x| x + big_d).collect();
        let known = b_product_coeff(&h, beta, &f, &mut memo, fq);
        let he = g.get(&f).sub(&known, fq);
        h.add_class(&e, &he, fq);
    }
    h
}

/// Top-block classes of l_{d−1}F_d(1;s) by summing over cosets θ^i + x + A(d−m).
fn top_block_sums(c: &Carlitz, p: &HParams, d: usize) -> SymTPoly {
    let fq = c.fq();
    let q = fq.q() as u64;
    let big_d = d - p.m;
    let alpha = c.e_numerator(big_d);
    let numer = c.l(d - 1).div_exact(&c.l(big_d), fq).expect("l_D | l_{d-1}").mul(&c.d(big_d), fq);
    let classes = sorted_classes(p.s, 0, p.m as u32 - 1);
    let mut jobs = Vec::new();
    for i in big_d..d {
        for idx in 0..q.pow((i - big_d) as u32) {
            jobs.push((i, idx));
        }
    }
    let partial: Vec<Vec<PolyA>> = jobs
        .par_iter()
        .map(|&(i, idx)| {
            let mut x = Vec::with_capacity(i - big_d);
            let mut r = idx;
            for _ in big_d..i {
                x.push(FqElem((r % q) as u8));
                r /= q;
            }
            let mut bx = vec![FqElem::ZERO; i + 1];
            bx[big_d..i].copy_from_slice(&x);
            bx[i] = FqElem::ONE;
            let bx = PolyA::from_coeffs(bx);
            let mut ev = PolyA::zero();
            for (j, a) in alpha.iter().enumerate() {
                ev.add_assign(&a.mul(&bx.frobenius(j as u32, fq), fq), fq);
            }
            let t = numer.div_exact(&ev, fq).expect("coset sum lies in A");
            classes
                .iter()
                .map(|e| {
                    let mut w = FqElem::ONE;
                    for &ej in e {
                        let k = big_d + ej as usize;
                        let cf = match k.cmp(&i) {
                            std::cmp::Ordering::Less => x[k - big_d],
                            std::cmp::Ordering::Equal => FqElem::ONE,
                            std::cmp::Ordering::Greater => FqElem::ZERO,
                        };
                        w = fq.mul(w, cf);
                    }
                    if w.is_zero() {
                        PolyA::zero()
                    } else {
                        t.scale(w, fq)
                    }
                })
                .collect()
        })
        .collect();
    let mut g = SymTPoly::zero(p.s);
    for part in partial {
        for (e, v) in classes.iter().zip(part) {
            let f: Vec<u32> = e.iter().map(|x| x + big_d as u32).collect();
            g.add_class(&f, &v, fq);
        }
    }
    g
}

/// H_s(θ^{q^{d−m}}) for d ≥ m, d ≥ 1.
pub fn h_row(c: &Carlitz, s: usize, d: usize, mode: RowMode) -> Result<HTableRow> {
    let fq = c.fq();
    let p = HParams::new(fq.q(), s)?;
    if p.m == 0 {
        return Err(Error::Domain("s = 1 has no polynomial H".into()));
    }
    if d < p.m {
        return Err(Error::Domain(format!("row d = {d} below m = {}", p.m)));
    }
    let big_d = d - p.m;
    let beta = c.b_coeffs(big_d);
    let mode = match mode {
        RowMode::Auto if direct_cost(p.q, s, d) <= DIRECT_BUDGET => RowMode::Direct,
        RowMode::Auto => RowMode::TopBlock,
        m => m,
    };
    match mode {
        RowMode::Direct => {
            let l = c.l(d - 1);
            let polys = monic_range(0, d - 1, fq);
            let g = class_sum(fq, s, &polys, |a| l.div_exact(a, fq).expect("a | l_{d-1}"));
            let h = solve_top_block(&g, &beta, &p, big_d as u32, fq);
            if mul_by_b_product(&h, &beta, fq) != g {
                return Err(Error::NonExactDivision(format!(
                    "∏b_{big_d}(t_i) does not divide l_{}F_{d}(1;{s})",
                    d - 1
                )));
            }
            let theta_degree = h.deg_theta().unwrap_or(0);
            Ok(HTableRow { d, h, theta_degree, verified_full: true, mode })
        }
        _ => {
            let g = top_block_sums(c, &p, d);
            let h = solve_top_block(&g, &beta, &p, big_d as u32, fq);
            let theta_degree = h.deg_theta().unwrap_or(0);
            Ok(HTableRow { d, h, theta_degree, verified_full: false, mode: RowMode::TopBlock })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carlitz::elem_sym;
    use crate::mpoly::MPoly;

    #[test]
    fn q2_s3_d2_golden() {
        let fq = Fq::with_order(2).unwrap();
        let c = Carlitz::new(&fq);
        let row = h_row(&c, 3, 2, RowMode::Direct).unwrap();
        assert!(row.verified_full);
        let th = PolyA::theta();
        let mut want = elem_sym(3, 3, &fq).unwrap();
        for k in 1..=2 {
            want = want.add(&elem_sym(k, 3, &fq).unwrap().scale(&th, &fq), &fq);
        }
        want = want.add(&MPoly::constant(th.mul(&th, &fq), 3), &fq);
        assert_eq!(row.h.to_mpoly(&fq), want);
    }

    #[test]
    fn top_block_agrees_with_direct() {
        for (q, s, ds) in [(3u32, 5usize, 2..=5usize), (2, 4, 3..=6), (2, 3, 2..=5), (5, 9, 2..=3)] {
            let fq = Fq::with_order(q).unwrap();
            let c = Carlitz::new(&fq);
            for d in ds {
                let a = h_row(&c, s, d, RowMode::Direct).unwrap();
                let b = h_row(&c, s, d, RowMode::TopBlock).unwrap();
                assert_eq!(a.h, b.h, "q={q} s={s} d={d}");
            }
        }
    }

    #[test]
    fn h_q_is_one() {
        for q in [2u32, 3, 4, 5] {
            let fq = Fq::with_order(q).unwrap();
            let c = Carlitz::new(&fq);
            for d in 1..=3 {
                let row = h_row(&c, q as usize, d, RowMode::Auto).unwrap();
                let mut one = SymTPoly::zero(q as usize);
                one.add_class(&vec![0; q as usize], &PolyA::one(), &fq);
                assert_eq!(row.h, one, "q={q} d={d}");
            }
        }
    }
}
