//! H_s by Lagrange interpolation in Y through the rows d = m..m+μ, checked on two
//! further rows.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::carlitz::Carlitz;
use crate::error::{Error, Result};
use crate::fq::Fq;
use crate::poly::PolyA;
use crate::sums::SymTPoly;

use super::rows::{h_row, HTableRow, RowMode};
use super::{HParams, HPolynomial, Route};

/// Rows outside the interpolation nodes that must also be reproduced.
pub const HOLDOUTS: usize = 2;

/// Coefficient vector (in Y) of ∏_{j≠k}(Y − y_j).
fn node_poly(nodes: &[PolyA], k: usize, fq: &Fq) -> Vec<PolyA> {
    let mut acc = vec![PolyA::one()];
    for (j, y) in nodes.iter().enumerate() {
        if j == k {
            continue;
        }
        let mut next = vec![PolyA::zero(); acc.len() + 1];
        for (i, c) in acc.iter().enumerate() {
            next[i + 1].add_assign(c, fq);
            next[i].sub_assign(&c.mul(y, fq), fq);
        }
        acc = next;
    }
    acc
}

/// Interpolate symmetric values at Y = nodes[k] into Y-slices with coefficients in A.
pub fn interpolate_slices(values: &[SymTPoly], nodes: &[PolyA], fq: &Fq) -> Result<Vec<SymTPoly>> {
    let n = nodes.len();
    let s = values.first().map(|v| v.s()).unwrap_or(0);
    let mut delta = PolyA::one();
    for k in 0..n {
        for j in 0..k {
            delta = delta.mul(&nodes[k].sub(&nodes[j], fq), fq);
        }
    }
    let weights: Vec<Vec<PolyA>> = (0..n)
        .into_par_iter()
        .map(|k| {
            let dk = (0..n).filter(|&j| j != k).fold(PolyA::one(), |a, j| a.mul(&nodes[k].sub(&nodes[j], fq), fq));
            let scale = delta.div_exact(&dk, fq).expect("Δ_k | Δ");
            node_poly(nodes, k, fq).iter().map(|c| c.mul(&scale, fq)).collect()
        })
        .collect();
    let classes: BTreeSet<Vec<u32>> = values.iter().flat_map(|v| v.classes().keys().cloned()).collect();
    let classes: Vec<Vec<u32>> = classes.into_iter().collect();
    let per_class: Vec<Result<Vec<PolyA>>> = classes
        .par_iter()
        .map(|lam| {
            let mut coeffs = vec![PolyA::zero(); n];
            for (k, v) in values.iter().enumerate() {
                let vk = v.get(lam);
                if vk.is_zero() {
                    continue;
                }
                for (i, w) in weights[k].iter().enumerate() {
                    coeffs[i].add_assign(&w.mul(&vk, fq), fq);
                }
            }
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    c.div_exact(&delta, fq).map_err(|_| {
                        Error::NonIntegralResult(format!("class {lam:?}, Y^{i}: Δ does not divide the numerator"))
                    })
                })
                .collect()
        })
        .collect();
    let mut slices = vec![SymTPoly::zero(s); n.max(1)];
    for (lam, r) in classes.iter().zip(per_class) {
        for (i, c) in r?.into_iter().enumerate() {
            slices[i].add_class(lam, &c, fq);
        }
    }
    while slices.len() > 1 && slices.last().is_some_and(|c| c.is_zero()) {
        slices.pop();
    }
    Ok(slices)
}

/// Compare H_s(θ^{q^{d−m}}) with an independently computed row.
pub fn check_row(h: &HPolynomial, row: &HTableRow, fq: &Fq) -> Result<()> {
    let k = row.d - h.params.m;
    if h.eval_frobenius(k, fq) != row.h {
        return Err(Error::RouteMismatch(format!("H_{} disagrees with row d = {}", h.s(), row.d)));
    }
    Ok(())
}

/// H_s from μ+1 rows, verified on the next two rows.
pub fn h_interpolate(c: &Carlitz, s: usize, mode: RowMode) -> Result<HPolynomial> {
    let fq = c.fq();
    let p = HParams::new(fq.q(), s)?;
    if p.m == 0 {
        return Err(Error::Domain("s = 1 has no polynomial H".into()));
    }
    let ds: Vec<usize> = (p.m..=p.m + p.mu + HOLDOUTS).collect();
    let rows: Vec<HTableRow> = ds.par_iter().map(|&d| h_row(c, s, d, mode)).collect::<Result<_>>()?;
    let nodes: Vec<PolyA> = (0..=p.mu).map(|k| c.theta_qpow(k)).collect();
    let values: Vec<SymTPoly> = rows[..=p.mu].iter().map(|r| r.h.clone()).collect();
    let slices = interpolate_slices(&values, &nodes, fq)?;
    let h = HPolynomial { params: p, slices, route: Route::Vandermonde };
    for row in &rows[p.mu + 1..] {
        check_row(&h, row, fq)?;
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::FqElem;

    #[test]
    fn recovers_a_known_polynomial() {
        let fq = Fq::with_order(3).unwrap();
        // f(Y) = θ + 2Y + θ²Y² in one symmetric class.
        let f = [PolyA::theta(), PolyA::constant(FqElem(2)), PolyA::monomial(FqElem::ONE, 2)];
        let nodes: Vec<PolyA> = (0..3).map(|k| PolyA::monomial(FqElem::ONE, 3usize.pow(k))).collect();
        let values: Vec<SymTPoly> = nodes
            .iter()
            .map(|y| {
                let v = f.iter().rev().fold(PolyA::zero(), |acc, c| acc.mul(y, &fq).add(c, &fq));
                let mut sp = SymTPoly::zero(1);
                sp.add_class(&[0], &v, &fq);
                sp
            })
            .collect();
        let slices = interpolate_slices(&values, &nodes, &fq).unwrap();
        for (i, c) in f.iter().enumerate() {
            assert_eq!(&slices[i].get(&[0]), c);
        }
    }

    #[test]
    fn non_integral_is_reported() {
        let fq = Fq::with_order(3).unwrap();
        let nodes = vec![PolyA::theta(), PolyA::monomial(FqElem::ONE, 3)];
        let mut a = SymTPoly::zero(1);
        a.add_class(&[0], &PolyA::one(), &fq);
        let values = vec![a, SymTPoly::zero(1)];
        assert!(matches!(interpolate_slices(&values, &nodes, &fq), Err(Error::NonIntegralResult(_))));
    }
}
