//! Universal relations: products E_{n+j_1}…E_{n+j_r} expanded in the basis G_{iq^n}
//! with coefficients that are polynomials in Y evaluated at Y = θ^{q^n}.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use crate::fq::{Fq, FqElem};
use crate::mpoly::{MPoly, Var};
use crate::poly::PolyA;

/// Map i ↦ c_{j,i}(Y), with each c a polynomial in Y over A (no t-variables).
pub type UnivCoeffs = BTreeMap<u64, MPoly>;

/// Memo of universal-relation coefficients keyed by the sorted index tuple.
pub struct UnivRelTable {
    fq: Fq,
    memo: RwLock<HashMap<Vec<u32>, Arc<UnivCoeffs>>>,
}

/// Y^k − θ as a polynomial in Y.
fn y_pow_minus_theta(k: u32, fq: &Fq) -> MPoly {
    MPoly::monomial(Var::Y, k, PolyA::one(), 0)
        .expect("Y slot")
        .sub(&MPoly::constant(PolyA::theta(), 0), fq)
}

/// Position k of the first run of q equal entries in a sorted tuple.
fn first_run(j: &[u32], q: usize) -> Option<usize> {
    (0..j.len().checked_sub(q - 1)?).find(|&k| j[k] == j[k + q - 1])
}

impl UnivRelTable {
    pub fn new(fq: &Fq) -> UnivRelTable {
        UnivRelTable { fq: fq.clone(), memo: RwLock::new(HashMap::new()) }
    }

    /// Coefficients c_{j,i} for a tuple j (sorted internally).
    pub fn coeffs(&self, j: &[u32]) -> Arc<UnivCoeffs> {
        let mut key = j.to_vec();
        key.sort_unstable();
        if let Some(v) = self.memo.read().expect("poisoned").get(&key) {
            return v.clone();
        }
        let fq = &self.fq;
        let q = fq.q() as usize;
        let value = match first_run(&key, q) {
            None => {
                let i: u64 = key.iter().map(|&x| (q as u64).pow(x)).sum();
                let mut m = UnivCoeffs::new();
                m.insert(i, MPoly::one(0));
                m
            }
            Some(k) => {
                let r = key[k];
                let mut j1 = key[..=k].to_vec();
                j1.extend_from_slice(&key[k + q..]);
                let mut j2 = key[..k].to_vec();
                j2.push(r + 1);
                j2.extend_from_slice(&key[k + q..]);
                let c1 = self.coeffs(&j1);
                let c2 = self.coeffs(&j2);
                let factor = y_pow_minus_theta((q as u32).pow(r + 1), fq);
                let mut out: UnivCoeffs = (*c1).clone();
                for (i, c) in c2.iter() {
                    let add = factor.mul(c, fq);
                    let e = out.entry(*i).or_insert_with(|| MPoly::zero(0));
                    e.add_assign(&add, fq);
                }
                out.retain(|_, c| !c.is_zero());
                out
            }
        };
        let arc = Arc::new(value);
        self.memo.write().expect("poisoned").insert(key, arc.clone());
        arc
    }

    /// c_{j,i}(Y), zero when absent.
    pub fn coeff(&self, j: &[u32], i: u64) -> MPoly {
        self.coeffs(j).get(&i).cloned().unwrap_or_else(|| MPoly::zero(0))
    }
}

/// Y-polynomial evaluated at Y = θ^{q^n}.
pub fn eval_at_frobenius(c: &MPoly, n: u32, fq: &Fq) -> PolyA {
    let k = (fq.q() as usize).pow(n);
    c.eval_var_theta_power(Var::Y, k, fq)
        .expect("Y slot")
        .as_constant()
        .unwrap_or_else(|| PolyA::monomial(FqElem::ZERO, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carlitz::Carlitz;
    use crate::mpoly::MPolyK;

    #[test]
    fn base_case_single_entry() {
        let fq = Fq::with_order(3).unwrap();
        let t = UnivRelTable::new(&fq);
        let c = t.coeffs(&[0, 1, 1]);
        assert_eq!(c.len(), 1);
        assert_eq!(c.get(&7).unwrap(), &MPoly::one(0));
    }

    #[test]
    fn q_copies_of_zero() {
        for q in [2u32, 3, 4, 5] {
            let fq = Fq::with_order(q).unwrap();
            let t = UnivRelTable::new(&fq);
            let c = t.coeffs(&vec![0; q as usize]);
            assert_eq!(c.len(), 2);
            assert_eq!(c.get(&1).unwrap(), &MPoly::one(0));
            assert_eq!(c.get(&(q as u64)).unwrap(), &y_pow_minus_theta(q, &fq));
        }
    }

    /// Expand both sides as polynomials in z.
    #[test]
    fn identity_in_z_q2_triple_zero() {
        let fq = Fq::with_order(2).unwrap();
        let car = Carlitz::new(&fq);
        let t = UnivRelTable::new(&fq);
        let j = [0u32, 0, 0];
        for n in 0..=2u32 {
            let lhs = j.iter().fold(MPolyK::one(0), |acc, &ji| acc.mul(&car.e_poly((n + ji) as usize, 0), &fq));
            let mut rhs = MPolyK::zero(0);
            for (i, c) in t.coeffs(&j).iter() {
                let val = eval_at_frobenius(c, n, &fq);
                let g = car.g_poly(i * 2u64.pow(n), 0);
                rhs = rhs.add(&g.mul(&MPolyK::from_mpoly(MPoly::constant(val, 0)), &fq), &fq);
            }
            assert_eq!(lhs, rhs, "n={n}");
        }
    }
}
