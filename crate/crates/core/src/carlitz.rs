//! Carlitz sequences and polynomials: [n], l_n, D_n, b_n, Π_n, E_i, G_n and
//! Bernoulli–Carlitz numbers.

use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::frac::FracK;
use crate::fq::{Fq, FqElem};
use crate::mpoly::{MPoly, MPolyK, Var};
use crate::poly::PolyA;
use crate::quot::QuotCtx;

/// Base-q expansion of n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitProfile {
    pub n: u64,
    /// Least significant digit first.
    pub digits: Vec<u32>,
    pub ell: u32,
}

pub fn digit_profile(n: u64, q: u32) -> DigitProfile {
    let mut digits = Vec::new();
    let mut r = n;
    while r > 0 {
        digits.push((r % q as u64) as u32);
        r /= q as u64;
    }
    let ell = digits.iter().sum();
    DigitProfile { n, digits, ell }
}

/// ℓ_q(n), the base-q digit sum.
pub fn digit_sum(n: u64, q: u32) -> u32 {
    digit_profile(n, q).ell
}

/// Elementary symmetric polynomial e_j(t_1..t_nt).
pub fn elem_sym(j: usize, nt: usize, fq: &Fq) -> Result<MPoly> {
    if j > nt {
        return Err(Error::IndexOutOfRange(format!("e_{j} in {nt} variables")));
    }
    let mut out = MPoly::zero(nt);
    let mut pick = vec![0u32; nt];
    fn rec(i: usize, left: usize, pick: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(pick.clone());
            return;
        }
        if pick.len() - i < left {
            return;
        }
        pick[i] = 1;
        rec(i + 1, left - 1, pick, out);
        pick[i] = 0;
        rec(i + 1, left, pick, out);
    }
    let mut monos = Vec::new();
    rec(0, j, &mut pick, &mut monos);
    for m in monos {
        let mut mono = m;
        mono.extend([0, 0]);
        out.add_assign(&MPoly::from_terms(nt, [(mono, PolyA::one())], fq), fq);
    }
    Ok(out)
}

/// Memo tables for one field. Entries are appended in index order and never change.
pub struct Carlitz {
    fq: Fq,
    l: RwLock<Vec<PolyA>>,
    d: RwLock<Vec<PolyA>>,
    b: RwLock<Vec<Vec<PolyA>>>,
}

impl Carlitz {
    pub fn new(fq: &Fq) -> Carlitz {
        Carlitz {
            fq: fq.clone(),
            l: RwLock::new(vec![PolyA::one()]),
            d: RwLock::new(vec![PolyA::one()]),
            b: RwLock::new(vec![vec![PolyA::one()]]),
        }
    }
    pub fn fq(&self) -> &Fq {
        &self.fq
    }
    pub fn q(&self) -> u64 {
        self.fq.q() as u64
    }

    /// θ^{q^k}.
    pub fn theta_qpow(&self, k: usize) -> PolyA {
        PolyA::monomial(FqElem::ONE, (self.q() as usize).pow(k as u32))
    }

    /// [n] = θ^{q^n} − θ.
    pub fn bracket(&self, n: usize) -> PolyA {
        self.theta_qpow(n).sub(&PolyA::theta(), &self.fq)
    }

    fn extend<F: Fn(&Carlitz, &PolyA, usize) -> PolyA>(&self, table: &RwLock<Vec<PolyA>>, n: usize, step: F) -> PolyA {
        if let Some(v) = table.read().expect("poisoned").get(n) {
            return v.clone();
        }
        let mut t = table.write().expect("poisoned");
        while t.len() <= n {
            let k = t.len();
            let next = step(self, &t[k - 1], k);
            t.push(next);
        }
        t[n].clone()
    }

    /// l_n = −[n]·l_{n−1}, l_0 = 1.
    pub fn l(&self, n: usize) -> PolyA {
        self.extend(&self.l, n, |c, prev, k| c.bracket(k).mul(prev, &c.fq).neg(&c.fq))
    }

    /// D_n = [n]·D_{n−1}^q, D_0 = 1.
    pub fn d(&self, n: usize) -> PolyA {
        self.extend(&self.d, n, |c, prev, k| c.bracket(k).mul(&prev.frobenius(1, &c.fq), &c.fq))
    }

    /// Coefficients in t of b_n(t) = (t−θ)(t−θ^q)…(t−θ^{q^{n−1}}), constant first.
    pub fn b_coeffs(&self, n: usize) -> Vec<PolyA> {
        if let Some(v) = self.b.read().expect("poisoned").get(n) {
            return v.clone();
        }
        let mut t = self.b.write().expect("poisoned");
        while t.len() <= n {
            let k = t.len();
            let root = self.theta_qpow(k - 1);
            let prev = &t[k - 1];
            let mut next = vec![PolyA::zero(); prev.len() + 1];
            for (i, c) in prev.iter().enumerate() {
                next[i + 1].add_assign(c, &self.fq);
                next[i].sub_assign(&c.mul(&root, &self.fq), &self.fq);
            }
            t.push(next);
        }
        t[n].clone()
    }

    /// b_n(v) as a polynomial in the chosen variable.
    pub fn b_poly(&self, n: usize, v: Var, nt: usize) -> Result<MPoly> {
        MPoly::univariate(v, &self.b_coeffs(n), nt)
    }

    /// b_n evaluated at an element of A.
    pub fn b_eval(&self, n: usize, x: &PolyA) -> PolyA {
        (0..n).fold(PolyA::one(), |acc, i| acc.mul(&x.sub(&self.theta_qpow(i), &self.fq), &self.fq))
    }

    /// Carlitz factorial Π_n = ∏ D_i^{n_i}.
    pub fn factorial(&self, n: u64) -> PolyA {
        let dp = digit_profile(n, self.fq.q());
        dp.digits
            .iter()
            .enumerate()
            .fold(PolyA::one(), |acc, (i, &k)| acc.mul(&self.d(i).pow(k as u64, &self.fq), &self.fq))
    }

    /// q-polynomial coefficients of D_i·E_i(z) = Σ_j α_j z^{q^j}, each α_j ∈ A.
    pub fn e_numerator(&self, i: usize) -> Vec<PolyA> {
        let di = self.d(i);
        (0..=i)
            .map(|j| {
                let den = self.d(j).mul(&self.l(i - j).frobenius(j as u32, &self.fq), &self.fq);
                di.div_exact(&den, &self.fq).expect("D_j l_{i-j}^{q^j} divides D_i")
            })
            .collect()
    }

    /// E_i(z) in a ring with `nt` t-variables.
    pub fn e_poly(&self, i: usize, nt: usize) -> MPolyK {
        let q = self.q() as u32;
        let mut num = MPoly::zero(nt);
        for (j, a) in self.e_numerator(i).into_iter().enumerate() {
            num.add_assign(&MPoly::monomial(Var::Z, q.pow(j as u32), a, nt).expect("z slot"), &self.fq);
        }
        MPolyK::new(num, self.d(i), &self.fq).expect("nonzero D_i")
    }

    /// G_n = ∏ E_i^{n_i}.
    pub fn g_poly(&self, n: u64, nt: usize) -> MPolyK {
        let dp = digit_profile(n, self.fq.q());
        let mut acc = MPolyK::one(nt);
        for (i, &k) in dp.digits.iter().enumerate() {
            let e = self.e_poly(i, nt);
            for _ in 0..k {
                acc = acc.mul(&e, &self.fq);
            }
        }
        acc
    }

    /// Coefficients c_0..c_{upto} of (Σ_i z^{q^i−1}/D_i)^{−1}.
    fn reciprocal_series(&self, upto: usize) -> Vec<FracK> {
        let q = self.q() as usize;
        let mut c = vec![FracK::one()];
        for j in 1..=upto {
            let mut acc = FracK::zero();
            let mut i = 1;
            while q.pow(i as u32) - 1 <= j {
                let step = q.pow(i as u32) - 1;
                let term = c[j - step].div(&FracK::from_poly(self.d(i)), &self.fq).expect("nonzero");
                acc = acc.sub(&term, &self.fq);
                i += 1;
            }
            c.push(acc);
        }
        c
    }

    /// BC_j = Π_j·[z^j](Σ z^{q^i−1}/D_i)^{−1}, computed to series order `precision`.
    pub fn bc_number(&self, j: usize, precision: usize) -> Result<FracK> {
        if j > precision {
            return Err(Error::PrecisionExceeded(format!("BC_{j} needs series order {j} > {precision}")));
        }
        let c = self.reciprocal_series(j);
        Ok(c[j].mul(&FracK::from_poly(self.factorial(j as u64)), &self.fq))
    }

    /// BC_j mod P by long division of the series over A/P; needs j < q^{deg P} − 1.
    pub fn bc_number_mod(&self, j: usize, ctx: &QuotCtx) -> Result<PolyA> {
        let q = self.q() as usize;
        let dp = ctx.deg();
        if (j as u128) + 1 >= (q as u128).pow(dp as u32) && j > 0 {
            return Err(Error::PrecisionExceeded(format!("BC_{j} mod a prime of degree {dp}")));
        }
        let mut inv_d = vec![PolyA::one()];
        let mut i = 1;
        while q.pow(i as u32) - 1 <= j {
            inv_d.push(ctx.invert_mod(&self.d(i))?);
            i += 1;
        }
        let mut c = vec![PolyA::one()];
        for k in 1..=j {
            let mut acc = PolyA::zero();
            for (i, inv) in inv_d.iter().enumerate().skip(1) {
                let step = q.pow(i as u32) - 1;
                if step > k {
                    break;
                }
                acc.sub_assign(&ctx.mul(&c[k - step], inv), &self.fq);
            }
            c.push(acc);
        }
        let fact = digit_profile(j as u64, q as u32)
            .digits
            .iter()
            .enumerate()
            .fold(PolyA::one(), |acc, (i, &k)| ctx.mul(&acc, &ctx.pow(&self.d(i), k as u64)));
        Ok(ctx.mul(&c[j], &fact))
    }
}
