//! Residue rings A/P for monic irreducible P.

use crate::error::{Error, Result};
use crate::fq::{Fq, FqElem};
use crate::frac::FracK;
use crate::mpoly::{MPoly, MPolyK};
use crate::poly::PolyA;

/// A certified prime P with its Frobenius table θ^{q^j} mod P, j = 0..=deg P.
#[derive(Clone, Debug)]
pub struct QuotCtx {
    fq: Fq,
    p: PolyA,
    frob: Vec<PolyA>,
}

/// x^q mod P, using that F_q is fixed by Frobenius.
fn frob_step(x: &PolyA, p: &PolyA, fq: &Fq) -> PolyA {
    x.frobenius(1, fq).rem(p, fq).expect("nonzero modulus")
}

pub fn is_irreducible(p: &PolyA, fq: &Fq) -> bool {
    let d = match p.deg() {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    let theta = PolyA::theta().rem(p, fq).expect("nonzero modulus");
    let mut x = theta.clone();
    for _ in 1..=d / 2 {
        x = frob_step(&x, p, fq);
        if !x.sub(&theta, fq).gcd(p, fq).is_one() {
            return false;
        }
    }
    true
}

/// All monic polynomials of degree d, constant coefficient varying fastest.
pub fn monic_of_degree(d: usize, fq: &Fq) -> impl Iterator<Item = PolyA> + '_ {
    let q = fq.q() as u64;
    let count = q.pow(d as u32);
    (0..count).map(move |idx| {
        let mut c = Vec::with_capacity(d + 1);
        let mut r = idx;
        for _ in 0..d {
            c.push(FqElem((r % q) as u8));
            r /= q;
        }
        c.push(FqElem::ONE);
        PolyA::from_coeffs(c)
    })
}

/// Monic irreducibles of degree exactly d, in enumeration order.
pub fn enumerate_irreducibles(d: usize, fq: &Fq) -> Vec<PolyA> {
    if d == 0 {
        return Vec::new();
    }
    monic_of_degree(d, fq).filter(|p| is_irreducible(p, fq)).collect()
}

impl QuotCtx {
    pub fn new(p: PolyA, fq: &Fq) -> Result<QuotCtx> {
        if !p.is_monic() || !is_irreducible(&p, fq) {
            return Err(Error::Domain(format!("{} is not a monic irreducible", p.emit(fq))));
        }
        let d = p.deg().expect("nonzero");
        let mut frob = vec![PolyA::theta().rem(&p, fq)?];
        for j in 0..d {
            let next = frob_step(&frob[j], &p, fq);
            frob.push(next);
        }
        Ok(QuotCtx { fq: fq.clone(), p, frob })
    }
    pub fn fq(&self) -> &Fq {
        &self.fq
    }
    pub fn modulus(&self) -> &PolyA {
        &self.p
    }
    pub fn deg(&self) -> usize {
        self.frob.len() - 1
    }
    /// θ^{q^j} mod P for 0 ≤ j ≤ deg P.
    pub fn frob_theta(&self, j: usize) -> &PolyA {
        &self.frob[j]
    }
    /// θ^{q^{-j}} realised as θ^{q^{d-j}} mod P.
    pub fn frob_theta_inv(&self, j: usize) -> &PolyA {
        let d = self.deg();
        &self.frob[(d - j % d) % d]
    }
    pub fn reduce(&self, a: &PolyA) -> PolyA {
        a.rem(&self.p, &self.fq).expect("nonzero modulus")
    }
    pub fn mul(&self, a: &PolyA, b: &PolyA) -> PolyA {
        self.reduce(&a.mul(b, &self.fq))
    }
    pub fn pow(&self, a: &PolyA, mut n: u64) -> PolyA {
        let mut base = self.reduce(a);
        let mut acc = PolyA::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
    pub fn invert_mod(&self, a: &PolyA) -> Result<PolyA> {
        let (g, u, _) = self.reduce(a).ext_gcd(&self.p, &self.fq);
        if !g.is_one() {
            return Err(Error::NotAUnit(a.emit(&self.fq)));
        }
        Ok(self.reduce(&u))
    }
    /// a^n mod P for any integer n; negative n requires a to be a unit.
    pub fn pow_signed(&self, a: &PolyA, n: i64) -> Result<PolyA> {
        if n >= 0 {
            Ok(self.pow(a, n as u64))
        } else {
            Ok(self.pow(&self.invert_mod(a)?, n.unsigned_abs()))
        }
    }
    /// Image of r ∈ K with v_P(r) ≥ 0.
    pub fn reduce_frac(&self, r: &FracK) -> Result<PolyA> {
        Ok(self.mul(r.num(), &self.invert_mod(r.den())?))
    }
    /// Image of f ∈ K[t..] whose denominator is prime to P.
    pub fn reduce_mpolyk(&self, f: &MPolyK) -> Result<MPoly> {
        Ok(self.scale_mpoly(&self.reduce_mpoly(f.num()), &self.invert_mod(f.den())?))
    }
    /// Reduce all θ-coefficients of a polynomial in t.. modulo P.
    pub fn reduce_mpoly(&self, f: &MPoly) -> MPoly {
        f.rem_coeffs(&self.p, &self.fq)
    }
    pub fn mul_mpoly(&self, f: &MPoly, g: &MPoly) -> MPoly {
        self.reduce_mpoly(&f.mul(g, &self.fq))
    }
    pub fn scale_mpoly(&self, f: &MPoly, a: &PolyA) -> MPoly {
        self.reduce_mpoly(&f.scale(a, &self.fq))
    }
}
