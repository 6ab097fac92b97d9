//! Dense univariate polynomials over F_q, i.e. elements of A = F_q[θ].

use crate::error::{Error, Result};
use crate::fq::{Fq, FqElem};
use crate::ntt;

/// Below this many coefficients in the shorter operand, multiply by schoolbook.
const MUL_CUTOFF: usize = 48;
/// Divisor and quotient both at least this long switch to Newton division.
const DIV_CUTOFF: usize = 96;

/// A polynomial in θ, constant coefficient first, never with a trailing zero.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct PolyA {
    c: Vec<FqElem>,
}

impl std::fmt::Debug for PolyA {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let v: Vec<u8> = self.c.iter().map(|x| x.0).collect();
        write!(f, "PolyA{v:?}")
    }
}

/// Reduce a vector of integer coordinate sums (length up to 2e-1) to a field element.
fn reduce_coords(fq: &Fq, acc: &mut [u64]) -> FqElem {
    let p = fq.p() as u64;
    let e = fq.e() as usize;
    if e == 1 {
        return FqElem((acc[0] % p) as u8);
    }
    for x in acc.iter_mut() {
        *x %= p;
    }
    let m = fq.modulus();
    for k in (e..acc.len()).rev() {
        let c = acc[k];
        if c == 0 {
            continue;
        }
        acc[k] = 0;
        for i in 0..e {
            let t = k - e + i;
            acc[t] = (acc[t] + (p - c) * m[i] as u64) % p;
        }
    }
    let idx = acc[..e].iter().rev().fold(0u64, |s, &x| s * p + x);
    FqElem(idx as u8)
}

fn coord_table(fq: &Fq) -> Vec<Vec<u64>> {
    fq.elements().map(|x| fq.coords(x).into_iter().map(u64::from).collect()).collect()
}

impl PolyA {
    pub fn zero() -> PolyA {
        PolyA { c: Vec::new() }
    }
    pub fn one() -> PolyA {
        PolyA { c: vec![FqElem::ONE] }
    }
    pub fn constant(a: FqElem) -> PolyA {
        PolyA::from_coeffs(vec![a])
    }
    /// a·θ^k.
    pub fn monomial(a: FqElem, k: usize) -> PolyA {
        if a.is_zero() {
            return PolyA::zero();
        }
        let mut c = vec![FqElem::ZERO; k + 1];
        c[k] = a;
        PolyA { c }
    }
    pub fn theta() -> PolyA {
        PolyA::monomial(FqElem::ONE, 1)
    }
    pub fn from_coeffs(mut c: Vec<FqElem>) -> PolyA {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        PolyA { c }
    }
    /// Polynomial whose coefficients are the base-q digits of `n` (constant first).
    pub fn from_index(n: u64, q: u32) -> PolyA {
        let mut c = Vec::new();
        let mut r = n;
        while r > 0 {
            c.push(FqElem((r % q as u64) as u8));
            r /= q as u64;
        }
        PolyA::from_coeffs(c)
    }
    pub fn coeffs(&self) -> &[FqElem] {
        &self.c
    }
    pub fn into_coeffs(self) -> Vec<FqElem> {
        self.c
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0] == FqElem::ONE
    }
    pub fn is_monic(&self) -> bool {
        self.c.last() == Some(&FqElem::ONE)
    }
    /// Degree, `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    /// Degree with the zero polynomial mapped to -1.
    pub fn deg_i(&self) -> i64 {
        self.c.len() as i64 - 1
    }
    pub fn len(&self) -> usize {
        self.c.len()
    }
    pub fn lead(&self) -> FqElem {
        self.c.last().copied().unwrap_or(FqElem::ZERO)
    }
    pub fn coeff(&self, k: usize) -> FqElem {
        self.c.get(k).copied().unwrap_or(FqElem::ZERO)
    }
    /// Lowest index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
    }

    pub fn add(&self, o: &PolyA, fq: &Fq) -> PolyA {
        let mut r = self.clone();
        r.add_assign(o, fq);
        r
    }
    pub fn sub(&self, o: &PolyA, fq: &Fq) -> PolyA {
        let mut r = self.clone();
        r.sub_assign(o, fq);
        r
    }
    pub fn add_assign(&mut self, o: &PolyA, fq: &Fq) {
        if self.c.len() < o.c.len() {
            self.c.resize(o.c.len(), FqElem::ZERO);
        }
        for (x, &y) in self.c.iter_mut().zip(&o.c) {
            *x = fq.add(*x, y);
        }
        self.trim();
    }
    pub fn sub_assign(&mut self, o: &PolyA, fq: &Fq) {
        if self.c.len() < o.c.len() {
            self.c.resize(o.c.len(), FqElem::ZERO);
        }
        for (x, &y) in self.c.iter_mut().zip(&o.c) {
            *x = fq.sub(*x, y);
        }
        self.trim();
    }
    /// self += a·θ^k·o.
    pub fn add_scaled_shifted(&mut self, o: &PolyA, a: FqElem, k: usize, fq: &Fq) {
        if a.is_zero() || o.is_zero() {
            return;
        }
        if self.c.len() < o.c.len() + k {
            self.c.resize(o.c.len() + k, FqElem::ZERO);
        }
        for (i, &y) in o.c.iter().enumerate() {
            let x = &mut self.c[i + k];
            *x = fq.add(*x, fq.mul(a, y));
        }
        self.trim();
    }
    pub fn neg(&self, fq: &Fq) -> PolyA {
        PolyA { c: self.c.iter().map(|&x| fq.neg(x)).collect() }
    }
    pub fn scale(&self, a: FqElem, fq: &Fq) -> PolyA {
        if a.is_zero() {
            return PolyA::zero();
        }
        PolyA { c: self.c.iter().map(|&x| fq.mul(a, x)).collect() }
    }
    /// Multiply by θ^k.
    pub fn shift(&self, k: usize) -> PolyA {
        if self.is_zero() {
            return PolyA::zero();
        }
        let mut c = vec![FqElem::ZERO; k];
        c.extend_from_slice(&self.c);
        PolyA { c }
    }
    /// Remainder modulo θ^n.
    pub fn truncate(&self, n: usize) -> PolyA {
        PolyA::from_coeffs(self.c[..n.min(self.c.len())].to_vec())
    }
    /// Coefficients reversed within a window of length n (n ≥ len).
    fn reversed(&self, n: usize) -> PolyA {
        let mut c = self.c.clone();
        c.resize(n, FqElem::ZERO);
        c.reverse();
        PolyA::from_coeffs(c)
    }

    pub fn mul(&self, o: &PolyA, fq: &Fq) -> PolyA {
        if self.is_zero() || o.is_zero() {
            return PolyA::zero();
        }
        let (la, lb) = (self.c.len(), o.c.len());
        let short = la.min(lb);
        let p = fq.p() as u64;
        let e = fq.e() as usize;
        let bound = short as u64 * e as u64 * (p - 1) * (p - 1);
        if short < MUL_CUTOFF || bound >= ntt::MOD {
            self.mul_schoolbook(o, fq)
        } else {
            self.mul_ntt(o, fq)
        }
    }

    fn mul_schoolbook(&self, o: &PolyA, fq: &Fq) -> PolyA {
        let (la, lb) = (self.c.len(), o.c.len());
        if fq.e() == 1 {
            let p = fq.p() as u64;
            let mut acc = vec![0u64; la + lb - 1];
            for (i, &x) in self.c.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let xv = x.0 as u64;
                for (j, &y) in o.c.iter().enumerate() {
                    acc[i + j] += xv * y.0 as u64;
                }
                if i % 1024 == 1023 {
                    for v in acc.iter_mut() {
                        *v %= p;
                    }
                }
            }
            return PolyA::from_coeffs(acc.into_iter().map(|v| FqElem((v % p) as u8)).collect());
        }
        let mut out = vec![FqElem::ZERO; la + lb - 1];
        for (i, &x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in o.c.iter().enumerate() {
                out[i + j] = fq.add(out[i + j], fq.mul(x, y));
            }
        }
        PolyA::from_coeffs(out)
    }

    fn mul_ntt(&self, o: &PolyA, fq: &Fq) -> PolyA {
        let e = fq.e() as usize;
        let (la, lb) = (self.c.len(), o.c.len());
        let n = ntt::size_for(la, lb);
        let table = coord_table(fq);
        let split = |poly: &PolyA| -> Vec<Vec<u64>> {
            (0..e)
                .map(|k| {
                    let v: Vec<u64> = poly.c.iter().map(|x| table[x.0 as usize][k]).collect();
                    ntt::forward(&v, n)
                })
                .collect()
        };
        let fa = split(self);
        let fb = split(o);
        let mut parts = Vec::with_capacity(2 * e - 1);
        for k in 0..2 * e - 1 {
            let mut acc = vec![0u64; n];
            for i in 0..e {
                if k < i || k - i >= e {
                    continue;
                }
                let j = k - i;
                for t in 0..n {
                    acc[t] = (acc[t] + fa[i][t] * fb[j][t]) % ntt::MOD;
                }
            }
            ntt::transform(&mut acc, true);
            parts.push(acc);
        }
        let mut buf = vec![0u64; 2 * e - 1];
        let out = (0..la + lb - 1)
            .map(|t| {
                for (k, part) in parts.iter().enumerate() {
                    buf[k] = part[t];
                }
                reduce_coords(fq, &mut buf)
            })
            .collect();
        PolyA::from_coeffs(out)
    }

    pub fn sqr(&self, fq: &Fq) -> PolyA {
        self.mul(self, fq)
    }

    pub fn pow(&self, mut n: u64, fq: &Fq) -> PolyA {
        let mut base = self.clone();
        let mut acc = PolyA::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base, fq);
            }
            n >>= 1;
            if n > 0 {
                base = base.sqr(fq);
            }
        }
        acc
    }

    /// self^(q^k), computed by spreading coefficients since F_q is fixed by Frobenius.
    pub fn frobenius(&self, k: u32, fq: &Fq) -> PolyA {
        if self.is_zero() {
            return PolyA::zero();
        }
        let step = (fq.q() as usize).pow(k);
        let mut c = vec![FqElem::ZERO; (self.c.len() - 1) * step + 1];
        for (i, &x) in self.c.iter().enumerate() {
            c[i * step] = x;
        }
        PolyA { c }
    }

    /// Inverse of a power series with nonzero constant term, modulo θ^n.
    pub fn inv_series(&self, n: usize, fq: &Fq) -> Result<PolyA> {
        let c0 = fq
            .inv(self.coeff(0))
            .ok_or_else(|| Error::NotAUnit("series with zero constant term".into()))?;
        let mut g = PolyA::constant(c0);
        let mut m = 1;
        let two = PolyA::constant(fq.from_int(2));
        while m < n {
            m = (2 * m).min(n);
            let h = self.truncate(m).mul(&g, fq).truncate(m);
            g = g.mul(&two.sub(&h, fq), fq).truncate(m);
        }
        Ok(g)
    }

    /// Quotient and remainder. Errors on division by zero.
    pub fn divrem(&self, d: &PolyA, fq: &Fq) -> Result<(PolyA, PolyA)> {
        let db = d.deg().ok_or_else(|| Error::Domain("division by zero polynomial".into()))?;
        let da = match self.deg() {
            Some(x) if x >= db => x,
            _ => return Ok((PolyA::zero(), self.clone())),
        };
        let qlen = da - db + 1;
        if qlen >= DIV_CUTOFF && db >= DIV_CUTOFF {
            return self.divrem_newton(d, fq);
        }
        let inv_lead = fq.inv(d.lead()).expect("nonzero lead");
        let mut r = self.c.clone();
        let mut quo = vec![FqElem::ZERO; qlen];
        for k in (0..qlen).rev() {
            let c = fq.mul(r[k + db], inv_lead);
            if c.is_zero() {
                continue;
            }
            quo[k] = c;
            let nc = fq.neg(c);
            for (i, &y) in d.c.iter().enumerate() {
                r[k + i] = fq.add(r[k + i], fq.mul(nc, y));
            }
        }
        r.truncate(db);
        Ok((PolyA::from_coeffs(quo), PolyA::from_coeffs(r)))
    }

    fn divrem_newton(&self, d: &PolyA, fq: &Fq) -> Result<(PolyA, PolyA)> {
        let da = self.c.len() - 1;
        let db = d.c.len() - 1;
        let k = da - db + 1;
        let rd = d.reversed(db + 1);
        let inv = rd.inv_series(k, fq)?;
        let ra = self.reversed(da + 1).truncate(k);
        let rq = ra.mul(&inv, fq).truncate(k);
        let quo = rq.reversed(k);
        let rem = self.sub(&quo.mul(d, fq), fq);
        Ok((quo, rem))
    }

    pub fn rem(&self, d: &PolyA, fq: &Fq) -> Result<PolyA> {
        Ok(self.divrem(d, fq)?.1)
    }

    /// Quotient, failing with `NonExactDivision` when the remainder is nonzero.
    pub fn div_exact(&self, d: &PolyA, fq: &Fq) -> Result<PolyA> {
        let (q, r) = self.divrem(d, fq)?;
        if !r.is_zero() {
            return Err(Error::NonExactDivision(format!(
                "remainder of degree {} dividing degree {} by degree {}",
                r.deg_i(),
                self.deg_i(),
                d.deg_i()
            )));
        }
        Ok(q)
    }

    pub fn monic(&self, fq: &Fq) -> PolyA {
        match fq.inv(self.lead()) {
            Some(i) => self.scale(i, fq),
            None => PolyA::zero(),
        }
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, o: &PolyA, fq: &Fq) -> PolyA {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b, fq).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(fq)
    }

    /// (g, u, v) with u·self + v·o = g and g the monic gcd.
    pub fn ext_gcd(&self, o: &PolyA, fq: &Fq) -> (PolyA, PolyA, PolyA) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (PolyA::one(), PolyA::zero());
        let (mut t0, mut t1) = (PolyA::zero(), PolyA::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, fq).expect("nonzero divisor");
            let s = s0.sub(&q.mul(&s1, fq), fq);
            let t = t0.sub(&q.mul(&t1, fq), fq);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match fq.inv(r0.lead()) {
            Some(i) => (r0.scale(i, fq), s0.scale(i, fq), t0.scale(i, fq)),
            None => (PolyA::zero(), PolyA::zero(), PolyA::zero()),
        }
    }

    pub fn derivative(&self, fq: &Fq) -> PolyA {
        if self.c.len() <= 1 {
            return PolyA::zero();
        }
        PolyA::from_coeffs(
            self.c[1..]
                .iter()
                .enumerate()
                .map(|(i, &x)| fq.mul(fq.from_int(i as i64 + 1), x))
                .collect(),
        )
    }

    pub fn eval(&self, x: FqElem, fq: &Fq) -> FqElem {
        self.c.iter().rev().fold(FqElem::ZERO, |acc, &c| fq.add(fq.mul(acc, x), c))
    }

    /// Substitute θ ↦ x.
    pub fn compose(&self, x: &PolyA, fq: &Fq) -> PolyA {
        self.c.iter().rev().fold(PolyA::zero(), |acc, &c| acc.mul(x, fq).add(&PolyA::constant(c), fq))
    }

    /// Comma-separated coefficients, constant first; `0` for the zero polynomial.
    pub fn emit(&self, fq: &Fq) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.c.iter().map(|&x| fq.emit(x)).collect::<Vec<_>>().join(",")
    }

    pub fn parse(s: &str, fq: &Fq) -> Result<PolyA> {
        let s = s.trim();
        if s == "0" {
            return Ok(PolyA::zero());
        }
        let c = s.split(',').map(|t| fq.parse(t)).collect::<Result<Vec<_>>>()?;
        Ok(PolyA::from_coeffs(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rand_poly(seed: &mut u64, len: usize, q: u32) -> PolyA {
        PolyA::from_coeffs(
            (0..len)
                .map(|_| {
                    *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    FqElem(((*seed >> 33) % q as u64) as u8)
                })
                .collect(),
        )
    }

    #[test]
    fn ntt_and_schoolbook_agree() {
        for q in [2, 3, 4, 5, 8, 9] {
            let fq = Fq::with_order(q).unwrap();
            let mut seed = q as u64;
            let a = rand_poly(&mut seed, 500, q);
            let b = rand_poly(&mut seed, 333, q);
            assert_eq!(a.mul_ntt(&b, &fq), a.mul_schoolbook(&b, &fq), "q={q}");
        }
    }

    #[test]
    fn newton_and_schoolbook_division_agree() {
        for q in [2, 3, 4, 5] {
            let fq = Fq::with_order(q).unwrap();
            let mut seed = 7 + q as u64;
            let a = rand_poly(&mut seed, 900, q);
            let mut b = rand_poly(&mut seed, 300, q);
            b.add_assign(&PolyA::monomial(FqElem::ONE, 300), &fq);
            let (qn, rn) = a.divrem_newton(&b, &fq).unwrap();
            assert!(rn.deg_i() < b.deg_i());
            assert_eq!(qn.mul(&b, &fq).add(&rn, &fq), a);
        }
    }

    #[test]
    fn frobenius_is_power() {
        let fq = Fq::with_order(3).unwrap();
        let a = PolyA::parse("1,2,0,1", &fq).unwrap();
        assert_eq!(a.frobenius(2, &fq), a.pow(9, &fq));
    }

    #[test]
    fn ext_gcd_bezout() {
        let fq = Fq::with_order(5).unwrap();
        let a = PolyA::parse("1,0,1", &fq).unwrap().mul(&PolyA::parse("2,1", &fq).unwrap(), &fq);
        let b = PolyA::parse("2,1", &fq).unwrap().mul(&PolyA::parse("1,0,0,1", &fq).unwrap(), &fq);
        let (g, u, v) = a.ext_gcd(&b, &fq);
        assert_eq!(g, PolyA::parse("2,1", &fq).unwrap());
        assert_eq!(u.mul(&a, &fq).add(&v.mul(&b, &fq), &fq), g);
    }

    #[test]
    fn emit_parse_roundtrip() {
        let fq = Fq::with_order(4).unwrap();
        let a = PolyA::from_coeffs(vec![FqElem(3), FqElem(0), FqElem(2)]);
        assert_eq!(a.emit(&fq), "11,00,10");
        assert_eq!(PolyA::parse(&a.emit(&fq), &fq).unwrap(), a);
        assert_eq!(PolyA::zero().emit(&fq), "0");
    }

    fn arb_poly(q: u32) -> impl Strategy<Value = Vec<u8>> {
        prop::collection::vec(0..q as u8, 0..40)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn ring_laws(a in arb_poly(4), b in arb_poly(4), c in arb_poly(4)) {
            let fq = Fq::with_order(4).unwrap();
            let to = |v: Vec<u8>| PolyA::from_coeffs(v.into_iter().map(FqElem).collect());
            let (a, b, c) = (to(a), to(b), to(c));
            prop_assert_eq!(a.mul(&b.add(&c, &fq), &fq), a.mul(&b, &fq).add(&a.mul(&c, &fq), &fq));
            prop_assert_eq!(a.mul(&b, &fq), b.mul(&a, &fq));
            if !b.is_zero() {
                let (qq, r) = a.divrem(&b, &fq).unwrap();
                prop_assert!(r.deg_i() < b.deg_i());
                prop_assert_eq!(qq.mul(&b, &fq).add(&r, &fq), a);
            }
        }
    }
}
