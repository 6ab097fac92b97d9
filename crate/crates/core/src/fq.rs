//! The finite field F_q, q = p^e, realised as F_p[x]/(f).
//!
//! Elements are stored as a single byte: the index `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`
//! of the coordinate vector w.r.t. the power basis `1, x, ..., x^{e-1}`. For `e = 1` the
//! index is the residue itself. All arithmetic goes through precomputed tables, so the
//! field order is capped at 256.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An element of F_q. Only meaningful together with the [`Fq`] it came from.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FqElem(pub u8);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus coefficients, constant first, length e + 1.
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// Shared handle to the tables of one finite field. Cloning is cheap.
#[derive(Clone)]
pub struct Fq(Arc<Tables>);

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.modulus == other.0.modulus
    }
}
impl Eq for Fq {}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fq(p={}, e={}, f={:?})", self.0.p, self.0.e, self.0.modulus)
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Multiply two coordinate vectors modulo the monic `modulus` over F_p.
fn coord_mul(a: &[u32], b: &[u32], modulus: &[u8], p: u32) -> Vec<u32> {
    let e = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * e];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for k in (e..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for (i, &m) in modulus[..e].iter().enumerate() {
            let t = k - e + i;
            prod[t] = (prod[t] + (p - c) * m as u32 % p) % p;
        }
    }
    prod.truncate(e);
    prod
}

/// Whether the monic polynomial `f` (constant first) over F_p has no factor of degree
/// between 1 and deg(f)/2. Brute force; intended for the small moduli used here.
fn is_irreducible_over_prime(f: &[u8], p: u32) -> bool {
    let e = f.len() - 1;
    if e <= 1 {
        return true;
    }
    for deg in 1..=e / 2 {
        let count = (p as u64).pow(deg as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(deg + 1);
            let mut r = idx;
            for _ in 0..deg {
                g.push((r % p as u64) as u32);
                r /= p as u64;
            }
            g.push(1);
            // remainder of f by g
            let mut rem: Vec<u32> = f.iter().map(|&c| c as u32).collect();
            for k in (deg..=e).rev() {
                let c = rem[k];
                if c == 0 {
                    continue;
                }
                for (i, &gi) in g.iter().enumerate() {
                    let t = k - deg + i;
                    rem[t] = (rem[t] + (p - c) * gi % p) % p;
                }
            }
            if rem[..deg].iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Fq {
    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Fq> {
        Fq::new(p, &[0, 1])
    }

    /// F_p[x]/(f) for a monic irreducible `f` given constant-first.
    pub fn new(p: u32, modulus: &[u8]) -> Result<Fq> {
        if !is_prime(p) {
            return Err(Error::Config(format!("characteristic {p} is not prime")));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::Config("field modulus must be monic of degree >= 1".into()));
        }
        if modulus.iter().any(|&c| c as u32 >= p) {
            return Err(Error::Config("field modulus coefficient out of range".into()));
        }
        let e = (modulus.len() - 1) as u32;
        let q = p.checked_pow(e).filter(|&q| q <= 256).ok_or_else(|| {
            Error::Config(format!("field order {p}^{e} exceeds the supported bound 256"))
        })?;
        if e == 1 && modulus[0] != 0 {
            return Err(Error::Config("degree-one modulus must be x".into()));
        }
        if !is_irreducible_over_prime(modulus, p) {
            return Err(Error::Config("field modulus is reducible".into()));
        }
        let qs = q as usize;
        let coords = |mut idx: u32| -> Vec<u32> {
            (0..e)
                .map(|_| {
                    let c = idx % p;
                    idx /= p;
                    c
                })
                .collect()
        };
        let index = |c: &[u32]| -> u8 { c.iter().rev().fold(0u32, |acc, &x| acc * p + x) as u8 };
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..q {
            let ca = coords(a);
            for b in 0..q {
                let cb = coords(b);
                let s: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = index(&s);
                mul[(a * q + b) as usize] = index(&coord_mul(&ca, &cb, modulus, p));
            }
        }
        let mut neg = vec![0u8; qs];
        let mut inv = vec![0u8; qs];
        for a in 0..qs {
            for b in 0..qs {
                if add[a * qs + b] == 0 {
                    neg[a] = b as u8;
                }
                if mul[a * qs + b] == 1 {
                    inv[a] = b as u8;
                }
            }
        }
        Ok(Fq(Arc::new(Tables { p, e, q, modulus: modulus.to_vec(), add, mul, neg, inv })))
    }

    /// Prime field for prime `q`, or the default extension for q = 4 (f = x^2 + x + 1).
    pub fn with_order(q: u32) -> Result<Fq> {
        match q {
            4 => Fq::new(2, &[1, 1, 1]),
            8 => Fq::new(2, &[1, 1, 0, 1]),
            9 => Fq::new(3, &[1, 0, 1]),
            _ => Fq::prime(q),
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }
    #[inline]
    pub fn e(&self) -> u32 {
        self.0.e
    }
    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u8] {
        &self.0.modulus
    }

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(self.0.add[a.0 as usize * self.0.q as usize + b.0 as usize])
    }
    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(self.0.mul[a.0 as usize * self.0.q as usize + b.0 as usize])
    }
    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        FqElem(self.0.neg[a.0 as usize])
    }
    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: FqElem) -> Option<FqElem> {
        (!a.is_zero()).then(|| FqElem(self.0.inv[a.0 as usize]))
    }

    pub fn pow(&self, a: FqElem, mut n: u64) -> FqElem {
        let mut base = a;
        let mut acc = FqElem::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Image of an integer under Z -> F_p -> F_q.
    pub fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.0.p as i64) as u8)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.0.q).map(|i| FqElem(i as u8))
    }

    /// Coordinates w.r.t. the power basis, each in [0, p).
    pub fn coords(&self, a: FqElem) -> Vec<u32> {
        let mut idx = a.0 as u32;
        (0..self.0.e)
            .map(|_| {
                let c = idx % self.0.p;
                idx /= self.0.p;
                c
            })
            .collect()
    }

    pub fn from_coords(&self, c: &[u32]) -> Result<FqElem> {
        if c.len() != self.0.e as usize || c.iter().any(|&x| x >= self.0.p) {
            return Err(Error::Parse(format!("bad F_q coordinates {c:?}")));
        }
        Ok(FqElem(c.iter().rev().fold(0u32, |acc, &x| acc * self.0.p + x) as u8))
    }

    /// Base-p digit string, most significant coordinate first. Digits are
    /// dot-separated when p > 10.
    pub fn emit(&self, a: FqElem) -> String {
        let c = self.coords(a);
        if self.0.p <= 10 {
            c.iter().rev().map(|d| char::from(b'0' + *d as u8)).collect()
        } else {
            c.iter().rev().map(|d| d.to_string()).collect::<Vec<_>>().join(".")
        }
    }

    pub fn parse(&self, s: &str) -> Result<FqElem> {
        let s = s.trim();
        let digits: Vec<u32> = if self.0.p <= 10 {
            s.chars()
                .map(|ch| ch.to_digit(10).ok_or_else(|| Error::Parse(format!("bad digit in {s:?}"))))
                .collect::<Result<_>>()?
        } else {
            s.split('.')
                .map(|d| d.parse::<u32>().map_err(|_| Error::Parse(format!("bad digit in {s:?}"))))
                .collect::<Result<_>>()?
        };
        if digits.len() != self.0.e as usize {
            return Err(Error::Parse(format!("expected {} digits in {s:?}", self.0.e)));
        }
        let rev: Vec<u32> = digits.into_iter().rev().collect();
        self.from_coords(&rev)
    }

    /// Short label such as `q=4 f=x^2+x+1`-style; used in headers.
    pub fn modulus_string(&self) -> String {
        self.0.modulus.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }
}
