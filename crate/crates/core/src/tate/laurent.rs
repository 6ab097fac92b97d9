//! Truncated Laurent series in 1/θ with coefficients in F_q[t_1..t_s].

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fq::{Fq, FqElem};
use crate::mpoly::MPoly;
use crate::poly::PolyA;

/// Σ_{t-monomial} t^e·Σ_k c_k θ^{low+k}. Every θ-exponent below `floor` is unknown;
/// `floor = None` marks an exact element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncLaurent {
    nt: usize,
    floor: Option<i64>,
    terms: BTreeMap<Vec<u32>, (i64, PolyA)>,
}

/// Drop coefficients below exponent `f` from a window starting at `low`.
fn cut(low: i64, p: &PolyA, f: Option<i64>) -> Option<(i64, PolyA)> {
    let (low, p) = match f {
        Some(f) if low < f => {
            let skip = (f - low) as usize;
            if skip >= p.len() {
                return None;
            }
            (f, PolyA::from_coeffs(p.coeffs()[skip..].to_vec()))
        }
        _ => (low, p.clone()),
    };
    let v = p.valuation()?;
    Some((low + v as i64, PolyA::from_coeffs(p.coeffs()[v..].to_vec())))
}

fn max_floor(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl TruncLaurent {
    pub fn zero(nt: usize) -> TruncLaurent {
        TruncLaurent { nt, floor: None, terms: BTreeMap::new() }
    }
    pub fn one(nt: usize) -> TruncLaurent {
        TruncLaurent::theta_power(nt, 0)
    }
    /// θ^e, exact.
    pub fn theta_power(nt: usize, e: i64) -> TruncLaurent {
        let mut out = TruncLaurent::zero(nt);
        out.terms.insert(vec![0; nt], (e, PolyA::one()));
        out
    }
    /// c·t^mono·θ^e, exact.
    pub fn monomial(mono: Vec<u32>, e: i64, c: FqElem) -> TruncLaurent {
        let nt = mono.len();
        let mut out = TruncLaurent::zero(nt);
        if !c.is_zero() {
            out.terms.insert(mono, (e, PolyA::constant(c)));
        }
        out
    }
    /// θ^shift·f for f ∈ A[t] without Y or z.
    pub fn from_mpoly(f: &MPoly, shift: i64) -> Result<TruncLaurent> {
        let nt = f.nt();
        let mut out = TruncLaurent::zero(nt);
        for (m, c) in f.terms() {
            if m[nt] != 0 || m[nt + 1] != 0 {
                return Err(Error::ArityMismatch("series coefficients take t-variables only".into()));
            }
            if let Some(w) = cut(shift, c, None) {
                out.terms.insert(m[..nt].to_vec(), w);
            }
        }
        Ok(out)
    }
    pub fn nt(&self) -> usize {
        self.nt
    }
    pub fn floor(&self) -> Option<i64> {
        self.floor
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    /// Largest θ-exponent carrying a nonzero coefficient.
    pub fn top(&self) -> Option<i64> {
        self.terms.values().map(|(low, p)| low + p.len() as i64 - 1).max()
    }
    /// Raise the floor to `f`, discarding what lies below.
    pub fn truncate(&self, f: i64) -> TruncLaurent {
        let floor = max_floor(self.floor, Some(f));
        let terms = self.terms.iter().filter_map(|(m, (low, p))| Some((m.clone(), cut(*low, p, floor)?))).collect();
        TruncLaurent { nt: self.nt, floor, terms }
    }
    /// Multiply by θ^k.
    pub fn shift(&self, k: i64) -> TruncLaurent {
        let terms = self.terms.iter().map(|(m, (low, p))| (m.clone(), (low + k, p.clone()))).collect();
        TruncLaurent { nt: self.nt, floor: self.floor.map(|f| f + k), terms }
    }
    pub fn neg(&self, fq: &Fq) -> TruncLaurent {
        let terms = self.terms.iter().map(|(m, (low, p))| (m.clone(), (*low, p.neg(fq)))).collect();
        TruncLaurent { nt: self.nt, floor: self.floor, terms }
    }
    pub fn add(&self, o: &TruncLaurent, fq: &Fq) -> TruncLaurent {
        assert_eq!(self.nt, o.nt, "series over different variable sets");
        let floor = max_floor(self.floor, o.floor);
        let mut terms = BTreeMap::new();
        let keys: std::collections::BTreeSet<&Vec<u32>> = self.terms.keys().chain(o.terms.keys()).collect();
        for m in keys {
            let w = match (self.terms.get(m), o.terms.get(m)) {
                (Some(a), None) | (None, Some(a)) => cut(a.0, &a.1, floor),
                (Some((la, pa)), Some((lb, pb))) => {
                    let low = (*la).min(*lb);
                    let s = pa.shift((la - low) as usize).add(&pb.shift((lb - low) as usize), fq);
                    cut(low, &s, floor)
                }
                (None, None) => None,
            };
            if let Some(w) = w {
                terms.insert(m.clone(), w);
            }
        }
        TruncLaurent { nt: self.nt, floor, terms }
    }
    pub fn sub(&self, o: &TruncLaurent, fq: &Fq) -> TruncLaurent {
        self.add(&o.neg(fq), fq)
    }
    /// Product; unknown tails propagate as floor_a + top_b and floor_b + top_a.
    pub fn mul(&self, o: &TruncLaurent, fq: &Fq) -> TruncLaurent {
        assert_eq!(self.nt, o.nt, "series over different variable sets");
        let (ta, tb) = (self.top(), o.top());
        let floor = match (self.floor, o.floor, ta, tb) {
            (Some(fa), Some(fb), None, None) => Some(fa + fb),
            _ => max_floor(self.floor.zip(tb).map(|(f, t)| f + t), o.floor.zip(ta).map(|(f, t)| f + t)),
        };
        let (Some(ta), Some(tb)) = (ta, tb) else {
            return TruncLaurent { nt: self.nt, floor, terms: BTreeMap::new() };
        };
        let a = match floor {
            Some(f) => self.truncate(f - tb),
            None => self.clone(),
        };
        let b = match floor {
            Some(f) => o.truncate(f - ta),
            None => o.clone(),
        };
        let mut acc: BTreeMap<Vec<u32>, (i64, PolyA)> = BTreeMap::new();
        for (ma, (la, pa)) in &a.terms {
            for (mb, (lb, pb)) in &b.terms {
                let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                let low = la + lb;
                let p = pa.mul(pb, fq);
                let e = acc.entry(m).or_insert((low, PolyA::zero()));
                if low < e.0 {
                    e.1 = e.1.shift((e.0 - low) as usize);
                    e.0 = low;
                }
                e.1.add_assign(&p.shift((low - e.0) as usize), fq);
            }
        }
        let terms = acc.into_iter().filter_map(|(m, (low, p))| Some((m, cut(low, &p, floor)?))).collect();
        TruncLaurent { nt: self.nt, floor, terms }
    }
    /// Coefficient of θ^e as a polynomial in t (known exponents only).
    pub fn theta_coeff(&self, e: i64, fq: &Fq) -> Result<MPoly> {
        if self.floor.is_some_and(|f| e < f) {
            return Err(Error::PrecisionExceeded(format!("θ^{e} lies below the floor {:?}", self.floor)));
        }
        let nt = self.nt;
        let mut terms = Vec::new();
        for (m, (low, p)) in &self.terms {
            if e >= *low {
                let c = p.coeff((e - low) as usize);
                if !c.is_zero() {
                    let mut mono = m.clone();
                    mono.extend([0, 0]);
                    terms.push((mono, PolyA::constant(c)));
                }
            }
        }
        Ok(MPoly::from_terms(nt, terms, fq))
    }
    /// Part with θ-exponent ≥ 0 as an element of A[t]; needs floor ≤ 0.
    pub fn polynomial_part(&self, fq: &Fq) -> Result<MPoly> {
        if self.floor.is_some_and(|f| f > 0) {
            return Err(Error::PrecisionExceeded("floor above θ^0".into()));
        }
        let nt = self.nt;
        let mut out = Vec::new();
        for (m, (low, p)) in &self.terms {
            let top = low + p.len() as i64 - 1;
            if top < 0 {
                continue;
            }
            let c = if *low >= 0 {
                p.shift(*low as usize)
            } else {
                PolyA::from_coeffs(p.coeffs()[(-low) as usize..].to_vec())
            };
            if !c.is_zero() {
                let mut mono = m.clone();
                mono.extend([0, 0]);
                out.push((mono, c));
            }
        }
        Ok(MPoly::from_terms(nt, out, fq))
    }
}

/// Σ_{n ≥ 0} x^n for a series x of negative top exponent, truncated at `floor`.
pub fn geometric(x: &TruncLaurent, floor: i64, fq: &Fq) -> Result<TruncLaurent> {
    let nt = x.nt();
    let top = match x.top() {
        None => return Ok(TruncLaurent::one(nt).truncate(floor)),
        Some(t) if t < 0 => t,
        Some(t) => return Err(Error::Domain(format!("geometric series needs negative top exponent, got {t}"))),
    };
    let x = x.truncate(floor);
    let mut acc = TruncLaurent::one(nt).truncate(floor);
    let mut pw = TruncLaurent::one(nt);
    let mut k = 0i64;
    while top * (k + 1) >= floor {
        pw = pw.mul(&x, fq).truncate(floor);
        acc = acc.add(&pw, fq);
        k += 1;
    }
    Ok(acc)
}
