//! Twisted power sums, harmonic sums, monic product sums and Bernoulli–Goss polynomials
//! by direct enumeration over monic polynomials.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::carlitz::{digit_sum, Carlitz};
use crate::error::{Error, Result};
use crate::fq::{Fq, FqElem};
use crate::mpoly::{MPoly, MPolyK};
use crate::poly::PolyA;
use crate::quot::{monic_of_degree, QuotCtx};

/// A symmetric polynomial in t_1..t_s stored by orbit: each key is a non-decreasing
/// exponent vector λ and stands for the sum of the distinct permutations of t^λ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymTPoly {
    s: usize,
    classes: BTreeMap<Vec<u32>, PolyA>,
}

impl SymTPoly {
    pub fn zero(s: usize) -> SymTPoly {
        SymTPoly { s, classes: BTreeMap::new() }
    }
    pub fn s(&self) -> usize {
        self.s
    }
    pub fn classes(&self) -> &BTreeMap<Vec<u32>, PolyA> {
        &self.classes
    }
    pub fn get(&self, lambda: &[u32]) -> PolyA {
        self.classes.get(lambda).cloned().unwrap_or_default()
    }
    pub fn is_zero(&self) -> bool {
        self.classes.is_empty()
    }
    /// Adds c to the coefficient of the orbit of `lambda` (sorted internally).
    pub fn add_class(&mut self, lambda: &[u32], c: &PolyA, fq: &Fq) {
        if c.is_zero() {
            return;
        }
        let mut key = lambda.to_vec();
        key.sort_unstable();
        let e = self.classes.entry(key.clone()).or_default();
        e.add_assign(c, fq);
        if e.is_zero() {
            self.classes.remove(&key);
        }
    }
    pub fn add(&self, o: &SymTPoly, fq: &Fq) -> SymTPoly {
        let mut r = self.clone();
        for (k, c) in &o.classes {
            r.add_class(k, c, fq);
        }
        r
    }
    pub fn sub(&self, o: &SymTPoly, fq: &Fq) -> SymTPoly {
        self.add(&o.map(|c| c.neg(fq)), fq)
    }
    /// Apply `f` to every coefficient, dropping zeros.
    pub fn map<F: Fn(&PolyA) -> PolyA>(&self, f: F) -> SymTPoly {
        let classes = self
            .classes
            .iter()
            .map(|(k, c)| (k.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        SymTPoly { s: self.s, classes }
    }
    pub fn try_map<F: Fn(&PolyA) -> Result<PolyA>>(&self, f: F) -> Result<SymTPoly> {
        let mut classes = BTreeMap::new();
        for (k, c) in &self.classes {
            let v = f(c)?;
            if !v.is_zero() {
                classes.insert(k.clone(), v);
            }
        }
        Ok(SymTPoly { s: self.s, classes })
    }
    /// Largest exponent of any single t_i.
    pub fn deg_t(&self) -> Option<u32> {
        self.classes.keys().filter_map(|k| k.last().copied()).max()
    }
    pub fn deg_theta(&self) -> Option<usize> {
        self.classes.values().filter_map(|c| c.deg()).max()
    }

    /// Expand into an ordinary polynomial in t_1..t_s.
    pub fn to_mpoly(&self, fq: &Fq) -> MPoly {
        let mut terms = Vec::new();
        for (k, c) in &self.classes {
            for perm in distinct_permutations(k) {
                let mut m = perm;
                m.extend([0, 0]);
                terms.push((m, c.clone()));
            }
        }
        MPoly::from_terms(self.s, terms, fq)
    }

    /// Collapse a polynomial in t_1..t_s (no Y, z) that is symmetric; errors otherwise.
    pub fn from_mpoly(f: &MPoly, fq: &Fq) -> Result<SymTPoly> {
        let s = f.nt();
        let mut out = SymTPoly::zero(s);
        for (m, c) in f.terms() {
            if m[s] != 0 || m[s + 1] != 0 {
                return Err(Error::ArityMismatch("symmetric form takes t-variables only".into()));
            }
            let t = &m[..s];
            if t.windows(2).all(|w| w[0] <= w[1]) {
                out.classes.insert(t.to_vec(), c.clone());
            }
        }
        if out.to_mpoly(fq) != *f {
            return Err(Error::Domain("polynomial is not symmetric in t".into()));
        }
        Ok(out)
    }

    pub fn emit(&self, fq: &Fq) -> String {
        let mut out = format!("s={}", self.s);
        for (k, c) in &self.classes {
            let ks: Vec<String> = k.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("\n{} : {}", ks.join(","), c.emit(fq)));
        }
        out
    }
}

/// All distinct rearrangements of a sorted vector, in lexicographic order.
pub fn distinct_permutations(sorted: &[u32]) -> Vec<Vec<u32>> {
    let mut cur = sorted.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        let n = cur.len();
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

/// Number of distinct rearrangements of a multiset given as a sorted vector.
pub fn orbit_size(sorted: &[u32]) -> u128 {
    let mut r: u128 = 1;
    let mut run = 0u128;
    let mut total = 0u128;
    for i in 0..sorted.len() {
        total += 1;
        run = if i > 0 && sorted[i] == sorted[i - 1] { run + 1 } else { 1 };
        r = r * total / run;
    }
    r
}

/// Non-decreasing vectors of length s with entries in [lo, hi].
pub fn sorted_classes(s: usize, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    fn rec(s: usize, lo: u32, hi: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for v in lo..=hi {
            cur.push(v);
            rec(s, v, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if lo <= hi || s == 0 {
        rec(s, lo, hi, &mut Vec::new(), &mut out);
    }
    out
}

/// Parameters of S_d(n;s) and F_d(n;s).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SumSpec {
    pub n: i64,
    pub s: usize,
    pub d: usize,
}

/// Parameters of Σ_{i=d}^{end} S_i(n;s).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TailSpec {
    pub n: i64,
    pub s: usize,
    pub d: usize,
    pub end: usize,
}

/// Monic polynomials of degree d, constant coefficient fastest.
pub fn monic_enum(d: usize, fq: &Fq) -> impl Iterator<Item = PolyA> + '_ {
    monic_of_degree(d, fq)
}

/// Monic polynomials with degree in [lo, hi], by increasing degree.
pub fn monic_range(lo: usize, hi: usize, fq: &Fq) -> Vec<PolyA> {
    (lo..=hi).flat_map(|d| monic_of_degree(d, fq).collect::<Vec<_>>()).collect()
}

const CHUNK: usize = 64;

/// Σ_a w(a)·∏_i a(t_i) over the given polynomials, in symmetric form. The weight
/// closure may return zero to skip a polynomial.
pub fn class_sum<W>(fq: &Fq, s: usize, polys: &[PolyA], weight: W) -> SymTPoly
where
    W: Fn(&PolyA) -> PolyA + Sync,
{
    let maxdeg = polys.iter().filter_map(|a| a.deg()).max().unwrap_or(0) as u32;
    let classes = sorted_classes(s, 0, maxdeg);
    let partial: Vec<Vec<PolyA>> = polys
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = vec![PolyA::zero(); classes.len()];
            for a in chunk {
                let w = weight(a);
                if w.is_zero() {
                    continue;
                }
                for (ci, lam) in classes.iter().enumerate() {
                    let mut c = FqElem::ONE;
                    for &k in lam {
                        c = fq.mul(c, a.coeff(k as usize));
                        if c.is_zero() {
                            break;
                        }
                    }
                    if !c.is_zero() {
                        acc[ci].add_scaled_shifted(&w, c, 0, fq);
                    }
                }
            }
            acc
        })
        .collect();
    let mut total = vec![PolyA::zero(); classes.len()];
    for part in partial {
        for (t, p) in total.iter_mut().zip(part) {
            t.add_assign(&p, fq);
        }
    }
    let mut out = SymTPoly::zero(s);
    for (lam, c) in classes.into_iter().zip(total) {
        if !c.is_zero() {
            out.classes.insert(lam, c);
        }
    }
    out
}

/// Σ over monic a with deg a ∈ [lo, hi] of a^{-n}·∏a(t_i), as (numerator, denominator)
/// with denominator l_hi^n for n > 0 and 1 otherwise. Not reduced.
pub fn range_sum_sym(c: &Carlitz, n: i64, s: usize, lo: usize, hi: usize) -> (SymTPoly, PolyA) {
    let fq = c.fq();
    let polys = monic_range(lo, hi, fq);
    if n <= 0 {
        let e = n.unsigned_abs();
        (class_sum(fq, s, &polys, |a| a.pow(e, fq)), PolyA::one())
    } else {
        let l = c.l(hi);
        let e = n as u64;
        let num = class_sum(fq, s, &polys, |a| l.div_exact(a, fq).expect("a divides l").pow(e, fq));
        (num, l.pow(e, fq))
    }
}

fn to_mpolyk(num: SymTPoly, den: PolyA, fq: &Fq) -> MPolyK {
    MPolyK::new(num.to_mpoly(fq), den, fq).expect("nonzero denominator")
}

/// S_d(n;s) = Σ_{a monic, deg a = d} a(t_1)…a(t_s)/a^n.
pub fn power_sum(c: &Carlitz, spec: &SumSpec) -> MPolyK {
    let (num, den) = range_sum_sym(c, spec.n, spec.s, spec.d, spec.d);
    to_mpolyk(num, den, c.fq())
}

/// F_d(n;s) = Σ_{i<d} S_i(n;s).
pub fn harmonic_sum(c: &Carlitz, spec: &SumSpec) -> Result<MPolyK> {
    if spec.d == 0 {
        return Err(Error::Domain("F_d needs d ≥ 1".into()));
    }
    let (num, den) = range_sum_sym(c, spec.n, spec.s, 0, spec.d - 1);
    Ok(to_mpolyk(num, den, c.fq()))
}

/// Σ_{i=d}^{end} S_i(n;s).
pub fn tail_sum(c: &Carlitz, spec: &TailSpec) -> Result<MPolyK> {
    if spec.d > spec.end {
        return Err(Error::Domain(format!("empty tail {}..{}", spec.d, spec.end)));
    }
    let (num, den) = range_sum_sym(c, spec.n, spec.s, spec.d, spec.end);
    Ok(to_mpolyk(num, den, c.fq()))
}

/// S_{j,s} = Σ_{a monic, deg a = j} a(t_1)…a(t_s) ∈ F_q[t].
pub fn monic_product_sum(fq: &Fq, j: usize, s: usize) -> MPoly {
    let polys: Vec<PolyA> = monic_of_degree(j, fq).collect();
    class_sum(fq, s, &polys, |_| PolyA::one()).to_mpoly(fq)
}

/// Largest degree that can contribute to BG(N;s).
pub fn bg_cutoff(n_exp: u64, s: usize, q: u32) -> usize {
    (s + digit_sum(n_exp, q) as usize) / (q as usize - 1)
}

/// BG(N;s) = Σ_j Σ_{a ∈ A^+(j)} a^N a(t_1)…a(t_s), summed up to the vanishing cutoff.
/// The first omitted degree is also computed and must vanish.
pub fn bernoulli_goss(fq: &Fq, n_exp: u64, s: usize) -> Result<MPoly> {
    let cut = bg_cutoff(n_exp, s, fq.q());
    let polys = monic_range(0, cut, fq);
    let sum = class_sum(fq, s, &polys, |a| a.pow(n_exp, fq));
    let next: Vec<PolyA> = monic_of_degree(cut + 1, fq).collect();
    let extra = class_sum(fq, s, &next, |a| a.pow(n_exp, fq));
    if !extra.is_zero() {
        return Err(Error::NotStabilized(format!("BG({n_exp};{s}) degree {} term is nonzero", cut + 1)));
    }
    Ok(sum.to_mpoly(fq))
}

/// F_{deg P}(n;s) mod P in symmetric form, computed in A/P.
pub fn harmonic_sum_mod_sym(ctx: &QuotCtx, n: i64, s: usize) -> Result<SymTPoly> {
    let fq = ctx.fq();
    let d = ctx.deg();
    let polys = monic_range(0, d - 1, fq);
    let inv: Vec<PolyA> = if n > 0 {
        polys.iter().map(|a| ctx.invert_mod(a)).collect::<Result<_>>()?
    } else {
        polys.clone()
    };
    let e = n.unsigned_abs();
    let weights: BTreeMap<&PolyA, PolyA> = polys.iter().zip(&inv).map(|(a, b)| (a, ctx.pow(b, e))).collect();
    let sum = class_sum(fq, s, &polys, |a| weights[a].clone());
    Ok(sum.map(|c| ctx.reduce(c)))
}

/// F_{deg P}(n;s) mod P as a polynomial in t_1..t_s over A/P.
pub fn harmonic_sum_mod(spec: &SumSpec, ctx: &QuotCtx) -> Result<MPoly> {
    if spec.d != ctx.deg() {
        return Err(Error::Domain(format!("component is taken at d = deg P = {}, not {}", ctx.deg(), spec.d)));
    }
    Ok(harmonic_sum_mod_sym(ctx, spec.n, spec.s)?.to_mpoly(ctx.fq()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::Var;

    fn fq(q: u32) -> Fq {
        Fq::with_order(q).unwrap()
    }

    #[test]
    fn monic_order() {
        let f = fq(2);
        let v: Vec<String> = monic_enum(2, &f).map(|a| a.emit(&f)).collect();
        assert_eq!(v, vec!["0,0,1", "1,0,1", "0,1,1", "1,1,1"]);
        assert_eq!(monic_enum(0, &f).count(), 1);
        assert_eq!(monic_enum(4, &fq(3)).count(), 81);
    }

    #[test]
    fn permutations_and_orbits() {
        assert_eq!(distinct_permutations(&[0, 1, 1]).len(), 3);
        assert_eq!(orbit_size(&[0, 1, 1, 2]), 12);
        assert_eq!(sorted_classes(3, 0, 2).len(), 10);
    }

    #[test]
    fn small_power_sums() {
        let f = fq(2);
        let c = Carlitz::new(&f);
        let s = power_sum(&c, &SumSpec { n: 1, s: 0, d: 1 });
        assert_eq!(s.num().as_constant().unwrap(), PolyA::one());
        assert_eq!(s.den(), &PolyA::parse("0,1,1", &f).unwrap());
        for n in [-2, 0, 3] {
            assert_eq!(power_sum(&c, &SumSpec { n, s: 2, d: 0 }), MPolyK::one(2));
            assert_eq!(harmonic_sum(&c, &SumSpec { n, s: 2, d: 1 }).unwrap(), MPolyK::one(2));
        }
    }

    #[test]
    fn f2_of_level_one_q2() {
        let f = fq(2);
        let c = Carlitz::new(&f);
        let h = harmonic_sum(&c, &SumSpec { n: 1, s: 1, d: 2 }).unwrap();
        let t = MPoly::var(Var::T(1), 1).unwrap();
        let want = t.add(&MPoly::constant(PolyA::parse("0,0,1", &f).unwrap(), 1), &f);
        assert_eq!(h, MPolyK::new(want, PolyA::parse("0,1,1", &f).unwrap(), &f).unwrap());
    }

    #[test]
    fn monic_product_sum_small() {
        let f = fq(2);
        assert!(monic_product_sum(&f, 2, 1).is_zero());
        assert_eq!(monic_product_sum(&f, 1, 1), MPoly::one(1));
        assert_eq!(monic_product_sum(&f, 0, 3), MPoly::one(3));
    }

    #[test]
    fn bg_small() {
        let f = fq(3);
        assert_eq!(bernoulli_goss(&f, 1, 0).unwrap(), MPoly::one(0));
        assert_eq!(bg_cutoff(0, 4, 3), 2);
    }

    #[test]
    fn mod_component_worked_instance() {
        let f = fq(3);
        let ctx = QuotCtx::new(PolyA::parse("1,0,1", &f).unwrap(), &f).unwrap();
        let v = harmonic_sum_mod(&SumSpec { n: 1, s: 1, d: 2 }, &ctx).unwrap();
        let t = MPoly::var(Var::T(1), 1).unwrap();
        let want = t.scale(&PolyA::theta(), &f).add(&MPoly::constant(PolyA::parse("2", &f).unwrap(), 1), &f);
        assert_eq!(v, want);
        let zero = harmonic_sum_mod(&SumSpec { n: 5, s: 1, d: 2 }, &ctx).unwrap();
        assert!(zero.is_zero());
    }
}
