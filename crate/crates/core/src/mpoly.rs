//! Sparse multivariate polynomials in t_1..t_s, Y, z with coefficients in A.
//!
//! θ is kept implicit: every stored coefficient is a [`PolyA`]. The exponent
//! vector of a term has length `nt + 2` laid out as `[t_1, .., t_nt, Y, z]`.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::fq::{Fq, FqElem};
use crate::poly::PolyA;

pub type Mono = Vec<u32>;

/// A non-θ variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// t_i, 1-based.
    T(usize),
    Y,
    Z,
}

impl Var {
    fn slot(self, nt: usize) -> Result<usize> {
        match self {
            Var::T(i) if (1..=nt).contains(&i) => Ok(i - 1),
            Var::T(i) => Err(Error::ArityMismatch(format!("t_{i} not among t_1..t_{nt}"))),
            Var::Y => Ok(nt),
            Var::Z => Ok(nt + 1),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MPoly {
    nt: usize,
    terms: BTreeMap<Mono, PolyA>,
}

impl MPoly {
    pub fn zero(nt: usize) -> MPoly {
        MPoly { nt, terms: BTreeMap::new() }
    }
    pub fn one(nt: usize) -> MPoly {
        MPoly::constant(PolyA::one(), nt)
    }
    pub fn constant(a: PolyA, nt: usize) -> MPoly {
        let mut p = MPoly::zero(nt);
        p.add_term(vec![0; nt + 2], a, None);
        p
    }
    /// c·v^k.
    pub fn monomial(v: Var, k: u32, c: PolyA, nt: usize) -> Result<MPoly> {
        let mut m = vec![0; nt + 2];
        m[v.slot(nt)?] = k;
        let mut p = MPoly::zero(nt);
        p.add_term(m, c, None);
        Ok(p)
    }
    pub fn var(v: Var, nt: usize) -> Result<MPoly> {
        MPoly::monomial(v, 1, PolyA::one(), nt)
    }
    /// Σ_k coeffs[k]·v^k.
    pub fn univariate(v: Var, coeffs: &[PolyA], nt: usize) -> Result<MPoly> {
        let slot = v.slot(nt)?;
        let mut p = MPoly::zero(nt);
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut m = vec![0; nt + 2];
                m[slot] = k as u32;
                p.terms.insert(m, c.clone());
            }
        }
        Ok(p)
    }
    pub fn from_terms(nt: usize, terms: impl IntoIterator<Item = (Mono, PolyA)>, fq: &Fq) -> MPoly {
        let mut p = MPoly::zero(nt);
        for (m, c) in terms {
            assert_eq!(m.len(), nt + 2, "exponent vector arity");
            p.add_term(m, c, Some(fq));
        }
        p
    }

    pub fn nt(&self) -> usize {
        self.nt
    }
    pub fn terms(&self) -> &BTreeMap<Mono, PolyA> {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn coeff(&self, m: &[u32]) -> PolyA {
        self.terms.get(m).cloned().unwrap_or_default()
    }
    /// The A-value when the polynomial has no non-θ variables.
    pub fn as_constant(&self) -> Option<PolyA> {
        match self.terms.len() {
            0 => Some(PolyA::zero()),
            1 => self.terms.get(&vec![0; self.nt + 2]).cloned(),
            _ => None,
        }
    }

    /// Adds `c` at monomial `m`; `fq` may be omitted only when `m` is known absent.
    fn add_term(&mut self, m: Mono, c: PolyA, fq: Option<&Fq>) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign(&c, fq.expect("field needed to merge terms"));
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, o: &MPoly) {
        assert_eq!(self.nt, o.nt, "multivariate operands over different variable sets");
    }

    pub fn add(&self, o: &MPoly, fq: &Fq) -> MPoly {
        self.check(o);
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone(), Some(fq));
        }
        r
    }
    pub fn add_assign(&mut self, o: &MPoly, fq: &Fq) {
        self.check(o);
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone(), Some(fq));
        }
    }
    pub fn neg(&self, fq: &Fq) -> MPoly {
        MPoly { nt: self.nt, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg(fq))).collect() }
    }
    pub fn sub(&self, o: &MPoly, fq: &Fq) -> MPoly {
        self.add(&o.neg(fq), fq)
    }
    pub fn scale(&self, a: &PolyA, fq: &Fq) -> MPoly {
        if a.is_zero() {
            return MPoly::zero(self.nt);
        }
        MPoly { nt: self.nt, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.mul(a, fq))).collect() }
    }
    pub fn mul(&self, o: &MPoly, fq: &Fq) -> MPoly {
        self.check(o);
        let mut acc: HashMap<Mono, PolyA> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m: Mono = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                let prod = ca.mul(cb, fq);
                acc.entry(m).and_modify(|c| c.add_assign(&prod, fq)).or_insert(prod);
            }
        }
        MPoly { nt: self.nt, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
    pub fn pow(&self, mut n: u64, fq: &Fq) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one(self.nt);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base, fq);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base, fq);
            }
        }
        acc
    }

    /// Degree in `v`, `None` for zero.
    pub fn deg_in(&self, v: Var) -> Result<Option<u32>> {
        let s = v.slot(self.nt)?;
        Ok(self.terms.keys().map(|m| m[s]).max())
    }
    /// Largest θ-degree over all coefficients, `None` for zero.
    pub fn deg_theta(&self) -> Option<usize> {
        self.terms.values().filter_map(|c| c.deg()).max()
    }
    /// Coefficient of v^k as a polynomial in the remaining variables.
    pub fn coeff_in(&self, v: Var, k: u32) -> Result<MPoly> {
        let s = v.slot(self.nt)?;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m[s] == k)
            .map(|(m, c)| {
                let mut m = m.clone();
                m[s] = 0;
                (m, c.clone())
            })
            .collect();
        Ok(MPoly { nt: self.nt, terms })
    }
    /// Multiply by v^k.
    pub fn shift_var(&self, v: Var, k: u32) -> Result<MPoly> {
        let s = v.slot(self.nt)?;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m = m.clone();
                m[s] += k;
                (m, c.clone())
            })
            .collect();
        Ok(MPoly { nt: self.nt, terms })
    }

    /// Substitute v ↦ x with x ∈ A.
    pub fn eval_var(&self, v: Var, x: &PolyA, fq: &Fq) -> Result<MPoly> {
        let s = v.slot(self.nt)?;
        let mut powers: HashMap<u32, PolyA> = HashMap::new();
        let mut out = MPoly::zero(self.nt);
        for (m, c) in &self.terms {
            let k = m[s];
            let pk = powers.entry(k).or_insert_with(|| x.pow(k as u64, fq));
            let mut m2 = m.clone();
            m2[s] = 0;
            out.add_term(m2, c.mul(pk, fq), Some(fq));
        }
        Ok(out)
    }

    /// Substitute v ↦ θ^k; a cheap special case of [`MPoly::eval_var`].
    pub fn eval_var_theta_power(&self, v: Var, k: usize, fq: &Fq) -> Result<MPoly> {
        let s = v.slot(self.nt)?;
        let mut out = MPoly::zero(self.nt);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = m2[s] as usize;
            m2[s] = 0;
            out.add_term(m2, c.shift(e * k), Some(fq));
        }
        Ok(out)
    }

    /// Rename t-variables: t_i becomes t_{map[i-1]} in a ring with `new_nt` t-variables.
    pub fn rename_t(&self, map: &[usize], new_nt: usize, fq: &Fq) -> Result<MPoly> {
        if map.len() != self.nt || map.iter().any(|&j| j == 0 || j > new_nt) {
            return Err(Error::ArityMismatch(format!("bad t-renaming {map:?} into {new_nt} variables")));
        }
        let mut out = MPoly::zero(new_nt);
        for (m, c) in &self.terms {
            let mut m2 = vec![0; new_nt + 2];
            for (i, &j) in map.iter().enumerate() {
                m2[j - 1] += m[i];
            }
            m2[new_nt] = m[self.nt];
            m2[new_nt + 1] = m[self.nt + 1];
            out.add_term(m2, c.clone(), Some(fq));
        }
        Ok(out)
    }

    /// Reduce every coefficient modulo P.
    pub fn rem_coeffs(&self, p: &PolyA, fq: &Fq) -> MPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.rem(p, fq).expect("nonzero modulus")))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        MPoly { nt: self.nt, terms }
    }

    /// Monic gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self, fq: &Fq) -> PolyA {
        let mut g = PolyA::zero();
        for c in self.terms.values() {
            g = g.gcd(c, fq);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide every coefficient exactly by `a`.
    pub fn div_exact_scalar(&self, a: &PolyA, fq: &Fq) -> Result<MPoly> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), c.div_exact(a, fq)?)))
            .collect::<Result<_>>()?;
        Ok(MPoly { nt: self.nt, terms })
    }

    /// Exact quotient f/g in A[t, Y, z]; `NonExactDivision` when g does not divide f.
    pub fn exact_div(&self, g: &MPoly, fq: &Fq) -> Result<MPoly> {
        self.check(g);
        let (mg, cg) = g
            .terms
            .iter()
            .next_back()
            .ok_or_else(|| Error::Domain("division by zero polynomial".into()))?;
        let mut rest = self.clone();
        let mut quo = MPoly::zero(self.nt);
        while let Some((mf, cf)) = rest.terms.iter().next_back() {
            if mf.iter().zip(mg).any(|(a, b)| a < b) {
                return Err(Error::NonExactDivision(format!(
                    "leading monomial {mf:?} not divisible by {mg:?}"
                )));
            }
            let mh: Mono = mf.iter().zip(mg).map(|(a, b)| a - b).collect();
            let ch = cf.div_exact(cg, fq)?;
            for (m, c) in &g.terms {
                let m2: Mono = m.iter().zip(&mh).map(|(a, b)| a + b).collect();
                rest.add_term(m2, c.mul(&ch, fq).neg(fq), Some(fq));
            }
            quo.terms.insert(mh, ch);
        }
        Ok(quo)
    }

    /// Canonical text: a header `nt=<n>` then one `e_θ,e_t1..,e_Y,e_z:coeff` line per
    /// term, in graded lexicographic order with θ < t_1 < … < Y < z.
    pub fn emit(&self, fq: &Fq) -> String {
        let mut rows: Vec<(Vec<u64>, FqElem)> = Vec::new();
        for (m, c) in &self.terms {
            for (k, &x) in c.coeffs().iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let mut e = vec![k as u64];
                e.extend(m.iter().map(|&v| v as u64));
                rows.push((e, x));
            }
        }
        rows.sort_by_key(|(e, _)| grlex_key(e));
        let mut out = format!("nt={}", self.nt);
        for (e, x) in rows {
            let ev: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            out.push('\n');
            out.push_str(&ev.join(","));
            out.push(':');
            out.push_str(&fq.emit(x));
        }
        out
    }

    pub fn parse(s: &str, fq: &Fq) -> Result<MPoly> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let head = lines.next().ok_or_else(|| Error::Parse("empty polynomial text".into()))?;
        let nt: usize = head
            .strip_prefix("nt=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad header {head:?}")))?;
        let mut p = MPoly::zero(nt);
        for line in lines {
            let (ev, c) = line.split_once(':').ok_or_else(|| Error::Parse(format!("bad term {line:?}")))?;
            let e: Vec<u64> = ev
                .split(',')
                .map(|x| x.parse().map_err(|_| Error::Parse(format!("bad exponent in {line:?}"))))
                .collect::<Result<_>>()?;
            if e.len() != nt + 3 {
                return Err(Error::Parse(format!("term arity {} != {}", e.len(), nt + 3)));
            }
            let mono: Mono = e[1..].iter().map(|&v| v as u32).collect();
            p.add_term(mono, PolyA::monomial(fq.parse(c)?, e[0] as usize), Some(fq));
        }
        Ok(p)
    }
}

/// Sort key for graded lexicographic order where the last variable is the largest.
fn grlex_key(e: &[u64]) -> (u64, Vec<u64>) {
    (e.iter().sum(), e.iter().rev().copied().collect())
}

/// Fraction with a polynomial numerator and a monic denominator in A only.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPolyK {
    num: MPoly,
    den: PolyA,
}

impl MPolyK {
    pub fn new(num: MPoly, den: PolyA, fq: &Fq) -> Result<MPolyK> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(MPolyK { num, den: PolyA::one() });
        }
        let g = num.content(fq).gcd(&den, fq);
        let d = den.div_exact(&g, fq)?;
        let g = g.scale(d.lead(), fq);
        Ok(MPolyK { num: num.div_exact_scalar(&g, fq)?, den: den.div_exact(&g, fq)? })
    }
    pub fn from_mpoly(num: MPoly) -> MPolyK {
        MPolyK { num, den: PolyA::one() }
    }
    pub fn zero(nt: usize) -> MPolyK {
        MPolyK::from_mpoly(MPoly::zero(nt))
    }
    pub fn one(nt: usize) -> MPolyK {
        MPolyK::from_mpoly(MPoly::one(nt))
    }
    pub fn num(&self) -> &MPoly {
        &self.num
    }
    pub fn den(&self) -> &PolyA {
        &self.den
    }
    pub fn nt(&self) -> usize {
        self.num.nt
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    /// The polynomial value when the denominator is 1.
    pub fn as_mpoly(&self) -> Option<&MPoly> {
        self.den.is_one().then_some(&self.num)
    }
    pub fn add(&self, o: &MPolyK, fq: &Fq) -> MPolyK {
        if self.den == o.den {
            return MPolyK::new(self.num.add(&o.num, fq), self.den.clone(), fq).expect("nonzero den");
        }
        let g = self.den.gcd(&o.den, fq);
        let fa = o.den.div_exact(&g, fq).expect("gcd divides");
        let fb = self.den.div_exact(&g, fq).expect("gcd divides");
        let num = self.num.scale(&fa, fq).add(&o.num.scale(&fb, fq), fq);
        MPolyK::new(num, self.den.mul(&fa, fq), fq).expect("nonzero den")
    }
    pub fn neg(&self, fq: &Fq) -> MPolyK {
        MPolyK { num: self.num.neg(fq), den: self.den.clone() }
    }
    pub fn sub(&self, o: &MPolyK, fq: &Fq) -> MPolyK {
        self.add(&o.neg(fq), fq)
    }
    pub fn mul(&self, o: &MPolyK, fq: &Fq) -> MPolyK {
        MPolyK::new(self.num.mul(&o.num, fq), self.den.mul(&o.den, fq), fq).expect("nonzero den")
    }
    /// Divide by a nonzero element of A.
    pub fn div_a(&self, a: &PolyA, fq: &Fq) -> Result<MPolyK> {
        if a.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        let inv = fq.inv(a.lead()).expect("nonzero");
        MPolyK::new(self.num.scale(&PolyA::constant(inv), fq), self.den.mul(&a.scale(inv, fq), fq), fq)
    }
    pub fn eval_var(&self, v: Var, x: &PolyA, fq: &Fq) -> Result<MPolyK> {
        MPolyK::new(self.num.eval_var(v, x, fq)?, self.den.clone(), fq)
    }

    /// Ring homomorphism sending each bound variable to its image and fixing the rest.
    pub fn substitute(&self, bindings: &[(Var, MPolyK)], fq: &Fq) -> Result<MPolyK> {
        let nt = self.nt();
        let mut slots = Vec::new();
        for (v, img) in bindings {
            if img.nt() != nt {
                return Err(Error::ArityMismatch(format!("image of {v:?} has {} t-variables", img.nt())));
            }
            slots.push((v.slot(nt)?, img));
        }
        let mut cache: HashMap<(usize, u32), MPolyK> = HashMap::new();
        let mut out = MPolyK::zero(nt);
        for (m, c) in &self.num.terms {
            let mut kept = m.clone();
            let mut term = MPolyK::one(nt);
            for &(slot, img) in &slots {
                let e = m[slot];
                kept[slot] = 0;
                if e > 0 {
                    let pw = cache.entry((slot, e)).or_insert_with(|| {
                        let mut acc = MPolyK::one(nt);
                        for _ in 0..e {
                            acc = acc.mul(img, fq);
                        }
                        acc
                    });
                    term = term.mul(pw, fq);
                }
            }
            let mut mono = MPoly::zero(nt);
            mono.terms.insert(kept, c.clone());
            out = out.add(&term.mul(&MPolyK::from_mpoly(mono), fq), fq);
        }
        out.div_a(&self.den, fq)
    }

    pub fn emit(&self, fq: &Fq) -> String {
        format!("{}\nden={}", self.num.emit(fq), self.den.emit(fq))
    }
    pub fn parse(s: &str, fq: &Fq) -> Result<MPolyK> {
        let (body, den) = s.rsplit_once("\nden=").ok_or_else(|| Error::Parse("missing den line".into()))?;
        MPolyK::new(MPoly::parse(body, fq)?, PolyA::parse(den, fq)?, fq)
    }
}

impl MPoly {
    /// Substitution for a polynomial input.
    pub fn substitute(&self, bindings: &[(Var, MPolyK)], fq: &Fq) -> Result<MPolyK> {
        MPolyK::from_mpoly(self.clone()).substitute(bindings, fq)
    }
}
