//! Components F_{deg P}(n;s) mod P of finite zeta values and the checks built on them.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Mutex;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::carlitz::{digit_sum, Carlitz};
use crate::error::{Error, Result};
use crate::fq::Fq;
use crate::hpoly::{h_row, mul_by_b_product, HPolynomial, RowMode};
use crate::mpoly::{MPoly, Var};
use crate::poly::PolyA;
use crate::quot::{enumerate_irreducibles, QuotCtx};
use crate::sums::{bernoulli_goss, harmonic_sum_mod_sym, SymTPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaComponent {
    pub p: PolyA,
    pub n: i64,
    pub s: usize,
    pub value: MPoly,
    pub is_zero: bool,
    pub is_unit: bool,
}

/// A nonzero element of (A/P)[t] is a unit of the field (A/P)(t); certified by inverting
/// one nonzero coefficient in A/P.
pub fn unit_certified(ctx: &QuotCtx, v: &MPoly) -> bool {
    v.terms().values().next().is_some_and(|c| ctx.invert_mod(c).is_ok())
}

pub fn zeta_component(ctx: &QuotCtx, n: i64, s: usize) -> Result<ZetaComponent> {
    let value = harmonic_sum_mod_sym(ctx, n, s)?.to_mpoly(ctx.fq());
    let is_zero = value.is_zero();
    let is_unit = unit_certified(ctx, &value);
    Ok(ZetaComponent { p: ctx.modulus().clone(), n, s, value, is_zero, is_unit })
}

/// −1/P′ mod P.
pub fn pi_hat(ctx: &QuotCtx) -> Result<PolyA> {
    let fq = ctx.fq();
    Ok(ctx.invert_mod(&ctx.modulus().derivative(fq))?.neg(fq))
}

/// 1/P(t), kept as its denominator in F_q[t].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaHat {
    pub denominator: MPoly,
}

pub fn omega_hat(ctx: &QuotCtx) -> OmegaHat {
    OmegaHat { denominator: p_of_t(ctx.modulus(), 1, 1) }
}

/// P(t_i): θ replaced by t_i.
fn p_of_t(p: &PolyA, i: usize, nt: usize) -> MPoly {
    let coeffs: Vec<PolyA> = p.coeffs().iter().map(|&c| PolyA::constant(c)).collect();
    MPoly::univariate(Var::T(i), &coeffs, nt).expect("t slot")
}

fn check_s(fq: &Fq, s: usize) -> Result<()> {
    if s == 0 || (s - 1) % (fq.q() as usize - 1) != 0 {
        return Err(Error::Domain(format!("s = {s} is not ≡ 1 mod q − 1")));
    }
    Ok(())
}

/// Z(1;s)_P·P′·∏_i∏_{j=1}^m (t_i − θ^{q^{d−j}}) ≡ ∏_i P(t_i)·H_s(θ^{q^{−m}}) mod P, with
/// H_1 = 1/(t − θ) for s = 1; the component must also be a unit. Both sides are formed
/// class by class in symmetric form.
pub fn component_identity_check(ctx: &QuotCtx, s: usize, h: Option<&HPolynomial>) -> Result<bool> {
    let fq = ctx.fq();
    check_s(fq, s)?;
    let p = ctx.modulus();
    let zsym = harmonic_sum_mod_sym(ctx, 1, s)?;
    let is_unit = unit_certified(ctx, &zsym.to_mpoly(fq));
    let mut hv = SymTPoly::zero(s);
    let mut roots = vec![ctx.reduce(&PolyA::theta())];
    if s == 1 {
        hv.add_class(&[0], &PolyA::one(), fq);
    } else {
        let h = h.ok_or_else(|| Error::PreconditionUnmet(format!("s = {s} needs H_s")))?;
        if h.s() != s {
            return Err(Error::ArityMismatch(format!("H has s = {}, expected {s}", h.s())));
        }
        let m = h.params.m;
        roots = (1..=m).map(|j| ctx.frob_theta_inv(j).clone()).collect();
        let y = ctx.frob_theta_inv(m).clone();
        for slice in h.slices.iter().rev() {
            hv = hv.map(|c| ctx.mul(c, &y)).add(&slice.map(|c| ctx.reduce(c)), fq);
        }
    }
    // t-coefficients of ∏_j (t − r_j) and of P(t)
    let mut lin = vec![PolyA::one()];
    for r in &roots {
        let mut next = vec![PolyA::zero(); lin.len() + 1];
        for (k, c) in lin.iter().enumerate() {
            next[k + 1].add_assign(c, fq);
            next[k].sub_assign(&ctx.mul(c, r), fq);
        }
        lin = next;
    }
    let pc: Vec<PolyA> = p.coeffs().iter().map(|&c| PolyA::constant(c)).collect();
    let dp = ctx.reduce(&p.derivative(fq));
    let lhs = mul_by_b_product(&zsym.map(|c| ctx.mul(c, &dp)), &lin, fq).map(|c| ctx.reduce(c));
    let rhs = mul_by_b_product(&hv, &pc, fq).map(|c| ctx.reduce(c));
    Ok(lhs == rhs && is_unit)
}

/// Ψ_d(θ) = (θ^{q^d} − θ)/(θ^q − θ).
pub fn psi_poly(fq: &Fq, d: usize) -> Result<PolyA> {
    let q = fq.q() as usize;
    let th = PolyA::theta();
    PolyA::monomial(crate::fq::FqElem::ONE, q.pow(d as u32)).sub(&th, fq).div_exact(
        &PolyA::monomial(crate::fq::FqElem::ONE, q).sub(&th, fq),
        fq,
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiReport {
    pub d: usize,
    /// Ψ_d = ∏ of the irreducibles of degree d; only asked for prime d.
    pub factorization: Option<bool>,
    /// H_{s,d} ≢ 0 mod Ψ_d.
    pub row_nonzero: bool,
    /// deg_θ H_{s,d} = w := μq^{d−m} + m − 1.
    pub degree_is_w: bool,
    /// w < q^d − q, the regime in which the powers θ^0..θ^w stay independent mod Ψ_d.
    pub w_below_bound: bool,
}

fn is_prime(d: usize) -> bool {
    d >= 2 && (2..d).take_while(|k| k * k <= d).all(|k| d % k != 0)
}

pub fn psi_nonvanish_check(c: &Carlitz, s: usize, d: usize) -> Result<PsiReport> {
    let fq = c.fq();
    let psi = psi_poly(fq, d)?;
    let factorization = is_prime(d).then(|| {
        let prod = enumerate_irreducibles(d, fq).iter().fold(PolyA::one(), |a, p| a.mul(p, fq));
        prod == psi
    });
    let row = h_row(c, s, d, RowMode::Auto)?;
    let row_nonzero = row.h.classes().values().any(|v| !v.rem(&psi, fq).expect("nonzero").is_zero());
    let p = crate::hpoly::HParams::new(fq.q(), s)?;
    let q = fq.q() as u128;
    let w = p.mu as u128 * q.pow((d - p.m) as u32) + p.m as u128 - 1;
    Ok(PsiReport {
        d,
        factorization,
        row_nonzero,
        degree_is_w: row.theta_degree as u128 == w,
        w_below_bound: w < q.pow(d as u32) - q,
    })
}

/// BG(N;s) values shared across primes of the same degree.
#[derive(Default)]
pub struct BgTable {
    memo: Mutex<HashMap<(u64, usize), MPoly>>,
}

impl BgTable {
    pub fn new() -> BgTable {
        BgTable::default()
    }
    pub fn get(&self, fq: &Fq, n_exp: u64, s: usize) -> Result<MPoly> {
        if let Some(v) = self.memo.lock().expect("bg memo").get(&(n_exp, s)) {
            return Ok(v.clone());
        }
        let v = bernoulli_goss(fq, n_exp, s)?;
        self.memo.lock().expect("bg memo").insert((n_exp, s), v.clone());
        Ok(v)
    }
}

/// Outcome of comparing Z(n;s)_P with BG(N;s) mod P, N = q^{deg P} − 1 − n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceOutcome {
    pub bg_exponent: u64,
    pub congruent: bool,
    /// n ≡ s mod q − 1.
    pub zero_expected: bool,
    pub zero: bool,
}

impl CongruenceOutcome {
    /// Congruence, and vanishing when n ≡ s and N > 0 (BG(0;0) = 1).
    pub fn holds(&self) -> bool {
        self.congruent && (!self.zero_expected || self.zero || self.bg_exponent == 0)
    }
    /// Congruence, and vanishing whenever n ≡ s.
    pub fn holds_literally(&self) -> bool {
        self.congruent && (!self.zero_expected || self.zero)
    }
}

/// Z(n;s)_P against BG(q^{deg P} − 1 − n; s) mod P; needs ℓ_q(n) > s and q^{deg P} > n.
pub fn bg_congruence_check(ctx: &QuotCtx, n: u64, s: usize, bg: &BgTable) -> Result<CongruenceOutcome> {
    let fq = ctx.fq();
    let q = fq.q();
    if digit_sum(n, q) as usize <= s {
        return Err(Error::PreconditionUnmet(format!("ℓ_q({n}) ≤ s = {s}")));
    }
    let size = (q as u64).pow(ctx.deg() as u32);
    if size <= n {
        return Err(Error::PreconditionUnmet(format!("q^deg P = {size} ≤ n = {n}")));
    }
    let z = zeta_component(ctx, n as i64, s)?;
    let bg_exponent = size - 1 - n;
    let want = ctx.reduce_mpoly(&bg.get(fq, bg_exponent, s)?);
    Ok(CongruenceOutcome {
        bg_exponent,
        congruent: z.value == want,
        zero_expected: (n as i64 - s as i64).rem_euclid(q as i64 - 1) == 0,
        zero: z.is_zero,
    })
}

/// BC_{q^{deg P} − s} mod P is a unit.
pub fn bc_unit_check(c: &Carlitz, ctx: &QuotCtx, s: usize) -> Result<bool> {
    let fq = ctx.fq();
    if s <= 1 {
        return Err(Error::Domain("bc_unit_check needs s > 1".into()));
    }
    check_s(fq, s)?;
    let size = (fq.q() as u64).pow(ctx.deg() as u32);
    if size < s as u64 {
        return Err(Error::PreconditionUnmet(format!("q^deg P = {size} < s = {s}")));
    }
    let j = (size - s as u64) as usize;
    if j == 0 {
        return Ok(true);
    }
    let v = c.bc_number_mod(j, ctx)?;
    Ok(ctx.invert_mod(&v).is_ok())
}

/// Which statement a scan cell exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Clause {
    /// n ≢ s, s > 0: nonzero (proven).
    NonzeroProven,
    /// n ≢ s, s = 0: nonzero (conjectured).
    NonzeroOpen,
    /// n ≡ s, ℓ_q(n) > s: zero (proven).
    ZeroProven,
    /// n ≡ s, ℓ_q(n) ≤ s: nonzero (conjectured).
    NonvanishingOpen,
}

impl Clause {
    pub fn tag(self) -> &'static str {
        match self {
            Clause::NonzeroProven => "c1-proven",
            Clause::NonzeroOpen => "c1-open",
            Clause::ZeroProven => "c2-zero-proven",
            Clause::NonvanishingOpen => "c2-nonzero-open",
        }
    }
    pub fn expects_zero(self) -> bool {
        self == Clause::ZeroProven
    }
    pub fn proven(self) -> bool {
        matches!(self, Clause::NonzeroProven | Clause::ZeroProven)
    }
    pub fn of(q: u32, n: u64, s: usize) -> Clause {
        let same = (n as i64 - s as i64).rem_euclid(q as i64 - 1) == 0;
        match (same, s) {
            (false, 0) => Clause::NonzeroOpen,
            (false, _) => Clause::NonzeroProven,
            (true, _) if digit_sum(n, q) as usize > s => Clause::ZeroProven,
            (true, _) => Clause::NonvanishingOpen,
        }
    }
}

/// How a verdict relates to its clause.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Consistent,
    /// A proven clause failed at a prime with q^{deg P} − 1 > n.
    Counterexample,
    /// A proven clause failed at a prime with q^{deg P} − 1 ≤ n, where the exponent
    /// N = q^{deg P} − 1 − n of the Bernoulli–Goss route is not positive.
    SmallPrime,
    /// A conjectured clause failed.
    Candidate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanCell {
    pub p: PolyA,
    pub n: u64,
    pub s: usize,
    pub zero: bool,
    pub clause: Clause,
    pub outcome: Outcome,
    pub value_hash: String,
    /// Full value, kept only for cells that are not consistent.
    pub value: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub q: u32,
    pub modulus: String,
    pub maxdeg: usize,
    pub n_max: u64,
    pub s_max: usize,
    pub cells: Vec<ScanCell>,
}

impl ScanReport {
    pub fn counterexamples(&self) -> Vec<&ScanCell> {
        self.cells.iter().filter(|c| c.outcome == Outcome::Counterexample).collect()
    }
    /// Conjecture anomalies and small-prime exceptions.
    pub fn findings(&self) -> Vec<&ScanCell> {
        self.cells.iter().filter(|c| matches!(c.outcome, Outcome::Candidate | Outcome::SmallPrime)).collect()
    }
    pub fn to_tsv(&self, fq: &Fq) -> String {
        let mut out = String::from("q\tf\tP\tn\ts\tverdict\tclause\tvalue_hash\n");
        for c in &self.cells {
            let verdict = if c.zero { "zero" } else { "nonzero" };
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{verdict}\t{}\t{}",
                self.q,
                self.modulus,
                c.p.emit(fq),
                c.n,
                c.s,
                c.clause.tag(),
                c.value_hash
            );
        }
        let _ = writeln!(out, "# summary");
        let _ = writeln!(out, "# grid\tq={}\tmaxdeg={}\tn<={}\ts<={}", self.q, self.maxdeg, self.n_max, self.s_max);
        let _ = writeln!(out, "# cells\t{}", self.cells.len());
        for clause in [Clause::NonzeroProven, Clause::NonzeroOpen, Clause::ZeroProven, Clause::NonvanishingOpen] {
            let cells: Vec<_> = self.cells.iter().filter(|c| c.clause == clause).collect();
            let zeros = cells.iter().filter(|c| c.zero).count();
            let _ = writeln!(out, "# {}\tcells={}\tzero={}", clause.tag(), cells.len(), zeros);
        }
        let _ = writeln!(out, "# counterexamples\t{}", self.counterexamples().len());
        for c in self.findings() {
            let _ = writeln!(
                out,
                "# finding\t{:?}\tP={}\tn={}\ts={}\tvalue={}",
                c.outcome,
                c.p.emit(fq),
                c.n,
                c.s,
                c.value.as_deref().unwrap_or("")
            );
        }
        out
    }
}

fn value_hash(v: &MPoly, fq: &Fq) -> String {
    hex::encode(&Sha256::digest(v.emit(fq).as_bytes())[..8])
}

/// Every (P, n, s) with 1 ≤ deg P ≤ maxdeg, 1 ≤ n ≤ n_max, 0 ≤ s ≤ s_max, in canonical order.
pub fn conjecture_scan(fq: &Fq, maxdeg: usize, n_max: u64, s_max: usize) -> Result<ScanReport> {
    let q = fq.q();
    let primes: Vec<QuotCtx> = (1..=maxdeg)
        .flat_map(|d| enumerate_irreducibles(d, fq))
        .map(|p| QuotCtx::new(p, fq))
        .collect::<Result<_>>()?;
    let units: Vec<(usize, u64, usize)> =
        (0..primes.len()).flat_map(|i| (1..=n_max).flat_map(move |n| (0..=s_max).map(move |s| (i, n, s)))).collect();
    let cells = units
        .par_iter()
        .map(|&(i, n, s)| {
            let ctx = &primes[i];
            let z = zeta_component(ctx, n as i64, s)?;
            let clause = Clause::of(q, n, s);
            let outcome = if z.is_zero == clause.expects_zero() {
                Outcome::Consistent
            } else if !clause.proven() {
                Outcome::Candidate
            } else if (q as u128).pow(ctx.deg() as u32) > n as u128 + 1 {
                Outcome::Counterexample
            } else {
                Outcome::SmallPrime
            };
            Ok(ScanCell {
                p: ctx.modulus().clone(),
                n,
                s,
                zero: z.is_zero,
                clause,
                outcome,
                value_hash: value_hash(&z.value, fq),
                value: (outcome != Outcome::Consistent).then(|| z.value.emit(fq)),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport { q, modulus: fq.modulus_string(), maxdeg, n_max, s_max, cells })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpoly::h_universal;

    fn ctx(q: u32, p: &str) -> QuotCtx {
        let fq = Fq::with_order(q).unwrap();
        QuotCtx::new(PolyA::parse(p, &fq).unwrap(), &fq).unwrap()
    }

    #[test]
    fn worked_component() {
        let c = ctx(3, "1,0,1");
        let fq = c.fq().clone();
        let z = zeta_component(&c, 1, 1).unwrap();
        let t = MPoly::var(Var::T(1), 1).unwrap();
        let want = t.scale(&PolyA::theta(), &fq).add(&MPoly::constant(PolyA::constant(fq.from_int(2)), 1), &fq);
        assert_eq!(z.value, want);
        assert!(z.is_unit);
        assert!(zeta_component(&c, 5, 1).unwrap().is_zero);
        assert_eq!(pi_hat(&c).unwrap(), PolyA::theta().scale(fq.from_int(2), &fq));
        assert!(component_identity_check(&c, 1, None).unwrap());
    }

    #[test]
    fn degree_one_components_are_one() {
        let fq = Fq::with_order(3).unwrap();
        for p in enumerate_irreducibles(1, &fq) {
            let c = QuotCtx::new(p, &fq).unwrap();
            assert_eq!(zeta_component(&c, 1, 2).unwrap().value, MPoly::one(2));
            assert_eq!(pi_hat(&c).unwrap(), PolyA::constant(fq.from_int(-1)));
        }
    }

    #[test]
    fn component_identity_q2_s3() {
        let fq = Fq::with_order(2).unwrap();
        let h = h_universal(&fq, 3).unwrap();
        for d in 1..=4 {
            for p in enumerate_irreducibles(d, &fq) {
                let c = QuotCtx::new(p, &fq).unwrap();
                assert!(component_identity_check(&c, 3, Some(&h)).unwrap(), "P={}", c.modulus().emit(&fq));
            }
        }
    }

    #[test]
    fn psi_examples() {
        let fq = Fq::with_order(2).unwrap();
        let c = Carlitz::new(&fq);
        let r = psi_nonvanish_check(&c, 3, 3).unwrap();
        assert_eq!(r.factorization, Some(true));
        assert!(r.row_nonzero);
        let fq3 = Fq::with_order(3).unwrap();
        assert_eq!(enumerate_irreducibles(2, &fq3).len(), 3);
        assert_eq!(psi_poly(&fq3, 2).unwrap().deg(), Some(6));
    }

    #[test]
    fn congruence_examples() {
        let bg = BgTable::new();
        let r = bg_congruence_check(&ctx(3, "1,0,1"), 5, 1, &bg).unwrap();
        assert!(r.holds_literally() && r.zero);
        assert!(bg_congruence_check(&ctx(2, "1,1,1"), 3, 1, &bg).unwrap().holds());
        let edge = bg_congruence_check(&ctx(2, "1,1,1"), 3, 0, &bg).unwrap();
        assert!(edge.holds() && !edge.holds_literally() && edge.bg_exponent == 0);
        assert!(matches!(bg_congruence_check(&ctx(3, "1,0,1"), 1, 1, &bg), Err(Error::PreconditionUnmet(_))));
    }

    #[test]
    fn bc_examples() {
        let fq = Fq::with_order(2).unwrap();
        let c = Carlitz::new(&fq);
        for p in enumerate_irreducibles(3, &fq) {
            assert!(bc_unit_check(&c, &QuotCtx::new(p, &fq).unwrap(), 3).unwrap());
        }
        let fq3 = Fq::with_order(3).unwrap();
        let c3 = Carlitz::new(&fq3);
        assert!(bc_unit_check(&c3, &ctx(3, "1,0,1"), 3).unwrap());
        assert!(bc_unit_check(&c3, &ctx(3, "1,0,1"), 9).unwrap());
    }
}
