//! One line per acceptance criterion. Every check is exact: equalities in A, K or A/P,
//! and for the limit checks strictly decreasing residual tops over a window of three d.

use std::process::ExitCode;
use std::time::Instant;

use harmsum_core::cache::{parse, serialize, H_Q_SIGN};
use harmsum_core::carlitz::elem_sym;
use harmsum_core::finzeta::{
    bc_unit_check, bg_congruence_check, component_identity_check, conjecture_scan, zeta_component, BgTable, Clause,
    Outcome,
};
use harmsum_core::hpoly::closed::{h_two_q_minus_one, lambda_two_q_minus_one, small_power_sum};
use harmsum_core::hpoly::{h_interpolate, h_row, h_universal, interp_crosscheck, power_sum_via_h, RowMode};
use harmsum_core::subspace::{level_one_power_sum_check, level_one_telescopes};
use harmsum_core::sums::{harmonic_sum, monic_product_sum, power_sum, SumSpec};
use harmsum_core::tate::{lambda_limit, lambda_stable_from, lower_coeff_verify, nu_value, GammaSide};
use harmsum_core::{
    digit_sum, enumerate_irreducibles, Carlitz, Fq, FqElem, FracK, MPoly, MPolyK, PolyA, QuotCtx, Var,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

const GRID: [(u32, usize); 8] = [(2, 2), (2, 3), (2, 4), (3, 3), (3, 5), (4, 4), (5, 5), (5, 9)];
const PROPERTY_CASES: u32 = 1000;

struct Verdict {
    pass: bool,
    detail: String,
    findings: Vec<String>,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Verdict {
        Verdict { pass, detail: detail.into(), findings: Vec::new() }
    }
    fn with(mut self, finding: impl Into<String>) -> Verdict {
        self.findings.push(finding.into());
        self
    }
}

fn field(q: u32) -> Fq {
    Fq::with_order(q).unwrap()
}

fn level_one_closed_form() -> Verdict {
    let mut failures = Vec::new();
    let mut enumerated = 0;
    for q in [2u32, 3, 5] {
        let fq = field(q);
        let c = Carlitz::new(&fq);
        for i in 0..8 {
            if !level_one_power_sum_check(&c, i).unwrap() {
                failures.push(format!("q={q} l_i S_i, i={i}"));
            }
        }
        for d in 1..=8usize {
            if !level_one_telescopes(&c, d).unwrap() {
                failures.push(format!("q={q} telescoping d={d}"));
            }
            if (q as u64).pow(d as u32 - 1) <= 3125 {
                let t = MPoly::var(Var::T(1), 1).unwrap();
                let linear = t.sub(&MPoly::constant(PolyA::theta(), 1), &fq);
                let num = c.b_poly(d, Var::T(1), 1).unwrap().exact_div(&linear, &fq).unwrap();
                let want = MPolyK::new(num, c.l(d - 1), &fq).unwrap();
                if harmonic_sum(&c, &SumSpec { n: 1, s: 1, d }).unwrap() != want {
                    failures.push(format!("q={q} enumeration d={d}"));
                }
                enumerated += 1;
            }
        }
    }
    Verdict::new(
        failures.is_empty(),
        format!("24 (q,d) by subspace sums, {enumerated} also by enumeration; failures {failures:?}"),
    )
}

fn interpolation_polynomial_grid() -> Verdict {
    let mut failures = Vec::new();
    let mut degs = Vec::new();
    for (q, s) in GRID {
        let fq = field(q);
        let c = Carlitz::new(&fq);
        let u = h_universal(&fq, s).unwrap();
        let v = h_interpolate(&c, s, RowMode::Auto).unwrap();
        let m = (s - 1) / (q as usize - 1);
        let mu = ((q as usize).pow(m as u32) - 1) / (q as usize - 1) - m;
        let mut ok = u.slices == v.slices && u.deg_y() == Some(mu) && u.deg_t() == Some(m as u32 - 1);
        for d in m + mu + 1..=m + mu + 2 {
            ok &= h_row(&c, s, d, RowMode::Auto).unwrap().h == u.eval_frobenius(d - m, &fq);
        }
        if !ok {
            failures.push(format!("q={q} s={s}"));
        }
        degs.push(format!("({q},{s}):{}", u.deg_theta().unwrap_or(0)));
    }
    Verdict::new(failures.is_empty(), format!("8 grid points, failures {failures:?}"))
        .with(format!("θ-degrees of H (reported only) {}", degs.join(" ")))
}

fn constant_case_sign() -> Verdict {
    let mut ok = true;
    let mut signs = Vec::new();
    for q in [2u32, 3, 4, 5] {
        let fq = field(q);
        let c = Carlitz::new(&fq);
        let h = h_universal(&fq, q as usize).unwrap();
        let k = h.to_mpoly(&fq).as_constant();
        let one = PolyA::one();
        let minus = one.neg(&fq);
        ok &= k.as_ref().is_some_and(|k| *k == one || *k == minus);
        // enumeration oracle: F_d(1;q) = Π_{q,d}·H for d = 1..3
        for d in 1..=3 {
            ok &= h_row(&c, q as usize, d, RowMode::Direct).unwrap().h == h.eval_frobenius(d - 1, &fq);
        }
        signs.push(format!("q={q}:{}", if k == Some(one) { "+1" } else { "-1" }));
    }
    let agree = signs.iter().all(|s| s.ends_with(H_Q_SIGN));
    Verdict::new(ok && agree, format!("resolved sign {H_Q_SIGN} ({})", signs.join(" ")))
}

fn two_q_minus_one_closed_form() -> Verdict {
    let mut signs = Vec::new();
    let mut ok = true;
    for q in [3u32, 4, 5] {
        let fq = field(q);
        let h = h_universal(&fq, 2 * q as usize - 1).unwrap();
        let ours = h.to_mpoly(&fq);
        let closed = h_two_q_minus_one(&fq).unwrap();
        let sign = if ours == closed {
            1
        } else if ours == closed.neg(&fq) {
            -1
        } else {
            0
        };
        let top = h.y_coeff(h.params.mu).to_mpoly(&fq);
        let lam = lambda_two_q_minus_one(&fq).unwrap();
        ok &= sign != 0 && (top == lam || top == lam.neg(&fq));
        signs.push(format!("q={q}:{sign:+}"));
    }
    Verdict::new(ok, format!("product form matches with global sign {}", signs.join(" ")))
        .with("top coefficient is e_q − θ, i.e. −(θ − e_q)")
}

fn leading_coefficient_limit() -> Verdict {
    let mut failures = Vec::new();
    let mut windows = Vec::new();
    let mut late = Vec::new();
    for (q, s) in GRID {
        let fq = field(q);
        let h = h_universal(&fq, s).unwrap();
        let p = h.params;
        if p.mu == 0 {
            continue;
        }
        let d0 = lambda_stable_from(&h);
        let rep = lambda_limit(&h, d0, d0 + 2, &fq);
        let want = h.y_coeff(p.mu).to_mpoly(&fq).neg(&fq);
        if !rep.as_ref().is_ok_and(|r| r.value == want && r.valuation_grows()) {
            failures.push(format!("q={q} s={s}"));
        }
        windows.push(format!("({q},{s}):{d0}..{}", d0 + 2));
        if d0 > p.m + 1 {
            late.push(format!("({q},{s}) needs d ≥ m+{}", d0 - p.m));
        }
    }
    let v = Verdict::new(
        failures.is_empty(),
        format!("λ = −(top Y-coefficient) on windows {}; failures {failures:?}", windows.join(" ")),
    );
    if late.is_empty() {
        v
    } else {
        v.with(format!("stabilisation starts later than m+1: {}", late.join(", ")))
    }
}

fn lower_coefficients() -> Verdict {
    let mut failures = Vec::new();
    let mut literal = Vec::new();
    for (q, s) in [(2u32, 3usize), (3, 5)] {
        let fq = field(q);
        let c = Carlitz::new(&fq);
        let h = h_universal(&fq, s).unwrap();
        let p = h.params;
        let (lo, hi) = (p.m + 1, p.m + 3);
        for r in 0..p.mu {
            if !lower_coeff_verify(&c, &h, r, lo, hi, GammaSide::Inverse).unwrap().valuation_grows() {
                failures.push(format!("q={q} s={s} r={r}"));
            }
            let direct = lower_coeff_verify(&c, &h, r, lo, hi, GammaSide::Direct).unwrap().valuation_grows();
            literal.push(format!("({q},{s},r={r}):{}", if direct { "grows" } else { "stalls" }));
        }
        let nu = nu_value(&c, &h, lo, hi, 2).unwrap();
        if !nu.agrees_minus() {
            failures.push(format!("q={q} s={s} ν"));
        }
        literal.push(format!("({q},{s}) ν with +Σt·λ: {}", if nu.agrees_plus() { "agrees" } else { "differs" }));
    }
    Verdict::new(failures.is_empty(), format!("Γ from f·g⁻¹, windows m+1..m+3, ν = 𝔻_(μ−1) − (Σt)λ; failures {failures:?}"))
        .with(format!("Γ from g·f⁻¹: {}", literal.join(" ")))
}

fn power_sums_from_h() -> Verdict {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (q, s) in GRID {
        let fq = field(q);
        let c = Carlitz::new(&fq);
        let h = h_universal(&fq, s).unwrap();
        let m = h.params.m;
        for sp in 0..s {
            for d in m - 1..=m + 2 {
                checked += 1;
                if power_sum_via_h(&c, &h, sp, d).unwrap() != power_sum(&c, &SumSpec { n: 1, s: sp, d }) {
                    failures.push(format!("q={q} s={s} s'={sp} d={d}"));
                }
            }
        }
    }
    for q in [2u32, 3, 4, 5] {
        let fq = field(q);
        let c = Carlitz::new(&fq);
        for sp in 0..=q as usize {
            for d in 1..=4usize {
                if sp == q as usize && d < 2 {
                    continue;
                }
                checked += 1;
                if small_power_sum(&c, sp, d).unwrap() != power_sum(&c, &SumSpec { n: 1, s: sp, d: d - 1 }) {
                    failures.push(format!("closed form q={q} s'={sp} d={d}"));
                }
            }
        }
    }
    Verdict::new(failures.is_empty(), format!("{checked} extractions and closed forms; failures {failures:?}"))
}

fn interpolation_crosscheck() -> Verdict {
    let mut failures = Vec::new();
    for q in [2u32, 3] {
        let c = Carlitz::new(&field(q));
        for d in 1..=3 {
            for s in 1..=5 {
                if !interp_crosscheck(&c, s, d).unwrap().all_pass() {
                    failures.push(format!("q={q} d={d} s={s}"));
                }
            }
        }
    }
    Verdict::new(failures.is_empty(), format!("30 (q,d,s); failures {failures:?}"))
}

fn per_prime_components() -> Verdict {
    let mut failures = Vec::new();
    let mut primes = 0;
    for (q, maxdeg) in [(2u32, 5usize), (3, 5), (4, 3), (5, 3)] {
        let fq = field(q);
        for s in [1usize, q as usize, 2 * q as usize - 1] {
            let h = (s > 1).then(|| h_universal(&fq, s).unwrap());
            for deg in 1..=maxdeg {
                for p in enumerate_irreducibles(deg, &fq) {
                    let ctx = QuotCtx::new(p, &fq).unwrap();
                    primes += 1;
                    let ok = component_identity_check(&ctx, s, h.as_ref()).unwrap()
                        && zeta_component(&ctx, 1, s).unwrap().is_unit;
                    if !ok {
                        failures.push(format!("q={q} s={s} P={}", ctx.modulus().emit(&fq)));
                    }
                }
            }
        }
    }
    let fq = field(3);
    let ctx = QuotCtx::new(poly(&[1, 0, 1], 4), &fq).unwrap();
    let t = MPoly::var(Var::T(1), 1).unwrap();
    let want = t.scale(&PolyA::theta(), &fq).add(&MPoly::constant(PolyA::constant(FqElem(2)), 1), &fq);
    let worked = zeta_component(&ctx, 1, 1).unwrap().value == want;
    Verdict::new(
        failures.is_empty() && worked,
        format!("{primes} (P,s) pairs; q=3 P=θ²+1 s=1 gives θt+2: {worked}; failures {failures:?}"),
    )
}

fn bernoulli_goss_congruences() -> Verdict {
    let mut failures = Vec::new();
    let mut literal = 0;
    let mut cells = 0;
    for q in [2u32, 3] {
        let fq = field(q);
        let bg = BgTable::new();
        let size = (q as u64).pow(4);
        for deg in 1..=4 {
            for p in enumerate_irreducibles(deg, &fq) {
                let ctx = QuotCtx::new(p, &fq).unwrap();
                let bound = (q as u64).pow(deg as u32);
                for n in 1..size.min(bound) {
                    for s in 0..=4usize {
                        if digit_sum(n, q) as usize <= s {
                            continue;
                        }
                        cells += 1;
                        let out = bg_congruence_check(&ctx, n, s, &bg).unwrap();
                        if !out.holds() {
                            failures.push(format!("q={q} P={} n={n} s={s}", ctx.modulus().emit(&fq)));
                        }
                        if !out.holds_literally() {
                            literal += 1;
                        }
                    }
                }
            }
        }
    }
    Verdict::new(failures.is_empty(), format!("{cells} cells; failures {failures:?}")).with(format!(
        "{literal} cells with q^deg P − 1 = n and s = 0 are congruent but nonzero (the sum contains BG(0;0) = 1)"
    ))
}

fn vanishing_scan() -> Verdict {
    let mut hard = Vec::new();
    let mut soft = Vec::new();
    let mut open_zero = 0;
    for (q, maxdeg) in [(2u32, 5usize), (3, 4)] {
        let fq = field(q);
        let rep = conjecture_scan(&fq, maxdeg, 30, 5).unwrap();
        for cell in rep.counterexamples() {
            hard.push(format!("q={q} P={} n={} s={}", cell.p.emit(&fq), cell.n, cell.s));
        }
        for cell in rep.findings() {
            if cell.clause == Clause::NonvanishingOpen && cell.zero {
                open_zero += 1;
            }
            if cell.outcome == Outcome::Candidate {
                soft.push(format!("q={q} P={} n={} s={} [{}]", cell.p.emit(&fq), cell.n, cell.s, cell.clause.tag()));
            }
        }
        soft.push(format!("q={q}: {} cells", rep.cells.len()));
    }
    Verdict::new(hard.is_empty(), format!("hard counterexamples {hard:?}; zeros in the nonvanishing region: {open_zero}"))
        .with(format!("soft findings {}", soft.join("; ")))
}

fn monic_product_sums() -> Verdict {
    let mut failures = Vec::new();
    for q in [2u32, 3] {
        let fq = field(q);
        for j in 0..=5usize {
            for s in 0..=10usize {
                let zero = monic_product_sum(&fq, j, s).is_zero();
                if zero != (j * (q as usize - 1) > s) {
                    failures.push(format!("q={q} j={j} s={s}"));
                }
            }
        }
    }
    Verdict::new(failures.is_empty(), format!("132 (q,j,s); failures {failures:?}"))
}

fn bernoulli_carlitz() -> Verdict {
    let mut failures = Vec::new();
    for q in [3u32, 4, 5] {
        let c = Carlitz::new(&field(q));
        for j in 1..=40usize {
            if j % (q as usize - 1) != 0 && !c.bc_number(j, j).unwrap().is_zero() {
                failures.push(format!("BC_{j} q={q}"));
            }
        }
    }
    let mut units = 0;
    for (q, ss) in [(2u32, vec![2usize, 3, 4, 5]), (3, vec![3, 5, 7])] {
        let fq = field(q);
        let c = Carlitz::new(&fq);
        for s in ss {
            for deg in 1..=4usize {
                if ((q as usize).pow(deg as u32)) < s {
                    continue;
                }
                for p in enumerate_irreducibles(deg, &fq) {
                    let ctx = QuotCtx::new(p, &fq).unwrap();
                    units += 1;
                    if !bc_unit_check(&c, &ctx, s).unwrap() {
                        failures.push(format!("unit q={q} s={s} P={}", ctx.modulus().emit(&fq)));
                    }
                }
            }
        }
    }
    Verdict::new(failures.is_empty(), format!("BC_j = 0 for j ≤ 40 off multiples of q−1; {units} unit checks; failures {failures:?}"))
}

fn poly(v: &[u8], q: u32) -> PolyA {
    PolyA::from_coeffs(v.iter().map(|&c| FqElem(c % q as u8)).collect())
}

fn run_property<S: Strategy>(name: &str, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Option<String> {
    let mut runner = TestRunner::new(Config { cases: PROPERTY_CASES, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).err().map(|e| format!("{name}: {e}"))
}

fn property_suites() -> Verdict {
    let small = || prop::collection::vec(any::<u8>(), 0..8);
    let mut failures: Vec<String> = Vec::new();

    failures.extend(run_property("ring laws in A", (small(), small(), small()), |(a, b, c)| {
        let fq = field(4);
        let (a, b, c) = (poly(&a, 4), poly(&b, 4), poly(&c, 4));
        prop_assert_eq!(a.mul(&b.add(&c, &fq), &fq), a.mul(&b, &fq).add(&a.mul(&c, &fq), &fq));
        prop_assert_eq!(a.mul(&b, &fq).mul(&c, &fq), a.mul(&b.mul(&c, &fq), &fq));
        if !b.is_zero() {
            let (qq, r) = a.divrem(&b, &fq).unwrap();
            prop_assert_eq!(qq.mul(&b, &fq).add(&r, &fq), a.clone());
            prop_assert_eq!(a.mul(&b, &fq).div_exact(&b, &fq).unwrap(), a.clone());
        }
        prop_assert_eq!(PolyA::parse(&a.emit(&fq), &fq).unwrap(), a);
        Ok(())
    }));

    failures.extend(run_property("field laws in K", (small(), small(), small(), small()), |(a, b, c, d)| {
        let fq = field(5);
        let frac = |n: &[u8], d: &[u8]| {
            let d = poly(d, 5);
            FracK::new(poly(n, 5), if d.is_zero() { PolyA::one() } else { d }, &fq).unwrap()
        };
        let (x, y) = (frac(&a, &b), frac(&c, &d));
        prop_assert_eq!(x.mul(&y.add(&x, &fq), &fq), x.mul(&y, &fq).add(&x.mul(&x, &fq), &fq));
        if !x.is_zero() {
            prop_assert_eq!(x.mul(&x.inv(&fq).unwrap(), &fq), FracK::one());
        }
        prop_assert_eq!(FracK::parse(&x.emit(&fq), &fq).unwrap(), x);
        Ok(())
    }));

    let terms = || prop::collection::vec((0u32..3, 0u32..3, 0u8..4, 0usize..4), 0..5);
    failures.extend(run_property("substitution is a ring map", (terms(), terms()), |(a, b)| {
        let fq = field(4);
        let build = |v: &[(u32, u32, u8, usize)]| {
            MPoly::from_terms(2, v.iter().map(|&(i, y, c, k)| (vec![i, 0, y, 0], PolyA::monomial(FqElem(c), k))), &fq)
        };
        let (a, b) = (build(&a), build(&b));
        let img = MPolyK::new(
            MPoly::var(Var::T(2), 2).unwrap().add(&MPoly::constant(PolyA::theta(), 2), &fq),
            poly(&[1, 1], 4),
            &fq,
        )
        .unwrap();
        let bind = [(Var::Y, img)];
        let lhs = a.mul(&b, &fq).substitute(&bind, &fq).unwrap();
        let rhs = a.substitute(&bind, &fq).unwrap().mul(&b.substitute(&bind, &fq).unwrap(), &fq);
        prop_assert_eq!(lhs, rhs);
        if !b.is_zero() {
            prop_assert_eq!(a.mul(&b, &fq).exact_div(&b, &fq).unwrap(), a.clone());
        }
        prop_assert_eq!(MPoly::parse(&a.emit(&fq), &fq).unwrap(), a.clone());
        let k = MPolyK::new(a, poly(&[1, 0, 1], 4), &fq).unwrap();
        prop_assert_eq!(MPolyK::parse(&k.emit(&fq), &fq).unwrap(), k);
        Ok(())
    }));

    failures.extend(run_property("E_i is F_q-linear", (0usize..4, 0usize..4, small(), small(), any::<u8>()), |(qi, i, x, y, k)| {
        let q = [2u32, 3, 4, 5][qi];
        let fq = field(q);
        let c = Carlitz::new(&fq);
        let e = c.e_poly(i, 0);
        let at = |v: &PolyA| e.eval_var(Var::Z, v, &fq).unwrap();
        let (x, y) = (poly(&x, q), poly(&y, q));
        prop_assert_eq!(at(&x.add(&y, &fq)), at(&x).add(&at(&y), &fq));
        let k = FqElem(k % q as u8);
        let scaled = at(&x).mul(&MPolyK::from_mpoly(MPoly::constant(PolyA::constant(k), 0)), &fq);
        prop_assert_eq!(at(&x.scale(k, &fq)), scaled);
        Ok(())
    }));

    failures.extend(run_property("E_i recursion and derivative", (0usize..4, 0usize..4), |(qi, i)| {
        let q = [2u32, 3, 4, 5][qi];
        let fq = field(q);
        let c = Carlitz::new(&fq);
        let e = c.e_poly(i, 0);
        let lhs = (1..q).fold(e.clone(), |acc, _| acc.mul(&e, &fq));
        let rhs = e.add(&MPolyK::from_mpoly(MPoly::constant(c.bracket(i + 1), 0)).mul(&c.e_poly(i + 1, 0), &fq), &fq);
        prop_assert_eq!(lhs, rhs);
        let lin = e.num().coeff_in(Var::Z, 1).unwrap().as_constant().unwrap();
        prop_assert_eq!(lin.mul(&c.l(i), &fq), e.den().clone());
        Ok(())
    }));

    failures.extend(run_property("generating-series coefficients", (2u32..4, 1usize..4, 1usize..4, 0u64..7), |(q, d, s, i)| {
        let fq = field(q);
        let c = Carlitz::new(&fq);
        let mut acc = MPoly::zero(s);
        for k in 0..(q as u64).pow(d as u32) {
            let a = PolyA::from_index(k, q);
            let coeffs: Vec<PolyA> = a.coeffs().iter().map(|&x| PolyA::constant(x)).collect();
            let mut term = MPoly::constant(a.pow(i, &fq), s);
            for j in 1..=s {
                term = term.mul(&MPoly::univariate(Var::T(j), &coeffs, s).unwrap(), &fq);
            }
            acc = acc.add(&term, &fq);
        }
        let f = harmonic_sum(&c, &SumSpec { n: -(i as i64), s, d }).unwrap();
        let want = if (s as u64 + i) % (q as u64 - 1) == 0 { f.neg(&fq) } else { MPolyK::zero(s) };
        prop_assert_eq!(MPolyK::from_mpoly(acc), want);
        Ok(())
    }));

    failures.extend(run_property("vanishing locus", (0usize..6, 0usize..3, 0usize..4, 0usize..5), |(case, off, rp, ip)| {
        let (q, s) = [(2u32, 2usize), (2, 3), (2, 4), (3, 3), (3, 5), (4, 4)][case];
        let m = (s - 1) / (q as usize - 1);
        let d_max = if q == 2 { 5 } else { 3 };
        let d = (m + 1 + off).min(d_max);
        let r = rp % (d - m);
        let fq = field(q);
        let c = Carlitz::new(&fq);
        let x = PolyA::monomial(FqElem::ONE, (q as usize).pow(r as u32));
        let f = harmonic_sum(&c, &SumSpec { n: 1, s, d }).unwrap().eval_var(Var::T(1 + ip % s), &x, &fq).unwrap();
        prop_assert!(f.is_zero());
        Ok(())
    }));

    failures.extend(run_property("H cache text round trip", 0usize..4, |case| {
        let (q, s) = [(2u32, 3usize), (2, 4), (3, 5), (4, 4)][case];
        let fq = field(q);
        let h = h_universal(&fq, s).unwrap();
        prop_assert_eq!(parse(&serialize(&h, &fq), &fq).unwrap(), h);
        Ok(())
    }));

    let pool = |n: usize| rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap();
    let fq = field(3);
    let scans: Vec<String> = [1, 4].iter().map(|&n| pool(n).install(|| conjecture_scan(&fq, 3, 20, 3).unwrap().to_tsv(&fq))).collect();
    if scans[0] != scans[1] {
        failures.push("scan report depends on thread count".into());
    }
    let hs: Vec<_> = [1, 4].iter().map(|&n| pool(n).install(|| h_universal(&fq, 5).unwrap())).collect();
    if hs[0] != hs[1] {
        failures.push("H depends on thread count".into());
    }
    let e3 = elem_sym(3, 3, &fq).unwrap();
    if MPoly::parse(&e3.emit(&fq), &fq).unwrap() != e3 {
        failures.push("elementary symmetric round trip".into());
    }

    Verdict::new(failures.is_empty(), format!("9 suites × {PROPERTY_CASES} cases plus thread-count determinism; failures {failures:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 14] = [
        ("level-one closed form", level_one_closed_form),
        ("interpolation polynomial on the grid", interpolation_polynomial_grid),
        ("constant case and its sign", constant_case_sign),
        ("s = 2q − 1 product form", two_q_minus_one_closed_form),
        ("leading coefficient as a limit", leading_coefficient_limit),
        ("lower coefficients and ν", lower_coefficients),
        ("power sums extracted from H", power_sums_from_h),
        ("interpolation cross-check", interpolation_crosscheck),
        ("per-prime component identity", per_prime_components),
        ("Bernoulli–Goss congruences", bernoulli_goss_congruences),
        ("vanishing scan", vanishing_scan),
        ("monic product sums vanish iff j(q−1) > s", monic_product_sums),
        ("Bernoulli–Carlitz numbers", bernoulli_carlitz),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let v = run();
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag} {name} [{:.1}s]: {}", i + 1, t.elapsed().as_secs_f64(), v.detail);
        for f in &v.findings {
            println!("             finding: {f}");
        }
        failed += usize::from(!v.pass);
    }
    println!("acceptance: {} of 14 criteria pass", 14 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
