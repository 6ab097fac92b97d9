use std::fmt::Write as _;
use std::time::Instant;

use harmsum_core::cache::{HCache, Stored, H_Q_SIGN};
use harmsum_core::finzeta::{
    bc_unit_check, bg_congruence_check, component_identity_check, conjecture_scan, zeta_component, BgTable, Outcome,
};
use harmsum_core::hpoly::closed::{h_two_q_minus_one, lambda_two_q_minus_one};
use harmsum_core::hpoly::rows::direct_cost;
use harmsum_core::hpoly::{h_interpolate, h_universal, interp_crosscheck, power_sum_via_h};
use harmsum_core::sums::{power_sum, SumSpec};
use harmsum_core::tate::{lambda_limit, lambda_stable_from, lower_coeff_verify, nu_value, period_identity_check, GammaSide};
use harmsum_core::{digit_sum, enumerate_irreducibles, Carlitz, Error, Fq, HParams, HPolynomial, QuotCtx, RowMode};

use crate::bundle::{ResultBundle, Status};
use crate::config::RunConfig;
use crate::CliError;

/// Extra terms summed past d in the ν tail.
const NU_EXTRA: usize = 2;

fn binom(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn powf(q: u32, d: usize) -> f64 {
    (q as f64).powi(d as i32)
}

/// One H row: full enumeration, or the coset sums of the top block.
fn row_cost(p: &HParams, d: usize) -> f64 {
    direct_cost(p.q, p.s, d).min(powf(p.q, p.m + d) * d as f64)
}

/// Obtaining H_s: the cached copy is re-verified on a holdout row.
fn h_cost(p: &HParams) -> f64 {
    row_cost(p, p.m + p.mu + 1)
}

fn interp_cost(p: &HParams) -> f64 {
    (p.m..=p.m + p.mu + 2).map(|d| row_cost(p, d)).sum()
}

fn enum_cost(q: u32, s: usize, d: usize) -> f64 {
    powf(q, d) * binom((d + s) as u64, s as u64)
}

fn default_maxdeg(q: u32) -> usize {
    if q <= 3 {
        5
    } else {
        3
    }
}

fn primes_cost(q: u32, maxdeg: usize, per_prime: impl Fn(usize) -> f64) -> f64 {
    (1..=maxdeg).map(|deg| powf(q, deg) / deg as f64 * per_prime(deg)).sum()
}

struct Ctx<'a> {
    cfg: &'a RunConfig,
    fq: Fq,
    c: Carlitz,
}

impl Ctx<'_> {
    fn q(&self) -> u32 {
        self.fq.q()
    }

    fn params(&self, s: usize) -> Result<HParams, CliError> {
        let p = HParams::new(self.q(), s).map_err(|e| CliError::Usage(format!("s = {s}: {e}")))?;
        if p.m == 0 {
            return Err(CliError::Usage("s = 1 has no polynomial H".into()));
        }
        Ok(p)
    }

    fn s_list(&self) -> Result<Vec<HParams>, CliError> {
        if self.cfg.s.is_empty() {
            return Err(CliError::Usage(format!("{} needs --s", self.cfg.command)));
        }
        self.cfg.s.iter().map(|&s| self.params(s)).collect()
    }

    fn window(&self, lo: usize, hi: usize) -> (usize, usize) {
        let lo = self.cfg.d_lo.unwrap_or(lo);
        (lo, self.cfg.d_hi.unwrap_or(hi.max(lo)))
    }

    fn maxdeg(&self) -> usize {
        self.cfg.maxdeg.unwrap_or(default_maxdeg(self.q()))
    }

    fn guard(&self, units: f64) -> Result<(), CliError> {
        if units > self.cfg.budget && !self.cfg.force {
            return Err(CliError::Budget { units, budget: self.cfg.budget });
        }
        Ok(())
    }

    /// Cached H_s if present and sound, otherwise built by the universal route and stored.
    fn obtain_h(&self, s: usize, b: &mut ResultBundle) -> harmsum_core::Result<HPolynomial> {
        let cache = HCache::new(&self.cfg.cache_dir);
        match cache.load(&self.c, s) {
            Ok(Some(h)) => return Ok(h),
            Ok(None) => {}
            Err(e @ Error::CacheConflict(_)) if !self.cfg.force => return Err(e),
            Err(_) => {}
        }
        let h = h_universal(&self.fq, s)?;
        cache.store(&h, &self.fq, self.cfg.force)?;
        b.note(format!("H_{s} built by the universal route and cached"));
        Ok(h)
    }
}

fn at(q: u32, s: usize) -> String {
    format!("q={q} s={s}")
}

/// Library failures that contradict a proven statement count as hard failures;
/// anything else aborts the command.
fn fail_or_abort(b: &mut ResultBundle, name: &str, where_: String, e: Error) -> Result<(), CliError> {
    match e {
        Error::NonExactDivision(_)
        | Error::NonIntegralResult(_)
        | Error::RouteMismatch(_)
        | Error::NotStabilized(_)
        | Error::CacheConflict(_) => {
            b.check(Status::Fail, name, where_, e.to_string());
            Ok(())
        }
        Error::PrecisionExceeded(_) => {
            b.incomplete = Some(format!("{where_}: {e}"));
            Ok(())
        }
        e => Err(CliError::Core(e)),
    }
}

pub fn dispatch(cfg: &RunConfig) -> Result<ResultBundle, CliError> {
    let fq = cfg.field()?;
    let ctx = Ctx { cfg, c: Carlitz::new(&fq), fq };
    let mut b = ResultBundle::new(cfg);
    let mut words = cfg.command.split_whitespace();
    let started = Instant::now();
    match (words.next(), words.next()) {
        (Some("compute-h"), None) => compute_h(&ctx, &mut b)?,
        (Some("verify"), Some(which)) => match which {
            "h-grid" => h_grid(&ctx, &mut b)?,
            "two-q-minus-one" => two_q_minus_one(&ctx, &mut b)?,
            "period-identity" => period_identity(&ctx, &mut b)?,
            "lambda-limit" => lambda(&ctx, &mut b)?,
            "lower-coeffs" => lower_coeffs(&ctx, &mut b)?,
            "nu" => nu(&ctx, &mut b)?,
            "interp-crosscheck" => crosscheck(&ctx, &mut b)?,
            "power-sums" => power_sums(&ctx, &mut b)?,
            other => return Err(CliError::Usage(format!("unknown verify check {other:?}"))),
        },
        (Some("scan"), Some(which)) => match which {
            "conjecture" => scan_conjecture(&ctx, &mut b)?,
            "bg-congruence" => scan_congruence(&ctx, &mut b)?,
            "components" => scan_components(&ctx, &mut b)?,
            "bc-units" => scan_bc_units(&ctx, &mut b)?,
            other => return Err(CliError::Usage(format!("unknown scan {other:?}"))),
        },
        _ => return Err(CliError::Usage(format!("unknown command {:?}", cfg.command))),
    }
    b.timing.push((cfg.command.clone(), started.elapsed()));
    Ok(b)
}

fn show<T: ToString>(v: Option<T>) -> String {
    v.map_or("-".into(), |v| v.to_string())
}

const DEGREE_HEADER: &str = "q\tf\ts\tm\tmu\tdeg_Y\tdeg_t\tdeg_theta\n";

fn degree_row(out: &mut String, fq: &Fq, h: &HPolynomial) {
    let p = h.params;
    let _ = writeln!(
        out,
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        p.q,
        fq.modulus_string(),
        p.s,
        p.m,
        p.mu,
        show(h.deg_y()),
        show(h.deg_t()),
        show(h.deg_theta()),
    );
}

/// Route agreement and degree claims for one s; returns the universal H when it could be built.
fn build_and_compare(ctx: &Ctx, p: &HParams, b: &mut ResultBundle) -> Result<Option<HPolynomial>, CliError> {
    let (q, s) = (p.q, p.s);
    let h = match h_universal(&ctx.fq, s) {
        Ok(h) => h,
        Err(e) => {
            fail_or_abort(b, "universal-route", at(q, s), e)?;
            return Ok(None);
        }
    };
    match h_interpolate(&ctx.c, s, RowMode::Auto) {
        Ok(v) => b.pass_if(v.slices == h.slices, "routes-agree", at(q, s), "universal = interpolated, holdouts pass"),
        Err(e) => fail_or_abort(b, "routes-agree", at(q, s), e)?,
    }
    b.pass_if(h.deg_y() == Some(p.mu), "deg-Y", at(q, s), format!("deg_Y = {}, μ = {}", show(h.deg_y()), p.mu));
    let want_t = p.m as u32 - 1;
    b.pass_if(h.deg_t() == Some(want_t), "deg-t", at(q, s), format!("deg_t = {}, m − 1 = {want_t}", show(h.deg_t())));
    Ok(Some(h))
}

fn compute_h(ctx: &Ctx, b: &mut ResultBundle) -> Result<(), CliError> {
    let ps = ctx.s_list()?;
    ctx.guard(ps.iter().map(interp_cost).sum())?;
    let cache = HCache::new(&ctx.cfg.cache_dir);
    let mut table = String::from(DEGREE_HEADER.trim_end());
    table.push_str("\tcache\n");
    for p in &ps {
        let Some(h) = build_and_compare(ctx, p, b)? else { continue };
        if p.mu == 0 {
            let k = h.to_mpoly(&ctx.fq).as_constant();
            let sign = if k.as_ref().is_some_and(|k| k.is_one()) { "+1" } else { "-1" };
            b.pass_if(sign == H_Q_SIGN, "constant-sign", at(p.q, p.s), format!("H_{} = {sign}", p.s));
        }
        let stored = match cache.store(&h, &ctx.fq, ctx.cfg.force) {
            Ok(Stored::Written) => "written",
            Ok(Stored::Unchanged) => "unchanged",
            Ok(Stored::Overwritten) => "overwritten",
            Err(e) => {
                fail_or_abort(b, "cache", at(p.q, p.s), e)?;
                "conflict"
            }
        };
        let mut row = String::new();
        degree_row(&mut row, &ctx.fq, &h);
        table.push_str(row.trim_end());
        let _ = writeln!(table, "\t{stored}");
        b.artifact(format!("h_q{}_s{}.txt", p.q, p.s), h.emit(&ctx.fq));
    }
    b.note("deg_theta is reported, not asserted");
    b.artifact("h_degrees.tsv", table);
    Ok(())
}

fn h_grid(ctx: &Ctx, b: &mut ResultBundle) -> Result<(), CliError> {
    let ps = ctx.s_list()?;
    ctx.guard(ps.iter().map(interp_cost).sum())?;
    let mut table = String::from(DEGREE_HEADER);
    for p in &ps {
        let Some(h) = build_and_compare(ctx, p, b)? else { continue };
        degree_row(&mut table, &ctx.fq, &h);
        if p.mu > 0 {
            let d0 = lambda_stable_from(&h);
            let want = h.y_coeff(p.mu).to_mpoly(&ctx.fq).neg(&ctx.fq);
            match lambda_limit(&h, d0, d0 + 2, &ctx.fq) {
                Ok(r) => b.pass_if(
                    r.value == want && r.valuation_grows(),
                    "leading-coefficient",
                    at(p.q, p.s),
                    format!("λ = −(Y^μ coefficient) on d = {d0}..{}", d0 + 2),
                ),
                Err(e) => fail_or_abort(b, "leading-coefficient", at(p.q, p.s), e)?,
            }
        }
    }
    b.artifact("h_degrees.tsv", table);
    Ok(())
}

fn two_q_minus_one(ctx: &Ctx, b: &mut ResultBundle) -> Result<(), CliError> {
    let q = ctx.q();
    if q == 2 {
        return Err(CliError::Usage("the product form needs q > 2".into()));
    }
    let p = ctx.params(2 * q as usize - 1)?;
    ctx.guard(h_cost(&p))?;
    let fq = &ctx.fq;
    let h = match ctx.obtain_h(p.s, b) {
        Ok(h) => h,
        Err(e) => return fail_or_abort(b, "product-form", at(q, p.s), e),
    };
    let ours = h.to_mpoly(fq);
    let closed = h_two_q_minus_one(fq)?;
    let sign = if ours == closed {
        "+1"
    } else if ours == closed.neg(fq) {
        "-1"
    } else {
        "none"
    };
    b.pass_if(sign == "+1", "product-form", at(q, p.s), format!("H equals the product form with sign {sign}"));
    let top = h.y_coeff(p.mu).to_mpoly(fq);
    let lam = lambda_two_q_minus_one(fq)?;
    let rel = if top == lam.neg(fq) { "−(θ − e_q)" } else if top == lam { "θ − e_q" } else { "other" };
    b.pass_if(rel != "other", "top-coefficient", at(q, p.s), format!("Y^μ coefficient = {rel}"));
    b.artifact(format!("h_q{q}_s{}.txt", p.s), h.emit(fq));
    Ok(())
}

fn period_identity(ctx: &Ctx, b: &mut ResultBundle) -> Result<(), CliError> {
    let ps = ctx.s_list()?;
    let windows: Vec<(usize, usize)> = ps.iter().map(|p| ctx.window(p.m.max(1), p.m + 2)).collect();
    ctx.guard(ps.iter().zip(&windows).map(|(p, &(lo, hi))| (lo..=hi).map(|d| powf(p.q, d) * p.s as f64).sum::<f64>()).sum())?;
    for (p, (lo, hi)) in ps.iter().zip(windows) {
        for d in lo..=hi {
            let where_ = format!("q={} s={} d={d}", p.q, p.s);
            match period_identity_check(&ctx.c, p.s, d) {
                Ok(ok) => b.pass_if(ok, "period-identity", where_, "exact in K[t]"),
                Err(e) => fail_or_abort(b, "period-identity", where_, e)?,
            }
        }
    }
    Ok(())
}

fn lambda(ctx: &Ctx, b: &mut ResultBundle) -> Result<(), CliError> {
    let ps = ctx.s_list()?;
    ctx.guard(ps.iter().map(h_cost).sum())?;
    let fq = &ctx.fq;
    let mut report = String::new();
    for p in &ps {
        if p.mu == 0 {
            b.note(format!("{}: μ = 0, nothing to stabilise", at(p.q, p.s)));
            continue;
        }
        let h = match ctx.obtain_h(p.s, b) {
            Ok(h) => h,
            Err(e) => {
                fail_or_abort(b, "lambda-limit", at(p.q, p.s), e)?;
                continue;
            }
        };
        let d0 = lambda_stable_from(&h);
        let (lo, hi) = ctx.window(d0, d0 + 2);
        let top = h.y_coeff(p.mu).to_mpoly(fq);
        match lambda_limit(&h, lo, hi, fq) {
            Ok(r) => {
                let sign = if r.value == top.neg(fq) {
                    "−top"
                } else if r.value == top {
                    "+top"
                } else {
                    "neither"
                };
                b.pass_if(
                    sign == "−top" && r.valuation_grows(),
                    "lambda-limit",
                    format!("{} d={lo}..{hi}", at(p.q, p.s)),
                    format!("limit = {sign}; residual tops {:?}", r.residual_tops.iter().map(|x| x.1).collect::<Vec<_>>()),
                );
                let _ = writeln!(report, "q={} s={} window={lo}..{hi} sign={sign}", p.q, p.s);
                let _ = writeln!(report, "lambda={}", r.value.emit(fq));
            }
            Err(e) => fail_or_abort(b, "lambda-limit", format!("{} d={lo}..{hi}", at(p.q, p.s)), e)?,
        }
        if d0 > p.m + 1 {
            b.note(format!("{}: the polynomial part settles from d = {d0} = m + {}", at(p.q, p.s), d0 - p.m));
        }
    }
    b.artifact("lambda.txt", report);
    Ok(())
}

fn needs_mu(p: &HParams, b: &mut ResultBundle) -> bool {
    if p.mu == 0 {
        b.note(format!("{}: μ = 0, no lower coefficients", at(p.q, p.s)));
    }
    p.mu > 0
}

fn lower_coeffs(ctx: &Ctx, b: &mut ResultBundle) -> Result<(), CliError> {
    let ps = ctx.s_list()?;
    let windows: Vec<(usize, usize)> = ps.iter().map(|p| ctx.window(p.m + 1, p.m + 3)).collect();
    ctx.guard(
        ps.iter()
            .zip(&windows)
            .map(|(p, &(lo, hi))| h_cost(p) + 2.0 * p.mu as f64 * (lo..=hi).map(|d| row_cost(p, d)).sum::<f64>())
            .sum(),
    )?;
    for (p, (lo, hi)) in ps.iter().zip(windows) {
        if !needs_mu(p, b) {
            continue;
        }
        let h = match ctx.obtain_h(p.s, b) {
            Ok(h) => h,
            Err(e) => {
                fail_or_abort(b, "lower-coeffs", at(p.q, p.s), e)?;
                continue;
            }
        };
        for r in 0..p.mu {
            let where_ = format!("{} r={r} d={lo}..{hi}", at(p.q, p.s));
            match lower_coeff_verify(&ctx.c, &h, r, lo, hi, GammaSide::Inverse) {
                Ok(rep) => b.pass_if(
                    rep.valuation_grows(),
                    "lower-coeffs",
                    where_.clone(),
                    format!("residual tops {:?}", rep.residual_tops.iter().map(|x| x.1).collect::<Vec<_>>()),
                ),
                Err(e) => fail_or_abort(b, "lower-coeffs", where_.clone(), e)?,
            }
            if let Ok(rep) = lower_coeff_verify(&ctx.c, &h, r, lo, hi, GammaSide::Direct) {
                let verdict = if rep.valuation_grows() { "converges" } else { "does not converge" };
                b.note(format!("{where_}: with Γ read as g·f⁻¹ the residual {verdict}"));
            }
        }
    }
    Ok(())
}

fn nu(ctx: &Ctx, b: &mut ResultBundle) -> Result<(), CliError> {
    let ps = ctx.s_list()?;
    let windows: Vec<(usize, usize)> = ps.iter().map(|p| ctx.window(p.m + 1, p.m + 3)).collect();
    ctx.guard(
        ps.iter()
            .zip(&windows)
            .map(|(p, &(lo, hi))| {
                h_cost(p) + (lo..=hi).map(|d| row_cost(p, d) + row_cost(p, d + NU_EXTRA + 1)).sum::<f64>()
            })
            .sum(),
    )?;
    let mut report = String::new();
    for (p, (lo, hi)) in ps.iter().zip(windows) {
        if !needs_mu(p, b) {
            continue;
        }
        let where_ = format!("{} d={lo}..{hi}", at(p.q, p.s));
        let h = match ctx.obtain_h(p.s, b) {
            Ok(h) => h,
            Err(e) => {
                fail_or_abort(b, "nu", where_, e)?;
                continue;
            }
        };
        match nu_value(&ctx.c, &h, lo, hi, NU_EXTRA) {
            Ok(rep) => {
                b.pass_if(rep.agrees_minus(), "nu", where_.clone(), "tail limit = 𝔻_(μ−1) − (Σt)λ");
                if rep.agrees_plus() {
                    b.note(format!("{where_}: also equal to 𝔻_(μ−1) + (Σt)λ"));
                }
                let _ = writeln!(report, "q={} s={} window={lo}..{hi}", p.q, p.s);
                let _ = writeln!(report, "nu={}", rep.limit.value.emit(&ctx.fq));
            }
            Err(e) => fail_or_abort(b, "nu", where_, e)?,
        }
    }
    b.artifact("nu.txt", report);
    Ok(())
}

fn crosscheck(ctx: &Ctx, b: &mut ResultBundle) -> Result<(), CliError> {
    if ctx.cfg.s.is_empty() {
        return Err(CliError::Usage("verify interp-crosscheck needs --s".into()));
    }
    let (lo, hi) = ctx.window(1, 3);
    let q = ctx.q();
    ctx.guard(ctx.cfg.s.iter().map(|&s| (lo..=hi).map(|d| enum_cost(q, s, d)).sum::<f64>()).sum())?;
    for &s in &ctx.cfg.s {
        for d in lo..=hi {
            let where_ = format!("q={q} s={s} d={d}");
            match interp_crosscheck(&ctx.c, s, d) {
                Ok(r) => b.pass_if(
                    r.all_pass(),
                    "interp-crosscheck",
                    where_,
                    format!("interpolates={} divisible={} vanishing={:?}", r.interpolates, r.divisible, r.z_zero),
                ),
                Err(e) => fail_or_abort(b, "interp-crosscheck", where_, e)?,
            }
        }
    }
    Ok(())
}

fn power_sums(ctx: &Ctx, b: &mut ResultBundle) -> Result<(), CliError> {
    let ps = ctx.s_list()?;
    let windows: Vec<(usize, usize)> = ps.iter().map(|p| ctx.window(p.m - 1, p.m + 2)).collect();
    ctx.guard(
        ps.iter()
            .zip(&windows)
            .map(|(p, &(lo, hi))| {
                h_cost(p) + (0..p.s).map(|sp| (lo..=hi).map(|d| enum_cost(p.q, sp, d)).sum::<f64>()).sum::<f64>()
            })
            .sum(),
    )?;
    for (p, (lo, hi)) in ps.iter().zip(windows) {
        let h = match ctx.obtain_h(p.s, b) {
            Ok(h) => h,
            Err(e) => {
                fail_or_abort(b, "power-sums", at(p.q, p.s), e)?;
                continue;
            }
        };
        for sp in 0..p.s {
            for d in lo..=hi {
                let where_ = format!("{} s'={sp} d={d}", at(p.q, p.s));
                match power_sum_via_h(&ctx.c, &h, sp, d) {
                    Ok(v) => b.pass_if(
                        v == power_sum(&ctx.c, &SumSpec { n: 1, s: sp, d }),
                        "power-sums",
                        where_,
                        "extraction = enumeration",
                    ),
                    Err(e) => fail_or_abort(b, "power-sums", where_, e)?,
                }
            }
        }
    }
    Ok(())
}

fn primes(ctx: &Ctx, maxdeg: usize) -> Result<Vec<QuotCtx>, CliError> {
    (1..=maxdeg)
        .flat_map(|d| enumerate_irreducibles(d, &ctx.fq))
        .map(|p| QuotCtx::new(p, &ctx.fq).map_err(CliError::from))
        .collect()
}

fn scan_conjecture(ctx: &Ctx, b: &mut ResultBundle) -> Result<(), CliError> {
    let q = ctx.q();
    let maxdeg = ctx.maxdeg();
    let n_max = ctx.cfg.n_max.unwrap_or(30);
    let s_max = ctx.cfg.s_max.unwrap_or(5);
    ctx.guard(primes_cost(q, maxdeg, |deg| powf(q, deg) * (n_max * (s_max as u64 + 1)) as f64))?;
    let rep = conjecture_scan(&ctx.fq, maxdeg, n_max, s_max)?;
    let fq = &ctx.fq;
    let cells = |c: &harmsum_core::finzeta::ScanCell| format!("q={q} P={} n={} s={}", c.p.emit(fq), c.n, c.s);
    for c in rep.counterexamples() {
        b.check(Status::Fail, "proven-clause", cells(c), format!("{} value={}", c.clause.tag(), c.value.as_deref().unwrap_or("")));
    }
    for c in rep.findings() {
        let kind = if c.outcome == Outcome::SmallPrime { "small-prime" } else { "candidate" };
        b.check(Status::Finding, kind, cells(c), format!("{} value={}", c.clause.tag(), c.value.as_deref().unwrap_or("")));
    }
    b.pass_if(rep.counterexamples().is_empty(), "scan", format!("q={q} maxdeg={maxdeg}"), format!("{} cells", rep.cells.len()));
    b.artifact("scan.tsv", rep.to_tsv(fq));
    Ok(())
}

fn scan_congruence(ctx: &Ctx, b: &mut ResultBundle) -> Result<(), CliError> {
    let q = ctx.q();
    let maxdeg = ctx.maxdeg();
    let n_max = ctx.cfg.n_max.unwrap_or((q as u64).pow(maxdeg as u32) - 1);
    let s_max = ctx.cfg.s_max.unwrap_or(4);
    ctx.guard(primes_cost(q, maxdeg, |deg| powf(q, deg) * (n_max.min((q as u64).pow(deg as u32)) * (s_max as u64 + 1)) as f64))?;
    let bg = BgTable::new();
    let fq = &ctx.fq;
    let mut table = String::from("P\tn\ts\tN\tcongruent\tzero_expected\tzero\n");
    let (mut cells, mut literal) = (0usize, 0usize);
    for p in primes(ctx, maxdeg)? {
        let size = (q as u64).pow(p.deg() as u32);
        for n in 1..=n_max.min(size - 1) {
            for s in 0..=s_max {
                if digit_sum(n, q) as usize <= s {
                    continue;
                }
                let where_ = format!("q={q} P={} n={n} s={s}", p.modulus().emit(fq));
                let out = match bg_congruence_check(&p, n, s, &bg) {
                    Ok(o) => o,
                    Err(e) => {
                        fail_or_abort(b, "bg-congruence", where_, e)?;
                        continue;
                    }
                };
                cells += 1;
                let _ = writeln!(
                    table,
                    "{}\t{n}\t{s}\t{}\t{}\t{}\t{}",
                    p.modulus().emit(fq),
                    out.bg_exponent,
                    out.congruent,
                    out.zero_expected,
                    out.zero
                );
                if !out.holds() {
                    b.check(Status::Fail, "bg-congruence", where_, format!("{out:?}"));
                } else if !out.holds_literally() {
                    literal += 1;
                    b.check(Status::Finding, "bg-zero-at-N0", where_, "congruent; nonzero because BG(0;0) = 1");
                }
            }
        }
    }
    b.pass_if(
        b.worst() != Status::Fail,
        "bg-congruence",
        format!("q={q} maxdeg={maxdeg}"),
        format!("{cells} cells, {literal} with N = 0"),
    );
    b.artifact("congruences.tsv", table);
    Ok(())
}

fn scan_components(ctx: &Ctx, b: &mut ResultBundle) -> Result<(), CliError> {
    let q = ctx.q();
    if ctx.cfg.s.is_empty() {
        return Err(CliError::Usage("scan components needs --s".into()));
    }
    let mut hs = Vec::new();
    for &s in &ctx.cfg.s {
        hs.push(if s == 1 { None } else { Some(ctx.params(s)?) });
    }
    let maxdeg = ctx.maxdeg();
    ctx.guard(
        hs.iter().zip(&ctx.cfg.s).map(|(p, &s)| p.as_ref().map_or(0.0, h_cost) + primes_cost(q, maxdeg, |deg| enum_cost(q, s, deg))).sum(),
    )?;
    let fq = &ctx.fq;
    let primes = primes(ctx, maxdeg)?;
    let mut table = String::from("P\ts\tvalue\n");
    for (p, &s) in hs.iter().zip(&ctx.cfg.s) {
        let h = match p {
            Some(_) => match ctx.obtain_h(s, b) {
                Ok(h) => Some(h),
                Err(e) => {
                    fail_or_abort(b, "components", at(q, s), e)?;
                    continue;
                }
            },
            None => None,
        };
        for pr in &primes {
            let where_ = format!("q={q} s={s} P={}", pr.modulus().emit(fq));
            let ident = component_identity_check(pr, s, h.as_ref());
            let z = zeta_component(pr, 1, s);
            match (ident, z) {
                (Ok(ok), Ok(z)) => {
                    b.pass_if(ok, "component-identity", where_.clone(), "Z(1;s)_P from H");
                    b.pass_if(z.is_unit, "component-unit", where_, "nonzero and invertible");
                    let _ = writeln!(table, "{}\t{s}\t{}", pr.modulus().emit(fq), z.value.emit(fq));
                }
                (Err(e), _) | (_, Err(e)) => fail_or_abort(b, "components", where_, e)?,
            }
        }
    }
    b.artifact("components.tsv", table);
    Ok(())
}

fn scan_bc_units(ctx: &Ctx, b: &mut ResultBundle) -> Result<(), CliError> {
    let q = ctx.q();
    if ctx.cfg.s.is_empty() {
        return Err(CliError::Usage("scan bc-units needs --s".into()));
    }
    for &s in &ctx.cfg.s {
        if s <= 1 {
            return Err(CliError::Usage("scan bc-units needs s > 1".into()));
        }
        ctx.params(s)?;
    }
    let maxdeg = ctx.maxdeg();
    ctx.guard(ctx.cfg.s.len() as f64 * primes_cost(q, maxdeg, |deg| powf(q, deg) * (deg * deg) as f64))?;
    let fq = &ctx.fq;
    for &s in &ctx.cfg.s {
        for pr in primes(ctx, maxdeg)? {
            if (q as u64).pow(pr.deg() as u32) < s as u64 {
                continue;
            }
            let where_ = format!("q={q} s={s} P={}", pr.modulus().emit(fq));
            match bc_unit_check(&ctx.c, &pr, s) {
                Ok(ok) => b.pass_if(ok, "bc-unit", where_, "BC_(q^deg P − s) is a unit mod P"),
                Err(e) => fail_or_abort(b, "bc-unit", where_, e)?,
            }
        }
    }
    Ok(())
}
