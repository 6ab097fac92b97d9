use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use harmsum_core::hpoly::h_universal;
use harmsum_core::tate::{
    gamma_poly, gamma_series, lambda_limit, lambda_stable_from, period_identity_check, GammaSeries, GammaSide, TruncLaurent,
};
use harmsum_core::{Carlitz, Fq, FqElem, HParams, MPoly, PolyA, Var};
use proptest::prelude::*;

const GRID: [(u32, usize); 8] = [(2, 2), (2, 3), (2, 4), (3, 3), (3, 5), (4, 4), (5, 5), (5, 9)];
const WITH_MU: [(u32, usize); 4] = [(2, 3), (2, 4), (3, 5), (5, 9)];

fn build(terms: &[(u8, u8, u8)], fq: &Fq) -> MPoly {
    let q = fq.q() as u8;
    MPoly::from_terms(
        2,
        terms.iter().map(|&(a, b, c)| {
            let coeff = PolyA::from_coeffs(vec![FqElem(c % q), FqElem((c / 7) % q), FqElem((a ^ c) % q)]);
            (vec![a as u32 % 3, b as u32 % 3, 0, 0], coeff.shift((b % 4) as usize))
        }),
        fq,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn truncated_product_is_exact_above_floor(
        a in prop::collection::vec(any::<(u8, u8, u8)>(), 0..5),
        b in prop::collection::vec(any::<(u8, u8, u8)>(), 0..5),
        sa in -6i64..3,
        sb in -6i64..3,
        floor in -12i64..2,
    ) {
        let fq = Fq::with_order(3).unwrap();
        let (a, b) = (build(&a, &fq), build(&b, &fq));
        let x = TruncLaurent::from_mpoly(&a, sa).unwrap().truncate(floor);
        let y = TruncLaurent::from_mpoly(&b, sb).unwrap().truncate(floor);
        let z = x.mul(&y, &fq);
        let exact = TruncLaurent::from_mpoly(&a.mul(&b, &fq), sa + sb).unwrap();
        let lo = z.floor().unwrap_or(sa + sb);
        for e in lo..=sa + sb + 12 {
            prop_assert_eq!(z.theta_coeff(e, &fq).unwrap(), exact.theta_coeff(e, &fq).unwrap(), "e={}", e);
        }
        if let Some(f) = z.floor() {
            prop_assert!(z.theta_coeff(f - 1, &fq).is_err());
        }
    }

    #[test]
    fn gamma_polys_are_monic_of_degree_mu_minus_r(case in 0usize..4, r_pick in 0usize..8, inverse in any::<bool>()) {
        let (q, s) = WITH_MU[case];
        let side = if inverse { GammaSide::Inverse } else { GammaSide::Direct };
        let series = series(q, s, side);
        let fq = Fq::with_order(q).unwrap();
        let mu = HParams::new(q, s).unwrap().mu;
        let r = r_pick % (mu + 1);
        let g = gamma_poly(&series, mu, r, &fq).unwrap();
        let deg = (mu - r) as u32;
        prop_assert_eq!(g.deg_in(Var::Y).unwrap(), Some(deg));
        prop_assert_eq!(g.coeff_in(Var::Y, deg).unwrap(), MPoly::one(s));
    }
}

fn series(q: u32, s: usize, side: GammaSide) -> GammaSeries {
    static MEMO: OnceLock<Mutex<HashMap<(u32, usize, bool), GammaSeries>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    let key = (q, s, side == GammaSide::Inverse);
    if let Some(v) = memo.lock().unwrap().get(&key) {
        return v.clone();
    }
    let fq = Fq::with_order(q).unwrap();
    let mu = HParams::new(q, s).unwrap().mu;
    let v = gamma_series(&fq, s, mu, side).unwrap();
    memo.lock().unwrap().insert(key, v.clone());
    v
}

#[test]
fn lambda_window_independence() {
    for (q, s) in WITH_MU {
        let fq = Fq::with_order(q).unwrap();
        let h = h_universal(&fq, s).unwrap();
        let p = h.params;
        let d0 = lambda_stable_from(&h);
        let want = h.y_coeff(p.mu).to_mpoly(&fq).neg(&fq);
        for lo in d0..d0 + 2 {
            let rep = lambda_limit(&h, lo, lo + 2, &fq).unwrap();
            assert_eq!(rep.value, want, "q={q} s={s} window from {lo}");
            assert!(rep.valuation_grows(), "q={q} s={s} window from {lo}");
        }
        // the threshold is m + 1 except for (2, 4), whose Y^{μ−1} coefficient has θ-degree 2 = q
        let expect = if (q, s) == (2, 4) { p.m + 2 } else { p.m + 1 };
        assert_eq!(d0, expect, "q={q} s={s}");
        if d0 > p.m + 1 {
            assert!(lambda_limit(&h, p.m + 1, p.m + 3, &fq).is_err(), "q={q} s={s}");
        }
    }
}

#[test]
fn period_identity_on_grid() {
    for (q, s) in GRID {
        let fq = Fq::with_order(q).unwrap();
        let c = Carlitz::new(&fq);
        let m = HParams::new(q, s).unwrap().m;
        for d in m.max(1)..=m + 2 {
            assert!(period_identity_check(&c, s, d).unwrap(), "q={q} s={s} d={d}");
        }
    }
}
