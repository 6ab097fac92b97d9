use harmsum_core::hpoly::{divrem_y_qpow_minus_theta, h_row, h_universal, row_divisible, RowMode};
use harmsum_core::{Carlitz, Fq, FqElem, MPoly, PolyA, Var};
use proptest::prelude::*;

const GRID: [(u32, usize); 8] = [(2, 2), (2, 3), (2, 4), (3, 3), (3, 5), (4, 4), (5, 5), (5, 9)];

#[test]
fn holdout_identity_on_every_row() {
    for (q, s) in GRID {
        let fq = Fq::with_order(q).unwrap();
        let c = Carlitz::new(&fq);
        let h = h_universal(&fq, s).unwrap();
        let p = h.params;
        for d in p.m.max(1)..=p.m + p.mu + 2 {
            let row = h_row(&c, s, d, RowMode::Auto).unwrap();
            assert_eq!(h.eval_frobenius(d - p.m, &fq), row.h, "q={q} s={s} d={d}");
        }
    }
}

#[test]
fn leading_coefficient_is_monic_of_degree_m_minus_one() {
    for (q, s) in GRID {
        let fq = Fq::with_order(q).unwrap();
        let h = h_universal(&fq, s).unwrap();
        let p = h.params;
        let top = h.y_coeff(p.mu).to_mpoly(&fq);
        assert_eq!(top.deg_theta(), Some(p.m - 1), "q={q} s={s}");
        let lead: Vec<FqElem> = top
            .terms()
            .values()
            .filter(|c| c.deg() == Some(p.m - 1))
            .map(|c| c.lead())
            .collect();
        assert_eq!(lead.len(), 1, "q={q} s={s}");
        assert!(lead[0] == FqElem::ONE || lead[0] == fq.neg(FqElem::ONE), "q={q} s={s}");
    }
}

fn build(terms: &[(u8, u8, u8, u8)], q: u32, fq: &Fq) -> MPoly {
    MPoly::from_terms(
        1,
        terms.iter().map(|&(t, y, th, c)| {
            (vec![t as u32 % 3, y as u32 % 5, 0], PolyA::monomial(FqElem(c % q as u8), th as usize % 4))
        }),
        fq,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    // U(θ^{q^d}) ≡ 0 mod θ^{q^{d+M}} − θ for large d exactly when Y^{q^M} − θ divides U
    #[test]
    fn frobenius_divisibility_lifts(
        q in 2u32..4,
        big_m in 1u32..3,
        v in prop::collection::vec(any::<(u8, u8, u8, u8)>(), 1..5),
        r in prop::collection::vec(any::<(u8, u8, u8, u8)>(), 0..4),
    ) {
        let fq = Fq::with_order(q).unwrap();
        let qm = q.pow(big_m);
        let v = build(&v, q, &fq);
        prop_assume!(!v.is_zero());
        let r: MPoly = MPoly::from_terms(
            1,
            build(&r, q, &fq).terms().iter().filter(|(m, _)| m[1] < qm).map(|(m, c)| (m.clone(), c.clone())),
            &fq,
        );
        let factor = MPoly::var(Var::Y, 1).unwrap().pow(qm as u64, &fq).sub(&MPoly::constant(PolyA::theta(), 1), &fq);
        let u = factor.mul(&v, &fq).add(&r, &fq);
        let (quot, rem) = divrem_y_qpow_minus_theta(&u, big_m, &fq).unwrap();
        prop_assert_eq!(&rem, &r);
        prop_assert_eq!(quot, v);
        // q^d exceeds every θ-degree of r from d = 2 on
        for d in 2..4 {
            prop_assert_eq!(row_divisible(&u, big_m, d, &fq).unwrap(), r.is_zero());
        }
    }
}
