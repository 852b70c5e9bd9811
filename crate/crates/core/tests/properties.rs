//! Randomized property suites for the exact linear algebra and the
//! braid/Weyl machinery.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Signed;
use proptest::prelude::*;

use reflect_core::budget::Budget;
use reflect_core::cosets::Coset;
use reflect_core::coxeter::CoxGroup;
use reflect_core::exactlin::{
    cyclotomic_factorization, hermite_normal_form, integer_kernel, smith_normal_form, CycProduct,
    IntMat, Poly, Rat,
};
use reflect_core::garside::{braid_product, positive_lift, BraidCtx};
use reflect_core::rootsys::{CartanType, Isogeny};
use reflect_core::semisimple::{root_pairing, weyl_act, SSElt};

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-6i64..7, c), r)
    })
}

fn group(name: &str) -> Arc<CoxGroup> {
    CoxGroup::from_type(&CartanType::parse(name).unwrap(), Isogeny::Adjoint).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_transforms_are_unimodular(rows in small_matrix()) {
        use num_traits::{One, Zero};
        let m = IntMat::from_rows(&rows);
        let (d, p, q) = smith_normal_form(&m);
        prop_assert_eq!(p.mul(&m).mul(&q), d.clone());
        prop_assert!(p.det().abs().is_one());
        prop_assert!(q.det().abs().is_one());
        let n = m.rows.min(m.cols);
        for i in 0..n.saturating_sub(1) {
            let a = &d[(i, i)];
            let b = &d[(i + 1, i + 1)];
            if !a.is_zero() && !b.is_zero() {
                prop_assert!((b % a).is_zero());
            }
        }
    }

    #[test]
    fn hnf_invariant_under_row_mixing(rows in small_matrix(), k in -3i64..4) {
        let m = IntMat::from_rows(&rows);
        let h = hermite_normal_form(&m);
        prop_assert_eq!(hermite_normal_form(&h), h.clone());
        if rows.len() >= 2 {
            let mut mixed = rows.clone();
            for c in 0..mixed[0].len() {
                let add = k * mixed[1][c];
                mixed[0][c] += add;
            }
            mixed.swap(0, 1);
            prop_assert_eq!(hermite_normal_form(&IntMat::from_rows(&mixed)), h);
        }
    }

    #[test]
    fn kernel_is_orthogonal_and_saturated(rows in small_matrix()) {
        use num_traits::Zero;
        let m = IntMat::from_rows(&rows);
        let k = integer_kernel(&m);
        for i in 0..k.rows {
            for j in 0..m.rows {
                let dot: num_bigint::BigInt =
                    (0..m.cols).map(|t| &k[(i, t)] * &m[(j, t)]).sum();
                prop_assert!(dot.is_zero());
            }
        }
        prop_assert_eq!(k.rows + m.rank(), m.cols);
    }

    #[test]
    fn cyclotomic_products_round_trip(
        sign in prop::bool::ANY,
        qpow in 0u32..3,
        factors in proptest::collection::btree_map(1u32..13, 1u32..3, 0..3)
    ) {
        let cyc = CycProduct {
            sign: if sign { 1 } else { -1 },
            q_power: qpow,
            factors: factors.clone().into_iter().collect::<BTreeMap<_, _>>(),
        };
        let expanded = cyc.expand();
        let back = cyclotomic_factorization(&expanded).unwrap();
        prop_assert_eq!(back.expand(), expanded);
        prop_assert_eq!(back, cyc);
    }

    #[test]
    fn non_cyclotomic_rejected(c in 2i64..9) {
        // q² + c has roots off the unit circle for c ≠ 1
        let f = Poly::from_i64(&[c, 0, 1]);
        prop_assert!(cyclotomic_factorization(&f).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn braid_words_project_homomorphically(
        word1 in proptest::collection::vec(1usize..4, 0..8),
        word2 in proptest::collection::vec(1usize..4, 0..8),
    ) {
        let w = group("A3");
        let ctx = BraidCtx::new(w.clone());
        let a = positive_lift(&ctx, &word1);
        let b = positive_lift(&ctx, &word2);
        let ab = braid_product(&a, &b);
        prop_assert_eq!(ab.image_in_w(), a.image_in_w().compose(&b.image_in_w()));
        // lift of a word has canonical length ≥ 1 unless the word is empty
        if !word1.is_empty() {
            prop_assert!(a.sup() >= 1);
        }
        // word length bounds the braid's total letter count
        prop_assert_eq!(
            a.inf as usize * w.n_pos
                + a.factors.iter().map(|f| w.length(f)).sum::<usize>(),
            word1.len()
        );
    }

    #[test]
    fn twisted_normal_form_is_equivariant(
        word in proptest::collection::vec(1usize..7, 0..10),
    ) {
        // F(normal form(x)) = normal form(F(x)) for the diagram flip.
        let w = group("E6");
        let coset = Coset::new(w.clone(), &[6, 2, 5, 4, 3, 1]).unwrap();
        let ctx = BraidCtx::new(w.clone());
        let f = coset.garside_aut();
        let b = positive_lift(&ctx, &word);
        let fb = f.apply_braid(&b);
        let fword = coset.frobenius_word(&word);
        prop_assert_eq!(positive_lift(&ctx, &fword), fb);
    }

    #[test]
    fn pairing_is_equivariant(
        nums in proptest::collection::vec(0i64..12, 4),
        word in proptest::collection::vec(1usize..5, 0..8),
    ) {
        let w = group("B4");
        let s = SSElt::new(nums.iter().map(|&n| Rat::new(n.into(), 12.into())).collect());
        let x = w.element_of_word(&word);
        let xs = weyl_act(&w, &x, &s);
        let xinv = x.inverse();
        for r in (0..w.system.count()).step_by(5) {
            prop_assert_eq!(root_pairing(&w, r, &xs), root_pairing(&w, xinv.apply(r), &s));
        }
    }

    #[test]
    fn ss_orbit_stabilizer_balances(
        nums in proptest::collection::vec(0i64..6, 2),
    ) {
        let w = group("G2");
        let budget = Budget::default();
        let s = SSElt::new(nums.iter().map(|&n| Rat::new(n.into(), 6.into())).collect());
        let orbit = reflect_core::semisimple::orbit(&w, &s, &budget).unwrap();
        let ext = reflect_core::semisimple::semisimple_centralizer(&w, &s, &budget).unwrap();
        prop_assert_eq!(orbit.len() as u128 * ext.stabilizer_order, w.order);
    }
}
