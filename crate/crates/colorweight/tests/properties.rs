//! Randomized structural laws. The polynomial center must behave as a
//! commutative ring whose evaluations are ring maps; canonicalization must
//! collapse rotation orbits; weights must be rotation-invariant,
//! multiplicative under connected sum, and differentiate in `c` through the
//! chord-deletion sum; and the enveloping-algebra normal form must be
//! confluent, filtered by word length, and multiplicative.

use proptest::prelude::*;

use colorweight::diagram::ChordDiagram;
use colorweight::envelope::{self, ReduceStrategy};
use colorweight::poly::{CenterPoly, EpsCoeff, EpsSign};
use colorweight::weights::{self, WeightSystem};

/// Sparse polynomials with small exponents and coefficients.
fn arb_poly() -> impl Strategy<Value = CenterPoly> {
    prop::collection::vec((0u32..4, 0u32..4, -40i64..=40, -40i64..=40), 0..6).prop_map(|terms| {
        let mut p = CenterPoly::zero();
        for (dc, dy, a, b) in terms {
            p.add_term(dc, dy, &EpsCoeff::new(a, b));
        }
        p
    })
}

/// Chord diagrams of order up to `max`: a shuffle of the label multiset
/// {1, 1, ..., n, n} read as a circle code.
fn arb_diagram(max: usize) -> impl Strategy<Value = ChordDiagram> {
    (0..=max).prop_flat_map(|n| {
        let labels: Vec<usize> = (1..=n).flat_map(|i| [i, i]).collect();
        Just(labels).prop_shuffle().prop_map(|labels| {
            let code = labels
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            ChordDiagram::parse(&code).expect("every label appears twice")
        })
    })
}

/// Generator words over H, Q1, Q2, Q3.
fn arb_word(max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..4, 0..=max_len)
}

proptest! {
    #[test]
    fn center_is_a_commutative_ring(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        prop_assert_eq!(p.clone() + &q, q.clone() + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!((p.clone() + &q) + &r, p.clone() + &(q.clone() + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(q.clone() + &r), (&p * &q) + &(&p * &r));
        prop_assert!((p.clone() - &p).is_zero());
        prop_assert_eq!(p.clone() * CenterPoly::one(), p.clone());
        prop_assert_eq!(-(-p.clone()), p);
    }

    #[test]
    fn scaling_is_constant_multiplication(p in arb_poly(), a in -40i64..=40, b in -40i64..=40) {
        let k = EpsCoeff::new(a, b);
        prop_assert_eq!(p.scale(&k), p * CenterPoly::constant(k));
    }

    #[test]
    fn sign_evaluation_is_a_ring_map(p in arb_poly(), q in arb_poly()) {
        for sign in [EpsSign::Plus, EpsSign::Minus] {
            prop_assert_eq!(
                (p.clone() + &q).eval_eps(sign),
                p.eval_eps(sign) + q.eval_eps(sign)
            );
            prop_assert_eq!((&p * &q).eval_eps(sign), &p.eval_eps(sign) * &q.eval_eps(sign));
        }
    }

    #[test]
    fn deframing_substitution_is_a_ring_map(p in arb_poly(), q in arb_poly()) {
        prop_assert_eq!(
            (p.clone() + &q).substitute_c_zero(),
            p.substitute_c_zero() + q.substitute_c_zero()
        );
        prop_assert_eq!(
            (&p * &q).substitute_c_zero(),
            &p.substitute_c_zero() * &q.substitute_c_zero()
        );
        prop_assert_eq!(
            p.substitute_c_zero().substitute_c_zero(),
            p.substitute_c_zero()
        );
    }

    #[test]
    fn derivative_satisfies_the_leibniz_rule(p in arb_poly(), q in arb_poly()) {
        prop_assert_eq!(
            (&p * &q).d_dc(),
            (&p.d_dc() * &q) + &(&p * &q.d_dc())
        );
        prop_assert_eq!((p.clone() + &q).d_dc(), p.d_dc() + q.d_dc());
    }

    #[test]
    fn polynomials_round_trip_through_both_encodings(p in arb_poly()) {
        prop_assert_eq!(CenterPoly::from_json(&p.to_json()).unwrap(), p.clone());
        prop_assert_eq!(CenterPoly::parse(&p.render()).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_collapses_the_rotation_orbit(d in arb_diagram(4), r in 0usize..8) {
        let canon = d.canonical_form();
        prop_assert_eq!(canon.canonical_form(), canon.clone());
        let m = d.positions().max(1);
        prop_assert_eq!(d.rotated(r % m).canonical_form(), canon);
    }

    #[test]
    fn codes_round_trip(d in arb_diagram(4)) {
        prop_assert_eq!(ChordDiagram::parse(&d.code()).unwrap(), d);
    }

    #[test]
    fn weights_are_rotation_invariant(d in arb_diagram(4), r in 0usize..8) {
        let m = d.positions().max(1);
        let w = WeightSystem::new().weight_recurrence(&d);
        prop_assert_eq!(WeightSystem::new().weight_recurrence(&d.rotated(r % m)), w);
    }

    #[test]
    fn weights_multiply_over_connected_sums(a in arb_diagram(3), b in arb_diagram(3)) {
        let mut ws = WeightSystem::new();
        let whole = ws.weight_recurrence(&a.connected_sum(&b));
        prop_assert_eq!(whole, &ws.weight_recurrence(&a) * &ws.weight_recurrence(&b));
    }

    #[test]
    fn deletion_sum_differentiates_the_weight(d in arb_diagram(4)) {
        let mut ws = WeightSystem::new();
        let derivative = ws.weight_recurrence(&d).d_dc();
        prop_assert_eq!(ws.weight_sum(&weights::s_map(&d)).unwrap(), derivative);
    }

    #[test]
    fn deframed_weights_ignore_isolated_chords(d in arb_diagram(3)) {
        let mut ws = WeightSystem::new();
        let lone = ChordDiagram::parse("1 1").unwrap();
        prop_assert!(ws.deframed_weight(&d.connected_sum(&lone)).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn normal_ordering_is_confluent(word in arb_word(6)) {
        let fast = envelope::normal_order(&word);
        prop_assert_eq!(
            envelope::normal_order_by_rewriting(&word, ReduceStrategy::Leftmost),
            fast.clone()
        );
        prop_assert_eq!(
            envelope::normal_order_by_rewriting(&word, ReduceStrategy::Rightmost),
            fast
        );
    }

    #[test]
    fn normal_ordering_respects_the_word_filtration(word in arb_word(8)) {
        let x = envelope::normal_order(&word);
        for (m, _) in x.iter() {
            prop_assert!(m.total_degree() <= word.len() as u32);
        }
    }

    #[test]
    fn normal_ordering_is_multiplicative(u in arb_word(5), v in arb_word(5)) {
        let mut joined = u.clone();
        joined.extend_from_slice(&v);
        prop_assert_eq!(
            envelope::normal_order(&joined),
            envelope::multiply(&envelope::normal_order(&u), &envelope::normal_order(&v))
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn the_walk_lands_centrally_on_the_recurrence_value(d in arb_diagram(3)) {
        let walked = envelope::oracle_weight(&d, 0);
        prop_assert!(envelope::is_central(&walked));
        let expressed = envelope::express_in_center(&walked, d.order() as u32).unwrap();
        prop_assert_eq!(expressed, WeightSystem::new().weight_recurrence(&d));
    }
}
