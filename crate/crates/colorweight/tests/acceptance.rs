//! The release gate. Each test is one acceptance criterion; together they
//! pin every published table value, closed form, and identity this library
//! claims to reproduce, with the two evaluation routes cross-validated.
//! All ten must pass, exactly, in rational arithmetic.

use colorweight::colorlie::{
    a1_epsilon, check_casimir_conditions, check_color_axioms, check_derived_data,
    check_s_lie_axioms,
};
use colorweight::diagram::{catalog, enumerate_canonical, ChordDiagram};
use colorweight::envelope;
use colorweight::poly::CenterPoly;
use colorweight::weights::{self, WeightSystem};

fn poly(text: &str) -> CenterPoly {
    CenterPoly::parse(text).expect("fixture polynomial parses")
}

fn weight(code: &str) -> CenterPoly {
    WeightSystem::new()
        .weight_recurrence(&ChordDiagram::parse(code).expect("fixture code parses"))
}

#[test]
fn criterion_01_order_two_table() {
    assert_eq!(weight("1 1 2 2"), poly("c^2"));
    assert_eq!(weight("1 2 1 2"), poly("c^2 - e*y"));
}

#[test]
fn criterion_02_order_three_table() {
    assert_eq!(weight("1 1 2 2 3 3"), poly("c^3"));
    assert_eq!(weight("1 2 1 2 3 3"), poly("c^3 - e*c*y"));
    assert_eq!(weight("1 2 1 3 2 3"), poly("c^3 - 2*e*c*y + y"));
    assert_eq!(weight("1 2 3 1 2 3"), poly("c^3 - 3*e*c*y + 2*y"));
}

#[test]
fn criterion_03_order_four_indecomposable_table() {
    let expected = [
        ("1 2 3 4 1 4 3 2", "c^4 - 3*e*c^2*y + 3*c*y - e*y"),
        ("1 2 1 3 2 4 3 4", "c^4 - 3*e*c^2*y + 2*c*y + y^2 - e*y"),
        ("1 2 3 1 4 2 4 3", "c^4 - 4*e*c^2*y + 4*c*y + y^2 - 2*e*y"),
        ("1 2 3 1 4 3 2 4", "c^4 - 4*e*c^2*y + 4*c*y + 4*y^2 - 4*e*y"),
        ("1 2 3 4 1 3 2 4", "c^4 - 5*e*c^2*y + 6*c*y + 4*y^2 - 5*e*y"),
        ("1 2 3 4 1 2 3 4", "c^4 - 6*e*c^2*y + 8*c*y + 5*y^2 - 7*e*y"),
    ];
    for (code, value) in expected {
        assert_eq!(weight(code), poly(value), "weight of \"{code}\"");
    }
    // Those six are the complete indecomposable table at this order.
    let table: Vec<ChordDiagram> = enumerate_canonical(4)
        .into_iter()
        .filter(ChordDiagram::is_indecomposable)
        .collect();
    assert_eq!(table.len(), 6);
    let mut ws = WeightSystem::new();
    let mut values: Vec<String> = table
        .iter()
        .map(|d| ws.weight_recurrence(d).render())
        .collect();
    values.sort();
    let mut listed: Vec<String> = expected
        .iter()
        .map(|(_, value)| poly(value).render())
        .collect();
    listed.sort();
    assert_eq!(values, listed);
}

#[test]
fn criterion_04_jacobi_examples() {
    let mut ws = WeightSystem::new();
    let cases = [
        (catalog::tripod(), "e*y"),
        (catalog::theta_on_circle(), "2*e*y"),
        (catalog::h_diagram(), "y"),
        (catalog::wheel(4), "2*y^2"),
        (catalog::wheel(5), "3*e*y^2 - y"),
        (catalog::h_with_spectator(), "c*y + 2*y^2 - 2*e*y"),
    ];
    for (j, value) in cases {
        assert_eq!(ws.weight_jacobi(&j).expect("resolution evaluates"), poly(value));
    }
}

#[test]
fn criterion_05_closed_form_families() {
    let mut ws = WeightSystem::new();
    for n in 1..=8 {
        assert_eq!(
            ws.weight_recurrence(&catalog::ladder(n)),
            weights::closed_form_ladder(n),
            "ladder of width {n}"
        );
    }
    for n in 1..=6 {
        assert_eq!(
            ws.weight_jacobi(&catalog::teeth(n)).expect("teeth evaluate"),
            weights::closed_form_teeth(n, false),
            "teeth of size {n}"
        );
        assert_eq!(
            ws.weight_jacobi(&catalog::teeth_with_chord(n))
                .expect("teeth evaluate"),
            weights::closed_form_teeth(n, true),
            "chorded teeth of size {n}"
        );
    }
}

#[test]
fn criterion_06_walk_matches_recurrence_through_order_five() {
    let report = weights::check_oracle_agreement(5);
    assert!(report.passed(), "{report}");
    // Spot checks one order higher.
    let order_six = enumerate_canonical(6);
    assert_eq!(order_six.len(), 902);
    let mut ws = WeightSystem::new();
    for index in [0, 450, 901] {
        let d = &order_six[index];
        let walked = envelope::express_in_center(&envelope::oracle_weight(d, 0), 6)
            .expect("walk value is central");
        assert_eq!(walked, ws.weight_recurrence(d), "weight of \"{d}\"");
    }
}

#[test]
fn criterion_07_four_term_relations_vanish() {
    let report = weights::check_four_term(5);
    assert!(report.passed(), "{report}");
}

#[test]
fn criterion_08_deframing_identities() {
    let report = weights::check_deframing(4, 5);
    assert!(report.passed(), "{report}");
}

#[test]
fn criterion_09_algebraic_suite() {
    let g = a1_epsilon();
    for report in [
        check_color_axioms(&g),
        check_s_lie_axioms(&g),
        check_casimir_conditions(&g).expect("form data is well-posed"),
        check_derived_data(&g).expect("derived data is well-posed"),
    ] {
        assert!(report.passed(), "{report}");
    }
    for generator in [CenterPoly::c(), CenterPoly::y()] {
        assert!(envelope::is_central(&envelope::expand_center(&generator)));
    }
}

#[test]
fn criterion_10_tensor_relations_with_spectators() {
    let report = envelope::check_tensor_relations(2);
    assert!(report.passed(), "{report}");
}
