mod common;

use common::oracles::{ideal_suite, run_ideal_case};
use folnewt::algebra::{parse_poly, Polynomial, Var, VarKind, VariableTable};
use folnewt::groebner::{buchberger, contains_one, normal_form, saturation_contains_one, Decision, Fuel, Ideal, TermOrder};

#[test]
fn hand_worked_suite() {
    let suite = ideal_suite();
    assert!(suite.len() >= 20);
    for case in &suite {
        if let Err(e) = run_ideal_case(case) {
            panic!("{}: {e}", case.name);
        }
    }
}

fn polys(gens: &[&str], vars: &[&str]) -> Vec<Polynomial> {
    let t = VariableTable::with(vars, VarKind::Free);
    gens.iter().map(|g| parse_poly(g, &t).unwrap()).collect()
}

#[test]
fn basis_elements_reduce_generators_to_zero() {
    let vars = ["x", "y", "z"];
    let gens = polys(&["x^2 - y*z", "y^2 - x*z", "z^2 - x*y"], &vars);
    let ideal = Ideal::new(gens.clone(), vars.iter().map(Var::new));
    for order in [TermOrder::GradedLex, TermOrder::Lex] {
        let basis = buchberger(&ideal, &order, &Fuel::default()).unwrap();
        for g in &gens {
            assert!(normal_form(g, &basis, &order).is_zero());
        }
    }
}

#[test]
fn saturation_test_matches_full_saturation() {
    let vars = ["x", "y"];
    let f = polys(&["x*y"], &vars).remove(0);
    for (gens, empty) in [
        (vec!["x*y", "x + y"], true),
        (vec!["x - y", "x^2 - 1"], false),
        (vec!["x^2*y^3"], true),
    ] {
        let ideal = Ideal::new(polys(&gens, &vars), vars.iter().map(Var::new));
        let want = if empty { Decision::Yes } else { Decision::No };
        assert_eq!(saturation_contains_one(&ideal, &f, &Fuel::default()), want, "{gens:?}");
        let sat = folnewt::groebner::saturate(&ideal, &f, &Fuel::default()).unwrap();
        assert_eq!(contains_one(&sat, &Fuel::default()), want);
    }
}

#[test]
fn tiny_fuel_is_undetermined_not_wrong() {
    let vars = ["x", "y", "z"];
    let ideal = Ideal::new(
        polys(&["x^3 - 2*x*y", "x^2*y - 2*y^2 + x", "z^2 - x*y*z + 1"], &vars),
        vars.iter().map(Var::new),
    );
    assert_eq!(contains_one(&ideal, &Fuel::new(1, 10)), Decision::Undetermined);
    assert_ne!(contains_one(&ideal, &Fuel::default()), Decision::Undetermined);
}
