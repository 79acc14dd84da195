use super::*;
use crate::algebra::rat;

fn w(pairs: &[(&str, i64)]) -> WeightVector {
    WeightVector::new(pairs.iter().map(|(v, x)| (Var::new(*v), rat(*x, 1)))).unwrap()
}

#[test]
fn blowup_of_a_corner() {
    let h = SupportFabric::generated_by([stratum(&["1", "2"])]);
    let e = Var::new("e1");
    let rep = blowup_fabric(&h, &stratum(&["1", "2"]), &e).unwrap();
    let expected: Vec<Stratum> = vec![
        stratum::<&str>(&[]),
        stratum(&["1"]),
        stratum(&["2"]),
        stratum(&["e1"]),
        stratum(&["1", "e1"]),
        stratum(&["2", "e1"]),
    ];
    let mut got = rep.fabric.strata();
    got.sort();
    let mut want = expected;
    want.sort();
    assert_eq!(got, want);
    assert_eq!(rep.removed, vec![stratum(&["1", "2"])]);
}

#[test]
fn blowup_of_a_smooth_divisor() {
    let h = SupportFabric::generated_by([stratum(&["1"])]);
    let rep = blowup_fabric(&h, &stratum(&["1"]), &Var::new("e1")).unwrap();
    assert_eq!(rep.fabric.strata(), vec![stratum::<&str>(&[]), stratum(&["e1"])]);
}

#[test]
fn transformed_strata_formula() {
    let k = stratum(&["1", "2", "3"]);
    let got = transformed_stratum(&k, &stratum(&["1", "2"]), &stratum(&["2"]), &Var::new("e"));
    assert_eq!(got, stratum(&["2", "3", "e"]));
}

#[test]
fn center_must_be_in_fabric() {
    let h = SupportFabric::generated_by([stratum(&["1"]), stratum(&["2"])]);
    assert!(blowup_fabric(&h, &stratum(&["1", "2"]), &Var::new("e")).is_err());
    assert!(blowup_fabric(&h, &Stratum::new(), &Var::new("e")).is_err());
}

#[test]
fn kept_strata_survive() {
    let h = SupportFabric::generated_by([stratum(&["1", "2"]), stratum(&["3"])]);
    let rep = blowup_fabric(&h, &stratum(&["1", "2"]), &Var::new("e")).unwrap();
    assert!(rep.fabric.contains(&stratum(&["3"])));
    assert!(!rep.fabric.contains(&stratum(&["1", "2"])));
    assert_eq!(rep.kept.len(), 4);
}

#[test]
fn weight_classes() {
    let j = stratum(&["1", "2"]);
    assert_eq!(weight_class(&w(&[("1", 1), ("2", 2), ("3", 1)]), &j).unwrap(), (stratum(&["2"]), rat(1, 1)));
    assert_eq!(weight_class(&w(&[("1", 1), ("2", 1), ("3", 5)]), &j).unwrap(), (Stratum::new(), rat(1, 1)));
    assert_eq!(weight_class(&w(&[("1", 3), ("2", 2), ("3", 1)]), &j).unwrap(), (stratum(&["1"]), rat(2, 1)));
}

#[test]
fn weight_transport_examples() {
    let j = stratum(&["1", "2"]);
    let e = Var::new("e");
    let rho = w(&[("1", 1), ("2", 2), ("3", 1)]);
    let rho2 = weight_transport(&rho, &j, &stratum(&["2"]), &e).unwrap();
    assert_eq!(rho2, w(&[("2", 1), ("3", 1), ("e", 1)]));
    assert_eq!(weight_transport_inverse(&rho2, &j, &e).unwrap(), rho);

    let sigma = Monomial::from_pairs([(Var::new("1"), 2), (Var::new("2"), 1), (Var::new("3"), 5)]);
    assert_eq!(rho.value_monomial(&sigma), rat(9, 1));
    let lam = exponent_transport(&sigma, &j, &Var::new("1"), &e);
    assert_eq!(rho2.value_monomial(&lam), rat(9, 1));

    let rho = w(&[("1", 1), ("2", 1), ("3", 4)]);
    let rho2 = weight_transport(&rho, &j, &Stratum::new(), &e).unwrap();
    assert_eq!(rho2, w(&[("3", 4), ("e", 1)]));
    assert!(weight_transport(&rho, &j, &stratum(&["1"]), &e).is_err());
}

#[test]
fn exponent_transport_examples() {
    let e = Var::new("e");
    let sigma = Monomial::from_pairs([(Var::new("1"), 2), (Var::new("2"), 1), (Var::new("3"), 5)]);
    let lam = exponent_transport(&sigma, &stratum(&["1", "2"]), &Var::new("1"), &e);
    assert_eq!(lam, Monomial::from_pairs([(Var::new("2"), 1), (Var::new("3"), 5), (e.clone(), 3)]));
    assert!(exponent_transport(&Monomial::one(), &stratum(&["1", "2"]), &Var::new("1"), &e).is_one());
    let sigma = Monomial::from_pairs([(Var::new("1"), 4), (Var::new("2"), 7)]);
    let lam = exponent_transport(&sigma, &stratum(&["1"]), &Var::new("1"), &e);
    assert_eq!(lam, Monomial::from_pairs([(Var::new("2"), 7), (e, 4)]));
}
