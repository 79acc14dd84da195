mod common;

use std::collections::BTreeMap;

use common::random_document;
use folnewt::algebra::{parse_poly, rat, Monomial, Var, VarKind, VariableTable};
use folnewt::fabric::{weight_class, weight_transport, weight_transport_inverse, Stratum};
use folnewt::foliated::{load_space, torus_var, Atlas, SpaceDocument};
use folnewt::groebner::Fuel;
use folnewt::nnd::{check_nnd_direct, check_nnd_via_theorem, forward_point, reverse_point, Budget, Strategy as Desing};
use folnewt::polyhedra::{newton_vertices, SupportSet, WeightVector};
use proptest::prelude::*;

fn direct(doc: &SpaceDocument) -> &'static str {
    check_nnd_direct(&load_space(doc).unwrap(), &Fuel::default()).name()
}

/// Renames `x_i` to `x_{perm[i]}` in every field of the document.
fn relabel(doc: &SpaceDocument, perm: &[usize]) -> SpaceDocument {
    let rename = |s: &str| {
        let mut out = s.to_string();
        for (i, p) in perm.iter().enumerate() {
            out = out.replace(&format!("x{}", i + 1), &format!("q{}", p + 1));
        }
        out.replace('q', "x")
    };
    SpaceDocument {
        divisor: doc.divisor.iter().map(|v| rename(v)).collect(),
        free: doc.free.clone(),
        form: doc.form.iter().map(|(k, v)| (rename(k), rename(v))).collect(),
        style: doc.style,
    }
}

fn small_weight() -> impl Strategy<Value = (i64, i64)> {
    (1i64..8, 1i64..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn routes_agree(seed in 1000u64..1_000_000) {
        let atlas = load_space(&random_document(seed)).unwrap();
        let a = check_nnd_direct(&atlas, &Fuel::default());
        let b = check_nnd_via_theorem(&atlas, Desing::default(), &Budget::default());
        if a.is_determined() && b.is_determined() {
            prop_assert_eq!(a.name(), b.name());
        }
    }

    #[test]
    fn verdict_ignores_divisor_labels(seed in 0u64..1_000_000, rot in 0usize..3) {
        let doc = random_document(seed);
        let n = doc.divisor.len();
        let perm: Vec<usize> = (0..n).map(|i| (i + rot) % n).collect();
        prop_assert_eq!(direct(&doc), direct(&relabel(&doc, &perm)));
    }

    #[test]
    fn verdict_ignores_constant_factor(seed in 0u64..1_000_000, c in prop::sample::select(vec!["-1", "2", "3/5", "-7/2"])) {
        let doc = random_document(seed);
        let scaled = SpaceDocument {
            form: doc.form.iter().map(|(k, v)| (k.clone(), format!("({v})*{c}"))).collect(),
            ..doc.clone()
        };
        prop_assert_eq!(direct(&doc), direct(&scaled));
    }

    #[test]
    fn verdict_ignores_monomial_factor(seed in 0u64..1_000_000, exps in prop::collection::vec(0u32..3, 3)) {
        let atlas = load_space(&random_document(seed)).unwrap();
        let root = atlas.root();
        let sigma = Monomial::from_pairs(root.divisor().iter().zip(&exps).map(|(v, &k)| (v.clone(), k)));
        let scaled = Atlas::from_root(root.rescaled(&sigma));
        prop_assert_eq!(
            check_nnd_direct(&atlas, &Fuel::default()).name(),
            check_nnd_direct(&scaled, &Fuel::default()).name()
        );
    }

    #[test]
    fn dominated_points_do_not_change_vertices(
        pts in prop::collection::vec(prop::collection::vec(0u32..6, 3), 1..10),
        pick in any::<prop::sample::Index>(),
        shift in prop::collection::vec(0u32..3, 3),
    ) {
        let axes: Vec<Var> = ["a", "b", "c"].iter().map(Var::new).collect();
        let base = SupportSet::from_points(axes.clone(), pts.clone());
        let p = pick.get(&pts);
        let q: Vec<u32> = p.iter().zip(&shift).map(|(a, b)| a + b).collect();
        let more = SupportSet::from_points(axes, pts.iter().cloned().chain(std::iter::once(q)));
        prop_assert_eq!(newton_vertices(&base).unwrap(), newton_vertices(&more).unwrap());
    }

    #[test]
    fn weight_transport_round_trip(w in prop::collection::vec(small_weight(), 3), mask in 1u8..8) {
        let axes: Vec<Var> = ["x1", "x2", "x3"].iter().map(Var::new).collect();
        let rho = WeightVector::new(axes.iter().cloned().zip(w.iter().map(|&(n, d)| rat(n, d)))).unwrap();
        let j: Stratum = axes.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| v.clone()).collect();
        let e = Var::new("e.0");
        let (a, r) = weight_class(&rho, &j).unwrap();
        let rho2 = weight_transport(&rho, &j, &a, &e).unwrap();
        prop_assert_eq!(rho2.get(&e), Some(&r));
        prop_assert_eq!(weight_transport_inverse(&rho2, &j, &e).unwrap(), rho);
    }

    #[test]
    fn witness_transport_round_trip(vals in prop::collection::vec(small_weight(), 4), mask in 1u8..8, sel in 0usize..3) {
        let xs: Vec<Var> = ["x1", "x2", "x3"].iter().map(Var::new).collect();
        let j: Stratum = xs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| v.clone()).collect();
        let jv: Vec<&Var> = j.iter().collect();
        let j0 = jv[sel % jv.len()].clone();
        let a: Stratum = j.iter().filter(|v| **v != j0).take(1).cloned().collect();
        let mut mu = BTreeMap::new();
        for (v, &(n, d)) in xs.iter().zip(&vals) {
            mu.insert(torus_var(v), rat(n, d));
        }
        mu.insert(Var::new("y"), rat(vals[3].0, vals[3].1));
        let e = Var::new("e.0");
        let fwd = forward_point(&mu, &j, &a, &j0, &e);
        prop_assert_eq!(&fwd[&torus_var(&e)], &mu[&torus_var(&j0)]);
        prop_assert_eq!(reverse_point(&fwd, &j, &a, &j0, &e), mu);
    }

    #[test]
    fn polynomial_display_parses_back(seed in 0u64..1_000_000) {
        let doc = random_document(seed);
        let mut t = VariableTable::new();
        for v in doc.divisor.iter().chain(&doc.free) {
            t.declare(v, VarKind::Free);
        }
        for text in doc.form.values() {
            let p = parse_poly(text, &t).unwrap();
            prop_assert_eq!(parse_poly(&p.to_string(), &t).unwrap(), p);
        }
    }
}
