//! Blow-up invariance of face non-degeneracy, checked case by case: the
//! face of `rho` on the deepest stratum before a blow-up against the face
//! of the transported weight on every covering chart after it, together
//! with explicit transport of witnesses in both directions.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{rat, Rational, Var};
use crate::blowup::{blowup_chart_at, pullback_value_invariance, BlowupError};
use crate::fabric::{subsets, transformed_stratum, weight_class, weight_transport, Stratum};
use crate::foliated::{initial_forms_on_face, stratum_polyhedron, torus_var, LogFormChart};
use crate::groebner::{Decision, Fuel};
use crate::polyhedra::{compact_faces, minimal_face, WeightVector};

use super::witness::rational_search;
use super::{face_problem, system_decision};

#[derive(Debug, Clone, Serialize)]
pub struct PropertyCase {
    pub center: Vec<Var>,
    pub weight: WeightVector,
    pub class: Vec<Var>,
    pub before: Decision,
    /// Per covering chart selector.
    pub after: Vec<(Var, Decision)>,
    /// A rational witness before, carried to every covering chart, solves
    /// the system there.
    pub forward_witness: Option<bool>,
    /// A rational witness on a covering chart, carried back, solves the
    /// system before.
    pub reverse_witness: Option<bool>,
    pub value_invariant: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub cases: Vec<PropertyCase>,
    pub holds: bool,
}

/// Test weights on `k`: the primitive weight of each compact face of the
/// deepest polyhedron, and every vector in `{1,2}^k` for small `k`.
fn test_weights(chart: &LogFormChart, k: &Stratum) -> Result<Vec<WeightVector>, BlowupError> {
    let (s, n) = stratum_polyhedron(chart, k)?;
    let mut out: Vec<WeightVector> = compact_faces(&n, &s)
        .map_err(crate::foliated::ModelError::from)?
        .into_iter()
        .map(|f| f.weight)
        .collect();
    if k.len() <= 4 {
        for mask in 0u32..(1 << k.len()) {
            let pairs = k
                .iter()
                .enumerate()
                .map(|(i, v)| (v.clone(), rat(1 + i64::from((mask >> i) & 1), 1)));
            out.push(WeightVector::new(pairs).expect("positive"));
        }
    }
    out.sort_by_key(|w| w.to_string());
    out.dedup();
    Ok(out)
}

/// Runs every nonempty center `J` of the chart divisor against every test
/// weight on the full divisor.
pub fn property_s_suite(chart: &LogFormChart, fuel: &Fuel) -> Result<PropertyReport, BlowupError> {
    let k = chart.divisor().clone();
    let weights = test_weights(chart, &k)?;
    let mut cases = Vec::new();
    for j in subsets(&k).into_iter().filter(|j| !j.is_empty()) {
        for rho in &weights {
            cases.push(property_case(chart, &j, rho, fuel)?);
        }
    }
    let holds = cases.iter().all(|c| c.holds);
    Ok(PropertyReport { cases, holds })
}

/// One (center, weight) case on the stratum `K` spanned by the axes of
/// `rho`, which must contain the center.
pub fn property_case(chart: &LogFormChart, j: &Stratum, rho: &WeightVector, fuel: &Fuel) -> Result<PropertyCase, BlowupError> {
    let e = Var::new("e.0");
    let k: Stratum = rho.axes().iter().cloned().collect();
    if !k.is_subset(chart.divisor()) || !j.is_subset(&k) {
        return Err(BlowupError::InvalidCenter(crate::fabric::stratum_string(j)));
    }
    let (a, _) = weight_class(rho, j)?;
    let rho2 = weight_transport(rho, j, &a, &e)?;
    let k2 = transformed_stratum(&k, j, &a, &e);

    let (s, n) = stratum_polyhedron(chart, &k)?;
    let face = minimal_face(&n, rho, &s).map_err(crate::foliated::ModelError::from)?;
    let before_sys = initial_forms_on_face(chart, &k, &face)?;
    let before_problem = face_problem(chart, &before_sys);
    let before = system_decision(chart, &before_sys, fuel);
    let before_witness = (before == Decision::No).then(|| rational_search(&before_problem)).flatten();

    let mut after = Vec::new();
    let mut forward = None;
    let mut reverse = None;
    for j0 in j.difference(&a) {
        let child = blowup_chart_at(chart, j, j0, &e)?.chart;
        let (s2, n2) = stratum_polyhedron(&child, &k2)?;
        let face2 = minimal_face(&n2, &rho2, &s2).map_err(crate::foliated::ModelError::from)?;
        let sys2 = initial_forms_on_face(&child, &k2, &face2)?;
        let problem2 = face_problem(&child, &sys2);
        let d = system_decision(&child, &sys2, fuel);
        if let Some(mu) = &before_witness {
            let ok = problem2.satisfied_by(&forward_point(mu, j, &a, j0, &e));
            forward = Some(forward.unwrap_or(true) && ok);
        }
        if d == Decision::No {
            if let Some(mu2) = rational_search(&problem2) {
                let ok = before_problem.satisfied_by(&reverse_point(&mu2, j, &a, j0, &e));
                reverse = Some(reverse.unwrap_or(true) && ok);
            }
        }
        after.push((j0.clone(), d));
    }

    let value_invariant = pullback_value_invariance(chart, j, rho)?.holds;
    let decided = before != Decision::Undetermined && after.iter().all(|(_, d)| *d != Decision::Undetermined);
    let agree = !decided || after.iter().all(|(_, d)| *d == before);
    let holds = agree && value_invariant && forward != Some(false) && reverse != Some(false);
    Ok(PropertyCase {
        center: j.iter().cloned().collect(),
        weight: rho.clone(),
        class: a.into_iter().collect(),
        before,
        after,
        forward_witness: forward,
        reverse_witness: reverse,
        value_invariant,
        holds,
    })
}

fn t(v: &Var) -> Var {
    torus_var(v)
}

/// Before-witness to chart `j0`: torus values on `A` and the point
/// coordinates on `J \ A \ {j0}` are ratios with `mu_{j0}`, which becomes
/// the exceptional torus value.
pub fn forward_point(mu: &BTreeMap<Var, Rational>, j: &Stratum, a: &Stratum, j0: &Var, e: &Var) -> BTreeMap<Var, Rational> {
    let m0 = mu[&t(j0)].clone();
    let mut out = BTreeMap::new();
    for (v, x) in mu {
        let base = v.name().strip_prefix("T.").map(Var::new);
        match base {
            Some(b) if j.contains(&b) => {
                if &b == j0 {
                    out.insert(t(e), m0.clone());
                } else if a.contains(&b) {
                    out.insert(v.clone(), x / &m0);
                } else {
                    out.insert(b, x / &m0);
                }
            }
            _ => {
                out.insert(v.clone(), x.clone());
            }
        }
    }
    out
}

/// Inverse of [`forward_point`].
pub fn reverse_point(mu2: &BTreeMap<Var, Rational>, j: &Stratum, a: &Stratum, j0: &Var, e: &Var) -> BTreeMap<Var, Rational> {
    let me = mu2[&t(e)].clone();
    let mut out = BTreeMap::new();
    for (v, x) in mu2 {
        if v == &t(e) {
            out.insert(t(j0), me.clone());
        } else if j.contains(v) && !a.contains(v) {
            out.insert(t(v), &me * x);
        } else if v.name().strip_prefix("T.").is_some_and(|b| a.contains(&Var::new(b))) {
            out.insert(v.clone(), &me * x);
        } else {
            out.insert(v.clone(), x.clone());
        }
    }
    out
}
