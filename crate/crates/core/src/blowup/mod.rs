//! Combinatorial blowing-up of charts and atlases.
//!
//! Chart `j0` of the blow-up with center `J` uses the substitution
//! `x_{j0} = e`, `x_j = e * x_j` for the rest of `J`. Since
//! `dx_{j0}/x_{j0} = de/e` and `dx_j/x_j = de/e + dx_j/x_j`, the new
//! exceptional coefficient is the sum of the pulled-back `J`-coefficients.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{monomial_content, Polynomial, Rational, Var};
use crate::fabric::{blowup_fabric, stratum_string, weight_class, weight_transport, FabricError, Stratum};
use crate::foliated::{Atlas, LogFormChart, ModelError, Provenance};
use crate::polyhedra::WeightVector;

pub use crate::fabric::exponent_transport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlowupError {
    #[error("empty center")]
    EmptyCenter,
    #[error("center {0} is not contained in the chart divisor")]
    InvalidCenter(String),
    #[error("center {0} is not realized by any leaf")]
    NotRealized(String),
    #[error("exceptional label {0} is already in use")]
    LabelInUse(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Fabric(#[from] FabricError),
}

/// The substitution of one standard chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupChartMap {
    pub center: Stratum,
    pub selector: Var,
    pub exceptional: Var,
    pub substitution: BTreeMap<Var, Polynomial>,
}

impl BlowupChartMap {
    pub fn new(center: &Stratum, selector: &Var, exceptional: &Var) -> Self {
        assert!(center.contains(selector), "selector outside the center");
        let e = Polynomial::var(exceptional.clone());
        let substitution = center
            .iter()
            .map(|j| {
                let image = if j == selector { e.clone() } else { &e * &Polynomial::var(j.clone()) };
                (j.clone(), image)
            })
            .collect();
        BlowupChartMap {
            center: center.clone(),
            selector: selector.clone(),
            exceptional: exceptional.clone(),
            substitution,
        }
    }

    pub fn pull_back(&self, p: &Polynomial) -> Polynomial {
        p.substitute(&self.substitution)
    }

    /// `(D \ J) ∪ (J \ {j0}) ∪ {e}`.
    pub fn target_divisor(&self, divisor: &BTreeSet<Var>) -> BTreeSet<Var> {
        let mut out: BTreeSet<Var> = divisor.iter().filter(|v| *v != &self.selector).cloned().collect();
        out.insert(self.exceptional.clone());
        out
    }
}

/// One chart of a blow-up, with the family before exceptional saturation.
#[derive(Debug, Clone)]
pub struct ChartBlowup {
    pub map: BlowupChartMap,
    /// Pulled-back coefficients before dividing by the power of `e`.
    pub unsaturated: BTreeMap<Var, Polynomial>,
    /// The exponent of `e` that was divided out.
    pub removed: u32,
    pub chart: LogFormChart,
}

fn validate_center(chart: &LogFormChart, center: &Stratum, e: &Var) -> Result<(), BlowupError> {
    if center.is_empty() {
        return Err(BlowupError::EmptyCenter);
    }
    if !center.is_subset(chart.divisor()) {
        return Err(BlowupError::InvalidCenter(stratum_string(center)));
    }
    if chart.coefficients().contains_key(e) {
        return Err(BlowupError::LabelInUse(e.name().to_string()));
    }
    Ok(())
}

/// Pull-back of the form to chart `j0`, unsaturated.
pub fn pull_back_form(chart: &LogFormChart, map: &BlowupChartMap) -> BTreeMap<Var, Polynomial> {
    let mut out = BTreeMap::new();
    let mut a_e = Polynomial::zero();
    for (v, a) in chart.coefficients() {
        let pa = map.pull_back(a);
        if map.center.contains(v) {
            a_e = a_e + pa.clone();
            if v == &map.selector {
                continue;
            }
        }
        out.insert(v.clone(), pa);
    }
    out.insert(map.exceptional.clone(), a_e);
    out
}

pub fn blowup_chart_at(chart: &LogFormChart, center: &Stratum, selector: &Var, e: &Var) -> Result<ChartBlowup, BlowupError> {
    validate_center(chart, center, e)?;
    if !center.contains(selector) {
        return Err(BlowupError::InvalidCenter(stratum_string(center)));
    }
    let map = BlowupChartMap::new(center, selector, e);
    let unsaturated = pull_back_form(chart, &map);
    let family: Vec<Polynomial> = unsaturated.values().cloned().collect();
    let only_e: BTreeSet<Var> = [e.clone()].into();
    let content = monomial_content(&family, &only_e).map_err(|_| ModelError::ZeroForm)?;
    let removed = content.exponent(e);
    let coeffs: BTreeMap<Var, Polynomial> = unsaturated
        .iter()
        .map(|(v, p)| (v.clone(), p.div_monomial(&content).expect("content divides")))
        .collect();
    let mut new = LogFormChart::new(chart.id, map.target_divisor(chart.divisor()), chart.free().clone(), coeffs)?;
    new.provenance = Some(Provenance {
        parent: chart.id,
        center: center.clone(),
        selector: selector.clone(),
        exceptional: e.clone(),
        substitution: map.substitution.clone(),
    });
    Ok(ChartBlowup {
        map,
        unsaturated,
        removed,
        chart: new,
    })
}

/// The `|J|` standard charts, in selector order.
pub fn blowup_chart(chart: &LogFormChart, center: &Stratum, e: &Var) -> Result<Vec<ChartBlowup>, BlowupError> {
    validate_center(chart, center, e)?;
    center
        .iter()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|j0| blowup_chart_at(chart, center, j0, e))
        .collect()
}

/// Replaces every leaf containing `J` by its blow-up charts.
pub fn blowup_atlas(atlas: &Atlas, center: &Stratum) -> Result<Atlas, BlowupError> {
    if center.is_empty() {
        return Err(BlowupError::EmptyCenter);
    }
    let e = atlas.next_exceptional();
    let touched: Vec<&LogFormChart> = atlas.leaves().filter(|c| center.is_subset(c.divisor())).collect();
    if touched.is_empty() {
        return Err(BlowupError::NotRealized(stratum_string(center)));
    }
    let mut replacements = Vec::new();
    for leaf in touched {
        let kids = blowup_chart(leaf, center, &e)?;
        replacements.push((leaf.id, kids.into_iter().map(|k| k.chart).collect()));
    }
    let report = blowup_fabric(atlas.fabric(), center, &e)?;
    let mut out = atlas.clone();
    out.apply_blowup(center, e, replacements, report.fabric);
    Ok(out)
}

/// `nu_rho` of a coefficient family: the least weight of any term.
fn family_value(coeffs: &BTreeMap<Var, Polynomial>, rho: &WeightVector) -> Rational {
    coeffs
        .values()
        .flat_map(|p| p.terms().map(|(m, _)| rho.value_monomial(m)))
        .min()
        .expect("nonzero family")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PullbackValueReport {
    pub class: Vec<Var>,
    pub r: String,
    pub source_value: String,
    /// Per covering chart selector, the transported weight's value on the
    /// unsaturated pull-back.
    pub target_values: Vec<(Var, String)>,
    pub holds: bool,
}

/// Checks `nu_{rho'}(pi^* eta) = nu_rho(eta)` on every chart covering the
/// class of `rho`. The axes of `rho` are the stratum `K`; they must lie in
/// the divisor and contain the center.
pub fn pullback_value_invariance(chart: &LogFormChart, center: &Stratum, rho: &WeightVector) -> Result<PullbackValueReport, BlowupError> {
    let e = Var::new("e.0");
    validate_center(chart, center, &e)?;
    let k: Stratum = rho.axes().iter().cloned().collect();
    if !k.is_subset(chart.divisor()) || !center.is_subset(&k) {
        return Err(BlowupError::InvalidCenter(stratum_string(center)));
    }
    let (a, r) = weight_class(rho, center)?;
    let rho2 = weight_transport(rho, center, &a, &e)?;
    let source = family_value(chart.coefficients(), rho);
    let mut targets = Vec::new();
    for j0 in center.difference(&a) {
        let map = BlowupChartMap::new(center, j0, &e);
        let pulled = pull_back_form(chart, &map);
        targets.push((j0.clone(), family_value(&pulled, &rho2)));
    }
    let holds = targets.iter().all(|(_, v)| *v == source);
    Ok(PullbackValueReport {
        class: a.into_iter().collect(),
        r: r.to_string(),
        source_value: source.to_string(),
        target_values: targets.into_iter().map(|(v, x)| (v, x.to_string())).collect(),
        holds,
    })
}
