//! Support fabrics (the combinatorics of divisor strata), their blow-ups,
//! and transport of weight vectors and exponents across a blow-up.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Monomial, Rational, Var};
use crate::polyhedra::WeightVector;

/// Index set of a stratum: the divisor labels vanishing on it.
pub type Stratum = BTreeSet<Var>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FabricError {
    #[error("stratum {0} is not in the fabric")]
    NotInFabric(String),
    #[error("empty center")]
    EmptyCenter,
    #[error("center is not contained in the weight axes")]
    CenterOutsideAxes,
    #[error("weight vector lies in class {actual} rather than {expected}")]
    WrongClass { expected: String, actual: String },
    #[error("weight vector is missing the exceptional axis {0}")]
    MissingExceptional(Var),
}

pub fn stratum_string(j: &Stratum) -> String {
    let names: Vec<&str> = j.iter().map(Var::name).collect();
    format!("{{{}}}", names.join(","))
}

pub fn stratum<S: AsRef<str>>(labels: &[S]) -> Stratum {
    labels.iter().map(|s| Var::new(s.as_ref())).collect()
}

/// A downward-closed family of strata, stored as its maximal members.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SupportFabric {
    maximal: BTreeSet<Stratum>,
}

impl SupportFabric {
    /// Downward closure of `generators`; always contains the empty stratum.
    pub fn generated_by(generators: impl IntoIterator<Item = Stratum>) -> Self {
        let all: BTreeSet<Stratum> = generators.into_iter().collect();
        let maximal = all
            .iter()
            .filter(|k| !all.iter().any(|l| l != *k && k.is_subset(l)))
            .cloned()
            .collect();
        SupportFabric { maximal }
    }

    pub fn maximal(&self) -> impl Iterator<Item = &Stratum> {
        self.maximal.iter()
    }

    pub fn contains(&self, j: &Stratum) -> bool {
        j.is_empty() || self.maximal.iter().any(|k| j.is_subset(k))
    }

    pub fn labels(&self) -> BTreeSet<Var> {
        self.maximal.iter().flatten().cloned().collect()
    }

    /// Every stratum, in (size, lexicographic) order.
    pub fn strata(&self) -> Vec<Stratum> {
        let mut out: BTreeSet<Stratum> = BTreeSet::new();
        out.insert(Stratum::new());
        for k in &self.maximal {
            for sub in subsets(k) {
                out.insert(sub);
            }
        }
        let mut v: Vec<Stratum> = out.into_iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }
}

/// All subsets of `k`, including the empty set and `k`.
pub fn subsets(k: &Stratum) -> Vec<Stratum> {
    let items: Vec<&Var> = k.iter().collect();
    assert!(items.len() < 32, "stratum too large to enumerate");
    (0u32..(1 << items.len()))
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, v)| (*v).clone())
                .collect()
        })
        .collect()
}

/// `K'(A) = (K \ J) ∪ A ∪ {e}`.
pub fn transformed_stratum(k: &Stratum, j: &Stratum, a: &Stratum, e: &Var) -> Stratum {
    let mut out: Stratum = k.difference(j).cloned().collect();
    out.extend(a.iter().cloned());
    out.insert(e.clone());
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FabricBlowupReport {
    pub center: Stratum,
    pub exceptional: Var,
    /// Strata containing the center; they disappear.
    pub removed: Vec<Stratum>,
    /// Strata not containing the center.
    pub kept: Vec<Stratum>,
    /// For each removed `K`, the strata `K'(A)` for `A ⊊ J`.
    pub created: BTreeMap<String, Vec<Stratum>>,
    #[serde(skip)]
    pub fabric: SupportFabric,
}

pub fn blowup_fabric(h: &SupportFabric, j: &Stratum, e: &Var) -> Result<FabricBlowupReport, FabricError> {
    if j.is_empty() {
        return Err(FabricError::EmptyCenter);
    }
    if !h.contains(j) {
        return Err(FabricError::NotInFabric(stratum_string(j)));
    }
    let (removed, kept): (Vec<Stratum>, Vec<Stratum>) = h.strata().into_iter().partition(|k| j.is_subset(k));
    let proper: Vec<Stratum> = subsets(j).into_iter().filter(|a| a != j).collect();
    let mut created = BTreeMap::new();
    let mut generators: Vec<Stratum> = kept.clone();
    for k in &removed {
        let news: Vec<Stratum> = proper.iter().map(|a| transformed_stratum(k, j, a, e)).collect();
        generators.extend(news.iter().cloned());
        created.insert(stratum_string(k), news);
    }
    Ok(FabricBlowupReport {
        center: j.clone(),
        exceptional: e.clone(),
        removed,
        kept,
        created,
        fabric: SupportFabric::generated_by(generators),
    })
}

/// The class `A ⊊ J` of a weight vector: `r = min_J rho` and `A` the axes of
/// `J` where `rho` exceeds `r`.
pub fn weight_class(rho: &WeightVector, j: &Stratum) -> Result<(Stratum, Rational), FabricError> {
    if j.is_empty() {
        return Err(FabricError::EmptyCenter);
    }
    let values: Vec<(&Var, &Rational)> = j
        .iter()
        .map(|v| rho.get(v).map(|r| (v, r)).ok_or(FabricError::CenterOutsideAxes))
        .collect::<Result<_, _>>()?;
    let r = values.iter().map(|(_, r)| *r).min().unwrap().clone();
    let a = values.iter().filter(|(_, x)| **x > r).map(|(v, _)| (*v).clone()).collect();
    Ok((a, r))
}

/// `phi_K^A`: the weight vector on `K'(A)` corresponding to `rho` on `K`.
pub fn weight_transport(rho: &WeightVector, j: &Stratum, a: &Stratum, e: &Var) -> Result<WeightVector, FabricError> {
    let (actual, r) = weight_class(rho, j)?;
    if &actual != a {
        return Err(FabricError::WrongClass {
            expected: stratum_string(a),
            actual: stratum_string(&actual),
        });
    }
    let mut pairs: Vec<(Var, Rational)> = Vec::new();
    for (v, x) in rho.axes().iter().zip(rho.entries()) {
        if !j.contains(v) {
            pairs.push((v.clone(), x.clone()));
        } else if a.contains(v) {
            pairs.push((v.clone(), x - &r));
        }
    }
    pairs.push((e.clone(), r));
    Ok(WeightVector::new(pairs).expect("transported entries are positive"))
}

/// Inverse of [`weight_transport`]: recovers `rho` on `K = (K' \ {e}) ∪ J`.
pub fn weight_transport_inverse(rho2: &WeightVector, j: &Stratum, e: &Var) -> Result<WeightVector, FabricError> {
    let re = rho2.get(e).ok_or_else(|| FabricError::MissingExceptional(e.clone()))?.clone();
    let mut pairs: Vec<(Var, Rational)> = Vec::new();
    for (v, x) in rho2.axes().iter().zip(rho2.entries()) {
        if v == e {
            continue;
        }
        if j.contains(v) {
            pairs.push((v.clone(), x + &re));
        } else {
            pairs.push((v.clone(), x.clone()));
        }
    }
    for v in j {
        if rho2.get(v).is_none() {
            pairs.push((v.clone(), re.clone()));
        }
    }
    debug_assert!(pairs.iter().all(|(_, x)| x.is_positive()));
    Ok(WeightVector::new(pairs).expect("inverse entries are positive"))
}

/// `lambda(sigma)`: the exponent of the pull-back of `x^sigma` in chart
/// `j0`, up to a unit. Entries off `J` and on `J \ {j0}` are kept; the
/// exceptional entry is the sum over `J`.
pub fn exponent_transport(sigma: &Monomial, j: &Stratum, j0: &Var, e: &Var) -> Monomial {
    assert!(j.contains(j0), "selector must lie in the center");
    let sum: u32 = j.iter().map(|v| sigma.exponent(v)).sum();
    Monomial::from_pairs(
        sigma
            .iter()
            .filter(|(v, _)| *v != j0)
            .map(|(v, k)| (v.clone(), k))
            .chain(std::iter::once((e.clone(), sum))),
    )
}

#[cfg(test)]
mod tests;
