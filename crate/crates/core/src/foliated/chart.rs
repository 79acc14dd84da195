use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::algebra::{monomial_content, Polynomial, Var};
use crate::fabric::{Stratum, SupportFabric};

use super::ModelError;

pub type ChartId = usize;

/// How a chart arose from its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub parent: ChartId,
    pub center: Stratum,
    pub selector: Var,
    pub exceptional: Var,
    /// Images of the parent's variables in this chart's coordinates.
    pub substitution: BTreeMap<Var, Polynomial>,
}

/// `eta = sum_{j in D} a_j dx_j/x_j + sum_l a_l dy_l` on a polynomial chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogFormChart {
    pub id: ChartId,
    divisor: BTreeSet<Var>,
    free: BTreeSet<Var>,
    coefficients: BTreeMap<Var, Polynomial>,
    pub provenance: Option<Provenance>,
}

impl LogFormChart {
    /// Every chart variable gets an entry (missing ones are zero). Rejects
    /// the zero form, foreign variables and monomial content in `D`.
    pub fn new(
        id: ChartId,
        divisor: BTreeSet<Var>,
        free: BTreeSet<Var>,
        coefficients: BTreeMap<Var, Polynomial>,
    ) -> Result<Self, ModelError> {
        if let Some(v) = divisor.intersection(&free).next() {
            return Err(ModelError::DuplicateVariable(v.name().to_string()));
        }
        let vars: BTreeSet<Var> = divisor.union(&free).cloned().collect();
        let mut coeffs = BTreeMap::new();
        for (v, p) in coefficients {
            if !vars.contains(&v) {
                return Err(ModelError::UnknownCoefficient(v.name().to_string()));
            }
            if let Some(w) = p.vars().into_iter().find(|w| !vars.contains(w)) {
                return Err(ModelError::ForeignVariable(w.name().to_string()));
            }
            coeffs.insert(v, p);
        }
        for v in &vars {
            coeffs.entry(v.clone()).or_insert_with(Polynomial::zero);
        }
        let family: Vec<Polynomial> = coeffs.values().cloned().collect();
        let content = monomial_content(&family, &divisor).map_err(|_| ModelError::ZeroForm)?;
        if !content.is_one() {
            return Err(ModelError::MonomialContent(content.to_string()));
        }
        Ok(LogFormChart {
            id,
            divisor,
            free,
            coefficients: coeffs,
            provenance: None,
        })
    }

    pub fn divisor(&self) -> &BTreeSet<Var> {
        &self.divisor
    }

    pub fn free(&self) -> &BTreeSet<Var> {
        &self.free
    }

    /// All chart variables in global order.
    pub fn variables(&self) -> Vec<Var> {
        self.coefficients.keys().cloned().collect()
    }

    pub fn coefficient(&self, v: &Var) -> &Polynomial {
        &self.coefficients[v]
    }

    pub fn coefficients(&self) -> &BTreeMap<Var, Polynomial> {
        &self.coefficients
    }

    pub fn family(&self) -> Vec<Polynomial> {
        self.coefficients.values().cloned().collect()
    }

    /// Some coefficient is a nonzero constant.
    pub fn has_unit_coefficient(&self) -> bool {
        self.coefficients.values().any(Polynomial::is_nonzero_constant)
    }

    /// Strata realized by this chart: all subsets of its divisor set.
    pub fn strata(&self) -> Vec<Stratum> {
        let mut v = crate::fabric::subsets(&self.divisor);
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }

    /// `x^sigma * eta`: the same foliation with every coefficient
    /// multiplied by a monomial. The result is deliberately unsaturated.
    pub fn rescaled(&self, sigma: &crate::algebra::Monomial) -> LogFormChart {
        let mut out = self.clone();
        for p in out.coefficients.values_mut() {
            *p = p.mul_monomial(sigma);
        }
        out
    }

    pub fn name(&self) -> String {
        format!("c{}", self.id)
    }
}

impl fmt::Display for LogFormChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, a) in &self.coefficients {
            if a.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if self.divisor.contains(v) {
                write!(f, "({a}) d{v}/{v}")?;
            } else {
                write!(f, "({a}) d{v}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// One applied blow-up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlowupRecord {
    pub center: Vec<Var>,
    pub exceptional: Var,
    /// Leaves that were replaced, with the charts that replaced them.
    pub replaced: Vec<(ChartId, Vec<ChartId>)>,
}

/// A tree of charts; the leaves are the current model.
#[derive(Debug, Clone)]
pub struct Atlas {
    charts: Vec<LogFormChart>,
    children: Vec<Vec<ChartId>>,
    leaves: Vec<ChartId>,
    fabric: SupportFabric,
    log: Vec<BlowupRecord>,
}

impl Atlas {
    pub fn from_root(mut root: LogFormChart) -> Self {
        root.id = 0;
        root.provenance = None;
        let fabric = SupportFabric::generated_by([root.divisor.clone()]);
        Atlas {
            charts: vec![root],
            children: vec![Vec::new()],
            leaves: vec![0],
            fabric,
            log: Vec::new(),
        }
    }

    pub fn root(&self) -> &LogFormChart {
        &self.charts[0]
    }

    pub fn chart(&self, id: ChartId) -> &LogFormChart {
        &self.charts[id]
    }

    pub fn charts(&self) -> &[LogFormChart] {
        &self.charts
    }

    pub fn children(&self, id: ChartId) -> &[ChartId] {
        &self.children[id]
    }

    pub fn leaf_ids(&self) -> &[ChartId] {
        &self.leaves
    }

    pub fn leaves(&self) -> impl Iterator<Item = &LogFormChart> {
        self.leaves.iter().map(|&i| &self.charts[i])
    }

    pub fn fabric(&self) -> &SupportFabric {
        &self.fabric
    }

    pub fn log(&self) -> &[BlowupRecord] {
        &self.log
    }

    pub fn blowup_count(&self) -> usize {
        self.log.len()
    }

    /// Label for the next exceptional divisor: `e1`, `e2`, ...
    pub fn next_exceptional(&self) -> Var {
        crate::algebra::exceptional_label(self.log.len() + 1)
    }

    /// Path from the root to `id`, inclusive.
    pub fn ancestry(&self, id: ChartId) -> Vec<ChartId> {
        let mut path = vec![id];
        let mut cur = id;
        while let Some(p) = &self.charts[cur].provenance {
            cur = p.parent;
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// Applies a blow-up already computed per leaf: `replacements` maps a
    /// leaf to its new charts (ids are reassigned here).
    pub(crate) fn apply_blowup(
        &mut self,
        center: &Stratum,
        exceptional: Var,
        replacements: Vec<(ChartId, Vec<LogFormChart>)>,
        fabric: SupportFabric,
    ) {
        let mut replaced = Vec::new();
        let mut new_leaves = Vec::new();
        let mut by_leaf: BTreeMap<ChartId, Vec<LogFormChart>> = replacements.into_iter().collect();
        for &leaf in &self.leaves.clone() {
            match by_leaf.remove(&leaf) {
                Some(kids) => {
                    let mut ids = Vec::new();
                    for mut k in kids {
                        let id = self.charts.len();
                        k.id = id;
                        self.charts.push(k);
                        self.children.push(Vec::new());
                        self.children[leaf].push(id);
                        ids.push(id);
                        new_leaves.push(id);
                    }
                    replaced.push((leaf, ids));
                }
                None => new_leaves.push(leaf),
            }
        }
        self.leaves = new_leaves;
        self.fabric = fabric;
        self.log.push(BlowupRecord {
            center: center.iter().cloned().collect(),
            exceptional,
            replaced,
        });
    }
}
