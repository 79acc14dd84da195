//! Deciding Newton non-degeneracy two ways: face by face on the given
//! atlas, and through a desingularization followed by a logSing test.

mod desing;
mod property;
pub mod witness;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Polynomial, Var};
use crate::fabric::{stratum_string, Stratum};
use crate::foliated::{
    initial_forms_on_face, logsing_empty, stratum_polyhedron, stratum_units, Atlas, ChartId,
    InitialFormSystem, LogFormChart, LogSing, ModelError,
};
use crate::groebner::{eliminate, fresh_var, saturate, saturation_contains_one, Decision, Fuel, FuelExhausted, Ideal};
use crate::polyhedra::{compact_faces, Face};

pub use desing::{admissible_centers, desingularize, DesingError, Desingularization, Strategy};
pub use property::{forward_point, property_case, property_s_suite, reverse_point, PropertyCase, PropertyReport};
pub use witness::{find_witness, Problem, Witness};

/// Why a space is degenerate: the chart, stratum and (for the direct
/// route) face where it happens, with whatever could be computed about it.
#[derive(Debug, Clone, Serialize)]
pub struct Evidence {
    pub chart: ChartId,
    #[serde(serialize_with = "ser_stratum")]
    pub stratum: Stratum,
    pub face: Option<Face>,
    /// The locus in chart coordinates off `J`.
    pub locus: Option<Ideal>,
    pub witness: Option<Witness>,
    /// The image of the locus in the coordinates of the root chart.
    pub root_locus: Option<Ideal>,
}

fn ser_stratum<S: serde::Serializer>(j: &Stratum, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(j.iter())
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Verdict {
    NonDegenerate,
    Degenerate { evidence: Box<Evidence> },
    Undetermined { reason: String },
}

impl Verdict {
    pub fn is_determined(&self) -> bool {
        !matches!(self, Verdict::Undetermined { .. })
    }

    pub fn is_non_degenerate(&self) -> bool {
        matches!(self, Verdict::NonDegenerate)
    }

    pub fn evidence(&self) -> Option<&Evidence> {
        match self {
            Verdict::Degenerate { evidence } => Some(evidence),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Verdict::NonDegenerate => "non-degenerate",
            Verdict::Degenerate { .. } => "degenerate",
            Verdict::Undetermined { .. } => "undetermined",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Undetermined { reason } => write!(f, "undetermined ({reason})"),
            Verdict::Degenerate { evidence } => {
                write!(f, "degenerate on chart c{} stratum {}", evidence.chart, stratum_string(&evidence.stratum))
            }
            Verdict::NonDegenerate => f.write_str("non-degenerate"),
        }
    }
}

/// Resource limits for both routes.
#[derive(Debug, Clone)]
pub struct Budget {
    pub fuel: Fuel,
    pub max_blowups: usize,
}

impl Budget {
    pub const DEFAULT_BLOWUPS: usize = 64;
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            fuel: Fuel::default(),
            max_blowups: Self::DEFAULT_BLOWUPS,
        }
    }
}

/// The unknowns of a face system: torus coordinates, which must be
/// nonzero, the divisor coordinates off `J`, also nonzero, and the free
/// coordinates.
fn face_problem(chart: &LogFormChart, sys: &InitialFormSystem) -> Problem {
    let j = &sys.stratum;
    let mut nonzero = sys.torus_vars();
    nonzero.extend(chart.divisor().iter().filter(|v| !j.contains(*v)).cloned());
    Problem {
        equations: sys.generators().into_iter().filter(|g| !g.is_zero()).collect(),
        nonzero,
        free: chart.free().iter().cloned().collect(),
    }
}

fn face_units(chart: &LogFormChart, sys: &InitialFormSystem) -> Polynomial {
    sys.torus_vars()
        .into_iter()
        .fold(stratum_units(chart, &sys.stratum), |acc, t| acc * Polynomial::var(t))
}

fn face_ideal(chart: &LogFormChart, sys: &InitialFormSystem) -> Ideal {
    let mut ambient = sys.torus_vars();
    ambient.extend(chart.variables().into_iter().filter(|v| !sys.stratum.contains(v)));
    Ideal::new(sys.generators(), ambient)
}

/// `Yes` when the face is non-degenerate, i.e. the initial forms have no
/// common zero with every torus and off-`J` divisor coordinate nonzero.
pub fn face_decision(chart: &LogFormChart, j: &Stratum, face: &Face, fuel: &Fuel) -> Result<Decision, ModelError> {
    let sys = initial_forms_on_face(chart, j, face)?;
    Ok(system_decision(chart, &sys, fuel))
}

fn system_decision(chart: &LogFormChart, sys: &InitialFormSystem, fuel: &Fuel) -> Decision {
    let units: BTreeSet<Var> = face_problem(chart, sys).nonzero.into_iter().collect();
    // a generator that is a single monomial in unit variables is already a unit
    let monomial_unit = sys
        .forms
        .values()
        .any(|g| g.len() == 1 && g.vars().iter().all(|v| units.contains(v)));
    if monomial_unit {
        return Decision::Yes;
    }
    saturation_contains_one(&face_ideal(chart, sys), &face_units(chart, sys), fuel)
}

/// The degeneracy locus of a face inside the stratum, as an ideal in the
/// chart coordinates off `J`; the unit ideal when it is empty.
pub fn degeneracy_locus(chart: &LogFormChart, j: &Stratum, face: &Face, fuel: &Fuel) -> Result<Ideal, LocusError> {
    let sys = initial_forms_on_face(chart, j, face)?;
    let ambient: Vec<Var> = chart.variables().into_iter().filter(|v| !j.contains(v)).collect();
    match system_decision(chart, &sys, fuel) {
        Decision::Yes => Ok(Ideal::unit(ambient)),
        Decision::Undetermined => Err(LocusError::Fuel(FuelExhausted::SPairs(fuel.max_spair_reductions))),
        Decision::No => {
            let sat = saturate(&face_ideal(chart, &sys), &face_units(chart, &sys), fuel)?;
            let out = eliminate(&sat, &sys.torus_vars(), fuel)?;
            Ok(Ideal::new(out.generators().to_vec(), ambient))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocusError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Fuel(#[from] FuelExhausted),
}

/// Every (chart, stratum, compact face) of the leaves, in leaf order, then
/// stratum order, then face order.
fn face_tasks(atlas: &Atlas) -> Result<Vec<(&LogFormChart, Stratum, Face)>, ModelError> {
    let strata: Vec<(&LogFormChart, Stratum)> = atlas
        .leaves()
        .flat_map(|c| c.strata().into_iter().map(move |j| (c, j)))
        .collect();
    let faces: Vec<Result<Vec<Face>, ModelError>> = strata
        .par_iter()
        .map(|(c, j)| {
            let (s, n) = stratum_polyhedron(c, j)?;
            Ok(compact_faces(&n, &s)?)
        })
        .collect();
    let mut out = Vec::new();
    for ((c, j), fs) in strata.into_iter().zip(faces) {
        for f in fs? {
            out.push((c, j.clone(), f));
        }
    }
    Ok(out)
}

/// Number of compact faces the direct route has to examine.
pub fn face_count(atlas: &Atlas) -> Result<usize, ModelError> {
    Ok(face_tasks(atlas)?.len())
}

/// Direct route: every compact face of every stratum of every leaf.
pub fn check_nnd_direct(atlas: &Atlas, fuel: &Fuel) -> Verdict {
    let tasks = match face_tasks(atlas) {
        Ok(t) => t,
        Err(e) => return Verdict::Undetermined { reason: e.to_string() },
    };
    let decisions: Vec<Result<Decision, ModelError>> =
        tasks.par_iter().map(|(c, j, f)| face_decision(c, j, f, fuel)).collect();
    let mut undetermined = 0usize;
    for ((c, j, face), d) in tasks.iter().zip(&decisions) {
        match d {
            Err(e) => return Verdict::Undetermined { reason: e.to_string() },
            Ok(Decision::Undetermined) => undetermined += 1,
            Ok(Decision::Yes) => {}
            Ok(Decision::No) => {
                return Verdict::Degenerate {
                    evidence: Box::new(face_evidence(atlas, c, j, face, fuel)),
                }
            }
        }
    }
    if undetermined > 0 {
        Verdict::Undetermined {
            reason: format!("fuel exhausted on {undetermined} of {} faces", tasks.len()),
        }
    } else {
        Verdict::NonDegenerate
    }
}

fn face_evidence(atlas: &Atlas, chart: &LogFormChart, j: &Stratum, face: &Face, fuel: &Fuel) -> Evidence {
    let sys = initial_forms_on_face(chart, j, face).expect("face of this chart");
    let locus = degeneracy_locus(chart, j, face, fuel).ok();
    let witness = find_witness(&face_problem(chart, &sys), fuel);
    let root_locus = locus.as_ref().and_then(|l| root_image(atlas, chart.id, j, l, fuel));
    Evidence {
        chart: chart.id,
        stratum: j.clone(),
        face: Some(face.clone()),
        locus,
        witness,
        root_locus,
    }
}

/// The composite blow-down map from `chart` to the root, as root variable
/// images in chart variables.
pub fn blowdown_map(atlas: &Atlas, chart: ChartId) -> BTreeMap<Var, Polynomial> {
    let mut map: BTreeMap<Var, Polynomial> = atlas
        .root()
        .variables()
        .into_iter()
        .map(|v| (v.clone(), Polynomial::var(v)))
        .collect();
    for id in atlas.ancestry(chart).into_iter().skip(1) {
        let prov = atlas.chart(id).provenance.as_ref().expect("non-root chart has provenance");
        for img in map.values_mut() {
            *img = img.substitute(&prov.substitution);
        }
    }
    map
}

/// Zariski closure of the image in root coordinates of a locus given on
/// stratum `j` of `chart`. Best effort: `None` if fuel runs out.
pub fn root_image(atlas: &Atlas, chart: ChartId, j: &Stratum, locus: &Ideal, fuel: &Fuel) -> Option<Ideal> {
    let c = atlas.chart(chart);
    let phi = blowdown_map(atlas, chart);
    let root_vars = atlas.root().variables();
    let mut taken: Vec<Var> = root_vars.clone();
    let mut rename = BTreeMap::new();
    for v in c.variables() {
        let fresh = fresh_var(&format!("p{}", v.name()), taken.iter().chain(c.variables().iter()));
        taken.push(fresh.clone());
        rename.insert(v, Polynomial::var(fresh));
    }
    let mut gens: Vec<Polynomial> = locus.generators().iter().map(|g| g.substitute(&rename)).collect();
    gens.extend(j.iter().map(|v| rename[v].clone()));
    for (x, img) in &phi {
        gens.push(Polynomial::var(x.clone()) - img.substitute(&rename));
    }
    let front: Vec<Var> = rename.values().flat_map(|p| p.vars()).collect();
    let ideal = Ideal::new(gens, root_vars.iter().cloned().chain(front.iter().cloned()));
    eliminate(&ideal, &front, fuel).ok()
}

/// Outcome of the theorem route, with the desingularization it used.
#[derive(Debug, Clone)]
pub struct TheoremRun {
    pub verdict: Verdict,
    pub centers: Vec<Stratum>,
    pub atlas: Option<Atlas>,
}

/// Theorem route: desingularize with `strategy`, then non-degeneracy holds
/// iff logSing of the result is empty.
pub fn theorem_route(atlas: &Atlas, strategy: Strategy, budget: &Budget) -> TheoremRun {
    let d = match desingularize(atlas, strategy, budget.max_blowups) {
        Ok(d) => d,
        Err(DesingError::Exhausted { limit, .. }) => {
            return TheoremRun {
                verdict: Verdict::Undetermined {
                    reason: format!("blow-up budget of {limit} exhausted"),
                },
                centers: Vec::new(),
                atlas: None,
            }
        }
        Err(e) => {
            return TheoremRun {
                verdict: Verdict::Undetermined { reason: e.to_string() },
                centers: Vec::new(),
                atlas: None,
            }
        }
    };
    let verdict = match logsing_empty(&d.atlas, &budget.fuel) {
        LogSing::Empty => Verdict::NonDegenerate,
        LogSing::Undetermined(strata) => Verdict::Undetermined {
            reason: format!("fuel exhausted on {} strata", strata.len()),
        },
        LogSing::Nonempty(loci) => {
            let first = &loci[0];
            let c = d.atlas.chart(first.chart);
            let problem = Problem {
                equations: first.ideal.generators().to_vec(),
                nonzero: c.divisor().iter().filter(|v| !first.stratum.contains(*v)).cloned().collect(),
                free: c.free().iter().cloned().collect(),
            };
            let witness = find_witness(&problem, &budget.fuel);
            let root_locus = root_image(&d.atlas, first.chart, &first.stratum, &first.ideal, &budget.fuel);
            Verdict::Degenerate {
                evidence: Box::new(Evidence {
                    chart: first.chart,
                    stratum: first.stratum.clone(),
                    face: None,
                    locus: Some(first.ideal.clone()),
                    witness,
                    root_locus,
                }),
            }
        }
    };
    TheoremRun {
        verdict,
        centers: d.centers,
        atlas: Some(d.atlas),
    }
}

pub fn check_nnd_via_theorem(atlas: &Atlas, strategy: Strategy, budget: &Budget) -> Verdict {
    theorem_route(atlas, strategy, budget).verdict
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Agreement {
    Agree,
    Disagree,
    Undetermined,
}

#[derive(Debug, Clone, Serialize)]
pub struct Equivalence {
    pub direct: Verdict,
    pub theorem: Verdict,
    pub agreement: Agreement,
    #[serde(serialize_with = "ser_centers")]
    pub centers: Vec<Stratum>,
}

fn ser_centers<S: serde::Serializer>(cs: &[Stratum], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(cs.iter().map(|j| j.iter().map(Var::name).collect::<Vec<_>>()))
}

pub fn agreement(a: &Verdict, b: &Verdict) -> Agreement {
    if !a.is_determined() || !b.is_determined() {
        Agreement::Undetermined
    } else if a.is_non_degenerate() == b.is_non_degenerate() {
        Agreement::Agree
    } else {
        Agreement::Disagree
    }
}

/// Runs both routes on the same input.
pub fn verify_equivalence(atlas: &Atlas, strategy: Strategy, budget: &Budget) -> Equivalence {
    let (direct, run) = rayon::join(
        || check_nnd_direct(atlas, &budget.fuel),
        || theorem_route(atlas, strategy, budget),
    );
    Equivalence {
        agreement: agreement(&direct, &run.verdict),
        direct,
        theorem: run.verdict,
        centers: run.centers,
    }
}
