//! The chart model of a logarithmic foliated space: log forms on polynomial
//! charts, the log singular locus, Newton polyhedra systems and weighted
//! initial forms.

mod chart;
mod load;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{divisor_expansion, Monomial, ParseError, Polynomial, Rational, Var};
use crate::fabric::{stratum_string, Stratum};
use crate::groebner::{saturate, saturation_contains_one, Decision, Fuel, Ideal};
use crate::polyhedra::{
    minimal_face, newton_vertices, Face, NewtonPolyhedron, PolyhedraError, PolyhedraSystem, Point, SupportSet,
    WeightVector,
};

pub use chart::{Atlas, BlowupRecord, ChartId, LogFormChart, Provenance};
pub use load::{load_space, load_space_json, SpaceDocument, Style};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid document: {0}")]
    Json(String),
    #[error("coefficient of {var}: {source}")]
    Parse { var: String, source: ParseError },
    #[error("variable name {0} is reserved for exceptional divisors")]
    ReservedName(String),
    #[error("invalid variable name {0:?}")]
    InvalidName(String),
    #[error("variable {0} declared twice")]
    DuplicateVariable(String),
    #[error("coefficient given for undeclared variable {0}")]
    UnknownCoefficient(String),
    #[error("no coefficient given for {0}")]
    MissingCoefficient(String),
    #[error("coefficient uses undeclared variable {0}")]
    ForeignVariable(String),
    #[error("the form is identically zero")]
    ZeroForm,
    #[error("coefficients share the divisor monomial {0}")]
    MonomialContent(String),
    #[error("coefficients share the factor {0}")]
    CommonFactor(String),
    #[error("{0} is not a stratum of the chart")]
    NotAStratum(String),
    #[error("point does not assign {0}")]
    IncompletePoint(String),
    #[error("projection of N_{from} onto {to} differs from N_{to}")]
    IncompatibleProjection { from: String, to: String },
    #[error(transparent)]
    Polyhedra(#[from] PolyhedraError),
}

/// Name of the torus variable attached to divisor variable `v`.
pub fn torus_var(v: &Var) -> Var {
    Var::new(format!("T.{}", v.name()))
}

fn check_stratum(chart: &LogFormChart, j: &Stratum) -> Result<(), ModelError> {
    if j.is_subset(chart.divisor()) {
        Ok(())
    } else {
        Err(ModelError::NotAStratum(stratum_string(j)))
    }
}

/// A coefficient of the generator adapted to a stratum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptedCoefficient {
    pub var: Var,
    pub poly: Polynomial,
    /// The coefficient of `dx/x` for a divisor variable that is a unit on
    /// the stratum; it differs from the adapted one by that unit, so zero
    /// sets must be saturated by [`stratum_units`].
    pub unit_scaled: bool,
}

pub fn adapted_coefficients(chart: &LogFormChart, j: &Stratum) -> Result<Vec<AdaptedCoefficient>, ModelError> {
    check_stratum(chart, j)?;
    Ok(chart
        .coefficients()
        .iter()
        .map(|(v, p)| AdaptedCoefficient {
            var: v.clone(),
            poly: p.clone(),
            unit_scaled: chart.divisor().contains(v) && !j.contains(v),
        })
        .collect())
}

/// Product of the divisor variables that do not vanish on the stratum.
pub fn stratum_units(chart: &LogFormChart, j: &Stratum) -> Polynomial {
    let m = Monomial::from_pairs(chart.divisor().difference(j).map(|v| (v.clone(), 1)));
    Polynomial::term(m, num_traits::One::one())
}

/// `Supp` along `J`: the `J`-exponents of every coefficient.
pub fn stratum_support(chart: &LogFormChart, j: &Stratum) -> Result<SupportSet, ModelError> {
    check_stratum(chart, j)?;
    let mut monos: BTreeSet<Monomial> = BTreeSet::new();
    for p in chart.coefficients().values() {
        monos.extend(divisor_expansion(p, j).into_keys());
    }
    Ok(SupportSet::from_monomials(j.iter().cloned(), monos.iter()))
}

pub fn stratum_polyhedron(chart: &LogFormChart, j: &Stratum) -> Result<(SupportSet, NewtonPolyhedron), ModelError> {
    let s = stratum_support(chart, j)?;
    let n = newton_vertices(&s)?;
    Ok((s, n))
}

/// `N_J` for every stratum of the fabric, from the union of supports over
/// the leaves realizing `J`. Fails if projection compatibility breaks.
pub fn newton_polyhedra_system(atlas: &Atlas) -> Result<PolyhedraSystem, ModelError> {
    let strata = atlas.fabric().strata();
    let polys: Vec<(Stratum, NewtonPolyhedron)> = strata
        .par_iter()
        .map(|j| {
            let mut union = SupportSet::new(j.iter().cloned());
            for leaf in atlas.leaves().filter(|c| j.is_subset(c.divisor())) {
                for p in stratum_support(leaf, j)?.points() {
                    union.insert(p.clone());
                }
            }
            Ok((j.clone(), newton_vertices(&union)?))
        })
        .collect::<Result<_, ModelError>>()?;
    let mut sys = PolyhedraSystem::new();
    for (j, n) in polys {
        sys.insert(j, n);
    }
    check_projection_compatibility(&sys)?;
    Ok(sys)
}

/// For `J ⊂ J'` differing by one label, projecting `N_{J'}` gives `N_J`.
pub fn check_projection_compatibility(sys: &PolyhedraSystem) -> Result<(), ModelError> {
    for (big, n) in sys.iter() {
        for drop in big {
            let mut small = big.clone();
            small.remove(drop);
            let Some(expected) = sys.get(&small) else {
                continue;
            };
            let small_axes: Vec<Var> = small.iter().cloned().collect();
            let verts = SupportSet::from_points(n.axes().iter().cloned(), n.vertices().iter().cloned());
            let projected = newton_vertices(&verts.project(&small_axes)?)?;
            if &projected != expected {
                return Err(ModelError::IncompatibleProjection {
                    from: stratum_string(big),
                    to: stratum_string(&small),
                });
            }
        }
    }
    Ok(())
}

/// Minimum vanishing order of the coefficients at a rational point.
pub fn log_order(chart: &LogFormChart, point: &BTreeMap<Var, Rational>) -> Result<u32, ModelError> {
    let mut shift = BTreeMap::new();
    for v in chart.variables() {
        let c = point
            .get(&v)
            .ok_or_else(|| ModelError::IncompletePoint(v.name().to_string()))?;
        shift.insert(v.clone(), Polynomial::var(v.clone()) + Polynomial::constant(c.clone()));
    }
    Ok(chart
        .coefficients()
        .values()
        .filter(|p| !p.is_zero())
        .map(|p| {
            p.substitute(&shift)
                .terms()
                .map(|(m, _)| m.degree())
                .min()
                .expect("nonzero")
        })
        .min()
        .expect("the form is nonzero"))
}

/// Coefficient ideal on `{x_J = 0}`; its zero set minus `V(units)` is the
/// part of logSing on the stratum.
pub fn logsing_stratum_ideal(chart: &LogFormChart, j: &Stratum) -> Result<(Ideal, Polynomial), ModelError> {
    check_stratum(chart, j)?;
    let zeros: BTreeMap<Var, Rational> = j.iter().map(|v| (v.clone(), num_traits::Zero::zero())).collect();
    let gens: Vec<Polynomial> = chart.coefficients().values().map(|p| p.evaluate_partial(&zeros)).collect();
    let ambient = chart.variables().into_iter().filter(|v| !j.contains(v));
    Ok((Ideal::new(gens, ambient), stratum_units(chart, j)))
}

/// A nonempty piece of logSing: the zero set of `ideal` inside the stratum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumLocus {
    pub chart: ChartId,
    pub stratum: Stratum,
    pub ideal: Ideal,
    /// Whether `ideal` is already saturated by the stratum units.
    pub saturated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LogSing {
    Empty,
    Nonempty(Vec<StratumLocus>),
    Undetermined(Vec<(ChartId, Stratum)>),
}

impl LogSing {
    pub fn decision(&self) -> Decision {
        match self {
            LogSing::Empty => Decision::Yes,
            LogSing::Nonempty(_) => Decision::No,
            LogSing::Undetermined(_) => Decision::Undetermined,
        }
    }
}

/// Decides `logSing = ∅` over every leaf and every stratum of each leaf.
pub fn logsing_empty(atlas: &Atlas, fuel: &Fuel) -> LogSing {
    let tasks: Vec<(&LogFormChart, Stratum)> = atlas
        .leaves()
        .flat_map(|c| c.strata().into_iter().map(move |j| (c, j)))
        .collect();
    let results: Vec<(ChartId, Stratum, Decision, Option<StratumLocus>)> = tasks
        .par_iter()
        .map(|(c, j)| {
            let (ideal, units) = logsing_stratum_ideal(c, j).expect("chart strata");
            let d = saturation_contains_one(&ideal, &units, fuel);
            let locus = (d == Decision::No).then(|| match saturate(&ideal, &units, fuel) {
                Ok(sat) => StratumLocus {
                    chart: c.id,
                    stratum: j.clone(),
                    ideal: sat,
                    saturated: true,
                },
                Err(_) => StratumLocus {
                    chart: c.id,
                    stratum: j.clone(),
                    ideal,
                    saturated: false,
                },
            });
            (c.id, j.clone(), d, locus)
        })
        .collect();
    let nonempty: Vec<StratumLocus> = results.iter().filter_map(|r| r.3.clone()).collect();
    if !nonempty.is_empty() {
        return LogSing::Nonempty(nonempty);
    }
    let undetermined: Vec<(ChartId, Stratum)> = results
        .into_iter()
        .filter(|r| r.2 == Decision::Undetermined)
        .map(|r| (r.0, r.1))
        .collect();
    if undetermined.is_empty() {
        LogSing::Empty
    } else {
        LogSing::Undetermined(undetermined)
    }
}

/// The weighted initial forms `A_v[T]` of a chart along a stratum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialFormSystem {
    pub chart: ChartId,
    pub stratum: Stratum,
    pub weight: WeightVector,
    pub value: Rational,
    pub face_points: Vec<Point>,
    /// One entry per chart variable; polynomials in the torus variables of
    /// `J` and the chart variables off `J`.
    pub forms: BTreeMap<Var, Polynomial>,
}

impl InitialFormSystem {
    pub fn torus_vars(&self) -> Vec<Var> {
        self.stratum.iter().map(torus_var).collect()
    }

    pub fn generators(&self) -> Vec<Polynomial> {
        self.forms.values().cloned().collect()
    }
}

pub fn initial_form_system(chart: &LogFormChart, j: &Stratum, rho: &WeightVector) -> Result<InitialFormSystem, ModelError> {
    let (s, n) = stratum_polyhedron(chart, j)?;
    let face = minimal_face(&n, rho, &s)?;
    initial_forms_on_face(chart, j, &face)
}

/// Initial forms read off the points of `face`.
pub fn initial_forms_on_face(chart: &LogFormChart, j: &Stratum, face: &Face) -> Result<InitialFormSystem, ModelError> {
    check_stratum(chart, j)?;
    let axes: Vec<Var> = j.iter().cloned().collect();
    if face.weight.axes() != axes.as_slice() {
        return Err(PolyhedraError::AxisMismatch.into());
    }
    let on_face: BTreeSet<Monomial> = face
        .points
        .iter()
        .map(|p| crate::polyhedra::point_monomial(&axes, p))
        .collect();
    let rename: BTreeMap<Var, Var> = axes.iter().map(|v| (v.clone(), torus_var(v))).collect();
    let mut forms = BTreeMap::new();
    for (v, p) in chart.coefficients() {
        let mut a = Polynomial::zero();
        for (sigma, coeff) in divisor_expansion(p, j) {
            if on_face.contains(&sigma) {
                let t = Monomial::from_pairs(sigma.iter().map(|(x, k)| (rename[x].clone(), k)));
                a = a + coeff.mul_monomial(&t);
            }
        }
        forms.insert(v.clone(), a);
    }
    Ok(InitialFormSystem {
        chart: chart.id,
        stratum: j.clone(),
        weight: face.weight.clone(),
        value: face.value.clone(),
        face_points: face.points.clone(),
        forms,
    })
}

/// Frobenius test `omega ∧ d omega = 0` for `omega = eta * prod x_D`.
/// Exact polynomial identity, so never undetermined.
pub fn integrability_check(chart: &LogFormChart) -> Decision {
    let vars = chart.variables();
    let all_d = Monomial::from_pairs(chart.divisor().iter().map(|v| (v.clone(), 1)));
    let f: Vec<Polynomial> = vars
        .iter()
        .map(|v| {
            let a = chart.coefficient(v);
            if chart.divisor().contains(v) {
                a.mul_monomial(&all_d.without(v))
            } else {
                a.mul_monomial(&all_d)
            }
        })
        .collect();
    let n = vars.len();
    let d = |i: usize, k: usize| f[k].derivative(&vars[i]);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let c = &f[i] * &(d(j, k) - d(k, j)) - &f[j] * &(d(i, k) - d(k, i)) + &f[k] * &(d(i, j) - d(j, i));
                if !c.is_zero() {
                    return Decision::No;
                }
            }
        }
    }
    Decision::Yes
}
