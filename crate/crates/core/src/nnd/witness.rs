//! Best-effort witnesses for nonempty degeneracy loci: a small rational
//! grid search, then a numeric fallback through a lexicographic basis.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::algebra::{rat, Monomial, Polynomial, Rational, Var};
use crate::groebner::{buchberger, fresh_var, Fuel, Ideal, TermOrder};

/// Values of the unknowns of a system: torus coordinates and stratum point.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    Rational(BTreeMap<Var, Rational>),
    Numeric { values: BTreeMap<Var, Complex64>, residual: f64 },
}

impl Witness {
    pub fn is_rational(&self) -> bool {
        matches!(self, Witness::Rational(_))
    }

    pub fn rational(&self) -> Option<&BTreeMap<Var, Rational>> {
        match self {
            Witness::Rational(m) => Some(m),
            Witness::Numeric { .. } => None,
        }
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        match self {
            Witness::Rational(vals) => {
                m.serialize_entry("kind", "rational")?;
                let v: BTreeMap<&str, String> = vals.iter().map(|(k, x)| (k.name(), x.to_string())).collect();
                m.serialize_entry("values", &v)?;
            }
            Witness::Numeric { values, residual } => {
                m.serialize_entry("kind", "numeric")?;
                let v: BTreeMap<&str, [f64; 2]> = values.iter().map(|(k, z)| (k.name(), [z.re, z.im])).collect();
                m.serialize_entry("values", &v)?;
                m.serialize_entry("residual", residual)?;
            }
        }
        m.end()
    }
}

/// A polynomial system whose solutions must avoid `nonzero` coordinate
/// hyperplanes.
#[derive(Debug, Clone)]
pub struct Problem {
    pub equations: Vec<Polynomial>,
    /// Unknowns required to be nonzero.
    pub nonzero: Vec<Var>,
    /// Unknowns with no constraint.
    pub free: Vec<Var>,
}

impl Problem {
    fn unknowns(&self) -> Vec<Var> {
        let mut all: Vec<Var> = self.nonzero.iter().chain(&self.free).cloned().collect();
        all.sort();
        all
    }

    /// Exact check of a rational assignment.
    pub fn satisfied_by(&self, vals: &BTreeMap<Var, Rational>) -> bool {
        self.nonzero.iter().all(|v| vals.get(v).is_some_and(|x| !x.is_zero()))
            && self.free.iter().all(|v| vals.contains_key(v))
            && self.equations.iter().all(|p| p.evaluate(vals).is_some_and(|x| x.is_zero()))
    }

    pub fn residual(&self, vals: &BTreeMap<Var, Complex64>) -> f64 {
        self.equations
            .iter()
            .map(|p| eval_complex(p, vals).norm())
            .fold(0.0, f64::max)
    }
}

const GRID_CAP: usize = 20_000;

fn nonzero_values() -> Vec<Rational> {
    vec![rat(1, 1), rat(-1, 1), rat(2, 1), rat(-2, 1), rat(1, 2), rat(-1, 2), rat(3, 1), rat(-3, 1)]
}

fn any_values() -> Vec<Rational> {
    let mut v = vec![rat(0, 1)];
    v.extend(nonzero_values());
    v
}

/// Rational grid search, small values first: `1, -1, 2, -2, ...` on the
/// nonzero unknowns and `0, 1, -1, ...` on the free ones.
pub fn rational_search(problem: &Problem) -> Option<BTreeMap<Var, Rational>> {
    let vars = problem.unknowns();
    let nz: BTreeSet<&Var> = problem.nonzero.iter().collect();
    let domains: Vec<Vec<Rational>> = vars
        .iter()
        .map(|v| if nz.contains(v) { nonzero_values() } else { any_values() })
        .collect();
    let mut tried = 0usize;
    let max_len = domains.iter().map(Vec::len).max().unwrap_or(1);
    for bound in 1..=max_len {
        let mut idx = vec![0usize; vars.len()];
        loop {
            // only tuples that reach the new bound are unseen
            if vars.is_empty() || idx.iter().any(|&i| i + 1 == bound) {
                let vals: BTreeMap<Var, Rational> = vars
                    .iter()
                    .zip(&idx)
                    .zip(&domains)
                    .map(|((v, &i), d)| (v.clone(), d[i].clone()))
                    .collect();
                if problem.satisfied_by(&vals) {
                    return Some(vals);
                }
                tried += 1;
                if tried >= GRID_CAP {
                    return None;
                }
            }
            // odometer over [0, min(bound, len_k))
            let mut k = 0;
            loop {
                if k == vars.len() {
                    break;
                }
                idx[k] += 1;
                if idx[k] < bound.min(domains[k].len()) {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == vars.len() {
                break;
            }
        }
        if vars.is_empty() {
            break;
        }
    }
    None
}

pub fn eval_complex(p: &Polynomial, vals: &BTreeMap<Var, Complex64>) -> Complex64 {
    p.terms()
        .map(|(m, c)| {
            let mut t = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            for (v, e) in m.iter() {
                t *= vals[v].powu(e);
            }
            t
        })
        .sum()
}

/// Coefficients (by degree) of `p` in `target` after substituting `vals`
/// for every other variable.
fn univariate(p: &Polynomial, target: &Var, vals: &BTreeMap<Var, Complex64>) -> Vec<Complex64> {
    let mut out = vec![Complex64::zero(); p.degree_in(target) as usize + 1];
    for (m, c) in p.terms() {
        let mut t = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
        for (v, e) in m.iter() {
            if v != target {
                t *= vals[v].powu(e);
            }
        }
        out[m.exponent(target) as usize] += t;
    }
    out
}

/// Roots of a complex polynomial given by ascending coefficients.
pub fn durand_kerner(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c = coeffs.to_vec();
    while c.len() > 1 && c.last().unwrap().norm() < 1e-12 {
        c.pop();
    }
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let c: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::zero(), |acc, a| acc * z + a);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() < 1e-300 {
                denom = Complex64::new(1e-12, 0.0);
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 {
            break;
        }
    }
    roots
}

const NUMERIC_TOL: f64 = 1e-7;
const NUMERIC_BRANCHES: usize = 512;

/// Numeric fallback: fixes unknowns on a small grid until the system is
/// zero-dimensional, then solves the triangular lexicographic basis.
pub fn numeric_search(problem: &Problem, fuel: &Fuel) -> Option<Witness> {
    let mut fixed: BTreeMap<Var, Rational> = BTreeMap::new();
    // quasi-homogeneous systems admit one torus coordinate equal to one
    if let Some(t) = problem.nonzero.iter().find(|v| v.name().starts_with("T.")) {
        fixed.insert(t.clone(), rat(1, 1));
    }
    solve_with(problem, fixed, fuel, 0)
}

fn solve_with(problem: &Problem, fixed: BTreeMap<Var, Rational>, fuel: &Fuel, depth: usize) -> Option<Witness> {
    if depth > 4 {
        return None;
    }
    let eqs: Vec<Polynomial> = problem.equations.iter().map(|p| p.evaluate_partial(&fixed)).collect();
    let unknowns: Vec<Var> = problem.unknowns().into_iter().filter(|v| !fixed.contains_key(v)).collect();
    let nz: Vec<Var> = problem.nonzero.iter().filter(|v| !fixed.contains_key(*v)).cloned().collect();
    let mut gens = eqs.clone();
    let mut ambient = unknowns.clone();
    if !nz.is_empty() {
        let u = fresh_var("u", unknowns.iter());
        let prod = Polynomial::term(Monomial::from_pairs(nz.iter().map(|v| (v.clone(), 1))), rat(1, 1));
        gens.push(&Polynomial::var(u.clone()) * &prod - Polynomial::one());
        ambient.push(u);
    }
    let basis = buchberger(&Ideal::new(gens, ambient.clone()), &TermOrder::Lex, fuel).ok()?;
    if basis.iter().any(Polynomial::is_nonzero_constant) {
        return None;
    }
    let lead = |p: &Polynomial| -> Monomial {
        p.terms().map(|(m, _)| m.clone()).max_by(|a, b| a.lex_cmp(b)).unwrap()
    };
    let undetermined: Vec<&Var> = ambient
        .iter()
        .filter(|v| !basis.iter().any(|g| lead(g).vars().eq(std::iter::once(*v))))
        .collect();
    if let Some(&v) = undetermined.iter().rev().find(|v| !v.name().starts_with("u.")) {
        let values = if problem.nonzero.contains(v) { nonzero_values() } else { any_values() };
        for x in values.into_iter().take(4) {
            let mut next = fixed.clone();
            next.insert(v.clone(), x);
            if let Some(w) = solve_with(problem, next, fuel, depth + 1) {
                return Some(w);
            }
        }
        return None;
    }
    // zero-dimensional: back-substitute from the least variable upward
    let mut order = ambient.clone();
    order.sort();
    order.reverse();
    let mut branches: Vec<BTreeMap<Var, Complex64>> = vec![BTreeMap::new()];
    for v in &order {
        let mut next = Vec::new();
        for vals in &branches {
            let known: BTreeSet<&Var> = vals.keys().collect();
            let relevant: Vec<&Polynomial> = basis
                .iter()
                .filter(|g| g.contains_var(v) && g.vars().iter().all(|w| w == v || known.contains(w)))
                .collect();
            let polys: Vec<Vec<Complex64>> = relevant.iter().map(|g| univariate(g, v, vals)).collect();
            let Some(best) = polys
                .iter()
                .filter(|c| c.iter().skip(1).any(|z| z.norm() > NUMERIC_TOL))
                .min_by_key(|c| c.len())
            else {
                continue;
            };
            for z in durand_kerner(best) {
                let ok = polys.iter().all(|c| {
                    let val = c.iter().rev().fold(Complex64::zero(), |acc, a| acc * z + a);
                    val.norm() <= NUMERIC_TOL * (1.0 + c.iter().map(|a| a.norm()).fold(0.0, f64::max))
                });
                if ok && next.len() < NUMERIC_BRANCHES {
                    let mut m = vals.clone();
                    m.insert(v.clone(), z);
                    next.push(m);
                }
            }
        }
        branches = next;
    }
    for mut vals in branches {
        for (v, x) in &fixed {
            vals.insert(v.clone(), Complex64::new(x.to_f64().unwrap_or(f64::NAN), 0.0));
        }
        vals.retain(|k, _| !k.name().starts_with("u."));
        if problem.nonzero.iter().any(|v| vals.get(v).is_none_or(|z| z.norm() < 1e-9)) {
            continue;
        }
        if problem.unknowns().iter().any(|v| !vals.contains_key(v)) {
            continue;
        }
        let residual = problem.residual(&vals);
        if residual < 1e-6 {
            return Some(Witness::Numeric { values: vals, residual });
        }
    }
    None
}

/// Rational search first, numeric fallback second.
pub fn find_witness(problem: &Problem, fuel: &Fuel) -> Option<Witness> {
    if let Some(vals) = rational_search(problem) {
        return Some(Witness::Rational(vals));
    }
    numeric_search(problem, fuel)
}
