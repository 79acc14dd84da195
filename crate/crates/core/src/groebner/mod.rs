//! Exact ideal toolbox: reduction, Buchberger completion, elimination and
//! saturation over the rationals.
//!
//! Every completion is bounded by a [`Fuel`] budget. Running out of fuel is
//! reported as [`FuelExhausted`] and must surface to callers as an
//! undetermined answer, never as a verdict.

mod buchberger;
mod ring;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Monomial, Polynomial, Var};

use ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TermOrder {
    GradedLex,
    Lex,
    /// Eliminates the `front` block: front variables compare first (graded
    /// lex), then the remaining ones (graded lex).
    BlockElimination { front: Vec<Var> },
}

/// Shared counters for reporting how much work was spent.
#[derive(Debug, Default)]
pub struct FuelMeter {
    spairs: AtomicU64,
    completions: AtomicU64,
    exhausted: AtomicU64,
}

impl FuelMeter {
    pub(crate) fn record_spair(&self) {
        self.spairs.fetch_add(1, Ordering::Relaxed);
    }

    pub fn spairs(&self) -> u64 {
        self.spairs.load(Ordering::Relaxed)
    }

    pub fn completions(&self) -> u64 {
        self.completions.load(Ordering::Relaxed)
    }

    pub fn exhausted(&self) -> u64 {
        self.exhausted.load(Ordering::Relaxed)
    }
}

/// Resource bounds for a single completion. Clones share one meter.
#[derive(Debug, Clone)]
pub struct Fuel {
    pub max_spair_reductions: u64,
    pub max_terms: usize,
    pub meter: Arc<FuelMeter>,
}

impl Fuel {
    pub const DEFAULT_SPAIRS: u64 = 10_000;
    pub const DEFAULT_TERMS: usize = 200_000;

    pub fn new(max_spair_reductions: u64, max_terms: usize) -> Self {
        assert!(max_spair_reductions > 0 && max_terms > 0, "fuel must be positive");
        Fuel {
            max_spair_reductions,
            max_terms,
            meter: Arc::new(FuelMeter::default()),
        }
    }
}

impl Default for Fuel {
    fn default() -> Self {
        Fuel::new(Self::DEFAULT_SPAIRS, Self::DEFAULT_TERMS)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error, Serialize)]
pub enum FuelExhausted {
    #[error("S-pair budget of {0} reductions exhausted")]
    SPairs(u64),
    #[error("term budget of {0} exhausted")]
    Terms(usize),
}

/// A finitely generated ideal with its ambient variable list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    generators: Vec<Polynomial>,
    ambient: Vec<Var>,
}

impl Ideal {
    /// Zero generators are dropped; the ambient list is extended by any
    /// variable the generators use and kept in global variable order.
    pub fn new(generators: Vec<Polynomial>, ambient: impl IntoIterator<Item = Var>) -> Self {
        let generators: Vec<Polynomial> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        let mut vars: BTreeSet<Var> = ambient.into_iter().collect();
        for g in &generators {
            vars.extend(g.vars());
        }
        Ideal {
            generators,
            ambient: vars.into_iter().collect(),
        }
    }

    pub fn unit(ambient: impl IntoIterator<Item = Var>) -> Self {
        Ideal::new(vec![Polynomial::one()], ambient)
    }

    pub fn zero(ambient: impl IntoIterator<Item = Var>) -> Self {
        Ideal::new(vec![], ambient)
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn ambient(&self) -> &[Var] {
        &self.ambient
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// True when some generator is a nonzero constant. Only conclusive on
    /// reduced bases.
    pub fn has_unit_generator(&self) -> bool {
        self.generators.iter().any(Polynomial::is_nonzero_constant)
    }

    pub fn with_generator(&self, g: Polynomial) -> Ideal {
        let mut gens = self.generators.clone();
        gens.push(g);
        Ideal::new(gens, self.ambient.clone())
    }
}

impl Serialize for Ideal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Ideal", 2)?;
        st.serialize_field("generators", &self.generators)?;
        st.serialize_field("ambient", &self.ambient)?;
        st.end()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

/// Three-valued answer for fuel-bounded decisions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Yes,
    No,
    Undetermined,
}

/// Remainder of `p` on division by `basis` under `order`; no term of the
/// result is divisible by a leading term of `basis`.
pub fn normal_form(p: &Polynomial, basis: &[Polynomial], order: &TermOrder) -> Polynomial {
    let ring = Ring::new(order, std::iter::once(p).chain(basis.iter()), &[]);
    let g: Vec<_> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| ring.to_dense(g))
        .collect();
    let r = buchberger::reduce(&ring, ring.to_dense(p), &g);
    ring.to_sparse(&r)
}

/// Reduced Gröbner basis of `ideal` under `order`.
pub fn buchberger(ideal: &Ideal, order: &TermOrder, fuel: &Fuel) -> Result<Vec<Polynomial>, FuelExhausted> {
    let ring = Ring::new(order, ideal.generators.iter(), &ideal.ambient);
    let gens = ideal.generators.iter().map(|g| ring.to_dense(g)).collect();
    fuel.meter.completions.fetch_add(1, Ordering::Relaxed);
    match buchberger::complete(&ring, gens, fuel) {
        Ok(c) => Ok(c.basis.iter().map(|g| ring.to_sparse(g)).collect()),
        Err(e) => {
            fuel.meter.exhausted.fetch_add(1, Ordering::Relaxed);
            Err(e)
        }
    }
}

/// Weak Nullstellensatz test: the complex zero set of `ideal` is empty iff
/// `1` lies in the ideal.
pub fn contains_one(ideal: &Ideal, fuel: &Fuel) -> Decision {
    if ideal.has_unit_generator() {
        return Decision::Yes;
    }
    if ideal.is_zero_ideal() {
        return Decision::No;
    }
    match buchberger(ideal, &TermOrder::GradedLex, fuel) {
        Ok(basis) => {
            if basis.iter().any(Polynomial::is_nonzero_constant) {
                Decision::Yes
            } else {
                Decision::No
            }
        }
        Err(_) => Decision::Undetermined,
    }
}

/// Elimination ideal `I ∩ Q[remaining variables]`, generated by the
/// members of a block-elimination basis free of `front`.
pub fn eliminate(ideal: &Ideal, front: &[Var], fuel: &Fuel) -> Result<Ideal, FuelExhausted> {
    let front_set: BTreeSet<Var> = front.iter().cloned().collect();
    let rest: Vec<Var> = ideal
        .ambient
        .iter()
        .filter(|v| !front_set.contains(*v))
        .cloned()
        .collect();
    let order = TermOrder::BlockElimination {
        front: front_set.iter().cloned().collect(),
    };
    let basis = buchberger(ideal, &order, fuel)?;
    let kept: Vec<Polynomial> = basis
        .into_iter()
        .filter(|g| front_set.iter().all(|v| !g.contains_var(v)))
        .collect();
    Ok(Ideal::new(normalize_basis(kept), rest))
}

/// `I : f^∞`, computed by adjoining `u*f - 1` for a fresh `u` and
/// eliminating `u`.
pub fn saturate(ideal: &Ideal, f: &Polynomial, fuel: &Fuel) -> Result<Ideal, FuelExhausted> {
    assert!(!f.is_zero(), "saturation by zero");
    if f.is_nonzero_constant() {
        let basis = buchberger(ideal, &TermOrder::GradedLex, fuel)?;
        return Ok(Ideal::new(normalize_basis(basis), ideal.ambient.clone()));
    }
    let u = fresh_var("u", ideal.ambient.iter().chain(f.vars().iter()));
    let rabinowitsch = &Polynomial::var(u.clone()) * f - Polynomial::one();
    let extended = Ideal::new(
        ideal.generators.iter().cloned().chain(std::iter::once(rabinowitsch)).collect(),
        ideal.ambient.iter().cloned().chain(std::iter::once(u.clone())),
    );
    let mut out = eliminate(&extended, &[u], fuel)?;
    out.ambient = {
        let mut vars: BTreeSet<Var> = ideal.ambient.iter().cloned().collect();
        vars.extend(f.vars());
        vars.into_iter().collect()
    };
    Ok(out)
}

/// Decides emptiness of `V(I) \ V(f)` without computing the elimination
/// ideal: `1 ∈ I + <u*f - 1>`.
pub fn saturation_contains_one(ideal: &Ideal, f: &Polynomial, fuel: &Fuel) -> Decision {
    if f.is_nonzero_constant() {
        return contains_one(ideal, fuel);
    }
    let u = fresh_var("u", ideal.ambient.iter().chain(f.vars().iter()));
    let rabinowitsch = &Polynomial::var(u.clone()) * f - Polynomial::one();
    contains_one(&ideal.with_generator(rabinowitsch), fuel)
}

/// A variable name not in `taken`, built from `stem` and a character the
/// polynomial grammar cannot produce.
pub fn fresh_var<'a>(stem: &str, taken: impl Iterator<Item = &'a Var>) -> Var {
    let taken: BTreeSet<&str> = taken.map(Var::name).collect();
    let mut k = 0usize;
    loop {
        let name = format!("{stem}.{k}");
        if !taken.contains(name.as_str()) {
            return Var::new(name);
        }
        k += 1;
    }
}

/// Monic, sorted, deduplicated generators.
fn normalize_basis(gens: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut v: Vec<Polynomial> = gens
        .into_iter()
        .map(|g| if g.is_constant() { Polynomial::one() } else { g.monic() })
        .collect();
    v.sort_by(|a, b| {
        let la = a.leading_term().map(|t| t.0.clone()).unwrap_or_else(Monomial::one);
        let lb = b.leading_term().map(|t| t.0.clone()).unwrap_or_else(Monomial::one);
        la.cmp(&lb).then_with(|| a.to_string().cmp(&b.to_string()))
    });
    v.dedup();
    v
}
