//! Positively convex Newton polyhedra: vertex enumeration, faces selected by
//! weight vectors, compact-face enumeration and projections.
//!
//! Points are dense exponent vectors indexed by the polyhedron's axes,
//! which are kept in global variable order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Monomial, Rational, Var};
use crate::fabric::Stratum;
use crate::lp::{LinearProgram, LpOutcome, Relation};

pub type Point = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyhedraError {
    #[error("empty support")]
    EmptySupport,
    #[error("axis sets disagree")]
    AxisMismatch,
    #[error("weight entries must be strictly positive")]
    NonPositiveWeight,
}

/// Finite set of exponents on a fixed list of axes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSet {
    axes: Vec<Var>,
    points: BTreeSet<Point>,
}

impl SupportSet {
    pub fn new(axes: impl IntoIterator<Item = Var>) -> Self {
        let axes: BTreeSet<Var> = axes.into_iter().collect();
        SupportSet {
            axes: axes.into_iter().collect(),
            points: BTreeSet::new(),
        }
    }

    pub fn from_points(axes: impl IntoIterator<Item = Var>, points: impl IntoIterator<Item = Point>) -> Self {
        let mut s = SupportSet::new(axes);
        for p in points {
            s.insert(p);
        }
        s
    }

    /// Reads each monomial on the axes; variables off the axes are ignored.
    pub fn from_monomials<'a>(
        axes: impl IntoIterator<Item = Var>,
        monomials: impl IntoIterator<Item = &'a Monomial>,
    ) -> Self {
        let mut s = SupportSet::new(axes);
        for m in monomials {
            let p = s.axes.iter().map(|v| m.exponent(v)).collect();
            s.points.insert(p);
        }
        s
    }

    pub fn insert(&mut self, p: Point) {
        assert_eq!(p.len(), self.axes.len(), "point width");
        self.points.insert(p);
    }

    pub fn axes(&self) -> &[Var] {
        &self.axes
    }

    pub fn points(&self) -> impl Iterator<Item = &Point> {
        self.points.iter()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[u32]) -> bool {
        self.points.contains(p)
    }

    pub fn monomial(&self, p: &[u32]) -> Monomial {
        point_monomial(&self.axes, p)
    }

    /// Coordinate projection onto `axes` (a subset of the current axes).
    pub fn project(&self, axes: &[Var]) -> Result<SupportSet, PolyhedraError> {
        let idx = axis_indices(&self.axes, axes)?;
        Ok(SupportSet::from_points(
            idx.iter().map(|&i| self.axes[i].clone()),
            self.points.iter().map(|p| idx.iter().map(|&i| p[i]).collect()),
        ))
    }
}

pub fn point_monomial(axes: &[Var], p: &[u32]) -> Monomial {
    Monomial::from_pairs(axes.iter().cloned().zip(p.iter().copied()))
}

fn axis_indices(from: &[Var], to: &[Var]) -> Result<Vec<usize>, PolyhedraError> {
    let to: BTreeSet<&Var> = to.iter().collect();
    let idx: Vec<usize> = from
        .iter()
        .enumerate()
        .filter(|(_, v)| to.contains(v))
        .map(|(i, _)| i)
        .collect();
    if idx.len() != to.len() {
        return Err(PolyhedraError::AxisMismatch);
    }
    Ok(idx)
}

/// `conv(vertices) + R^J_{>=0}`, represented by its vertices in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonPolyhedron {
    axes: Vec<Var>,
    vertices: Vec<Point>,
}

impl NewtonPolyhedron {
    /// The zero-dimensional polyhedron used for the off-divisor stratum.
    pub fn trivial() -> Self {
        NewtonPolyhedron {
            axes: Vec::new(),
            vertices: vec![Vec::new()],
        }
    }

    pub fn axes(&self) -> &[Var] {
        &self.axes
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_single_vertex(&self) -> bool {
        self.vertices.len() == 1
    }

    /// Membership in `conv(V) + orthant`, by exact LP.
    pub fn contains(&self, p: &[u32]) -> bool {
        in_hull_plus_orthant(p, &self.vertices)
    }
}

impl fmt::Display for NewtonPolyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .vertices
            .iter()
            .map(|v| format!("({})", v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Strictly positive linear functional on `R^J`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector {
    axes: Vec<Var>,
    entries: Vec<Rational>,
}

impl WeightVector {
    /// Pairs are sorted into global axis order.
    pub fn new(pairs: impl IntoIterator<Item = (Var, Rational)>) -> Result<Self, PolyhedraError> {
        let map: BTreeMap<Var, Rational> = pairs.into_iter().collect();
        if map.values().any(|r| !r.is_positive()) {
            return Err(PolyhedraError::NonPositiveWeight);
        }
        let (axes, entries) = map.into_iter().unzip();
        Ok(WeightVector { axes, entries })
    }

    pub fn axes(&self) -> &[Var] {
        &self.axes
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, v: &Var) -> Option<&Rational> {
        self.axes.iter().position(|a| a == v).map(|i| &self.entries[i])
    }

    pub fn value(&self, p: &[u32]) -> Rational {
        self.entries
            .iter()
            .zip(p)
            .filter(|(_, &k)| k > 0)
            .fold(Rational::zero(), |acc, (r, &k)| acc + r * Rational::from_integer(k.into()))
    }

    /// Value on a monomial; variables off the axes contribute nothing.
    pub fn value_monomial(&self, m: &Monomial) -> Rational {
        let p: Point = self.axes.iter().map(|v| m.exponent(v)).collect();
        self.value(&p)
    }

    /// Scaled to the primitive integer vector on the same ray.
    pub fn primitive(&self) -> WeightVector {
        let lcm = self
            .entries
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let ints: Vec<num_bigint::BigInt> = self.entries.iter().map(|r| (r * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
        let g = if g.is_zero() { num_bigint::BigInt::one() } else { g };
        WeightVector {
            axes: self.axes.clone(),
            entries: ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect(),
        }
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for WeightVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.axes.len()))?;
        for (v, r) in self.axes.iter().zip(&self.entries) {
            m.serialize_entry(v.name(), &r.to_string())?;
        }
        m.end()
    }
}

/// `F_rho`: the support points minimizing a weight vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub value: Rational,
    pub weight: WeightVector,
    pub points: Vec<Point>,
    pub vertices: Vec<Point>,
}

impl Serialize for Face {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Face", 4)?;
        st.serialize_field("weight", &self.weight)?;
        st.serialize_field("value", &self.value.to_string())?;
        st.serialize_field("points", &self.points)?;
        st.serialize_field("vertices", &self.vertices)?;
        st.end()
    }
}

impl Face {
    pub fn is_vertex(&self) -> bool {
        self.vertices.len() == 1
    }
}

/// One Newton polyhedron per stratum.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PolyhedraSystem {
    polyhedra: BTreeMap<Stratum, NewtonPolyhedron>,
}

impl PolyhedraSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, j: Stratum, n: NewtonPolyhedron) {
        self.polyhedra.insert(j, n);
    }

    pub fn get(&self, j: &Stratum) -> Option<&NewtonPolyhedron> {
        self.polyhedra.get(j)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Stratum, &NewtonPolyhedron)> {
        self.polyhedra.iter()
    }

    pub fn len(&self) -> usize {
        self.polyhedra.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polyhedra.is_empty()
    }
}

pub fn is_desingularized(sys: &PolyhedraSystem) -> bool {
    sys.polyhedra.values().all(NewtonPolyhedron::is_single_vertex)
}

fn r(k: u32) -> Rational {
    Rational::from_integer(k.into())
}

fn dominates(p: &[u32], q: &[u32]) -> bool {
    p.iter().zip(q).all(|(a, b)| a >= b)
}

/// Is `p` in `conv(q) + orthant`? LP over convex multipliers.
fn in_hull_plus_orthant(p: &[u32], q: &[Point]) -> bool {
    if q.is_empty() {
        return false;
    }
    if q.iter().any(|x| dominates(p, x)) {
        return true;
    }
    let mut lp = LinearProgram::new(q.len());
    lp.constrain(vec![Rational::one(); q.len()], Relation::Eq, Rational::one());
    for (i, &pi) in p.iter().enumerate() {
        lp.constrain(q.iter().map(|x| r(x[i])).collect(), Relation::Le, r(pi));
    }
    lp.feasible_point().is_some()
}

/// Vertices of `conv(S) + R^J_{>=0}`.
pub fn newton_vertices(s: &SupportSet) -> Result<NewtonPolyhedron, PolyhedraError> {
    if s.is_empty() {
        return Err(PolyhedraError::EmptySupport);
    }
    let undominated: Vec<&Point> = s
        .points
        .iter()
        .filter(|p| !s.points.iter().any(|q| q != *p && dominates(p, q)))
        .collect();
    let vertices = undominated
        .iter()
        .filter(|p| {
            let others: Vec<Point> = undominated.iter().filter(|q| *q != *p).map(|q| (*q).clone()).collect();
            !in_hull_plus_orthant(p, &others)
        })
        .map(|p| (*p).clone())
        .collect();
    Ok(NewtonPolyhedron {
        axes: s.axes.clone(),
        vertices,
    })
}

/// The face of `n` selected by `rho`, with the support points lying on it.
pub fn minimal_face(n: &NewtonPolyhedron, rho: &WeightVector, s: &SupportSet) -> Result<Face, PolyhedraError> {
    if n.axes != rho.axes || n.axes != s.axes {
        return Err(PolyhedraError::AxisMismatch);
    }
    let value = n
        .vertices
        .iter()
        .map(|v| rho.value(v))
        .min()
        .expect("polyhedron has a vertex");
    let on = |p: &&Point| rho.value(p) == value;
    Ok(Face {
        value: value.clone(),
        weight: rho.clone(),
        points: s.points.iter().filter(on).cloned().collect(),
        vertices: n.vertices.iter().filter(on).cloned().collect(),
    })
}

/// LP for a vertex subset: a weight with `rho_i >= t`, constant value on
/// `chosen` and value at least `nu` (strict: `nu + t`) on the rest,
/// maximizing `t`. Returns the weight when `t > 0`.
fn supporting_weight(vertices: &[Point], chosen: &[usize], strict: bool) -> Option<Vec<Rational>> {
    let dim = vertices[0].len();
    // variables: rho_0..rho_{dim-1}, nu, t
    let nu = dim;
    let t = dim + 1;
    let width = dim + 2;
    let mut lp = LinearProgram::new(width);
    lp.set_free(nu);
    let row = |v: &Point, nu_coeff: i64, t_coeff: i64| {
        let mut c: Vec<Rational> = v.iter().map(|&k| r(k)).collect();
        c.push(Rational::from_integer(nu_coeff.into()));
        c.push(Rational::from_integer(t_coeff.into()));
        c
    };
    for i in 0..dim {
        let mut c = vec![Rational::zero(); width];
        c[i] = Rational::one();
        c[t] = -Rational::one();
        lp.constrain(c, Relation::Ge, Rational::zero());
    }
    for (k, v) in vertices.iter().enumerate() {
        if chosen.contains(&k) {
            lp.constrain(row(v, -1, 0), Relation::Eq, Rational::zero());
        } else {
            lp.constrain(row(v, -1, if strict { -1 } else { 0 }), Relation::Ge, Rational::zero());
        }
    }
    let mut norm = vec![Rational::one(); dim];
    norm.extend([Rational::zero(), Rational::zero()]);
    lp.constrain(norm, Relation::Le, Rational::one());
    let mut objective = vec![Rational::zero(); width];
    objective[t] = Rational::one();
    match lp.maximize(&objective) {
        LpOutcome::Optimal { value, point } if value.is_positive() => Some(point[..dim].to_vec()),
        _ => None,
    }
}

/// Every compact face exactly once, each with a primitive integral strictly
/// positive representative weight. Ordered by vertex count, then vertices.
pub fn compact_faces(n: &NewtonPolyhedron, s: &SupportSet) -> Result<Vec<Face>, PolyhedraError> {
    if n.axes != s.axes {
        return Err(PolyhedraError::AxisMismatch);
    }
    if n.axes.is_empty() {
        let rho = WeightVector::new(std::iter::empty())?;
        return Ok(vec![minimal_face(n, &rho, s)?]);
    }
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut weights: Vec<Vec<Rational>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n.vertices.len()).rev().map(|i| vec![i]).collect();
    while let Some(chosen) = stack.pop() {
        if chosen.len() > 1 && supporting_weight(&n.vertices, &chosen, false).is_none() {
            continue;
        }
        if let Some(w) = supporting_weight(&n.vertices, &chosen, true) {
            found.push(chosen.clone());
            weights.push(w);
        }
        let last = *chosen.last().unwrap();
        for k in (last + 1..n.vertices.len()).rev() {
            let mut next = chosen.clone();
            next.push(k);
            stack.push(next);
        }
    }
    let mut faces = Vec::with_capacity(found.len());
    for w in weights {
        let rho = WeightVector {
            axes: n.axes.clone(),
            entries: w,
        }
        .primitive();
        faces.push(minimal_face(n, &rho, s)?);
    }
    faces.sort_by(|a, b| (a.vertices.len(), &a.vertices).cmp(&(b.vertices.len(), &b.vertices)));
    Ok(faces)
}

/// Newton polyhedron of the projection of `s` (the support generating `n`)
/// onto `axes`.
pub fn project_polyhedron(n: &NewtonPolyhedron, s: &SupportSet, axes: &[Var]) -> Result<NewtonPolyhedron, PolyhedraError> {
    if n.axes != s.axes {
        return Err(PolyhedraError::AxisMismatch);
    }
    newton_vertices(&s.project(axes)?)
}
