//! Independent oracles: brute-force polyhedra by separating certificates,
//! and a fixed suite of ideals with answers worked out by hand.

use folnewt::algebra::{parse_poly, rat, Polynomial, Rational, Var, VarKind, VariableTable};
use folnewt::groebner::{buchberger, contains_one, eliminate, saturate, Decision, Fuel, Ideal, TermOrder};
use folnewt::lp::{LinearProgram, Relation};
use folnewt::polyhedra::{compact_faces, newton_vertices, SupportSet};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Point = Vec<u32>;

fn r(k: u32) -> Rational {
    Rational::from_integer(k.into())
}

fn dot(w: &[Rational], p: &[u32]) -> Rational {
    w.iter().zip(p).fold(Rational::zero(), |acc, (a, &b)| acc + a * r(b))
}

/// A weight `w >= 1` with `w.(q - p) >= 1` for every other support point,
/// checked exactly before it is returned.
pub fn vertex_certificate(p: &Point, support: &[Point]) -> Option<Vec<Rational>> {
    let d = p.len();
    let mut lp = LinearProgram::new(d);
    for i in 0..d {
        let mut c = vec![Rational::zero(); d];
        c[i] = Rational::one();
        lp.constrain(c, Relation::Ge, Rational::one());
    }
    for q in support.iter().filter(|q| *q != p) {
        let c = (0..d).map(|i| r(q[i]) - r(p[i])).collect();
        lp.constrain(c, Relation::Ge, Rational::one());
    }
    let w = lp.feasible_point()?;
    let ok = w.iter().all(|x| x.is_positive()) && support.iter().filter(|q| *q != p).all(|q| dot(&w, q) > dot(&w, p));
    assert!(ok, "LP returned an invalid certificate");
    Some(w)
}

pub fn brute_vertices(support: &[Point]) -> Vec<Point> {
    let mut v: Vec<Point> = support
        .iter()
        .filter(|p| vertex_certificate(p, support).is_some())
        .cloned()
        .collect();
    v.sort();
    v.dedup();
    v
}

/// Every vertex subset that some strictly positive weight cuts out exactly.
pub fn brute_faces(vertices: &[Point]) -> Vec<Vec<Point>> {
    let n = vertices.len();
    let d = vertices.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let chosen: Vec<&Point> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| &vertices[i]).collect();
        let rest: Vec<&Point> = (0..n).filter(|i| mask >> i & 1 == 0).map(|i| &vertices[i]).collect();
        let f0 = chosen[0];
        let mut lp = LinearProgram::new(d);
        for i in 0..d {
            let mut c = vec![Rational::zero(); d];
            c[i] = Rational::one();
            lp.constrain(c, Relation::Ge, Rational::one());
        }
        for f in &chosen[1..] {
            lp.constrain((0..d).map(|i| r(f[i]) - r(f0[i])).collect(), Relation::Eq, Rational::zero());
        }
        for g in &rest {
            lp.constrain((0..d).map(|i| r(g[i]) - r(f0[i])).collect(), Relation::Ge, Rational::one());
        }
        if lp.feasible_point().is_some() {
            let mut f: Vec<Point> = chosen.into_iter().cloned().collect();
            f.sort();
            out.push(f);
        }
    }
    out.sort();
    out
}

pub fn axes(d: usize) -> Vec<Var> {
    (0..d).map(|i| Var::new(format!("u{i}"))).collect()
}

pub fn random_support(rng: &mut ChaCha8Rng) -> (usize, Vec<Point>) {
    let d = rng.gen_range(1..=4);
    let n = rng.gen_range(1..=12);
    let pts = (0..n).map(|_| (0..d).map(|_| rng.gen_range(0..=5)).collect()).collect();
    (d, pts)
}

pub struct PolyhedraCheck {
    pub vertices_ok: bool,
    pub faces_ok: bool,
    pub projection_ok: bool,
}

/// Compares the library against the brute-force oracle on one support.
pub fn check_support(d: usize, pts: &[Point]) -> PolyhedraCheck {
    let mut pts = pts.to_vec();
    pts.sort();
    pts.dedup();
    let pts = pts.as_slice();
    let s = SupportSet::from_points(axes(d), pts.iter().cloned());
    let n = newton_vertices(&s).unwrap();
    let mut got: Vec<Point> = n.vertices().to_vec();
    got.sort();
    let want = brute_vertices(pts);
    let vertices_ok = got == want;

    let faces = compact_faces(&n, &s).unwrap();
    let mut got_faces: Vec<Vec<Point>> = faces
        .iter()
        .map(|f| {
            let mut v = f.vertices.clone();
            v.sort();
            v
        })
        .collect();
    got_faces.sort();
    let weights_ok = faces.iter().all(|f| {
        let w = f.weight.entries();
        let integral = w.iter().all(|x| x.is_integer() && x.is_positive());
        let min = n.vertices().iter().map(|v| dot(w, v)).min().unwrap();
        let on: Vec<&Point> = pts.iter().filter(|p| dot(w, p) == min).collect();
        integral && min == f.value && on.len() == f.points.len()
    });
    let faces_ok = weights_ok && got_faces == brute_faces(&want);

    // Projecting the support and projecting the vertices give one polyhedron.
    let mut projection_ok = true;
    let ax = axes(d);
    for mask in 1u32..(1 << d) {
        let keep: Vec<usize> = (0..d).filter(|i| mask >> i & 1 == 1).collect();
        let sub: Vec<Var> = keep.iter().map(|&i| ax[i].clone()).collect();
        let from_support = folnewt::polyhedra::project_polyhedron(&n, &s, &sub).unwrap();
        let projected: Vec<Point> = want.iter().map(|v| keep.iter().map(|&i| v[i]).collect()).collect();
        let mut a: Vec<Point> = from_support.vertices().to_vec();
        a.sort();
        projection_ok &= a == brute_vertices(&projected);
    }
    PolyhedraCheck {
        vertices_ok,
        faces_ok,
        projection_ok,
    }
}

/// What the suite expects of an ideal.
pub enum Expect {
    ContainsOne(Decision),
    /// Generators of the elimination ideal after removing the listed
    /// variables.
    Eliminate(&'static [&'static str], &'static [&'static str]),
    /// Generators of the saturation by the given polynomial.
    Saturate(&'static str, &'static [&'static str]),
}

pub struct IdealCase {
    pub name: &'static str,
    pub vars: &'static [&'static str],
    pub gens: &'static [&'static str],
    pub expect: Expect,
}

/// Hand-worked ideals. The torus variables of the foliation examples are
/// written `t1`, `t2`.
pub fn ideal_suite() -> Vec<IdealCase> {
    use Decision::{No, Yes};
    use Expect::*;
    vec![
        IdealCase { name: "origin", vars: &["x", "y"], gens: &["x", "y"], expect: ContainsOne(No) },
        IdealCase { name: "parallel lines", vars: &["x"], gens: &["x", "x - 1"], expect: ContainsOne(Yes) },
        IdealCase { name: "x=2 misses x^2=1", vars: &["x"], gens: &["x^2 - 1", "x - 2"], expect: ContainsOne(Yes) },
        IdealCase { name: "hyperbola meets axis", vars: &["x", "y"], gens: &["x*y - 1", "x"], expect: ContainsOne(Yes) },
        IdealCase { name: "circle meets diagonal", vars: &["x", "y"], gens: &["x^2 + y^2 - 1", "x - y"], expect: ContainsOne(No) },
        IdealCase { name: "axes meet line", vars: &["x", "y"], gens: &["x*y", "x + y - 1"], expect: ContainsOne(No) },
        // x = y and x^3 = 1
        IdealCase { name: "cube roots", vars: &["x", "y"], gens: &["x^2*y - 1", "x*y^2 - 1", "x - y"], expect: ContainsOne(No) },
        // the roots of t^3 - 1
        IdealCase {
            name: "symmetric functions",
            vars: &["x", "y", "z"],
            gens: &["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"],
            expect: ContainsOne(No),
        },
        // x = y = z = 0 is the only zero
        IdealCase {
            name: "symmetric functions off the torus",
            vars: &["x", "y", "z"],
            gens: &["x + y + z", "x*y + y*z + z*x", "x*y*z"],
            expect: Saturate("x*y*z", &["1"]),
        },
        IdealCase { name: "cusp curve", vars: &["t", "x", "y"], gens: &["x - t^2", "y - t^3"], expect: Eliminate(&["t"], &["x^3 - y^2"]) },
        IdealCase { name: "parabola", vars: &["t", "x", "y"], gens: &["x - t", "y - t^2"], expect: Eliminate(&["t"], &["y - x^2"]) },
        IdealCase { name: "substitution", vars: &["x", "y", "z"], gens: &["x*y - 1", "y - z"], expect: Eliminate(&["y"], &["x*z - 1"]) },
        IdealCase {
            name: "diagonal points",
            vars: &["x", "y"],
            gens: &["x^2 + y^2 - 1", "x - y"],
            expect: Eliminate(&["x"], &["y^2 - 1/2"]),
        },
        IdealCase { name: "fixed factor", vars: &["x", "y", "z"], gens: &["x - y*z", "y - 1"], expect: Eliminate(&["y"], &["x - z"]) },
        IdealCase { name: "eliminate everything", vars: &["x", "y"], gens: &["x - 1", "y - 2"], expect: Eliminate(&["x", "y"], &[]) },
        IdealCase { name: "remove a line", vars: &["x", "y"], gens: &["x*y"], expect: Saturate("x", &["y"]) },
        IdealCase { name: "embedded point", vars: &["x", "y"], gens: &["x^2*y", "x*y^2"], expect: Saturate("x", &["y"]) },
        IdealCase { name: "nilpotent", vars: &["x", "y"], gens: &["x*(y - 1)", "x^2"], expect: Saturate("x", &["1"]) },
        IdealCase { name: "one root left", vars: &["x"], gens: &["x*(x - 1)"], expect: Saturate("x", &["x - 1"]) },
        IdealCase { name: "plane minus axis", vars: &["x", "y", "z"], gens: &["x*z", "y*z"], expect: Saturate("z", &["x", "y"]) },
        // V = {y = 0} plus the point (-1, -1)
        IdealCase {
            name: "isolated point",
            vars: &["x", "y"],
            gens: &["(x - y)*y", "y^2*(x + 1)"],
            expect: Saturate("y", &["x + 1", "y + 1"]),
        },
        // x2 dx1/x1 + x1 dx2/x2 on the edge of N_{x1,x2}: A = (t2, t1)
        IdealCase { name: "worked example edge", vars: &["t1", "t2"], gens: &["t2", "t1"], expect: Saturate("t1*t2", &["1"]) },
        // (x1 - x2) dx1/x1 + (2x1 - 2x2 + x1^2) dx2/x2 on the edge:
        // A = (t1 - t2, 2t1 - 2t2), zero at (1, 1)
        IdealCase {
            name: "degenerate example edge",
            vars: &["t1", "t2"],
            gens: &["t1 - t2", "2*t1 - 2*t2"],
            expect: Saturate("t1*t2", &["t1 - t2"]),
        },
        IdealCase {
            name: "degenerate example edge emptiness",
            vars: &["t1", "t2", "u"],
            gens: &["t1 - t2", "2*t1 - 2*t2", "u*t1*t2 - 1"],
            expect: ContainsOne(No),
        },
        // -3x^3 dx/x + 2y dy: off the divisor x is a unit and y = 0 ...
        IdealCase { name: "cusp off divisor", vars: &["x", "y"], gens: &["-3*x^3", "2*y"], expect: Saturate("x", &["1"]) },
        // ... and on {x} the vertex 0 leaves A = (0, 2y): locus <y>
        IdealCase { name: "cusp on divisor", vars: &["t", "y"], gens: &["2*y"], expect: Saturate("t", &["y"]) },
    ]
}

fn table(vars: &[&str]) -> VariableTable {
    VariableTable::with(vars, VarKind::Free)
}

fn parse_all(gens: &[&str], t: &VariableTable) -> Vec<Polynomial> {
    gens.iter().map(|g| parse_poly(g, t).unwrap()).collect()
}

/// Reduced basis as sorted strings, a canonical form of the ideal.
fn canonical(ideal: &Ideal, fuel: &Fuel) -> Vec<String> {
    let mut v: Vec<String> = buchberger(ideal, &TermOrder::GradedLex, fuel)
        .unwrap()
        .iter()
        .map(|g| g.monic().to_string())
        .collect();
    v.sort();
    v
}

/// Runs one case; `Err` carries a description of the mismatch.
pub fn run_ideal_case(case: &IdealCase) -> Result<(), String> {
    let fuel = Fuel::default();
    let t = table(case.vars);
    let vars: Vec<Var> = case.vars.iter().map(Var::new).collect();
    let ideal = Ideal::new(parse_all(case.gens, &t), vars.clone());
    match &case.expect {
        Expect::ContainsOne(d) => {
            let got = contains_one(&ideal, &fuel);
            (got == *d).then_some(()).ok_or(format!("contains_one {got:?}, expected {d:?}"))
        }
        Expect::Eliminate(front, want) => {
            let front: Vec<Var> = front.iter().map(Var::new).collect();
            let got = eliminate(&ideal, &front, &fuel).map_err(|e| e.to_string())?;
            let rest: Vec<Var> = vars.iter().filter(|v| !front.contains(v)).cloned().collect();
            let want = Ideal::new(parse_all(want, &t), rest);
            let (a, b) = (canonical(&got, &fuel), canonical(&want, &fuel));
            (a == b).then_some(()).ok_or(format!("eliminate gave {a:?}, expected {b:?}"))
        }
        Expect::Saturate(f, want) => {
            let f = parse_poly(f, &t).unwrap();
            let got = saturate(&ideal, &f, &fuel).map_err(|e| e.to_string())?;
            let want = Ideal::new(parse_all(want, &t), vars.clone());
            let (a, b) = (canonical(&got, &fuel), canonical(&want, &fuel));
            (a == b).then_some(()).ok_or(format!("saturate gave {a:?}, expected {b:?}"))
        }
    }
}

/// A random strictly positive weight with small rational entries.
pub fn random_weight(rng: &mut ChaCha8Rng, axes: &[Var]) -> folnewt::polyhedra::WeightVector {
    folnewt::polyhedra::WeightVector::new(
        axes.iter()
            .map(|v| (v.clone(), rat(rng.gen_range(1..=7), rng.gen_range(1..=4)))),
    )
    .unwrap()
}
