//! Multivariate gcd over the rationals by recursive primitive remainder
//! sequences.

use std::collections::BTreeSet;

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::var::Var;
use super::AlgebraError;

/// Normalized gcd of two polynomials: monic in graded-lex, or zero when
/// both inputs are zero.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    let vars: BTreeSet<Var> = a.vars().union(&b.vars()).cloned().collect();
    let v = vars.iter().next().unwrap().clone();
    let (in_a, in_b) = (a.contains_var(&v), b.contains_var(&v));
    let g = match (in_a, in_b) {
        (true, false) => gcd(&content(a, &v), b),
        (false, true) => gcd(a, &content(b, &v)),
        (false, false) => unreachable!("v occurs in a or b"),
        (true, true) => {
            let ca = content(a, &v);
            let cb = content(b, &v);
            let pa = a.div_exact(&ca).expect("content divides");
            let pb = b.div_exact(&cb).expect("content divides");
            let c = gcd(&ca, &cb);
            let g = primitive_prs(pa, pb, &v);
            &c * &g
        }
    };
    g.monic()
}

/// gcd of the coefficients of `p` as a polynomial in `v`.
fn content(p: &Polynomial, v: &Var) -> Polynomial {
    let mut acc = Polynomial::zero();
    for c in p.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, &c);
        if acc.is_nonzero_constant() {
            break;
        }
    }
    acc
}

fn primitive_part(p: &Polynomial, v: &Var) -> Polynomial {
    let c = content(p, v);
    if c.is_zero() {
        return Polynomial::zero();
    }
    p.div_exact(&c).expect("content divides")
}

/// gcd of two primitive polynomials (in `v`) via a primitive PRS.
fn primitive_prs(a: Polynomial, b: Polynomial, v: &Var) -> Polynomial {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) {
        (a, b)
    } else {
        (b, a)
    };
    while !b.is_zero() {
        let r = pseudo_remainder(&a, &b, v);
        a = b;
        b = primitive_part(&r, v);
    }
    primitive_part(&a, v)
}

/// `lc(b)^k * a mod b` in `v`, where `lc` is the leading coefficient in `v`.
fn pseudo_remainder(a: &Polynomial, b: &Polynomial, v: &Var) -> Polynomial {
    let db = b.degree_in(v);
    if db == 0 {
        return Polynomial::zero();
    }
    let lb = b.coefficients_in(v).swap_remove(db as usize);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.coefficients_in(v).swap_remove(dr as usize);
        let shift = Polynomial::term(Monomial::var_pow(v.clone(), dr - db), num_traits::One::one());
        r = &(&lb * &r) - &(&(&lr * &shift) * b);
    }
    r
}

/// n-ary gcd. Errors on all-zero input.
pub fn gcd_all(ps: &[Polynomial]) -> Result<Polynomial, AlgebraError> {
    if ps.iter().all(Polynomial::is_zero) {
        return Err(AlgebraError::AllZero);
    }
    let mut acc = Polynomial::zero();
    for p in ps {
        acc = gcd(&acc, p);
        if acc.is_nonzero_constant() {
            break;
        }
    }
    Ok(acc)
}

/// Outcome of [`gcd_is_constant`]: either coprime, or the nonconstant gcd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GcdCheck {
    Constant,
    Common(Polynomial),
}

impl GcdCheck {
    pub fn is_constant(&self) -> bool {
        matches!(self, GcdCheck::Constant)
    }
}

/// Decides whether the family has no common factor over the rationals.
pub fn gcd_is_constant(ps: &[Polynomial]) -> Result<GcdCheck, AlgebraError> {
    let g = gcd_all(ps)?;
    if g.is_constant() && !g.is_zero() {
        Ok(GcdCheck::Constant)
    } else {
        Ok(GcdCheck::Common(g.integer_primitive()))
    }
}
