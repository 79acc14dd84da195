use std::collections::{BTreeMap, BTreeSet};

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::var::Var;
use super::AlgebraError;

/// Splits `p` by its exponents on the divisor variables `divisor`:
/// `p = sum over sigma of x^sigma * a_sigma`, each `a_sigma` free of the
/// divisor variables and nonzero.
pub fn divisor_expansion(p: &Polynomial, divisor: &BTreeSet<Var>) -> BTreeMap<Monomial, Polynomial> {
    let mut out: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
    for (m, c) in p.terms() {
        let (sigma, rest) = m.split(|v| divisor.contains(v));
        out.entry(sigma).or_default().add_term(rest, c.clone());
    }
    out.retain(|_, a| !a.is_zero());
    out
}

/// Componentwise minimum of the exponents on `divisor` over every term of
/// every nonzero member of `ps`.
pub fn monomial_content(ps: &[Polynomial], divisor: &BTreeSet<Var>) -> Result<Monomial, AlgebraError> {
    let mut acc: Option<Monomial> = None;
    for p in ps {
        if let Some(m) = p.min_exponents(divisor) {
            acc = Some(match acc {
                Some(a) => a.gcd(&m),
                None => m,
            });
        }
    }
    acc.ok_or(AlgebraError::AllZero)
}

/// Ring-morphism image of `p`. Variables without an entry map to themselves.
pub fn poly_substitute(p: &Polynomial, subst: &BTreeMap<Var, Polynomial>) -> Polynomial {
    p.substitute(subst)
}
