//! Dense-exponent working representation used inside Buchberger's
//! algorithm. Polynomials are converted in and out at the API boundary.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::algebra::{Monomial, Polynomial, Rational, Var};

use super::TermOrder;

pub(crate) type Exps = Vec<u32>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    GradedLex,
    Lex,
    /// Graded lex on the first `n` variables, ties broken by graded lex on
    /// the rest.
    Block(usize),
}

/// Variable list plus a resolved monomial order.
#[derive(Debug, Clone)]
pub(crate) struct Ring {
    pub vars: Vec<Var>,
    kind: Kind,
}

impl Ring {
    /// Ring over every variable of `polys` and `extra`, arranged for
    /// `order`: block orders put the front block first, everything else
    /// follows the global variable order.
    pub fn new<'a>(
        order: &TermOrder,
        polys: impl IntoIterator<Item = &'a Polynomial>,
        extra: &[Var],
    ) -> Ring {
        let mut all: BTreeSet<Var> = extra.iter().cloned().collect();
        for p in polys {
            all.extend(p.vars());
        }
        match order {
            TermOrder::GradedLex => Ring {
                vars: all.into_iter().collect(),
                kind: Kind::GradedLex,
            },
            TermOrder::Lex => Ring {
                vars: all.into_iter().collect(),
                kind: Kind::Lex,
            },
            TermOrder::BlockElimination { front } => {
                let front: BTreeSet<Var> = front.iter().cloned().collect();
                let mut vars: Vec<Var> = front.iter().cloned().collect();
                vars.extend(all.into_iter().filter(|v| !front.contains(v)));
                Ring {
                    vars,
                    kind: Kind::Block(front.len()),
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.kind {
            Kind::Lex => a.cmp(b),
            Kind::GradedLex => grlex(a, b),
            Kind::Block(n) => grlex(&a[..n], &b[..n]).then_with(|| grlex(&a[n..], &b[n..])),
        }
    }

    pub fn to_dense(&self, p: &Polynomial) -> DPoly {
        let index: BTreeMap<&Var, usize> = self.vars.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut terms: Vec<(Exps, Rational)> = p
            .terms()
            .map(|(m, c)| {
                let mut e = vec![0u32; self.vars.len()];
                for (v, k) in m.iter() {
                    e[index[v]] = k;
                }
                (e, c.clone())
            })
            .collect();
        terms.sort_by(|a, b| self.cmp(&a.0, &b.0));
        DPoly { terms }
    }

    pub fn to_sparse(&self, p: &DPoly) -> Polynomial {
        Polynomial::from_terms(p.terms.iter().map(|(e, c)| {
            let m = Monomial::from_pairs(
                e.iter()
                    .enumerate()
                    .filter(|(_, k)| **k > 0)
                    .map(|(i, k)| (self.vars[i].clone(), *k)),
            );
            (m, c.clone())
        }))
    }

    /// `p - c * x^shift * q`, merging sorted term lists.
    pub fn sub_scaled(&self, p: &DPoly, c: &Rational, shift: &[u32], q: &DPoly) -> DPoly {
        let mut out = Vec::with_capacity(p.terms.len() + q.terms.len());
        let shifted = q.terms.iter().map(|(e, k)| (add(e, shift), k * c));
        let mut a = p.terms.iter().cloned().peekable();
        let mut b = shifted.peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some(x), Some(y)) => self.cmp(&x.0, &y.0),
            };
            match ord {
                Ordering::Less => out.push(a.next().unwrap()),
                Ordering::Greater => {
                    let (e, k) = b.next().unwrap();
                    out.push((e, -k));
                }
                Ordering::Equal => {
                    let (e, k1) = a.next().unwrap();
                    let (_, k2) = b.next().unwrap();
                    let k = k1 - k2;
                    if !k.is_zero() {
                        out.push((e, k));
                    }
                }
            }
        }
        DPoly { terms: out }
    }
}

fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&x| x as u64).sum();
    let db: u64 = b.iter().map(|&x| x as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

pub(crate) fn add(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn lcm(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn sub(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Terms sorted in increasing order; the leading term is last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct DPoly {
    pub terms: Vec<(Exps, Rational)>,
}

impl DPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Exps, Rational)> {
        self.terms.last()
    }

    pub fn lm(&self) -> &Exps {
        &self.terms.last().expect("nonzero").0
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0)
    }

    pub fn monic(mut self) -> DPoly {
        if let Some((_, c)) = self.terms.last() {
            if !c.is_one() {
                let inv = c.recip();
                for t in &mut self.terms {
                    t.1 *= &inv;
                }
            }
        }
        self
    }
}
