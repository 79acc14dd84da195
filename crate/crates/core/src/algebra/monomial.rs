use std::cmp::Ordering;
use std::fmt;

use super::var::Var;

/// A power product stored sparsely as `(variable, exponent)` pairs sorted by
/// variable, with no zero exponents.
///
/// `Ord` is graded lexicographic with respect to the global variable order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    /// Builds a monomial from arbitrary pairs; repeated variables are merged
    /// and zero exponents dropped.
    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Self {
        let mut v: Vec<(Var, u32)> = pairs.into_iter().filter(|(_, e)| *e > 0).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(v.len());
        for (var, e) in v {
            match out.last_mut() {
                Some((last, le)) if *last == var => *le += e,
                _ => out.push((var, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        match self.0.binary_search_by(|(w, _)| w.cmp(v)) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, u32)> {
        self.0.iter().map(|(v, e)| (v, *e))
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.0.iter().map(|(v, _)| v)
    }

    pub fn contains(&self, v: &Var) -> bool {
        self.exponent(v) > 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| a + b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.merge(other, u32::max)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.merge(other, u32::min)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|(v, e)| other.exponent(v) >= *e)
    }

    /// `self / other`, or `None` if `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let pairs = self
            .0
            .iter()
            .map(|(v, e)| (v.clone(), e - other.exponent(v)))
            .filter(|(_, e)| *e > 0)
            .collect();
        Some(Monomial(pairs))
    }

    /// Splits into the part on `keep` and the rest.
    pub fn split<F: Fn(&Var) -> bool>(&self, keep: F) -> (Monomial, Monomial) {
        let (a, b): (Vec<_>, Vec<_>) = self.0.iter().cloned().partition(|(v, _)| keep(v));
        (Monomial(a), Monomial(b))
    }

    pub fn without(&self, v: &Var) -> Monomial {
        Monomial(self.0.iter().filter(|(w, _)| w != v).cloned().collect())
    }

    fn merge(&self, other: &Monomial, f: impl Fn(u32, u32) -> u32) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.0, &other.0);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => unreachable!(),
            };
            let (v, e) = match ord {
                Ordering::Less => {
                    i += 1;
                    (a[i - 1].0.clone(), f(a[i - 1].1, 0))
                }
                Ordering::Greater => {
                    j += 1;
                    (b[j - 1].0.clone(), f(0, b[j - 1].1))
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    (a[i - 1].0.clone(), f(a[i - 1].1, b[j - 1].1))
                }
            };
            if e > 0 {
                out.push((v, e));
            }
        }
        Monomial(out)
    }

    /// Pure lexicographic comparison, earlier variables most significant.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let mut i = 0;
        loop {
            match (a.get(i), b.get(i)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    // `self` carries a more significant variable than `other` does here
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                    }
                },
            }
            i += 1;
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(&str, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().map(|(v, e)| (Var::new(v), *e)))
    }

    #[test]
    fn grlex_order() {
        // degree dominates
        assert!(m(&[("y", 2)]) > m(&[("x", 1)]));
        // x > y in lex at equal degree
        assert!(m(&[("x", 1)]) > m(&[("y", 1)]));
        assert!(m(&[("x", 1), ("y", 1)]) > m(&[("y", 2)]));
        assert!(m(&[("x", 2)]) > m(&[("x", 1), ("y", 1)]));
        assert!(Monomial::one() < m(&[("z", 1)]));
    }

    #[test]
    fn arithmetic() {
        let a = m(&[("x", 2), ("y", 1)]);
        let b = m(&[("x", 1), ("z", 3)]);
        assert_eq!(a.mul(&b), m(&[("x", 3), ("y", 1), ("z", 3)]));
        assert_eq!(a.lcm(&b), m(&[("x", 2), ("y", 1), ("z", 3)]));
        assert_eq!(a.gcd(&b), m(&[("x", 1)]));
        assert_eq!(a.div(&m(&[("x", 1)])), Some(m(&[("x", 1), ("y", 1)])));
        assert_eq!(a.div(&b), None);
    }

    #[test]
    fn merging_pairs() {
        assert_eq!(m(&[("x", 1), ("x", 2), ("y", 0)]), m(&[("x", 3)]));
    }
}
