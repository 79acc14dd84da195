//! Exact rational linear programming: two-phase tableau simplex with
//! Bland's anti-cycling rule. Sized for the handful of variables that
//! Newton polyhedra of desk-scale forms need.

use num_traits::{One, Signed, Zero};

use crate::algebra::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

/// `maximize c·x` subject to linear constraints. Variables are nonnegative
/// unless marked free.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    nvars: usize,
    free: Vec<bool>,
    rows: Vec<(Vec<Rational>, Relation, Rational)>,
}

impl LinearProgram {
    pub fn new(nvars: usize) -> Self {
        LinearProgram {
            nvars,
            free: vec![false; nvars],
            rows: Vec::new(),
        }
    }

    pub fn set_free(&mut self, var: usize) -> &mut Self {
        self.free[var] = true;
        self
    }

    pub fn constrain(&mut self, coeffs: Vec<Rational>, rel: Relation, rhs: Rational) -> &mut Self {
        assert_eq!(coeffs.len(), self.nvars, "constraint width");
        self.rows.push((coeffs, rel, rhs));
        self
    }

    pub fn feasible_point(&self) -> Option<Vec<Rational>> {
        match self.maximize(&vec![Rational::zero(); self.nvars]) {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }

    pub fn maximize(&self, objective: &[Rational]) -> LpOutcome {
        assert_eq!(objective.len(), self.nvars, "objective width");
        // column layout: one column per nonnegative var, two per free var
        let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(self.nvars);
        let mut ncols = 0;
        for &f in &self.free {
            if f {
                col_of.push((ncols, Some(ncols + 1)));
                ncols += 2;
            } else {
                col_of.push((ncols, None));
                ncols += 1;
            }
        }
        let structural = ncols;

        // normalize rows to rhs >= 0
        let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = Vec::new();
        for (a, rel, b) in &self.rows {
            let mut coeffs = vec![Rational::zero(); structural];
            for (i, c) in a.iter().enumerate() {
                let (p, n) = col_of[i];
                coeffs[p] = c.clone();
                if let Some(n) = n {
                    coeffs[n] = -c.clone();
                }
            }
            let (coeffs, rel, b) = if b.is_negative() {
                let flipped = match rel {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
                (coeffs.into_iter().map(|c| -c).collect(), flipped, -b.clone())
            } else {
                (coeffs, *rel, b.clone())
            };
            rows.push((coeffs, rel, b));
        }

        let m = rows.len();
        let n_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let n_art = rows.iter().filter(|r| r.1 != Relation::Le).count();
        let width = structural + n_slack + n_art;
        let art_start = structural + n_slack;

        let mut t = Tableau {
            a: vec![vec![Rational::zero(); width + 1]; m],
            basis: vec![0; m],
            width,
        };
        let (mut s, mut r) = (structural, art_start);
        for (i, (coeffs, rel, b)) in rows.into_iter().enumerate() {
            for (j, c) in coeffs.into_iter().enumerate() {
                t.a[i][j] = c;
            }
            t.a[i][width] = b;
            match rel {
                Relation::Le => {
                    t.a[i][s] = Rational::one();
                    t.basis[i] = s;
                    s += 1;
                }
                Relation::Ge => {
                    t.a[i][s] = -Rational::one();
                    s += 1;
                    t.a[i][r] = Rational::one();
                    t.basis[i] = r;
                    r += 1;
                }
                Relation::Eq => {
                    t.a[i][r] = Rational::one();
                    t.basis[i] = r;
                    r += 1;
                }
            }
        }

        // phase 1: drive artificials to zero
        if n_art > 0 {
            let mut cost = vec![Rational::zero(); width];
            for c in cost.iter_mut().skip(art_start) {
                *c = -Rational::one();
            }
            t.run(&cost, width).expect("phase 1 is bounded");
            if t.objective(&cost).is_negative() {
                return LpOutcome::Infeasible;
            }
            t.expel_artificials(art_start);
        }

        // phase 2 on structural + slack columns only
        let mut cost = vec![Rational::zero(); width];
        for (i, c) in objective.iter().enumerate() {
            let (p, n) = col_of[i];
            cost[p] = c.clone();
            if let Some(n) = n {
                cost[n] = -c.clone();
            }
        }
        if t.run(&cost, art_start).is_err() {
            return LpOutcome::Unbounded;
        }
        let value = t.objective(&cost);
        let mut x = vec![Rational::zero(); width];
        for (i, &b) in t.basis.iter().enumerate() {
            x[b] = t.a[i][width].clone();
        }
        let point = col_of
            .iter()
            .map(|&(p, n)| match n {
                Some(n) => &x[p] - &x[n],
                None => x[p].clone(),
            })
            .collect();
        LpOutcome::Optimal { value, point }
    }
}

struct Tableau {
    a: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

#[derive(Debug)]
struct Unbounded;

impl Tableau {
    fn objective(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .enumerate()
            .map(|(i, &b)| &cost[b] * &self.a[i][self.width])
            .fold(Rational::zero(), |acc, v| acc + v)
    }

    /// Maximizes `cost` over columns `< allowed`, Bland's rule throughout.
    fn run(&mut self, cost: &[Rational], allowed: usize) -> Result<(), Unbounded> {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut r = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !self.a[i][j].is_zero() {
                        r -= &cost[b] * &self.a[i][j];
                    }
                }
                r.is_positive()
            });
            let Some(j) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.a.len() {
                if !self.a[i][j].is_positive() {
                    continue;
                }
                let ratio = &self.a[i][self.width] / &self.a[i][j];
                let better = match &leave {
                    None => true,
                    Some((k, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((i, _)) = leave else {
                return Err(Unbounded);
            };
            self.pivot(i, j);
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.a[row][col].recip();
        for v in self.a[row].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.a[row].clone();
        for (i, r) in self.a.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (v, p) in r.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[row] = col;
    }

    /// After a successful phase 1, pivots zero-valued artificials out of the
    /// basis, dropping rows that turn out to be redundant.
    fn expel_artificials(&mut self, art_start: usize) {
        let mut i = 0;
        while i < self.a.len() {
            if self.basis[i] < art_start {
                i += 1;
                continue;
            }
            match (0..art_start).find(|&j| !self.a[i][j].is_zero() && !self.basis.contains(&j)) {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    self.a.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn r(n: i64) -> Rational {
        rat(n, 1)
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18
        let mut lp = LinearProgram::new(2);
        lp.constrain(vec![r(1), r(0)], Relation::Le, r(4))
            .constrain(vec![r(0), r(2)], Relation::Le, r(12))
            .constrain(vec![r(3), r(2)], Relation::Le, r(18));
        match lp.maximize(&[r(3), r(5)]) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, r(36));
                assert_eq!(point, vec![r(2), r(6)]);
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.constrain(vec![r(1)], Relation::Ge, r(2))
            .constrain(vec![r(1)], Relation::Le, r(1));
        assert_eq!(lp.maximize(&[r(1)]), LpOutcome::Infeasible);

        let mut lp = LinearProgram::new(1);
        lp.constrain(vec![r(1)], Relation::Ge, r(2));
        assert_eq!(lp.maximize(&[r(1)]), LpOutcome::Unbounded);
    }

    #[test]
    fn free_variables_and_equalities() {
        // x free, x + y = -3, y >= 0, maximize -y -> y = 0, x = -3
        let mut lp = LinearProgram::new(2);
        lp.set_free(0);
        lp.constrain(vec![r(1), r(1)], Relation::Eq, r(-3));
        match lp.maximize(&[r(0), r(-1)]) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, r(0));
                assert_eq!(point, vec![r(-3), r(0)]);
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(2);
        lp.constrain(vec![r(1), r(1)], Relation::Eq, r(1))
            .constrain(vec![r(2), r(2)], Relation::Eq, r(2));
        match lp.maximize(&[r(1), r(0)]) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, r(1)),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn degenerate_vertex_terminates() {
        // classic cycling example for the largest-coefficient rule
        let mut lp = LinearProgram::new(4);
        lp.constrain(vec![rat(1, 2), rat(-11, 2), rat(-5, 2), r(9)], Relation::Le, r(0))
            .constrain(vec![rat(1, 2), rat(-3, 2), rat(-1, 2), r(1)], Relation::Le, r(0))
            .constrain(vec![r(1), r(0), r(0), r(0)], Relation::Le, r(1));
        match lp.maximize(&[r(10), r(-57), r(-9), r(-24)]) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, r(1)),
            o => panic!("{o:?}"),
        }
    }
}
