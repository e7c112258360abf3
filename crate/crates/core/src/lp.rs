//! Dense two-phase simplex with Bland's rule, generic over [`Field`].
//!
//! With [`Rational`](crate::Rational) coefficients the solver is exact; with
//! `f64` it compares against the supplied tolerance. Problem sizes in this
//! crate are tiny (at most a few thousand rows), so a dense tableau is fine.

use crate::field::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint<S> {
    pub coeffs: Vec<S>,
    pub relation: Relation,
    pub rhs: S,
}

impl<S> Constraint<S> {
    pub fn new(coeffs: Vec<S>, relation: Relation, rhs: S) -> Self {
        Constraint {
            coeffs,
            relation,
            rhs,
        }
    }
}

/// Maximize `objective · x` subject to `constraints`; variables are
/// non-negative unless flagged in `free`.
#[derive(Clone, Debug)]
pub struct LinearProgram<S> {
    pub objective: Vec<S>,
    pub constraints: Vec<Constraint<S>>,
    pub free: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome<S> {
    Optimal { x: Vec<S>, value: S },
    Infeasible,
    Unbounded,
}

impl<S: Field> LpOutcome<S> {
    pub fn optimal(self) -> Option<(Vec<S>, S)> {
        match self {
            LpOutcome::Optimal { x, value } => Some((x, value)),
            _ => None,
        }
    }
}

impl<S: Field> LinearProgram<S> {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            objective: vec![S::zero(); num_vars],
            constraints: Vec::new(),
            free: vec![false; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add(&mut self, coeffs: Vec<S>, relation: Relation, rhs: S) {
        debug_assert_eq!(coeffs.len(), self.num_vars());
        self.constraints.push(Constraint::new(coeffs, relation, rhs));
    }

    pub fn maximize(&self, tol: f64) -> LpOutcome<S> {
        Tableau::build(self).solve(self, tol)
    }

    /// Feasibility only (objective ignored).
    pub fn feasible_point(&self, tol: f64) -> Option<Vec<S>> {
        let mut p = self.clone();
        p.objective = vec![S::zero(); p.num_vars()];
        p.maximize(tol).optimal().map(|(x, _)| x)
    }
}

struct Tableau<S> {
    /// rows x (cols + 1); last column is the right-hand side.
    rows: Vec<Vec<S>>,
    basis: Vec<usize>,
    cols: usize,
    /// Column ranges: [0, structural) split variables, then slacks, then artificials.
    structural: usize,
    artificial_start: usize,
    /// original variable -> (positive column, optional negative column)
    var_cols: Vec<(usize, Option<usize>)>,
}

impl<S: Field> Tableau<S> {
    fn build(lp: &LinearProgram<S>) -> Self {
        let mut var_cols = Vec::with_capacity(lp.num_vars());
        let mut next = 0;
        for &free in &lp.free {
            if free {
                var_cols.push((next, Some(next + 1)));
                next += 2;
            } else {
                var_cols.push((next, None));
                next += 1;
            }
        }
        let structural = next;
        // Normalize to non-negative right-hand sides.
        let normalized: Vec<(Vec<S>, Relation, S)> = lp
            .constraints
            .iter()
            .map(|c| {
                if c.rhs < S::zero() {
                    let rel = match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (c.coeffs.iter().map(|x| -x.clone()).collect(), rel, -c.rhs.clone())
                } else {
                    (c.coeffs.clone(), c.relation, c.rhs.clone())
                }
            })
            .collect();
        let slacks = normalized
            .iter()
            .filter(|(_, r, _)| *r != Relation::Eq)
            .count();
        let artificials = normalized
            .iter()
            .filter(|(_, r, _)| *r != Relation::Le)
            .count();
        let artificial_start = structural + slacks;
        let cols = artificial_start + artificials;
        let mut rows = Vec::with_capacity(normalized.len());
        let mut basis = Vec::with_capacity(normalized.len());
        let (mut slack_col, mut art_col) = (structural, artificial_start);
        for (coeffs, rel, rhs) in normalized {
            let mut row = vec![S::zero(); cols + 1];
            for (j, a) in coeffs.into_iter().enumerate() {
                let (p, n) = var_cols[j];
                if let Some(n) = n {
                    row[n] = -a.clone();
                }
                row[p] = a;
            }
            match rel {
                Relation::Le => {
                    row[slack_col] = S::one();
                    basis.push(slack_col);
                    slack_col += 1;
                }
                Relation::Ge => {
                    row[slack_col] = -S::one();
                    slack_col += 1;
                    row[art_col] = S::one();
                    basis.push(art_col);
                    art_col += 1;
                }
                Relation::Eq => {
                    row[art_col] = S::one();
                    basis.push(art_col);
                    art_col += 1;
                }
            }
            row[cols] = rhs;
            rows.push(row);
        }
        Tableau {
            rows,
            basis,
            cols,
            structural,
            artificial_start,
            var_cols,
        }
    }

    fn pivot(&mut self, r: usize, c: usize, obj: &mut [S]) {
        let inv = S::one() / self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c].clone();
            if f.is_zero_tol(0.0) {
                continue;
            }
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = x.clone() - f.clone() * p.clone();
            }
        }
        let f = obj[c].clone();
        if !f.is_zero_tol(0.0) {
            for (x, p) in obj.iter_mut().zip(&pivot_row) {
                *x = x.clone() - f.clone() * p.clone();
            }
        }
        self.basis[r] = c;
    }

    /// Reduced-cost row `z_j - c_j` (last entry: current objective value).
    fn objective_row(&self, cost: &[S]) -> Vec<S> {
        let mut obj: Vec<S> = (0..=self.cols)
            .map(|j| if j < self.cols { -cost[j].clone() } else { S::zero() })
            .collect();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = cost[b].clone();
            if cb.is_zero_tol(0.0) {
                continue;
            }
            for (o, a) in obj.iter_mut().zip(row) {
                *o = o.clone() + cb.clone() * a.clone();
            }
        }
        obj
    }

    /// Runs simplex iterations; returns false if unbounded.
    fn iterate(&mut self, obj: &mut [S], allowed: usize, tol: f64) -> bool {
        loop {
            // Bland: smallest index with negative reduced cost enters.
            let Some(enter) = (0..allowed).find(|&j| obj[j].is_neg_tol(tol)) else {
                return true;
            };
            let mut leave: Option<(usize, S)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = &row[enter];
                if !a.is_pos_tol(tol) {
                    continue;
                }
                let ratio = row[self.cols].clone() / a.clone();
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((li, lr)) => {
                        let better = ratio < lr
                            || (!(ratio.clone() - lr.clone()).is_pos_tol(tol)
                                && !(lr.clone() - ratio.clone()).is_pos_tol(tol)
                                && self.basis[i] < self.basis[li]);
                        if better {
                            Some((i, ratio))
                        } else {
                            Some((li, lr))
                        }
                    }
                };
            }
            let Some((r, _)) = leave else { return false };
            self.pivot(r, enter, obj);
        }
    }

    fn solve(mut self, lp: &LinearProgram<S>, tol: f64) -> LpOutcome<S> {
        // Phase 1: maximize -(sum of artificials).
        if self.artificial_start < self.cols {
            let cost: Vec<S> = (0..self.cols)
                .map(|j| {
                    if j >= self.artificial_start {
                        -S::one()
                    } else {
                        S::zero()
                    }
                })
                .collect();
            let mut obj = self.objective_row(&cost);
            let cols = self.cols;
            self.iterate(&mut obj, cols, tol);
            if obj[self.cols].is_neg_tol(tol) {
                return LpOutcome::Infeasible;
            }
            // Drive remaining (zero-level) artificials out of the basis.
            let mut i = 0;
            while i < self.rows.len() {
                if self.basis[i] >= self.artificial_start {
                    let col = (0..self.artificial_start).find(|&j| !self.rows[i][j].is_zero_tol(tol));
                    match col {
                        Some(c) => {
                            self.pivot(i, c, &mut obj);
                            i += 1;
                        }
                        None => {
                            self.rows.remove(i);
                            self.basis.remove(i);
                        }
                    }
                } else {
                    i += 1;
                }
            }
        }
        // Phase 2 on the structural + slack columns.
        let mut cost = vec![S::zero(); self.cols];
        for (j, c) in lp.objective.iter().enumerate() {
            let (p, n) = self.var_cols[j];
            cost[p] = c.clone();
            if let Some(n) = n {
                cost[n] = -c.clone();
            }
        }
        let mut obj = self.objective_row(&cost);
        let allowed = self.artificial_start;
        if !self.iterate(&mut obj, allowed, tol) {
            return LpOutcome::Unbounded;
        }
        let mut values = vec![S::zero(); self.structural];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < self.structural {
                values[b] = row[self.cols].clone();
            }
        }
        let x: Vec<S> = self
            .var_cols
            .iter()
            .map(|&(p, n)| match n {
                Some(n) => values[p].clone() - values[n].clone(),
                None => values[p].clone(),
            })
            .collect();
        let value = obj[self.cols].clone();
        LpOutcome::Optimal { x, value }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat, Rational};

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
        let mut lp = LinearProgram::<Rational>::new(2);
        lp.objective = vec![int(3), int(5)];
        lp.add(vec![int(1), int(0)], Relation::Le, int(4));
        lp.add(vec![int(0), int(2)], Relation::Le, int(12));
        lp.add(vec![int(3), int(2)], Relation::Le, int(18));
        let (x, v) = lp.maximize(0.0).optimal().unwrap();
        assert_eq!(x, vec![int(2), int(6)]);
        assert_eq!(v, int(36));
    }

    #[test]
    fn equality_ge_and_free_variables() {
        // max -x - y with x + y = 1, x >= 1/3, y free -> x = 1/3? objective = -1 everywhere on the line
        // so use max y: x + y = 1, x >= 1/3 -> y = 2/3
        let mut lp = LinearProgram::<Rational>::new(2);
        lp.objective = vec![int(0), int(1)];
        lp.free = vec![false, true];
        lp.add(vec![int(1), int(1)], Relation::Eq, int(1));
        lp.add(vec![int(1), int(0)], Relation::Ge, rat(1, 3));
        let (x, v) = lp.maximize(0.0).optimal().unwrap();
        assert_eq!(x, vec![rat(1, 3), rat(2, 3)]);
        assert_eq!(v, rat(2, 3));

        // Free variable taking a negative value.
        let mut lp = LinearProgram::<Rational>::new(1);
        lp.objective = vec![int(1)];
        lp.free = vec![true];
        lp.add(vec![int(1)], Relation::Le, int(-5));
        let (x, _) = lp.maximize(0.0).optimal().unwrap();
        assert_eq!(x, vec![int(-5)]);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::<Rational>::new(1);
        lp.add(vec![int(1)], Relation::Le, int(1));
        lp.add(vec![int(1)], Relation::Ge, int(2));
        assert_eq!(lp.maximize(0.0), LpOutcome::Infeasible);

        let mut lp = LinearProgram::<f64>::new(2);
        lp.objective = vec![1.0, 0.0];
        lp.add(vec![0.0, 1.0], Relation::Le, 1.0);
        assert_eq!(lp.maximize(1e-12), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_equalities_are_dropped() {
        let mut lp = LinearProgram::<Rational>::new(2);
        lp.objective = vec![int(1), int(2)];
        lp.add(vec![int(1), int(1)], Relation::Eq, int(2));
        lp.add(vec![int(2), int(2)], Relation::Eq, int(4));
        let (x, v) = lp.maximize(0.0).optimal().unwrap();
        assert_eq!(x, vec![int(0), int(2)]);
        assert_eq!(v, int(4));
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's example: cycles under the textbook rule, Bland terminates.
        let mut lp = LinearProgram::<Rational>::new(4);
        lp.objective = vec![rat(3, 4), int(-150), rat(1, 50), int(-6)];
        lp.add(vec![rat(1, 4), int(-60), rat(-1, 25), int(9)], Relation::Le, int(0));
        lp.add(vec![rat(1, 2), int(-90), rat(-1, 50), int(3)], Relation::Le, int(0));
        lp.add(vec![int(0), int(0), int(1), int(0)], Relation::Le, int(1));
        let (_, v) = lp.maximize(0.0).optimal().unwrap();
        assert_eq!(v, rat(1, 20));
    }
}
