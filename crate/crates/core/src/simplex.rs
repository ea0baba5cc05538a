//! Two-phase tableau simplex over exact rationals.
//!
//! Bland's rule picks both the entering and the leaving variable, which
//! rules out cycling. Problems here have a handful of rows, so the dense
//! tableau and recomputed reduced costs are fine.

use num_traits::{One, Signed, Zero};

use crate::poly::Rational;

/// `minimize objective · x  subject to  constraints · x = rhs, x ≥ 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub constraints: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
    pub objective: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpSolution {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let inv = self.rows[r][col].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        self.basis[r] = col;
    }

    /// Runs Bland-rule pivots on the columns `0..allowed`. Returns false if
    /// the objective is unbounded below.
    fn optimize(&mut self, cost: &[Rational], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let z: Rational = self
                    .rows
                    .iter()
                    .zip(&self.basis)
                    .map(|(row, &b)| &cost[b] * &row[j])
                    .sum();
                (&cost[j] - z).is_negative()
            });
            let Some(j) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((k, best)) => {
                        if ratio < best || (ratio == best && self.basis[i] < self.basis[k]) {
                            Some((i, ratio))
                        } else {
                            Some((k, best))
                        }
                    }
                };
            }
            match leave {
                None => return false,
                Some((r, _)) => self.pivot(r, j),
            }
        }
    }

    fn value(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .enumerate()
            .map(|(i, &b)| &cost[b] * self.rhs(i))
            .sum()
    }
}

pub fn solve(lp: &LinearProgram) -> LpSolution {
    let m = lp.constraints.len();
    let n = lp.objective.len();
    assert_eq!(lp.rhs.len(), m, "one right-hand side per constraint");
    assert!(
        lp.constraints.iter().all(|r| r.len() == n),
        "constraint rows must match the objective length"
    );
    let width = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, b)) in lp.constraints.iter().zip(&lp.rhs).enumerate() {
        let flip = b.is_negative();
        let mut r: Vec<Rational> = row
            .iter()
            .map(|v| if flip { -v.clone() } else { v.clone() })
            .collect();
        r.resize(width + 1, Rational::zero());
        r[n + i] = Rational::one();
        r[width] = if flip { -b.clone() } else { b.clone() };
        rows.push(r);
    }
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
        width,
    };

    let mut phase1 = vec![Rational::zero(); width];
    for c in phase1.iter_mut().skip(n) {
        *c = Rational::one();
    }
    t.optimize(&phase1, width);
    if t.value(&phase1).is_positive() {
        return LpSolution::Infeasible;
    }

    // Drive remaining (zero-valued) artificials out of the basis, dropping
    // rows that turn out to be redundant.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut phase2 = lp.objective.clone();
    phase2.resize(width, Rational::zero());
    if !t.optimize(&phase2, n) {
        return LpSolution::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.rhs(i).clone();
        }
    }
    LpSolution::Optimal {
        value: t.value(&phase2),
        x,
    }
}
