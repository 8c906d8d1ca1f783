//! Exact linear programming over ℚ: two-phase tableau simplex with
//! Bland's rule, so it always terminates.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::Q;

/// `maximize c·x` subject to `eq` rows (`a·x = b`), `le` rows (`a·x ≤ b`)
/// and `x ≥ 0`.
#[derive(Clone, Debug, Default)]
pub struct Lp {
    pub objective: Vec<Q>,
    pub eq: Vec<(Vec<Q>, Q)>,
    pub le: Vec<(Vec<Q>, Q)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Q>, value: Q },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// `rows × (cols + 1)`, last column is the right-hand side.
    t: Vec<Vec<Q>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Q::one() / &self.t[r][c];
        for v in self.t[r].iter_mut() {
            *v *= &inv;
        }
        let prow = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&prow) {
                *v -= &f * p;
            }
        }
        self.basis[r] = c;
    }

    /// Minimizes `cost·x` over the columns allowed by `usable`, starting
    /// from the current feasible basis. Returns `false` if unbounded.
    fn minimize(&mut self, cost: &[Q], usable: &dyn Fn(usize) -> bool) -> bool {
        loop {
            let rc = |j: usize| -> Q {
                let mut v = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    v -= &cost[b] * &self.t[i][j];
                }
                v
            };
            let Some(enter) = (0..self.cols).find(|&j| usable(j) && !self.basis.contains(&j) && rc(j).is_negative())
            else {
                return true;
            };
            let rhs = self.cols;
            let mut best: Option<(Q, usize, usize)> = None;
            for (i, row) in self.t.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[enter];
                let better = match &best {
                    None => true,
                    Some((r, _, b)) => ratio < *r || (ratio == *r && self.basis[i] < *b),
                };
                if better {
                    best = Some((ratio, i, self.basis[i]));
                }
            }
            let Some((_, leave, _)) = best else {
                return false;
            };
            self.pivot(leave, enter);
        }
    }
}

impl Lp {
    pub fn new(objective: Vec<Q>) -> Self {
        Self { objective, eq: Vec::new(), le: Vec::new() }
    }

    pub fn add_eq(&mut self, a: Vec<Q>, b: Q) -> &mut Self {
        self.eq.push((a, b));
        self
    }

    pub fn add_le(&mut self, a: Vec<Q>, b: Q) -> &mut Self {
        self.le.push((a, b));
        self
    }

    pub fn add_ge(&mut self, a: Vec<Q>, b: Q) -> &mut Self {
        self.le.push((a.into_iter().map(|v| -v).collect(), -b));
        self
    }

    fn check(&self) -> Result<usize> {
        let n = self.objective.len();
        for (a, _) in self.eq.iter().chain(&self.le) {
            if a.len() != n {
                return Err(Error::DimensionMismatch(format!("constraint of length {} for {n} variables", a.len())));
            }
        }
        Ok(n)
    }

    /// True when `x` satisfies every constraint exactly.
    pub fn is_feasible(&self, x: &[Q]) -> bool {
        let dot = |a: &[Q]| a.iter().zip(x).map(|(p, q)| p * q).sum::<Q>();
        x.len() == self.objective.len()
            && x.iter().all(|v| !v.is_negative())
            && self.eq.iter().all(|(a, b)| dot(a) == *b)
            && self.le.iter().all(|(a, b)| dot(a) <= *b)
    }

    pub fn solve(&self) -> Result<LpOutcome> {
        let n = self.check()?;
        let m = self.eq.len() + self.le.len();
        let slack0 = n;
        let art0 = n + self.le.len();
        let cols = art0 + m;
        let mut t = Vec::with_capacity(m);
        let rows = self.eq.iter().map(|r| (r, None)).chain(self.le.iter().enumerate().map(|(k, r)| (r, Some(k))));
        for (i, ((a, b), slack)) in rows.enumerate() {
            let mut row = vec![Q::zero(); cols + 1];
            row[..n].clone_from_slice(a);
            if let Some(k) = slack {
                row[slack0 + k] = Q::one();
            }
            row[cols] = b.clone();
            if b.is_negative() {
                for v in row.iter_mut() {
                    *v = -&*v;
                }
            }
            row[art0 + i] = Q::one();
            t.push(row);
        }
        let mut tab = Tableau { t, basis: (art0..art0 + m).collect(), cols };

        let phase1: Vec<Q> = (0..cols).map(|j| if j >= art0 { Q::one() } else { Q::zero() }).collect();
        tab.minimize(&phase1, &|_| true);
        let infeas: Q = tab.basis.iter().zip(&tab.t).filter(|(&b, _)| b >= art0).map(|(_, r)| r[cols].clone()).sum();
        if infeas.is_positive() {
            return Ok(LpOutcome::Infeasible);
        }
        // drive zero-level artificials out of the basis
        for i in 0..m {
            if tab.basis[i] >= art0 {
                if let Some(j) = (0..art0).find(|&j| !tab.t[i][j].is_zero()) {
                    tab.pivot(i, j);
                }
            }
        }

        let phase2: Vec<Q> = (0..cols).map(|j| if j < n { -&self.objective[j] } else { Q::zero() }).collect();
        if !tab.minimize(&phase2, &|j| j < art0) {
            return Ok(LpOutcome::Unbounded);
        }
        let mut x = vec![Q::zero(); n];
        for (i, &b) in tab.basis.iter().enumerate() {
            if b < n {
                x[b] = tab.t[i][cols].clone();
            }
        }
        let value = x.iter().zip(&self.objective).map(|(a, c)| a * c).sum();
        debug_assert!(self.is_feasible(&x));
        Ok(LpOutcome::Optimal { x, value })
    }
}
