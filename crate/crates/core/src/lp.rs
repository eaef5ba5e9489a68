//! Exact linear programming over an [`HPolytope`].
//!
//! `max c^T x s.t. A x <= b` is solved through its dual
//! `min b^T y s.t. A^T y = c, y >= 0`, which is already in standard form and
//! has only `d` equality rows, so the tableau stays `d x (n + d)` no matter how
//! many halfspaces the polytope has. Phase 1 uses one artificial per equality
//! row; Bland's rule is used throughout, so with exact arithmetic the method
//! terminates unconditionally. The primal optimum is read off the simplex
//! multipliers of the optimal dual basis and is a basic solution (a vertex
//! when the basis consists of `d` polytope rows).

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{HPolytope, RationalVector};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpResult {
    pub status: LpStatus,
    /// Set iff `status == Optimal`.
    pub value: Option<Rational>,
    /// Set iff `status == Optimal`.
    pub point: Option<RationalVector>,
}

impl LpResult {
    fn optimal(value: Rational, point: RationalVector) -> Self {
        LpResult {
            status: LpStatus::Optimal,
            value: Some(value),
            point: Some(point),
        }
    }

    fn without_optimum(status: LpStatus) -> Self {
        LpResult {
            status,
            value: None,
            point: None,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

/// Maximizes `c^T x` over `poly`. Infeasibility and unboundedness are
/// reported through the status; the only error is a dimension mismatch.
pub fn solve_lp_max(c: &RationalVector, poly: &HPolytope) -> Result<LpResult> {
    if c.dim() != poly.dim() {
        return Err(Error::DimensionMismatch {
            expected: poly.dim(),
            found: c.dim(),
        });
    }
    match solve_dual(c.coords(), poly) {
        DualOutcome::Optimal(value, point) => Ok(LpResult::optimal(value, point)),
        DualOutcome::DualUnbounded => Ok(LpResult::without_optimum(LpStatus::Infeasible)),
        DualOutcome::DualInfeasible => {
            // The primal is either infeasible or unbounded; settle it with the
            // zero objective, whose dual is always feasible.
            let zero = vec![Rational::zero(); poly.dim()];
            match solve_dual(&zero, poly) {
                DualOutcome::Optimal(..) => Ok(LpResult::without_optimum(LpStatus::Unbounded)),
                _ => Ok(LpResult::without_optimum(LpStatus::Infeasible)),
            }
        }
    }
}

enum DualOutcome {
    Optimal(Rational, RationalVector),
    DualInfeasible,
    DualUnbounded,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Reduced costs for the current phase (minimization).
    reduced: Vec<Rational>,
    objective: Rational,
    /// Columns `0..n_real` are dual variables; the rest are artificials.
    n_real: usize,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].recip();
        for v in self.rows[row].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        self.rhs[row] *= &inv;
        let pivot_row = std::mem::take(&mut self.rows[row]);
        let pivot_rhs = self.rhs[row].clone();
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let factor = r[col].clone();
            eliminate(r, &pivot_row, &factor);
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        let factor = self.reduced[col].clone();
        if !factor.is_zero() {
            eliminate(&mut self.reduced, &pivot_row, &factor);
            self.objective += &factor * &pivot_rhs;
        }
        self.rows[row] = pivot_row;
        self.basis[row] = col;
    }

    /// Bland's rule: lowest-index improving column enters; among tied ratios
    /// the basic variable with the lowest index leaves.
    fn run(&mut self) -> Step {
        loop {
            let Some(col) = (0..self.n_real).find(|&j| self.reduced[j].is_negative()) else {
                return Step::Optimal;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((row, _)) => self.pivot(row, col),
                None => return Step::Unbounded,
            }
        }
    }

    fn set_costs(&mut self, costs: &[Rational]) {
        self.reduced = costs.to_vec();
        self.objective = Rational::zero();
        for i in 0..self.rows.len() {
            let cb = &costs[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            eliminate(&mut self.reduced, &self.rows[i], cb);
            self.objective += cb * &self.rhs[i];
        }
    }
}

fn eliminate(target: &mut [Rational], source: &[Rational], factor: &Rational) {
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t -= factor * s;
        }
    }
}

fn solve_dual(c: &[Rational], poly: &HPolytope) -> DualOutcome {
    let d = poly.dim();
    let m = poly.len();
    let signs: Vec<bool> = c.iter().map(|ci| !ci.is_negative()).collect();
    let width = m + d;
    let mut rows = vec![vec![Rational::zero(); width]; d];
    for (j, h) in poly.rows().iter().enumerate() {
        for i in 0..d {
            let a = &h.normal[i];
            if !a.is_zero() {
                rows[i][j] = if signs[i] { a.clone() } else { -a };
            }
        }
    }
    for (i, row) in rows.iter_mut().enumerate() {
        row[m + i] = Rational::from_integer(1.into());
    }
    let mut tab = Tableau {
        rows,
        rhs: c.iter().map(|ci| ci.abs()).collect(),
        basis: (m..m + d).collect(),
        reduced: Vec::new(),
        objective: Rational::zero(),
        n_real: m,
    };

    // Phase 1: minimize the sum of artificials.
    let mut phase1 = vec![Rational::zero(); width];
    for cost in phase1.iter_mut().skip(m) {
        *cost = Rational::from_integer(1.into());
    }
    tab.set_costs(&phase1);
    if let Step::Unbounded = tab.run() {
        unreachable!("phase 1 objective is bounded below by zero");
    }
    if tab.objective.is_positive() {
        return DualOutcome::DualInfeasible;
    }
    // Drive zero-level artificials out of the basis where possible. Rows with
    // no nonzero real entry are redundant and keep their artificial at zero.
    for i in 0..d {
        if tab.basis[i] >= m {
            if let Some(j) = (0..m).find(|&j| !tab.rows[i][j].is_zero()) {
                tab.pivot(i, j);
            }
        }
    }

    // Phase 2: minimize b^T y.
    let mut phase2: Vec<Rational> = poly.rows().iter().map(|h| h.rhs.clone()).collect();
    phase2.resize(width, Rational::zero());
    tab.set_costs(&phase2);
    if let Step::Unbounded = tab.run() {
        return DualOutcome::DualUnbounded;
    }

    // Simplex multipliers: the reduced cost of artificial i is -pi_i.
    let point: Vec<Rational> = (0..d)
        .map(|i| {
            let pi = -&tab.reduced[m + i];
            if signs[i] {
                pi
            } else {
                -pi
            }
        })
        .collect();
    let point = RationalVector::new(point);
    debug_assert!(poly.contains(&point), "dual multipliers are primal infeasible");
    DualOutcome::Optimal(tab.objective, point)
}
