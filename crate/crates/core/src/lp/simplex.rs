//! Dense two-phase tableau simplex over exact rationals.
//!
//! Bland's rule keeps it from cycling; with exact arithmetic the verdict
//! (feasible point or infeasibility) is certain. Upper bounds become
//! explicit rows, which is fine at the sizes this crate handles.

use num::{BigRational, One, Signed, ToPrimitive, Zero};

use super::model::{LpModel, Objective, Sense};

type Q = BigRational;

#[derive(Debug, Clone, PartialEq)]
pub enum SimplexResult {
    Optimal(Vec<Q>),
    Infeasible,
    Unbounded,
    PivotLimit,
}

pub fn to_rational(x: f64) -> Q {
    Q::from_float(x).expect("model numbers are finite")
}

pub fn rational_to_f64(q: &Q) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // to_f64 fails only on huge components; fall back to division
        let num = q.numer().to_f64().unwrap_or(f64::NAN);
        let den = q.denom().to_f64().unwrap_or(f64::NAN);
        num / den
    })
}

struct Tableau {
    /// rows × (cols + 1); last column is the right-hand side.
    a: Vec<Vec<Q>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize, obj: &mut [Q]) {
        let inv = self.a[row][col].recip();
        for x in self.a[row].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = self.a[row].clone();
        for (i, other) in self.a.iter_mut().enumerate() {
            if i == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for (x, p) in other.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        if !obj[col].is_zero() {
            let factor = obj[col].clone();
            for (x, p) in obj.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Reduced-cost row for maximizing `cost` (length `cols`): entry j is
    /// `c_B B⁻¹ A_j − c_j`, last entry the objective value.
    fn objective_row(&self, cost: &[Q]) -> Vec<Q> {
        let mut obj: Vec<Q> = cost.iter().map(|c| -c.clone()).collect();
        obj.push(Q::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            for (x, a) in obj.iter_mut().zip(&self.a[i]) {
                if !a.is_zero() {
                    *x += &cost[b] * a;
                }
            }
        }
        obj
    }

    /// Maximizes over the columns allowed by `usable`. Returns false if
    /// unbounded.
    fn optimize(&mut self, obj: &mut [Q], usable: &[bool], pivots: &mut usize, limit: usize) -> Option<bool> {
        loop {
            let entering = (0..self.cols).find(|&j| usable[j] && obj[j].is_negative());
            let Some(col) = entering else {
                return Some(true);
            };
            let rhs = self.cols;
            let mut best: Option<(usize, Q)> = None;
            for (i, row) in self.a.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((row, _)) = best else {
                return Some(false);
            };
            *pivots += 1;
            if *pivots > limit {
                return None;
            }
            self.pivot(row, col, obj);
        }
    }
}

/// Sparse coefficients, sense, right-hand side.
type RationalRow = (Vec<(usize, Q)>, Sense, Q);

/// Solves `model` (all variables in `[0, upper]`), maximizing its objective.
pub fn solve(model: &LpModel, pivot_limit: usize) -> SimplexResult {
    let nv = model.num_vars();
    // rows: model rows plus one bound row per variable
    let mut rows: Vec<RationalRow> = model
        .rows
        .iter()
        .map(|r| {
            (
                r.coeffs
                    .iter()
                    .filter(|(_, a)| *a != 0.0)
                    .map(|&(j, a)| (j, to_rational(a)))
                    .collect(),
                r.sense,
                to_rational(r.rhs),
            )
        })
        .collect();
    for (j, var) in model.vars.iter().enumerate() {
        rows.push((vec![(j, Q::one())], Sense::Le, to_rational(var.upper)));
    }
    // normalize to nonnegative rhs
    for (coeffs, sense, rhs) in rows.iter_mut() {
        if rhs.is_negative() {
            for (_, a) in coeffs.iter_mut() {
                *a = -a.clone();
            }
            *rhs = -rhs.clone();
            *sense = match *sense {
                Sense::Le => Sense::Ge,
                Sense::Ge => Sense::Le,
                Sense::Eq => Sense::Eq,
            };
        }
    }
    let slack_count = rows.iter().filter(|r| r.1 != Sense::Eq).count();
    let art_count = rows.iter().filter(|r| r.1 != Sense::Le).count();
    let cols = nv + slack_count + art_count;
    let art_start = nv + slack_count;

    let mut a = Vec::with_capacity(rows.len());
    let mut basis = Vec::with_capacity(rows.len());
    let (mut next_slack, mut next_art) = (nv, art_start);
    for (coeffs, sense, rhs) in rows {
        let mut row = vec![Q::zero(); cols + 1];
        for (j, q) in coeffs {
            row[j] += q;
        }
        row[cols] = rhs;
        match sense {
            Sense::Le => {
                row[next_slack] = Q::one();
                basis.push(next_slack);
                next_slack += 1;
            }
            Sense::Ge => {
                row[next_slack] = -Q::one();
                next_slack += 1;
                row[next_art] = Q::one();
                basis.push(next_art);
                next_art += 1;
            }
            Sense::Eq => {
                row[next_art] = Q::one();
                basis.push(next_art);
                next_art += 1;
            }
        }
        a.push(row);
    }
    let mut tab = Tableau { a, basis, cols };
    let mut pivots = 0;

    // Phase 1: maximize −Σ artificials.
    if art_count > 0 {
        let mut cost = vec![Q::zero(); cols];
        for c in cost.iter_mut().skip(art_start) {
            *c = -Q::one();
        }
        let mut obj = tab.objective_row(&cost);
        let usable = vec![true; cols];
        match tab.optimize(&mut obj, &usable, &mut pivots, pivot_limit) {
            None => return SimplexResult::PivotLimit,
            Some(false) => unreachable!("phase one is bounded"),
            Some(true) => {}
        }
        if obj[cols].is_negative() {
            return SimplexResult::Infeasible;
        }
        // Drive zero-valued artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < tab.a.len() {
            if tab.basis[i] >= art_start {
                if let Some(col) = (0..art_start).find(|&j| !tab.a[i][j].is_zero()) {
                    let mut dummy = vec![Q::zero(); cols + 1];
                    tab.pivot(i, col, &mut dummy);
                } else {
                    tab.a.remove(i);
                    tab.basis.remove(i);
                    continue;
                }
            }
            i += 1;
        }
    }

    // Phase 2 over structural and slack columns only.
    let mut cost = vec![Q::zero(); cols];
    if let Objective::Maximize(c) = &model.objective {
        for &(j, w) in c {
            cost[j] += to_rational(w);
        }
    }
    let mut obj = tab.objective_row(&cost);
    let usable: Vec<bool> = (0..cols).map(|j| j < art_start).collect();
    match tab.optimize(&mut obj, &usable, &mut pivots, pivot_limit) {
        None => return SimplexResult::PivotLimit,
        Some(false) => return SimplexResult::Unbounded,
        Some(true) => {}
    }
    let mut x = vec![Q::zero(); nv];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < nv {
            x[b] = tab.a[i][cols].clone();
        }
    }
    SimplexResult::Optimal(x)
}
