//! Budget allocation across parts.
//!
//! Giving part `P` a budget `b` serves every child set whose representative
//! has tolerance at most `b`. Budgets are capped at `ℓ_P` since nothing is
//! gained beyond the head's tolerance. The table
//! `M[ν, b] = max_{ℓ ≤ min(b, L_ν)} M[ν−1, b−ℓ] + value(P_ν, ℓ)` is filled
//! part by part; ties keep the smaller budget.

use serde::Serialize;

/// One part: its budget cap and `(ℓ_j, |child(j)|)` per representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BudgetPart {
    pub cap: usize,
    pub reps: Vec<(usize, usize)>,
}

impl BudgetPart {
    /// Clients served when the part receives `budget`.
    pub fn value(&self, budget: usize) -> usize {
        self.reps
            .iter()
            .filter(|&&(ell, _)| ell <= budget)
            .map(|&(_, w)| w)
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BudgetProblem {
    pub parts: Vec<BudgetPart>,
}

impl BudgetProblem {
    /// Total served for a per-part allocation.
    pub fn objective(&self, alloc: &[usize]) -> usize {
        self.parts.iter().zip(alloc).map(|(p, &b)| p.value(b)).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BudgetAllocation {
    /// `k_P` for each part, in part order.
    pub k_parts: Vec<usize>,
    /// Clients served by the allocation.
    pub opt: usize,
}

impl BudgetAllocation {
    pub fn total(&self) -> usize {
        self.k_parts.iter().sum()
    }
}

/// Maximizes served clients subject to `Σ k_P <= k` and `k_P <= cap_P`.
pub fn budget_dp(problem: &BudgetProblem, k: usize) -> BudgetAllocation {
    let parts = &problem.parts;
    // best[b] after processing ν parts; choice[ν][b] is the budget given
    // to part ν in the optimum for budget b.
    let mut best = vec![0usize; k + 1];
    let mut choice = Vec::with_capacity(parts.len());
    for part in parts {
        let mut next = vec![0usize; k + 1];
        let mut pick = vec![0usize; k + 1];
        for b in 0..=k {
            let mut top = None;
            for ell in 0..=b.min(part.cap) {
                let candidate = best[b - ell] + part.value(ell);
                if top.is_none_or(|t| candidate > t) {
                    top = Some(candidate);
                    pick[b] = ell;
                }
            }
            next[b] = top.unwrap_or(0);
        }
        best = next;
        choice.push(pick);
    }
    let mut k_parts = vec![0; parts.len()];
    let mut b = k;
    for nu in (0..parts.len()).rev() {
        k_parts[nu] = choice[nu][b];
        b -= k_parts[nu];
    }
    BudgetAllocation { opt: best[k], k_parts }
}
