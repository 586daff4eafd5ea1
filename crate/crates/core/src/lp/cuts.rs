use std::collections::HashSet;

use serde::Serialize;

/// Which family a cut belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CutTag {
    /// `Σ_{j∈R} cov_j <= ⌊k/ℓ⌋` for a well-separated `R` (uniform case).
    WlCut,
    /// `Σ λ_v cov_v <= m − 1` with integral `λ` built from a good partition.
    LambdaCut,
}

/// `Σ_v lambda[v] · cov_v <= rhs` over the coverage variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Cut {
    pub lambda: Vec<u64>,
    pub rhs: i64,
    pub tag: CutTag,
}

impl Cut {
    pub fn lhs(&self, cov: &[f64]) -> f64 {
        self.lambda.iter().zip(cov).map(|(&l, &c)| l as f64 * c).sum()
    }

    pub fn is_violated_by(&self, cov: &[f64], eps: f64) -> bool {
        self.lhs(cov) > self.rhs as f64 + eps
    }

    /// Clients with a nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.lambda
            .iter()
            .enumerate()
            .filter(|(_, &l)| l > 0)
            .map(|(v, _)| v)
            .collect()
    }
}

/// The cuts accumulated by one round-or-cut loop at one radius.
#[derive(Debug, Clone, Default)]
pub struct CutPool {
    cuts: Vec<Cut>,
    seen: HashSet<Cut>,
}

impl CutPool {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a cut; returns false if an identical cut is already present.
    pub fn add(&mut self, cut: Cut) -> bool {
        if self.seen.contains(&cut) {
            return false;
        }
        self.seen.insert(cut.clone());
        self.cuts.push(cut);
        true
    }

    pub fn cuts(&self) -> &[Cut] {
        &self.cuts
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }
}
