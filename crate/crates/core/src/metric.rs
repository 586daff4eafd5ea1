//! Ranked distances, nearest sets, balls, well-separation and the finite set
//! of candidate radii.
//!
//! Ties between equidistant facilities are always broken by ascending
//! facility id, so `dist_rank` and `nearest_set` agree with each other.

use thiserror::Error;

use crate::instance::{Instance, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("rank {rank} out of range for a set of {size} facilities")]
pub struct RankOutOfRange {
    pub rank: usize,
    pub size: usize,
}

fn sorted_by_distance(inst: &Instance, v: usize, set: &[usize]) -> Vec<(f64, usize)> {
    let mut order: Vec<(f64, usize)> = set.iter().map(|&i| (inst.cf(v, i), i)).collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    order
}

/// Distance from client `v` to its `rank`-th closest facility of `set`
/// (1-based).
pub fn dist_rank(inst: &Instance, v: usize, set: &[usize], rank: usize) -> Result<f64, RankOutOfRange> {
    if rank == 0 || rank > set.len() {
        return Err(RankOutOfRange { rank, size: set.len() });
    }
    Ok(sorted_by_distance(inst, v, set)[rank - 1].0)
}

/// The `rank` facilities of `set` closest to client `v`, in order of
/// increasing distance. `rank = 0` yields the empty set.
pub fn nearest_set(inst: &Instance, v: usize, set: &[usize], rank: usize) -> Result<Vec<usize>, RankOutOfRange> {
    if rank > set.len() {
        return Err(RankOutOfRange { rank, size: set.len() });
    }
    Ok(sorted_by_distance(inst, v, set)
        .into_iter()
        .take(rank)
        .map(|(_, i)| i)
        .collect())
}

/// `d_rank(v, F)` over all facilities; infinite when `rank > |F|`.
pub fn dist_rank_all(inst: &Instance, v: usize, rank: usize) -> f64 {
    if rank == 0 {
        return 0.0;
    }
    let mut row: Vec<f64> = inst.facilities().map(|i| inst.cf(v, i)).collect();
    if rank > row.len() {
        return f64::INFINITY;
    }
    row.select_nth_unstable_by(rank - 1, f64::total_cmp);
    row[rank - 1]
}

/// `d_{ℓ_v}(v, S)` for an arbitrary facility set; infinite if `|S| < ℓ_v`.
pub fn service_distance(inst: &Instance, v: usize, open: &[usize]) -> f64 {
    dist_rank(inst, v, open, inst.ell(v)).unwrap_or(f64::INFINITY)
}

/// `N_rank(v, F)` over all facilities.
pub fn nearest_facilities(inst: &Instance, v: usize, rank: usize) -> Vec<usize> {
    let all: Vec<usize> = inst.facilities().collect();
    nearest_set(inst, v, &all, rank.min(all.len())).expect("rank clamped to |F|")
}

/// Closed ball `{x ∈ pool : d(center, x) <= r}`, in pool order.
pub fn ball(inst: &Instance, center: Point, r: f64, pool: &[Point]) -> Vec<Point> {
    pool.iter()
        .copied()
        .filter(|&x| inst.d_points(center, x) <= r)
        .collect()
}

/// Facility ids within distance `r` of client `v`.
pub fn facilities_within(inst: &Instance, v: usize, r: f64) -> Vec<usize> {
    inst.facilities().filter(|&i| inst.cf(v, i) <= r).collect()
}

/// True iff every pair of distinct clients in `set` is more than `2r` apart.
pub fn is_well_separated(inst: &Instance, set: &[usize], r: f64) -> bool {
    set.iter()
        .enumerate()
        .all(|(a, &x)| set[a + 1..].iter().all(|&y| x == y || inst.cc(x, y) > 2.0 * r))
}

/// Sorted distinct client–facility distances. The optimal radius of every
/// instance is one of them.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateRadii(Vec<f64>);

impl CandidateRadii {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Index of the first candidate `>= r`.
    pub fn lower_bound(&self, r: f64) -> usize {
        self.0.partition_point(|&x| x < r)
    }
}

pub fn candidate_radii(inst: &Instance) -> CandidateRadii {
    let mut values: Vec<f64> = inst
        .clients()
        .flat_map(|v| inst.facilities().map(move |i| (v, i)))
        .map(|(v, i)| inst.cf(v, i))
        .collect();
    values.sort_by(f64::total_cmp);
    values.dedup();
    CandidateRadii(values)
}
