//! Good partitions of the positive-coverage clients.
//!
//! A `(ρ, cov)`-good partition groups child sets into parts such that
//!
//! 1. child sets partition the clients and refine the parts, with every
//!    representative dominating its children in both coverage and fault
//!    tolerance;
//! 2. representatives in different parts are more than `2r` apart;
//! 3. every client of a part lies within `ρ·r` of the part's head, the
//!    client of largest tolerance.
//!
//! Two builders are provided. The chain builder adopts within `2tr` and
//! merges representatives closer than `2r`, giving `ρ = 4t − 2`. The forest
//! builder grows adoption radii with tree height, giving `ρ = 2^t`.

use serde::Serialize;
use thiserror::Error;

use crate::instance::Instance;
use crate::lp::CoverageVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PartitionKind {
    Chain,
    Forest,
}

impl PartitionKind {
    pub fn name(self) -> &'static str {
        match self {
            PartitionKind::Chain => "chain",
            PartitionKind::Forest => "forest",
        }
    }

    /// The radius parameter the builder guarantees for `t` tolerance levels.
    pub fn rho(self, t: usize) -> f64 {
        match self {
            PartitionKind::Chain => (4 * t - 2) as f64,
            PartitionKind::Forest => 2f64.powi(t as i32),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoodPartition {
    pub kind: PartitionKind,
    /// Ambient radius guess.
    pub r: f64,
    /// Claimed radius parameter.
    pub rho: f64,
    /// Number of clients in the instance; cuts are indexed over all of them.
    pub n: usize,
    pub cov: CoverageVector,
    /// The clients being partitioned (the coverage support), ascending.
    pub clients: Vec<usize>,
    /// Representatives in pick order.
    pub reps: Vec<usize>,
    /// `children[a]` is the child set of `reps[a]`, ascending.
    pub children: Vec<Vec<usize>>,
    /// Tolerance of each representative.
    pub rep_ell: Vec<usize>,
    /// Part index of each representative.
    pub part_of_rep: Vec<usize>,
    /// Client sets of the parts, ascending.
    pub parts: Vec<Vec<usize>>,
    /// Head `j_P` of each part.
    pub heads: Vec<usize>,
    /// `ℓ_P`, the tolerance of each head.
    pub part_ell: Vec<usize>,
    /// Graph edges between representative ids. Undirected for the chain
    /// builder; `(newer, older root)` for the forest builder.
    pub edges: Vec<(usize, usize)>,
    /// Forest height per representative (all zero for the chain builder).
    pub heights: Vec<usize>,
}

impl GoodPartition {
    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// Representative positions (indices into `reps`) belonging to part `p`.
    pub fn reps_in_part(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.reps.len()).filter(move |&a| self.part_of_rep[a] == p)
    }

    /// Largest `d(j_P, v)` over the part, i.e. the realized part radius.
    pub fn part_radius(&self, inst: &Instance, p: usize) -> f64 {
        self.parts[p]
            .iter()
            .map(|&v| inst.cc(self.heads[p], v))
            .fold(0.0, f64::max)
    }
}

struct DisjointSets(Vec<usize>);

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = x;
        while self.0[cur] != root {
            let next = self.0[cur];
            self.0[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so components are named by
            // their earliest representative
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// Shared tail of both builders: parts from connected components of the
/// representative graph (edges given as positions into `reps`).
#[allow(clippy::too_many_arguments)]
fn assemble(
    inst: &Instance,
    kind: PartitionKind,
    cov: &CoverageVector,
    r: f64,
    clients: Vec<usize>,
    reps: Vec<usize>,
    children: Vec<Vec<usize>>,
    edge_positions: &[(usize, usize)],
    heights: Vec<usize>,
) -> GoodPartition {
    let mut sets = DisjointSets::new(reps.len());
    for &(a, b) in edge_positions {
        sets.union(a, b);
    }
    // parts ordered by their earliest representative
    let mut part_index = vec![usize::MAX; reps.len()];
    let mut part_of_rep = vec![0; reps.len()];
    let mut count = 0;
    for (a, slot) in part_of_rep.iter_mut().enumerate() {
        let root = sets.find(a);
        if part_index[root] == usize::MAX {
            part_index[root] = count;
            count += 1;
        }
        *slot = part_index[root];
    }
    let mut parts = vec![Vec::new(); count];
    let mut heads: Vec<Option<usize>> = vec![None; count];
    for (a, child) in children.iter().enumerate() {
        let p = part_of_rep[a];
        parts[p].extend_from_slice(child);
        let j = reps[a];
        heads[p] = match heads[p] {
            Some(h) if (inst.ell(h), std::cmp::Reverse(h)) >= (inst.ell(j), std::cmp::Reverse(j)) => Some(h),
            _ => Some(j),
        };
    }
    for part in parts.iter_mut() {
        part.sort_unstable();
    }
    let heads: Vec<usize> = heads.into_iter().map(|h| h.expect("every part holds a rep")).collect();
    let part_ell = heads.iter().map(|&h| inst.ell(h)).collect();
    let rep_ell = reps.iter().map(|&j| inst.ell(j)).collect();
    let edges = edge_positions.iter().map(|&(a, b)| (reps[a], reps[b])).collect();
    GoodPartition {
        kind,
        r,
        rho: kind.rho(inst.t()),
        n: inst.n(),
        cov: cov.clone(),
        clients,
        reps,
        children,
        rep_ell,
        part_of_rep,
        parts,
        heads,
        part_ell,
        edges,
        heights,
    }
}

/// Chain builder: adopt within `2tr` among clients of no larger tolerance,
/// then merge representatives closer than `2r`.
pub fn build_partition_chain(inst: &Instance, cov: &CoverageVector, r: f64) -> GoodPartition {
    let clients = cov.support();
    let adopt_radius = 2.0 * inst.t() as f64 * r;
    let mut unassigned = vec![false; inst.n()];
    for &v in &clients {
        unassigned[v] = true;
    }
    let mut reps = Vec::new();
    let mut children = Vec::new();
    for j in cov.order_by_coverage(&clients) {
        if !unassigned[j] {
            continue;
        }
        let child: Vec<usize> = clients
            .iter()
            .copied()
            .filter(|&v| unassigned[v] && inst.cc(v, j) <= adopt_radius && inst.ell(v) <= inst.ell(j))
            .collect();
        for &v in &child {
            unassigned[v] = false;
        }
        reps.push(j);
        children.push(child);
    }
    let mut edges = Vec::new();
    for a in 0..reps.len() {
        for b in (a + 1)..reps.len() {
            if inst.cc(reps[a], reps[b]) <= 2.0 * r {
                edges.push((a, b));
            }
        }
    }
    let heights = vec![0; reps.len()];
    assemble(
        inst,
        PartitionKind::Chain,
        cov,
        r,
        clients,
        reps,
        children,
        &edges,
        heights,
    )
}

/// Forest builder: each new representative links to every current root
/// within `2^{height(root)}·r`, takes height one above its tallest new
/// child, and adopts within `2^{height}·r`.
pub fn build_partition_forest(inst: &Instance, cov: &CoverageVector, r: f64) -> GoodPartition {
    let clients = cov.support();
    let mut unassigned = vec![false; inst.n()];
    for &v in &clients {
        unassigned[v] = true;
    }
    let mut reps: Vec<usize> = Vec::new();
    let mut children = Vec::new();
    let mut heights: Vec<usize> = Vec::new();
    let mut roots: Vec<usize> = Vec::new(); // positions into reps
    let mut edges = Vec::new();
    for j in cov.order_by_coverage(&clients) {
        if !unassigned[j] {
            continue;
        }
        let pos = reps.len();
        let linked: Vec<usize> = roots
            .iter()
            .copied()
            .filter(|&b| inst.cc(j, reps[b]) <= 2f64.powi(heights[b] as i32) * r)
            .collect();
        let height = 1 + linked.iter().map(|&b| heights[b]).max().unwrap_or(0);
        roots.retain(|b| !linked.contains(b));
        roots.push(pos);
        edges.extend(linked.iter().map(|&b| (pos, b)));
        let adopt_radius = 2f64.powi(height as i32) * r;
        let child: Vec<usize> = clients
            .iter()
            .copied()
            .filter(|&v| unassigned[v] && inst.cc(v, j) <= adopt_radius && inst.ell(v) <= inst.ell(j))
            .collect();
        for &v in &child {
            unassigned[v] = false;
        }
        reps.push(j);
        children.push(child);
        heights.push(height);
    }
    assemble(
        inst,
        PartitionKind::Forest,
        cov,
        r,
        clients,
        reps,
        children,
        &edges,
        heights,
    )
}

/// First failed property of a claimed good partition, with witnesses.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PartitionViolation {
    #[error("client {client} is not covered exactly once by the child sets")]
    ChildSetsNotPartition { client: usize },
    #[error("client {client} is not covered exactly once by the parts")]
    PartsNotPartition { client: usize },
    #[error("child set of rep {rep} is split across parts (client {client})")]
    ChildSplitAcrossParts { rep: usize, client: usize },
    #[error("rep {rep} has smaller coverage than its child {client}")]
    CoverageOrder { rep: usize, client: usize },
    #[error("rep {rep} has smaller tolerance than its child {client}")]
    ToleranceOrder { rep: usize, client: usize },
    #[error("reps {a} and {b} lie in different parts but are {distance} <= 2r apart")]
    RepsTooClose { a: usize, b: usize, distance: f64 },
    #[error("head {head} of part {part} is not a representative of maximum tolerance")]
    BadHead { part: usize, head: usize },
    #[error("client {client} is {distance} from head {head}, beyond rho·r = {bound}")]
    Radius {
        head: usize,
        client: usize,
        distance: f64,
        bound: f64,
    },
}

const RADIUS_TOL: f64 = 1e-9;

/// Checks the three good-partition properties literally at `rho`.
pub fn verify_good_partition(inst: &Instance, gp: &GoodPartition, rho: f64) -> Result<(), PartitionViolation> {
    let r = gp.r;
    let mut in_universe = vec![false; inst.n()];
    for &v in &gp.clients {
        in_universe[v] = true;
    }

    // Property 1: child sets partition the clients, refine the parts, and
    // are dominated by their representative.
    let mut child_owner = vec![None; inst.n()];
    for (a, child) in gp.children.iter().enumerate() {
        for &v in child {
            if !in_universe[v] || child_owner[v].is_some() {
                return Err(PartitionViolation::ChildSetsNotPartition { client: v });
            }
            child_owner[v] = Some(a);
        }
    }
    if let Some(&v) = gp.clients.iter().find(|&&v| child_owner[v].is_none()) {
        return Err(PartitionViolation::ChildSetsNotPartition { client: v });
    }
    let mut part_owner = vec![None; inst.n()];
    for (p, part) in gp.parts.iter().enumerate() {
        for &v in part {
            if !in_universe[v] || part_owner[v].is_some() {
                return Err(PartitionViolation::PartsNotPartition { client: v });
            }
            part_owner[v] = Some(p);
        }
    }
    if let Some(&v) = gp.clients.iter().find(|&&v| part_owner[v].is_none()) {
        return Err(PartitionViolation::PartsNotPartition { client: v });
    }
    for (a, child) in gp.children.iter().enumerate() {
        let j = gp.reps[a];
        let rep_part = part_owner.get(j).copied().flatten();
        for &v in child {
            if part_owner[v] != rep_part || rep_part != Some(gp.part_of_rep[a]) {
                return Err(PartitionViolation::ChildSplitAcrossParts { rep: j, client: v });
            }
            if gp.cov.get(j) < gp.cov.get(v) {
                return Err(PartitionViolation::CoverageOrder { rep: j, client: v });
            }
            if inst.ell(j) < inst.ell(v) {
                return Err(PartitionViolation::ToleranceOrder { rep: j, client: v });
            }
        }
    }

    // Property 2: representatives of different parts are well separated.
    for a in 0..gp.reps.len() {
        for b in (a + 1)..gp.reps.len() {
            if gp.part_of_rep[a] == gp.part_of_rep[b] {
                continue;
            }
            let distance = inst.cc(gp.reps[a], gp.reps[b]);
            if distance <= 2.0 * r {
                return Err(PartitionViolation::RepsTooClose {
                    a: gp.reps[a],
                    b: gp.reps[b],
                    distance,
                });
            }
        }
    }

    // Property 3: the head has maximum tolerance and every client of the
    // part is within rho·r of it.
    for (p, part) in gp.parts.iter().enumerate() {
        let head = gp.heads[p];
        let max_ell = part.iter().map(|&v| inst.ell(v)).max().unwrap_or(0);
        let head_is_rep = gp.reps.iter().zip(&gp.part_of_rep).any(|(&j, &q)| j == head && q == p);
        if !head_is_rep || inst.ell(head) != max_ell {
            return Err(PartitionViolation::BadHead { part: p, head });
        }
        let bound = rho * r;
        for &v in part {
            let distance = inst.cc(head, v);
            if distance > bound + RADIUS_TOL * bound.max(1.0) {
                return Err(PartitionViolation::Radius {
                    head,
                    client: v,
                    distance,
                    bound,
                });
            }
        }
    }
    Ok(())
}
