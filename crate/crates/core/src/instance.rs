//! Instance data model, validation, canonical JSON I/O and generators.
//!
//! Points are indexed densely: clients `0..n` come first, facilities follow
//! at `n..n+f`. Facility ids used throughout the crate are `0..f`; the
//! point index of facility `i` is `n + i`.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

/// Relative tolerance used by the triangle-inequality check.
pub const EPS_TRI: f64 = 1e-9;

/// Default cross-gadget distance for [`gen_gap_instance`].
pub const DEFAULT_GAP_DISTANCE: f64 = 1000.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValidationError {
    #[error("distance table has {found} entries, expected {expected} for {points} points")]
    Shape {
        points: usize,
        expected: usize,
        found: usize,
    },
    #[error("fault-tolerance list has {found} entries, expected n = {expected}")]
    EllLength { expected: usize, found: usize },
    #[error("instance has no clients")]
    NoClients,
    #[error("budget k must be positive")]
    ZeroBudget,
    #[error("budget k = {k} exceeds facility count {f}")]
    BudgetExceedsFacilities { k: usize, f: usize },
    #[error("inlier target m = {m} outside [1, n = {n}]")]
    InlierTarget { m: usize, n: usize },
    #[error("client {client} has fault tolerance {ell} outside [1, k = {k}]")]
    FaultTolerance { client: usize, ell: usize, k: usize },
    #[error("distance d({a},{b}) = {value} is not a finite nonnegative number")]
    BadDistance { a: usize, b: usize, value: f64 },
    #[error("d({a},{a}) = {value} is not zero")]
    NonzeroDiagonal { a: usize, value: f64 },
    #[error("asymmetric distances: d({a},{b}) = {ab} but d({b},{a}) = {ba}")]
    Asymmetric { a: usize, b: usize, ab: f64, ba: f64 },
    #[error("triangle violation on ({a},{b},{c}): d({a},{c}) = {direct} > d({a},{b}) + d({b},{c}) = {via}")]
    Triangle {
        a: usize,
        b: usize,
        c: usize,
        direct: f64,
        via: f64,
    },
}

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("malformed instance document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid instance: {0}")]
    Invalid(#[from] ValidationError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ArgumentError {
    #[error("{0}")]
    Invalid(String),
}

/// A point of the metric space `C ∪ F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Client(usize),
    Facility(usize),
}

/// A validated fault-tolerant k-supplier with outliers instance.
///
/// Immutable after construction; every constructor runs the full validation.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    n: usize,
    f: usize,
    k: usize,
    m: usize,
    ell: Vec<usize>,
    dist: Vec<f64>,
}

impl Instance {
    /// Builds and validates an instance. `dist` is the row-major
    /// `(n+f)×(n+f)` table with clients first.
    pub fn new(
        n: usize,
        f: usize,
        k: usize,
        m: usize,
        ell: Vec<usize>,
        dist: Vec<f64>,
    ) -> Result<Self, ValidationError> {
        let inst = Instance { n, f, k, m, ell, dist };
        inst.validate()?;
        Ok(inst)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ell(&self, v: usize) -> usize {
        self.ell[v]
    }

    pub fn ells(&self) -> &[usize] {
        &self.ell
    }

    pub fn num_points(&self) -> usize {
        self.n + self.f
    }

    /// Number of distinct fault tolerances.
    pub fn t(&self) -> usize {
        self.ell.iter().collect::<BTreeSet<_>>().len()
    }

    /// The common fault tolerance if all clients share one.
    pub fn uniform_ell(&self) -> Option<usize> {
        let first = *self.ell.first()?;
        self.ell.iter().all(|&l| l == first).then_some(first)
    }

    pub fn max_ell(&self) -> usize {
        self.ell.iter().copied().max().unwrap_or(0)
    }

    pub fn point_index(&self, p: Point) -> usize {
        match p {
            Point::Client(v) => v,
            Point::Facility(i) => self.n + i,
        }
    }

    /// Distance between two point indices.
    #[inline]
    pub fn d(&self, a: usize, b: usize) -> f64 {
        self.dist[a * (self.n + self.f) + b]
    }

    pub fn d_points(&self, a: Point, b: Point) -> f64 {
        self.d(self.point_index(a), self.point_index(b))
    }

    /// Client-to-client distance.
    #[inline]
    pub fn cc(&self, u: usize, v: usize) -> f64 {
        self.d(u, v)
    }

    /// Client-to-facility distance.
    #[inline]
    pub fn cf(&self, v: usize, i: usize) -> f64 {
        self.d(v, self.n + i)
    }

    pub fn clients(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn facilities(&self) -> std::ops::Range<usize> {
        0..self.f
    }

    pub fn dist_table(&self) -> &[f64] {
        &self.dist
    }

    /// Same metric and tolerances with a different inlier target.
    pub fn with_m(&self, m: usize) -> Result<Self, ValidationError> {
        let mut out = self.clone();
        out.m = m;
        out.validate_parameters()?;
        Ok(out)
    }

    fn validate_parameters(&self) -> Result<(), ValidationError> {
        if self.n == 0 {
            return Err(ValidationError::NoClients);
        }
        if self.ell.len() != self.n {
            return Err(ValidationError::EllLength {
                expected: self.n,
                found: self.ell.len(),
            });
        }
        if self.k == 0 {
            return Err(ValidationError::ZeroBudget);
        }
        if self.k > self.f {
            return Err(ValidationError::BudgetExceedsFacilities { k: self.k, f: self.f });
        }
        if self.m == 0 || self.m > self.n {
            return Err(ValidationError::InlierTarget { m: self.m, n: self.n });
        }
        if let Some((client, &ell)) = self.ell.iter().enumerate().find(|(_, &l)| l == 0 || l > self.k) {
            return Err(ValidationError::FaultTolerance { client, ell, k: self.k });
        }
        Ok(())
    }

    /// Checks every instance invariant, reporting the first violation.
    pub fn validate(&self) -> Result<(), ValidationError> {
        let np = self.n + self.f;
        if self.dist.len() != np * np {
            return Err(ValidationError::Shape {
                points: np,
                expected: np * np,
                found: self.dist.len(),
            });
        }
        self.validate_parameters()?;
        for a in 0..np {
            let daa = self.d(a, a);
            if daa != 0.0 {
                return Err(ValidationError::NonzeroDiagonal { a, value: daa });
            }
            for b in 0..np {
                let ab = self.d(a, b);
                if !ab.is_finite() || ab < 0.0 {
                    return Err(ValidationError::BadDistance { a, b, value: ab });
                }
                let ba = self.d(b, a);
                if ab != ba {
                    return Err(ValidationError::Asymmetric { a, b, ab, ba });
                }
            }
        }
        for a in 0..np {
            for b in 0..np {
                let ab = self.d(a, b);
                for c in 0..np {
                    let direct = self.d(a, c);
                    let via = ab + self.d(b, c);
                    if direct - via > EPS_TRI * via.max(direct) {
                        return Err(ValidationError::Triangle { a, b, c, direct, via });
                    }
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Serialization

/// Distances that are exact integers are written without a fractional part.
struct CanonicalNumber(f64);

impl Serialize for CanonicalNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let x = self.0;
        if x.fract() == 0.0 && x.abs() < 9.0e15 {
            serializer.serialize_i64(x as i64)
        } else {
            serializer.serialize_f64(x)
        }
    }
}

#[derive(Serialize)]
struct InstanceDocOut<'a> {
    n: usize,
    f: usize,
    k: usize,
    m: usize,
    ell: &'a [usize],
    dist: Vec<CanonicalNumber>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDocIn {
    n: usize,
    f: usize,
    k: usize,
    m: usize,
    ell: Vec<usize>,
    dist: Vec<f64>,
}

/// Parses and validates an instance document.
pub fn load_instance(document: &[u8]) -> Result<Instance, InstanceError> {
    let doc: InstanceDocIn = serde_json::from_slice(document)?;
    Ok(Instance::new(doc.n, doc.f, doc.k, doc.m, doc.ell, doc.dist)?)
}

/// Canonical serialization: two-space indentation, fixed key order,
/// trailing newline.
pub fn save_instance(inst: &Instance) -> Vec<u8> {
    let doc = InstanceDocOut {
        n: inst.n,
        f: inst.f,
        k: inst.k,
        m: inst.m,
        ell: &inst.ell,
        dist: inst.dist.iter().map(|&d| CanonicalNumber(d)).collect(),
    };
    let mut out = serde_json::to_vec_pretty(&doc).expect("instance serialization is infallible");
    out.push(b'\n');
    out
}

// ---------------------------------------------------------------------------
// Generators

/// All-pairs shortest paths over a symmetric edge list; unreachable pairs
/// stay at `f64::INFINITY`.
pub fn shortest_path_closure(points: usize, edges: &[(usize, usize, f64)]) -> Vec<f64> {
    let mut d = vec![f64::INFINITY; points * points];
    for a in 0..points {
        d[a * points + a] = 0.0;
    }
    for &(a, b, w) in edges {
        let w = w.min(d[a * points + b]);
        d[a * points + b] = w;
        d[b * points + a] = w;
    }
    for via in 0..points {
        for a in 0..points {
            let av = d[a * points + via];
            if av.is_infinite() {
                continue;
            }
            for b in 0..points {
                let cand = av + d[via * points + b];
                if cand < d[a * points + b] {
                    d[a * points + b] = cand;
                }
            }
        }
    }
    d
}

/// Client ids of one gap gadget: `k` big clients followed by the small one.
pub fn gap_gadget_clients(k: usize, gadget: usize) -> (Vec<usize>, usize) {
    let base = gadget * (k + 1);
    ((base..base + k).collect(), base + k)
}

/// Facility ids of one gap gadget.
pub fn gap_gadget_facilities(k: usize, gadget: usize) -> Vec<usize> {
    (gadget * k..(gadget + 1) * k).collect()
}

/// The integrality-gap family: `k` far-apart gadgets, each with `k` big
/// clients (tolerance `k`), one small client (tolerance 1) and `k`
/// facilities, every client at distance 1 from every facility of its gadget.
pub fn gen_gap_instance(k: usize, far: f64) -> Result<Instance, ArgumentError> {
    if k < 1 {
        return Err(ArgumentError::Invalid("gap instance needs k >= 1".into()));
    }
    if far.is_nan() || far <= 10.0 || !far.is_finite() {
        return Err(ArgumentError::Invalid(format!(
            "cross-gadget distance {far} must be a finite value > 10"
        )));
    }
    let n = k * (k + 1);
    let f = k * k;
    let np = n + f;
    let mut edges = Vec::new();
    for g in 0..k {
        let (big, small) = gap_gadget_clients(k, g);
        for i in gap_gadget_facilities(k, g) {
            for &v in big.iter().chain(std::iter::once(&small)) {
                edges.push((v, n + i, 1.0));
            }
        }
    }
    let mut dist = shortest_path_closure(np, &edges);
    for d in dist.iter_mut() {
        if d.is_infinite() {
            *d = far;
        }
    }
    let mut ell = vec![k; n];
    for g in 0..k {
        ell[gap_gadget_clients(k, g).1] = 1;
    }
    Instance::new(n, f, k, 2 * k, ell, dist)
        .map_err(|e| ArgumentError::Invalid(format!("generated gap instance invalid: {e}")))
}

/// The good-partition limit instance: a path of clients `v_1..v_t` spaced
/// `2·unit` apart, client `v_a` with tolerance `a` and its own group of `k`
/// facilities at distance `unit`. Client `v_a` has id `a-1`; facility group
/// `a` holds ids `(a-1)k..ak`.
pub fn gen_limit_instance(t: usize, k: usize, unit: f64) -> Result<Instance, ArgumentError> {
    if t < 1 {
        return Err(ArgumentError::Invalid("limit instance needs t >= 1".into()));
    }
    if k < t {
        return Err(ArgumentError::Invalid(format!(
            "limit instance needs k >= t (k = {k}, t = {t})"
        )));
    }
    if unit.is_nan() || unit <= 0.0 || !unit.is_finite() {
        return Err(ArgumentError::Invalid(format!("unit distance {unit} must be positive")));
    }
    let n = t;
    let f = t * k;
    let mut edges = Vec::new();
    for a in 0..t {
        if a + 1 < t {
            edges.push((a, a + 1, 2.0 * unit));
        }
        for j in 0..k {
            edges.push((a, n + a * k + j, unit));
        }
    }
    let dist = shortest_path_closure(n + f, &edges);
    let ell = (1..=t).collect();
    Instance::new(n, f, k, 1, ell, dist)
        .map_err(|e| ArgumentError::Invalid(format!("generated limit instance invalid: {e}")))
}

/// Coverage preset on the limit instance: `cov(v_a) = 1 / (a · H_t)`.
pub fn limit_instance_cov(t: usize) -> Vec<f64> {
    let harmonic: f64 = (1..=t).map(|a| 1.0 / a as f64).sum();
    (1..=t).map(|a| 1.0 / (a as f64 * harmonic)).collect()
}

const RANDOM_BOX: f64 = 100.0;

/// Random Euclidean instance whose tolerances use exactly `t` distinct
/// levels drawn from `1..=k`.
pub fn gen_random_instance(
    seed: u64,
    n: usize,
    f: usize,
    k: usize,
    m: usize,
    t: usize,
) -> Result<Instance, ArgumentError> {
    if t == 0 || t > k || t > n {
        return Err(ArgumentError::Invalid(format!(
            "need 1 <= t <= min(k, n) (t = {t}, k = {k}, n = {n})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut levels: Vec<usize> = (1..=k).collect();
    levels.shuffle(&mut rng);
    levels.truncate(t);
    levels.sort_unstable();
    random_with_rng(&mut rng, n, f, k, m, &levels)
}

/// Random Euclidean instance whose tolerances are drawn from `levels`, each
/// level used at least once.
pub fn gen_random_with_levels(
    seed: u64,
    n: usize,
    f: usize,
    k: usize,
    m: usize,
    levels: &[usize],
) -> Result<Instance, ArgumentError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_with_rng(&mut rng, n, f, k, m, levels)
}

fn random_with_rng(
    rng: &mut ChaCha8Rng,
    n: usize,
    f: usize,
    k: usize,
    m: usize,
    levels: &[usize],
) -> Result<Instance, ArgumentError> {
    let distinct: BTreeSet<_> = levels.iter().collect();
    if levels.is_empty() || distinct.len() != levels.len() {
        return Err(ArgumentError::Invalid("levels must be nonempty and distinct".into()));
    }
    if levels.len() > n {
        return Err(ArgumentError::Invalid(format!(
            "{} levels cannot all appear among {n} clients",
            levels.len()
        )));
    }
    if levels.iter().any(|&l| l == 0 || l > k) {
        return Err(ArgumentError::Invalid(format!("levels must lie in [1, k = {k}]")));
    }
    if k == 0 || k > f {
        return Err(ArgumentError::Invalid(format!("need 1 <= k <= f (k = {k}, f = {f})")));
    }
    if m == 0 || m > n {
        return Err(ArgumentError::Invalid(format!("need 1 <= m <= n (m = {m}, n = {n})")));
    }
    let np = n + f;
    let coords: Vec<(f64, f64)> = (0..np)
        .map(|_| (rng.gen_range(0.0..RANDOM_BOX), rng.gen_range(0.0..RANDOM_BOX)))
        .collect();
    let mut ell: Vec<usize> = levels.to_vec();
    while ell.len() < n {
        ell.push(levels[rng.gen_range(0..levels.len())]);
    }
    ell.shuffle(rng);
    let mut dist = vec![0.0; np * np];
    for a in 0..np {
        for b in (a + 1)..np {
            let (xa, ya) = coords[a];
            let (xb, yb) = coords[b];
            let d = (xa - xb).hypot(ya - yb);
            dist[a * np + b] = d;
            dist[b * np + a] = d;
        }
    }
    Instance::new(n, f, k, m, ell, dist)
        .map_err(|e| ArgumentError::Invalid(format!("generated random instance invalid: {e}")))
}
