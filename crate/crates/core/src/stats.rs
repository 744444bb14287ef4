//! Matching profiles and the statistics derived from them.
//!
//! `profile[k]` is the number of `k`-matchings. Everything else (the Hosoya
//! index, the total size, plain, partial and weighted averages) is a function
//! of the profile alone.
//!
//! Profiles are computed by splitting into connected components (whose
//! profiles multiply as polynomials), running a leaf-elimination dynamic
//! program on trees, and otherwise expanding at a maximum-degree vertex `v`:
//!
//! ```text
//! profile(G) = profile(G - v) + x · Σ_{u ~ v} profile(G - v - u)
//! ```
//!
//! which is the edge recursion `profile(G) = profile(G - e) + x·profile(G - u - v)`
//! applied in turn to every edge at `v`. Larger components are memoized by
//! canonical key.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::canon::{canonical_key, CanonicalKey};
use crate::error::StatsError;
use crate::graph::Graph;
use crate::ratio::ExactRatio;
use crate::surd::{PathConstants, Surd5};

/// `counts[k] = m(G, k)` for `k = 0..=μ(G)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatchingProfile {
    counts: Vec<BigUint>,
}

impl MatchingProfile {
    /// Builds a profile from raw counts, trimming trailing zeros.
    ///
    /// Panics if `counts[0] != 1`.
    pub fn from_counts(mut counts: Vec<BigUint>) -> MatchingProfile {
        while counts.len() > 1 && counts.last().is_some_and(Zero::is_zero) {
            counts.pop();
        }
        assert!(counts.first().is_some_and(One::is_one), "m(G,0) must be 1");
        MatchingProfile { counts }
    }

    pub fn from_u64s(counts: &[u64]) -> MatchingProfile {
        MatchingProfile::from_counts(counts.iter().map(|&c| BigUint::from(c)).collect())
    }

    /// The profile of the edgeless graph.
    pub fn empty() -> MatchingProfile {
        MatchingProfile { counts: vec![BigUint::one()] }
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// `m(G, k)`, zero beyond the matching number.
    pub fn count(&self, k: usize) -> BigUint {
        self.counts.get(k).cloned().unwrap_or_default()
    }

    pub fn to_u64s(&self) -> Option<Vec<u64>> {
        self.counts.iter().map(ToPrimitive::to_u64).collect()
    }

    /// Polynomial product: the profile of a disjoint union.
    pub fn multiply(&self, other: &MatchingProfile) -> MatchingProfile {
        let mut out = vec![BigUint::zero(); self.counts.len() + other.counts.len() - 1];
        for (i, a) in self.counts.iter().enumerate() {
            for (j, b) in other.counts.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        MatchingProfile { counts: out }
    }

    /// `self + x·other`
    pub fn add_shifted(&self, other: &MatchingProfile) -> MatchingProfile {
        let len = self.counts.len().max(other.counts.len() + 1);
        let mut out = vec![BigUint::zero(); len];
        for (i, a) in self.counts.iter().enumerate() {
            out[i] += a;
        }
        for (i, b) in other.counts.iter().enumerate() {
            out[i + 1] += b;
        }
        MatchingProfile::from_counts(out)
    }
}

impl fmt::Debug for MatchingProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.counts.iter().map(|c| c.to_string())).finish()
    }
}

// ---------------------------------------------------------------------------
// computation

/// Vertex to expand at when no fast path applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotRule {
    /// Lowest-labeled vertex of maximum degree.
    MaxDegree,
    /// Lowest-labeled non-isolated vertex. Only used to cross-check pivot
    /// independence.
    FirstVertex,
}

/// Size-bounded, thread-safe memo of connected-component profiles.
pub struct ProfileCache {
    map: Mutex<HashMap<CanonicalKey, MatchingProfile>>,
    capacity: usize,
}

impl ProfileCache {
    pub fn new(capacity: usize) -> ProfileCache {
        ProfileCache { map: Mutex::new(HashMap::new()), capacity }
    }

    fn get(&self, key: &CanonicalKey) -> Option<MatchingProfile> {
        self.map.lock().expect("profile cache poisoned").get(key).cloned()
    }

    fn insert(&self, key: CanonicalKey, profile: MatchingProfile) {
        let mut map = self.map.lock().expect("profile cache poisoned");
        if map.len() >= self.capacity {
            map.clear();
        }
        map.insert(key, profile);
    }

    pub fn len(&self) -> usize {
        self.map.lock().expect("profile cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub struct ProfileEngine {
    pub pivot: PivotRule,
    pub use_forest_fast_path: bool,
    /// Components with at least this many vertices are memoized.
    pub memo_min_vertices: usize,
    cache: Option<ProfileCache>,
}

impl Default for ProfileEngine {
    fn default() -> Self {
        ProfileEngine {
            pivot: PivotRule::MaxDegree,
            use_forest_fast_path: true,
            memo_min_vertices: 9,
            cache: Some(ProfileCache::new(1 << 16)),
        }
    }
}

impl ProfileEngine {
    /// An engine with only the generic recursion: no memo, no forest DP.
    pub fn plain(pivot: PivotRule) -> ProfileEngine {
        ProfileEngine { pivot, use_forest_fast_path: false, memo_min_vertices: usize::MAX, cache: None }
    }

    pub fn cache(&self) -> Option<&ProfileCache> {
        self.cache.as_ref()
    }

    pub fn profile(&self, g: &Graph) -> MatchingProfile {
        if g.edge_count() == 0 {
            return MatchingProfile::empty();
        }
        if self.use_forest_fast_path && g.is_forest() {
            return forest_profile(g);
        }
        g.components()
            .iter()
            .filter(|c| c.edge_count() > 0)
            .map(|c| self.connected_profile(c))
            .fold(MatchingProfile::empty(), |acc, p| acc.multiply(&p))
    }

    fn connected_profile(&self, c: &Graph) -> MatchingProfile {
        if c.edge_count() == 1 {
            return MatchingProfile::from_u64s(&[1, 1]);
        }
        if self.use_forest_fast_path && c.edge_count() + 1 == c.n() {
            return forest_profile(c);
        }
        let key = match &self.cache {
            Some(_) if c.n() >= self.memo_min_vertices => Some(canonical_key(c)),
            _ => None,
        };
        if let (Some(cache), Some(key)) = (&self.cache, &key) {
            if let Some(hit) = cache.get(key) {
                return hit;
            }
        }
        let result = self.expand(c);
        if let (Some(cache), Some(key)) = (&self.cache, key) {
            cache.insert(key, result.clone());
        }
        result
    }

    fn expand(&self, g: &Graph) -> MatchingProfile {
        let v = match self.pivot {
            PivotRule::MaxDegree => {
                let d = g.max_degree();
                (0..g.n()).find(|&v| g.degree(v) == d).expect("nonempty graph")
            }
            PivotRule::FirstVertex => (0..g.n()).find(|&v| g.degree(v) > 0).expect("graph has an edge"),
        };
        let without_v = g.without_vertices(&[v]).expect("vertex in range");
        let mut out: Vec<BigUint> = self.profile(&without_v).counts;
        for &u in g.neighbors(v) {
            let p = self.profile(&g.without_vertices(&[v, u]).expect("vertices in range"));
            if out.len() < p.counts.len() + 1 {
                out.resize(p.counts.len() + 1, BigUint::zero());
            }
            for (i, c) in p.counts.into_iter().enumerate() {
                out[i + 1] += c;
            }
        }
        MatchingProfile::from_counts(out)
    }
}

/// Leaf-elimination dynamic program for forests.
///
/// Each vertex carries two polynomials for the part of the tree already
/// folded into it: `free` counts matchings that leave it uncovered, `total`
/// counts all matchings. Removing a leaf `v` with parent `w` uses
/// `M(G) = M(G - v) + M(G - v - w)` at the polynomial level.
pub fn forest_profile(g: &Graph) -> MatchingProfile {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    for root in 0..n {
        if parent[root] != usize::MAX {
            continue;
        }
        parent[root] = root;
        let start = order.len();
        order.push(root);
        let mut i = start;
        while i < order.len() {
            let v = order[i];
            for &w in g.neighbors(v) {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    let one = || vec![BigUint::one()];
    let mut free: Vec<Vec<BigUint>> = vec![one(); n];
    let mut total: Vec<Vec<BigUint>> = vec![one(); n];
    let mut result = MatchingProfile::empty();
    for &v in order.iter().rev() {
        let p = parent[v];
        if p == v {
            result = result.multiply(&MatchingProfile::from_counts(std::mem::take(&mut total[v])));
            continue;
        }
        // matchings where p is free: p's free part times v's total
        // matchings using edge pv: x · p's free part times v's free part
        let pf = std::mem::take(&mut free[p]);
        let pt = std::mem::take(&mut total[p]);
        let vf = std::mem::take(&mut free[v]);
        let vt = std::mem::take(&mut total[v]);
        let new_free = poly_mul(&pf, &vt);
        let via_edge = poly_mul(&pf, &vf);
        let mut new_total = poly_mul(&pt, &vt);
        if new_total.len() < via_edge.len() + 1 {
            new_total.resize(via_edge.len() + 1, BigUint::zero());
        }
        for (i, c) in via_edge.into_iter().enumerate() {
            new_total[i + 1] += c;
        }
        free[p] = new_free;
        total[p] = new_total;
    }
    result
}

fn poly_mul(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn default_engine() -> &'static ProfileEngine {
    static ENGINE: OnceLock<ProfileEngine> = OnceLock::new();
    ENGINE.get_or_init(ProfileEngine::default)
}

/// Matching profile using the shared default engine.
pub fn matching_profile(g: &Graph) -> MatchingProfile {
    default_engine().profile(g)
}

// ---------------------------------------------------------------------------
// statistics

/// Hosoya index `M(G)`.
pub fn total_count(p: &MatchingProfile) -> BigUint {
    p.counts.iter().sum()
}

/// `Σ(G) = Σ k·m(G,k)`.
pub fn total_size(p: &MatchingProfile) -> BigUint {
    p.counts.iter().enumerate().map(|(k, c)| c * BigUint::from(k)).sum()
}

pub fn average_size(p: &MatchingProfile) -> ExactRatio {
    ExactRatio::from_counts(&total_size(p), &total_count(p))
}

pub fn matching_number(p: &MatchingProfile) -> usize {
    p.counts.len() - 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialStats {
    pub m_k: BigUint,
    pub s_k: BigUint,
    pub av_k: ExactRatio,
}

/// Sums truncated to matchings of size at most `k`.
pub fn partial_stats(p: &MatchingProfile, k: usize) -> PartialStats {
    let upto = &p.counts[..p.counts.len().min(k + 1)];
    let m_k: BigUint = upto.iter().sum();
    let s_k: BigUint = upto.iter().enumerate().map(|(i, c)| c * BigUint::from(i)).sum();
    let av_k = ExactRatio::from_counts(&s_k, &m_k);
    PartialStats { m_k, s_k, av_k }
}

/// Weighted sums where a `k`-matching has weight `alpha^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedStats {
    pub alpha: BigRational,
    pub m_alpha: BigRational,
    pub s_alpha: BigRational,
    pub av_alpha: ExactRatio,
}

pub fn weighted_stats(p: &MatchingProfile, alpha: &BigRational) -> Result<WeightedStats, StatsError> {
    if !alpha.is_positive() {
        return Err(StatsError::NonPositiveAlpha(alpha.to_string()));
    }
    let mut m = BigRational::zero();
    let mut s = BigRational::zero();
    let mut power = BigRational::one();
    for (k, c) in p.counts.iter().enumerate() {
        let term = &power * BigRational::from_integer(BigInt::from(c.clone()));
        s += &term * BigRational::from_integer(BigInt::from(k));
        m += term;
        power *= alpha;
    }
    let av_alpha = ExactRatio::from(&s / &m);
    Ok(WeightedStats { alpha: alpha.clone(), m_alpha: m, s_alpha: s, av_alpha })
}

// ---------------------------------------------------------------------------
// closed forms

/// The closed form for the average matching size of `P_n`, as an exact
/// element of Q(√5):
///
/// `a·n + (1-√5)/10 - (n+1) / (√5 · ((-φ²)^(n+1) - 1))`
pub fn av_path_closed_form_exact(n: usize) -> Surd5 {
    let consts = PathConstants::default();
    let phi_sq = &consts.phi * &consts.phi;
    let x = (-phi_sq).pow(n as u32 + 1);
    let one = Surd5::rational(BigRational::one());
    let denom = &Surd5::sqrt5() * &(&x - &one);
    let n_plus_1 = Surd5::rational(BigRational::from_integer(BigInt::from(n + 1)));
    let tail = n_plus_1.div(&denom);
    let linear = consts.a.scale(&BigRational::from_integer(BigInt::from(n)));
    &(&linear + &consts.c_limit()) - &tail
}

/// The closed form evaluated to a certified enclosure of width at most
/// `10^-digits`, returned as its lower end.
pub fn av_path_closed_form(n: usize, digits: u32) -> BigRational {
    av_path_closed_form_exact(n).enclose(digits).0
}

/// `c_n = av(P_n) - a·n` computed from the closed form.
pub fn path_offset(n: usize) -> Surd5 {
    let consts = PathConstants::default();
    &av_path_closed_form_exact(n) - &consts.a.scale(&BigRational::from_integer(BigInt::from(n)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpiderStats {
    pub m: BigUint,
    pub s: BigUint,
    pub av: ExactRatio,
}

/// Closed forms for the spider with `k` two-vertex legs:
/// `M = 2^k + k·2^(k-1)`, `Σ = k·2^(k-1) + k(k+1)·2^(k-2)`,
/// `av = (k² + 3k) / (2k + 4)`.
pub fn spider_closed_forms(k: usize) -> SpiderStats {
    assert!(k >= 1, "spider needs at least one leg");
    let pow = |e: usize| BigUint::one() << e;
    let kb = BigUint::from(k);
    let m = pow(k) + &kb * pow(k - 1);
    // k(k+1)·2^(k-2) written with an integral factor k(k+1)/2
    let s = &kb * pow(k - 1) + BigUint::from(k * (k + 1) / 2) * pow(k - 1);
    let av = ExactRatio::new(k * k + 3 * k, 2 * k + 4);
    SpiderStats { m, s, av }
}

/// Both sides of `Σ(K_n) = C(n,2)·M(K_{n-2})`.
pub fn complete_graph_sum_identity(n: usize) -> (BigUint, BigUint) {
    assert!(n >= 2);
    let lhs = total_size(&matching_profile(&Graph::complete(n)));
    let rhs = binomial(BigUint::from(n), BigUint::from(2u32)) * total_count(&matching_profile(&Graph::complete(n - 2)));
    (lhs, rhs)
}

/// Involutions of an `n`-set: `I(n) = I(n-1) + (n-1)·I(n-2)`.
pub fn involution_count(n: usize) -> BigUint {
    let (mut prev, mut cur) = (BigUint::one(), BigUint::one());
    for i in 2..=n {
        let next = &cur + BigUint::from(i - 1) * &prev;
        prev = cur;
        cur = next;
    }
    cur
}
