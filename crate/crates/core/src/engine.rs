//! Stirling profiles of graphs: `S(G, k)` is the number of partitions of the
//! vertex set into exactly `k` stable sets.
//!
//! [`ColoringEngine`] computes profiles by deletion–contraction,
//!
//! ```text
//! S(G, k) = S(G - uv, k) - S(G|uv, k)    u, v adjacent
//! S(G, k) = S(G + uv, k) + S(G|uv, k)    u, v not adjacent
//! ```
//!
//! short-circuited by two reductions that remove one vertex exactly:
//! a dominating vertex `v` gives `S(G, k) = S(G - v, k - 1)`, and a simplicial
//! vertex with `r` neighbours gives `S(G, k) = (k - r) S(G - v, k) + S(G - v, k - 1)`.
//! Intermediate results are memoized on the graph's canonical form.
//!
//! [`brute_force_profile`] enumerates every set partition and is kept as an
//! independent oracle for testing.

use std::collections::HashMap;
use std::ops::{Add, Sub};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::canon::{canonical_form, CanonicalKey};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexKind};
use crate::rational::ExactRational;
use crate::sequences::BigSeqCache;

/// Largest order the brute-force oracle accepts.
pub const BRUTE_FORCE_MAX_ORDER: usize = 12;

/// `counts[k] = S(G, k)` for `k = 0..=n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StirlingProfile {
    counts: Vec<BigUint>,
}

impl StirlingProfile {
    /// Wraps a counts vector; index `k` holds `S(G, k)`. The vector must be
    /// nonempty, its length being the graph order plus one.
    pub fn from_counts(counts: Vec<BigUint>) -> StirlingProfile {
        assert!(!counts.is_empty(), "a profile has at least the k = 0 entry");
        StirlingProfile { counts }
    }

    /// Profile of the edgeless graph on `n` vertices: a Stirling row.
    pub fn empty_graph(n: usize) -> StirlingProfile {
        StirlingProfile::from_counts(BigSeqCache::global().stirling_row(n))
    }

    /// Profile of `K_n`: the single all-singletons partition.
    pub fn complete_graph(n: usize) -> StirlingProfile {
        let mut counts = vec![BigUint::zero(); n + 1];
        counts[n] = BigUint::one();
        StirlingProfile::from_counts(counts)
    }

    pub fn order(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn count(&self, k: usize) -> BigUint {
        self.counts.get(k).cloned().unwrap_or_default()
    }

    /// Number of partitions into stable sets (the graphical Bell number).
    pub fn bell(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Total number of colour classes over all those partitions.
    pub fn total(&self) -> BigUint {
        self.counts.iter().enumerate().map(|(k, c)| c * k).sum()
    }

    /// Average number of colours, `total / bell`.
    pub fn avg_colors(&self) -> Result<ExactRational> {
        if self.order() == 0 {
            return Err(Error::Domain(
                "average colour count of the null graph".into(),
            ));
        }
        ExactRational::from_biguints(&self.total(), &self.bell())
    }

    /// Smallest `k` with a nonzero count.
    pub fn chromatic_number(&self) -> usize {
        self.counts.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Profile after adding a vertex adjacent to every existing vertex.
    pub fn with_dominating_vertex(&self) -> StirlingProfile {
        let mut counts = Vec::with_capacity(self.counts.len() + 1);
        counts.push(BigUint::zero());
        counts.extend(self.counts.iter().cloned());
        StirlingProfile { counts }
    }

    /// Profile after adding a vertex whose `r` neighbours form a clique.
    pub fn with_simplicial_vertex(&self, r: usize) -> StirlingProfile {
        let n = self.order();
        let counts = (0..=n + 1)
            .map(|k| {
                let mut c = BigUint::zero();
                let here = self.count(k);
                if k >= r {
                    c += here * (k - r);
                } else {
                    debug_assert!(
                        here.is_zero(),
                        "graph with a {r}-clique has no {k}-colouring"
                    );
                }
                if k > 0 {
                    c += self.count(k - 1);
                }
                c
            })
            .collect();
        StirlingProfile { counts }
    }

    /// Componentwise difference, `None` if any entry would go negative.
    pub fn checked_sub(&self, rhs: &StirlingProfile) -> Option<StirlingProfile> {
        let len = self.counts.len().max(rhs.counts.len());
        let mut counts = Vec::with_capacity(len);
        for k in 0..len {
            let (a, b) = (self.count(k), rhs.count(k));
            if a < b {
                return None;
            }
            counts.push(a - b);
        }
        Some(StirlingProfile { counts })
    }
}

impl Add for &StirlingProfile {
    type Output = StirlingProfile;

    fn add(self, rhs: &StirlingProfile) -> StirlingProfile {
        let len = self.counts.len().max(rhs.counts.len());
        StirlingProfile {
            counts: (0..len).map(|k| self.count(k) + rhs.count(k)).collect(),
        }
    }
}

impl Sub for &StirlingProfile {
    type Output = StirlingProfile;

    /// Panics if the difference has a negative entry.
    fn sub(self, rhs: &StirlingProfile) -> StirlingProfile {
        self.checked_sub(rhs)
            .expect("profile subtraction underflow")
    }
}

type MemoTable = HashMap<CanonicalKey, Vec<(Graph, StirlingProfile)>>;

/// Memoized deletion–contraction evaluator.
///
/// The memo maps a canonical key to the canonical forms seen under it; a hit
/// requires an identical form, so key collisions between non-isomorphic graphs
/// never leak a wrong profile.
pub struct ColoringEngine {
    memo: Option<RwLock<MemoTable>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl Default for ColoringEngine {
    fn default() -> Self {
        ColoringEngine::new()
    }
}

enum Step {
    Done(StirlingProfile),
    Dominating(Graph),
    Simplicial(Graph, usize),
    Delete(Graph, Graph),
    Add(Graph, Graph),
}

impl ColoringEngine {
    pub fn new() -> ColoringEngine {
        ColoringEngine {
            memo: Some(RwLock::new(HashMap::new())),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }

    pub fn without_memo() -> ColoringEngine {
        ColoringEngine {
            memo: None,
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }

    pub fn memo_enabled(&self) -> bool {
        self.memo.is_some()
    }

    /// `(hits, misses)` of the memo table so far.
    pub fn memo_stats(&self) -> (u64, u64) {
        (
            self.hits.load(Ordering::Relaxed),
            self.misses.load(Ordering::Relaxed),
        )
    }

    pub fn profile(&self, g: &Graph) -> StirlingProfile {
        if let Some(p) = base_case(g) {
            return p;
        }
        let Some(memo) = &self.memo else {
            return self.expand(g);
        };
        let (key, form) = canonical_form(g);
        {
            let table = memo.read().expect("memo poisoned");
            if let Some(p) = table
                .get(&key)
                .and_then(|bucket| bucket.iter().find(|(f, _)| *f == form))
            {
                self.hits.fetch_add(1, Ordering::Relaxed);
                return p.1.clone();
            }
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let p = self.expand(&form);
        let mut table = memo.write().expect("memo poisoned");
        let bucket = table.entry(key).or_default();
        // a concurrent writer may have got here first; its value is identical
        if !bucket.iter().any(|(f, _)| *f == form) {
            bucket.push((form, p.clone()));
        }
        p
    }

    fn expand(&self, g: &Graph) -> StirlingProfile {
        match next_step(g) {
            Step::Done(p) => p,
            Step::Dominating(rest) => self.profile(&rest).with_dominating_vertex(),
            Step::Simplicial(rest, r) => self.profile(&rest).with_simplicial_vertex(r),
            Step::Delete(minus, merged) => &self.profile(&minus) - &self.profile(&merged),
            Step::Add(plus, merged) => &self.profile(&plus) + &self.profile(&merged),
        }
    }

    pub fn bell_graph(&self, g: &Graph) -> BigUint {
        self.profile(g).bell()
    }

    pub fn total_graph(&self, g: &Graph) -> BigUint {
        self.profile(g).total()
    }

    pub fn avg_colors(&self, g: &Graph) -> Result<ExactRational> {
        if g.order() == 0 {
            return Err(Error::Domain(
                "average colour count of the null graph".into(),
            ));
        }
        self.profile(g).avg_colors()
    }
}

fn base_case(g: &Graph) -> Option<StirlingProfile> {
    if g.edge_count() == 0 {
        Some(StirlingProfile::empty_graph(g.order()))
    } else if g.is_complete() {
        Some(StirlingProfile::complete_graph(g.order()))
    } else {
        None
    }
}

fn next_step(g: &Graph) -> Step {
    if let Some(p) = base_case(g) {
        return Step::Done(p);
    }
    let n = g.order();
    let mut simplicial = None;
    for v in 0..n {
        match g.classify_vertex(v).expect("vertex in range") {
            VertexKind::Dominating => {
                return Step::Dominating(g.remove_vertex(v).expect("vertex in range"));
            }
            VertexKind::Simplicial(r) if simplicial.is_none() => simplicial = Some((v, r)),
            _ => {}
        }
    }
    if let Some((v, r)) = simplicial {
        return Step::Simplicial(g.remove_vertex(v).expect("vertex in range"), r);
    }

    // No reduction applies. Head for whichever base case is nearer: delete
    // edges while at most half the pairs are adjacent, otherwise add them.
    let sparse = g.edge_count() <= g.missing_edge_count();
    let mut best: Option<(usize, usize, usize)> = None;
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) != sparse {
                continue;
            }
            let common = g.common_neighbors(u, v);
            if best.is_none_or(|(c, _, _)| common > c) {
                best = Some((common, u, v));
            }
        }
    }
    let (_, u, v) =
        best.expect("a graph that is neither empty nor complete has both kinds of pair");
    let merged = g.merge(u, v).expect("distinct vertices");
    if sparse {
        Step::Delete(g.delete_edge(u, v).expect("adjacent pair"), merged)
    } else {
        Step::Add(g.add_edge(u, v).expect("non-adjacent pair"), merged)
    }
}

/// Profile with a fresh memoizing engine.
pub fn profile(g: &Graph) -> StirlingProfile {
    ColoringEngine::new().profile(g)
}

pub fn bell_graph(g: &Graph) -> BigUint {
    profile(g).bell()
}

pub fn total_graph(g: &Graph) -> BigUint {
    profile(g).total()
}

pub fn avg_colors(g: &Graph) -> Result<ExactRational> {
    ColoringEngine::new().avg_colors(g)
}

/// Counts stable partitions by enumerating every restricted growth string.
pub fn brute_force_profile(g: &Graph) -> Result<StirlingProfile> {
    let n = g.order();
    if n > BRUTE_FORCE_MAX_ORDER {
        return Err(Error::Resource(format!(
            "brute-force oracle limited to {BRUTE_FORCE_MAX_ORDER} vertices, got {n}"
        )));
    }
    let mut counts = vec![0u64; n + 1];
    if n == 0 {
        counts[0] = 1;
        return Ok(StirlingProfile::from_counts(vec![BigUint::one()]));
    }
    let edges = g.edges();
    // block[i] is the block of vertex i; top[i] = max(block[..=i])
    let mut block = vec![0usize; n];
    let mut top = vec![0usize; n];
    loop {
        if edges.iter().all(|&(u, v)| block[u] != block[v]) {
            counts[top[n - 1] + 1] += 1;
        }
        let Some(i) = (1..n).rev().find(|&i| block[i] <= top[i - 1]) else {
            break;
        };
        block[i] += 1;
        top[i] = top[i - 1].max(block[i]);
        for j in i + 1..n {
            block[j] = 0;
            top[j] = top[i];
        }
    }
    Ok(StirlingProfile::from_counts(
        counts.into_iter().map(BigUint::from).collect(),
    ))
}
