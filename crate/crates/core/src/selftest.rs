//! Built-in consistency suite: the engine against the brute-force oracle,
//! closed forms against the engine, and every in-range scan at reduced bounds.
//!
//! The report carries no timings so that equal seeds give equal JSON.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::closed_forms::family_aggregates;
use crate::engine::{brute_force_profile, ColoringEngine};
use crate::error::Result;
use crate::graph::{random_graph, FamilyKind, FamilySpec, Graph};
use crate::verifier::{
    check_extension, extension_cases, failures, prop7_sample_check, scan, InequalityId,
};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const SCAN_N_MAX: usize = 12;
pub const SCAN_P_MAX: usize = 2;
pub const RANDOM_GRAPHS: usize = 200;
pub const PROP7_TRIALS: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Every labeled graph on `n` vertices, one per subset of the `C(n, 2)` pairs.
pub fn all_labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(n, &edges).expect("pairs are valid")
    })
}

/// `count` random graphs on 6 to 9 vertices with edge probability 1/2.
pub fn seeded_random_graphs(seed: u64, count: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(6..=9);
            random_graph(n, 0.5, &mut rng)
        })
        .collect()
}

fn tally(name: impl Into<String>, outcomes: impl IntoIterator<Item = bool>) -> CheckResult {
    let (mut passed, mut failed) = (0, 0);
    for ok in outcomes {
        if ok {
            passed += 1;
        } else {
            failed += 1;
        }
    }
    CheckResult {
        name: name.into(),
        passed,
        failed,
    }
}

fn oracle_agrees(engine: &ColoringEngine, g: &Graph) -> bool {
    brute_force_profile(g).is_ok_and(|oracle| engine.profile(g) == oracle)
}

/// Family instances with total order at most 10 used for closed-form checks.
pub fn small_family_specs() -> Vec<FamilySpec> {
    let mut specs = Vec::new();
    for p in 0..=2 {
        for n in 1..=9 {
            specs.push(FamilySpec::path(n, p));
            specs.push(FamilySpec::new(FamilyKind::Star, n).with_isolated(p));
            for r in 1..=n.min(4) {
                let mut cat = FamilySpec::new(FamilyKind::CaterpillarTree, n).with_isolated(p);
                cat.r = r;
                specs.push(cat);
            }
            if n >= 3 {
                specs.push(FamilySpec::cycle(n, p));
                for r in 0..=4 {
                    specs.push(FamilySpec::hnr(n, r, p));
                }
            }
        }
    }
    specs.retain(|s| s.order() <= 10);
    specs
}

pub fn run(seed: u64) -> Result<SelftestReport> {
    let engine = ColoringEngine::new();
    let mut checks = Vec::new();

    checks.push(tally(
        "oracle/all-graphs-order-0-5",
        (0..=5)
            .flat_map(all_labeled_graphs)
            .map(|g| oracle_agrees(&engine, &g)),
    ));
    checks.push(tally(
        "oracle/random-order-6-9",
        seeded_random_graphs(seed, RANDOM_GRAPHS)
            .iter()
            .map(|g| oracle_agrees(&engine, g)),
    ));

    let mut closed = Vec::new();
    for spec in small_family_specs() {
        let formula = family_aggregates(&spec)?;
        let p = engine.profile(&spec.build()?);
        closed.push(formula.b == p.bell() && formula.t == p.total());
    }
    checks.push(tally("closed-forms/order-le-10", closed));

    for id in InequalityId::ALL {
        if id == InequalityId::Prop7Mix {
            continue;
        }
        let reports = scan(id, SCAN_N_MAX, SCAN_P_MAX)?;
        let bad = failures(&reports);
        checks.push(CheckResult {
            name: format!("scan/{id}"),
            passed: reports.len() - bad,
            failed: bad,
        });
    }

    checks.push(tally(
        "scan/PROP7_MIX",
        [prop7_sample_check(PROP7_TRIALS, seed)?],
    ));

    let mut ext = Vec::new();
    for (id, n, p) in extension_cases() {
        ext.push(check_extension(id, n, p)?.holds_strict);
    }
    checks.push(tally("extensions", ext));

    let passed = checks.iter().map(|c| c.passed).sum();
    let failed = checks.iter().map(|c| c.failed).sum();
    Ok(SelftestReport {
        seed,
        checks,
        passed,
        failed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_graph_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| all_labeled_graphs(n).count()).collect();
        assert_eq!(counts, vec![1, 1, 2, 8, 64, 1024]);
    }

    #[test]
    fn random_graphs_are_seeded() {
        let a = seeded_random_graphs(7, 20);
        assert_eq!(a, seeded_random_graphs(7, 20));
        assert!(a.iter().all(|g| (6..=9).contains(&g.order())));
        assert_ne!(a, seeded_random_graphs(8, 20));
    }

    #[test]
    fn family_specs_are_small_and_valid() {
        let specs = small_family_specs();
        assert!(specs
            .iter()
            .all(|s| s.order() <= 10 && s.validate().is_ok()));
        assert!(specs.iter().any(|s| s.kind == FamilyKind::HnR && s.r == 4));
    }
}
