//! Exact verification of inequalities between Bell numbers.
//!
//! Each [`InequalityId`] names one statement `lhs < rhs` between big integers.
//! Statements about average colour counts `A(G) < A(H)` are checked in
//! cross-multiplied form `T(G) B(H) < T(H) B(G)` using the closed-form family
//! aggregates. The corollary and `I*` statements are evaluated straight from
//! their Bell-number expressions, so each theorem/corollary pair is computed
//! along two separate routes.
//!
//! Validity ranges live in [`VALIDITY`]; [`explore`] evaluates points below a
//! range without treating failures as violations.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::closed_forms::{
    cycle_pk1_aggregates, h3_tail_aggregates, tree_pk1_aggregates, FamilyAggregates,
};
use crate::engine::ColoringEngine;
use crate::error::{Error, Result};
use crate::graph::random_graph;
use crate::sequences::{binomial, BigSeqCache};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InequalityId {
    TPathShift,
    C9,
    TH3VsPath,
    C11,
    TCycleVsH3,
    C14,
    TCycleVsPath,
    C17,
    TCycleDrop2,
    I1,
    I2,
    I3,
    I4,
    I5,
    I6,
    Prop7Mix,
}

impl InequalityId {
    pub const ALL: [InequalityId; 16] = [
        InequalityId::TPathShift,
        InequalityId::C9,
        InequalityId::TH3VsPath,
        InequalityId::C11,
        InequalityId::TCycleVsH3,
        InequalityId::C14,
        InequalityId::TCycleVsPath,
        InequalityId::C17,
        InequalityId::TCycleDrop2,
        InequalityId::I1,
        InequalityId::I2,
        InequalityId::I3,
        InequalityId::I4,
        InequalityId::I5,
        InequalityId::I6,
        InequalityId::Prop7Mix,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InequalityId::TPathShift => "T_PATH_SHIFT",
            InequalityId::C9 => "C9",
            InequalityId::TH3VsPath => "T_H3_VS_PATH",
            InequalityId::C11 => "C11",
            InequalityId::TCycleVsH3 => "T_CYCLE_VS_H3",
            InequalityId::C14 => "C14",
            InequalityId::TCycleVsPath => "T_CYCLE_VS_PATH",
            InequalityId::C17 => "C17",
            InequalityId::TCycleDrop2 => "T_CYCLE_DROP2",
            InequalityId::I1 => "I1",
            InequalityId::I2 => "I2",
            InequalityId::I3 => "I3",
            InequalityId::I4 => "I4",
            InequalityId::I5 => "I5",
            InequalityId::I6 => "I6",
            InequalityId::Prop7Mix => "PROP7_MIX",
        }
    }

    pub fn validity(self) -> &'static ValidityRange {
        VALIDITY
            .iter()
            .find(|v| v.id == self)
            .expect("every id has a validity entry")
    }

    /// The `A`-comparison a corollary restates, if this id is a corollary.
    pub fn theorem(self) -> Option<InequalityId> {
        match self {
            InequalityId::C9 => Some(InequalityId::TPathShift),
            InequalityId::C11 => Some(InequalityId::TH3VsPath),
            InequalityId::C14 => Some(InequalityId::TCycleVsH3),
            InequalityId::C17 => Some(InequalityId::TCycleVsPath),
            _ => None,
        }
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InequalityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<InequalityId> {
        let wanted = s.trim().to_ascii_uppercase();
        InequalityId::ALL
            .into_iter()
            .find(|id| id.as_str() == wanted)
            .ok_or_else(|| Error::Usage(format!("unknown inequality id {s:?}")))
    }
}

/// Documented validity range of one statement.
#[derive(Debug)]
pub struct ValidityRange {
    pub id: InequalityId,
    pub n_min: usize,
    /// Whether the statement is parameterised by `p`; if not, only `p = 0` is scanned.
    pub uses_p: bool,
    /// Points outside `n >= n_min` at which the statement is claimed to still hold.
    pub extensions: &'static [(usize, usize)],
    pub statement: &'static str,
}

pub const VALIDITY: [ValidityRange; 16] = [
    ValidityRange {
        id: InequalityId::TPathShift,
        n_min: 1,
        uses_p: true,
        extensions: &[],
        statement: "A(P_n + (p+1)K1) < A(P_{n+1} + pK1), n >= 1, p >= 0",
    },
    ValidityRange {
        id: InequalityId::C9,
        n_min: 1,
        uses_p: true,
        extensions: &[],
        statement: "S(n,p+1) S(n,p) < S(n-1,p+1) S(n+1,p) with S(m,q) = sum_i C(q,i) B(m+i), n >= 1, p >= 0",
    },
    ValidityRange {
        id: InequalityId::TH3VsPath,
        n_min: 4,
        uses_p: true,
        extensions: &[],
        statement: "A(H(3,n-3) + pK1) < A(P_{n+1} + pK1), n >= 4, p >= 0",
    },
    ValidityRange {
        id: InequalityId::C11,
        n_min: 4,
        uses_p: true,
        extensions: &[],
        statement: "S(n,p) D(n,p) < S(n+1,p) D(n-1,p) with D(m,q) = sum_i C(q,i) (B(m+i) - B(m+i-1)), n >= 4, p >= 0",
    },
    ValidityRange {
        id: InequalityId::TCycleVsH3,
        n_min: 3,
        uses_p: true,
        extensions: &[],
        statement: "A(C_n + pK1) < A(H(3,n-3) + pK1), n >= 3, p >= 0",
    },
    ValidityRange {
        id: InequalityId::C14,
        n_min: 3,
        uses_p: true,
        extensions: &[(2, 0)],
        statement: "Alt(n,p,1) D(n-1,p) < Alt(n,p,0) D(n,p) with Alt(n,q,s) = sum_j (-1)^(j+1) S(n-j+s,q), n >= 3, p >= 0; also n = 2, p = 0",
    },
    ValidityRange {
        id: InequalityId::TCycleVsPath,
        n_min: 5,
        uses_p: true,
        extensions: &[],
        statement: "A(P_n + pK1) < A(C_n + pK1), n >= 5, p >= 0",
    },
    ValidityRange {
        id: InequalityId::C17,
        n_min: 5,
        uses_p: true,
        extensions: &[],
        statement: "S(n,p) Alt(n,p,0) < S(n-1,p) Alt(n,p,1), n >= 5, p >= 0",
    },
    ValidityRange {
        id: InequalityId::TCycleDrop2,
        n_min: 5,
        uses_p: true,
        extensions: &[],
        statement: "A(C_{n-2} + (p+2)K1) < A(C_n + pK1), n >= 5, p >= 0",
    },
    ValidityRange {
        id: InequalityId::I1,
        n_min: 1,
        uses_p: false,
        extensions: &[],
        statement: "B(n)^2 < B(n-1) B(n+1), n >= 1",
    },
    ValidityRange {
        id: InequalityId::I2,
        n_min: 1,
        uses_p: false,
        extensions: &[],
        statement: "B(n) (B(n) + B(n+1)) < B(n-1) (B(n+1) + B(n+2)), n >= 1",
    },
    ValidityRange {
        id: InequalityId::I3,
        n_min: 4,
        uses_p: false,
        extensions: &[],
        statement: "B(n) (B(n) - B(n-1)) < B(n+1) (B(n-1) - B(n-2)), n >= 4",
    },
    ValidityRange {
        id: InequalityId::I4,
        n_min: 2,
        uses_p: false,
        extensions: &[],
        statement: "(B(n-1) - B(n-2)) Alt(n,1) < (B(n) - B(n-1)) Alt(n,0) with Alt(n,s) = sum_{j=1}^{n-1} (-1)^(j+1) B(n-j+s), n >= 2",
    },
    ValidityRange {
        id: InequalityId::I5,
        n_min: 5,
        uses_p: false,
        extensions: &[],
        statement: "B(n) Alt(n,0) < B(n-1) Alt(n,1), n >= 5",
    },
    ValidityRange {
        id: InequalityId::I6,
        n_min: 4,
        uses_p: false,
        extensions: &[],
        statement: "(B(n) + B(n-1) + 7(-1)^n) Alt(n,0) < (B(n-1) + B(n-2) + 3(-1)^n) Alt(n,1), n >= 4",
    },
    ValidityRange {
        id: InequalityId::Prop7Mix,
        n_min: 1,
        uses_p: true,
        extensions: &[],
        statement: "mediant conclusion A(G) < A(H) on a sampled instance; n = trial index >= 1, p = seed",
    },
];

/// One evaluated grid point. The claim is `lhs < rhs`; `margin = rhs - lhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityReport {
    pub id: InequalityId,
    pub n: usize,
    pub p: usize,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub margin: BigInt,
    pub holds_strict: bool,
}

impl InequalityReport {
    fn new(id: InequalityId, n: usize, p: usize, lhs: BigInt, rhs: BigInt) -> InequalityReport {
        let margin = &rhs - &lhs;
        let holds_strict = margin.is_positive();
        InequalityReport {
            id,
            n,
            p,
            lhs,
            rhs,
            margin,
            holds_strict,
        }
    }

    pub const CSV_HEADER: &'static str = "id,n,p,lhs,rhs,margin,holds_strict";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.id, self.n, self.p, self.lhs, self.rhs, self.margin, self.holds_strict
        )
    }
}

impl Serialize for InequalityReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("InequalityReport", 7)?;
        s.serialize_field("id", self.id.as_str())?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("p", &self.p)?;
        s.serialize_field("lhs", &self.lhs.to_string())?;
        s.serialize_field("rhs", &self.rhs.to_string())?;
        s.serialize_field("margin", &self.margin.to_string())?;
        s.serialize_field("holds_strict", &self.holds_strict)?;
        s.end()
    }
}

fn bell(i: i64) -> Result<BigInt> {
    if i < 0 {
        return Err(Error::Domain(format!("negative Bell index {i}")));
    }
    Ok(BigInt::from(BigSeqCache::global().bell(i as usize)))
}

/// `sum_{i=0}^{q} C(q, i) B(m + i)`.
fn weighted(m: i64, q: usize) -> Result<BigInt> {
    let mut acc = BigInt::zero();
    for i in 0..=q {
        acc += BigInt::from(binomial(q, i)) * bell(m + i as i64)?;
    }
    Ok(acc)
}

/// `sum_{i=0}^{q} C(q, i) (B(m + i) - B(m + i - 1))`.
fn weighted_step(m: i64, q: usize) -> Result<BigInt> {
    Ok(weighted(m, q)? - weighted(m - 1, q)?)
}

/// `sum_{j=1}^{n-1} (-1)^(j+1) sum_{i=0}^{q} C(q, i) B(n + i - j + s)`.
fn alternating(n: usize, q: usize, s: i64) -> Result<BigInt> {
    let mut acc = BigInt::zero();
    for j in 1..n as i64 {
        let term = weighted(n as i64 - j + s, q)?;
        if j % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// `(T(small) B(big), T(big) B(small))`: the cross-multiplied form of `A(small) < A(big)`.
fn avg_less(small: &FamilyAggregates, big: &FamilyAggregates) -> (BigInt, BigInt) {
    (
        BigInt::from(&small.t * &big.b),
        BigInt::from(&big.t * &small.b),
    )
}

fn sign(n: usize) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Evaluates both sides without consulting the validity range.
pub fn evaluate(id: InequalityId, n: usize, p: usize) -> Result<(BigInt, BigInt)> {
    use InequalityId::*;
    let ni = n as i64;
    let sub = |k: usize| {
        n.checked_sub(k)
            .ok_or_else(|| Error::Domain(format!("{id} undefined at n = {n}")))
    };
    let pair = match id {
        TPathShift => avg_less(
            &tree_pk1_aggregates(n, p + 1)?,
            &tree_pk1_aggregates(n + 1, p)?,
        ),
        TH3VsPath => avg_less(
            &h3_tail_aggregates(sub(3)?, p)?,
            &tree_pk1_aggregates(n + 1, p)?,
        ),
        TCycleVsH3 => avg_less(
            &cycle_pk1_aggregates(n, p)?,
            &h3_tail_aggregates(sub(3)?, p)?,
        ),
        TCycleVsPath => avg_less(&tree_pk1_aggregates(n, p)?, &cycle_pk1_aggregates(n, p)?),
        TCycleDrop2 => avg_less(
            &cycle_pk1_aggregates(sub(2)?, p + 2)?,
            &cycle_pk1_aggregates(n, p)?,
        ),
        C9 => (
            weighted(ni, p + 1)? * weighted(ni, p)?,
            weighted(ni - 1, p + 1)? * weighted(ni + 1, p)?,
        ),
        C11 => (
            weighted(ni, p)? * weighted_step(ni, p)?,
            weighted(ni + 1, p)? * weighted_step(ni - 1, p)?,
        ),
        C14 => (
            alternating(n, p, 1)? * weighted_step(ni - 1, p)?,
            alternating(n, p, 0)? * weighted_step(ni, p)?,
        ),
        C17 => (
            weighted(ni, p)? * alternating(n, p, 0)?,
            weighted(ni - 1, p)? * alternating(n, p, 1)?,
        ),
        I1 => (bell(ni)? * bell(ni)?, bell(ni - 1)? * bell(ni + 1)?),
        I2 => (
            bell(ni)? * (bell(ni)? + bell(ni + 1)?),
            bell(ni - 1)? * (bell(ni + 1)? + bell(ni + 2)?),
        ),
        I3 => (
            bell(ni)? * (bell(ni)? - bell(ni - 1)?),
            bell(ni + 1)? * (bell(ni - 1)? - bell(ni - 2)?),
        ),
        I4 => (
            (bell(ni - 1)? - bell(ni - 2)?) * alternating(n, 0, 1)?,
            (bell(ni)? - bell(ni - 1)?) * alternating(n, 0, 0)?,
        ),
        I5 => (
            bell(ni)? * alternating(n, 0, 0)?,
            bell(ni - 1)? * alternating(n, 0, 1)?,
        ),
        I6 => (
            (bell(ni)? + bell(ni - 1)? + 7 * sign(n)) * alternating(n, 0, 0)?,
            (bell(ni - 1)? + bell(ni - 2)? + 3 * sign(n)) * alternating(n, 0, 1)?,
        ),
        Prop7Mix => prop7_trial(n, p as u64)?,
    };
    Ok(pair)
}

fn effective_p(id: InequalityId, p: usize) -> usize {
    if id.validity().uses_p {
        p
    } else {
        0
    }
}

/// Evaluates one in-range point. Statements that do not take `p` ignore it.
pub fn check(id: InequalityId, n: usize, p: usize) -> Result<InequalityReport> {
    let range = id.validity();
    if n < range.n_min {
        return Err(Error::Domain(format!(
            "{id} is stated for n >= {}, got n = {n} ({})",
            range.n_min, range.statement
        )));
    }
    let p = effective_p(id, p);
    let (lhs, rhs) = evaluate(id, n, p)?;
    Ok(InequalityReport::new(id, n, p, lhs, rhs))
}

/// Evaluates one of the listed boundary points outside the proven range.
pub fn check_extension(id: InequalityId, n: usize, p: usize) -> Result<InequalityReport> {
    if !id.validity().extensions.contains(&(n, p)) {
        return Err(Error::Usage(format!(
            "({n}, {p}) is not a listed extension of {id}"
        )));
    }
    let (lhs, rhs) = evaluate(id, n, p)?;
    Ok(InequalityReport::new(id, n, p, lhs, rhs))
}

/// Every `(id, n, p)` listed as a boundary extension.
pub fn extension_cases() -> Vec<(InequalityId, usize, usize)> {
    VALIDITY
        .iter()
        .flat_map(|v| v.extensions.iter().map(move |&(n, p)| (v.id, n, p)))
        .collect()
}

fn grid(
    id: InequalityId,
    ns: std::ops::RangeInclusive<usize>,
    p_max: usize,
) -> Vec<(usize, usize)> {
    let p_top = if id.validity().uses_p { p_max } else { 0 };
    ns.flat_map(|n| (0..=p_top).map(move |p| (n, p))).collect()
}

fn sorted(mut reports: Vec<InequalityReport>) -> Vec<InequalityReport> {
    reports.sort_by_key(|r| (r.n, r.p));
    reports
}

/// All in-range reports with `n <= n_max` and `p <= p_max`, sorted by `(n, p)`.
pub fn scan(id: InequalityId, n_max: usize, p_max: usize) -> Result<Vec<InequalityReport>> {
    if id != InequalityId::Prop7Mix {
        BigSeqCache::global().check_capacity(n_max + p_max + 4)?;
    }
    let points = grid(id, id.validity().n_min..=n_max, p_max);
    let reports = points
        .into_par_iter()
        .map(|(n, p)| check(id, n, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(sorted(reports))
}

/// Reports for the points below the validity range that can be evaluated at
/// all. Failures here are informational.
pub fn explore(id: InequalityId, n_max: usize, p_max: usize) -> Result<Vec<InequalityReport>> {
    if id == InequalityId::Prop7Mix {
        return Ok(Vec::new());
    }
    BigSeqCache::global().check_capacity(n_max + p_max + 4)?;
    let top = id.validity().n_min.min(n_max + 1);
    let reports = grid(id, 0..=top.saturating_sub(1), p_max)
        .into_iter()
        .filter(|&(n, _)| n < top)
        .filter_map(|(n, p)| {
            evaluate(id, n, p)
                .ok()
                .map(|(lhs, rhs)| InequalityReport::new(id, n, p, lhs, rhs))
        })
        .collect();
    Ok(sorted(reports))
}

/// Number of reports whose strict inequality fails.
pub fn failures(reports: &[InequalityReport]) -> usize {
    reports.iter().filter(|r| !r.holds_strict).count()
}

/// A weighted sum `(B, T) = (B(H), T(H)) + sum_i alpha_i (B(F_i), T(F_i))`
/// and the cross-multiplied claim `A(G) < A(H)`: returns `(T(G) B(H), T(H) B(G))`.
pub fn mediant_sides(
    h: (&BigUint, &BigUint),
    parts: &[(u32, BigUint, BigUint)],
) -> (BigInt, BigInt) {
    let (hb, ht) = h;
    let mut gb = hb.clone();
    let mut gt = ht.clone();
    for (alpha, fb, ft) in parts {
        gb += fb * *alpha;
        gt += ft * *alpha;
    }
    (BigInt::from(gt * hb), BigInt::from(ht * gb))
}

/// Attempts at drawing each `F_i` before the whole instance is redrawn.
const PROP7_ATTEMPTS: usize = 64;

/// Draws one instance satisfying the mixing hypothesis and returns the
/// cross-multiplied conclusion. Graphs are Erdős–Rényi with edge
/// probability 1/2 on 4 to 7 vertices; `alpha_i` are integers in 1..=5.
fn prop7_trial(trial: usize, seed: u64) -> Result<(BigInt, BigInt)> {
    if trial == 0 {
        return Err(Error::Domain("trial index starts at 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    let engine = ColoringEngine::new();
    'instance: loop {
        let h = random_graph(rng.gen_range(4..=7), 0.5, &mut rng);
        let hp = engine.profile(&h);
        let (hb, ht) = (hp.bell(), hp.total());
        let r = rng.gen_range(1..=3);
        let mut parts = Vec::with_capacity(r);
        for _ in 0..r {
            let mut found = None;
            for _ in 0..PROP7_ATTEMPTS {
                let f = random_graph(rng.gen_range(4..=7), 0.5, &mut rng);
                let fp = engine.profile(&f);
                let (fb, ft) = (fp.bell(), fp.total());
                // A(F) < A(H)
                if &ft * &hb < &ht * &fb {
                    found = Some((fb, ft));
                    break;
                }
            }
            let Some((fb, ft)) = found else {
                continue 'instance;
            };
            parts.push((rng.gen_range(1..=5u32), fb, ft));
        }
        return Ok(mediant_sides((&hb, &ht), &parts));
    }
}

/// Runs `trials` sampled instances of the mixing lemma; true iff all hold.
pub fn prop7_sample_check(trials: usize, seed: u64) -> Result<bool> {
    if trials == 0 {
        return Err(Error::Usage("need at least one trial".into()));
    }
    let all = (1..=trials)
        .into_par_iter()
        .map(|t| check(InequalityId::Prop7Mix, t, seed as usize).map(|r| r.holds_strict))
        .collect::<Result<Vec<bool>>>()?;
    Ok(all.into_iter().all(|ok| ok))
}
