//! `B`, `T` and `A` for the named families, computed from Bell numbers alone.
//!
//! Nothing here calls the coloring engine, so every formula can be tested
//! against engine output on a concrete member of its family.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{FamilyKind, FamilySpec};
use crate::rational::ExactRational;
use crate::sequences::{binomial, BigSeqCache};

/// Aggregates of one family member: `b = B(G)`, `t = T(G)`, `a = t / b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyAggregates {
    pub family: FamilySpec,
    pub b: BigUint,
    pub t: BigUint,
    pub a: ExactRational,
}

impl FamilyAggregates {
    pub fn new(family: FamilySpec, b: BigUint, t: BigUint) -> Result<FamilyAggregates> {
        if b.is_zero() {
            return Err(Error::Domain(format!("{family} has no colorings")));
        }
        let a = ExactRational::from_biguints(&t, &b)?;
        Ok(FamilyAggregates { family, b, t, a })
    }
}

fn seq() -> &'static BigSeqCache {
    BigSeqCache::global()
}

fn to_unsigned(v: BigInt, what: &str) -> Result<BigUint> {
    if v.is_negative() {
        return Err(Error::Domain(format!("{what} evaluated negative")));
    }
    Ok(v.magnitude().clone())
}

/// `sum_{i=0}^{p} C(p, i) B(base + i)`.
fn binomial_bell_sum(base: usize, p: usize) -> BigUint {
    (0..=p).map(|i| binomial(p, i) * seq().bell(base + i)).sum()
}

/// `sum_{j=1}^{n-1} (-1)^{j+1} sum_{i=0}^{p} C(p, i) B(n + i - j + shift)`.
fn alternating_binomial_bell_sum(n: usize, p: usize, shift: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for j in 1..n {
        let term = BigInt::from(binomial_bell_sum(n - j + shift, p));
        if j % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Any tree of order `n`: `B = B(n-1)`, `T = B(n)`.
pub fn tree_aggregates(n: usize) -> Result<FamilyAggregates> {
    tree_pk1_aggregates(n, 0)
}

/// A tree of order `n` plus `p` isolated vertices.
pub fn tree_pk1_aggregates(n: usize, p: usize) -> Result<FamilyAggregates> {
    if n == 0 {
        return Err(Error::Domain("a tree needs n >= 1".into()));
    }
    FamilyAggregates::new(
        FamilySpec::path(n, p),
        binomial_bell_sum(n - 1, p),
        binomial_bell_sum(n, p),
    )
}

pub fn cycle_aggregates(n: usize) -> Result<FamilyAggregates> {
    if n < 3 {
        return Err(Error::Domain(format!("a cycle needs n >= 3, got {n}")));
    }
    let b = seq().alternating_bell_sum(n, 0)?;
    let t = seq().alternating_bell_sum(n, 1)?;
    FamilyAggregates::new(
        FamilySpec::cycle(n, 0),
        to_unsigned(b, "B(C_n)")?,
        to_unsigned(t, "T(C_n)")?,
    )
}

/// `C_n` plus `p` isolated vertices.
pub fn cycle_pk1_aggregates(n: usize, p: usize) -> Result<FamilyAggregates> {
    if n < 3 {
        return Err(Error::Domain(format!("a cycle needs n >= 3, got {n}")));
    }
    FamilyAggregates::new(
        FamilySpec::cycle(n, p),
        to_unsigned(alternating_binomial_bell_sum(n, p, 0), "B(C_n + pK1)")?,
        to_unsigned(alternating_binomial_bell_sum(n, p, 1), "T(C_n + pK1)")?,
    )
}

/// `H(3, m)` plus `p` isolated vertices, as the difference of the path
/// families on `m + 3` and `m + 2` vertices (delete one triangle edge).
pub fn h3_tail_aggregates(m: usize, p: usize) -> Result<FamilyAggregates> {
    let long = tree_pk1_aggregates(m + 3, p)?;
    let short = tree_pk1_aggregates(m + 2, p)?;
    FamilyAggregates::new(FamilySpec::hnr(3, m, p), long.b - short.b, long.t - short.t)
}

/// `H(n, r)` plus `p` isolated vertices. Unrolling
/// `X(H(n, r)) = X(H(3, n - 3 + r)) + X(H(n - 2, r))` down to `n = 3` or `n = 4`
/// leaves a plain sum of `H(3, .)` terms, plus a path term for even `n`.
pub fn hnr_pk1_aggregates(n: usize, r: usize, p: usize) -> Result<FamilyAggregates> {
    if n < 3 {
        return Err(Error::Domain(format!("H(n, r) needs n >= 3, got {n}")));
    }
    let (mut b, mut t) = (BigUint::zero(), BigUint::zero());
    let (last, offset) = if n % 2 == 1 {
        ((n - 3) / 2, 0)
    } else {
        ((n - 4) / 2, 1)
    };
    for i in 0..=last {
        let h = h3_tail_aggregates(2 * i + r + offset, p)?;
        b += h.b;
        t += h.t;
    }
    if n.is_multiple_of(2) {
        let path = tree_pk1_aggregates(2 + r, p)?;
        b += path.b;
        t += path.t;
    }
    FamilyAggregates::new(FamilySpec::hnr(n, r, p), b, t)
}

/// Whether `X(C_n + (p+2)K1) = X(H(n,2) + pK1) + 2 X(H(n,1) + pK1) + X(H(n,0) + pK1)`
/// holds for both `X = B` and `X = T`.
pub fn lemma15_identity_check(n: usize, p: usize) -> Result<bool> {
    let lhs = cycle_pk1_aggregates(n, p + 2)?;
    let h2 = hnr_pk1_aggregates(n, 2, p)?;
    let h1 = hnr_pk1_aggregates(n, 1, p)?;
    let h0 = hnr_pk1_aggregates(n, 0, p)?;
    let two = BigUint::from(2u32);
    let b = &h2.b + &two * &h1.b + &h0.b;
    let t = &h2.t + &two * &h1.t + &h0.t;
    Ok(lhs.b == b && lhs.t == t)
}

/// Closed-form aggregates for any family that has one.
pub fn family_aggregates(spec: &FamilySpec) -> Result<FamilyAggregates> {
    spec.validate()?;
    let agg = match spec.kind {
        FamilyKind::Path | FamilyKind::Star | FamilyKind::CaterpillarTree => {
            tree_pk1_aggregates(spec.n, spec.p)?
        }
        FamilyKind::Cycle => cycle_pk1_aggregates(spec.n, spec.p)?,
        FamilyKind::HnR => hnr_pk1_aggregates(spec.n, spec.r, spec.p)?,
        FamilyKind::Empty => {
            let n = spec.n + spec.p;
            if n == 0 {
                return Err(Error::Domain(
                    "average colour count of the null graph".into(),
                ));
            }
            FamilyAggregates::new(*spec, seq().bell(n), seq().two_bell(n - 1))?
        }
        FamilyKind::Complete if spec.p == 0 => {
            if spec.n == 0 {
                return Err(Error::Domain(
                    "average colour count of the null graph".into(),
                ));
            }
            FamilyAggregates::new(*spec, BigUint::one(), BigUint::from(spec.n))?
        }
        FamilyKind::Complete => {
            return Err(Error::Parameter(format!("no closed form for {spec}")));
        }
    };
    Ok(FamilyAggregates {
        family: *spec,
        ..agg
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bt(a: &FamilyAggregates) -> (u64, u64) {
        (u64::try_from(&a.b).unwrap(), u64::try_from(&a.t).unwrap())
    }

    #[test]
    fn trees() {
        assert_eq!(bt(&tree_aggregates(4).unwrap()), (5, 15));
        let k1 = tree_aggregates(1).unwrap();
        assert_eq!(bt(&k1), (1, 1));
        assert_eq!(k1.a, ExactRational::from_integer(1));
        assert!(matches!(tree_aggregates(0), Err(Error::Domain(_))));
    }

    #[test]
    fn trees_with_isolated_vertices() {
        assert_eq!(tree_pk1_aggregates(1, 1).unwrap().b, BigUint::from(2u32));
        assert_eq!(bt(&tree_pk1_aggregates(3, 2).unwrap()).0, 27);
        assert_eq!(bt(&tree_pk1_aggregates(2, 0).unwrap()), (1, 2));
    }

    #[test]
    fn cycles() {
        let c5 = cycle_aggregates(5).unwrap();
        assert_eq!(bt(&c5), (11, 40));
        assert_eq!(c5.a, ExactRational::new(40, 11).unwrap());
        assert_eq!(bt(&cycle_aggregates(3).unwrap()), (1, 3));
        assert_eq!(bt(&cycle_aggregates(4).unwrap()), (4, 12));
        assert!(matches!(cycle_aggregates(2), Err(Error::Domain(_))));
        assert_eq!(
            cycle_pk1_aggregates(5, 0).unwrap(),
            cycle_aggregates(5).unwrap()
        );
        // (B2 + B3) - (B1 + B2): the isolated vertex joins one of three blocks or stays alone
        assert_eq!(bt(&cycle_pk1_aggregates(3, 1).unwrap()).0, 4);
    }

    #[test]
    fn cycle_telescoping() {
        for n in 4..30 {
            let c = cycle_aggregates(n).unwrap();
            let prev = cycle_aggregates(n - 1).unwrap();
            let path = tree_aggregates(n).unwrap();
            assert_eq!(c.b, &path.b - &prev.b, "n = {n}");
            assert_eq!(c.t, &path.t - &prev.t, "n = {n}");
        }
    }

    #[test]
    fn h3_tails() {
        assert_eq!(bt(&h3_tail_aggregates(0, 0).unwrap()).0, 1);
        assert_eq!(bt(&h3_tail_aggregates(1, 0).unwrap()).0, 3);
        for m in 0..6 {
            for p in 0..3 {
                assert_eq!(
                    hnr_pk1_aggregates(3, m, p).unwrap().b,
                    h3_tail_aggregates(m, p).unwrap().b
                );
            }
        }
    }

    #[test]
    fn hnr_matches_cycle_at_r0() {
        assert_eq!(bt(&hnr_pk1_aggregates(4, 0, 0).unwrap()).0, 4);
        for n in 3..15 {
            for p in 0..4 {
                let h = hnr_pk1_aggregates(n, 0, p).unwrap();
                let c = cycle_pk1_aggregates(n, p).unwrap();
                assert_eq!((&h.b, &h.t), (&c.b, &c.t), "n = {n}, p = {p}");
            }
        }
    }

    #[test]
    fn hnr_recursion() {
        for n in 5..14 {
            for r in 0..4 {
                for p in 0..3 {
                    let whole = hnr_pk1_aggregates(n, r, p).unwrap();
                    let tail = h3_tail_aggregates(n - 3 + r, p).unwrap();
                    let shorter = hnr_pk1_aggregates(n - 2, r, p).unwrap();
                    assert_eq!(whole.b, &tail.b + &shorter.b);
                    assert_eq!(whole.t, &tail.t + &shorter.t);
                }
            }
        }
    }

    #[test]
    fn h_graph_expansion_identity() {
        for (n, p) in [(3, 0), (5, 1), (6, 2), (12, 3)] {
            assert!(lemma15_identity_check(n, p).unwrap(), "n = {n}, p = {p}");
        }
        assert!(lemma15_identity_check(2, 0).is_err());
    }

    #[test]
    fn dispatcher() {
        let e = family_aggregates(&"empty:3".parse().unwrap()).unwrap();
        assert_eq!(e.a, ExactRational::from_integer(2));
        let k = family_aggregates(&"complete:4".parse().unwrap()).unwrap();
        assert_eq!(k.a, ExactRational::from_integer(4));
        assert!(family_aggregates(&"complete:4,1".parse().unwrap()).is_err());
        assert!(family_aggregates(&"empty:0".parse().unwrap()).is_err());
        let star = family_aggregates(&"star:6,1".parse().unwrap()).unwrap();
        assert_eq!(star.family.to_string(), "star:6,1");
        assert_eq!(star.b, tree_pk1_aggregates(6, 1).unwrap().b);
    }
}
