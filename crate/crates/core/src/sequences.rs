//! Exact tables of Stirling numbers of the second kind, Bell numbers and
//! 2-Bell numbers, shared behind an append-only cache.
//!
//! Bell numbers are row sums of the Stirling triangle and 2-Bell numbers are
//! `T(n) = sum_k k * S(n+1, k)`; the identity `T(n) = B(n+2) - B(n+1)` is
//! checked in tests rather than used here.

use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// Rows computed the first time the cache is touched.
pub const DEFAULT_TERMS: usize = 256;
/// Largest Stirling row the shared cache will grow to.
pub const DEFAULT_CAPACITY: usize = 1024;

#[derive(Default)]
struct Tables {
    stirling: Vec<Vec<BigUint>>,
    bell: Vec<BigUint>,
    /// `two_bell[m]` needs Stirling row `m + 1`.
    two_bell: Vec<BigUint>,
}

impl Tables {
    fn extend_to(&mut self, rows: usize) {
        while self.stirling.len() <= rows {
            let n = self.stirling.len();
            let row: Vec<BigUint> = if n == 0 {
                vec![BigUint::one()]
            } else {
                let prev = &self.stirling[n - 1];
                (0..=n)
                    .map(|k| {
                        let stay = if k < n {
                            prev[k].clone() * k
                        } else {
                            BigUint::zero()
                        };
                        let fresh = if k > 0 {
                            prev[k - 1].clone()
                        } else {
                            BigUint::zero()
                        };
                        stay + fresh
                    })
                    .collect()
            };
            self.bell.push(row.iter().sum());
            if n > 0 {
                let total: BigUint = row.iter().enumerate().map(|(k, s)| s * k).sum();
                self.two_bell.push(total);
            }
            self.stirling.push(row);
        }
    }
}

/// Append-only exact tables; readers share a lock, growth takes it exclusively.
pub struct BigSeqCache {
    tables: RwLock<Tables>,
    capacity: usize,
}

impl Default for BigSeqCache {
    fn default() -> Self {
        BigSeqCache::with_capacity(DEFAULT_CAPACITY)
    }
}

impl BigSeqCache {
    pub fn with_capacity(capacity: usize) -> BigSeqCache {
        BigSeqCache {
            tables: RwLock::new(Tables::default()),
            capacity,
        }
    }

    /// The process-wide cache used by the free functions in this module.
    pub fn global() -> &'static BigSeqCache {
        static GLOBAL: OnceLock<BigSeqCache> = OnceLock::new();
        GLOBAL.get_or_init(BigSeqCache::default)
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Number of Stirling rows currently materialised.
    pub fn rows_cached(&self) -> usize {
        self.tables
            .read()
            .expect("sequence cache poisoned")
            .stirling
            .len()
    }

    /// Refuses work that would need Stirling rows past the capacity.
    pub fn check_capacity(&self, max_row: usize) -> Result<()> {
        if max_row > self.capacity {
            return Err(Error::Resource(format!(
                "needs Bell/Stirling index {max_row}, cache capacity is {}",
                self.capacity
            )));
        }
        Ok(())
    }

    fn with_rows<T>(&self, rows: usize, read: impl Fn(&Tables) -> T) -> T {
        {
            let t = self.tables.read().expect("sequence cache poisoned");
            if t.stirling.len() > rows {
                return read(&t);
            }
        }
        let mut t = self.tables.write().expect("sequence cache poisoned");
        t.extend_to(rows.max(DEFAULT_TERMS.min(self.capacity)));
        read(&t)
    }

    /// Partitions of an `n`-set into exactly `k` nonempty blocks.
    pub fn stirling2(&self, n: usize, k: usize) -> BigUint {
        if k > n {
            return BigUint::zero();
        }
        self.with_rows(n, |t| t.stirling[n][k].clone())
    }

    pub fn stirling_row(&self, n: usize) -> Vec<BigUint> {
        self.with_rows(n, |t| t.stirling[n].clone())
    }

    pub fn bell(&self, n: usize) -> BigUint {
        self.with_rows(n, |t| t.bell[n].clone())
    }

    /// Total number of blocks over all partitions of an `(n+1)`-set.
    pub fn two_bell(&self, n: usize) -> BigUint {
        self.with_rows(n + 1, |t| t.two_bell[n].clone())
    }

    /// Average number of blocks in a partition of an `n`-set, `T(n-1) / B(n)`.
    pub fn avg_blocks(&self, n: usize) -> Result<ExactRational> {
        if n == 0 {
            return Err(Error::Domain("average block count needs n >= 1".into()));
        }
        ExactRational::from_biguints(&self.two_bell(n - 1), &self.bell(n))
    }

    /// `sum_{j=1}^{n-1} (-1)^{j+1} B(n - j + shift)`.
    pub fn alternating_bell_sum(&self, n: usize, shift: i64) -> Result<BigInt> {
        if n < 3 {
            return Err(Error::Domain(format!(
                "alternating Bell sum needs n >= 3, got {n}"
            )));
        }
        let lowest = 1 + shift;
        if lowest < 0 {
            return Err(Error::Domain(format!("negative Bell index {lowest}")));
        }
        let mut acc = BigInt::zero();
        for j in 1..n {
            let b = BigInt::from(self.bell(((n - j) as i64 + shift) as usize));
            if j % 2 == 1 {
                acc += b;
            } else {
                acc -= b;
            }
        }
        Ok(acc)
    }
}

pub fn stirling2(n: usize, k: usize) -> BigUint {
    BigSeqCache::global().stirling2(n, k)
}

pub fn bell(n: usize) -> BigUint {
    BigSeqCache::global().bell(n)
}

pub fn two_bell(n: usize) -> BigUint {
    BigSeqCache::global().two_bell(n)
}

pub fn avg_blocks(n: usize) -> Result<ExactRational> {
    BigSeqCache::global().avg_blocks(n)
}

pub fn alternating_bell_sum(n: usize, shift: i64) -> Result<BigInt> {
    BigSeqCache::global().alternating_bell_sum(n, shift)
}

/// Binomial coefficient `C(n, k)` as a big integer.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
