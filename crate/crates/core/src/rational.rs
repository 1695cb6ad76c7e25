use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact quotient of big integers, always reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactRational {
    num: BigInt,
    den: BigInt,
}

impl ExactRational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<ExactRational> {
        let (mut num, mut den) = (num.into(), den.into());
        if den.is_zero() {
            return Err(Error::Domain("rational with zero denominator".into()));
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if !g.is_one() {
            num /= &g;
            den /= &g;
        }
        Ok(ExactRational { num, den })
    }

    /// `num / den` for the nonnegative aggregates used throughout the crate.
    pub fn from_biguints(num: &BigUint, den: &BigUint) -> Result<ExactRational> {
        ExactRational::new(
            BigInt::from_biguint(Sign::Plus, num.clone()),
            BigInt::from_biguint(Sign::Plus, den.clone()),
        )
    }

    pub fn from_integer(v: impl Into<BigInt>) -> ExactRational {
        ExactRational {
            num: v.into(),
            den: BigInt::one(),
        }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }
}

impl Ord for ExactRational {
    fn cmp(&self, other: &Self) -> Ordering {
        // denominators are positive, so the cross products preserve order
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for ExactRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &ExactRational {
    type Output = ExactRational;

    fn add(self, rhs: &ExactRational) -> ExactRational {
        ExactRational::new(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
        .expect("product of positive denominators")
    }
}

impl Sub for &ExactRational {
    type Output = ExactRational;

    fn sub(self, rhs: &ExactRational) -> ExactRational {
        ExactRational::new(
            &self.num * &rhs.den - &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
        .expect("product of positive denominators")
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}
