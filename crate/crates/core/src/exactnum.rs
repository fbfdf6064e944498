//! Exact integer and rational arithmetic for counting.
//!
//! Every count, bound and coefficient in the crate is an arbitrary-precision
//! value; nothing is ever rounded through floating point.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision nonnegative integer.
pub type Natural = BigUint;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("field order q must be at least 2, got {0}")]
    FieldOrderTooSmall(u64),
}

/// Binomial coefficient `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binom(n: u64, k: i64) -> Natural {
    if k < 0 || k as u64 > n {
        return Natural::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = Natural::one();
    // acc = C(n - k + i, i) after step i, always integral.
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// Sum `C(n, lo) + ... + C(n, hi)`; terms with a negative lower index are zero.
pub fn binom_sum(n: u64, lo: i64, hi: i64) -> Natural {
    (lo..=hi).map(|i| binom(n, i)).sum()
}

/// Exact `q^e`.
pub fn power(q: u64, e: u64) -> Natural {
    num_traits::pow(Natural::from(q), e as usize)
}

/// Gaussian binomial coefficient: the number of `k`-dimensional subspaces of
/// an `n`-dimensional space over a field of order `q`.
///
/// Evaluated as one exact fraction `prod (q^(n-i) - 1) / prod (q^(k-i) - 1)`
/// over `0 <= i < k`.
pub fn qbinom(n: u64, k: i64, q: u64) -> Result<Natural, NumError> {
    if q < 2 {
        return Err(NumError::FieldOrderTooSmall(q));
    }
    if k < 0 || k as u64 > n {
        return Ok(Natural::zero());
    }
    let k = k as u64;
    let one = Natural::one();
    let mut numer = Natural::one();
    let mut denom = Natural::one();
    for i in 0..k {
        numer *= power(q, n - i) - &one;
        denom *= power(q, k - i) - &one;
    }
    let (quot, rem) = numer.div_rem(&denom);
    assert!(rem.is_zero(), "q-binomial product must divide exactly");
    Ok(quot)
}

/// Sum of Gaussian binomials `[n, lo]_q + ... + [n, hi]_q`.
pub fn qbinom_sum(n: u64, lo: i64, hi: i64, q: u64) -> Result<Natural, NumError> {
    let mut acc = Natural::zero();
    for i in lo..=hi {
        acc += qbinom(n, i, q)?;
    }
    Ok(acc)
}

/// Rational `num / den`, reduced. Panics on a zero denominator.
pub fn ratio(num: &Natural, den: &Natural) -> Rational {
    Rational::new(num.clone().into(), den.clone().into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    #[test]
    fn binom_values() {
        assert_eq!(binom(4, 2), nat(6));
        assert_eq!(binom(5, -1), nat(0));
        assert_eq!(binom(36, 1), nat(36));
        assert_eq!(binom(3, 4), nat(0));
        assert_eq!(binom(0, 0), nat(1));
        assert_eq!(binom(64, 32), "1832624140942590534".parse::<Natural>().unwrap());
    }

    #[test]
    fn pascal_rule() {
        for n in 1..=40u64 {
            for k in 1..=n as i64 {
                assert_eq!(binom(n, k), binom(n - 1, k) + binom(n - 1, k - 1), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn qbinom_values() {
        assert_eq!(qbinom(4, 2, 2).unwrap(), nat(35));
        assert_eq!(qbinom(5, 2, 2).unwrap(), nat(155));
        assert_eq!(qbinom(7, 0, 3).unwrap(), nat(1));
        assert_eq!(qbinom(3, 4, 2).unwrap(), nat(0));
        assert_eq!(qbinom(3, -1, 2).unwrap(), nat(0));
        assert_eq!(qbinom(3, 1, 1), Err(NumError::FieldOrderTooSmall(1)));
    }

    #[test]
    fn qbinom_recurrence() {
        for &q in &[2u64, 3, 5] {
            for n in 1..=12u64 {
                for k in 1..=n as i64 {
                    let lhs = qbinom(n, k, q).unwrap();
                    let rhs = power(q, k as u64) * qbinom(n - 1, k, q).unwrap()
                        + qbinom(n - 1, k - 1, q).unwrap();
                    assert_eq!(lhs, rhs, "n={n} k={k} q={q}");
                }
            }
        }
    }

    #[test]
    fn qbinom_symmetry_and_unimodality() {
        for &q in &[2u64, 3, 4, 5] {
            for n in 0..=12u64 {
                for k in 0..=n as i64 {
                    let v = qbinom(n, k, q).unwrap();
                    assert_eq!(v, qbinom(n, n as i64 - k, q).unwrap());
                    assert!(v >= binom(n, k));
                }
                for k in 0..n / 2 {
                    assert!(qbinom(n, k as i64, q).unwrap() < qbinom(n, k as i64 + 1, q).unwrap());
                }
            }
        }
    }

    #[test]
    fn powers() {
        assert_eq!(power(2, 5), nat(32));
        assert_eq!(power(3, 0), nat(1));
        assert_eq!(power(2, 10), nat(1024));
    }

    #[test]
    fn ratio_reduces() {
        let r = ratio(&nat(35), &nat(35));
        assert!(r.is_one());
        let r = ratio(&nat(6), &nat(4));
        assert_eq!(*r.numer(), 3.into());
        assert_eq!(*r.denom(), 2.into());
    }
}
