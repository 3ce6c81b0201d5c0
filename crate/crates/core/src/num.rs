//! Integer scalar abstraction.
//!
//! All exact computations in this crate are generic over an integer type.
//! [`num_bigint::BigInt`] is the production choice (convergents grow
//! exponentially in the period length); the fixed-width types are useful for
//! small experiments and tests but will overflow on long words.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Roots;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer usable as the scalar of the quadratic-field layer.
pub trait Int:
    num_integer::Integer
    + Roots
    + Signed
    + Clone
    + Hash
    + Debug
    + Display
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// Converts a small literal. Panics only if `v` does not fit, which cannot
    /// happen for the types this trait is implemented for in practice.
    fn lit(v: i64) -> Self {
        Self::from_i64(v).expect("integer literal out of range for scalar type")
    }

    fn from_entry(v: u64) -> Self {
        Self::from_u64(v).expect("continued-fraction entry out of range for scalar type")
    }
}

impl<T> Int for T where
    T: num_integer::Integer
        + Roots
        + Signed
        + Clone
        + Hash
        + Debug
        + Display
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Greatest common divisor of the absolute values of a slice; zero for an all-zero slice.
pub fn gcd_all<I: Int>(values: &[I]) -> I {
    values
        .iter()
        .fold(I::zero(), |acc, v| num_integer::Integer::gcd(&acc, v))
}

/// Floor of `num / den` for `den > 0`.
pub(crate) fn floor_div<I: Int>(num: &I, den: &I) -> I {
    num_integer::Integer::div_floor(num, den)
}

/// Returns `Some(r)` with `r * r == n` when `n` is a non-negative perfect square.
pub fn exact_sqrt<I: Int>(n: &I) -> Option<I> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(r.clone() * r.clone()) == n {
        Some(r)
    } else {
        None
    }
}

// Trial division stops here; beyond it the leftover cofactor is only tested
// for being a perfect square.
const TRIAL_DIVISION_LIMIT: u64 = 200_000;

/// Splits a positive `n` as `square^2 * rest`, pulling out as much of the
/// square part as trial division finds.
///
/// The split is complete (rest squarefree) whenever `n < TRIAL_DIVISION_LIMIT^3`:
/// once every prime up to `cbrt(n)` has been removed, the cofactor has at most
/// two prime factors and carries a square part only if it is itself a square.
/// Larger inputs get a best-effort split; callers must not assume
/// squarefreeness for them.
pub fn split_square<I: Int>(n: &I) -> (I, I) {
    assert!(n.is_positive(), "split_square needs a positive argument");
    let mut rest = n.clone();
    let mut square = I::one();

    let mut free = I::one();
    let mut f = 2u64;
    loop {
        let fi = I::from_entry(f);
        if fi.clone() * fi.clone() * fi.clone() > rest || f > TRIAL_DIVISION_LIMIT {
            break;
        }
        if (rest.clone() % fi.clone()).is_zero() {
            let mut exp = 0u32;
            while (rest.clone() % fi.clone()).is_zero() {
                rest = rest.clone() / fi.clone();
                exp += 1;
            }
            for _ in 0..exp / 2 {
                square = square.clone() * fi.clone();
            }
            if exp % 2 == 1 {
                free = free.clone() * fi.clone();
            }
        }
        f += if f == 2 { 1 } else { 2 };
    }
    if let Some(r) = exact_sqrt(&rest) {
        square = square * r;
        rest = I::one();
    }
    (square, free * rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn split_small_values() {
        assert_eq!(split_square(&72i64), (6, 2));
        assert_eq!(split_square(&13i64), (1, 13));
        assert_eq!(split_square(&49i64), (7, 1));
        assert_eq!(split_square(&1i64), (1, 1));
        assert_eq!(split_square(&(4 * 3 * 3 * 5i64)), (6, 5));
    }

    #[test]
    fn split_large_semiprime_square() {
        // 1000003 is prime; its square sits beyond cbrt-bounded trial division
        // of the cofactor, exercising the perfect-square fallback.
        let p = BigInt::from(1_000_003u64);
        let n = p.clone() * p.clone() * BigInt::from(10);
        let (s, d) = split_square(&n);
        assert_eq!(s, p);
        assert_eq!(d, BigInt::from(10));
    }

    #[test]
    fn split_matches_brute_force() {
        for n in 1i64..3000 {
            let (s, d) = split_square(&n);
            assert_eq!(s * s * d, n);
            for f in 2..=((d as f64).sqrt() as i64 + 1) {
                assert_ne!(d % (f * f), 0, "{n} left square factor {f} in {d}");
            }
        }
    }

    #[test]
    fn gcd_of_slice() {
        assert_eq!(gcd_all(&[12i64, -10, 2]), 2);
        assert_eq!(gcd_all(&[0i64, 0, 0]), 0);
        assert_eq!(gcd_all(&[-30i64, -30, 10]), 10);
    }
}
