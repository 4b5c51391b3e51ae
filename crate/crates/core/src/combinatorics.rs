//! Exact integer helpers shared across the crate.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

/// Binomial coefficient `C(n, k)` as an exact big integer, `0` when `k > n`.
///
/// Computed by the multiplicative formula; every intermediate division is
/// exact because `C(n, i+1) = C(n, i) * (n - i) / (i + 1)`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `binomial` as a signed integer, for formulas that mix signs.
pub fn binomial_int(n: u64, k: u64) -> BigInt {
    BigInt::from(binomial(n, k))
}

/// `base^exp` as an exact big integer.
pub fn power(base: u64, exp: u32) -> BigUint {
    BigUint::from(base).pow(exp)
}

/// Exact division, or `None` when `divisor` does not divide `n`.
pub fn exact_div(n: &BigUint, divisor: u64) -> Option<BigUint> {
    use num_integer::Integer;
    let (quot, rem) = n.div_rem(&BigUint::from(divisor));
    rem.is_zero().then_some(quot)
}

/// `C(n, k)` clamped into `u128`, for budget estimates. Saturates at
/// `u128::MAX` instead of overflowing.
pub fn binomial_cost(n: u64, k: u64) -> u128 {
    use num_traits::ToPrimitive;
    binomial(n, k).to_u128().unwrap_or(u128::MAX)
}
