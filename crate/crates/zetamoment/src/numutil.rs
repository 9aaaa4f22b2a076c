//! Small exact-arithmetic helpers shared across modules.

use rug::{Integer, Rational};

/// Binomial coefficient C(n, k) as an exact integer.
pub fn binomial(n: u32, k: u32) -> Integer {
    if k > n {
        return Integer::new();
    }
    Integer::from(Integer::binomial_u(n, k))
}

/// n! as an exact integer.
pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// 2^e as an exact rational, for any sign of `e`.
pub fn pow2(e: i64) -> Rational {
    if e >= 0 {
        Rational::from(Integer::from(1) << e as u32)
    } else {
        Rational::from((Integer::from(1), Integer::from(1) << (-e) as u32))
    }
}

/// Shorthand for a rational from a signed pair.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::from((num, den))
}

/// Pochhammer symbol (s)_k = s (s+1) ⋯ (s+k−1) for integer s ≥ 1.
pub fn pochhammer(s: u32, k: u32) -> Integer {
    let mut acc = Integer::from(1);
    for j in 0..k {
        acc *= s + j;
    }
    acc
}
