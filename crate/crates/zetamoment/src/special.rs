//! Exact Bernoulli machinery and multi-precision reference constants.
//!
//! Everything else in the crate checks itself against this module: the
//! Bernoulli numbers feed the even-zeta closed form and the exact matrix
//! inverse, while `zeta_reference` provides the numeric oracle for every
//! odd-zeta identity. Odd zetas are computed through the alternating
//! (eta) series with acceleration; a second, independent Euler–Maclaurin
//! route guards against method-specific bias.

use std::sync::{OnceLock, RwLock};

use rug::float::Constant;
use rug::{Float, Rational};

use crate::bigreal::{BigReal, PowI};
use crate::error::{Error, Result};
use crate::numutil::{binomial, factorial, pochhammer, pow2};
use crate::polynomial::QPolynomial;
use crate::precision::{bits_for, working_bits, GUARD_DIGITS};
use crate::series::alternating_sum;
use crate::zeta_expr::ZetaExpr;

fn bernoulli_cache() -> &'static RwLock<Vec<Rational>> {
    static CACHE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![Rational::from(1)]))
}

/// Bernoulli number B_n under the B₁ = −1/2 convention, from the
/// recursion Σ_{s=0}^{n} C(n+1,s) B_s = δ_{n,0}. Memoized; the cache is
/// shared between threads (concurrent readers, serialized writers).
pub fn bernoulli_number(n: u32) -> Rational {
    let n = n as usize;
    {
        let cache = bernoulli_cache().read().unwrap();
        if let Some(b) = cache.get(n) {
            return b.clone();
        }
    }
    let mut cache = bernoulli_cache().write().unwrap();
    while cache.len() <= n {
        let m = cache.len() as u32; // next index to fill
        let mut acc = Rational::new();
        for (s, b) in cache.iter().enumerate() {
            acc += Rational::from(binomial(m + 1, s as u32)) * b;
        }
        acc /= -Rational::from(m + 1);
        cache.push(acc);
    }
    cache[n].clone()
}

/// Bernoulli polynomial Bₙ(x) = Σ_k C(n,k) B_{n−k} x^k, exactly.
pub fn bernoulli_polynomial(n: u32) -> QPolynomial {
    let coeffs = (0..=n)
        .map(|k| Rational::from(binomial(n, k)) * bernoulli_number(n - k))
        .collect();
    QPolynomial::new(coeffs)
}

fn harmonic_cache() -> &'static RwLock<Vec<Rational>> {
    static CACHE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![Rational::new()]))
}

/// Harmonic number H_ℓ = Σ_{j=1}^{ℓ} 1/j, exactly, with H₀ = 0.
pub fn harmonic(l: u32) -> Rational {
    let l = l as usize;
    {
        let cache = harmonic_cache().read().unwrap();
        if let Some(h) = cache.get(l) {
            return h.clone();
        }
    }
    let mut cache = harmonic_cache().write().unwrap();
    while cache.len() <= l {
        let j = cache.len() as u32;
        let next = cache.last().unwrap().clone() + Rational::from((1, j));
        cache.push(next);
    }
    cache[l].clone()
}

/// Coefficient c with ζ(k) = c · π^k for even k ≥ 2, from Euler's formula
/// ζ(2m) = (−1)^{m+1} B_{2m} (2π)^{2m} / (2 (2m)!).
pub(crate) fn zeta_even_coeff(k: u32) -> Rational {
    debug_assert!(k >= 2 && k % 2 == 0);
    let m = k / 2;
    let sign = if m % 2 == 1 { 1 } else { -1 };
    let num = bernoulli_number(k) * pow2(i64::from(k)) * Rational::from(sign);
    num / (Rational::from(factorial(k)) * 2u32)
}

/// ζ(k) for even k ≥ 0 as an exact zeta-expression: a rational multiple
/// of π^k for k ≥ 2, and the rational −1/2 for k = 0. Odd and negative
/// arguments are rejected (odd zetas are atoms of [`ZetaExpr`] instead).
pub fn zeta_even(k: u32) -> Result<ZetaExpr> {
    if k % 2 != 0 {
        return Err(Error::domain("zeta_even", format!("argument {k} is odd")));
    }
    if k == 0 {
        return Ok(ZetaExpr::constant(Rational::from((-1, 2))));
    }
    Ok(ZetaExpr::pi_power(zeta_even_coeff(k), k))
}

pub(crate) fn pi_float(bits: u32) -> Float {
    Float::with_val(bits, Constant::Pi)
}

pub(crate) fn log2_float(bits: u32) -> Float {
    Float::with_val(bits, Constant::Log2)
}

/// π to the requested number of decimal digits.
pub fn pi(digits: u32) -> BigReal {
    BigReal::from_float(pi_float(bits_for(digits + GUARD_DIGITS)), digits)
}

/// log 2 to the requested number of decimal digits.
pub fn log2(digits: u32) -> BigReal {
    BigReal::from_float(log2_float(bits_for(digits + GUARD_DIGITS)), digits)
}

/// Dirichlet eta value η(s) = (1 − 2^{1−s}) ζ(s) for s ≥ 2, and
/// η(1) = log 2.
pub fn eta_value(s: u32, digits: u32) -> Result<BigReal> {
    match s {
        0 => Err(Error::domain("eta_value", "argument must be ≥ 1")),
        1 => Ok(log2(digits)),
        _ => {
            let z = zeta_reference(s, digits + 2)?;
            let factor = Rational::from(1) - pow2(1 - i64::from(s));
            let bits = working_bits(digits);
            let v = Float::with_val(bits, z.as_float()) * Float::with_val(bits, &factor);
            Ok(BigReal::from_float(v, digits))
        }
    }
}

/// Raw eta series Σ (−1)^{ℓ+1} ℓ^{−s} by acceleration, at working precision.
fn eta_series(s: u32, digits: u32) -> Result<Float> {
    let sum = alternating_sum(
        move |k, bits| {
            let l = Float::with_val(bits, k + 1);
            Float::with_val(bits, 1u32) / l.pow_i(i64::from(s))
        },
        digits,
    )?;
    Ok(sum.value)
}

/// Reference value of ζ(s) for integer s ≥ 2.
///
/// Even arguments go through the exact Euler closed form; odd arguments
/// are computed as η(s)/(1 − 2^{1−s}) with the accelerated alternating
/// series. Accurate to at least `digits` decimal digits.
pub fn zeta_reference(s: u32, digits: u32) -> Result<BigReal> {
    if s < 2 {
        return Err(Error::domain("zeta_reference", "argument must be ≥ 2"));
    }
    let bits = working_bits(digits);
    if s % 2 == 0 {
        let c = zeta_even_coeff(s);
        let v = pi_float(bits).pow_i(i64::from(s)) * Float::with_val(bits, &c);
        return Ok(BigReal::from_float(v, digits));
    }
    let eta = eta_series(s, digits)?;
    let factor = Rational::from(1) - pow2(1 - i64::from(s));
    let v = eta / Float::with_val(bits, &factor);
    Ok(BigReal::from_float(v, digits))
}

/// An Euler–Maclaurin evaluation together with its rigorous-style bound
/// on the discarded integral term.
#[derive(Debug, Clone)]
pub struct EmZeta {
    pub value: BigReal,
    pub bound: BigReal,
    pub cutoff: u64,
    pub order: u32,
}

/// ζ(s) by the Euler–Maclaurin formula, summing 1..N−1 directly and
/// applying the asymptotic expansion at the shifted point N:
///
/// ```text
/// ζ(s) = Σ_{j<N} j^{−s} + N^{1−s}/(s−1) + N^{−s}/2
///        + Σ_{k=2,4,…,order} (s)_{k−1} B_k / k! · N^{1−s−k}  −  R
/// ```
///
/// The discarded integral R is bounded via max |B_order({x})| ≤ |B_order|
/// for even order:  |R| ≤ (s)_order |B_order| / order! · N^{1−s−order} / (s+order−1).
/// Parameter combinations whose bound exceeds 10^(−digits) are rejected.
pub fn zeta_euler_maclaurin(s: u32, cutoff: u64, order: u32, digits: u32) -> Result<EmZeta> {
    if s < 2 {
        return Err(Error::domain("zeta_euler_maclaurin", "argument must be ≥ 2"));
    }
    if order < 2 || order % 2 != 0 {
        return Err(Error::domain(
            "zeta_euler_maclaurin",
            format!("order must be even and ≥ 2, got {order}"),
        ));
    }
    if cutoff < 1 {
        return Err(Error::domain("zeta_euler_maclaurin", "cutoff must be ≥ 1"));
    }
    let bits = working_bits(digits);
    let n_f = Float::with_val(bits, cutoff);

    let bound = em_tail_bound(s, cutoff, order, bits);
    let target = Float::with_val(bits, 10u32).pow_i(-i64::from(digits));
    if bound > target {
        return Err(Error::PrecisionNotReached {
            requested: digits,
            estimate: format!("{:e}", bound.to_f64()),
            best: None,
        });
    }

    let mut sum = Float::with_val(bits, 0);
    for j in 1..cutoff {
        sum += Float::with_val(bits, 1u32) / Float::with_val(bits, j).pow_i(i64::from(s));
    }
    // N^{1−s}/(s−1) + N^{−s}/2
    sum += n_f.clone().pow_i(1 - i64::from(s)) / (s - 1);
    sum += n_f.clone().pow_i(-i64::from(s)) / 2u32;
    for k in (2..=order).step_by(2) {
        let coeff = Rational::from(pochhammer(s, k - 1)) * bernoulli_number(k)
            / Rational::from(factorial(k));
        sum += Float::with_val(bits, &coeff) * n_f.clone().pow_i(1 - i64::from(s) - i64::from(k));
    }
    // The returned value is rounded to the claimed precision; the bound
    // has to cover that representation rounding on top of the discarded
    // integral term.
    let slack = Float::with_val(bits, sum.abs_ref()) >> (bits_for(digits) - 1);
    let value = BigReal::from_float(sum, digits);
    Ok(EmZeta {
        value,
        bound: BigReal::from_float(bound + slack, digits),
        cutoff,
        order,
    })
}

fn em_tail_bound(s: u32, cutoff: u64, order: u32, bits: u32) -> Float {
    let coeff = Rational::from(pochhammer(s, order))
        * bernoulli_number(order).abs()
        / Rational::from(factorial(order))
        / Rational::from(s + order - 1);
    Float::with_val(bits, &coeff)
        * Float::with_val(bits, cutoff).pow_i(1 - i64::from(s) - i64::from(order))
}

/// Euler–Maclaurin ζ(s) with automatically chosen cutoff and order for
/// the target precision.
pub fn zeta_em_auto(s: u32, digits: u32) -> Result<EmZeta> {
    if s < 2 {
        return Err(Error::domain("zeta_em_auto", "argument must be ≥ 2"));
    }
    let order = 2 * ((digits + GUARD_DIGITS) / 5 + 4);
    let bits = working_bits(digits);
    let target = Float::with_val(bits, 10u32).pow_i(-(i64::from(digits) + 2));
    let mut cutoff = (u64::from(digits) * 8 / 5).max(24);
    for _ in 0..12 {
        if em_tail_bound(s, cutoff, order, bits) < target {
            return zeta_euler_maclaurin(s, cutoff, order, digits);
        }
        cutoff *= 2;
    }
    Err(Error::PrecisionNotReached {
        requested: digits,
        estimate: "euler-maclaurin bound did not close".into(),
        best: None,
    })
}

/// Catalan constant G = Σ_{k≥0} (−1)^k / (2k+1)², by the accelerated
/// alternating series.
pub fn catalan_constant(digits: u32) -> Result<BigReal> {
    let sum = alternating_sum(
        |k, bits| {
            let d = Float::with_val(bits, 2 * k + 1);
            Float::with_val(bits, 1u32) / (d.clone() * d)
        },
        digits,
    )?;
    Ok(BigReal::from_float(sum.value, digits))
}

pub(crate) fn catalan_float(bits: u32) -> Float {
    // MPFR's built-in constant; the series route above is tested against it.
    Float::with_val(bits, Constant::Catalan)
}
