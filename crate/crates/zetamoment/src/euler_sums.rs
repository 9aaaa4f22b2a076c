//! Alternating and classical Euler sums.
//!
//! The alternating sum h(s) = Σ (−1)^{ℓ+1} H_ℓ / ℓ^s is evaluated two
//! ways: directly by series acceleration, and — for even s — through the
//! classical closed form in odd zetas and π powers. The two routes are
//! the main cross-check for everything downstream that consumes h.

use std::collections::BTreeMap;
use std::fmt;

use rug::{Float, Rational};

use crate::bigreal::{BigReal, PowI};
use crate::error::{Error, Result};
use crate::numutil::{factorial, pochhammer, pow2};
use crate::precision::{working_bits, GUARD_DIGITS};
use crate::series::alternating_sum;
use crate::special;
use crate::zeta_expr::ZetaExpr;

/// h(s) = Σ_{ℓ≥1} (−1)^{ℓ+1} H_ℓ / ℓ^s by accelerated summation, s ≥ 2.
pub fn alt_euler_sum_direct(s: u32, digits: u32) -> Result<BigReal> {
    if s < 2 {
        return Err(Error::domain(
            "alt_euler_sum_direct",
            format!("argument must be ≥ 2, got {s}"),
        ));
    }
    // The driver replays terms from k = 0 at each depth, so the harmonic
    // prefix is rebuilt whenever k resets.
    let mut h_acc = Float::new(32);
    let mut next: u64 = 0;
    let sum = alternating_sum(
        move |k, bits| {
            if k == 0 {
                h_acc = Float::with_val(bits, 0);
                next = 0;
            }
            while next <= k {
                h_acc += Float::with_val(bits, 1u32) / (next + 1);
                next += 1;
            }
            let l = Float::with_val(bits, k + 1);
            Float::with_val(bits, &h_acc / l.pow_i(i64::from(s)))
        },
        digits,
    )?;
    Ok(BigReal::from_float(sum.value, digits))
}

/// Closed form of h(2m):
///
/// ```text
/// h(2m) = [m − (2m+1)/2^{2m+1}] ζ(2m+1)
///         − Σ_{k=1}^{m−1} (1 − 2^{1−2k}) ζ(2k) ζ(2m−2k+1)
/// ```
///
/// returned as an exact expression with the even zetas reduced to π powers.
pub fn alt_euler_sum_closed(m: u32) -> Result<ZetaExpr> {
    if m < 1 {
        return Err(Error::domain("alt_euler_sum_closed", "need m ≥ 1"));
    }
    let head_coeff = Rational::from(m) - Rational::from(2 * m + 1) * pow2(-(2 * i64::from(m) + 1));
    let mut expr = ZetaExpr::zeta(2 * m + 1)?.scale(&head_coeff);
    for k in 1..m {
        let c = Rational::from(1) - pow2(1 - 2 * i64::from(k));
        let term = ZetaExpr::zeta(2 * k)?
            .mul(&ZetaExpr::zeta(2 * m - 2 * k + 1)?)
            .scale(&c);
        expr = expr.sub(&term);
    }
    Ok(expr)
}

/// An alternating Euler sum value: the numeric evaluation plus, for even
/// arguments, the exact closed form (whose own numeric value agrees with
/// the direct one — that agreement is a standing invariant of the crate).
#[derive(Debug, Clone)]
pub struct AltEulerSumValue {
    pub s: u32,
    pub numeric: BigReal,
    pub closed_form: Option<ZetaExpr>,
}

pub fn alt_euler_sum(s: u32, digits: u32) -> Result<AltEulerSumValue> {
    let numeric = alt_euler_sum_direct(s, digits)?;
    let closed_form = if s % 2 == 0 {
        Some(alt_euler_sum_closed(s / 2)?)
    } else {
        None
    };
    Ok(AltEulerSumValue { s, numeric, closed_form })
}

/// Right-hand side of the Sofo–Batir identity:
/// (−1)^n n! Σ_{ℓ≥1} (−1)^{ℓ+1} H_ℓ / (ℓ+1+b)^{n+1}.
///
/// For b = −2 the ℓ = 1 term has a vanishing denominator with a nonzero
/// numerator (H₁ = 1), which is a genuine singularity; it is rejected
/// distinctly from plain domain violations. Supported range: b ≥ −1.
pub fn sofo_batir_rhs(b: i64, n: u32, digits: u32) -> Result<BigReal> {
    if b == -2 {
        return Err(Error::singular(
            "sofo_batir_rhs",
            "b = −2 makes the ℓ = 1 term singular (H₁/0)",
        ));
    }
    if b < -2 {
        return Err(Error::domain(
            "sofo_batir_rhs",
            format!("b must be ≥ −1, got {b}"),
        ));
    }
    let mut h_acc = Float::new(32);
    let mut next: u64 = 0;
    let sum = alternating_sum(
        move |k, bits| {
            if k == 0 {
                h_acc = Float::with_val(bits, 0);
                next = 0;
            }
            while next <= k {
                h_acc += Float::with_val(bits, 1u32) / (next + 1);
                next += 1;
            }
            let den = Float::with_val(bits, k as i64 + 2 + b);
            Float::with_val(bits, &h_acc / den.pow_i(i64::from(n) + 1))
        },
        digits,
    )?;
    let bits = sum.value.prec();
    let mut v = sum.value * Float::with_val(bits, factorial(n));
    if n % 2 == 1 {
        v = -v;
    }
    Ok(BigReal::from_float(v, digits))
}

/// Exact combination of a [`ZetaExpr`] with alternating-Euler-sum atoms
/// h(s) at odd arguments s ≥ 3, which have no closed form and are
/// evaluated numerically on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerSumExpr {
    pub zeta: ZetaExpr,
    /// h-argument → rational coefficient; arguments odd, ≥ 3.
    pub h_terms: BTreeMap<u32, Rational>,
}

impl EulerSumExpr {
    pub fn from_zeta(zeta: ZetaExpr) -> Self {
        EulerSumExpr {
            zeta,
            h_terms: BTreeMap::new(),
        }
    }

    fn with_h(zeta: ZetaExpr, arg: u32, coeff: Rational) -> Self {
        let mut h_terms = BTreeMap::new();
        if coeff != 0 {
            h_terms.insert(arg, coeff);
        }
        EulerSumExpr { zeta, h_terms }
    }

    pub fn add(&self, other: &EulerSumExpr) -> EulerSumExpr {
        let mut h_terms = self.h_terms.clone();
        for (arg, c) in &other.h_terms {
            let entry = h_terms.entry(*arg).or_default();
            *entry += c;
            if *entry == 0 {
                h_terms.remove(arg);
            }
        }
        EulerSumExpr {
            zeta: self.zeta.add(&other.zeta),
            h_terms,
        }
    }

    pub fn eval(&self, digits: u32) -> Result<BigReal> {
        let bits = working_bits(digits);
        let mut acc = Float::with_val(bits, self.zeta.eval(digits)?.as_float());
        for (arg, c) in &self.h_terms {
            let h = alt_euler_sum_direct(*arg, digits + GUARD_DIGITS)?;
            acc += Float::with_val(bits, c) * h.as_float();
        }
        Ok(BigReal::from_float(acc, digits))
    }
}

impl fmt::Display for EulerSumExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.zeta)?;
        for (arg, c) in &self.h_terms {
            if *c < 0 {
                write!(f, " - {}*h{}", Rational::from(c.abs_ref()), arg)?;
            } else {
                write!(f, " + {c}*h{arg}")?;
            }
        }
        Ok(())
    }
}

/// I₂(n) = ∫_0^∞ t^n log(1+e^{−t})/(1+e^{−t}) dt = Γ(n+1) h(n+1).
///
/// For odd n the even-argument h eliminates through the closed form; for
/// even n ≥ 2 the odd h(n+1) stays as a tagged atom. n = 0 is rejected:
/// the h(1) expression falls outside the supported range of h.
pub fn i2_closed(n: u32) -> Result<EulerSumExpr> {
    if n == 0 {
        return Err(Error::domain("i2_closed", "n = 0 leads to h(1)"));
    }
    let gamma = Rational::from(factorial(n));
    if (n + 1) % 2 == 0 {
        let closed = alt_euler_sum_closed((n + 1) / 2)?;
        Ok(EulerSumExpr::from_zeta(closed.scale(&gamma)))
    } else {
        Ok(EulerSumExpr::with_h(ZetaExpr::zero(), n + 1, gamma))
    }
}

/// I₃(n) = ∫_0^∞ t^n log(1+e^{−t})/(1+e^t) dt
///        = −Γ(n+1) h(n+1) + Γ(n+1)(1−2^{−1−n}) ζ(n+2),  n ≥ 1.
pub fn i3_closed(n: u32) -> Result<EulerSumExpr> {
    if n == 0 {
        return Err(Error::domain("i3_closed", "n = 0 leads to h(1)"));
    }
    let gamma = Rational::from(factorial(n));
    let zeta_coeff =
        Rational::from(&gamma * &(Rational::from(1) - pow2(-1 - i64::from(n))));
    let zeta_part = ZetaExpr::zeta(n + 2)?.scale(&zeta_coeff);
    if (n + 1) % 2 == 0 {
        let closed = alt_euler_sum_closed((n + 1) / 2)?;
        Ok(EulerSumExpr::from_zeta(
            zeta_part.sub(&closed.scale(&gamma)),
        ))
    } else {
        Ok(EulerSumExpr::with_h(zeta_part, n + 1, -gamma))
    }
}

/// I₄(n) = ∫_0^∞ t^{n+1}/(1+e^t) dt = (1 − 2^{−1−n}) ζ(n+2) Γ(n+2),
/// exactly, for any n ≥ 0.
pub fn i4_closed(n: u32) -> Result<ZetaExpr> {
    let coeff = (Rational::from(1) - pow2(-1 - i64::from(n))) * Rational::from(factorial(n + 1));
    Ok(ZetaExpr::zeta(n + 2)?.scale(&coeff))
}

/// Verification record for Euler's classical (non-alternating) formula
/// 2 Σ H_ℓ/ℓ^m = (m+2) ζ(m+1) − Σ_{k=1}^{m−2} ζ(m−k) ζ(k+1).
#[derive(Debug, Clone)]
pub struct ClassicalEulerCheck {
    pub m: u32,
    pub lhs: BigReal,
    pub rhs: BigReal,
    pub digits_agreed: i64,
}

/// One power-law component coeff · x^{−q} · (ln x)^{0 or 1} of the
/// harmonic-number asymptotic divided by x^m.
struct PowTerm {
    q: u32,
    coeff: Float,
    with_log: bool,
}

impl PowTerm {
    /// ∫_L^∞ of the component.
    fn integral(&self, l: &Float, bits: u32) -> Float {
        let q1 = i64::from(self.q) - 1;
        let base = Float::with_val(bits, l.clone().pow_i(-q1)) / q1;
        if self.with_log {
            let extra = Float::with_val(bits, l.clone().ln()) + Float::with_val(bits, 1) / q1;
            Float::with_val(bits, &self.coeff * &base) * extra
        } else {
            Float::with_val(bits, &self.coeff * &base)
        }
    }

    /// j-th derivative at L. For the log component the derivative is
    /// x^{−q−j}(a_j ln x + b_j) with a/b from a two-term recurrence.
    fn derivative(&self, j: u32, l: &Float, bits: u32) -> Float {
        let power = Float::with_val(bits, l.clone().pow_i(-(i64::from(self.q) + i64::from(j))));
        if self.with_log {
            let mut a = Float::with_val(bits, 1);
            let mut b = Float::with_val(bits, 0);
            for i in 0..j {
                let factor = i64::from(self.q) + i64::from(i);
                let new_a = Float::with_val(bits, &a * (-factor));
                let new_b = Float::with_val(bits, &a - Float::with_val(bits, &b * factor));
                a = new_a;
                b = new_b;
            }
            let ln_l = Float::with_val(bits, l.clone().ln());
            Float::with_val(bits, &self.coeff * &power) * (a * ln_l + b)
        } else {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let poch = Float::with_val(bits, pochhammer(self.q, j));
            Float::with_val(bits, &self.coeff * &power) * poch * sign
        }
    }
}

/// Σ_{ℓ>L} f(ℓ) by Euler–Maclaurin at L, for f a sum of [`PowTerm`]s.
fn euler_maclaurin_tail(terms: &[PowTerm], l_cut: u32, order: u32, bits: u32) -> Float {
    let l = Float::with_val(bits, l_cut);
    let mut acc = Float::with_val(bits, 0);
    for t in terms {
        acc += t.integral(&l, bits);
        acc -= t.derivative(0, &l, bits) / 2u32;
        for r in 1..=order / 2 {
            let coeff = special::bernoulli_number(2 * r) / Rational::from(factorial(2 * r));
            acc -= Float::with_val(bits, &coeff) * t.derivative(2 * r - 1, &l, bits);
        }
    }
    acc
}

/// Evaluates both sides of the classical Euler formula. The left side is
/// summed directly to ℓ = 200 and the tail Σ_{ℓ>200} H_ℓ/ℓ^m is
/// approximated through the asymptotic
/// H_x = ln x + γ + 1/(2x) − Σ_k B_{2k}/(2k x^{2k}),
/// summed by Euler–Maclaurin; both truncations sit far below the
/// comparison tolerance used by the verification suites.
pub fn euler_classical_check(m: u32, digits: u32) -> Result<ClassicalEulerCheck> {
    if m < 2 {
        return Err(Error::domain(
            "euler_classical_check",
            format!("need m ≥ 2, got {m}"),
        ));
    }
    let bits = working_bits(digits);
    const L_CUT: u32 = 200;
    const H_ASYMPTOTIC_TERMS: u32 = 10;
    const EM_ORDER: u32 = 16;

    // Direct part: Σ_{ℓ≤L} H_ℓ/ℓ^m with an incrementally built harmonic.
    let mut h = Float::with_val(bits, 0);
    let mut direct = Float::with_val(bits, 0);
    for l in 1..=L_CUT {
        h += Float::with_val(bits, 1u32) / l;
        direct += &h / Float::with_val(bits, l).pow_i(i64::from(m));
    }

    // Tail integrand components: (ln x + γ) x^{−m} + x^{−m−1}/2
    //                            − Σ_k B_{2k}/(2k) x^{−m−2k}.
    let mut terms = vec![
        PowTerm { q: m, coeff: Float::with_val(bits, 1), with_log: true },
        PowTerm {
            q: m,
            coeff: Float::with_val(bits, rug::float::Constant::Euler),
            with_log: false,
        },
        PowTerm {
            q: m + 1,
            coeff: Float::with_val(bits, Rational::from((1, 2))),
            with_log: false,
        },
    ];
    for k in 1..=H_ASYMPTOTIC_TERMS {
        let c = -special::bernoulli_number(2 * k) / Rational::from(2 * k);
        terms.push(PowTerm {
            q: m + 2 * k,
            coeff: Float::with_val(bits, &c),
            with_log: false,
        });
    }
    let tail = euler_maclaurin_tail(&terms, L_CUT, EM_ORDER, bits);

    let lhs = BigReal::from_float(Float::with_val(bits, (direct + tail) * 2u32), digits);

    let wd = digits + 5;
    let mut rhs_f = Float::with_val(bits, special::zeta_reference(m + 1, wd)?.as_float())
        * Float::with_val(bits, m + 2);
    for k in 1..=m.saturating_sub(2) {
        rhs_f -= Float::with_val(bits, special::zeta_reference(m - k, wd)?.as_float())
            * special::zeta_reference(k + 1, wd)?.as_float();
    }
    let rhs = BigReal::from_float(rhs_f, digits);
    let digits_agreed = lhs.digits_agreed(&rhs);
    Ok(ClassicalEulerCheck { m, lhs, rhs, digits_agreed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numutil::rat;
    use crate::precision::bits_for;

    /// Plain partial summation with repeated tail averaging (Euler
    /// transformation of the last window), the independent oracle for the
    /// accelerated route.
    fn averaged_partial_sums(
        mut term: impl FnMut(u64, u32) -> Float,
        l_max: u64,
        rounds: usize,
        bits: u32,
    ) -> Float {
        let mut s = Float::with_val(bits, 0);
        let mut window: Vec<Float> = Vec::with_capacity(rounds + 1);
        for l in 1..=l_max {
            let t = term(l, bits);
            if l % 2 == 1 {
                s += t;
            } else {
                s -= t;
            }
            if l_max - l < (rounds as u64 + 1) {
                window.push(s.clone());
            }
        }
        while window.len() > 1 {
            window = window
                .windows(2)
                .map(|p| Float::with_val(bits, &p[0] + &p[1]) / 2u32)
                .collect();
        }
        window.pop().unwrap()
    }

    #[test]
    fn direct_sum_matches_partial_sum_oracle() {
        let bits = bits_for(40);
        let mut h = Float::with_val(bits, 0);
        let mut next = 1u64;
        let oracle = averaged_partial_sums(
            |l, bits| {
                while next <= l {
                    h += Float::with_val(bits, 1u32) / next;
                    next += 1;
                }
                Float::with_val(bits, &h / (l * l))
            },
            100_000,
            10,
            bits,
        );
        let accel = alt_euler_sum_direct(2, 25).unwrap();
        let diff = Float::with_val(bits, accel.as_float() - &oracle).abs();
        assert!(diff < Float::with_val(bits, 1e-24), "diff {:e}", diff.to_f64());
    }

    #[test]
    fn direct_sum_at_two_is_five_eighths_zeta3() {
        let v = alt_euler_sum_direct(2, 25).unwrap();
        let z3 = special::zeta_reference(3, 35).unwrap();
        let want = &BigReal::from_rational(&rat(5, 8), 35) * &z3;
        assert!(v.digits_agreed(&want) >= 24, "v={v}");
        // Literal check of the leading digits.
        assert!(v.to_string().starts_with("7.5128556447474"));
    }

    #[test]
    fn direct_sum_rejects_small_arguments() {
        assert!(alt_euler_sum_direct(1, 20).is_err());
        assert!(alt_euler_sum_direct(0, 20).is_err());
    }

    #[test]
    fn closed_form_m1_and_m2() {
        let c1 = alt_euler_sum_closed(1).unwrap();
        assert_eq!(c1.to_string(), "5/8*z3");
        let c2 = alt_euler_sum_closed(2).unwrap();
        assert_eq!(c2.to_string(), "59/32*z5 - 1/12*pi^2*z3");
        assert!(alt_euler_sum_closed(0).is_err());
    }

    #[test]
    fn closed_vs_direct_small_orders() {
        // |closed(m) − direct(2m)| < 10^{−25} at P = 30 for m = 1..5.
        for m in 1..=5u32 {
            let closed = alt_euler_sum_closed(m).unwrap().eval(30).unwrap();
            let direct = alt_euler_sum_direct(2 * m, 30).unwrap();
            assert!(
                closed.agrees_abs(&direct, 25),
                "m={m}: closed={closed} direct={direct}"
            );
        }
    }

    #[test]
    fn odd_argument_is_stable_across_depths() {
        let lo = alt_euler_sum_direct(3, 25).unwrap();
        let hi = alt_euler_sum_direct(3, 35).unwrap();
        assert!(lo.digits_agreed(&hi) >= 24);
    }

    #[test]
    fn alt_euler_sum_value_invariant() {
        let v = alt_euler_sum(4, 30).unwrap();
        let closed = v.closed_form.as_ref().unwrap().eval(30).unwrap();
        assert!(closed.agrees_abs(&v.numeric, 25));
        assert!(alt_euler_sum(3, 30).unwrap().closed_form.is_none());
    }

    #[test]
    fn sofo_batir_at_minus_one_matches_alternating_sum() {
        // b = −1: rhs = (−1)^n n! h(n+1).
        for n in [1u32, 2, 3] {
            let rhs = sofo_batir_rhs(-1, n, 25).unwrap();
            let h = alt_euler_sum_direct(n + 1, 30).unwrap();
            let mut want = &BigReal::from_rational(&Rational::from(factorial(n)), 35) * &h;
            if n % 2 == 1 {
                want = -&want;
            }
            assert!(rhs.digits_agreed(&want) >= 24, "n={n}");
        }
    }

    #[test]
    fn sofo_batir_domain_handling() {
        assert!(matches!(
            sofo_batir_rhs(-2, 1, 20),
            Err(Error::SingularTerm { .. })
        ));
        assert!(matches!(sofo_batir_rhs(-3, 1, 20), Err(Error::Domain { .. })));
    }

    #[test]
    fn half_line_closed_forms() {
        // I₂(1) = Γ(2) h(2) = (5/8) ζ(3).
        let i2 = i2_closed(1).unwrap();
        assert!(i2.h_terms.is_empty());
        assert_eq!(i2.zeta.to_string(), "5/8*z3");

        // I₄(0) = (1 − 2^{−1}) ζ(2) Γ(2) = π²/12.
        let i4 = i4_closed(0).unwrap();
        assert_eq!(i4.to_string(), "1/12*pi^2");

        // Domain boundary: the n = 0 closed forms would need h(1).
        assert!(i3_closed(0).is_err());
        assert!(i2_closed(0).is_err());

        // Even n keeps an explicit h atom.
        let i2e = i2_closed(2).unwrap();
        assert_eq!(i2e.h_terms.get(&3), Some(&rat(2, 1)));
        assert!(i2e.zeta.is_zero());
    }

    #[test]
    fn decomposition_identity_exact() {
        // I₂ + I₃ = I₄/(n+1) with the h atoms cancelling exactly.
        for n in 1..=8u32 {
            let sum = i2_closed(n).unwrap().add(&i3_closed(n).unwrap());
            assert!(sum.h_terms.is_empty(), "h atoms must cancel at n={n}");
            let rhs = i4_closed(n)
                .unwrap()
                .scale(&Rational::from((1u32, n + 1)));
            assert_eq!(sum.zeta, rhs, "n={n}");
        }
    }

    #[test]
    fn classical_euler_formula() {
        // m = 2: both sides equal 4 ζ(3).
        let c2 = euler_classical_check(2, 30).unwrap();
        let z3 = special::zeta_reference(3, 35).unwrap();
        let four_z3 = &BigReal::from_integer_val(4, 40) * &z3;
        assert!(c2.rhs.digits_agreed(&four_z3) >= 29);
        assert!(c2.digits_agreed >= 20, "m=2 agreed {}", c2.digits_agreed);

        for m in [3u32, 5] {
            let c = euler_classical_check(m, 30).unwrap();
            assert!(c.digits_agreed >= 20, "m={m} agreed only {}", c.digits_agreed);
        }
        assert!(euler_classical_check(1, 30).is_err());
    }
}
