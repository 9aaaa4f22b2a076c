//! Arbitrary-precision quadrature for the integral family
//!
//! ```text
//!     ∫ x^m · log(1 + e^{ax}) / (1 + e^{bx}) dx          (real line)
//! ```
//!
//! and the half-line pieces the proofs split it into.
//!
//! The integrands are analytic in a strip around the real axis (nearest
//! singularities at ± iπ/max(a,b)) and decay exponentially, so the
//! trapezoid rule on a truncated interval converges geometrically in the
//! step size. The engine refines by doubling the node count, estimates
//! the error from the difference of successive levels, and runs two extra
//! levels of margin after the target is met.
//!
//! Truncation bounds (derived and used below):
//!
//! * right tail, x ≥ T ≥ max(1, 1/a, 2(m+2)/b):
//!   integrand ≤ x^m (ax+1) e^{−bx} ≤ 2a x^{m+1} e^{−bx}, so
//!   ∫_T^∞ ≤ (4a/b) T^{m+1} e^{−bT};
//! * left tail, x ≤ −T ≤ −max(1, 2(m+1)/a):
//!   |integrand| ≤ |x|^m e^{ax}, so ∫_{−∞}^{−T} ≤ (2/a) T^m e^{−aT}.
//!
//! T is chosen by fixed-point iteration so each tail is below
//! 10^(−(digits+guard)), then inflated by a 1.25 safety factor.

use rug::{Float, Rational};

use crate::bigreal::{BigReal, PowI};
use crate::error::{Error, Result};
use crate::precision::{working_bits, GUARD_DIGITS};

/// Outcome of a quadrature: the value, an absolute error estimate
/// (successive-level difference plus the truncation tail bound), the
/// total number of integrand evaluations, and the truncation point
/// (the larger of the two cut magnitudes for two-sided integrals).
#[derive(Debug, Clone)]
pub struct QuadResult {
    pub value: BigReal,
    pub error_estimate: BigReal,
    pub nodes_used: usize,
    pub truncation_point: BigReal,
}

/// Stable evaluator for w_{a,b}(t) = log(1 + e^{at}) / (1 + e^{bt}).
///
/// Large positive arguments are never exponentiated: for at > 0 the
/// numerator uses log(1+e^{at}) = at + log1p(e^{−at}), and for bt > 0 the
/// denominator uses e^{−bt}/(1+e^{−bt}). Evaluation carries a few guard
/// bits so the result is correct to within an ulp or two at the
/// argument's precision.
#[derive(Debug, Clone)]
pub struct WeightEvaluator {
    a: Rational,
    b: Rational,
}

impl WeightEvaluator {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if a <= 0 || b <= 0 {
            return Err(Error::domain("weight", "parameters a, b must be positive"));
        }
        Ok(WeightEvaluator { a, b })
    }

    /// The standard weight with a = b = 1.
    pub fn standard() -> Self {
        WeightEvaluator {
            a: Rational::from(1),
            b: Rational::from(1),
        }
    }

    pub fn params(&self) -> (&Rational, &Rational) {
        (&self.a, &self.b)
    }

    pub fn eval(&self, t: &Float) -> Float {
        let bits = t.prec() + 8;
        let at = Float::with_val(bits, t * &self.a);
        let bt = Float::with_val(bits, t * &self.b);
        let num = log1p_exp(&at);
        let mut w = num;
        if bt > 0 {
            // 1/(1+e^{bt}) = r/(1+r) with r = e^{−bt} ≤ 1.
            let r = Float::with_val(bits, (-bt).exp());
            w *= &r;
            w /= Float::with_val(bits, 1u32) + r;
        } else {
            w /= Float::with_val(bits, bt.exp_ref()) + 1u32;
        }
        Float::with_val(t.prec(), w)
    }
}

/// log(1 + e^x) without overflow for either sign of x.
fn log1p_exp(x: &Float) -> Float {
    let bits = x.prec();
    if *x > 0 {
        let small = Float::with_val(bits, (-x.clone()).exp());
        Float::with_val(bits, x + &small.ln_1p())
    } else {
        Float::with_val(bits, x.clone().exp().ln_1p())
    }
}

/// The weight w_{a,b} at a point, as a spec-level operation.
pub fn weight(t: &BigReal, a: &Rational, b: &Rational) -> Result<BigReal> {
    let w = WeightEvaluator::new(a.clone(), b.clone())?;
    Ok(BigReal::from_float(w.eval(t.as_float()), t.digits()))
}

/// Decay data for a truncation bound: the integrand is eventually below
/// scale · x^degree · e^{−rate·x}.
pub(crate) struct Tail {
    pub(crate) rate: f64,
    pub(crate) degree: u32,
    pub(crate) ln_scale: f64,
}

impl Tail {
    /// Smallest T with ln_scale + degree·ln T − rate·T ≤ −target_digits·ln 10,
    /// by fixed-point iteration, inflated by a safety factor of 1.25.
    fn cut(&self, target_digits: u32) -> f64 {
        let goal = f64::from(target_digits) * std::f64::consts::LN_10 + self.ln_scale.max(0.0);
        let mut t = (goal / self.rate).max(4.0);
        for _ in 0..32 {
            t = (goal + f64::from(self.degree) * t.max(2.0).ln()) / self.rate;
        }
        let floor = (2.0 * f64::from(self.degree + 2) + 2.0) / self.rate;
        (t.max(floor) * 1.25).ceil()
    }
}

const MAX_LEVELS: u32 = 18;
const NODE_BUDGET: usize = 4_000_000;

/// Trapezoid rule with step doubling on [lo, hi]. The integrand must be
/// negligible (below the tail target) at both endpoints. Returns the
/// value, the last successive-level difference, and the evaluation count.
fn trapezoid_refine(
    f: &mut dyn FnMut(&Float, u32) -> Float,
    lo: f64,
    hi: f64,
    digits: u32,
    extra_bits: u32,
) -> Result<(Float, Float, usize)> {
    let bits = working_bits(digits) + extra_bits;
    let tol = Float::with_val(bits, 10u32).pow_i(-(i64::from(digits) + 2));

    // The grid lives entirely in MPFR arithmetic: the step of each finer
    // level is an exact halving, so every level's nodes stay on one
    // mathematically uniform lattice.
    let lo_f = Float::with_val(bits, lo);
    let span = Float::with_val(bits, hi - lo);
    let mut m: u64 = ((hi - lo) * 2.0).ceil() as u64;
    let mut h = Float::with_val(bits, &span / m as u32);

    let mut nodes = 0usize;
    // Endpoint-halved node sum at the current level.
    let mut node_sum = Float::with_val(bits, 0);
    for j in 0..=m {
        let t = Float::with_val(bits, &lo_f + Float::with_val(bits, j) * &h);
        let v = f(&t, bits);
        nodes += 1;
        if j == 0 || j == m {
            node_sum += v / 2u32;
        } else {
            node_sum += v;
        }
    }
    let mut total = Float::with_val(bits, &node_sum * &h);

    let mut converged_at: Option<u32> = None;
    let mut last_diff = Float::with_val(bits, 1);
    for level in 1..=MAX_LEVELS {
        if nodes + m as usize > NODE_BUDGET {
            break;
        }
        // Midpoints of the current grid, summed left to right.
        let half = Float::with_val(bits, &h / 2u32); // exact
        let mut mid_sum = Float::with_val(bits, 0);
        for j in 0..m {
            let t = Float::with_val(bits, &lo_f + Float::with_val(bits, 2 * j + 1) * &half);
            mid_sum += f(&t, bits);
            nodes += 1;
        }
        node_sum += mid_sum;
        m *= 2;
        h = half;
        let new_total = Float::with_val(bits, &node_sum * &h);
        last_diff = Float::with_val(bits, &new_total - &total).abs();
        total = new_total;

        match converged_at {
            None => {
                if last_diff < tol {
                    converged_at = Some(level);
                }
            }
            // Two extra refinement levels of margin beyond convergence.
            Some(at) if level >= at + 2 => return Ok((total, last_diff, nodes)),
            Some(_) => {}
        }
    }
    if converged_at.is_some() {
        return Ok((total, last_diff, nodes));
    }
    Err(Error::PrecisionNotReached {
        requested: digits,
        estimate: format!("{:e}", last_diff.to_f64()),
        best: Some(Box::new(QuadResult {
            value: BigReal::from_float(total, digits),
            error_estimate: BigReal::from_float(last_diff, digits),
            nodes_used: nodes,
            truncation_point: BigReal::from_float(Float::with_val(64, hi), digits),
        })),
    })
}

fn finish(
    total: Float,
    diff: Float,
    nodes: usize,
    cut: f64,
    digits: u32,
) -> Result<QuadResult> {
    let bits = total.prec();
    let tail = Float::with_val(bits, 10u32).pow_i(-i64::from(digits + GUARD_DIGITS));
    let estimate = Float::with_val(bits, &diff + &tail);
    let target = Float::with_val(bits, 10u32).pow_i(-i64::from(digits));
    let result = QuadResult {
        value: BigReal::from_float(total, digits),
        error_estimate: BigReal::from_float(estimate.clone(), digits),
        nodes_used: nodes,
        truncation_point: BigReal::from_float(Float::with_val(64, cut), digits),
    };
    if estimate >= target {
        return Err(Error::PrecisionNotReached {
            requested: digits,
            estimate: format!("{:e}", estimate.to_f64()),
            best: Some(Box::new(result)),
        });
    }
    Ok(result)
}

/// Real-line quadrature for a custom integrand with the given two-sided
/// decay profile.
pub(crate) fn integrate_real_line(
    f: &mut dyn FnMut(&Float, u32) -> Float,
    left: Tail,
    right: Tail,
    digits: u32,
) -> Result<QuadResult> {
    let target = digits + GUARD_DIGITS;
    let left_cut = left.cut(target);
    let right_cut = right.cut(target);
    let (total, diff, nodes) = trapezoid_refine(f, -left_cut, right_cut, digits, 24)?;
    finish(total, diff, nodes, left_cut.max(right_cut), digits)
}

/// ∫ x^m log(1+e^{ax})/(1+e^{bx}) dx over the real line.
pub fn generalized_integral(m: u32, a: &Rational, b: &Rational, digits: u32) -> Result<QuadResult> {
    let w = WeightEvaluator::new(a.clone(), b.clone())?;
    let af = a.to_f64();
    let bf = b.to_f64();
    let right = Tail {
        rate: bf,
        degree: m + 1,
        ln_scale: (4.0 * af / bf).max(1.0).ln(),
    };
    let left = Tail {
        rate: af,
        degree: m,
        ln_scale: (2.0 / af).max(1.0).ln(),
    };

    let mut f = |t: &Float, bits: u32| -> Float {
        let pw = w.eval(t);
        if m == 0 {
            pw
        } else {
            Float::with_val(bits, t.clone().pow_i(i64::from(m)) * pw)
        }
    };
    integrate_real_line(&mut f, left, right, digits)
}

/// Moment integral I(n) = ∫ t^n log(1+e^t)/(1+e^t) dt over the real line.
pub fn moment_integral(n: u32, digits: u32) -> Result<QuadResult> {
    generalized_integral(n, &Rational::from(1), &Rational::from(1), digits)
}

/// Half-line quadrature ∫_0^∞ f(t) dt for integrands bounded at 0 and
/// eventually below t^degree e^{−rate·t}, via the double-exponential
/// substitution t = exp(u − e^{−u}) followed by trapezoid refinement.
fn half_line(
    f: &mut dyn FnMut(&Float, u32) -> Float,
    tail: Tail,
    digits: u32,
) -> Result<(Float, Float, usize, f64)> {
    let target = digits + GUARD_DIGITS;
    let cut = tail.cut(target);
    let u_hi = cut.ln();
    // For u below u_lo the map compresses double-exponentially:
    // t ≈ exp(−e^{−u}) and dt/du ≈ t e^{−u} are both below the tail target.
    let u_lo = -((f64::from(target) + 4.0) * std::f64::consts::LN_10).ln();

    let mut g = |u: &Float, bits: u32| -> Float {
        let eneg = Float::with_val(bits, (-u.clone()).exp());
        let t = Float::with_val(bits, u - &eneg).exp();
        let jac = Float::with_val(bits, &t * (Float::with_val(bits, 1u32) + &eneg));
        Float::with_val(bits, f(&t, bits) * jac)
    };
    let (total, diff, nodes) = trapezoid_refine(&mut g, u_lo, u_hi, digits, 24)?;
    Ok((total, diff, nodes, cut))
}

/// The four half-line integrals from the decomposition of I(n).
#[derive(Debug, Clone)]
pub struct HalfLinePieces {
    /// ∫_0^∞ t^n log(1+e^t)/(1+e^t) dt
    pub i1: QuadResult,
    /// ∫_0^∞ t^n log(1+e^{−t})/(1+e^{−t}) dt
    pub i2: QuadResult,
    /// ∫_0^∞ t^n log(1+e^{−t})/(1+e^t) dt
    pub i3: QuadResult,
    /// ∫_0^∞ t^{n+1}/(1+e^t) dt
    pub i4: QuadResult,
}

fn pow_n(t: &Float, n: u32, bits: u32) -> Float {
    if n == 0 {
        Float::with_val(bits, 1)
    } else {
        Float::with_val(bits, t.clone().pow_i(i64::from(n)))
    }
}

/// 1/(1+e^t) for t ≥ 0, overflow-free.
fn fermi(t: &Float, bits: u32) -> Float {
    let r = Float::with_val(bits, (-t.clone()).exp());
    Float::with_val(bits, &r / (Float::with_val(bits, 1u32) + &r))
}

pub fn half_line_pieces(n: u32, digits: u32) -> Result<HalfLinePieces> {
    let w = WeightEvaluator::standard();

    let mut f1 = |t: &Float, bits: u32| Float::with_val(bits, pow_n(t, n, bits) * w.eval(t));
    let (v, d, k, c) = half_line(
        &mut f1,
        Tail { rate: 1.0, degree: n + 1, ln_scale: 1.0 },
        digits,
    )?;
    let i1 = finish(v, d, k, c, digits)?;

    let mut f2 = |t: &Float, bits: u32| {
        let lg = Float::with_val(bits, (-t.clone()).exp().ln_1p());
        let den = Float::with_val(bits, (-t.clone()).exp()) + 1u32;
        Float::with_val(bits, pow_n(t, n, bits) * lg / den)
    };
    let (v, d, k, c) = half_line(
        &mut f2,
        Tail { rate: 1.0, degree: n, ln_scale: 1.0 },
        digits,
    )?;
    let i2 = finish(v, d, k, c, digits)?;

    let mut f3 = |t: &Float, bits: u32| {
        let lg = Float::with_val(bits, (-t.clone()).exp().ln_1p());
        Float::with_val(bits, pow_n(t, n, bits) * lg * fermi(t, bits))
    };
    let (v, d, k, c) = half_line(
        &mut f3,
        Tail { rate: 2.0, degree: n, ln_scale: 1.0 },
        digits,
    )?;
    let i3 = finish(v, d, k, c, digits)?;

    let mut f4 = |t: &Float, bits: u32| Float::with_val(bits, pow_n(t, n + 1, bits) * fermi(t, bits));
    let (v, d, k, c) = half_line(
        &mut f4,
        Tail { rate: 1.0, degree: n + 1, ln_scale: 1.0 },
        digits,
    )?;
    let i4 = finish(v, d, k, c, digits)?;

    Ok(HalfLinePieces { i1, i2, i3, i4 })
}

/// ∫_0^1 x^b log^n(x) log(1+x)/(1+x) dx for integer b ≥ −1.
///
/// The substitution x = e^{−t} removes the logarithmic endpoint
/// singularity analytically, mapping to
/// (−1)^n ∫_0^∞ t^n e^{−(b+1)t} log(1+e^{−t})/(1+e^{−t}) dt,
/// whose integrand decays like t^n e^{−(b+2)t}.
pub fn finite_integral_sofo(b: i64, n: u32, digits: u32) -> Result<QuadResult> {
    if b < -1 {
        return Err(Error::domain(
            "finite_integral_sofo",
            format!("exponent b must be ≥ −1, got {b}"),
        ));
    }
    let mut f = |t: &Float, bits: u32| {
        let lg = Float::with_val(bits, (-t.clone()).exp().ln_1p());
        let den = Float::with_val(bits, (-t.clone()).exp()) + 1u32;
        let damp = Float::with_val(bits, t * (-(b + 1))).exp();
        Float::with_val(bits, pow_n(t, n, bits) * damp * lg / den)
    };
    let (v, d, k, c) = half_line(
        &mut f,
        Tail {
            rate: (b + 2) as f64,
            degree: n,
            ln_scale: 1.0,
        },
        digits,
    )?;
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let signed = Float::with_val(v.prec(), &v * sign);
    finish(signed, d, k, c, digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::bits_for;
    use crate::special;

    fn tol(digits: i64, bits: u32) -> Float {
        Float::with_val(bits, 10u32).pow_i(-digits)
    }

    #[test]
    fn weight_at_zero_is_half_log2() {
        let t = BigReal::zero(40);
        let w = weight(&t, &Rational::from(1), &Rational::from(1)).unwrap();
        let want = &special::log2(40) / &BigReal::from_integer_val(2, 50);
        assert!(w.digits_agreed(&want) >= 39);
    }

    #[test]
    fn weight_far_tails_match_asymptotics() {
        let bits = bits_for(40);
        let w = WeightEvaluator::standard();
        // t = +50: w ≈ 50 e^{−50}; relative agreement to ~e^{−50} corrections.
        let t = Float::with_val(bits, 50);
        let v = w.eval(&t);
        let asym = Float::with_val(bits, 50u32) * Float::with_val(bits, -50f64).exp();
        let rel = Float::with_val(bits, &v - &asym).abs() / asym;
        assert!(rel < 0.03, "rel={:e}", rel.to_f64());
        assert!(v > 0);
        // t = −50: w ≈ e^{−50}.
        let t = Float::with_val(bits, -50);
        let v = w.eval(&t);
        let asym = Float::with_val(bits, -50f64).exp();
        let rel = Float::with_val(bits, &v - &asym).abs() / asym;
        assert!(rel < 1e-20, "rel={:e}", rel.to_f64());
    }

    #[test]
    fn weight_matches_naive_formula_at_moderate_argument() {
        let bits = bits_for(40);
        let w = WeightEvaluator::standard();
        for t in [-3.0f64, 0.25, 7.5] {
            let tf = Float::with_val(bits, t);
            let stable = w.eval(&tf);
            let naive = Float::with_val(bits, tf.clone().exp().ln_1p())
                / (Float::with_val(bits, tf.exp_ref()) + 1u32);
            let diff = Float::with_val(bits, &stable - &naive).abs();
            assert!(diff < tol(35, bits), "t={t}");
        }
    }

    #[test]
    fn weight_rejects_nonpositive_parameters() {
        assert!(WeightEvaluator::new(Rational::from(0), Rational::from(1)).is_err());
        assert!(WeightEvaluator::new(Rational::from(1), Rational::from(-2)).is_err());
    }

    #[test]
    fn moment_zero_is_zeta2() {
        let q = moment_integral(0, 30).unwrap();
        let z2 = special::zeta_reference(2, 35).unwrap();
        assert!(q.value.digits_agreed(&z2) >= 29, "value {}", q.value);
        let target = BigReal::from_float(tol(30, bits_for(40)), 40);
        assert!(q.error_estimate < target);
        assert!(q.nodes_used > 0);
    }

    #[test]
    fn moment_one_is_zeta3() {
        let q = moment_integral(1, 30).unwrap();
        let z3 = special::zeta_reference(3, 35).unwrap();
        assert!(q.value.digits_agreed(&z3) >= 29);
    }

    #[test]
    fn moment_two_is_seven_zeta4() {
        let q = moment_integral(2, 30).unwrap();
        let z4 = special::zeta_reference(4, 35).unwrap();
        let want = &BigReal::from_integer_val(7, 40) * &z4;
        assert!(q.value.digits_agreed(&want) >= 29);
    }

    #[test]
    fn sofo_elementary_case() {
        // ∫_0^1 log(1+x)/(1+x) dx = (log 2)²/2.
        let q = finite_integral_sofo(0, 0, 25).unwrap();
        let l2 = special::log2(35);
        let want = &(&l2 * &l2) / &BigReal::from_integer_val(2, 40);
        assert!(q.value.digits_agreed(&want) >= 24, "value {}", q.value);
    }

    #[test]
    fn sofo_rejects_below_minus_one() {
        assert!(finite_integral_sofo(-2, 1, 20).is_err());
    }

    #[test]
    fn half_line_i4_at_zero_is_eta2() {
        // I₄(0) = ∫ t/(1+e^t) = η(2) = π²/12.
        let p = half_line_pieces(0, 30).unwrap();
        let bits = bits_for(40);
        let want = BigReal::from_float(
            Float::with_val(bits, special::pi_float(bits).square_ref()) / 12u32,
            35,
        );
        assert!(p.i4.value.digits_agreed(&want) >= 29, "i4 {}", p.i4.value);
    }

    #[test]
    fn half_line_recombination() {
        // I(n) = I₁ + (−1)^n I₂ and I₁ = I₃ + I₄ for n = 0..3.
        for n in 0..=3u32 {
            let p = half_line_pieces(n, 30).unwrap();
            let full = moment_integral(n, 30).unwrap();
            let signed_i2 = if n % 2 == 0 {
                p.i2.value.clone()
            } else {
                -&p.i2.value
            };
            let recombined = &p.i1.value + &signed_i2;
            assert!(
                full.value.digits_agreed(&recombined) >= 26,
                "n={n} full={} recombined={}",
                full.value,
                recombined
            );
            let split = &p.i3.value + &p.i4.value;
            assert!(p.i1.value.digits_agreed(&split) >= 26, "n={n}");
        }
    }

    #[test]
    fn truncation_points_are_sound() {
        // |t^n w(t)| < 10^{−(digits+guard)} at the cut, both ends.
        for (n, digits) in [(0u32, 30u32), (3, 30), (9, 40)] {
            let q = moment_integral(n, digits).unwrap();
            let bits = bits_for(digits + GUARD_DIGITS + 10);
            let cut = Float::with_val(bits, q.truncation_point.as_float());
            let w = WeightEvaluator::standard();
            let at_right = pow_n(&cut, n, bits) * w.eval(&cut);
            let neg = Float::with_val(bits, -&cut);
            let at_left = Float::with_val(bits, pow_n(&neg, n, bits).abs() * w.eval(&neg));
            let bound = tol(i64::from(digits + GUARD_DIGITS), bits);
            assert!(at_right < bound, "right end n={n}");
            assert!(at_left < bound, "left end n={n}");
        }
    }

    #[test]
    fn precision_scaling() {
        // Recomputing at P+10 moves the value by less than 10^{−P}.
        let lo = moment_integral(2, 25).unwrap();
        let hi = moment_integral(2, 35).unwrap();
        let diff = (&lo.value - &hi.value).abs();
        assert!(diff < BigReal::from_float(tol(25, bits_for(40)), 40));
    }

    #[test]
    fn refinement_differences_shrink_monotonically() {
        // The successive-level error estimates must not increase.
        let mut history = Vec::new();
        let w = WeightEvaluator::standard();
        let f = |t: &Float, _bits: u32| w.eval(t);
        let bits = working_bits(25) + 24;
        let tolerance = Float::with_val(bits, 10u32).pow_i(-27);
        // A hand-rolled copy of the refinement loop that records diffs.
        let lo = -70.0;
        let hi = 70.0;
        let span = hi - lo;
        let mut m: usize = (span * 2.0) as usize;
        let lo_f = Float::with_val(bits, lo);
        let mut node_sum = Float::with_val(bits, 0);
        for j in 0..=m {
            let t = Float::with_val(bits, &lo_f + Float::with_val(bits, j as f64 * span / m as f64));
            let v = f(&t, bits);
            node_sum += if j == 0 || j == m { v / 2u32 } else { v };
        }
        let mut h = Float::with_val(bits, span / m as f64);
        let mut total = Float::with_val(bits, &node_sum * &h);
        for _ in 0..6 {
            let mut mid = Float::with_val(bits, 0);
            let half = Float::with_val(bits, &h / 2u32);
            for j in 0..m {
                let t = Float::with_val(
                    bits,
                    &lo_f + Float::with_val(bits, j as f64 * span / m as f64) + &half,
                );
                mid += f(&t, bits);
            }
            node_sum += mid;
            m *= 2;
            h /= 2u32;
            let new_total = Float::with_val(bits, &node_sum * &h);
            history.push(Float::with_val(bits, &new_total - &total).abs());
            total = new_total;
            if *history.last().unwrap() < tolerance {
                break;
            }
        }
        for pair in history.windows(2) {
            assert!(pair[1] <= pair[0], "diffs must not increase: {history:?}");
        }
    }
}
