//! The zeta identities as executable operations: the tangent-root
//! polynomial family, the exact π-power matrix inverse, the Bernoulli
//! lemmas, symbolic moment expansion, and the four quadrature routes to
//! zeta values.

use rug::{Float, Integer, Rational};

use crate::bigreal::{BigReal, PowI};
use crate::error::{Error, Result};
use crate::euler_sums::alt_euler_sum_closed;
use crate::numutil::{binomial, factorial, pow2, rat};
use crate::polynomial::QPolynomial;
use crate::precision::{bits_for, working_bits, GUARD_DIGITS};
use crate::quadrature::{integrate_real_line, moment_integral, Tail, WeightEvaluator};
use crate::special;
use crate::zeta_expr::{PiScalar, ZetaExpr};

/// Lower-triangular square matrix over exact π-power scalars.
#[derive(Debug, Clone)]
pub struct PiMatrix {
    size: usize,
    entries: Vec<Vec<PiScalar>>, // row-major, full square
}

impl PiMatrix {
    fn build(size: usize, f: impl Fn(usize, usize) -> PiScalar) -> PiMatrix {
        let entries = (1..=size)
            .map(|j| (1..=size).map(|k| if k <= j { f(j, k) } else { PiScalar::zero() }).collect())
            .collect();
        PiMatrix { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Entry at 1-based (row, column).
    pub fn entry(&self, j: usize, k: usize) -> &PiScalar {
        &self.entries[j - 1][k - 1]
    }
}

/// The matrix A_n of the odd-moment linear system:
/// a_{j,k} = (2j−1)! (2 − 2^{2−2j+2k}) ζ(2j−2k), with ζ(0) = −1/2 making
/// the diagonal exactly (2j−1)!.
pub fn matrix_a(n: usize) -> PiMatrix {
    PiMatrix::build(n, |j, k| {
        let fact = Rational::from(factorial(2 * j as u32 - 1));
        let two_part = Rational::from(2) - pow2(2 - 2 * j as i64 + 2 * k as i64);
        if j == k {
            // ζ(0) = −1/2 absorbed: (2 − 4)(−1/2) = 1.
            PiScalar::new(fact, 0)
        } else {
            let zc = special::zeta_even_coeff(2 * (j - k) as u32);
            PiScalar::new(fact * two_part * zc, 2 * (j - k) as u32)
        }
    })
}

/// The claimed inverse: b_{j,k} = (−1)^{j+k} π^{2(j−k)} / ((2j−2k+1)! (2k−1)!).
pub fn matrix_b(n: usize) -> PiMatrix {
    PiMatrix::build(n, |j, k| {
        let sign = if (j + k) % 2 == 0 { 1 } else { -1 };
        let den = Rational::from(factorial((2 * (j - k) + 1) as u32))
            * Rational::from(factorial(2 * k as u32 - 1));
        PiScalar::new(Rational::from(sign) / den, 2 * (j - k) as u32)
    })
}

/// Exact check that A(n)·B(n) is the identity matrix, in pure
/// rational-times-π-power arithmetic with zero tolerance.
pub fn verify_inverse(n: usize) -> bool {
    let a = matrix_a(n);
    let b = matrix_b(n);
    // Both factors are lower triangular, so only k ≤ j can be nonzero.
    for j in 1..=n {
        for k in 1..=j {
            let mut acc = PiScalar::zero();
            for l in k..=j {
                let prod = a.entry(j, l).mul(b.entry(l, k));
                match acc.checked_add(&prod) {
                    Some(s) => acc = s,
                    None => return false,
                }
            }
            let expected = if j == k { PiScalar::one() } else { PiScalar::zero() };
            if !acc.eq_value(&expected) {
                return false;
            }
        }
    }
    true
}

/// Q_n(t) = ((−1)^n / 2n) Σ_{k=1}^n (−1)^k C(2n, 2k−1) t^{2k−1}:
/// monic, odd, of degree 2n−1.
pub fn q_polynomial(n: u32) -> Result<QPolynomial> {
    if n < 1 {
        return Err(Error::domain("q_polynomial", "need n ≥ 1"));
    }
    let mut coeffs = vec![Rational::new(); 2 * n as usize];
    let outer = rat(if n % 2 == 0 { 1 } else { -1 }, 2 * i64::from(n));
    for k in 1..=n {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let c = Rational::from(binomial(2 * n, 2 * k - 1)) * Rational::from(sign);
        coeffs[(2 * k - 1) as usize] = c * &outer;
    }
    Ok(QPolynomial::new(coeffs))
}

/// Exact Gaussian rational a + b·i, with i² = −1 handled formally.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct GaussRational {
    re: Rational,
    im: Rational,
}

impl GaussRational {
    fn new(re: Rational, im: Rational) -> Self {
        GaussRational { re, im }
    }

    fn mul(&self, other: &Self) -> Self {
        GaussRational::new(
            Rational::from(&self.re * &other.re) - Rational::from(&self.im * &other.im),
            Rational::from(&self.re * &other.im) + Rational::from(&self.im * &other.re),
        )
    }

    /// i^j for j ≥ 0.
    fn i_power(j: u32) -> Self {
        match j % 4 {
            0 => GaussRational::new(rat(1, 1), rat(0, 1)),
            1 => GaussRational::new(rat(0, 1), rat(1, 1)),
            2 => GaussRational::new(rat(-1, 1), rat(0, 1)),
            _ => GaussRational::new(rat(0, 1), rat(-1, 1)),
        }
    }
}

/// Expands ((−1)^n i / 4n) [(1+it)^{2n} − (1−it)^{2n}] over Gaussian
/// rationals and confirms exact polynomial equality with Q_n.
pub fn q_identity_check(n: u32) -> Result<bool> {
    if n < 1 {
        return Err(Error::domain("q_identity_check", "need n ≥ 1"));
    }
    let deg = 2 * n as usize;
    let mut diff = vec![GaussRational::default(); deg + 1];
    for j in 0..=2 * n {
        let c = Rational::from(binomial(2 * n, j));
        let ipow = GaussRational::i_power(j);
        // (+i)^j − (−i)^j = i^j (1 − (−1)^j)
        let minus_ipow = if j % 2 == 0 {
            ipow.clone()
        } else {
            GaussRational::new(-ipow.re.clone(), -ipow.im.clone())
        };
        let coeff = GaussRational::new(
            Rational::from(&ipow.re - &minus_ipow.re) * &c,
            Rational::from(&ipow.im - &minus_ipow.im) * &c,
        );
        diff[j as usize] = coeff;
    }
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let prefactor = GaussRational::new(rat(0, 1), rat(sign, 4 * i64::from(n)));
    let expanded: Vec<GaussRational> = diff.iter().map(|c| prefactor.mul(c)).collect();

    let q = q_polynomial(n)?;
    for (j, c) in expanded.iter().enumerate() {
        if c.im != 0 {
            return Ok(false);
        }
        if c.re != q.coeff(j) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The 2n−1 roots tan(kπ/2n), k = −(n−1)..(n−1), ascending.
///
/// The lemma gives the roots in closed form, so they are computed from
/// the tangent directly; the polynomial itself is used only for residual
/// verification.
pub fn q_roots(n: u32, digits: u32) -> Result<Vec<BigReal>> {
    if n < 1 {
        return Err(Error::domain("q_roots", "need n ≥ 1"));
    }
    let bits = working_bits(digits);
    let pi = special::pi_float(bits);
    let mut out = Vec::with_capacity(2 * n as usize - 1);
    for k in -(n as i64 - 1)..=(n as i64 - 1) {
        let angle = Float::with_val(bits, &pi * k) / (2 * n);
        out.push(BigReal::from_float(angle.tan(), digits));
    }
    Ok(out)
}

/// Largest |Q_n(root)| over the closed-form roots.
///
/// Evaluating a degree-(2n−1) polynomial with binomial-scale coefficients
/// at roots up to tan(π/2 − π/2n) is badly conditioned, so the residual
/// is formed with thirty extra digits internally; the returned value is
/// then meaningful at the requested precision.
pub fn q_root_residual_max(n: u32, digits: u32) -> Result<BigReal> {
    let q = q_polynomial(n)?;
    let wd = digits + 30;
    let bits = bits_for(wd + GUARD_DIGITS);
    let pi = special::pi_float(bits);
    let mut max = Float::with_val(bits, 0);
    for k in -(n as i64 - 1)..=(n as i64 - 1) {
        let angle = Float::with_val(bits, &pi * k) / (2 * n);
        let root = angle.tan();
        let residual = q.eval_float(&root).abs();
        if residual > max {
            max = residual;
        }
    }
    Ok(BigReal::from_float(max, digits))
}

/// Exact verification of the two Bernoulli-number lemmas:
/// (a) 2 Σ_{i=0}^m C(2m+1, 2i) B_{2i} = (2m+1) + δ_{m,0}
/// (b) Σ_{i=0}^m (2^{2i} − 2) C(2m+1, 2i) B_{2i} = −δ_{m,0}
pub fn bernoulli_lemma_check(m: u32) -> (bool, bool) {
    let mut sum_a = Rational::new();
    let mut sum_b = Rational::new();
    for i in 0..=m {
        let c = Rational::from(binomial(2 * m + 1, 2 * i)) * special::bernoulli_number(2 * i);
        sum_a += Rational::from(&c * &Rational::from(2));
        sum_b += (pow2(2 * i64::from(i)) - Rational::from(2)) * c;
    }
    let delta = if m == 0 { 1 } else { 0 };
    let ok_a = sum_a == Rational::from(2 * m + 1) + Rational::from(delta);
    let ok_b = sum_b == -delta;
    (ok_a, ok_b)
}

/// Exact closed form of the moment integral I(n) as a zeta expression:
///
/// * even n = 2k−2:  I(n) = k (2 − 2^{2−2k}) (2k−2)! ζ(2k);
/// * odd n:          I(n) = n! Σ_{ℓ=0}^{(n−1)/2} (2 − 2^{2−2ℓ}) ζ(n+2−2ℓ) ζ(2ℓ),
///   with the ℓ = 0 term carrying ζ(0) = −1/2.
pub fn moment_zeta_expr(n: u32) -> ZetaExpr {
    if n % 2 == 0 {
        let k = n / 2 + 1;
        let coeff = Rational::from(k)
            * (Rational::from(2) - pow2(2 - 2 * i64::from(k)))
            * Rational::from(factorial(2 * k - 2));
        ZetaExpr::zeta(2 * k).expect("even ≥ 2").scale(&coeff)
    } else {
        let fact = Rational::from(factorial(n));
        let mut expr = ZetaExpr::zero();
        for l in 0..=(n - 1) / 2 {
            let c = Rational::from(2) - pow2(2 - 2 * i64::from(l));
            let term = ZetaExpr::zeta(n + 2 - 2 * l)
                .expect("odd ≥ 3")
                .mul(&ZetaExpr::zeta(2 * l).expect("even or zero"))
                .scale(&Rational::from(&c * &fact));
            expr = expr.add(&term);
        }
        expr
    }
}

fn format_coeff(c: &Rational) -> String {
    if *c == 1 {
        String::new()
    } else {
        c.to_string()
    }
}

fn zeta_product(args: &[u32]) -> String {
    args.iter().map(|a| format!("ζ({a})")).collect()
}

/// Renders a moment expression in the ζ-product basis used by the
/// reference table: even π powers become even zetas, terms are ordered by
/// descending leading odd argument, and with two or more terms the
/// greatest common factor of the coefficients is pulled out in front of
/// a bracket, e.g. `6[ζ(5) + ζ(2)ζ(3)]`.
pub fn render_zeta_basis(expr: &ZetaExpr) -> String {
    let rows = expr.zeta_basis_terms();
    if rows.is_empty() {
        return "0".into();
    }
    if rows.len() == 1 {
        let (c, args, _) = &rows[0];
        return format!("{}{}", format_coeff(c), zeta_product(args));
    }
    // Greatest common factor of the coefficients: gcd of numerators over
    // lcm of denominators.
    let mut num_gcd = Integer::new();
    let mut den_lcm = Integer::from(1);
    for (c, _, _) in &rows {
        num_gcd = num_gcd.gcd(&c.numer().clone().abs());
        den_lcm = den_lcm.lcm(c.denom());
    }
    let common = Rational::from((num_gcd, den_lcm));
    let inner: Vec<String> = rows
        .iter()
        .map(|(c, args, _)| {
            let reduced = Rational::from(c / &common);
            format!("{}{}", format_coeff(&reduced), zeta_product(args))
        })
        .collect();
    if common == 1 {
        inner.join(" + ")
    } else {
        format!("{}[{}]", common, inner.join(" + "))
    }
}

/// The reference table rows (n, rendered closed form) for n = 0..max_n.
pub fn table_reproduce(max_n: u32) -> Vec<(u32, String)> {
    (0..=max_n)
        .map(|n| (n, render_zeta_basis(&moment_zeta_expr(n))))
        .collect()
}

/// ζ(2n) from the even-moment representation:
/// ζ(2n) = I(2n−2) / [n (2 − 2^{2−2n}) Γ(2n−1)], with I by quadrature.
pub fn zeta_via_thm1(n: u32, digits: u32) -> Result<BigReal> {
    if n < 1 {
        return Err(Error::domain("zeta_via_thm1", "need n ≥ 1"));
    }
    let q = moment_integral(2 * n - 2, digits)?;
    let den = Rational::from(n)
        * (Rational::from(2) - pow2(2 - 2 * i64::from(n)))
        * Rational::from(factorial(2 * n - 2));
    let bits = working_bits(digits);
    let v = Float::with_val(bits, q.value.as_float()) / Float::with_val(bits, &den);
    Ok(BigReal::from_float(v, digits))
}

/// ζ(2n+1) from the odd-moment representation
///
/// ```text
/// ζ(2n+1) = 2^{2n+1}/((2n+1)(2^{2n}−1)) · h(2n)
///         + 2^{2n}/((2n+1) Γ(2n) (2^{2n}−1)) · I(2n−1)
/// ```
///
/// with h(2n) taken from its closed form and I(2n−1) by quadrature.
pub fn zeta_via_thm2(n: u32, digits: u32) -> Result<BigReal> {
    if n < 1 {
        return Err(Error::domain("zeta_via_thm2", "need n ≥ 1"));
    }
    let wd = digits + 5;
    let h = alt_euler_sum_closed(n)?.eval(wd)?;
    let q = moment_integral(2 * n - 1, digits)?;
    let two_2n = pow2(2 * i64::from(n));
    let denom = Rational::from(2 * n + 1) * (two_2n.clone() - Rational::from(1));
    let c_h = two_2n.clone() * Rational::from(2) / denom.clone();
    let c_i = two_2n / (denom * Rational::from(factorial(2 * n - 1)));
    let bits = working_bits(digits);
    let v = Float::with_val(bits, &c_h) * h.as_float()
        + Float::with_val(bits, &c_i) * q.value.as_float();
    Ok(BigReal::from_float(v, digits))
}

/// ζ(s) for any s ≥ 2 from the general representation. The harmonic-sum
/// term carries the factor ((−1)^s − 1), which vanishes identically for
/// even s — the h evaluation is skipped entirely, not rounded away.
pub fn zeta_via_thm3(s: u32, digits: u32) -> Result<BigReal> {
    if s < 2 {
        return Err(Error::domain("zeta_via_thm3", "need s ≥ 2"));
    }
    let q = moment_integral(s - 2, digits)?;
    let one_minus = Rational::from(1) - pow2(1 - i64::from(s));
    let bits = working_bits(digits);
    let mut v = Float::with_val(bits, q.value.as_float())
        / Float::with_val(bits, &(Rational::from(s) * &one_minus * Rational::from(factorial(s - 2))));
    if s % 2 == 1 {
        let wd = digits + 5;
        let h = alt_euler_sum_closed((s - 1) / 2)?.eval(wd)?;
        let c_h = Rational::from(2) / (Rational::from(s) * one_minus);
        v += Float::with_val(bits, &c_h) * h.as_float();
    }
    Ok(BigReal::from_float(v, digits))
}

/// Coefficients of the Theorem-4 integrand polynomial
/// π^{2n−1} Q_n(x/π) / (2n−1)!, ascending in x; even π powers only.
pub fn thm4_integrand_poly(n: u32) -> Result<Vec<PiScalar>> {
    let q = q_polynomial(n)?;
    let fact = Rational::from(factorial(2 * n - 1));
    let mut out = Vec::with_capacity(2 * n as usize);
    for j in 0..2 * n {
        let c = Rational::from(&q.coeff(j as usize) / &fact);
        let pi_exp = 2 * n - 1 - j; // even exactly when the coefficient is nonzero
        if c == 0 {
            out.push(PiScalar::zero());
        } else {
            out.push(PiScalar::new(c, pi_exp));
        }
    }
    Ok(out)
}

/// Both routes to ζ(2n+1) through Theorem 4, with the combined quadrature
/// error estimate their difference has to respect.
#[derive(Debug, Clone)]
pub struct Thm4Routes {
    /// Single quadrature of π^{2n−1}/(2n−1)! · Q_n(x/π) · w(x).
    pub by_q_integrand: BigReal,
    /// Linear combination Σ_k b_{n,k} I(2k−1) of odd moments.
    pub by_moments: BigReal,
    pub combined_error: BigReal,
}

pub fn zeta_via_thm4_routes(n: u32, digits: u32) -> Result<Thm4Routes> {
    if n < 1 {
        return Err(Error::domain("zeta_via_thm4", "need n ≥ 1"));
    }
    let bits = working_bits(digits) + 24;
    let w = WeightEvaluator::standard();

    // Route (i): quadrature of the scaled polynomial against the weight.
    let q = q_polynomial(n)?;
    let pi = special::pi_float(bits);
    // Horner coefficients of Q_n(x/π)/(2n−1)! · π^{2n−1} = Σ q_j π^{2n−1−j} x^j / (2n−1)!.
    let fact = Rational::from(factorial(2 * n - 1));
    let float_coeffs: Vec<Float> = (0..2 * n)
        .map(|j| {
            let c = Rational::from(&q.coeff(j as usize) / &fact);
            Float::with_val(bits, &c) * pi.clone().pow_i(i64::from(2 * n - 1 - j))
        })
        .collect();
    let mut sum_abs = 0.0f64;
    for c in &float_coeffs {
        sum_abs += c.to_f64().abs();
    }
    let mut f = |t: &Float, eval_bits: u32| -> Float {
        let mut acc = Float::with_val(eval_bits, 0);
        for c in float_coeffs.iter().rev() {
            acc *= t;
            acc += c;
        }
        Float::with_val(eval_bits, acc * w.eval(t))
    };
    let profile = |side_degree: u32| Tail {
        rate: 1.0,
        degree: side_degree,
        ln_scale: (4.0 * sum_abs).max(1.0).ln(),
    };
    let quad = integrate_real_line(&mut f, profile(2 * n - 1), profile(2 * n), digits)?;

    // Route (ii): bottom row of the inverse matrix against the odd moments.
    // Each moment value is rounded to the claimed precision, and the
    // combination cancels several orders of magnitude, so the combined
    // error must carry a representation-rounding slack per term.
    let rep_shift = bits_for(digits) - 2;
    let mut acc = Float::with_val(bits, 0);
    let mut err_acc = Float::with_val(bits, quad.error_estimate.as_float())
        + (Float::with_val(bits, quad.value.as_float().abs_ref()) >> rep_shift);
    for k in 1..=n {
        let sign = if (n + k) % 2 == 0 { 1 } else { -1 };
        let den = Rational::from(factorial(2 * (n - k) + 1)) * Rational::from(factorial(2 * k - 1));
        let b = Float::with_val(bits, &pi).pow_i(2 * (i64::from(n) - i64::from(k)))
            * Float::with_val(bits, Rational::from(sign) / den);
        let m = moment_integral(2 * k - 1, digits)?;
        let term = Float::with_val(bits, &b * m.value.as_float());
        err_acc += Float::with_val(bits, term.abs_ref()) >> rep_shift;
        err_acc += Float::with_val(bits, b.abs_ref()) * m.error_estimate.as_float();
        acc += term;
    }

    let by_q = BigReal::from_float(Float::with_val(bits, quad.value.as_float()), digits);
    let by_m = BigReal::from_float(acc, digits);
    let combined = BigReal::from_float(err_acc, digits);
    let diff = (&by_q - &by_m).abs();
    if diff > combined {
        return Err(Error::PrecisionNotReached {
            requested: digits,
            estimate: format!("route disagreement {diff}"),
            best: Some(Box::new(quad)),
        });
    }
    Ok(Thm4Routes {
        by_q_integrand: by_q,
        by_moments: by_m,
        combined_error: combined,
    })
}

/// ζ(2n+1) = π^{2n−1}/(2n−1)! ∫ Q_n(x/π) w(x) dx. The returned value is
/// the direct quadrature route; internally both routes are computed and
/// must agree within their combined error estimates.
pub fn zeta_via_thm4(n: u32, digits: u32) -> Result<BigReal> {
    Ok(zeta_via_thm4_routes(n, digits)?.by_q_integrand)
}
