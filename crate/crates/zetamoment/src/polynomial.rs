//! Univariate polynomials with exact rational coefficients.

use std::fmt;

use rug::{Float, Rational};

/// Polynomial over ℚ, coefficients stored in ascending degree order.
///
/// Canonical form: no trailing zero coefficient. The zero polynomial is
/// the empty coefficient list and its degree is `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPolynomial {
    coeffs: Vec<Rational>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPolynomial::new(vec![Rational::from(1)])
    }

    /// Builds from ascending-order coefficients, trimming trailing zeros.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    /// The monomial c·x^k.
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c == 0 {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![Rational::new(); k + 1];
        coeffs[k] = c;
        QPolynomial { coeffs }
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading coefficient is one.
    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == 1)
    }

    /// Only odd powers of x appear.
    pub fn is_odd_polynomial(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| k % 2 == 1 || *c == 0)
    }

    /// Exact evaluation at a rational point (Horner).
    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// Evaluation at a float point, carried out at the argument's precision.
    pub fn eval_float(&self, x: &Float) -> Float {
        let prec = x.prec();
        let mut acc = Float::with_val(prec, 0);
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += Float::with_val(prec, c);
        }
        acc
    }

    pub fn add(&self, other: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        QPolynomial::new(out)
    }

    pub fn sub(&self, other: &QPolynomial) -> QPolynomial {
        self.add(&other.scale(&Rational::from(-1)))
    }

    pub fn mul(&self, other: &QPolynomial) -> QPolynomial {
        if self.is_zero() || other.is_zero() {
            return QPolynomial::zero();
        }
        let mut out = vec![Rational::new(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += Rational::from(a * b);
            }
        }
        QPolynomial::new(out)
    }

    pub fn scale(&self, c: &Rational) -> QPolynomial {
        QPolynomial::new(self.coeffs.iter().map(|x| Rational::from(x * c)).collect())
    }

    /// p(a·x + b), exactly.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> QPolynomial {
        // Horner over the substituted argument.
        let arg = QPolynomial::new(vec![b.clone(), a.clone()]);
        let mut acc = QPolynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&arg);
            acc = acc.add(&QPolynomial::new(vec![c.clone()]));
        }
        acc
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let mag = Rational::from(c.abs_ref());
            if first {
                if *c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if *c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
