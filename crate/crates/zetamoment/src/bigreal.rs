//! Arbitrary-precision real numbers tagged with their decimal precision.
//!
//! A [`BigReal`] is an MPFR float together with the number of significant
//! decimal digits it was computed to. Arithmetic propagates the *minimum*
//! precision of the operands: combining a 50-digit value with a 30-digit
//! value cannot honestly claim more than 30 digits.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use rug::float::Round;
use rug::ops::DivAssignRound;
use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::precision::bits_for;

#[derive(Debug, Clone)]
pub struct BigReal {
    value: Float,
    digits: u32,
}

impl BigReal {
    /// Wraps an already-computed float, claiming `digits` decimal digits.
    /// The float is rounded to the binary precision matching that claim.
    pub fn from_float(value: Float, digits: u32) -> Self {
        let mut v = value;
        v.set_prec_round(bits_for(digits), Round::Nearest);
        BigReal { value: v, digits }
    }

    /// Exact conversion of a rational, correct to the target precision.
    pub fn from_rational(r: &Rational, digits: u32) -> Self {
        BigReal {
            value: Float::with_val(bits_for(digits), r),
            digits,
        }
    }

    pub fn from_integer_val(n: i64, digits: u32) -> Self {
        BigReal {
            value: Float::with_val(bits_for(digits), n),
            digits,
        }
    }

    pub fn zero(digits: u32) -> Self {
        BigReal {
            value: Float::with_val(bits_for(digits), 0),
            digits,
        }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn as_float(&self) -> &Float {
        &self.value
    }

    pub fn into_float(self) -> Float {
        self.value
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn abs(&self) -> BigReal {
        BigReal {
            value: Float::with_val(self.value.prec(), self.value.abs_ref()),
            digits: self.digits,
        }
    }

    /// Number of decimal digits to which `self` and `other` agree,
    /// relative to the larger magnitude (with a floor of 1 so values near
    /// zero are compared absolutely). Exact float equality reports the
    /// smaller of the two precision tags.
    pub fn digits_agreed(&self, other: &BigReal) -> i64 {
        let prec = self.value.prec().max(other.value.prec());
        let diff = Float::with_val(prec, &self.value - &other.value).abs();
        if diff.is_zero() {
            return i64::from(self.digits.min(other.digits));
        }
        let mut scale = Float::with_val(prec, self.value.abs_ref());
        let other_abs = Float::with_val(prec, other.value.abs_ref());
        if other_abs > scale {
            scale = other_abs;
        }
        if scale < 1u32 {
            scale = Float::with_val(prec, 1);
        }
        let rel = diff / scale;
        let agreed = -rel.log10().to_f64();
        let cap = i64::from(self.digits.min(other.digits));
        (agreed.floor() as i64).min(cap)
    }

    /// True when |self − other| < 10^(−digits).
    pub fn agrees_abs(&self, other: &BigReal, digits: u32) -> bool {
        let prec = self.value.prec().max(other.value.prec());
        let diff = Float::with_val(prec, &self.value - &other.value).abs();
        let tol = Float::with_val(prec, 10).pow_i(-(digits as i64));
        diff < tol
    }

    fn binop(&self, other: &BigReal, f: impl FnOnce(&Float, &Float, u32) -> Float) -> BigReal {
        let digits = self.digits.min(other.digits);
        let bits = bits_for(digits);
        BigReal {
            value: f(&self.value, &other.value, bits),
            digits,
        }
    }
}

/// 10^e at the given binary precision; used for tolerances.
pub(crate) trait PowI {
    fn pow_i(self, e: i64) -> Float;
}

impl PowI for Float {
    fn pow_i(self, e: i64) -> Float {
        use rug::ops::Pow;
        let prec = self.prec();
        Float::with_val(prec, (&self).pow(e))
    }
}

impl Add for &BigReal {
    type Output = BigReal;
    fn add(self, rhs: &BigReal) -> BigReal {
        self.binop(rhs, |a, b, bits| Float::with_val(bits, a + b))
    }
}

impl Sub for &BigReal {
    type Output = BigReal;
    fn sub(self, rhs: &BigReal) -> BigReal {
        self.binop(rhs, |a, b, bits| Float::with_val(bits, a - b))
    }
}

impl Mul for &BigReal {
    type Output = BigReal;
    fn mul(self, rhs: &BigReal) -> BigReal {
        self.binop(rhs, |a, b, bits| Float::with_val(bits, a * b))
    }
}

impl Div for &BigReal {
    type Output = BigReal;
    fn div(self, rhs: &BigReal) -> BigReal {
        self.binop(rhs, |a, b, bits| {
            let mut q = Float::with_val(bits, a);
            q.div_assign_round(b, Round::Nearest);
            q
        })
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal {
            value: Float::with_val(self.value.prec(), -&self.value),
            digits: self.digits,
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                $trait::$method(&self, &rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        -&self
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

/// Serialization: decimal scientific mantissa carrying the tagged number
/// of significant digits, then `@` and the precision annotation,
/// e.g. `1.644934067e0@10`.
impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.*e}@{}", self.digits as usize, self.value, self.digits)
    }
}

impl FromStr for BigReal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (num, digits) = s
            .rsplit_once('@')
            .ok_or_else(|| Error::Parse(format!("missing precision annotation in {s:?}")))?;
        let digits: u32 = digits
            .parse()
            .map_err(|e| Error::Parse(format!("bad precision annotation in {s:?}: {e}")))?;
        if digits == 0 {
            return Err(Error::Parse("precision annotation must be positive".into()));
        }
        let parsed = Float::parse(num).map_err(|e| Error::Parse(format!("bad number {num:?}: {e}")))?;
        Ok(BigReal {
            value: Float::with_val(bits_for(digits), parsed),
            digits,
        })
    }
}
