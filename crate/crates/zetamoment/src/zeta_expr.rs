//! Exact ℚ-linear combinations of monomials in π, odd zeta values,
//! log 2 and the Catalan constant.
//!
//! Even zeta values are reduced to rational multiples of π powers the
//! moment they are constructed, so equality of expressions is decidable
//! and exact. Odd zetas ζ(3), ζ(5), … stay atomic, as do log 2 and G.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rug::{Float, Integer, Rational};

use crate::bigreal::{BigReal, PowI};
use crate::error::{Error, Result};
use crate::precision::{working_bits, GUARD_DIGITS};
use crate::special;

/// Exact value coeff · π^(2m). The exponent is stored as m, so only even
/// powers of π are representable; the matrix-inverse verification relies
/// on that structural guarantee.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiScalar {
    coeff: Rational,
    half_exp: u32,
}

impl PiScalar {
    /// Builds coeff · π^pi_exponent. The exponent must be even.
    pub fn new(coeff: Rational, pi_exponent: u32) -> PiScalar {
        assert!(pi_exponent % 2 == 0, "PiScalar exponent must be even");
        PiScalar {
            coeff,
            half_exp: pi_exponent / 2,
        }
    }

    pub fn zero() -> PiScalar {
        PiScalar::new(Rational::new(), 0)
    }

    pub fn one() -> PiScalar {
        PiScalar::new(Rational::from(1), 0)
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn pi_exponent(&self) -> u32 {
        2 * self.half_exp
    }

    pub fn is_zero(&self) -> bool {
        self.coeff == 0
    }

    /// Addition is defined only between matching π powers (or zeros).
    pub fn checked_add(&self, other: &PiScalar) -> Option<PiScalar> {
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        if self.half_exp != other.half_exp {
            return None;
        }
        Some(PiScalar {
            coeff: Rational::from(&self.coeff + &other.coeff),
            half_exp: self.half_exp,
        })
    }

    pub fn mul(&self, other: &PiScalar) -> PiScalar {
        PiScalar {
            coeff: Rational::from(&self.coeff * &other.coeff),
            half_exp: self.half_exp + other.half_exp,
        }
    }

    /// Structural equality, with all zeros identified.
    pub fn eq_value(&self, other: &PiScalar) -> bool {
        (self.is_zero() && other.is_zero())
            || (self.coeff == other.coeff && self.half_exp == other.half_exp)
    }

    pub fn to_expr(&self) -> ZetaExpr {
        ZetaExpr::pi_power(self.coeff.clone(), self.pi_exponent())
    }

    pub fn eval(&self, digits: u32) -> BigReal {
        let bits = working_bits(digits);
        let v = special::pi_float(bits).pow_i(i64::from(self.pi_exponent()))
            * Float::with_val(bits, &self.coeff);
        BigReal::from_float(v, digits)
    }
}

impl fmt::Display for PiScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.half_exp == 0 || self.is_zero() {
            write!(f, "{}", self.coeff)
        } else if self.pi_exponent() == 2 {
            write!(f, "{}*pi^2", self.coeff)
        } else {
            write!(f, "{}*pi^{}", self.coeff, self.pi_exponent())
        }
    }
}

/// One basis product: a π power, a multiset of odd zeta arguments, and
/// powers of log 2 and of the Catalan constant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pi_exp: u32,
    odd_zetas: Vec<u32>, // ascending, each odd and ≥ 3
    log2_exp: u32,
    catalan_exp: u32,
}

impl Monomial {
    fn unit() -> Monomial {
        Monomial::default()
    }

    pub fn is_unit(&self) -> bool {
        *self == Monomial::unit()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut odd_zetas = self.odd_zetas.clone();
        odd_zetas.extend_from_slice(&other.odd_zetas);
        odd_zetas.sort_unstable();
        Monomial {
            pi_exp: self.pi_exp + other.pi_exp,
            odd_zetas,
            log2_exp: self.log2_exp + other.log2_exp,
            catalan_exp: self.catalan_exp + other.catalan_exp,
        }
    }

    pub fn pi_exp(&self) -> u32 {
        self.pi_exp
    }

    pub fn odd_zetas(&self) -> &[u32] {
        &self.odd_zetas
    }

    pub fn log2_exp(&self) -> u32 {
        self.log2_exp
    }

    pub fn catalan_exp(&self) -> u32 {
        self.catalan_exp
    }
}

/// Exact ℚ-linear combination of [`Monomial`]s. Canonical form: no zero
/// coefficients; even zetas reduced to π powers on construction.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ZetaExpr {
    terms: BTreeMap<Monomial, Rational>,
}

impl ZetaExpr {
    pub fn zero() -> ZetaExpr {
        ZetaExpr::default()
    }

    pub fn constant(c: Rational) -> ZetaExpr {
        let mut e = ZetaExpr::zero();
        e.add_term(Monomial::unit(), c);
        e
    }

    /// coeff · π^exp.
    pub fn pi_power(coeff: Rational, exp: u32) -> ZetaExpr {
        let mut e = ZetaExpr::zero();
        e.add_term(
            Monomial {
                pi_exp: exp,
                ..Monomial::default()
            },
            coeff,
        );
        e
    }

    /// ζ(s) for s = 0 or s ≥ 2. Even arguments reduce eagerly to π powers;
    /// odd arguments become atoms. ζ(1) is rejected (divergent).
    pub fn zeta(s: u32) -> Result<ZetaExpr> {
        if s == 1 {
            return Err(Error::domain("ZetaExpr::zeta", "zeta(1) diverges"));
        }
        if s % 2 == 0 {
            return special::zeta_even(s);
        }
        let mut e = ZetaExpr::zero();
        e.add_term(
            Monomial {
                odd_zetas: vec![s],
                ..Monomial::default()
            },
            Rational::from(1),
        );
        Ok(e)
    }

    pub fn log2_atom() -> ZetaExpr {
        let mut e = ZetaExpr::zero();
        e.add_term(
            Monomial {
                log2_exp: 1,
                ..Monomial::default()
            },
            Rational::from(1),
        );
        e
    }

    pub fn catalan_atom() -> ZetaExpr {
        let mut e = ZetaExpr::zero();
        e.add_term(
            Monomial {
                catalan_exp: 1,
                ..Monomial::default()
            },
            Rational::from(1),
        );
        e
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_default();
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &ZetaExpr) -> ZetaExpr {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ZetaExpr) -> ZetaExpr {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ZetaExpr {
        self.scale(&Rational::from(-1))
    }

    pub fn scale(&self, c: &Rational) -> ZetaExpr {
        if *c == 0 {
            return ZetaExpr::zero();
        }
        ZetaExpr {
            terms: self
                .terms
                .iter()
                .map(|(m, q)| (m.clone(), Rational::from(q * c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &ZetaExpr) -> ZetaExpr {
        let mut out = ZetaExpr::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), Rational::from(ca * cb));
            }
        }
        out
    }

    /// Numeric evaluation: π, log 2 and G from the arithmetic layer's
    /// constants, odd zetas from the accelerated reference route.
    pub fn eval(&self, digits: u32) -> Result<BigReal> {
        let wd = digits + GUARD_DIGITS;
        let bits = working_bits(digits);
        let mut acc = Float::with_val(bits, 0);
        for (m, c) in &self.terms {
            let mut t = Float::with_val(bits, c);
            if m.pi_exp > 0 {
                t *= special::pi_float(bits).pow_i(i64::from(m.pi_exp));
            }
            for &s in &m.odd_zetas {
                t *= special::zeta_reference(s, wd)?.as_float();
            }
            if m.log2_exp > 0 {
                t *= special::log2_float(bits).pow_i(i64::from(m.log2_exp));
            }
            if m.catalan_exp > 0 {
                t *= special::catalan_float(bits).pow_i(i64::from(m.catalan_exp));
            }
            acc += t;
        }
        Ok(BigReal::from_float(acc, digits))
    }

    /// Decomposes each term for rendering in the paper's ζ-product basis:
    /// an even π power 2k is re-expressed as the rational multiple
    /// ζ(2k)/c of the even zeta. Returns (coefficient, zeta arguments
    /// ascending, residual monomial factors) triples ordered by
    /// descending largest odd argument, then by the canonical order.
    pub fn zeta_basis_terms(&self) -> Vec<(Rational, Vec<u32>, Monomial)> {
        let mut rows: Vec<(Rational, Vec<u32>, Monomial)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut coeff = c.clone();
                let mut args: Vec<u32> = m.odd_zetas.clone();
                let mut residual = Monomial {
                    log2_exp: m.log2_exp,
                    catalan_exp: m.catalan_exp,
                    ..Monomial::default()
                };
                if m.pi_exp > 0 && m.pi_exp % 2 == 0 {
                    coeff /= special::zeta_even_coeff(m.pi_exp);
                    args.push(m.pi_exp);
                } else {
                    residual.pi_exp = m.pi_exp;
                }
                args.sort_unstable();
                (coeff, args, residual)
            })
            .collect();
        rows.sort_by(|a, b| {
            let amax = a.1.iter().copied().filter(|x| x % 2 == 1).max().unwrap_or(0);
            let bmax = b.1.iter().copied().filter(|x| x % 2 == 1).max().unwrap_or(0);
            bmax.cmp(&amax).then_with(|| a.1.cmp(&b.1))
        });
        rows
    }
}

fn write_factor(out: &mut String, name: &str, exp: u32) {
    if exp == 0 {
        return;
    }
    if !out.is_empty() {
        out.push('*');
    }
    out.push_str(name);
    if exp > 1 {
        out.push_str(&format!("^{exp}"));
    }
}

fn monomial_factors(m: &Monomial) -> String {
    let mut out = String::new();
    write_factor(&mut out, "pi", m.pi_exp);
    let mut i = 0;
    while i < m.odd_zetas.len() {
        let s = m.odd_zetas[i];
        let mult = m.odd_zetas[i..].iter().take_while(|&&x| x == s).count();
        write_factor(&mut out, &format!("z{s}"), mult as u32);
        i += mult;
    }
    write_factor(&mut out, "log2", m.log2_exp);
    write_factor(&mut out, "G", m.catalan_exp);
    out
}

/// Canonical text form, e.g. `59/32*z5 - 1/12*pi^2*z3`. Terms appear in
/// the canonical monomial order; the zero expression prints as `0`.
/// Parsing round-trips exactly.
impl fmt::Display for ZetaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
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
            let factors = monomial_factors(m);
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{factors}")?;
            } else {
                write!(f, "{mag}*{factors}")?;
            }
        }
        Ok(())
    }
}

fn parse_factor(tok: &str) -> Result<(Monomial, Rational)> {
    let bad = || Error::Parse(format!("bad factor {tok:?}"));
    let (name, exp) = match tok.split_once('^') {
        Some((n, e)) => (n, e.parse::<u32>().map_err(|_| bad())?),
        None => (tok, 1),
    };
    if exp == 0 {
        return Err(bad());
    }
    let mut m = Monomial::unit();
    if name == "pi" {
        m.pi_exp = exp;
    } else if name == "log2" {
        m.log2_exp = exp;
    } else if name == "G" {
        m.catalan_exp = exp;
    } else if let Some(arg) = name.strip_prefix('z') {
        let s: u32 = arg.parse().map_err(|_| bad())?;
        if s < 3 || s % 2 == 0 {
            return Err(Error::Parse(format!("zeta atom must be odd and ≥ 3: {tok:?}")));
        }
        m.odd_zetas = vec![s; exp as usize];
    } else if name.chars().next().is_some_and(|c| c.is_ascii_digit()) {
        // A rational coefficient token "p" or "p/q".
        if exp != 1 {
            return Err(bad());
        }
        let (num, den) = match name.split_once('/') {
            Some((n, d)) => (
                Integer::from_str(n).map_err(|_| bad())?,
                Integer::from_str(d).map_err(|_| bad())?,
            ),
            None => (Integer::from_str(name).map_err(|_| bad())?, Integer::from(1)),
        };
        if den <= 0 {
            return Err(bad());
        }
        return Ok((m, Rational::from((num, den))));
    } else {
        return Err(bad());
    }
    Ok((m, Rational::from(1)))
}

impl FromStr for ZetaExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<ZetaExpr> {
        let s = s.trim();
        if s == "0" {
            return Ok(ZetaExpr::zero());
        }
        let mut expr = ZetaExpr::zero();
        // Terms are separated by " + " or " - "; a leading '-' negates the
        // first term.
        let mut rest = s;
        let mut sign = Rational::from(1);
        if let Some(r) = rest.strip_prefix('-') {
            sign = Rational::from(-1);
            rest = r.trim_start();
        }
        loop {
            let (term, next) = match (rest.find(" + "), rest.find(" - ")) {
                (Some(p), Some(q)) if p < q => (&rest[..p], Some((&rest[p + 3..], 1))),
                (Some(_), Some(q)) => (&rest[..q], Some((&rest[q + 3..], -1))),
                (Some(p), None) => (&rest[..p], Some((&rest[p + 3..], 1))),
                (None, Some(q)) => (&rest[..q], Some((&rest[q + 3..], -1))),
                (None, None) => (rest, None),
            };
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in {s:?}")));
            }
            let mut mono = Monomial::unit();
            let mut coeff = sign.clone();
            for tok in term.split('*') {
                let (m, q) = parse_factor(tok.trim())?;
                mono = mono.mul(&m);
                coeff *= q;
            }
            expr.add_term(mono, coeff);
            match next {
                Some((r, sgn)) => {
                    rest = r;
                    sign = Rational::from(sgn);
                }
                None => break,
            }
        }
        Ok(expr)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numutil::rat;

    #[test]
    fn eager_even_reduction_canonicalizes() {
        // ζ(4)·ζ(2) and (π⁴/90)(π²/6) are the same expression.
        let a = ZetaExpr::zeta(4).unwrap().mul(&ZetaExpr::zeta(2).unwrap());
        let b = ZetaExpr::pi_power(rat(1, 90), 4).mul(&ZetaExpr::pi_power(rat(1, 6), 2));
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "1/540*pi^6");
    }

    #[test]
    fn zeta_constructor_domains() {
        assert!(ZetaExpr::zeta(1).is_err());
        assert_eq!(
            ZetaExpr::zeta(0).unwrap(),
            ZetaExpr::constant(rat(-1, 2))
        );
        let z3 = ZetaExpr::zeta(3).unwrap();
        assert_eq!(z3.to_string(), "z3");
    }

    #[test]
    fn display_matches_reference_form() {
        // (59/32)ζ(5) − (1/12)π²ζ(3)
        let e = ZetaExpr::zeta(5)
            .unwrap()
            .scale(&rat(59, 32))
            .add(&ZetaExpr::zeta(3).unwrap().mul(&ZetaExpr::pi_power(rat(-1, 12), 2)));
        assert_eq!(e.to_string(), "59/32*z5 - 1/12*pi^2*z3");
    }

    #[test]
    fn parse_round_trip_examples() {
        for s in [
            "59/32*z5 - 1/12*pi^2*z3",
            "0",
            "-1/2",
            "z3^2 + pi^4",
            "-3/8*log2^2 + pi*G",
            "7/4*pi^2*z3*z5",
        ] {
            let e: ZetaExpr = s.parse().unwrap();
            assert_eq!(e.to_string(), s, "round-trip failed for {s}");
        }
    }

    #[test]
    fn parse_rejects_malformed() {
        assert!("z4".parse::<ZetaExpr>().is_err());
        assert!("z1".parse::<ZetaExpr>().is_err());
        assert!("q5".parse::<ZetaExpr>().is_err());
        assert!("1/0*z3".parse::<ZetaExpr>().is_err());
        assert!("pi^0".parse::<ZetaExpr>().is_err());
    }

    #[test]
    fn eval_pi_squared_over_six() {
        let e = ZetaExpr::zeta(2).unwrap();
        let v = e.eval(30).unwrap();
        let want: BigReal = "1.64493406684822643647241516665e0@30".parse().unwrap();
        assert!(v.digits_agreed(&want) >= 29);
    }

    #[test]
    fn pi_scalar_arithmetic() {
        let a = PiScalar::new(rat(1, 6), 2);
        let b = PiScalar::new(rat(-1, 6), 2);
        let sum = a.checked_add(&b).unwrap();
        assert!(sum.is_zero());
        let c = PiScalar::new(rat(2, 1), 4);
        assert!(a.checked_add(&c).is_none());
        let p = a.mul(&c);
        assert_eq!(p.pi_exponent(), 6);
        assert_eq!(*p.coeff(), rat(1, 3));
        // Zero absorbs any exponent on addition.
        assert!(sum.checked_add(&c).unwrap().eq_value(&c));
    }

    #[test]
    #[should_panic(expected = "even")]
    fn pi_scalar_rejects_odd_exponent() {
        let _ = PiScalar::new(rat(1, 1), 3);
    }

    #[test]
    fn zeta_basis_decomposition() {
        // π²/6 · ζ(3) decomposes as 1·ζ(2)ζ(3).
        let e = ZetaExpr::zeta(2).unwrap().mul(&ZetaExpr::zeta(3).unwrap());
        let rows = e.zeta_basis_terms();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].0, rat(1, 1));
        assert_eq!(rows[0].1, vec![2, 3]);
        assert!(rows[0].2.is_unit());
    }
}
