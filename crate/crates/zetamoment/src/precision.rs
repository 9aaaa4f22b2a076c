//! Working-precision bookkeeping.
//!
//! All public operations take a precision in significant *decimal* digits.
//! Internally we carry [`GUARD_DIGITS`] extra digits so that accumulated
//! rounding never eats into the digits the caller asked for, and convert
//! to binary MPFR precision with a small constant slack.

/// Default precision, in decimal digits, used by the CLI when none is given.
pub const DEFAULT_DIGITS: u32 = 50;

/// Guard digits carried on top of every requested precision.
pub const GUARD_DIGITS: u32 = 10;

/// Binary precision holding `digits` decimal digits, with slack for
/// intermediate rounding.
pub fn bits_for(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 16
}

/// Binary working precision for a computation that must deliver `digits`
/// correct decimal digits: the requested digits plus the guard digits.
pub fn working_bits(digits: u32) -> u32 {
    bits_for(digits + GUARD_DIGITS)
}
