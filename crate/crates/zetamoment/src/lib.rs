//! Exact and arbitrary-precision tools for the moment integrals
//!
//! ```text
//!     I(n) = ∫ t^n · log(1 + e^t) / (1 + e^t) dt        (over the real line)
//! ```
//!
//! and their closed forms in terms of Riemann zeta values.
//!
//! The crate has two arithmetic worlds that constantly cross-check each
//! other:
//!
//! * **Exact**: [`rug::Rational`] coefficients, Bernoulli numbers and
//!   polynomials, the symbolic [`ZetaExpr`] algebra over the atoms
//!   π, ζ(3), ζ(5), …, log 2 and the Catalan constant, and the exact
//!   π-power matrix pair whose product is verified to be the identity
//!   with zero tolerance.
//! * **Numeric**: [`BigReal`] values carrying an explicit decimal
//!   precision, backed by MPFR, produced by accelerated series and by
//!   the quadrature engine for the integral family.
//!
//! Every identity exposed here can be checked both ways; the
//! `verify` suites of the companion CLI drive exactly these functions.

pub mod bigreal;
pub mod error;
pub mod euler_sums;
pub mod identities;
pub mod numutil;
pub mod polynomial;
pub mod precision;
pub mod quadrature;
pub mod series;
pub mod special;
pub mod zeta_expr;

pub use bigreal::BigReal;
pub use error::{Error, Result};
pub use polynomial::QPolynomial;
pub use quadrature::{QuadResult, WeightEvaluator};
pub use zeta_expr::{PiScalar, ZetaExpr};

/// Exact arbitrary-size rational number, reduced to lowest terms with a
/// positive denominator (both guaranteed by the GMP canonical form).
pub use rug::Rational;
