//! Certified Mordell-Weil rank jumps on elliptic fibrations over the
//! rational line.
//!
//! Rational points on the total space of a fibration are projected to their
//! fibers, and canonical-height Gram determinants evaluated in interval
//! arithmetic certify that the fiber rank exceeds the declared generic rank.
//!
//! The algebra (polynomials, the group law, intervals) is generic over a
//! [`scalar::Field`]; the aliases below fix the instantiations used by the
//! certification pipeline.

pub mod arith;
pub mod density;
pub mod elliptic;
pub mod engine;
pub mod error;
pub mod families;
pub mod interval;
pub mod scalar;

pub use error::{Error, Result};

/// Exact rational number.
pub type Rat = num_rational::BigRational;
/// Polynomial with rational coefficients.
pub type PolyQ = arith::poly::Poly<Rat>;
/// Rational function over the rationals.
pub type RatFunc = arith::ratfunc::RationalFunction<Rat>;

pub type CurveQ = elliptic::curve::Curve<Rat>;

pub type PointQ = elliptic::curve::Point<Rat>;
