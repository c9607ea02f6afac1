//! Elliptic curves in short Weierstrass form.

pub mod curve;
pub mod gram;
pub mod height;
pub mod rational;
pub mod relation;

pub use curve::{Curve, Point};
pub use gram::{gram_certify, GramCertificate};
pub use height::{canonical_height, height_pairing, HeightContext, HeightEstimate};
pub use rational::{format_point, parse_curve, parse_point, IntegralModel};
pub use relation::small_relation_search;
