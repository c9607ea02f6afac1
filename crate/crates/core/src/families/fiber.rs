//! Fibers of a family at a rational parameter and the maps taking
//! total-space points to points on the standardized fiber.

use serde::Serialize;

use crate::arith::rat::{int, serde_str, serde_str_vec};
use crate::elliptic::curve::{Curve, Point};
use crate::error::{Error, Result};
use crate::families::spec::{Family, FamilySpec};
use crate::{CurveQ, PointQ, Rat};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fiber {
    #[serde(with = "serde_str")]
    pub param: Rat,
    pub curve: CurveQ,
    /// Human-readable description of the coordinate change.
    pub to_standard: String,
}

/// A rational point of the total space together with its image on the
/// standardized fiber.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TotalSpacePoint {
    #[serde(with = "serde_str")]
    pub param: Rat,
    pub witness: PointQ,
    /// Coordinates before standardization.
    #[serde(with = "serde_str_vec")]
    pub raw: Vec<Rat>,
}

fn degenerate(msg: impl Into<String>) -> Error {
    Error::DegenerateFiber(msg.into())
}

fn smooth(a: Rat, b: Rat, what: &str) -> Result<CurveQ> {
    Curve::new(a, b).map_err(|_| degenerate(format!("{what}: singular fiber")))
}

/// `c = -(l^3 + 1)` for the cubic pencil.
pub fn cubic_constant(lambda: &Rat) -> Rat {
    -(lambda * lambda * lambda + int(1))
}

pub fn fiber_at(f: &FamilySpec, lambda: &Rat) -> Result<Fiber> {
    if let Some((d, p)) = f.twist_data() {
        let (a, b, s) = p.depress_cubic()?;
        let d0 = d.eval(lambda);
        if d0 == int(0) {
            return Err(degenerate("twist factor vanishes"));
        }
        let d2 = &d0 * &d0;
        let curve = smooth(a * &d2, b * &d2 * &d0, "twist")?;
        return Ok(Fiber {
            param: lambda.clone(),
            curve,
            to_standard: format!("(x, y) -> (d0 (x + {s}), d0^2 y), d0 = {d0}"),
        });
    }
    match &f.family {
        Family::CubicPencil => {
            let c = cubic_constant(lambda);
            if c == int(0) {
                return Err(degenerate("l^3 + 1 = 0"));
            }
            let curve = smooth(int(0), -(int(432) * &c * &c), "cubic pencil")?;
            Ok(Fiber {
                param: lambda.clone(),
                curve,
                to_standard: format!("(x, y) -> (12c/(x+y), 36c(x-y)/(x+y)), c = {c}"),
            })
        }
        Family::WeierstrassPencil { a, b, .. } => {
            let a0 = a.eval(lambda).map_err(|_| degenerate("pole of A"))?;
            let b0 = b.eval(lambda).map_err(|_| degenerate("pole of B"))?;
            Ok(Fiber {
                param: lambda.clone(),
                curve: smooth(a0, b0, "pencil")?,
                to_standard: "identity".to_string(),
            })
        }
        _ => unreachable!("twist kinds handled above"),
    }
}

/// Image of a point `(x0, y0)` with `d(l0) y0^2 = p(x0)` on the fiber.
pub fn twist_witness(f: &FamilySpec, lambda: &Rat, x0: &Rat, y0: &Rat) -> Result<TotalSpacePoint> {
    let (d, p) = f.twist_data().ok_or(Error::WrongFamilyKind("twist"))?;
    let d0 = d.eval(lambda);
    if &d0 * y0 * y0 != p.eval(x0) {
        return Err(Error::NotOnTotalSpace);
    }
    let fiber = fiber_at(f, lambda)?;
    let (_, _, s) = p.depress_cubic()?;
    let witness = Point::Affine(&d0 * (x0 + s), &d0 * &d0 * y0);
    debug_assert!(fiber.curve.contains(&witness));
    Ok(TotalSpacePoint {
        param: lambda.clone(),
        witness,
        raw: vec![x0.clone(), y0.clone()],
    })
}

/// Image of `(x, y)` with `x^3 + y^3 = -(l^3 + 1)` on `Y^2 = X^3 - 432c^2`.
pub fn cubic_witness(lambda: &Rat, x: &Rat, y: &Rat) -> Result<TotalSpacePoint> {
    let s = x + y;
    if s == int(0) {
        return Err(Error::LineAtInfinity);
    }
    let c = cubic_constant(lambda);
    if c == int(0) {
        return Err(degenerate("l^3 + 1 = 0"));
    }
    if x * x * x + y * y * y != c {
        return Err(Error::NotOnTotalSpace);
    }
    let big_x = int(12) * &c / &s;
    let big_y = int(36) * &c * (x - y) / &s;
    Ok(TotalSpacePoint {
        param: lambda.clone(),
        witness: Point::Affine(big_x, big_y),
        raw: vec![x.clone(), y.clone()],
    })
}

/// Euler's parametrization of `X^3 + Y^3 + Z^3 + T^3 = 0` read as a point
/// of the cubic pencil: `(l0, x, y) = (Z/T, X/T, Y/T)`.
pub fn euler_parametrize(a: i64, b: i64) -> Option<(Rat, Rat, Rat)> {
    assert!((a, b) != (0, 0), "euler_parametrize(0, 0)");
    let (a, b) = (int(a), int(b));
    let q = |i: i64, j: i64, k: i64| int(i) * &a * &a + int(j) * &a * &b + int(k) * &b * &b;
    let x = q(3, 5, -5);
    let y = q(4, -4, 6);
    let z = q(5, -5, -3);
    let t = -q(6, -4, 4);
    debug_assert_eq!(
        &x * &x * &x + &y * &y * &y + &z * &z * &z + &t * &t * &t,
        int(0)
    );
    if t == int(0) {
        return None;
    }
    let lambda = &z / &t;
    if cubic_constant(&lambda) == int(0) {
        return None;
    }
    Some((lambda, &x / &t, &y / &t))
}

/// Declared sections of a Weierstrass pencil evaluated at `l0`.
pub fn specialize_sections(f: &FamilySpec, lambda: &Rat) -> Result<Vec<PointQ>> {
    let Family::WeierstrassPencil { sections, .. } = &f.family else {
        return Err(Error::WrongFamilyKind("weierstrass_pencil"));
    };
    let fiber = fiber_at(f, lambda)?;
    sections
        .iter()
        .map(|(x, y)| {
            let p = Point::Affine(x.eval(lambda)?, y.eval(lambda)?);
            if fiber.curve.contains(&p) {
                Ok(p)
            } else {
                Err(Error::PointNotOnCurve)
            }
        })
        .collect()
}
