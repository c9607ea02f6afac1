//! Exhaustive search for small integer relations modulo torsion.

use crate::elliptic::curve::Point;
use crate::elliptic::rational::torsion_on_integral_model;
use crate::error::{Error, Result};
use crate::{CurveQ, PointQ};

/// Largest coefficient bound accepted.
pub const MAX_COEFFICIENT: u32 = 16;

/// Coefficients `n` (not all zero, `|n_i| <= bound`) with `sum n_i P_i`
/// torsion, if any exist.
///
/// Vectors are tried by increasing max-norm, lexicographically within a
/// norm, with the first nonzero coefficient positive.
pub fn small_relation_search(
    curve: &CurveQ,
    points: &[PointQ],
    bound: u32,
) -> Result<Option<Vec<i64>>> {
    if bound > MAX_COEFFICIENT {
        return Err(Error::InvalidInput(format!(
            "relation bound {bound} exceeds {MAX_COEFFICIENT}"
        )));
    }
    if points.iter().any(|p| !curve.contains(p)) {
        return Err(Error::PointNotOnCurve);
    }
    if points.is_empty() {
        return Ok(None);
    }
    let model = curve.integral_model();
    let b = bound as i64;
    // multiples[i][n + b] = n P_i on the integral model
    let multiples: Vec<Vec<PointQ>> = points
        .iter()
        .map(|p| {
            let p = model.map_point(p);
            let mut pos = vec![Point::Infinity];
            for _ in 0..b {
                let last = pos.last().expect("nonempty");
                pos.push(model.curve.add_unchecked(last, &p));
            }
            let neg: Vec<PointQ> = pos[1..].iter().rev().map(|q| model.curve.neg(q)).collect();
            neg.into_iter().chain(pos).collect()
        })
        .collect();

    let k = points.len();
    for norm in 1..=b {
        let mut coeffs = vec![-norm; k];
        loop {
            let first_positive = coeffs.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0);
            let at_norm = coeffs.iter().any(|c| c.abs() == norm);
            if first_positive && at_norm {
                let sum = coeffs
                    .iter()
                    .enumerate()
                    .fold(Point::Infinity, |acc, (i, &c)| {
                        model
                            .curve
                            .add_unchecked(&acc, &multiples[i][(c + b) as usize])
                    });
                if torsion_on_integral_model(&model.curve, &sum) {
                    return Ok(Some(coeffs));
                }
            }
            if !advance(&mut coeffs, norm) {
                break;
            }
        }
    }
    Ok(None)
}

fn advance(coeffs: &mut [i64], norm: i64) -> bool {
    for c in coeffs.iter_mut().rev() {
        if *c < norm {
            *c += 1;
            return true;
        }
        *c = -norm;
    }
    false
}
