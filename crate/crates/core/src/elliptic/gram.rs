//! Interval Gram matrices of the height pairing. A strictly positive lower
//! bound on the determinant proves the points independent modulo torsion.
//!
//! Heights are refined level by level (N = 0, 2, 4, ... and finally the
//! level implied by `tol`); evaluation stops at the first level whose
//! determinant enclosure is positive.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::elliptic::height::{Fixed, HeightContext, HeightEstimate, HeightSequence};
use crate::error::{Error, Result};
use crate::interval::{determinant, Interval};
use crate::{CurveQ, PointQ};

/// Largest point set accepted.
pub const MAX_POINTS: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct GramCertificate {
    pub points: Vec<PointQ>,
    pub entries: Vec<Vec<Interval<f64>>>,
    /// `-inf` when elimination met a pivot enclosing zero.
    pub det_lower_bound: f64,
    pub certified: bool,
    /// Doubling level of the final evaluation.
    pub level: u32,
    /// Diagonal entries as height estimates.
    pub heights: Vec<HeightEstimate>,
}

impl GramCertificate {
    pub fn rank_lower_bound(&self) -> usize {
        if self.certified {
            self.points.len()
        } else {
            0
        }
    }
}

pub(crate) fn format_f64(x: f64) -> String {
    if x == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        format!("{x:e}")
    }
}

impl Serialize for GramCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<Vec<[String; 2]>> = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| [format_f64(*e.lo()), format_f64(*e.hi())])
                    .collect()
            })
            .collect();
        let mut st = s.serialize_struct("GramCertificate", 5)?;
        st.serialize_field("points", &self.points)?;
        st.serialize_field("entries", &entries)?;
        st.serialize_field("det_lower_bound", &format_f64(self.det_lower_bound))?;
        st.serialize_field("certified", &self.certified)?;
        st.serialize_field("level", &self.level)?;
        st.end()
    }
}

/// Certifies `rank C(Q) >= points.len()` when the Gram determinant is
/// provably positive.
pub fn gram_certify(curve: &CurveQ, points: &[PointQ], tol: f64) -> Result<GramCertificate> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    if points.len() > MAX_POINTS {
        return Err(Error::TooManyPoints(points.len()));
    }
    if points.iter().any(|p| !curve.contains(p)) {
        return Err(Error::PointNotOnCurve);
    }
    let ctx = HeightContext::new(curve);
    let n_max = ctx.level_for(tol)?;
    let k = points.len();

    let mut diag: Vec<HeightSequence> = points.iter().map(|p| ctx.sequence(p)).collect();
    let mut sums: Vec<Vec<Option<HeightSequence>>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    (j > i).then(|| ctx.sequence(&curve.add_unchecked(&points[i], &points[j])))
                })
                .collect()
        })
        .collect();

    let mut levels: Vec<u32> = (0..n_max).step_by(2).collect();
    levels.push(n_max);

    let mut last = None;
    for n in levels {
        let err = ctx.error_at(n);
        let h: Vec<Fixed> = diag.iter_mut().map(|s| s.value_at(&ctx, n)).collect();
        let heights: Vec<HeightEstimate> = h
            .iter()
            .map(|v| HeightEstimate {
                value: v.clone(),
                err,
                level: n,
            })
            .collect();
        let mut entries = vec![vec![Interval::point(0.0); k]; k];
        for i in 0..k {
            entries[i][i] = heights[i].interval();
            for j in i + 1..k {
                let seq = sums[i][j].as_mut().expect("upper triangle");
                let hs = seq.value_at(&ctx, n);
                let pairing = HeightEstimate {
                    value: (&(&hs - &h[i]) - &h[j]).half(),
                    err: (1.5 * err).next_up(),
                    level: n,
                };
                let e = pairing.interval();
                entries[i][j] = e.clone();
                entries[j][i] = e;
            }
        }
        let det = determinant(&entries)?;
        let det_lower_bound = det.map_or(f64::NEG_INFINITY, |d| *d.lo());
        let certified = det_lower_bound > 0.0;
        last = Some(GramCertificate {
            points: points.to_vec(),
            entries,
            det_lower_bound,
            certified,
            level: n,
            heights,
        });
        if certified {
            break;
        }
    }
    Ok(last.expect("at least one level"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::int;
    use crate::elliptic::curve::Point;

    #[test]
    fn congruent_number_point_certifies() {
        let c = CurveQ::new(int(-36), int(0)).unwrap();
        let p = Point::Affine(int(12), int(36));
        let g = gram_certify(&c, std::slice::from_ref(&p), 1e-4).unwrap();
        assert!(g.certified);
        assert!(g.det_lower_bound > 0.0);
        assert_eq!(g.rank_lower_bound(), 1);

        let p2 = c.double(&p).unwrap();
        let g = gram_certify(&c, &[p, p2], 1e-4).unwrap();
        assert!(!g.certified);
        assert!(g.det_lower_bound <= 0.0);
        assert_eq!(g.entries[0][1], g.entries[1][0]);
    }

    #[test]
    fn rejects_bad_input() {
        let c = CurveQ::new(int(-36), int(0)).unwrap();
        assert_eq!(gram_certify(&c, &[], 1e-4), Err(Error::EmptyInput));
        assert_eq!(
            gram_certify(&c, &[Point::Affine(int(1), int(1))], 1e-4),
            Err(Error::PointNotOnCurve)
        );
    }

    #[test]
    fn torsion_never_certifies() {
        let c = CurveQ::new(int(-36), int(0)).unwrap();
        let g = gram_certify(&c, &[Point::Affine(int(6), int(0))], 1e-4).unwrap();
        assert!(!g.certified);
    }

    #[test]
    fn rank_two_curve() {
        // short model of y^2 + y = x^3 + x^2 - 2x with its generators (0,0), (1,0)
        let c = CurveQ::new(int(-3024), int(46224)).unwrap();
        let p = Point::Affine(int(12), int(108));
        let q = Point::Affine(int(48), int(108));
        let g = gram_certify(&c, &[p.clone(), q.clone()], 1e-4).unwrap();
        assert!(g.certified);
        let json = serde_json::to_value(&g).unwrap();
        assert_eq!(json["points"][0], "12,108");
        assert_eq!(json["certified"], true);

        let s = c.add(&p, &q).unwrap();
        let g = gram_certify(&c, &[p, q, s], 1e-4).unwrap();
        assert!(!g.certified);
    }
}
