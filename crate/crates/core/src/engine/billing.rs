//! Rank growth over multiquadratic fields from independent quadratic twists.
//!
//! For a multiquadratic field `L = Q(sqrt d_1, ..., sqrt d_r)` with Galois
//! group `G`, the rational vector space `E(L) (x) Q` splits over the
//! characters of `G` into the pieces `E^chi(Q) (x) Q`, where `E^chi` is the
//! quadratic twist by the field cut out by `chi`. Each `d_i` is one such
//! character, so a point of infinite order on every twist `E^{d_i}` gives
//! `rank E(L) >= r`. The twists are certified over Q; nothing is computed in
//! `L` itself. Independence of the `d_i` in `Q*/Q*^2` makes `[L : Q] = 2^r`.

use serde::Serialize;

use crate::arith::rat::{format_rat, int, is_rational_square, serde_str};
use crate::arith::squarefree::{
    square_class_independent, squarefree_part_rat, F2Record, SquareClass,
};
use crate::elliptic::curve::{Curve, Point};
use crate::elliptic::height::HeightEstimate;
use crate::engine::certify::gram_with_escalation;
use crate::error::{Error, Result};
use crate::{CurveQ, PointQ, PolyQ, Rat};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BillingWitness {
    #[serde(with = "serde_str")]
    pub x0: Rat,
    /// `p(x0) = d s^2`.
    #[serde(with = "serde_str")]
    pub s: Rat,
    pub class: SquareClass,
    pub twist: CurveQ,
    pub point: PointQ,
    pub height: HeightEstimate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BillingCertificate {
    /// The base curve `y^2 = x^3 + A x + B` (depressed form of `p`).
    pub curve: CurveQ,
    pub r: usize,
    pub classes: Vec<SquareClass>,
    pub witnesses: Vec<BillingWitness>,
    pub independence_proof: F2Record,
    pub rank_bound: usize,
    /// `2^r`, as a decimal string.
    pub compositum_degree: String,
}

fn twist_of(a: &Rat, b: &Rat, d: &Rat) -> Result<CurveQ> {
    Curve::new(a * d * d, b * d * d * d)
}

/// Searches `x0 = 0, 1, ..., bound` for `r` independent square classes of
/// `p(x0)` whose twists carry a certified point of infinite order.
pub fn billing_build(p: &PolyQ, r: usize, bound: u64, tol: f64) -> Result<BillingCertificate> {
    if r == 0 {
        return Err(Error::InvalidInput("r must be at least 1".into()));
    }
    if !p.is_separable_cubic()? {
        return Err(Error::InvalidInput(format!("p = {p} is not separable")));
    }
    let (a, b, shift) = p.depress_cubic()?;
    let base = Curve::new(a.clone(), b.clone())?;
    let mut classes: Vec<SquareClass> = Vec::new();
    let mut witnesses = Vec::new();
    for x in 0..=bound {
        if classes.len() == r {
            break;
        }
        let x0 = int(x as i64);
        let v = p.eval(&x0);
        if v == int(0) {
            continue;
        }
        let class = squarefree_part_rat(&v)?;
        if class.is_unit() {
            continue;
        }
        let d = class.as_rat();
        let s = is_rational_square(&(&v / &d)).expect("p(x0) / d is a square");
        let twist = twist_of(&a, &b, &d)?;
        let point = Point::Affine(&d * (&x0 + &shift), &d * &d * &s);
        if twist.is_torsion(&point)? {
            continue;
        }
        let mut trial = classes.clone();
        trial.push(class.clone());
        if !square_class_independent(&trial)?.independent {
            continue;
        }
        let Some(gram) = gram_with_escalation(&twist, std::slice::from_ref(&point), tol)? else {
            continue;
        };
        if !gram.certified {
            continue;
        }
        classes.push(class.clone());
        witnesses.push(BillingWitness {
            x0,
            s,
            class,
            twist,
            point,
            height: gram.heights[0].clone(),
        });
    }
    if classes.len() < r {
        return Err(Error::SearchExhausted {
            found: classes.len(),
            wanted: r,
        });
    }
    let independence = square_class_independent(&classes)?;
    Ok(BillingCertificate {
        curve: base,
        r,
        classes,
        witnesses,
        independence_proof: independence.record,
        rank_bound: r,
        compositum_degree: num_bigint::BigUint::from(2u32).pow(r as u32).to_string(),
    })
}

/// Exact re-validation of a certificate against `p`: every point lies on its
/// twist, the twist matches its class, the points are non-torsion and the
/// classes are independent.
pub fn reverify_billing(p: &PolyQ, cert: &BillingCertificate) -> Result<()> {
    let (a, b, shift) = p.depress_cubic()?;
    let bad = |m: String| Err(Error::InvalidInput(m));
    if cert.classes.len() != cert.r || cert.witnesses.len() != cert.r || cert.rank_bound != cert.r {
        return bad("class, witness and rank counts disagree".into());
    }
    for w in &cert.witnesses {
        let d = w.class.as_rat();
        if p.eval(&w.x0) != &d * &w.s * &w.s {
            return bad(format!("p({}) != d s^2", format_rat(&w.x0)));
        }
        if w.twist != twist_of(&a, &b, &d)? {
            return bad("twist does not match class".into());
        }
        if w.point != Point::Affine(&d * (&w.x0 + &shift), &d * &d * &w.s)
            || !w.twist.contains(&w.point)
        {
            return bad("point is not the standardized image on its twist".into());
        }
        if w.twist.is_torsion(&w.point)? {
            return bad("torsion witness".into());
        }
    }
    if !square_class_independent(&cert.classes)?.independent {
        return bad("classes are dependent".into());
    }
    Ok(())
}
