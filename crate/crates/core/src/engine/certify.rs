//! Per-fiber rank-jump certificates.

use serde::Serialize;

use crate::arith::rat::{format_rat, serde_str};
use crate::elliptic::gram::{format_f64, gram_certify, GramCertificate};
use crate::elliptic::height::HeightEstimate;
use crate::elliptic::rational::format_point;
use crate::error::{Error, Result};
use crate::families::{fiber_at, specialize_sections, Family, FamilySpec, TotalSpacePoint};
use crate::{CurveQ, PointQ, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// Rank lower bound exceeds the declared generic rank.
    Jump,
    /// Some points certified, but not enough for a jump.
    Partial,
    /// The witness is torsion.
    TorsionWitness,
    /// No Gram determinant could be proved positive.
    Inconclusive,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Jump => "jump",
            Status::Partial => "partial",
            Status::TorsionWitness => "torsion_witness",
            Status::Inconclusive => "inconclusive",
        }
    }
}

/// Which point set the stored Gram certificate covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertifiedSet {
    SectionsAndWitness,
    WitnessOnly,
    SectionsOnly,
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessCertificate {
    pub family_id: String,
    #[serde(with = "serde_str")]
    pub param: Rat,
    pub curve: CurveQ,
    /// Non-torsion specialized sections.
    pub section_points: Vec<PointQ>,
    pub witness: PointQ,
    pub heights: Vec<HeightEstimate>,
    pub gram: Option<GramCertificate>,
    pub certified_set: CertifiedSet,
    pub certified_rank_lb: usize,
    pub declared_generic_rank: u32,
    pub jump: bool,
    pub status: Status,
}

pub const CSV_HEADER: [&str; 9] = [
    "param",
    "curve_A",
    "curve_B",
    "witness",
    "n_sections",
    "certified_rank_lb",
    "jump",
    "gram_det_lb",
    "status",
];

impl WitnessCertificate {
    pub fn csv_row(&self) -> [String; 9] {
        [
            format_rat(&self.param),
            format_rat(self.curve.a()),
            format_rat(self.curve.b()),
            format_point(&self.witness),
            self.section_points.len().to_string(),
            self.certified_rank_lb.to_string(),
            self.jump.to_string(),
            self.gram
                .as_ref()
                .map(|g| format_f64(g.det_lower_bound))
                .unwrap_or_default(),
            self.status.as_str().to_string(),
        ]
    }
}

/// Gram certification at `tol`, retried once at `tol / 10` when the
/// determinant enclosure is not positive. `None` when even the first
/// tolerance is out of reach.
pub fn gram_with_escalation(
    curve: &CurveQ,
    points: &[PointQ],
    tol: f64,
) -> Result<Option<GramCertificate>> {
    let first = match gram_certify(curve, points, tol) {
        Ok(g) => g,
        Err(Error::ToleranceUnreachable { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    if first.certified {
        return Ok(Some(first));
    }
    match gram_certify(curve, points, tol / 10.0) {
        Ok(g) => Ok(Some(g)),
        Err(Error::ToleranceUnreachable { .. }) => Ok(Some(first)),
        Err(e) => Err(e),
    }
}

pub fn certify_fiber(f: &FamilySpec, w: &TotalSpacePoint, tol: f64) -> Result<WitnessCertificate> {
    let fiber = fiber_at(f, &w.param)?;
    let curve = fiber.curve;
    if !curve.contains(&w.witness) {
        return Err(Error::PointNotOnCurve);
    }
    let mut sections = match f.family {
        Family::WeierstrassPencil { .. } => specialize_sections(f, &w.param)?,
        _ => Vec::new(),
    };
    let mut kept = Vec::with_capacity(sections.len());
    for s in sections.drain(..) {
        if !curve.is_torsion(&s)? {
            kept.push(s);
        }
    }
    let sections = kept;
    let declared = f.declared_generic_rank();

    let mut gram = None;
    let mut set = CertifiedSet::None;
    let witness_torsion = curve.is_torsion(&w.witness)?;
    if witness_torsion {
        if !sections.is_empty() {
            gram = gram_with_escalation(&curve, &sections, tol)?;
            if gram.as_ref().is_some_and(|g| g.certified) {
                set = CertifiedSet::SectionsOnly;
            }
        }
    } else {
        let mut all = sections.clone();
        all.push(w.witness.clone());
        gram = gram_with_escalation(&curve, &all, tol)?;
        if gram.as_ref().is_some_and(|g| g.certified) {
            set = CertifiedSet::SectionsAndWitness;
        } else if !sections.is_empty() {
            let single = gram_with_escalation(&curve, std::slice::from_ref(&w.witness), tol)?;
            if single.as_ref().is_some_and(|g| g.certified) {
                gram = single;
                set = CertifiedSet::WitnessOnly;
            }
        }
    }
    let certified_rank_lb = match set {
        CertifiedSet::None => 0,
        _ => gram.as_ref().map_or(0, |g| g.points.len()),
    };
    let jump = !witness_torsion && certified_rank_lb > declared as usize;
    let status = if witness_torsion {
        Status::TorsionWitness
    } else if jump {
        Status::Jump
    } else if certified_rank_lb > 0 {
        Status::Partial
    } else {
        Status::Inconclusive
    };
    Ok(WitnessCertificate {
        family_id: f.kind_name().to_string(),
        param: w.param.clone(),
        curve,
        section_points: sections,
        witness: w.witness.clone(),
        heights: gram.as_ref().map(|g| g.heights.clone()).unwrap_or_default(),
        gram,
        certified_set: set,
        certified_rank_lb,
        declared_generic_rank: declared,
        jump,
        status,
    })
}
