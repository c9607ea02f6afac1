//! Scans: witness enumeration followed by per-parameter certification.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::rat::cmp_height_value;
use crate::engine::certify::{certify_fiber, Status, WitnessCertificate};
use crate::error::{Error, Result};
use crate::families::{witness_stream, FamilySpec, Mode, StreamStats, TotalSpacePoint};
use crate::Rat;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ScanStats {
    /// Points emitted by the witness stream.
    pub candidates: u64,
    /// Candidates whose fiber turned out degenerate during certification,
    /// plus degenerate points dropped by the stream.
    pub degenerate: u64,
    pub torsion_witness: u64,
    /// Rows with a certified jump.
    pub certified: u64,
    /// Attempts with no jump for a non-torsion witness.
    pub inconclusive: u64,
    /// Candidates not attempted because their parameter was already certified.
    pub skipped: u64,
    /// Distinct parameters among the candidates.
    pub distinct_params: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub family_id: String,
    pub bound: u64,
    pub mode: Mode,
    pub tol: f64,
    pub stream: StreamStats,
    pub stats: ScanStats,
    pub certificates: Vec<WitnessCertificate>,
}

impl ScanReport {
    /// `"certified J of C candidates, D distinct params"`.
    pub fn summary(&self) -> String {
        format!(
            "certified {} of {} candidates, {} distinct params",
            self.stats.certified, self.stats.candidates, self.stats.distinct_params
        )
    }

    /// Parameters of the rows with a jump.
    pub fn certified_params(&self) -> Vec<Rat> {
        self.certificates
            .iter()
            .filter(|c| c.jump)
            .map(|c| c.param.clone())
            .collect()
    }
}

#[derive(Default)]
struct GroupOutcome {
    row: Option<WitnessCertificate>,
    stats: ScanStats,
}

fn certify_group(f: &FamilySpec, group: &[&TotalSpacePoint], tol: f64) -> GroupOutcome {
    let mut out = GroupOutcome::default();
    for (i, w) in group.iter().enumerate() {
        let cert = match certify_fiber(f, w, tol) {
            Ok(c) => c,
            Err(_) => {
                out.stats.degenerate += 1;
                continue;
            }
        };
        match cert.status {
            Status::TorsionWitness => out.stats.torsion_witness += 1,
            Status::Jump => {}
            _ => out.stats.inconclusive += 1,
        }
        let jump = cert.jump;
        if jump || out.row.is_none() {
            out.row = Some(cert);
        }
        if jump {
            out.stats.certified += 1;
            out.stats.skipped += (group.len() - i - 1) as u64;
            break;
        }
    }
    out
}

/// Runs the witness stream and certifies it, keeping at most one row per
/// parameter: the first certified candidate, else the first candidate.
///
/// `jobs` sets the worker count; the output does not depend on it.
pub fn scan(f: &FamilySpec, bound: u64, mode: Mode, tol: f64, jobs: usize) -> Result<ScanReport> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let stream = witness_stream(f, bound, mode)?;

    let mut order: Vec<&Rat> = Vec::new();
    let mut groups: HashMap<&Rat, Vec<&TotalSpacePoint>> = HashMap::new();
    for w in &stream.points {
        let g = groups.entry(&w.param).or_insert_with(|| {
            order.push(&w.param);
            Vec::new()
        });
        g.push(w);
    }
    let work: Vec<&Vec<&TotalSpacePoint>> = order.iter().map(|p| &groups[p]).collect();

    let run =
        || -> Vec<GroupOutcome> { work.par_iter().map(|g| certify_group(f, g, tol)).collect() };
    let outcomes = if jobs <= 1 {
        work.iter().map(|g| certify_group(f, g, tol)).collect()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?
            .install(run)
    };

    let mut stats = ScanStats {
        candidates: stream.stats.emitted,
        degenerate: stream.stats.degenerate + stream.stats.line_at_infinity,
        distinct_params: order.len() as u64,
        ..Default::default()
    };
    let mut certificates = Vec::new();
    for o in outcomes {
        stats.degenerate += o.stats.degenerate;
        stats.torsion_witness += o.stats.torsion_witness;
        stats.certified += o.stats.certified;
        stats.inconclusive += o.stats.inconclusive;
        stats.skipped += o.stats.skipped;
        certificates.extend(o.row);
    }
    certificates.sort_by(|a, b| cmp_height_value(&a.param, &b.param));
    Ok(ScanReport {
        family_id: f.kind_name().to_string(),
        bound,
        mode: stream.mode,
        tol,
        stream: stream.stats,
        stats,
        certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::Poly;
    use crate::arith::rat::{int, rat};
    use crate::elliptic::curve::Point;
    use crate::families::Family;

    #[test]
    fn cubic_pencil_bound_one() {
        let f = FamilySpec::new(Family::CubicPencil);
        let r = scan(&f, 1, Mode::TotalFirst, 1e-4, 1).unwrap();
        let params: Vec<Rat> = r.certificates.iter().map(|c| c.param.clone()).collect();
        assert!(params.contains(&rat(-5, 6)));
        assert!(params.contains(&rat(3, 4)));
        assert!(r.stats.candidates >= 2);
    }

    #[test]
    fn congruent_bound_two() {
        let f = FamilySpec::new(Family::TwistLinear {
            p: Poly::new(vec![int(0), int(-1), int(0), int(1)]),
        });
        let r = scan(&f, 2, Mode::TotalFirst, 1e-4, 1).unwrap();
        let six = r.certificates.iter().find(|c| c.param == int(6)).unwrap();
        assert!(six.jump);
        assert_eq!(six.witness, Point::Affine(int(12), int(36)));
        assert_eq!(r.stats.certified as usize, r.certified_params().len());
        assert!(r.summary().starts_with("certified "));
        assert!(scan(&f, 0, Mode::TotalFirst, 1e-4, 1).is_err());
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let f = FamilySpec::new(Family::CubicPencil);
        let a = scan(&f, 2, Mode::TotalFirst, 1e-4, 1).unwrap();
        let b = scan(&f, 2, Mode::TotalFirst, 1e-4, 3).unwrap();
        assert_eq!(a, b);
    }
}
