//! Empirical check of injectivity of specialization on a Weierstrass pencil.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::rat::{enumerate_rationals, serde_str};
use crate::elliptic::relation::small_relation_search;
use crate::engine::certify::gram_with_escalation;
use crate::error::{Error, Result};
use crate::families::{fiber_at, specialize_sections, Family, FamilySpec};
use crate::Rat;

/// Coefficient bound used for the exact dependence search.
pub const RELATION_BOUND: u32 = 12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dependence {
    #[serde(with = "serde_str")]
    pub param: Rat,
    pub relation: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NeronCheckReport {
    pub family_id: String,
    pub sampled: u64,
    pub certified_independent: u64,
    #[serde(with = "crate::arith::rat::serde_str_vec")]
    pub inconclusive: Vec<Rat>,
    pub exact_dependent: Vec<Dependence>,
    /// `(sampled - certified_independent) / sampled`, 0 when nothing was sampled.
    pub failure_fraction: f64,
}

enum Outcome {
    Skipped,
    Independent,
    Dependent(Vec<i64>),
    Inconclusive,
}

fn check_one(f: &FamilySpec, l: &Rat, tol: f64) -> Result<Outcome> {
    let Ok(fiber) = fiber_at(f, l) else {
        return Ok(Outcome::Skipped);
    };
    let Ok(points) = specialize_sections(f, l) else {
        return Ok(Outcome::Skipped);
    };
    if gram_with_escalation(&fiber.curve, &points, tol)?.is_some_and(|g| g.certified) {
        return Ok(Outcome::Independent);
    }
    Ok(
        match small_relation_search(&fiber.curve, &points, RELATION_BOUND)? {
            Some(rel) => Outcome::Dependent(rel),
            None => Outcome::Inconclusive,
        },
    )
}

/// Classifies every nondegenerate fiber with parameter height at most
/// `bound` by whether the specialized sections are certified independent.
pub fn neron_check(f: &FamilySpec, bound: u64, tol: f64, jobs: usize) -> Result<NeronCheckReport> {
    let Family::WeierstrassPencil { sections, .. } = &f.family else {
        return Err(Error::WrongFamilyKind("weierstrass_pencil"));
    };
    if sections.is_empty() {
        return Err(Error::InvalidInput(
            "the pencil declares no sections".into(),
        ));
    }
    if bound == 0 {
        return Err(Error::InvalidInput("bound must be at least 1".into()));
    }
    let params = enumerate_rationals(bound);
    let outcomes: Vec<Result<Outcome>> = if jobs <= 1 {
        params.iter().map(|l| check_one(f, l, tol)).collect()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?
            .install(|| params.par_iter().map(|l| check_one(f, l, tol)).collect())
    };
    let mut report = NeronCheckReport {
        family_id: f.kind_name().to_string(),
        sampled: 0,
        certified_independent: 0,
        inconclusive: Vec::new(),
        exact_dependent: Vec::new(),
        failure_fraction: 0.0,
    };
    for (l, o) in params.iter().zip(outcomes) {
        match o? {
            Outcome::Skipped => continue,
            Outcome::Independent => report.certified_independent += 1,
            Outcome::Dependent(relation) => report.exact_dependent.push(Dependence {
                param: l.clone(),
                relation,
            }),
            Outcome::Inconclusive => report.inconclusive.push(l.clone()),
        }
        report.sampled += 1;
    }
    if report.sampled > 0 {
        report.failure_fraction =
            (report.sampled - report.certified_independent) as f64 / report.sampled as f64;
    }
    Ok(report)
}
