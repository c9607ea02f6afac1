//! Static checks on a family description.

use serde::Serialize;

use crate::arith::rat::int;
use crate::families::spec::{Family, FamilySpec};
use crate::{PolyQ, RatFunc};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub severity: Severity,
    pub message: String,
}

impl Finding {
    fn error(message: impl Into<String>) -> Self {
        Finding {
            severity: Severity::Error,
            message: message.into(),
        }
    }

    fn warning(message: impl Into<String>) -> Self {
        Finding {
            severity: Severity::Warning,
            message: message.into(),
        }
    }
}

/// True when no finding is an error.
pub fn is_valid(findings: &[Finding]) -> bool {
    findings.iter().all(|f| f.severity != Severity::Error)
}

fn check_cubic(p: &PolyQ, out: &mut Vec<Finding>) {
    match p.cubic_discriminant() {
        Err(e) => out.push(Finding::error(format!(
            "p = {p}: {e}; a monic cubic is required"
        ))),
        Ok(disc) if disc == int(0) => out.push(Finding::error(format!(
            "p = {p} is not separable (discriminant 0)"
        ))),
        Ok(_) => {}
    }
}

pub fn validate_family(f: &FamilySpec) -> Vec<Finding> {
    let mut out = Vec::new();
    match &f.family {
        Family::TwistLinear { p } => check_cubic(p, &mut out),
        Family::TwistQuadratic { c, a, p } => {
            check_cubic(p, &mut out);
            if *c == int(0) {
                out.push(Finding::error("c must be nonzero"));
            }
            if *a == int(0) {
                out.push(Finding::error(
                    "d(t) = c(t^2 - a) must be separable: a = 0 gives a double root",
                ));
            }
        }
        Family::TwistPoly { d, p } => {
            check_cubic(p, &mut out);
            match d.degree() {
                None => out.push(Finding::error("twist factor d is zero")),
                Some(0) => out.push(Finding::warning(
                    "twist factor d is constant: every fiber is the same curve",
                )),
                Some(_) if !d.is_squarefree() => out.push(Finding::warning(format!(
                    "twist factor d = {d} is not squarefree"
                ))),
                Some(_) => {}
            }
        }
        Family::CubicPencil => {}
        Family::WeierstrassPencil { a, b, sections } => {
            let four = RatFunc::constant(int(4));
            let twenty_seven = RatFunc::constant(int(27));
            let disc = &(&four * &a.pow(3)) + &(&twenty_seven * &b.pow(2));
            if disc.is_zero() {
                out.push(Finding::error(
                    "pencil discriminant 4A^3 + 27B^2 vanishes identically",
                ));
            }
            for (i, (x, y)) in sections.iter().enumerate() {
                let rhs = &(&x.pow(3) + &(a * x)) + b;
                if !(&y.pow(2) - &rhs).is_zero() {
                    out.push(Finding::error(format!(
                        "section {i} does not satisfy Y^2 = X^3 + A X + B identically"
                    )));
                }
            }
            if f.declared_generic_rank() as usize > sections.len() {
                out.push(Finding::warning(
                    "declared generic rank exceeds the number of declared sections",
                ));
            }
        }
    }
    out
}
