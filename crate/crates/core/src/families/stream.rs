//! Enumeration of total-space points by height.

use std::collections::HashSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::rat::{
    enumerate_rationals, int, is_rational_cube, is_rational_square, rat_height,
};
use crate::elliptic::curve::Point;
use crate::error::{Error, Result};
use crate::families::fiber::{
    cubic_constant, cubic_witness, euler_parametrize, fiber_at, twist_witness, TotalSpacePoint,
};
use crate::families::spec::{Family, FamilySpec};
use crate::{PolyQ, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Search the total space directly and read off the parameter.
    TotalFirst,
    /// Fix the parameter, then search the fiber.
    FiberFirst,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct StreamStats {
    pub tried: u64,
    pub degenerate: u64,
    pub line_at_infinity: u64,
    pub duplicates: u64,
    pub emitted: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessStream {
    pub points: Vec<TotalSpacePoint>,
    pub stats: StreamStats,
    /// Differs from the requested mode when the family has no total-first
    /// enumeration.
    pub mode: Mode,
}

struct Collector {
    seen: HashSet<(Rat, Rat)>,
    out: WitnessStream,
}

impl Collector {
    fn new(mode: Mode) -> Self {
        Collector {
            seen: HashSet::new(),
            out: WitnessStream {
                points: Vec::new(),
                stats: StreamStats::default(),
                mode,
            },
        }
    }

    fn push(&mut self, r: Result<TotalSpacePoint>) {
        let stats = &mut self.out.stats;
        match r {
            Ok(w) => {
                let x = w.witness.x().cloned().unwrap_or_else(|| int(0));
                if self.seen.insert((w.param.clone(), x)) {
                    stats.emitted += 1;
                    self.out.points.push(w);
                } else {
                    stats.duplicates += 1;
                }
            }
            Err(Error::LineAtInfinity) => stats.line_at_infinity += 1,
            Err(_) => stats.degenerate += 1,
        }
    }
}

/// Points of the total space with coordinates of height at most `bound`,
/// in a fixed order; duplicates (same parameter and witness x) dropped.
pub fn witness_stream(f: &FamilySpec, bound: u64, mode: Mode) -> Result<WitnessStream> {
    if bound == 0 {
        return Err(Error::InvalidInput("bound must be at least 1".into()));
    }
    let rationals = enumerate_rationals(bound);
    let positive: Vec<&Rat> = rationals.iter().filter(|q| **q > int(0)).collect();
    let twist = f.twist_data();
    let mode = match (&f.family, mode) {
        (Family::WeierstrassPencil { .. }, _) => Mode::FiberFirst,
        (_, Mode::TotalFirst)
            if twist
                .as_ref()
                .is_some_and(|(d, _)| !matches!(d.degree(), Some(1 | 2))) =>
        {
            Mode::FiberFirst
        }
        (_, m) => m,
    };
    let mut col = Collector::new(mode);

    match (&f.family, mode) {
        (Family::CubicPencil, Mode::TotalFirst) => {
            let b = bound as i64;
            for h in 1..=b {
                for a in -h..=h {
                    for bb in -h..=h {
                        let first_positive = if a != 0 { a > 0 } else { bb > 0 };
                        if a.abs().max(bb.abs()) != h
                            || !first_positive
                            || num_integer::gcd(a, bb) != 1
                        {
                            continue;
                        }
                        col.out.stats.tried += 1;
                        match euler_parametrize(a, bb) {
                            Some((l, x, y)) => col.push(cubic_witness(&l, &x, &y)),
                            None => col.out.stats.degenerate += 1,
                        }
                    }
                }
            }
        }
        (Family::CubicPencil, Mode::FiberFirst) => {
            for l in &rationals {
                let c = cubic_constant(l);
                if c == int(0) {
                    col.out.stats.degenerate += 1;
                    continue;
                }
                for x in &rationals {
                    col.out.stats.tried += 1;
                    if let Some(y) = is_rational_cube(&(&c - x * x * x)) {
                        col.push(cubic_witness(l, x, &y));
                    }
                }
            }
        }
        (Family::WeierstrassPencil { .. }, _) => {
            for l in &rationals {
                let Ok(fiber) = fiber_at(f, l) else {
                    col.out.stats.degenerate += 1;
                    continue;
                };
                for x in &rationals {
                    col.out.stats.tried += 1;
                    if let Some(y) = is_rational_square(&fiber.curve.rhs(x)) {
                        col.push(Ok(TotalSpacePoint {
                            param: l.clone(),
                            witness: Point::Affine(x.clone(), y.clone()),
                            raw: vec![x.clone(), y],
                        }));
                    }
                }
            }
        }
        (_, Mode::TotalFirst) => {
            let (d, p) = twist.expect("twist kind");
            let values: Vec<Rat> = rationals.iter().map(|x| p.eval(x)).collect();
            for (i, y) in pairs_by_height(&rationals, &positive) {
                col.out.stats.tried += 1;
                if values[i] == int(0) {
                    col.out.stats.degenerate += 1;
                    continue;
                }
                let target = &values[i] / (y * y);
                for t in solve_twist_factor(&d, &target) {
                    col.push(twist_witness(f, &t, &rationals[i], y));
                }
            }
        }
        (_, Mode::FiberFirst) => {
            let (d, p) = twist.expect("twist kind");
            let values: Vec<Rat> = rationals.iter().map(|x| p.eval(x)).collect();
            for l in &rationals {
                let d0 = d.eval(l);
                if d0 == int(0) {
                    col.out.stats.degenerate += 1;
                    continue;
                }
                for (x, px) in rationals.iter().zip(&values) {
                    col.out.stats.tried += 1;
                    if let Some(y) = is_rational_square(&(px / &d0)) {
                        col.push(twist_witness(f, l, x, &y));
                    }
                }
            }
        }
    }
    Ok(col.out)
}

/// Pairs `(x, y)` ordered by `max(H(x), H(y))`, then by the position of `x`
/// and `y` in their own lists. `x` is returned as an index.
fn pairs_by_height<'a>(xs: &[Rat], ys: &[&'a Rat]) -> Vec<(usize, &'a Rat)> {
    let hx: Vec<BigInt> = xs.iter().map(rat_height).collect();
    let hy: Vec<BigInt> = ys.iter().map(|y| rat_height(y)).collect();
    let mut levels: Vec<&BigInt> = hx.iter().chain(&hy).collect();
    levels.sort();
    levels.dedup();
    let mut out = Vec::new();
    for h in levels {
        for (i, a) in hx.iter().enumerate() {
            if a > h {
                break;
            }
            for (j, b) in hy.iter().enumerate() {
                if b > h {
                    break;
                }
                if a == h || b == h {
                    out.push((i, ys[j]));
                }
            }
        }
    }
    out
}

/// Rational roots of `d(t) = v` for `deg d` in {1, 2}, larger root first.
fn solve_twist_factor(d: &PolyQ, v: &Rat) -> Vec<Rat> {
    let c = |i| d.coeff(i).cloned().unwrap_or_else(|| int(0));
    match d.degree() {
        Some(1) => vec![(v - c(0)) / c(1)],
        Some(2) => {
            let (a, b, k) = (c(2), c(1), c(0) - v);
            let disc = &b * &b - int(4) * &a * &k;
            match is_rational_square(&disc) {
                None => vec![],
                Some(s) if s == int(0) => vec![-b / (int(2) * a)],
                Some(s) => {
                    let r1 = (-&b + &s) / (int(2) * &a);
                    let r2 = (-&b - &s) / (int(2) * &a);
                    if r1 > r2 {
                        vec![r1, r2]
                    } else {
                        vec![r2, r1]
                    }
                }
            }
        }
        _ => vec![],
    }
}
