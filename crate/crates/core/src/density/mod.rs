//! Finite-sample proxies for density of certified parameters: real
//! histograms, p-adic residue coverage and the sign-region report for
//! quadratic twist families. Everything here is descriptive.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::rat::{format_rat, int, serde_str};
use crate::error::{Error, Result};
use crate::families::{Family, FamilySpec};
use crate::Rat;

pub const DEFAULT_LO: i64 = -10;
pub const DEFAULT_HI: i64 = 10;
pub const DEFAULT_BINS: usize = 20;
pub const DEFAULT_PRIMES: [u64; 4] = [2, 3, 5, 7];
pub const DEFAULT_MAX_K: u32 = 2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    #[serde(with = "serde_str")]
    pub lo: Rat,
    #[serde(with = "serde_str")]
    pub hi: Rat,
    pub bins: usize,
    pub counts: Vec<u64>,
    pub in_range: u64,
    pub coverage: f64,
}

impl Histogram {
    /// Exact bin edges, `bins + 1` of them.
    pub fn edges(&self) -> Vec<Rat> {
        let width = (&self.hi - &self.lo) / int(self.bins as i64);
        (0..=self.bins)
            .map(|i| &self.lo + &width * int(i as i64))
            .collect()
    }

    /// `(bin_lo, bin_hi, count)` rows.
    pub fn csv_rows(&self) -> Vec<[String; 3]> {
        let e = self.edges();
        self.counts
            .iter()
            .enumerate()
            .map(|(i, c)| [format_rat(&e[i]), format_rat(&e[i + 1]), c.to_string()])
            .collect()
    }
}

fn bin_index(q: &Rat, lo: &Rat, hi: &Rat, bins: usize) -> Option<usize> {
    if q < lo || q >= hi {
        return None;
    }
    let pos = (q - lo) * int(bins as i64) / (hi - lo);
    pos.floor().to_integer().to_usize()
}

/// Equal-width histogram over `[lo, hi)`; coverage is the fraction of
/// nonempty bins.
pub fn real_histogram(params: &[Rat], lo: &Rat, hi: &Rat, bins: usize) -> Result<Histogram> {
    if lo >= hi || bins == 0 {
        return Err(Error::InvalidInput(
            "histogram needs lo < hi and bins >= 1".into(),
        ));
    }
    let mut counts = vec![0u64; bins];
    for q in params {
        if let Some(i) = bin_index(q, lo, hi, bins) {
            counts[i] += 1;
        }
    }
    let in_range = counts.iter().sum();
    let hit = counts.iter().filter(|&&c| c > 0).count();
    Ok(Histogram {
        lo: lo.clone(),
        hi: hi.clone(),
        bins,
        counts,
        in_range,
        coverage: hit as f64 / bins as f64,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PadicCoverage {
    pub p: u64,
    pub k: u32,
    pub modulus: u64,
    /// Distinct residues `u v^-1 mod p^k`, ascending.
    pub residues: Vec<u64>,
    pub coverage: f64,
    /// Parameters whose denominator is divisible by `p`.
    pub non_integral: u64,
}

/// Residues mod `p^k` hit by the `p`-integral parameters.
pub fn padic_coverage(params: &[Rat], p: u64, k: u32) -> Result<PadicCoverage> {
    if k == 0 || p < 2 {
        return Err(Error::InvalidInput(
            "padic coverage needs p >= 2 and k >= 1".into(),
        ));
    }
    let modulus = p
        .checked_pow(k)
        .filter(|m| *m <= 1 << 24)
        .ok_or_else(|| Error::InvalidInput(format!("{p}^{k} is too large")))?;
    let m = BigInt::from(modulus);
    let mut residues = BTreeSet::new();
    let mut non_integral = 0;
    for q in params {
        let den = q.denom();
        if (den % p).is_zero() {
            non_integral += 1;
            continue;
        }
        let inv = den.extended_gcd(&m).x.mod_floor(&m);
        let r = (q.numer() * inv).mod_floor(&m);
        residues.insert(r.to_u64().expect("residue below modulus"));
    }
    Ok(PadicCoverage {
        p,
        k,
        modulus,
        coverage: residues.len() as f64 / modulus as f64,
        residues: residues.into_iter().collect(),
        non_integral,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Region {
    /// Bounds as decimals; `"-inf"` / `"inf"` for unbounded ends.
    pub from: String,
    pub to: String,
    /// Sign of `d(t)` on the region.
    pub sign: i8,
    pub hits: u64,
    pub hit: bool,
    /// Fraction of the histogram bins meeting the region that contain a
    /// parameter from it.
    pub coverage: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentReport {
    pub regions: Vec<Region>,
}

/// Partition of the line by the real roots of `d(t) = c (t^2 - a)`.
pub fn component_report(
    f: &FamilySpec,
    params: &[Rat],
    lo: &Rat,
    hi: &Rat,
    bins: usize,
) -> Result<ComponentReport> {
    let Family::TwistQuadratic { c, a, .. } = &f.family else {
        return Err(Error::WrongFamilyKind("twist_quadratic"));
    };
    if lo >= hi || bins == 0 {
        return Err(Error::InvalidInput(
            "histogram needs lo < hi and bins >= 1".into(),
        ));
    }
    let c_sign: i8 = if *c > int(0) { 1 } else { -1 };
    let zero = int(0);
    // region index of t, or None on a root
    let (bounds, signs): (Vec<(f64, f64)>, Vec<i8>) = if *a > zero {
        let r = a.to_f64().unwrap_or(f64::INFINITY).sqrt();
        (
            vec![(f64::NEG_INFINITY, -r), (-r, r), (r, f64::INFINITY)],
            vec![c_sign, -c_sign, c_sign],
        )
    } else if *a == zero {
        (
            vec![(f64::NEG_INFINITY, 0.0), (0.0, f64::INFINITY)],
            vec![c_sign, c_sign],
        )
    } else {
        (vec![(f64::NEG_INFINITY, f64::INFINITY)], vec![c_sign])
    };
    let region_of = |t: &Rat| -> Option<usize> {
        let t2 = t * t;
        if *a > zero {
            match t2.cmp(a) {
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Less => Some(1),
                std::cmp::Ordering::Greater => Some(if *t < zero { 0 } else { 2 }),
            }
        } else if *a == zero {
            match t.cmp(&zero) {
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Less => Some(0),
                std::cmp::Ordering::Greater => Some(1),
            }
        } else {
            Some(0)
        }
    };
    let n = bounds.len();
    let mut hits = vec![0u64; n];
    let mut bin_hit = vec![vec![false; bins]; n];
    for t in params {
        if let Some(r) = region_of(t) {
            hits[r] += 1;
            if let Some(b) = bin_index(t, lo, hi, bins) {
                bin_hit[r][b] = true;
            }
        }
    }
    let (lo_f, hi_f) = (lo.to_f64().unwrap_or(0.0), hi.to_f64().unwrap_or(0.0));
    let width = (hi_f - lo_f) / bins as f64;
    let regions = (0..n)
        .map(|r| {
            let (from, to) = bounds[r];
            let meeting = (0..bins)
                .filter(|&b| {
                    let (b_lo, b_hi) = (lo_f + width * b as f64, lo_f + width * (b + 1) as f64);
                    b_hi > from && b_lo < to
                })
                .count();
            let covered = bin_hit[r].iter().filter(|&&h| h).count();
            let text = |x: f64| {
                if x.is_infinite() {
                    if x > 0.0 { "inf" } else { "-inf" }.to_string()
                } else {
                    format!("{x}")
                }
            };
            Region {
                from: text(from),
                to: text(to),
                sign: signs[r],
                hits: hits[r],
                hit: hits[r] > 0,
                coverage: if meeting == 0 {
                    0.0
                } else {
                    covered as f64 / meeting as f64
                },
            }
        })
        .collect();
    Ok(ComponentReport { regions })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    pub distinct_params: usize,
    pub real_histogram: Histogram,
    pub padic: Vec<PadicCoverage>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub component_coverage: Option<ComponentReport>,
}

/// Report on the default grid.
pub fn density_report(f: &FamilySpec, params: &[Rat]) -> DensityReport {
    let mut distinct: Vec<&Rat> = params.iter().collect();
    distinct.sort();
    distinct.dedup();
    let (lo, hi) = (int(DEFAULT_LO), int(DEFAULT_HI));
    let real_histogram =
        real_histogram(params, &lo, &hi, DEFAULT_BINS).expect("default grid is valid");
    let padic = DEFAULT_PRIMES
        .iter()
        .flat_map(|&p| (1..=DEFAULT_MAX_K).map(move |k| (p, k)))
        .map(|(p, k)| padic_coverage(params, p, k).expect("default primes are valid"))
        .collect();
    let component_coverage = component_report(f, params, &lo, &hi, DEFAULT_BINS).ok();
    DensityReport {
        distinct_params: distinct.len(),
        real_histogram,
        padic,
        component_coverage,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::Poly;
    use crate::arith::rat::rat;

    #[test]
    fn histograms() {
        let h = real_histogram(&[rat(-5, 6), rat(3, 4)], &int(-1), &int(1), 2).unwrap();
        assert_eq!(h.counts, vec![1, 1]);
        assert_eq!(h.coverage, 1.0);
        let h = real_histogram(&[], &int(-1), &int(1), 2).unwrap();
        assert_eq!(h.coverage, 0.0);
        let h = real_histogram(&vec![int(3); 4], &int(-10), &int(10), 20).unwrap();
        assert_eq!(h.counts.iter().filter(|&&c| c > 0).count(), 1);
        assert_eq!(h.in_range, 4);
        assert_eq!(h.csv_rows()[0], ["-10", "-9", "0"]);
        assert!(real_histogram(&[], &int(1), &int(1), 2).is_err());
    }

    #[test]
    fn residues() {
        let ints: Vec<Rat> = (0..5).map(int).collect();
        assert_eq!(padic_coverage(&ints, 5, 1).unwrap().coverage, 1.0);
        let c = padic_coverage(&[rat(1, 5)], 5, 1).unwrap();
        assert_eq!(c.non_integral, 1);
        assert!(c.residues.is_empty());
        let c = padic_coverage(&[int(6)], 5, 1).unwrap();
        assert_eq!(c.residues, vec![1]);
        assert_eq!(c.coverage, 0.2);
        // 1/2 = 3 mod 5
        assert_eq!(
            padic_coverage(&[rat(1, 2)], 5, 1).unwrap().residues,
            vec![3]
        );
    }

    fn quad(a: i64) -> FamilySpec {
        FamilySpec::new(Family::TwistQuadratic {
            c: int(1),
            a: int(a),
            p: Poly::new(vec![int(1), int(0), int(0), int(1)]),
        })
    }

    #[test]
    fn sign_regions() {
        let params = [int(1), int(2)];
        let r = component_report(&quad(-1), &params, &int(-10), &int(10), 20).unwrap();
        assert_eq!(r.regions.len(), 1);
        let h = real_histogram(&params, &int(-10), &int(10), 20).unwrap();
        assert_eq!(r.regions[0].coverage, h.coverage);

        let r = component_report(&quad(1), &[int(2), int(-2)], &int(-10), &int(10), 20).unwrap();
        assert_eq!(r.regions.len(), 3);
        assert!(r.regions[0].hit && !r.regions[1].hit && r.regions[2].hit);
        assert_eq!(r.regions[1].sign, -1);

        let f = FamilySpec::new(Family::CubicPencil);
        assert_eq!(
            component_report(&f, &[], &int(-1), &int(1), 2),
            Err(Error::WrongFamilyKind("twist_quadratic"))
        );
    }
}
