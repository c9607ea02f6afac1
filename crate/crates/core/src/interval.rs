//! Closed intervals with outward rounding and interval determinants.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::IntervalScalar;

#[derive(Clone, PartialEq)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

impl<T: IntervalScalar> Interval<T> {
    /// Panics if `lo > hi`.
    pub fn new(lo: T, hi: T) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(x: T) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    /// `[center - radius, center + radius]`, rounded outward.
    pub fn around(center: T, radius: T) -> Self {
        Interval {
            lo: (center.clone() - radius.clone()).round_down(),
            hi: (center + radius).round_up(),
        }
    }

    pub fn lo(&self) -> &T {
        &self.lo
    }

    pub fn hi(&self) -> &T {
        &self.hi
    }

    pub fn contains(&self, x: &T) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&self.lo.zero_like())
    }

    pub fn is_positive(&self) -> bool {
        self.lo > self.lo.zero_like()
    }

    /// Exact scaling by a constant that is representable without rounding
    /// in floating point (a power of two), or any constant for exact types.
    pub fn scale(&self, c: &T) -> Self {
        let a = self.lo.clone() * c.clone();
        let b = self.hi.clone() * c.clone();
        if a <= b {
            Interval {
                lo: a.round_down(),
                hi: b.round_up(),
            }
        } else {
            Interval {
                lo: b.round_down(),
                hi: a.round_up(),
            }
        }
    }

    /// Interval quotient; `None` when the divisor contains zero.
    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.contains_zero() {
            return None;
        }
        let cands = [
            self.lo.clone() / rhs.lo.clone(),
            self.lo.clone() / rhs.hi.clone(),
            self.hi.clone() / rhs.lo.clone(),
            self.hi.clone() / rhs.hi.clone(),
        ];
        Some(hull(cands))
    }
}

fn hull<T: IntervalScalar>(cands: [T; 4]) -> Interval<T> {
    let mut lo = cands[0].clone();
    let mut hi = cands[0].clone();
    for c in &cands[1..] {
        if *c < lo {
            lo = c.clone();
        }
        if *c > hi {
            hi = c.clone();
        }
    }
    Interval {
        lo: lo.round_down(),
        hi: hi.round_up(),
    }
}

impl<T: IntervalScalar> Add for &Interval<T> {
    type Output = Interval<T>;
    fn add(self, rhs: &Interval<T>) -> Interval<T> {
        Interval {
            lo: (self.lo.clone() + rhs.lo.clone()).round_down(),
            hi: (self.hi.clone() + rhs.hi.clone()).round_up(),
        }
    }
}

impl<T: IntervalScalar> Sub for &Interval<T> {
    type Output = Interval<T>;
    fn sub(self, rhs: &Interval<T>) -> Interval<T> {
        Interval {
            lo: (self.lo.clone() - rhs.hi.clone()).round_down(),
            hi: (self.hi.clone() - rhs.lo.clone()).round_up(),
        }
    }
}

impl<T: IntervalScalar> Neg for &Interval<T> {
    type Output = Interval<T>;
    fn neg(self) -> Interval<T> {
        Interval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }
}

impl<T: IntervalScalar> Mul for &Interval<T> {
    type Output = Interval<T>;
    fn mul(self, rhs: &Interval<T>) -> Interval<T> {
        hull([
            self.lo.clone() * rhs.lo.clone(),
            self.lo.clone() * rhs.hi.clone(),
            self.hi.clone() * rhs.lo.clone(),
            self.hi.clone() * rhs.hi.clone(),
        ])
    }
}

impl<T: fmt::Debug> fmt::Debug for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lo, self.hi)
    }
}

/// Enclosure of the determinant of a square interval matrix.
///
/// Up to 4x4 the Leibniz expansion is evaluated term by term; 5x5 to 8x8 use
/// fraction-free (Bareiss) elimination, which yields `None` when a pivot
/// enclosure contains zero and no enclosure can be produced.
pub fn determinant<T: IntervalScalar>(m: &[Vec<Interval<T>>]) -> Result<Option<Interval<T>>> {
    let k = m.len();
    if k == 0 {
        return Err(Error::EmptyInput);
    }
    if m.iter().any(|row| row.len() != k) {
        return Err(Error::InvalidInput("matrix is not square".into()));
    }
    match k {
        1..=4 => Ok(Some(leibniz(m))),
        5..=8 => Ok(bareiss(m)),
        _ => Err(Error::TooManyPoints(k)),
    }
}

fn leibniz<T: IntervalScalar>(m: &[Vec<Interval<T>>]) -> Interval<T> {
    let k = m.len();
    let zero = Interval::point(m[0][0].lo.zero_like());
    let mut total = zero;
    let mut perm: Vec<usize> = (0..k).collect();
    permutations(&mut perm, 0, &mut |p, odd| {
        let mut term = m[0][p[0]].clone();
        for (row, &col) in p.iter().enumerate().skip(1) {
            term = &term * &m[row][col];
        }
        total = if odd { &total - &term } else { &total + &term };
    });
    total
}

/// Visits every permutation of `p[start..]` with its parity relative to the
/// identity.
fn permutations(p: &mut Vec<usize>, start: usize, visit: &mut dyn FnMut(&[usize], bool)) {
    fn rec(p: &mut Vec<usize>, start: usize, odd: bool, visit: &mut dyn FnMut(&[usize], bool)) {
        if start == p.len() {
            visit(p, odd);
            return;
        }
        for i in start..p.len() {
            p.swap(start, i);
            rec(p, start + 1, odd ^ (i != start), visit);
            p.swap(start, i);
        }
    }
    rec(p, start, false, visit)
}

fn bareiss<T: IntervalScalar>(m: &[Vec<Interval<T>>]) -> Option<Interval<T>> {
    let k = m.len();
    let mut a: Vec<Vec<Interval<T>>> = m.to_vec();
    let mut prev = Interval::point(m[0][0].lo.one_like());
    for p in 0..k - 1 {
        // Gram matrices of independent points are positive definite, so no
        // pivoting: a pivot enclosing zero means the enclosure is too coarse.
        if a[p][p].contains_zero() {
            return None;
        }
        for i in p + 1..k {
            for j in p + 1..k {
                let num = &(&a[p][p] * &a[i][j]) - &(&a[i][p] * &a[p][j]);
                a[i][j] = num.checked_div(&prev)?;
            }
        }
        prev = a[p][p].clone();
    }
    Some(a[k - 1][k - 1].clone())
}
