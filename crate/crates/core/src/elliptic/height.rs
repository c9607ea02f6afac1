//! Canonical heights by the doubling limit
//! `h^(P) = lim h(x(2^N P)) / 4^N`, `h(u/v) = log max(|u|, v)`,
//! on the integral model of the curve.
//!
//! Error bound. Silverman's difference bound (Math. Comp. 55, 1990,
//! Theorem 1.1) for an integral Weierstrass model, in the normalization
//! `h_S = h(x)/2`, reads
//!
//! ```text
//! -h(j)/8 - mu - 0.973 <= h^_S(P) - h(x(P))/2 <= mu + 1.07
//! mu = h(Delta)/12 + h_inf(j)/12 + h_inf(b2/12)/2 + log(2*)/2
//! ```
//!
//! with `b2 = 0` and `2* = 1` for short models. Writing `C = max(L, U)` for
//! the two sides, the doubled normalization used here satisfies
//! `|h^(P) - h(x(2^N P))/4^N| <= 2C/4^N`. The alternative upper constant
//! `h(j)/12 + h(Delta)/12 + 1.07` from the same theorem is folded into `U`.
//!
//! Doubling works on reduced pairs `x = u/v`. The duplication numerator and
//! denominator share only factors of `256 (4A^3 + 27B^2)^2` (their
//! resultant), so reduction needs a gcd against that constant rather than a
//! gcd of the two full-size integers.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::elliptic::curve::Point;
use crate::elliptic::rational::IntegralModel;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::{CurveQ, PointQ};

/// Hard cap on the number of doublings.
pub const MAX_LEVEL: u32 = 14;

const FRAC: u64 = 384;
const DECIMALS: usize = 45;

/// Signed fixed-point real with `FRAC` fractional bits.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fixed(BigInt);

impl Fixed {
    pub fn zero() -> Self {
        Fixed(BigInt::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Fixed(BigInt::from(n) << FRAC)
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Fixed(self.0.abs())
    }

    /// Division by `4^n`, truncating.
    pub fn div_pow4(&self, n: u32) -> Self {
        Fixed(&self.0 >> (2 * n as u64))
    }

    pub fn half(&self) -> Self {
        Fixed(&self.0 >> 1u32)
    }

    pub fn to_f64(&self) -> f64 {
        let shift = FRAC - 64;
        let top = &self.0 >> shift;
        match top.to_f64() {
            Some(v) => v / 2f64.powi(64),
            None => f64::INFINITY,
        }
    }

    /// Fixed decimal form with `DECIMALS` digits after the point.
    pub fn to_decimal(&self) -> String {
        let scale = BigInt::from(10u32).pow(DECIMALS as u32);
        let scaled = (&self.0.abs() * scale + (BigInt::one() << (FRAC - 1))) >> FRAC;
        let digits = scaled.to_string();
        let digits = format!("{digits:0>width$}", width = DECIMALS + 1);
        let (int, frac) = digits.split_at(digits.len() - DECIMALS);
        let sign = if self.0.is_negative() && !scaled.is_zero() {
            "-"
        } else {
            ""
        };
        format!("{sign}{int}.{frac}")
    }
}

impl std::ops::Add for &Fixed {
    type Output = Fixed;
    fn add(self, rhs: &Fixed) -> Fixed {
        Fixed(&self.0 + &rhs.0)
    }
}

impl std::ops::Sub for &Fixed {
    type Output = Fixed;
    fn sub(self, rhs: &Fixed) -> Fixed {
        Fixed(&self.0 - &rhs.0)
    }
}

impl fmt::Debug for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal())
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal())
    }
}

/// `2 atanh(z)` for a fixed-point `0 <= z < 1/3` at `FRAC` bits.
fn two_atanh(z: &BigInt) -> BigInt {
    let z2 = (z * z) >> FRAC;
    let mut term = z.clone();
    let mut acc = BigInt::zero();
    let mut k = 1u32;
    while !term.is_zero() {
        acc += &term / k;
        term = (&term * &z2) >> FRAC;
        k += 2;
    }
    acc << 1u32
}

fn ln2() -> &'static BigInt {
    static LN2: OnceLock<BigInt> = OnceLock::new();
    LN2.get_or_init(|| two_atanh(&((BigInt::one() << FRAC) / 3u32)))
}

const LN_TABLE_BITS: u32 = 6;

/// `ln(1 + j / 64)` for `j = 0..64`.
fn ln_table() -> &'static [BigInt] {
    static TABLE: OnceLock<Vec<BigInt>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let one = BigInt::one() << FRAC;
        (0..1u32 << LN_TABLE_BITS)
            .map(|j| {
                let c = &one + ((BigInt::from(j) << FRAC) >> LN_TABLE_BITS);
                two_atanh(&(((&c - &one) << FRAC) / (&c + &one)))
            })
            .collect()
    })
}

/// Natural logarithm of a positive integer.
pub fn ln_biguint(n: &BigUint) -> Fixed {
    assert!(!n.is_zero(), "log of zero");
    let e = n.bits() - 1;
    let n = BigInt::from(n.clone());
    // y = n / 2^e in [1, 2), split as c * (y / c) with c = 1 + j/64
    let y = if e <= FRAC {
        n << (FRAC - e)
    } else {
        n >> (e - FRAC)
    };
    let j = ((&y >> (FRAC - LN_TABLE_BITS as u64)) - (1u32 << LN_TABLE_BITS))
        .to_usize()
        .expect("table index");
    let one = BigInt::one() << FRAC;
    let c = &one + ((BigInt::from(j) << FRAC) >> LN_TABLE_BITS);
    let z = ((&y - &c) << FRAC) / (&y + &c);
    Fixed(ln2() * BigInt::from(e) + &ln_table()[j] + two_atanh(&z))
}

/// Bounds `lo <= ln(n) <= hi` in double precision.
fn ln_f64_bounds(n: &BigUint) -> (f64, f64) {
    let bits = n.bits();
    let shift = bits.saturating_sub(53);
    let top = (n >> shift).to_f64().expect("53-bit integer");
    let rem_nonzero = shift > 0 && n.trailing_zeros().unwrap_or(0) < shift;
    let s = shift as f64 * std::f64::consts::LN_2;
    let lo = top.ln() + s;
    let hi = if rem_nonzero {
        (top + 1.0).ln() + s
    } else {
        lo
    };
    let slack = 1e-13 * (1.0 + hi.abs());
    ((lo - slack).max(0.0), hi + slack)
}

/// Height value with a rigorous two-sided error bound.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightEstimate {
    pub value: Fixed,
    /// Upper bound on `|true - value|`.
    pub err: f64,
    /// Number of doublings used.
    pub level: u32,
}

impl HeightEstimate {
    /// Outward-rounded enclosure of the true value.
    pub fn interval(&self) -> Interval<f64> {
        let c = self.value.to_f64();
        // conversion error of to_f64 plus the fixed-point truncation
        let slack = c.abs() * f64::EPSILON * 2.0 + 1e-300;
        Interval::around(c, (self.err + slack).next_up())
    }

    pub fn value_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

impl Serialize for HeightEstimate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("HeightEstimate", 2)?;
        st.serialize_field("value", &self.value.to_decimal())?;
        st.serialize_field("err", &format!("{:e}", self.err))?;
        st.end()
    }
}

/// Per-curve data shared by all height computations on one curve.
#[derive(Debug, Clone)]
pub struct HeightContext {
    model: IntegralModel,
    a: BigInt,
    b: BigInt,
    resultant: BigInt,
    constant: f64,
}

fn ln_f64_up(n: &BigUint) -> f64 {
    ln_f64_bounds(n).1
}

impl HeightContext {
    pub fn new(curve: &CurveQ) -> Self {
        let model = curve.integral_model();
        let a = model.a_int();
        let b = model.b_int();
        let core: BigInt = BigInt::from(4) * a.pow(3) + BigInt::from(27) * b.pow(2);
        let resultant = BigInt::from(256) * &core * &core;

        let disc = BigInt::from(16) * &core;
        let h_disc = ln_f64_up(disc.magnitude());
        let j = model.curve.j_invariant();
        let h_j = ln_f64_up(j.numer().magnitude().max(j.denom().magnitude()));
        let h_inf_j = if j.numer().magnitude() > j.denom().magnitude() {
            h_j - ln_f64_bounds(j.denom().magnitude()).0
        } else {
            0.0
        };
        let mu = h_disc / 12.0 + h_inf_j.max(0.0) / 12.0;
        let lower = h_j / 8.0 + mu + 0.973;
        let upper = (mu + 1.07).max(h_j / 12.0 + h_disc / 12.0 + 1.07);
        let constant = (lower.max(upper) * (1.0 + 1e-12)).next_up();
        HeightContext {
            model,
            a,
            b,
            resultant,
            constant,
        }
    }

    pub fn model(&self) -> &IntegralModel {
        &self.model
    }

    /// `C` with `|h^(P) - h(x(P))| <= 2C` on the integral model.
    pub fn constant(&self) -> f64 {
        self.constant
    }

    /// Error bound after `n` doublings.
    pub fn error_at(&self, n: u32) -> f64 {
        ((2.0 * self.constant) / 4f64.powi(n as i32)).next_up()
    }

    /// Smallest level whose error bound is at most `tol`.
    pub fn level_for(&self, tol: f64) -> Result<u32> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "tolerance must be positive, got {tol}"
            )));
        }
        let mut n = 0;
        while self.error_at(n) > tol {
            n += 1;
            if n > MAX_LEVEL {
                let mut needed = n;
                while self.error_at(needed) > tol {
                    needed += 1;
                }
                return Err(Error::ToleranceUnreachable {
                    tol,
                    needed,
                    cap: MAX_LEVEL,
                });
            }
        }
        Ok(n)
    }

    /// Doubling sequence of a point on the original curve.
    pub fn sequence(&self, p: &PointQ) -> HeightSequence {
        let state = match self.model.map_point(p) {
            Point::Infinity => None,
            Point::Affine(x, _) => Some((x.numer().clone(), x.denom().clone())),
        };
        HeightSequence { state, level: 0 }
    }

    fn double_x(&self, u: &BigInt, v: &BigInt) -> Option<(BigInt, BigInt)> {
        let u2 = u * u;
        let v2 = v * v;
        let uv = u * v;
        let av2 = &self.a * &v2;
        let w = &u2 - &av2;
        let uv3 = &uv * &v2;
        let v4 = &v2 * &v2;
        // (u^2 - a v^2)^2 - 8 b u v^3 and 4 (u v (u^2 + a v^2) + b v^4)
        let num = &w * &w - BigInt::from(8) * &self.b * &uv3;
        let den = BigInt::from(4) * (&uv * (&u2 + &av2) + &self.b * &v4);
        if den.is_zero() {
            return None;
        }
        let g = (&num % &self.resultant).gcd(&self.resultant);
        let g = (&den % &g).gcd(&g);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num / &g, den / &g)
        };
        if den.sign() == Sign::Minus {
            num = -num;
            den = -den;
        }
        Some((num, den))
    }
}

/// Incremental doubling sequence `x(2^k P)`, k = 0, 1, ...
#[derive(Debug, Clone)]
pub struct HeightSequence {
    state: Option<(BigInt, BigInt)>,
    level: u32,
}

impl HeightSequence {
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Advances to level `n` (never backwards) and returns `h(x(2^n P)) / 4^n`.
    pub fn value_at(&mut self, ctx: &HeightContext, n: u32) -> Fixed {
        assert!(n >= self.level, "height sequence cannot move backwards");
        while self.level < n {
            if let Some((u, v)) = &self.state {
                self.state = ctx.double_x(u, v);
            }
            self.level += 1;
        }
        match &self.state {
            None => Fixed::zero(),
            Some((u, v)) => ln_biguint(u.magnitude().max(v.magnitude())).div_pow4(n),
        }
    }
}

/// `h^(P)` to within `tol`.
pub fn canonical_height(curve: &CurveQ, p: &PointQ, tol: f64) -> Result<HeightEstimate> {
    if !curve.contains(p) {
        return Err(Error::PointNotOnCurve);
    }
    let ctx = HeightContext::new(curve);
    let n = ctx.level_for(tol)?;
    let value = ctx.sequence(p).value_at(&ctx, n);
    Ok(HeightEstimate {
        value,
        err: ctx.error_at(n),
        level: n,
    })
}

/// `<P, Q> = (h^(P+Q) - h^(P) - h^(Q)) / 2`, all three at the same level.
pub fn height_pairing(curve: &CurveQ, p: &PointQ, q: &PointQ, tol: f64) -> Result<HeightEstimate> {
    if !curve.contains(p) || !curve.contains(q) {
        return Err(Error::PointNotOnCurve);
    }
    let ctx = HeightContext::new(curve);
    let n = ctx.level_for(tol)?;
    Ok(pairing_at(&ctx, curve, p, q, n))
}

pub(crate) fn pairing_at(
    ctx: &HeightContext,
    curve: &CurveQ,
    p: &PointQ,
    q: &PointQ,
    n: u32,
) -> HeightEstimate {
    let s = curve.add_unchecked(p, q);
    let hs = ctx.sequence(&s).value_at(ctx, n);
    let hp = ctx.sequence(p).value_at(ctx, n);
    let hq = ctx.sequence(q).value_at(ctx, n);
    let err = ctx.error_at(n);
    HeightEstimate {
        value: (&(&hs - &hp) - &hq).half(),
        err: (1.5 * err).next_up(),
        level: n,
    }
}
