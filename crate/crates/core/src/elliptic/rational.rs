//! Operations specific to curves over the rationals: integral models,
//! torsion screening, reduction modulo primes and the string forms used in
//! reports.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::rat::{format_rat, is_integral, parse_rat};
use crate::arith::squarefree::factor;
use crate::elliptic::curve::{Curve, Point};
use crate::elliptic::height::{ln_biguint, Fixed};
use crate::error::{Error, Result};
use crate::scalar::Fp;
use crate::{CurveQ, PointQ, Rat};

/// Every rational torsion point has order at most 12.
pub const MAX_TORSION_ORDER: i64 = 12;

/// Integral model of a rational curve together with the scaling `u` that
/// produced it: `(A, B) -> (u^4 A, u^6 B)`, `(x, y) -> (u^2 x, u^3 y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegralModel {
    pub curve: CurveQ,
    pub scale: Rat,
}

impl IntegralModel {
    pub fn map_point(&self, p: &PointQ) -> PointQ {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let u2 = &self.scale * &self.scale;
                let u3 = &u2 * &self.scale;
                Point::Affine(x * u2, y * u3)
            }
        }
    }

    pub fn a_int(&self) -> BigInt {
        self.curve.a().to_integer()
    }

    pub fn b_int(&self) -> BigInt {
        self.curve.b().to_integer()
    }
}

impl Curve<Rat> {
    /// Minimal positive integer `u` making `u^4 A` and `u^6 B` integral.
    pub fn integral_model(&self) -> IntegralModel {
        let mut u = BigUint::one();
        let da = self.a().denom().magnitude().clone();
        let db = self.b().denom().magnitude().clone();
        let l = da.lcm(&db);
        if !l.is_one() {
            for (p, _) in factor(&l) {
                let ea = valuation(&da, &p);
                let eb = valuation(&db, &p);
                let k = ea.div_ceil(4).max(eb.div_ceil(6));
                u *= p.pow(k);
            }
        }
        let scale = Rat::from_integer(BigInt::from(u));
        let u4 = scale.pow(4);
        let u6 = scale.pow(6);
        let curve = Curve::new(self.a() * u4, self.b() * u6).expect("isomorphic curve is smooth");
        IntegralModel { curve, scale }
    }

    /// True iff `n P = O` for some `1 <= n <= 12`.
    ///
    /// Runs on the integral model, where torsion points have integral
    /// coordinates (Nagell-Lutz); the first non-integral multiple ends the
    /// search with `false`.
    pub fn is_torsion(&self, p: &PointQ) -> Result<bool> {
        if !self.contains(p) {
            return Err(Error::PointNotOnCurve);
        }
        let model = self.integral_model();
        Ok(torsion_on_integral_model(&model.curve, &model.map_point(p)))
    }

    /// `log max(|u|, v)` for `x(P) = u/v`; zero at infinity.
    pub fn naive_height(p: &PointQ) -> Fixed {
        match p {
            Point::Infinity => Fixed::zero(),
            Point::Affine(x, _) => {
                let m = x.numer().magnitude().max(x.denom().magnitude()).clone();
                ln_biguint(&m)
            }
        }
    }

    /// Reduction of the integral model modulo a prime of good reduction.
    pub fn reduce_mod_p(&self, p: u64) -> Result<Curve<Fp>> {
        check_prime(p)?;
        let model = self.integral_model();
        reduce_integral_curve(&model, p)
    }

    /// Image of `P` on the reduction of the integral model modulo `p`.
    pub fn reduce_point_mod_p(&self, pt: &PointQ, p: u64) -> Result<Point<Fp>> {
        if !self.contains(pt) {
            return Err(Error::PointNotOnCurve);
        }
        check_prime(p)?;
        let model = self.integral_model();
        reduce_integral_curve(&model, p)?;
        Ok(match model.map_point(pt) {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let m = BigInt::from(p);
                if x.denom().is_multiple_of(&m) {
                    Point::Infinity
                } else {
                    Point::Affine(reduce_rat(&x, p), reduce_rat(&y, p))
                }
            }
        })
    }
}

fn valuation(n: &BigUint, p: &BigUint) -> u32 {
    let mut n = n.clone();
    let mut e = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        e += 1;
    }
    e
}

fn check_prime(p: u64) -> Result<()> {
    let f = factor(&BigUint::from(p.max(1)));
    if p < 2 || f.len() != 1 || f[0].1 != 1 || p >= 1 << 31 {
        return Err(Error::InvalidInput(format!(
            "{p} is not a prime below 2^31"
        )));
    }
    Ok(())
}

fn reduce_rat(q: &Rat, p: u64) -> Fp {
    let n = Fp::from_bigint(q.numer(), p);
    let d = Fp::from_bigint(q.denom(), p);
    n / d
}

fn reduce_integral_curve(model: &IntegralModel, p: u64) -> Result<Curve<Fp>> {
    let disc = model.curve.discriminant().to_integer();
    if disc.is_multiple_of(&BigInt::from(p)) {
        return Err(Error::BadReduction(p));
    }
    let a = Fp::from_bigint(&model.a_int(), p);
    let b = Fp::from_bigint(&model.b_int(), p);
    Curve::new(a, b).map_err(|_| Error::BadReduction(p))
}

pub(crate) fn torsion_on_integral_model(curve: &CurveQ, p: &PointQ) -> bool {
    let mut q = p.clone();
    for _ in 1..=MAX_TORSION_ORDER {
        match &q {
            Point::Infinity => return true,
            Point::Affine(x, y) => {
                if !is_integral(x) || !is_integral(y) {
                    return false;
                }
            }
        }
        q = curve.add_unchecked(&q, p);
    }
    q.is_infinity()
}

/// `"inf"` or `"x,y"`.
pub fn format_point(p: &PointQ) -> String {
    match p {
        Point::Infinity => "inf".to_string(),
        Point::Affine(x, y) => format!("{},{}", format_rat(x), format_rat(y)),
    }
}

pub fn parse_point(s: &str) -> Result<PointQ> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("inf") {
        return Ok(Point::Infinity);
    }
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("point must be \"inf\" or \"x,y\": {s:?}")))?;
    Ok(Point::Affine(parse_rat(x)?, parse_rat(y)?))
}

/// `"A,B"` for the curve `y^2 = x^3 + A x + B`.
pub fn parse_curve(s: &str) -> Result<CurveQ> {
    let (a, b) = s
        .trim()
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("curve must be \"A,B\": {s:?}")))?;
    Curve::new(parse_rat(a)?, parse_rat(b)?)
}

impl Serialize for Curve<Rat> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Curve", 2)?;
        st.serialize_field("A", &format_rat(self.a()))?;
        st.serialize_field("B", &format_rat(self.b()))?;
        st.end()
    }
}

impl Serialize for Point<Rat> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_point(self))
    }
}

/// Integer value of a rational known to be integral, for small reporting.
pub fn small_integer(q: &Rat) -> Option<i64> {
    if q.denom().is_one() {
        q.numer().to_i64()
    } else {
        None
    }
}
