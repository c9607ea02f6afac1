//! Short Weierstrass curves `y^2 = x^3 + A x + B` and the chord-tangent law,
//! generic over the coefficient field.

use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq)]
pub struct Curve<F> {
    a: F,
    b: F,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Point<F> {
    Infinity,
    Affine(F, F),
}

impl<F> Point<F> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&F> {
        match self {
            Point::Infinity => None,
            Point::Affine(x, _) => Some(x),
        }
    }

    pub fn y(&self) -> Option<&F> {
        match self {
            Point::Infinity => None,
            Point::Affine(_, y) => Some(y),
        }
    }
}

impl<F: Field> Curve<F> {
    /// Rejects singular cubics (`4A^3 + 27B^2 = 0`).
    pub fn new(a: F, b: F) -> Result<Self> {
        let c = Curve { a, b };
        if c.disc_core().is_zero_elem() {
            return Err(Error::SingularCurve);
        }
        Ok(c)
    }

    pub fn a(&self) -> &F {
        &self.a
    }

    pub fn b(&self) -> &F {
        &self.b
    }

    fn k(&self, n: i64) -> F {
        self.a.i64_like(n)
    }

    /// `4A^3 + 27B^2`.
    pub fn disc_core(&self) -> F {
        self.k(4) * self.a.pow_u32(3) + self.k(27) * self.b.square()
    }

    /// `-16 (4A^3 + 27B^2)`.
    pub fn discriminant(&self) -> F {
        self.k(-16) * self.disc_core()
    }

    /// `j = 1728 (4A)^3 / (16 (4A^3 + 27B^2)) = 6912 A^3 / (4A^3 + 27B^2)`.
    pub fn j_invariant(&self) -> F {
        self.k(6912) * self.a.pow_u32(3) / self.disc_core()
    }

    /// `x^3 + A x + B`.
    pub fn rhs(&self, x: &F) -> F {
        x.pow_u32(3) + self.a.clone() * x.clone() + self.b.clone()
    }

    pub fn contains(&self, p: &Point<F>) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => (y.square() - self.rhs(x)).is_zero_elem(),
        }
    }

    fn ensure(&self, p: &Point<F>) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::PointNotOnCurve)
        }
    }

    pub fn neg(&self, p: &Point<F>) -> Point<F> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x.clone(), -y.clone()),
        }
    }

    pub fn add(&self, p: &Point<F>, q: &Point<F>) -> Result<Point<F>> {
        self.ensure(p)?;
        self.ensure(q)?;
        Ok(self.add_unchecked(p, q))
    }

    pub fn sub(&self, p: &Point<F>, q: &Point<F>) -> Result<Point<F>> {
        self.add(p, &self.neg(q))
    }

    pub fn double(&self, p: &Point<F>) -> Result<Point<F>> {
        self.ensure(p)?;
        Ok(self.double_unchecked(p))
    }

    /// `n * p`, with `0 * p = O` and `(-n) * p = -(n * p)`.
    pub fn mul(&self, n: i64, p: &Point<F>) -> Result<Point<F>> {
        self.ensure(p)?;
        Ok(self.mul_unchecked(n, p))
    }

    /// Group law without the membership check, for callers that already
    /// know both points lie on the curve (or work in floating point).
    pub fn add_unchecked(&self, p: &Point<F>, q: &Point<F>) -> Point<F> {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        if (x1.clone() - x2.clone()).is_zero_elem() {
            if (y1.clone() + y2.clone()).is_zero_elem() {
                return Point::Infinity;
            }
            return self.double_unchecked(p);
        }
        let slope = (y2.clone() - y1.clone()) / (x2.clone() - x1.clone());
        let x3 = slope.square() - x1.clone() - x2.clone();
        let y3 = slope * (x1.clone() - x3.clone()) - y1.clone();
        Point::Affine(x3, y3)
    }

    pub fn double_unchecked(&self, p: &Point<F>) -> Point<F> {
        let (x, y) = match p {
            Point::Infinity => return Point::Infinity,
            Point::Affine(x, y) => (x, y),
        };
        if y.is_zero_elem() {
            return Point::Infinity;
        }
        let slope = (self.k(3) * x.square() + self.a.clone()) / (self.k(2) * y.clone());
        let x3 = slope.square() - self.k(2) * x.clone();
        let y3 = slope * (x.clone() - x3.clone()) - y.clone();
        Point::Affine(x3, y3)
    }

    pub fn mul_unchecked(&self, n: i64, p: &Point<F>) -> Point<F> {
        let base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Point::Infinity;
        let mut addend = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &addend);
            }
            k >>= 1;
            if k > 0 {
                addend = self.double_unchecked(&addend);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::{int, rat};
    use crate::scalar::Fp;
    use crate::{CurveQ, PointQ};

    fn aff(x: crate::Rat, y: crate::Rat) -> PointQ {
        Point::Affine(x, y)
    }

    #[test]
    fn construction() {
        let c = CurveQ::new(int(-1), int(0)).unwrap();
        assert_eq!(c.discriminant(), int(64));
        assert_eq!(CurveQ::new(int(0), int(0)), Err(Error::SingularCurve));
        assert!(CurveQ::new(int(-16), int(16)).is_ok());
        assert_eq!(CurveQ::new(int(0), int(1)).unwrap().j_invariant(), int(0));
        assert_eq!(c.j_invariant(), int(1728));
        // scaled 37a model keeps j = 110592/37
        let e = CurveQ::new(int(-16), int(16)).unwrap();
        assert_eq!(e.j_invariant(), rat(110592, 37));
    }

    #[test]
    fn chord_and_tangent() {
        let c = CurveQ::new(int(-36), int(0)).unwrap();
        let p = aff(int(-3), int(9));
        let q = aff(int(12), int(36));
        assert_eq!(c.add(&p, &q).unwrap(), aff(rat(-144, 25), rat(-504, 125)));

        let c = CurveQ::new(int(0), int(-2)).unwrap();
        let d = c.double(&aff(int(3), int(5))).unwrap();
        assert_eq!(d, aff(rat(129, 100), rat(-383, 1000)));

        let p = aff(int(3), int(5));
        assert_eq!(c.add(&p, &Point::Infinity).unwrap(), p);
        assert_eq!(c.add(&p, &c.neg(&p)).unwrap(), Point::Infinity);
        assert_eq!(c.add(&p, &aff(int(0), int(0))), Err(Error::PointNotOnCurve));
    }

    #[test]
    fn multiples() {
        let c = CurveQ::new(int(0), int(1)).unwrap();
        let p = aff(int(2), int(3));
        assert_eq!(c.mul(2, &p).unwrap(), aff(int(0), int(1)));
        assert_eq!(c.mul(6, &p).unwrap(), Point::Infinity);
        assert_eq!(c.mul(1, &p).unwrap(), p);
        assert_eq!(c.mul(0, &p).unwrap(), Point::Infinity);
        assert_eq!(c.mul(-5, &p).unwrap(), c.neg(&c.mul(5, &p).unwrap()));
    }

    #[test]
    fn prime_field_instantiation() {
        // y^2 = x^3 - 2 over F_5 contains (3, 0), a point of order 2
        let c = Curve::new(Fp::new(0, 5), Fp::new(-2, 5)).unwrap();
        let p = Point::Affine(Fp::new(3, 5), Fp::new(0, 5));
        assert!(c.contains(&p));
        assert_eq!(c.double(&p).unwrap(), Point::Infinity);
    }

    #[test]
    fn float_instantiation_tracks_exact_law() {
        let c: Curve<f64> = Curve::new(-36.0, 0.0).unwrap();
        let s = c.add_unchecked(&Point::Affine(-3.0, 9.0), &Point::Affine(12.0, 36.0));
        let (x, y) = match s {
            Point::Affine(x, y) => (x, y),
            Point::Infinity => panic!("unexpected infinity"),
        };
        assert!((x + 144.0 / 25.0).abs() < 1e-12);
        assert!((y + 504.0 / 125.0).abs() < 1e-12);
    }
}
