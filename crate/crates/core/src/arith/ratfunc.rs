//! Rational functions in one variable, kept in lowest terms with a monic
//! denominator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::arith::poly::Poly;
use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, PartialEq)]
pub struct RationalFunction<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RationalFunction<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput(
                "zero denominator in rational function".into(),
            ));
        }
        if num.is_zero() {
            let one = den.leading().unwrap().one_like();
            return Ok(RationalFunction {
                num,
                den: Poly::constant(one),
            });
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lc = den.leading().unwrap().clone();
        let inv = lc.one_like() / lc;
        Ok(RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_poly(p: Poly<F>, like: &F) -> Self {
        RationalFunction {
            num: p,
            den: Poly::constant(like.one_like()),
        }
    }

    pub fn constant(c: F) -> Self {
        let one = c.one_like();
        RationalFunction {
            num: Poly::constant(c),
            den: Poly::constant(one),
        }
    }

    pub fn numerator(&self) -> &Poly<F> {
        &self.num
    }

    pub fn denominator(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn eval(&self, x: &F) -> Result<F> {
        let d = self.den.eval(x);
        if d.is_zero_elem() {
            return Err(Error::PoleAtPoint);
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        RationalFunction::new(self.num.scale(s), self.den.clone())
            .expect("denominator stays nonzero")
    }
}

impl<F: Field> Add for &RationalFunction<F> {
    type Output = RationalFunction<F>;
    fn add(self, rhs: &RationalFunction<F>) -> RationalFunction<F> {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl<F: Field> Neg for &RationalFunction<F> {
    type Output = RationalFunction<F>;
    fn neg(self) -> RationalFunction<F> {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<F: Field> Sub for &RationalFunction<F> {
    type Output = RationalFunction<F>;
    fn sub(self, rhs: &RationalFunction<F>) -> RationalFunction<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Mul for &RationalFunction<F> {
    type Output = RationalFunction<F>;
    fn mul(self, rhs: &RationalFunction<F>) -> RationalFunction<F> {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominators")
    }
}

impl<F: Field> Div for &RationalFunction<F> {
    type Output = Result<RationalFunction<F>>;
    fn div(self, rhs: &RationalFunction<F>) -> Result<RationalFunction<F>> {
        if rhs.is_zero() {
            return Err(Error::InvalidInput(
                "division by the zero rational function".into(),
            ));
        }
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl<F: Field + fmt::Display> fmt::Display for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl<F: fmt::Debug> fmt::Debug for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RationalFunction")
            .field("num", &self.num)
            .field("den", &self.den)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::{int, rat};
    use crate::{PolyQ, RatFunc};

    fn pq(cs: &[i64]) -> PolyQ {
        Poly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn normalizes_to_lowest_terms() {
        // (2x^2 - 2) / (2x + 2) = x - 1
        let f = RatFunc::new(pq(&[-2, 0, 2]), pq(&[2, 2])).unwrap();
        assert_eq!(f.numerator(), &pq(&[-1, 1]));
        assert_eq!(f.denominator(), &pq(&[1]));
        let g = RatFunc::new(pq(&[1]), pq(&[0, 3])).unwrap();
        assert_eq!(g.numerator(), &PolyQ::new(vec![rat(1, 3)]));
        assert!(g.denominator().is_monic());
    }

    #[test]
    fn pole_detection() {
        // (λ^2 + 1) / λ at 0
        let f = RatFunc::new(pq(&[1, 0, 1]), pq(&[0, 1])).unwrap();
        assert_eq!(f.eval(&int(0)), Err(Error::PoleAtPoint));
        assert_eq!(f.eval(&int(2)).unwrap(), rat(5, 2));
    }

    #[test]
    fn field_operations() {
        let a = RatFunc::new(pq(&[1]), pq(&[0, 1])).unwrap();
        let b = RatFunc::new(pq(&[1]), pq(&[1, 1])).unwrap();
        let s = &a + &b; // (2x + 1) / (x^2 + x)
        assert_eq!(s.numerator(), &pq(&[1, 2]));
        assert_eq!(s.denominator(), &pq(&[0, 1, 1]));
        let q = (&s / &a).unwrap();
        assert_eq!(q.eval(&int(1)).unwrap(), rat(3, 2));
        assert!((&a - &a).is_zero());
        assert!(RatFunc::new(pq(&[1]), pq(&[])).is_err());
    }
}
