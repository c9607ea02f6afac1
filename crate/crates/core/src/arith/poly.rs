//! Dense univariate polynomials over a [`Field`], ascending coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, PartialEq)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    /// Builds a polynomial from ascending coefficients, stripping trailing zeros.
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero_elem()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `x`, with coefficients taken from the field of `like`.
    pub fn x(like: &F) -> Self {
        Poly::new(vec![like.zero_like(), like.one_like()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&F> {
        self.coeffs.get(i)
    }

    pub fn is_monic(&self) -> bool {
        self.leading()
            .is_some_and(|c| (c.clone() - c.one_like()).is_zero_elem())
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn scale(&self, s: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * c.i64_like(i as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.one_like() / lc.clone();
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division. Panics when `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if sd < dd {
            return (Poly::zero(), self.clone());
        }
        let zero = lc.zero_like();
        let mut quot = vec![zero; sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let c = rem[i + dd].clone() / lc.clone();
            if !c.is_zero_elem() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = rem[i + j].clone() - c.clone() * dc.clone();
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// True when the polynomial has no repeated root over the algebraic closure.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// `p(x + s)`.
    pub fn shift(&self, s: &F) -> Self {
        let Some(lc) = self.leading() else {
            return Poly::zero();
        };
        let lin = Poly::new(vec![s.clone(), lc.one_like()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = match self.leading() {
            Some(c) => Poly::constant(c.one_like()),
            None => {
                assert!(e > 0, "zero polynomial raised to the power 0");
                return Poly::zero();
            }
        };
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn check_monic_cubic(&self) -> Result<()> {
        match self.degree() {
            Some(3) => {}
            d => {
                return Err(Error::WrongDegree {
                    expected: 3,
                    found: d.map_or(-1, |d| d as i64),
                })
            }
        }
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        Ok(())
    }

    /// For monic `x^3 + a2 x^2 + a1 x + a0`, returns `(A, B, s)` with
    /// `p(x) = (x + s)^3 + A (x + s) + B` and `s = a2 / 3`.
    pub fn depress_cubic(&self) -> Result<(F, F, F)> {
        self.check_monic_cubic()?;
        let c = &self.coeffs;
        let (a0, a1, a2) = (c[0].clone(), c[1].clone(), c[2].clone());
        let k = |n: i64| a0.i64_like(n);
        let s = a2.clone() / k(3);
        let a = a1.clone() - a2.square() / k(3);
        let b = k(2) * a2.pow_u32(3) / k(27) - a2 * a1 / k(3) + a0;
        Ok((a, b, s))
    }

    /// Discriminant `-4A^3 - 27B^2` of the depressed form of a monic cubic.
    pub fn cubic_discriminant(&self) -> Result<F> {
        let (a, b, _) = self.depress_cubic()?;
        let k = |n: i64| a.i64_like(n);
        Ok(k(-4) * a.pow_u32(3) - k(27) * b.square())
    }

    pub fn is_separable_cubic(&self) -> Result<bool> {
        Ok(!self.cubic_discriminant()?.is_zero_elem())
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.clone() + b.clone(),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(out)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<F: Field + fmt::Display> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero_elem() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<F: fmt::Debug> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Poly").field(&self.coeffs).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::{int, rat};
    use crate::{PolyQ, Rat};

    fn pq(cs: &[i64]) -> PolyQ {
        Poly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn evaluation() {
        let p = pq(&[0, -1, 0, 1]);
        assert_eq!(p.eval(&int(2)), int(6));
        assert_eq!(p.eval(&int(0)), int(0));
        assert_eq!(p.eval(&rat(1, 2)), rat(-3, 8));
    }

    #[test]
    fn trailing_zeros_stripped() {
        assert_eq!(pq(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(pq(&[0, 0]).is_zero());
        assert_eq!(pq(&[]).degree(), None);
    }

    #[test]
    fn discriminants() {
        assert_eq!(pq(&[0, -1, 0, 1]).cubic_discriminant().unwrap(), int(4));
        assert_eq!(pq(&[1, 0, 0, 1]).cubic_discriminant().unwrap(), int(-27));
        assert_eq!(pq(&[0, 0, 0, 1]).cubic_discriminant().unwrap(), int(0));
        assert!(!pq(&[0, 0, 0, 1]).is_separable_cubic().unwrap());
        // (x-1)^2 (x+2) = x^3 - 3x + 2 has a double root
        assert!(!pq(&[2, -3, 0, 1]).is_separable_cubic().unwrap());
        // non-depressed: x^3 + x^2 = x^2 (x + 1)
        assert!(!pq(&[0, 0, 1, 1]).is_separable_cubic().unwrap());
        assert!(matches!(
            pq(&[0, 1, 1]).cubic_discriminant(),
            Err(Error::WrongDegree {
                expected: 3,
                found: 2
            })
        ));
        assert_eq!(pq(&[0, 0, 0, 2]).cubic_discriminant(), Err(Error::NotMonic));
    }

    #[test]
    fn depression_roundtrip() {
        // x^3 + 3x^2 + 5x + 7
        let p = pq(&[7, 5, 3, 1]);
        let (a, b, s) = p.depress_cubic().unwrap();
        let depressed = Poly::new(vec![b, a, int(0), int(1)]);
        assert_eq!(depressed.shift(&s), p);
    }

    #[test]
    fn division_and_gcd() {
        let a = pq(&[-1, 0, 1]); // x^2 - 1
        let b = pq(&[1, 1]); // x + 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, pq(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&pq(&[2, 2])), pq(&[1, 1]));
        assert_eq!(pq(&[1, 0, 1]).gcd(&pq(&[0, 1])), pq(&[1]));
        assert!(pq(&[-1, 0, 1]).is_squarefree());
        assert!(!pq(&[1, 2, 1]).is_squarefree());
    }

    #[test]
    fn float_instantiation() {
        let p: Poly<f64> = Poly::new(vec![0.0, -1.0, 0.0, 1.0]);
        assert_eq!(p.eval(&2.0), 6.0);
        assert_eq!(p.cubic_discriminant().unwrap(), 4.0);
    }

    #[test]
    fn shift_matches_eval() {
        let p = pq(&[3, -2, 5, 1]);
        let s = rat(2, 7);
        let q: PolyQ = p.shift(&s);
        for x in [int(0), int(3), rat(-5, 2)] {
            let xs: Rat = x.clone() + s.clone();
            assert_eq!(q.eval(&x), p.eval(&xs));
        }
    }
}
