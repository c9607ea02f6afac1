//! Scalar abstraction shared by the polynomial, curve and interval code.
//!
//! The group law and polynomial algebra only need field operations, so they
//! are written once against [`Field`] and instantiated for exact rationals,
//! prime fields (reduction of curves) and floating point (quick numerical
//! cross-checks).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Zero};

/// A commutative field with the handful of operations the generic code needs.
///
/// Constants are produced relative to an existing element (`zero_like`,
/// `i64_like`) so that fields with a runtime modulus fit the same trait.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn is_zero_elem(&self) -> bool;
    fn i64_like(&self, n: i64) -> Self;

    fn zero_like(&self) -> Self {
        self.i64_like(0)
    }

    fn one_like(&self) -> Self {
        self.i64_like(1)
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn pow_u32(&self, e: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

macro_rules! impl_field_via_num {
    ($($t:ty),*) => {$(
        impl Field for $t {
            fn is_zero_elem(&self) -> bool {
                Zero::is_zero(self)
            }

            fn i64_like(&self, n: i64) -> Self {
                <$t as FromPrimitive>::from_i64(n).expect("small integer constant")
            }

            fn zero_like(&self) -> Self {
                <$t as Zero>::zero()
            }

            fn one_like(&self) -> Self {
                <$t as One>::one()
            }
        }
    )*};
}

impl_field_via_num!(f32, f64, BigRational);

/// Element of the prime field with `modulus` elements. The modulus is a
/// runtime value and is expected to be an odd prime below 2^31.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        let m = modulus as i64;
        Fp {
            value: value.rem_euclid(m) as u64,
            modulus,
        }
    }

    pub fn from_bigint(value: &BigInt, modulus: u64) -> Self {
        let m = BigInt::from(modulus);
        let r = ((value % &m) + &m) % &m;
        Fp {
            value: u64::try_from(r).expect("residue fits in u64"),
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn inverse(&self) -> Option<Fp> {
        if self.value == 0 {
            return None;
        }
        // extended Euclid on (value, modulus)
        let (mut r0, mut r1) = (self.modulus as i128, self.value as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if r0 != 1 {
            return None;
        }
        Some(Fp {
            value: t0.rem_euclid(self.modulus as i128) as u64,
            modulus: self.modulus,
        })
    }

    fn check(&self, other: &Fp) {
        debug_assert_eq!(self.modulus, other.modulus, "mixed prime fields");
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        Fp {
            value: (self.value + rhs.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        Fp {
            value: (self.value + self.modulus - rhs.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        Fp {
            value: ((self.value as u128 * rhs.value as u128) % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }
}

impl Div for Fp {
    type Output = Fp;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Fp) -> Fp {
        self * rhs.inverse().expect("division by zero in prime field")
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Field for Fp {
    fn is_zero_elem(&self) -> bool {
        self.value == 0
    }

    fn i64_like(&self, n: i64) -> Self {
        Fp::new(n, self.modulus)
    }
}

/// Scalars that can carry interval endpoints. Floating types widen each
/// computed endpoint by one ulp; exact types leave endpoints untouched.
pub trait IntervalScalar: Field + PartialOrd {
    fn round_down(self) -> Self;
    fn round_up(self) -> Self;
}

impl IntervalScalar for f64 {
    fn round_down(self) -> Self {
        self.next_down()
    }

    fn round_up(self) -> Self {
        self.next_up()
    }
}

impl IntervalScalar for f32 {
    fn round_down(self) -> Self {
        self.next_down()
    }

    fn round_up(self) -> Self {
        self.next_up()
    }
}

impl IntervalScalar for BigRational {
    fn round_down(self) -> Self {
        self
    }

    fn round_up(self) -> Self {
        self
    }
}
