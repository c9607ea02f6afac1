//! Integer factorization, squarefree parts and linear algebra in the square
//! class group Q*/Q*^2.
//!
//! Factorization is trial division by the primes below 10^6 followed by
//! Miller-Rabin and Pollard-Brent rho on whatever cofactor remains.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::Rat;

const TRIAL_LIMIT: u32 = 1_000_000;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        sieve
            .iter()
            .enumerate()
            .filter_map(|(i, &p)| p.then_some(i as u32))
            .collect()
    })
}

fn is_probable_prime(n: &BigUint) -> bool {
    if n < &BigUint::from(2u32) {
        return false;
    }
    for &p in &small_primes()[..25] {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    // the first 20 prime bases are deterministic below 3.3e24
    'bases: for &a in &small_primes()[..20] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let m: u64 = 128;
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
    }
    unreachable!()
}

fn split_into(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        out.push(n);
        return;
    }
    // rho is slow on prime powers; all remaining factors exceed 2^19
    let max_k = (n.bits() / 19) as u32;
    for k in 2..=max_k {
        let r = n.nth_root(k);
        if r.pow(k) == n {
            for _ in 0..k {
                split_into(r.clone(), out);
            }
            return;
        }
    }
    let d = pollard_brent(&n);
    let e = &n / &d;
    split_into(d, out);
    split_into(e, out);
}

/// Prime factorization of a positive integer, ascending primes with exponents.
pub fn factor(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "factor(0)");
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let mut rest = n.clone();
    if let Some(mut m) = rest.to_u64() {
        for &p in small_primes() {
            let p = p as u64;
            if p * p > m {
                break;
            }
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            if e > 0 {
                out.push((BigUint::from(p), e));
            }
        }
        rest = BigUint::from(m);
    } else {
        for &p in small_primes() {
            let pb = BigUint::from(p);
            if &pb * &pb > rest {
                break;
            }
            let mut e = 0;
            while (&rest % p).is_zero() {
                rest /= p;
                e += 1;
            }
            if e > 0 {
                out.push((pb, e));
            }
        }
    }
    if rest.is_one() {
        return out;
    }
    let limit = BigUint::from(TRIAL_LIMIT);
    if rest < &limit * &limit {
        out.push((rest, 1));
        return out;
    }
    let mut big = Vec::new();
    split_into(rest, &mut big);
    big.sort();
    for p in big {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// An element of Q*/Q*^2, represented by its squarefree integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass {
    squarefree: BigInt,
    primes: Vec<BigInt>,
}

impl SquareClass {
    pub fn squarefree(&self) -> &BigInt {
        &self.squarefree
    }

    pub fn primes(&self) -> &[BigInt] {
        &self.primes
    }

    pub fn is_negative(&self) -> bool {
        self.squarefree.sign() == Sign::Minus
    }

    pub fn is_unit(&self) -> bool {
        self.squarefree.is_one()
    }

    pub fn as_rat(&self) -> Rat {
        Rat::from_integer(self.squarefree.clone())
    }
}

impl Serialize for SquareClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.squarefree.to_string())
    }
}

/// Squarefree `s` with `n = s * m^2`; `s` carries the sign of `n`.
pub fn squarefree_part(n: &BigInt) -> Result<SquareClass> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut primes = Vec::new();
    let mut s = BigInt::one();
    for (p, e) in factor(n.magnitude()) {
        if e % 2 == 1 {
            let p = BigInt::from(p);
            s *= &p;
            primes.push(p);
        }
    }
    if n.sign() == Sign::Minus {
        s = -s;
    }
    Ok(SquareClass {
        squarefree: s,
        primes,
    })
}

/// Square class of a nonzero rational (that of `num * den`).
pub fn squarefree_part_rat(q: &Rat) -> Result<SquareClass> {
    squarefree_part(&(q.numer() * q.denom()))
}

/// Coordinates and exponent vectors of an independence computation over F2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct F2Record {
    /// `"-1"` for the sign bit, then the primes involved, ascending.
    pub coordinates: Vec<String>,
    /// One bit string per class, aligned with `coordinates`.
    pub vectors: Vec<String>,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Independence {
    pub independent: bool,
    /// Indices of a nonempty subset whose product is a square, when dependent.
    pub dependency: Option<Vec<usize>>,
    pub record: F2Record,
}

/// Linear independence of square classes in Q*/Q*^2 as F2 vectors.
pub fn square_class_independent(classes: &[SquareClass]) -> Result<Independence> {
    if classes.iter().any(SquareClass::is_unit) {
        return Err(Error::UnitClass);
    }
    let mut primes: Vec<BigInt> = classes.iter().flat_map(|c| c.primes.clone()).collect();
    primes.sort();
    primes.dedup();
    let width = primes.len() + 1;
    let vector = |c: &SquareClass| -> Vec<bool> {
        let mut v = vec![false; width];
        v[0] = c.is_negative();
        for p in &c.primes {
            let i = primes.binary_search(p).expect("prime collected above");
            v[i + 1] = true;
        }
        v
    };
    let vectors: Vec<Vec<bool>> = classes.iter().map(vector).collect();

    // reduced rows with the set of input classes that produced them
    let mut basis: Vec<(usize, Vec<bool>, Vec<bool>)> = Vec::new();
    let mut dependency = None;
    for (i, v) in vectors.iter().enumerate() {
        let mut row = v.clone();
        let mut combo = vec![false; classes.len()];
        combo[i] = true;
        for (pivot, brow, bcombo) in &basis {
            if row[*pivot] {
                xor_into(&mut row, brow);
                xor_into(&mut combo, bcombo);
            }
        }
        match row.iter().position(|&b| b) {
            Some(pivot) => basis.push((pivot, row, combo)),
            None => {
                if dependency.is_none() {
                    dependency = Some(
                        combo
                            .iter()
                            .enumerate()
                            .filter_map(|(j, &b)| b.then_some(j))
                            .collect(),
                    );
                }
            }
        }
    }
    let record = F2Record {
        coordinates: std::iter::once("-1".to_string())
            .chain(primes.iter().map(BigInt::to_string))
            .collect(),
        vectors: vectors
            .iter()
            .map(|v| v.iter().map(|&b| if b { '1' } else { '0' }).collect())
            .collect(),
        rank: basis.len(),
    };
    Ok(Independence {
        independent: dependency.is_none(),
        dependency,
        record,
    })
}

fn xor_into(a: &mut [bool], b: &[bool]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= *y;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(n: i64) -> SquareClass {
        squarefree_part(&BigInt::from(n)).unwrap()
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(class(24).squarefree(), &BigInt::from(6));
        assert_eq!(class(1).squarefree(), &BigInt::from(1));
        assert_eq!(class(-50).squarefree(), &BigInt::from(-2));
        assert_eq!(class(-1).squarefree(), &BigInt::from(-1));
        assert_eq!(squarefree_part(&BigInt::zero()), Err(Error::ZeroInput));
        assert_eq!(class(-50).primes(), &[BigInt::from(2)]);
    }

    #[test]
    fn factors_with_large_prime_cofactors() {
        // 1000003 * 1000033 exceeds the trial-division range squared boundary
        let n = BigUint::from(1_000_003u64 * 1_000_033u64);
        let f = factor(&n);
        assert_eq!(
            f,
            vec![
                (BigUint::from(1_000_003u32), 1),
                (BigUint::from(1_000_033u32), 1)
            ]
        );
        let m: BigUint = BigUint::from(2u32).pow(61) - 1u32; // Mersenne prime
        let big = &m * &m * 12u32;
        let f = factor(&big);
        assert_eq!(f.last().unwrap(), &(m, 2));
    }

    #[test]
    fn independence_examples() {
        let r = square_class_independent(&[class(2), class(3), class(5)]).unwrap();
        assert!(r.independent);
        assert_eq!(r.record.rank, 3);

        let r = square_class_independent(&[class(6), class(10), class(15)]).unwrap();
        assert!(!r.independent);
        assert_eq!(r.dependency, Some(vec![0, 1, 2]));

        let r = square_class_independent(&[class(6), class(15), class(30)]).unwrap();
        assert!(r.independent);
        assert_eq!(r.record.coordinates, ["-1", "2", "3", "5"]);
        assert_eq!(r.record.vectors, ["0110", "0011", "0111"]);

        assert_eq!(
            square_class_independent(&[class(2), class(4)]),
            Err(Error::UnitClass)
        );
        // sign is a coordinate
        assert!(
            square_class_independent(&[class(-6), class(6)])
                .unwrap()
                .independent
        );
        assert!(
            !square_class_independent(&[class(-1), class(-3), class(3)])
                .unwrap()
                .independent
        );
    }
}
