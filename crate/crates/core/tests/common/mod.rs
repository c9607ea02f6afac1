#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankjump_core::arith::rat::int;
use rankjump_core::elliptic::Point;
use rankjump_core::{CurveQ, PointQ};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integral curve through two random integral points with consecutive x.
pub fn curve_through_two_points(rng: &mut impl Rng) -> (CurveQ, PointQ, PointQ) {
    loop {
        let x1: i64 = rng.gen_range(-12..=12);
        let x2 = x1 + 1;
        let y1: i64 = rng.gen_range(1..=30);
        let y2: i64 = rng.gen_range(1..=30);
        let a = (y2 * y2 - x2.pow(3)) - (y1 * y1 - x1.pow(3));
        let b = y1 * y1 - x1.pow(3) - a * x1;
        let Ok(c) = CurveQ::new(int(a), int(b)) else {
            continue;
        };
        let p = Point::Affine(int(x1), int(y1));
        let q = Point::Affine(int(x2), int(y2));
        if c.is_torsion(&p).unwrap() || c.is_torsion(&q).unwrap() {
            continue;
        }
        return (c, p, q);
    }
}

/// `m P + n Q`.
pub fn combo(c: &CurveQ, m: i64, p: &PointQ, n: i64, q: &PointQ) -> PointQ {
    c.add(&c.mul(m, p).unwrap(), &c.mul(n, q).unwrap()).unwrap()
}

pub fn good_primes(c: &CurveQ, count: usize) -> Vec<u64> {
    (5u64..)
        .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .filter(|&p| c.reduce_mod_p(p).is_ok())
        .take(count)
        .collect()
}
