#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use ostrowski::ExactReal;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const SQUARE_FREE: [i64; 10] = [2, 3, 5, 6, 7, 10, 11, 13, 14, 17];

pub fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// Reduced `p/q` in `]0,1[` with `2 <= q <= max_q`.
pub fn unit_rational(rng: &mut ChaCha8Rng, max_q: i64) -> ExactReal {
    loop {
        let q = rng.gen_range(2..=max_q);
        let p = rng.gen_range(1..q);
        if p.gcd(&q) == 1 {
            return ExactReal::ratio(p, q);
        }
    }
}

/// Any rational with denominator at most `max_q` in `[lo, hi[`.
pub fn rational_in(rng: &mut ChaCha8Rng, lo: i64, hi: i64, max_q: i64) -> ExactReal {
    let q = rng.gen_range(1..=max_q);
    let p = rng.gen_range(lo * q..hi * q);
    ExactReal::ratio(p, q)
}

/// Fractional part of `(a + b sqrt d)/c` with `b != 0`.
pub fn unit_quadratic(rng: &mut ChaCha8Rng) -> ExactReal {
    let d = SQUARE_FREE[rng.gen_range(0..SQUARE_FREE.len())];
    quadratic_in_field(rng, d)
}

pub fn quadratic_in_field(rng: &mut ChaCha8Rng, d: i64) -> ExactReal {
    let a = rng.gen_range(-20..=20);
    let b = loop {
        let b = rng.gen_range(-6..=6);
        if b != 0 {
            break b;
        }
    };
    let c = rng.gen_range(1..=12);
    ExactReal::quadratic(rational(a, c), rational(b, c), BigInt::from(d))
        .expect("square-free radicand")
        .frac()
}

/// `{m alpha}`.
pub fn orbit_point(alpha: &ExactReal, m: i64) -> ExactReal {
    (&ExactReal::int(m) * alpha).frac()
}

/// `[0;1,2,1,2,...] = sqrt(3) - 1`.
pub fn alternating_one_two() -> ExactReal {
    "sqrt(3)-1".parse().unwrap()
}
