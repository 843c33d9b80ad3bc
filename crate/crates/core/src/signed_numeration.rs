//! Extension of the numeration to negative integers through CFE-complements.
//!
//! The complement of `d` is `m - d` with `m = (a_1 + 1, a_2, a_3, ...)`. Since
//! `L(m) = 1`, its value is `1 - lambda(d)`. The raw difference may violate the
//! zero condition; each bad zero run is rewritten with the null relation
//! `(0^r, 1, (max,0)^(s-1), max, -1, 0, ...) ~ 0` until the word is admissible.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_numbers::ExactReal;
use crate::numeration::{is_admissible, linear_value, psi, psi_inv, Base, DigitWord, Tail};

/// The digit sequence `m` with `L(m) = 1`.
#[derive(Clone, Debug)]
pub struct ComplementBase<'a> {
    base: &'a Base,
}

impl<'a> ComplementBase<'a> {
    pub fn new(base: &'a Base) -> Self {
        ComplementBase { base }
    }

    pub fn m(&self, k: usize) -> BigInt {
        let a = self.base.max_digit(k);
        if k == 1 {
            a + 1u32
        } else {
            a
        }
    }

    /// `m` as a word: explicit first digit, then the maximal tail.
    pub fn word(&self) -> DigitWord {
        DigitWord::new(vec![self.m(1)], Tail::Maxes)
    }
}

/// `L(d) = sum d_k delta'_{k-1}` for any finitely supported integer digits
/// relative to a zero or maximal tail.
pub fn l_alpha(base: &Base, w: &DigitWord) -> ExactReal {
    linear_value(base, &w.digits, w.tail)
}

struct Sweep<'a> {
    base: &'a Base,
    e: Vec<BigInt>,
    tail: Tail,
    trace: Option<Vec<DigitWord>>,
}

impl Sweep<'_> {
    fn ends_here(&self) -> bool {
        self.tail == Tail::Zeros || self.base.is_rational()
    }

    fn materialize(&mut self, k: usize) {
        while self.e.len() < k {
            let next = self.e.len() + 1;
            self.e.push(self.base.max_digit(next));
        }
    }

    fn set(&mut self, k: usize, v: BigInt) {
        self.materialize(k);
        self.e[k - 1] = v;
    }

    fn get(&mut self, k: usize) -> BigInt {
        self.materialize(k);
        self.e[k - 1].clone()
    }

    fn run(&mut self) {
        let mut j = 2usize;
        while j <= self.e.len() {
            let zero_here = self.e[j - 1].is_zero();
            let after_max = self.e[j - 2] == self.base.max_digit(j - 1);
            if !zero_here || after_max {
                j += 1;
                continue;
            }
            // maximal zero run j..=v
            let mut v = j;
            while v < self.e.len() && self.e[v].is_zero() {
                v += 1;
            }
            if v == self.e.len() && self.ends_here() {
                break;
            }
            let r = j - 1;
            let l = v - r;
            if l % 2 == 0 {
                let s = l / 2;
                self.set(r + 1, BigInt::one());
                for t in 1..s {
                    let m = self.base.max_digit(r + 2 * t);
                    self.set(r + 2 * t, m);
                    self.set(r + 2 * t + 1, BigInt::zero());
                }
                let m = self.base.max_digit(r + 2 * s);
                self.set(r + 2 * s, m);
                let last = self.get(r + 2 * s + 1) - 1u32;
                self.set(r + 2 * s + 1, last);
            } else {
                let s = (l + 1) / 2;
                let bumped = self.get(r) + 1u32;
                self.set(r, bumped);
                for t in 1..s {
                    let m = self.base.max_digit(r + 2 * t - 1);
                    self.set(r + 2 * t - 1, m);
                    self.set(r + 2 * t, BigInt::zero());
                }
                let m = self.base.max_digit(r + 2 * s - 1);
                self.set(r + 2 * s - 1, m);
                let last = self.get(r + 2 * s) - 1u32;
                self.set(r + 2 * s, last);
            }
            if let Some(trace) = self.trace.as_mut() {
                trace.push(DigitWord::new(self.e.clone(), self.tail));
            }
            j = r + 1;
        }
    }
}

fn complement_impl(base: &Base, w: &DigitWord, trace: bool) -> Result<(DigitWord, Vec<DigitWord>)> {
    if !is_admissible(base, w) {
        return Err(Error::NotAdmissible);
    }
    let w = base.canonical(w);
    if w.is_zero() {
        return Ok((w, Vec::new()));
    }
    let cb = ComplementBase::new(base);
    let len = match base.depth() {
        Some(r) => r,
        None => w.digits.len().max(1),
    };
    let e: Vec<BigInt> = (1..=len).map(|k| cb.m(k) - base.digit_at(&w, k)).collect();
    let tail = match w.tail {
        Tail::Zeros => Tail::Maxes,
        Tail::Maxes => Tail::Zeros,
    };
    let mut sweep = Sweep {
        base,
        e,
        tail,
        trace: trace.then(Vec::new),
    };
    if let Some(t) = sweep.trace.as_mut() {
        t.push(DigitWord::new(sweep.e.clone(), tail));
    }
    sweep.run();
    let out = base.canonical(&DigitWord::new(sweep.e, tail));
    Ok((out, sweep.trace.unwrap_or_default()))
}

/// CFE-complement, repaired to an admissible word; the zero word maps to itself.
pub fn cfe_complement(base: &Base, w: &DigitWord) -> Result<DigitWord> {
    complement_impl(base, w, false).map(|(v, _)| v)
}

/// Like [`cfe_complement`], also returning the raw difference and every rewrite.
pub fn cfe_complement_traced(base: &Base, w: &DigitWord) -> Result<(DigitWord, Vec<DigitWord>)> {
    complement_impl(base, w, true)
}

/// Integer of a word in `E` (zero tail) or its complement class (maximal tail).
pub fn psi_signed(base: &Base, w: &DigitWord) -> Result<BigInt> {
    match w.tail {
        Tail::Zeros => psi(base, w),
        Tail::Maxes => {
            if !is_admissible(base, w) {
                return Err(Error::NotAdmissible);
            }
            let mut n = BigInt::from(-1);
            for (i, d) in w.digits.iter().enumerate() {
                n -= (base.max_digit(i + 1) - d) * base.q(i as i64);
            }
            Ok(n)
        }
    }
}

pub fn psi_signed_inv(base: &Base, n: &BigInt) -> Result<DigitWord> {
    if *n >= BigInt::zero() {
        return psi_inv(base, n);
    }
    cfe_complement(base, &psi_inv(base, &-n)?)
}
