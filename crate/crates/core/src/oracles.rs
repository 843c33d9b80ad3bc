//! Brute-force reference computations. Nothing here uses the other modules
//! except `ExactReal`; every answer comes straight from a definition.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_numbers::ExactReal;

pub const MAX_GRID: u64 = 10_000;
pub const MAX_SCAN: u64 = 100_000;

#[derive(Clone, Debug)]
pub struct OracleReport<T> {
    pub instance: String,
    pub value: T,
    pub method: &'static str,
    pub runtime: Duration,
}

pub fn report<T>(instance: String, method: &'static str, f: impl FnOnce() -> Result<T>) -> Result<OracleReport<T>> {
    let start = Instant::now();
    let value = f()?;
    Ok(OracleReport {
        instance,
        value,
        method,
        runtime: start.elapsed(),
    })
}

fn frac(x: &ExactReal) -> ExactReal {
    x.frac()
}

fn kx(k: i64, x: &ExactReal) -> ExactReal {
    &ExactReal::int(k) * x
}

fn small(n: &BigInt, cap: u64) -> Result<i64> {
    match n.to_u64() {
        Some(v) if v <= cap => Ok(v as i64),
        _ => Err(Error::TooLarge),
    }
}

/// Partial quotients `a_1, ..., a_r, 1` of a rational in `]0,1[`, by plain Euclid.
fn quotients(alpha: &BigRational) -> Vec<BigInt> {
    let (mut num, mut den) = (alpha.denom().clone(), alpha.numer().clone());
    let mut out = Vec::new();
    while !den.is_zero() {
        let t = &num / &den;
        let r = &num - &t * &den;
        out.push(t);
        num = den;
        den = r;
    }
    // the last Euclid quotient is at least 2: [.., t] = [.., t - 1, 1]
    let last = out.pop().unwrap();
    out.push(last - 1u32);
    out.push(BigInt::one());
    out
}

fn admissible(a: &[BigInt], d: &[BigInt]) -> bool {
    for j in 0..d.len() {
        if d[j] > a[j] {
            return false;
        }
        if d[j].is_zero() {
            let rest_zero = d[j..].iter().all(Zero::is_zero);
            let after_max = j > 0 && d[j - 1] == a[j - 1];
            if !rest_zero && !after_max {
                return false;
            }
        }
    }
    true
}

fn rlo(x: &[BigInt], y: &[BigInt]) -> Ordering {
    for k in (0..x.len().max(y.len())).rev() {
        let a = x.get(k).cloned().unwrap_or_default();
        let b = y.get(k).cloned().unwrap_or_default();
        if a != b {
            return a.cmp(&b);
        }
    }
    Ordering::Equal
}

/// Every word of length `r` with `d_j <= a_j` satisfying the zero condition,
/// trailing zeros trimmed, in reverse lexicographic order.
pub fn oracle_enumerate_admissible(alpha: &BigRational) -> Result<Vec<Vec<BigInt>>> {
    if !alpha.is_positive() || *alpha >= BigRational::one() {
        return Err(Error::DomainError("alpha must lie in ]0,1[".into()));
    }
    small(alpha.denom(), MAX_GRID)?;
    let quot = quotients(alpha);
    let a = &quot[..quot.len() - 1];
    let mut words: Vec<Vec<BigInt>> = vec![vec![]];
    for aj in a {
        let mut next = Vec::new();
        for w in &words {
            let mut d = BigInt::zero();
            while d <= *aj {
                let mut v = w.clone();
                v.push(d.clone());
                next.push(v);
                d += 1u32;
            }
        }
        words = next;
        if words.len() as u64 > 4 * MAX_GRID {
            words.retain(|w| prefix_ok(a, w));
        }
    }
    let mut out: Vec<Vec<BigInt>> = words
        .into_iter()
        .filter(|w| admissible(a, w))
        .map(|mut w| {
            while w.last().map_or(false, Zero::is_zero) {
                w.pop();
            }
            w
        })
        .collect();
    out.sort_by(|x, y| rlo(x, y));
    Ok(out)
}

fn prefix_ok(a: &[BigInt], w: &[BigInt]) -> bool {
    // a zero followed by a nonzero digit must come after a maximal digit
    for j in 1..w.len() {
        if w[j - 1].is_zero() && !w[j].is_zero() {
            let after_max = j >= 2 && w[j - 2] == a[j - 2];
            if !after_max {
                return false;
            }
        }
    }
    true
}

/// Gap lengths between the sorted points `{k alpha}`, `k < N`, and 1.
pub fn oracle_gaps(alpha: &ExactReal, n: u64) -> Result<Vec<(ExactReal, usize)>> {
    if n == 0 || n > MAX_SCAN {
        return Err(Error::TooLarge);
    }
    let mut pts: Vec<ExactReal> = (0..n as i64).map(|k| frac(&kx(k, alpha))).collect();
    pts.sort();
    pts.push(ExactReal::one());
    let mut map = BTreeMap::new();
    for i in 0..n as usize {
        *map.entry(&pts[i + 1] - &pts[i]).or_insert(0usize) += 1;
    }
    Ok(map.into_iter().rev().collect())
}

/// Record scan: `n` with `{n alpha - beta}` (right) or `{beta - n alpha}` (left)
/// strictly below every earlier value.
pub fn oracle_records(alpha: &ExactReal, beta: &ExactReal, right: bool, n_max: u64) -> Result<Vec<u64>> {
    if n_max > MAX_SCAN {
        return Err(Error::TooLarge);
    }
    let mut out = Vec::new();
    let mut best: Option<ExactReal> = None;
    for n in 0..=n_max {
        let x = kx(n as i64, alpha);
        let v = if right { frac(&(x - beta)) } else { frac(&(beta - &x)) };
        if best.as_ref().map_or(true, |b| v < *b) {
            out.push(n);
            best = Some(v);
        }
    }
    Ok(out)
}

/// `#{k < nu : {k alpha} < beta}`.
pub fn oracle_count(alpha: &ExactReal, beta: &ExactReal, nu: u64) -> Result<u64> {
    if nu > MAX_SCAN {
        return Err(Error::TooLarge);
    }
    Ok((0..nu as i64).filter(|&k| frac(&kx(k, alpha)) < *beta).count() as u64)
}

/// `#{k <= nu : {k alpha} <= beta}`.
pub fn oracle_count_le(alpha: &ExactReal, beta: &ExactReal, nu: u64) -> Result<u64> {
    if nu >= MAX_SCAN {
        return Err(Error::TooLarge);
    }
    Ok((0..=nu as i64).filter(|&k| frac(&kx(k, alpha)) <= *beta).count() as u64)
}

/// First `n >= 1` with `floor(n alpha) != floor(n alpha2)`.
pub fn oracle_floor_horizon(alpha: &ExactReal, alpha2: &ExactReal) -> Result<u64> {
    if alpha == alpha2 {
        return Err(Error::DomainError("equal slopes".into()));
    }
    for n in 1..=MAX_SCAN {
        if kx(n as i64, alpha).floor() != kx(n as i64, alpha2).floor() {
            return Ok(n);
        }
    }
    Err(Error::TooLarge)
}

/// Smallest-denominator rational in the closed interval, scanning denominators.
pub fn oracle_best_rational(theta: &ExactReal, theta2: &ExactReal, q_max: u64) -> Result<BigRational> {
    let (lo, hi) = match theta.try_cmp(theta2)? {
        Ordering::Less => (theta, theta2),
        _ => (theta2, theta),
    };
    for q in 1..=q_max {
        let p = kx(q as i64, lo).ceil();
        let v = BigRational::new(p, BigInt::from(q));
        if ExactReal::Rational(v.clone()) <= *hi {
            return Ok(v);
        }
    }
    Err(Error::TooLarge)
}

/// Best one-sided rational approximations by record scan over denominators.
pub fn oracle_best_sided_rationals(x: &ExactReal, left: bool, q_max: u64) -> Result<Vec<BigRational>> {
    if q_max > MAX_SCAN {
        return Err(Error::TooLarge);
    }
    let mut out: Vec<BigRational> = Vec::new();
    for q in 1..=q_max {
        let p = if left { kx(q as i64, x).floor() } else { kx(q as i64, x).ceil() };
        let v = BigRational::new(p, BigInt::from(q));
        let better = match out.last() {
            None => true,
            Some(prev) if left => v > *prev,
            Some(prev) => v < *prev,
        };
        if better {
            out.push(v);
        }
    }
    Ok(out)
}

/// Whether no fraction with denominator below `q` lies in the closed interval between `p/q` and `x`.
pub fn oracle_is_best_sided(x: &ExactReal, p: &BigInt, q: &BigInt) -> Result<bool> {
    let qs = small(q, MAX_SCAN)?;
    let target = ExactReal::Rational(BigRational::new(p.clone(), q.clone()));
    let (lo, hi) = if target < *x { (target, x.clone()) } else { (x.clone(), target) };
    for k in 1..qs {
        let c = kx(k, &lo).ceil();
        if ExactReal::Rational(BigRational::new(c, BigInt::from(k))) <= hi {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Expansion digits `t0, t1, ...` with `t = ceil(y) - 1`, stopping with a final 1
/// when the remainder equals 1, or after `count` digits.
pub fn oracle_cfe_digits(x: &ExactReal, count: usize) -> Vec<BigInt> {
    let mut y = x.clone();
    let mut out = Vec::new();
    while out.len() < count {
        let t = y.ceil() - 1u32;
        let r = &y - &ExactReal::from_bigint(t.clone());
        out.push(t);
        if r == ExactReal::one() {
            if out.len() < count {
                out.push(BigInt::one());
            }
            break;
        }
        y = r.recip().expect("remainder is positive");
    }
    out
}

/// `t0 + 1/(t1 + 1/(...))` folded from the left through convergents.
pub fn oracle_cfe_value(digits: &[BigInt]) -> Result<BigRational> {
    if digits.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (mut p, mut pp) = (BigInt::one(), BigInt::zero());
    let (mut q, mut qq) = (BigInt::zero(), BigInt::one());
    for t in digits {
        let np = t * &p + &pp;
        let nq = t * &q + &qq;
        pp = p;
        qq = q;
        p = np;
        q = nq;
    }
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(p, q))
}

/// A digit word evaluated from its definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordCheck {
    pub admissible: bool,
    /// `sum d_k q_{k-1}`, or `-1 - sum (a_k - d_k) q_{k-1}` for a maximal tail.
    pub integer: BigInt,
    /// `sum d_k (q_{k-1} alpha - p_{k-1})` over the materialized digits.
    pub value: ExactReal,
    /// Upper bound on the omitted part of `value`; zero when the sum is exact.
    pub error: ExactReal,
}

impl WordCheck {
    pub fn value_is(&self, target: &ExactReal) -> bool {
        if self.error.is_zero() {
            self.value == *target
        } else {
            (&self.value - target).abs() <= self.error
        }
    }
}

/// Evaluates `digits` followed by zeros or by the maximal digits, materializing
/// `extra` maximal digits for an irrational `alpha`.
pub fn oracle_word(alpha: &ExactReal, digits: &[BigInt], maxes: bool, extra: usize) -> Result<WordCheck> {
    if alpha.signum() <= 0 || *alpha >= ExactReal::one() {
        return Err(Error::DomainError("alpha must lie in ]0,1[".into()));
    }
    let len = digits.len() + if maxes { extra } else { 0 };
    let quot = oracle_cfe_digits(alpha, len + 3);
    let rational = alpha.is_rational();
    // a_k for k >= 1; positions past the depth of a rational carry no digit
    let depth = if rational { quot.len() - 2 } else { usize::MAX };
    let a = |k: usize| -> BigInt {
        if k > depth {
            BigInt::zero()
        } else {
            quot[k].clone()
        }
    };
    let n = match (rational, maxes) {
        (true, true) => depth.max(digits.len()),
        (true, false) => digits.len(),
        (false, _) => len,
    };
    let d: Vec<BigInt> = (1..=n)
        .map(|k| match digits.get(k - 1) {
            Some(v) => v.clone(),
            None if maxes => a(k),
            None => BigInt::zero(),
        })
        .collect();
    let mut admissible = true;
    for j in 1..=n {
        let dj = &d[j - 1];
        if dj.is_negative() || *dj > a(j) {
            admissible = false;
        }
        if dj.is_zero() {
            // an irrational maximal tail never vanishes
            let later_zero = d[j..].iter().all(Zero::is_zero) && (rational || !maxes);
            let after_max = j > 1 && d[j - 2] == a(j - 1);
            if !later_zero && !after_max {
                admissible = false;
            }
        }
    }
    let (mut p0, mut p1) = (BigInt::one(), BigInt::zero());
    let (mut q0, mut q1) = (BigInt::zero(), BigInt::one());
    let mut integer = if maxes { BigInt::from(-1) } else { BigInt::zero() };
    let mut value = ExactReal::zero();
    for k in 1..=n {
        // (p1, q1) = (p_{k-1}, q_{k-1})
        let dk = &d[k - 1];
        if maxes {
            integer -= (a(k) - dk) * &q1;
        } else {
            integer += dk * &q1;
        }
        let term = &kx(1, alpha) * &ExactReal::from_bigint(q1.clone()) - ExactReal::from_bigint(p1.clone());
        value = value + &ExactReal::from_bigint(dk.clone()) * &term;
        let ak = a(k);
        let np = &ak * &p1 + &p0;
        let nq = &ak * &q1 + &q0;
        p0 = p1;
        q0 = q1;
        p1 = np;
        q1 = nq;
    }
    let error = if maxes && !rational {
        // the omitted tail is bounded by |q_{n-1} alpha - p_{n-1}|
        (&ExactReal::from_bigint(q0) * alpha - ExactReal::from_bigint(p0)).abs()
    } else {
        ExactReal::zero()
    };
    Ok(WordCheck {
        admissible,
        integer,
        value,
        error,
    })
}

/// `|q_k alpha - p_k|` from the convergents of the expansion, with `delta_{-1} = 1`.
pub fn oracle_delta(alpha: &ExactReal, k: i64) -> ExactReal {
    if k < 0 {
        return ExactReal::one();
    }
    let quot = oracle_cfe_digits(alpha, k as usize + 1);
    let (mut p0, mut p1) = (BigInt::one(), BigInt::zero());
    let (mut q0, mut q1) = (BigInt::zero(), BigInt::one());
    // quot[0] = 0 gives (p_0, q_0) = (0, 1); rational expansions may end early
    for t in quot.iter().skip(1).take(k as usize) {
        let np = t * &p1 + &p0;
        let nq = t * &q1 + &q0;
        p0 = p1;
        q0 = q1;
        p1 = np;
        q1 = nq;
    }
    (&ExactReal::from_bigint(q1) * alpha - ExactReal::from_bigint(p1)).abs()
}

/// The `n`-th admissible word for the reverse lexicographic order.
pub fn oracle_nth_word(alpha: &BigRational, n: &BigInt) -> Result<Vec<BigInt>> {
    let words = oracle_enumerate_admissible(alpha)?;
    let i = n.to_usize().ok_or_else(|| Error::OutOfRange(n.to_string()))?;
    words.get(i).cloned().ok_or_else(|| Error::OutOfRange(n.to_string()))
}
