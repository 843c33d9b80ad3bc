//! Continued fractions with the trailing-`1` convention for rationals.
//!
//! A rational `x` expands as `[t0, t1, ..., t_r, 1]`, the final `1` standing
//! for the tail `[1, inf, inf, ...]`. Irrational quadratic inputs expand lazily.

use std::cell::RefCell;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_numbers::{gauss_a1, gauss_t1, ExactReal, ExtendedDigit};

/// On-demand digit generator `t0, t1, ...`.
#[derive(Clone, Debug)]
pub struct CfeStream {
    t0: BigInt,
    memo: Vec<BigInt>,
    state: Option<ExactReal>,
}

impl CfeStream {
    pub fn new(x: &ExactReal) -> Self {
        let t0 = x.ceil_minus_one();
        let theta = x - &ExactReal::from_bigint(t0.clone());
        let mut s = CfeStream {
            t0,
            memo: Vec::new(),
            state: Some(theta),
        };
        if x.is_rational() {
            while s.advance() {}
        }
        s
    }

    fn advance(&mut self) -> bool {
        let Some(theta) = self.state.take() else {
            return false;
        };
        match gauss_a1(&theta).expect("remainder stays in [0,1]") {
            ExtendedDigit::Infinity => false,
            ExtendedDigit::Finite(t) => {
                self.memo.push(t);
                self.state = Some(gauss_t1(&theta).expect("remainder stays in [0,1]"));
                true
            }
        }
    }

    pub fn t0(&self) -> &BigInt {
        &self.t0
    }

    /// Digit `t_k`; `Infinity` past the end of a rational expansion.
    pub fn digit(&mut self, k: usize) -> ExtendedDigit {
        if k == 0 {
            return ExtendedDigit::Finite(self.t0.clone());
        }
        while self.memo.len() < k {
            if !self.advance() {
                return ExtendedDigit::Infinity;
            }
        }
        ExtendedDigit::Finite(self.memo[k - 1].clone())
    }

    /// Up to `count` digits starting with `t0`.
    pub fn prefix(&mut self, count: usize) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(count);
        for k in 0..count {
            match self.digit(k) {
                ExtendedDigit::Finite(t) => out.push(t),
                ExtendedDigit::Infinity => break,
            }
        }
        out
    }

    /// `Some(digits)` for a finished (rational) expansion.
    pub fn finite_digits(&self) -> Option<Vec<BigInt>> {
        if self.state.is_some() {
            return None;
        }
        let mut v = vec![self.t0.clone()];
        v.extend(self.memo.iter().cloned());
        Some(v)
    }

    /// Text form; irrational streams are cut after `count` digits and end in `...`.
    pub fn format(&mut self, count: usize) -> String {
        if let Some(all) = self.finite_digits() {
            return format_cfe(&all);
        }
        let digits = self.prefix(count);
        let body: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
        format!("[{},...]", body.join(","))
    }
}

pub fn cfe_of(x: &ExactReal) -> CfeStream {
    CfeStream::new(x)
}

pub fn format_cfe(digits: &[BigInt]) -> String {
    let body: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
    format!("[{}]", body.join(","))
}

pub fn parse_cfe(s: &str) -> Result<Vec<BigInt>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected `[t0,t1,...]`, got `{s}`")))?;
    if inner.trim().is_empty() {
        return Err(Error::EmptyInput);
    }
    inner
        .split(',')
        .map(|t| {
            let t = t.trim().replace('\u{2212}', "-");
            t.parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad digit `{t}`")))
        })
        .collect()
}

/// Value of a finite expansion by backward recursion.
pub fn cfe_value(digits: &[BigInt]) -> Result<ExactReal> {
    let (last, rest) = digits.split_last().ok_or(Error::EmptyInput)?;
    let mut v = BigRational::from_integer(last.clone());
    for t in rest.iter().rev() {
        if v.is_zero() {
            return Err(Error::DivisionByZero);
        }
        v = BigRational::from_integer(t.clone()) + v.recip();
    }
    Ok(ExactReal::Rational(v))
}

/// CFE-depth: `r` for `[t0..t_r, 1]`, `None` (infinite) for irrationals.
pub fn mu_depth(x: &ExactReal) -> Option<usize> {
    cfe_of(x).finite_digits().map(|d| d.len() - 2)
}

#[derive(Debug)]
struct Tables {
    stream: CfeStream,
    // index k stored at k + 2
    p: Vec<BigInt>,
    q: Vec<BigInt>,
    delta: Vec<ExactReal>,
}

/// Lazily materialized partial quotients, convergents and the `delta` sequence of `x`.
#[derive(Debug)]
pub struct Expansion {
    x: ExactReal,
    depth: Option<usize>,
    tables: RefCell<Tables>,
}

impl Clone for Expansion {
    fn clone(&self) -> Self {
        Expansion::new(&self.x)
    }
}

impl Expansion {
    pub fn new(x: &ExactReal) -> Self {
        let stream = cfe_of(x);
        let depth = stream.finite_digits().map(|d| d.len() - 2);
        let tables = Tables {
            stream,
            p: vec![BigInt::zero(), BigInt::one()],
            q: vec![BigInt::one(), BigInt::zero()],
            delta: vec![x.clone(), ExactReal::one()],
        };
        Expansion {
            x: x.clone(),
            depth,
            tables: RefCell::new(tables),
        }
    }

    pub fn x(&self) -> &ExactReal {
        &self.x
    }

    pub fn depth(&self) -> Option<usize> {
        self.depth
    }

    pub fn is_rational(&self) -> bool {
        self.depth.is_some()
    }

    /// Partial quotient `a_k` (`t_k`); `None` when infinite.
    pub fn a(&self, k: usize) -> Option<BigInt> {
        self.tables.borrow_mut().stream.digit(k).finite().cloned()
    }

    fn ensure(&self, k: i64) -> bool {
        let mut t = self.tables.borrow_mut();
        while (t.p.len() as i64) - 2 <= k {
            let idx = t.p.len() - 2;
            let Some(ak) = t.stream.digit(idx).finite().cloned() else {
                return false;
            };
            let n = t.p.len();
            let p = &ak * &t.p[n - 1] + &t.p[n - 2];
            let q = &ak * &t.q[n - 1] + &t.q[n - 2];
            let mut dk = &ExactReal::from_bigint(q.clone()) * &self.x
                - ExactReal::from_bigint(p.clone());
            if idx % 2 == 1 {
                dk = -dk;
            }
            t.p.push(p);
            t.q.push(q);
            t.delta.push(dk);
        }
        true
    }

    /// `p_k` for `k >= -2`, `None` past the last finite quotient.
    pub fn p(&self, k: i64) -> Option<BigInt> {
        if k < -2 || !self.ensure(k) {
            return None;
        }
        Some(self.tables.borrow().p[(k + 2) as usize].clone())
    }

    pub fn q(&self, k: i64) -> Option<BigInt> {
        if k < -2 || !self.ensure(k) {
            return None;
        }
        Some(self.tables.borrow().q[(k + 2) as usize].clone())
    }

    /// `delta_k = (-1)^k (q_k x - p_k)`; zero past the last finite quotient.
    pub fn delta(&self, k: i64) -> ExactReal {
        if k < -2 || !self.ensure(k) {
            return ExactReal::zero();
        }
        self.tables.borrow().delta[(k + 2) as usize].clone()
    }

    /// `delta'_k = q_k x - p_k = (-1)^k delta_k`.
    pub fn delta_signed(&self, k: i64) -> ExactReal {
        let d = self.delta(k);
        if k.rem_euclid(2) == 1 {
            -d
        } else {
            d
        }
    }
}

/// `(p_k, q_k)` for `-2 <= k <= depth + 1`.
pub fn convergent(x: &ExactReal, k: i64) -> Result<(BigInt, BigInt)> {
    let e = Expansion::new(x);
    match (e.p(k), e.q(k)) {
        (Some(p), Some(q)) => Ok((p, q)),
        _ => Err(Error::IndexBeyondDepth(k)),
    }
}

pub fn delta(alpha: &ExactReal, i: i64) -> Result<ExactReal> {
    let e = Expansion::new(alpha);
    if i < -2 || e.q(i).is_none() {
        return Err(Error::IndexBeyondDepth(i));
    }
    Ok(e.delta(i))
}

fn frac_of(p: BigInt, q: BigInt) -> BigRational {
    BigRational::new(p, q)
}

fn sort_dedup(mut v: Vec<BigRational>) -> Vec<BigRational> {
    v.sort_by(|a, b| a.denom().cmp(b.denom()).then(a.cmp(b)));
    v.dedup();
    v
}

/// Rationals `[t0..t_{s-1}, b, 1]` with `1 <= b <= t_s` and `t_{s+1}` finite.
pub fn semiconvergents(x: &ExactReal, max_denominator: &BigInt) -> Vec<BigRational> {
    let e = Expansion::new(x);
    let mut out = Vec::new();
    let mut s = 0usize;
    loop {
        let (Some(pm1), Some(qm1), Some(pm2), Some(qm2)) = (
            e.p(s as i64 - 1),
            e.q(s as i64 - 1),
            e.p(s as i64 - 2),
            e.q(s as i64 - 2),
        ) else {
            break;
        };
        if &qm1 * 2u32 + &qm2 > *max_denominator {
            break;
        }
        let (Some(a_s), Some(_)) = (e.a(s), e.a(s + 1)) else {
            break;
        };
        let mut b = BigInt::one();
        while b <= a_s {
            let m: BigInt = &b + 1u32;
            let q = &m * &qm1 + &qm2;
            if q > *max_denominator {
                break;
            }
            out.push(frac_of(&m * &pm1 + &pm2, q));
            b += 1u32;
        }
        s += 1;
    }
    sort_dedup(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Best one-sided rational approximations with denominator at most the bound,
/// ascending by denominator.
pub fn best_sided_rational_approximations(
    x: &ExactReal,
    side: Side,
    max_denominator: &BigInt,
) -> Vec<BigRational> {
    let e = Expansion::new(x);
    let mut out = Vec::new();
    // Left uses (p_{2i}, p_{2i+1}) with m <= a_{2i+2}; right uses (p_{2i-1}, p_{2i}) with m <= a_{2i+1}.
    let shift: i64 = match side {
        Side::Left => 0,
        Side::Right => -1,
    };
    let mut i: i64 = 0;
    loop {
        let lo = 2 * i + shift;
        let (Some(p0), Some(q0), Some(p1), Some(q1)) = (e.p(lo), e.q(lo), e.p(lo + 1), e.q(lo + 1))
        else {
            break;
        };
        if q0 > *max_denominator {
            break;
        }
        let Some(top) = e.a((lo + 2) as usize) else {
            break;
        };
        let mut m = if lo < 0 { BigInt::one() } else { BigInt::zero() };
        while m <= top {
            let q = &q0 + &m * &q1;
            if q > *max_denominator {
                break;
            }
            out.push(frac_of(&p0 + &m * &p1, q));
            m += 1u32;
        }
        i += 1;
    }
    if let ExactReal::Rational(r) = x {
        if r.denom() <= max_denominator {
            out.push(r.clone());
        }
    }
    sort_dedup(out)
}

/// The rational of least denominator in the closed interval between the two reals.
pub fn best_rational_between(theta: &ExactReal, theta2: &ExactReal) -> Result<BigRational> {
    if theta == theta2 {
        return Err(Error::EqualEndpoints);
    }
    let mut s1 = cfe_of(theta);
    let mut s2 = cfe_of(theta2);
    let mu1 = mu_depth(theta);
    let mu2 = mu_depth(theta2);
    let mut r = 0usize;
    while s1.digit(r) == s2.digit(r) {
        r += 1;
    }
    let within = |mu: Option<usize>| mu.map_or(true, |m| r <= m);
    if within(mu1) && within(mu2) {
        let mut digits = s1.prefix(r);
        let (ExtendedDigit::Finite(a), ExtendedDigit::Finite(b)) = (s1.digit(r), s2.digit(r)) else {
            unreachable!("digits up to the depth are finite")
        };
        digits.push(a.min(b));
        digits.push(BigInt::one());
        let v = cfe_value(&digits)?;
        return Ok(v.as_rational().unwrap().clone());
    }
    let shallower = match (mu1, mu2) {
        (Some(m1), Some(m2)) if m1 <= m2 => theta,
        (Some(_), None) => theta,
        _ => theta2,
    };
    Ok(shallower.as_rational().unwrap().clone())
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}
