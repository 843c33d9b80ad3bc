//! The variant alpha-numeration.
//!
//! For `0 < alpha < 1` with partial quotients `a_1, a_2, ...`, a word `d` is
//! admissible when `d_j <= a_j` and every zero digit is either followed only by
//! zeros or preceded by a maximal digit. Integers are encoded by
//! `psi(d) = sum d_j q_{j-1}` and reals in `[0,1[` by
//! `lambda(d) = sum d_j (-1)^(j-1) delta_{j-1}`, and `lambda(psi^-1(n)) = {n alpha}`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cfe_core::Expansion;
use crate::error::{Error, Result};
use crate::exact_numbers::ExactReal;

/// Continuation of a word past its explicit digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tail {
    Zeros,
    Maxes,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitWord {
    pub digits: Vec<BigInt>,
    pub tail: Tail,
}

impl DigitWord {
    pub fn new(digits: Vec<BigInt>, tail: Tail) -> Self {
        DigitWord { digits, tail }
    }

    pub fn zeros(digits: Vec<BigInt>) -> Self {
        DigitWord::new(digits, Tail::Zeros)
    }

    pub fn from_i64(digits: &[i64], tail: Tail) -> Self {
        DigitWord::new(digits.iter().map(|&d| d.into()).collect(), tail)
    }

    pub fn is_zero(&self) -> bool {
        self.tail == Tail::Zeros && self.digits.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
        let tail = match self.tail {
            Tail::Zeros => "0",
            Tail::Maxes => "max",
        };
        write!(f, "({})|{}", body.join(","), tail)
    }
}

impl FromStr for DigitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected `(d1,...,ds)|0` or `|max`, got `{s}`"));
        let s = s.trim();
        let (body, tail) = match s.rsplit_once('|') {
            Some((b, "0")) => (b, Tail::Zeros),
            Some((b, "max")) => (b, Tail::Maxes),
            Some(_) => return Err(bad()),
            None => (s, Tail::Zeros),
        };
        let inner = body
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let digits = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|t| t.trim().parse::<BigInt>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(DigitWord::new(digits, tail))
    }
}

/// Numeration system attached to a fixed `alpha` in `]0,1[`.
#[derive(Clone, Debug)]
pub struct Base {
    exp: Expansion,
}

impl Base {
    pub fn new(alpha: &ExactReal) -> Result<Self> {
        if alpha.signum() <= 0 || *alpha >= ExactReal::one() {
            return Err(Error::DomainError(format!("alpha = {alpha} is not in ]0,1[")));
        }
        Ok(Base {
            exp: Expansion::new(alpha),
        })
    }

    pub fn alpha(&self) -> &ExactReal {
        self.exp.x()
    }

    pub fn expansion(&self) -> &Expansion {
        &self.exp
    }

    /// CFE-depth `r` for rational alpha.
    pub fn depth(&self) -> Option<usize> {
        self.exp.depth()
    }

    pub fn is_rational(&self) -> bool {
        self.exp.is_rational()
    }

    /// `a_k` for `k >= 1`; for rational alpha defined up to `k = r + 1`.
    pub fn a(&self, k: usize) -> Option<BigInt> {
        self.exp.a(k)
    }

    /// Largest digit allowed at position `k` (zero past the depth of a rational).
    pub fn max_digit(&self, k: usize) -> BigInt {
        match self.depth() {
            Some(r) if k > r => BigInt::zero(),
            _ => self.a(k).expect("finite partial quotient"),
        }
    }

    pub fn q(&self, k: i64) -> BigInt {
        self.exp.q(k).expect("convergent index within depth")
    }

    pub fn p(&self, k: i64) -> BigInt {
        self.exp.p(k).expect("convergent index within depth")
    }

    pub fn delta(&self, k: i64) -> ExactReal {
        self.exp.delta(k)
    }

    pub fn delta_signed(&self, k: i64) -> ExactReal {
        self.exp.delta_signed(k)
    }

    /// `q_{r+1}`, the number of grid points, for rational alpha.
    pub fn grid_size(&self) -> Option<BigInt> {
        self.depth().map(|r| self.q(r as i64 + 1))
    }

    /// Digit at 1-based position `k`, following the tail past the explicit digits.
    pub fn digit_at(&self, w: &DigitWord, k: usize) -> BigInt {
        if k >= 1 && k <= w.digits.len() {
            return w.digits[k - 1].clone();
        }
        match w.tail {
            Tail::Zeros => BigInt::zero(),
            Tail::Maxes => self.max_digit(k),
        }
    }

    /// Drops trailing explicit digits that coincide with the tail.
    pub fn canonical(&self, w: &DigitWord) -> DigitWord {
        let mut digits = w.digits.clone();
        while let Some(last) = digits.last() {
            let k = digits.len();
            let implied = match w.tail {
                Tail::Zeros => BigInt::zero(),
                Tail::Maxes => self.max_digit(k),
            };
            if *last == implied {
                digits.pop();
            } else {
                break;
            }
        }
        DigitWord::new(digits, w.tail)
    }
}

pub fn is_admissible(base: &Base, w: &DigitWord) -> bool {
    let w = base.canonical(w);
    let s = w.digits.len();
    if let Some(r) = base.depth() {
        if s > r {
            return false;
        }
    }
    for (i, d) in w.digits.iter().enumerate() {
        let j = i + 1;
        if d.is_negative() || *d > base.max_digit(j) {
            return false;
        }
        if d.is_zero() {
            let rest_zero = match w.tail {
                Tail::Zeros => w.digits[i..].iter().all(Zero::is_zero),
                Tail::Maxes => {
                    w.digits[i..].iter().all(Zero::is_zero)
                        && base.depth().map_or(false, |r| s >= r)
                }
            };
            let after_max = j >= 2 && w.digits[i - 1] == base.max_digit(j - 1);
            if !rest_zero && !after_max {
                return false;
            }
        }
    }
    true
}

fn require_admissible(base: &Base, w: &DigitWord) -> Result<()> {
    if is_admissible(base, w) {
        Ok(())
    } else {
        Err(Error::NotAdmissible)
    }
}

/// `sum d_j q_{j-1}` for a word with a zero tail.
pub fn psi(base: &Base, w: &DigitWord) -> Result<BigInt> {
    if w.tail != Tail::Zeros {
        return Err(Error::UnsupportedTail);
    }
    require_admissible(base, w)?;
    Ok(w
        .digits
        .iter()
        .enumerate()
        .map(|(i, d)| d * base.q(i as i64))
        .sum())
}

/// Greedy top-down inverse of `psi`.
pub fn psi_inv(base: &Base, n: &BigInt) -> Result<DigitWord> {
    if n.is_negative() {
        return Err(Error::OutOfRange(format!("{n} is negative")));
    }
    if let Some(q) = base.grid_size() {
        if *n >= q {
            return Err(Error::OutOfRange(format!("{n} >= {q}")));
        }
    }
    let mut r: i64 = 0;
    while *n >= base.q(r) + base.q(r - 1) {
        r += 1;
    }
    let mut rest = n.clone();
    let mut digits = vec![BigInt::zero(); r as usize];
    for k in (1..=r).rev() {
        let d = (&rest - base.q(k - 2)) / base.q(k - 1);
        let d = if d.is_negative() { BigInt::zero() } else { d };
        rest -= &d * base.q(k - 1);
        digits[(k - 1) as usize] = d;
    }
    debug_assert!(rest.is_zero());
    Ok(base.canonical(&DigitWord::zeros(digits)))
}

/// `sum d_k delta'_{k-1}` over arbitrary integer digits with the given tail.
pub(crate) fn linear_value(base: &Base, digits: &[BigInt], tail: Tail) -> ExactReal {
    let mut v = ExactReal::zero();
    for (i, d) in digits.iter().enumerate() {
        if !d.is_zero() {
            v = v + ExactReal::from_bigint(d.clone()) * base.delta_signed(i as i64);
        }
    }
    if tail == Tail::Maxes {
        let s = digits.len() as i64;
        v = v - base.delta_signed(s) - base.delta_signed(s - 1);
    }
    v
}

pub fn lambda(base: &Base, w: &DigitWord) -> Result<ExactReal> {
    require_admissible(base, w)?;
    Ok(linear_value(base, &w.digits, w.tail))
}

/// Digit generator of `lambda^-1(beta)`.
#[derive(Clone, Debug)]
pub struct DigitStream<'a> {
    base: &'a Base,
    beta: ExactReal,
    produced: Vec<BigInt>,
    resolved: Option<Tail>,
}

impl<'a> DigitStream<'a> {
    fn new(base: &'a Base, beta: ExactReal) -> Self {
        let mut s = DigitStream {
            base,
            beta,
            produced: Vec::new(),
            resolved: None,
        };
        s.check_resolved();
        s
    }

    fn check_resolved(&mut self) {
        let k = self.produced.len() as i64;
        if self.beta.is_zero() {
            self.resolved = Some(Tail::Zeros);
        } else if !self.base.is_rational()
            && self.beta == self.base.delta(k - 1) - self.base.delta(k)
        {
            self.resolved = Some(Tail::Maxes);
        }
    }

    /// Current remainder `beta_k`.
    pub fn remainder(&self) -> &ExactReal {
        &self.beta
    }

    pub fn produced(&self) -> &[BigInt] {
        &self.produced
    }

    /// Tail kind once the remaining digits are known to be constant.
    pub fn resolved(&self) -> Option<Tail> {
        self.resolved
    }

    pub fn next_digit(&mut self) -> BigInt {
        let k = self.produced.len() + 1;
        let d = match self.resolved {
            Some(Tail::Zeros) => BigInt::zero(),
            Some(Tail::Maxes) => self.base.max_digit(k),
            None => {
                let dk = self.base.delta(k as i64 - 1);
                let ratio = &self.beta / &dk;
                let b = ratio.ceil().min(self.base.max_digit(k));
                self.beta = ExactReal::from_bigint(b.clone()) * dk - &self.beta;
                b
            }
        };
        self.produced.push(d.clone());
        if self.resolved.is_none() {
            self.check_resolved();
        }
        d
    }

    /// Runs until the tail is known, producing at most `limit` digits.
    pub fn into_word(mut self, limit: usize) -> Result<DigitWord> {
        while self.resolved.is_none() {
            if self.produced.len() >= limit {
                return Err(Error::OutOfRange(format!(
                    "expansion does not terminate within {limit} digits"
                )));
            }
            self.next_digit();
        }
        let tail = self.resolved.unwrap();
        Ok(self.base.canonical(&DigitWord::new(self.produced, tail)))
    }
}

impl Iterator for DigitStream<'_> {
    type Item = BigInt;
    fn next(&mut self) -> Option<BigInt> {
        Some(self.next_digit())
    }
}

/// Digits of `beta in [0,1[` under `lambda`.
pub fn lambda_inv<'a>(base: &'a Base, beta: &ExactReal) -> Result<DigitStream<'a>> {
    base.alpha().same_field(beta)?;
    if beta.signum() < 0 || *beta >= ExactReal::one() {
        return Err(Error::DomainError(format!("beta = {beta} is not in [0,1[")));
    }
    if let Some(q) = base.grid_size() {
        if !(ExactReal::from_bigint(q) * beta).is_integer() {
            return Err(Error::NotGridPoint);
        }
    }
    Ok(DigitStream::new(base, beta.clone()))
}

/// Default digit budget when resolving streams of quadratic alpha.
pub const DEFAULT_DIGIT_LIMIT: usize = 512;

pub fn lambda_inv_word(base: &Base, beta: &ExactReal) -> Result<DigitWord> {
    let limit = base.depth().unwrap_or(DEFAULT_DIGIT_LIMIT).max(1);
    lambda_inv(base, beta)?.into_word(limit)
}

fn require_rational(base: &Base) -> Result<usize> {
    base.depth()
        .ok_or_else(|| Error::DomainError("alpha must be rational".into()))
}

/// `lambda(w) + eps * delta_r` for rational alpha.
pub fn lambda_tilde(base: &Base, w: &DigitWord, eps: &ExactReal) -> Result<ExactReal> {
    let r = require_rational(base)?;
    if eps.signum() < 0 || *eps >= ExactReal::one() {
        return Err(Error::DomainError(format!("eps = {eps} is not in [0,1[")));
    }
    Ok(lambda(base, w)? + eps * &base.delta(r as i64))
}

pub fn lambda_tilde_inv(base: &Base, beta: &ExactReal) -> Result<(DigitWord, ExactReal)> {
    require_rational(base)?;
    if beta.signum() < 0 || *beta >= ExactReal::one() {
        return Err(Error::DomainError(format!("beta = {beta} is not in [0,1[")));
    }
    let q = ExactReal::from_bigint(base.grid_size().unwrap());
    let scaled = &q * beta;
    let eps = scaled.frac();
    let grid = ExactReal::from_bigint(scaled.floor()) / q;
    Ok((lambda_inv_word(base, &grid)?, eps))
}

/// Reverse lexicographic order; a `Maxes` word precedes every `Zeros` word.
pub fn compare_rlo(base: &Base, w1: &DigitWord, w2: &DigitWord) -> Ordering {
    match (w1.tail, w2.tail) {
        (Tail::Maxes, Tail::Zeros) => return Ordering::Less,
        (Tail::Zeros, Tail::Maxes) => return Ordering::Greater,
        _ => {}
    }
    let len = w1.digits.len().max(w2.digits.len());
    for k in (1..=len).rev() {
        let c = base.digit_at(w1, k).cmp(&base.digit_at(w2, k));
        if c != Ordering::Equal {
            return c;
        }
    }
    Ordering::Equal
}

/// Alternate lexicographic order: the first difference at index `j` counts with sign `(-1)^(j-1)`.
pub fn compare_alo(base: &Base, w1: &DigitWord, w2: &DigitWord) -> Ordering {
    let mut len = w1.digits.len().max(w2.digits.len());
    if w1.tail != w2.tail {
        len += 1;
        if let Some(r) = base.depth() {
            len = len.min(r);
        }
    }
    for k in 1..=len {
        let c = base.digit_at(w1, k).cmp(&base.digit_at(w2, k));
        if c != Ordering::Equal {
            return if k % 2 == 1 { c } else { c.reverse() };
        }
    }
    Ordering::Equal
}

/// RLO comparison of two digit streams; both must reach a constant tail within `limit` digits.
pub fn compare_rlo_streams(
    base: &Base,
    s1: DigitStream<'_>,
    s2: DigitStream<'_>,
    limit: usize,
) -> Result<Ordering> {
    let w1 = s1.into_word(limit).map_err(|_| Error::IncomparableStreams)?;
    let w2 = s2.into_word(limit).map_err(|_| Error::IncomparableStreams)?;
    Ok(compare_rlo(base, &w1, &w2))
}

/// Maps the digits of `beta` under `alpha < 1/2` to the digits of `1 - beta` under `1 - alpha`.
pub fn reflect(base: &Base, w: &DigitWord) -> Result<(Base, DigitWord)> {
    if *base.alpha() >= ExactReal::ratio(1, 2) {
        return Err(Error::DomainError("reflection needs alpha < 1/2".into()));
    }
    require_admissible(base, w)?;
    let first = base.digit_at(w, 1);
    if first.is_zero() {
        return Err(Error::DomainError("reflection needs beta > 0".into()));
    }
    let other = Base::new(&(ExactReal::one() - base.alpha()))?;
    let mut digits = vec![BigInt::one(), first - 1u32];
    digits.extend(w.digits.iter().skip(1).cloned());
    Ok((other.clone(), other.canonical(&DigitWord::new(digits, w.tail))))
}

/// Proper form of `(prefix, a_t, 0, a_{t+2}, 0, ...)` where `t = prefix.len() + 1`.
pub fn normalize_improper(base: &Base, prefix: &[BigInt]) -> Result<DigitWord> {
    let t = prefix.len() + 1;
    for (i, d) in prefix.iter().enumerate() {
        if d.is_negative() || *d > base.max_digit(i + 1) {
            return Err(Error::NotConvertible(format!("digit {d} at {}", i + 1)));
        }
        if d.is_zero() && (i == 0 || prefix[i - 1] != base.max_digit(i)) {
            return Err(Error::NotConvertible(format!("zero at {} not after a max", i + 1)));
        }
    }
    let head = linear_value(base, prefix, Tail::Zeros);
    let tail_value = match base.depth() {
        None => -base.delta_signed(t as i64 - 2),
        Some(r) => {
            let mut v = ExactReal::zero();
            let mut k = t;
            while k <= r {
                v = v + ExactReal::from_bigint(base.max_digit(k)) * base.delta_signed(k as i64 - 1);
                k += 2;
            }
            v
        }
    };
    let value = head + tail_value;
    if value.signum() < 0 || value >= ExactReal::one() {
        return Err(Error::NotConvertible(format!("value {value} outside [0,1[")));
    }
    lambda_inv_word(base, &value).map_err(|e| Error::NotConvertible(e.to_string()))
}
