//! Exact reals: rationals and elements of real quadratic fields `Q(sqrt d)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `Rational(r)` or `a + b*sqrt(d)` with `b != 0` and `d > 1` square-free.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExactReal {
    Rational(BigRational),
    Quadratic {
        a: BigRational,
        b: BigRational,
        d: BigInt,
    },
}

/// A partial quotient that may be infinite.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtendedDigit {
    Finite(BigInt),
    Infinity,
}

impl ExtendedDigit {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            ExtendedDigit::Finite(v) => Some(v),
            ExtendedDigit::Infinity => None,
        }
    }
}

impl fmt::Display for ExtendedDigit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedDigit::Finite(v) => write!(f, "{v}"),
            ExtendedDigit::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

fn rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// Splits `n > 0` into `(f, c)` with `n = f^2 * c` and `c` square-free.
fn square_free_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut f = BigInt::one();
    let mut core = BigInt::one();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(10_000_000u64);
    while &p * &p <= rest && p < limit {
        let mut e = 0u32;
        while rest.is_multiple_of(&p) {
            rest /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            f *= &p;
        }
        if e % 2 == 1 {
            core *= &p;
        }
        p += 1;
    }
    let s = rest.sqrt();
    if &s * &s == rest {
        f *= s;
    } else {
        core *= rest;
    }
    (f, core)
}

impl ExactReal {
    pub fn int(n: i64) -> Self {
        ExactReal::Rational(rat(BigInt::from(n)))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        ExactReal::Rational(BigRational::new(p.into(), q.into()))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        ExactReal::Rational(rat(n))
    }

    pub fn from_rational(r: BigRational) -> Self {
        ExactReal::Rational(r)
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    /// `a + b*sqrt(d)` for any `d >= 0`, normalized.
    pub fn quadratic(a: BigRational, b: BigRational, d: BigInt) -> Result<Self> {
        if d.is_negative() {
            return Err(Error::DomainError(format!("sqrt of negative {d}")));
        }
        if b.is_zero() || d.is_zero() {
            return Ok(ExactReal::Rational(a));
        }
        let (f, core) = square_free_split(&d);
        let b = b * rat(f);
        if core.is_one() {
            Ok(ExactReal::Rational(a + b))
        } else {
            Ok(ExactReal::Quadratic { a, b, d: core })
        }
    }

    pub fn sqrt_of(r: &BigRational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::DomainError(format!("sqrt of negative {r}")));
        }
        let den = r.denom().clone();
        let prod = r.numer() * &den;
        Self::quadratic(BigRational::zero(), BigRational::new(BigInt::one(), den), prod)
    }

    /// `(sqrt 5 - 1)/2`.
    pub fn golden() -> Self {
        Self::quadratic(
            BigRational::new((-1).into(), 2.into()),
            BigRational::new(1.into(), 2.into()),
            5.into(),
        )
        .unwrap()
    }

    /// `sqrt 2 - 1`.
    pub fn sqrt2m1() -> Self {
        Self::quadratic(rat((-1).into()), rat(1.into()), 2.into()).unwrap()
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, ExactReal::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExactReal::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExactReal::Rational(r) if r.is_zero())
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, ExactReal::Rational(r) if r.is_integer())
    }

    pub fn field(&self) -> Option<&BigInt> {
        match self {
            ExactReal::Rational(_) => None,
            ExactReal::Quadratic { d, .. } => Some(d),
        }
    }

    fn parts(&self) -> (BigRational, BigRational) {
        match self {
            ExactReal::Rational(r) => (r.clone(), BigRational::zero()),
            ExactReal::Quadratic { a, b, .. } => (a.clone(), b.clone()),
        }
    }

    /// Coefficient of `sqrt d` (zero for rationals).
    pub fn irrational_part(&self) -> BigRational {
        self.parts().1
    }

    pub fn rational_part(&self) -> BigRational {
        self.parts().0
    }

    /// `Ok` when both numbers lie in one field, so operators on them cannot panic.
    pub fn same_field(&self, other: &Self) -> Result<()> {
        self.common_field(other).map(|_| ())
    }

    fn common_field(&self, other: &Self) -> Result<Option<BigInt>> {
        match (self.field(), other.field()) {
            (None, None) => Ok(None),
            (Some(d), None) | (None, Some(d)) => Ok(Some(d.clone())),
            (Some(d1), Some(d2)) if d1 == d2 => Ok(Some(d1.clone())),
            _ => Err(Error::IncompatibleFields),
        }
    }

    fn build(a: BigRational, b: BigRational, d: Option<BigInt>) -> Self {
        match d {
            Some(d) if !b.is_zero() => ExactReal::Quadratic { a, b, d },
            _ => ExactReal::Rational(a),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if let (ExactReal::Rational(x), ExactReal::Rational(y)) = (self, other) {
            return Ok(ExactReal::Rational(x + y));
        }
        let d = self.common_field(other)?;
        let (a1, b1) = self.parts();
        let (a2, b2) = other.parts();
        Ok(Self::build(a1 + a2, b1 + b2, d))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if let (ExactReal::Rational(x), ExactReal::Rational(y)) = (self, other) {
            return Ok(ExactReal::Rational(x * y));
        }
        let d = self.common_field(other)?;
        let (a1, b1) = self.parts();
        let (a2, b2) = other.parts();
        let dd = rat(d.clone().unwrap_or_default());
        let a = &a1 * &a2 + &b1 * &b2 * dd;
        let b = a1 * b2 + a2 * b1;
        Ok(Self::build(a, b, d))
    }

    pub fn recip(&self) -> Result<Self> {
        match self {
            ExactReal::Rational(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(ExactReal::Rational(r.recip()))
                }
            }
            ExactReal::Quadratic { a, b, d } => {
                let norm = a * a - b * b * rat(d.clone());
                Ok(ExactReal::Quadratic {
                    a: a / &norm,
                    b: -(b / &norm),
                    d: d.clone(),
                })
            }
        }
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.recip()?)
    }

    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self> {
        match op {
            ArithOp::Add => self.try_add(other),
            ArithOp::Sub => self.try_sub(other),
            ArithOp::Mul => self.try_mul(other),
            ArithOp::Div => self.try_div(other),
        }
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        fn s(r: &BigRational) -> i32 {
            if r.is_positive() {
                1
            } else if r.is_negative() {
                -1
            } else {
                0
            }
        }
        match self {
            ExactReal::Rational(r) => s(r),
            ExactReal::Quadratic { a, b, d } => {
                let (sa, sb) = (s(a), s(b));
                if sa >= 0 && sb >= 0 {
                    return 1;
                }
                if sa <= 0 && sb <= 0 {
                    return -1;
                }
                let lhs = a * a;
                let rhs = b * b * rat(d.clone());
                let c = match lhs.cmp(&rhs) {
                    Ordering::Greater => 1,
                    Ordering::Less => -1,
                    Ordering::Equal => 0,
                };
                if sa > 0 {
                    c
                } else {
                    -c
                }
            }
        }
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        if let (ExactReal::Rational(x), ExactReal::Rational(y)) = (self, other) {
            return Ok(x.cmp(y));
        }
        Ok(self.try_sub(other)?.signum().cmp(&0))
    }

    pub fn floor(&self) -> BigInt {
        match self {
            ExactReal::Rational(r) => r.numer().div_floor(r.denom()),
            ExactReal::Quadratic { a, b, d } => {
                let t = b.numer() * b.numer() * d;
                let s = t.sqrt();
                let approx = if b.is_positive() {
                    a + BigRational::new(s, b.denom().clone())
                } else {
                    a - BigRational::new(s, b.denom().clone())
                };
                let mut n = approx.floor().to_integer();
                while ExactReal::from_bigint(&n + 1u32) <= *self {
                    n += 1u32;
                }
                while ExactReal::from_bigint(n.clone()) > *self {
                    n -= 1u32;
                }
                n
            }
        }
    }

    pub fn frac(&self) -> Self {
        self - &ExactReal::from_bigint(self.floor())
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// `ceil(x) - 1`.
    pub fn ceil_minus_one(&self) -> BigInt {
        self.ceil() - 1u32
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (a, b) = self.parts();
        let d = self.field().and_then(|d| d.to_f64()).unwrap_or(0.0);
        a.to_f64().unwrap_or(f64::NAN) + b.to_f64().unwrap_or(f64::NAN) * d.sqrt()
    }
}

impl PartialOrd for ExactReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Panics when the operands lie in different quadratic fields.
impl Ord for ExactReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.try_cmp(other).expect("comparison across quadratic fields")
    }
}

impl Neg for &ExactReal {
    type Output = ExactReal;
    fn neg(self) -> ExactReal {
        match self {
            ExactReal::Rational(r) => ExactReal::Rational(-r),
            ExactReal::Quadratic { a, b, d } => ExactReal::Quadratic {
                a: -a,
                b: -b,
                d: d.clone(),
            },
        }
    }
}

impl Neg for ExactReal {
    type Output = ExactReal;
    fn neg(self) -> ExactReal {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&ExactReal> for &ExactReal {
            type Output = ExactReal;
            fn $m(self, rhs: &ExactReal) -> ExactReal {
                self.$f(rhs).expect(concat!("ExactReal::", stringify!($m)))
            }
        }
        impl $tr<ExactReal> for ExactReal {
            type Output = ExactReal;
            fn $m(self, rhs: ExactReal) -> ExactReal {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ExactReal> for ExactReal {
            type Output = ExactReal;
            fn $m(self, rhs: &ExactReal) -> ExactReal {
                (&self).$m(rhs)
            }
        }
        impl $tr<ExactReal> for &ExactReal {
            type Output = ExactReal;
            fn $m(self, rhs: ExactReal) -> ExactReal {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl From<i64> for ExactReal {
    fn from(n: i64) -> Self {
        ExactReal::int(n)
    }
}

impl From<BigInt> for ExactReal {
    fn from(n: BigInt) -> Self {
        ExactReal::from_bigint(n)
    }
}

impl From<BigRational> for ExactReal {
    fn from(r: BigRational) -> Self {
        ExactReal::Rational(r)
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactReal::Rational(r) => write!(f, "{r}"),
            ExactReal::Quadratic { a, b, d } => {
                let c = a.denom().lcm(b.denom());
                let ai = a.numer() * (&c / a.denom());
                let bi = b.numer() * (&c / b.denom());
                let sign = if bi.is_negative() { '-' } else { '+' };
                write!(f, "({ai}{sign}{}*sqrt({d}))", bi.abs())?;
                if !c.is_one() {
                    write!(f, "/{c}")?;
                }
                Ok(())
            }
        }
    }
}

/// `I(x) = ceil(x) - 1`, also usable as a free function.
pub fn ceil_minus_one(x: &ExactReal) -> BigInt {
    x.ceil_minus_one()
}

fn check_unit(x: &ExactReal) -> Result<()> {
    if x.signum() < 0 || *x > ExactReal::one() {
        return Err(Error::DomainError(format!("{x} is outside [0,1]")));
    }
    Ok(())
}

/// Extended digit map on `[0,1]`: `0 -> inf`, `1 -> 1`, otherwise `I(1/x)`.
pub fn gauss_a1(x: &ExactReal) -> Result<ExtendedDigit> {
    check_unit(x)?;
    if x.is_zero() {
        return Ok(ExtendedDigit::Infinity);
    }
    if *x == ExactReal::one() {
        return Ok(ExtendedDigit::Finite(BigInt::one()));
    }
    Ok(ExtendedDigit::Finite(x.recip()?.ceil_minus_one()))
}

/// Extended Gauss map on `[0,1]`: `0, 1 -> 0`, `1/n -> 1` for `n >= 2`, otherwise `{1/x}`.
pub fn gauss_t1(x: &ExactReal) -> Result<ExactReal> {
    check_unit(x)?;
    if x.is_zero() || *x == ExactReal::one() {
        return Ok(ExactReal::zero());
    }
    let inv = x.recip()?;
    if inv.is_integer() {
        return Ok(ExactReal::one());
    }
    Ok(inv.frac())
}

// Expression parser: integers, + - * / ( ), sqrt(..), golden, sqrt2m1.

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        let chars = src
            .chars()
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .filter(|c| !c.is_whitespace())
            .collect();
        Parser { src, chars, pos: 0 }
    }

    fn err<T>(&self, what: &str) -> Result<T> {
        let rest: String = self.chars[self.pos.min(self.chars.len())..].iter().collect();
        Err(Error::Parse(format!("{what} at `{rest}` in `{}`", self.src)))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<ExactReal> {
        let mut v = self.term()?;
        loop {
            if self.eat('+') {
                v = v.try_add(&self.term()?)?;
            } else if self.eat('-') {
                v = v.try_sub(&self.term()?)?;
            } else {
                return Ok(v);
            }
        }
    }

    fn term(&mut self) -> Result<ExactReal> {
        let mut v = self.factor()?;
        loop {
            if self.eat('*') {
                v = v.try_mul(&self.factor()?)?;
            } else if self.eat('/') {
                v = v.try_div(&self.factor()?)?;
            } else {
                return Ok(v);
            }
        }
    }

    fn factor(&mut self) -> Result<ExactReal> {
        if self.eat('-') {
            return Ok(-self.factor()?);
        }
        if self.eat('+') {
            return self.factor();
        }
        if self.eat('(') {
            let v = self.expr()?;
            if !self.eat(')') {
                return self.err("expected `)`");
            }
            return Ok(v);
        }
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                Ok(ExactReal::from_bigint(s.parse::<BigInt>().unwrap()))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match name.as_str() {
                    "golden" => Ok(ExactReal::golden()),
                    "sqrt2m1" => Ok(ExactReal::sqrt2m1()),
                    "sqrt" => {
                        if !self.eat('(') {
                            return self.err("expected `(` after sqrt");
                        }
                        let v = self.expr()?;
                        if !self.eat(')') {
                            return self.err("expected `)`");
                        }
                        match v {
                            ExactReal::Rational(r) => ExactReal::sqrt_of(&r),
                            _ => Err(Error::Parse(format!(
                                "nested square root in `{}`",
                                self.src
                            ))),
                        }
                    }
                    _ => {
                        self.pos = start;
                        self.err("unknown name")
                    }
                }
            }
            _ => self.err("unexpected token"),
        }
    }
}

impl FromStr for ExactReal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        if p.chars.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        let v = p.expr()?;
        if p.pos != p.chars.len() {
            return p.err("trailing input");
        }
        Ok(v)
    }
}
