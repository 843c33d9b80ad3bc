//! Skew-product digit generation, shifts of the numeration and germ successors.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_numbers::{gauss_a1, gauss_t1, ExactReal, ExtendedDigit};
use crate::numeration::{lambda_inv, psi, psi_inv, Base, DigitWord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewState {
    pub x: ExactReal,
    pub y: ExactReal,
}

impl SkewState {
    pub fn new(x: ExactReal, y: ExactReal) -> Self {
        SkewState { x, y }
    }

    /// `0 < x < 1` and `-x < y < 1`.
    pub fn in_domain(&self) -> bool {
        self.x.signum() > 0
            && self.x < ExactReal::one()
            && -&self.x < self.y
            && self.y < ExactReal::one()
    }
}

/// One step `(a, b) = A(x, y)`, `(x, y) -> H(x, y)`.
///
/// The digit of `x` is `ceil(1/x) - 1` and `x` moves by the extended Gauss map,
/// so rational `x` yields the partial quotients ending in `1`.
pub fn skew_step(s: &SkewState) -> Result<((BigInt, BigInt), SkewState)> {
    s.x.same_field(&s.y)?;
    if !s.in_domain() {
        return Err(Error::DomainError(format!(
            "({}, {}) is outside the trapezoid",
            s.x, s.y
        )));
    }
    let a = match gauss_a1(&s.x)? {
        ExtendedDigit::Finite(a) => a,
        ExtendedDigit::Infinity => unreachable!("x > 0"),
    };
    let ratio = &s.y / &s.x;
    let a_real = ExactReal::from_bigint(a.clone());
    let (b, y) = if s.y <= &s.x * &a_real {
        let b = ratio.ceil();
        let y = ExactReal::from_bigint(b.clone()) - &ratio;
        (b, y)
    } else {
        (a.clone(), a_real - &ratio)
    };
    let x = gauss_t1(&s.x)?;
    Ok(((a, b), SkewState { x, y }))
}

/// Up to `steps` digit pairs from `(alpha, beta)`, stopping early when the state leaves the domain.
pub fn skew_orbit(alpha: &ExactReal, beta: &ExactReal, steps: usize) -> Result<Vec<(BigInt, BigInt)>> {
    alpha.same_field(beta)?;
    let mut s = SkewState::new(alpha.clone(), beta.clone());
    if !s.in_domain() {
        return Err(Error::DomainError("start outside the trapezoid".into()));
    }
    let mut out = Vec::with_capacity(steps);
    while out.len() < steps && s.in_domain() {
        let (pair, next) = skew_step(&s)?;
        out.push(pair);
        s = next;
    }
    Ok(out)
}

fn check_shift_index(base: &Base, k: usize, slack: usize) -> Result<()> {
    match base.depth() {
        Some(r) if k + slack > r => Err(Error::IndexBeyondDepth(k as i64)),
        _ => Ok(()),
    }
}

/// `alpha_k = {1/alpha_{k-1}}`.
pub fn shift_alpha(base: &Base, k: usize) -> Result<ExactReal> {
    check_shift_index(base, k, 0)?;
    let mut x = base.alpha().clone();
    for _ in 0..k {
        if x.is_zero() {
            return Err(Error::IndexBeyondDepth(k as i64));
        }
        x = x.recip()?.frac();
    }
    Ok(x)
}

/// `sum d_j Q_{j-1}` where `Q` are the convergent denominators of `alpha_k`.
pub fn shifted_psi(base: &Base, k: usize, digits: &[BigInt]) -> BigInt {
    let mut q_prev = BigInt::zero();
    let mut q = BigInt::one();
    let mut total = BigInt::zero();
    for (j, d) in digits.iter().enumerate() {
        total += d * &q;
        let a = base.max_digit(k + j + 1);
        let next = a * &q + &q_prev;
        q_prev = std::mem::replace(&mut q, next);
    }
    total
}

/// Whether the shifted word `sigma^k(n)` is itself admissible over `alpha_k`.
fn shift_keeps_word(n: &DigitWord, k: usize) -> bool {
    let next = n.digits.get(k).cloned().unwrap_or_default();
    !next.is_zero() || n.digits.iter().skip(k).all(Zero::is_zero)
}

/// `nu_k` by the digit characterization: the integer over `alpha_k` whose word
/// is `sigma^k(n)`, or `(1, sigma^{k+1}(n))` when `n_{k+1} = 0` with a nonzero remainder.
pub fn shift_integer_by_digits(base: &Base, n: &DigitWord, k: usize) -> BigInt {
    let tail: Vec<BigInt> = n.digits.iter().skip(k).cloned().collect();
    if shift_keeps_word(n, k) {
        shifted_psi(base, k, &tail)
    } else {
        let mut w = vec![BigInt::one()];
        w.extend(tail.into_iter().skip(1));
        shifted_psi(base, k, &w)
    }
}

/// `nu_k = floor(nu_{k-1} alpha_{k-1})`, plus one when `n_{k+1} = 0` and `sigma^k(n) != 0`.
pub fn shift_integer(base: &Base, nu: &BigInt, k: usize) -> Result<BigInt> {
    check_shift_index(base, k, 2)?;
    let n = psi_inv(base, nu)?;
    let mut v = nu.clone();
    let mut x = base.alpha().clone();
    for i in 1..=k {
        let mut next = (ExactReal::from_bigint(v) * &x).floor();
        if !shift_keeps_word(&n, i) {
            next += 1u32;
        }
        v = next;
        x = x.recip()?.frac();
    }
    Ok(v)
}

/// `gamma_k = (b_k alpha_{k-1} - gamma_{k-1}) / alpha_{k-1}` with `b` the digits of `beta`.
pub fn shift_real(base: &Base, beta: &ExactReal, k: usize) -> Result<ExactReal> {
    check_shift_index(base, k, 2)?;
    let mut stream = lambda_inv(base, beta)?;
    let mut g = beta.clone();
    let mut x = base.alpha().clone();
    for _ in 1..=k {
        let b = ExactReal::from_bigint(stream.next_digit());
        g = (b * &x - &g) / &x;
        x = x.recip()?.frac();
    }
    Ok(g)
}

/// Successor within the germ class: the first non-maximal prefix is replaced by
/// its successor for the reverse lexicographic order.
pub fn germ_successor(base: &Base, w: &DigitWord) -> Result<DigitWord> {
    let w = base.canonical(w);
    let limit = match base.depth() {
        Some(r) => r,
        None => w.digits.len() + 1,
    };
    let r = (1..=limit)
        .find(|&k| base.digit_at(&w, k) < base.max_digit(k))
        .ok_or(Error::NoSuccessor)?;
    let head: Vec<BigInt> = (1..=r).map(|k| base.digit_at(&w, k)).collect();
    let n = psi(base, &base.canonical(&DigitWord::zeros(head)))? + 1u32;
    let next = psi_inv(base, &n)?;
    let mut digits: Vec<BigInt> = (1..=r).map(|k| base.digit_at(&next, k)).collect();
    digits.extend(w.digits.iter().skip(r).cloned());
    Ok(base.canonical(&DigitWord::new(digits, w.tail)))
}

/// Membership of `y` in `{ {k theta} : k >= 0 }`.
fn in_orbit(theta: &ExactReal, y: &ExactReal) -> bool {
    if y.signum() < 0 || *y >= ExactReal::one() {
        return false;
    }
    match theta {
        ExactReal::Rational(t) => {
            if t.is_integer() {
                return y.is_zero();
            }
            let den = ExactReal::from_bigint(t.denom().clone());
            (den * y).is_integer()
        }
        ExactReal::Quadratic { .. } => {
            if y.field().is_some() && y.field() != theta.field() {
                return false;
            }
            let m = y.irrational_part() / theta.irrational_part();
            if !m.is_integer() || m.is_negative() {
                return false;
            }
            let m = ExactReal::from_rational(m);
            (y - &(m * theta)).is_integer()
        }
    }
}

/// Checks `K_alpha = alpha ({0} u U_{j<=a1} (j - K_{T alpha}) u (a1 + T alpha (K_{T^2 alpha} \ {0})))`
/// with `a1`, `T` the extended digit and Gauss maps. Exhaustive for rational alpha;
/// for quadratic alpha the first `depth` orbit points of each set are checked.
pub fn k_alpha_decomposition_check(base: &Base, depth: usize) -> bool {
    let alpha = base.alpha();
    let Ok(ExtendedDigit::Finite(a1)) = gauss_a1(alpha) else {
        return false;
    };
    let Ok(t1) = gauss_t1(alpha) else { return false };
    let Ok(t2) = gauss_t1(&t1) else { return false };
    let a1_real = ExactReal::from_bigint(a1.clone());

    let piece_of = |x: &ExactReal| -> Vec<usize> {
        let mut hits = Vec::new();
        if x.is_zero() {
            hits.push(0);
        }
        let mut j = BigInt::one();
        while j <= a1 {
            let y = ExactReal::from_bigint(j.clone()) - x / alpha;
            if in_orbit(&t1, &y) {
                hits.push(1);
            }
            j += 1u32;
        }
        if !t1.is_zero() {
            let z = (x / alpha - &a1_real) / &t1;
            if !z.is_zero() && in_orbit(&t2, &z) {
                hits.push(2);
            }
        }
        hits
    };

    match base.grid_size() {
        Some(q) => {
            // every grid point lies in exactly one piece
            let q_real = ExactReal::from_bigint(q.clone());
            let mut k = BigInt::zero();
            while k < q {
                let x = ExactReal::from_bigint(k.clone()) / &q_real;
                if piece_of(&x).len() != 1 {
                    return false;
                }
                k += 1u32;
            }
            // and every generated element is a grid point
            let orbit = |theta: &ExactReal| -> Vec<ExactReal> {
                match theta.as_rational() {
                    Some(t) if !t.is_integer() => {
                        let d = t.denom().clone();
                        let dr = ExactReal::from_bigint(d.clone());
                        let mut v = Vec::new();
                        let mut i = BigInt::zero();
                        while i < d {
                            v.push(ExactReal::from_bigint(i.clone()) / &dr);
                            i += 1u32;
                        }
                        v
                    }
                    _ => vec![ExactReal::zero()],
                }
            };
            let mut seen = BTreeSet::new();
            seen.insert(ExactReal::zero());
            let mut count = 1usize;
            let mut j = BigInt::one();
            while j <= a1 {
                for y in orbit(&t1) {
                    seen.insert(alpha * &(ExactReal::from_bigint(j.clone()) - y));
                    count += 1;
                }
                j += 1u32;
            }
            for z in orbit(&t2) {
                if !z.is_zero() {
                    seen.insert(alpha * &(&a1_real + &(&t1 * &z)));
                    count += 1;
                }
            }
            count == seen.len()
                && BigInt::from(seen.len()) == q
                && seen.iter().all(|x| in_orbit(alpha, x))
        }
        None => {
            let mut k = 0i64;
            while (k as usize) < depth {
                let x = (ExactReal::int(k) * alpha).frac();
                if piece_of(&x).len() != 1 {
                    return false;
                }
                let y = (ExactReal::int(k) * &t1).frac();
                let mut j = BigInt::one();
                while j <= a1 {
                    if !in_orbit(alpha, &(alpha * &(ExactReal::from_bigint(j.clone()) - &y))) {
                        return false;
                    }
                    j += 1u32;
                }
                let z = (ExactReal::int(k) * &t2).frac();
                if !z.is_zero() && !in_orbit(alpha, &(alpha * &(&a1_real + &(&t1 * &z)))) {
                    return false;
                }
                k += 1;
            }
            true
        }
    }
}
