//! Applications to the sequence `({n alpha})`: gap lengths, horizons, floor
//! sums, best one-sided approximations of a target and counting.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cfe_core::{best_rational_between, Side};
use crate::dynamics::shift_integer_by_digits;
use crate::error::{Error, Result};
use crate::exact_numbers::ExactReal;
use crate::numeration::{lambda_inv, psi_inv, Base, DigitWord, Tail};

/// Gap lengths with multiplicities, sorted by decreasing length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapSpectrum {
    pub entries: Vec<(ExactReal, usize)>,
}

impl GapSpectrum {
    pub fn lengths(&self) -> Vec<ExactReal> {
        self.entries.iter().map(|(l, _)| l.clone()).collect()
    }

    pub fn total_count(&self) -> usize {
        self.entries.iter().map(|(_, c)| c).sum()
    }

    pub fn total_length(&self) -> ExactReal {
        self.entries.iter().fold(ExactReal::zero(), |acc, (l, c)| {
            acc + l * &ExactReal::int(*c as i64)
        })
    }

    fn from_map(map: &BTreeMap<ExactReal, usize>) -> Self {
        GapSpectrum {
            entries: map.iter().rev().map(|(l, c)| (l.clone(), *c)).collect(),
        }
    }
}

/// Gap lengths between consecutive points `0 = x_0 < ... < 1` of `{k alpha}`, `k < N`.
pub fn gap_spectrum(alpha: &ExactReal, n: usize) -> GapSpectrum {
    let mut pts: Vec<ExactReal> = (0..n as i64)
        .map(|k| (ExactReal::int(k) * alpha).frac())
        .collect();
    pts.sort();
    pts.push(ExactReal::one());
    let mut map = BTreeMap::new();
    for w in pts.windows(2) {
        *map.entry(&w[1] - &w[0]).or_insert(0) += 1;
    }
    GapSpectrum::from_map(&map)
}

/// Incremental gap spectra for `N = 1, 2, ...`, inserting one point per step.
pub struct GapScanner<'a> {
    alpha: &'a ExactReal,
    points: std::collections::BTreeSet<ExactReal>,
    gaps: BTreeMap<ExactReal, usize>,
    n: i64,
}

impl<'a> GapScanner<'a> {
    pub fn new(alpha: &'a ExactReal) -> Self {
        let mut points = std::collections::BTreeSet::new();
        points.insert(ExactReal::zero());
        points.insert(ExactReal::one());
        let mut gaps = BTreeMap::new();
        gaps.insert(ExactReal::one(), 1);
        GapScanner {
            alpha,
            points,
            gaps,
            n: 1,
        }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn spectrum(&self) -> GapSpectrum {
        GapSpectrum::from_map(&self.gaps)
    }

    /// Adds the point `{N alpha}`, moving to `N + 1` points.
    pub fn push(&mut self) {
        let x = (ExactReal::int(self.n) * self.alpha).frac();
        let lo = self.points.range(..&x).next_back().unwrap().clone();
        let hi = self.points.range(&x..).next().unwrap().clone();
        let old = &hi - &lo;
        let c = self.gaps.get_mut(&old).unwrap();
        *c -= 1;
        if *c == 0 {
            self.gaps.remove(&old);
        }
        *self.gaps.entry(&x - &lo).or_insert(0) += 1;
        *self.gaps.entry(&hi - &x).or_insert(0) += 1;
        self.points.insert(x);
        self.n += 1;
    }
}

/// The closed-form gap lengths for `N` points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapPrediction {
    pub s: usize,
    pub i: BigInt,
    pub two_values: bool,
    /// Distinct lengths, decreasing.
    pub lengths: Vec<ExactReal>,
}

pub fn predict_gaps(base: &Base, n: &BigInt) -> Result<GapPrediction> {
    if !n.is_positive() {
        return Err(Error::OutOfRange("N must be positive".into()));
    }
    if let Some(q) = base.grid_size() {
        if *n > q {
            return Err(Error::OutOfRange(format!("N = {n} exceeds q = {q}")));
        }
    }
    if n.is_one() {
        return Ok(GapPrediction {
            s: 0,
            i: BigInt::zero(),
            two_values: false,
            lengths: vec![ExactReal::one()],
        });
    }
    let mut s: i64 = 0;
    while *n > base.q(s) + base.q(s - 1) {
        s += 1;
    }
    let word = psi_inv(base, &(n - 1u32))?;
    let top = base.digit_at(&word, s as usize);
    let i = base.max_digit(s as usize) - top;
    let ds = base.delta(s);
    let dp = base.delta(s - 1);
    let ir = ExactReal::from_bigint(i.clone());
    let two_values = *n == base.q(s) + (BigInt::one() - &i) * base.q(s - 1);
    let mut lengths = if two_values {
        vec![&ds + &(&ir * &dp), dp.clone()]
    } else {
        let mid = &ds + &(&ir * &dp);
        let big = &mid + &dp;
        vec![dp.clone(), mid, big]
    };
    lengths.sort();
    lengths.dedup();
    lengths.reverse();
    Ok(GapPrediction {
        s: s as usize,
        i,
        two_values,
        lengths,
    })
}

#[derive(Clone, Debug)]
pub struct ThreeDistance {
    pub spectrum: GapSpectrum,
    pub prediction: GapPrediction,
    pub agrees: bool,
}

/// Directly sorted gap spectrum together with the closed-form prediction.
pub fn three_distance(base: &Base, n: usize) -> Result<ThreeDistance> {
    let prediction = predict_gaps(base, &BigInt::from(n))?;
    let spectrum = gap_spectrum(base.alpha(), n);
    let agrees = spectrum.lengths() == prediction.lengths;
    Ok(ThreeDistance {
        spectrum,
        prediction,
        agrees,
    })
}

/// Least `n >= 1` with `floor(n alpha) != floor(n alpha2)`: the denominator of the
/// simplest rational in the half-open interval `]min, max]`.
pub fn floors_match_horizon(alpha: &ExactReal, alpha2: &ExactReal) -> Result<BigInt> {
    let (lo, hi) = match alpha.try_cmp(alpha2)? {
        Ordering::Less => (alpha, alpha2),
        Ordering::Greater => (alpha2, alpha),
        Ordering::Equal => return Err(Error::DomainError("the two slopes are equal".into())),
    };
    let gamma = best_rational_between(lo, hi)?;
    if ExactReal::Rational(gamma.clone()) != *lo {
        return Ok(gamma.denom().clone());
    }
    // lo = p/q itself: descend to its right in the Stern-Brocot tree.
    let (p, q) = (gamma.numer().clone(), gamma.denom().clone());
    let v = if q.is_one() {
        BigInt::one()
    } else {
        let g = p.extended_gcd(&q);
        (-g.x).mod_floor(&q)
    };
    let u = (BigInt::one() + &v * &p) / &q;
    let num = ExactReal::from_bigint(u) - ExactReal::from_bigint(v.clone()) * hi;
    let den = ExactReal::from_bigint(q.clone()) * hi - ExactReal::from_bigint(p);
    let a = (num / den).ceil().max(BigInt::zero());
    Ok(a * q + v)
}

/// `sum_{k<n} floor(k x)`.
pub fn floor_sum(x: &ExactReal, n: &BigInt) -> BigInt {
    let mut total = BigInt::zero();
    let mut k = BigInt::zero();
    while k < *n {
        total += (ExactReal::from_bigint(k.clone()) * x).floor();
        k += 1u32;
    }
    total
}

/// `sum_{k<n} {k x}`.
pub fn frac_sum(x: &ExactReal, n: &BigInt) -> ExactReal {
    let mut total = ExactReal::zero();
    let mut k = BigInt::zero();
    while k < *n {
        total = total + (ExactReal::from_bigint(k.clone()) * x).frac();
        k += 1u32;
    }
    total
}

/// `sum_{k<q} floor(k alpha) = (p-1)(q-1)/2`.
pub fn is_semiconvergent_by_floor_sum(alpha: &ExactReal, p: &BigInt, q: &BigInt) -> bool {
    let lhs = floor_sum(alpha, q);
    let rhs: BigInt = (p - 1u32) * (q - 1u32);
    rhs.is_even() && lhs * 2u32 == rhs
}

/// False when `alpha` is a rational with denominator below `q` lying just left of
/// `p/q` (no smaller-denominator fraction in `]alpha, p/q]`); the floor-sum test
/// is not meaningful there.
pub fn floor_sum_precondition_holds(alpha: &ExactReal, p: &BigInt, q: &BigInt) -> bool {
    let Some(a) = alpha.as_rational() else {
        return true;
    };
    let target = BigRational::new(p.clone(), q.clone());
    if a.denom() >= q || *a >= target {
        return true;
    }
    match floors_match_horizon(alpha, &ExactReal::Rational(target)) {
        Ok(h) => h < *q,
        Err(_) => true,
    }
}

/// Integers `n <= n_max` at which `{n alpha}` is a new closest approach to `beta`
/// from the given side.
pub fn best_sided_alpha_approximations(
    base: &Base,
    beta: &ExactReal,
    side: Side,
    n_max: &BigInt,
) -> Result<Vec<BigInt>> {
    let mut stream = lambda_inv(base, beta)?;
    let mut b: Vec<BigInt> = Vec::new();
    let mut terminating = None;
    loop {
        if stream.resolved() == Some(Tail::Zeros) {
            terminating = Some(b.len());
            break;
        }
        let k = b.len() as i64;
        if base.depth().is_none() && k >= 3 && base.q(k - 3) > *n_max {
            break;
        }
        b.push(stream.next_digit());
    }
    let digit = |i: usize| b.get(i.wrapping_sub(1)).cloned().unwrap_or_default();
    let partial = |k: usize| -> BigInt {
        (1..=k.min(b.len()))
            .map(|i| &b[i - 1] * base.q(i as i64 - 1))
            .sum()
    };
    let mut out = Vec::new();
    if let Some(s) = terminating {
        out.push(partial(s));
    }
    let last = terminating.unwrap_or(b.len());
    match side {
        Side::Right => {
            out.push(BigInt::zero());
            let mut k = 1;
            while 2 * k - 1 <= last {
                let base_n = partial(2 * k - 1);
                let step = base.q(2 * k as i64 - 1);
                let mut j = BigInt::zero();
                while j < digit(2 * k) {
                    out.push(&base_n + &j * &step);
                    j += 1u32;
                }
                k += 1;
            }
        }
        Side::Left => {
            let mut k = 0;
            while 2 * k <= last {
                let base_n = partial(2 * k);
                let step = base.q(2 * k as i64);
                let mut j = BigInt::zero();
                while j < digit(2 * k + 1) {
                    out.push(&base_n + &j * &step);
                    j += 1u32;
                }
                k += 1;
            }
        }
    }
    out.retain(|n| n <= n_max);
    out.sort();
    out.dedup();
    Ok(out)
}

/// Per-index terms of the counting formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTerm {
    pub b: BigInt,
    pub nu: BigInt,
    pub tau: BigInt,
    pub eps: bool,
    pub eps_prime: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountWitness {
    pub n: DigitWord,
    /// Digits of `beta`, cut as in the count when the expansion is infinite.
    pub b: DigitWord,
    /// Full periods skipped for rational alpha when `nu >= q`.
    pub periods: BigInt,
    pub terms: Vec<CountTerm>,
}

fn seq_cmp_rlo(x: &[BigInt], y: &[BigInt]) -> Ordering {
    let len = x.len().max(y.len());
    let at = |v: &[BigInt], k: usize| v.get(k).cloned().unwrap_or_default();
    for k in (0..len).rev() {
        let c = at(x, k).cmp(&at(y, k));
        if c != Ordering::Equal {
            return c;
        }
    }
    Ordering::Equal
}

fn seq_cmp_alo(x: &[BigInt], y: &[BigInt]) -> Ordering {
    let len = x.len().max(y.len());
    let at = |v: &[BigInt], k: usize| v.get(k).cloned().unwrap_or_default();
    for k in 0..len {
        let c = at(x, k).cmp(&at(y, k));
        if c != Ordering::Equal {
            return if k % 2 == 0 { c } else { c.reverse() };
        }
    }
    Ordering::Equal
}

/// Reduces `beta` to a point with a finite expansion: a grid point for rational
/// alpha (rounded up for strict counts, down otherwise). For irrational alpha an
/// infinite expansion is cut after the first nonzero digit beyond index `reach`;
/// the cut word orders like `beta` against every word of length at most `reach`.
fn target_word(base: &Base, beta: &ExactReal, round_up: bool, reach: usize) -> Result<Option<DigitWord>> {
    if beta.signum() < 0 || *beta >= ExactReal::one() {
        return Err(Error::DomainError(format!("beta = {beta} is not in [0,1[")));
    }
    match base.grid_size() {
        Some(q) => {
            let qr = ExactReal::from_bigint(q.clone());
            let scaled = &qr * beta;
            let t = if round_up { scaled.ceil() } else { scaled.floor() };
            if t == q {
                return Ok(None);
            }
            let g = ExactReal::from_bigint(t) / qr;
            Ok(Some(lambda_inv(base, &g)?.into_word(base.depth().unwrap().max(1))?))
        }
        None => {
            let mut stream = lambda_inv(base, beta)?;
            let limit = reach + crate::numeration::DEFAULT_DIGIT_LIMIT;
            loop {
                if stream.resolved() == Some(Tail::Zeros) {
                    return Ok(Some(base.canonical(&DigitWord::zeros(stream.produced().to_vec()))));
                }
                let k = stream.produced().len();
                if k > reach && !stream.produced()[k - 1].is_zero() {
                    return Ok(Some(DigitWord::zeros(stream.produced().to_vec())));
                }
                if k >= limit {
                    return Err(Error::DomainError(format!(
                        "the digits of beta = {beta} stay zero past {limit}"
                    )));
                }
                stream.next_digit();
            }
        }
    }
}

fn split_periods(base: &Base, nu: &BigInt) -> (BigInt, BigInt) {
    match base.grid_size() {
        Some(q) => nu.div_mod_floor(&q),
        None => (BigInt::zero(), nu.clone()),
    }
}

fn formula(base: &Base, n: &DigitWord, b: &DigitWord) -> (BigInt, Vec<CountTerm>) {
    let s = n.digits.len().min(b.digits.len());
    let mut total = BigInt::zero();
    let mut terms = Vec::with_capacity(s);
    for i in 1..=s {
        let ni = base.digit_at(n, i);
        let next = base.digit_at(n, i + 1);
        let bi = base.digit_at(b, i);
        let sn = &n.digits[i..];
        let sb = &b.digits[i..];
        let nu = shift_integer_by_digits(base, n, i);
        let shifted_nonzero = sn.iter().any(|d| !d.is_zero());
        let tau = if (ni.is_zero() || next.is_zero()) && shifted_nonzero {
            BigInt::one()
        } else {
            bi.clone().min(ni.clone())
        };
        let eps = bi < ni && seq_cmp_alo(sb, sn) == Ordering::Less;
        let eps_prime = seq_cmp_rlo(sb, sn) == Ordering::Less;
        let mut term = &bi * &nu + &tau;
        if eps {
            term += 1u32;
        }
        if eps_prime {
            term -= 1u32;
        }
        if i % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
        terms.push(CountTerm {
            b: bi,
            nu,
            tau,
            eps,
            eps_prime,
        });
    }
    (total, terms)
}

/// `#{k in [0, nu[ : {k alpha} < beta}` by the alternating digit formula.
pub fn count_below(base: &Base, beta: &ExactReal, nu: &BigInt) -> Result<(BigInt, CountWitness)> {
    if nu.is_negative() {
        return Err(Error::DomainError("nu must be non-negative".into()));
    }
    let (periods, rest) = split_periods(base, nu);
    let n = psi_inv(base, &rest)?;
    let Some(b) = target_word(base, beta, true, n.digits.len())? else {
        // every point lies below beta
        return Ok((
            nu.clone(),
            CountWitness {
                n,
                b: DigitWord::new(vec![], Tail::Maxes),
                periods,
                terms: vec![],
            },
        ));
    };
    let (c, terms) = formula(base, &n, &b);
    let per_period = match base.grid_size() {
        Some(_) => grid_index(base, &b),
        None => BigInt::zero(),
    };
    Ok((
        &periods * per_period + c,
        CountWitness {
            n,
            b,
            periods,
            terms,
        },
    ))
}

/// Index `t` of the grid point `t/q` carried by a word.
fn grid_index(base: &Base, w: &DigitWord) -> BigInt {
    let v = crate::numeration::lambda(base, w).expect("admissible");
    (ExactReal::from_bigint(base.grid_size().unwrap()) * v).floor()
}

/// `#{k in [0, nu] : {k alpha} <= beta}`.
pub fn count_below_or_equal(base: &Base, beta: &ExactReal, nu: &BigInt) -> Result<BigInt> {
    if nu.is_negative() {
        return Err(Error::DomainError("nu must be non-negative".into()));
    }
    let (periods, rest) = split_periods(base, nu);
    let n = psi_inv(base, &rest)?;
    let b = target_word(base, beta, false, n.digits.len())?.expect("rounding down stays below 1");
    let (c, _) = formula(base, &n, &b);
    let n_le_b = crate::numeration::compare_alo(base, &n, &b) != Ordering::Greater;
    let b_le_n = crate::numeration::compare_rlo(base, &b, &n) != Ordering::Greater;
    let mut d = BigInt::zero();
    if n_le_b {
        d += 1u32;
    }
    if b_le_n {
        d += 1u32;
    }
    if n == b {
        d -= 1u32;
    }
    let per_period = match base.grid_size() {
        Some(_) => grid_index(base, &b) + 1u32,
        None => BigInt::zero(),
    };
    Ok(periods * per_period + c + d)
}

/// Proportion of `k < nu` with `{k alpha} < beta`.
pub fn repartition(base: &Base, beta: &ExactReal, nu: &BigInt) -> Result<ExactReal> {
    if !nu.is_positive() {
        return Err(Error::DomainError("nu must be positive".into()));
    }
    let (c, _) = count_below(base, beta, nu)?;
    Ok(ExactReal::Rational(BigRational::new(c, nu.clone())))
}
