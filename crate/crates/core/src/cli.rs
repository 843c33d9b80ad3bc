//! Command-line front end. [`run`] parses arguments, dispatches and renders
//! either plain text or the JSON envelope `{query, result, witness, oracle_match}`.

use std::ffi::OsString;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::cfe_core::{
    best_rational_between, best_sided_rational_approximations, cfe_of, cfe_value, format_cfe,
    parse_cfe, semiconvergents, Side,
};
use crate::dynamics::{skew_step, SkewState};
use crate::error::Error;
use crate::exact_numbers::ExactReal;
use crate::kronecker::{
    best_sided_alpha_approximations, count_below, count_below_or_equal, floors_match_horizon,
    three_distance,
};
use crate::numeration::{lambda, lambda_inv, Base, DigitWord, Tail, DEFAULT_DIGIT_LIMIT};
use crate::oracles;
use crate::signed_numeration::{cfe_complement_traced, psi_signed, psi_signed_inv};

/// Maximal digits materialized when an oracle evaluates an infinite maximal tail.
const ORACLE_TAIL: usize = 80;

#[derive(Parser, Debug)]
#[command(name = "ostrowski", version, about = "Exact alpha-numeration and Kronecker sequence tools")]
pub struct Command {
    /// Print the JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Recompute the answer by brute force and report MATCH or MISMATCH.
    #[arg(long, global = true)]
    oracle: bool,
    /// Number of digits or steps to emit for infinite outputs.
    #[arg(long, global = true, value_name = "K")]
    digits: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Continued fraction expansion `[t0,t1,...]` of a number.
    Cfe {
        #[arg(value_parser = real, allow_hyphen_values = true)]
        x: ExactReal,
    },
    /// Value of a finite expansion such as `[2,3,1]`.
    Value {
        #[arg(value_parser = cfe_list, allow_hyphen_values = true)]
        cfe: CfeList,
    },
    /// Digits of an integer (signed) or of a real in `[0,1[`.
    Encode(EncodeArgs),
    /// Integer and real carried by a digit word.
    Decode {
        #[arg(long, value_parser = real, allow_hyphen_values = true)]
        alpha: ExactReal,
        #[arg(value_parser = word)]
        word: DigitWord,
    },
    /// Complement of a digit word, with every rewrite step.
    Complement {
        #[arg(long, value_parser = real, allow_hyphen_values = true)]
        alpha: ExactReal,
        #[arg(value_parser = word)]
        word: DigitWord,
    },
    /// Gap lengths of `{k alpha}`, `k < N`, with the closed-form prediction.
    ThreeDistance {
        #[arg(long, value_parser = real, allow_hyphen_values = true)]
        alpha: ExactReal,
        #[arg(long)]
        n: usize,
    },
    /// First `n` with `floor(n alpha) != floor(n alpha2)`.
    Horizon {
        #[arg(long, value_parser = real, allow_hyphen_values = true)]
        alpha: ExactReal,
        #[arg(long, value_parser = real, allow_hyphen_values = true)]
        alpha2: ExactReal,
    },
    /// Best one-sided approximations: of `beta` by `{n alpha}`, or of `alpha` by rationals.
    BestApprox {
        #[arg(long, value_parser = real, allow_hyphen_values = true)]
        alpha: ExactReal,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long, value_parser = real, allow_hyphen_values = true, requires = "n_max")]
        beta: Option<ExactReal>,
        #[arg(long, value_parser = integer)]
        n_max: Option<BigInt>,
        #[arg(long, value_parser = integer, conflicts_with = "beta")]
        max_den: Option<BigInt>,
    },
    /// `#{k < nu : {k alpha} < beta}`, or `#{k <= nu : {k alpha} <= beta}` with `--le`.
    Count {
        #[arg(long, value_parser = real, allow_hyphen_values = true)]
        alpha: ExactReal,
        #[arg(long, value_parser = real, allow_hyphen_values = true)]
        beta: ExactReal,
        #[arg(long, value_parser = integer, allow_hyphen_values = true)]
        nu: BigInt,
        #[arg(long)]
        le: bool,
    },
    /// Step-by-step skew product trace from `(alpha, beta)`.
    Orbit {
        #[arg(long, value_parser = real, allow_hyphen_values = true)]
        alpha: ExactReal,
        #[arg(long, value_parser = real, allow_hyphen_values = true)]
        beta: ExactReal,
    },
    /// Digit pairs of the skew product next to the expansion and `beta` digits.
    Skew {
        #[arg(long, value_parser = real, allow_hyphen_values = true)]
        alpha: ExactReal,
        #[arg(long, value_parser = real, allow_hyphen_values = true)]
        beta: ExactReal,
    },
    /// Semiconvergents of `x` up to a denominator bound.
    Semiconvergents {
        #[arg(value_parser = real, allow_hyphen_values = true)]
        x: ExactReal,
        #[arg(long, value_parser = integer)]
        max_den: BigInt,
    },
    /// Rational of least denominator between two reals.
    BestRational {
        #[arg(long, value_parser = real, allow_hyphen_values = true)]
        theta: ExactReal,
        #[arg(long, value_parser = real, allow_hyphen_values = true)]
        theta2: ExactReal,
    },
}

#[derive(Args, Debug)]
#[command(group = ArgGroup::new("target").required(true).args(["int", "real"]))]
struct EncodeArgs {
    #[arg(long, value_parser = real, allow_hyphen_values = true)]
    alpha: ExactReal,
    #[arg(long = "int", value_parser = integer, allow_hyphen_values = true)]
    int: Option<BigInt>,
    #[arg(long = "real", value_parser = real, allow_hyphen_values = true)]
    real: Option<ExactReal>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

fn real(s: &str) -> Result<ExactReal, String> {
    s.parse::<ExactReal>().map_err(|e| format!("`{s}`: {e}"))
}

fn integer(s: &str) -> Result<BigInt, String> {
    s.trim()
        .replace('\u{2212}', "-")
        .parse::<BigInt>()
        .map_err(|_| format!("`{s}` is not an integer"))
}

#[derive(Clone, Debug)]
struct CfeList(Vec<BigInt>);

fn cfe_list(s: &str) -> Result<CfeList, String> {
    parse_cfe(s).map(CfeList).map_err(|e| format!("`{s}`: {e}"))
}

fn word(s: &str) -> Result<DigitWord, String> {
    s.parse::<DigitWord>().map_err(|e| format!("`{s}`: {e}"))
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<Output, Failure>;

enum Check {
    NotRequested,
    Agrees(bool),
    Skipped(String),
}

struct Output {
    query: Value,
    text: String,
    result: Value,
    witness: Value,
    check: Check,
}

struct Opts {
    oracle: bool,
    digits: Option<usize>,
}

impl Opts {
    /// Runs the brute-force check when requested; oracle errors become a skip.
    fn check(&self, f: impl FnOnce() -> crate::Result<bool>) -> Check {
        if !self.oracle {
            return Check::NotRequested;
        }
        match f() {
            Ok(b) => Check::Agrees(b),
            Err(e) => Check::Skipped(e.to_string()),
        }
    }
}

fn s<T: ToString>(x: &T) -> Value {
    Value::String(x.to_string())
}

fn strings<T: ToString>(xs: &[T]) -> Value {
    Value::Array(xs.iter().map(s).collect())
}

/// Parses `argv` (including the program name) and returns the exit code and output.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cmd = match Command::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let opts = Opts {
        oracle: cmd.oracle,
        digits: cmd.digits,
    };
    match dispatch(&cmd.cmd, &opts) {
        Ok(out) => (0, render(out, cmd.json)),
        Err(Failure::Usage(m)) => (2, format!("error: {m}\n")),
        Err(Failure::Domain(e)) => (1, format!("error: {e}\n")),
    }
}

fn render(out: Output, as_json: bool) -> String {
    if as_json {
        let oracle_match = match out.check {
            Check::Agrees(b) => Value::Bool(b),
            _ => Value::Null,
        };
        let v = json!({
            "query": out.query,
            "result": out.result,
            "witness": out.witness,
            "oracle_match": oracle_match,
        });
        return serde_json::to_string_pretty(&v).expect("plain JSON values") + "\n";
    }
    let mut text = out.text;
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out.check {
        Check::NotRequested => {}
        Check::Agrees(true) => text.push_str("oracle: MATCH\n"),
        Check::Agrees(false) => text.push_str("oracle: MISMATCH\n"),
        Check::Skipped(why) => text.push_str(&format!("oracle: SKIPPED ({why})\n")),
    }
    text
}

fn dispatch(cmd: &Cmd, o: &Opts) -> Outcome {
    match cmd {
        Cmd::Cfe { x } => cfe(x, o),
        Cmd::Value { cfe } => value(&cfe.0, o),
        Cmd::Encode(a) => encode(a, o),
        Cmd::Decode { alpha, word } => decode(alpha, word, o),
        Cmd::Complement { alpha, word } => complement(alpha, word, o),
        Cmd::ThreeDistance { alpha, n } => gaps(alpha, *n, o),
        Cmd::Horizon { alpha, alpha2 } => horizon(alpha, alpha2, o),
        Cmd::BestApprox {
            alpha,
            side,
            beta,
            n_max,
            max_den,
        } => best_approx(alpha, (*side).into(), beta.as_ref(), n_max.as_ref(), max_den.as_ref(), o),
        Cmd::Count { alpha, beta, nu, le } => count(alpha, beta, nu, *le, o),
        Cmd::Orbit { alpha, beta } => orbit(alpha, beta, o, true),
        Cmd::Skew { alpha, beta } => orbit(alpha, beta, o, false),
        Cmd::Semiconvergents { x, max_den } => semis(x, max_den, o),
        Cmd::BestRational { theta, theta2 } => best_rational(theta, theta2, o),
    }
}

fn convergents(digits: &[BigInt]) -> Vec<String> {
    (1..=digits.len())
        .filter_map(|k| cfe_value(&digits[..k]).ok())
        .map(|v| v.to_string())
        .collect()
}

fn cfe(x: &ExactReal, o: &Opts) -> Outcome {
    let mut stream = cfe_of(x);
    let (digits, truncated) = match stream.finite_digits() {
        Some(d) => (d, false),
        None => {
            let k = o.digits.ok_or_else(|| {
                Failure::Usage(format!("{x} has an infinite expansion; pass --digits K"))
            })?;
            (stream.prefix(k), true)
        }
    };
    let mut text = format_cfe(&digits);
    if truncated {
        text.insert_str(text.len() - 1, ",...");
    }
    // one more digit than shown proves a complete expansion really ends
    let probe = digits.len() + usize::from(!truncated);
    let check = o.check(|| Ok(oracles::oracle_cfe_digits(x, probe) == digits));
    Ok(Output {
        query: json!({"command": "cfe", "x": s(x), "digits": o.digits}),
        text,
        result: json!({"digits": strings(&digits), "truncated": truncated}),
        witness: json!({"convergents": convergents(&digits)}),
        check,
    })
}

fn value(digits: &[BigInt], o: &Opts) -> Outcome {
    let v = cfe_value(digits)?;
    let check = o.check(|| Ok(ExactReal::Rational(oracles::oracle_cfe_value(digits)?) == v));
    Ok(Output {
        query: json!({"command": "value", "cfe": format_cfe(digits)}),
        text: v.to_string(),
        result: s(&v),
        witness: json!({"convergents": convergents(digits)}),
        check,
    })
}

fn base_of(alpha: &ExactReal) -> Result<Base, Failure> {
    Ok(Base::new(alpha)?)
}

/// Brute-force evaluation of a complete word.
fn oracle_of(alpha: &ExactReal, w: &DigitWord) -> crate::Result<oracles::WordCheck> {
    oracles::oracle_word(alpha, &w.digits, w.tail == Tail::Maxes, ORACLE_TAIL)
}

fn trim_zeros(d: &[BigInt]) -> &[BigInt] {
    let end = d.iter().rposition(|x| !x.is_zero()).map_or(0, |i| i + 1);
    &d[..end]
}

/// `|beta - sum_{k<=K} b_k delta'_{k-1}| <= delta_{K-1}` for an admissible prefix.
fn oracle_prefix(alpha: &ExactReal, prefix: &[BigInt], beta: &ExactReal) -> crate::Result<bool> {
    let w = oracles::oracle_word(alpha, prefix, false, 0)?;
    let bound = oracles::oracle_delta(alpha, prefix.len() as i64 - 1);
    Ok(w.admissible && (&w.value - beta).abs() <= bound)
}

fn encode(a: &EncodeArgs, o: &Opts) -> Outcome {
    let base = base_of(&a.alpha)?;
    let alpha = &a.alpha;
    if let Some(n) = &a.int {
        let w = psi_signed_inv(&base, n)?;
        let target = (&ExactReal::from_bigint(n.clone()) * alpha).frac();
        let check = o.check(|| {
            if let (ExactReal::Rational(r), false) = (alpha, n.is_negative()) {
                let nth = oracles::oracle_nth_word(r, n)?;
                return Ok(w.tail == Tail::Zeros && trim_zeros(&nth) == trim_zeros(&w.digits));
            }
            let c = oracle_of(alpha, &w)?;
            Ok(c.admissible && c.integer == *n && c.value_is(&target))
        });
        return Ok(Output {
            query: json!({"command": "encode", "alpha": s(alpha), "int": s(n)}),
            text: w.to_string(),
            result: s(&w),
            witness: json!({"value": s(&target), "tail": tail_name(w.tail)}),
            check,
        });
    }
    let beta = a.real.as_ref().expect("clap enforces one target");
    let mut stream = lambda_inv(&base, beta)?;
    let limit = match (base.depth(), o.digits) {
        (Some(r), _) => r.max(1),
        (None, Some(k)) => k,
        (None, None) => DEFAULT_DIGIT_LIMIT,
    };
    while stream.resolved().is_none() && stream.produced().len() < limit {
        stream.next_digit();
    }
    let query = json!({"command": "encode", "alpha": s(alpha), "real": s(beta), "digits": o.digits});
    match stream.resolved() {
        Some(tail) => {
            let w = base.canonical(&DigitWord::new(stream.produced().to_vec(), tail));
            let check = o.check(|| {
                let c = oracle_of(alpha, &w)?;
                Ok(c.admissible && c.value_is(beta))
            });
            Ok(Output {
                query,
                text: w.to_string(),
                result: s(&w),
                witness: json!({"value": s(beta), "tail": tail_name(w.tail)}),
                check,
            })
        }
        None if o.digits.is_none() => Err(Failure::Usage(format!(
            "the digits of {beta} do not terminate within {limit}; pass --digits K"
        ))),
        None => {
            let prefix = stream.produced().to_vec();
            let body: Vec<String> = prefix.iter().map(|d| d.to_string()).collect();
            let text = format!("({})|...", body.join(","));
            let check = o.check(|| oracle_prefix(alpha, &prefix, beta));
            Ok(Output {
                query,
                text: text.clone(),
                result: Value::String(text),
                witness: json!({"remainder": s(stream.remainder()), "tail": Value::Null}),
                check,
            })
        }
    }
}

fn tail_name(t: Tail) -> &'static str {
    match t {
        Tail::Zeros => "0",
        Tail::Maxes => "max",
    }
}

fn decode(alpha: &ExactReal, w: &DigitWord, o: &Opts) -> Outcome {
    let base = base_of(alpha)?;
    let n = psi_signed(&base, w)?;
    let v = lambda(&base, w)?;
    let check = o.check(|| {
        let c = oracle_of(alpha, w)?;
        Ok(c.admissible && c.integer == n && c.value_is(&v))
    });
    Ok(Output {
        query: json!({"command": "decode", "alpha": s(alpha), "word": s(w)}),
        text: format!("integer {n}\nvalue {v}"),
        result: json!({"integer": s(&n), "value": s(&v)}),
        witness: json!({"canonical": s(&base.canonical(w))}),
        check,
    })
}

fn complement(alpha: &ExactReal, w: &DigitWord, o: &Opts) -> Outcome {
    let base = base_of(alpha)?;
    let (out, steps) = cfe_complement_traced(&base, w)?;
    let check = o.check(|| {
        let c_in = oracle_of(alpha, w)?;
        let c_out = oracle_of(alpha, &out)?;
        if w.is_zero() {
            return Ok(out.is_zero());
        }
        let sum = &c_in.value + &c_out.value;
        let err = &c_in.error + &c_out.error;
        let value_ok = if err.is_zero() {
            sum == ExactReal::one()
        } else {
            (sum - ExactReal::one()).abs() <= err
        };
        Ok(c_out.admissible && c_out.integer == -c_in.integer && value_ok)
    });
    let mut text = out.to_string();
    for (i, st) in steps.iter().enumerate() {
        text.push_str(&format!("\n  step {i}: {st}"));
    }
    Ok(Output {
        query: json!({"command": "complement", "alpha": s(alpha), "word": s(w)}),
        text,
        result: s(&out),
        witness: json!({"steps": strings(&steps)}),
        check,
    })
}

fn gaps(alpha: &ExactReal, n: usize, o: &Opts) -> Outcome {
    let base = base_of(alpha)?;
    let td = three_distance(&base, n)?;
    let check = o.check(|| Ok(oracles::oracle_gaps(alpha, n as u64)? == td.spectrum.entries));
    let mut text: Vec<String> = td
        .spectrum
        .entries
        .iter()
        .map(|(l, c)| format!("{c} x {l}"))
        .collect();
    let p = &td.prediction;
    text.push(format!(
        "predicted {} (s = {}, i = {}){}",
        format_list(&p.lengths),
        p.s,
        p.i,
        if td.agrees { "" } else { " DISAGREES" }
    ));
    Ok(Output {
        query: json!({"command": "three-distance", "alpha": s(alpha), "n": n}),
        text: text.join("\n"),
        result: Value::Array(
            td.spectrum
                .entries
                .iter()
                .map(|(l, c)| json!({"length": s(l), "count": c}))
                .collect(),
        ),
        witness: json!({
            "s": p.s,
            "i": s(&p.i),
            "two_values": p.two_values,
            "predicted": strings(&p.lengths),
            "agrees": td.agrees,
        }),
        check,
    })
}

fn format_list<T: ToString>(xs: &[T]) -> String {
    let body: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", body.join(", "))
}

fn horizon(alpha: &ExactReal, alpha2: &ExactReal, o: &Opts) -> Outcome {
    let h = floors_match_horizon(alpha, alpha2)?;
    let check = o.check(|| Ok(BigInt::from(oracles::oracle_floor_horizon(alpha, alpha2)?) == h));
    let hn = ExactReal::from_bigint(h.clone());
    Ok(Output {
        query: json!({"command": "horizon", "alpha": s(alpha), "alpha2": s(alpha2)}),
        text: h.to_string(),
        result: s(&h),
        witness: json!({
            "floor_alpha": s(&(&hn * alpha).floor()),
            "floor_alpha2": s(&(&hn * alpha2).floor()),
        }),
        check,
    })
}

fn small_bound(b: &BigInt) -> crate::Result<u64> {
    b.to_u64().ok_or(Error::TooLarge)
}

fn best_approx(
    alpha: &ExactReal,
    side: Side,
    beta: Option<&ExactReal>,
    n_max: Option<&BigInt>,
    max_den: Option<&BigInt>,
    o: &Opts,
) -> Outcome {
    if let Some(beta) = beta {
        let base = base_of(alpha)?;
        let n_max = n_max.expect("clap requires --n-max with --beta");
        let mut list = best_sided_alpha_approximations(&base, beta, side, n_max)?;
        list.retain(|n| n <= n_max);
        list.sort();
        list.dedup();
        let distance = |n: &BigInt| {
            let x = &ExactReal::from_bigint(n.clone()) * alpha;
            match side {
                Side::Right => (x - beta).frac(),
                Side::Left => (beta - &x).frac(),
            }
        };
        let check = o.check(|| {
            let bound = small_bound(n_max)?;
            let scan = oracles::oracle_records(alpha, beta, side == Side::Right, bound)?;
            Ok(scan.into_iter().map(BigInt::from).collect::<Vec<_>>() == list)
        });
        let dists: Vec<ExactReal> = list.iter().map(distance).collect();
        return Ok(Output {
            query: json!({"command": "best-approx", "alpha": s(alpha), "beta": s(beta),
                          "side": side.to_string(), "n_max": s(n_max)}),
            text: format_list(&list),
            result: strings(&list),
            witness: json!({"distances": strings(&dists)}),
            check,
        });
    }
    let bound = max_den
        .ok_or_else(|| Failure::Usage("best-approx needs --beta with --n-max, or --max-den".into()))?;
    let list = best_sided_rational_approximations(alpha, side, bound);
    let check = o.check(|| {
        let scan = oracles::oracle_best_sided_rationals(alpha, side == Side::Left, small_bound(bound)?)?;
        let mut scan = scan;
        scan.sort_by(|a, b| a.denom().cmp(b.denom()));
        Ok(scan == list)
    });
    Ok(Output {
        query: json!({"command": "best-approx", "alpha": s(alpha), "side": side.to_string(),
                      "max_den": s(bound)}),
        text: format_list(&list),
        result: strings(&list),
        witness: Value::Null,
        check,
    })
}

fn count(alpha: &ExactReal, beta: &ExactReal, nu: &BigInt, le: bool, o: &Opts) -> Outcome {
    let base = base_of(alpha)?;
    let query = json!({"command": "count", "alpha": s(alpha), "beta": s(beta), "nu": s(nu), "le": le});
    if le {
        let c = count_below_or_equal(&base, beta, nu)?;
        let check = o.check(|| {
            Ok(BigInt::from(oracles::oracle_count_le(alpha, beta, small_bound(nu)?)?) == c)
        });
        return Ok(Output {
            query,
            text: c.to_string(),
            result: s(&c),
            witness: Value::Null,
            check,
        });
    }
    let (c, w) = count_below(&base, beta, nu)?;
    let check =
        o.check(|| Ok(BigInt::from(oracles::oracle_count(alpha, beta, small_bound(nu)?)?) == c));
    let terms: Vec<Value> = w
        .terms
        .iter()
        .map(|t| {
            json!({"b": s(&t.b), "nu": s(&t.nu), "tau": s(&t.tau),
                   "eps": t.eps, "eps_prime": t.eps_prime})
        })
        .collect();
    Ok(Output {
        query,
        text: c.to_string(),
        result: s(&c),
        witness: json!({"n": s(&w.n), "b": s(&w.b), "periods": s(&w.periods), "terms": terms}),
        check,
    })
}

fn orbit(alpha: &ExactReal, beta: &ExactReal, o: &Opts, trace: bool) -> Outcome {
    let base = base_of(alpha)?;
    let steps = match (base.depth(), o.digits) {
        (_, Some(k)) => k,
        (Some(r), None) => r + 1,
        (None, None) => {
            return Err(Failure::Usage(format!(
                "the orbit of {alpha} is infinite; pass --digits K"
            )))
        }
    };
    alpha.same_field(beta)?;
    let mut state = SkewState::new(alpha.clone(), beta.clone());
    if !state.in_domain() {
        return Err(Error::DomainError(format!("({alpha}, {beta}) is outside the trapezoid")).into());
    }
    let mut pairs: Vec<(BigInt, BigInt)> = Vec::new();
    let mut states = Vec::new();
    while pairs.len() < steps && state.in_domain() {
        let (pair, next) = skew_step(&state)?;
        pairs.push(pair);
        states.push(next.clone());
        state = next;
    }
    let a_digits: Vec<BigInt> = pairs.iter().map(|p| p.0.clone()).collect();
    let b_digits: Vec<BigInt> = pairs.iter().map(|p| p.1.clone()).collect();
    let check = o.check(|| {
        let cf = oracles::oracle_cfe_digits(alpha, pairs.len() + 1);
        Ok(cf.get(1..=pairs.len()) == Some(&a_digits[..]) && oracle_prefix(alpha, &b_digits, beta)?)
    });
    let result = Value::Array(
        pairs
            .iter()
            .map(|(a, b)| json!({"a": s(a), "b": s(b)}))
            .collect(),
    );
    let query = json!({"command": if trace { "orbit" } else { "skew" },
                       "alpha": s(alpha), "beta": s(beta), "digits": o.digits});
    if trace {
        let text: Vec<String> = pairs
            .iter()
            .zip(&states)
            .enumerate()
            .map(|(k, ((a, b), st))| format!("{} ({a},{b}) {} {}", k + 1, st.x, st.y))
            .collect();
        let witness = Value::Array(
            states
                .iter()
                .map(|st| json!({"x": s(&st.x), "y": s(&st.y)}))
                .collect(),
        );
        return Ok(Output {
            query,
            text: text.join("\n"),
            result,
            witness,
            check,
        });
    }
    let mut cf = cfe_of(alpha);
    let expansion: Vec<BigInt> = cf.prefix(pairs.len() + 1).into_iter().skip(1).collect();
    let mut stream = lambda_inv(&base, beta).ok();
    let lam: Vec<BigInt> = match stream.as_mut() {
        Some(st) => (0..pairs.len()).map(|_| st.next_digit()).collect(),
        None => Vec::new(),
    };
    let agrees = expansion == a_digits && lam == b_digits;
    let text: Vec<String> = pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
    Ok(Output {
        query,
        text: text.join(" "),
        result,
        witness: json!({"cfe": strings(&expansion), "lambda_inv": strings(&lam), "agrees": agrees}),
        check,
    })
}

fn semis(x: &ExactReal, max_den: &BigInt, o: &Opts) -> Outcome {
    let list = semiconvergents(x, max_den);
    let check = o.check(|| {
        let bound = small_bound(max_den)?;
        let fl = x.floor();
        let excluded = [
            BigRational::from_integer(fl.clone()),
            BigRational::from_integer(fl + BigInt::one()),
        ];
        let mut scan = oracles::oracle_best_sided_rationals(x, true, bound)?;
        scan.extend(oracles::oracle_best_sided_rationals(x, false, bound)?);
        scan.retain(|r| !excluded.contains(r));
        scan.sort_by(|a, b| a.denom().cmp(b.denom()).then(a.cmp(b)));
        scan.dedup();
        Ok(scan == list)
    });
    Ok(Output {
        query: json!({"command": "semiconvergents", "x": s(x), "max_den": s(max_den)}),
        text: format_list(&list),
        result: strings(&list),
        witness: Value::Null,
        check,
    })
}

fn best_rational(theta: &ExactReal, theta2: &ExactReal, o: &Opts) -> Outcome {
    let r = best_rational_between(theta, theta2)?;
    let check = o.check(|| Ok(oracles::oracle_best_rational(theta, theta2, oracles::MAX_SCAN)? == r));
    let digits = cfe_of(&ExactReal::Rational(r.clone()))
        .finite_digits()
        .expect("rational expansions terminate");
    Ok(Output {
        query: json!({"command": "best-rational", "theta": s(theta), "theta2": s(theta2)}),
        text: r.to_string(),
        result: s(&r),
        witness: json!({"cfe": format_cfe(&digits)}),
        check,
    })
}
