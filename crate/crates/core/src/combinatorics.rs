//! Exact counting and the asymptotic companions used by the discrete laws.
//!
//! Every count is an [`ExactCount`] backed by an arbitrary-precision integer,
//! so nothing silently wraps. The log-space helpers ([`log_factorial`],
//! [`stirling_approx`], [`wallis_term`]) exist for parameters where the exact
//! integers are needlessly large.

use std::f64::consts::{LN_2, PI};
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default bound on factorial arguments.
pub const DEFAULT_MAX_FACTORIAL: u64 = 100_000;

/// Slack in the Stirling remainder bound `|theta_n| <= (1 + eta) / (12 n)`.
pub const STIRLING_ETA: f64 = 0.01;

/// Smallest `n` from which the Stirling bound with [`STIRLING_ETA`] holds.
pub const STIRLING_N_MIN: u64 = 10;

/// Crossover between direct summation and the Stirling series in
/// [`log_factorial`].
pub const LOG_FACTORIAL_CROSSOVER: u64 = 256;

/// A nonnegative integer count of arbitrary size.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactCount(BigUint);

impl ExactCount {
    pub fn zero() -> Self {
        ExactCount(BigUint::zero())
    }

    pub fn one() -> Self {
        ExactCount(BigUint::one())
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Nearest double; `inf` when the count exceeds the double range.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.0.clone().into())
    }

    /// Natural logarithm, accurate to a few ulps even when the count has
    /// thousands of digits. `-inf` for zero.
    pub fn ln(&self) -> f64 {
        if self.0.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.0.bits();
        let shift = bits.saturating_sub(64);
        let top = (&self.0 >> shift).to_f64().expect("64-bit prefix fits in f64");
        top.ln() + shift as f64 * LN_2
    }
}

impl From<u64> for ExactCount {
    fn from(n: u64) -> Self {
        ExactCount(BigUint::from(n))
    }
}

impl From<BigUint> for ExactCount {
    fn from(n: BigUint) -> Self {
        ExactCount(n)
    }
}

impl fmt::Display for ExactCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl std::ops::Mul<&ExactCount> for ExactCount {
    type Output = ExactCount;
    fn mul(self, rhs: &ExactCount) -> ExactCount {
        ExactCount(self.0 * &rhs.0)
    }
}

impl std::ops::Mul for &ExactCount {
    type Output = ExactCount;
    fn mul(self, rhs: &ExactCount) -> ExactCount {
        ExactCount(&self.0 * &rhs.0)
    }
}

/// Product `lo * (lo + 1) * ... * hi`, 1 when the range is empty.
fn range_product(lo: u64, hi: u64) -> BigUint {
    if lo > hi {
        return BigUint::one();
    }
    // Balanced split keeps the multiplicands of similar size.
    if hi - lo < 16 {
        return (lo..=hi).fold(BigUint::one(), |acc, k| acc * k);
    }
    let mid = lo + (hi - lo) / 2;
    range_product(lo, mid) * range_product(mid + 1, hi)
}

/// `n!` with the default argument bound.
pub fn factorial(n: u64) -> Result<ExactCount> {
    factorial_with_limit(n, DEFAULT_MAX_FACTORIAL)
}

pub fn factorial_with_limit(n: u64, limit: u64) -> Result<ExactCount> {
    if n > limit {
        return Err(Error::ResourceLimit { value: n, limit });
    }
    Ok(ExactCount(range_product(1, n)))
}

/// Number of ordered `p`-tuples of distinct elements of an `n`-set, i.e.
/// the number of injections; zero when `p > n`.
pub fn arrangements(n: u64, p: u64) -> ExactCount {
    if p > n {
        return ExactCount::zero();
    }
    ExactCount(range_product(n - p + 1, n))
}

/// Number of maps from a `p`-set to an `n`-set, `n^p` with `0^0 = 1`.
pub fn count_maps(p: u64, n: u64) -> ExactCount {
    let exp = u32::try_from(p).expect("exponent fits in u32");
    ExactCount(num_traits::pow(BigUint::from(n), exp as usize))
}

/// Binomial coefficient `C(n, p)`; zero when `p > n`.
pub fn combinations(n: u64, p: u64) -> ExactCount {
    if p > n {
        return ExactCount::zero();
    }
    let p = p.min(n - p);
    // C(n, i) = C(n, i - 1) * (n - i + 1) / i stays integral at each step.
    let mut acc = BigUint::one();
    for i in 1..=p {
        acc *= n - i + 1;
        acc /= i;
    }
    ExactCount(acc)
}

/// Row `n` of Pascal's triangle built only from the additive recurrence.
pub fn pascal_row(n: u64) -> Vec<ExactCount> {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigUint::one());
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigUint::one());
        row = next;
    }
    row.into_iter().map(ExactCount).collect()
}

/// Multinomial coefficient `(sum parts)! / prod(parts_i!)`.
pub fn multinomial(parts: &[u64]) -> Result<ExactCount> {
    if parts.is_empty() {
        return Err(Error::InvalidParameter("multinomial needs at least one part".into()));
    }
    let mut total = 0u64;
    let mut acc = BigUint::one();
    for &k in parts {
        total += k;
        acc *= combinations(total, k).0;
    }
    Ok(ExactCount(acc))
}

/// Evaluates `sum_p C(n,p) a^p b^(n-p)` term by term. The terms are
/// summed exactly (every double is a dyadic rational) and rounded once, so
/// alternating signs cost nothing.
pub fn binomial_theorem_eval(a: f64, b: f64, n: u64) -> Result<f64> {
    let exact = |x: f64| BigRational::from_float(x).ok_or_else(|| Error::Domain(format!("{x} is not finite")));
    let (a, b) = (exact(a)?, exact(b)?);
    let mut total = BigRational::zero();
    for (p, c) in pascal_row(n).iter().enumerate() {
        let p = p as u64;
        total +=
            c.to_rational() * num_traits::pow(a.clone(), p as usize) * num_traits::pow(b.clone(), (n - p) as usize);
    }
    let value = total.to_f64().unwrap_or(f64::NAN);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow)
    }
}

/// Stirling's approximation of `n!` with its remainder bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StirlingApprox {
    pub value: f64,
    pub log_value: f64,
    pub theta_bound: f64,
}

pub fn stirling_approx(n: u64) -> Result<StirlingApprox> {
    if n == 0 {
        return Err(Error::Domain("Stirling's formula needs n >= 1".into()));
    }
    let x = n as f64;
    let log_value = 0.5 * (2.0 * PI * x).ln() + x * x.ln() - x;
    Ok(StirlingApprox {
        value: log_value.exp(),
        log_value,
        theta_bound: (1.0 + STIRLING_ETA) / (12.0 * x),
    })
}

/// `ln n!`: direct summation up to [`LOG_FACTORIAL_CROSSOVER`], Stirling
/// series with four correction terms beyond.
pub fn log_factorial(n: u64) -> f64 {
    if n <= LOG_FACTORIAL_CROSSOVER {
        return (2..=n).map(|k| (k as f64).ln()).sum();
    }
    let x = n as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
    (x + 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + series
}

/// `n`-th term `2^(4n) (n!)^4 / (n ((2n)!)^2)` of Wallis' sequence for pi.
pub fn wallis_term(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("Wallis term needs n >= 1".into()));
    }
    if n <= 10 {
        let fact_n = range_product(1, n);
        let fact_2n = range_product(1, 2 * n);
        let num = (BigUint::one() << (4 * n)) * num_traits::pow(fact_n, 4);
        let den = BigUint::from(n) * &fact_2n * &fact_2n;
        let q = BigRational::new(num.into(), den.into());
        return Ok(q.to_f64().expect("Wallis term is a small positive number"));
    }
    let log_term = 4.0 * n as f64 * LN_2 + 4.0 * log_factorial(n) - (n as f64).ln() - 2.0 * log_factorial(2 * n);
    Ok(log_term.exp())
}
