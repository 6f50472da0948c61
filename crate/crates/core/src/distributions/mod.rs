//! The catalog of probability laws.
//!
//! A [`Law`] answers mass/density, cdf, quantile, moment and MGF queries and
//! can be sampled by inverse transform. Discrete masses switch to log space
//! for large parameters so that masses like `C(1000, 500) / 2^1000` stay
//! accurate.
//!
//! | name     | law                          | support        |
//! |----------|------------------------------|----------------|
//! | `degen`  | point mass at `c`            | `{c}`          |
//! | `dunif`  | uniform on `1..=n`           | `{1..n}`       |
//! | `bern`   | Bernoulli(p)                 | `{0,1}`        |
//! | `binom`  | Binomial(n, p)               | `{0..n}`       |
//! | `hyper`  | Hypergeometric(N, M, r)      | `{0..min(r,M)}`|
//! | `geom`   | trials to first success      | `{1,2,..}`     |
//! | `nfail`  | failures before success      | `{0,1,..}`     |
//! | `nbinom` | trials to k-th success       | `{k,k+1,..}`   |
//! | `pois`   | Poisson(lambda)              | `{0,1,..}`     |
//! | `unif`   | Uniform(a, b)                | `[a,b]`        |
//! | `exp`    | Exponential(lambda)          | `[0,inf)`      |
//! | `gamma`  | Gamma(shape a, rate b)       | `[0,inf)`      |
//! | `norm`   | Normal(m, sigma^2)           | `R`            |

mod params;
mod rng;
pub mod special;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub use params::LawParams;
pub use rng::Rng;
pub use special::{log_gamma, normal_cdf, normal_pdf, regularized_incomplete_gamma};

use crate::combinatorics::{combinations, log_factorial};
use crate::error::{Error, Result};
use crate::exact::{self, Prob};
use crate::moments::FiniteRv;

/// Parameter sizes up to which discrete masses are evaluated with exact
/// binomial coefficients instead of log-factorials.
const DIRECT_MASS_LIMIT: u64 = 60;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Law {
    Degenerate {
        c: f64,
    },
    DiscreteUniform {
        n: u64,
    },
    Bernoulli {
        p: f64,
    },
    Binomial {
        n: u64,
        p: f64,
    },
    /// `total` balls, `marked` of them marked, `draws` drawn without
    /// replacement.
    Hypergeometric {
        total: u64,
        marked: u64,
        draws: u64,
    },
    Geometric {
        p: f64,
    },
    NumFailures {
        p: f64,
    },
    NegativeBinomial {
        k: u64,
        p: f64,
    },
    Poisson {
        lambda: f64,
    },
    Uniform {
        a: f64,
        b: f64,
    },
    Exponential {
        lambda: f64,
    },
    Gamma {
        shape: f64,
        rate: f64,
    },
    Normal {
        mean: f64,
        variance: f64,
    },
}

/// Values set of a law.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SupportDescriptor {
    FiniteIntegerRange { lo: i64, hi: i64 },
    IntegerFrom { lo: i64 },
    RealInterval { lo: f64, hi: f64 },
    Point(f64),
}

impl SupportDescriptor {
    pub fn contains(&self, x: f64) -> bool {
        match *self {
            SupportDescriptor::FiniteIntegerRange { lo, hi } => x.fract() == 0.0 && x >= lo as f64 && x <= hi as f64,
            SupportDescriptor::IntegerFrom { lo } => x.fract() == 0.0 && x >= lo as f64,
            SupportDescriptor::RealInterval { lo, hi } => x >= lo && x <= hi,
            SupportDescriptor::Point(c) => x == c,
        }
    }
}

fn open_prob(p: f64, what: &str) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{what} must lie in (0, 1), got {p}")))
    }
}

fn positive(x: f64, what: &str) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{what} must be positive, got {x}")))
    }
}

fn finite(x: f64, what: &str) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{what} must be finite, got {x}")))
    }
}

pub(crate) fn ln_choose(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    if n <= DIRECT_MASS_LIMIT {
        combinations(n, k).to_f64().ln()
    } else {
        log_factorial(n) - log_factorial(k) - log_factorial(n - k)
    }
}

fn as_index(x: f64) -> Option<i64> {
    (x.fract() == 0.0 && x.abs() < 9.0e15).then_some(x as i64)
}

impl Law {
    pub fn degenerate(c: f64) -> Result<Law> {
        finite(c, "c")?;
        Ok(Law::Degenerate { c })
    }

    pub fn discrete_uniform(n: u64) -> Result<Law> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        Ok(Law::DiscreteUniform { n })
    }

    pub fn bernoulli(p: f64) -> Result<Law> {
        open_prob(p, "p")?;
        Ok(Law::Bernoulli { p })
    }

    pub fn binomial(n: u64, p: f64) -> Result<Law> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        open_prob(p, "p")?;
        Ok(Law::Binomial { n, p })
    }

    pub fn hypergeometric(total: u64, marked: u64, draws: u64) -> Result<Law> {
        if total == 0 || draws == 0 {
            return Err(Error::InvalidParameter("N and r must be at least 1".into()));
        }
        if marked > total || draws > total {
            return Err(Error::InvalidParameter(format!(
                "need M <= N and r <= N, got N={total}, M={marked}, r={draws}"
            )));
        }
        Ok(Law::Hypergeometric { total, marked, draws })
    }

    pub fn geometric(p: f64) -> Result<Law> {
        open_prob(p, "p")?;
        Ok(Law::Geometric { p })
    }

    pub fn num_failures(p: f64) -> Result<Law> {
        open_prob(p, "p")?;
        Ok(Law::NumFailures { p })
    }

    pub fn negative_binomial(k: u64, p: f64) -> Result<Law> {
        if k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        open_prob(p, "p")?;
        Ok(Law::NegativeBinomial { k, p })
    }

    pub fn poisson(lambda: f64) -> Result<Law> {
        positive(lambda, "lambda")?;
        Ok(Law::Poisson { lambda })
    }

    pub fn uniform(a: f64, b: f64) -> Result<Law> {
        finite(a, "a")?;
        finite(b, "b")?;
        if !(a < b) {
            return Err(Error::InvalidParameter(format!("need a < b, got a={a}, b={b}")));
        }
        Ok(Law::Uniform { a, b })
    }

    pub fn exponential(lambda: f64) -> Result<Law> {
        positive(lambda, "lambda")?;
        Ok(Law::Exponential { lambda })
    }

    pub fn gamma(shape: f64, rate: f64) -> Result<Law> {
        positive(shape, "shape")?;
        positive(rate, "rate")?;
        Ok(Law::Gamma { shape, rate })
    }

    pub fn normal(mean: f64, variance: f64) -> Result<Law> {
        finite(mean, "mean")?;
        positive(variance, "variance")?;
        Ok(Law::Normal { mean, variance })
    }

    /// Re-runs the constructor checks on an enum built by hand.
    pub fn validate(self) -> Result<Law> {
        match self {
            Law::Degenerate { c } => Law::degenerate(c),
            Law::DiscreteUniform { n } => Law::discrete_uniform(n),
            Law::Bernoulli { p } => Law::bernoulli(p),
            Law::Binomial { n, p } => Law::binomial(n, p),
            Law::Hypergeometric { total, marked, draws } => Law::hypergeometric(total, marked, draws),
            Law::Geometric { p } => Law::geometric(p),
            Law::NumFailures { p } => Law::num_failures(p),
            Law::NegativeBinomial { k, p } => Law::negative_binomial(k, p),
            Law::Poisson { lambda } => Law::poisson(lambda),
            Law::Uniform { a, b } => Law::uniform(a, b),
            Law::Exponential { lambda } => Law::exponential(lambda),
            Law::Gamma { shape, rate } => Law::gamma(shape, rate),
            Law::Normal { mean, variance } => Law::normal(mean, variance),
        }
    }

    /// Short R-style name.
    pub fn name(&self) -> &'static str {
        match self {
            Law::Degenerate { .. } => "degen",
            Law::DiscreteUniform { .. } => "dunif",
            Law::Bernoulli { .. } => "bern",
            Law::Binomial { .. } => "binom",
            Law::Hypergeometric { .. } => "hyper",
            Law::Geometric { .. } => "geom",
            Law::NumFailures { .. } => "nfail",
            Law::NegativeBinomial { .. } => "nbinom",
            Law::Poisson { .. } => "pois",
            Law::Uniform { .. } => "unif",
            Law::Exponential { .. } => "exp",
            Law::Gamma { .. } => "gamma",
            Law::Normal { .. } => "norm",
        }
    }

    pub fn is_discrete(&self) -> bool {
        !matches!(
            self,
            Law::Uniform { .. } | Law::Exponential { .. } | Law::Gamma { .. } | Law::Normal { .. }
        )
    }

    pub fn support(&self) -> SupportDescriptor {
        use SupportDescriptor::*;
        match *self {
            Law::Degenerate { c } => Point(c),
            Law::DiscreteUniform { n } => FiniteIntegerRange { lo: 1, hi: n as i64 },
            Law::Bernoulli { .. } => FiniteIntegerRange { lo: 0, hi: 1 },
            Law::Binomial { n, .. } => FiniteIntegerRange { lo: 0, hi: n as i64 },
            Law::Hypergeometric { marked, draws, .. } => FiniteIntegerRange {
                lo: 0,
                hi: draws.min(marked) as i64,
            },
            Law::Geometric { .. } => IntegerFrom { lo: 1 },
            Law::NumFailures { .. } | Law::Poisson { .. } => IntegerFrom { lo: 0 },
            Law::NegativeBinomial { k, .. } => IntegerFrom { lo: k as i64 },
            Law::Uniform { a, b } => RealInterval { lo: a, hi: b },
            Law::Exponential { .. } | Law::Gamma { .. } => RealInterval {
                lo: 0.0,
                hi: f64::INFINITY,
            },
            Law::Normal { .. } => RealInterval {
                lo: f64::NEG_INFINITY,
                hi: f64::INFINITY,
            },
        }
    }

    /// `P(X = x)` for a discrete law; zero off the support.
    pub fn mass(&self, x: f64) -> Result<f64> {
        if !self.is_discrete() {
            return Err(Error::ContinuousLaw);
        }
        if let Law::Degenerate { c } = *self {
            return Ok(if x == c { 1.0 } else { 0.0 });
        }
        let k = match as_index(x) {
            Some(k) => k,
            None => return Ok(0.0),
        };
        Ok(self.integer_mass(k))
    }

    /// Mass at an integer point of an integer-valued law.
    fn integer_mass(&self, k: i64) -> f64 {
        if !self.support().contains(k as f64) {
            return 0.0;
        }
        match *self {
            Law::Degenerate { .. } => 1.0,
            Law::DiscreteUniform { n } => 1.0 / n as f64,
            Law::Bernoulli { p } => {
                if k == 1 {
                    p
                } else {
                    1.0 - p
                }
            }
            Law::Binomial { n, p } => {
                let k = k as u64;
                if n <= DIRECT_MASS_LIMIT {
                    combinations(n, k).to_f64() * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32)
                } else {
                    (ln_choose(n, k) + k as f64 * p.ln() + (n - k) as f64 * (-p).ln_1p()).exp()
                }
            }
            Law::Hypergeometric { total, marked, draws } => {
                let k = k as u64;
                if draws - k > total - marked {
                    return 0.0;
                }
                (ln_choose(marked, k) + ln_choose(total - marked, draws - k) - ln_choose(total, draws)).exp()
            }
            Law::Geometric { p } => p * ((k - 1) as f64 * (-p).ln_1p()).exp(),
            Law::NumFailures { p } => p * (k as f64 * (-p).ln_1p()).exp(),
            Law::NegativeBinomial { k: r, p } => {
                let n = k as u64;
                (ln_choose(n - 1, r - 1) + r as f64 * p.ln() + (n - r) as f64 * (-p).ln_1p()).exp()
            }
            Law::Poisson { lambda } => (k as f64 * lambda.ln() - lambda - log_factorial(k as u64)).exp(),
            _ => unreachable!("continuous laws have no integer mass"),
        }
    }

    /// Exact mass for finite laws whose parameters are exact binary
    /// fractions (every finite double is). `None` for unbounded or
    /// continuous laws.
    pub fn exact_mass(&self, k: i64) -> Option<Prob> {
        if !self.support().contains(k as f64) {
            return match self.support() {
                SupportDescriptor::FiniteIntegerRange { .. } => Some(Prob::zero()),
                SupportDescriptor::Point(_) => Some(Prob::zero()),
                _ => None,
            };
        }
        let rational = |p: f64| exact::from_f64(p).expect("validated parameter is finite");
        Some(match *self {
            Law::Degenerate { .. } => Prob::one(),
            Law::DiscreteUniform { n } => exact::ratio(1, n as i64),
            Law::Bernoulli { p } => {
                let p = rational(p);
                if k == 1 {
                    p
                } else {
                    Prob::one() - p
                }
            }
            Law::Binomial { n, p } => {
                let k = k as u64;
                let p = rational(p);
                let q = Prob::one() - &p;
                combinations(n, k).to_rational() * num_traits::pow(p, k as usize) * num_traits::pow(q, (n - k) as usize)
            }
            Law::Hypergeometric { total, marked, draws } => {
                let k = k as u64;
                if draws - k > total - marked {
                    return Some(Prob::zero());
                }
                combinations(marked, k).to_rational() * combinations(total - marked, draws - k).to_rational()
                    / combinations(total, draws).to_rational()
            }
            _ => return None,
        })
    }

    /// Exact finite random variable for laws with finite support.
    pub fn to_finite_rv(&self) -> Result<FiniteRv> {
        let (lo, hi) = match self.support() {
            SupportDescriptor::FiniteIntegerRange { lo, hi } => (lo, hi),
            SupportDescriptor::Point(c) => {
                return FiniteRv::new(vec![c], vec![Prob::one()]);
            }
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "law {} has unbounded support",
                    self.name()
                )))
            }
        };
        let values = (lo..=hi).map(|k| k as f64).collect();
        let probs = (lo..=hi)
            .map(|k| self.exact_mass(k).expect("finite law has exact masses"))
            .collect();
        FiniteRv::new(values, probs)
    }

    /// Probability density of a continuous law; zero off the support.
    pub fn density(&self, x: f64) -> Result<f64> {
        Ok(match *self {
            Law::Uniform { a, b } => {
                if a <= x && x <= b {
                    1.0 / (b - a)
                } else {
                    0.0
                }
            }
            Law::Exponential { lambda } => {
                if x >= 0.0 {
                    lambda * (-lambda * x).exp()
                } else {
                    0.0
                }
            }
            Law::Gamma { shape, rate } => {
                if x < 0.0 {
                    0.0
                } else if x == 0.0 {
                    match shape.partial_cmp(&1.0) {
                        Some(std::cmp::Ordering::Less) => f64::INFINITY,
                        Some(std::cmp::Ordering::Equal) => rate,
                        _ => 0.0,
                    }
                } else {
                    (shape * rate.ln() - special::log_gamma(shape)? + (shape - 1.0) * x.ln() - rate * x).exp()
                }
            }
            Law::Normal { mean, variance } => {
                let sd = variance.sqrt();
                special::normal_pdf((x - mean) / sd) / sd
            }
            _ => return Err(Error::DiscreteLaw),
        })
    }

    /// `P(X > x)`.
    pub fn survival(&self, x: f64) -> f64 {
        match *self {
            Law::Normal { mean, variance } => special::normal_cdf((mean - x) / variance.sqrt()),
            _ => 1.0 - self.cdf(x),
        }
    }

    /// `P(X <= x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        match *self {
            Law::Degenerate { c } => {
                if x >= c {
                    1.0
                } else {
                    0.0
                }
            }
            Law::Uniform { a, b } => ((x - a) / (b - a)).clamp(0.0, 1.0),
            Law::Exponential { lambda } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-lambda * x).exp_m1()
                }
            }
            Law::Gamma { shape, rate } => {
                if x <= 0.0 {
                    0.0
                } else {
                    special::regularized_incomplete_gamma(shape, rate * x).expect("validated gamma law")
                }
            }
            Law::Normal { mean, variance } => special::normal_cdf((x - mean) / variance.sqrt()),
            _ => self.integer_cdf(x.floor()),
        }
    }

    fn integer_cdf(&self, k: f64) -> f64 {
        let (lo, hi) = match self.support() {
            SupportDescriptor::FiniteIntegerRange { lo, hi } => (lo as f64, Some(hi as f64)),
            SupportDescriptor::IntegerFrom { lo } => (lo as f64, None),
            _ => unreachable!("integer cdf on an integer law"),
        };
        if k < lo {
            return 0.0;
        }
        if k == f64::INFINITY {
            return 1.0;
        }
        if let Some(hi) = hi {
            if k >= hi {
                return 1.0;
            }
        }
        let q_of = |p: f64| 1.0 - p;
        match *self {
            Law::DiscreteUniform { n } => k / n as f64,
            Law::Geometric { p } => -(k * (-p).ln_1p()).exp_m1(),
            Law::NumFailures { p } => -((k + 1.0) * (-p).ln_1p()).exp_m1(),
            Law::Poisson { lambda } => {
                special::regularized_upper_incomplete_gamma(k + 1.0, lambda).expect("validated poisson law")
            }
            Law::NegativeBinomial { k: r, p } => {
                // at most n trials for r successes <=> at least r successes in n trials
                let n = k;
                statrs::function::beta::beta_reg(r as f64, n - r as f64 + 1.0, p).clamp(0.0, 1.0)
            }
            Law::Bernoulli { p } => q_of(p),
            _ => {
                let top = k as i64;
                let total: f64 = (lo as i64..=top).map(|j| self.integer_mass(j)).sum();
                total.min(1.0)
            }
        }
    }

    /// Generalized inverse `inf { x : cdf(x) >= s }` for `0 < s < 1`.
    pub fn quantile(&self, s: f64) -> Result<f64> {
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::Domain(format!("quantile level must lie in (0, 1), got {s}")));
        }
        match *self {
            Law::Degenerate { c } => Ok(c),
            Law::Uniform { a, b } => Ok(self.nudge_up(a + s * (b - a), s)),
            Law::Exponential { lambda } => Ok(self.nudge_up(-(-s).ln_1p() / lambda, s)),
            Law::Normal { mean, variance } => {
                let z = invert_monotone(special::normal_cdf, special::normal_pdf, s, -40.0, 40.0, 0.0);
                Ok(self.nudge_up(mean + variance.sqrt() * z, s))
            }
            Law::Gamma { shape, rate } => {
                let mut hi = (shape / rate).max(1.0);
                while self.cdf(hi) < s {
                    hi *= 2.0;
                    if !hi.is_finite() {
                        return Err(Error::Domain("gamma quantile bracket overflowed".into()));
                    }
                }
                let x = invert_monotone(
                    |x| self.cdf(x),
                    |x| self.density(x).unwrap_or(0.0),
                    s,
                    0.0,
                    hi,
                    shape / rate,
                );
                Ok(self.nudge_up(x, s))
            }
            _ => self.integer_quantile(s).map(|k| k as f64),
        }
    }

    fn integer_quantile(&self, s: f64) -> Result<i64> {
        let (mut lo, mut hi) = match self.support() {
            SupportDescriptor::FiniteIntegerRange { lo, hi } => (lo, hi),
            SupportDescriptor::IntegerFrom { lo } => {
                let mut step = 1i64;
                let mut hi = lo;
                while self.cdf(hi as f64) < s {
                    hi = hi
                        .checked_add(step)
                        .ok_or_else(|| Error::Domain("quantile search overflowed".into()))?;
                    step = step.saturating_mul(2);
                }
                (lo, hi)
            }
            _ => unreachable!("integer quantile on an integer law"),
        };
        // smallest k in [lo, hi] with cdf(k) >= s; cdf(hi) >= s holds
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.cdf(mid as f64) >= s {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Ok(lo)
    }

    /// Smallest float at or above a numerically inverted point with
    /// `cdf(x) >= s`: gallop upward, then bisect back. The cdf may only
    /// move at a coarser resolution than the ulps of `x` (uniform law near
    /// zero with a large `a`, say).
    fn nudge_up(&self, x: f64, s: f64) -> f64 {
        if self.cdf(x) >= s {
            return x;
        }
        let (mut bad, mut good) = (x, x.next_up());
        let mut step = good - x;
        while self.cdf(good) < s {
            bad = good;
            step *= 2.0;
            good = x + step;
            if !good.is_finite() {
                return good;
            }
        }
        while bad.next_up() < good {
            let mid = bad + (good - bad) / 2.0;
            if mid <= bad || mid >= good {
                break;
            }
            if self.cdf(mid) >= s {
                good = mid;
            } else {
                bad = mid;
            }
        }
        good
    }

    pub fn mean(&self) -> f64 {
        match *self {
            Law::Degenerate { c } => c,
            Law::DiscreteUniform { n } => (n as f64 + 1.0) / 2.0,
            Law::Bernoulli { p } => p,
            Law::Binomial { n, p } => n as f64 * p,
            Law::Hypergeometric { total, marked, draws } => draws as f64 * marked as f64 / total as f64,
            Law::Geometric { p } => 1.0 / p,
            Law::NumFailures { p } => (1.0 - p) / p,
            Law::NegativeBinomial { k, p } => k as f64 / p,
            Law::Poisson { lambda } => lambda,
            Law::Uniform { a, b } => (a + b) / 2.0,
            Law::Exponential { lambda } => 1.0 / lambda,
            Law::Gamma { shape, rate } => shape / rate,
            Law::Normal { mean, .. } => mean,
        }
    }

    pub fn variance(&self) -> f64 {
        match *self {
            Law::Degenerate { .. } => 0.0,
            Law::DiscreteUniform { n } => {
                let n = n as f64;
                (n * n - 1.0) / 12.0
            }
            Law::Bernoulli { p } => p * (1.0 - p),
            Law::Binomial { n, p } => n as f64 * p * (1.0 - p),
            Law::Hypergeometric { total, marked, draws } => {
                if total == 1 {
                    return 0.0;
                }
                let (n, m, r) = (total as f64, marked as f64, draws as f64);
                let theta = m / n;
                r * theta * (1.0 - theta) * (n - r) / (n - 1.0)
            }
            Law::Geometric { p } | Law::NumFailures { p } => (1.0 - p) / (p * p),
            Law::NegativeBinomial { k, p } => k as f64 * (1.0 - p) / (p * p),
            Law::Poisson { lambda } => lambda,
            Law::Uniform { a, b } => (b - a) * (b - a) / 12.0,
            Law::Exponential { lambda } => 1.0 / (lambda * lambda),
            Law::Gamma { shape, rate } => shape / (rate * rate),
            Law::Normal { variance, .. } => variance,
        }
    }

    pub fn std_dev(&self) -> f64 {
        self.variance().sqrt()
    }

    /// `E[X (X - 1)]` of a discrete law.
    pub fn factorial_moment2(&self) -> Result<f64> {
        Ok(match *self {
            Law::Degenerate { c } => c * (c - 1.0),
            Law::DiscreteUniform { n } => {
                let n = n as f64;
                (n + 1.0) * (n - 1.0) / 3.0
            }
            Law::Bernoulli { .. } => 0.0,
            Law::Binomial { n, p } => n as f64 * (n as f64 - 1.0) * p * p,
            Law::Hypergeometric { total, marked, draws } => {
                if total < 2 {
                    0.0
                } else {
                    let (n, m, r) = (total as f64, marked as f64, draws as f64);
                    m * (m - 1.0) * r * (r - 1.0) / (n * (n - 1.0))
                }
            }
            Law::Geometric { p } => 2.0 * (1.0 - p) / (p * p),
            Law::NumFailures { p } => 2.0 * (1.0 - p) * (1.0 - p) / (p * p),
            Law::NegativeBinomial { k, p } => {
                let k = k as f64;
                (k * k + k * (1.0 - p) - k * p) / (p * p)
            }
            Law::Poisson { lambda } => lambda * lambda,
            _ => return Err(Error::ContinuousLaw),
        })
    }

    /// Moment generating function `E[exp(s X)]`.
    pub fn mgf(&self, s: f64) -> Result<f64> {
        if !s.is_finite() {
            return Err(Error::Domain(format!("mgf argument {s} is not finite")));
        }
        if s == 0.0 {
            return Ok(1.0);
        }
        let outside = |bound: String| Err(Error::Domain(format!("mgf needs {bound}, got s = {s}")));
        let value = match *self {
            Law::Degenerate { c } => (c * s).exp(),
            Law::DiscreteUniform { n } => {
                let n = n as f64;
                s.exp() * (n * s).exp_m1() / (n * s.exp_m1())
            }
            Law::Bernoulli { p } => 1.0 - p + p * s.exp(),
            Law::Binomial { n, p } => (1.0 - p + p * s.exp()).powf(n as f64),
            Law::Hypergeometric { .. } => {
                let (lo, hi) = match self.support() {
                    SupportDescriptor::FiniteIntegerRange { lo, hi } => (lo, hi),
                    _ => unreachable!(),
                };
                (lo..=hi).map(|k| self.integer_mass(k) * (k as f64 * s).exp()).sum()
            }
            Law::Geometric { p } | Law::NumFailures { p } | Law::NegativeBinomial { p, .. } => {
                let limit = -(-p).ln_1p();
                if s >= limit {
                    return outside(format!("s < -ln(1 - p) = {limit}"));
                }
                let denom = 1.0 - (1.0 - p) * s.exp();
                match *self {
                    Law::Geometric { .. } => p * s.exp() / denom,
                    Law::NumFailures { .. } => p / denom,
                    Law::NegativeBinomial { k, .. } => (p * s.exp() / denom).powf(k as f64),
                    _ => unreachable!(),
                }
            }
            Law::Poisson { lambda } => (lambda * s.exp_m1()).exp(),
            Law::Uniform { a, b } => (s * a).exp() * (s * (b - a)).exp_m1() / (s * (b - a)),
            Law::Exponential { lambda } => {
                if s >= lambda {
                    return outside(format!("s < {lambda}"));
                }
                lambda / (lambda - s)
            }
            Law::Gamma { shape, rate } => {
                if s >= rate {
                    return outside(format!("s < {rate}"));
                }
                (rate / (rate - s)).powf(shape)
            }
            Law::Normal { mean, variance } => (mean * s + 0.5 * variance * s * s).exp(),
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::Overflow)
        }
    }

    /// Second MGF `E[s^X] = mgf(ln s)`, for `s > 0`.
    pub fn second_mgf(&self, s: f64) -> Result<f64> {
        if !(s > 0.0) {
            return Err(Error::Domain(format!("second mgf needs s > 0, got {s}")));
        }
        self.mgf(s.ln())
    }

    /// MGF of `a X + b`: `exp(b s) * mgf(a s)`.
    pub fn mgf_affine(&self, a: f64, b: f64, s: f64) -> Result<f64> {
        let value = (b * s).exp() * self.mgf(a * s)?;
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::Overflow)
        }
    }

    /// `count` independent draws by inverse transform.
    pub fn sample(&self, rng: &mut Rng, count: usize) -> Vec<f64> {
        if let Law::Degenerate { c } = *self {
            return vec![c; count];
        }
        if self.is_discrete() {
            let table = CumulativeTable::new(self);
            (0..count).map(|_| table.draw(self, rng.next_f64())).collect()
        } else {
            (0..count)
                .map(|_| {
                    let u = rng.next_open01();
                    self.quantile(u).expect("u lies in (0, 1)")
                })
                .collect()
        }
    }
}

/// Cumulative masses of an integer law from the bottom of its support,
/// truncated once the remaining tail is below rounding.
struct CumulativeTable {
    lo: i64,
    cumulative: Vec<f64>,
}

impl CumulativeTable {
    const MAX_LEN: usize = 1 << 20;

    fn new(law: &Law) -> Self {
        let (lo, hi) = match law.support() {
            SupportDescriptor::FiniteIntegerRange { lo, hi } => (lo, Some(hi)),
            SupportDescriptor::IntegerFrom { lo } => (lo, None),
            _ => unreachable!("table for integer laws only"),
        };
        let mut cumulative = Vec::new();
        let mut acc = 0.0;
        let mut k = lo;
        loop {
            acc += law.integer_mass(k);
            cumulative.push(acc);
            if hi.is_some_and(|h| k >= h) || cumulative.len() >= Self::MAX_LEN {
                break;
            }
            if hi.is_none() && acc >= 1.0 - 1e-16 && k as f64 > law.mean() {
                break;
            }
            k += 1;
        }
        CumulativeTable { lo, cumulative }
    }

    fn draw(&self, law: &Law, u: f64) -> f64 {
        let idx = self.cumulative.partition_point(|&c| c <= u);
        if idx < self.cumulative.len() {
            return (self.lo + idx as i64) as f64;
        }
        // u beyond the tabulated mass: continue the scan lazily
        let mut acc = *self.cumulative.last().expect("table is nonempty");
        let mut k = self.lo + self.cumulative.len() as i64;
        if matches!(law.support(), SupportDescriptor::FiniteIntegerRange { .. }) {
            return (k - 1) as f64;
        }
        loop {
            let m = law.integer_mass(k);
            acc += m;
            if acc > u || m == 0.0 {
                return k as f64;
            }
            k += 1;
        }
    }
}

/// Solves `f(x) = s` for increasing `f` on `[lo, hi]` by Newton steps
/// safeguarded with bisection.
fn invert_monotone(
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
    s: f64,
    mut lo: f64,
    mut hi: f64,
    start: f64,
) -> f64 {
    let mut x = start.clamp(lo, hi);
    for _ in 0..200 {
        let fx = f(x) - s;
        if fx == 0.0 {
            return x;
        }
        if fx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let d = df(x);
        let newton = x - fx / d;
        let next = if d > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= 1e-15 * x.abs().max(1e-300) || hi - lo <= 1e-15 * hi.abs().max(1e-300) {
            return next;
        }
        x = next;
    }
    x
}

impl std::fmt::Display for Law {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Law::Degenerate { c } => write!(f, "Degenerate({c})"),
            Law::DiscreteUniform { n } => write!(f, "DiscreteUniform({n})"),
            Law::Bernoulli { p } => write!(f, "Bernoulli({p})"),
            Law::Binomial { n, p } => write!(f, "Binomial({n}, {p})"),
            Law::Hypergeometric { total, marked, draws } => {
                write!(f, "Hypergeometric(N={total}, M={marked}, r={draws})")
            }
            Law::Geometric { p } => write!(f, "Geometric({p})"),
            Law::NumFailures { p } => write!(f, "NumFailures({p})"),
            Law::NegativeBinomial { k, p } => write!(f, "NegativeBinomial({k}, {p})"),
            Law::Poisson { lambda } => write!(f, "Poisson({lambda})"),
            Law::Uniform { a, b } => write!(f, "Uniform({a}, {b})"),
            Law::Exponential { lambda } => write!(f, "Exponential({lambda})"),
            Law::Gamma { shape, rate } => write!(f, "Gamma({shape}, {rate})"),
            Law::Normal { mean, variance } => write!(f, "Normal({mean}, {variance})"),
        }
    }
}

/// Exact mass of `k` in a rational law, for callers holding `BigRational`
/// parameters rather than doubles.
pub fn binomial_exact_mass(n: u64, p: &BigRational, k: u64) -> BigRational {
    if k > n {
        return BigRational::zero();
    }
    let q = BigRational::one() - p;
    combinations(n, k).to_rational() * num_traits::pow(p.clone(), k as usize) * num_traits::pow(q, (n - k) as usize)
}
