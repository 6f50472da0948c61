//! Numeric checks of the binomial limit theorems: binomial to Poisson,
//! and the local and integral de Moivre-Laplace theorems for
//! `Z_n = (X_n - np) / sqrt(npq)`.

use std::f64::consts::{PI, SQRT_2};

use libm::erf;

use crate::combinatorics::log_factorial;
use crate::distributions::{ln_choose, normal_pdf, Law};
use crate::error::{Error, Result};

/// One point of a comparison: the lattice point (or `k`), the finite-`n`
/// value, its limit, and the error that enters the metric.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitDetail {
    pub point: f64,
    pub observed: f64,
    pub limit: f64,
    pub error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitReport {
    pub n: u64,
    pub metric: f64,
    pub detail: Vec<LimitDetail>,
}

impl LimitReport {
    fn from_detail(n: u64, detail: Vec<LimitDetail>) -> Self {
        let metric = detail.iter().map(|d| d.error).fold(0.0, f64::max);
        LimitReport { n, metric, detail }
    }
}

/// Covers all Poisson mass above about `1e-14`.
pub fn default_k_max(lambda: f64) -> u64 {
    (lambda + 12.0 * lambda.sqrt() + 20.0).ceil() as u64
}

fn check_probability(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("p must lie in (0, 1), got {p}")))
    }
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::Domain("n must be positive".into()))
    } else {
        Ok(())
    }
}

/// `ln P(X_n = j)` with the logs of `p` and `q` supplied, so that
/// `p = 1/2` gives bit-for-bit mirror symmetry.
fn binomial_ln_mass(n: u64, j: u64, ln_p: f64, ln_q: f64) -> f64 {
    // grouped so that swapping j and n - j swaps two commuting addends
    ln_choose(n, j) + (j as f64 * ln_p + (n - j) as f64 * ln_q)
}

/// Integers `j` in `0..=n` with `(j - np)/sigma` in `[a, b]`, paired with
/// that standardized value.
fn window(n: u64, p: f64, a: f64, b: f64) -> Vec<(u64, f64)> {
    let np = n as f64 * p;
    let sigma = (np * (1.0 - p)).sqrt();
    let lo = (np + a * sigma).floor() - 1.0;
    let hi = (np + b * sigma).ceil() + 1.0;
    let lo = lo.max(0.0) as u64;
    let hi = hi.min(n as f64) as u64;
    (lo..=hi)
        .map(|j| (j, (j as f64 - np) / sigma))
        .filter(|&(_, x)| a <= x && x <= b)
        .collect()
}

/// Sup distance between Binomial(n, lambda/n) and Poisson(lambda) masses
/// over `0..=k_max`.
pub fn binomial_poisson_distance(n: u64, lambda: f64, k_max: u64) -> Result<LimitReport> {
    check_n(n)?;
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::Domain(format!("lambda must be positive, got {lambda}")));
    }
    let p = lambda / n as f64;
    if p >= 1.0 {
        return Err(Error::Domain(format!("lambda/n = {p} must be below 1")));
    }
    let binomial = Law::binomial(n, p)?;
    let poisson = Law::poisson(lambda)?;
    let detail = (0..=k_max)
        .map(|k| {
            let observed = binomial.mass(k as f64)?;
            let limit = poisson.mass(k as f64)?;
            Ok(LimitDetail {
                point: k as f64,
                observed,
                limit,
                error: (observed - limit).abs(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LimitReport::from_detail(n, detail))
}

/// Largest `|P(X_n = j) sqrt(2 pi npq) e^(x^2/2) - 1|` over lattice points
/// `x = (j - np)/sqrt(npq)` in `[a, b]`.
pub fn local_limit_ratio_error(n: u64, p: f64, a: f64, b: f64) -> Result<LimitReport> {
    check_n(n)?;
    check_probability(p)?;
    if !(a.is_finite() && b.is_finite() && a <= b) {
        return Err(Error::Domain(format!("need a finite window a <= b, got [{a}, {b}]")));
    }
    let q = 1.0 - p;
    let (ln_p, ln_q) = (p.ln(), q.ln());
    let scale = (2.0 * PI * n as f64 * p * q).sqrt();
    let points = window(n, p, a, b);
    if points.is_empty() {
        return Err(Error::EmptyWindow { a, b });
    }
    let detail = points
        .into_iter()
        .map(|(j, x)| {
            let observed = binomial_ln_mass(n, j, ln_p, ln_q).exp() * scale;
            let limit = (-0.5 * x * x).exp();
            LimitDetail {
                point: x,
                observed,
                limit,
                error: (observed / limit - 1.0).abs(),
            }
        })
        .collect();
    Ok(LimitReport::from_detail(n, detail))
}

/// `Phi(b) - Phi(a)` through the odd function `erf`, so mirrored windows
/// give identical values.
fn normal_interval(a: f64, b: f64) -> f64 {
    let odd_erf = |x: f64| {
        let v = erf(x.abs() / SQRT_2);
        if x < 0.0 {
            -v
        } else {
            v
        }
    };
    0.5 * (odd_erf(b) - odd_erf(a))
}

/// `|P(a <= Z_n <= b) - (Phi(b) - Phi(a))|`, closed window. The detail
/// pairs each lattice mass with its local normal approximation.
pub fn clt_interval_error(n: u64, p: f64, a: f64, b: f64) -> Result<LimitReport> {
    check_n(n)?;
    check_probability(p)?;
    if a.is_nan() || b.is_nan() || a >= b {
        return Err(Error::Domain(format!("need a < b, got a = {a}, b = {b}")));
    }
    let q = 1.0 - p;
    let (ln_p, ln_q) = (p.ln(), q.ln());
    let points = window(n, p, a, b);
    let mut masses: Vec<f64> = points
        .iter()
        .map(|&(j, _)| binomial_ln_mass(n, j, ln_p, ln_q).exp())
        .collect();
    let limit = normal_interval(a, b);
    let sigma = (n as f64 * p * q).sqrt();
    let detail: Vec<LimitDetail> = points
        .iter()
        .zip(&masses)
        .map(|(&(_, x), &m)| {
            let local = normal_pdf(x) / sigma;
            LimitDetail {
                point: x,
                observed: m,
                limit: local,
                error: (m - local).abs(),
            }
        })
        .collect();
    // summing in sorted order makes the total independent of traversal
    masses.sort_by(f64::total_cmp);
    let observed: f64 = masses.iter().sum();
    Ok(LimitReport {
        n,
        metric: (observed - limit).abs(),
        detail,
    })
}

/// Midpoint Riemann sum of the standard normal density over `[a, b]`,
/// oriented so that swapping the bounds flips the sign. `steps` of zero is
/// treated as one.
pub fn riemann_normal_integral(a: f64, b: f64, steps: u64) -> f64 {
    if a == b {
        return 0.0;
    }
    let steps = steps.max(1);
    let h = (b - a) / steps as f64;
    let c = 1.0 / (2.0 * PI).sqrt();
    let sum: f64 = (0..steps)
        .map(|i| {
            let t = a + (i as f64 + 0.5) * h;
            (-0.5 * t * t).exp()
        })
        .sum();
    c * h * sum
}

/// `ln P(X_n = j)` computed from [`log_factorial`] alone; used as an
/// independent check of the lattice masses above.
pub fn binomial_ln_mass_by_factorials(n: u64, j: u64, p: f64) -> f64 {
    log_factorial(n) - log_factorial(j) - log_factorial(n - j) + j as f64 * p.ln() + (n - j) as f64 * (1.0 - p).ln()
}
