//! Expectation calculus on finite random variables and the classical
//! inequalities.
//!
//! Values are doubles, probabilities are exact rationals. Sums are carried
//! out on the exact binary value of each double and only the final result
//! is rounded, so identities such as linearity hold with equality on
//! integer-valued inputs.

use std::collections::BTreeMap;

use num_traits::Zero;
use ordered_float::OrderedFloat;
use serde::{Deserialize, Serialize};

use crate::couples::JointLaw;
use crate::distributions::Law;
use crate::error::{Error, Result};
use crate::exact::{self, from_f64, to_f64, Prob};

/// A real random variable with finitely many values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRv", into = "RawRv")]
pub struct FiniteRv {
    values: Vec<f64>,
    probs: Vec<Prob>,
}

#[derive(Serialize, Deserialize)]
struct RawRv {
    values: Vec<f64>,
    #[serde(with = "exact::serde_prob_vec")]
    probs: Vec<Prob>,
}

impl TryFrom<RawRv> for FiniteRv {
    type Error = Error;
    fn try_from(raw: RawRv) -> Result<Self> {
        FiniteRv::new(raw.values, raw.probs)
    }
}

impl From<FiniteRv> for RawRv {
    fn from(rv: FiniteRv) -> Self {
        RawRv {
            values: rv.values,
            probs: rv.probs,
        }
    }
}

/// A pair of random variables described by their joint law.
pub type PairedRv = JointLaw;

impl FiniteRv {
    pub fn new(values: Vec<f64>, probs: Vec<Prob>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::ZeroCount);
        }
        if values.len() != probs.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} values but {} probabilities",
                values.len(),
                probs.len()
            )));
        }
        if let Some(x) = values.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter(format!("value {x} is not finite")));
        }
        let mut seen: Vec<OrderedFloat<f64>> = values.iter().map(|&x| OrderedFloat(x)).collect();
        seen.sort();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter("values must be pairwise distinct".into()));
        }
        exact::check_distribution(&probs)?;
        Ok(FiniteRv { values, probs })
    }

    /// Point mass at `c`.
    pub fn constant(c: f64) -> Result<Self> {
        FiniteRv::new(vec![c], vec![exact::int(1)])
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("rv serializes")
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn probs(&self) -> &[Prob] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &Prob)> {
        self.values.iter().copied().zip(&self.probs)
    }

    /// Probability of the value `x`, zero when `x` is not a value.
    pub fn prob_of(&self, x: f64) -> Prob {
        self.iter()
            .find(|(v, _)| *v == x)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(Prob::zero)
    }

    /// Exact `E[g(X)]`.
    pub fn expectation_exact(&self, g: impl Fn(f64) -> f64) -> Result<Prob> {
        let mut acc = Prob::zero();
        for (x, p) in self.iter() {
            if p.is_zero() {
                continue;
            }
            acc += from_f64(g(x))? * p;
        }
        Ok(acc)
    }

    /// Law of `g(X)`: equal images are merged.
    pub fn pushforward(&self, g: impl Fn(f64) -> f64) -> Result<FiniteRv> {
        let mut merged: BTreeMap<OrderedFloat<f64>, Prob> = BTreeMap::new();
        for (x, p) in self.iter() {
            let y = g(x);
            if !y.is_finite() {
                return Err(Error::Domain(format!("g({x}) = {y} is not finite")));
            }
            *merged.entry(OrderedFloat(y)).or_insert_with(Prob::zero) += p;
        }
        let (values, probs) = merged.into_iter().map(|(k, p)| (k.0, p)).unzip();
        FiniteRv::new(values, probs)
    }

    /// `E[exp(s X)]`.
    pub fn mgf(&self, s: f64) -> Result<f64> {
        let v: f64 = self.iter().map(|(x, p)| to_f64(p) * (s * x).exp()).sum();
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Overflow)
        }
    }

    pub fn summary(&self) -> MomentSummary {
        let variance = variance_of(self);
        MomentSummary {
            mean: expectation(self),
            variance,
            std_dev: variance.sqrt(),
            factorial_moment2: Some(to_f64(
                &self
                    .expectation_exact(|x| x * (x - 1.0))
                    .expect("finite values give finite factorial moments"),
            )),
        }
    }
}

/// Mean, variance, standard deviation and second factorial moment.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MomentSummary {
    pub mean: f64,
    pub variance: f64,
    pub std_dev: f64,
    /// `E[X(X-1)]`; `None` for continuous laws.
    pub factorial_moment2: Option<f64>,
}

impl MomentSummary {
    pub fn of_law(law: &Law) -> MomentSummary {
        MomentSummary {
            mean: law.mean(),
            variance: law.variance(),
            std_dev: law.std_dev(),
            factorial_moment2: law.factorial_moment2().ok(),
        }
    }
}

pub fn expectation(rv: &FiniteRv) -> f64 {
    to_f64(&rv.expectation_exact(|x| x).expect("values are finite"))
}

pub fn expectation_of_function(rv: &FiniteRv, g: impl Fn(f64) -> f64) -> Result<f64> {
    Ok(to_f64(&rv.expectation_exact(g)?))
}

/// Exact `E[X^2] - E[X]^2`.
pub fn variance_exact(rv: &FiniteRv) -> Prob {
    let m = rv.expectation_exact(|x| x).expect("values are finite");
    let m2 = rv.expectation_exact(|x| x * x).expect("squares of finite values");
    m2 - &m * &m
}

pub fn variance_of(rv: &FiniteRv) -> f64 {
    to_f64(&variance_exact(rv))
}

/// Exact `E[XY] - E[X] E[Y]`.
pub fn covariance_exact(pair: &PairedRv) -> Prob {
    let exy = pair.expectation_exact(|x, y| x * y).expect("finite products");
    let ex = pair.expectation_exact(|x, _| x).expect("finite values");
    let ey = pair.expectation_exact(|_, y| y).expect("finite values");
    exy - ex * ey
}

pub fn covariance(pair: &PairedRv) -> f64 {
    to_f64(&covariance_exact(pair))
}

pub fn correlation(pair: &PairedRv) -> Result<f64> {
    let vx = variance_of(&pair.marginal_x());
    let vy = variance_of(&pair.marginal_y());
    if vx <= 0.0 || vy <= 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok((covariance(pair) / (vx.sqrt() * vy.sqrt())).clamp(-1.0, 1.0))
}

/// `sum a_i^2 Var(X_i) + 2 sum_{i<j} a_i a_j Cov(X_i, X_j)` from a
/// covariance matrix.
#[allow(clippy::needless_range_loop)]
pub fn variance_of_linear_combination(covs: &[Vec<f64>], coeffs: &[f64]) -> Result<f64> {
    let n = coeffs.len();
    if covs.len() != n || covs.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "{n} coefficients need a {n}x{n} covariance matrix"
        )));
    }
    for i in 0..n {
        for j in 0..i {
            let (a, b) = (covs[i][j], covs[j][i]);
            if (a - b).abs() > 1e-12 * a.abs().max(b.abs()).max(1.0) {
                return Err(Error::InvalidParameter(format!(
                    "covariance matrix is not symmetric at ({i}, {j})"
                )));
            }
        }
    }
    let mut total = 0.0;
    for i in 0..n {
        total += coeffs[i] * coeffs[i] * covs[i][i];
        for j in 0..i {
            total += 2.0 * coeffs[i] * coeffs[j] * covs[i][j];
        }
    }
    Ok(total)
}

/// Markov bound `P(Y > lambda E(Y)) <= 1 / lambda`, clipped to 1.
pub fn markov_bound(mean_of_nonneg: f64, lambda: f64) -> Result<f64> {
    if !(mean_of_nonneg > 0.0) || !(lambda > 0.0) {
        return Err(Error::Domain(format!(
            "Markov bound needs a positive mean and lambda, got {mean_of_nonneg} and {lambda}"
        )));
    }
    Ok((1.0 / lambda).min(1.0))
}

/// Interval `mean -/+ sigma / sqrt(alpha)` holding at least `1 - alpha` of
/// the mass.
pub fn tchebychev_interval(mean: f64, sigma: f64, alpha: f64) -> Result<(f64, f64)> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if !(sigma >= 0.0) {
        return Err(Error::Domain(format!("sigma must be nonnegative, got {sigma}")));
    }
    let half = sigma / alpha.sqrt();
    Ok((mean - half, mean + half))
}

/// Relative variation coefficient `|sigma / mean|`.
pub fn rvc(mean: f64, sigma: f64) -> Result<f64> {
    if mean == 0.0 {
        return Err(Error::ZeroMean);
    }
    if !(sigma >= 0.0) {
        return Err(Error::Domain(format!("sigma must be nonnegative, got {sigma}")));
    }
    Ok((sigma / mean).abs())
}

/// Right side minus left side of each inequality; all are nonnegative up
/// to rounding.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InequalityGaps {
    /// `sigma_X sigma_Y - |Cov(X, Y)|`
    pub cauchy_schwarz: f64,
    /// `||X||_p ||Y||_q - E|XY|`
    pub holder: f64,
    /// `||X||_p + ||Y||_p - ||X + Y||_p`
    pub minkowski: f64,
    /// `E g(X) - g(E X)`
    pub jensen: f64,
}

fn norm(pair: &PairedRv, p: f64, f: impl Fn(f64, f64) -> f64) -> f64 {
    let m: f64 = pair.cells().map(|(x, y, w)| to_f64(w) * f(x, y).abs().powf(p)).sum();
    m.powf(1.0 / p)
}

pub fn inequality_gaps(pair: &PairedRv, p: f64, q: f64, g: impl Fn(f64) -> f64) -> Result<InequalityGaps> {
    if !(p > 1.0 && q > 1.0) || (1.0 / p + 1.0 / q - 1.0).abs() > 1e-12 {
        return Err(Error::ExponentMismatch { p, q });
    }
    let sx = variance_of(&pair.marginal_x()).sqrt();
    let sy = variance_of(&pair.marginal_y()).sqrt();
    let cov = covariance(pair).abs();

    let exy: f64 = pair.cells().map(|(x, y, w)| to_f64(w) * (x * y).abs()).sum();
    let holder = norm(pair, p, |x, _| x) * norm(pair, q, |_, y| y) - exy;
    let minkowski = norm(pair, p, |x, _| x) + norm(pair, p, |_, y| y) - norm(pair, p, |x, y| x + y);

    let mx = pair.marginal_x();
    let jensen = expectation_of_function(&mx, &g)? - g(expectation(&mx));

    Ok(InequalityGaps {
        cauchy_schwarz: sx * sy - cov,
        holder,
        minkowski,
        jensen,
    })
}

/// True when all mass sits at nonnegative values.
pub fn is_nonnegative(rv: &FiniteRv) -> bool {
    rv.iter().all(|(x, p)| x >= 0.0 || p.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};

    fn ages() -> FiniteRv {
        FiniteRv::new(
            vec![19.0, 20.0, 23.0, 17.0],
            vec![ratio(5, 24), ratio(7, 24), ratio(10, 24), ratio(2, 24)],
        )
        .unwrap()
    }

    fn table() -> JointLaw {
        JointLaw::new(
            vec![1.0, 2.0],
            vec![2.0, 3.0, 4.0],
            vec![
                vec![ratio(2, 10), ratio(3, 10), int(0)],
                vec![int(0), ratio(1, 10), ratio(4, 10)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn rv_validation() {
        assert!(FiniteRv::new(vec![1.0, 1.0], vec![ratio(1, 2), ratio(1, 2)]).is_err());
        assert!(FiniteRv::new(vec![1.0], vec![ratio(1, 2)]).is_err());
        assert!(FiniteRv::new(vec![f64::NAN], vec![int(1)]).is_err());
        assert!(FiniteRv::new(vec![], vec![]).is_err());
        let rv = FiniteRv::from_json(r#"{"values":[0,1],"probs":["1/4","0.75"]}"#).unwrap();
        assert_eq!(FiniteRv::from_json(&rv.to_json()).unwrap(), rv);
    }

    #[test]
    fn expectation_examples() {
        let rv = ages();
        assert_eq!(rv.expectation_exact(|x| x).unwrap(), ratio(499, 24));
        assert!((expectation(&rv) - 20.79).abs() < 5e-3);
        assert_eq!(expectation(&FiniteRv::constant(3.5).unwrap()), 3.5);
        let sym = FiniteRv::new(vec![-2.0, 2.0], vec![ratio(1, 2), ratio(1, 2)]).unwrap();
        assert_eq!(expectation(&sym), 0.0);
    }

    #[test]
    fn expectation_of_function_examples() {
        let rv = ages();
        assert_eq!(expectation_of_function(&rv, |x| x).unwrap(), expectation(&rv));
        let p = ratio(3, 10);
        let bern = FiniteRv::new(vec![0.0, 1.0], vec![int(1) - &p, p.clone()]).unwrap();
        assert_eq!(bern.expectation_exact(|x| x * x).unwrap(), p);
        // pushforward gives the same expectation
        let g = |x: f64| (x - 20.0).abs();
        let pushed = rv.pushforward(g).unwrap();
        assert_eq!(
            pushed.expectation_exact(|y| y).unwrap(),
            rv.expectation_exact(g).unwrap()
        );
        assert_eq!(pushed.len(), 3);
    }

    #[test]
    fn variance_examples() {
        assert_eq!(variance_of(&FiniteRv::constant(4.0).unwrap()), 0.0);
        let rv = ages();
        let m = rv.expectation_exact(|x| x).unwrap();
        let centered = rv.expectation_exact(|x| x - to_f64(&m)).unwrap();
        assert!(to_f64(&centered).abs() < 1e-14);
        let direct: f64 = rv.iter().map(|(x, p)| to_f64(p) * (x - to_f64(&m)).powi(2)).sum();
        assert!((variance_of(&rv) - direct).abs() < 1e-12);
    }

    #[test]
    fn covariance_examples() {
        let x = FiniteRv::new(vec![0.0, 1.0, 3.0], vec![ratio(1, 2), ratio(1, 3), ratio(1, 6)]).unwrap();
        let y = FiniteRv::new(vec![-1.0, 2.0], vec![ratio(1, 4), ratio(3, 4)]).unwrap();
        let prod = JointLaw::product(&x, &y).unwrap();
        assert_eq!(covariance(&prod), 0.0);
        let diag = JointLaw::diagonal(&x).unwrap();
        assert_eq!(covariance(&diag), variance_of(&x));
        assert!((correlation(&diag).unwrap() - 1.0).abs() < 1e-15);
        let degenerate = JointLaw::product(&x, &FiniteRv::constant(1.0).unwrap()).unwrap();
        assert_eq!(correlation(&degenerate), Err(Error::ZeroVariance));
        assert!(correlation(&table()).unwrap().abs() <= 1.0);
    }

    #[test]
    fn linear_combination_examples() {
        let covs = vec![vec![2.0]];
        assert_eq!(variance_of_linear_combination(&covs, &[1.0]).unwrap(), 2.0);
        let covs = vec![vec![2.0, 0.0], vec![0.0, 3.0]];
        assert_eq!(variance_of_linear_combination(&covs, &[1.0, 1.0]).unwrap(), 5.0);
        assert_eq!(variance_of_linear_combination(&covs, &[0.0, 0.0]).unwrap(), 0.0);
        let covs3 = vec![vec![1.0, 0.5], vec![0.5, 1.0]];
        assert_eq!(variance_of_linear_combination(&covs3, &[1.0, -1.0]).unwrap(), 1.0);
        assert!(variance_of_linear_combination(&covs, &[1.0]).is_err());
        let asym = vec![vec![1.0, 0.5], vec![0.2, 1.0]];
        assert!(variance_of_linear_combination(&asym, &[1.0, 1.0]).is_err());
    }

    #[test]
    fn markov_examples() {
        assert_eq!(markov_bound(3.0, 2.0).unwrap(), 0.5);
        assert_eq!(markov_bound(3.0, 0.5).unwrap(), 1.0);
        assert_eq!(markov_bound(3.0, 1.0).unwrap(), 1.0);
        assert_eq!(markov_bound(3.0, 10.0).unwrap(), 0.1);
        assert!(markov_bound(0.0, 2.0).is_err());
        assert!(markov_bound(1.0, -2.0).is_err());
    }

    #[test]
    fn tchebychev_examples() {
        let (lo, hi) = tchebychev_interval(10.0, 2.0, 0.05).unwrap();
        assert!(((hi - 10.0) / 2.0 - 4.472).abs() < 1e-3);
        assert!((10.0 - lo - (hi - 10.0)).abs() < 1e-12);
        assert_eq!(tchebychev_interval(1.0, 0.0, 0.3).unwrap(), (1.0, 1.0));
        let (_, hi) = tchebychev_interval(0.0, 1.0, 1.0 - 1e-9).unwrap();
        assert!((hi - 1.0).abs() < 1e-8);
        assert!(tchebychev_interval(0.0, 1.0, 0.0).is_err());
        assert!(tchebychev_interval(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn rvc_examples() {
        assert!((rvc(10.0, 2.0).unwrap() - 0.2).abs() < 1e-16);
        assert_eq!(rvc(-3.0, 0.0).unwrap(), 0.0);
        let b = Law::binomial(20, 0.25).unwrap();
        assert!((rvc(b.mean(), b.std_dev()).unwrap() - 0.3873).abs() < 1e-4);
        assert_eq!(rvc(0.0, 1.0), Err(Error::ZeroMean));
    }

    #[test]
    fn inequality_gap_examples() {
        let x = FiniteRv::new(vec![-1.0, 0.5, 2.0], vec![ratio(1, 5), ratio(1, 2), ratio(3, 10)]).unwrap();
        let diag = JointLaw::diagonal(&x).unwrap();
        let gaps = inequality_gaps(&diag, 3.0, 1.5, f64::exp).unwrap();
        assert!(gaps.cauchy_schwarz.abs() < 1e-12);
        let gaps = inequality_gaps(&table(), 2.0, 2.0, |t| 3.0 * t - 1.0).unwrap();
        assert!(gaps.jensen.abs() < 1e-12);
        assert!(gaps.cauchy_schwarz >= 0.0 && gaps.holder >= 0.0 && gaps.minkowski >= 0.0);
        assert!(matches!(
            inequality_gaps(&table(), 2.0, 3.0, f64::exp),
            Err(Error::ExponentMismatch { .. })
        ));
    }

    #[test]
    fn summary_of_rv() {
        let rv = ages();
        let s = rv.summary();
        assert!((s.mean - 499.0 / 24.0).abs() < 1e-12);
        assert!((s.std_dev * s.std_dev - s.variance).abs() < 1e-12);
        let fm2 = s.factorial_moment2.unwrap();
        assert!((s.variance - (fm2 + s.mean - s.mean * s.mean)).abs() < 1e-10);
    }
}
