use serde::{Deserialize, Serialize};

use super::Law;
use crate::error::{Error, Result};

/// Flat, R-style description of a law, e.g.
/// `{"law":"binom","size":20,"prob":0.25}`.
///
/// Parameter names per law: `degen` value; `dunif` n; `bern`, `geom`,
/// `nfail` prob; `binom`, `nbinom` size, prob; `hyper` m (marked),
/// n (unmarked), k (draws); `pois` lambda; `unif` min, max; `exp` rate;
/// `gamma` shape and rate (or scale); `norm` mean, sd.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LawParams {
    pub law: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prob: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rate: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sd: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max: Option<f64>,
}

/// Names accepted by [`LawParams::to_law`].
pub const LAW_NAMES: [&str; 13] = [
    "degen", "dunif", "bern", "binom", "geom", "nfail", "nbinom", "hyper", "pois", "unif", "exp", "gamma", "norm",
];

fn need(v: Option<f64>, flag: &str, law: &str) -> Result<f64> {
    v.ok_or_else(|| Error::InvalidParameter(format!("law {law} needs --{flag}")))
}

fn need_count(v: Option<f64>, flag: &str, law: &str) -> Result<u64> {
    let x = need(v, flag, law)?;
    if x >= 0.0 && x.fract() == 0.0 && x < 9.0e15 {
        Ok(x as u64)
    } else {
        Err(Error::InvalidParameter(format!(
            "--{flag} must be a nonnegative integer, got {x}"
        )))
    }
}

impl LawParams {
    pub fn new(law: &str) -> Self {
        LawParams {
            law: law.to_string(),
            ..Default::default()
        }
    }

    pub fn to_law(&self) -> Result<Law> {
        let name = self.law.as_str();
        match name {
            "degen" => Law::degenerate(need(self.value, "value", name)?),
            "dunif" => Law::discrete_uniform(need_count(self.n, "n", name)?),
            "bern" => Law::bernoulli(need(self.prob, "prob", name)?),
            "binom" => Law::binomial(need_count(self.size, "size", name)?, need(self.prob, "prob", name)?),
            "geom" => Law::geometric(need(self.prob, "prob", name)?),
            "nfail" => Law::num_failures(need(self.prob, "prob", name)?),
            "nbinom" => Law::negative_binomial(need_count(self.size, "size", name)?, need(self.prob, "prob", name)?),
            "hyper" => {
                let marked = need_count(self.m, "m", name)?;
                let unmarked = need_count(self.n, "n", name)?;
                let draws = need_count(self.k, "k", name)?;
                Law::hypergeometric(marked + unmarked, marked, draws)
            }
            "pois" => Law::poisson(need(self.lambda, "lambda", name)?),
            "unif" => Law::uniform(need(self.min, "min", name)?, need(self.max, "max", name)?),
            "exp" => Law::exponential(need(self.rate.or(self.lambda), "rate", name)?),
            "gamma" => {
                let shape = need(self.shape, "shape", name)?;
                let rate = match (self.rate, self.scale) {
                    (Some(_), Some(_)) => {
                        return Err(Error::InvalidParameter(
                            "give either --rate or --scale, not both".into(),
                        ))
                    }
                    (Some(r), None) => r,
                    (None, Some(s)) => 1.0 / s,
                    (None, None) => 1.0,
                };
                Law::gamma(shape, rate)
            }
            "norm" => {
                let sd = self.sd.unwrap_or(1.0);
                if !(sd > 0.0) {
                    return Err(Error::InvalidParameter(format!("--sd must be positive, got {sd}")));
                }
                Law::normal(self.mean.unwrap_or(0.0), sd * sd)
            }
            other => Err(Error::InvalidParameter(format!(
                "unknown law {other:?}; expected one of {}",
                LAW_NAMES.join(", ")
            ))),
        }
    }

    pub fn from_json(text: &str) -> Result<Law> {
        let params: LawParams = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        params.to_law()
    }
}

impl From<&Law> for LawParams {
    fn from(law: &Law) -> Self {
        let mut p = LawParams::new(law.name());
        match *law {
            Law::Degenerate { c } => p.value = Some(c),
            Law::DiscreteUniform { n } => p.n = Some(n as f64),
            Law::Bernoulli { p: prob } | Law::Geometric { p: prob } | Law::NumFailures { p: prob } => {
                p.prob = Some(prob)
            }
            Law::Binomial { n, p: prob } => {
                p.size = Some(n as f64);
                p.prob = Some(prob);
            }
            Law::NegativeBinomial { k, p: prob } => {
                p.size = Some(k as f64);
                p.prob = Some(prob);
            }
            Law::Hypergeometric { total, marked, draws } => {
                p.m = Some(marked as f64);
                p.n = Some((total - marked) as f64);
                p.k = Some(draws as f64);
            }
            Law::Poisson { lambda } => p.lambda = Some(lambda),
            Law::Uniform { a, b } => {
                p.min = Some(a);
                p.max = Some(b);
            }
            Law::Exponential { lambda } => p.rate = Some(lambda),
            Law::Gamma { shape, rate } => {
                p.shape = Some(shape);
                p.rate = Some(rate);
            }
            Law::Normal { mean, variance } => {
                p.mean = Some(mean);
                p.sd = Some(variance.sqrt());
            }
        }
        p
    }
}

impl Law {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&LawParams::from(self)).expect("law serializes")
    }

    pub fn from_json(text: &str) -> Result<Law> {
        LawParams::from_json(text)
    }
}
