//! Exact rational helpers shared by the finite-space, moment and joint-law
//! modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact probability.
pub type Prob = BigRational;

pub fn ratio(num: i64, den: i64) -> Prob {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Prob {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact binary value of a finite double.
pub fn from_f64(x: f64) -> Result<Prob> {
    BigRational::from_float(x).ok_or_else(|| Error::Domain(format!("{x} is not finite")))
}

pub fn to_f64(q: &Prob) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"num/den"`, an integer or a terminating decimal such as
/// `"0.125"` or `"2.5e-3"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Prob> {
    let s = text.trim();
    let bad = || Error::Format(format!("cannot read {s:?} as a rational number"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Format(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let joined = format!("{whole}{frac}");
    let numer: BigInt = if joined.is_empty() {
        BigInt::zero()
    } else {
        joined.parse().map_err(|_| bad())?
    };
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(numer);
    if scale >= 0 {
        value *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

pub fn format_rational(q: &Prob) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn sum<'a, I: IntoIterator<Item = &'a Prob>>(items: I) -> Prob {
    items.into_iter().fold(Prob::zero(), |acc, q| acc + q)
}

/// Checks non-negativity and exact unit sum.
pub fn check_distribution(probs: &[Prob]) -> Result<()> {
    if let Some(p) = probs.iter().find(|p| p.is_negative()) {
        return Err(Error::InvalidParameter(format!(
            "negative probability {}",
            format_rational(p)
        )));
    }
    let total = sum(probs);
    if !total.is_one() {
        return Err(Error::Normalization(format_rational(&total)));
    }
    Ok(())
}

pub(crate) mod serde_prob_vec {
    use super::{format_rational, parse_rational, Prob};
    use serde::{Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Text(String),
        Number(serde_json::Number),
    }

    pub fn serialize<S: Serializer>(v: &[Prob], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Prob>, D::Error> {
        let raw = Vec::<Raw>::deserialize(d)?;
        raw.into_iter()
            .map(|r| {
                let text = match r {
                    Raw::Text(t) => t,
                    Raw::Number(n) => n.to_string(),
                };
                parse_rational(&text).map_err(serde::de::Error::custom)
            })
            .collect()
    }
}
