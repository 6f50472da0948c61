use std::collections::BTreeMap;

use num_traits::Zero;

use crate::distributions::{Law, SupportDescriptor};
use crate::error::{Error, Result};
use crate::exact::{to_f64, Prob};
use crate::moments::FiniteRv;

/// One side of a convolution: an integer-valued law, a finite random
/// variable with integer values, or an earlier convolution.
#[derive(Clone, Debug, PartialEq)]
pub enum Summand {
    Law(Law),
    Rv(FiniteRv),
    Sum(Box<Convolution>),
}

impl From<Law> for Summand {
    fn from(law: Law) -> Self {
        Summand::Law(law)
    }
}

impl From<FiniteRv> for Summand {
    fn from(rv: FiniteRv) -> Self {
        Summand::Rv(rv)
    }
}

impl From<Convolution> for Summand {
    fn from(c: Convolution) -> Self {
        Summand::Sum(Box::new(c))
    }
}

fn integer_value(x: f64) -> Result<i64> {
    if x.fract() == 0.0 && x.abs() < 9.0e15 {
        Ok(x as i64)
    } else {
        Err(Error::NonIntegerSupport(x))
    }
}

impl Summand {
    fn check(&self) -> Result<()> {
        match self {
            Summand::Law(law) => {
                if !law.is_discrete() {
                    return Err(Error::ContinuousLaw);
                }
                if let Law::Degenerate { c } = law {
                    integer_value(*c)?;
                }
                Ok(())
            }
            Summand::Rv(rv) => rv.values().iter().try_for_each(|&x| integer_value(x).map(|_| ())),
            Summand::Sum(_) => Ok(()),
        }
    }

    /// Integer bounds of the support; `None` above means unbounded.
    fn bounds(&self) -> (i64, Option<i64>) {
        match self {
            Summand::Law(law) => match law.support() {
                SupportDescriptor::FiniteIntegerRange { lo, hi } => (lo, Some(hi)),
                SupportDescriptor::IntegerFrom { lo } => (lo, None),
                SupportDescriptor::Point(c) => (c as i64, Some(c as i64)),
                SupportDescriptor::RealInterval { .. } => unreachable!("checked discrete"),
            },
            Summand::Rv(rv) => {
                let v = rv.values();
                let lo = v.iter().copied().fold(f64::INFINITY, f64::min) as i64;
                let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max) as i64;
                (lo, Some(hi))
            }
            Summand::Sum(c) => c.bounds(),
        }
    }

    fn mass(&self, k: i64) -> f64 {
        match self {
            Summand::Law(law) => law.mass(k as f64).expect("checked discrete"),
            Summand::Rv(rv) => to_f64(&rv.prob_of(k as f64)),
            Summand::Sum(c) => c.mass(k),
        }
    }

    /// Masses at `lo..=k_max`, where `lo` is the lower support bound.
    fn table(&self, k_max: i64) -> Vec<f64> {
        let (lo, _) = self.bounds();
        match self {
            Summand::Sum(c) => c.mass_table(k_max),
            _ => (lo..=k_max).map(|k| self.mass(k)).collect(),
        }
    }

    fn mgf(&self, s: f64) -> Result<f64> {
        match self {
            Summand::Law(law) => law.mgf(s),
            Summand::Rv(rv) => rv.mgf(s),
            Summand::Sum(c) => c.mgf(s),
        }
    }

    fn to_finite_rv(&self) -> Result<FiniteRv> {
        match self {
            Summand::Law(law) => law.to_finite_rv(),
            Summand::Rv(rv) => Ok(rv.clone()),
            Summand::Sum(c) => c.to_finite_rv(),
        }
    }
}

/// Law of `A + B` for independent integer-valued `A` and `B`, with
/// masses computed on demand.
#[derive(Clone, Debug, PartialEq)]
pub struct Convolution {
    a: Summand,
    b: Summand,
}

pub fn convolve(a: impl Into<Summand>, b: impl Into<Summand>) -> Result<Convolution> {
    let (a, b) = (a.into(), b.into());
    a.check()?;
    b.check()?;
    Ok(Convolution { a, b })
}

impl Convolution {
    pub fn bounds(&self) -> (i64, Option<i64>) {
        let (la, ha) = self.a.bounds();
        let (lb, hb) = self.b.bounds();
        (la + lb, ha.zip(hb).map(|(x, y)| x + y))
    }

    /// `P(A + B = k) = sum_i P(A = i) P(B = k - i)`, with `i` restricted
    /// to indices where both factors can be nonzero.
    pub fn mass(&self, k: i64) -> f64 {
        let (la, ha) = self.a.bounds();
        let (lb, hb) = self.b.bounds();
        let lo = match hb {
            Some(hb) => la.max(k - hb),
            None => la,
        };
        let hi = match ha {
            Some(ha) => ha.min(k - lb),
            None => k - lb,
        };
        (lo..=hi).map(|i| self.a.mass(i) * self.b.mass(k - i)).sum()
    }

    /// Masses at `lo..=k_max` in one pass, reusing the tables of nested
    /// sums instead of re-expanding them for each `k`.
    pub fn mass_table(&self, k_max: i64) -> Vec<f64> {
        let (la, _) = self.a.bounds();
        let (lb, _) = self.b.bounds();
        if k_max < la + lb {
            return Vec::new();
        }
        let ta = self.a.table(k_max - lb);
        let tb = self.b.table(k_max - la);
        let mut c = convolve_sequences(&ta, &tb);
        c.truncate((k_max - la - lb + 1) as usize);
        c
    }

    /// `Phi_{A+B}(s) = Phi_A(s) Phi_B(s)`.
    pub fn mgf(&self, s: f64) -> Result<f64> {
        Ok(self.a.mgf(s)? * self.b.mgf(s)?)
    }

    /// Exact law of the sum when both sides have finite support.
    pub fn to_finite_rv(&self) -> Result<FiniteRv> {
        convolve_finite(&self.a.to_finite_rv()?, &self.b.to_finite_rv()?)
    }
}

/// Exact law of `X + Y` for independent integer-valued `X` and `Y`.
pub fn convolve_finite(a: &FiniteRv, b: &FiniteRv) -> Result<FiniteRv> {
    Summand::Rv(a.clone()).check()?;
    Summand::Rv(b.clone()).check()?;
    let mut acc: BTreeMap<i64, Prob> = BTreeMap::new();
    for (x, p) in a.iter() {
        for (y, q) in b.iter() {
            *acc.entry(x as i64 + y as i64).or_insert_with(Prob::zero) += p * q;
        }
    }
    let (values, probs) = acc.into_iter().map(|(k, p)| (k as f64, p)).unzip();
    FiniteRv::new(values, probs)
}

/// `c_n = sum_{k=0}^{n} a_k b_{n-k}`.
pub fn convolve_sequences(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

/// `a(s) = sum_n a_n s^n`, by Horner's rule.
pub fn generating_function(a: &[f64], s: f64) -> f64 {
    a.iter().rev().fold(0.0, |acc, x| acc * s + x)
}
