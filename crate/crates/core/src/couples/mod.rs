//! Joint laws of discrete pairs `(X, Y)`.
//!
//! A [`JointLaw`] always stores the full grid of `X` values by `Y` values,
//! with explicit zeros for impossible cells. Rows are indexed by `X`,
//! columns by `Y`.

mod convolve;
mod csv_table;

use num_traits::{One, Zero};
use ordered_float::OrderedFloat;

pub use convolve::{convolve, convolve_finite, convolve_sequences, generating_function, Convolution, Summand};
pub use csv_table::ParsedJoint;

use crate::error::{Error, Result};
use crate::exact::{self, from_f64, to_f64, Prob};
use crate::moments::FiniteRv;

#[derive(Clone, Debug, PartialEq)]
pub struct JointLaw {
    x_values: Vec<f64>,
    y_values: Vec<f64>,
    matrix: Vec<Vec<Prob>>,
}

/// Law of `X` given `Y = y_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionalLaw {
    pub given_y_index: usize,
    pub probs: Vec<Prob>,
}

fn strictly_increasing(v: &[f64], axis: &str) -> Result<()> {
    if v.is_empty() {
        return Err(Error::InvalidParameter(format!("{axis} has no values")));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter(format!("{axis} values must be finite")));
    }
    if v.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(format!(
            "{axis} values must be strictly increasing"
        )));
    }
    Ok(())
}

fn sorted(rv: &FiniteRv) -> (Vec<f64>, Vec<Prob>) {
    let mut pairs: Vec<(f64, Prob)> = rv.iter().map(|(x, p)| (x, p.clone())).collect();
    pairs.sort_by_key(|(x, _)| OrderedFloat(*x));
    pairs.into_iter().unzip()
}

impl JointLaw {
    pub fn new(x_values: Vec<f64>, y_values: Vec<f64>, matrix: Vec<Vec<Prob>>) -> Result<Self> {
        strictly_increasing(&x_values, "X")?;
        strictly_increasing(&y_values, "Y")?;
        if matrix.len() != x_values.len() || matrix.iter().any(|row| row.len() != y_values.len()) {
            return Err(Error::DimensionMismatch(format!(
                "table must be {} x {}",
                x_values.len(),
                y_values.len()
            )));
        }
        let flat: Vec<Prob> = matrix.iter().flatten().cloned().collect();
        exact::check_distribution(&flat)?;
        Ok(JointLaw {
            x_values,
            y_values,
            matrix,
        })
    }

    /// Joint law of independent `X` and `Y`.
    pub fn product(x: &FiniteRv, y: &FiniteRv) -> Result<Self> {
        let (xv, xp) = sorted(x);
        let (yv, yp) = sorted(y);
        let matrix = xp.iter().map(|a| yp.iter().map(|b| a * b).collect()).collect();
        JointLaw::new(xv, yv, matrix)
    }

    /// Joint law of `(X, X)`.
    pub fn diagonal(x: &FiniteRv) -> Result<Self> {
        let (xv, xp) = sorted(x);
        let n = xv.len();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { xp[i].clone() } else { Prob::zero() })
                    .collect()
            })
            .collect();
        JointLaw::new(xv.clone(), xv, matrix)
    }

    pub fn x_values(&self) -> &[f64] {
        &self.x_values
    }

    pub fn y_values(&self) -> &[f64] {
        &self.y_values
    }

    pub fn matrix(&self) -> &[Vec<Prob>] {
        &self.matrix
    }

    pub fn get(&self, i: usize, j: usize) -> &Prob {
        &self.matrix[i][j]
    }

    pub fn y_index(&self, y: f64) -> Option<usize> {
        self.y_values.iter().position(|&v| v == y)
    }

    /// `(x_i, y_j, p_ij)` for every cell.
    pub fn cells(&self) -> impl Iterator<Item = (f64, f64, &Prob)> {
        self.matrix.iter().enumerate().flat_map(move |(i, row)| {
            row.iter()
                .enumerate()
                .map(move |(j, p)| (self.x_values[i], self.y_values[j], p))
        })
    }

    /// Exact `E[f(X, Y)]`.
    pub fn expectation_exact(&self, f: impl Fn(f64, f64) -> f64) -> Result<Prob> {
        let mut acc = Prob::zero();
        for (x, y, p) in self.cells() {
            if !p.is_zero() {
                acc += from_f64(f(x, y))? * p;
            }
        }
        Ok(acc)
    }

    fn row_sums(&self) -> Vec<Prob> {
        self.matrix.iter().map(exact::sum).collect()
    }

    fn column_sums(&self) -> Vec<Prob> {
        (0..self.y_values.len())
            .map(|j| exact::sum(self.matrix.iter().map(|row| &row[j])))
            .collect()
    }

    pub fn marginal_x(&self) -> FiniteRv {
        FiniteRv::new(self.x_values.clone(), self.row_sums()).expect("rows of a valid table")
    }

    pub fn marginal_y(&self) -> FiniteRv {
        FiniteRv::new(self.y_values.clone(), self.column_sums()).expect("columns of a valid table")
    }

    /// `p_i^(j) = p_ij / p_.j`.
    pub fn conditional_law(&self, given_y_index: usize) -> Result<ConditionalLaw> {
        let column = self.column(given_y_index)?;
        let total = exact::sum(&column);
        if total.is_zero() {
            return Err(Error::ZeroMarginal(given_y_index));
        }
        Ok(ConditionalLaw {
            given_y_index,
            probs: column.into_iter().map(|p| p / &total).collect(),
        })
    }

    fn column(&self, j: usize) -> Result<Vec<Prob>> {
        if j >= self.y_values.len() {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.y_values.len(),
            });
        }
        Ok(self.matrix.iter().map(|row| row[j].clone()).collect())
    }

    pub fn conditional_expectation_exact(&self, h: impl Fn(f64) -> f64, given_y_index: usize) -> Result<Prob> {
        let law = self.conditional_law(given_y_index)?;
        let mut acc = Prob::zero();
        for (x, p) in self.x_values.iter().zip(&law.probs) {
            if !p.is_zero() {
                acc += from_f64(h(*x))? * p;
            }
        }
        Ok(acc)
    }

    /// `E(h(X) | Y = y_j)`.
    pub fn conditional_expectation(&self, h: impl Fn(f64) -> f64, given_y_index: usize) -> Result<f64> {
        self.conditional_expectation_exact(h, given_y_index).map(|q| to_f64(&q))
    }

    /// `sum_j P(Y = y_j) E(h(X) | Y = y_j)`, skipping null columns.
    pub fn tower_expectation_exact(&self, h: impl Fn(f64) -> f64) -> Result<Prob> {
        let mut acc = Prob::zero();
        for (j, py) in self.column_sums().iter().enumerate() {
            if py.is_zero() {
                continue;
            }
            acc += py * self.conditional_expectation_exact(&h, j)?;
        }
        Ok(acc)
    }

    pub fn tower_expectation(&self, h: impl Fn(f64) -> f64) -> Result<f64> {
        self.tower_expectation_exact(h).map(|q| to_f64(&q))
    }

    /// Exact check of `p_ij = p_i. p_.j` on every cell.
    pub fn is_independent(&self) -> bool {
        let rows = self.row_sums();
        let cols = self.column_sums();
        self.matrix
            .iter()
            .zip(&rows)
            .all(|(row, pi)| row.iter().zip(&cols).all(|(pij, pj)| *pij == pi * pj))
    }

    /// `E[exp(s X + t Y)]`.
    pub fn joint_mgf(&self, s: f64, t: f64) -> Result<f64> {
        let v: f64 = self
            .cells()
            .filter(|(_, _, p)| !p.is_zero())
            .map(|(x, y, p)| to_f64(p) * (s * x + t * y).exp())
            .sum();
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Overflow)
        }
    }

    /// Law of `X + Y`.
    pub fn sum_law(&self) -> Result<FiniteRv> {
        let mut acc: std::collections::BTreeMap<OrderedFloat<f64>, Prob> = Default::default();
        for (x, y, p) in self.cells() {
            *acc.entry(OrderedFloat(x + y)).or_insert_with(Prob::zero) += p;
        }
        let (values, probs) = acc.into_iter().map(|(k, p)| (k.0, p)).unzip();
        FiniteRv::new(values, probs)
    }

    /// Whether `Phi_{X,Y}(s, s) = Phi_X(s) Phi_Y(s)` at each `s` within `tol`.
    pub fn diagonal_mgf_factorizes(&self, points: &[f64], tol: f64) -> Result<bool> {
        let mx = self.marginal_x();
        let my = self.marginal_y();
        for &s in points {
            let joint = self.joint_mgf(s, s)?;
            let product = mx.mgf(s)? * my.mgf(s)?;
            if (joint - product).abs() > tol {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl ConditionalLaw {
    pub fn total(&self) -> Prob {
        exact::sum(&self.probs)
    }

    pub fn is_normalized(&self) -> bool {
        self.total().is_one()
    }
}
