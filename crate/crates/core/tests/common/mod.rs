#![allow(dead_code)]

use num_traits::Zero;
use probkit::couples::JointLaw;
use probkit::exact::{ratio, Prob};
use probkit::moments::FiniteRv;
use proptest::prelude::*;

/// Joint law with the given mass at each `(x, y)` point; repeated points
/// accumulate.
pub fn joint_from_points(points: &[(f64, f64, Prob)]) -> JointLaw {
    let mut xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let mut ys: Vec<f64> = points.iter().map(|p| p.1).collect();
    for v in [&mut xs, &mut ys] {
        v.sort_by(|a, b| a.total_cmp(b));
        v.dedup();
    }
    let mut matrix = vec![vec![Prob::zero(); ys.len()]; xs.len()];
    for (x, y, w) in points {
        let i = xs.iter().position(|v| v == x).unwrap();
        let j = ys.iter().position(|v| v == y).unwrap();
        matrix[i][j] += w;
    }
    JointLaw::new(xs, ys, matrix).unwrap()
}

fn normalized(weights: &[u32]) -> Vec<Prob> {
    let total: u32 = weights.iter().sum();
    weights.iter().map(|&w| ratio(w as i64, total as i64)).collect()
}

/// Up to 4 x 4 tables with integer values in -5..=5 and rational masses.
pub fn joint_law() -> impl Strategy<Value = JointLaw> {
    (
        prop::collection::btree_set(-5i32..=5, 1..=4),
        prop::collection::btree_set(-5i32..=5, 1..=4),
    )
        .prop_flat_map(|(xs, ys)| {
            let cells = xs.len() * ys.len();
            let weights = prop::collection::vec(0u32..6, cells).prop_filter("some mass", |w| w.iter().any(|&x| x > 0));
            (Just(xs), Just(ys), weights)
        })
        .prop_map(|(xs, ys, w)| {
            let probs = normalized(&w);
            let matrix = probs.chunks(ys.len()).map(|r| r.to_vec()).collect();
            JointLaw::new(
                xs.iter().map(|&x| x as f64).collect(),
                ys.iter().map(|&y| y as f64).collect(),
                matrix,
            )
            .unwrap()
        })
}

/// Finite random variable with up to six integer values in `values`.
pub fn finite_rv(values: std::ops::RangeInclusive<i32>) -> impl Strategy<Value = FiniteRv> {
    prop::collection::btree_map(values, 0u32..6, 1..=6)
        .prop_filter("some mass", |m| m.values().any(|&w| w > 0))
        .prop_map(|m| {
            let (vs, ws): (Vec<i32>, Vec<u32>) = m.into_iter().unzip();
            FiniteRv::new(vs.into_iter().map(f64::from).collect(), normalized(&ws)).unwrap()
        })
}

/// Polynomial with small integer coefficients, lowest degree first.
pub fn poly3() -> impl Strategy<Value = [i32; 4]> {
    prop::array::uniform4(-3i32..=3)
}

pub fn eval(c: &[i32; 4], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &k| acc * x + k as f64)
}
