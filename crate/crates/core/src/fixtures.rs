//! Worked examples shared by the command line, the examples and the tests.

use num_traits::One;

use crate::couples::JointLaw;
use crate::distributions::Law;
use crate::error::Result;
use crate::exact::{int, ratio, Prob};
use crate::finite_space::{bayes_posterior_with_null_causes, CausePartition, Event, FiniteProbabilitySpace};
use crate::moments::FiniteRv;

/// Umbrella problem: the umbrella is on each of seven floors with
/// probability `p/7` and outside with probability `1 - p`. The evidence
/// is "not on floors 1 to 6".
pub fn umbrella_partition(p: &Prob) -> Result<CausePartition> {
    let mut priors = vec![p / int(7); 7];
    priors.push(Prob::one() - p);
    let mut likelihoods = vec![int(0); 6];
    likelihoods.extend([int(1), int(1)]);
    CausePartition::new(priors, likelihoods)
}

/// `P(seventh floor | not on floors 1..6) = p / (7 - 6p)`.
pub fn umbrella_probability(p: &Prob) -> Result<Prob> {
    Ok(bayes_posterior_with_null_causes(&umbrella_partition(p)?)?[6].clone())
}

/// Disease test: infected with probability 3/10; positive with
/// probability 9/10 if infected and 2/10 if healthy.
pub fn disease_partition() -> CausePartition {
    CausePartition::new(vec![ratio(3, 10), ratio(7, 10)], vec![ratio(9, 10), ratio(2, 10)])
        .expect("fixture is a valid partition")
}

/// Number of right answers when guessing 20 questions with 4 choices each.
pub fn lazy_student_law() -> Law {
    Law::binomial(20, 0.25).expect("valid parameters")
}

/// Bernstein's space `{112, 121, 211, 222}` with `A_i` = "digit `i` is 1".
pub fn bernstein() -> (FiniteProbabilitySpace, Vec<Event>) {
    let space = FiniteProbabilitySpace::uniform(["112", "121", "211", "222"]).expect("nonempty");
    let events = (0..3).map(|i| space.event_where(|o| o.as_bytes()[i] == b'1')).collect();
    (space, events)
}

/// Two dice with `A` = "first at most 3", `B` = "second at least 4",
/// `C` = "sum is 9".
pub fn two_dice() -> (FiniteProbabilitySpace, Vec<Event>) {
    let space = FiniteProbabilitySpace::uniform((1..=6).flat_map(|a| (1..=6).map(move |b| format!("{a}{b}"))))
        .expect("nonempty");
    let d = |o: &str, i: usize| (o.as_bytes()[i] - b'0') as u32;
    let events = vec![
        space.event_where(|o| d(o, 0) <= 3),
        space.event_where(|o| d(o, 1) >= 4),
        space.event_where(|o| d(o, 0) + d(o, 1) == 9),
    ];
    (space, events)
}

/// Joint law on `{1,2,3}^2` with uniform marginals whose diagonal MGF
/// factorizes although `X` and `Y` are dependent.
pub fn stoyanov() -> JointLaw {
    let e = |k| ratio(k, 18);
    JointLaw::new(
        vec![1.0, 2.0, 3.0],
        vec![1.0, 2.0, 3.0],
        vec![vec![e(2), e(1), e(3)], vec![e(3), e(2), e(1)], vec![e(1), e(3), e(2)]],
    )
    .expect("fixture is normalized")
}

/// The 2 x 3 table with `X` in `{1, 2}` and `Y` in `{2, 3, 4}`.
pub fn two_by_three() -> JointLaw {
    JointLaw::new(
        vec![1.0, 2.0],
        vec![2.0, 3.0, 4.0],
        vec![
            vec![ratio(2, 10), ratio(3, 10), int(0)],
            vec![int(0), ratio(1, 10), ratio(4, 10)],
        ],
    )
    .expect("fixture is normalized")
}

/// Ages of 24 students: 5 aged 19, 7 aged 20, 10 aged 23, 2 aged 17.
pub fn ages() -> FiniteRv {
    FiniteRv::new(
        vec![17.0, 19.0, 20.0, 23.0],
        vec![ratio(2, 24), ratio(5, 24), ratio(7, 24), ratio(10, 24)],
    )
    .expect("fixture is normalized")
}
