//! Finite probability spaces with exact rational weights.
//!
//! Events are index sets into the outcome list. Conditioning on a null
//! event yields probability zero instead of an error.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, format_rational, Prob};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpace", into = "RawSpace")]
pub struct FiniteProbabilitySpace {
    outcomes: Vec<String>,
    weights: Vec<Prob>,
}

#[derive(Serialize, Deserialize)]
struct RawSpace {
    outcomes: Vec<String>,
    #[serde(with = "exact::serde_prob_vec")]
    weights: Vec<Prob>,
}

impl TryFrom<RawSpace> for FiniteProbabilitySpace {
    type Error = Error;
    fn try_from(raw: RawSpace) -> Result<Self> {
        FiniteProbabilitySpace::new(raw.outcomes, raw.weights)
    }
}

impl From<FiniteProbabilitySpace> for RawSpace {
    fn from(space: FiniteProbabilitySpace) -> Self {
        RawSpace {
            outcomes: space.outcomes,
            weights: space.weights,
        }
    }
}

impl FiniteProbabilitySpace {
    pub fn new(outcomes: Vec<String>, weights: Vec<Prob>) -> Result<Self> {
        if outcomes.is_empty() {
            return Err(Error::ZeroCount);
        }
        if outcomes.len() != weights.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} outcomes but {} weights",
                outcomes.len(),
                weights.len()
            )));
        }
        let distinct: BTreeSet<&String> = outcomes.iter().collect();
        if distinct.len() != outcomes.len() {
            return Err(Error::InvalidParameter("outcome labels must be distinct".into()));
        }
        exact::check_distribution(&weights)?;
        Ok(FiniteProbabilitySpace { outcomes, weights })
    }

    /// Equiprobable space over the given labels.
    pub fn uniform<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let outcomes: Vec<String> = labels.into_iter().map(Into::into).collect();
        if outcomes.is_empty() {
            return Err(Error::ZeroCount);
        }
        let w = exact::ratio(1, outcomes.len() as i64);
        let weights = vec![w; outcomes.len()];
        FiniteProbabilitySpace::new(outcomes, weights)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("space serializes")
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn weights(&self) -> &[Prob] {
        &self.weights
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.outcomes.iter().position(|o| o == label)
    }

    /// Event of all outcomes whose label satisfies `pred`.
    pub fn event_where(&self, mut pred: impl FnMut(&str) -> bool) -> Event {
        Event(
            self.outcomes
                .iter()
                .enumerate()
                .filter(|(_, o)| pred(o))
                .map(|(i, _)| i)
                .collect(),
        )
    }

    pub fn sure_event(&self) -> Event {
        Event((0..self.len()).collect())
    }

    /// Product space whose outcomes are `"a,b"` pairs with product weights.
    pub fn product(&self, other: &FiniteProbabilitySpace) -> FiniteProbabilitySpace {
        let mut outcomes = Vec::with_capacity(self.len() * other.len());
        let mut weights = Vec::with_capacity(self.len() * other.len());
        for (a, wa) in self.outcomes.iter().zip(&self.weights) {
            for (b, wb) in other.outcomes.iter().zip(&other.weights) {
                outcomes.push(format!("{a},{b}"));
                weights.push(wa * wb);
            }
        }
        FiniteProbabilitySpace { outcomes, weights }
    }

    fn check(&self, event: &Event) -> Result<()> {
        match event.0.iter().next_back() {
            Some(&index) if index >= self.len() => Err(Error::IndexOutOfRange { index, len: self.len() }),
            _ => Ok(()),
        }
    }

    fn mass(&self, event: &Event) -> Prob {
        exact::sum(event.0.iter().map(|&i| &self.weights[i]))
    }
}

/// Set of outcome indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Event(BTreeSet<usize>);

impl Event {
    pub fn empty() -> Self {
        Event(BTreeSet::new())
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        Event(indices.into_iter().collect())
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.contains(&index)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn intersection(&self, other: &Event) -> Event {
        Event(self.0.intersection(&other.0).copied().collect())
    }

    pub fn union(&self, other: &Event) -> Event {
        Event(self.0.union(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &Event) -> Event {
        Event(self.0.difference(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &Event) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn complement(&self, space_len: usize) -> Event {
        Event((0..space_len).filter(|i| !self.0.contains(i)).collect())
    }
}

/// Equiprobable space `{0, ..., n-1}`.
pub fn uniform_space(outcome_count: usize) -> Result<FiniteProbabilitySpace> {
    if outcome_count == 0 {
        return Err(Error::ZeroCount);
    }
    FiniteProbabilitySpace::uniform((0..outcome_count).map(|i| i.to_string()))
}

pub fn prob(space: &FiniteProbabilitySpace, a: &Event) -> Result<Prob> {
    space.check(a)?;
    Ok(space.mass(a))
}

/// `P(B | A)`, zero when `P(A) = 0`.
pub fn conditional_prob(space: &FiniteProbabilitySpace, b: &Event, given_a: &Event) -> Result<Prob> {
    space.check(b)?;
    space.check(given_a)?;
    let pa = space.mass(given_a);
    if pa.is_zero() {
        return Ok(Prob::zero());
    }
    Ok(space.mass(&b.intersection(given_a)) / pa)
}

/// `P(A1) P(A2 | A1) ... P(An | A1 .. An-1)`.
pub fn chain_rule(space: &FiniteProbabilitySpace, events: &[Event]) -> Result<Prob> {
    let (first, rest) = events
        .split_first()
        .ok_or_else(|| Error::InvalidParameter("chain rule needs at least one event".into()))?;
    let mut acc = prob(space, first)?;
    let mut so_far = first.clone();
    for e in rest {
        acc *= conditional_prob(space, e, &so_far)?;
        so_far = so_far.intersection(e);
    }
    Ok(acc)
}

/// Priors `P(E_i)` of a partition of causes and likelihoods `P(B | E_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CausePartition {
    priors: Vec<Prob>,
    likelihoods: Vec<Prob>,
}

impl CausePartition {
    pub fn new(priors: Vec<Prob>, likelihoods: Vec<Prob>) -> Result<Self> {
        if priors.is_empty() {
            return Err(Error::InvalidParameter("no causes given".into()));
        }
        if priors.len() != likelihoods.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} priors but {} likelihoods",
                priors.len(),
                likelihoods.len()
            )));
        }
        if priors.iter().any(Signed::is_negative) {
            return Err(Error::InvalidParameter("priors must be nonnegative".into()));
        }
        let total = exact::sum(&priors);
        if !total.is_one() {
            return Err(Error::PriorSumNotOne(format_rational(&total)));
        }
        if let Some(l) = likelihoods.iter().find(|l| l.is_negative() || **l > BigRational::one()) {
            return Err(Error::InvalidParameter(format!(
                "likelihood {} is outside [0, 1]",
                format_rational(l)
            )));
        }
        Ok(CausePartition { priors, likelihoods })
    }

    pub fn priors(&self) -> &[Prob] {
        &self.priors
    }

    pub fn likelihoods(&self) -> &[Prob] {
        &self.likelihoods
    }
}

/// `sum_j P(B | E_j) P(E_j)`.
pub fn total_probability(partition: &CausePartition) -> Prob {
    partition
        .priors
        .iter()
        .zip(&partition.likelihoods)
        .fold(Prob::zero(), |acc, (p, l)| acc + p * l)
}

/// Posteriors `P(E_i | B)`.
pub fn bayes_posterior(partition: &CausePartition) -> Result<Vec<Prob>> {
    if let Some(i) = partition.priors.iter().position(|p| !p.is_positive()) {
        return Err(Error::NonpositivePrior(i));
    }
    let evidence = total_probability(partition);
    if evidence.is_zero() {
        return Err(Error::ZeroEvidence);
    }
    Ok(partition
        .priors
        .iter()
        .zip(&partition.likelihoods)
        .map(|(p, l)| p * l / &evidence)
        .collect())
}

/// Posteriors when some causes have prior zero: those causes keep
/// posterior zero and the rest follow [`bayes_posterior`].
pub fn bayes_posterior_with_null_causes(partition: &CausePartition) -> Result<Vec<Prob>> {
    let live: Vec<usize> = (0..partition.priors.len())
        .filter(|&i| partition.priors[i].is_positive())
        .collect();
    let reduced = CausePartition {
        priors: live.iter().map(|&i| partition.priors[i].clone()).collect(),
        likelihoods: live.iter().map(|&i| partition.likelihoods[i].clone()).collect(),
    };
    let post = bayes_posterior(&reduced)?;
    let mut full = vec![Prob::zero(); partition.priors.len()];
    for (i, p) in live.into_iter().zip(post) {
        full[i] = p;
    }
    Ok(full)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndependenceReport {
    /// Every pair factorizes.
    pub pairwise: bool,
    /// Every sub-collection of size at least two factorizes.
    pub mutual: bool,
    /// The full intersection factorizes.
    pub global: bool,
}

pub fn independence_report(space: &FiniteProbabilitySpace, events: &[Event]) -> Result<IndependenceReport> {
    if events.len() < 2 {
        return Err(Error::TooFewEvents);
    }
    if events.len() > 24 {
        return Err(Error::InvalidParameter(
            "mutual independence check is limited to 24 events".into(),
        ));
    }
    for e in events {
        space.check(e)?;
    }
    let marginals: Vec<Prob> = events.iter().map(|e| space.mass(e)).collect();
    let factorizes = |mask: u32| {
        let mut inter = space.sure_event();
        let mut product = Prob::one();
        for (i, e) in events.iter().enumerate() {
            if mask & (1 << i) != 0 {
                inter = inter.intersection(e);
                product *= &marginals[i];
            }
        }
        space.mass(&inter) == product
    };
    let n = events.len() as u32;
    let full = (1u32 << n) - 1;
    let mut pairwise = true;
    let mut mutual = true;
    for mask in 1..=full {
        if mask.count_ones() < 2 {
            continue;
        }
        let ok = factorizes(mask);
        if mask.count_ones() == 2 {
            pairwise &= ok;
        }
        mutual &= ok;
    }
    Ok(IndependenceReport {
        pairwise,
        mutual,
        global: factorizes(full),
    })
}

/// Law of the number of marked balls in `draws` ordered draws from an urn
/// of `total` balls, `marked` of which are marked.
///
/// All ordered draw sequences are equiprobable; the sequence tree is walked
/// colour by colour, each branch weighted by the number of individual balls
/// it stands for, so every sequence is counted exactly once.
pub fn urn_draw_space(total: u64, marked: u64, draws: u64, with_replacement: bool) -> Result<FiniteProbabilitySpace> {
    if total == 0 || draws == 0 {
        return Err(Error::InvalidParameter("urn needs total >= 1 and draws >= 1".into()));
    }
    if marked > total {
        return Err(Error::InvalidParameter(format!(
            "marked = {marked} exceeds total = {total}"
        )));
    }
    if !with_replacement && draws > total {
        return Err(Error::InvalidParameter(format!(
            "cannot draw {draws} balls without replacement from {total}"
        )));
    }
    let mut counts = vec![BigUint::zero(); draws as usize + 1];
    walk_urn(
        draws,
        marked,
        total - marked,
        0,
        BigUint::one(),
        with_replacement,
        &mut counts,
    );
    let sequences: BigUint = counts.iter().sum();
    let weights = counts
        .into_iter()
        .map(|c| BigRational::new(c.into(), sequences.clone().into()))
        .collect();
    FiniteProbabilitySpace::new((0..=draws).map(|k| k.to_string()).collect(), weights)
}

fn walk_urn(
    left: u64,
    marked: u64,
    unmarked: u64,
    hits: usize,
    multiplicity: BigUint,
    with_replacement: bool,
    counts: &mut [BigUint],
) {
    if left == 0 {
        counts[hits] += multiplicity;
        return;
    }
    let (after_marked, after_unmarked) = if with_replacement {
        ((marked, unmarked), (marked, unmarked))
    } else {
        (
            (marked.saturating_sub(1), unmarked),
            (marked, unmarked.saturating_sub(1)),
        )
    };
    if marked > 0 {
        walk_urn(
            left - 1,
            after_marked.0,
            after_marked.1,
            hits + 1,
            &multiplicity * marked,
            with_replacement,
            counts,
        );
    }
    if unmarked > 0 {
        walk_urn(
            left - 1,
            after_unmarked.0,
            after_unmarked.1,
            hits,
            &multiplicity * unmarked,
            with_replacement,
            counts,
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};

    fn three_children() -> FiniteProbabilitySpace {
        // oldest first
        let labels: Vec<String> = (0..8)
            .map(|m: u32| (0..3).map(|b| if m >> (2 - b) & 1 == 1 { 'G' } else { 'B' }).collect())
            .collect();
        FiniteProbabilitySpace::uniform(labels).unwrap()
    }

    #[test]
    fn uniform_space_examples() {
        let die = uniform_space(6).unwrap();
        assert!(die.weights().iter().all(|w| *w == ratio(1, 6)));
        let two_dice = uniform_space(36).unwrap();
        assert!(two_dice.weights().iter().all(|w| *w == ratio(1, 36)));
        let one = uniform_space(1).unwrap();
        assert_eq!(one.weights(), &[int(1)]);
        assert_eq!(uniform_space(0), Err(Error::ZeroCount));
    }

    #[test]
    fn three_children_events() {
        let s = three_children();
        let at_least_one_boy = s.event_where(|o| o.contains('B'));
        assert_eq!(prob(&s, &at_least_one_boy).unwrap(), ratio(7, 8));
        // no girl is older than a boy: labels of the form B*G*
        let no_girl_older = s.event_where(|o| !o.contains("GB"));
        assert_eq!(prob(&s, &no_girl_older).unwrap(), ratio(1, 2));
        let one_girl = s.event_where(|o| o.matches('G').count() == 1);
        assert_eq!(prob(&s, &one_girl).unwrap(), ratio(3, 8));
        assert_eq!(prob(&s, &s.sure_event()).unwrap(), int(1));
        assert_eq!(prob(&s, &Event::empty()).unwrap(), int(0));
        assert_eq!(
            prob(&s, &Event::from_indices([8])),
            Err(Error::IndexOutOfRange { index: 8, len: 8 })
        );
    }

    #[test]
    fn conditional_on_dice_triples() {
        let labels: Vec<String> = (1..=6)
            .flat_map(|a| (1..=6).flat_map(move |b| (1..=6).map(move |c| format!("{a}{b}{c}"))))
            .collect();
        let s = FiniteProbabilitySpace::uniform(labels).unwrap();
        let digits = |o: &str| o.bytes().map(|c| (c - b'0') as u32).collect::<Vec<_>>();
        let sum6 = s.event_where(|o| digits(o).iter().sum::<u32>() == 6);
        let first1 = s.event_where(|o| o.starts_with('1'));
        assert_eq!(conditional_prob(&s, &first1, &sum6).unwrap(), ratio(2, 5));
        assert_eq!(
            conditional_prob(&s, &first1, &s.sure_event()).unwrap(),
            prob(&s, &first1).unwrap()
        );
        assert_eq!(conditional_prob(&s, &first1, &Event::empty()).unwrap(), int(0));
    }

    #[test]
    fn chain_rule_examples() {
        let s = three_children();
        let omega = s.sure_event();
        assert_eq!(chain_rule(&s, &[omega.clone(), omega]).unwrap(), int(1));
        let a = s.event_where(|o| o.starts_with('G'));
        assert_eq!(chain_rule(&s, std::slice::from_ref(&a)).unwrap(), ratio(1, 2));
        assert!(chain_rule(&s, &[]).is_err());
    }

    #[test]
    fn total_probability_examples() {
        let p = CausePartition::new(vec![ratio(1, 2), ratio(1, 2)], vec![ratio(1, 5), ratio(2, 5)]).unwrap();
        assert_eq!(total_probability(&p), ratio(3, 10));
        let c = ratio(2, 7);
        let p = CausePartition::new(vec![ratio(1, 3), ratio(1, 6), ratio(1, 2)], vec![c.clone(); 3]).unwrap();
        assert_eq!(total_probability(&p), c);
        let p = CausePartition::new(vec![int(1), int(0)], vec![ratio(3, 4), ratio(1, 9)]).unwrap();
        assert_eq!(total_probability(&p), ratio(3, 4));
        assert!(matches!(
            CausePartition::new(vec![ratio(1, 2), ratio(1, 3)], vec![int(0), int(0)]),
            Err(Error::PriorSumNotOne(_))
        ));
    }

    #[test]
    fn bayes_examples() {
        let p = CausePartition::new(vec![ratio(1, 4); 4], vec![ratio(1, 3); 4]).unwrap();
        assert_eq!(bayes_posterior(&p).unwrap(), vec![ratio(1, 4); 4]);

        // disease test: P(D)=3/10, P(+|D)=9/10, P(-|not D)=8/10
        let p = CausePartition::new(vec![ratio(3, 10), ratio(7, 10)], vec![ratio(9, 10), ratio(2, 10)]).unwrap();
        let post = bayes_posterior(&p).unwrap();
        assert_eq!(post[0], ratio(27, 41));

        let p = CausePartition::new(vec![int(1), int(0)], vec![int(1), int(1)]).unwrap();
        assert_eq!(bayes_posterior(&p), Err(Error::NonpositivePrior(1)));
        assert_eq!(bayes_posterior_with_null_causes(&p).unwrap(), vec![int(1), int(0)]);
        let p = CausePartition::new(vec![ratio(1, 2), ratio(1, 2)], vec![int(0), int(0)]).unwrap();
        assert_eq!(bayes_posterior(&p), Err(Error::ZeroEvidence));
    }

    #[test]
    fn umbrella_posterior() {
        for p in [ratio(1, 10), ratio(1, 2), ratio(7, 10), ratio(99, 100)] {
            let floor = &p / int(7);
            let mut priors = vec![floor; 7];
            priors.push(int(1) - &p);
            let mut likelihoods = vec![int(0); 6];
            likelihoods.extend([int(1), int(1)]);
            let part = CausePartition::new(priors, likelihoods).unwrap();
            let post = bayes_posterior(&part).unwrap();
            assert_eq!(post[6], &p / (int(7) - int(6) * &p));
        }
    }

    #[test]
    fn independence_counterexamples() {
        let bernstein = FiniteProbabilitySpace::uniform(["112", "121", "211", "222"]).unwrap();
        let events: Vec<Event> = (0..3)
            .map(|i| bernstein.event_where(|o| o.as_bytes()[i] == b'1'))
            .collect();
        let r = independence_report(&bernstein, &events).unwrap();
        assert_eq!(
            r,
            IndependenceReport {
                pairwise: true,
                mutual: false,
                global: false
            }
        );

        let dice =
            FiniteProbabilitySpace::uniform((1..=6).flat_map(|a| (1..=6).map(move |b| format!("{a}{b}")))).unwrap();
        let d = |o: &str, i: usize| (o.as_bytes()[i] - b'0') as u32;
        let a = dice.event_where(|o| d(o, 0) <= 3);
        let b = dice.event_where(|o| d(o, 1) >= 4);
        let c = dice.event_where(|o| d(o, 0) + d(o, 1) == 9);
        let r = independence_report(&dice, &[a, b.clone(), c.clone()]).unwrap();
        assert!(r.global && !r.pairwise && !r.mutual);
        assert_eq!(prob(&dice, &b.intersection(&c)).unwrap(), ratio(1, 12));

        let coin = uniform_space(2).unwrap();
        let die = uniform_space(3).unwrap();
        let prod = coin.product(&die);
        let e1 = prod.event_where(|o| o.starts_with('0'));
        let e2 = prod.event_where(|o| o.ends_with('2'));
        let r = independence_report(&prod, &[e1.clone(), e2]).unwrap();
        assert!(r.pairwise && r.mutual && r.global);
        assert_eq!(independence_report(&prod, &[e1]), Err(Error::TooFewEvents));
    }

    #[test]
    fn urn_examples() {
        let s = urn_draw_space(10, 4, 3, false).unwrap();
        assert_eq!(s.weights()[1], ratio(1, 2));
        for replace in [false, true] {
            let s = urn_draw_space(6, 6, 4, replace).unwrap();
            assert_eq!(s.weights()[4], int(1));
        }
        let s = urn_draw_space(5, 2, 3, true).unwrap();
        let expected = [ratio(27, 125), ratio(54, 125), ratio(36, 125), ratio(8, 125)];
        assert_eq!(s.weights(), &expected);
        assert!(urn_draw_space(3, 4, 1, true).is_err());
        assert!(urn_draw_space(3, 1, 4, false).is_err());
        assert!(urn_draw_space(3, 1, 4, true).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let s =
            FiniteProbabilitySpace::from_json(r#"{"outcomes":["a","b","c"],"weights":["1/2","0.25",0.25]}"#).unwrap();
        assert_eq!(s.weights(), &[ratio(1, 2), ratio(1, 4), ratio(1, 4)]);
        let back = FiniteProbabilitySpace::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        assert!(FiniteProbabilitySpace::from_json(r#"{"outcomes":["a","b"],"weights":["1/2","1/3"]}"#).is_err());
        assert!(FiniteProbabilitySpace::from_json(r#"{"outcomes":["a","a"],"weights":["1/2","1/2"]}"#).is_err());
    }
}
