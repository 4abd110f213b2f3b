//! Predictive probabilities of the finitely exchangeable process defined by a
//! [`GammaPrior`].
//!
//! Exchangeability makes every ordered sequence with `s` ones in `n` trials
//! equally likely, so histories are carried as the pair `(n, s)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::numeric::{binomial_coefficient, falling_factorial, from_biguint, Rational};
use crate::prior::{GammaPrior, PriorError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("history (n={n}, s={s}) is invalid for a population of size {population}")]
    InvalidHistory { n: usize, s: usize, population: usize },
    #[error("history (n={n}, s={s}) has probability zero under the prior")]
    ZeroProbabilityHistory { n: usize, s: usize },
    #[error("history of length {n} already exhausts the population")]
    HistoryFull { n: usize },
    #[error("invalid history string {0:?}: expected only '0' and '1'")]
    BadHistoryString(String),
    #[error(transparent)]
    Prior(#[from] PriorError),
}

/// `s` ones observed in the first `n` trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HistorySummary {
    pub n: usize,
    pub s: usize,
}

impl HistorySummary {
    pub const EMPTY: HistorySummary = HistorySummary { n: 0, s: 0 };

    /// Panics if `s > n`.
    pub fn new(n: usize, s: usize) -> Self {
        assert!(s <= n, "history with {s} ones in {n} trials");
        HistorySummary { n, s }
    }

    pub fn checked(n: usize, s: usize) -> Option<Self> {
        (s <= n).then_some(HistorySummary { n, s })
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        HistorySummary { n: bits.len(), s: bits.iter().filter(|b| **b).count() }
    }

    /// Parses a string such as `"0110"`.
    pub fn parse(text: &str) -> Result<Self, ModelError> {
        let bits = text
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(ModelError::BadHistoryString(text.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_bits(&bits))
    }

    pub fn zeros(&self) -> usize {
        self.n - self.s
    }

    /// This history followed by `other`.
    pub fn then(&self, other: HistorySummary) -> Self {
        HistorySummary { n: self.n + other.n, s: self.s + other.s }
    }

    pub fn push(&self, one: bool) -> Self {
        HistorySummary { n: self.n + 1, s: self.s + usize::from(one) }
    }
}

impl fmt::Display for HistorySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, s={})", self.n, self.s)
    }
}

fn check_history(prior: &GammaPrior, h: HistorySummary) -> Result<(), ModelError> {
    if h.s > h.n || h.n > prior.size() {
        return Err(ModelError::InvalidHistory { n: h.n, s: h.s, population: prior.size() });
    }
    Ok(())
}

/// Weight of count `k` given the history: falling(k, s)·falling(N−k, n−s).
fn likelihood_weight(population: usize, k: usize, h: HistorySummary) -> Rational {
    from_biguint(falling_factorial(k as u64, h.s as u64) * falling_factorial((population - k) as u64, h.zeros() as u64))
}

/// Probability of one specific ordered sequence with `h.s` ones in `h.n`
/// trials.
pub fn sequence_probability(prior: &GammaPrior, h: HistorySummary) -> Result<Rational, ModelError> {
    check_history(prior, h)?;
    let population = prior.size();
    let denom = from_biguint(falling_factorial(population as u64, h.n as u64));
    let total: Rational = prior
        .pmf()
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(k, p)| p * likelihood_weight(population, k, h))
        .sum();
    Ok(total / denom)
}

/// P(X_{n+1} = 1 | history).
pub fn predictive_one(prior: &GammaPrior, h: HistorySummary) -> Result<Rational, ModelError> {
    check_history(prior, h)?;
    if h.n == prior.size() {
        return Err(ModelError::HistoryFull { n: h.n });
    }
    let here = sequence_probability(prior, h)?;
    if here.is_zero() {
        return Err(ModelError::ZeroProbabilityHistory { n: h.n, s: h.s });
    }
    Ok(sequence_probability(prior, h.push(true))? / here)
}

/// Posterior law of the full-population count γ given the history.
pub fn posterior_gamma(prior: &GammaPrior, h: HistorySummary) -> Result<GammaPrior, ModelError> {
    check_history(prior, h)?;
    let population = prior.size();
    let weights: Vec<Rational> =
        prior.pmf().iter().enumerate().map(|(k, p)| p * likelihood_weight(population, k, h)).collect();
    if weights.iter().all(Zero::is_zero) {
        return Err(ModelError::ZeroProbabilityHistory { n: h.n, s: h.s });
    }
    let label = format!("posterior[{} | {h}]", prior.label());
    Ok(GammaPrior::derived(weights, prior.mode().clone(), label)?)
}

/// Posterior law of the count among the `N − n` unobserved members. Feeding
/// it further history reproduces the original model conditioned on the
/// concatenated history.
pub fn remaining_prior(prior: &GammaPrior, h: HistorySummary) -> Result<GammaPrior, ModelError> {
    if h.n == prior.size() {
        return Err(ModelError::HistoryFull { n: h.n });
    }
    let posterior = posterior_gamma(prior, h)?;
    let rest = prior.size() - h.n;
    let weights: Vec<Rational> = (0..=rest).map(|j| posterior.prob((j + h.s) as i64)).collect();
    let label = format!("remaining[{} | {h}]", prior.label());
    Ok(GammaPrior::derived(weights, prior.mode().clone(), label)?)
}

/// r(m) = P(M = m | M ≥ m), where M is the index of the first one, via the
/// closed form in t(k) = P(γ = k)/C(N, k).
pub fn streak_hazard(prior: &GammaPrior, m: usize) -> Result<Rational, ModelError> {
    let population = prior.size();
    if m == 0 || m > population {
        return Err(ModelError::InvalidHistory { n: m.saturating_sub(1), s: 0, population });
    }
    let t = |k: usize| prior.prob(k as i64) / from_biguint(binomial_coefficient(population as u64, k as i64));
    let rest = (population - m) as u64;
    let numer: Rational = (1..=population - m + 1)
        .map(|k| from_biguint(binomial_coefficient(rest, k as i64 - 1)) * t(k))
        .sum();
    let denom: Rational =
        (0..=population - m + 1).map(|k| from_biguint(binomial_coefficient(rest + 1, k as i64)) * t(k)).sum();
    if denom.is_zero() {
        return Err(ModelError::ZeroProbabilityHistory { n: m - 1, s: 0 });
    }
    Ok(numer / denom)
}

/// r(m) for every m with P(M ≥ m) > 0, in increasing m.
pub fn hazard_curve(prior: &GammaPrior) -> Vec<(usize, Rational)> {
    (1..=prior.size()).map_while(|m| streak_hazard(prior, m).ok().map(|r| (m, r))).collect()
}

/// Probabilities of specific ordered sequences, indexed `[n][s]`.
///
/// Filled backwards from `n = N`, where a sequence is a full configuration
/// with probability t(s), using P(n, s) = P(n+1, s) + P(n+1, s+1).
pub fn sequence_triangle(prior: &GammaPrior) -> Vec<Vec<Rational>> {
    let population = prior.size();
    let mut rows: Vec<Vec<Rational>> = vec![Vec::new(); population + 1];
    rows[population] = (0..=population)
        .map(|s| prior.prob(s as i64) / from_biguint(binomial_coefficient(population as u64, s as i64)))
        .collect();
    for n in (0..population).rev() {
        let next = &rows[n + 1];
        rows[n] = (0..=n).map(|s| &next[s] + &next[s + 1]).collect();
    }
    rows
}

/// All predictive probabilities P(X_{n+1} = 1 | (n, s)) for n < N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictiveTable {
    population: usize,
    entries: BTreeMap<HistorySummary, Rational>,
}

impl PredictiveTable {
    pub fn population(&self) -> usize {
        self.population
    }

    /// `None` for zero-probability histories.
    pub fn get(&self, h: HistorySummary) -> Option<&Rational> {
        self.entries.get(&h)
    }

    /// Entries ordered by `(n, s)`.
    pub fn iter(&self) -> impl Iterator<Item = (HistorySummary, &Rational)> {
        self.entries.iter().map(|(h, p)| (*h, p))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The common value when every entry is identical.
    pub fn constant_value(&self) -> Option<&Rational> {
        let mut values = self.entries.values();
        let first = values.next()?;
        values.all(|v| v == first).then_some(first)
    }
}

pub fn predictive_table(prior: &GammaPrior) -> PredictiveTable {
    let rows = sequence_triangle(prior);
    let mut entries = BTreeMap::new();
    for n in 0..prior.size() {
        for s in 0..=n {
            let here = &rows[n][s];
            if !here.is_zero() {
                entries.insert(HistorySummary { n, s }, &rows[n + 1][s + 1] / here);
            }
        }
    }
    PredictiveTable { population: prior.size(), entries }
}

/// P(X_1 = 1) = E[γ]/N.
pub fn first_trial_probability(prior: &GammaPrior) -> Rational {
    prior.mean() / Rational::from_integer(prior.size().into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rational};
    use num_traits::One;

    fn q(n: i64, d: i64) -> Rational {
        rational(n, d)
    }

    fn is_probability(value: &Rational) -> bool {
        !num_traits::Signed::is_negative(value) && value <= &Rational::one()
    }

    fn h(n: usize, s: usize) -> HistorySummary {
        HistorySummary::new(n, s)
    }

    fn degenerate_4_2() -> GammaPrior {
        GammaPrior::from_degenerate(4, 2).unwrap()
    }

    #[test]
    fn sequence_probability_examples() {
        assert_eq!(sequence_probability(&degenerate_4_2(), h(2, 2)).unwrap(), q(1, 6));
        assert_eq!(sequence_probability(&GammaPrior::uniform(5).unwrap(), h(0, 0)).unwrap(), int(1));
        // Σ_γ (1/4)·falling(γ,2)/falling(3,2) = (1/4)(0 + 0 + 2 + 6)/6 = 1/3,
        // and the rule of succession gives s!(n−s)!/(n+1)! = 2/6.
        assert_eq!(sequence_probability(&GammaPrior::uniform(3).unwrap(), h(2, 2)).unwrap(), q(1, 3));
    }

    #[test]
    fn sequence_probability_rejects_long_history() {
        let err = sequence_probability(&GammaPrior::uniform(3).unwrap(), h(4, 1)).unwrap_err();
        assert_eq!(err, ModelError::InvalidHistory { n: 4, s: 1, population: 3 });
    }

    #[test]
    fn predictive_examples() {
        assert_eq!(predictive_one(&degenerate_4_2(), h(1, 1)).unwrap(), q(1, 3));
        let binom = GammaPrior::from_binomial(5, &q(2, 7)).unwrap();
        for n in 0..5 {
            for s in 0..=n {
                assert_eq!(predictive_one(&binom, h(n, s)).unwrap(), q(2, 7));
            }
        }
        // (1/4)·Σ falling(γ,0..)… ratio equals Laplace (s+1)/(n+2) = 1/4.
        assert_eq!(predictive_one(&GammaPrior::uniform(4).unwrap(), h(2, 0)).unwrap(), q(1, 4));
    }

    #[test]
    fn predictive_errors() {
        assert_eq!(
            predictive_one(&degenerate_4_2(), h(3, 3)),
            Err(ModelError::ZeroProbabilityHistory { n: 3, s: 3 })
        );
        assert_eq!(predictive_one(&degenerate_4_2(), h(4, 2)), Err(ModelError::HistoryFull { n: 4 }));
    }

    #[test]
    fn posterior_examples() {
        let post = posterior_gamma(&GammaPrior::uniform(2).unwrap(), h(1, 1)).unwrap();
        assert_eq!(post.pmf(), [q(0, 1), q(1, 3), q(2, 3)]);

        for hist in [h(0, 0), h(1, 0), h(2, 1), h(3, 2), h(4, 2)] {
            assert_eq!(posterior_gamma(&degenerate_4_2(), hist).unwrap().pmf(), degenerate_4_2().pmf());
        }

        // Remaining two trials stay Binomial(2, 1/2); observed count is 0.
        let post = posterior_gamma(&GammaPrior::from_binomial(3, &q(1, 2)).unwrap(), h(1, 0)).unwrap();
        assert_eq!(post.pmf(), [q(1, 4), q(1, 2), q(1, 4), q(0, 1)]);

        assert_eq!(
            posterior_gamma(&degenerate_4_2(), h(3, 3)).unwrap_err(),
            ModelError::ZeroProbabilityHistory { n: 3, s: 3 }
        );
    }

    #[test]
    fn remaining_prior_continues_conditioning() {
        let prior = GammaPrior::from_pmf(&[int(3), int(1), int(2), int(1), int(3), int(5)]).unwrap();
        let first = h(2, 1);
        let rest = remaining_prior(&prior, first).unwrap();
        assert_eq!(rest.size(), 3);
        assert_eq!(predictive_one(&rest, HistorySummary::EMPTY).unwrap(), predictive_one(&prior, first).unwrap());
        for second in [h(1, 0), h(1, 1), h(2, 1)] {
            assert_eq!(
                predictive_one(&rest, second).unwrap(),
                predictive_one(&prior, first.then(second)).unwrap()
            );
        }
        assert_eq!(remaining_prior(&prior, h(5, 2)).unwrap_err(), ModelError::HistoryFull { n: 5 });
    }

    #[test]
    fn hazard_examples() {
        let r: Vec<Rational> = hazard_curve(&degenerate_4_2()).into_iter().map(|(_, r)| r).collect();
        assert_eq!(r, [q(1, 2), q(2, 3), q(1, 1)]);
        assert_eq!(
            streak_hazard(&degenerate_4_2(), 4),
            Err(ModelError::ZeroProbabilityHistory { n: 3, s: 0 })
        );
        let binom = GammaPrior::from_binomial(6, &q(1, 5)).unwrap();
        assert!((1..=6).all(|m| streak_hazard(&binom, m).unwrap() == q(1, 5)));
        assert_eq!(streak_hazard(&GammaPrior::uniform(4).unwrap(), 2).unwrap(), q(1, 3));
        assert!(streak_hazard(&binom, 0).is_err());
        assert!(streak_hazard(&binom, 7).is_err());
    }

    #[test]
    fn hazard_matches_ratio_form() {
        let priors = [
            degenerate_4_2(),
            GammaPrior::uniform(6).unwrap(),
            GammaPrior::from_pmf(&[int(0), int(1), int(0), int(4), int(9)]).unwrap(),
            GammaPrior::from_cmp_binomial(7, &q(1, 3), &q(5, 2)).unwrap(),
            GammaPrior::from_beta_binomial(8, &q(1, 2), &q(3, 1)).unwrap(),
        ];
        for prior in &priors {
            for m in 1..=prior.size() {
                match (streak_hazard(prior, m), predictive_one(prior, h(m - 1, 0))) {
                    (Ok(a), Ok(b)) => assert_eq!(a, b, "{} m={m}", prior.label()),
                    (Err(_), Err(_)) => {}
                    other => panic!("{}: m={m} disagreement {other:?}", prior.label()),
                }
            }
        }
    }

    #[test]
    fn table_examples() {
        let table = predictive_table(&GammaPrior::from_binomial(2, &q(1, 2)).unwrap());
        assert_eq!(table.len(), 3);
        assert_eq!(table.constant_value(), Some(&q(1, 2)));

        let table = predictive_table(&GammaPrior::from_degenerate(2, 1).unwrap());
        assert_eq!(table.get(h(0, 0)), Some(&q(1, 2)));
        assert_eq!(table.get(h(1, 0)), Some(&q(1, 1)));
        assert_eq!(table.get(h(1, 1)), Some(&q(0, 1)));

        let table = predictive_table(&GammaPrior::uniform(3).unwrap());
        assert_eq!(table.len(), 6);
        for (hist, p) in table.iter() {
            assert_eq!(*p, q(hist.s as i64 + 1, hist.n as i64 + 2));
        }
    }

    #[test]
    fn table_omits_zero_probability_histories() {
        let table = predictive_table(&degenerate_4_2());
        assert!(table.get(h(3, 3)).is_none());
        assert!(table.get(h(3, 0)).is_none());
        assert_eq!(table.get(h(3, 2)), Some(&q(0, 1)));
        assert!(table.iter().all(|(_, p)| is_probability(p)));
    }

    #[test]
    fn history_parsing() {
        assert_eq!(HistorySummary::parse("0110").unwrap(), h(4, 2));
        assert_eq!(HistorySummary::parse("").unwrap(), HistorySummary::EMPTY);
        assert!(HistorySummary::parse("01x").is_err());
        assert_eq!(HistorySummary::from_bits(&[true, false, true]), h(3, 2));
        assert_eq!(HistorySummary::checked(1, 2), None);
    }

    #[test]
    fn mean_identity() {
        let prior = GammaPrior::from_pmf(&[int(1), int(7), int(2), int(0), int(5), int(3)]).unwrap();
        let rows = sequence_triangle(&prior);
        for (n, row) in rows.iter().enumerate().skip(1) {
            let expected_fraction: Rational = (0..=n)
                .map(|s| from_biguint(binomial_coefficient(n as u64, s as i64)) * &row[s] * q(s as i64, n as i64))
                .sum();
            assert_eq!(expected_fraction, first_trial_probability(&prior));
        }
    }
}
