//! Tightness classification of priors against the Binomial, and exhaustive
//! verification of the gambler's belief and belief in maturity.
//!
//! Ratio inequalities are always evaluated cross-multiplied so that zero
//! atoms never produce a division by zero. An index where both sides vanish
//! is vacuous and does not take part in the verdict.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::model::{hazard_curve, predictive_table, HistorySummary};
use crate::numeric::{compare, int, rational, serde_rational, Comparison, Rational};
use crate::prior::GammaPrior;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("tightness ratio index {index} outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Tighter,
    Looser,
    BinomialBoundary,
    Mixed,
    NotSymmetric,
    /// Some comparison fell inside the tolerance band of an approximate
    /// prior and no decisive disagreement exists elsewhere.
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Side {
    Tighter,
    Looser,
    Boundary,
    Vacuous,
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndexRecord {
    pub i: usize,
    pub side: Side,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeCaveat {
    Exact,
    ToleranceBased,
}

impl ModeCaveat {
    fn of(prior: &GammaPrior) -> Self {
        if prior.is_exact() {
            ModeCaveat::Exact
        } else {
            ModeCaveat::ToleranceBased
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TightnessVerdict {
    pub verdict: Verdict,
    pub per_index: Vec<IndexRecord>,
    pub mode_caveat: ModeCaveat,
}

fn side_of(lhs: &Rational, rhs: &Rational, tolerance: Option<&Rational>) -> Side {
    if lhs.is_zero() && rhs.is_zero() {
        return Side::Vacuous;
    }
    match compare(lhs, rhs, tolerance) {
        Comparison::Greater => Side::Tighter,
        Comparison::Less => Side::Looser,
        Comparison::Equal => Side::Boundary,
        Comparison::Indeterminate => Side::Indeterminate,
    }
}

/// Combines per-index sides. An empty index range means every law on the
/// support is a Binomial. A nonempty range that is entirely vacuous
/// satisfies neither strict definition and is reported as mixed; callers
/// that know the prior is a Binomial override that.
fn aggregate(per_index: &[IndexRecord]) -> Verdict {
    if per_index.is_empty() {
        return Verdict::BinomialBoundary;
    }
    let has = |side: Side| per_index.iter().any(|r| r.side == side);
    let decisive = [Side::Tighter, Side::Looser, Side::Boundary];
    match decisive.iter().filter(|side| has(**side)).count() {
        0 if has(Side::Indeterminate) => Verdict::Indeterminate,
        0 => Verdict::Mixed,
        1 if has(Side::Indeterminate) => Verdict::Indeterminate,
        1 if has(Side::Tighter) => Verdict::Tighter,
        1 if has(Side::Looser) => Verdict::Looser,
        1 => Verdict::BinomialBoundary,
        _ => Verdict::Mixed,
    }
}

/// P(γ = i) = P(γ = N − i) for every i, within tolerance for approximate
/// priors.
pub fn is_symmetric(prior: &GammaPrior) -> bool {
    let n = prior.size() as i64;
    (0..=n / 2).all(|i| compare(&prior.prob(i), &prior.prob(n - i), prior.tolerance()).is_equal_within_tolerance())
}

/// Compares P(γ=i)/P(γ=i−1) with the Binomial(N, 1/2) ratio (N−i+1)/i for
/// 1 ≤ i ≤ ⌊N/2⌋. Only symmetric priors are classified.
pub fn tightness_class(prior: &GammaPrior) -> TightnessVerdict {
    let caveat = ModeCaveat::of(prior);
    if !is_symmetric(prior) {
        return TightnessVerdict { verdict: Verdict::NotSymmetric, per_index: Vec::new(), mode_caveat: caveat };
    }
    let n = prior.size() as i64;
    let per_index: Vec<IndexRecord> = (1..=n / 2)
        .map(|i| {
            let lhs = prior.prob(i) * int(i);
            let rhs = prior.prob(i - 1) * int(n - i + 1);
            IndexRecord { i: i as usize, side: side_of(&lhs, &rhs, prior.tolerance()) }
        })
        .collect();
    TightnessVerdict { verdict: aggregate(&per_index), per_index, mode_caveat: caveat }
}

/// Compares P(γ=i)²/(P(γ=i+1)P(γ=i−1)) with the Binomial value
/// (i+1)(N−i+1)/(i(N−i)) for 1 ≤ i ≤ N−1. Symmetry is not required.
pub fn second_order_class(prior: &GammaPrior) -> TightnessVerdict {
    let n = prior.size() as i64;
    let per_index: Vec<IndexRecord> = (1..n)
        .map(|i| {
            let lhs = prior.prob(i) * prior.prob(i) * int(i * (n - i));
            let rhs = prior.prob(i + 1) * prior.prob(i - 1) * int((i + 1) * (n - i + 1));
            IndexRecord { i: i as usize, side: side_of(&lhs, &rhs, prior.tolerance()) }
        })
        .collect();
    let mut verdict = aggregate(&per_index);
    // Binomial(N, 0) and Binomial(N, 1) have every index vacuous.
    if verdict == Verdict::Mixed && per_index.iter().all(|r| r.side == Side::Vacuous) && is_indifferent(prior).is_some()
    {
        verdict = Verdict::BinomialBoundary;
    }
    TightnessVerdict { verdict, per_index, mode_caveat: ModeCaveat::of(prior) }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RatioValue {
    Finite(Rational),
    Infinite,
    Undefined,
}

/// P(γ=i)² / (P(γ=i+1)·P(γ=i−1)).
pub fn tightness_ratio(prior: &GammaPrior, i: usize) -> Result<RatioValue, ClassifyError> {
    let n = prior.size();
    if i == 0 || i >= n {
        return Err(ClassifyError::IndexOutOfRange { index: i, max: n.saturating_sub(1) });
    }
    let i = i as i64;
    let numer = prior.prob(i) * prior.prob(i);
    let denom = prior.prob(i + 1) * prior.prob(i - 1);
    Ok(match (numer.is_zero(), denom.is_zero()) {
        (_, false) => RatioValue::Finite(numer / denom),
        (false, true) => RatioValue::Infinite,
        (true, true) => RatioValue::Undefined,
    })
}

/// The Binomial's tightness ratio (i+1)(N−i+1)/(i(N−i)).
pub fn binomial_tightness_ratio(n: usize, i: usize) -> Rational {
    let (n, i) = (n as i64, i as i64);
    rational((i + 1) * (n - i + 1), i * (n - i))
}

/// π such that the prior is Binomial(N, π), if one exists. The only
/// candidate is π = E[γ]/N.
pub fn is_indifferent(prior: &GammaPrior) -> Option<Rational> {
    let pi = prior.mean() / int(prior.size() as i64);
    let binomial = GammaPrior::from_binomial(prior.size(), &pi).ok()?;
    prior
        .pmf()
        .iter()
        .zip(binomial.pmf())
        .all(|(a, b)| compare(a, b, prior.tolerance()).is_equal_within_tolerance())
        .then_some(pi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Belief {
    Gambler,
    ReverseGambler,
    Maturity,
    ReverseMaturity,
    Indifferent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Holds {
    Yes,
    No,
    Indeterminate,
}

/// What a predictive value was required to satisfy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "relation", content = "value", rename_all = "lowercase")]
pub enum Requirement {
    Above(#[serde(with = "serde_rational")] Rational),
    Below(#[serde(with = "serde_rational")] Rational),
    Equal(#[serde(with = "serde_rational")] Rational),
}

impl Requirement {
    fn target(&self) -> &Rational {
        match self {
            Requirement::Above(v) | Requirement::Below(v) | Requirement::Equal(v) => v,
        }
    }

    /// `Some(true)` satisfied, `Some(false)` violated, `None` unresolved.
    /// Equality inside the tolerance band counts as satisfied.
    fn check(&self, value: &Rational, tolerance: Option<&Rational>) -> Option<bool> {
        let cmp = compare(value, self.target(), tolerance);
        match (self, cmp) {
            (Requirement::Equal(_), c) => Some(c.is_equal_within_tolerance()),
            (_, Comparison::Indeterminate) => None,
            (Requirement::Above(_), c) => Some(c == Comparison::Greater),
            (Requirement::Below(_), c) => Some(c == Comparison::Less),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub history: HistorySummary,
    #[serde(with = "serde_rational")]
    pub predictive: Rational,
    pub required: Requirement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BeliefReport {
    pub belief: Belief,
    pub holds: Holds,
    pub counterexamples: Vec<Counterexample>,
    /// Checks whose outcome lies inside the tolerance band.
    pub unresolved: Vec<Counterexample>,
}

/// Accumulates requirement checks into a [`BeliefReport`].
struct BeliefCheck {
    belief: Belief,
    counterexamples: Vec<Counterexample>,
    unresolved: Vec<Counterexample>,
}

impl BeliefCheck {
    fn new(belief: Belief) -> Self {
        BeliefCheck { belief, counterexamples: Vec::new(), unresolved: Vec::new() }
    }

    fn require(&mut self, history: HistorySummary, value: &Rational, required: Requirement, tol: Option<&Rational>) {
        match required.check(value, tol) {
            Some(true) => {}
            Some(false) => self.counterexamples.push(Counterexample { history, predictive: value.clone(), required }),
            None => self.unresolved.push(Counterexample { history, predictive: value.clone(), required }),
        }
    }

    fn finish(self) -> BeliefReport {
        let holds = if !self.counterexamples.is_empty() {
            Holds::No
        } else if !self.unresolved.is_empty() {
            Holds::Indeterminate
        } else {
            Holds::Yes
        };
        BeliefReport { belief: self.belief, holds, counterexamples: self.counterexamples, unresolved: self.unresolved }
    }
}

/// How histories with equally many ones and zeros are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TiesPolicy {
    /// The predictive must equal 1/2.
    #[default]
    Strict,
    /// Tied histories are not checked.
    Skip,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GamblerReport {
    pub gambler: BeliefReport,
    pub reverse_gambler: BeliefReport,
    pub indifferent: BeliefReport,
    pub ties: TiesPolicy,
    pub histories_checked: usize,
    pub mode_caveat: ModeCaveat,
}

pub fn verify_gambler(prior: &GammaPrior) -> GamblerReport {
    verify_gambler_with(prior, TiesPolicy::Strict)
}

/// Checks every positive-probability history `(n, s)` with `n < N`: the
/// gambler's belief needs the predictive above 1/2 when ones are in the
/// minority and below 1/2 when they are in the majority; the reverse belief
/// needs the opposite.
pub fn verify_gambler_with(prior: &GammaPrior, ties: TiesPolicy) -> GamblerReport {
    let half = rational(1, 2);
    let tol = prior.tolerance();
    let table = predictive_table(prior);
    let mut gambler = BeliefCheck::new(Belief::Gambler);
    let mut reverse = BeliefCheck::new(Belief::ReverseGambler);
    let mut indifferent = BeliefCheck::new(Belief::Indifferent);
    let reference = table.iter().next().map(|(_, p)| p.clone());

    for (h, p) in table.iter() {
        let (want, want_reverse) = match h.s.cmp(&h.zeros()) {
            std::cmp::Ordering::Less => (Requirement::Above(half.clone()), Requirement::Below(half.clone())),
            std::cmp::Ordering::Greater => (Requirement::Below(half.clone()), Requirement::Above(half.clone())),
            std::cmp::Ordering::Equal => match ties {
                TiesPolicy::Strict => (Requirement::Equal(half.clone()), Requirement::Equal(half.clone())),
                TiesPolicy::Skip => {
                    indifferent.require(h, p, Requirement::Equal(reference.clone().unwrap_or_default()), tol);
                    continue;
                }
            },
        };
        gambler.require(h, p, want, tol);
        reverse.require(h, p, want_reverse, tol);
        if let Some(first) = &reference {
            indifferent.require(h, p, Requirement::Equal(first.clone()), tol);
        }
    }

    GamblerReport {
        gambler: gambler.finish(),
        reverse_gambler: reverse.finish(),
        indifferent: indifferent.finish(),
        ties,
        histories_checked: table.len(),
        mode_caveat: ModeCaveat::of(prior),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HazardPoint {
    pub m: usize,
    #[serde(with = "serde_rational")]
    pub r: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaturityReport {
    pub maturity: BeliefReport,
    pub reverse_maturity: BeliefReport,
    /// r(m) for every m with P(M ≥ m) > 0.
    pub hazards: Vec<HazardPoint>,
    pub constant: bool,
    pub mode_caveat: ModeCaveat,
}

/// Belief in maturity holds when r(m) is strictly increasing over the
/// streak lengths that have positive probability; reverse maturity when it
/// is strictly decreasing. A counterexample at history `(m, 0)` carries
/// r(m+1) and the previous value r(m) it had to exceed (or undercut).
pub fn verify_maturity(prior: &GammaPrior) -> MaturityReport {
    let tol = prior.tolerance();
    let hazards: Vec<HazardPoint> = hazard_curve(prior).into_iter().map(|(m, r)| HazardPoint { m, r }).collect();
    let mut maturity = BeliefCheck::new(Belief::Maturity);
    let mut reverse = BeliefCheck::new(Belief::ReverseMaturity);
    for pair in hazards.windows(2) {
        let (prev, next) = (&pair[0], &pair[1]);
        let history = HistorySummary::new(prev.m, 0);
        maturity.require(history, &next.r, Requirement::Above(prev.r.clone()), tol);
        reverse.require(history, &next.r, Requirement::Below(prev.r.clone()), tol);
    }
    let constant = hazards.windows(2).all(|w| compare(&w[0].r, &w[1].r, tol).is_equal_within_tolerance());
    MaturityReport {
        maturity: maturity.finish(),
        reverse_maturity: reverse.finish(),
        hazards,
        constant,
        mode_caveat: ModeCaveat::of(prior),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational as q;

    fn pmf(weights: &[i64]) -> GammaPrior {
        GammaPrior::from_pmf(&weights.iter().map(|w| int(*w)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn symmetry_examples() {
        assert!(is_symmetric(&GammaPrior::from_binomial(4, &q(1, 2)).unwrap()));
        assert!(!is_symmetric(&GammaPrior::from_binomial(4, &q(1, 3)).unwrap()));
        assert!(is_symmetric(&GammaPrior::from_beta_binomial(5, &int(2), &int(2)).unwrap()));
        assert!(is_symmetric(&GammaPrior::from_cmp_binomial(6, &q(1, 2), &q(3, 2)).unwrap()));
    }

    #[test]
    fn tightness_examples() {
        let cmp = GammaPrior::from_cmp_binomial(6, &q(1, 2), &int(2)).unwrap();
        assert_eq!(tightness_class(&cmp).verdict, Verdict::Tighter);
        let uniform = GammaPrior::from_beta_binomial(6, &int(1), &int(1)).unwrap();
        assert_eq!(tightness_class(&uniform).verdict, Verdict::Looser);

        let mixed = tightness_class(&pmf(&[3, 1, 2, 1, 3]));
        assert_eq!(mixed.verdict, Verdict::Mixed);
        assert_eq!(
            mixed.per_index,
            [IndexRecord { i: 1, side: Side::Looser }, IndexRecord { i: 2, side: Side::Tighter }]
        );
        assert_eq!(tightness_class(&GammaPrior::from_binomial(4, &q(1, 3)).unwrap()).verdict, Verdict::NotSymmetric);
        assert_eq!(
            tightness_class(&GammaPrior::from_binomial(7, &q(1, 2)).unwrap()).verdict,
            Verdict::BinomialBoundary
        );
    }

    #[test]
    fn degenerate_is_tighter_with_vacuous_indices() {
        let verdict = tightness_class(&GammaPrior::from_degenerate(4, 2).unwrap());
        assert_eq!(verdict.verdict, Verdict::Tighter);
        assert_eq!(verdict.per_index[0].side, Side::Vacuous);
        assert_eq!(verdict.per_index[1].side, Side::Tighter);
    }

    #[test]
    fn all_vacuous_range_is_mixed() {
        assert_eq!(second_order_class(&pmf(&[1, 0, 0, 1])).verdict, Verdict::Mixed);
        // N = 1 has no index to test: every law on {0, 1} is a Binomial.
        assert_eq!(second_order_class(&pmf(&[1, 3])).verdict, Verdict::BinomialBoundary);
        assert_eq!(tightness_class(&pmf(&[1, 1])).verdict, Verdict::BinomialBoundary);
    }

    #[test]
    fn second_order_examples() {
        let hyp = GammaPrior::from_hypergeometric(12, 6, 3).unwrap();
        assert_eq!(second_order_class(&hyp).verdict, Verdict::Tighter);
        for p in [q(0, 1), q(1, 5), q(1, 2), q(7, 9), q(1, 1)] {
            let binom = GammaPrior::from_binomial(6, &p).unwrap();
            assert_eq!(second_order_class(&binom).verdict, Verdict::BinomialBoundary, "p = {p}");
        }
        // P = (41, 60, 54, 60, 41)/256. Index 1: 60²·3 = 10800 < 54·41·8 = 17712;
        // index 2: 54²·4 = 11664 < 60²·9 = 32400; index 3 mirrors index 1.
        let mix = GammaPrior::from_binomial_mixture(4, &[(q(1, 2), q(1, 4)), (q(1, 2), q(3, 4))]).unwrap();
        assert_eq!(mix.pmf(), pmf(&[41, 60, 54, 60, 41]).pmf());
        assert_eq!(second_order_class(&mix).verdict, Verdict::Looser);
    }

    #[test]
    fn mixture_with_endpoint_component_is_only_weakly_looser() {
        // A Binomial(N, 0) component only adds mass at γ = 0, so every index
        // from 2 on keeps the single remaining component's boundary equality.
        let mix = GammaPrior::from_binomial_mixture(5, &[(q(1, 2), q(0, 1)), (q(1, 2), q(1, 3))]).unwrap();
        let verdict = second_order_class(&mix);
        assert_eq!(verdict.per_index[0].side, Side::Looser);
        assert!(verdict.per_index[1..].iter().all(|r| r.side == Side::Boundary));
        assert_eq!(verdict.verdict, Verdict::Mixed);
    }

    #[test]
    fn ratio_examples() {
        let binom = GammaPrior::from_binomial(4, &q(1, 2)).unwrap();
        assert_eq!(tightness_ratio(&binom, 2).unwrap(), RatioValue::Finite(q(9, 4)));
        assert_eq!(binomial_tightness_ratio(4, 2), q(9, 4));
        let degen = GammaPrior::from_degenerate(4, 2).unwrap();
        assert_eq!(tightness_ratio(&degen, 2).unwrap(), RatioValue::Infinite);
        assert_eq!(tightness_ratio(&degen, 1).unwrap(), RatioValue::Undefined);
        // Hypergeometric(8,4,4) = (1, 16, 36, 16, 1)/70; ratio 36²/16² = 81/16.
        let hyp = GammaPrior::from_hypergeometric(8, 4, 4).unwrap();
        assert_eq!(tightness_ratio(&hyp, 2).unwrap(), RatioValue::Finite(q(81, 16)));
        assert!(q(81, 16) > q(9, 4));
        assert!(tightness_ratio(&hyp, 0).is_err());
        assert!(tightness_ratio(&hyp, 4).is_err());
    }

    #[test]
    fn indifference_examples() {
        assert_eq!(is_indifferent(&GammaPrior::from_binomial(3, &q(1, 3)).unwrap()), Some(q(1, 3)));
        assert_eq!(is_indifferent(&GammaPrior::uniform(3).unwrap()), None);
        assert_eq!(is_indifferent(&GammaPrior::from_cmp_binomial(4, &q(1, 2), &int(1)).unwrap()), Some(q(1, 2)));
        assert_eq!(is_indifferent(&GammaPrior::from_degenerate(3, 0).unwrap()), Some(q(0, 1)));
    }

    #[test]
    fn gambler_examples() {
        let cmp = GammaPrior::from_cmp_binomial(6, &q(1, 2), &int(2)).unwrap();
        let report = verify_gambler(&cmp);
        assert_eq!(report.gambler.holds, Holds::Yes);
        assert_eq!(report.reverse_gambler.holds, Holds::No);
        assert_eq!(report.histories_checked, 21);

        let bb = GammaPrior::from_beta_binomial(6, &int(2), &int(2)).unwrap();
        let report = verify_gambler(&bb);
        assert_eq!(report.reverse_gambler.holds, Holds::Yes);
        assert_eq!(report.gambler.holds, Holds::No);

        let binom = GammaPrior::from_binomial(5, &q(1, 2)).unwrap();
        let report = verify_gambler(&binom);
        assert_eq!(report.gambler.holds, Holds::No);
        assert_eq!(report.reverse_gambler.holds, Holds::No);
        assert_eq!(report.indifferent.holds, Holds::Yes);
        assert!(!report.gambler.counterexamples.is_empty());
    }

    #[test]
    fn gambler_ties_policy() {
        // P = (1, 6, 2)/9: after a 0 the predictive is 3/4, after a 1 it is
        // 2/5, but P(X1 = 1) = 5/9 breaks the strict tie at n = 0.
        let prior = pmf(&[1, 6, 2]);
        let strict = verify_gambler(&prior);
        assert_eq!(strict.gambler.holds, Holds::No);
        assert_eq!(strict.gambler.counterexamples.len(), 1);
        assert_eq!(strict.gambler.counterexamples[0].history, HistorySummary::EMPTY);
        let relaxed = verify_gambler_with(&prior, TiesPolicy::Skip);
        assert_eq!(relaxed.gambler.holds, Holds::Yes);
    }

    #[test]
    fn gambler_on_approximate_prior() {
        let prior = GammaPrior::from_cmp_binomial(8, &q(1, 2), &q(3, 2)).unwrap();
        let report = verify_gambler(&prior);
        assert_eq!(report.mode_caveat, ModeCaveat::ToleranceBased);
        assert_eq!(report.gambler.holds, Holds::Yes);
        assert_eq!(tightness_class(&prior).verdict, Verdict::Tighter);
        let loose = GammaPrior::from_cmp_binomial(8, &q(1, 2), &q(3, 4)).unwrap();
        assert_eq!(verify_gambler(&loose).reverse_gambler.holds, Holds::Yes);
        assert_eq!(tightness_class(&loose).verdict, Verdict::Looser);
    }

    #[test]
    fn tolerance_band_yields_indeterminate() {
        use crate::numeric::Precision;
        // A 40-bit root with a huge tolerance makes the ν = 1 + 1/1000 prior
        // indistinguishable from the Binomial at every index.
        let coarse = Precision::new(40, q(1, 10)).unwrap();
        let prior = GammaPrior::from_cmp_binomial_with_precision(6, &q(1, 2), &q(1001, 1000), &coarse).unwrap();
        let verdict = tightness_class(&prior);
        assert_eq!(verdict.verdict, Verdict::Indeterminate);
        assert!(verdict.per_index.iter().all(|r| r.side == Side::Indeterminate));
        let report = verify_gambler(&prior);
        assert_eq!(report.gambler.holds, Holds::Indeterminate);
        assert!(!report.gambler.unresolved.is_empty());
    }

    #[test]
    fn maturity_examples() {
        let report = verify_maturity(&GammaPrior::from_degenerate(4, 2).unwrap());
        assert_eq!(report.maturity.holds, Holds::Yes);
        let r: Vec<Rational> = report.hazards.iter().map(|h| h.r.clone()).collect();
        assert_eq!(r, [q(1, 2), q(2, 3), q(1, 1)]);

        let report = verify_maturity(&GammaPrior::from_beta_binomial(5, &int(1), &int(1)).unwrap());
        assert_eq!(report.reverse_maturity.holds, Holds::Yes);
        assert_eq!(report.maturity.holds, Holds::No);
        for point in &report.hazards {
            assert_eq!(point.r, q(1, point.m as i64 + 1));
        }

        let report = verify_maturity(&GammaPrior::from_binomial(5, &q(1, 3)).unwrap());
        assert_eq!(report.maturity.holds, Holds::No);
        assert_eq!(report.reverse_maturity.holds, Holds::No);
        assert!(report.constant);
        assert!(report.hazards.iter().all(|h| h.r == q(1, 3)));
    }

    #[test]
    fn report_serializes_rationals_as_strings() {
        let report = verify_maturity(&GammaPrior::from_degenerate(4, 2).unwrap());
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["hazards"][1]["r"], "2/3");
        assert_eq!(json["maturity"]["holds"], "yes");
        assert_eq!(json["reverse_maturity"]["counterexamples"][0]["required"]["relation"], "below");
    }
}
