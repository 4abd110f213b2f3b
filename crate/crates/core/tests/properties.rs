mod common;

use num_traits::{One, Zero};
use proptest::prelude::*;

use common::{choose_q, q, Q};
use maturity::classify::{is_symmetric, second_order_class, tightness_class, Verdict};
use maturity::extend::extendibility_profile;
use maturity::model::{predictive_one, predictive_table, sequence_probability, streak_hazard, HistorySummary};
use maturity::prior::GammaPrior;

fn weights(max_n: usize, min: i64) -> impl Strategy<Value = Vec<Q>> {
    (1..=max_n).prop_flat_map(move |n| prop::collection::vec(min..=50i64, n + 1)).prop_filter_map("all zero", |w| {
        (w.iter().any(|x| *x > 0)).then(|| w.into_iter().map(|x| q(x, 1)).collect())
    })
}

fn prior(max_n: usize, min: i64) -> impl Strategy<Value = GammaPrior> {
    weights(max_n, min).prop_map(|w| GammaPrior::from_pmf(&w).unwrap())
}

fn unit_rational() -> impl Strategy<Value = Q> {
    (0..=20i64).prop_map(|k| q(k, 20))
}

fn reflect(prior: &GammaPrior) -> GammaPrior {
    let mut pmf = prior.pmf().to_vec();
    pmf.reverse();
    GammaPrior::from_pmf(&pmf).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constructors_normalize(n in 1usize..12, p in unit_rational(), a in 1i64..20, b in 1i64..20, w in 1i64..10) {
        let priors = [
            GammaPrior::from_binomial(n, &p).unwrap(),
            GammaPrior::from_beta_binomial(n, &q(a, 4), &q(b, 4)).unwrap(),
            GammaPrior::from_binomial_mixture(n, &[(q(w, 1), p.clone()), (q(1, 1), q(1, 3))]).unwrap(),
            GammaPrior::from_hypergeometric(n + a as usize, (b as usize).min(n + a as usize), n).unwrap(),
        ];
        for prior in priors {
            prop_assert!(prior.pmf().iter().sum::<Q>().is_one());
            prop_assert!(prior.pmf().iter().all(|x| *x >= Q::zero()));
            prop_assert_eq!(prior.size(), n);
        }
    }

    #[test]
    fn sequence_probabilities_are_consistent(prior in prior(9, 0)) {
        let n = prior.size();
        for len in 0..=n {
            let total: Q = (0..=len)
                .map(|s| choose_q(len as u64, s as u64) * sequence_probability(&prior, HistorySummary::new(len, s)).unwrap())
                .sum();
            prop_assert!(total.is_one(), "length {} sums to {}", len, total);
            if len == n {
                continue;
            }
            for s in 0..=len {
                let h = HistorySummary::new(len, s);
                let here = sequence_probability(&prior, h).unwrap();
                let zero = sequence_probability(&prior, h.push(false)).unwrap();
                let one = sequence_probability(&prior, h.push(true)).unwrap();
                prop_assert_eq!(&here, &(&zero + &one));
                match predictive_one(&prior, h) {
                    Ok(p) => {
                        prop_assert_eq!(&p, &(&one / &here));
                        prop_assert!(p >= Q::zero() && p <= Q::one());
                    }
                    Err(_) => prop_assert!(here.is_zero()),
                }
            }
        }
    }

    #[test]
    fn hazard_is_predictive_after_zeros(prior in prior(9, 1)) {
        for m in 1..=prior.size() {
            let r = streak_hazard(&prior, m).unwrap();
            prop_assert_eq!(r, predictive_one(&prior, HistorySummary::new(m - 1, 0)).unwrap());
        }
    }

    #[test]
    fn predictive_table_matches_single_queries(prior in prior(8, 0)) {
        let table = predictive_table(&prior);
        for (h, p) in table.iter() {
            prop_assert_eq!(p, &predictive_one(&prior, h).unwrap());
        }
    }

    #[test]
    fn reflection_preserves_classification(prior in prior(10, 1)) {
        let mirrored = reflect(&prior);
        prop_assert_eq!(second_order_class(&prior).verdict, second_order_class(&mirrored).verdict);
        prop_assert_eq!(is_symmetric(&prior), is_symmetric(&mirrored));
        let first = tightness_class(&prior).verdict;
        prop_assert_eq!(first, tightness_class(&mirrored).verdict);
        prop_assert_eq!(first == Verdict::NotSymmetric, !is_symmetric(&prior));
    }

    #[test]
    fn symmetrized_priors_are_symmetric(w in weights(10, 1)) {
        let mut mirrored = w.clone();
        mirrored.reverse();
        let sym: Vec<Q> = w.iter().zip(&mirrored).map(|(a, b)| a + b).collect();
        let prior = GammaPrior::from_pmf(&sym).unwrap();
        prop_assert!(is_symmetric(&prior));
        prop_assert_ne!(tightness_class(&prior).verdict, Verdict::NotSymmetric);
    }

    #[test]
    fn extendibility_is_monotone(prior in prior(4, 0)) {
        // The profile itself errors on a monotonicity violation.
        let profile = extendibility_profile(&prior, 6).unwrap();
        prop_assert_eq!(profile.len(), 6);
    }

    #[test]
    fn binomials_always_extend(n in 1usize..5, p in unit_rational(), m in 1usize..8) {
        let prior = GammaPrior::from_binomial(n, &p).unwrap();
        let profile = extendibility_profile(&prior, m).unwrap();
        prop_assert!(profile.iter().all(|(_, r)| r.witness().is_some_and(|w| w.verifies(&prior))));
    }
}
