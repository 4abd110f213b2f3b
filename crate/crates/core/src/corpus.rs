//! Deterministic prior collections used by the `verify` command and the test
//! suites.
//!
//! Random priors draw integer weights from a seeded ChaCha stream, so a
//! (seed, count) pair always reproduces the same corpus.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::numeric::{int, rational, Rational};
use crate::prior::GammaPrior;

/// Dispersion exponents for the CMP-Binomial grids, on both sides of 1.
pub fn cmp_nu_grid() -> Vec<Rational> {
    vec![int(0), rational(1, 2), rational(3, 4), int(1), rational(3, 2), int(2), int(3)]
}

/// Strictly positive symmetric priors: integer weights in 1..=100 for
/// i ≤ N/2, mirrored onto N − i.
pub fn random_symmetric(seed: u64, count: usize, sizes: RangeInclusive<usize>) -> Vec<GammaPrior> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let n = rng.gen_range(sizes.clone());
            let half: Vec<i64> = (0..=n / 2).map(|_| rng.gen_range(1..=100)).collect();
            let weights: Vec<Rational> = (0..=n).map(|i| int(half[i.min(n - i)])).collect();
            GammaPrior::from_pmf(&weights)
                .expect("positive weights")
                .with_label(format!("random-symmetric(seed={seed}, #{k}, N={n})"))
        })
        .collect()
}

/// Arbitrary priors with integer weights in `min_weight..=100`. A zero lower
/// bound allows zero atoms; an all-zero draw is redrawn.
pub fn random_priors(seed: u64, count: usize, sizes: RangeInclusive<usize>, min_weight: i64) -> Vec<GammaPrior> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(sizes.clone());
        let weights: Vec<Rational> = (0..=n).map(|_| int(rng.gen_range(min_weight..=100))).collect();
        if let Ok(prior) = GammaPrior::from_pmf(&weights) {
            let k = out.len();
            out.push(prior.with_label(format!("random(seed={seed}, #{k}, N={n})")));
        }
    }
    out
}

/// CMP-Binomial(N, p, ν) over the ν grid.
pub fn cmp_family(p: &Rational, sizes: RangeInclusive<usize>) -> Vec<GammaPrior> {
    sizes
        .flat_map(|n| cmp_nu_grid().into_iter().map(move |nu| (n, nu)))
        .map(|(n, nu)| GammaPrior::from_cmp_binomial(n, p, &nu).expect("valid CMP parameters"))
        .collect()
}

/// Beta-Binomial(N, α, β) for α, β ∈ {1/2, 1, 2, 10}.
pub fn beta_binomial_family(sizes: RangeInclusive<usize>) -> Vec<GammaPrior> {
    let grid = [rational(1, 2), int(1), int(2), int(10)];
    let mut out = Vec::new();
    for n in sizes {
        for alpha in &grid {
            for beta in &grid {
                out.push(GammaPrior::from_beta_binomial(n, alpha, beta).expect("positive parameters"));
            }
        }
    }
    out
}

/// Success probabilities used for mixture components. All lie strictly
/// inside (0, 1): a component at 0 or 1 only touches one end of the support,
/// so with a single other component the inequality is tight everywhere else.
pub fn mixture_p_grid() -> Vec<Rational> {
    vec![rational(1, 5), rational(1, 3), rational(1, 2), rational(3, 4), rational(9, 10)]
}

/// Binomial mixtures with two or three distinct components.
pub fn mixture_family(sizes: RangeInclusive<usize>) -> Vec<GammaPrior> {
    let ps = mixture_p_grid();
    let weights = [rational(1, 2), rational(1, 3), rational(9, 10)];
    let mut out = Vec::new();
    for n in sizes {
        for (a, pa) in ps.iter().enumerate() {
            for (b, pb) in ps.iter().enumerate().skip(a + 1) {
                for w in &weights {
                    let components = [(w.clone(), pa.clone()), (int(1) - w, pb.clone())];
                    out.push(GammaPrior::from_binomial_mixture(n, &components).expect("valid mixture"));
                }
                for pc in ps.iter().skip(b + 1) {
                    let components = [(int(1), pa.clone()), (int(2), pb.clone()), (int(3), pc.clone())];
                    out.push(GammaPrior::from_binomial_mixture(n, &components).expect("valid mixture"));
                }
            }
        }
    }
    out
}

/// Hypergeometric(N + M, a, N) for 2 ≤ N ≤ `max_n`, 1 ≤ M ≤ `max_m` and
/// N ≤ a ≤ M.
pub fn hypergeometric_family(max_n: usize, max_m: usize) -> Vec<GammaPrior> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for m in 1..=max_m {
            for a in n..=m {
                out.push(GammaPrior::from_hypergeometric(n + m, a, n).expect("valid hypergeometric"));
            }
        }
    }
    out
}

/// Symmetric priors for the gambler's-belief equivalence: the CMP grid at
/// p = 1/2 plus `random_count` random symmetric priors.
pub fn symmetric_corpus(seed: u64, random_count: usize, sizes: RangeInclusive<usize>) -> Vec<GammaPrior> {
    let mut out = cmp_family(&rational(1, 2), sizes.clone());
    out.extend(random_symmetric(seed, random_count, sizes));
    out
}

/// The symmetric corpus plus asymmetric CMP, Beta-Binomial and mixture
/// priors.
pub fn maturity_corpus(seed: u64, random_count: usize, sizes: RangeInclusive<usize>) -> Vec<GammaPrior> {
    let mut out = symmetric_corpus(seed, random_count, sizes.clone());
    out.extend(cmp_family(&rational(1, 4), sizes.clone()));
    out.extend(cmp_family(&rational(2, 3), sizes.clone()));
    out.extend(beta_binomial_family(sizes.clone()));
    out.extend(mixture_family(sizes));
    out
}
