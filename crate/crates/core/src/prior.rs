//! Priors on the success count γ of a population of size N.
//!
//! Under finite exchangeability the law of the whole 0/1 vector is fixed by
//! the law of γ, so a [`GammaPrior`] is the only free input to every
//! computation in this crate.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::{
    binomial_coefficient, from_biguint, int, pow, rational_power, rising_factorial, serde_rational, Precision,
    Rational,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PriorError {
    #[error("population size must be at least 1")]
    EmptyPopulation,
    #[error("{name} = {value} is out of range: expected {expected}")]
    OutOfRange { name: &'static str, value: String, expected: &'static str },
    #[error("a prior needs at least two weights (N >= 1), got {0}")]
    TooFewWeights(usize),
    #[error("weight at index {index} is negative ({value})")]
    NegativeWeight { index: usize, value: String },
    #[error("all weights are zero")]
    AllZero,
    #[error("mixture has no components")]
    EmptyMixture,
    #[error("pmf file declares N = {declared} but lists {listed} probabilities")]
    LengthMismatch { declared: usize, listed: usize },
    #[error("malformed prior file: {0}")]
    Malformed(String),
}

/// Whether a prior's probabilities are the true values or rounded
/// approximations of irrational ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mode {
    Exact,
    /// Entries are exact rationals computed from approximations accurate to
    /// the given precision; comparisons must use its tolerance.
    Approximate(Precision),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaPrior {
    pmf: Vec<Rational>,
    mode: Mode,
    label: String,
}

impl GammaPrior {
    /// Normalizes `weights` and checks the prior invariants.
    fn build(weights: Vec<Rational>, mode: Mode, label: String) -> Result<Self, PriorError> {
        if weights.len() < 2 {
            return Err(PriorError::TooFewWeights(weights.len()));
        }
        if let Some((index, w)) = weights.iter().enumerate().find(|(_, w)| w.is_negative()) {
            return Err(PriorError::NegativeWeight { index, value: w.to_string() });
        }
        let total: Rational = weights.iter().sum();
        if total.is_zero() {
            return Err(PriorError::AllZero);
        }
        let pmf: Vec<Rational> = weights.into_iter().map(|w| w / &total).collect();
        debug_assert!(pmf.iter().sum::<Rational>().is_one());
        Ok(GammaPrior { pmf, mode, label })
    }

    /// Binomial(N, p): independent trials with success probability `p`.
    pub fn from_binomial(n: usize, p: &Rational) -> Result<Self, PriorError> {
        check_size(n)?;
        check_unit_interval("p", p)?;
        let q = Rational::one() - p;
        let pmf = (0..=n)
            .map(|i| from_biguint(binomial_coefficient(n as u64, i as i64)) * pow(p, i as u64) * pow(&q, (n - i) as u64))
            .collect();
        Self::build(pmf, Mode::Exact, format!("binomial(N={n}, p={p})"))
    }

    /// Beta-Binomial(N, α, β) through rising factorials, exact for rational
    /// parameters.
    pub fn from_beta_binomial(n: usize, alpha: &Rational, beta: &Rational) -> Result<Self, PriorError> {
        check_size(n)?;
        check_positive("alpha", alpha)?;
        check_positive("beta", beta)?;
        let denom = rising_factorial(&(alpha + beta), n as u64);
        let pmf = (0..=n)
            .map(|i| {
                from_biguint(binomial_coefficient(n as u64, i as i64))
                    * rising_factorial(alpha, i as u64)
                    * rising_factorial(beta, (n - i) as u64)
                    / &denom
            })
            .collect();
        Self::build(pmf, Mode::Exact, format!("beta-binomial(N={n}, alpha={alpha}, beta={beta})"))
    }

    /// CMP-Binomial(N, p, ν) at the default precision.
    pub fn from_cmp_binomial(n: usize, p: &Rational, nu: &Rational) -> Result<Self, PriorError> {
        Self::from_cmp_binomial_with_precision(n, p, nu, &Precision::default())
    }

    /// P(γ = i) ∝ C(N,i)^ν p^i (1−p)^(N−i).
    ///
    /// Integer ν gives an exact prior. Otherwise each C(N,i)^ν is replaced by
    /// its floor at `precision.bits` fractional bits and the prior is marked
    /// [`Mode::Approximate`]. Equal coefficients get identical
    /// approximations, so symmetry at p = 1/2 survives exactly.
    pub fn from_cmp_binomial_with_precision(
        n: usize,
        p: &Rational,
        nu: &Rational,
        precision: &Precision,
    ) -> Result<Self, PriorError> {
        check_size(n)?;
        if !(p.is_positive() && p < &Rational::one()) {
            return Err(PriorError::OutOfRange { name: "p", value: p.to_string(), expected: "0 < p < 1" });
        }
        let q = Rational::one() - p;
        let mut exact = true;
        let pmf = (0..=n)
            .map(|i| {
                let coeff = match rational_power(&binomial_coefficient(n as u64, i as i64), nu, precision) {
                    Ok(v) => v,
                    Err(approx) => {
                        exact = false;
                        approx.value
                    }
                };
                coeff * pow(p, i as u64) * pow(&q, (n - i) as u64)
            })
            .collect();
        let mode = if exact { Mode::Exact } else { Mode::Approximate(precision.clone()) };
        Self::build(pmf, mode, format!("cmp-binomial(N={n}, p={p}, nu={nu})"))
    }

    /// Law of the count of ones in a sub-population of size `n` drawn from a
    /// population of `total` holding exactly `ones` ones.
    pub fn from_hypergeometric(total: usize, ones: usize, n: usize) -> Result<Self, PriorError> {
        if total == 0 {
            return Err(PriorError::EmptyPopulation);
        }
        if ones > total {
            return Err(PriorError::OutOfRange { name: "a", value: ones.to_string(), expected: "0 <= a <= N_total" });
        }
        if n == 0 || n > total {
            return Err(PriorError::OutOfRange { name: "n", value: n.to_string(), expected: "1 <= n <= N_total" });
        }
        let pmf = hypergeometric_weights(total, ones, n).into_iter().map(from_biguint).collect();
        Self::build(pmf, Mode::Exact, format!("hypergeometric(N_total={total}, a={ones}, n={n})"))
    }

    pub fn from_degenerate(n: usize, g: usize) -> Result<Self, PriorError> {
        check_size(n)?;
        if g > n {
            return Err(PriorError::OutOfRange { name: "g", value: g.to_string(), expected: "0 <= g <= N" });
        }
        let pmf = (0..=n).map(|i| if i == g { int(1) } else { int(0) }).collect();
        Self::build(pmf, Mode::Exact, format!("degenerate(N={n}, g={g})"))
    }

    pub fn uniform(n: usize) -> Result<Self, PriorError> {
        check_size(n)?;
        Self::build(vec![int(1); n + 1], Mode::Exact, format!("uniform(N={n})"))
    }

    /// Normalizes arbitrary nonnegative weights; N is `weights.len() - 1`.
    pub fn from_pmf(weights: &[Rational]) -> Result<Self, PriorError> {
        let label = format!("custom(N={})", weights.len().saturating_sub(1));
        Self::build(weights.to_vec(), Mode::Exact, label)
    }

    /// Σ_j w_j · Binomial(N, p_j); weights are normalized.
    pub fn from_binomial_mixture(n: usize, components: &[(Rational, Rational)]) -> Result<Self, PriorError> {
        check_size(n)?;
        if components.is_empty() {
            return Err(PriorError::EmptyMixture);
        }
        let mut pmf = vec![Rational::zero(); n + 1];
        for (weight, p) in components {
            check_positive("weight", weight)?;
            check_unit_interval("p", p)?;
            let q = Rational::one() - p;
            for (i, slot) in pmf.iter_mut().enumerate() {
                *slot += weight
                    * from_biguint(binomial_coefficient(n as u64, i as i64))
                    * pow(p, i as u64)
                    * pow(&q, (n - i) as u64);
            }
        }
        let parts: Vec<String> = components.iter().map(|(w, p)| format!("{w}@{p}")).collect();
        Self::build(pmf, Mode::Exact, format!("binomial-mixture(N={n}, [{}])", parts.join(", ")))
    }

    /// Normalizes `weights` into a prior carrying an existing mode.
    pub(crate) fn derived(weights: Vec<Rational>, mode: Mode, label: String) -> Result<Self, PriorError> {
        Self::build(weights, mode, label)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Population size N.
    pub fn size(&self) -> usize {
        self.pmf.len() - 1
    }

    pub fn pmf(&self) -> &[Rational] {
        &self.pmf
    }

    /// P(γ = i), zero outside `0..=N`.
    pub fn prob(&self, i: i64) -> Rational {
        if i < 0 {
            return Rational::zero();
        }
        self.pmf.get(i as usize).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    pub fn is_exact(&self) -> bool {
        self.mode == Mode::Exact
    }

    /// Comparison tolerance; `None` for exact priors.
    pub fn tolerance(&self) -> Option<&Rational> {
        match &self.mode {
            Mode::Exact => None,
            Mode::Approximate(p) => Some(&p.tolerance),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// E[γ].
    pub fn mean(&self) -> Rational {
        self.pmf.iter().enumerate().map(|(i, p)| p * int(i as i64)).sum()
    }

    pub fn variance(&self) -> Rational {
        let mean = self.mean();
        let second: Rational = self.pmf.iter().enumerate().map(|(i, p)| p * int((i * i) as i64)).sum();
        second - &mean * &mean
    }
}

/// Unnormalized Hypergeometric(total, ones, n) weights C(a,i)·C(T−a, n−i).
/// They sum to C(T, n).
pub(crate) fn hypergeometric_weights(total: usize, ones: usize, n: usize) -> Vec<num_bigint::BigUint> {
    (0..=n)
        .map(|i| {
            binomial_coefficient(ones as u64, i as i64) * binomial_coefficient((total - ones) as u64, (n - i) as i64)
        })
        .collect()
}

fn check_size(n: usize) -> Result<(), PriorError> {
    if n == 0 {
        Err(PriorError::EmptyPopulation)
    } else {
        Ok(())
    }
}

fn check_unit_interval(name: &'static str, p: &Rational) -> Result<(), PriorError> {
    if p.is_negative() || p > &Rational::one() {
        return Err(PriorError::OutOfRange { name, value: p.to_string(), expected: "0 <= p <= 1" });
    }
    Ok(())
}

fn check_positive(name: &'static str, value: &Rational) -> Result<(), PriorError> {
    if !value.is_positive() {
        return Err(PriorError::OutOfRange { name, value: value.to_string(), expected: "a positive rational" });
    }
    Ok(())
}

/// On-disk custom prior: `{ "N": 4, "pmf": ["1/16", "1/4", ...] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PmfFile {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(with = "serde_rational::vec")]
    pub pmf: Vec<Rational>,
}

impl PmfFile {
    pub fn parse(json: &str) -> Result<GammaPrior, PriorError> {
        let file: PmfFile = serde_json::from_str(json).map_err(|e| PriorError::Malformed(e.to_string()))?;
        file.into_prior()
    }

    pub fn into_prior(self) -> Result<GammaPrior, PriorError> {
        if self.pmf.len() != self.n + 1 {
            return Err(PriorError::LengthMismatch { declared: self.n, listed: self.pmf.len() });
        }
        GammaPrior::from_pmf(&self.pmf)
    }

    pub fn from_prior(prior: &GammaPrior) -> Self {
        PmfFile { n: prior.size(), pmf: prior.pmf().to_vec() }
    }
}

/// On-disk binomial mixture:
/// `{ "N": 4, "components": [{ "weight": "1/2", "p": "1/4" }, ...] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MixtureFile {
    #[serde(rename = "N")]
    pub n: usize,
    pub components: Vec<MixtureComponent>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MixtureComponent {
    #[serde(with = "serde_rational")]
    pub weight: Rational,
    #[serde(with = "serde_rational")]
    pub p: Rational,
}

impl MixtureFile {
    pub fn parse(json: &str) -> Result<GammaPrior, PriorError> {
        let file: MixtureFile = serde_json::from_str(json).map_err(|e| PriorError::Malformed(e.to_string()))?;
        let components: Vec<(Rational, Rational)> =
            file.components.into_iter().map(|c| (c.weight, c.p)).collect();
        GammaPrior::from_binomial_mixture(file.n, &components)
    }
}
