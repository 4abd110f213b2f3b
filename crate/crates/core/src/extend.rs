//! M-extendibility: whether the law of γ for a population of size N is the
//! size-N marginal of some exchangeable population of size N + M.
//!
//! Drawing N members from a population of N + M with `a` ones leaves a
//! Hypergeometric(N + M, a, N) count, so the prior extends iff it is a convex
//! combination of those N + M + 1 columns. The feasibility problem is solved
//! with an exact rational phase-one simplex.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::numeric::{binomial_coefficient, from_biguint, serde_rational, Rational};
use crate::prior::{hypergeometric_weights, GammaPrior};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtendError {
    #[error("extendibility needs an exact prior; this one is approximate")]
    ApproximatePrior,
    #[error("extension size M must be at least 1")]
    ZeroExtension,
    #[error("solver produced a witness that fails exact verification at M = {0}")]
    WitnessRejected(usize),
    #[error("extendibility is not monotone: infeasible at M = {infeasible} but feasible at M = {feasible}")]
    NonMonotone { infeasible: usize, feasible: usize },
}

/// Mixing weights over the count `a = 0..=N+M` of the larger population.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MixtureWitness {
    #[serde(rename = "M")]
    pub extra: usize,
    #[serde(with = "serde_rational::vec")]
    pub weights: Vec<Rational>,
}

impl MixtureWitness {
    /// Σ_a w_a · Hypergeometric(N + M, a, N).
    pub fn implied_pmf(&self, n: usize) -> Vec<Rational> {
        self.subsample_law(n + self.extra, n)
    }

    /// Law of the count of ones among `sub` members drawn from the `total`
    /// members the weights describe.
    fn subsample_law(&self, total: usize, sub: usize) -> Vec<Rational> {
        let scale = from_biguint(binomial_coefficient(total as u64, sub as i64));
        let mut pmf = vec![Rational::zero(); sub + 1];
        for (a, w) in self.weights.iter().enumerate().filter(|(_, w)| !w.is_zero()) {
            for (slot, count) in pmf.iter_mut().zip(hypergeometric_weights(total, a, sub)) {
                *slot += w * from_biguint(count) / &scale;
            }
        }
        pmf
    }

    /// Exact check that the weights form a distribution reproducing `prior`.
    pub fn verifies(&self, prior: &GammaPrior) -> bool {
        self.weights.len() == prior.size() + self.extra + 1
            && self.weights.iter().all(|w| !w.is_negative())
            && self.weights.iter().sum::<Rational>().is_one()
            && self.implied_pmf(prior.size()) == prior.pmf()
    }

    /// More than one positive weight.
    pub fn is_nondegenerate(&self) -> bool {
        self.weights.iter().filter(|w| w.is_positive()).count() > 1
    }

    /// The witness for a smaller extension `smaller <= M`, obtained by
    /// marginalizing the larger population down to N + `smaller` members.
    pub fn marginalize(&self, n: usize, smaller: usize) -> MixtureWitness {
        assert!(smaller <= self.extra);
        MixtureWitness { extra: smaller, weights: self.subsample_law(n + self.extra, n + smaller) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extendibility {
    Feasible(MixtureWitness),
    Infeasible,
}

impl Extendibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Extendibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&MixtureWitness> {
        match self {
            Extendibility::Feasible(w) => Some(w),
            Extendibility::Infeasible => None,
        }
    }
}

/// Decides whether `prior` is the size-N marginal of an exchangeable
/// population of size N + `extra`. Witnesses are verified exactly before
/// being returned.
pub fn extendibility_check(prior: &GammaPrior, extra: usize) -> Result<Extendibility, ExtendError> {
    if !prior.is_exact() {
        return Err(ExtendError::ApproximatePrior);
    }
    if extra == 0 {
        return Err(ExtendError::ZeroExtension);
    }
    let n = prior.size();
    let total = n + extra;
    let scale = from_biguint(binomial_coefficient(total as u64, n as i64));

    // Rows 0..=N: C(N+M, N)·Hypergeometric(N+M, a, N)[i] = C(a,i)·C(N+M−a, N−i),
    // right-hand side C(N+M, N)·P(γ = i). Last row: Σ_a q_a = 1.
    let columns: Vec<Vec<Rational>> =
        (0..=total).map(|a| hypergeometric_weights(total, a, n).into_iter().map(from_biguint).collect()).collect();
    let mut matrix: Vec<Vec<Rational>> = (0..=n).map(|i| columns.iter().map(|col| col[i].clone()).collect()).collect();
    matrix.push(vec![Rational::one(); total + 1]);
    let mut rhs: Vec<Rational> = prior.pmf().iter().map(|p| p * &scale).collect();
    rhs.push(Rational::one());

    match find_nonnegative_solution(&matrix, &rhs) {
        None => Ok(Extendibility::Infeasible),
        Some(weights) => {
            let witness = MixtureWitness { extra, weights };
            if witness.verifies(prior) {
                Ok(Extendibility::Feasible(witness))
            } else {
                Err(ExtendError::WitnessRejected(extra))
            }
        }
    }
}

/// Runs [`extendibility_check`] for M = 1..=`max_extra`. Feasibility at M
/// implies feasibility at every smaller M, and a violation is an error.
///
/// Feasible at every finite M is necessary, not sufficient, for extension to
/// an infinite exchangeable sequence.
pub fn extendibility_profile(prior: &GammaPrior, max_extra: usize) -> Result<Vec<(usize, Extendibility)>, ExtendError> {
    if max_extra == 0 {
        return Err(ExtendError::ZeroExtension);
    }
    let results: Vec<(usize, Extendibility)> = (1..=max_extra)
        .into_par_iter()
        .map(|m| extendibility_check(prior, m).map(|r| (m, r)))
        .collect::<Result<_, _>>()?;
    if let Some(first_fail) = results.iter().find(|(_, r)| !r.is_feasible()).map(|(m, _)| *m) {
        if let Some((later, _)) = results.iter().find(|(m, r)| *m > first_fail && r.is_feasible()) {
            return Err(ExtendError::NonMonotone { infeasible: first_fail, feasible: *later });
        }
    }
    Ok(results)
}

/// Finds x ≥ 0 with `matrix · x = rhs`, or `None` if none exists.
///
/// Phase one of the simplex method: one artificial variable per row,
/// minimize their sum. The tableau is kept in integers by fraction-free
/// pivoting, so every entry is its true value times the last pivot element
/// and each update is an exact division. The entering column has the most
/// negative reduced cost until the first degenerate pivot, after which
/// Bland's smallest-index rule takes over so the method cannot cycle. Ties
/// in the ratio test go to the smallest basic index.
pub(crate) fn find_nonnegative_solution(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let rows = matrix.len();
    let vars = matrix.first().map_or(0, Vec::len);
    let width = vars + rows;

    // Each row is scaled to integers; the artificial identity is appended
    // after scaling, which only rescales that row's artificial variable.
    let mut tableau: Vec<Vec<BigInt>> = Vec::with_capacity(rows);
    for (r, (row, b)) in matrix.iter().zip(rhs).enumerate() {
        let sign = if b.is_negative() { -BigInt::one() } else { BigInt::one() };
        let scale = row.iter().chain(std::iter::once(b)).fold(BigInt::one(), |acc, v| acc.lcm(v.denom())) * sign;
        let integral = |v: &Rational| (v * Rational::from_integer(scale.clone())).to_integer();
        let mut line: Vec<BigInt> = row.iter().map(integral).collect();
        line.extend((0..rows).map(|k| if k == r { BigInt::one() } else { BigInt::zero() }));
        line.push(integral(b));
        tableau.push(line);
    }
    let mut basis: Vec<usize> = (vars..width).collect();
    let mut det = BigInt::one();

    // Reduced costs of the phase-one objective, scaled like the tableau; the
    // last entry is minus the current objective value.
    let mut costs: Vec<BigInt> = vec![BigInt::zero(); width + 1];
    for line in &tableau {
        for j in (0..vars).chain(std::iter::once(width)) {
            costs[j] -= &line[j];
        }
    }

    let mut bland = false;
    loop {
        let mut candidates = (0..width).filter(|&j| costs[j].is_negative());
        let entering = if bland { candidates.next() } else { candidates.min_by(|&a, &b| costs[a].cmp(&costs[b])) };
        let Some(col) = entering else { break };
        // Smallest rhs/entry over positive entries, compared cross-multiplied.
        let leaving = (0..rows)
            .filter(|&r| tableau[r][col].is_positive())
            .min_by(|&a, &b| {
                let lhs = &tableau[a][width] * &tableau[b][col];
                let rhs = &tableau[b][width] * &tableau[a][col];
                lhs.cmp(&rhs).then(basis[a].cmp(&basis[b]))
            })
            .expect("phase-one objective is bounded below");
        bland |= tableau[leaving][width].is_zero();
        pivot(&mut tableau, &mut costs, &mut det, leaving, col);
        basis[leaving] = col;
    }

    if !costs[width].is_zero() {
        return None;
    }
    let mut solution = vec![Rational::zero(); vars];
    for (r, &var) in basis.iter().enumerate() {
        if var < vars {
            solution[var] = Rational::new(tableau[r][width].clone(), det.clone());
        }
    }
    Some(solution)
}

/// Fraction-free pivot: `x ← (p·x − x[col]·pivot_row) / det`, then
/// `det ← p`. The divisions are exact.
fn pivot(tableau: &mut [Vec<BigInt>], costs: &mut [BigInt], det: &mut BigInt, row: usize, col: usize) {
    let p = tableau[row][col].clone();
    let pivot_row = tableau[row].clone();
    let update = |line: &mut [BigInt]| {
        let factor = line[col].clone();
        for (v, q) in line.iter_mut().zip(&pivot_row) {
            let mut next = &*v * &p;
            if !factor.is_zero() && !q.is_zero() {
                next -= &factor * q;
            }
            *v = next / &*det;
        }
    };
    for (r, line) in tableau.iter_mut().enumerate() {
        if r != row {
            update(line);
        }
    }
    update(costs);
    *det = p;
}
