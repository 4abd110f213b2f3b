//! Exact predictive probabilities for finitely exchangeable 0/1 populations.
//!
//! A population of `N` binary outcomes is exchangeable when its law is
//! invariant under permutations; such a law is fixed by a prior on the number
//! of ones γ. This crate builds those priors ([`prior`]), computes predictive
//! probabilities and first-success hazards exactly ([`model`]), classifies
//! priors as tighter or looser than the Binomial and verifies the gambler's
//! belief and belief in maturity by enumeration ([`classify`]), and decides
//! whether a prior extends to a larger exchangeable population ([`extend`]).

pub mod classify;
pub mod cli;
pub mod corpus;
pub mod extend;
pub mod figures;
pub mod model;
pub mod numeric;
pub mod prior;
pub mod report;
pub mod verify;

pub use classify::{
    is_indifferent, is_symmetric, second_order_class, tightness_class, tightness_ratio, verify_gambler,
    verify_maturity, BeliefReport, Holds, TightnessVerdict, Verdict,
};
pub use extend::{extendibility_check, extendibility_profile, Extendibility, MixtureWitness};
pub use model::{
    posterior_gamma, predictive_one, predictive_table, sequence_probability, streak_hazard, HistorySummary,
    PredictiveTable,
};
pub use numeric::{binomial_coefficient, falling_factorial, parse_rational, ApproxReal, Precision, Rational};
pub use prior::{GammaPrior, Mode};
