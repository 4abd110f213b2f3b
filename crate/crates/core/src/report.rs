//! JSON report documents shared by the CLI and the C interface. Every
//! document carries `"schema": "1"` and writes rationals as `"num/den"`.

use serde::Serialize;

use crate::classify::{
    is_indifferent, is_symmetric, second_order_class, tightness_class, verify_gambler_with, verify_maturity,
    GamblerReport, HazardPoint, MaturityReport, TiesPolicy, TightnessVerdict,
};
use crate::extend::{extendibility_check, extendibility_profile, ExtendError, Extendibility};
use crate::model::{hazard_curve, predictive_one, predictive_table, sequence_probability, HistorySummary, ModelError};
use crate::numeric::{serde_rational, Rational};
use crate::prior::{GammaPrior, Mode};

pub const SCHEMA: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PriorSummary {
    pub label: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision_bits: Option<u32>,
    #[serde(with = "serde_rational::option", skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<Rational>,
    #[serde(with = "serde_rational::vec")]
    pub pmf: Vec<Rational>,
}

impl PriorSummary {
    pub fn of(prior: &GammaPrior) -> Self {
        let (mode, precision_bits, tolerance) = match prior.mode() {
            Mode::Exact => ("exact", None, None),
            Mode::Approximate(p) => ("approximate", Some(p.bits), Some(p.tolerance.clone())),
        };
        PriorSummary {
            label: prior.label().to_string(),
            n: prior.size(),
            mode,
            precision_bits,
            tolerance,
            pmf: prior.pmf().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredictiveEntry {
    pub n: usize,
    pub s: usize,
    #[serde(with = "serde_rational")]
    pub sequence_probability: Rational,
    #[serde(with = "serde_rational")]
    pub predictive: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredictReport {
    pub schema: &'static str,
    pub prior: PriorSummary,
    /// One entry for a given history, or every positive-probability history
    /// with n < N when none was given.
    pub entries: Vec<PredictiveEntry>,
}

pub fn predict_report(prior: &GammaPrior, history: Option<HistorySummary>) -> Result<PredictReport, ModelError> {
    let entries = match history {
        Some(h) => vec![PredictiveEntry {
            n: h.n,
            s: h.s,
            sequence_probability: sequence_probability(prior, h)?,
            predictive: predictive_one(prior, h)?,
        }],
        None => predictive_table(prior)
            .iter()
            .map(|(h, p)| {
                Ok(PredictiveEntry { n: h.n, s: h.s, sequence_probability: sequence_probability(prior, h)?, predictive: p.clone() })
            })
            .collect::<Result<_, ModelError>>()?,
    };
    Ok(PredictReport { schema: SCHEMA, prior: PriorSummary::of(prior), entries })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HazardReport {
    pub schema: &'static str,
    pub prior: PriorSummary,
    pub hazards: Vec<HazardPoint>,
}

pub fn hazard_report(prior: &GammaPrior) -> HazardReport {
    let hazards = hazard_curve(prior).into_iter().map(|(m, r)| HazardPoint { m, r }).collect();
    HazardReport { schema: SCHEMA, prior: PriorSummary::of(prior), hazards }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifyReport {
    pub schema: &'static str,
    pub prior: PriorSummary,
    pub symmetric: bool,
    /// π when the prior is Binomial(N, π).
    #[serde(with = "serde_rational::option")]
    pub indifferent: Option<Rational>,
    pub tightness: TightnessVerdict,
    pub second_order: TightnessVerdict,
    pub gambler: GamblerReport,
    pub maturity: MaturityReport,
}

pub fn classify_report(prior: &GammaPrior, ties: TiesPolicy) -> ClassifyReport {
    ClassifyReport {
        schema: SCHEMA,
        prior: PriorSummary::of(prior),
        symmetric: is_symmetric(prior),
        indifferent: is_indifferent(prior),
        tightness: tightness_class(prior),
        second_order: second_order_class(prior),
        gambler: verify_gambler_with(prior, ties),
        maturity: verify_maturity(prior),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtendEntry {
    #[serde(rename = "M")]
    pub extra: usize,
    pub verdict: &'static str,
    #[serde(with = "serde_rational::vec", skip_serializing_if = "Vec::is_empty")]
    pub weights: Vec<Rational>,
}

impl ExtendEntry {
    fn new(extra: usize, result: Extendibility) -> Self {
        match result {
            Extendibility::Feasible(w) => ExtendEntry { extra, verdict: "FEASIBLE", weights: w.weights },
            Extendibility::Infeasible => ExtendEntry { extra, verdict: "INFEASIBLE", weights: Vec::new() },
        }
    }
}

pub const FINITE_PROFILE_NOTE: &str =
    "finite-M profile: feasibility at every finite M is necessary for extension to an infinite exchangeable sequence, not sufficient";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtendReport {
    pub schema: &'static str,
    pub prior: PriorSummary,
    pub note: &'static str,
    pub results: Vec<ExtendEntry>,
}

pub enum ExtendRequest {
    Single(usize),
    Profile(usize),
}

pub fn extend_report(prior: &GammaPrior, request: ExtendRequest) -> Result<ExtendReport, ExtendError> {
    let results = match request {
        ExtendRequest::Single(m) => vec![ExtendEntry::new(m, extendibility_check(prior, m)?)],
        ExtendRequest::Profile(max) => {
            extendibility_profile(prior, max)?.into_iter().map(|(m, r)| ExtendEntry::new(m, r)).collect()
        }
    };
    Ok(ExtendReport { schema: SCHEMA, prior: PriorSummary::of(prior), note: FINITE_PROFILE_NOTE, results })
}
