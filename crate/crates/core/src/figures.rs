//! Plot data for the prior-shape, tighter/looser and tightness-ratio
//! figures. Every value is exact; the CSV carries a 12-digit decimal next to
//! the exact fraction.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::classify::{binomial_tightness_ratio, tightness_ratio, RatioValue};
use crate::numeric::{int, rational, serde_rational, to_decimal, Rational};
use crate::prior::GammaPrior;

pub const SIGNIFICANT_DIGITS: u32 = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FigureError {
    #[error("unknown figure id {0:?}; expected prior-shapes, tighter-looser or tightness-ratio")]
    UnknownFigure(String),
    #[error("figure {figure} needs an even N of at least {min}, got {n}")]
    BadSize { figure: FigureId, n: usize, min: usize },
    #[error("hypergeometric curve {curve} does not exceed the Binomial at i = {i}")]
    DominanceViolated { curve: String, i: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FigureId {
    PriorShapes,
    TighterLooser,
    TightnessRatio,
}

impl FigureId {
    pub const ALL: [FigureId; 3] = [FigureId::PriorShapes, FigureId::TighterLooser, FigureId::TightnessRatio];

    pub fn name(self) -> &'static str {
        match self {
            FigureId::PriorShapes => "prior-shapes",
            FigureId::TighterLooser => "tighter-looser",
            FigureId::TightnessRatio => "tightness-ratio",
        }
    }

    fn min_size(self) -> usize {
        match self {
            FigureId::TightnessRatio => 4,
            _ => 2,
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureId {
    type Err = FigureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FigureId::ALL.into_iter().find(|id| id.name() == s).ok_or_else(|| FigureError::UnknownFigure(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FigurePoint {
    pub i: usize,
    pub curve: String,
    #[serde(with = "serde_rational")]
    pub value: Rational,
}

/// Rows ordered by curve, then by i.
pub fn emit_figure_data(figure: FigureId, n: usize) -> Result<Vec<FigurePoint>, FigureError> {
    if !n.is_multiple_of(2) || n < figure.min_size() {
        return Err(FigureError::BadSize { figure, n, min: figure.min_size() });
    }
    let half = rational(1, 2);
    let pmf_curves = |priors: Vec<GammaPrior>| {
        priors
            .into_iter()
            .flat_map(|prior| {
                let name = prior.label().to_string();
                prior.pmf().to_vec().into_iter().enumerate().map(move |(i, value)| FigurePoint { i, curve: name.clone(), value })
            })
            .collect::<Vec<_>>()
    };
    let points = match figure {
        FigureId::PriorShapes => pmf_curves(vec![
            GammaPrior::uniform(n).expect("n > 0").with_label("uniform"),
            GammaPrior::from_binomial(n, &half).expect("valid").with_label("binomial"),
            GammaPrior::from_degenerate(n, n / 2).expect("valid").with_label("degenerate"),
        ]),
        FigureId::TighterLooser => pmf_curves(vec![
            GammaPrior::from_beta_binomial(n, &int(2), &int(2)).expect("valid").with_label("beta-binomial(2,2)"),
            GammaPrior::from_binomial(n, &half).expect("valid").with_label("binomial"),
            GammaPrior::from_cmp_binomial(n, &half, &int(2)).expect("valid").with_label("cmp-binomial(nu=2)"),
        ]),
        FigureId::TightnessRatio => tightness_ratio_curves(n)?,
    };
    Ok(points)
}

fn tightness_ratio_curves(n: usize) -> Result<Vec<FigurePoint>, FigureError> {
    let indices = 1..n;
    let mut points: Vec<FigurePoint> = indices
        .clone()
        .map(|i| FigurePoint { i, curve: "binomial".into(), value: binomial_tightness_ratio(n, i) })
        .collect();
    let hypers = [
        (format!("hypergeometric({},{},{n})", 4 * n, 2 * n), GammaPrior::from_hypergeometric(4 * n, 2 * n, n)),
        (format!("hypergeometric({},{n},{n})", 2 * n), GammaPrior::from_hypergeometric(2 * n, n, n)),
    ];
    for (curve, prior) in hypers {
        let prior = prior.expect("valid hypergeometric");
        for i in indices.clone() {
            let value = match tightness_ratio(&prior, i).expect("index in range") {
                RatioValue::Finite(v) => v,
                _ => return Err(FigureError::DominanceViolated { curve, i }),
            };
            if value <= binomial_tightness_ratio(n, i) {
                return Err(FigureError::DominanceViolated { curve, i });
            }
            points.push(FigurePoint { i, curve: curve.clone(), value });
        }
    }
    Ok(points)
}

/// CSV with header `i,curve,value,exact`.
pub fn to_csv(points: &[FigurePoint]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(["i", "curve", "value", "exact"]).expect("in-memory write");
    for p in points {
        writer
            .write_record([p.i.to_string(), p.curve.clone(), to_decimal(&p.value, SIGNIFICANT_DIGITS), p.value.to_string()])
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}
