use serde::{Deserialize, Serialize};

use super::rules::RuleBase;
use super::variable::{Domain, TERM_COUNT};
use crate::error::{Error, Result};

/// Number of evenly spaced samples used by the centroid.
pub const CENTROID_SAMPLES: usize = 1001;

/// Conjunction inside rule antecedents, also used as the implication.
///
/// With `Min` the crisp surface of a generated rulebase is not monotone:
/// raising one input can lower the output by almost a percentage point on a
/// `[0, 100]` domain. `Product` keeps it monotone.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TNorm {
    /// Minimum firing strength; consequents are clipped.
    Min,
    /// Product firing strength; consequents are scaled.
    #[default]
    Product,
}

impl TNorm {
    pub fn apply(self, a: f64, b: f64) -> f64 {
        match self {
            TNorm::Min => a.min(b),
            TNorm::Product => a * b,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyResult {
    pub crisp: f64,
    /// Activation of each rule, in rulebase order.
    pub firing_strengths: Vec<f64>,
}

/// Discretised centroid `Σ x·μ(x) / Σ μ(x)` over [`CENTROID_SAMPLES`] points.
pub fn defuzzify_centroid(domain: Domain, membership: impl Fn(f64) -> f64) -> Result<f64> {
    let (mut moment, mut mass) = (0.0, 0.0);
    for x in domain.linspace(CENTROID_SAMPLES) {
        let mu = membership(x);
        moment += x * mu;
        mass += mu;
    }
    if mass <= 0.0 || mass.is_nan() {
        return Err(Error::EmptyAggregate);
    }
    Ok(domain.clamp(moment / mass))
}

impl RuleBase {
    /// Inference with the default [`TNorm`] (product firing strengths,
    /// scaled consequents), max aggregation and centroid defuzzification.
    pub fn infer(&self, inputs: &[f64]) -> Result<FuzzyResult> {
        self.infer_with(inputs, TNorm::default())
    }

    pub fn infer_with(&self, inputs: &[f64], tnorm: TNorm) -> Result<FuzzyResult> {
        if inputs.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                got: inputs.len(),
            });
        }
        let degrees: Vec<[f64; TERM_COUNT]> = self
            .inputs()
            .iter()
            .zip(inputs)
            .map(|(var, &x)| var.fuzzify(x))
            .collect();

        let mut firing_strengths = Vec::with_capacity(self.rules().len());
        // Rules sharing a consequent only matter through their strongest member.
        let mut activation = [0.0f64; TERM_COUNT];
        let mut factors = Vec::with_capacity(self.arity());
        for rule in self.rules() {
            factors.clear();
            factors.extend(
                rule.antecedent
                    .iter()
                    .zip(&degrees)
                    .map(|(&term, d)| d[term]),
            );
            // Fixed factor order makes the product independent of input order.
            factors.sort_by(f64::total_cmp);
            let strength = factors
                .iter()
                .copied()
                .reduce(|a, b| tnorm.apply(a, b))
                .unwrap_or(0.0);
            firing_strengths.push(strength);
            let slot = &mut activation[rule.consequent];
            *slot = slot.max(strength);
        }

        let terms = self.output().terms();
        let crisp = defuzzify_centroid(self.output().domain(), |y| {
            terms
                .iter()
                .zip(activation)
                .map(|(mf, level)| tnorm.apply(level, mf.degree(y)))
                .fold(0.0, f64::max)
        })?;
        Ok(FuzzyResult {
            crisp,
            firing_strengths,
        })
    }
}
