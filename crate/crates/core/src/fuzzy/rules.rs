use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::variable::{LinguisticVariable, TERM_COUNT};
use crate::error::{Error, Result};

/// `IF x₁ is A₁ and … and xₙ is Aₙ THEN y is B`, with terms given by index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rule {
    pub antecedent: Vec<usize>,
    pub consequent: usize,
}

/// How the consequents of a rulebase were chosen.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConsequentPolicy {
    /// Round-half-up of the mean antecedent index.
    #[default]
    Mean,
    /// Consequents supplied by hand.
    Explicit,
}

impl ConsequentPolicy {
    /// Consequent index for `antecedent` under the mean policy.
    pub fn mean_consequent(antecedent: &[usize]) -> usize {
        let n = antecedent.len();
        let sum: usize = antecedent.iter().sum();
        // floor(sum / n + 1/2) in integers
        (2 * sum + n) / (2 * n)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RuleBase {
    inputs: Vec<LinguisticVariable>,
    output: LinguisticVariable,
    policy: ConsequentPolicy,
    rules: Vec<Rule>,
}

impl RuleBase {
    /// Full Cartesian rulebase: one rule per antecedent combination, `5ⁿ` in
    /// total, consequents by the mean policy. The first input varies fastest.
    pub fn generate(inputs: Vec<LinguisticVariable>, output: LinguisticVariable) -> Result<Self> {
        if inputs.is_empty() {
            return Err(Error::InvalidRuleBase(
                "a rulebase needs at least one input".into(),
            ));
        }
        let n = inputs.len();
        let total = TERM_COUNT.checked_pow(n as u32).ok_or_else(|| {
            Error::InvalidRuleBase(format!("{n} inputs give too many rule combinations"))
        })?;
        let mut rules = Vec::with_capacity(total);
        let mut antecedent = vec![0usize; n];
        for _ in 0..total {
            rules.push(Rule {
                consequent: ConsequentPolicy::mean_consequent(&antecedent),
                antecedent: antecedent.clone(),
            });
            for digit in antecedent.iter_mut() {
                *digit += 1;
                if *digit < TERM_COUNT {
                    break;
                }
                *digit = 0;
            }
        }
        Ok(Self {
            inputs,
            output,
            policy: ConsequentPolicy::Mean,
            rules,
        })
    }

    /// Generated rulebase over `arity` identical inputs on `[lo, hi]`.
    pub fn generate_uniform(arity: usize, lo: f64, hi: f64) -> Result<Self> {
        let inputs = (1..=arity)
            .map(|i| LinguisticVariable::new(format!("x{i}"), lo, hi))
            .collect::<Result<Vec<_>>>()?;
        Self::generate(inputs, LinguisticVariable::new("y", lo, hi)?)
    }

    /// Rulebase from explicit rules, checked for arity, index range and
    /// duplicate antecedents.
    pub fn new(
        inputs: Vec<LinguisticVariable>,
        output: LinguisticVariable,
        policy: ConsequentPolicy,
        rules: Vec<Rule>,
    ) -> Result<Self> {
        if inputs.is_empty() {
            return Err(Error::InvalidRuleBase(
                "a rulebase needs at least one input".into(),
            ));
        }
        if rules.is_empty() {
            return Err(Error::InvalidRuleBase(
                "a rulebase needs at least one rule".into(),
            ));
        }
        let mut seen = HashSet::with_capacity(rules.len());
        for (i, rule) in rules.iter().enumerate() {
            if rule.antecedent.len() != inputs.len() {
                return Err(Error::InvalidRuleBase(format!(
                    "rule {} has {} antecedent terms, expected {}",
                    i + 1,
                    rule.antecedent.len(),
                    inputs.len()
                )));
            }
            if let Some(&bad) = rule.antecedent.iter().find(|&&t| t >= TERM_COUNT) {
                return Err(Error::InvalidRuleBase(format!(
                    "rule {} uses antecedent term index {bad}",
                    i + 1
                )));
            }
            if rule.consequent >= TERM_COUNT {
                return Err(Error::InvalidRuleBase(format!(
                    "rule {} uses consequent term index {}",
                    i + 1,
                    rule.consequent
                )));
            }
            if !seen.insert(rule.antecedent.as_slice()) {
                return Err(Error::InvalidRuleBase(format!(
                    "rule {} repeats antecedent {:?}",
                    i + 1,
                    rule.antecedent
                )));
            }
        }
        Ok(Self {
            inputs,
            output,
            policy,
            rules,
        })
    }

    pub fn inputs(&self) -> &[LinguisticVariable] {
        &self.inputs
    }

    pub fn output(&self) -> &LinguisticVariable {
        &self.output
    }

    pub fn policy(&self) -> ConsequentPolicy {
        self.policy
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    pub fn input_index(&self, name: &str) -> Option<usize> {
        self.inputs.iter().position(|v| v.name() == name)
    }

    pub fn find_rule(&self, antecedent: &[usize]) -> Option<&Rule> {
        self.rules.iter().find(|r| r.antecedent == antecedent)
    }
}
