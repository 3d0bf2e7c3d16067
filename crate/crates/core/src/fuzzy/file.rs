//! JSON rulebase files.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::rules::{ConsequentPolicy, Rule, RuleBase};
use super::variable::{LinguisticVariable, TERM_COUNT};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariableSpec {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleEntry {
    #[serde(rename = "if")]
    pub antecedent: Vec<usize>,
    #[serde(rename = "then")]
    pub consequent: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleBaseFile {
    pub inputs: Vec<VariableSpec>,
    pub output: VariableSpec,
    pub policy: ConsequentPolicy,
    pub rules: Vec<RuleEntry>,
}

/// One problem found while validating a rulebase file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationIssue {
    /// 1-based line in the source text, when it could be located.
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl RuleBaseFile {
    pub fn from_rulebase(rb: &RuleBase) -> Self {
        let spec = |v: &LinguisticVariable| VariableSpec {
            name: v.name().to_string(),
            lo: v.domain().lo(),
            hi: v.domain().hi(),
        };
        Self {
            inputs: rb.inputs().iter().map(spec).collect(),
            output: spec(rb.output()),
            policy: rb.policy(),
            rules: rb
                .rules()
                .iter()
                .map(|r| RuleEntry {
                    antecedent: r.antecedent.clone(),
                    consequent: r.consequent,
                })
                .collect(),
        }
    }

    /// Pretty JSON with one rule per line.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n  \"inputs\": [\n");
        let inputs: Vec<String> = self
            .inputs
            .iter()
            .map(|s| format!("    {}", compact(s)))
            .collect();
        out.push_str(&inputs.join(",\n"));
        out.push_str("\n  ],\n");
        out.push_str(&format!("  \"output\": {},\n", compact(&self.output)));
        out.push_str(&format!("  \"policy\": {},\n", compact(&self.policy)));
        out.push_str("  \"rules\": [\n");
        let rules: Vec<String> = self
            .rules
            .iter()
            .map(|r| format!("    {}", compact(r)))
            .collect();
        out.push_str(&rules.join(",\n"));
        out.push_str("\n  ]\n}\n");
        out
    }

    /// Parses and validates `text`, collecting every issue found.
    pub fn parse_and_validate(text: &str) -> std::result::Result<Self, Vec<ValidationIssue>> {
        let file: RuleBaseFile = serde_json::from_str(text).map_err(|e| {
            vec![ValidationIssue {
                line: Some(e.line()),
                message: e.to_string(),
            }]
        })?;
        let issues = file.validate(Some(text));
        if issues.is_empty() {
            Ok(file)
        } else {
            Err(issues)
        }
    }

    /// Structural checks: domains, arity, term ranges, duplicate antecedents
    /// and, for the mean policy, that each consequent follows the policy.
    /// When `text` is the source the file was parsed from, rule issues carry
    /// line numbers.
    pub fn validate(&self, text: Option<&str>) -> Vec<ValidationIssue> {
        let rule_lines = text.map(rule_line_numbers).unwrap_or_default();
        let line_of = |i: usize| rule_lines.get(i).copied();
        let mut issues = Vec::new();

        if self.inputs.is_empty() {
            issues.push(ValidationIssue {
                line: None,
                message: "no inputs declared".into(),
            });
        }
        for spec in self.inputs.iter().chain(std::iter::once(&self.output)) {
            if !(spec.lo.is_finite() && spec.hi.is_finite() && spec.lo < spec.hi) {
                issues.push(ValidationIssue {
                    line: None,
                    message: format!(
                        "variable {:?} has an empty domain [{}, {}]",
                        spec.name, spec.lo, spec.hi
                    ),
                });
            }
        }
        if self.rules.is_empty() {
            issues.push(ValidationIssue {
                line: None,
                message: "no rules declared".into(),
            });
        }

        let arity = self.inputs.len();
        let mut first_seen: HashMap<&[usize], usize> = HashMap::new();
        for (i, rule) in self.rules.iter().enumerate() {
            let mut report = |message: String| {
                issues.push(ValidationIssue {
                    line: line_of(i),
                    message: format!("rule {}: {message}", i + 1),
                })
            };
            if rule.antecedent.len() != arity {
                report(format!(
                    "{} antecedent terms, expected {arity}",
                    rule.antecedent.len()
                ));
            }
            if let Some(bad) = rule.antecedent.iter().find(|&&t| t >= TERM_COUNT) {
                report(format!(
                    "antecedent term index {bad} outside 0..{}",
                    TERM_COUNT - 1
                ));
            }
            if rule.consequent >= TERM_COUNT {
                report(format!(
                    "consequent term index {} outside 0..{}",
                    rule.consequent,
                    TERM_COUNT - 1
                ));
            } else if self.policy == ConsequentPolicy::Mean
                && !rule.antecedent.is_empty()
                && rule.antecedent.iter().all(|&t| t < TERM_COUNT)
            {
                let expected = ConsequentPolicy::mean_consequent(&rule.antecedent);
                if expected != rule.consequent {
                    report(format!(
                        "consequent {} does not follow the mean policy (expected {expected})",
                        rule.consequent
                    ));
                }
            }
            if let Some(&first) = first_seen.get(rule.antecedent.as_slice()) {
                report(format!("duplicates the antecedent of rule {}", first + 1));
            } else {
                first_seen.insert(&rule.antecedent, i);
            }
        }
        issues
    }

    pub fn into_rulebase(self) -> Result<RuleBase> {
        if let Some(issue) = self.validate(None).into_iter().next() {
            return Err(Error::InvalidRuleBase(issue.message));
        }
        let var = |s: &VariableSpec| LinguisticVariable::new(s.name.clone(), s.lo, s.hi);
        let inputs = self.inputs.iter().map(var).collect::<Result<Vec<_>>>()?;
        let output = var(&self.output)?;
        let rules = self
            .rules
            .into_iter()
            .map(|r| Rule {
                antecedent: r.antecedent,
                consequent: r.consequent,
            })
            .collect();
        RuleBase::new(inputs, output, self.policy, rules)
    }
}

/// Line of each `"if"` key after the `"rules"` key, in order.
fn rule_line_numbers(text: &str) -> Vec<usize> {
    let mut lines = Vec::new();
    let mut in_rules = false;
    for (n, line) in text.lines().enumerate() {
        let mut rest = line;
        if !in_rules {
            match rest.find("\"rules\"") {
                Some(pos) => {
                    in_rules = true;
                    rest = &rest[pos + 7..];
                }
                None => continue,
            }
        }
        lines.extend(std::iter::repeat_n(n + 1, rest.matches("\"if\"").count()));
    }
    lines
}

fn compact<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}
