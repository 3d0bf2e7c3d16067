//! Merchant trust pipeline.
//!
//! Twelve per-variable trust percentages feed four topic modules (Existence,
//! Affiliation, Fulfillment, Policy), whose outputs feed the final Merchant
//! Trust module. Each stage aggregates either by arithmetic mean or by Mamdani
//! inference over a generated rulebase on `[0, 100]`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::{Error, Result};
use crate::fuzzy::{RuleBase, TNorm, Term};
use crate::opinion::{
    average_rating, behavioral_probability, certainty, scale_rating, trust_percent,
    BehavioralProbability, EvidenceCount, NotMode, TrustParams, TrustPercent,
};

/// Variables per topic module.
pub const MODULE_ARITY: usize = 3;
/// Topic modules feeding the merchant module.
pub const MODULE_COUNT: usize = 4;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aggregation {
    #[default]
    Average,
    Fuzzy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ModuleName {
    Existence,
    Affiliation,
    Fulfillment,
    Policy,
}

impl ModuleName {
    pub const ALL: [ModuleName; MODULE_COUNT] = [
        ModuleName::Existence,
        ModuleName::Affiliation,
        ModuleName::Fulfillment,
        ModuleName::Policy,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModuleName::Existence => "Existence",
            ModuleName::Affiliation => "Affiliation",
            ModuleName::Fulfillment => "Fulfillment",
            ModuleName::Policy => "Policy",
        }
    }
}

impl fmt::Display for ModuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModuleName {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|m| m.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown module {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub name: ModuleName,
    pub variables: Vec<String>,
}

impl ModuleSpec {
    fn new(name: ModuleName, variables: [&str; MODULE_ARITY]) -> Self {
        Self {
            name,
            variables: variables.iter().map(|v| v.to_string()).collect(),
        }
    }
}

/// Canonical form used to match variable names: lowercase, with `_`, `-` and
/// runs of whitespace folded to single spaces.
pub fn normalize_name(name: &str) -> String {
    name.split(|c: char| c.is_whitespace() || c == '_' || c == '-')
        .filter(|part| !part.is_empty())
        .map(str::to_lowercase)
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PipelineConfig {
    #[serde(flatten)]
    pub params: TrustParams,
    pub aggregation: Aggregation,
    pub class_bounds: [f64; 4],
    pub not_mode: NotMode,
    /// Conjunction and implication for fuzzy aggregation.
    pub tnorm: TNorm,
    pub modules: Vec<ModuleSpec>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            params: TrustParams::default(),
            aggregation: Aggregation::Average,
            class_bounds: [20.0, 40.0, 60.0, 80.0],
            not_mode: NotMode::PreserveCertainty,
            tnorm: TNorm::default(),
            modules: vec![
                ModuleSpec::new(
                    ModuleName::Existence,
                    [
                        "Physical Existence",
                        "People Existence",
                        "Mandatory Registration",
                    ],
                ),
                ModuleSpec::new(
                    ModuleName::Affiliation,
                    ["Third Party Endorsement", "Membership", "Portal"],
                ),
                ModuleSpec::new(
                    ModuleName::Fulfillment,
                    ["Delivery", "Payment Methods", "Community Comment"],
                ),
                ModuleSpec::new(
                    ModuleName::Policy,
                    ["Customer Satisfaction", "Privacy", "Warranty"],
                ),
            ],
        }
    }
}

impl PipelineConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: PipelineConfig =
            serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configuration serializes")
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if self.modules.len() != MODULE_COUNT {
            return Err(Error::InvalidConfig(format!(
                "expected {MODULE_COUNT} modules, found {}",
                self.modules.len()
            )));
        }
        for name in ModuleName::ALL {
            if !self.modules.iter().any(|m| m.name == name) {
                return Err(Error::InvalidConfig(format!(
                    "module {name} is not configured"
                )));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for module in &self.modules {
            if module.variables.len() != MODULE_ARITY {
                return Err(Error::InvalidConfig(format!(
                    "module {} has {} variables, expected {MODULE_ARITY}",
                    module.name,
                    module.variables.len()
                )));
            }
            for var in &module.variables {
                if !seen.insert(normalize_name(var)) {
                    return Err(Error::InvalidConfig(format!(
                        "variable {var:?} is configured twice"
                    )));
                }
            }
        }
        let b = self.class_bounds;
        if !(b[0] > 0.0 && b[3] < 100.0 && b.windows(2).all(|w| w[0] < w[1])) {
            return Err(Error::InvalidConfig(format!(
                "class bounds {b:?} must be strictly ascending within (0, 100)"
            )));
        }
        Ok(())
    }

    /// All configured variable names, module by module.
    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.modules
            .iter()
            .flat_map(|m| m.variables.iter().map(String::as_str))
    }

    /// Resolves `name` to its configured spelling, ignoring case and
    /// separators.
    pub fn canonical_variable(&self, name: &str) -> Option<&str> {
        let key = normalize_name(name);
        self.variables().find(|v| normalize_name(v) == key)
    }

    pub fn module(&self, name: ModuleName) -> Option<&ModuleSpec> {
        self.modules.iter().find(|m| m.name == name)
    }
}

/// Where a variable's trust comes from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VariableInput {
    Evidence(EvidenceCount),
    /// Certainty and a rating already on the `[0, scale]` scale.
    Direct {
        c: f64,
        t_scaled: f64,
    },
}

pub fn variable_trust(input: VariableInput, params: &TrustParams) -> Result<TrustPercent> {
    match input {
        VariableInput::Evidence(evidence) => trust_percent(
            certainty(evidence, params)?,
            scale_rating(average_rating(evidence), params),
            params,
        ),
        VariableInput::Direct { c, t_scaled } => trust_percent(c, t_scaled, params),
    }
}

fn mean(trusts: &[TrustPercent]) -> TrustPercent {
    let sum: f64 = trusts.iter().map(|t| t.value()).sum();
    clamp_percent(sum / trusts.len() as f64)
}

fn clamp_percent(value: f64) -> TrustPercent {
    TrustPercent::new(value.clamp(0.0, 100.0)).expect("clamped into range")
}

pub fn module_trust_average(trusts: &[TrustPercent; MODULE_ARITY]) -> TrustPercent {
    mean(trusts)
}

pub fn module_trust_fuzzy(
    trusts: &[TrustPercent; MODULE_ARITY],
    rb: &RuleBase,
) -> Result<TrustPercent> {
    let xs = trusts.map(TrustPercent::value);
    Ok(clamp_percent(rb.infer(&xs)?.crisp))
}

/// Final merchant trust from the four module trusts.
pub fn merchant_trust(
    module_trusts: &[TrustPercent; MODULE_COUNT],
    cfg: &PipelineConfig,
) -> Result<TrustPercent> {
    match cfg.aggregation {
        Aggregation::Average => Ok(mean(module_trusts)),
        Aggregation::Fuzzy => {
            let rb = RuleBase::generate_uniform(MODULE_COUNT, 0.0, 100.0)?;
            let xs = module_trusts.map(TrustPercent::value);
            Ok(clamp_percent(rb.infer_with(&xs, cfg.tnorm)?.crisp))
        }
    }
}

/// Class by half-open bands: `[0, b₀)`, `[b₀, b₁)`, …, `[b₃, 100]`.
pub fn classify_trust(trust: TrustPercent, cfg: &PipelineConfig) -> Term {
    let band = cfg
        .class_bounds
        .iter()
        .filter(|&&b| trust.value() >= b)
        .count();
    Term::from_index(band).expect("four bounds give five bands")
}

/// Everything needed to evaluate one merchant.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MerchantInputs {
    pub variables: IndexMap<String, VariableInput>,
    /// Module trusts to use in place of the aggregated variable trusts.
    pub module_overrides: IndexMap<ModuleName, TrustPercent>,
}

impl MerchantInputs {
    pub fn with_variable(mut self, name: impl Into<String>, input: VariableInput) -> Self {
        self.variables.insert(name.into(), input);
        self
    }

    pub fn with_module_override(mut self, module: ModuleName, trust: TrustPercent) -> Self {
        self.module_overrides.insert(module, trust);
        self
    }

    fn lookup(&self, variable: &str) -> Option<VariableInput> {
        let key = normalize_name(variable);
        self.variables
            .iter()
            .find(|(name, _)| normalize_name(name) == key)
            .map(|(_, input)| *input)
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct TrustReport {
    pub merchant: String,
    pub variable_trusts: IndexMap<String, TrustPercent>,
    pub module_trusts: IndexMap<ModuleName, TrustPercent>,
    pub merchant_trust: TrustPercent,
    pub behavioral: BehavioralProbability,
    pub trust_class: Term,
    /// Modules whose trust was supplied rather than aggregated.
    #[serde(default)]
    pub pinned_modules: Vec<ModuleName>,
}

/// Decimal places of every percentage in exported reports.
pub const REPORT_DECIMALS: usize = 4;

fn fixed(value: f64) -> Box<RawValue> {
    RawValue::from_string(format!("{value:.REPORT_DECIMALS$}"))
        .expect("formatted float is valid JSON")
}

fn round_fixed(value: f64) -> f64 {
    format!("{value:.REPORT_DECIMALS$}")
        .parse()
        .expect("formatted float parses")
}

impl Serialize for TrustReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Behavioral {
            value: Box<RawValue>,
            direction: crate::opinion::Direction,
        }
        #[derive(Serialize)]
        struct Export<'a> {
            merchant: &'a str,
            variable_trusts: IndexMap<&'a str, Box<RawValue>>,
            module_trusts: IndexMap<ModuleName, Box<RawValue>>,
            merchant_trust: Box<RawValue>,
            behavioral: Behavioral,
            trust_class: Term,
            #[serde(skip_serializing_if = "<[_]>::is_empty")]
            pinned_modules: &'a [ModuleName],
        }
        Export {
            merchant: &self.merchant,
            variable_trusts: self
                .variable_trusts
                .iter()
                .map(|(k, v)| (k.as_str(), fixed(v.value())))
                .collect(),
            module_trusts: self
                .module_trusts
                .iter()
                .map(|(k, v)| (*k, fixed(v.value())))
                .collect(),
            merchant_trust: fixed(self.merchant_trust.value()),
            behavioral: Behavioral {
                value: fixed(self.behavioral.value),
                direction: self.behavioral.direction,
            },
            trust_class: self.trust_class,
            pinned_modules: &self.pinned_modules,
        }
        .serialize(serializer)
    }
}

impl TrustReport {
    /// Pretty JSON with every percentage at [`REPORT_DECIMALS`] places.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// This report as it reads back from its JSON export.
    pub fn rounded(&self) -> Self {
        let pct = |t: &TrustPercent| {
            TrustPercent::new(round_fixed(t.value())).expect("rounding stays in range")
        };
        Self {
            merchant: self.merchant.clone(),
            variable_trusts: self
                .variable_trusts
                .iter()
                .map(|(k, v)| (k.clone(), pct(v)))
                .collect(),
            module_trusts: self
                .module_trusts
                .iter()
                .map(|(k, v)| (*k, pct(v)))
                .collect(),
            merchant_trust: pct(&self.merchant_trust),
            behavioral: BehavioralProbability {
                value: round_fixed(self.behavioral.value),
                direction: self.behavioral.direction,
            },
            trust_class: self.trust_class,
            pinned_modules: self.pinned_modules.clone(),
        }
    }
}

/// Configuration plus the rulebases used under fuzzy aggregation.
#[derive(Debug, Clone)]
pub struct Pipeline {
    config: PipelineConfig,
    module_rules: RuleBase,
    merchant_rules: RuleBase,
}

impl Pipeline {
    /// Pipeline with generated rulebases over `[0, 100]`.
    pub fn new(config: PipelineConfig) -> Result<Self> {
        let module_rules = RuleBase::generate_uniform(MODULE_ARITY, 0.0, 100.0)?;
        let merchant_rules = RuleBase::generate_uniform(MODULE_COUNT, 0.0, 100.0)?;
        Self::with_rulebases(config, module_rules, merchant_rules)
    }

    pub fn with_rulebases(
        config: PipelineConfig,
        module_rules: RuleBase,
        merchant_rules: RuleBase,
    ) -> Result<Self> {
        config.validate()?;
        if module_rules.arity() != MODULE_ARITY {
            return Err(Error::ArityMismatch {
                expected: MODULE_ARITY,
                got: module_rules.arity(),
            });
        }
        if merchant_rules.arity() != MODULE_COUNT {
            return Err(Error::ArityMismatch {
                expected: MODULE_COUNT,
                got: merchant_rules.arity(),
            });
        }
        Ok(Self {
            config,
            module_rules,
            merchant_rules,
        })
    }

    pub fn config(&self) -> &PipelineConfig {
        &self.config
    }

    pub fn module_rules(&self) -> &RuleBase {
        &self.module_rules
    }

    pub fn merchant_rules(&self) -> &RuleBase {
        &self.merchant_rules
    }

    pub fn module_trust(&self, trusts: &[TrustPercent; MODULE_ARITY]) -> Result<TrustPercent> {
        match self.config.aggregation {
            Aggregation::Average => Ok(module_trust_average(trusts)),
            Aggregation::Fuzzy => {
                let xs = trusts.map(TrustPercent::value);
                Ok(clamp_percent(
                    self.module_rules.infer_with(&xs, self.config.tnorm)?.crisp,
                ))
            }
        }
    }

    pub fn merchant_trust(&self, trusts: &[TrustPercent; MODULE_COUNT]) -> Result<TrustPercent> {
        match self.config.aggregation {
            Aggregation::Average => Ok(mean(trusts)),
            Aggregation::Fuzzy => Ok(clamp_percent(
                self.merchant_rules
                    .infer_with(&trusts.map(TrustPercent::value), self.config.tnorm)?
                    .crisp,
            )),
        }
    }

    /// Full report for one merchant. Every configured variable must have an
    /// input; the error lists all that do not.
    pub fn evaluate(&self, merchant: &str, inputs: &MerchantInputs) -> Result<TrustReport> {
        let cfg = &self.config;
        let missing: Vec<String> = cfg
            .variables()
            .filter(|v| inputs.lookup(v).is_none())
            .map(str::to_string)
            .collect();
        if !missing.is_empty() {
            return Err(Error::MissingVariable(missing));
        }

        let mut variable_trusts = IndexMap::new();
        let mut module_trusts = IndexMap::new();
        let mut pinned_modules = Vec::new();
        for name in ModuleName::ALL {
            let spec = cfg
                .module(name)
                .expect("validated configuration has every module");
            let mut trusts = [TrustPercent::ZERO; MODULE_ARITY];
            for (slot, var) in trusts.iter_mut().zip(&spec.variables) {
                let input = inputs.lookup(var).expect("checked above");
                *slot = variable_trust(input, &cfg.params)?;
                variable_trusts.insert(var.clone(), *slot);
            }
            let trust = match inputs.module_overrides.get(&name) {
                Some(&pinned) => {
                    pinned_modules.push(name);
                    pinned
                }
                None => self.module_trust(&trusts)?,
            };
            module_trusts.insert(name, trust);
        }

        let modules: [TrustPercent; MODULE_COUNT] = ModuleName::ALL.map(|m| module_trusts[&m]);
        let merchant_trust = self.merchant_trust(&modules)?;
        Ok(TrustReport {
            merchant: merchant.to_string(),
            variable_trusts,
            module_trusts,
            merchant_trust,
            behavioral: behavioral_probability(merchant_trust, &cfg.params)?,
            trust_class: classify_trust(merchant_trust, cfg),
            pinned_modules,
        })
    }
}

/// Convenience wrapper building a [`Pipeline`] for a single evaluation.
pub fn evaluate_merchant(
    merchant: &str,
    inputs: &MerchantInputs,
    cfg: &PipelineConfig,
) -> Result<TrustReport> {
    Pipeline::new(cfg.clone())?.evaluate(merchant, inputs)
}

fn rank(a: &TrustReport, b: &TrustReport) -> Ordering {
    b.merchant_trust
        .value()
        .total_cmp(&a.merchant_trust.value())
        .then_with(|| b.behavioral.value.total_cmp(&a.behavioral.value))
        .then_with(|| a.merchant.cmp(&b.merchant))
}

/// Orders reports by descending merchant trust, then descending behavioral
/// probability, then merchant identifier.
pub fn compare_merchants(mut reports: Vec<TrustReport>) -> Vec<TrustReport> {
    reports.sort_by(rank);
    reports
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pct(v: f64) -> TrustPercent {
        TrustPercent::new(v).unwrap()
    }

    #[test]
    fn variable_trust_from_direct_pairs() {
        let p = TrustParams::default();
        let t = |c, t_scaled| {
            variable_trust(VariableInput::Direct { c, t_scaled }, &p)
                .unwrap()
                .value()
        };
        assert!((t(0.3, 4.0) - 24.0).abs() < 1e-9);
        assert!((t(0.9, 4.8) - 86.4).abs() < 1e-9);
        assert!((t(0.46, 4.45) - 41.0).abs() < 0.5);
    }

    #[test]
    fn variable_trust_from_evidence() {
        let p = TrustParams {
            max_evidence: 7,
            ..TrustParams::default()
        };
        let t = variable_trust(VariableInput::Evidence(EvidenceCount::new(5, 2)), &p).unwrap();
        assert!((t.value() - 500.0 / 7.0).abs() < 1e-9);
        let empty = variable_trust(VariableInput::Evidence(EvidenceCount::default()), &p).unwrap();
        assert_eq!(empty.value(), 0.0);
        assert!(variable_trust(VariableInput::Evidence(EvidenceCount::new(9, 0)), &p).is_err());
    }

    #[test]
    fn module_average_examples() {
        assert!(
            (module_trust_average(&[pct(42.0), pct(24.0), pct(63.0)]).value() - 43.0).abs() < 1e-9
        );
        assert!(
            (module_trust_average(&[pct(38.0), pct(64.6), pct(68.4)]).value() - 57.0).abs() < 1e-9
        );
        assert_eq!(module_trust_average(&[pct(37.5); 3]).value(), 37.5);
    }

    #[test]
    fn module_fuzzy_examples() {
        let rb = RuleBase::generate_uniform(3, 0.0, 100.0).unwrap();
        let mid = module_trust_fuzzy(&[pct(50.0); 3], &rb).unwrap().value();
        assert!((mid - 50.0).abs() <= 0.5);
        let low = module_trust_fuzzy(&[pct(0.0); 3], &rb).unwrap().value();
        assert!((0.0..25.0).contains(&low));
        let a = module_trust_fuzzy(&[pct(42.0), pct(24.0), pct(63.0)], &rb).unwrap();
        let b = module_trust_fuzzy(&[pct(63.0), pct(42.0), pct(24.0)], &rb).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn merchant_average_examples() {
        let cfg = PipelineConfig::default();
        let a = merchant_trust(&[pct(43.0), pct(70.0), pct(59.5), pct(61.0)], &cfg).unwrap();
        assert_eq!(a.value(), 58.375);
        let b = merchant_trust(&[pct(57.0), pct(39.0), pct(50.5), pct(42.55)], &cfg).unwrap();
        assert!((b.value() - 47.26).abs() < 0.005);
        assert_eq!(merchant_trust(&[pct(12.5); 4], &cfg).unwrap().value(), 12.5);
    }

    #[test]
    fn merchant_fuzzy_stays_in_range() {
        let cfg = PipelineConfig {
            aggregation: Aggregation::Fuzzy,
            ..PipelineConfig::default()
        };
        let t = merchant_trust(&[pct(43.0), pct(70.0), pct(59.5), pct(61.0)], &cfg).unwrap();
        assert!((43.0..=70.0).contains(&t.value()), "{t}");
    }

    #[test]
    fn classification_bands() {
        let cfg = PipelineConfig::default();
        assert_eq!(classify_trust(pct(58.375), &cfg), Term::Medium);
        assert_eq!(classify_trust(pct(0.0), &cfg), Term::VeryLow);
        assert_eq!(classify_trust(pct(80.0), &cfg), Term::VeryHigh);
        assert_eq!(classify_trust(pct(79.999), &cfg), Term::High);
        assert_eq!(classify_trust(pct(100.0), &cfg), Term::VeryHigh);
        assert_eq!(classify_trust(pct(20.0), &cfg), Term::Low);
    }

    #[test]
    fn config_validation() {
        assert!(PipelineConfig::default().validate().is_ok());
        let mut cfg = PipelineConfig::default();
        cfg.modules.pop();
        assert!(cfg.validate().is_err());
        let cfg = PipelineConfig {
            class_bounds: [20.0, 60.0, 40.0, 80.0],
            ..PipelineConfig::default()
        };
        assert!(cfg.validate().is_err());
        let mut cfg = PipelineConfig::default();
        cfg.modules[1].variables[0] = "physical_existence".into();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn config_json_uses_flat_parameter_names() {
        let json = PipelineConfig::default().to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        for key in [
            "scale",
            "N",
            "w",
            "f",
            "aggregation",
            "class_bounds",
            "not_mode",
            "modules",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(
            PipelineConfig::from_json(&json).unwrap(),
            PipelineConfig::default()
        );
        let partial = PipelineConfig::from_json(r#"{"N": 7, "aggregation": "fuzzy"}"#).unwrap();
        assert_eq!(partial.params.max_evidence, 7);
        assert_eq!(partial.aggregation, Aggregation::Fuzzy);
        assert_eq!(partial.modules.len(), 4);
    }

    #[test]
    fn variable_names_normalize() {
        let cfg = PipelineConfig::default();
        assert_eq!(
            cfg.canonical_variable("physical_existence"),
            Some("Physical Existence")
        );
        assert_eq!(
            cfg.canonical_variable("  PAYMENT   methods "),
            Some("Payment Methods")
        );
        assert_eq!(cfg.canonical_variable("Bogus"), None);
    }

    #[test]
    fn missing_variables_are_all_named() {
        let inputs = MerchantInputs::default().with_variable(
            "delivery",
            VariableInput::Direct {
                c: 0.5,
                t_scaled: 4.0,
            },
        );
        let err = evaluate_merchant("A", &inputs, &PipelineConfig::default()).unwrap_err();
        match err {
            Error::MissingVariable(names) => {
                assert_eq!(names.len(), 11);
                assert!(!names.contains(&"Delivery".to_string()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_evidence_cascades_to_zero() {
        let cfg = PipelineConfig::default();
        let inputs = cfg.variables().fold(MerchantInputs::default(), |acc, v| {
            acc.with_variable(v, VariableInput::Evidence(EvidenceCount::default()))
        });
        let report = evaluate_merchant("empty", &inputs, &cfg).unwrap();
        assert!(report.variable_trusts.values().all(|t| t.value() == 0.0));
        assert_eq!(report.merchant_trust.value(), 0.0);
        assert_eq!(report.trust_class, Term::VeryLow);
        assert_eq!(report.behavioral.value, -100.0);
    }

    fn report(merchant: &str, trust: f64, behavioral: f64) -> TrustReport {
        TrustReport {
            merchant: merchant.into(),
            variable_trusts: IndexMap::new(),
            module_trusts: IndexMap::new(),
            merchant_trust: pct(trust),
            behavioral: BehavioralProbability::new(behavioral),
            trust_class: Term::Medium,
            pinned_modules: Vec::new(),
        }
    }

    #[test]
    fn comparison_order() {
        let sorted = compare_merchants(vec![report("B", 47.26, -5.48), report("A", 58.375, 16.75)]);
        assert_eq!(sorted[0].merchant, "A");
        let sorted = compare_merchants(vec![report("X", 50.0, -5.0), report("Y", 50.0, 5.0)]);
        assert_eq!(sorted[0].merchant, "Y");
        let sorted = compare_merchants(vec![report("b", 50.0, 0.0), report("a", 50.0, 0.0)]);
        assert_eq!(sorted[0].merchant, "a");
    }

    #[test]
    fn report_json_uses_four_decimals_and_round_trips() {
        let mut r = report("A", 58.375, 16.75);
        r.variable_trusts
            .insert("Delivery".into(), pct(100.0 / 3.0));
        r.module_trusts.insert(ModuleName::Existence, pct(43.0));
        let json = r.to_json();
        assert!(json.contains("\"merchant_trust\": 58.3750"), "{json}");
        assert!(json.contains("\"Delivery\": 33.3333"));
        assert!(json.contains("\"Existence\": 43.0000"));
        assert!(!json.contains("pinned_modules"));
        assert_eq!(TrustReport::from_json(&json).unwrap(), r.rounded());
    }
}
