//! Evidence-based merchant trust.
//!
//! * [`opinion`]: certain-trust opinions built from positive and negative
//!   evidence, their AND/OR/NOT operators, and the trust percentage and
//!   behavioral probability derived from them.
//! * [`fuzzy`]: five-term Gaussian linguistic variables, generated rulebases
//!   and rule inference with centroid defuzzification.
//! * [`pipeline`]: the four topic modules and the final merchant module.
//! * [`store`]: the append-only evidence log that feeds the pipeline.
//!
//! The guide in `book/` walks through each part; its code listings are
//! compiled and run as doc-tests of this crate.

pub mod error;
pub mod fuzzy;
pub mod opinion;
pub mod pipeline;
pub mod store;

pub use error::{Error, Result};
pub use fuzzy::{LinguisticVariable, RuleBase, Term};
pub use opinion::{
    BehavioralProbability, Direction, EvidenceCount, Opinion, TrustParams, TrustPercent,
};
pub use pipeline::{
    compare_merchants, evaluate_merchant, Aggregation, MerchantInputs, ModuleName, Pipeline,
    PipelineConfig, TrustReport, VariableInput,
};
pub use store::{EvidenceStore, LogEntry};

// Guide chapters and the README, compiled as doc-tests so they cannot drift
// from the API.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/opinions.md")]
    mod opinions {}
    #[doc = include_str!("../../../book/src/operators.md")]
    mod operators {}
    #[doc = include_str!("../../../book/src/trust-metrics.md")]
    mod trust_metrics {}
    #[doc = include_str!("../../../book/src/fuzzy-inference.md")]
    mod fuzzy_inference {}
    #[doc = include_str!("../../../book/src/pipeline.md")]
    mod pipeline {}
    #[doc = include_str!("../../../book/src/evidence-store.md")]
    mod evidence_store {}
}
