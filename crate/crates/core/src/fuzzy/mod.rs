//! Five-term Gaussian linguistic variables with Mamdani inference.

mod file;
mod inference;
mod membership;
mod rules;
mod surface;
mod variable;

pub use file::{RuleBaseFile, RuleEntry, ValidationIssue, VariableSpec};
pub use inference::{defuzzify_centroid, FuzzyResult, TNorm, CENTROID_SAMPLES};
pub use membership::{gaussian_mf, MembershipFunction};
pub use rules::{ConsequentPolicy, Rule, RuleBase};
pub use surface::{surface_grid, surface_grid_with, Axis, MonotonicityViolation, SurfaceGrid};
pub use variable::{Domain, LinguisticVariable, Term, TERM_COUNT};
