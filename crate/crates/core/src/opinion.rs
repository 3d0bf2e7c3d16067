//! Certain-trust opinion algebra.
//!
//! An [`Opinion`] summarises evidence about a proposition as an average
//! rating `t`, a certainty `c` and an initial expectation `f`. Evidence counts
//! map onto `t` and `c`; opinions combine under AND, OR and NOT; and the
//! scaled rating feeds the trust percentage and behavioral probability used by
//! the merchant pipeline.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default tolerance for operator denominators.
pub const DEFAULT_EPSILON: f64 = 1e-9;

/// Computed certainties at or below this are treated as zero by the operators.
const CERTAINTY_FLOOR: f64 = 1e-12;

/// Positive and negative evidence counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EvidenceCount {
    #[serde(rename = "r")]
    pub positive: u64,
    #[serde(rename = "s")]
    pub negative: u64,
}

impl EvidenceCount {
    pub const fn new(positive: u64, negative: u64) -> Self {
        Self { positive, negative }
    }

    pub const fn total(&self) -> u64 {
        self.positive + self.negative
    }

    pub const fn is_empty(&self) -> bool {
        self.total() == 0
    }
}

/// Parameters shared by the evidence mapping and the trust metrics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrustParams {
    /// Maximum amount of evidence considered (`N`).
    #[serde(rename = "N")]
    pub max_evidence: u64,
    /// Dispositional trust weight (`w`).
    #[serde(rename = "w")]
    pub dispositional_weight: f64,
    /// Initial expectation (`f`), also the base for behavioral probability.
    #[serde(rename = "f")]
    pub initial_expectation: f64,
    /// Upper end of the rating scale.
    pub scale: f64,
}

impl Default for TrustParams {
    fn default() -> Self {
        Self {
            max_evidence: 100,
            dispositional_weight: 1.0,
            initial_expectation: 0.5,
            scale: 5.0,
        }
    }
}

impl TrustParams {
    pub fn validate(&self) -> Result<()> {
        if self.max_evidence < 1 {
            return Err(Error::InvalidParameter {
                name: "N",
                value: self.max_evidence as f64,
                reason: "must be at least 1",
            });
        }
        if !(self.dispositional_weight > 0.0 && self.dispositional_weight.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "w",
                value: self.dispositional_weight,
                reason: "must be positive and finite",
            });
        }
        if !(0.0..=1.0).contains(&self.initial_expectation) {
            return Err(Error::InvalidParameter {
                name: "f",
                value: self.initial_expectation,
                reason: "must lie in [0, 1]",
            });
        }
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "scale",
                value: self.scale,
                reason: "must be positive and finite",
            });
        }
        Ok(())
    }
}

/// How NOT treats certainty.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NotMode {
    /// Keep `c`; satisfies `E(¬A) = 1 − E(A)` for every opinion.
    #[default]
    PreserveCertainty,
    /// Replace `c` by `1 − c`. Kept for comparison experiments only.
    ComplementCertainty,
}

/// Average rating: `r / (r + s)`, or 0.5 without evidence.
pub fn average_rating(evidence: EvidenceCount) -> f64 {
    if evidence.is_empty() {
        0.5
    } else {
        evidence.positive as f64 / evidence.total() as f64
    }
}

/// Certainty of the average rating given the evidence volume.
///
/// `c = N·(r+s) / (2·w·(N − (r+s)) + N·(r+s))`. Evidence beyond `N` is
/// rejected rather than clamped.
pub fn certainty(evidence: EvidenceCount, params: &TrustParams) -> Result<f64> {
    let total = evidence.total();
    if total > params.max_evidence {
        return Err(Error::EvidenceExceedsCap {
            total,
            cap: params.max_evidence,
        });
    }
    if total == 0 {
        return Ok(0.0);
    }
    let n = params.max_evidence as f64;
    let seen = total as f64;
    let weighted = n * seen;
    Ok(weighted / (2.0 * params.dispositional_weight * (n - seen) + weighted))
}

/// Rescales a unit rating onto `[0, scale]`.
pub fn scale_rating(rating: f64, params: &TrustParams) -> f64 {
    rating * params.scale
}

/// Trust percentage `(c · t' / scale) · 100`.
pub fn trust_percent(
    certainty: f64,
    scaled_rating: f64,
    params: &TrustParams,
) -> Result<TrustPercent> {
    if !(0.0..=1.0).contains(&certainty) {
        return Err(Error::InvalidParameter {
            name: "c",
            value: certainty,
            reason: "must lie in [0, 1]",
        });
    }
    if !(0.0..=params.scale).contains(&scaled_rating) {
        return Err(Error::InvalidParameter {
            name: "t_scaled",
            value: scaled_rating,
            reason: "must lie in [0, scale]",
        });
    }
    TrustPercent::new(certainty * scaled_rating / params.scale * 100.0)
}

/// Relative deviation of trust from the initial expectation, in percent.
///
/// Trust is normalised to `[0, 1]` before it is compared with `f`.
pub fn behavioral_probability(
    trust: TrustPercent,
    params: &TrustParams,
) -> Result<BehavioralProbability> {
    let base = params.initial_expectation;
    if base == 0.0 {
        return Err(Error::ZeroBase);
    }
    Ok(BehavioralProbability::new(
        (trust.fraction() - base) / base * 100.0,
    ))
}

/// A trust score in percent, `0 ≤ value ≤ 100`.
#[derive(Debug, Clone, Copy, Default, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct TrustPercent(f64);

impl TrustPercent {
    pub const ZERO: TrustPercent = TrustPercent(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=100.0).contains(&value) {
            Ok(Self(value))
        } else {
            Err(Error::InvalidParameter {
                name: "trust",
                value,
                reason: "must lie in [0, 100]",
            })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// The score on `[0, 1]`.
    pub fn fraction(self) -> f64 {
        self.0 / 100.0
    }
}

impl TryFrom<f64> for TrustPercent {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

impl From<TrustPercent> for f64 {
    fn from(value: TrustPercent) -> f64 {
        value.0
    }
}

impl fmt::Display for TrustPercent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.4}%", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    BelowBase,
    Balanced,
    AboveBase,
}

/// Signed deviation from the base expectation, in percent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BehavioralProbability {
    pub value: f64,
    pub direction: Direction,
}

impl BehavioralProbability {
    pub fn new(value: f64) -> Self {
        let direction = if value > 0.0 {
            Direction::AboveBase
        } else if value < 0.0 {
            Direction::BelowBase
        } else {
            Direction::Balanced
        };
        Self { value, direction }
    }
}

/// Average rating, certainty and initial expectation, each in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Opinion {
    pub t: f64,
    pub c: f64,
    pub f: f64,
}

impl Opinion {
    pub fn new(t: f64, c: f64, f: f64) -> Result<Self> {
        for (name, value) in [("t", t), ("c", c), ("f", f)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "opinion components must lie in [0, 1]",
                });
            }
        }
        Ok(Self { t, c, f })
    }

    /// Opinion derived from evidence with the configured initial expectation.
    pub fn from_evidence(evidence: EvidenceCount, params: &TrustParams) -> Result<Self> {
        Ok(Self {
            t: average_rating(evidence),
            c: certainty(evidence, params)?,
            f: params.initial_expectation,
        })
    }

    /// `E = t·c + (1 − c)·f`.
    pub fn expectation(&self) -> f64 {
        self.t * self.c + (1.0 - self.c) * self.f
    }

    /// Negation with certainty preserved.
    pub fn not(&self) -> Self {
        self.not_with(NotMode::PreserveCertainty)
    }

    pub fn not_with(&self, mode: NotMode) -> Self {
        let c = match mode {
            NotMode::PreserveCertainty => self.c,
            NotMode::ComplementCertainty => 1.0 - self.c,
        };
        Self {
            t: 1.0 - self.t,
            c,
            f: 1.0 - self.f,
        }
    }

    pub fn and(&self, other: &Opinion) -> Result<Self> {
        self.and_with_tolerance(other, DEFAULT_EPSILON)
    }

    /// Conjunction. Rejects `1 − f_A·f_B ≤ epsilon`.
    pub fn and_with_tolerance(&self, other: &Opinion, epsilon: f64) -> Result<Self> {
        let (a, b) = (self, other);
        let denominator = 1.0 - a.f * b.f;
        if denominator <= epsilon {
            return Err(Error::DegenerateBase {
                operator: "AND",
                denominator,
            });
        }
        let c = a.c + b.c
            - a.c * b.c
            - ((1.0 - a.c) * b.c * (1.0 - a.f) * b.t + a.c * (1.0 - b.c) * (1.0 - b.f) * a.t)
                / denominator;
        let weighted = a.c * b.c * a.t * b.t
            + (a.c * (1.0 - b.c) * (1.0 - a.f) * b.f * a.t
                + (1.0 - a.c) * b.c * a.f * (1.0 - b.f) * b.t)
                / denominator;
        Ok(combine(c, weighted, a.f * b.f))
    }

    pub fn or(&self, other: &Opinion) -> Result<Self> {
        self.or_with_tolerance(other, DEFAULT_EPSILON)
    }

    /// Disjunction. Rejects `f_A + f_B − f_A·f_B ≤ epsilon`.
    pub fn or_with_tolerance(&self, other: &Opinion, epsilon: f64) -> Result<Self> {
        let (a, b) = (self, other);
        let denominator = a.f + b.f - a.f * b.f;
        if denominator <= epsilon {
            return Err(Error::DegenerateBase {
                operator: "OR",
                denominator,
            });
        }
        let c = a.c + b.c
            - a.c * b.c
            - (a.c * (1.0 - b.c) * b.f * (1.0 - a.t) + (1.0 - a.c) * b.c * a.f * (1.0 - b.t))
                / denominator;
        let weighted = a.c * a.t + b.c * b.t - a.c * b.c * a.t * b.t;
        Ok(combine(c, weighted, denominator))
    }
}

/// Builds an operator result from its certainty and certainty-weighted rating.
fn combine(c: f64, weighted: f64, f: f64) -> Opinion {
    // Rounding can leave a mathematically zero certainty at ±1e-17.
    if c <= CERTAINTY_FLOOR {
        return Opinion { t: 0.5, c: 0.0, f };
    }
    let c = c.min(1.0);
    Opinion {
        t: (weighted / c).clamp(0.0, 1.0),
        c,
        f: f.clamp(0.0, 1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn params(n: u64, w: f64) -> TrustParams {
        TrustParams {
            max_evidence: n,
            dispositional_weight: w,
            ..TrustParams::default()
        }
    }

    #[test]
    fn average_rating_examples() {
        assert_eq!(average_rating(EvidenceCount::new(0, 0)), 0.5);
        assert!(close(
            average_rating(EvidenceCount::new(5, 2)),
            0.714286,
            1e-6
        ));
        assert_eq!(average_rating(EvidenceCount::new(3, 3)), 0.5);
    }

    #[test]
    fn certainty_examples() {
        assert_eq!(
            certainty(EvidenceCount::new(5, 2), &params(7, 1.0)).unwrap(),
            1.0
        );
        assert_eq!(
            certainty(EvidenceCount::new(0, 0), &params(3, 2.5)).unwrap(),
            0.0
        );
        // 40 / 52
        let c = certainty(EvidenceCount::new(2, 2), &params(10, 1.0)).unwrap();
        assert!(close(c, 0.769231, 1e-6));
    }

    #[test]
    fn certainty_rejects_evidence_beyond_cap() {
        let err = certainty(EvidenceCount::new(6, 2), &params(7, 1.0)).unwrap_err();
        assert_eq!(err, Error::EvidenceExceedsCap { total: 8, cap: 7 });
    }

    #[test]
    fn expectation_examples() {
        let e = Opinion::new(0.714, 0.724, 0.5).unwrap().expectation();
        assert!(close(e, 0.6549, 1e-4));
        assert!(close(
            Opinion::new(0.9, 0.0, 0.3).unwrap().expectation(),
            0.3,
            1e-15
        ));
        assert!(close(
            Opinion::new(0.9, 1.0, 0.1).unwrap().expectation(),
            0.9,
            1e-15
        ));
    }

    #[test]
    fn not_examples() {
        let a = Opinion::new(0.7, 0.4, 0.6).unwrap();
        let n = a.not();
        assert!(close(n.t, 0.3, 1e-15) && n.c == 0.4 && close(n.f, 0.4, 1e-15));
        assert!(close(n.expectation(), 1.0 - a.expectation(), 1e-15));
        let fixed = Opinion::new(0.5, 1.0, 0.5).unwrap();
        assert_eq!(fixed.not(), fixed);
    }

    #[test]
    fn not_complement_mode_flips_certainty() {
        let n = Opinion::new(0.7, 0.4, 0.6)
            .unwrap()
            .not_with(NotMode::ComplementCertainty);
        assert!(close(n.c, 0.6, 1e-15));
    }

    #[test]
    fn and_or_at_full_certainty() {
        let a = Opinion::new(0.8, 1.0, 0.5).unwrap();
        let b = Opinion::new(0.5, 1.0, 0.5).unwrap();
        let and = a.and(&b).unwrap();
        assert!(close(and.t, 0.4, 1e-12) && close(and.c, 1.0, 1e-12) && close(and.f, 0.25, 1e-15));
        let or = a.or(&b).unwrap();
        assert!(close(or.t, 0.9, 1e-12) && close(or.c, 1.0, 1e-12) && close(or.f, 0.75, 1e-15));
    }

    #[test]
    fn zero_certainty_inputs_take_else_branch() {
        let a = Opinion::new(0.9, 0.0, 0.3).unwrap();
        let b = Opinion::new(0.1, 0.0, 0.6).unwrap();
        let and = a.and(&b).unwrap();
        assert_eq!((and.t, and.c), (0.5, 0.0));
        assert!(close(and.f, 0.18, 1e-15));
        let or = a.or(&b).unwrap();
        assert_eq!((or.t, or.c), (0.5, 0.0));
        assert!(close(or.f, 0.72, 1e-15));
    }

    #[test]
    fn degenerate_bases_are_rejected() {
        let one = Opinion::new(0.5, 0.5, 1.0).unwrap();
        assert!(matches!(
            one.and(&one),
            Err(Error::DegenerateBase {
                operator: "AND",
                ..
            })
        ));
        let zero = Opinion::new(0.5, 0.5, 0.0).unwrap();
        assert!(matches!(
            zero.or(&zero),
            Err(Error::DegenerateBase { operator: "OR", .. })
        ));
    }

    #[test]
    fn scale_and_trust_percent() {
        let p = TrustParams::default();
        assert!(close(scale_rating(0.714, &p), 3.57, 1e-12));
        assert_eq!(scale_rating(0.0, &p), 0.0);
        assert_eq!(scale_rating(1.0, &p), 5.0);
        assert!(close(
            trust_percent(0.724, 3.57, &p).unwrap().value(),
            51.69,
            0.005
        ));
        assert!(close(
            trust_percent(0.6, 3.5, &p).unwrap().value(),
            42.0,
            1e-12
        ));
        assert_eq!(trust_percent(1.0, 5.0, &p).unwrap().value(), 100.0);
        assert!(trust_percent(1.2, 5.0, &p).is_err());
        assert!(trust_percent(0.5, 5.5, &p).is_err());
    }

    #[test]
    fn behavioral_probability_cases() {
        let p = TrustParams::default();
        let up = behavioral_probability(TrustPercent::new(58.375).unwrap(), &p).unwrap();
        assert!(close(up.value, 16.75, 1e-9));
        assert_eq!(up.direction, Direction::AboveBase);
        let down = behavioral_probability(TrustPercent::new(47.26).unwrap(), &p).unwrap();
        assert!(close(down.value, -5.48, 1e-9));
        assert_eq!(down.direction, Direction::BelowBase);
        let flat = behavioral_probability(TrustPercent::new(50.0).unwrap(), &p).unwrap();
        assert_eq!(flat.value, 0.0);
        assert_eq!(flat.direction, Direction::Balanced);

        let zero = TrustParams {
            initial_expectation: 0.0,
            ..p
        };
        assert_eq!(
            behavioral_probability(TrustPercent::new(10.0).unwrap(), &zero),
            Err(Error::ZeroBase)
        );
    }

    #[test]
    fn opinion_from_evidence_examples() {
        let o = Opinion::from_evidence(EvidenceCount::new(5, 2), &params(7, 1.0)).unwrap();
        assert!(close(o.t, 0.714286, 1e-6) && o.c == 1.0 && o.f == 0.5);
        let empty = Opinion::from_evidence(EvidenceCount::new(0, 0), &params(9, 3.0)).unwrap();
        assert_eq!(
            empty,
            Opinion {
                t: 0.5,
                c: 0.0,
                f: 0.5
            }
        );
        let full = Opinion::from_evidence(EvidenceCount::new(10, 0), &params(10, 1.0)).unwrap();
        assert_eq!(
            full,
            Opinion {
                t: 1.0,
                c: 1.0,
                f: 0.5
            }
        );
        assert!(Opinion::from_evidence(EvidenceCount::new(8, 3), &params(10, 1.0)).is_err());
    }

    #[test]
    fn params_validation() {
        assert!(TrustParams::default().validate().is_ok());
        assert!(params(0, 1.0).validate().is_err());
        assert!(params(5, 0.0).validate().is_err());
        let bad_f = TrustParams {
            initial_expectation: 1.5,
            ..TrustParams::default()
        };
        assert!(bad_f.validate().is_err());
    }

    #[test]
    fn opinion_rejects_out_of_range_components() {
        assert!(Opinion::new(1.1, 0.5, 0.5).is_err());
        assert!(Opinion::new(0.5, -0.1, 0.5).is_err());
        assert!(Opinion::new(0.5, 0.5, f64::NAN).is_err());
    }
}
