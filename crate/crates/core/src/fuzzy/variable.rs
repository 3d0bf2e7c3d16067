use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::membership::MembershipFunction;
use crate::error::{Error, Result};

pub const TERM_COUNT: usize = 5;

/// The five linguistic labels, ordered from lowest to highest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Term {
    #[serde(rename = "Very_Low")]
    VeryLow,
    #[serde(rename = "Low")]
    Low,
    #[serde(rename = "Medium")]
    Medium,
    #[serde(rename = "High")]
    High,
    #[serde(rename = "Very_High")]
    VeryHigh,
}

impl Term {
    pub const ALL: [Term; TERM_COUNT] = [
        Term::VeryLow,
        Term::Low,
        Term::Medium,
        Term::High,
        Term::VeryHigh,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Term> {
        Self::ALL.get(index).copied()
    }

    pub fn label(self) -> &'static str {
        match self {
            Term::VeryLow => "Very_Low",
            Term::Low => "Low",
            Term::Medium => "Medium",
            Term::High => "High",
            Term::VeryHigh => "Very_High",
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Term {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .map(|c| c.to_ascii_lowercase())
            .collect();
        match key.as_str() {
            "verylow" => Ok(Term::VeryLow),
            "low" => Ok(Term::Low),
            "medium" => Ok(Term::Medium),
            "high" => Ok(Term::High),
            "veryhigh" => Ok(Term::VeryHigh),
            _ => Err(format!("unknown term {s:?}")),
        }
    }
}

/// Closed interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    lo: f64,
    hi: f64,
}

impl Domain {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidDomain { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        self.lo + self.width() / 2.0
    }

    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.lo, self.hi)
    }

    /// `count` evenly spaced points, endpoints included.
    pub fn linspace(&self, count: usize) -> impl ExactSizeIterator<Item = f64> + '_ {
        let last = count.saturating_sub(1).max(1) as f64;
        (0..count).map(move |i| {
            if i + 1 == count && count > 1 {
                self.hi
            } else {
                self.lo + self.width() * i as f64 / last
            }
        })
    }
}

/// A named input or output with five Gaussian terms.
#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticVariable {
    name: String,
    domain: Domain,
    terms: [MembershipFunction; TERM_COUNT],
}

impl LinguisticVariable {
    /// Evenly spaced centres from `lo` to `hi`; adjacent terms cross at 0.5.
    pub fn new(name: impl Into<String>, lo: f64, hi: f64) -> Result<Self> {
        let domain = Domain::new(lo, hi)?;
        let step = domain.width() / 4.0;
        let sigma = (step / 2.0) / (2.0 * std::f64::consts::LN_2).sqrt();
        let mut terms = [MembershipFunction::new(lo, sigma)?; TERM_COUNT];
        for (k, term) in terms.iter_mut().enumerate().skip(1) {
            let center = if k == TERM_COUNT - 1 {
                hi
            } else {
                lo + step * k as f64
            };
            *term = MembershipFunction::new(center, sigma)?;
        }
        Ok(Self {
            name: name.into(),
            domain,
            terms,
        })
    }

    pub fn with_terms(
        name: impl Into<String>,
        domain: Domain,
        terms: [MembershipFunction; TERM_COUNT],
    ) -> Result<Self> {
        let name = name.into();
        if terms.windows(2).any(|w| w[0].center() >= w[1].center()) {
            return Err(Error::InvalidVariable {
                name,
                reason: "term centres must be strictly increasing".into(),
            });
        }
        if terms
            .iter()
            .any(|t| t.center() < domain.lo() || t.center() > domain.hi())
        {
            return Err(Error::InvalidVariable {
                name,
                reason: "term centres must lie within the domain".into(),
            });
        }
        Ok(Self {
            name,
            domain,
            terms,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn terms(&self) -> &[MembershipFunction; TERM_COUNT] {
        &self.terms
    }

    pub fn term(&self, term: Term) -> &MembershipFunction {
        &self.terms[term.index()]
    }

    /// Membership degree of `x` in each term. Inputs outside the domain are
    /// clamped to its boundary.
    pub fn fuzzify(&self, x: f64) -> [f64; TERM_COUNT] {
        let x = self.domain.clamp(x);
        self.terms.map(|mf| mf.degree(x))
    }
}
