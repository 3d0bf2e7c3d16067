use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Gaussian membership function `exp(−(x − center)² / (2·sigma²))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MembershipFunction {
    center: f64,
    sigma: f64,
}

impl MembershipFunction {
    pub fn new(center: f64, sigma: f64) -> Result<Self> {
        if !center.is_finite() {
            return Err(Error::InvalidParameter {
                name: "center",
                value: center,
                reason: "must be finite",
            });
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "sigma",
                value: sigma,
                reason: "must be positive and finite",
            });
        }
        Ok(Self { center, sigma })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn degree(&self, x: f64) -> f64 {
        let d = x - self.center;
        (-(d * d) / (2.0 * self.sigma * self.sigma)).exp()
    }
}

pub fn gaussian_mf(x: f64, mf: &MembershipFunction) -> f64 {
    mf.degree(x)
}
