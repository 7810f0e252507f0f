use crate::error::{Result, WalkError};
use crate::numerics::Amplitude;

/// Scatterer with transparency `T`: `t = sqrt(T)`, `r = i sqrt(1 - T)`.
///
/// The step matrix `[[t, r], [r, t]]` is unitary for every `T` in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScattererParams {
    transparency: f64,
    t: Amplitude,
    r: Amplitude,
}

impl ScattererParams {
    pub fn new(transparency: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&transparency) {
            return Err(WalkError::InvalidTransparency(transparency));
        }
        Ok(Self {
            transparency,
            t: Amplitude::new(transparency.sqrt(), 0.0),
            r: Amplitude::new(0.0, (1.0 - transparency).sqrt()),
        })
    }

    pub fn transparency(&self) -> f64 {
        self.transparency
    }

    pub fn reflectance(&self) -> f64 {
        1.0 - self.transparency
    }

    pub fn t(&self) -> Amplitude {
        self.t
    }

    pub fn r(&self) -> Amplitude {
        self.r
    }
}

/// Overlap between a reservoir spin's rotated and initial states.
///
/// Every model depends on the overlap `alpha` only through `beta = |alpha|^2`;
/// `alpha` is stored as the real non-negative root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReservoirOverlap {
    beta: f64,
    alpha_magnitude: f64,
}

impl ReservoirOverlap {
    pub fn new(beta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&beta) {
            return Err(WalkError::InvalidBeta(beta));
        }
        Ok(Self { beta, alpha_magnitude: beta.sqrt() })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn alpha_magnitude(&self) -> f64 {
        self.alpha_magnitude
    }

    /// `beta^n`, with `beta^0 = 1` also for `beta = 0`.
    pub fn power(&self, n: usize) -> f64 {
        self.beta.powi(n as i32)
    }
}
