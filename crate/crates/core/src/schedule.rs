//! Step-size sequences with a declared summability class.
//!
//! The finite-horizon kind uses t_k = 1/(K+1−k) for k ∈ {0..K}, which is
//! increasing in k. Because the source formula and its prose description
//! disagree about the ordering, a `reversed` flag flips any finite-horizon
//! schedule; the flipped sequence is t_k = 1/(k+1), descending.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum ScheduleKind {
    /// t_k = α for all k.
    Constant(f64),
    /// t_k = 1/(K+1−k) for k ∈ {0..K}; errors past the horizon.
    ReversedHarmonic { horizon: usize },
    /// t_k = 1/(k+1).
    Harmonic,
    /// Explicit step list; errors once exhausted.
    Custom(Vec<f64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SummabilityClass {
    NonsummableSquareSummable,
    Constant,
    Other,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepSchedule {
    kind: ScheduleKind,
    reversed: bool,
}

impl StepSchedule {
    pub fn constant(alpha: f64) -> Result<Self> {
        if alpha.is_nan() || alpha <= 0.0 || !alpha.is_finite() {
            return Err(Error::InvalidParameter(
                "constant step size must be finite and > 0".into(),
            ));
        }
        Ok(Self {
            kind: ScheduleKind::Constant(alpha),
            reversed: false,
        })
    }

    pub fn reversed_harmonic(horizon: usize) -> Self {
        Self {
            kind: ScheduleKind::ReversedHarmonic { horizon },
            reversed: false,
        }
    }

    pub fn harmonic() -> Self {
        Self {
            kind: ScheduleKind::Harmonic,
            reversed: false,
        }
    }

    pub fn custom(steps: Vec<f64>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::InvalidParameter(
                "custom schedule needs at least one step".into(),
            ));
        }
        if steps.iter().any(|t| !t.is_finite() || *t < 0.0) {
            return Err(Error::InvalidParameter(
                "custom steps must be finite and >= 0".into(),
            ));
        }
        if steps[0] <= 0.0 {
            return Err(Error::InvalidParameter("t_0 must be > 0".into()));
        }
        Ok(Self {
            kind: ScheduleKind::Custom(steps),
            reversed: false,
        })
    }

    /// Flip a finite-horizon schedule so its steps run in the opposite
    /// order. Errors for schedules without a horizon.
    pub fn with_reversed(mut self, reversed: bool) -> Result<Self> {
        if reversed && self.horizon().is_none() {
            return Err(Error::InvalidParameter(
                "reverse flag requires a finite-horizon schedule".into(),
            ));
        }
        self.reversed = reversed;
        if reversed && self.step_at(0)? <= 0.0 {
            return Err(Error::InvalidParameter(
                "reversed schedule has t_0 = 0".into(),
            ));
        }
        Ok(self)
    }

    pub fn kind(&self) -> &ScheduleKind {
        &self.kind
    }

    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    /// Last valid index, when the schedule is finite-horizon.
    pub fn horizon(&self) -> Option<usize> {
        match &self.kind {
            ScheduleKind::ReversedHarmonic { horizon } => Some(*horizon),
            ScheduleKind::Custom(steps) => Some(steps.len() - 1),
            _ => None,
        }
    }

    pub fn is_finite_horizon(&self) -> bool {
        self.horizon().is_some()
    }

    pub fn step_at(&self, k: usize) -> Result<f64> {
        let k_eff = if self.reversed {
            let horizon = self.horizon().expect("reversed implies finite horizon");
            if k > horizon {
                return Err(Error::ScheduleExhausted { k, horizon });
            }
            horizon - k
        } else {
            k
        };
        match &self.kind {
            ScheduleKind::Constant(alpha) => Ok(*alpha),
            ScheduleKind::ReversedHarmonic { horizon } => {
                if k_eff > *horizon {
                    return Err(Error::ScheduleExhausted {
                        k,
                        horizon: *horizon,
                    });
                }
                Ok(1.0 / ((horizon + 1 - k_eff) as f64))
            }
            ScheduleKind::Harmonic => Ok(1.0 / ((k_eff + 1) as f64)),
            ScheduleKind::Custom(steps) => {
                steps.get(k_eff).copied().ok_or(Error::ScheduleExhausted {
                    k,
                    horizon: steps.len() - 1,
                })
            }
        }
    }

    /// (Σ_{j<=k} t_j, Σ_{j<=k} t_j²)
    pub fn partial_sums(&self, upto_k: usize) -> Result<(f64, f64)> {
        let mut sum = 0.0;
        let mut sq = 0.0;
        for k in 0..=upto_k {
            let t = self.step_at(k)?;
            sum += t;
            sq += t * t;
        }
        Ok((sum, sq))
    }

    pub fn classify(&self) -> SummabilityClass {
        match &self.kind {
            ScheduleKind::Constant(_) => SummabilityClass::Constant,
            ScheduleKind::Harmonic => SummabilityClass::NonsummableSquareSummable,
            // finite-horizon member of the 1/k family; flagged via
            // is_finite_horizon()
            ScheduleKind::ReversedHarmonic { .. } => SummabilityClass::NonsummableSquareSummable,
            ScheduleKind::Custom(_) => SummabilityClass::Other,
        }
    }
}
