//! Rescaling an epoch-based learning-rate decay when the number of epochs is
//! multiplied by `k` on a correspondingly smaller corpus, so that decay starts
//! after the same number of training sentences and the rate still shrinks by
//! the base factor per base-epoch's worth of data.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScheduleSpec {
    base_epochs: u32,
    base_decay_start_epoch: u32,
    base_decay_factor: f64,
    multiplier: u32,
}

impl Default for ScheduleSpec {
    /// 13 epochs, halving from epoch 8, no rescaling.
    fn default() -> Self {
        ScheduleSpec {
            base_epochs: 13,
            base_decay_start_epoch: 8,
            base_decay_factor: 0.5,
            multiplier: 1,
        }
    }
}

impl ScheduleSpec {
    pub fn new(base_epochs: u32, base_decay_start_epoch: u32, base_decay_factor: f64, multiplier: u32) -> Result<Self> {
        if !(base_decay_factor > 0.0 && base_decay_factor < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "decay factor {base_decay_factor} must lie strictly between 0 and 1"
            )));
        }
        if multiplier == 0 {
            return Err(Error::InvalidParameter("multiplier must be at least 1".into()));
        }
        if base_decay_start_epoch == 0 || base_decay_start_epoch > base_epochs {
            return Err(Error::InvalidParameter(format!(
                "decay start epoch {base_decay_start_epoch} must be in 1..={base_epochs}"
            )));
        }
        Ok(ScheduleSpec {
            base_epochs,
            base_decay_start_epoch,
            base_decay_factor,
            multiplier,
        })
    }

    /// Default base schedule rescaled by `k`.
    pub fn with_multiplier(k: u32) -> Result<Self> {
        let d = ScheduleSpec::default();
        Self::new(d.base_epochs, d.base_decay_start_epoch, d.base_decay_factor, k)
    }

    pub fn base_epochs(&self) -> u32 {
        self.base_epochs
    }

    pub fn base_decay_start_epoch(&self) -> u32 {
        self.base_decay_start_epoch
    }

    pub fn base_decay_factor(&self) -> f64 {
        self.base_decay_factor
    }

    pub fn multiplier(&self) -> u32 {
        self.multiplier
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LrSchedule {
    pub decay_start_epoch: u32,
    pub decay_factor: f64,
    /// Cumulative learning-rate multiplier for epochs 1..=epochs, index 0 = epoch 1.
    /// The decay is first applied in the decay start epoch.
    pub multipliers: Vec<f64>,
}

impl LrSchedule {
    pub fn epochs(&self) -> usize {
        self.multipliers.len()
    }
}

pub fn lr_schedule(spec: &ScheduleSpec) -> LrSchedule {
    let k = spec.multiplier;
    let start = (spec.base_decay_start_epoch - 1) * k + 1;
    let factor = if k == 1 {
        spec.base_decay_factor
    } else {
        spec.base_decay_factor.powf(1.0 / f64::from(k))
    };
    let epochs = spec.base_epochs * k;
    let multipliers = (1..=epochs)
        .map(|e| {
            if e < start {
                1.0
            } else {
                factor.powi((e - start + 1) as i32)
            }
        })
        .collect();
    LrSchedule {
        decay_start_epoch: start,
        decay_factor: factor,
        multipliers,
    }
}
