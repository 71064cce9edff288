//! Significance testing and training-schedule arithmetic.

mod bootstrap;
mod schedule;

pub use bootstrap::{paired_bootstrap, resample_indices, BootstrapConfig, BootstrapResult};
pub use schedule::{lr_schedule, LrSchedule, ScheduleSpec};
