//! Fan catalog, ample-cone sweeps and verification reports on top of
//! [`torifan_core`], plus the pieces behind the `torifan` binary.

pub mod catalog;
pub mod commands;
pub mod error;
pub mod sweep;
pub mod verify;

pub use catalog::{load_fan, Catalog, CatalogEntry, FanFile};
pub use error::{HarnessError, Result};
pub use sweep::{sweep_ample_cone, SweepResult, SweepSample};
pub use verify::{gap_report, verify_theorem, GapReport, VerifyReport};
