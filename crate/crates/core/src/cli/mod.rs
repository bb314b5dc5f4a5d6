//! Batch front end: a JSON [`RunConfig`] in, a deterministic JSON [`Report`]
//! out.
//!
//! Exit status: 0 when every check passes, 1 when an identity fails, 2 for
//! configuration errors, 3 when a resource limit is hit.

mod config;
mod report;
mod run;

pub use config::{
    Command, ElementSpec, KernelChoice, MapChoice, PolyChoice, PresentationSource, RunConfig,
};
pub use report::{round_floats, Check, Report, Status};
pub use run::{error_status, execute, exit_status, ExecOptions};
