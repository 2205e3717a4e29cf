//! File formats and the `cva-lab` command line for `cva-core`.

pub mod cli;
pub mod codec;
pub mod error;
pub mod report;
pub mod space;

pub use cli::{dispatch, Cli, Format, Outcome};
pub use error::{LabError, Result};
