//! File formats, Monte Carlo experiments and the `homconn` command-line
//! front end for [`homconn_core`].

pub mod cli;
pub mod error;
pub mod experiment;
pub mod format;
pub mod report;

pub use error::{LabError, Result};
