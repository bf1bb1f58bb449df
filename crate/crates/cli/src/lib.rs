//! Command implementations behind the `gaussent` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod csv;
pub mod error;
pub mod figures;

pub use commands::{
    cmd_threshold, cmd_trajectory, cmd_validate, ValidateOptions, ValidationReport,
};
pub use config::{ConfigLayer, GridSpec, RunConfig};
pub use error::{CliError, Result};
pub use figures::{cmd_figures, figure_spec, FigureSpec};
