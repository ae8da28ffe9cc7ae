//! Command-line front end: matrix file I/O, disk and localization reports,
//! the rearrangement bound check, and plots.

pub mod app;
pub mod check;
pub mod error;
pub mod input;
pub mod plot;

pub use app::run;
pub use error::{exit, CliError, CliResult};
