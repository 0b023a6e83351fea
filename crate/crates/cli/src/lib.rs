//! Text format, reports and command-line driver for `irrepcount-core`.

pub mod cli;
pub mod dump;
pub mod exec;
pub mod report;
pub mod text;

pub use cli::run;
