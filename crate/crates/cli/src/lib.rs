//! Command-line front end: JSON bundle input, reports and figures.

pub mod app;
pub mod input;
pub mod rr;
pub mod svg;

pub use app::{run, Outcome};
pub use input::{Input, Options};
pub use rr::{rr_check, RRCase, RRReport};
