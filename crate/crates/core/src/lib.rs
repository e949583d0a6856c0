pub mod cli;
pub mod error;
pub mod fuzz;
pub mod inequalities;
pub mod instance;
pub mod instancegen;
pub mod interval;
pub mod linalg;
pub mod radii;
pub mod report;
pub mod semihilbert;

pub use error::{Error, Result};
