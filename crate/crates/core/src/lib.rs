pub mod cli;
pub mod error;
pub mod lab;
pub mod polybounded;
pub mod polynomial;
pub mod report;
pub mod semigroup;
pub mod verdict;
pub mod zariski;

pub use error::{Error, Result};
