pub mod brane;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod format;
pub mod gca;
pub mod linalg;
pub mod model_file;
pub mod models;

pub use error::{Error, Result};
