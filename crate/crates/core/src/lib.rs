pub mod bounds;
pub mod circuit;
pub mod cli;
pub mod codes;
pub mod encoders;
pub mod error;
pub mod gf2;

pub use error::{Error, Result};
