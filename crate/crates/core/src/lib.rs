pub mod aggregation;
pub mod astroid;
pub mod chaincode;
pub mod composition;
pub mod error;
pub mod lattice;
pub mod pgm;
pub mod sim;

#[cfg(test)]
mod testing;

pub use error::{Error, Result};
