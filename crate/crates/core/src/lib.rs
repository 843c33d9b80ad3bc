pub mod cfe_core;
pub mod error;
pub mod dynamics;
pub mod exact_numbers;
pub mod kronecker;
pub mod cli;
pub mod numeration;
pub mod oracles;
pub mod signed_numeration;

pub use error::{Error, Result};
pub use exact_numbers::{ExactReal, ExtendedDigit};
