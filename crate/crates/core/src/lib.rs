pub mod bounds;
pub mod error;
pub mod exact;
pub mod graver;
pub mod io;
pub mod lift;
pub mod nfold;
pub mod relation;
pub mod reproduce;

pub use error::{Error, Result};
