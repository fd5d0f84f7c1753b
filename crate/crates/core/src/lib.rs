pub mod base;
pub mod catalog;
pub mod diagonal;
pub mod error;
pub mod gf;
pub mod k2;
pub mod partition;
pub mod perm;
pub mod rc;

pub use error::{Error, Result};
