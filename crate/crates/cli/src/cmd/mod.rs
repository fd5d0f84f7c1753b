pub mod base;
pub mod catalog;
pub mod k2;
pub mod partition;
pub mod rc;
pub mod verify;
