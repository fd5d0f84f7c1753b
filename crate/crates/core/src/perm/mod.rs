//! Permutations, stabiliser chains, orbits, transporters and conjugacy classes.

mod chain;
mod classes;
mod orbits;
mod permutation;
mod transporter;

pub use chain::{ChainOptions, Level, StabilizerChain};
pub use classes::{centralizer, conjugacy_classes, ConjClass, DEFAULT_ORDER_CAP};
pub use orbits::{orbit_of, orbits};
pub use permutation::Permutation;
pub use transporter::{transporter_tuple, tuple_orbit, TupleTransporter, DEFAULT_MEMORY_CAP};
