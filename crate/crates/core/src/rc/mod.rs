//! Relational complexity: witness pairs, certificates and bounds.

mod arith;
mod search;
mod witness;

pub use arith::{log_bound, LogBound, LOG_MARGIN};
pub use search::{find_witness, rc_bounds, RcBound};
pub use witness::{
    certify, point_x, rc4_elements, recheck, same_orbit, subtuple_complete, subtuple_transporters,
    witness_alternating_family, witness_rc4, Certificate, Provenance, SubsetTransporter, WitnessPair,
};
