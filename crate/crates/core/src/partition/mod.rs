//! Partitions of `[k]` by type, their stabilisers in `A_k` and `S_k`, and the
//! greedy refinement that governs large `k`.

mod checks;
mod sim;
mod types;

pub use checks::{ceil_chain, verify_min_part, verify_part_sigma, PartitionCheck, DEFAULT_TYPE_CAP};
pub use sim::{closed_form_vs_sim, greedy_refine_sim, write_csv, SimRow, Simulation};
pub use types::{enumerate_types, gamma_type, part_size_m, sigma_type, stab_order, PartitionType};
