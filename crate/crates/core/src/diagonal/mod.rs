//! Primitive groups of diagonal type acting on the cosets of the diagonal subgroup.

mod config;
mod group;
mod overgroups;

pub use config::{DiagonalConfig, NamedOut, NamedTop, OutPart, Preset, QLabel, TopPart};
pub use group::{
    is_primitive, DiagonalGroup, OmegaPoint, SymClass, TopPairs, WElement, DEFAULT_REALIZATION_CAP, MAX_K,
};
pub use overgroups::{enumerate_overgroups, Overgroup, SwapCase};
