//! Small simple groups with element tables, their automorphism groups and holomorphs.

mod aut;
mod holomorph;
mod simple;
mod snapshot;

use std::sync::Arc;

pub use aut::{inner_automorphism, invertiliser, is_automorphism, AutGroupData};
pub use holomorph::{inversion_map, translation, HolomorphAction};
pub use simple::{CatalogOptions, SimpleGroupData, SimpleSpec, DEFAULT_T_ORDER_CAP};
pub use snapshot::{build_aut_cached, GroupSnapshot, CACHE_ENV};

use crate::error::Result;

/// A simple group together with its automorphism group.
#[derive(Clone, Debug)]
pub struct SimpleWithAut {
    pub t: SimpleGroupData,
    pub aut: AutGroupData,
}

impl SimpleWithAut {
    pub fn build(spec: SimpleSpec) -> Result<Arc<Self>> {
        Self::build_with(spec, &CatalogOptions::default())
    }

    pub fn build_with(spec: SimpleSpec, opts: &CatalogOptions) -> Result<Arc<Self>> {
        let t = SimpleGroupData::build_with(spec, opts)?;
        let aut = build_aut_cached(&t)?;
        Ok(Arc::new(SimpleWithAut { t, aut }))
    }
}
