use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::aut::inner_automorphism;
use super::{AutGroupData, SimpleGroupData, SimpleSpec};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Environment variable naming the snapshot cache directory.
pub const CACHE_ENV: &str = "DIAGPERM_CACHE";

/// Serialisable summary of a catalog group and its automorphism generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSnapshot {
    pub schema: u32,
    pub spec: SimpleSpec,
    pub order: usize,
    pub t_generators: Vec<Permutation>,
    pub aut_generators: Vec<Permutation>,
    pub out_order: usize,
    pub digest: String,
}

impl GroupSnapshot {
    pub fn new(t: &SimpleGroupData, aut: &AutGroupData) -> Self {
        GroupSnapshot {
            schema: 1,
            spec: t.spec(),
            order: t.order(),
            t_generators: t.generators().iter().map(|&g| t.element(g).clone()).collect(),
            aut_generators: aut.generators().to_vec(),
            out_order: aut.out_order(),
            digest: t.digest(),
        }
    }

    /// Rebuilds Aut(T) from the stored generators after checking the digest.
    /// Every generator is re-validated as an automorphism.
    pub fn restore_aut(&self, t: &SimpleGroupData) -> Result<AutGroupData> {
        if self.digest != t.digest() || self.spec != t.spec() {
            return Err(Error::Internal(format!("snapshot for {} does not match the built group", self.spec)));
        }
        let inn: Vec<Permutation> = t.generators().iter().map(|&g| inner_automorphism(t, g)).collect();
        AutGroupData::from_generators(t, self.aut_generators.clone(), inn)
    }
}

fn cache_path(dir: &Path, spec: SimpleSpec) -> PathBuf {
    let name = spec.to_string().replace(['(', ')'], "_");
    dir.join(format!("{name}.json"))
}

/// Builds Aut(T), reading and writing snapshots under `$DIAGPERM_CACHE` when set.
/// Unreadable or stale cache entries are rebuilt and overwritten.
pub fn build_aut_cached(t: &SimpleGroupData) -> Result<AutGroupData> {
    let Some(dir) = std::env::var_os(CACHE_ENV).map(PathBuf::from) else {
        return AutGroupData::build(t);
    };
    let path = cache_path(&dir, t.spec());
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(snap) = serde_json::from_str::<GroupSnapshot>(&text) {
            if let Ok(aut) = snap.restore_aut(t) {
                return Ok(aut);
            }
        }
    }
    let aut = AutGroupData::build(t)?;
    let io = |e: std::io::Error| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    std::fs::create_dir_all(&dir).map_err(io)?;
    let text = serde_json::to_string_pretty(&GroupSnapshot::new(t, &aut)).expect("serialisable");
    std::fs::write(&path, text).map_err(io)?;
    Ok(aut)
}
