//! Group selection, resource caps and the worker pool.

use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use clap::Args;
use diagperm::catalog::{CatalogOptions, SimpleSpec, SimpleWithAut, DEFAULT_T_ORDER_CAP};
use diagperm::diagonal::{DiagonalConfig, DiagonalGroup, DEFAULT_REALIZATION_CAP};
use diagperm::{Error, Result};

#[derive(Clone, Debug)]
pub struct Caps {
    pub omega: usize,
    pub order: u64,
    pub threads: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            omega: DEFAULT_REALIZATION_CAP,
            order: DEFAULT_T_ORDER_CAP,
            threads: 1,
        }
    }
}

impl Caps {
    pub fn catalog(&self) -> CatalogOptions {
        CatalogOptions {
            order_cap: self.order,
            ..CatalogOptions::default()
        }
    }

    pub fn simple(&self, spec: SimpleSpec) -> Result<Arc<SimpleWithAut>> {
        SimpleWithAut::build_with(spec, &self.catalog())
    }

    /// Builds the group after checking `|Omega| = |T|^(k-1)` against the cap.
    pub fn group(&self, config: &DiagonalConfig) -> Result<DiagonalGroup> {
        let omega = (config.k as u32)
            .checked_sub(1)
            .and_then(|e| config.t.expected_order().checked_pow(e))
            .unwrap_or(u64::MAX);
        if omega > self.omega as u64 {
            return Err(Error::resource(format!("|Omega| = {omega} for {}", config.label()), self.omega));
        }
        DiagonalGroup::with_simple(config, self.simple(config.t)?)
    }
}

/// Chooses a group: `--config` wins, otherwise `--T` with `--k` and `--preset`.
#[derive(Args, Clone, Debug, Default)]
pub struct GroupArgs {
    /// Simple group label such as A5, L2_8 or PSL2(11).
    #[arg(long = "T", value_name = "LABEL")]
    pub t: Option<String>,
    #[arg(long)]
    pub k: Option<usize>,
    /// socle or full
    #[arg(long)]
    pub preset: Option<String>,
}

impl GroupArgs {
    pub fn spec(&self) -> Result<Option<SimpleSpec>> {
        self.t.as_deref().map(str::parse).transpose()
    }

    pub fn resolve(&self, config: Option<&PathBuf>, default_k: usize) -> Result<DiagonalConfig> {
        if let Some(path) = config {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            return DiagonalConfig::from_json(&text);
        }
        let spec = self
            .spec()?
            .ok_or_else(|| Error::Config("give --config FILE or --T LABEL".into()))?;
        let k = self.k.unwrap_or(default_k);
        match self.preset.as_deref().unwrap_or("full") {
            "full" | "full_W" => Ok(DiagonalConfig::full(spec, k)),
            "socle" => Ok(DiagonalConfig::socle(spec, k)),
            other => Err(Error::Config(format!("unknown preset {other:?}; use socle, full or --config"))),
        }
    }
}

/// Maps `f` over `items` on `threads` workers, keeping input order.
pub fn par_map<T, R, F>(items: &[T], threads: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let threads = threads.clamp(1, items.len().max(1));
    if threads == 1 {
        return items.iter().map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let out: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                out.lock().expect("worker panicked")[i] = Some(r);
            });
        }
    });
    out.into_inner().expect("worker panicked").into_iter().map(|r| r.expect("filled")).collect()
}

pub const CATALOG: [SimpleSpec; 6] = [
    SimpleSpec::Alt { n: 5 },
    SimpleSpec::Alt { n: 6 },
    SimpleSpec::Psl2 { q: 7 },
    SimpleSpec::Psl2 { q: 8 },
    SimpleSpec::Psl2 { q: 11 },
    SimpleSpec::Psl2 { q: 13 },
];
