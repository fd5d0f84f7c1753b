use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::diagonal::DiagonalGroup;
use crate::error::{Error, Result};
use crate::perm::{Permutation, StabilizerChain};

pub const DEFAULT_NODE_CAP: u64 = 2_000_000;
/// Cap on `|H| * |Omega|` when listing the stabiliser as permutations.
pub const DEFAULT_ELEMENT_CAP: usize = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Maximum number of stabilisers visited by one search.
    pub node_cap: u64,
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            node_cap: DEFAULT_NODE_CAP,
            threads: 1,
        }
    }
}

/// A group together with a prefix of points, given by the full element list
/// of the pointwise stabiliser of that prefix.
///
/// For a transitive group the prefix can be a single point: every base
/// statistic is invariant under conjugation, so the first base point may be
/// taken anywhere.
#[derive(Clone, Debug)]
pub struct BaseProblem {
    degree: usize,
    perms: Vec<Permutation>,
    prefix: Vec<usize>,
    order: BigUint,
}

/// Indices into `BaseProblem::perms`, always listing a whole subgroup.
type Sub = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyOutcome {
    pub sizes: Vec<usize>,
    /// One greedy base for each size in `sizes`.
    pub witnesses: Vec<Vec<usize>>,
}

struct Counter<'a> {
    nodes: &'a AtomicU64,
    cap: u64,
}

impl Counter<'_> {
    fn tick(&self) -> Result<()> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.cap {
            return Err(Error::resource("base search nodes", self.cap));
        }
        Ok(())
    }
}

fn par_map<T: Sync, R: Send>(items: &[T], threads: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    if threads <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(threads);
    std::thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| {
                let f = &f;
                s.spawn(move || c.iter().map(f).collect::<Vec<R>>())
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("search thread panicked")).collect()
    })
}

impl BaseProblem {
    /// `perms` must be every element of the stabiliser of `prefix` in a group of order `order`.
    pub fn new(degree: usize, perms: Vec<Permutation>, prefix: Vec<usize>, order: BigUint) -> Result<Self> {
        if perms.is_empty() {
            return Err(Error::Domain("empty element list".into()));
        }
        for p in &perms {
            if p.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    actual: p.degree(),
                });
            }
            if let Some(&x) = prefix.iter().find(|&&x| !p.fixes(x)) {
                return Err(Error::Domain(format!("element moves prefix point {x}")));
            }
        }
        Ok(BaseProblem {
            degree,
            perms,
            prefix,
            order,
        })
    }

    /// The whole group, listed element by element.
    pub fn from_chain(chain: &StabilizerChain, cap: u64) -> Result<Self> {
        let perms = chain.elements(cap)?;
        Self::new(chain.degree(), perms, Vec::new(), chain.order())
    }

    /// A diagonal-type group with first base point D, so that only G_D has to be listed.
    pub fn from_diagonal(g: &DiagonalGroup, cap: usize) -> Result<Self> {
        let perms = g.d_permutations(cap)?;
        Self::new(g.omega_size(), perms, vec![g.base_point()], g.theoretical_order())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    fn root(&self) -> Sub {
        (0..self.perms.len() as u32).collect()
    }

    /// Orbits of the subgroup, longest first, ties broken by smallest point.
    fn orbits(&self, sub: &Sub) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if seen[x] {
                continue;
            }
            let mut orbit = Vec::new();
            for &h in sub {
                let y = self.perms[h as usize].apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        out
    }

    fn stabilizer(&self, sub: &Sub, x: usize) -> Sub {
        sub.iter().copied().filter(|&h| self.perms[h as usize].fixes(x)).collect()
    }

    /// Sizes of all greedy bases, exploring every longest orbit at each step.
    pub fn greedy_sizes(&self, opts: &SearchOptions) -> Result<GreedyOutcome> {
        let nodes = AtomicU64::new(0);
        let counter = Counter {
            nodes: &nodes,
            cap: opts.node_cap,
        };
        let root = self.root();
        let suffixes = if root.len() == 1 {
            BTreeMap::from([(0, Vec::new())])
        } else {
            let orbits = self.orbits(&root);
            let longest = orbits[0].len();
            let reps: Vec<usize> = orbits.iter().take_while(|o| o.len() == longest).map(|o| o[0]).collect();
            let parts = par_map(&reps, opts.threads, |&x| {
                let mut memo = HashMap::new();
                self.greedy_rec(self.stabilizer(&root, x), &counter, &mut memo)
                    .map(|m| (x, m))
            });
            let mut merged = BTreeMap::new();
            for part in parts {
                let (x, m) = part?;
                for (len, suffix) in m {
                    merged.entry(len + 1).or_insert_with(|| {
                        let mut s = vec![x];
                        s.extend(suffix);
                        s
                    });
                }
            }
            merged
        };
        let sizes = suffixes.keys().map(|l| l + self.prefix.len()).collect();
        let witnesses = suffixes
            .into_values()
            .map(|s| self.prefix.iter().copied().chain(s).collect())
            .collect();
        Ok(GreedyOutcome { sizes, witnesses })
    }

    fn greedy_rec(
        &self,
        sub: Sub,
        counter: &Counter,
        memo: &mut HashMap<Sub, BTreeMap<usize, Vec<usize>>>,
    ) -> Result<BTreeMap<usize, Vec<usize>>> {
        if sub.len() == 1 {
            return Ok(BTreeMap::from([(0, Vec::new())]));
        }
        if let Some(m) = memo.get(&sub) {
            return Ok(m.clone());
        }
        counter.tick()?;
        let orbits = self.orbits(&sub);
        let longest = orbits[0].len();
        let mut out = BTreeMap::new();
        for orbit in orbits.iter().take_while(|o| o.len() == longest) {
            let x = orbit[0];
            let child = self.greedy_rec(self.stabilizer(&sub, x), counter, memo)?;
            for (len, suffix) in child {
                out.entry(len + 1).or_insert_with(|| {
                    let mut s = vec![x];
                    s.extend(suffix);
                    s
                });
            }
        }
        memo.insert(sub, out.clone());
        Ok(out)
    }

    /// The minimal base size and a base realising it, by iterative deepening.
    pub fn min_base(&self, opts: &SearchOptions) -> Result<(usize, Vec<usize>)> {
        let nodes = AtomicU64::new(0);
        let counter = Counter {
            nodes: &nodes,
            cap: opts.node_cap,
        };
        let root = self.root();
        for depth in 0.. {
            let found = if depth == 0 || root.len() == 1 {
                self.min_rec(&root, depth, &counter)?
            } else {
                let cands = self.candidates(&root);
                let parts = par_map(&cands, opts.threads, |(x, stab)| {
                    self.min_rec(stab, depth - 1, &counter).map(|r| r.map(|mut s| {
                        s.insert(0, *x);
                        s
                    }))
                });
                let mut hit = None;
                for p in parts {
                    if let Some(s) = p? {
                        hit.get_or_insert(s);
                    }
                }
                hit
            };
            if let Some(suffix) = found {
                let base: Vec<usize> = self.prefix.iter().copied().chain(suffix).collect();
                return Ok((base.len(), base));
            }
        }
        unreachable!()
    }

    /// One point per non-trivial orbit with its stabiliser, smallest stabiliser first.
    fn candidates(&self, sub: &Sub) -> Vec<(usize, Sub)> {
        let mut c: Vec<(usize, Sub)> = self
            .orbits(sub)
            .into_iter()
            .filter(|o| o.len() > 1)
            .map(|o| (o[0], self.stabilizer(sub, o[0])))
            .collect();
        c.sort_by_key(|(x, s)| (s.len(), *x));
        c
    }

    fn min_rec(&self, sub: &Sub, remaining: usize, counter: &Counter) -> Result<Option<Vec<usize>>> {
        if sub.len() == 1 {
            return Ok(Some(Vec::new()));
        }
        if remaining == 0 {
            return Ok(None);
        }
        counter.tick()?;
        // every orbit of a later stabiliser is at most as long as the longest orbit here
        let longest = self.orbits(sub)[0].len() as u128;
        let bound = (0..remaining).try_fold(1u128, |acc, _| acc.checked_mul(longest));
        if bound.is_some_and(|b| (sub.len() as u128) > b) {
            return Ok(None);
        }
        for (x, stab) in self.candidates(sub) {
            if let Some(mut s) = self.min_rec(&stab, remaining - 1, counter)? {
                s.insert(0, x);
                return Ok(Some(s));
            }
        }
        Ok(None)
    }

    /// The largest irredundant base and one witness.
    pub fn max_irredundant(&self, opts: &SearchOptions) -> Result<(usize, Vec<usize>)> {
        let nodes = AtomicU64::new(0);
        let counter = Counter {
            nodes: &nodes,
            cap: opts.node_cap,
        };
        let root = self.root();
        let suffix = if root.len() == 1 {
            Vec::new()
        } else {
            let cands = self.candidates(&root);
            let parts = par_map(&cands, opts.threads, |(x, stab)| {
                let mut memo = HashMap::new();
                self.irr_rec(stab.clone(), &counter, &mut memo).map(|mut s| {
                    s.insert(0, *x);
                    s
                })
            });
            let mut best: Vec<usize> = Vec::new();
            for p in parts {
                let s = p?;
                if s.len() > best.len() {
                    best = s;
                }
            }
            best
        };
        let base: Vec<usize> = self.prefix.iter().copied().chain(suffix).collect();
        Ok((base.len(), base))
    }

    fn irr_rec(&self, sub: Sub, counter: &Counter, memo: &mut HashMap<Sub, Vec<usize>>) -> Result<Vec<usize>> {
        if sub.len() == 1 {
            return Ok(Vec::new());
        }
        if let Some(s) = memo.get(&sub) {
            return Ok(s.clone());
        }
        counter.tick()?;
        // each step at least halves the stabiliser
        let ceiling = sub.len().ilog2() as usize;
        let mut best: Vec<usize> = Vec::new();
        for (x, stab) in self.candidates(&sub) {
            let mut s = self.irr_rec(stab, counter, memo)?;
            if s.len() + 1 > best.len() {
                s.insert(0, x);
                best = s;
                if best.len() == ceiling {
                    break;
                }
            }
        }
        memo.insert(sub, best.clone());
        Ok(best)
    }

    /// Whether `points` has trivial pointwise stabiliser (the prefix is prepended).
    pub fn is_base(&self, points: &[usize]) -> bool {
        self.perms
            .iter()
            .filter(|p| points.iter().all(|&x| p.fixes(x)))
            .take(2)
            .count()
            == 1
    }
}
