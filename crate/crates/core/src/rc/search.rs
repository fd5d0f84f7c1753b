use std::collections::HashMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::witness::{certify, witness_rc4, Provenance, WitnessPair};
use crate::base::{BaseProblem, SearchOptions, DEFAULT_ELEMENT_CAP};
use crate::diagonal::DiagonalGroup;
use crate::error::{Error, Result};
use crate::perm::{Permutation, DEFAULT_MEMORY_CAP};

/// G_D on Omega plus the socle translations, enough to put tuples in normal form.
struct TupleOrbits<'a> {
    g: &'a DiagonalGroup,
    d: Vec<Permutation>,
}

impl<'a> TupleOrbits<'a> {
    fn new(g: &'a DiagonalGroup) -> Result<Self> {
        Ok(TupleOrbits {
            g,
            d: g.d_permutations(DEFAULT_ELEMENT_CAP)?,
        })
    }

    /// The least image of the tuple under G, in lexicographic order. Its first entry is always D.
    fn canonical(&self, tuple: &[usize]) -> Vec<u32> {
        let a = self.g.to_base_point(tuple[0]);
        let moved: Vec<usize> = tuple[1..].iter().map(|&x| self.g.act_index(x, &a)).collect();
        let mut best: Option<Vec<u32>> = None;
        for h in &self.d {
            let img: Vec<u32> = moved.iter().map(|&x| h.apply(x) as u32).collect();
            if best.as_ref().is_none_or(|b| img < *b) {
                best = Some(img);
            }
        }
        best.unwrap_or_default()
    }

    /// One tuple per G-orbit on `len`-tuples, each starting at D.
    fn representatives(&self, len: usize, cap: u64) -> Result<Vec<Vec<usize>>> {
        let n = self.g.omega_size();
        let mut level: Vec<(Vec<usize>, Vec<usize>)> = vec![(vec![self.g.base_point()], (0..self.d.len()).collect())];
        let mut count = 1u64;
        for _ in 1..len {
            let mut next = Vec::new();
            for (tuple, stab) in &level {
                let mut seen = vec![false; n];
                for x in 0..n {
                    if seen[x] {
                        continue;
                    }
                    let mut fixers = Vec::new();
                    for &i in stab {
                        let y = self.d[i].apply(x);
                        seen[y] = true;
                        if y == x {
                            fixers.push(i);
                        }
                    }
                    count += 1;
                    if count > cap {
                        return Err(Error::resource("tuple orbit representatives", cap));
                    }
                    let mut t = tuple.clone();
                    t.push(x);
                    next.push((t, fixers));
                }
            }
            level = next;
        }
        Ok(level.into_iter().map(|(t, _)| t).collect())
    }
}

/// Looks for tuples `lam ~_s sig` in different orbits, over lengths `s + 1 ..= max_len`.
///
/// Both relations are unchanged when the two tuples are moved independently, so it
/// suffices to compare orbit representatives by the orbits of their `s`-subtuples.
pub fn find_witness(g: &DiagonalGroup, s: usize, max_len: usize, opts: &SearchOptions) -> Result<Option<WitnessPair>> {
    if s == 0 {
        return Err(Error::Domain("s must be positive".into()));
    }
    let orbits = TupleOrbits::new(g)?;
    for len in s + 1..=max_len {
        let reps = orbits.representatives(len, opts.node_cap)?;
        let subsets: Vec<Vec<usize>> = (0..len).combinations(s).collect();
        let mut seen: HashMap<Vec<Vec<u32>>, usize> = HashMap::new();
        for (r, tuple) in reps.iter().enumerate() {
            let sig: Vec<Vec<u32>> = subsets
                .iter()
                .map(|idx| orbits.canonical(&idx.iter().map(|&i| tuple[i]).collect::<Vec<_>>()))
                .collect();
            if let Some(&other) = seen.get(&sig) {
                let pts = |t: &[usize]| t.iter().map(|&x| g.point(x)).collect();
                return Ok(Some(WitnessPair::new(pts(&reps[other]), pts(tuple), s, Provenance::Exhaustive)?));
            }
            seen.insert(sig, r);
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RcBound {
    pub label: String,
    pub lower: usize,
    pub lower_source: String,
    pub upper: usize,
    pub upper_source: String,
    pub exact: bool,
}

/// Brackets the relational complexity: `I + 1` from above, certified witnesses from below.
pub fn rc_bounds(g: &DiagonalGroup, max_len: usize, opts: &SearchOptions) -> Result<RcBound> {
    let irr = BaseProblem::from_diagonal(g, DEFAULT_ELEMENT_CAP)?.max_irredundant(opts)?.0;
    let upper = irr + 1;
    let (mut lower, mut lower_source) = (1, "trivial".to_string());
    let pair = witness_rc4(g)?;
    if let Some(r) = certify(g, &pair, DEFAULT_MEMORY_CAP)?.rc_lower {
        lower = r;
        lower_source = format!("{:?} witness", pair.provenance);
    }
    if lower < upper {
        for s in (lower..upper).rev() {
            if let Some(p) = find_witness(g, s, max_len, opts)? {
                if let Some(r) = certify(g, &p, DEFAULT_MEMORY_CAP)?.rc_lower {
                    lower = r;
                    lower_source = format!("exhaustive search, length {}", p.lam.len());
                }
                break;
            }
        }
    }
    Ok(RcBound {
        label: g.config().label(),
        lower,
        lower_source,
        upper,
        upper_source: format!("I + 1 with I = {irr}"),
        exact: lower == upper,
    })
}
