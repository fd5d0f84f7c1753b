use std::collections::HashMap;

use super::{Permutation, StabilizerChain};
use crate::error::{Error, Result};

/// Default bound on the number of visited states in a transporter search.
pub const DEFAULT_MEMORY_CAP: usize = 5_000_000;

/// Anything that can answer "is there an element mapping this tuple to that one".
pub trait TupleTransporter {
    type Elem: Clone + std::fmt::Debug + serde::Serialize;

    fn domain_size(&self) -> usize;

    /// Some element `g` with `src[i]^g = dst[i]` for all `i`, or `None`.
    fn transporter(&self, src: &[usize], dst: &[usize], memory_cap: usize) -> Result<Option<Self::Elem>>;
}

fn check_tuples(n: usize, src: &[usize], dst: &[usize]) -> Result<()> {
    if src.len() != dst.len() {
        return Err(Error::Domain(format!(
            "tuples of different lengths {} and {}",
            src.len(),
            dst.len()
        )));
    }
    for &p in src.iter().chain(dst) {
        if p >= n {
            return Err(Error::PointOutOfRange { point: p, degree: n });
        }
    }
    Ok(())
}

/// Level-wise breadth-first transporter.
///
/// The search walks the orbit of `dst[0]` under `G`, then the orbit of `dst[1]`
/// under `G_{dst[0]}`, and so on, each orbit stored as a tree of generator
/// labels. The visited-state count is the total size of those orbit trees.
pub fn transporter_tuple(
    chain: &StabilizerChain,
    src: &[usize],
    dst: &[usize],
    memory_cap: usize,
) -> Result<Option<Permutation>> {
    let n = chain.degree();
    check_tuples(n, src, dst)?;
    if src == dst {
        return Ok(Some(Permutation::identity(n)));
    }
    let mut prefix: Vec<usize> = Vec::new();
    for &p in dst {
        if !prefix.contains(&p) {
            prefix.push(p);
        }
    }
    let c = chain.with_base_prefix(&prefix)?;
    let visited: usize = c.levels().iter().take(prefix.len()).map(|l| l.orbit_len()).sum();
    if visited > memory_cap {
        return Err(Error::resource("transporter visited states", memory_cap));
    }
    let mut g = Permutation::identity(n);
    for (level, &d) in prefix.iter().enumerate() {
        let i = dst.iter().position(|&p| p == d).expect("prefix point comes from dst");
        let x = g.apply(src[i]);
        if x == d {
            continue;
        }
        match c.levels()[level].representative_inverse(x) {
            Some(h) => g.compose_in_place(&h),
            None => return Ok(None),
        }
    }
    if !src.iter().zip(dst).all(|(&s, &d)| g.apply(s) == d) {
        return Ok(None);
    }
    Ok(Some(g))
}

impl TupleTransporter for StabilizerChain {
    type Elem = Permutation;

    fn domain_size(&self) -> usize {
        self.degree()
    }

    fn transporter(&self, src: &[usize], dst: &[usize], memory_cap: usize) -> Result<Option<Permutation>> {
        transporter_tuple(self, src, dst, memory_cap)
    }
}

/// Full orbit of a tuple under the generators, by breadth-first search over tuples.
/// Returns each reached tuple with the word (generator indices) reaching it.
pub fn tuple_orbit(
    generators: &[Permutation],
    tuple: &[usize],
    memory_cap: usize,
) -> Result<HashMap<Vec<usize>, Vec<usize>>> {
    let mut seen: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    seen.insert(tuple.to_vec(), Vec::new());
    let mut queue = vec![tuple.to_vec()];
    let mut i = 0;
    while i < queue.len() {
        let t = queue[i].clone();
        let word = seen[&t].clone();
        for (j, g) in generators.iter().enumerate() {
            let u: Vec<usize> = t.iter().map(|&x| g.apply(x)).collect();
            if !seen.contains_key(&u) {
                if seen.len() >= memory_cap {
                    return Err(Error::resource("tuple orbit states", memory_cap));
                }
                let mut w = word.clone();
                w.push(j);
                seen.insert(u.clone(), w);
                queue.push(u);
            }
        }
        i += 1;
    }
    Ok(seen)
}
