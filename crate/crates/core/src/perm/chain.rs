use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::Permutation;
use crate::error::{Error, Result};

const NOT_IN_ORBIT: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

/// One level of a stabiliser chain: the strong generators fixing all earlier
/// base points, and a Schreier tree for the orbit of this level's base point.
#[derive(Clone, Debug)]
pub struct Level {
    point: usize,
    gens: Vec<Permutation>,
    inv_gens: Vec<Permutation>,
    orbit: Vec<u32>,
    // edge[x] = index of the generator labelling the tree edge into x
    edge: Vec<u32>,
    // checked[j] = length of the orbit prefix whose Schreier generators for gens[j] are known to sift
    checked: Vec<usize>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Self {
        let mut edge = vec![NOT_IN_ORBIT; degree];
        edge[point] = ROOT;
        Level {
            point,
            gens: Vec::new(),
            inv_gens: Vec::new(),
            orbit: vec![point as u32],
            edge,
            checked: Vec::new(),
        }
    }

    fn add_generator(&mut self, g: Permutation) {
        self.inv_gens.push(g.inverse());
        self.gens.push(g);
        self.checked.push(0);
        self.extend_orbit();
    }

    // Appends newly reached points only, so representatives of old points never change.
    fn extend_orbit(&mut self) {
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i] as usize;
            for (j, g) in self.gens.iter().enumerate() {
                let y = g.apply(x);
                if self.edge[y] == NOT_IN_ORBIT {
                    self.edge[y] = j as u32;
                    self.orbit.push(y as u32);
                }
            }
            i += 1;
        }
    }

    pub fn base_point(&self) -> usize {
        self.point
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn orbit(&self) -> &[u32] {
        &self.orbit
    }

    pub fn orbit_len(&self) -> usize {
        self.orbit.len()
    }

    pub fn contains_point(&self, x: usize) -> bool {
        self.edge[x] != NOT_IN_ORBIT
    }

    /// Right-multiplies `h` by the inverse of the transversal element for `x`,
    /// where `x` must lie in the orbit. Afterwards `h` maps `x`'s preimage under `h`
    /// to the base point.
    fn strip(&self, h: &mut Permutation, mut x: usize) {
        loop {
            let e = self.edge[x];
            if e == ROOT {
                return;
            }
            let inv = &self.inv_gens[e as usize];
            h.compose_in_place(inv);
            x = inv.apply(x);
        }
    }

    /// Transversal element mapping the base point to `x`.
    pub fn representative(&self, x: usize) -> Option<Permutation> {
        if !self.contains_point(x) {
            return None;
        }
        let mut word = Vec::new();
        let mut y = x;
        loop {
            let e = self.edge[y];
            if e == ROOT {
                break;
            }
            word.push(e as usize);
            y = self.inv_gens[e as usize].apply(y);
        }
        let mut u = Permutation::identity(self.edge.len());
        for &e in word.iter().rev() {
            u.compose_in_place(&self.gens[e]);
        }
        Some(u)
    }

    /// Inverse of [`Level::representative`], i.e. an element mapping `x` to the base point.
    pub fn representative_inverse(&self, x: usize) -> Option<Permutation> {
        if !self.contains_point(x) {
            return None;
        }
        let mut h = Permutation::identity(self.edge.len());
        self.strip(&mut h, x);
        Some(h)
    }
}

/// Options for [`StabilizerChain::build_with`].
#[derive(Clone, Debug, Default)]
pub struct ChainOptions {
    /// Points that must open the base, in this order.
    pub base_prefix: Vec<usize>,
    /// If the group order is known, construction stops as soon as it is reached.
    pub known_order: Option<BigUint>,
}

/// A base and strong generating set, built by deterministic Schreier-Sims.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
    generators: Vec<Permutation>,
}

impl StabilizerChain {
    pub fn build(degree: usize, generators: &[Permutation]) -> Result<Self> {
        Self::build_with(degree, generators, &ChainOptions::default())
    }

    pub fn trivial(degree: usize) -> Self {
        StabilizerChain {
            degree,
            levels: Vec::new(),
            generators: Vec::new(),
        }
    }

    pub fn build_with(degree: usize, generators: &[Permutation], opts: &ChainOptions) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Domain("permutation degree must be at least 1".into()));
        }
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    actual: g.degree(),
                });
            }
        }
        for &p in &opts.base_prefix {
            if p >= degree {
                return Err(Error::PointOutOfRange { point: p, degree });
            }
        }
        let gens: Vec<Permutation> = generators.iter().filter(|g| !g.is_identity()).cloned().collect();

        let mut chain = StabilizerChain {
            degree,
            levels: opts.base_prefix.iter().map(|&p| Level::new(p, degree)).collect(),
            generators: gens.clone(),
        };
        for g in &gens {
            let fixed = chain.levels.iter().take_while(|l| g.fixes(l.point)).count();
            if fixed == chain.levels.len() {
                let p = g.first_moved_point().expect("non-identity");
                chain.levels.push(Level::new(p, degree));
            }
        }
        for g in &gens {
            let mut depth = 0;
            while depth < chain.levels.len() {
                chain.levels[depth].add_generator(g.clone());
                if !g.fixes(chain.levels[depth].point) {
                    break;
                }
                depth += 1;
            }
        }
        chain.schreier_sims(opts.known_order.as_ref())?;
        Ok(chain)
    }

    fn schreier_sims(&mut self, known_order: Option<&BigUint>) -> Result<()> {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            if let Some(target) = known_order {
                let ord = self.order();
                if &ord == target {
                    return Ok(());
                }
                if &ord > target {
                    return Err(Error::Internal(format!(
                        "group order exceeds the expected value {target}"
                    )));
                }
            }
            let level = i as usize;
            match self.find_unsifted(level) {
                Some((residue, drop)) => {
                    if drop == self.levels.len() {
                        let p = residue.first_moved_point().expect("non-identity residue");
                        self.levels.push(Level::new(p, self.degree));
                    }
                    for l in level + 1..=drop {
                        self.levels[l].add_generator(residue.clone());
                    }
                    i = drop as isize;
                }
                None => i -= 1,
            }
        }
        if let Some(target) = known_order {
            if &self.order() != target {
                return Err(Error::Internal(format!(
                    "generated group has order {} but {target} was expected",
                    self.order()
                )));
            }
        }
        Ok(())
    }

    /// Finds a Schreier generator at `level` that does not sift through the deeper levels.
    fn find_unsifted(&mut self, level: usize) -> Option<(Permutation, usize)> {
        let ngens = self.levels[level].gens.len();
        for j in 0..ngens {
            loop {
                let lv = &self.levels[level];
                let pos = lv.checked[j];
                if pos >= lv.orbit.len() {
                    break;
                }
                let b = lv.orbit[pos] as usize;
                let bs = lv.gens[j].apply(b);
                self.levels[level].checked[j] = pos + 1;
                let lv = &self.levels[level];
                let s = &lv.gens[j];
                if lv.edge[bs] == j as u32 && lv.inv_gens[j].apply(bs) == b {
                    continue;
                }
                let mut h = lv.representative(b).expect("orbit point");
                h.compose_in_place(s);
                lv.strip(&mut h, bs);
                let (res, drop) = self.sift_from(h, level + 1);
                if drop < self.levels.len() || !res.is_identity() {
                    return Some((res, drop));
                }
            }
        }
        None
    }

    fn sift_from(&self, mut h: Permutation, from: usize) -> (Permutation, usize) {
        for (l, lv) in self.levels.iter().enumerate().skip(from) {
            let x = h.apply(lv.point);
            if !lv.contains_point(x) {
                return (h, l);
            }
            lv.strip(&mut h, x);
        }
        (h, self.levels.len())
    }

    /// Sifts `g` through the chain, returning the residue and the level at which
    /// sifting stopped (equal to the base length if it passed every level).
    pub fn sift(&self, g: &Permutation) -> Result<(Permutation, usize)> {
        self.check_degree(g)?;
        Ok(self.sift_from(g.clone(), 0))
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        let (res, drop) = self.sift(g)?;
        Ok(drop == self.levels.len() && res.is_identity())
    }

    fn check_degree(&self, g: &Permutation) -> Result<()> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                actual: g.degree(),
            });
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Generators of the whole group (the level-0 strong generators).
    pub fn generators(&self) -> &[Permutation] {
        match self.levels.first() {
            Some(l) => &l.gens,
            None => &self.generators,
        }
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.iter().all(|l| l.orbit.len() == 1)
    }

    /// Sub-chain for the pointwise stabiliser of the first `depth` base points.
    pub fn tail(&self, depth: usize) -> StabilizerChain {
        let levels: Vec<Level> = self.levels[depth.min(self.levels.len())..].to_vec();
        let generators = levels.first().map(|l| l.gens.clone()).unwrap_or_default();
        StabilizerChain {
            degree: self.degree,
            levels,
            generators,
        }
    }

    /// Rebuilds the chain so that its base starts with `prefix`.
    pub fn with_base_prefix(&self, prefix: &[usize]) -> Result<StabilizerChain> {
        if self.base().starts_with(prefix) {
            return Ok(self.clone());
        }
        let opts = ChainOptions {
            base_prefix: prefix.to_vec(),
            known_order: Some(self.order()),
        };
        StabilizerChain::build_with(self.degree, self.generators(), &opts)
    }

    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<StabilizerChain> {
        for &p in points {
            if p >= self.degree {
                return Err(Error::PointOutOfRange {
                    point: p,
                    degree: self.degree,
                });
            }
        }
        Ok(self.with_base_prefix(points)?.tail(points.len()))
    }

    pub fn point_stabilizer(&self, point: usize) -> Result<StabilizerChain> {
        self.pointwise_stabilizer(&[point])
    }

    /// Lists every element. Fails with a resource error above `cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > BigUint::from(cap) {
            return Err(Error::resource("element enumeration", cap));
        }
        let mut out = vec![Permutation::identity(self.degree)];
        for lv in self.levels.iter().rev() {
            let reps: Vec<Permutation> = lv
                .orbit
                .iter()
                .map(|&x| lv.representative(x as usize).expect("orbit point"))
                .collect();
            let mut next = Vec::with_capacity(out.len() * reps.len());
            for g in &out {
                for u in &reps {
                    next.push(g.compose(u));
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Builds the chain of the subgroup generated by `elements`, adding only
    /// elements not already contained in the growing subgroup.
    pub fn subgroup_from_elements<'a>(
        degree: usize,
        elements: impl IntoIterator<Item = &'a Permutation>,
    ) -> Result<StabilizerChain> {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut chain = StabilizerChain::trivial(degree);
        for g in elements {
            if !chain.contains(g)? {
                gens.push(g.clone());
                chain = StabilizerChain::build(degree, &gens)?;
            }
        }
        Ok(chain)
    }
}
