use super::{AutGroupData, SimpleGroupData};
use crate::error::Result;
use crate::perm::{Permutation, StabilizerChain};

/// Hol(T) = T:Aut(T), optionally with the inversion map, acting on T.
///
/// `g in T` acts as `t -> g^-1 t`, automorphisms act directly and the
/// inversion map sends `t` to `t^-1`.
#[derive(Clone, Debug)]
pub struct HolomorphAction {
    pub degree: usize,
    pub translations: Vec<Permutation>,
    pub automorphisms: Vec<Permutation>,
    pub inversion: Option<Permutation>,
}

/// The permutation `t -> g^-1 t` of T.
pub fn translation(t: &SimpleGroupData, g: usize) -> Permutation {
    let gi = t.inv(g);
    Permutation::new((0..t.order()).map(|x| t.mul(gi, x) as u32).collect()).expect("bijection")
}

pub fn inversion_map(t: &SimpleGroupData) -> Permutation {
    Permutation::new((0..t.order()).map(|x| t.inv(x) as u32).collect()).expect("bijection")
}

impl HolomorphAction {
    pub fn new(t: &SimpleGroupData, aut: &AutGroupData, include_inversion: bool) -> Self {
        HolomorphAction {
            degree: t.order(),
            translations: t.generators().iter().map(|&g| translation(t, g)).collect(),
            automorphisms: aut.generators().to_vec(),
            inversion: include_inversion.then(|| inversion_map(t)),
        }
    }

    pub fn generators(&self) -> Vec<Permutation> {
        let mut g = self.translations.clone();
        g.extend(self.automorphisms.iter().cloned());
        g.extend(self.inversion.iter().cloned());
        g
    }

    pub fn chain(&self) -> Result<StabilizerChain> {
        StabilizerChain::build(self.degree, &self.generators())
    }
}
