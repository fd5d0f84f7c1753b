use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::config::{DiagonalConfig, NamedTop, OutPart, QLabel, TopPart};
use crate::catalog::{AutGroupData, SimpleSpec};

/// How the swap of the two factors meets G, for k = 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SwapCase {
    /// No element of G swaps the factors.
    NoSwap,
    /// Some element `rho sigma` lies in G, but none with `rho` in Inndiag(T).
    OuterSwapOnly,
    /// `rho sigma` lies in G for some `rho` in Inndiag(T) \ Inn(T), but `sigma` does not.
    InndiagSwap,
    /// The pure swap `sigma` lies in G.
    PureSwap,
}

impl SwapCase {
    pub fn letter(&self) -> char {
        match self {
            SwapCase::NoSwap => 'a',
            SwapCase::OuterSwapOnly => 'b',
            SwapCase::InndiagSwap => 'c',
            SwapCase::PureSwap => 'd',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Overgroup {
    pub config: DiagonalConfig,
    /// Elements of the corresponding subgroup of Out(T) x S_2, as (Out label, swaps?).
    pub pairs: Vec<(u32, bool)>,
    pub case: SwapCase,
}

/// Every group `T^2 <= G <= T^2.(Out(T) x S_2)`, one per subgroup of Out(T) x S_2.
pub fn enumerate_overgroups(t: SimpleSpec, aut: &AutGroupData) -> Vec<Overgroup> {
    let out = aut.out_order() as u32;
    let all: Vec<(u32, bool)> = (0..out).flat_map(|o| [(o, false), (o, true)]).collect();
    let mul = |a: (u32, bool), b: (u32, bool)| (aut.out_mul(a.0 as usize, b.0 as usize) as u32, a.1 ^ b.1);
    let close = |gens: &[(u32, bool)]| -> BTreeSet<(u32, bool)> {
        let mut set = BTreeSet::from([(0, false)]);
        loop {
            let before = set.len();
            let cur: Vec<_> = set.iter().copied().collect();
            for &x in &cur {
                for &g in gens {
                    set.insert(mul(x, g));
                }
            }
            if set.len() == before {
                return set;
            }
        }
    };
    // Out(T) x S_2 has order at most 8 here, so subgroups are generated by at most three elements.
    let mut subgroups: BTreeSet<Vec<(u32, bool)>> = BTreeSet::new();
    for &a in &all {
        for &b in &all {
            for &c in &all {
                subgroups.insert(close(&[a, b, c]).into_iter().collect());
            }
        }
    }
    let mut list: Vec<Vec<(u32, bool)>> = subgroups.into_iter().collect();
    list.sort_by_key(|h| (h.len(), h.clone()));
    let inndiag = aut.inndiag_labels();
    list.into_iter()
        .map(|pairs| {
            let o_part: Vec<u32> = pairs.iter().filter(|p| !p.1 && p.0 != 0).map(|p| p.0).collect();
            let swaps: Vec<u32> = pairs.iter().filter(|p| p.1).map(|p| p.0).collect();
            let case = if swaps.is_empty() {
                SwapCase::NoSwap
            } else if swaps.contains(&0) {
                SwapCase::PureSwap
            } else if swaps.iter().any(|o| inndiag.contains(o)) {
                SwapCase::InndiagSwap
            } else {
                SwapCase::OuterSwapOnly
            };
            let (top, q, twist) = match case {
                SwapCase::NoSwap => (TopPart::Named(NamedTop::Trivial), QLabel::S, None),
                SwapCase::PureSwap => (TopPart::Named(NamedTop::S), QLabel::S, None),
                _ => (TopPart::Named(NamedTop::S), QLabel::A, Some(swaps[0])),
            };
            let config = DiagonalConfig::custom(t, 2, OutPart::Labels(o_part), top, q, twist);
            Overgroup { config, pairs, case }
        })
        .collect()
}
