use std::collections::HashMap;

use super::{Permutation, StabilizerChain};
use crate::error::Result;

/// Default cap on the group order for enumeration-based class computations.
pub const DEFAULT_ORDER_CAP: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub representative: Permutation,
    pub size: u64,
    pub element_order: u64,
}

/// Conjugacy classes by full enumeration.
///
/// Classes are sorted by element order, then size, then representative; the
/// representative is the lexicographically smallest member.
pub fn conjugacy_classes(chain: &StabilizerChain, order_cap: u64) -> Result<Vec<ConjClass>> {
    let elements = chain.elements(order_cap)?;
    let index: HashMap<&Permutation, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let gens = chain.generators();
    let mut class_of = vec![usize::MAX; elements.len()];
    let mut classes = Vec::new();
    for start in 0..elements.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[start] = id;
        let mut members = vec![start];
        let mut i = 0;
        while i < members.len() {
            let x = &elements[members[i]];
            for s in gens {
                let y = index[&x.conjugate_by(s)];
                if class_of[y] == usize::MAX {
                    class_of[y] = id;
                    members.push(y);
                }
            }
            i += 1;
        }
        let rep = members.iter().map(|&m| &elements[m]).min().expect("non-empty").clone();
        classes.push(ConjClass {
            element_order: rep.order(),
            size: members.len() as u64,
            representative: rep,
        });
    }
    classes.sort_by(|a, b| {
        (a.element_order, a.size, &a.representative).cmp(&(b.element_order, b.size, &b.representative))
    });
    Ok(classes)
}

/// The centraliser of `g` in the group, by filtering the enumerated elements.
pub fn centralizer(chain: &StabilizerChain, g: &Permutation, order_cap: u64) -> Result<StabilizerChain> {
    chain.sift(g)?;
    if g.is_identity() {
        return Ok(chain.clone());
    }
    let elements = chain.elements(order_cap)?;
    let commuting = elements.iter().filter(|h| g.compose(h) == h.compose(g));
    StabilizerChain::subgroup_from_elements(chain.degree(), commuting)
}
