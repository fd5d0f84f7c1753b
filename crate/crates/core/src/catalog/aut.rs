use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;

use super::SimpleGroupData;
use crate::error::{Error, Result};
use crate::perm::{ChainOptions, Permutation, StabilizerChain};

const MULT_TABLE_LIMIT: usize = 3000;

/// Aut(T) realised as permutations of T's element indices.
#[derive(Clone, Debug)]
pub struct AutGroupData {
    generators: Vec<Permutation>,
    chain: StabilizerChain,
    inn_chain: StabilizerChain,
    elements: Vec<Permutation>,
    // automorphisms are determined by the images of T's generators
    key_gens: Vec<usize>,
    index: HashMap<[u32; 3], u32>,
    mult: Option<Vec<u32>>,
    inv: Vec<u32>,
    // inner[t] = index of conjugation by t
    inner: Vec<u32>,
    // inner_of[phi] = t if phi is conjugation by t
    inner_of: Vec<u32>,
    out_label: Vec<u32>,
    out_reps: Vec<u32>,
    out_mult: Vec<u32>,
    inndiag_labels: Vec<u32>,
}

/// Conjugation by `t` as a permutation of element indices: `x -> t^-1 x t`.
pub fn inner_automorphism(t: &SimpleGroupData, g: usize) -> Permutation {
    let images = (0..t.order()).map(|x| t.conj(x, g) as u32).collect();
    Permutation::new(images).expect("conjugation is a bijection")
}

/// Whether the permutation of indices preserves multiplication.
pub fn is_automorphism(t: &SimpleGroupData, phi: &Permutation) -> bool {
    let n = t.order();
    phi.degree() == n
        && (0..n).all(|x| (0..n).all(|y| phi.apply(t.mul(x, y)) == t.mul(phi.apply(x), phi.apply(y))))
}

// A generating pair, chosen as the first pair (a of largest order, then b by index) that generates.
fn generating_pair(t: &SimpleGroupData) -> (usize, usize) {
    let mut by_order: Vec<usize> = (1..t.order()).collect();
    by_order.sort_by_key(|&x| (std::cmp::Reverse(t.element_order(x)), x));
    for &a in &by_order {
        for b in 1..t.order() {
            if t.generates(&[a, b]) {
                return (a, b);
            }
        }
    }
    unreachable!("simple groups are 2-generated")
}

// Extends a -> a2, b -> b2 to a map on T along the Cayley graph, checking consistency on every edge.
fn extend(t: &SimpleGroupData, (a, b): (usize, usize), (a2, b2): (usize, usize)) -> Option<Permutation> {
    let n = t.order();
    let mut img = vec![u32::MAX; n];
    img[0] = 0;
    let mut queue = vec![0usize];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        let xi = img[x] as usize;
        for (g, g2) in [(a, a2), (b, b2)] {
            let y = t.mul(x, g);
            let yi = t.mul(xi, g2) as u32;
            if img[y] == u32::MAX {
                img[y] = yi;
                queue.push(y);
            } else if img[y] != yi {
                return None;
            }
        }
        i += 1;
    }
    Permutation::new(img).ok()
}

impl AutGroupData {
    /// Finds Aut(T) by extending images of a generating pair.
    ///
    /// Composing with inner automorphisms, the image of `a` can be taken among
    /// T-class representatives, so only those are tried.
    pub fn build(t: &SimpleGroupData) -> Result<Self> {
        let expected_out = t.spec().expected_out_order()?;
        let expected = BigUint::from(t.order() as u64 * expected_out);
        let n = t.order();
        let inn_gens: Vec<Permutation> = t.generators().iter().map(|&g| inner_automorphism(t, g)).collect();
        let mut gens = inn_gens.clone();
        let mut chain = StabilizerChain::build(n, &gens)?;
        let (a, b) = generating_pair(t);
        let (oa, ob, oab) = (t.element_order(a), t.element_order(b), t.element_order(t.mul(a, b)));
        let reps: Vec<usize> = t
            .classes()
            .iter()
            .map(|c| c[0])
            .filter(|&x| t.element_order(x) == oa)
            .collect();
        'search: for &a2 in &reps {
            for b2 in 0..n {
                if chain.order() == expected {
                    break 'search;
                }
                if t.element_order(b2) != ob || t.element_order(t.mul(a2, b2)) != oab {
                    continue;
                }
                if let Some(phi) = extend(t, (a, b), (a2, b2)) {
                    if !chain.contains(&phi)? {
                        gens.push(phi);
                        chain = StabilizerChain::build(n, &gens)?;
                    }
                }
            }
        }
        if chain.order() != expected {
            return Err(Error::Internal(format!(
                "automorphism search for {} reached order {}, expected {expected}",
                t.spec(),
                chain.order()
            )));
        }
        Self::from_generators(t, gens, inn_gens)
    }

    /// Assembles the data from automorphism generators, validating each one.
    pub fn from_generators(t: &SimpleGroupData, gens: Vec<Permutation>, inn_gens: Vec<Permutation>) -> Result<Self> {
        let n = t.order();
        for g in &gens {
            if !is_automorphism(t, g) {
                return Err(Error::Internal(format!("{}: generator is not an automorphism", t.spec())));
            }
        }
        let expected_out = t.spec().expected_out_order()?;
        let expected = BigUint::from(n as u64 * expected_out);
        let chain = StabilizerChain::build_with(
            n,
            &gens,
            &ChainOptions {
                base_prefix: Vec::new(),
                known_order: Some(expected.clone()),
            },
        )?;
        let inn_chain = StabilizerChain::build(n, &inn_gens)?;
        if inn_chain.order() != BigUint::from(n) {
            return Err(Error::Internal(format!("{}: Inn(T) has the wrong order", t.spec())));
        }
        let mut elements = chain.elements(u64::MAX)?;
        elements.sort();
        let key_gens = t.generators().to_vec();
        let key = |f: &dyn Fn(usize) -> usize| -> [u32; 3] {
            let mut k = [u32::MAX; 3];
            for (slot, &g) in k.iter_mut().zip(&key_gens) {
                *slot = f(g) as u32;
            }
            k
        };
        let index: HashMap<[u32; 3], u32> = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (key(&|x| g.apply(x)), i as u32))
            .collect();
        let compose_idx = |i: usize, j: usize| -> u32 {
            let (a, b) = (&elements[i], &elements[j]);
            index[&key(&|x| b.apply(a.apply(x)))]
        };
        let inv = elements
            .iter()
            .map(|g| {
                let gi = g.inverse();
                index[&key(&|x| gi.apply(x))]
            })
            .collect();
        let inner: Vec<u32> = (0..n).map(|x| index[&key(&|y| t.conj(y, x))]).collect();
        let m = elements.len();
        let mut inner_of = vec![u32::MAX; m];
        for (x, &phi) in inner.iter().enumerate() {
            inner_of[phi as usize] = x as u32;
        }
        let mult = (m <= MULT_TABLE_LIMIT).then(|| {
            let mut tab = vec![0u32; m * m];
            for i in 0..m {
                for j in 0..m {
                    tab[i * m + j] = compose_idx(i, j);
                }
            }
            tab
        });

        // Cosets of Inn, labelled in order of their smallest element.
        let mut out_label = vec![u32::MAX; m];
        let mut out_reps = Vec::new();
        for i in 0..m {
            if out_label[i] != u32::MAX {
                continue;
            }
            let label = out_reps.len() as u32;
            out_reps.push(i as u32);
            for &c in &inner {
                let j = compose_idx(i, c as usize);
                out_label[j as usize] = label;
            }
        }
        let out = out_reps.len();
        if out as u64 != expected_out {
            return Err(Error::Internal(format!("{}: |Out| = {out}, expected {expected_out}", t.spec())));
        }
        let mut out_mult = vec![0u32; out * out];
        for i in 0..out {
            for j in 0..out {
                let x = compose_idx(out_reps[i] as usize, out_reps[j] as usize);
                out_mult[i * out + j] = out_label[x as usize];
            }
        }

        // Inndiag(T): Inn together with conjugation by diagonal automorphisms from PGL2.
        let mut inndiag: HashSet<u32> = HashSet::from([0]);
        if matches!(t.spec(), super::SimpleSpec::Psl2 { q } if q % 2 == 1) {
            let delta = &t.normalizer_generators()[0];
            let images: Vec<u32> = (0..n)
                .map(|x| {
                    let c = t.element(x).conjugate_by(delta);
                    t.index_of(&c).map(|i| i as u32)
                })
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Internal("diagonal automorphism does not normalise T".into()))?;
            let l = out_label[index[&key(&|x| images[x] as usize)] as usize];
            inndiag.insert(l);
        }
        let mut inndiag_labels: Vec<u32> = inndiag.into_iter().collect();
        inndiag_labels.sort_unstable();

        Ok(AutGroupData {
            generators: gens,
            chain,
            inn_chain,
            elements,
            key_gens,
            index,
            mult,
            inv,
            inner,
            inner_of,
            out_label,
            out_reps,
            out_mult,
            inndiag_labels,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn out_order(&self) -> usize {
        self.out_reps.len()
    }

    pub fn chain(&self) -> &StabilizerChain {
        &self.chain
    }

    pub fn inn_chain(&self) -> &StabilizerChain {
        &self.inn_chain
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, phi: &Permutation) -> Option<usize> {
        let i = self.lookup(|x| phi.apply(x))?;
        (&self.elements[i] == phi).then_some(i)
    }

    fn lookup(&self, f: impl Fn(usize) -> usize) -> Option<usize> {
        let mut k = [u32::MAX; 3];
        for (slot, &g) in k.iter_mut().zip(&self.key_gens) {
            *slot = f(g) as u32;
        }
        self.index.get(&k).map(|&i| i as usize)
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of `phi` followed by `psi`.
    pub fn mul(&self, phi: usize, psi: usize) -> usize {
        match &self.mult {
            Some(tab) => tab[phi * self.elements.len() + psi] as usize,
            None => {
                let (a, b) = (&self.elements[phi], &self.elements[psi]);
                self.lookup(|x| b.apply(a.apply(x))).expect("closed under composition")
            }
        }
    }

    pub fn inv(&self, phi: usize) -> usize {
        self.inv[phi] as usize
    }

    /// Image of the T-element `t` under the automorphism `phi`.
    #[inline]
    pub fn apply(&self, phi: usize, t: usize) -> usize {
        self.elements[phi].apply(t)
    }

    /// Index of the inner automorphism `x -> t^-1 x t`.
    pub fn inner(&self, t: usize) -> usize {
        self.inner[t] as usize
    }

    /// The element `t` with `phi` equal to conjugation by `t`, if `phi` is inner.
    pub fn inner_element(&self, phi: usize) -> Option<usize> {
        let t = self.inner_of[phi];
        (t != u32::MAX).then_some(t as usize)
    }

    /// Coset of Inn(T) containing `phi`, as a label in `0..|Out|`; label 0 is Inn(T).
    pub fn out_label(&self, phi: usize) -> usize {
        self.out_label[phi] as usize
    }

    /// Smallest automorphism in the given Out coset.
    pub fn out_rep(&self, label: usize) -> usize {
        self.out_reps[label] as usize
    }

    pub fn out_mul(&self, a: usize, b: usize) -> usize {
        self.out_mult[a * self.out_reps.len() + b] as usize
    }

    pub fn out_inv(&self, a: usize) -> usize {
        (0..self.out_order()).find(|&b| self.out_mul(a, b) == 0).expect("group")
    }

    pub fn out_element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.out_mul(x, a);
            k += 1;
        }
        k
    }

    /// Out labels of the cosets lying in Inndiag(T).
    pub fn inndiag_labels(&self) -> &[u32] {
        &self.inndiag_labels
    }

    /// `{phi in Aut(T) : t^phi in {t, t^-1}}`, as element indices.
    pub fn invertiliser(&self, t: &SimpleGroupData, x: usize) -> Vec<usize> {
        let xi = t.inv(x);
        (0..self.order())
            .filter(|&phi| {
                let y = self.apply(phi, x);
                y == x || y == xi
            })
            .collect()
    }

    pub fn centraliser(&self, x: usize) -> Vec<usize> {
        (0..self.order()).filter(|&phi| self.apply(phi, x) == x).collect()
    }

    /// Orbit of `x` under Aut(T), i.e. the Aut-class `x^Aut(T)`.
    pub fn class_of(&self, x: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order()).map(|phi| self.apply(phi, x)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Aut(T)-classes of T, sorted by element order, then size, then smallest member.
    pub fn t_classes(&self, t: &SimpleGroupData) -> Vec<Vec<usize>> {
        let n = t.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let c = self.class_of(x);
            for &y in &c {
                seen[y] = true;
            }
            out.push(c);
        }
        out.sort_by_key(|c| (t.element_order(c[0]), c.len(), c[0]));
        out
    }
}

/// `{phi in A : t^phi in {t, t^-1}}` for a subgroup `A` of Aut(T) given by its chain.
pub fn invertiliser(t: &SimpleGroupData, sub: &StabilizerChain, x: usize, order_cap: u64) -> Result<StabilizerChain> {
    let xi = t.inv(x);
    let els = sub.elements(order_cap)?;
    let kept = els.iter().filter(|phi| {
        let y = phi.apply(x);
        y == x || y == xi
    });
    StabilizerChain::subgroup_from_elements(sub.degree(), kept)
}
