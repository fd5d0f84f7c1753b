use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::gf::{prime_power, FiniteField};
use crate::perm::{Permutation, StabilizerChain};

/// Default cap on |T| for catalog construction.
pub const DEFAULT_T_ORDER_CAP: u64 = 1200;

/// Which simple group to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum SimpleSpec {
    Alt { n: u32 },
    #[serde(rename = "PSL2", alias = "L2")]
    Psl2 { q: u32 },
}

impl SimpleSpec {
    pub fn alt(n: u32) -> Self {
        SimpleSpec::Alt { n }
    }

    pub fn psl2(q: u32) -> Self {
        SimpleSpec::Psl2 { q }
    }

    /// |T| from the standard order formulas.
    pub fn expected_order(&self) -> u64 {
        match *self {
            SimpleSpec::Alt { n } => (1..=n as u64).product::<u64>() / 2,
            SimpleSpec::Psl2 { q } => {
                let q = q as u64;
                q * (q * q - 1) / 2u64.gcd(&(q - 1))
            }
        }
    }

    /// |Out(T)| from the known classification values.
    pub fn expected_out_order(&self) -> Result<u64> {
        match *self {
            SimpleSpec::Alt { n: 6 } => Ok(4),
            SimpleSpec::Alt { n } if n >= 5 => Ok(2),
            SimpleSpec::Psl2 { q } => {
                let (_, f) = prime_power(q as usize)
                    .ok_or_else(|| Error::Domain(format!("{q} is not a prime power")))?;
                Ok(2u64.gcd(&(q as u64 - 1)) * f as u64)
            }
            _ => Err(Error::Unsupported(format!("{self} is not simple"))),
        }
    }

    pub fn is_alt(&self, n: u32) -> bool {
        *self == SimpleSpec::Alt { n }
    }

    /// `A5` or `A6`, the two groups singled out throughout the k = 2 case analysis.
    pub fn is_a5_or_a6(&self) -> bool {
        self.is_alt(5) || self.is_alt(6)
    }
}

impl fmt::Display for SimpleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleSpec::Alt { n } => write!(f, "A{n}"),
            SimpleSpec::Psl2 { q } => write!(f, "L2({q})"),
        }
    }
}

impl FromStr for SimpleSpec {
    type Err = Error;

    /// Accepts `A5`, `Alt5`, `Alt(5)`, `L2_8`, `L2(8)`, `PSL2(8)`, `PSL2_8`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Config(format!("unrecognised simple group label `{s}`"));
        let number = |rest: &str| -> Result<u32> {
            let r = rest.trim_start_matches(['_', '(']).trim_end_matches(')');
            r.parse::<u32>().map_err(|_| bad())
        };
        let lower = t.to_ascii_lowercase();
        if let Some(rest) = lower.strip_prefix("psl2").or_else(|| lower.strip_prefix("l2")) {
            return Ok(SimpleSpec::Psl2 { q: number(rest)? });
        }
        if let Some(rest) = lower.strip_prefix("alt").or_else(|| lower.strip_prefix('a')) {
            return Ok(SimpleSpec::Alt { n: number(rest)? });
        }
        Err(bad())
    }
}

/// Options for [`SimpleGroupData::build`].
#[derive(Clone, Debug)]
pub struct CatalogOptions {
    pub order_cap: u64,
    /// Build PSL2(4), PSL2(5) and PSL2(9) as the isomorphic alternating group instead of failing.
    pub allow_aliases: bool,
}

impl Default for CatalogOptions {
    fn default() -> Self {
        CatalogOptions {
            order_cap: DEFAULT_T_ORDER_CAP,
            allow_aliases: false,
        }
    }
}

/// A small simple group with an indexed element table.
///
/// Elements are sorted lexicographically by their images in the natural
/// action, so index 0 is the identity.
#[derive(Clone, Debug)]
pub struct SimpleGroupData {
    spec: SimpleSpec,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    mult: Vec<u32>,
    inv: Vec<u32>,
    orders: Vec<u32>,
    generators: Vec<usize>,
    // extra permutations of the natural domain normalising T (diagonal and field automorphisms)
    normalizer_gens: Vec<Permutation>,
}

impl SimpleGroupData {
    pub fn build(spec: SimpleSpec) -> Result<Self> {
        Self::build_with(spec, &CatalogOptions::default())
    }

    pub fn build_with(spec: SimpleSpec, opts: &CatalogOptions) -> Result<Self> {
        let spec = match spec {
            SimpleSpec::Psl2 { q: 4 | 5 } if opts.allow_aliases => SimpleSpec::Alt { n: 5 },
            SimpleSpec::Psl2 { q: 9 } if opts.allow_aliases => SimpleSpec::Alt { n: 6 },
            SimpleSpec::Psl2 { q: q @ (4 | 5 | 9) } => {
                let alt = if q == 9 { 6 } else { 5 };
                return Err(Error::Unsupported(format!(
                    "L2({q}) is isomorphic to A{alt}; build A{alt} or enable aliases"
                )));
            }
            s => s,
        };
        let (degree, gens, normalizer_gens) = match spec {
            SimpleSpec::Alt { n } => {
                if n < 5 {
                    return Err(Error::Unsupported(format!("A{n} is not a non-abelian simple group")));
                }
                alt_generators(n as usize)?
            }
            SimpleSpec::Psl2 { q } => {
                match prime_power(q as usize) {
                    Some(_) if q >= 7 => {}
                    _ => return Err(Error::Unsupported(format!("L2({q}) is not supported"))),
                }
                if q > 64 {
                    return Err(Error::resource("L2 field size", 64u32));
                }
                psl2_generators(q as usize)?
            }
        };
        let expected = spec.expected_order();
        if expected > opts.order_cap {
            return Err(Error::resource(format!("|{spec}| = {expected}"), opts.order_cap));
        }
        let chain = StabilizerChain::build(degree, &gens)?;
        if chain.order() != expected.into() {
            return Err(Error::Internal(format!(
                "{spec}: generators produce a group of order {}",
                chain.order()
            )));
        }
        let mut elements = chain.elements(expected)?;
        elements.sort();
        let index: HashMap<Permutation, u32> =
            elements.iter().enumerate().map(|(i, g)| (g.clone(), i as u32)).collect();
        let n = elements.len();
        let mut mult = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mult[i * n + j] = index[&a.compose(b)];
            }
        }
        let inv: Vec<u32> = elements.iter().map(|g| index[&g.inverse()]).collect();
        let orders: Vec<u32> = elements.iter().map(|g| g.order() as u32).collect();
        let generators = gens.iter().map(|g| index[g] as usize).collect();
        let data = SimpleGroupData {
            spec,
            elements,
            index,
            mult,
            inv,
            orders,
            generators,
            normalizer_gens,
        };
        data.check_closure()?;
        Ok(data)
    }

    fn check_closure(&self) -> Result<()> {
        let n = self.order();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            for &g in &self.generators {
                let y = self.mul(queue[i], g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
            i += 1;
        }
        if queue.len() != n || !self.elements[0].is_identity() {
            return Err(Error::Internal(format!("{}: element table is not closed", self.spec)));
        }
        Ok(())
    }

    pub fn spec(&self) -> SimpleSpec {
        self.spec
    }

    pub fn name(&self) -> String {
        self.spec.to_string()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Degree of the natural permutation representation.
    pub fn natural_degree(&self) -> usize {
        self.elements[0].degree()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.elements.len() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g^-1 x g`.
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    pub fn element_order(&self, i: usize) -> usize {
        self.orders[i] as usize
    }

    /// Indices of the natural generators.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Permutations of the natural domain that normalise T but lie outside it.
    pub fn normalizer_generators(&self) -> &[Permutation] {
        &self.normalizer_gens
    }

    /// Whether the given elements generate T.
    pub fn generates(&self, gens: &[usize]) -> bool {
        let n = self.order();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            for &g in gens {
                let y = self.mul(queue[i], g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
            i += 1;
        }
        queue.len() == n
    }

    /// T-conjugacy classes, sorted by element order, then size, then smallest index.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut label = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if label[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            label[x] = id;
            let mut members = vec![x];
            let mut i = 0;
            while i < members.len() {
                for &g in &self.generators {
                    let y = self.conj(members[i], g);
                    if label[y] == usize::MAX {
                        label[y] = id;
                        members.push(y);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes.sort_by_key(|c| (self.element_order(c[0]), c.len(), c[0]));
        classes
    }

    /// Class labels in the style `1A`, `2A`, `5A`, `5B`, aligned with [`Self::classes`].
    pub fn class_labels(&self) -> Vec<String> {
        let classes = self.classes();
        let mut labels = Vec::with_capacity(classes.len());
        let mut prev = 0;
        let mut letter = b'A';
        for c in &classes {
            let o = self.element_order(c[0]);
            if o != prev {
                letter = b'A';
                prev = o;
            }
            labels.push(format!("{o}{}", letter as char));
            letter += 1;
        }
        labels
    }

    /// Smallest element of the class with the given label.
    pub fn class_representative(&self, label: &str) -> Result<usize> {
        let classes = self.classes();
        self.class_labels()
            .iter()
            .position(|l| l.eq_ignore_ascii_case(label))
            .map(|i| classes[i][0])
            .ok_or_else(|| Error::Config(format!("{} has no class labelled {label}", self.spec)))
    }

    /// SHA-256 over the element table in index order.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.spec.to_string().as_bytes());
        for g in &self.elements {
            for &x in g.images() {
                h.update(x.to_le_bytes());
            }
        }
        hex::encode(h.finalize())
    }
}

type Generators = (usize, Vec<Permutation>, Vec<Permutation>);

fn alt_generators(n: usize) -> Result<Generators> {
    let three = Permutation::from_cycles(n, &[&[0, 1, 2]])?;
    let long: Vec<usize> = if n % 2 == 1 { (0..n).collect() } else { (1..n).collect() };
    let cyc = Permutation::from_cycles(n, &[&long])?;
    let transposition = Permutation::from_cycles(n, &[&[0, 1]])?;
    Ok((n, vec![three, cyc], vec![transposition]))
}

// Points 0..q are field elements, point q is infinity.
fn psl2_generators(q: usize) -> Result<Generators> {
    let k = FiniteField::new(q)?;
    let inf = q;
    let mobius = |map: &dyn Fn(usize) -> usize| -> Result<Permutation> {
        Permutation::from_usize(&(0..=q).map(map).collect::<Vec<_>>())
    };
    let lam = k.primitive_element();
    let lam2 = k.mul(lam, lam);
    let translate = mobius(&|z| if z == inf { inf } else { k.add(z, 1) })?;
    let scale = mobius(&|z| if z == inf { inf } else { k.mul(lam2, z) })?;
    let invert = mobius(&|z| {
        if z == inf {
            0
        } else if z == 0 {
            inf
        } else {
            k.neg(k.inv(z))
        }
    })?;
    let mut extra = Vec::new();
    if q % 2 == 1 {
        extra.push(mobius(&|z| if z == inf { inf } else { k.mul(lam, z) })?);
    }
    if k.degree() > 1 {
        let p = k.characteristic();
        extra.push(mobius(&|z| {
            if z == inf {
                inf
            } else {
                (1..p).fold(z, |acc, _| k.mul(acc, z))
            }
        })?);
    }
    Ok((q + 1, vec![translate, scale, invert], extra))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_labels() {
        assert_eq!("A5".parse::<SimpleSpec>().unwrap(), SimpleSpec::alt(5));
        assert_eq!("Alt(6)".parse::<SimpleSpec>().unwrap(), SimpleSpec::alt(6));
        assert_eq!("L2_8".parse::<SimpleSpec>().unwrap(), SimpleSpec::psl2(8));
        assert_eq!("PSL2(13)".parse::<SimpleSpec>().unwrap(), SimpleSpec::psl2(13));
        assert!("M11".parse::<SimpleSpec>().is_err());
        let j: SimpleSpec = serde_json::from_str(r#"{"family":"Alt","n":5}"#).unwrap();
        assert_eq!(j, SimpleSpec::alt(5));
        let j: SimpleSpec = serde_json::from_str(r#"{"family":"PSL2","q":8}"#).unwrap();
        assert_eq!(j, SimpleSpec::psl2(8));
    }

    #[test]
    fn orders() {
        let a5 = SimpleGroupData::build(SimpleSpec::alt(5)).unwrap();
        assert_eq!(a5.order(), 60);
        assert!(a5.element(0).is_identity());
        let l8 = SimpleGroupData::build(SimpleSpec::psl2(8)).unwrap();
        assert_eq!(l8.order(), 504);
        assert_eq!(l8.natural_degree(), 9);
    }

    #[test]
    fn aliases_rejected_by_default() {
        assert!(SimpleGroupData::build(SimpleSpec::psl2(4)).is_err());
        let opts = CatalogOptions {
            allow_aliases: true,
            ..Default::default()
        };
        let g = SimpleGroupData::build_with(SimpleSpec::psl2(5), &opts).unwrap();
        assert_eq!(g.spec(), SimpleSpec::alt(5));
    }

    #[test]
    fn order_cap() {
        let e = SimpleGroupData::build(SimpleSpec::alt(7)).unwrap_err();
        assert!(e.is_resource());
    }

    #[test]
    fn a5_class_labels() {
        let a5 = SimpleGroupData::build(SimpleSpec::alt(5)).unwrap();
        assert_eq!(a5.class_labels(), vec!["1A", "2A", "3A", "5A", "5B"]);
        let sizes: Vec<usize> = a5.classes().iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![1, 15, 20, 12, 12]);
    }
}
