use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::config::{DiagonalConfig, NamedOut, NamedTop, OutPart, Preset, QLabel, TopPart};
use crate::catalog::{SimpleWithAut, SimpleGroupData, AutGroupData, CatalogOptions};
use crate::error::{Error, Result};
use crate::perm::{ChainOptions, Permutation, StabilizerChain, TupleTransporter};

/// Largest number of factors supported for the top group.
pub const MAX_K: usize = 8;

/// Default cap on |Omega| for realising the group as a permutation group.
pub const DEFAULT_REALIZATION_CAP: usize = 1_000_000;

/// `(u_1, .., u_k)(phi, .., phi)sigma` in normal form: `aut` is always the
/// smallest automorphism of its Out(T)-coset, the inner part being absorbed
/// into `tvec`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WElement {
    pub tvec: Vec<u32>,
    pub aut: u32,
    pub top: Permutation,
}

/// The canonical representative `D(1, c_2, .., c_k)` of a point of Omega.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OmegaPoint {
    pub coords: Vec<u32>,
}

/// Whether a subgroup of S_k is the alternating group, the symmetric group, or neither.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymClass {
    Alt,
    Sym,
    Other,
}

/// A subgroup of Out(T) x S_k, stored as its sorted element list.
pub type TopPairs = Vec<(u32, Permutation)>;

/// A group `T^k <= G <= T^k.(Out(T) x S_k)` of diagonal type.
#[derive(Clone, Debug)]
pub struct DiagonalGroup {
    config: DiagonalConfig,
    simple: Arc<SimpleWithAut>,
    k: usize,
    h: TopPairs,
    generators: Vec<WElement>,
    omega_size: usize,
    d_elements: Vec<WElement>,
}

fn named_top(k: usize, which: NamedTop) -> Result<Vec<Permutation>> {
    let cyc = |pts: Vec<usize>| Permutation::from_cycles(k, &[&pts]);
    Ok(match which {
        NamedTop::Trivial => Vec::new(),
        NamedTop::S => {
            if k == 2 {
                vec![cyc(vec![0, 1])?]
            } else {
                vec![cyc(vec![0, 1])?, cyc((0..k).collect())?]
            }
        }
        NamedTop::A => match k {
            2 => Vec::new(),
            3 => vec![cyc(vec![0, 1, 2])?],
            _ => {
                let long: Vec<usize> = if k % 2 == 1 { (0..k).collect() } else { (1..k).collect() };
                vec![cyc(vec![0, 1, 2])?, cyc(long)?]
            }
        },
    })
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

fn closure(aut: &AutGroupData, k: usize, gens: &[(u32, Permutation)]) -> TopPairs {
    let id = (0u32, Permutation::identity(k));
    let mut seen: HashSet<(u32, Permutation)> = HashSet::from([id.clone()]);
    let mut queue = vec![id];
    let mut i = 0;
    while i < queue.len() {
        let (o, s) = queue[i].clone();
        for (go, gs) in gens {
            let x = (aut.out_mul(o as usize, *go as usize) as u32, s.compose(gs));
            if seen.insert(x.clone()) {
                queue.push(x);
            }
        }
        i += 1;
    }
    queue.sort();
    queue
}

/// Whether the permutation group generated by `gens` is primitive on `0..k`.
pub fn is_primitive(k: usize, gens: &[Permutation]) -> bool {
    let orbit = crate::perm::orbit_of(gens, 0);
    if orbit.len() != k {
        return false;
    }
    // minimal block containing {0, b} via union-find closure
    for b in 1..k {
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut pairs = vec![(0usize, b)];
        let (r0, rb) = (find(&mut parent, 0), find(&mut parent, b));
        parent[rb] = r0;
        while let Some((x, y)) = pairs.pop() {
            for g in gens {
                let (gx, gy) = (g.apply(x), g.apply(y));
                let (a, c) = (find(&mut parent, gx), find(&mut parent, gy));
                if a != c {
                    parent[c] = a;
                    pairs.push((gx, gy));
                }
            }
        }
        let root = find(&mut parent, 0);
        let block = (0..k).filter(|&x| find(&mut parent, x) == root).count();
        if block < k {
            return false;
        }
    }
    true
}

impl DiagonalGroup {
    pub fn build(config: &DiagonalConfig) -> Result<Self> {
        let simple = SimpleWithAut::build_with(config.t, &CatalogOptions::default())?;
        Self::with_simple(config, simple)
    }

    pub fn with_simple(config: &DiagonalConfig, simple: Arc<SimpleWithAut>) -> Result<Self> {
        let k = config.k;
        if !(2..=MAX_K).contains(&k) {
            return Err(Error::Config(format!("k = {k} outside the supported range 2..={MAX_K}")));
        }
        if simple.t.spec() != config.t {
            return Err(Error::Config("simple group does not match the configuration".into()));
        }
        let aut = &simple.aut;
        let out = aut.out_order() as u32;
        let id_top = Permutation::identity(k);
        let mut h_gens: Vec<(u32, Permutation)> = Vec::new();
        let (out_part, top, q, twist) = match config.preset {
            Preset::Socle => (OutPart::Named(NamedOut::None), TopPart::Named(NamedTop::Trivial), QLabel::S, None),
            Preset::FullW => (OutPart::Named(NamedOut::Full), TopPart::Named(NamedTop::S), QLabel::S, None),
            Preset::Custom => (config.out_part.clone(), config.top.clone(), config.q, config.twist),
        };
        let out_gens: Vec<u32> = match &out_part {
            OutPart::Named(NamedOut::Full) => (1..out).collect(),
            OutPart::Named(NamedOut::None) => Vec::new(),
            OutPart::Labels(v) => v.clone(),
        };
        for &o in &out_gens {
            if o >= out {
                return Err(Error::Config(format!("Out label {o} out of range (|Out| = {out})")));
            }
            h_gens.push((o, id_top.clone()));
        }
        let top_gens: Vec<Permutation> = match &top {
            TopPart::Named(n) => named_top(k, *n)?,
            TopPart::Generators(v) => v
                .iter()
                .map(|imgs| {
                    if imgs.len() != k {
                        return Err(Error::Config(format!("top generator of length {} for k = {k}", imgs.len())));
                    }
                    Permutation::new(imgs.clone())
                })
                .collect::<Result<_>>()?,
        };
        let o_group = closure(aut, k, &h_gens);
        let twist_label = if q == QLabel::A && top_gens.iter().any(|s| !s.is_even()) {
            let in_o = |l: u32| o_group.iter().any(|(o, _)| *o == l);
            let t = match twist {
                Some(t) => t,
                None => (1..out)
                    .find(|&l| aut.out_element_order(l as usize) == 2 && !in_o(l))
                    .ok_or_else(|| Error::Config("Q = A needs an outer automorphism class to pair with odd top elements".into()))?,
            };
            if t >= out || t == 0 || in_o(t) {
                return Err(Error::Config(format!("twist label {t} must be a non-trivial Out class outside out_part")));
            }
            t
        } else {
            0
        };
        for s in &top_gens {
            let o = if s.is_even() { 0 } else { twist_label };
            h_gens.push((o, s.clone()));
        }
        for g in &config.generators {
            if g.tvec.len() != k || g.top.degree() != k || g.aut as usize >= aut.order() {
                return Err(Error::Config("malformed custom generator".into()));
            }
            h_gens.push((aut.out_label(g.aut as usize) as u32, g.top.clone()));
        }
        let h = closure(aut, k, &h_gens);
        if q == QLabel::A {
            if let Some((_, s)) = h.iter().find(|(o, s)| *o == 0 && !s.is_even()) {
                return Err(Error::Config(format!("Q = A requested but the pure top element {s:?} is odd")));
            }
        }
        let p_gens: Vec<Permutation> = h_gens.iter().map(|(_, s)| s.clone()).collect();
        // The bare socle (trivial P) is allowed as a building block even though it is not primitive.
        let trivial_top = p_gens.iter().all(|s| s.is_identity());
        if k >= 3 && !trivial_top && !is_primitive(k, &p_gens) {
            return Err(Error::Config(format!(
                "top group is not primitive on {k} points, so G is not primitive"
            )));
        }

        let n = simple.t.order();
        let omega_size = n
            .checked_pow(k as u32 - 1)
            .ok_or_else(|| Error::resource("|Omega|", usize::MAX))?;
        let mut group = DiagonalGroup {
            config: config.clone(),
            simple,
            k,
            h,
            generators: Vec::new(),
            omega_size,
            d_elements: Vec::new(),
        };
        let t = &group.simple.t;
        let mut gens = Vec::new();
        for i in 0..k {
            for &g in t.generators() {
                let mut tvec = vec![0u32; k];
                tvec[i] = g as u32;
                gens.push(WElement {
                    tvec,
                    aut: 0,
                    top: id_top.clone(),
                });
            }
        }
        for (o, s) in &h_gens {
            if *o == 0 && s.is_identity() {
                continue;
            }
            gens.push(group.pure(*o as usize, s.clone()));
        }
        for g in &config.generators {
            gens.push(group.normalize(g.tvec.clone(), g.aut as usize, g.top.clone()));
        }
        group.generators = gens;
        let mut d = Vec::with_capacity(n * group.h.len());
        for (o, s) in &group.h {
            for a in 0..n {
                d.push(WElement {
                    tvec: vec![a as u32; k],
                    aut: group.simple.aut.out_rep(*o as usize) as u32,
                    top: s.clone(),
                });
            }
        }
        group.d_elements = d;
        Ok(group)
    }

    pub fn config(&self) -> &DiagonalConfig {
        &self.config
    }

    pub fn simple(&self) -> &Arc<SimpleWithAut> {
        &self.simple
    }

    pub fn t(&self) -> &SimpleGroupData {
        &self.simple.t
    }

    pub fn aut(&self) -> &AutGroupData {
        &self.simple.aut
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn omega_size(&self) -> usize {
        self.omega_size
    }

    pub fn generators(&self) -> &[WElement] {
        &self.generators
    }

    /// The image of G in Out(T) x S_k.
    pub fn top_pairs(&self) -> &TopPairs {
        &self.h
    }

    /// |G| = |T|^k |H|.
    pub fn theoretical_order(&self) -> BigUint {
        BigUint::from(self.t().order()).pow(self.k as u32) * BigUint::from(self.h.len())
    }

    /// |G_D| = |T| |H|.
    pub fn d_order(&self) -> usize {
        self.t().order() * self.h.len()
    }

    /// Whether G = T^k.(Out(T) x S_k).
    pub fn is_full(&self) -> bool {
        self.h.len() == self.aut().out_order() * factorial(self.k)
    }

    fn classify(&self, perms: impl Iterator<Item = Permutation>) -> SymClass {
        let set: HashSet<Permutation> = perms.collect();
        let kf = factorial(self.k);
        let all_even = set.iter().all(|s| s.is_even());
        if set.len() == kf {
            SymClass::Sym
        } else if set.len() * 2 == kf && all_even {
            SymClass::Alt
        } else {
            SymClass::Other
        }
    }

    /// The top group P: the image of G in S_k.
    pub fn p_class(&self) -> SymClass {
        self.classify(self.h.iter().map(|(_, s)| s.clone()))
    }

    /// Q = G ∩ S_k, the pure top elements.
    pub fn q_class(&self) -> SymClass {
        self.classify(self.h.iter().filter(|(o, _)| *o == 0).map(|(_, s)| s.clone()))
    }

    pub fn identity(&self) -> WElement {
        WElement {
            tvec: vec![0; self.k],
            aut: 0,
            top: Permutation::identity(self.k),
        }
    }

    /// `(1, .., 1)(rho, .., rho)sigma` for the Out class `o`.
    pub fn pure(&self, o: usize, sigma: Permutation) -> WElement {
        WElement {
            tvec: vec![0; self.k],
            aut: self.aut().out_rep(o) as u32,
            top: sigma,
        }
    }

    /// Rewrites `(u)(phi, .., phi)sigma` with `phi` replaced by its coset representative.
    pub fn normalize(&self, mut tvec: Vec<u32>, phi: usize, top: Permutation) -> WElement {
        let aut = self.aut();
        let rho = aut.out_rep(aut.out_label(phi));
        let iota = aut.mul(phi, aut.inv(rho));
        let a = aut.inner_element(iota).expect("same Out coset");
        // (t u)^(iota_a rho) = (a^-1 t u a)^rho, and the common left factor is absorbed by D
        if a != 0 {
            for u in tvec.iter_mut() {
                *u = self.t().mul(*u as usize, a) as u32;
            }
        }
        WElement {
            tvec,
            aut: rho as u32,
            top,
        }
    }

    /// `g` followed by `h`.
    pub fn compose(&self, g: &WElement, h: &WElement) -> WElement {
        let (t, aut) = (self.t(), self.aut());
        let phi_inv = aut.inv(g.aut as usize);
        let tvec = (0..self.k)
            .map(|i| {
                let v = h.tvec[g.top.apply(i)] as usize;
                t.mul(g.tvec[i] as usize, aut.apply(phi_inv, v)) as u32
            })
            .collect();
        self.normalize(tvec, aut.mul(g.aut as usize, h.aut as usize), g.top.compose(&h.top))
    }

    pub fn inverse(&self, g: &WElement) -> WElement {
        let (t, aut) = (self.t(), self.aut());
        let top_inv = g.top.inverse();
        let tvec = (0..self.k)
            .map(|i| {
                let u = g.tvec[top_inv.apply(i)] as usize;
                aut.apply(g.aut as usize, t.inv(u)) as u32
            })
            .collect();
        self.normalize(tvec, aut.inv(g.aut as usize), top_inv)
    }

    /// Membership in G: the Out x S_k component must lie in H.
    pub fn contains(&self, g: &WElement) -> bool {
        let o = self.aut().out_label(g.aut as usize) as u32;
        self.h.binary_search(&(o, g.top.clone())).is_ok()
    }

    /// Canonical point for `D(t_1, .., t_k)`.
    pub fn canonicalize(&self, tuple: &[u32]) -> OmegaPoint {
        let t = self.t();
        let first = t.inv(tuple[0] as usize);
        OmegaPoint {
            coords: tuple[1..].iter().map(|&x| t.mul(first, x as usize) as u32).collect(),
        }
    }

    pub fn index(&self, p: &OmegaPoint) -> usize {
        let n = self.t().order();
        p.coords.iter().rev().fold(0, |acc, &c| acc * n + c as usize)
    }

    pub fn point(&self, mut index: usize) -> OmegaPoint {
        let n = self.t().order();
        let coords = (1..self.k)
            .map(|_| {
                let c = index % n;
                index /= n;
                c as u32
            })
            .collect();
        OmegaPoint { coords }
    }

    /// The point D itself.
    pub fn base_point(&self) -> usize {
        0
    }

    pub fn act(&self, p: &OmegaPoint, g: &WElement) -> OmegaPoint {
        let (t, aut) = (self.t(), self.aut());
        let mut s = [0u32; MAX_K];
        for i in 0..self.k {
            let ti = if i == 0 { 0 } else { p.coords[i - 1] as usize };
            s[g.top.apply(i)] = aut.apply(g.aut as usize, t.mul(ti, g.tvec[i] as usize)) as u32;
        }
        self.canonicalize(&s[..self.k])
    }

    /// Action on point indices; equal to `index(act(point(x), g))` without allocation.
    pub fn act_index(&self, x: usize, g: &WElement) -> usize {
        let (t, aut) = (self.t(), self.aut());
        let n = t.order();
        let mut s = [0usize; MAX_K];
        let mut rest = x;
        for i in 0..self.k {
            let ti = if i == 0 {
                0
            } else {
                let c = rest % n;
                rest /= n;
                c
            };
            s[g.top.apply(i)] = aut.apply(g.aut as usize, t.mul(ti, g.tvec[i] as usize));
        }
        let first = t.inv(s[0]);
        (1..self.k).rev().fold(0, |acc, j| acc * n + t.mul(first, s[j]))
    }

    /// An element of the socle mapping the point to D.
    pub fn to_base_point(&self, x: usize) -> WElement {
        let t = self.t();
        let p = self.point(x);
        let mut tvec = vec![0u32; self.k];
        for (i, &c) in p.coords.iter().enumerate() {
            tvec[i + 1] = t.inv(c as usize) as u32;
        }
        WElement {
            tvec,
            aut: 0,
            top: Permutation::identity(self.k),
        }
    }

    /// The stabiliser G_D = {(phi, .., phi)sigma}, in normal form.
    pub fn d_elements(&self) -> &[WElement] {
        &self.d_elements
    }

    pub fn permutation_of(&self, g: &WElement, cap: usize) -> Result<Permutation> {
        if self.omega_size > cap {
            return Err(Error::resource("|Omega| for realisation", cap));
        }
        let images = (0..self.omega_size).map(|x| self.act_index(x, g) as u32).collect();
        Permutation::new(images)
    }

    /// G_D as permutations of Omega. Fails if |G_D| |Omega| exceeds `cap`.
    pub fn d_permutations(&self, cap: usize) -> Result<Vec<Permutation>> {
        let cost = self.d_elements.len().saturating_mul(self.omega_size);
        if cost > cap {
            return Err(Error::resource("|G_D| * |Omega|", cap));
        }
        self.d_elements.iter().map(|g| self.permutation_of(g, usize::MAX)).collect()
    }

    /// G as a permutation group on Omega, validated against |T|^k |H|.
    pub fn realize(&self, cap: usize) -> Result<StabilizerChain> {
        let perms: Vec<Permutation> = self
            .generators
            .iter()
            .map(|g| self.permutation_of(g, cap))
            .collect::<Result<_>>()?;
        let opts = ChainOptions {
            base_prefix: vec![0],
            known_order: Some(self.theoretical_order()),
        };
        StabilizerChain::build_with(self.omega_size, &perms, &opts)
    }

    fn check_tuple(&self, tuple: &[usize]) -> Result<()> {
        match tuple.iter().find(|&&x| x >= self.omega_size) {
            Some(&x) => Err(Error::PointOutOfRange {
                point: x,
                degree: self.omega_size,
            }),
            None => Ok(()),
        }
    }
}

/// Transporters through the point stabiliser: both tuples are moved so that
/// their first entry is D, and the remaining freedom is exactly G_D.
impl TupleTransporter for DiagonalGroup {
    type Elem = WElement;

    fn domain_size(&self) -> usize {
        self.omega_size
    }

    fn transporter(&self, src: &[usize], dst: &[usize], memory_cap: usize) -> Result<Option<WElement>> {
        if src.len() != dst.len() {
            return Err(Error::Domain("tuples of different lengths".into()));
        }
        self.check_tuple(src)?;
        self.check_tuple(dst)?;
        if src.is_empty() {
            return Ok(Some(self.identity()));
        }
        if self.d_elements.len() > memory_cap {
            return Err(Error::resource("transporter visited states", memory_cap));
        }
        let a = self.to_base_point(src[0]);
        let b = self.to_base_point(dst[0]);
        let s: Vec<usize> = src.iter().map(|&x| self.act_index(x, &a)).collect();
        let d: Vec<usize> = dst.iter().map(|&x| self.act_index(x, &b)).collect();
        for h in &self.d_elements {
            if s.iter().zip(&d).all(|(&x, &y)| self.act_index(x, h) == y) {
                let g = self.compose(&self.compose(&a, h), &self.inverse(&b));
                return Ok(Some(g));
            }
        }
        Ok(None)
    }
}
