use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::diagonal::{DiagonalConfig, DiagonalGroup, OmegaPoint, WElement};
use crate::error::{Error, Result};
use crate::perm::{TupleTransporter, DEFAULT_MEMORY_CAP};

/// Where a witness pair came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// `(D, D(x), D(y), D(xy^-1))` against `(D, D(x), D(y), D(y^-1 x))`.
    GeneratingPair,
    /// The 3-cycle family in `A_(m+2)`.
    AlternatingFamily,
    /// Found by the bounded orbit search.
    Exhaustive,
    Custom,
}

/// Two tuples of points with `lam ~_s sig` claimed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessPair {
    pub lam: Vec<OmegaPoint>,
    pub sig: Vec<OmegaPoint>,
    pub s: usize,
    pub provenance: Provenance,
}

impl WitnessPair {
    pub fn new(lam: Vec<OmegaPoint>, sig: Vec<OmegaPoint>, s: usize, provenance: Provenance) -> Result<Self> {
        if lam.len() != sig.len() {
            return Err(Error::Domain("witness tuples differ in length".into()));
        }
        if s == 0 || s >= lam.len() {
            return Err(Error::Domain(format!("need 1 <= s < {}, got s = {s}", lam.len())));
        }
        Ok(WitnessPair {
            lam,
            sig,
            s,
            provenance,
        })
    }

    fn indices(&self, g: &DiagonalGroup) -> Result<(Vec<usize>, Vec<usize>)> {
        let conv = |pts: &[OmegaPoint]| -> Result<Vec<usize>> {
            pts.iter()
                .map(|p| {
                    if p.coords.len() + 1 != g.k() || p.coords.iter().any(|&c| c as usize >= g.t().order()) {
                        Err(Error::Domain(format!("point {:?} is not in Omega", p.coords)))
                    } else {
                        Ok(g.index(p))
                    }
                })
                .collect()
        };
        Ok((conv(&self.lam)?, conv(&self.sig)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetTransporter {
    pub indices: Vec<usize>,
    pub element: WElement,
}

/// A self-contained record: re-checkable after reload with [`recheck`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub config: DiagonalConfig,
    pub pair: WitnessPair,
    pub transporters: Vec<SubsetTransporter>,
    pub complete: bool,
    pub same_orbit: bool,
    /// `s + 1` when the pair is complete and the tuples lie in different orbits.
    pub rc_lower: Option<usize>,
}

/// Transporters for every `s`-subset, or `None` at the first subset without one.
pub fn subtuple_transporters(
    g: &DiagonalGroup,
    lam: &[usize],
    sig: &[usize],
    s: usize,
    cap: usize,
) -> Result<Option<Vec<SubsetTransporter>>> {
    let mut out = Vec::new();
    for idx in (0..lam.len()).combinations(s) {
        let a: Vec<usize> = idx.iter().map(|&i| lam[i]).collect();
        let b: Vec<usize> = idx.iter().map(|&i| sig[i]).collect();
        match g.transporter(&a, &b, cap)? {
            Some(element) => out.push(SubsetTransporter { indices: idx, element }),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

pub fn subtuple_complete(g: &DiagonalGroup, pair: &WitnessPair, cap: usize) -> Result<bool> {
    let (lam, sig) = pair.indices(g)?;
    Ok(subtuple_transporters(g, &lam, &sig, pair.s, cap)?.is_some())
}

pub fn same_orbit(g: &DiagonalGroup, lam: &[OmegaPoint], sig: &[OmegaPoint], cap: usize) -> Result<bool> {
    let pair = WitnessPair {
        lam: lam.to_vec(),
        sig: sig.to_vec(),
        s: 0,
        provenance: Provenance::Custom,
    };
    let (a, b) = pair.indices(g)?;
    Ok(g.transporter(&a, &b, cap)?.is_some())
}

/// Runs both checks and packages the outcome.
pub fn certify(g: &DiagonalGroup, pair: &WitnessPair, cap: usize) -> Result<Certificate> {
    let (lam, sig) = pair.indices(g)?;
    let found = subtuple_transporters(g, &lam, &sig, pair.s, cap)?;
    let same = g.transporter(&lam, &sig, cap)?.is_some();
    let complete = found.is_some();
    Ok(Certificate {
        config: g.config().clone(),
        pair: pair.clone(),
        transporters: found.unwrap_or_default(),
        complete,
        same_orbit: same,
        rc_lower: (complete && !same).then_some(pair.s + 1),
    })
}

/// Rebuilds the group, replays every stored transporter and redoes the orbit test.
pub fn recheck(cert: &Certificate) -> Result<bool> {
    let g = DiagonalGroup::build(&cert.config)?;
    let (lam, sig) = cert.pair.indices(&g)?;
    let subsets = (0..lam.len()).combinations(cert.pair.s).count();
    if cert.complete && cert.transporters.len() != subsets {
        return Ok(false);
    }
    for st in &cert.transporters {
        if !g.contains(&st.element) {
            return Ok(false);
        }
        if !st.indices.iter().all(|&i| i < lam.len() && g.act_index(lam[i], &st.element) == sig[i]) {
            return Ok(false);
        }
    }
    let same = g.transporter(&lam, &sig, DEFAULT_MEMORY_CAP)?.is_some();
    Ok(same == cert.same_orbit && cert.rc_lower == (cert.complete && !same).then_some(cert.pair.s + 1))
}

/// The point `D(x, 1, .., 1)`.
pub fn point_x(g: &DiagonalGroup, x: usize) -> OmegaPoint {
    let mut tuple = vec![g.t().identity() as u32; g.k()];
    tuple[0] = x as u32;
    g.canonicalize(&tuple)
}

fn pair_from(g: &DiagonalGroup, x: usize, y: usize, provenance: Provenance) -> Result<WitnessPair> {
    let t = g.t();
    let yi = t.inv(y);
    let base = vec![point_x(g, t.identity()), point_x(g, x), point_x(g, y)];
    let mut lam = base.clone();
    lam.push(point_x(g, t.mul(x, yi)));
    let mut sig = base;
    sig.push(point_x(g, t.mul(yi, x)));
    WitnessPair::new(lam, sig, 3, provenance)
}

/// Whether `(D, D(x), D(y))` is a base, i.e. no non-identity element of G_D fixes both.
fn is_base_triple(g: &DiagonalGroup, x: usize, y: usize) -> bool {
    let (px, py) = (g.index(&point_x(g, x)), g.index(&point_x(g, y)));
    g.d_elements()
        .iter()
        .filter(|h| g.act_index(px, h) == px && g.act_index(py, h) == py)
        .take(2)
        .count()
        == 1
}

/// The first `(x, y)` in class-representative order meeting the precondition:
/// a base triple for `k = 2`, a generating pair for `k >= 3`.
pub fn rc4_elements(g: &DiagonalGroup) -> Option<(usize, usize)> {
    let t = g.t();
    let reps: Vec<usize> = t.classes().iter().map(|c| c[0]).filter(|&x| x != t.identity()).collect();
    for &x in &reps {
        for y in 0..t.order() {
            if t.mul(x, t.inv(y)) == t.mul(t.inv(y), x) {
                continue;
            }
            let ok = if g.k() == 2 {
                is_base_triple(g, x, y)
            } else {
                t.generates(&[x, y])
            };
            if ok {
                return Some((x, y));
            }
        }
    }
    None
}

/// The four-point witness. For `k = 2` with no base triple (T = A5 or A6 with
/// G full) the bounded search is used instead.
pub fn witness_rc4(g: &DiagonalGroup) -> Result<WitnessPair> {
    if let Some((x, y)) = rc4_elements(g) {
        return pair_from(g, x, y, Provenance::GeneratingPair);
    }
    if g.k() == 2 {
        if let Some(p) = super::search::find_witness(g, 3, 5, &Default::default())? {
            return Ok(p);
        }
        return Err(Error::Internal("no four-point witness up to length 5".into()));
    }
    Err(Error::Internal(format!("no generating pair found in {}", g.t().name())))
}

/// The 3-cycle family: `T = A_(m+2)`, tuples of length `m` with `s = m - 1`.
/// Points of `[m+2]` are numbered from 0 here, so `t_i = (0, 1, i)` for `2 <= i <= m + 1`.
pub fn witness_alternating_family(g: &DiagonalGroup, m: usize) -> Result<WitnessPair> {
    if m < 3 {
        return Err(Error::Domain("the family starts at m = 3".into()));
    }
    if !g.t().spec().is_alt(m as u32 + 2) {
        return Err(Error::Domain(format!("family with m = {m} needs T = A{}", m + 2)));
    }
    if g.k() < 3 {
        return Err(Error::Domain("the family needs k >= 3".into()));
    }
    let t = g.t();
    let n = m + 2;
    let t_i = |i: usize| -> Result<usize> {
        let p = crate::perm::Permutation::from_cycles(n, &[&[0, 1, i]])?;
        t.index_of(&p).ok_or_else(|| Error::Internal("3-cycle missing from A_n".into()))
    };
    let mut lam = vec![point_x(g, t.identity())];
    for i in 2..m {
        lam.push(point_x(g, t_i(i)?));
    }
    let mut sig = lam.clone();
    lam.push(point_x(g, t_i(m)?));
    sig.push(point_x(g, t_i(m + 1)?));
    WitnessPair::new(lam, sig, m - 1, Provenance::AlternatingFamily)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_shape_is_checked() {
        let p = OmegaPoint { coords: vec![0] };
        assert!(WitnessPair::new(vec![p.clone()], vec![], 1, Provenance::Custom).is_err());
        assert!(WitnessPair::new(vec![p.clone(), p.clone()], vec![p.clone(), p.clone()], 2, Provenance::Custom).is_err());
        assert!(WitnessPair::new(vec![p.clone(), p.clone()], vec![p.clone(), p], 1, Provenance::Custom).is_ok());
    }
}
