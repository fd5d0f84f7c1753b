use serde::{Deserialize, Serialize};

use crate::diagonal::{DiagonalGroup, SymClass};
use crate::error::{Error, Result};

/// Which boundary condition decides the larger greedy value when `P` is
/// alternating or symmetric: the one paired with `Q = S_k` or with `Q = A_k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryReading {
    /// `k = |T|^l`, or `k` in `{|T|^l - 2, |T|^l - 1}` with `Q = S_k`.
    #[default]
    QSymmetric,
    /// `k = |T|^l`, or `k` in `{|T|^l - 2, |T|^l - 1}` with `Q = A_k`.
    QAlternating,
}

/// The parameters the closed forms depend on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaParams {
    pub tsize: u64,
    pub k: u64,
    pub p: SymClass,
    pub q: SymClass,
    /// T is A5 or A6.
    pub small_alt: bool,
    /// G = T^k.(Out(T) x S_k).
    pub full: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub value: u32,
    pub rule: String,
}

impl FormulaParams {
    pub fn of_group(g: &DiagonalGroup) -> Self {
        FormulaParams {
            tsize: g.t().order() as u64,
            k: g.k() as u64,
            p: g.p_class(),
            q: g.q_class(),
            small_alt: g.t().spec().is_a5_or_a6(),
            full: g.is_full(),
        }
    }

    fn check(&self) -> Result<()> {
        if self.tsize < 60 {
            return Err(Error::Domain(format!("|T| = {} is too small for a non-abelian simple group", self.tsize)));
        }
        if self.k < 2 {
            return Err(Error::Domain("k must be at least 2".into()));
        }
        if self.k >= 3 && self.p != SymClass::Other && self.q == SymClass::Other {
            return Err(Error::Domain("Q must be A_k or S_k when P is".into()));
        }
        if self.p == SymClass::Alt && self.q == SymClass::Sym {
            return Err(Error::Domain("Q = S_k inside P = A_k".into()));
        }
        Ok(())
    }
}

/// `ceil(log_n k)`, the least `l` with `n^l >= k`.
pub fn ceil_log(n: u64, k: u64) -> u32 {
    assert!(n >= 2);
    let mut l = 0;
    let mut pow: u128 = 1;
    while pow < k as u128 {
        pow *= n as u128;
        l += 1;
    }
    l
}

fn power(n: u64, l: u32) -> u128 {
    (n as u128).saturating_pow(l)
}

fn k2(p: &FormulaParams) -> Prediction {
    if p.small_alt && p.full {
        Prediction {
            value: 4,
            rule: "k = 2, T in {A5, A6}, G full".into(),
        }
    } else {
        Prediction {
            value: 3,
            rule: "k = 2".into(),
        }
    }
}

fn other_top() -> Prediction {
    Prediction {
        value: 2,
        rule: "P neither alternating nor symmetric".into(),
    }
}

/// The predicted largest greedy base size.
pub fn closed_form_greedy(p: &FormulaParams, reading: BoundaryReading) -> Result<Prediction> {
    p.check()?;
    if p.k == 2 {
        return Ok(k2(p));
    }
    if p.p == SymClass::Other {
        return Ok(other_top());
    }
    let (value, rule) = greedy_alt_sym_top(p.tsize, p.k, p.q == SymClass::Sym, reading);
    Ok(Prediction { value, rule })
}

/// The greedy value for `k >= 3` when P is alternating or symmetric, for any `n = |T| >= 2`.
pub fn greedy_alt_sym_top(n: u64, k: u64, q_symmetric: bool, reading: BoundaryReading) -> (u32, String) {
    let l = ceil_log(n, k);
    let top = power(n, l);
    let k = k as u128;
    let wanted = match reading {
        BoundaryReading::QSymmetric => true,
        BoundaryReading::QAlternating => false,
    };
    let (value, rule) = if k == top {
        (l + 2, "k = |T|^l".to_string())
    } else if (k + 2 == top || k + 1 == top) && q_symmetric == wanted {
        let q = if wanted { "S_k" } else { "A_k" };
        (l + 2, format!("k in {{|T|^l - 2, |T|^l - 1}}, Q = {q}"))
    } else {
        (l + 1, "generic".to_string())
    };
    (value, format!("{rule} (l = {l})"))
}

/// The predicted minimal base size.
pub fn closed_form_base(p: &FormulaParams) -> Result<Prediction> {
    p.check()?;
    if p.k == 2 {
        return Ok(k2(p));
    }
    if p.p == SymClass::Other {
        return Ok(other_top());
    }
    let n = p.tsize as u128;
    let l = ceil_log(p.tsize, p.k);
    let top = power(p.tsize, l);
    let k = p.k as u128;
    let (value, rule) = if k == n {
        (l + 2, "k = |T|")
    } else if p.q == SymClass::Sym && (k + 2 == n || k + 1 == top || k == top) {
        (l + 2, "k in {|T| - 2, |T|^l - 1, |T|^l}, Q = S_k")
    } else if p.small_alt && p.full && k + 2 == n * n {
        (l + 2, "k = |T|^2 - 2, T in {A5, A6}, G full")
    } else {
        (l + 1, "generic")
    };
    Ok(Prediction {
        value,
        rule: format!("{rule} (l = {l})"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(tsize: u64, k: u64, p: SymClass, q: SymClass) -> FormulaParams {
        FormulaParams {
            tsize,
            k,
            p,
            q,
            small_alt: tsize == 60 || tsize == 360,
            full: false,
        }
    }

    #[test]
    fn ceil_log_values() {
        assert_eq!(ceil_log(60, 1), 0);
        assert_eq!(ceil_log(60, 2), 1);
        assert_eq!(ceil_log(60, 60), 1);
        assert_eq!(ceil_log(60, 61), 2);
        assert_eq!(ceil_log(60, 3600), 2);
        assert_eq!(ceil_log(60, 3601), 3);
    }

    #[test]
    fn k_two() {
        let mut p = params(60, 2, SymClass::Sym, SymClass::Sym);
        p.full = true;
        assert_eq!(closed_form_greedy(&p, Default::default()).unwrap().value, 4);
        assert_eq!(closed_form_base(&p).unwrap().value, 4);
        p.full = false;
        assert_eq!(closed_form_greedy(&p, Default::default()).unwrap().value, 3);
        let l8 = FormulaParams {
            small_alt: false,
            full: true,
            ..params(504, 2, SymClass::Sym, SymClass::Sym)
        };
        assert_eq!(closed_form_base(&l8).unwrap().value, 3);
    }

    #[test]
    fn large_k() {
        let p = params(60, 3600, SymClass::Sym, SymClass::Alt);
        assert_eq!(closed_form_greedy(&p, BoundaryReading::QSymmetric).unwrap().value, 4);
        assert_eq!(closed_form_greedy(&p, BoundaryReading::QAlternating).unwrap().value, 4);
        let p = params(60, 3598, SymClass::Sym, SymClass::Sym);
        assert_eq!(closed_form_greedy(&p, BoundaryReading::QSymmetric).unwrap().value, 4);
        assert_eq!(closed_form_greedy(&p, BoundaryReading::QAlternating).unwrap().value, 3);
        assert_eq!(closed_form_base(&p).unwrap().value, 3);
        let p = params(60, 5, SymClass::Other, SymClass::Other);
        assert_eq!(closed_form_greedy(&p, Default::default()).unwrap().value, 2);
    }

    #[test]
    fn base_boundaries() {
        assert_eq!(closed_form_base(&params(60, 60, SymClass::Alt, SymClass::Alt)).unwrap().value, 3);
        assert_eq!(closed_form_base(&params(60, 58, SymClass::Sym, SymClass::Sym)).unwrap().value, 3);
        assert_eq!(closed_form_base(&params(60, 58, SymClass::Sym, SymClass::Alt)).unwrap().value, 2);
        assert_eq!(closed_form_base(&params(60, 3, SymClass::Sym, SymClass::Sym)).unwrap().value, 2);
        let mut p = params(60, 3598, SymClass::Sym, SymClass::Sym);
        p.full = true;
        assert_eq!(closed_form_base(&p).unwrap().value, 4);
    }

    #[test]
    fn domain_errors() {
        assert!(closed_form_base(&params(59, 3, SymClass::Sym, SymClass::Sym)).is_err());
        assert!(closed_form_base(&params(60, 1, SymClass::Sym, SymClass::Sym)).is_err());
        assert!(closed_form_base(&params(60, 4, SymClass::Alt, SymClass::Sym)).is_err());
    }
}
