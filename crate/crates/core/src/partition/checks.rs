use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::types::{enumerate_types, gamma_type, part_size_m, sigma_type, stab_order, PartitionType};
use crate::diagonal::QLabel;
use crate::error::{Error, Result};

pub const DEFAULT_TYPE_CAP: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionCheck {
    pub k: u64,
    pub n: u64,
    pub q: QLabel,
    pub types_checked: usize,
    pub ok: bool,
    /// The first few failures found, each naming the offending type.
    pub counterexamples: Vec<String>,
}

const MAX_REPORTED: usize = 8;

fn precheck(k: u64, n: u64, min_n: u64) -> Result<()> {
    if n < min_n {
        return Err(Error::Domain(format!("need n >= {min_n}, got {n}")));
    }
    if k < n + 1 {
        return Err(Error::Domain(format!("need k >= n + 1, got k = {k}, n = {n}")));
    }
    Ok(())
}

/// Whether the sizes outside `{m - 1, m}` are exactly one `m - 2` or one
/// `m + 1`, or one of each.
fn equality_shape(t: &PartitionType, m: u64) -> bool {
    let mut odd: Vec<u64> = Vec::new();
    for &(s, mult) in t.parts() {
        if s + 1 != m && s != m {
            odd.extend(std::iter::repeat_n(s, mult.min(3) as usize));
        }
    }
    match odd.as_slice() {
        [s] => *s + 2 == m || *s == m + 1,
        [a, b] => *a + 2 == m && *b == m + 1,
        _ => false,
    }
}

/// Over all `n`-part types of `k`, Gamma is the unique minimum and
/// `|H(Pi)| (d + 1) >= e |H(Gamma)|`, with equality exactly for the listed shapes.
pub fn verify_min_part(k: u64, n: u64, q: QLabel, cap: usize) -> Result<PartitionCheck> {
    precheck(k, n, 3)?;
    let gamma = gamma_type(k, n)?;
    let hg = stab_order(&gamma, q);
    let m = part_size_m(k, n);
    let types = enumerate_types(k, n, cap)?;
    let mut counterexamples = Vec::new();
    for t in &types {
        if *t == gamma {
            continue;
        }
        let h = stab_order(t, q);
        let (d, e) = (t.smallest(), t.largest());
        let lhs = &h * BigUint::from(d + 1);
        let rhs = &hg * BigUint::from(e);
        let problem = if h <= hg {
            Some("not larger than Gamma")
        } else if lhs < rhs {
            Some("ratio bound fails")
        } else if (lhs == rhs) != equality_shape(t, m) {
            Some("equality case mismatch")
        } else {
            None
        };
        if let Some(p) = problem {
            counterexamples.push(format!("{t}: {p}"));
            if counterexamples.len() == MAX_REPORTED {
                break;
            }
        }
    }
    Ok(PartitionCheck {
        k,
        n,
        q,
        types_checked: types.len(),
        ok: counterexamples.is_empty(),
        counterexamples,
    })
}

/// Sigma has the smallest stabiliser outside Gamma and one further type,
/// and at most twice the stabiliser of Gamma.
pub fn verify_part_sigma(k: u64, n: u64, q: QLabel, cap: usize) -> Result<PartitionCheck> {
    precheck(k, n, 6)?;
    let gamma = gamma_type(k, n)?;
    let sigma = sigma_type(k, n)?;
    let m = part_size_m(k, n);
    let spare = PartitionType::new([(m - 1, 1), (m, n - 2), (m + 1, 1)]);
    let hs = stab_order(&sigma, q);
    let hg = stab_order(&gamma, q);
    let types = enumerate_types(k, n, cap)?;
    let mut counterexamples = Vec::new();
    if hs > &hg * 2u32 {
        counterexamples.push(format!("{sigma}: |H(Sigma)| = {hs} exceeds 2 |H(Gamma)| = {}", &hg * 2u32));
    }
    for t in &types {
        if *t == gamma || *t == sigma || *t == spare {
            continue;
        }
        let h = stab_order(t, q);
        if h <= hs {
            counterexamples.push(format!("{t}: stabiliser {h} not above |H(Sigma)| = {hs}"));
            if counterexamples.len() == MAX_REPORTED {
                break;
            }
        }
    }
    Ok(PartitionCheck {
        k,
        n,
        q,
        types_checked: types.len(),
        ok: counterexamples.is_empty(),
        counterexamples,
    })
}

fn ceil_div(a: &BigUint, b: &BigUint) -> BigUint {
    let (quo, rem) = a.div_rem(b);
    if rem.is_zero() {
        quo
    } else {
        quo + BigUint::one()
    }
}

/// `ceil(ceil(m / n^r) / n) == ceil(m / n^(r+1))`.
pub fn ceil_chain(m: u64, n: u64, r: u32) -> Result<bool> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    let (m, nb) = (BigUint::from(m), BigUint::from(n));
    let inner = ceil_div(&m, &nb.pow(r));
    Ok(ceil_div(&inner, &nb) == ceil_div(&m, &nb.pow(r + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_examples() {
        assert!(ceil_chain(11, 3, 1).unwrap());
        assert!(ceil_chain(8, 2, 2).unwrap());
        assert!(ceil_chain(0, 5, 3).unwrap());
        assert!(ceil_chain(3, 0, 1).is_err());
    }

    #[test]
    fn min_part_small() {
        assert!(verify_min_part(7, 3, QLabel::S, DEFAULT_TYPE_CAP).unwrap().ok);
        assert!(verify_min_part(13, 6, QLabel::A, DEFAULT_TYPE_CAP).unwrap().ok);
        assert!(verify_min_part(4, 4, QLabel::S, DEFAULT_TYPE_CAP).is_err());
    }

    #[test]
    fn part_sigma_small() {
        for (k, q) in [(30, QLabel::S), (13, QLabel::A), (31, QLabel::S)] {
            let r = verify_part_sigma(k, 6, q, DEFAULT_TYPE_CAP).unwrap();
            assert!(r.ok, "{r:?}");
        }
    }

    #[test]
    fn part_sigma_fails_two_above_a_multiple() {
        // k = (m - 1) n + 2 with m = 2: [1^5, 3^1] undercuts Sigma = [0^1, 1^2, 2^3]
        let r = verify_part_sigma(8, 6, QLabel::S, DEFAULT_TYPE_CAP).unwrap();
        assert_eq!(r.counterexamples, vec!["[1^5, 3^1]: stabiliser 6 not above |H(Sigma)| = 8".to_string()]);
        // k = 2n: Sigma = [1^2, 2^2, 3^2] is 9/4 times Gamma
        let r = verify_part_sigma(12, 6, QLabel::A, DEFAULT_TYPE_CAP).unwrap();
        assert_eq!(r.counterexamples.len(), 1);
        assert!(r.counterexamples[0].contains("exceeds 2"));
    }
}
