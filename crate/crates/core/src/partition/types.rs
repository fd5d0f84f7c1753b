use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::diagonal::QLabel;
use crate::error::{Error, Result};

/// A partition of `[k]` up to relabelling: `(size, multiplicity)` pairs with
/// strictly increasing sizes. Empty parts are recorded with size 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartitionType {
    parts: Vec<(u64, u64)>,
}

impl PartitionType {
    /// Merges repeated sizes and drops zero multiplicities.
    pub fn new(parts: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut map: BTreeMap<u64, u64> = BTreeMap::new();
        for (s, m) in parts {
            if m > 0 {
                *map.entry(s).or_default() += m;
            }
        }
        PartitionType {
            parts: map.into_iter().collect(),
        }
    }

    /// The type of a list of part sizes.
    pub fn from_sizes(sizes: &[u64]) -> Self {
        Self::new(sizes.iter().map(|&s| (s, 1)))
    }

    pub fn parts(&self) -> &[(u64, u64)] {
        &self.parts
    }

    /// The `k` being partitioned.
    pub fn total(&self) -> u64 {
        self.parts.iter().map(|&(s, m)| s * m).sum()
    }

    /// Number of parts, empty ones included.
    pub fn num_parts(&self) -> u64 {
        self.parts.iter().map(|&(_, m)| m).sum()
    }

    pub fn largest(&self) -> u64 {
        self.parts.last().map_or(0, |p| p.0)
    }

    pub fn smallest(&self) -> u64 {
        self.parts.first().map_or(0, |p| p.0)
    }

    pub fn multiplicity(&self, size: u64) -> u64 {
        self.parts.iter().find(|p| p.0 == size).map_or(0, |p| p.1)
    }

    /// Whether the part-wise stabiliser in `Q` is trivial.
    pub fn stab_is_trivial(&self, q: QLabel) -> bool {
        let big: u64 = self.parts.iter().filter(|p| p.0 >= 2).map(|p| p.1).sum();
        match q {
            QLabel::S => big == 0,
            QLabel::A => big == 0 || (big == 1 && self.largest() == 2),
        }
    }

    /// Splits every part of size `a` into `n` parts of sizes `floor(a/n)` and `ceil(a/n)`.
    pub fn split_evenly(&self, n: u64) -> Result<Self> {
        let mut out = Vec::new();
        for &(a, mult) in &self.parts {
            let (lo, hi) = (a / n, a % n);
            let overflow = || Error::resource("partition part count", u64::MAX);
            out.push((lo + 1, hi.checked_mul(mult).ok_or_else(overflow)?));
            out.push((lo, (n - hi).checked_mul(mult).ok_or_else(overflow)?));
        }
        Ok(Self::new(out))
    }
}

impl fmt::Display for PartitionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (s, m)) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}^{m}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for PartitionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `ceil(k / n)`.
pub fn part_size_m(k: u64, n: u64) -> u64 {
    k.div_ceil(n)
}

/// The partition of `[k]` into `n` parts of sizes `m` and `m - 1`.
pub fn gamma_type(k: u64, n: u64) -> Result<PartitionType> {
    if k == 0 || n == 0 {
        return Err(Error::Domain("gamma type needs k, n >= 1".into()));
    }
    let m = part_size_m(k, n);
    let big = k - n * (m - 1);
    Ok(PartitionType::new([(m, big), (m - 1, n - big)]))
}

/// The distinguished second-point partition, defined for `k >= n + 1` and `n >= 5`.
pub fn sigma_type(k: u64, n: u64) -> Result<PartitionType> {
    if n < 5 {
        return Err(Error::Domain(format!("sigma type needs n >= 5, got {n}")));
    }
    if k <= n {
        return Err(Error::Domain(format!("sigma type needs k > n, got k = {k}, n = {n}")));
    }
    let m = part_size_m(k, n);
    let low = (m - 1) * n;
    Ok(if k == low + 1 {
        PartitionType::new([(m - 2, 1), (m - 1, n - 3), (m, 2)])
    } else if k == low + 2 {
        PartitionType::new([(m - 2, 1), (m - 1, n - 4), (m, 3)])
    } else if k == m * n - 2 {
        PartitionType::new([(m - 1, 3), (m, n - 4), (m + 1, 1)])
    } else if k == m * n - 1 {
        PartitionType::new([(m - 1, 2), (m, n - 3), (m + 1, 1)])
    } else if k == m * n {
        PartitionType::new([(m - 1, 2), (m, n - 4), (m + 1, 2)])
    } else {
        gamma_type(k, n)?
    })
}

fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Order of the part-wise stabiliser of a partition of this type in `S_k` or `A_k`.
pub fn stab_order(t: &PartitionType, q: QLabel) -> BigUint {
    let mut order = BigUint::one();
    for &(s, m) in t.parts() {
        if s >= 2 {
            order *= factorial(s).pow(m as u32);
        }
    }
    if q == QLabel::A && t.largest() >= 2 {
        order /= 2u32;
    }
    order
}

/// Every type of partition of `k` into exactly `n` possibly empty parts.
/// Fails once more than `cap` types have been produced.
pub fn enumerate_types(k: u64, n: u64, cap: usize) -> Result<Vec<PartitionType>> {
    fn rec(
        remaining: u64,
        slots: u64,
        max: u64,
        cur: &mut Vec<u64>,
        out: &mut Vec<PartitionType>,
        cap: usize,
    ) -> Result<()> {
        if remaining == 0 {
            let mut sizes = cur.clone();
            sizes.resize(sizes.len() + slots as usize, 0);
            out.push(PartitionType::from_sizes(&sizes));
            if out.len() > cap {
                return Err(Error::resource("partition types", cap));
            }
            return Ok(());
        }
        if slots == 0 {
            return Ok(());
        }
        // the remaining slots must be able to hold what is left
        let lo = remaining.div_ceil(slots);
        for part in (lo..=max.min(remaining)).rev() {
            cur.push(part);
            rec(remaining - part, slots - 1, part, cur, out, cap)?;
            cur.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    rec(k, n, k, &mut Vec::new(), &mut out, cap)?;
    Ok(out)
}
