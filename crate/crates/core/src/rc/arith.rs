use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed on each floating-point comparison.
pub const LOG_MARGIN: f64 = 1e-9;

/// The chain `log n / log log n <= 2m` for `n = |A_(m+2)|^2`, logs to base 2,
/// with every intermediate inequality evaluated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogBound {
    pub m: u64,
    /// `log2 n`, summed term by term.
    pub log_n: f64,
    /// `d log d - (d - 1) log e <= log d! <= (d + 1) log d - (d - 1) log e` with `d = m + 2`.
    pub stirling_ok: bool,
    /// `log n <= 2((m + 3) log(m + 2) - (m + 1) log e - 1) <= 2m log(m + 2)`.
    pub upper_ok: bool,
    /// `log log n >= log(2m + 4) >= log(m + 2)`.
    pub lower_ok: bool,
    pub ratio: f64,
    pub ratio_ok: bool,
}

impl LogBound {
    pub fn ok(&self) -> bool {
        self.stirling_ok && self.upper_ok && self.lower_ok && self.ratio_ok
    }
}

fn log2_factorial(d: u64) -> f64 {
    (2..=d).map(|i| (i as f64).log2()).sum()
}

fn le(a: f64, b: f64) -> bool {
    a <= b + LOG_MARGIN * b.abs().max(1.0)
}

pub fn log_bound(m: u64) -> Result<LogBound> {
    if m < 1 {
        return Err(Error::Domain("m must be positive".into()));
    }
    let d = m + 2;
    let (df, ld) = (d as f64, (d as f64).log2());
    let le_ = std::f64::consts::LOG2_E;
    let lf = log2_factorial(d);
    let stirling_lo = df * ld - (df - 1.0) * le_;
    let stirling_hi = (df + 1.0) * ld - (df - 1.0) * le_;
    let stirling_ok = le(stirling_lo, lf) && le(lf, stirling_hi);
    // |A_d| = d!/2
    let log_n = 2.0 * (lf - 1.0);
    let mf = m as f64;
    let mid = 2.0 * ((mf + 3.0) * ld - (mf + 1.0) * le_ - 1.0);
    let upper_ok = le(log_n, mid) && le(mid, 2.0 * mf * ld);
    let below = 2.0 * (stirling_lo - 1.0);
    let lower_ok = le(below, log_n)
        && below > 1.0
        && le((2.0 * mf + 4.0).log2(), below.log2())
        && le(ld, (2.0 * mf + 4.0).log2());
    let ratio = log_n / log_n.log2();
    Ok(LogBound {
        m,
        log_n,
        stirling_ok,
        upper_ok,
        lower_ok,
        ratio,
        ratio_ok: le(ratio, 2.0 * mf),
    })
}
