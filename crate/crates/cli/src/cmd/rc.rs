use clap::Args;
use diagperm::base::SearchOptions;
use diagperm::diagonal::DiagonalGroup;
use diagperm::perm::DEFAULT_MEMORY_CAP;
use diagperm::rc::{certify, find_witness, rc_bounds, recheck, witness_alternating_family, witness_rc4, Certificate};
use diagperm::{Error, Result};
use serde_json::json;

use crate::group::GroupArgs;
use crate::report::Report;
use crate::{Cli, Outcome};

#[derive(Args, Debug)]
pub struct RcArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// rc4 (a lower bound of 4), alt-family (a lower bound of m for T = A_(m+2)) or search.
    #[arg(long, default_value = "rc4")]
    pub witness: String,
    /// The m of alt-family; defaults to n - 2 for T = A_n.
    #[arg(long)]
    pub m: Option<usize>,
    /// Subtuple size for `--witness search`.
    #[arg(long, default_value_t = 3)]
    pub s: usize,
    /// Also bracket RC between certified witnesses and I + 1.
    #[arg(long)]
    pub bounds: bool,
}

pub fn witness(g: &DiagonalGroup, kind: &str, m: Option<usize>, s: usize, max_len: usize) -> Result<Certificate> {
    let pair = match kind {
        "rc4" => witness_rc4(g)?,
        "alt-family" => {
            let m = match (m, g.t().spec()) {
                (Some(m), _) => m,
                (None, diagperm::catalog::SimpleSpec::Alt { n }) => n as usize - 2,
                _ => return Err(Error::Config("--m is needed unless T is alternating".into())),
            };
            witness_alternating_family(g, m)?
        }
        "search" => find_witness(g, s, max_len, &SearchOptions::default())?
            .ok_or_else(|| Error::Domain(format!("no {s}-complete pair in different orbits up to length {max_len}")))?,
        other => return Err(Error::Config(format!("unknown witness {other:?}; use rc4, alt-family or search"))),
    };
    certify(g, &pair, DEFAULT_MEMORY_CAP)
}

/// Adds the certificate's checks; returns the certificate as JSON.
pub fn certificate_checks(report: &mut Report, g: &DiagonalGroup, cert: &Certificate, want: usize) -> Result<serde_json::Value> {
    let label = g.config().label();
    let s = cert.pair.s;
    report.check(format!("{label}: {s}-subtuple complete"), cert.complete, cert.complete, true);
    report.check(format!("{label}: tuples in different orbits"), !cert.same_orbit, !cert.same_orbit, true);
    let lower = cert.rc_lower.map_or("none".into(), |r| r.to_string());
    report.check(format!("{label}: RC lower bound"), cert.rc_lower == Some(want), lower, want);
    let text = serde_json::to_string(cert).expect("serialisable");
    let back: Certificate = serde_json::from_str(&text).map_err(|e| Error::Internal(e.to_string()))?;
    let again = recheck(&back)?;
    report.check(format!("{label}: certificate rechecks after reload"), again, again, true);
    Ok(serde_json::to_value(cert).expect("serialisable"))
}

pub fn run(cli: &Cli, args: &RcArgs) -> Result<Outcome> {
    let config = args.group.resolve(cli.config.as_ref(), 2)?;
    let g = cli.caps().group(&config)?;
    let cert = witness(&g, &args.witness, args.m, args.s, cli.max_len)?;
    let want = cert.pair.s + 1;
    let mut report = Report::new("rc");
    let c = certificate_checks(&mut report, &g, &cert, want)?;
    let mut data = json!({ "certificate": c });
    if args.bounds {
        let opts = SearchOptions {
            threads: cli.threads.max(1),
            ..SearchOptions::default()
        };
        let b = rc_bounds(&g, cli.max_len, &opts)?;
        report.check(
            format!("{}: RC bracket", b.label),
            b.lower <= b.upper,
            format!("{} <= RC <= {}", b.lower, b.upper),
            "lower <= upper",
        );
        data["bounds"] = serde_json::to_value(&b).expect("serialisable");
    }
    report.data = data;
    let mut o = Outcome::new(report);
    o.config_digest = Some(config.digest());
    Ok(o)
}
