use clap::Args;
use diagperm::base::{verify_group, BaseReport, BoundaryReading, SearchOptions, Stats, VerifyOptions};
use diagperm::diagonal::DiagonalGroup;
use diagperm::Result;

use crate::group::GroupArgs;
use crate::report::Report;
use crate::{Cli, Outcome};

#[derive(Args, Debug)]
pub struct BaseArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Comma list from b, greedy, irr.
    #[arg(long, default_value = "b,greedy,irr")]
    pub stats: String,
    /// Boundary reading for the greedy closed form: q-symmetric or q-alternating.
    #[arg(long, default_value = "q-symmetric")]
    pub reading: String,
}

pub fn reading(s: &str) -> Result<BoundaryReading> {
    match s {
        "q-symmetric" => Ok(BoundaryReading::QSymmetric),
        "q-alternating" => Ok(BoundaryReading::QAlternating),
        other => Err(diagperm::Error::Config(format!("unknown reading {other:?}"))),
    }
}

pub fn verify_options(threads: usize, stats: Stats, reading: BoundaryReading) -> VerifyOptions {
    VerifyOptions {
        stats,
        search: SearchOptions {
            threads: threads.max(1),
            ..SearchOptions::default()
        },
        reading,
        ..VerifyOptions::default()
    }
}

/// Adds the report's checks to `report` and returns its JSON without the timing.
pub fn absorb(report: &mut Report, r: &BaseReport) -> serde_json::Value {
    for c in &r.checks {
        report.check(format!("{}: {}", r.label, c.name), c.ok, &c.detail, "");
    }
    let mut v = serde_json::to_value(r).expect("serialisable");
    if let Some(m) = v.as_object_mut() {
        m.remove("elapsed_ms");
    }
    v
}

pub fn run_group(threads: usize, g: &DiagonalGroup, stats: Stats, reading: BoundaryReading) -> Result<BaseReport> {
    verify_group(g, &verify_options(threads, stats, reading))
}

pub fn run(cli: &Cli, args: &BaseArgs) -> Result<Outcome> {
    let config = args.group.resolve(cli.config.as_ref(), 2)?;
    let g = cli.caps().group(&config)?;
    let r = run_group(cli.threads, &g, Stats::parse(&args.stats)?, reading(&args.reading)?)?;
    let mut report = Report::new("base");
    report.data = absorb(&mut report, &r);
    let mut o = Outcome::new(report);
    o.timings.insert(r.label.clone(), r.elapsed_ms);
    o.config_digest = Some(config.digest());
    Ok(o)
}
