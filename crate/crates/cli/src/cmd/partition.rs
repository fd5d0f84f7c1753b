use clap::{Args, Subcommand};
use diagperm::diagonal::QLabel;
use diagperm::partition::{closed_form_vs_sim, verify_min_part, verify_part_sigma, SimRow, DEFAULT_TYPE_CAP};
use diagperm::{Error, Result};
use serde_json::json;

use crate::report::{Report, Table};
use crate::{Cli, Outcome};

#[derive(Subcommand, Debug)]
pub enum PartitionCmd {
    /// Simulate the greedy refinement and compare with both boundary readings.
    Sim(SimArgs),
    /// Check the minimal-part and Sigma-part claims against type enumeration.
    Check(CheckArgs),
}

#[derive(Args, Debug)]
pub struct SimArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub k_from: u64,
    #[arg(long)]
    pub k_to: u64,
    /// A, S or both.
    #[arg(long, default_value = "both")]
    pub q: String,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(long)]
    pub n: u64,
    /// Defaults to 3n.
    #[arg(long)]
    pub k_max: Option<u64>,
    #[arg(long, default_value = "both")]
    pub q: String,
}

pub fn q_labels(s: &str) -> Result<Vec<QLabel>> {
    match s {
        "both" => Ok(vec![QLabel::A, QLabel::S]),
        "A" | "a" => Ok(vec![QLabel::A]),
        "S" | "s" => Ok(vec![QLabel::S]),
        other => Err(Error::Config(format!("unknown Q label {other:?}; use A, S or both"))),
    }
}

pub fn sim_table(rows: &[SimRow]) -> Table {
    let mut t = Table::new(&["n", "k", "Q", "ell", "sim", "thm_reading", "prop_reading", "agree_flags"]);
    for r in rows {
        t.push(vec![
            r.n.to_string(),
            r.k.to_string(),
            format!("{:?}", r.q),
            r.ell.to_string(),
            r.sim.to_string(),
            r.thm_reading.to_string(),
            r.prop_reading.to_string(),
            r.agree_flags.clone(),
        ]);
    }
    t
}

/// Range and agreement checks over simulator rows; boundary disagreements go in the data.
pub fn sim_checks(report: &mut Report, n: u64, rows: &[SimRow]) -> serde_json::Value {
    let out_of_range: Vec<_> = rows.iter().filter(|r| r.sim != r.ell + 1 && r.sim != r.ell + 2).collect();
    report.check(
        format!("n = {n}: simulated value in {{ell+1, ell+2}}"),
        out_of_range.is_empty(),
        format!("{} of {} rows outside", out_of_range.len(), rows.len()),
        "0 outside",
    );
    let off: Vec<_> = rows.iter().filter(|r| r.sim != r.prop_reading).collect();
    report.check(
        format!("n = {n}: simulation = closed form (Q = S_k boundary reading)"),
        off.is_empty(),
        format!("{} of {} rows differ", off.len(), rows.len()),
        "0 differ",
    );
    let boundary: Vec<_> = rows
        .iter()
        .filter(|r| r.agree_flags != "both")
        .map(|r| json!({ "k": r.k, "Q": r.q, "sim": r.sim, "q_alternating_reading": r.thm_reading, "q_symmetric_reading": r.prop_reading }))
        .collect();
    json!({ "n": n, "rows": rows.len(), "boundary_discrepancies": boundary })
}

pub fn run(_cli: &Cli, cmd: &PartitionCmd) -> Result<Outcome> {
    match cmd {
        PartitionCmd::Sim(a) => {
            if a.k_from > a.k_to {
                return Err(Error::Config("--k-from exceeds --k-to".into()));
            }
            let rows = closed_form_vs_sim(a.n, a.k_from..=a.k_to, &q_labels(&a.q)?)?;
            let mut report = Report::new("partition sim");
            report.data = sim_checks(&mut report, a.n, &rows);
            let mut o = Outcome::new(report);
            o.table = Some(sim_table(&rows));
            Ok(o)
        }
        PartitionCmd::Check(a) => {
            let mut report = Report::new("partition check");
            let (table, data) = part_checks(&mut report, a.n, a.k_max.unwrap_or(3 * a.n), &q_labels(&a.q)?)?;
            report.data = data;
            let mut o = Outcome::new(report);
            o.table = Some(table);
            Ok(o)
        }
    }
}

pub fn part_checks(report: &mut Report, n: u64, k_max: u64, qs: &[QLabel]) -> Result<(Table, serde_json::Value)> {
    let mut table = Table::new(&["check", "n", "k", "Q", "types", "ok", "first_counterexample"]);
    let mut failures = Vec::new();
    for k in n + 1..=k_max {
        for &q in qs {
            for (name, r) in [
                ("min-part", verify_min_part(k, n, q, DEFAULT_TYPE_CAP)?),
                ("sigma-part", verify_part_sigma(k, n, q, DEFAULT_TYPE_CAP)?),
            ] {
                let first = r.counterexamples.first().cloned().unwrap_or_default();
                table.push(vec![
                    name.into(),
                    n.to_string(),
                    k.to_string(),
                    format!("{q:?}"),
                    r.types_checked.to_string(),
                    r.ok.to_string(),
                    first.clone(),
                ]);
                report.check(
                    format!("{name} n = {n} k = {k} Q = {q:?}"),
                    r.ok,
                    if r.ok { format!("{} types", r.types_checked) } else { first.clone() },
                    "holds for every type",
                );
                if !r.ok {
                    failures.push(json!({ "check": name, "k": k, "Q": q, "counterexamples": r.counterexamples }));
                }
            }
        }
    }
    Ok((table, json!({ "n": n, "k_max": k_max, "failures": failures })))
}
