use std::str::FromStr;

use clap::{Args, Subcommand};
use diagperm::catalog::SimpleWithAut;
use diagperm::k2::{
    approx, bad_conjugate_fraction, class_bound_criterion, criterion_value, exceptional_check, invertiliser_procedure, lie_table_params,
    oplus_check, qtilde_exact, ClassicalFamily, ClassicalGroup, CriterionParams, ExceptionalFamily, ProcedureReport,
};
use diagperm::{Error, Result};
use num_bigint::BigUint;
use serde_json::json;

use crate::group::GroupArgs;
use crate::report::{Report, Table};
use crate::{Cli, Outcome};

#[derive(Subcommand, Debug)]
pub enum K2Cmd {
    /// Exact Q~(T, y) for one class or every class of T.
    Qtilde(QtildeArgs),
    /// Evaluate the class-size criterion, the POmega+ bound or the exceptional inequality.
    Criterion(CriterionArgs),
    /// The invertiliser search over the classes with small invertilisers.
    #[command(alias = "procedure-A")]
    Procedure(ProcedureArgs),
}

#[derive(Args, Debug)]
pub struct QtildeArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long)]
    pub y_class: Option<String>,
}

#[derive(Args, Debug)]
pub struct CriterionArgs {
    /// L, U, PSp, Omega, OmegaMinus, Oplus, or an exceptional family (E7, E8, F4, G2, ...).
    #[arg(long)]
    pub family: String,
    /// Rank parameter: n for L and U, m for PSp_2m, Omega_(2m+1), POmega-_2m and POmega+_2m.
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub q: u64,
    /// Lower bound on the smallest non-trivial class, for exceptional families.
    #[arg(long)]
    pub min_class: Option<String>,
}

#[derive(Args, Debug)]
pub struct ProcedureArgs {
    #[command(flatten)]
    pub group: GroupArgs,
}

pub enum Family {
    Classical(ClassicalFamily),
    Oplus,
    Exceptional(ExceptionalFamily),
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use ExceptionalFamily as E;
        Ok(match s.to_ascii_lowercase().as_str() {
            "l" | "psl" => Family::Classical(ClassicalFamily::L),
            "u" | "psu" => Family::Classical(ClassicalFamily::U),
            "psp" | "s" => Family::Classical(ClassicalFamily::PSp),
            "omega" | "omega-odd" | "o" => Family::Classical(ClassicalFamily::OmegaOdd),
            "omegaminus" | "omega-" | "pomega-" => Family::Classical(ClassicalFamily::OmegaMinus),
            "oplus" | "omegaplus" | "omega+" | "pomega+" => Family::Oplus,
            "2b2" | "suzuki" => Family::Exceptional(E::Suzuki),
            "2g2" | "ree" => Family::Exceptional(E::Ree),
            "2f4" => Family::Exceptional(E::TwistedF4),
            "g2" => Family::Exceptional(E::G2),
            "3d4" => Family::Exceptional(E::TrialityD4),
            "f4" => Family::Exceptional(E::F4),
            "e6" => Family::Exceptional(E::E6),
            "2e6" => Family::Exceptional(E::TwistedE6),
            "e7" => Family::Exceptional(E::E7),
            "e8" => Family::Exceptional(E::E8),
            _ => return Err(Error::Config(format!("unknown family {s:?}"))),
        })
    }
}

/// Q~ for each labelled class, with the bad-conjugate fraction for the `x` of least invertiliser.
pub fn qtilde_checks(report: &mut Report, s: &SimpleWithAut, labels: &[String]) -> Result<(Table, serde_json::Value)> {
    let t = &s.t;
    let x = (1..t.order())
        .min_by_key(|&x| s.aut.invertiliser(t, x).len())
        .ok_or_else(|| Error::Domain("trivial group".into()))?;
    let mut table = Table::new(&["T", "y_class", "y_order", "invertiliser", "qtilde", "qtilde_approx", "bad_fraction"]);
    let mut rows = Vec::new();
    for l in labels {
        let y = t.class_representative(l)?;
        let q = qtilde_exact(s, y)?;
        let bad = bad_conjugate_fraction(s, x, y)?;
        report.check(
            format!("{} y = {l}: bad-conjugate fraction <= Q~", t.name()),
            bad <= q.value,
            format!("{bad} ({:.6})", approx(&bad)),
            format!("<= {} ({:.6})", q.value, approx(&q.value)),
        );
        table.push(vec![
            t.name(),
            l.clone(),
            q.y_order.to_string(),
            q.invertiliser.to_string(),
            q.value.to_string(),
            format!("{:.6}", approx(&q.value)),
            bad.to_string(),
        ]);
        rows.push(json!({
            "y_class": l,
            "qtilde": q,
            "qtilde_approx": approx(&q.value),
            "below_one": q.below_one(),
            "bad_fraction": bad.to_string(),
        }));
    }
    Ok((table, json!({ "T": t.name(), "x": x, "classes": rows })))
}

pub fn criterion_checks(report: &mut Report, family: &Family, m: Option<u64>, q: u64, min_class: Option<BigUint>) -> Result<serde_json::Value> {
    let need_m = || m.ok_or_else(|| Error::Config("--m is needed for classical families".into()));
    match family {
        Family::Classical(f) => {
            let g = ClassicalGroup::new(*f, need_m()?, q)?;
            let row = lie_table_params(&g)?;
            let params = CriterionParams::from(&row);
            let v = criterion_value(&params)?;
            let holds = class_bound_criterion(&params)?;
            let note = if g.in_small_list() { " (group handled by direct computation)" } else { "" };
            report.check(
                format!("{g}: class-size criterion{note}"),
                holds,
                format!("{v} ({:.6})", approx(&v)),
                "< 1",
            );
            Ok(json!({ "row": row, "value": v.to_string(), "value_approx": approx(&v), "in_small_list": g.in_small_list() }))
        }
        Family::Oplus => {
            let r = oplus_check(need_m()?, q)?;
            report.check(
                format!("POmega+{}({q}): bound", 2 * r.m),
                r.holds,
                format!("{:.6}", approx(&r.value)),
                "< 1",
            );
            Ok(serde_json::to_value(&r).expect("serialisable"))
        }
        Family::Exceptional(f) => {
            let r = exceptional_check(*f, q, min_class)?;
            report.check(
                format!("{f:?}({q}): smallest class exceeds |Out|(2d|y|)^2"),
                r.holds,
                format!("{} > {}", r.min_class, r.rhs),
                "true",
            );
            Ok(serde_json::to_value(&r).expect("serialisable"))
        }
    }
}

pub fn procedure_checks(report: &mut Report, r: &ProcedureReport) -> serde_json::Value {
    for c in &r.classes {
        let x0 = c.x0.map_or("none".into(), |z| z.to_string());
        report.check(
            format!("{}: class {} has x0 with trivially-meeting invertilisers", r.t, c.label),
            c.x0.is_some(),
            x0,
            "some x0",
        );
    }
    json!({
        "T": r.t.to_string(),
        "v": r.v,
        "out": r.out,
        "classes": r.classes,
        "success": r.success,
        "base_success": r.base_success,
    })
}

pub fn run(cli: &Cli, cmd: &K2Cmd) -> Result<Outcome> {
    let caps = cli.caps();
    let spec_of = |g: &GroupArgs| g.spec()?.ok_or_else(|| Error::Config("--T is required".into()));
    match cmd {
        K2Cmd::Qtilde(a) => {
            let s = caps.simple(spec_of(&a.group)?)?;
            let labels: Vec<String> = match &a.y_class {
                Some(l) => vec![l.clone()],
                None => s.t.class_labels().into_iter().filter(|l| l != "1A").collect(),
            };
            let mut report = Report::new("k2 qtilde");
            let (table, data) = qtilde_checks(&mut report, &s, &labels)?;
            report.data = data;
            let mut o = Outcome::new(report);
            o.table = Some(table);
            Ok(o)
        }
        K2Cmd::Criterion(a) => {
            let family: Family = a.family.parse()?;
            let min_class = a
                .min_class
                .as_deref()
                .map(|s| s.parse::<BigUint>().map_err(|_| Error::Config(format!("bad --min-class {s:?}"))))
                .transpose()?;
            let mut report = Report::new("k2 criterion");
            report.data = criterion_checks(&mut report, &family, a.m, a.q, min_class)?;
            Ok(Outcome::new(report))
        }
        K2Cmd::Procedure(a) => {
            let s = caps.simple(spec_of(&a.group)?)?;
            let r = invertiliser_procedure(&s)?;
            let mut report = Report::new("k2 procedure");
            report.data = procedure_checks(&mut report, &r);
            let mut table = Table::new(&["T", "class", "invertiliser", "x0", "base_partner"]);
            for c in &r.classes {
                let opt = |v: Option<usize>| v.map_or(String::new(), |z| z.to_string());
                table.push(vec![r.t.to_string(), c.label.clone(), c.invertiliser.to_string(), opt(c.x0), opt(c.base_partner)]);
            }
            let mut o = Outcome::new(report);
            o.table = Some(table);
            Ok(o)
        }
    }
}
