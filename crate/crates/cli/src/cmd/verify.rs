use clap::{Args, ValueEnum};
use diagperm::base::{closed_form_base, closed_form_greedy, BoundaryReading, FormulaParams, SearchOptions, Stats};
use diagperm::catalog::SimpleSpec;
use diagperm::diagonal::{enumerate_overgroups, DiagonalConfig, NamedOut, NamedTop, OutPart, QLabel, SymClass, TopPart};
use diagperm::k2::{invertiliser_procedure, l2_order_comparisons, ExceptionalFamily};
use diagperm::partition::ceil_chain;
use diagperm::rc::{log_bound, rc_bounds};
use diagperm::{Error, Result};
use serde_json::{json, Value};

use super::{base, k2, partition, rc};
use crate::group::{par_map, CATALOG};
use crate::report::{Report, Table};
use crate::{Cli, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Every k = 2 overgroup of T^2: b and greedy against the closed forms.
    GreedyK2,
    /// k = 3 groups over A5 with P, Q in {A, S}.
    GreedyK3,
    /// Greedy value within one of b, computed and across a closed-form grid.
    GreedyVsBase,
    /// Partition-type claims and the ceiling identity.
    PartitionLemmas,
    /// Relational-complexity witnesses and the logarithmic chain.
    RcWitnesses,
    /// Invertiliser procedure, Q~ and the Lie-type criteria.
    K2Criteria,
    /// Every suite above at its default size.
    AllDesk,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Restrict to one simple group.
    #[arg(long = "T", value_name = "LABEL")]
    pub t: Option<String>,
    /// Partition degree for partition-lemmas.
    #[arg(long, default_value_t = 6)]
    pub n: u64,
    #[arg(long)]
    pub k_max: Option<u64>,
    /// Largest m for the logarithmic chain.
    #[arg(long, default_value_t = 5000)]
    pub m_max: u64,
}

struct Part {
    report: Report,
    data: Value,
    table: Option<Table>,
}

impl Part {
    fn new(name: &str) -> Self {
        Part {
            report: Report::new(name),
            data: Value::Null,
            table: None,
        }
    }
}

fn groups(args: &VerifyArgs, default: &[SimpleSpec]) -> Result<Vec<SimpleSpec>> {
    match &args.t {
        Some(l) => Ok(vec![l.parse()?]),
        None => Ok(default.to_vec()),
    }
}

/// Runs `verify_group` over `configs` on the worker pool, one search thread per config.
fn run_configs(cli: &Cli, part: &mut Part, configs: &[DiagonalConfig], stats: Stats) -> Result<Vec<Value>> {
    let caps = cli.caps();
    let inner = if cli.threads > 1 { 1 } else { cli.threads };
    let results = par_map(configs, cli.threads, |c| {
        let g = caps.group(c)?;
        base::run_group(inner, &g, stats, BoundaryReading::QSymmetric)
    });
    let mut out = Vec::new();
    for r in results {
        out.push(base::absorb(&mut part.report, &r?));
    }
    Ok(out)
}

fn greedy_k2(cli: &Cli, args: &VerifyArgs) -> Result<Part> {
    let mut part = Part::new("greedy-k2");
    let caps = cli.caps();
    let mut data = Vec::new();
    for spec in groups(args, &[SimpleSpec::alt(5), SimpleSpec::psl2(7), SimpleSpec::psl2(8)])? {
        let s = caps.simple(spec)?;
        let configs: Vec<DiagonalConfig> = enumerate_overgroups(spec, &s.aut).into_iter().map(|o| o.config).collect();
        let reports = run_configs(cli, &mut part, &configs, Stats::parse("b,greedy")?)?;
        part.report.check(format!("{spec}: overgroups checked"), true, configs.len(), "");
        let mut comparisons = Vec::new();
        if let SimpleSpec::Psl2 { q } = spec {
            if q >= 7 && q != 9 {
                let g = caps.group(&DiagonalConfig::full(spec, 2))?;
                for c in l2_order_comparisons(&g)? {
                    part.report.check(
                        format!("{spec} full: |G_(1,{})| > |G_(1,{})|", c.x_label, c.y_label),
                        c.ok,
                        format!("{} vs {}", c.stab_x, c.stab_y),
                        "first larger",
                    );
                    comparisons.push(serde_json::to_value(&c).expect("serialisable"));
                }
            }
        }
        data.push(json!({ "T": spec.to_string(), "groups": reports, "order_comparisons": comparisons }));
    }
    part.data = json!(data);
    Ok(part)
}

fn k3_configs(t: SimpleSpec) -> Vec<DiagonalConfig> {
    let none = || OutPart::Named(NamedOut::None);
    let full = || OutPart::Named(NamedOut::Full);
    vec![
        DiagonalConfig::custom(t, 3, none(), TopPart::Named(NamedTop::S), QLabel::S, None),
        DiagonalConfig::custom(t, 3, none(), TopPart::Named(NamedTop::A), QLabel::A, None),
        DiagonalConfig::custom(t, 3, full(), TopPart::Named(NamedTop::A), QLabel::A, None),
        DiagonalConfig::custom(t, 3, none(), TopPart::Named(NamedTop::S), QLabel::A, Some(1)),
        DiagonalConfig::full(t, 3),
    ]
}

fn greedy_k3(cli: &Cli, args: &VerifyArgs) -> Result<Part> {
    let mut part = Part::new("greedy-k3");
    let mut data = Vec::new();
    for spec in groups(args, &[SimpleSpec::alt(5)])? {
        let reports = run_configs(cli, &mut part, &k3_configs(spec), Stats::parse("b,greedy")?)?;
        data.push(json!({ "T": spec.to_string(), "groups": reports }));
    }
    part.data = json!(data);
    Ok(part)
}

fn sym(c: SymClass) -> &'static str {
    match c {
        SymClass::Alt => "A",
        SymClass::Sym => "S",
        SymClass::Other => "other",
    }
}

fn greedy_vs_base(cli: &Cli, args: &VerifyArgs) -> Result<Part> {
    let mut part = Part::new("greedy-vs-base");
    let mut computed = Vec::new();
    for spec in groups(args, &[SimpleSpec::alt(5)])? {
        let mut configs = vec![DiagonalConfig::socle(spec, 2), DiagonalConfig::full(spec, 2)];
        if spec == SimpleSpec::alt(5) {
            configs.extend(k3_configs(spec));
        }
        let caps = cli.caps();
        let rows = par_map(&configs, cli.threads, |c| {
            let g = caps.group(c)?;
            base::run_group(1, &g, Stats::parse("b,greedy")?, BoundaryReading::QSymmetric)
        });
        for r in rows {
            let r = r?;
            let (b, sizes) = (r.b.unwrap_or(0), r.greedy_sizes.clone().unwrap_or_default());
            let hi = sizes.last().copied().unwrap_or(0);
            part.report.check(format!("{}: b <= greedy <= b + 1", r.label), b <= hi && hi <= b + 1, format!("b = {b}, greedy {sizes:?}"), "");
            computed.push(json!({ "label": r.label, "b": b, "greedy": sizes }));
        }
    }
    let mut table = Table::new(&["T_order", "k", "P", "Q", "full", "b", "greedy", "b_rule", "greedy_rule"]);
    let mut bad = 0;
    let mut plus_one = 0;
    let mut rows = 0;
    for tsize in [60u64, 168, 360, 504, 660] {
        let ks: Vec<u64> = (2..=tsize + 2).chain([tsize * tsize - 2, tsize * tsize - 1, tsize * tsize, tsize * tsize + 1]).collect();
        for &k in &ks {
            for (p, q) in [(SymClass::Sym, SymClass::Sym), (SymClass::Sym, SymClass::Alt), (SymClass::Alt, SymClass::Alt), (SymClass::Other, SymClass::Other)] {
                for full in [false, true] {
                    if full && (p, q) != (SymClass::Sym, SymClass::Sym) {
                        continue;
                    }
                    let fp = FormulaParams {
                        tsize,
                        k,
                        p,
                        q,
                        small_alt: tsize == 60 || tsize == 360,
                        full,
                    };
                    let (b, gr) = (closed_form_base(&fp)?, closed_form_greedy(&fp, BoundaryReading::QSymmetric)?);
                    rows += 1;
                    if gr.value < b.value || gr.value > b.value + 1 {
                        bad += 1;
                    }
                    if gr.value == b.value + 1 {
                        plus_one += 1;
                        table.push(vec![
                            tsize.to_string(),
                            k.to_string(),
                            sym(p).into(),
                            sym(q).into(),
                            full.to_string(),
                            b.value.to_string(),
                            gr.value.to_string(),
                            b.rule,
                            gr.rule,
                        ]);
                    }
                }
            }
        }
    }
    part.report.check(
        "closed forms: greedy in {b, b + 1} over the grid",
        bad == 0,
        format!("{bad} of {rows} rows outside"),
        "0 outside",
    );
    part.data = json!({ "computed": computed, "grid_rows": rows, "greedy_exceeds_b": plus_one });
    part.table = Some(table);
    Ok(part)
}

fn partition_lemmas(args: &VerifyArgs) -> Result<Part> {
    let mut part = Part::new("partition-lemmas");
    let k_max = args.k_max.unwrap_or(3 * args.n);
    let (table, data) = partition::part_checks(&mut part.report, args.n, k_max, &[QLabel::A, QLabel::S])?;
    let mut failures = Vec::new();
    let mut total = 0;
    for n in 2..=8u64 {
        for r in 0..=3u32 {
            for m in 1..=2000u64 {
                total += 1;
                if !ceil_chain(m, n, r)? {
                    failures.push(json!([m, n, r]));
                }
            }
        }
    }
    part.report.check(
        "ceil(ceil(m / n^r) / n) = ceil(m / n^(r+1))",
        failures.is_empty(),
        format!("{} of {total} triples fail", failures.len()),
        "0 fail",
    );
    part.data = json!({ "types": data, "ceil_chain": { "triples": total, "failures": failures } });
    part.table = Some(table);
    Ok(part)
}

fn rc_witnesses(cli: &Cli, args: &VerifyArgs) -> Result<Part> {
    let mut part = Part::new("rc-witnesses");
    let caps = cli.caps();
    let mut certs = Vec::new();
    let mut bounds = Vec::new();
    for spec in groups(args, &[SimpleSpec::alt(5), SimpleSpec::psl2(8)])? {
        let g = caps.group(&DiagonalConfig::socle(spec, 2))?;
        let cert = rc::witness(&g, "rc4", None, 3, cli.max_len)?;
        certs.push(rc::certificate_checks(&mut part.report, &g, &cert, 4)?);
        let opts = SearchOptions {
            threads: cli.threads.max(1),
            ..SearchOptions::default()
        };
        let b = rc_bounds(&g, cli.max_len.min(4), &opts)?;
        let want_exact = spec == SimpleSpec::psl2(8);
        part.report.check(
            format!("{}: RC bracket", b.label),
            b.lower <= b.upper && (!want_exact || (b.exact && b.lower == 4)),
            format!("{} <= RC <= {}", b.lower, b.upper),
            if want_exact { "RC = 4" } else { "lower <= upper" },
        );
        bounds.push(serde_json::to_value(&b).expect("serialisable"));
        if spec == SimpleSpec::alt(5) {
            for k in [3, 4] {
                let c = DiagonalConfig::custom(spec, k, OutPart::Named(NamedOut::None), TopPart::Named(NamedTop::S), QLabel::S, None);
                let g = caps.group(&c)?;
                let cert = rc::witness(&g, "alt-family", Some(3), 3, cli.max_len)?;
                certs.push(rc::certificate_checks(&mut part.report, &g, &cert, 3)?);
            }
        }
    }
    let mut failing = Vec::new();
    for m in 64..=args.m_max.max(64) {
        if !log_bound(m)?.ok() {
            failing.push(m);
        }
    }
    part.report.check(
        format!("log n / log log n <= 2m for 64 <= m <= {}", args.m_max.max(64)),
        failing.is_empty(),
        format!("{} values fail", failing.len()),
        "0 fail",
    );
    let below: Vec<u64> = (1..64).filter(|&m| log_bound(m).map(|b| !b.ok()).unwrap_or(true)).collect();
    part.data = json!({ "certificates": certs, "bounds": bounds, "log_chain_failures": failing, "log_chain_fails_below_64": below });
    Ok(part)
}

fn k2_criteria(cli: &Cli, args: &VerifyArgs) -> Result<Part> {
    let mut part = Part::new("k2-criteria");
    let caps = cli.caps();
    let mut procedures = Vec::new();
    let mut qtildes = Vec::new();
    let default: Vec<SimpleSpec> = CATALOG.to_vec();
    let specs = groups(args, &default)?;
    let built = par_map(&specs, cli.threads, |&s| caps.simple(s));
    for s in built {
        let s = s?;
        let r = invertiliser_procedure(&s)?;
        procedures.push(k2::procedure_checks(&mut part.report, &r));
        let labels: Vec<String> = s.t.class_labels().into_iter().filter(|l| l != "1A").collect();
        qtildes.push(k2::qtilde_checks(&mut part.report, &s, &labels)?.1);
    }
    let mut criteria = Vec::new();
    use diagperm::k2::ClassicalFamily as C;
    use k2::Family as F;
    let points = [
        (F::Classical(C::PSp), 3, 5),
        (F::Classical(C::L), 4, 9),
        (F::Classical(C::PSp), 3, 7),
        (F::Classical(C::U), 5, 4),
        (F::Classical(C::L), 5, 5),
        (F::Classical(C::OmegaOdd), 4, 5),
        (F::Classical(C::OmegaMinus), 5, 3),
        (F::Oplus, 4, 4),
        (F::Oplus, 5, 2),
        (F::Oplus, 6, 2),
        (F::Exceptional(ExceptionalFamily::E7), 0, 3),
        (F::Exceptional(ExceptionalFamily::E7), 0, 4),
        (F::Exceptional(ExceptionalFamily::E7), 0, 5),
    ];
    for (f, m, q) in &points {
        criteria.push(k2::criterion_checks(&mut part.report, f, Some(*m), *q, None)?);
    }
    part.data = json!({ "procedures": procedures, "qtilde": qtildes, "criteria": criteria });
    Ok(part)
}

pub fn run(cli: &Cli, args: &VerifyArgs) -> Result<Outcome> {
    let suites = match args.suite {
        Suite::AllDesk => vec![
            Suite::GreedyK2,
            Suite::GreedyK3,
            Suite::GreedyVsBase,
            Suite::PartitionLemmas,
            Suite::RcWitnesses,
            Suite::K2Criteria,
        ],
        s => vec![s],
    };
    let name = |s: Suite| s.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let mut report = Report::new(format!("verify {}", name(args.suite)));
    let mut data = serde_json::Map::new();
    let mut table = None;
    for s in &suites {
        let part = match s {
            Suite::GreedyK2 => greedy_k2(cli, args),
            Suite::GreedyK3 => greedy_k3(cli, args),
            Suite::GreedyVsBase => greedy_vs_base(cli, args),
            Suite::PartitionLemmas => partition_lemmas(args),
            Suite::RcWitnesses => rc_witnesses(cli, args),
            Suite::K2Criteria => k2_criteria(cli, args),
            Suite::AllDesk => Err(Error::Internal("nested all-desk".into())),
        }?;
        report.extend(part.report);
        data.insert(name(*s), part.data);
        if suites.len() == 1 {
            table = part.table;
        }
    }
    report.data = Value::Object(data);
    let mut o = Outcome::new(report);
    o.table = table;
    Ok(o)
}
