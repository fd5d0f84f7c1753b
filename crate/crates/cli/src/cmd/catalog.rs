use std::path::PathBuf;

use clap::Args;
use diagperm::catalog::{GroupSnapshot, SimpleSpec};
use diagperm::Result;
use serde_json::json;

use crate::group::{GroupArgs, CATALOG};
use crate::report::{write_file, Report, Table};
use crate::{Cli, Outcome};

#[derive(Args, Debug)]
pub struct CatalogArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Also write a JSON snapshot of each group into this directory.
    #[arg(long, value_name = "DIR")]
    pub snapshot: Option<PathBuf>,
}

pub fn run(cli: &Cli, args: &CatalogArgs) -> Result<Outcome> {
    let caps = cli.caps();
    let one = args.group.spec()?;
    let specs: Vec<SimpleSpec> = one.map_or_else(|| CATALOG.to_vec(), |s| vec![s]);
    let mut report = Report::new("catalog");
    let mut groups = Vec::new();
    let mut table = Table::new(&["T", "order", "out_order", "classes", "digest"]);
    let mut class_table = Table::new(&["T", "class", "size", "element_order", "centraliser_aut", "invertiliser_aut"]);
    for spec in specs {
        let s = caps.simple(spec)?;
        let (t, aut) = (&s.t, &s.aut);
        report.check(format!("{spec} order"), t.order() as u64 == spec.expected_order(), t.order(), spec.expected_order());
        let out = spec.expected_out_order()?;
        report.check(format!("{spec} |Out|"), aut.out_order() as u64 == out, aut.out_order(), out);
        let classes = t.classes();
        let labels = t.class_labels();
        let mut rows = Vec::new();
        for (c, l) in classes.iter().zip(&labels) {
            let x = c[0];
            let row = json!({
                "class": l,
                "size": c.len(),
                "element_order": t.element_order(x),
                "centraliser_aut": aut.centraliser(x).len(),
                "invertiliser_aut": aut.invertiliser(t, x).len(),
            });
            class_table.push(vec![
                spec.to_string(),
                l.clone(),
                c.len().to_string(),
                t.element_order(x).to_string(),
                row["centraliser_aut"].to_string(),
                row["invertiliser_aut"].to_string(),
            ]);
            rows.push(row);
        }
        table.push(vec![
            spec.to_string(),
            t.order().to_string(),
            aut.out_order().to_string(),
            classes.len().to_string(),
            t.digest(),
        ]);
        groups.push(json!({
            "T": spec.to_string(),
            "order": t.order(),
            "out_order": aut.out_order(),
            "digest": t.digest(),
            "classes": rows,
        }));
        if let Some(dir) = &args.snapshot {
            let snap = GroupSnapshot::new(t, aut);
            let name = spec.to_string().replace(['(', ')'], "_");
            let text = serde_json::to_string_pretty(&snap).expect("serialisable") + "\n";
            write_file(&dir.join(format!("{name}.json")), text.as_bytes())?;
        }
    }
    report.data = json!({ "groups": groups });
    let mut o = Outcome::new(report);
    o.table = Some(if one.is_some() { class_table } else { table });
    Ok(o)
}
