//! Report, table and manifest formats.
//!
//! A report is deterministic: the same command gives byte-identical JSON.
//! Wall-clock data lives only in the manifest written next to it.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::Path;

use diagperm::{Error, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const REPORT_SCHEMA: &str = "diagperm-report/1";
pub const MANIFEST_SCHEMA: &str = "diagperm-manifest/1";

/// The bundled JSON schema for [`Report`].
pub const REPORT_SCHEMA_JSON: &str = include_str!("../schema/report.schema.json");

/// One checked claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub ok: bool,
    pub computed: String,
    pub predicted: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub pass: bool,
    pub assertions: Vec<Assertion>,
    pub data: Value,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            schema: REPORT_SCHEMA.into(),
            command: command.into(),
            pass: true,
            assertions: Vec::new(),
            data: Value::Null,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, computed: impl ToString, predicted: impl ToString) {
        self.pass &= ok;
        self.assertions.push(Assertion {
            name: name.into(),
            ok,
            computed: computed.to_string(),
            predicted: predicted.to_string(),
        });
    }

    pub fn extend(&mut self, other: Report) {
        for a in other.assertions {
            self.pass &= a.ok;
            self.assertions.push(a);
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serialisable");
        s.push('\n');
        s
    }
}

/// A flat table for `--csv`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn from_assertions(a: &[Assertion]) -> Self {
        let mut t = Table::new(&["name", "ok", "computed", "predicted"]);
        for x in a {
            t.push(vec![x.name.clone(), x.ok.to_string(), x.computed.clone(), x.predicted.clone()]);
        }
        t
    }

    pub fn write<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Io {
            path: "csv".into(),
            message: e.to_string(),
        };
        w.write_record(&self.header).map_err(io)?;
        for r in &self.rows {
            w.write_record(r).map_err(io)?;
        }
        w.flush().map_err(|e| Error::Io {
            path: "csv".into(),
            message: e.to_string(),
        })
    }

    pub fn read<R: Read>(input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let bad = |e: csv::Error| Error::Io {
            path: "csv".into(),
            message: e.to_string(),
        };
        let header = r.headers().map_err(bad)?.iter().map(String::from).collect();
        let mut rows = Vec::new();
        for rec in r.records() {
            rows.push(rec.map_err(bad)?.iter().map(String::from).collect());
        }
        Ok(Table { header, rows })
    }
}

/// Reads back an assertions table written by `--csv`.
pub fn read_assertions_csv<R: Read>(input: R) -> Result<Vec<Assertion>> {
    let t = Table::read(input)?;
    if t.header != ["name", "ok", "computed", "predicted"] {
        return Err(Error::Config(format!("not an assertions table: {:?}", t.header)));
    }
    t.rows
        .into_iter()
        .map(|r| {
            let ok = r[1].parse().map_err(|_| Error::Config(format!("bad ok field {:?}", r[1])))?;
            Ok(Assertion {
                name: r[0].clone(),
                ok,
                computed: r[2].clone(),
                predicted: r[3].clone(),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema: String,
    pub command_line: Vec<String>,
    pub config_digest: Option<String>,
    pub version: String,
    pub started_unix_s: u64,
    pub elapsed_ms: u128,
    /// Per-item timings moved out of the report to keep it deterministic.
    pub timings_ms: BTreeMap<String, u128>,
    pub assertions: Vec<(String, bool)>,
    pub outputs: Vec<String>,
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}
