//! `diagperm`: reproducible verification runs over diagonal-type groups.
//!
//! Exit codes: 0 every assertion holds, 1 some computed value disagrees with
//! its prediction, 2 a resource cap was hit, 3 bad input or I/O failure.

pub mod cmd;
pub mod group;
pub mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use diagperm::{Error, Result};

use group::Caps;
use report::{write_file, Report, RunManifest, Table, MANIFEST_SCHEMA};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_EVIDENCE: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "diagperm", version, about = "Bases, greedy bases and relational complexity of diagonal-type groups")]
pub struct Cli {
    /// Group config in the JSON schema {"T":{"family":"Alt","n":5},"k":2,"preset":"full_W",...}.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Largest |Omega| to realise.
    #[arg(long, global = true, value_name = "N")]
    pub cap_omega: Option<usize>,
    /// Largest |T| to build.
    #[arg(long, global = true, value_name = "N")]
    pub cap_order: Option<u64>,
    /// Longest tuple for relational-complexity searches.
    #[arg(long, global = true, value_name = "N", default_value_t = 5)]
    pub max_len: usize,
    #[arg(long, global = true, value_name = "N", default_value_t = 1)]
    pub threads: usize,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Write the command's table as CSV here (`-` for stdout).
    #[arg(long, global = true, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the simple groups, or one group's classes.
    Catalog(cmd::catalog::CatalogArgs),
    /// b(G), greedy base sizes and I(G) for one group, against the closed forms.
    Base(cmd::base::BaseArgs),
    /// Partition types and the greedy refinement simulator.
    #[command(subcommand)]
    Partition(cmd::partition::PartitionCmd),
    /// Certify a relational-complexity witness pair.
    Rc(cmd::rc::RcArgs),
    /// The k = 2 toolkit.
    #[command(subcommand)]
    K2(cmd::k2::K2Cmd),
    /// Run a named verification suite.
    Verify(cmd::verify::VerifyArgs),
}

/// What a command hands back: its report, an optional CSV table and timings.
pub struct Outcome {
    pub report: Report,
    pub table: Option<Table>,
    pub timings: BTreeMap<String, u128>,
    pub config_digest: Option<String>,
}

impl Outcome {
    pub fn new(report: Report) -> Self {
        Outcome {
            report,
            table: None,
            timings: BTreeMap::new(),
            config_digest: None,
        }
    }
}

impl Cli {
    pub fn caps(&self) -> Caps {
        let d = Caps::default();
        Caps {
            omega: self.cap_omega.unwrap_or(d.omega),
            order: self.cap_order.unwrap_or(d.order),
            threads: self.threads.max(1),
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Catalog(a) => cmd::catalog::run(cli, a),
        Command::Base(a) => cmd::base::run(cli, a),
        Command::Partition(a) => cmd::partition::run(cli, a),
        Command::Rc(a) => cmd::rc::run(cli, a),
        Command::K2(a) => cmd::k2::run(cli, a),
        Command::Verify(a) => cmd::verify::run(cli, a),
    }
}

pub fn exit_code(result: &Result<Outcome>) -> i32 {
    match result {
        Ok(o) if o.report.pass => EXIT_PASS,
        Ok(_) => EXIT_EVIDENCE,
        Err(e) if e.is_resource() => EXIT_RESOURCE,
        Err(_) => EXIT_INPUT,
    }
}

fn emit(path: &std::path::Path, bytes: &[u8], outputs: &mut Vec<String>) -> Result<()> {
    if path.as_os_str() == "-" {
        std::io::stdout().write_all(bytes).map_err(|e| Error::Io {
            path: "stdout".into(),
            message: e.to_string(),
        })
    } else {
        write_file(path, bytes)?;
        outputs.push(path.display().to_string());
        Ok(())
    }
}

fn summary(report: &Report) -> String {
    let mut s = String::new();
    for a in &report.assertions {
        let tag = if a.ok { "PASS" } else { "FAIL" };
        if a.predicted.is_empty() {
            s.push_str(&format!("{tag} {}: {}", a.name, a.computed));
        } else {
            s.push_str(&format!("{tag} {}: computed {}, predicted {}", a.name, a.computed, a.predicted));
        }
        s.push('\n');
    }
    let failed = report.assertions.iter().filter(|a| !a.ok).count();
    s.push_str(&format!("{}: {} checks, {failed} failed\n", report.command, report.assertions.len()));
    s
}

fn write_outputs(cli: &Cli, args: &[String], outcome: &Outcome, started: (u64, Instant)) -> Result<()> {
    let mut outputs = Vec::new();
    let to_stdout = |p: &Option<PathBuf>| p.as_ref().is_some_and(|p| p.as_os_str() == "-");
    if !to_stdout(&cli.json) && !to_stdout(&cli.csv) {
        print!("{}", summary(&outcome.report));
    }
    if let Some(p) = &cli.json {
        emit(p, outcome.report.to_json().as_bytes(), &mut outputs)?;
    }
    if let Some(p) = &cli.csv {
        let table = outcome
            .table
            .clone()
            .unwrap_or_else(|| Table::from_assertions(&outcome.report.assertions));
        let mut buf = Vec::new();
        table.write(&mut buf)?;
        emit(p, &buf, &mut outputs)?;
    }
    if let Some(p) = cli.json.as_ref().filter(|p| p.as_os_str() != "-") {
        let manifest = RunManifest {
            schema: MANIFEST_SCHEMA.into(),
            command_line: args.to_vec(),
            config_digest: outcome.config_digest.clone(),
            version: env!("CARGO_PKG_VERSION").into(),
            started_unix_s: started.0,
            elapsed_ms: started.1.elapsed().as_millis(),
            timings_ms: outcome.timings.clone(),
            assertions: outcome.report.assertions.iter().map(|a| (a.name.clone(), a.ok)).collect(),
            outputs: outputs.clone(),
        };
        let mut path = p.clone().into_os_string();
        path.push(".manifest.json");
        let text = serde_json::to_string_pretty(&manifest).expect("serialisable") + "\n";
        write_file(&PathBuf::from(path), text.as_bytes())?;
    }
    Ok(())
}

/// Parses, runs, writes the outputs and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let started = (
        SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
        Instant::now(),
    );
    let result = run(&cli);
    let code = exit_code(&result);
    match &result {
        Ok(outcome) => {
            let printable: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
            if let Err(e) = write_outputs(&cli, &printable, outcome, started) {
                eprintln!("error: {e}");
                return EXIT_INPUT;
            }
        }
        Err(e) => eprintln!("error: {e}"),
    }
    code
}
