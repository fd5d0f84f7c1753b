use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::closed::{closed_form_base, closed_form_greedy, BoundaryReading, FormulaParams, Prediction};
use super::search::{BaseProblem, SearchOptions, DEFAULT_ELEMENT_CAP};
use crate::diagonal::{DiagonalConfig, DiagonalGroup};
use crate::error::Result;

/// Which statistics to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub b: bool,
    pub greedy: bool,
    pub irr: bool,
}

impl Stats {
    pub const ALL: Stats = Stats {
        b: true,
        greedy: true,
        irr: true,
    };

    /// Parses a comma list such as `b,greedy,irr`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = Stats {
            b: false,
            greedy: false,
            irr: false,
        };
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "b" => out.b = true,
                "greedy" => out.greedy = true,
                "irr" | "I" => out.irr = true,
                other => return Err(crate::Error::Config(format!("unknown statistic {other:?}"))),
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub stats: Stats,
    pub search: SearchOptions,
    pub element_cap: usize,
    pub reading: BoundaryReading,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            stats: Stats::ALL,
            search: SearchOptions::default(),
            element_cap: DEFAULT_ELEMENT_CAP,
            reading: BoundaryReading::default(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub b: Option<Vec<usize>>,
    pub greedy: Option<Vec<usize>>,
    pub irr: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicted {
    pub b: Prediction,
    pub greedy: Prediction,
    /// The greedy value under the other boundary reading, when it differs.
    pub greedy_alternative: Option<Prediction>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseReport {
    pub label: String,
    pub order: String,
    pub omega: usize,
    pub b: Option<usize>,
    pub greedy_sizes: Option<Vec<usize>>,
    #[serde(rename = "I")]
    pub irr: Option<usize>,
    pub witnesses: Witnesses,
    pub predicted: Predicted,
    pub checks: Vec<Check>,
    #[serde(rename = "match")]
    pub matches: bool,
    pub elapsed_ms: u128,
}

impl BaseReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }
}

fn check(checks: &mut Vec<Check>, name: &str, ok: bool, detail: String) {
    checks.push(Check {
        name: name.into(),
        ok,
        detail,
    });
}

fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (n - 1).ilog2() as usize + 1
    }
}

/// Computes the requested statistics of a diagonal-type group and compares
/// them with each other and with the closed forms. Disagreements are
/// reported in `checks`, not raised as errors.
pub fn verify_paper_case(config: &DiagonalConfig, opts: &VerifyOptions) -> Result<BaseReport> {
    let g = DiagonalGroup::build(config)?;
    verify_group(&g, opts)
}

pub fn verify_group(g: &DiagonalGroup, opts: &VerifyOptions) -> Result<BaseReport> {
    let start = Instant::now();
    let params = FormulaParams::of_group(g);
    let other = match opts.reading {
        BoundaryReading::QSymmetric => BoundaryReading::QAlternating,
        BoundaryReading::QAlternating => BoundaryReading::QSymmetric,
    };
    let pg = closed_form_greedy(&params, opts.reading)?;
    let alt = closed_form_greedy(&params, other)?;
    let predicted = Predicted {
        b: closed_form_base(&params)?,
        greedy_alternative: (alt.value != pg.value).then_some(alt),
        greedy: pg,
    };

    let problem = BaseProblem::from_diagonal(g, opts.element_cap)?;
    let mut witnesses = Witnesses::default();
    let b = if opts.stats.b {
        let (b, w) = problem.min_base(&opts.search)?;
        witnesses.b = Some(w);
        Some(b)
    } else {
        None
    };
    let greedy = if opts.stats.greedy {
        let out = problem.greedy_sizes(&opts.search)?;
        witnesses.greedy = out.witnesses.last().cloned();
        Some(out.sizes)
    } else {
        None
    };
    let irr = if opts.stats.irr {
        let (i, w) = problem.max_irredundant(&opts.search)?;
        witnesses.irr = Some(w);
        Some(i)
    } else {
        None
    };

    let mut checks = Vec::new();
    for (name, w) in [("b witness", &witnesses.b), ("greedy witness", &witnesses.greedy), ("irr witness", &witnesses.irr)] {
        if let Some(w) = w {
            check(&mut checks, name, problem.is_base(w), format!("{w:?}"));
        }
    }
    if let Some(b) = b {
        check(
            &mut checks,
            "b = closed form",
            b as u32 == predicted.b.value,
            format!("computed {b}, predicted {}", predicted.b.value),
        );
    }
    if let Some(sizes) = &greedy {
        let (lo, hi) = (sizes[0], *sizes.last().unwrap());
        check(&mut checks, "greedy sizes agree", sizes.len() == 1, format!("{sizes:?}"));
        check(
            &mut checks,
            "greedy = closed form",
            hi as u32 == predicted.greedy.value,
            format!("computed {hi}, predicted {}", predicted.greedy.value),
        );
        if let Some(b) = b {
            check(&mut checks, "b <= greedy <= b + 1", b <= lo && hi <= b + 1, format!("b = {b}, greedy {sizes:?}"));
            if b == 2 {
                check(&mut checks, "b = 2 forces greedy = 2", hi == 2, format!("{sizes:?}"));
            }
        }
        if let Some(i) = irr {
            check(&mut checks, "greedy <= I", hi <= i, format!("greedy {sizes:?}, I = {i}"));
        }
    }
    if let (Some(b), Some(i)) = (b, irr) {
        let bound = b * ceil_log2(g.omega_size());
        check(&mut checks, "b <= I <= b log|Omega|", b <= i && i <= bound, format!("b = {b}, I = {i}, bound {bound}"));
    }
    let matches = checks.iter().all(|c| c.ok);
    Ok(BaseReport {
        label: g.config().label(),
        order: g.theoretical_order().to_string(),
        omega: g.omega_size(),
        b,
        greedy_sizes: greedy,
        irr,
        witnesses,
        predicted,
        checks,
        matches,
        elapsed_ms: start.elapsed().as_millis(),
    })
}
