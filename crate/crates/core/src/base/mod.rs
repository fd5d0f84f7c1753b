//! Minimal bases, greedy bases and irredundant bases.

mod closed;
mod report;
mod search;

pub use closed::{ceil_log, closed_form_base, closed_form_greedy, greedy_alt_sym_top, BoundaryReading, FormulaParams, Prediction};
pub use report::{verify_group, verify_paper_case, BaseReport, Check, Predicted, Stats, VerifyOptions, Witnesses};
pub use search::{BaseProblem, GreedyOutcome, SearchOptions, DEFAULT_ELEMENT_CAP, DEFAULT_NODE_CAP};
