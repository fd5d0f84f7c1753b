//! The two-factor case: two-point stabilisers, invertiliser tests, the class
//! procedure, exact `Q~(T, y)` and the Lie-type inequality evaluators.

mod lie;
mod qtilde;
mod stab;

pub use lie::{
    approx, class_bound_criterion, criterion_value, exceptional_check, lie_table_params, oplus_check, ClassicalFamily,
    ClassicalGroup, CriterionParams, ExceptionalCheck, ExceptionalFamily, LieTableRow, OmegaBound, OplusCheck,
    LOG_GUARD, OPLUS_OUT,
};
pub use qtilde::{bad_conjugate_fraction, qtilde_exact, QTilde};
pub use stab::{
    base_triple_test, l2_order_comparisons, invertiliser_procedure, swap_coset, two_point_stab, BaseTriple, ClassOutcome,
    OrderComparison, ProcedureReport, SwapCoset, TwoPointStab,
};
