//! Full-scan invariant checks used by tests and debug tooling.
//!
//! Each engine compares its stored partial aggregates against folds of a
//! shadow copy of the window, so these checks cost O(n²) combines in the worst
//! case and are meant for small windows with exactly-associative monoids.

use std::fmt::Debug;

use thiserror::Error;

use crate::monoid::Monoid;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct InvariantViolation(pub String);

/// `window[range.start] ⊗ ... ⊗ window[range.end - 1]`, identity when empty.
pub(crate) fn fold_range<O: Monoid>(
    algebra: &O,
    window: &[O::Agg],
    range: std::ops::Range<usize>,
) -> O::Agg {
    algebra.fold(&window[range])
}

pub(crate) fn expect_eq<A: PartialEq + Debug>(
    what: impl FnOnce() -> String,
    got: &A,
    want: &A,
) -> Result<(), InvariantViolation> {
    if got == want {
        Ok(())
    } else {
        Err(InvariantViolation(format!(
            "{}: stored {got:?}, expected {want:?}",
            what()
        )))
    }
}

pub(crate) fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), InvariantViolation> {
    if cond {
        Ok(())
    } else {
        Err(InvariantViolation(what()))
    }
}
