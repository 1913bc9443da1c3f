use crate::monoid::Monoid;

/// Integer sum with wrapping overflow, which keeps `combine` exactly
/// associative.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Sum;

impl Monoid for Sum {
    type In = i64;
    type Agg = i64;
    type Out = i64;

    fn identity(&self) -> i64 {
        0
    }

    #[inline]
    fn combine(&self, older: &i64, newer: &i64) -> i64 {
        older.wrapping_add(*newer)
    }

    fn lift(&self, input: i64) -> i64 {
        input
    }

    fn lower(&self, agg: &i64) -> i64 {
        *agg
    }
}
