use std::cmp::Ordering;
use std::marker::PhantomData;

use crate::monoid::Monoid;

/// A value domain extended with an explicit bottom element.
///
/// The derived ordering puts `NegInf` below every `Val`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended<T> {
    NegInf,
    Val(T),
}

/// The maximum seen so far and how many times it occurs.
///
/// `count == 0` exactly when `max` is `NegInf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MaxCountAgg<T> {
    pub max: Extended<T>,
    pub count: u64,
}

impl<T> MaxCountAgg<T> {
    pub fn new(max: T, count: u64) -> Self {
        Self {
            max: Extended::Val(max),
            count,
        }
    }
}

/// Number of occurrences of the window maximum. Not invertible: evicting a
/// maximum cannot be undone from the aggregate alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaxCount<T> {
    _values: PhantomData<fn() -> T>,
}

impl<T> MaxCount<T> {
    pub fn new() -> Self {
        Self {
            _values: PhantomData,
        }
    }
}

impl<T> Default for MaxCount<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Ord + Clone> Monoid for MaxCount<T> {
    type In = T;
    type Agg = MaxCountAgg<T>;
    type Out = u64;

    fn identity(&self) -> MaxCountAgg<T> {
        MaxCountAgg {
            max: Extended::NegInf,
            count: 0,
        }
    }

    fn combine(&self, older: &MaxCountAgg<T>, newer: &MaxCountAgg<T>) -> MaxCountAgg<T> {
        match older.max.cmp(&newer.max) {
            Ordering::Greater => older.clone(),
            Ordering::Less => newer.clone(),
            Ordering::Equal => MaxCountAgg {
                max: older.max.clone(),
                count: older.count + newer.count,
            },
        }
    }

    fn lift(&self, input: T) -> MaxCountAgg<T> {
        MaxCountAgg::new(input, 1)
    }

    fn lower(&self, agg: &MaxCountAgg<T>) -> u64 {
        agg.count
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m() -> MaxCount<i64> {
        MaxCount::new()
    }

    #[test]
    fn larger_max_wins() {
        let got = m().combine(&MaxCountAgg::new(4, 3), &MaxCountAgg::new(6, 2));
        assert_eq!(got, MaxCountAgg::new(6, 2));
    }

    #[test]
    fn equal_max_adds_counts() {
        let got = m().combine(&MaxCountAgg::new(5, 1), &MaxCountAgg::new(5, 2));
        assert_eq!(got, MaxCountAgg::new(5, 3));
    }

    #[test]
    fn lift_and_lower() {
        assert_eq!(m().lift(4), MaxCountAgg::new(4, 1));
        assert_eq!(m().lower(&MaxCountAgg::new(4, 3)), 3);
    }

    #[test]
    fn identity_is_neutral_and_has_zero_count() {
        let id = m().identity();
        assert_eq!(id.count, 0);
        assert_eq!(m().combine(&id, &id), id);
        let a = MaxCountAgg::new(i64::MIN, 2);
        assert_eq!(m().combine(&id, &a), a);
        assert_eq!(m().combine(&a, &id), a);
    }
}
