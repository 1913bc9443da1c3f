//! The algebra every aggregator is generic over.
//!
//! A [`Monoid`] bundles an associative `combine` with a two-sided identity,
//! plus the `lift`/`lower` conversions that map raw stream elements into the
//! aggregation type and final aggregates back out to answers.

use std::cell::Cell;

/// An associative binary operator with a two-sided identity, together with
/// conversions from input elements and to output answers.
///
/// `combine(older, newer)` must be associative. It need not be commutative:
/// aggregators always pass the older operand on the left.
pub trait Monoid {
    type In;
    type Agg: Clone;
    type Out;

    fn identity(&self) -> Self::Agg;

    fn combine(&self, older: &Self::Agg, newer: &Self::Agg) -> Self::Agg;

    /// Lifts one input element to a singleton aggregate. Applied once, when
    /// the element first arrives.
    fn lift(&self, input: Self::In) -> Self::Agg;

    fn lower(&self, agg: &Self::Agg) -> Self::Out;

    /// Left-to-right fold starting from the identity.
    ///
    /// Performs exactly one `combine` per item, including the first one.
    fn fold<'a, I>(&self, items: I) -> Self::Agg
    where
        I: IntoIterator<Item = &'a Self::Agg>,
        Self::Agg: 'a,
    {
        items
            .into_iter()
            .fold(self.identity(), |acc, item| self.combine(&acc, item))
    }
}

/// Wraps a monoid and tallies every physical `combine` call.
///
/// The tally lives in a `Cell`, so the wrapper is `Send` but not `Sync`,
/// which matches the single-owner aggregators that hold it.
#[derive(Debug, Default)]
pub struct CountingMonoid<M> {
    inner: M,
    calls: Cell<u64>,
}

impl<M> CountingMonoid<M> {
    pub fn new(inner: M) -> Self {
        Self {
            inner,
            calls: Cell::new(0),
        }
    }

    pub fn inner(&self) -> &M {
        &self.inner
    }

    /// Total `combine` calls since construction or the last reset.
    pub fn calls(&self) -> u64 {
        self.calls.get()
    }

    pub fn reset(&self) {
        self.calls.set(0);
    }
}

impl<M: Clone> Clone for CountingMonoid<M> {
    fn clone(&self) -> Self {
        Self {
            inner: self.inner.clone(),
            calls: Cell::new(self.calls.get()),
        }
    }
}

impl<M: Monoid> Monoid for CountingMonoid<M> {
    type In = M::In;
    type Agg = M::Agg;
    type Out = M::Out;

    fn identity(&self) -> Self::Agg {
        self.inner.identity()
    }

    #[inline]
    fn combine(&self, older: &Self::Agg, newer: &Self::Agg) -> Self::Agg {
        self.calls.set(self.calls.get() + 1);
        self.inner.combine(older, newer)
    }

    fn lift(&self, input: Self::In) -> Self::Agg {
        self.inner.lift(input)
    }

    fn lower(&self, agg: &Self::Agg) -> Self::Out {
        self.inner.lower(agg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoids::Sum;

    #[test]
    fn counts_every_combine_including_identity_operands() {
        let m = CountingMonoid::new(Sum);
        let id = m.identity();
        m.combine(&id, &id);
        m.combine(&3, &4);
        assert_eq!(m.calls(), 2);
        m.reset();
        assert_eq!(m.calls(), 0);
    }

    #[test]
    fn fold_combines_once_per_item() {
        let m = CountingMonoid::new(Sum);
        assert_eq!(m.fold(&[1, 2, 3]), 6);
        assert_eq!(m.calls(), 3);
        assert_eq!(m.fold(&[]), 0);
        assert_eq!(m.calls(), 3);
    }
}
