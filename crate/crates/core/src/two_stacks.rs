//! Two-Stacks: a front stack aggregated towards the back and a back stack
//! aggregated from the front, with an O(n) flip when the front runs dry.
//!
//! `query` and `insert` each combine exactly once. `evict` combines once
//! per moved element when it flips and not at all otherwise, which is one
//! combine per element amortized.

use crate::aggregator::{Aggregator, SwagError};
use crate::deque::ChunkedDeque;
use crate::monoid::Monoid;

#[derive(Debug, Clone)]
pub(crate) struct Record<A> {
    pub(crate) val: A,
    pub(crate) agg: A,
}

pub struct TwoStacks<M: Monoid> {
    monoid: M,
    identity: M::Agg,
    // Top of each stack is the deque's back.
    front: ChunkedDeque<Record<M::Agg>>,
    back: ChunkedDeque<Record<M::Agg>>,
}

impl<M: Monoid> TwoStacks<M> {
    pub fn new(monoid: M) -> Self {
        Self {
            identity: monoid.identity(),
            monoid,
            front: ChunkedDeque::new(),
            back: ChunkedDeque::new(),
        }
    }

    fn agg_front(&self) -> &M::Agg {
        self.front.back().map_or(&self.identity, |r| &r.agg)
    }

    fn agg_back(&self) -> &M::Agg {
        self.back.back().map_or(&self.identity, |r| &r.agg)
    }

    pub fn front_len(&self) -> usize {
        self.front.len()
    }

    pub fn back_len(&self) -> usize {
        self.back.len()
    }

    fn flip(&mut self) {
        while let Ok(Record { val, .. }) = self.back.pop_back() {
            let agg = self.monoid.combine(&val, self.agg_front());
            self.front.push_back(Record { val, agg });
        }
    }
}

impl<M: Monoid> Aggregator for TwoStacks<M> {
    type Monoid = M;

    fn name(&self) -> &'static str {
        "two-stacks"
    }

    fn monoid(&self) -> &M {
        &self.monoid
    }

    fn query(&self) -> M::Agg {
        self.monoid.combine(self.agg_front(), self.agg_back())
    }

    fn insert(&mut self, value: M::Agg) {
        let agg = self.monoid.combine(self.agg_back(), &value);
        self.back.push_back(Record { val: value, agg });
    }

    fn evict(&mut self) -> Result<(), SwagError> {
        if self.front.is_empty() {
            if self.back.is_empty() {
                return Err(SwagError::EmptyWindow);
            }
            self.flip();
        }
        self.front
            .pop_back()
            .map(drop)
            .map_err(|_| SwagError::EmptyWindow)
    }

    fn len(&self) -> usize {
        self.front.len() + self.back.len()
    }

    fn aggregate_slots(&self) -> usize {
        2 * self.len()
    }
}

#[cfg(any(debug_assertions, feature = "audit"))]
impl<M: Monoid> TwoStacks<M>
where
    M::Agg: PartialEq + std::fmt::Debug,
{
    /// Checks both stacks against `window` (oldest first).
    pub fn check_invariants<O>(
        &self,
        algebra: &O,
        window: &[M::Agg],
    ) -> Result<(), crate::audit::InvariantViolation>
    where
        O: Monoid<Agg = M::Agg>,
    {
        use crate::audit::{ensure, expect_eq, fold_range};
        let nf = self.front.len();
        ensure(nf + self.back.len() == window.len(), || {
            format!("size {} != window {}", nf + self.back.len(), window.len())
        })?;
        // front stack is stored bottom-first, so index 0 holds the youngest
        // front element
        for (depth, rec) in self.front.iter().enumerate() {
            let i = nf - 1 - depth;
            expect_eq(|| format!("F[{i}].val"), &rec.val, &window[i])?;
            expect_eq(
                || format!("F[{i}].agg"),
                &rec.agg,
                &fold_range(algebra, window, i..nf),
            )?;
        }
        for (k, rec) in self.back.iter().enumerate() {
            let i = nf + k;
            expect_eq(|| format!("B[{k}].val"), &rec.val, &window[i])?;
            expect_eq(
                || format!("B[{k}].agg"),
                &rec.agg,
                &fold_range(algebra, window, nf..i + 1),
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aggregator::combine_delta;
    use crate::monoid::CountingMonoid;
    use crate::monoids::{Concat, MaxCount, MaxCountAgg};

    #[test]
    fn query_combines_front_and_back() {
        let mut ts = TwoStacks::new(MaxCount::<i64>::new());
        // front holds 4,4,4,1 after a flip, back holds 6,6
        for v in [0, 4, 4, 4, 1] {
            ts.insert(MaxCountAgg::new(v, 1));
        }
        ts.evict().unwrap();
        ts.insert(MaxCountAgg::new(6, 1));
        ts.insert(MaxCountAgg::new(6, 1));
        assert_eq!(ts.agg_front(), &MaxCountAgg::new(4, 3));
        assert_eq!(ts.agg_back(), &MaxCountAgg::new(6, 2));
        assert_eq!(ts.query(), MaxCountAgg::new(6, 2));
    }

    #[test]
    fn back_tops_carry_running_aggregates() {
        let m = MaxCount::<i64>::new();
        let mut ts = TwoStacks::new(m);
        ts.insert(m.lift(4));
        assert_eq!(ts.back.back().unwrap().agg, MaxCountAgg::new(4, 1));
        ts.insert(m.lift(5));
        assert_eq!(ts.back.back().unwrap().agg, MaxCountAgg::new(5, 1));
    }

    #[test]
    fn flip_costs_one_combine_per_moved_element() {
        let mut ts = TwoStacks::new(CountingMonoid::new(Concat));
        for c in "bcdefgh".chars() {
            let (n, ()) = combine_delta(&mut ts, |ts| ts.insert(c.to_string()));
            assert_eq!(n, 1);
        }
        let (n, r) = combine_delta(&mut ts, |ts| ts.evict());
        r.unwrap();
        assert_eq!(n, 7);
        let (n, r) = combine_delta(&mut ts, |ts| ts.evict());
        r.unwrap();
        assert_eq!(n, 0);
        assert_eq!(ts.query(), "defgh");
    }

    #[test]
    fn empty_query_and_evict() {
        let mut ts = TwoStacks::new(CountingMonoid::new(Concat));
        let (n, q) = combine_delta(&mut ts, |ts| ts.query());
        assert_eq!((n, q.as_str()), (1, ""));
        assert_eq!(ts.evict(), Err(SwagError::EmptyWindow));
    }
}
