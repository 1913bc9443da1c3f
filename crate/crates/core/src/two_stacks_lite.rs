//! Two-Stacks Lite: one deque split by a boundary cursor `b`.
//!
//! Slots in `[begin, b)` hold suffix aggregates up to `b`; slots in
//! `[b, end)` hold raw values whose product is kept in `agg_back`. That is
//! `n + 1` stored aggregates instead of `2n`.

use crate::aggregator::{Aggregator, SwagError};
use crate::deque::{ChunkedDeque, Cursor};
use crate::monoid::Monoid;

pub struct TwoStacksLite<M: Monoid> {
    monoid: M,
    identity: M::Agg,
    deque: ChunkedDeque<M::Agg>,
    b: Cursor,
    agg_back: M::Agg,
}

impl<M: Monoid> TwoStacksLite<M> {
    pub fn new(monoid: M) -> Self {
        let deque = ChunkedDeque::new();
        Self {
            identity: monoid.identity(),
            agg_back: monoid.identity(),
            b: deque.begin(),
            deque,
            monoid,
        }
    }

    fn agg_front(&self) -> &M::Agg {
        let f = self.deque.begin();
        if f == self.b {
            &self.identity
        } else {
            self.deque.get(&f)
        }
    }

    // Rewrites [begin, end) right-to-left into suffix aggregates.
    fn flip(&mut self) {
        let f = self.deque.begin();
        let mut i = self.deque.prev(self.deque.end());
        while i != f {
            let newer = i;
            i = self.deque.prev(i);
            let agg = self
                .monoid
                .combine(self.deque.get(&i), self.deque.get(&newer));
            self.deque.set(&i, agg);
        }
        self.b = self.deque.end();
        self.agg_back = self.monoid.identity();
    }
}

impl<M: Monoid> Aggregator for TwoStacksLite<M> {
    type Monoid = M;

    fn name(&self) -> &'static str {
        "two-stacks-lite"
    }

    fn monoid(&self) -> &M {
        &self.monoid
    }

    fn query(&self) -> M::Agg {
        self.monoid.combine(self.agg_front(), &self.agg_back)
    }

    fn insert(&mut self, value: M::Agg) {
        self.agg_back = self.monoid.combine(&self.agg_back, &value);
        self.deque.push_back(value);
    }

    fn evict(&mut self) -> Result<(), SwagError> {
        if self.deque.is_empty() {
            return Err(SwagError::EmptyWindow);
        }
        if self.deque.begin() == self.b {
            self.flip();
        }
        self.deque
            .pop_front()
            .map(drop)
            .map_err(|_| SwagError::EmptyWindow)
    }

    fn len(&self) -> usize {
        self.deque.len()
    }

    fn aggregate_slots(&self) -> usize {
        // deque slots plus agg_back
        self.deque.len() + 1
    }
}

#[cfg(any(debug_assertions, feature = "audit"))]
impl<M: Monoid> TwoStacksLite<M>
where
    M::Agg: PartialEq + std::fmt::Debug,
{
    pub fn front_len(&self) -> usize {
        self.deque
            .index_of(&self.b)
            .expect("boundary cursor out of range")
    }

    pub fn check_invariants<O>(
        &self,
        algebra: &O,
        window: &[M::Agg],
    ) -> Result<(), crate::audit::InvariantViolation>
    where
        O: Monoid<Agg = M::Agg>,
    {
        use crate::audit::{ensure, expect_eq, fold_range};
        ensure(self.deque.len() == window.len(), || {
            format!("size {} != window {}", self.deque.len(), window.len())
        })?;
        let nf = self.front_len();
        for (i, stored) in self.deque.iter().enumerate() {
            if i < nf {
                expect_eq(
                    || format!("front slot {i}"),
                    stored,
                    &fold_range(algebra, window, i..nf),
                )?;
            } else {
                expect_eq(|| format!("back slot {i}"), stored, &window[i])?;
            }
        }
        expect_eq(
            || "aggB".into(),
            &self.agg_back,
            &fold_range(algebra, window, nf..window.len()),
        )
    }
}
