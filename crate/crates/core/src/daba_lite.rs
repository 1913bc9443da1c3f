//! DABA Lite: DABA storing one aggregate per slot plus two side aggregates.
//!
//! Sublists aggregated towards the back (`[F, L)`, `[L, R)`, `[A, B)`) hold
//! suffix aggregates as in [`Daba`](crate::daba::Daba). The right and back
//! sublists hold raw values; their products live in `agg_ra` (right plus
//! accumulator, meaningful only while `L != R`) and `agg_b`. Shrink therefore
//! needs two combines instead of three.

use crate::aggregator::{Aggregator, SwagError};
use crate::daba::FixupCase;
use crate::deque::{ChunkedDeque, Cursor};
use crate::monoid::Monoid;

pub struct DabaLite<M: Monoid> {
    monoid: M,
    identity: M::Agg,
    deque: ChunkedDeque<M::Agg>,
    agg_ra: M::Agg,
    agg_b: M::Agg,
    l: Cursor,
    r: Cursor,
    a: Cursor,
    b: Cursor,
    last_fixup: Option<FixupCase>,
}

impl<M: Monoid> DabaLite<M> {
    pub fn new(monoid: M) -> Self {
        let deque = ChunkedDeque::new();
        let e = deque.end();
        Self {
            identity: monoid.identity(),
            agg_ra: monoid.identity(),
            agg_b: monoid.identity(),
            monoid,
            deque,
            l: e,
            r: e,
            a: e,
            b: e,
            last_fixup: None,
        }
    }

    pub fn last_fixup(&self) -> Option<FixupCase> {
        self.last_fixup
    }

    fn agg_f(&self) -> &M::Agg {
        let f = self.deque.begin();
        if f == self.b {
            &self.identity
        } else {
            self.deque.get(&f)
        }
    }

    fn agg_l(&self) -> &M::Agg {
        if self.l == self.r {
            &self.identity
        } else {
            self.deque.get(&self.l)
        }
    }

    fn agg_a(&self) -> &M::Agg {
        if self.a == self.b {
            &self.identity
        } else {
            self.deque.get(&self.a)
        }
    }

    fn fixup(&mut self) {
        let f = self.deque.begin();
        let e = self.deque.end();
        if f == self.b {
            self.b = e;
            self.a = e;
            self.r = e;
            self.l = e;
            self.agg_ra = self.monoid.identity();
            self.agg_b = self.monoid.identity();
            self.last_fixup = Some(FixupCase::Singleton);
            return;
        }
        let flipped = self.l == self.b;
        if flipped {
            self.l = f;
            self.a = e;
            self.b = e;
            self.agg_ra = std::mem::replace(&mut self.agg_b, self.monoid.identity());
        }
        let case = if self.l == self.r {
            // agg_ra goes stale here; it is not read again before the next flip
            self.a = self.deque.next(self.a);
            self.r = self.deque.next(self.r);
            self.l = self.deque.next(self.l);
            if flipped {
                FixupCase::FlipShift
            } else {
                FixupCase::Shift
            }
        } else {
            let left = self.monoid.combine(self.agg_l(), &self.agg_ra);
            self.deque.set(&self.l, left);
            self.l = self.deque.next(self.l);

            let top = self.deque.prev(self.a);
            let acc = self.monoid.combine(self.deque.get(&top), self.agg_a());
            self.deque.set(&top, acc);
            self.a = top;
            if flipped {
                FixupCase::FlipShrink
            } else {
                FixupCase::Shrink
            }
        };
        self.last_fixup = Some(case);
    }
}

impl<M: Monoid> Aggregator for DabaLite<M> {
    type Monoid = M;

    fn name(&self) -> &'static str {
        "daba-lite"
    }

    fn monoid(&self) -> &M {
        &self.monoid
    }

    fn query(&self) -> M::Agg {
        self.monoid.combine(self.agg_f(), &self.agg_b)
    }

    fn insert(&mut self, value: M::Agg) {
        self.agg_b = self.monoid.combine(&self.agg_b, &value);
        self.deque.push_back(value);
        self.fixup();
    }

    fn evict(&mut self) -> Result<(), SwagError> {
        self.deque.pop_front().map_err(|_| SwagError::EmptyWindow)?;
        self.fixup();
        Ok(())
    }

    fn len(&self) -> usize {
        self.deque.len()
    }

    fn aggregate_slots(&self) -> usize {
        // deque slots plus agg_ra and agg_b
        self.deque.len() + 2
    }
}

#[cfg(any(debug_assertions, feature = "audit"))]
impl<M: Monoid> DabaLite<M>
where
    M::Agg: PartialEq + std::fmt::Debug,
{
    pub fn sizes(&self) -> [usize; 5] {
        crate::daba::sublist_sizes(
            &self.deque.begin(),
            &self.l,
            &self.r,
            &self.a,
            &self.b,
            &self.deque.end(),
        )
        .expect("cursor order")
    }

    /// Checks cursor order, the size invariants, every slot, `agg_b`, and
    /// `agg_ra` in its guarded form (only while `L != R`).
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
        let f = self.deque.begin();
        let sizes =
            crate::daba::sublist_sizes(&f, &self.l, &self.r, &self.a, &self.b, &self.deque.end())?;
        crate::daba::check_sizes(sizes)?;
        let idx = |c: &Cursor| c.distance_from(&f) as usize;
        let (l, r, a, b) = (idx(&self.l), idx(&self.r), idx(&self.a), idx(&self.b));
        let n = window.len();
        for (i, stored) in self.deque.iter().enumerate() {
            let want = if i < l {
                fold_range(algebra, window, i..b)
            } else if i < r {
                fold_range(algebra, window, i..r)
            } else if i < a {
                window[i].clone()
            } else if i < b {
                fold_range(algebra, window, i..b)
            } else {
                window[i].clone()
            };
            expect_eq(
                || format!("slot[{i}] (L={l} R={r} A={a} B={b} E={n})"),
                stored,
                &want,
            )?;
        }
        if l != r {
            expect_eq(
                || "aggRA".into(),
                &self.agg_ra,
                &fold_range(algebra, window, r..b),
            )?;
        }
        expect_eq(
            || "aggB".into(),
            &self.agg_b,
            &fold_range(algebra, window, b..n),
        )
    }
}
