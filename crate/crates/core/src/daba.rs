//! DABA: worst-case O(1) aggregation by reversing the back list
//! incrementally, one step per `insert` or `evict`.
//!
//! The deque holds `(val, agg)` records split by six cursors
//! `F <= L <= R <= A <= B <= E` into the sublists
//!
//! * `[F, L)` front, aggregated to the end of the front list (`B`),
//! * `[L, R)` left, aggregated to `R`,
//! * `[R, A)` right, aggregated from `R`,
//! * `[A, B)` accumulator, aggregated to `B`,
//! * `[B, E)` back, aggregated from `B`.
//!
//! `F` and `E` are always the deque's begin and end, so only the four inner
//! cursors are stored. Every `fixup` is one of singleton, shift, shrink, or a
//! flip immediately followed by a shrink; see [`FixupCase`].

use crate::aggregator::{Aggregator, SwagError};
use crate::deque::{ChunkedDeque, Cursor};
use crate::monoid::Monoid;
use crate::two_stacks::Record;

/// The branch taken by the most recent fixup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixupCase {
    Singleton,
    Shift,
    Shrink,
    /// A flip, which always falls through into a shrink.
    FlipShrink,
    /// A flip falling through into a shift. Unreachable while the size
    /// invariants hold; kept so the dispatch mirrors the algorithm exactly.
    FlipShift,
}

impl FixupCase {
    pub fn flipped(self) -> bool {
        matches!(self, FixupCase::FlipShrink | FixupCase::FlipShift)
    }

    pub fn shrank(self) -> bool {
        matches!(self, FixupCase::Shrink | FixupCase::FlipShrink)
    }
}

pub struct Daba<M: Monoid> {
    monoid: M,
    identity: M::Agg,
    deque: ChunkedDeque<Record<M::Agg>>,
    l: Cursor,
    r: Cursor,
    a: Cursor,
    b: Cursor,
    last_fixup: Option<FixupCase>,
}

impl<M: Monoid> Daba<M> {
    pub fn new(monoid: M) -> Self {
        let deque = ChunkedDeque::new();
        let e = deque.end();
        Self {
            identity: monoid.identity(),
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
            &self.deque.get(&f).agg
        }
    }

    fn agg_b(&self) -> &M::Agg {
        let e = self.deque.end();
        if self.b == e {
            &self.identity
        } else {
            &self.deque.get(&self.deque.prev(e)).agg
        }
    }

    fn agg_l(&self) -> &M::Agg {
        if self.l == self.r {
            &self.identity
        } else {
            &self.deque.get(&self.l).agg
        }
    }

    fn agg_r(&self) -> &M::Agg {
        if self.r == self.a {
            &self.identity
        } else {
            &self.deque.get(&self.deque.prev(self.a)).agg
        }
    }

    fn agg_a(&self) -> &M::Agg {
        if self.a == self.b {
            &self.identity
        } else {
            &self.deque.get(&self.a).agg
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
            self.last_fixup = Some(FixupCase::Singleton);
            return;
        }
        let flipped = self.l == self.b;
        if flipped {
            self.l = f;
            self.a = e;
            self.b = e;
        }
        let case = if self.l == self.r {
            self.a = self.deque.next(self.a);
            self.r = self.deque.next(self.r);
            self.l = self.deque.next(self.l);
            if flipped {
                FixupCase::FlipShift
            } else {
                FixupCase::Shift
            }
        } else {
            let left = self.monoid.combine(self.agg_l(), self.agg_r());
            let left = self.monoid.combine(&left, self.agg_a());
            self.deque.get_mut(&self.l).agg = left;
            self.l = self.deque.next(self.l);

            let top = self.deque.prev(self.a);
            let acc = self.monoid.combine(&self.deque.get(&top).val, self.agg_a());
            self.deque.get_mut(&top).agg = acc;
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

impl<M: Monoid> Aggregator for Daba<M> {
    type Monoid = M;

    fn name(&self) -> &'static str {
        "daba"
    }

    fn monoid(&self) -> &M {
        &self.monoid
    }

    fn query(&self) -> M::Agg {
        self.monoid.combine(self.agg_f(), self.agg_b())
    }

    fn insert(&mut self, value: M::Agg) {
        let agg = self.monoid.combine(self.agg_b(), &value);
        self.deque.push_back(Record { val: value, agg });
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
        2 * self.deque.len()
    }
}

/// Sublist sizes `(|lF|, |lL|, |lR|, |lA|, |lB|)`.
#[cfg(any(debug_assertions, feature = "audit"))]
pub(crate) fn sublist_sizes(
    f: &Cursor,
    l: &Cursor,
    r: &Cursor,
    a: &Cursor,
    b: &Cursor,
    e: &Cursor,
) -> Result<[usize; 5], crate::audit::InvariantViolation> {
    use crate::audit::ensure;
    ensure(f <= l && l <= r && r <= a && a <= b && b <= e, || {
        format!("cursor order violated: F={f:?} L={l:?} R={r:?} A={a:?} B={b:?} E={e:?}")
    })?;
    let d = |hi: &Cursor, lo: &Cursor| hi.distance_from(lo) as usize;
    Ok([d(b, f), d(r, l), d(a, r), d(b, a), d(e, b)])
}

#[cfg(any(debug_assertions, feature = "audit"))]
pub(crate) fn check_sizes(sizes: [usize; 5]) -> Result<(), crate::audit::InvariantViolation> {
    let [nf, nl, nr, na, nb] = sizes;
    let empty = nf == 0 && nb == 0;
    let balanced = nf >= nb && nl + nr + na + 1 == nf - nb && nl == nr;
    crate::audit::ensure(empty || balanced, || {
        format!("size invariant violated: |lF|={nf} |lL|={nl} |lR|={nr} |lA|={na} |lB|={nb}")
    })
}

#[cfg(any(debug_assertions, feature = "audit"))]
impl<M: Monoid> Daba<M>
where
    M::Agg: PartialEq + std::fmt::Debug,
{
    pub fn sizes(&self) -> [usize; 5] {
        sublist_sizes(
            &self.deque.begin(),
            &self.l,
            &self.r,
            &self.a,
            &self.b,
            &self.deque.end(),
        )
        .expect("cursor order")
    }

    /// Checks cursor order, the size invariants, and every stored `val`
    /// and `agg` against `window` (oldest first).
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
        let sizes = sublist_sizes(&f, &self.l, &self.r, &self.a, &self.b, &self.deque.end())?;
        check_sizes(sizes)?;
        let idx = |c: &Cursor| c.distance_from(&f) as usize;
        let (l, r, a, b) = (idx(&self.l), idx(&self.r), idx(&self.a), idx(&self.b));
        let n = window.len();
        for (i, rec) in self.deque.iter().enumerate() {
            expect_eq(|| format!("val[{i}]"), &rec.val, &window[i])?;
            let want = if i < l {
                fold_range(algebra, window, i..b)
            } else if i < r {
                fold_range(algebra, window, i..r)
            } else if i < a {
                fold_range(algebra, window, r..i + 1)
            } else if i < b {
                fold_range(algebra, window, i..b)
            } else {
                fold_range(algebra, window, b..i + 1)
            };
            expect_eq(
                || format!("agg[{i}] (L={l} R={r} A={a} B={b} E={n})"),
                &rec.agg,
                &want,
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
    use crate::monoids::{Concat, Sum};

    #[test]
    fn insert_into_empty_is_one_combine_then_singleton() {
        let mut d = Daba::new(CountingMonoid::new(Sum));
        let (n, ()) = combine_delta(&mut d, |d| d.insert(5));
        assert_eq!(n, 1);
        assert_eq!(d.last_fixup(), Some(FixupCase::Singleton));
        assert_eq!(d.sizes(), [1, 0, 0, 0, 0]);
    }

    #[test]
    fn flip_shrink_then_shift() {
        let mut d = Daba::new(Concat);
        d.insert("a".into());
        d.insert("b".into());
        assert_eq!(d.last_fixup(), Some(FixupCase::FlipShrink));
        d.insert("c".into());
        assert_eq!(d.last_fixup(), Some(FixupCase::Shift));
        assert_eq!(d.query(), "abc");
        let window: Vec<String> = ["a", "b", "c"].map(String::from).into();
        d.check_invariants(&Concat, &window).unwrap();
    }

    #[test]
    fn evict_to_empty_collapses_all_cursors() {
        let mut d = Daba::new(Concat);
        for c in "abcdef".chars() {
            d.insert(c.to_string());
        }
        for _ in 0..6 {
            d.evict().unwrap();
        }
        assert_eq!(d.sizes(), [0; 5]);
        assert_eq!(d.query(), "");
        assert_eq!(d.evict(), Err(SwagError::EmptyWindow));
        d.insert("z".into());
        assert_eq!(d.query(), "z");
    }

    #[test]
    fn records_hold_two_aggregates() {
        assert_eq!(
            std::mem::size_of::<Record<u64>>(),
            2 * std::mem::size_of::<u64>()
        );
    }
}
