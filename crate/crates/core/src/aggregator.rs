//! The FIFO sliding-window aggregation contract shared by every engine.

use std::collections::VecDeque;

use thiserror::Error;

use crate::monoid::{CountingMonoid, Monoid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SwagError {
    #[error("cannot evict from an empty window")]
    EmptyWindow,
}

/// A first-in first-out window that answers the ordered product of its
/// contents.
///
/// If the window holds `v0, ..., vk` (oldest first), `query` returns
/// `v0 ⊗ ... ⊗ vk`, and the identity when empty. Values are inserted
/// already lifted.
pub trait Aggregator {
    type Monoid: Monoid;

    fn name(&self) -> &'static str;

    fn monoid(&self) -> &Self::Monoid;

    fn query(&self) -> <Self::Monoid as Monoid>::Agg;

    fn insert(&mut self, value: <Self::Monoid as Monoid>::Agg);

    /// Removes the oldest value.
    fn evict(&mut self) -> Result<(), SwagError>;

    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of partial aggregates held right now, counting every stored
    /// `Agg` including side slots.
    fn aggregate_slots(&self) -> usize;
}

impl<A: Aggregator + ?Sized> Aggregator for &mut A {
    type Monoid = A::Monoid;

    fn name(&self) -> &'static str {
        (**self).name()
    }

    fn monoid(&self) -> &Self::Monoid {
        (**self).monoid()
    }

    fn query(&self) -> <Self::Monoid as Monoid>::Agg {
        (**self).query()
    }

    fn insert(&mut self, value: <Self::Monoid as Monoid>::Agg) {
        (**self).insert(value)
    }

    fn evict(&mut self) -> Result<(), SwagError> {
        (**self).evict()
    }

    fn len(&self) -> usize {
        (**self).len()
    }

    fn aggregate_slots(&self) -> usize {
        (**self).aggregate_slots()
    }
}

/// One step of a trace driven through [`run_trace`].
#[derive(Debug, Clone, PartialEq)]
pub enum Op<A> {
    Insert(A),
    Evict,
    Query,
}

/// Applies `trace` in order and returns one result per `Query`.
pub fn run_trace<E: Aggregator>(
    engine: &mut E,
    trace: impl IntoIterator<Item = Op<<E::Monoid as Monoid>::Agg>>,
) -> Result<Vec<<E::Monoid as Monoid>::Agg>, SwagError> {
    let mut out = Vec::new();
    for op in trace {
        match op {
            Op::Insert(v) => engine.insert(v),
            Op::Evict => engine.evict()?,
            Op::Query => out.push(engine.query()),
        }
    }
    Ok(out)
}

/// Number of `combine` calls made by `op` on an engine built over a
/// [`CountingMonoid`], along with the operation's result.
pub fn combine_delta<E, M, R>(engine: &mut E, op: impl FnOnce(&mut E) -> R) -> (u64, R)
where
    E: Aggregator<Monoid = CountingMonoid<M>>,
    M: Monoid,
{
    let before = engine.monoid().calls();
    let result = op(engine);
    (engine.monoid().calls() - before, result)
}

/// Recalculate-from-scratch reference: a plain queue folded on every query.
///
/// A query costs exactly `len()` combines because the fold starts from the
/// identity.
#[derive(Debug, Clone)]
pub struct Recalc<M: Monoid> {
    monoid: M,
    fifo: VecDeque<M::Agg>,
}

impl<M: Monoid> Recalc<M> {
    pub fn new(monoid: M) -> Self {
        Self {
            monoid,
            fifo: VecDeque::new(),
        }
    }

    pub fn values(&self) -> impl ExactSizeIterator<Item = &M::Agg> {
        self.fifo.iter()
    }
}

impl<M: Monoid> Aggregator for Recalc<M> {
    type Monoid = M;

    fn name(&self) -> &'static str {
        "recalc"
    }

    fn monoid(&self) -> &M {
        &self.monoid
    }

    fn query(&self) -> M::Agg {
        self.monoid.fold(&self.fifo)
    }

    fn insert(&mut self, value: M::Agg) {
        self.fifo.push_back(value);
    }

    fn evict(&mut self) -> Result<(), SwagError> {
        self.fifo
            .pop_front()
            .map(drop)
            .ok_or(SwagError::EmptyWindow)
    }

    fn len(&self) -> usize {
        self.fifo.len()
    }

    fn aggregate_slots(&self) -> usize {
        self.fifo.len()
    }
}
