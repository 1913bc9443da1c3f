use crate::aggregator::{Aggregator, SwagError};
use crate::deque::ChunkedDeque;
use crate::monoid::Monoid;

/// An aggregator extended with the timestamps of the values it holds, so an
/// event-time horizon can be enforced from the outside.
pub struct Timestamped<E> {
    engine: E,
    stamps: ChunkedDeque<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("timestamp {got} is older than the youngest in the window ({youngest})")]
pub struct OutOfOrder {
    pub got: i64,
    pub youngest: i64,
}

impl<E: Aggregator> Timestamped<E> {
    pub fn new(engine: E) -> Self {
        Self {
            engine,
            stamps: ChunkedDeque::new(),
        }
    }

    pub fn engine(&self) -> &E {
        &self.engine
    }

    pub fn oldest(&self) -> Option<i64> {
        self.stamps.front().copied()
    }

    pub fn youngest(&self) -> Option<i64> {
        self.stamps.back().copied()
    }

    pub fn insert(
        &mut self,
        timestamp_ms: i64,
        value: <E::Monoid as Monoid>::Agg,
    ) -> Result<(), OutOfOrder> {
        if let Some(youngest) = self.youngest() {
            if timestamp_ms < youngest {
                return Err(OutOfOrder {
                    got: timestamp_ms,
                    youngest,
                });
            }
        }
        self.stamps.push_back(timestamp_ms);
        self.engine.insert(value);
        Ok(())
    }

    pub fn evict(&mut self) -> Result<i64, SwagError> {
        let ts = self
            .stamps
            .pop_front()
            .map_err(|_| SwagError::EmptyWindow)?;
        self.engine.evict()?;
        Ok(ts)
    }

    /// Evicts every value stamped strictly before `cutoff_ms`, calling
    /// `after_each` once per eviction. Returns how many were evicted.
    pub fn evict_before(&mut self, cutoff_ms: i64, mut after_each: impl FnMut(&E)) -> usize {
        let mut evicted = 0;
        while self.oldest().is_some_and(|ts| ts < cutoff_ms) {
            self.evict().expect("nonempty: oldest() was Some");
            after_each(&self.engine);
            evicted += 1;
        }
        evicted
    }

    pub fn query(&self) -> <E::Monoid as Monoid>::Agg {
        self.engine.query()
    }

    pub fn len(&self) -> usize {
        self.engine.len()
    }

    pub fn is_empty(&self) -> bool {
        self.engine.is_empty()
    }
}
