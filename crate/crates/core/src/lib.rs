//! First-in first-out sliding-window aggregation over arbitrary monoids.
//!
//! Four engines implement the [`Aggregator`] contract:
//!
//! | engine | `query` | `insert` | `evict` | stored aggregates |
//! |---|---|---|---|---|
//! | [`TwoStacks`] | 1 | 1 | amortized 1, worst n | 2n |
//! | [`TwoStacksLite`] | 1 | 1 | amortized 1, worst n − 1 | n + 1 |
//! | [`Daba`] | 1 | ≤ 4 | ≤ 3 | 2n |
//! | [`DabaLite`] | 1 | ≤ 3 | ≤ 2 | n + 2 |
//!
//! Counts are `combine` invocations. [`Recalc`] folds the whole window on
//! every query and serves as the reference.
//!
//! ```
//! use swag::{Aggregator, DabaLite, Monoid};
//! use swag::monoids::MaxCount;
//!
//! let m = MaxCount::<i64>::new();
//! let mut window = DabaLite::new(m);
//! for x in [4, 5, 3, 4, 0, 4, 4] {
//!     window.insert(m.lift(x));
//! }
//! window.evict().unwrap();
//! window.evict().unwrap();
//! assert_eq!(m.lower(&window.query()), 3);
//! ```

pub mod aggregator;
#[cfg(any(debug_assertions, feature = "audit"))]
pub mod audit;
pub mod daba;
pub mod daba_lite;
pub mod deque;
pub mod harness;
pub mod monoid;
pub mod monoids;
pub mod two_stacks;
pub mod two_stacks_lite;

pub use aggregator::{combine_delta, run_trace, Aggregator, Op, Recalc, SwagError};
pub use daba::{Daba, FixupCase};
pub use daba_lite::DabaLite;
pub use deque::{ChunkedDeque, Cursor, DequeError};
pub use monoid::{CountingMonoid, Monoid};
pub use two_stacks::TwoStacks;
pub use two_stacks_lite::TwoStacksLite;
