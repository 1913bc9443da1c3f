//! Concrete monoids spanning cheap (sum), moderate (geometric mean) and
//! expensive (Bloom filter) combine costs, plus the non-invertible maxcount
//! and the non-commutative concatenation used to check operand order.

mod bloom;
mod concat;
mod geomean;
mod maxcount;
mod sum;

pub use bloom::{Bloom, BloomAgg, BloomConfig, ConfigMismatch};
pub use concat::Concat;
pub use geomean::{GeoMean, GeoMeanAgg};
pub use maxcount::{Extended, MaxCount, MaxCountAgg};
pub use sum::Sum;
