//! Experiment driver behind the `swagbench` binary: static count-based
//! windows, fill-and-drain dynamic windows, and event-time windows over
//! timestamped input, with per-operation combine counts and latency samples.

mod config;
mod data;
mod dispatch;
mod event;
mod report;
mod run;

use thiserror::Error;

use crate::monoid::{CountingMonoid, Monoid};
use crate::monoids::{Bloom, Concat, GeoMean, MaxCount, Sum};

pub use config::{Algo, ExperimentConfig, Measure, Mode, MonoidKind};
pub use data::{gen_events, gen_synthetic, read_events_csv, SyntheticValues, TimestampedRecord};
pub use dispatch::run_experiment;
pub use event::Timestamped;
pub use report::{
    percentile, LatencySample, LatencySummary, OpKind, OpReport, OpStats, SUMMARY_HEADER,
};
pub use run::{run_dynamic, run_event, run_static, NoObserver, Observer, Verifier, VERIFY_EVERY};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("input line {line}: {message}")]
    Input { line: u64, message: String },
    #[error("verification failed at step {step}: {detail}")]
    Verification { step: u64, detail: String },
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl BenchError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Usage(_) => 2,
            BenchError::Input { .. } | BenchError::Io(_) => 3,
            BenchError::Verification { .. } => 4,
        }
    }
}

/// A monoid the harness can feed from numeric samples and compare results
/// for.
pub trait BenchMonoid: Monoid + Clone {
    /// `None` when the value is outside the monoid's input domain.
    fn lift_sample(&self, x: f64) -> Option<Self::Agg>;

    /// Whether two aggregates denote the same answer.
    fn agrees(&self, a: &Self::Agg, b: &Self::Agg) -> bool;

    fn describe(&self, agg: &Self::Agg) -> String;
}

impl BenchMonoid for Sum {
    fn lift_sample(&self, x: f64) -> Option<i64> {
        x.is_finite().then(|| self.lift(x.round() as i64))
    }

    fn agrees(&self, a: &i64, b: &i64) -> bool {
        a == b
    }

    fn describe(&self, agg: &i64) -> String {
        agg.to_string()
    }
}

impl BenchMonoid for MaxCount<i64> {
    fn lift_sample(&self, x: f64) -> Option<Self::Agg> {
        x.is_finite().then(|| self.lift(x.round() as i64))
    }

    fn agrees(&self, a: &Self::Agg, b: &Self::Agg) -> bool {
        a == b
    }

    fn describe(&self, agg: &Self::Agg) -> String {
        format!("{:?}x{}", agg.max, agg.count)
    }
}

/// Relative tolerance used when comparing geometric means.
pub const GEOMEAN_RTOL: f64 = 1e-9;

impl BenchMonoid for GeoMean {
    fn lift_sample(&self, x: f64) -> Option<Self::Agg> {
        (x.is_finite() && x > 0.0).then(|| self.lift(x))
    }

    fn agrees(&self, a: &Self::Agg, b: &Self::Agg) -> bool {
        let (x, y) = (self.lower(a), self.lower(b));
        a.count == b.count && (x - y).abs() <= GEOMEAN_RTOL * x.abs().max(y.abs())
    }

    fn describe(&self, agg: &Self::Agg) -> String {
        format!("{} (n={})", self.lower(agg), agg.count)
    }
}

impl BenchMonoid for Bloom {
    fn lift_sample(&self, x: f64) -> Option<Self::Agg> {
        Some(self.lift(x.to_bits()))
    }

    fn agrees(&self, a: &Self::Agg, b: &Self::Agg) -> bool {
        a == b
    }

    fn describe(&self, agg: &Self::Agg) -> String {
        format!("bloom popcount {}", agg.popcount())
    }
}

impl BenchMonoid for Concat {
    fn lift_sample(&self, x: f64) -> Option<String> {
        if !x.is_finite() {
            return None;
        }
        let letter = (x.round() as i64).rem_euclid(26) as u8;
        Some(self.lift(char::from(b'a' + letter)))
    }

    fn agrees(&self, a: &String, b: &String) -> bool {
        a == b
    }

    fn describe(&self, agg: &String) -> String {
        if agg.len() > 32 {
            format!("{}... ({} chars)", &agg[..32], agg.len())
        } else {
            agg.clone()
        }
    }
}

impl<M: BenchMonoid> BenchMonoid for CountingMonoid<M> {
    fn lift_sample(&self, x: f64) -> Option<Self::Agg> {
        self.inner().lift_sample(x)
    }

    fn agrees(&self, a: &Self::Agg, b: &Self::Agg) -> bool {
        self.inner().agrees(a, b)
    }

    fn describe(&self, agg: &Self::Agg) -> String {
        self.inner().describe(agg)
    }
}
