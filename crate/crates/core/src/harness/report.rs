use std::io::Write;
use std::time::Duration;

use super::config::{Algo, Measure, Mode, MonoidKind};
use super::BenchError;

pub const SUMMARY_HEADER: &str =
    "algo,monoid,n,ops_per_sec,avg_ins_combines,max_ins_combines,avg_evi_combines,max_evi_combines";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpKind {
    Insert,
    Evict,
    Query,
}

impl OpKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OpKind::Insert => "insert",
            OpKind::Evict => "evict",
            OpKind::Query => "query",
        }
    }
}

/// Combine-call profile of one operation kind.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpStats {
    pub calls: u64,
    pub combines: u64,
    pub max: u64,
}

impl OpStats {
    pub fn record(&mut self, combines: u64) {
        self.calls += 1;
        self.combines += combines;
        self.max = self.max.max(combines);
    }

    pub fn average(&self) -> f64 {
        if self.calls == 0 {
            0.0
        } else {
            self.combines as f64 / self.calls as f64
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatencySample {
    /// Round (static, event) or step (dynamic) index.
    pub round: u64,
    /// Set when sampling per operation.
    pub op: Option<OpKind>,
    pub nanos: u64,
}

/// Nearest-rank percentile: the smallest sample with at least `p`% of the
/// samples at or below it. `samples` is reordered.
pub fn percentile(samples: &mut [u64], p: f64) -> Option<u64> {
    if samples.is_empty() {
        return None;
    }
    let n = samples.len();
    let rank = ((p / 100.0) * n as f64).ceil() as usize;
    let idx = rank.clamp(1, n) - 1;
    Some(*samples.select_nth_unstable(idx).1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatencySummary {
    pub min: u64,
    pub median: u64,
    pub p99: u64,
    pub p9999: u64,
    pub max: u64,
}

impl LatencySummary {
    pub fn from_nanos(nanos: &[u64]) -> Option<Self> {
        let mut work = nanos.to_vec();
        Some(Self {
            min: *nanos.iter().min()?,
            median: percentile(&mut work, 50.0)?,
            p99: percentile(&mut work, 99.0)?,
            p9999: percentile(&mut work, 99.99)?,
            max: *nanos.iter().max()?,
        })
    }
}

/// Rounds that evicted more than [`OpReport::BULK_EVICTION`] items at once.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BulkStats {
    pub rounds: u64,
    pub max_evictions: u64,
    pub max_bulk_nanos: u64,
    pub max_other_nanos: u64,
}

#[derive(Debug, Clone)]
pub struct OpReport {
    pub algo: Algo,
    pub monoid: MonoidKind,
    pub mode: Mode,
    pub measure: Measure,
    /// Window size, or the horizon in ms for event mode.
    pub window: u64,
    /// Data items processed in the measured region.
    pub items: u64,
    pub elapsed: Duration,
    pub insert: OpStats,
    pub evict: OpStats,
    pub query: OpStats,
    pub samples: Vec<LatencySample>,
    pub bulk: BulkStats,
}

impl OpReport {
    pub const BULK_EVICTION: u64 = 100;

    pub(crate) fn new(
        algo: Algo,
        monoid: MonoidKind,
        mode: Mode,
        measure: Measure,
        window: u64,
    ) -> Self {
        Self {
            algo,
            monoid,
            mode,
            measure,
            window,
            items: 0,
            elapsed: Duration::ZERO,
            insert: OpStats::default(),
            evict: OpStats::default(),
            query: OpStats::default(),
            samples: Vec::new(),
            bulk: BulkStats::default(),
        }
    }

    pub fn stats(&self, kind: OpKind) -> &OpStats {
        match kind {
            OpKind::Insert => &self.insert,
            OpKind::Evict => &self.evict,
            OpKind::Query => &self.query,
        }
    }

    /// Data items per second over the measured region.
    pub fn ops_per_sec(&self) -> f64 {
        let secs = self.elapsed.as_secs_f64();
        if secs == 0.0 {
            0.0
        } else {
            self.items as f64 / secs
        }
    }

    pub fn latency(&self) -> Option<LatencySummary> {
        let nanos: Vec<u64> = self.samples.iter().map(|s| s.nanos).collect();
        LatencySummary::from_nanos(&nanos)
    }

    pub fn summary_row(&self) -> String {
        format!(
            "{},{},{},{:.1},{:.4},{},{:.4},{}",
            self.algo,
            self.monoid,
            self.window,
            self.ops_per_sec(),
            self.insert.average(),
            self.insert.max,
            self.evict.average(),
            self.evict.max
        )
    }

    pub fn write_summary<W: Write>(&self, mut out: W, header: bool) -> Result<(), BenchError> {
        if header {
            writeln!(out, "{SUMMARY_HEADER}")?;
        }
        writeln!(out, "{}", self.summary_row())?;
        Ok(())
    }

    /// `round,latency_ns`, or `round,op,latency_ns` for per-op samples.
    pub fn write_samples<W: Write>(&self, out: W) -> Result<(), BenchError> {
        let per_op = self.samples.iter().any(|s| s.op.is_some());
        let mut w = csv::Writer::from_writer(out);
        let csv_err = |e: csv::Error| BenchError::Io(e.into());
        if per_op {
            w.write_record(["round", "op", "latency_ns"])
                .map_err(csv_err)?;
        } else {
            w.write_record(["round", "latency_ns"]).map_err(csv_err)?;
        }
        for s in &self.samples {
            let round = s.round.to_string();
            let nanos = s.nanos.to_string();
            match s.op {
                Some(op) if per_op => w.write_record([round.as_str(), op.as_str(), nanos.as_str()]),
                _ => w.write_record([round.as_str(), nanos.as_str()]),
            }
            .map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }
}
