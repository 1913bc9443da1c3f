use std::io::Read;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::BenchError;

/// One input record for event-time windows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimestampedRecord {
    pub timestamp_ms: i64,
    pub value: f64,
    /// 1-based source line, for error messages.
    pub line: u64,
}

const MIN_VALUE: u32 = 1;
const MAX_VALUE: u32 = 1000;
/// Inter-arrival gaps for the synthetic event stream, in ms. Mean 10 ms,
/// i.e. roughly 100 Hz.
const GAP_MS: std::ops::RangeInclusive<i64> = 5..=15;
/// 2012-01-01T00:00:00Z
const EPOCH_MS: i64 = 1_325_376_000_000;

/// Deterministic stream of integer-valued samples in `1..=1000`.
#[derive(Debug, Clone)]
pub struct SyntheticValues {
    rng: ChaCha8Rng,
    remaining: u64,
}

impl Iterator for SyntheticValues {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        Some(f64::from(self.rng.gen_range(MIN_VALUE..=MAX_VALUE)))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.remaining as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for SyntheticValues {}

pub fn gen_synthetic(seed: u64, count: u64) -> SyntheticValues {
    SyntheticValues {
        rng: ChaCha8Rng::seed_from_u64(seed),
        remaining: count,
    }
}

/// Synthetic stand-in for a ~100 Hz sensor feed with nondecreasing
/// timestamps.
pub fn gen_events(seed: u64, count: u64) -> Vec<TimestampedRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_e7e7);
    let mut values = gen_synthetic(seed, count);
    let mut ts = EPOCH_MS;
    (0..count)
        .map(|i| {
            if i > 0 {
                ts += rng.gen_range(GAP_MS);
            }
            TimestampedRecord {
                timestamp_ms: ts,
                value: values.next().expect("sized to count"),
                line: i + 1,
            }
        })
        .collect()
}

/// Parses `timestamp_ms,value` rows. Timestamps must be integers and
/// nondecreasing.
pub fn read_events_csv<R: Read>(
    input: R,
    has_header: bool,
) -> Result<Vec<TimestampedRecord>, BenchError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .trim(csv::Trim::All)
        .flexible(false)
        .from_reader(input);
    let mut out = Vec::new();
    let mut last: Option<i64> = None;
    for row in reader.records() {
        let row = row.map_err(|e| BenchError::Input {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = row.position().map_or(0, |p| p.line());
        let bad = |message: String| BenchError::Input { line, message };
        if row.len() != 2 {
            return Err(bad(format!("expected 2 columns, found {}", row.len())));
        }
        let timestamp_ms: i64 = row[0]
            .parse()
            .map_err(|e| bad(format!("timestamp {:?}: {e}", &row[0])))?;
        let value: f64 = row[1]
            .parse()
            .map_err(|e| bad(format!("value {:?}: {e}", &row[1])))?;
        if let Some(prev) = last {
            if timestamp_ms < prev {
                return Err(bad(format!(
                    "timestamp {timestamp_ms} is older than previous {prev}"
                )));
            }
        }
        last = Some(timestamp_ms);
        out.push(TimestampedRecord {
            timestamp_ms,
            value,
            line,
        });
    }
    Ok(out)
}
