use std::hint::black_box;
use std::time::Instant;

use super::config::{ExperimentConfig, Measure, Mode};
use super::data::TimestampedRecord;
use super::event::Timestamped;
use super::report::{LatencySample, OpKind, OpReport};
use super::{BenchError, BenchMonoid};
use crate::aggregator::{Aggregator, Recalc};
use crate::monoid::{CountingMonoid, Monoid};

/// Query results are checked against the oracle once per this many queries
/// when verifying.
pub const VERIFY_EVERY: u64 = 10_000;

/// Hooks called outside the timed region of every round.
pub trait Observer<A> {
    fn inserted(&mut self, _value: &A) {}

    fn evicted(&mut self) {}

    fn queried(&mut self, _step: u64, _result: &A) -> Result<(), BenchError> {
        Ok(())
    }
}

pub struct NoObserver;

impl<A> Observer<A> for NoObserver {}

impl<A, P: Observer<A>, Q: Observer<A>> Observer<A> for (P, Q) {
    fn inserted(&mut self, value: &A) {
        self.0.inserted(value);
        self.1.inserted(value);
    }

    fn evicted(&mut self) {
        self.0.evicted();
        self.1.evicted();
    }

    fn queried(&mut self, step: u64, result: &A) -> Result<(), BenchError> {
        self.0.queried(step, result)?;
        self.1.queried(step, result)
    }
}

/// Mirrors the window in a [`Recalc`] oracle and compares every
/// `every`-th query result against it, starting with the first.
pub struct Verifier<M: BenchMonoid> {
    oracle: Recalc<M>,
    every: u64,
    queries: u64,
    checks: u64,
}

impl<M: BenchMonoid> Verifier<M> {
    pub fn new(monoid: M, every: u64) -> Self {
        Self {
            oracle: Recalc::new(monoid),
            every: every.max(1),
            queries: 0,
            checks: 0,
        }
    }

    pub fn checks(&self) -> u64 {
        self.checks
    }
}

impl<M: BenchMonoid> Observer<M::Agg> for Verifier<M> {
    fn inserted(&mut self, value: &M::Agg) {
        self.oracle.insert(value.clone());
    }

    fn evicted(&mut self) {
        self.oracle
            .evict()
            .expect("observer saw more evictions than insertions");
    }

    fn queried(&mut self, step: u64, result: &M::Agg) -> Result<(), BenchError> {
        let due = self.queries.is_multiple_of(self.every);
        self.queries += 1;
        if !due {
            return Ok(());
        }
        self.checks += 1;
        let want = self.oracle.query();
        let m = self.oracle.monoid();
        if m.agrees(result, &want) {
            Ok(())
        } else {
            Err(BenchError::Verification {
                step,
                detail: format!(
                    "engine returned {}, oracle {}",
                    m.describe(result),
                    m.describe(&want)
                ),
            })
        }
    }
}

fn lift<M: BenchMonoid>(m: &CountingMonoid<M>, x: f64, line: u64) -> Result<M::Agg, BenchError> {
    m.lift_sample(x).ok_or_else(|| BenchError::Input {
        line,
        message: format!("value {x} is outside the monoid's input domain"),
    })
}

fn take_value<M: BenchMonoid>(
    m: &CountingMonoid<M>,
    values: &mut impl Iterator<Item = f64>,
    index: u64,
) -> Result<M::Agg, BenchError> {
    let x = values
        .next()
        .ok_or_else(|| BenchError::Usage(format!("input exhausted after {index} values")))?;
    lift(m, x, index + 1)
}

/// Runs `f` on the engine, records its combine count under `kind`, and
/// returns its result.
#[inline]
fn counted<E, M, R>(
    engine: &mut E,
    report: &mut OpReport,
    kind: OpKind,
    f: impl FnOnce(&mut E) -> R,
) -> R
where
    E: Aggregator<Monoid = CountingMonoid<M>>,
    M: Monoid,
{
    let before = engine.monoid().calls();
    let out = f(engine);
    let delta = engine.monoid().calls() - before;
    match kind {
        OpKind::Insert => report.insert.record(delta),
        OpKind::Evict => report.evict.record(delta),
        OpKind::Query => report.query.record(delta),
    }
    out
}

struct Clock {
    enabled: bool,
    last: Option<Instant>,
}

impl Clock {
    fn new(cfg: &ExperimentConfig) -> Self {
        Self {
            enabled: cfg.measure == Measure::Latency,
            last: None,
        }
    }

    #[inline]
    fn start(&mut self) {
        if self.enabled {
            self.last = Some(Instant::now());
        }
    }

    /// Nanoseconds since the last `start` or `lap`.
    #[inline]
    fn lap(&mut self) -> u64 {
        match self.last {
            Some(t0) => {
                let now = Instant::now();
                self.last = Some(now);
                now.duration_since(t0).as_nanos() as u64
            }
            None => 0,
        }
    }
}

fn new_report(cfg: &ExperimentConfig, window: u64) -> OpReport {
    OpReport::new(cfg.algo, cfg.monoid, cfg.mode, cfg.measure, window)
}

/// Fills a window of `2^window_exp` values, then times `rounds` rounds of
/// evict, insert, query.
pub fn run_static<E, M, O>(
    engine: &mut E,
    cfg: &ExperimentConfig,
    values: impl IntoIterator<Item = f64>,
    observer: &mut O,
) -> Result<OpReport, BenchError>
where
    E: Aggregator<Monoid = CountingMonoid<M>>,
    M: BenchMonoid,
    O: Observer<M::Agg>,
{
    let n = cfg.window();
    let mut values = values.into_iter();
    let mut consumed = 0u64;
    for _ in 0..n {
        let v = take_value(engine.monoid(), &mut values, consumed)?;
        consumed += 1;
        observer.inserted(&v);
        engine.insert(v);
    }

    let mut report = new_report(cfg, n as u64);
    let mut clock = Clock::new(cfg);
    if clock.enabled {
        report
            .samples
            .reserve(cfg.rounds as usize * if cfg.per_op { 3 } else { 1 });
    }
    let start = Instant::now();
    for round in 0..cfg.rounds {
        let v = take_value(engine.monoid(), &mut values, consumed)?;
        consumed += 1;
        observer.evicted();
        observer.inserted(&v);

        clock.start();
        counted(engine, &mut report, OpKind::Evict, |e| e.evict())
            .map_err(|e| BenchError::Usage(format!("window of {n}: {e}")))?;
        let t_evict = if cfg.per_op { clock.lap() } else { 0 };
        counted(engine, &mut report, OpKind::Insert, |e| e.insert(v));
        let t_insert = if cfg.per_op { clock.lap() } else { 0 };
        let q = counted(engine, &mut report, OpKind::Query, |e| e.query());
        let t_query = clock.lap();
        black_box(&q);

        if clock.enabled {
            if cfg.per_op {
                for (op, nanos) in [
                    (OpKind::Evict, t_evict),
                    (OpKind::Insert, t_insert),
                    (OpKind::Query, t_query),
                ] {
                    report.samples.push(LatencySample {
                        round,
                        op: Some(op),
                        nanos,
                    });
                }
            } else {
                report.samples.push(LatencySample {
                    round,
                    op: None,
                    nanos: t_query,
                });
            }
        }
        observer.queried(round, &q)?;
    }
    report.elapsed = start.elapsed();
    report.items = cfg.rounds;
    Ok(report)
}

/// Fill-and-drain: insert+query up to `2^window_exp`, then evict down to
/// empty without querying, until `rounds` values have been inserted.
///
/// Each insert+query pair and each evict is one step.
pub fn run_dynamic<E, M, O>(
    engine: &mut E,
    cfg: &ExperimentConfig,
    values: impl IntoIterator<Item = f64>,
    observer: &mut O,
) -> Result<OpReport, BenchError>
where
    E: Aggregator<Monoid = CountingMonoid<M>>,
    M: BenchMonoid,
    O: Observer<M::Agg>,
{
    let n = cfg.window();
    let mut values = values.into_iter();
    let mut report = new_report(cfg, n as u64);
    let mut clock = Clock::new(cfg);
    let mut inserted = 0u64;
    let mut step = 0u64;
    let sample =
        |report: &mut OpReport, step: u64, op: Option<OpKind>, nanos: u64, enabled: bool| {
            if enabled {
                report.samples.push(LatencySample {
                    round: step,
                    op,
                    nanos,
                });
            }
        };
    let start = Instant::now();
    'cycles: loop {
        while engine.len() < n {
            if inserted == cfg.rounds {
                break 'cycles;
            }
            let v = take_value(engine.monoid(), &mut values, inserted)?;
            inserted += 1;
            observer.inserted(&v);
            clock.start();
            counted(engine, &mut report, OpKind::Insert, |e| e.insert(v));
            if cfg.per_op {
                let t = clock.lap();
                sample(&mut report, step, Some(OpKind::Insert), t, clock.enabled);
            }
            let q = counted(engine, &mut report, OpKind::Query, |e| e.query());
            let t = clock.lap();
            black_box(&q);
            sample(
                &mut report,
                step,
                cfg.per_op.then_some(OpKind::Query),
                t,
                clock.enabled,
            );
            observer.queried(step, &q)?;
            step += 1;
        }
        while !engine.is_empty() {
            observer.evicted();
            clock.start();
            counted(engine, &mut report, OpKind::Evict, |e| e.evict()).expect("nonempty");
            let t = clock.lap();
            sample(
                &mut report,
                step,
                cfg.per_op.then_some(OpKind::Evict),
                t,
                clock.enabled,
            );
            step += 1;
        }
        if inserted == cfg.rounds {
            break;
        }
    }
    report.elapsed = start.elapsed();
    report.items = inserted;
    Ok(report)
}

/// Event-time window of `tau_ms`: for each record, evict everything stamped
/// before `t - tau`, insert, query. Measurement starts after the first
/// round that evicts.
pub fn run_event<E, M, O>(
    engine: &mut E,
    cfg: &ExperimentConfig,
    records: &[TimestampedRecord],
    observer: &mut O,
) -> Result<OpReport, BenchError>
where
    E: Aggregator<Monoid = CountingMonoid<M>>,
    M: BenchMonoid,
    O: Observer<M::Agg>,
{
    let tau = cfg
        .tau_ms
        .ok_or_else(|| BenchError::Usage("event mode requires --tau-ms".into()))?;
    let tau = i64::try_from(tau)
        .map_err(|_| BenchError::Usage(format!("--tau-ms {tau} is too large")))?;
    let mut window = Timestamped::new(&mut *engine);
    let mut report = new_report(cfg, tau as u64);
    let mut clock = Clock::new(cfg);
    let mut measuring = false;
    let mut start = None;

    for (round, rec) in records.iter().enumerate() {
        let round = round as u64;
        let v = lift(window.engine().monoid(), rec.value, rec.line)?;
        if let Some(youngest) = window.youngest() {
            if rec.timestamp_ms < youngest {
                return Err(BenchError::Input {
                    line: rec.line,
                    message: format!(
                        "timestamp {} is older than previous {youngest}",
                        rec.timestamp_ms
                    ),
                });
            }
        }
        let cutoff = rec.timestamp_ms.saturating_sub(tau);

        clock.start();
        let mut before = window.engine().monoid().calls();
        let mut evict_combines = Vec::new();
        let evicted = window.evict_before(cutoff, |e| {
            let now = e.monoid().calls();
            evict_combines.push(now - before);
            before = now;
        });
        let t_evict = if cfg.per_op { clock.lap() } else { 0 };
        let c0 = window.engine().monoid().calls();
        window
            .insert(rec.timestamp_ms, v.clone())
            .expect("order checked above");
        let c1 = window.engine().monoid().calls();
        let t_insert = if cfg.per_op { clock.lap() } else { 0 };
        let q = window.query();
        let c2 = window.engine().monoid().calls();
        let t_query = clock.lap();
        black_box(&q);

        for _ in 0..evicted {
            observer.evicted();
        }
        observer.inserted(&v);

        if measuring {
            for delta in evict_combines {
                report.evict.record(delta);
            }
            report.insert.record(c1 - c0);
            report.query.record(c2 - c1);
            report.items += 1;
            let nanos = t_evict + t_insert + t_query;
            if clock.enabled {
                if cfg.per_op {
                    for (op, t) in [
                        (OpKind::Evict, t_evict),
                        (OpKind::Insert, t_insert),
                        (OpKind::Query, t_query),
                    ] {
                        report.samples.push(LatencySample {
                            round,
                            op: Some(op),
                            nanos: t,
                        });
                    }
                } else {
                    report.samples.push(LatencySample {
                        round,
                        op: None,
                        nanos,
                    });
                }
            }
            let bulk = &mut report.bulk;
            bulk.max_evictions = bulk.max_evictions.max(evicted as u64);
            if evicted as u64 > OpReport::BULK_EVICTION {
                bulk.rounds += 1;
                bulk.max_bulk_nanos = bulk.max_bulk_nanos.max(nanos);
            } else {
                bulk.max_other_nanos = bulk.max_other_nanos.max(nanos);
            }
        } else if evicted > 0 {
            measuring = true;
            start = Some(Instant::now());
        }
        observer.queried(round, &q)?;
    }
    report.elapsed = start.map(|s| s.elapsed()).unwrap_or_default();
    debug_assert_eq!(report.mode, Mode::Event);
    Ok(report)
}
