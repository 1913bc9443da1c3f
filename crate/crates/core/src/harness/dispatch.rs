use super::config::{Algo, ExperimentConfig, Mode, MonoidKind};
use super::data::{gen_events, gen_synthetic, TimestampedRecord};
use super::report::OpReport;
use super::run::{
    run_dynamic, run_event, run_static, NoObserver, Observer, Verifier, VERIFY_EVERY,
};
use super::{BenchError, BenchMonoid};
use crate::aggregator::{Aggregator, Recalc};
use crate::monoid::CountingMonoid;
use crate::monoids::{Bloom, Concat, GeoMean, MaxCount, Sum};
use crate::{Daba, DabaLite, TwoStacks, TwoStacksLite};

/// Runs one experiment end to end. `events` overrides the synthetic event
/// stream in event mode and is ignored otherwise.
pub fn run_experiment(
    cfg: &ExperimentConfig,
    events: Option<&[TimestampedRecord]>,
) -> Result<OpReport, BenchError> {
    cfg.validate()?;
    match cfg.monoid {
        MonoidKind::Sum => with_monoid(cfg, Sum, events),
        MonoidKind::Geomean => with_monoid(cfg, GeoMean, events),
        MonoidKind::Bloom => with_monoid(cfg, Bloom::default(), events),
        MonoidKind::Maxcount => with_monoid(cfg, MaxCount::<i64>::new(), events),
        MonoidKind::Concat => with_monoid(cfg, Concat, events),
    }
}

fn with_monoid<M: BenchMonoid>(
    cfg: &ExperimentConfig,
    monoid: M,
    events: Option<&[TimestampedRecord]>,
) -> Result<OpReport, BenchError> {
    let counted = CountingMonoid::new(monoid.clone());
    match cfg.algo {
        Algo::TwoStacks => drive(TwoStacks::new(counted), cfg, monoid, events),
        Algo::TwoStacksLite => drive(TwoStacksLite::new(counted), cfg, monoid, events),
        Algo::Daba => drive(Daba::new(counted), cfg, monoid, events),
        Algo::DabaLite => drive(DabaLite::new(counted), cfg, monoid, events),
        Algo::Recalc => drive(Recalc::new(counted), cfg, monoid, events),
    }
}

fn drive<E, M>(
    mut engine: E,
    cfg: &ExperimentConfig,
    monoid: M,
    events: Option<&[TimestampedRecord]>,
) -> Result<OpReport, BenchError>
where
    E: Aggregator<Monoid = CountingMonoid<M>>,
    M: BenchMonoid,
{
    if cfg.verify {
        let mut verifier = Verifier::new(monoid, VERIFY_EVERY);
        by_mode(&mut engine, cfg, events, &mut verifier)
    } else {
        by_mode(&mut engine, cfg, events, &mut NoObserver)
    }
}

fn by_mode<E, M, O>(
    engine: &mut E,
    cfg: &ExperimentConfig,
    events: Option<&[TimestampedRecord]>,
    observer: &mut O,
) -> Result<OpReport, BenchError>
where
    E: Aggregator<Monoid = CountingMonoid<M>>,
    M: BenchMonoid,
    O: Observer<M::Agg>,
{
    match cfg.mode {
        Mode::Static => {
            let values = gen_synthetic(cfg.seed, cfg.window() as u64 + cfg.rounds);
            run_static(engine, cfg, values, observer)
        }
        Mode::Dynamic => run_dynamic(engine, cfg, gen_synthetic(cfg.seed, cfg.rounds), observer),
        Mode::Event => match events {
            Some(records) => run_event(engine, cfg, records, observer),
            None => run_event(engine, cfg, &gen_events(cfg.seed, cfg.rounds), observer),
        },
    }
}
