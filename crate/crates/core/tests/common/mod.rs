#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swag::monoids::{Bloom, BloomAgg, Concat, GeoMean, GeoMeanAgg, MaxCount, MaxCountAgg, Sum};
use swag::{Aggregator, CountingMonoid, Daba, DabaLite, Monoid, Recalc, TwoStacks, TwoStacksLite};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Builds each engine over the same monoid.
pub fn engines<M: Monoid + Clone + 'static>(m: &M) -> Vec<Box<dyn Aggregator<Monoid = M>>> {
    vec![
        Box::new(TwoStacks::new(m.clone())),
        Box::new(TwoStacksLite::new(m.clone())),
        Box::new(Daba::new(m.clone())),
        Box::new(DabaLite::new(m.clone())),
    ]
}

pub fn counted_engines<M: Monoid + Clone + 'static>(
    m: &M,
) -> Vec<Box<dyn Aggregator<Monoid = CountingMonoid<M>>>> {
    engines(&CountingMonoid::new(m.clone()))
}

/// Random aggregate generators, one per monoid.
pub trait Sample: Monoid {
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Agg;
}

impl Sample for Sum {
    fn sample(&self, rng: &mut ChaCha8Rng) -> i64 {
        self.lift(rng.gen_range(-1_000_000..=1_000_000))
    }
}

impl Sample for MaxCount<i64> {
    fn sample(&self, rng: &mut ChaCha8Rng) -> MaxCountAgg<i64> {
        // small range so ties, and hence counts above one, are common
        self.lift(rng.gen_range(0..20))
    }
}

impl Sample for Concat {
    fn sample(&self, rng: &mut ChaCha8Rng) -> String {
        self.lift(char::from(rng.gen_range(b'a'..=b'z')))
    }
}

impl Sample for GeoMean {
    fn sample(&self, rng: &mut ChaCha8Rng) -> GeoMeanAgg {
        self.lift(rng.gen_range(0.001..1000.0))
    }
}

impl Sample for Bloom {
    fn sample(&self, rng: &mut ChaCha8Rng) -> BloomAgg {
        self.lift(rng.gen())
    }
}

pub fn geomean_close(a: &GeoMeanAgg, b: &GeoMeanAgg, rtol: f64) -> bool {
    let (x, y) = (GeoMean.lower(a), GeoMean.lower(b));
    a.count == b.count && (x - y).abs() <= rtol * x.abs().max(y.abs())
}

/// Result of driving an engine and the oracle with the same random ops.
pub struct Divergence {
    pub step: usize,
    pub engine: String,
    pub got: String,
    pub want: String,
}

/// Drives every engine alongside a [`Recalc`] through `ops` random
/// insert/evict/query operations, keeping the window at most `max_len`.
/// Returns the first disagreement.
pub fn oracle_run<M>(
    m: &M,
    seed: u64,
    ops: usize,
    max_len: usize,
    agree: impl Fn(&M::Agg, &M::Agg) -> bool,
) -> Result<usize, Divergence>
where
    M: Sample + Clone + 'static,
    M::Agg: std::fmt::Debug,
{
    let mut r = rng(seed);
    let mut oracle = Recalc::new(m.clone());
    let mut subjects = engines(m);
    let mut queries = 0;
    for step in 0..ops {
        let roll = r.gen_range(0..10);
        if roll < 4 && oracle.len() < max_len {
            let v = m.sample(&mut r);
            for e in subjects.iter_mut() {
                e.insert(v.clone());
            }
            oracle.insert(v);
        } else if roll < 7 {
            let want = oracle.evict();
            for e in subjects.iter_mut() {
                assert_eq!(e.evict(), want, "{} evict at step {step}", e.name());
            }
        } else {
            let want = oracle.query();
            queries += 1;
            for e in subjects.iter() {
                let got = e.query();
                if !agree(&got, &want) || e.len() != oracle.len() {
                    return Err(Divergence {
                        step,
                        engine: e.name().to_string(),
                        got: format!("{got:?}"),
                        want: format!("{want:?}"),
                    });
                }
            }
        }
    }
    Ok(queries)
}
