use clap::ValueEnum;

use super::BenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Algo {
    TwoStacks,
    TwoStacksLite,
    Daba,
    DabaLite,
    Recalc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum MonoidKind {
    Sum,
    Geomean,
    Bloom,
    Maxcount,
    Concat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Mode {
    /// Fixed-size count-based window: rounds of evict, insert, query.
    Static,
    /// Fill to n with insert+query, drain to 0 with evict, repeat.
    Dynamic,
    /// Event-time window of `tau` milliseconds over timestamped records.
    Event,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum, Default)]
pub enum Measure {
    /// Keep one latency sample per round.
    #[default]
    Latency,
    /// Keep only the total elapsed time.
    Throughput,
}

macro_rules! display_via_value_enum {
    ($($t:ty),*) => {$(
        impl std::fmt::Display for $t {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                let value = self.to_possible_value().expect("no skipped variants");
                f.write_str(value.get_name())
            }
        }
    )*};
}

display_via_value_enum!(Algo, MonoidKind, Mode, Measure);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub algo: Algo,
    pub monoid: MonoidKind,
    pub mode: Mode,
    /// Window size is `2^window_exp` for static and dynamic modes.
    pub window_exp: u32,
    /// Event-time horizon, required in event mode.
    pub tau_ms: Option<u64>,
    /// Timed rounds (static), total inserted items (dynamic), or generated
    /// records (event mode without an input file).
    pub rounds: u64,
    pub seed: u64,
    pub measure: Measure,
    /// Spot-check query results against the recalc oracle.
    pub verify: bool,
    /// One latency sample per operation instead of per round.
    pub per_op: bool,
}

impl ExperimentConfig {
    pub const MAX_WINDOW_EXP: u32 = 30;

    pub fn new(algo: Algo, monoid: MonoidKind, mode: Mode) -> Self {
        Self {
            algo,
            monoid,
            mode,
            window_exp: 10,
            tau_ms: None,
            rounds: 1_000_000,
            seed: 0,
            measure: Measure::Latency,
            verify: false,
            per_op: false,
        }
    }

    pub fn window(&self) -> usize {
        1usize << self.window_exp
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if self.rounds < 1 {
            return Err(BenchError::Usage("--rounds must be at least 1".into()));
        }
        if self.window_exp > Self::MAX_WINDOW_EXP {
            return Err(BenchError::Usage(format!(
                "--window-exp must be in 0..={}",
                Self::MAX_WINDOW_EXP
            )));
        }
        if self.mode == Mode::Event && self.tau_ms.is_none() {
            return Err(BenchError::Usage("event mode requires --tau-ms".into()));
        }
        Ok(())
    }
}
