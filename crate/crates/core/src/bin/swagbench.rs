//! Sliding-window aggregation benchmark.
//!
//! Latency mode writes one sample per round to `--out` and the summary row to
//! stdout; throughput mode writes the summary row to `--out`. Percentiles go
//! to stderr.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser};
use swag::harness::{
    read_events_csv, run_experiment, Algo, BenchError, ExperimentConfig, Measure, Mode, MonoidKind,
    OpReport,
};

const LATENCY_ROUNDS: u64 = 1_000_000;
const THROUGHPUT_ROUNDS: u64 = 10_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "swagbench",
    version,
    about = "Sliding-window aggregation benchmark"
)]
#[command(group(ArgGroup::new("measure").args(["latency", "throughput"])))]
struct Cli {
    #[arg(long, value_enum)]
    algo: Algo,
    #[arg(long, value_enum)]
    monoid: MonoidKind,
    #[arg(long, value_enum, default_value_t = Mode::Static)]
    mode: Mode,
    /// Window size is 2^k (static and dynamic modes).
    #[arg(long, value_name = "K", default_value_t = 10)]
    window_exp: u32,
    /// Event-time horizon in milliseconds (event mode).
    #[arg(long, value_name = "MS")]
    tau_ms: Option<u64>,
    /// Timed rounds; defaults to 10^6 for latency, 10^7 for throughput.
    #[arg(long)]
    rounds: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output CSV; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Spot-check query results against a recalculating oracle.
    #[arg(long)]
    verify: bool,
    /// Keep one latency sample per round (default).
    #[arg(long)]
    latency: bool,
    /// Keep only total elapsed time and combine counts.
    #[arg(long)]
    throughput: bool,
    /// `timestamp_ms,value` CSV for event mode, instead of synthetic events.
    #[arg(long, value_name = "CSV")]
    input: Option<PathBuf>,
    /// The input CSV has no header row.
    #[arg(long, requires = "input")]
    no_header: bool,
    /// Sample latency per operation rather than per round.
    #[arg(long)]
    per_op: bool,
}

impl Cli {
    fn config(&self) -> ExperimentConfig {
        let measure = if self.throughput {
            Measure::Throughput
        } else {
            Measure::Latency
        };
        let default_rounds = match measure {
            Measure::Latency => LATENCY_ROUNDS,
            Measure::Throughput => THROUGHPUT_ROUNDS,
        };
        ExperimentConfig {
            window_exp: self.window_exp,
            tau_ms: self.tau_ms,
            rounds: self.rounds.unwrap_or(default_rounds),
            seed: self.seed,
            measure,
            verify: self.verify,
            per_op: self.per_op,
            ..ExperimentConfig::new(self.algo, self.monoid, self.mode)
        }
    }
}

fn open_out(path: Option<&PathBuf>) -> Result<Box<dyn Write>, BenchError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn report_latency(report: &OpReport) {
    if let Some(s) = report.latency() {
        eprintln!(
            "latency_ns min={} median={} p99={} p99.99={} max={}",
            s.min, s.median, s.p99, s.p9999, s.max
        );
    }
    if report.mode == Mode::Event {
        let b = &report.bulk;
        eprintln!(
            "bulk_rounds={} max_evictions={} max_bulk_ns={} max_other_ns={}",
            b.rounds, b.max_evictions, b.max_bulk_nanos, b.max_other_nanos
        );
    }
}

fn run(cli: &Cli) -> Result<(), BenchError> {
    let cfg = cli.config();
    if cli.input.is_some() && cfg.mode != Mode::Event {
        return Err(BenchError::Usage(
            "--input only applies to event mode".into(),
        ));
    }
    cfg.validate()?;
    let events = match &cli.input {
        Some(path) => Some(read_events_csv(File::open(path)?, !cli.no_header)?),
        None => None,
    };
    let report = run_experiment(&cfg, events.as_deref())?;

    match cfg.measure {
        Measure::Latency => {
            let mut out = open_out(cli.out.as_ref())?;
            report.write_samples(&mut out)?;
            out.flush()?;
            drop(out);
            if cli.out.is_some() {
                report.write_summary(io::stdout().lock(), true)?;
            }
            report_latency(&report);
        }
        Measure::Throughput => {
            let mut out = open_out(cli.out.as_ref())?;
            report.write_summary(&mut out, true)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("swagbench: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
