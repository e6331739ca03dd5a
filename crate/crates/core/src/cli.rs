//! Command-line front end.
//!
//! ```text
//! bbn-sim run            --config c.cfg --out results/ [--seed N] [--trace t.csv] [--force] [--quiet]
//! bbn-sim sweep          --config c.cfg --out results/ [--seed N] [--trace t.csv] [--force] [--quiet]
//! bbn-sim validate-trace --trace t.csv [--clamp-floor -101]
//! bbn-sim synth          --out t.csv [--config c.cfg] [--seed N] [--force]
//! ```
//!
//! Exit codes: 0 success, 1 configuration error, 2 data or I/O error.

use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::channel::{ingest_trace, synthesize_trace, SynthConfig, DEFAULT_CLAMP_FLOOR_DBM};
use crate::config::{join_list, KvConfig};
use crate::error::{Error, Result};
use crate::mac::MacConfig;
use crate::metrics::MetricsReport;
use crate::routing::{InitEtx, RoutingStrategy};
use crate::sim::{self, channel_seed, ExperimentConfig, MacPolicy, TraceSource};

pub const SUMMARY_CSV: &str = "summary.csv";
pub const BACKOFF_CSV: &str = "backoff_hist.csv";
pub const THROUGHPUT_CSV: &str = "throughput_vs_arrival.csv";
pub const OUTAGE_CSV: &str = "outage_vs_gamma.csv";
pub const PDR_CSV: &str = "pdr_vs_sensitivity.csv";
pub const SPEFF_CSV: &str = "speff_vs_sensitivity.csv";
pub const MANIFEST: &str = "manifest.txt";

/// Every file a run or sweep writes.
pub const OUTPUT_FILES: [&str; 7] = [SUMMARY_CSV, BACKOFF_CSV, THROUGHPUT_CSV, OUTAGE_CSV, PDR_CSV, SPEFF_CSV, MANIFEST];

/// Default TDMA setup: four coordinated BANs, everyone else unslotted.
pub const DEFAULT_TDMA_DUTY: f64 = 1.0 / 12.0;
pub const DEFAULT_TDMA_COORDINATED: [usize; 4] = [0, 1, 2, 3];
pub const DEFAULT_STATIC_THRESHOLD_DBM: f64 = -86.0;

#[derive(Debug, Parser)]
#[command(name = "bbn-sim", version, about = "Co-located body-area network simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct RunArgs {
    /// Experiment config (key = value)
    #[arg(long)]
    config: PathBuf,
    /// Output directory, created if absent
    #[arg(long)]
    out: PathBuf,
    /// Master seed, overrides `seed` in the config
    #[arg(long)]
    seed: Option<u64>,
    /// Channel trace CSV, overrides `trace.file`
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Overwrite existing output files
    #[arg(long)]
    force: bool,
    #[arg(long, short)]
    quiet: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate the configured experiment once
    Run(RunArgs),
    /// Simulate the cross product of the `sweep.*` axes
    Sweep(RunArgs),
    /// Check a channel trace and report its shape
    ValidateTrace {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CLAMP_FLOOR_DBM, allow_negative_numbers = true)]
        clamp_floor: f64,
        #[arg(long, short)]
        quiet: bool,
    },
    /// Write a synthetic channel trace
    Synth {
        /// Reads `synth.*` and `seed` when given
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output CSV file
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        force: bool,
        #[arg(long, short)]
        quiet: bool,
    },
}

/// Entry point; returns the process exit code.
pub fn main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("bbn-sim: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_config() {
        1
    } else {
        2
    }
}

fn dispatch(cmd: Command) -> Result<()> {
    match cmd {
        Command::Run(a) => {
            let kv = load_run_config(&a)?;
            let cfg = experiment_from_kv(&kv)?;
            check_outputs(&a.out, a.force)?;
            let report = sim::run(&cfg)?;
            write_outputs(&a.out, &[report], &manifest_text("run", &kv))?;
            if !a.quiet {
                println!("wrote {}", a.out.display());
            }
            Ok(())
        }
        Command::Sweep(a) => {
            let kv = load_run_config(&a)?;
            let configs = sweep_from_kv(&kv)?;
            check_outputs(&a.out, a.force)?;
            let reports = sim::sweep_with_threads(&configs, threads_from_env()?)
                .into_iter()
                .zip(&configs)
                .map(|(r, c)| r.map_err(|e| annotate(e, c)))
                .collect::<Result<Vec<_>>>()?;
            write_outputs(&a.out, &reports, &manifest_text("sweep", &kv))?;
            if !a.quiet {
                println!("wrote {} runs to {}", reports.len(), a.out.display());
            }
            Ok(())
        }
        Command::ValidateTrace {
            trace,
            clamp_floor,
            quiet,
        } => {
            let t = ingest_trace(&trace, clamp_floor)?;
            if !quiet {
                println!(
                    "ok: {} BANs, {} samples every {} ms ({} ms)",
                    t.num_bans(),
                    t.n_samples(),
                    t.sample_period_ms(),
                    t.duration_ms()
                );
            }
            Ok(())
        }
        Command::Synth {
            config,
            out,
            seed,
            force,
            quiet,
        } => {
            let kv = match &config {
                Some(p) => KvConfig::load(p)?,
                None => KvConfig::new(),
            };
            let synth = SynthConfig::from_kv(&kv, "synth.")?;
            let master = match seed {
                Some(s) => s,
                None => kv.get_or("seed", ExperimentConfig::default().seed)?,
            };
            if out.exists() && !force {
                return Err(Error::config(format!("{} exists; pass --force to overwrite", out.display())));
            }
            let trace = synthesize_trace(&synth, channel_seed(master))?;
            let mut buf = Vec::new();
            trace.write_csv(&mut buf).map_err(|e| Error::io(&out, e))?;
            fs::write(&out, buf).map_err(|e| Error::io(&out, e))?;
            if !quiet {
                println!("wrote {}", out.display());
            }
            Ok(())
        }
    }
}

fn annotate(e: Error, cfg: &ExperimentConfig) -> Error {
    match e {
        Error::Config(msg) => Error::Config(format!("{}: {msg}", cfg.label())),
        other => other,
    }
}

fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var("BBN_SIM_THREADS") {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .map(Some)
            .ok_or_else(|| Error::config(format!("BBN_SIM_THREADS must be a positive integer, got `{v}`"))),
        _ => Ok(None),
    }
}

fn load_run_config(a: &RunArgs) -> Result<KvConfig> {
    let mut kv = KvConfig::load(&a.config)?;
    if let Some(s) = a.seed {
        kv.set("seed", s);
    }
    if let Some(t) = &a.trace {
        kv.set("trace.file", t.display());
    }
    // relative trace paths are relative to the config file
    if let Some(file) = kv.raw("trace.file").map(PathBuf::from) {
        if a.trace.is_none() && file.is_relative() {
            let dir = a.config.parent().unwrap_or(Path::new(""));
            let joined = std::path::absolute(dir.join(&file)).map_err(|e| Error::io(&file, e))?;
            kv.set("trace.file", joined.display());
        }
    }
    Ok(kv)
}

/// Refuses to clobber earlier results unless `force` is set.
fn check_outputs(dir: &Path, force: bool) -> Result<()> {
    if force {
        return Ok(());
    }
    for f in OUTPUT_FILES {
        let p = dir.join(f);
        if p.exists() {
            return Err(Error::config(format!("{} exists; pass --force to overwrite", p.display())));
        }
    }
    Ok(())
}

const ALLOWED_KEYS: [&str; 27] = [
    "seed",
    "window_ms",
    "max_hops",
    "trace.file",
    "trace.clamp_floor_dbm",
    "mac.policy",
    "mac.static_threshold_dbm",
    "mac.tdma_duty",
    "mac.tdma_coordinated",
    "mac.rx_sensitivity_dbm",
    "mac.decode_sinr_db",
    "mac.shared_controller",
    "mac.initial_threshold_dbm",
    "mac.p_tx_dbm",
    "mac.noise_dbm",
    "mac.packet_bits",
    "mac.bandwidth_hz",
    "routing.strategy",
    "routing.init_etx_max",
    "traffic.arrival_rate",
    "traffic.destinations",
    "sweep.gamma_db",
    "sweep.sensitivity_dbm",
    "sweep.arrival_rates",
    "sweep.policies",
    "sweep.routings",
    "backoff.bin_edges_ms",
];

/// Parses a policy name: `adaptive`, `static[:dBm]` or `tdma[:duty]`.
/// Missing parameters come from `base`.
pub fn parse_policy(s: &str, base_static: f64, base_duty: f64, coordinated: &[usize]) -> Result<MacPolicy> {
    let (name, arg) = match s.split_once(':') {
        Some((n, a)) => (n.trim(), Some(a.trim())),
        None => (s.trim(), None),
    };
    let num = |a: Option<&str>, default: f64| -> Result<f64> {
        match a {
            None => Ok(default),
            Some(v) => v
                .parse::<f64>()
                .map_err(|e| Error::config(format!("bad policy parameter in `{s}`: {e}"))),
        }
    };
    match name {
        "adaptive" if arg.is_none() => Ok(MacPolicy::AdaptiveCsma),
        "static" => Ok(MacPolicy::StaticCsma {
            threshold_dbm: num(arg, base_static)?,
        }),
        "tdma" => Ok(MacPolicy::Tdma {
            duty_cycle: num(arg, base_duty)?,
            coordinated: coordinated.to_vec(),
        }),
        _ => Err(Error::config(format!(
            "unknown MAC policy `{s}` (expected adaptive, static[:dBm] or tdma[:duty])"
        ))),
    }
}

/// Builds the base experiment from a config; `sweep.arrival_rates`,
/// `sweep.policies` and `sweep.routings` are ignored here.
pub fn experiment_from_kv(kv: &KvConfig) -> Result<ExperimentConfig> {
    kv.check_known(&ALLOWED_KEYS, &["synth."])?;
    let d = ExperimentConfig::default();
    let dm = MacConfig::default();

    let clamp_floor_dbm = kv.get_or("trace.clamp_floor_dbm", d.clamp_floor_dbm)?;
    let trace = match kv.raw("trace.file") {
        Some(f) => {
            if kv.keys().any(|k| k.starts_with("synth.")) {
                return Err(Error::config("set either trace.file or synth.*, not both"));
            }
            TraceSource::File(PathBuf::from(f))
        }
        None => TraceSource::Synth(SynthConfig::from_kv(kv, "synth.")?),
    };

    let static_th = kv.get_or("mac.static_threshold_dbm", DEFAULT_STATIC_THRESHOLD_DBM)?;
    let duty = kv.get_or("mac.tdma_duty", DEFAULT_TDMA_DUTY)?;
    let coordinated = kv
        .get_list::<usize>("mac.tdma_coordinated")?
        .unwrap_or_else(|| DEFAULT_TDMA_COORDINATED.to_vec());
    let policy = parse_policy(kv.raw("mac.policy").unwrap_or("adaptive"), static_th, duty, &coordinated)?;
    let routing = match kv.raw("routing.strategy") {
        None => d.routing,
        Some(s) => s.parse::<RoutingStrategy>().map_err(Error::Config)?,
    };

    let mac = MacConfig {
        rx_sensitivity_dbm: kv.get_or("mac.rx_sensitivity_dbm", dm.rx_sensitivity_dbm)?,
        decode_sinr_db: kv.get_or("mac.decode_sinr_db", dm.decode_sinr_db)?,
        p_tx_dbm: kv.get_or("mac.p_tx_dbm", dm.p_tx_dbm)?,
        noise_dbm: kv.get_or("mac.noise_dbm", dm.noise_dbm)?,
        packet_bits: kv.get_or("mac.packet_bits", dm.packet_bits)?,
        bandwidth_hz: kv.get_or("mac.bandwidth_hz", dm.bandwidth_hz)?,
        ..dm
    };

    let cfg = ExperimentConfig {
        trace,
        clamp_floor_dbm,
        policy,
        routing,
        arrival_rate: kv.get_or("traffic.arrival_rate", d.arrival_rate)?,
        mac,
        gamma_sweep_db: kv.get_list("sweep.gamma_db")?.unwrap_or(d.gamma_sweep_db),
        sensitivity_sweep_dbm: kv.get_list("sweep.sensitivity_dbm")?.unwrap_or(d.sensitivity_sweep_dbm),
        seed: kv.get_or("seed", d.seed)?,
        window_ms: kv.get_or("window_ms", d.window_ms)?,
        initial_threshold_dbm: kv.get_or("mac.initial_threshold_dbm", d.initial_threshold_dbm)?,
        shared_controller: kv.get_bool_or("mac.shared_controller", d.shared_controller)?,
        init_etx: InitEtx {
            max: kv.get_or("routing.init_etx_max", d.init_etx.max)?,
            ..d.init_etx
        },
        destinations: kv.get_list("traffic.destinations")?,
        backoff_bin_edges_ms: kv.get_list("backoff.bin_edges_ms")?.unwrap_or(d.backoff_bin_edges_ms),
        max_hops: kv.get_or("max_hops", d.max_hops)?,
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Expands `sweep.policies x sweep.routings x sweep.arrival_rates` (in that
/// nesting order) around the base experiment. Missing axes hold the base value.
pub fn sweep_from_kv(kv: &KvConfig) -> Result<Vec<ExperimentConfig>> {
    let base = experiment_from_kv(kv)?;
    let static_th = kv.get_or("mac.static_threshold_dbm", DEFAULT_STATIC_THRESHOLD_DBM)?;
    let duty = kv.get_or("mac.tdma_duty", DEFAULT_TDMA_DUTY)?;
    let coordinated = kv
        .get_list::<usize>("mac.tdma_coordinated")?
        .unwrap_or_else(|| DEFAULT_TDMA_COORDINATED.to_vec());
    let policies = match kv.get_list::<String>("sweep.policies")? {
        Some(list) => list
            .iter()
            .map(|p| parse_policy(p, static_th, duty, &coordinated))
            .collect::<Result<Vec<_>>>()?,
        None => vec![base.policy.clone()],
    };
    let routings = match kv.get_list::<String>("sweep.routings")? {
        Some(list) => list
            .iter()
            .map(|r| r.parse::<RoutingStrategy>().map_err(Error::Config))
            .collect::<Result<Vec<_>>>()?,
        None => vec![base.routing],
    };
    let rates = kv.get_list::<f64>("sweep.arrival_rates")?.unwrap_or(vec![base.arrival_rate]);
    if policies.is_empty() || routings.is_empty() || rates.is_empty() {
        return Err(Error::config("sweep axes must not be empty"));
    }
    let mut out = Vec::with_capacity(policies.len() * routings.len() * rates.len());
    for p in &policies {
        for &r in &routings {
            for &rate in &rates {
                let cfg = ExperimentConfig {
                    policy: p.clone(),
                    routing: r,
                    arrival_rate: rate,
                    ..base.clone()
                };
                cfg.validate()?;
                out.push(cfg);
            }
        }
    }
    Ok(out)
}

/// Resolved configuration as config text; loading it back yields the same
/// experiment.
pub fn experiment_to_kv(cfg: &ExperimentConfig) -> KvConfig {
    let mut kv = KvConfig::new();
    kv.set("seed", cfg.seed);
    kv.set("window_ms", cfg.window_ms);
    kv.set("max_hops", cfg.max_hops);
    kv.set("trace.clamp_floor_dbm", cfg.clamp_floor_dbm);
    match &cfg.trace {
        TraceSource::File(p) => kv.set("trace.file", p.display()),
        TraceSource::Synth(s) => s.write_kv(&mut kv, "synth."),
    }
    match &cfg.policy {
        MacPolicy::AdaptiveCsma => kv.set("mac.policy", "adaptive"),
        MacPolicy::StaticCsma { threshold_dbm } => {
            kv.set("mac.policy", "static");
            kv.set("mac.static_threshold_dbm", threshold_dbm);
        }
        MacPolicy::Tdma { duty_cycle, coordinated } => {
            kv.set("mac.policy", "tdma");
            kv.set("mac.tdma_duty", duty_cycle);
            kv.set("mac.tdma_coordinated", join_list(coordinated));
        }
    }
    kv.set("mac.rx_sensitivity_dbm", cfg.mac.rx_sensitivity_dbm);
    kv.set("mac.decode_sinr_db", cfg.mac.decode_sinr_db);
    kv.set("mac.p_tx_dbm", cfg.mac.p_tx_dbm);
    kv.set("mac.noise_dbm", cfg.mac.noise_dbm);
    kv.set("mac.packet_bits", cfg.mac.packet_bits);
    kv.set("mac.bandwidth_hz", cfg.mac.bandwidth_hz);
    kv.set("mac.initial_threshold_dbm", cfg.initial_threshold_dbm);
    kv.set("mac.shared_controller", cfg.shared_controller);
    kv.set("routing.strategy", cfg.routing);
    kv.set("routing.init_etx_max", cfg.init_etx.max);
    kv.set("traffic.arrival_rate", cfg.arrival_rate);
    if let Some(d) = &cfg.destinations {
        kv.set("traffic.destinations", join_list(d));
    }
    kv.set("sweep.gamma_db", join_list(&cfg.gamma_sweep_db));
    kv.set("sweep.sensitivity_dbm", join_list(&cfg.sensitivity_sweep_dbm));
    kv.set("backoff.bin_edges_ms", join_list(&cfg.backoff_bin_edges_ms));
    kv
}

/// Manifest for the invocation: the resolved base experiment plus any sweep
/// axes, sorted by key.
fn manifest_text(subcommand: &str, kv: &KvConfig) -> String {
    // experiment_from_kv succeeded before this is called
    let mut out = experiment_from_kv(kv).map(|c| experiment_to_kv(&c)).unwrap_or_default();
    for key in ["sweep.arrival_rates", "sweep.policies", "sweep.routings"] {
        if let Some(v) = kv.raw(key) {
            out.set(key, v);
        }
    }
    format!("# bbn-sim {subcommand} --config {MANIFEST}\n{}", out.to_text())
}

/// `%g`-style formatting with 6 significant digits.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "NA".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent in {:e} output");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "NA".into(), fmt_num)
}

fn csv_bytes(header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let to_err = |e: csv::Error| Error::Data(format!("csv encoding: {e}"));
    w.write_record(header).map_err(to_err)?;
    for r in rows {
        w.write_record(r).map_err(to_err)?;
    }
    w.into_inner().map_err(|e| Error::Data(format!("csv encoding: {e}")))
}

fn run_key(r: &MetricsReport) -> [String; 3] {
    [r.policy.clone(), r.routing.clone(), fmt_num(r.arrival_rate_cfg)]
}

/// Renders every CSV table for a set of reports, keyed by file name.
pub fn render_tables(reports: &[MetricsReport]) -> Result<Vec<(&'static str, Vec<u8>)>> {
    let key_cols = ["policy", "routing", "arrival_rate"];
    let with_key = |extra: &[&'static str]| -> Vec<&'static str> { key_cols.iter().chain(extra).copied().collect() };

    let summary: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            let mut row = run_key(r).to_vec();
            row.extend([
                fmt_num(r.throughput_pkts_per_s),
                fmt_num(r.pdr),
                fmt_opt(r.backoff.mean_ms),
                fmt_num(r.spectral_efficiency_bps_per_hz),
                fmt_num(r.spectral_efficiency_sum_bps_per_hz),
                fmt_num(r.throughput_bps),
                fmt_num(r.packet_arrival_rate_pkts_per_s),
                r.generated.to_string(),
                r.delivered.to_string(),
                r.dropped.to_string(),
                r.transmissions.to_string(),
                r.successful_transmissions.to_string(),
                fmt_num(r.backoff_fraction_over_3s),
                r.n_active_channels.to_string(),
                r.measured_sources.to_string(),
                fmt_num(r.total_time_s),
            ]);
            row
        })
        .collect();

    let mut hist = Vec::new();
    for r in reports.iter().filter(|r| !r.backoff.is_empty()) {
        let h = &r.backoff;
        for i in 0..h.counts.len() {
            let (lo, hi) = h.bin_bounds(i);
            let mut row = run_key(r).to_vec();
            row.extend([
                fmt_num(lo),
                fmt_num(hi),
                h.counts[i].to_string(),
                fmt_num(h.pct_runs[i]),
                fmt_num(h.time_ms[i]),
                fmt_num(h.pct_time[i]),
            ]);
            hist.push(row);
        }
    }

    let throughput: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            let mut row = run_key(r).to_vec();
            row.extend([
                fmt_num(r.packet_arrival_rate_pkts_per_s),
                fmt_num(r.throughput_pkts_per_s),
                fmt_num(r.throughput_bps),
            ]);
            row
        })
        .collect();

    let mut outage = Vec::new();
    let mut pdr = Vec::new();
    let mut speff = Vec::new();
    for r in reports {
        for o in &r.outage {
            let mut row = run_key(r).to_vec();
            row.extend([fmt_num(o.gamma_th_db), fmt_opt(o.probability)]);
            outage.push(row);
        }
        for s in &r.sensitivity {
            let mut row = run_key(r).to_vec();
            row.extend([fmt_num(s.rx_sensitivity_dbm), fmt_num(s.pdr)]);
            pdr.push(row);
            let mut row = run_key(r).to_vec();
            row.extend([
                fmt_num(s.rx_sensitivity_dbm),
                fmt_num(s.throughput_pkts_per_s),
                fmt_num(s.spectral_efficiency),
                fmt_num(s.spectral_efficiency_sum),
            ]);
            speff.push(row);
        }
    }

    Ok(vec![
        (
            SUMMARY_CSV,
            csv_bytes(
                &with_key(&[
                    "throughput_pkts_per_s",
                    "pdr",
                    "mean_backoff_ms",
                    "spectral_efficiency_bps_per_hz",
                    "spectral_efficiency_sum_bps_per_hz",
                    "throughput_bps",
                    "measured_arrival_rate",
                    "generated",
                    "delivered",
                    "dropped",
                    "transmissions",
                    "successful_transmissions",
                    "backoff_fraction_over_3s",
                    "active_channels",
                    "measured_sources",
                    "total_time_s",
                ]),
                &summary,
            )?,
        ),
        (
            BACKOFF_CSV,
            csv_bytes(&with_key(&["bin_lo_ms", "bin_hi_ms", "count", "pct_runs", "time_ms", "pct_time"]), &hist)?,
        ),
        (
            THROUGHPUT_CSV,
            csv_bytes(
                &with_key(&["measured_arrival_rate", "throughput_pkts_per_s", "throughput_bps"]),
                &throughput,
            )?,
        ),
        (OUTAGE_CSV, csv_bytes(&with_key(&["gamma_th_db", "outage_probability"]), &outage)?),
        (PDR_CSV, csv_bytes(&with_key(&["rx_sensitivity_dbm", "pdr"]), &pdr)?),
        (
            SPEFF_CSV,
            csv_bytes(
                &with_key(&[
                    "rx_sensitivity_dbm",
                    "throughput_pkts_per_s",
                    "spectral_efficiency_bps_per_hz",
                    "spectral_efficiency_sum_bps_per_hz",
                ]),
                &speff,
            )?,
        ),
    ])
}

/// Writes the six CSV tables into `dir`, creating it if needed.
pub fn emit_report(reports: &[MetricsReport], dir: &Path) -> Result<()> {
    let tables = render_tables(reports)?;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    for (name, bytes) in tables {
        let path = dir.join(name);
        let mut f = fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
        f.write_all(&bytes).map_err(|e| Error::io(&path, e))?;
    }
    Ok(())
}

fn write_outputs(dir: &Path, reports: &[MetricsReport], manifest: &str) -> Result<()> {
    emit_report(reports, dir)?;
    let path = dir.join(MANIFEST);
    fs::write(&path, manifest).map_err(|e| Error::io(&path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(1.0), "1");
        assert_eq!(fmt_num(-86.0), "-86");
        assert_eq!(fmt_num(0.1), "0.1");
        assert_eq!(fmt_num(1.0 / 3.0), "0.333333");
        assert_eq!(fmt_num(123456.0), "123456");
        assert_eq!(fmt_num(1234567.0), "1.23457e+06");
        assert_eq!(fmt_num(999999.5), "1e+06");
        assert_eq!(fmt_num(0.0001), "0.0001");
        assert_eq!(fmt_num(0.00001234), "1.234e-05");
        assert_eq!(fmt_num(f64::INFINITY), "inf");
        assert_eq!(fmt_num(f64::NAN), "NA");
    }

    #[test]
    fn policy_names() {
        assert_eq!(parse_policy("adaptive", -86.0, 0.1, &[]).unwrap(), MacPolicy::AdaptiveCsma);
        assert_eq!(
            parse_policy("static:-95", -86.0, 0.1, &[]).unwrap(),
            MacPolicy::StaticCsma { threshold_dbm: -95.0 }
        );
        assert_eq!(
            parse_policy("static", -86.0, 0.1, &[]).unwrap(),
            MacPolicy::StaticCsma { threshold_dbm: -86.0 }
        );
        assert_eq!(
            parse_policy("tdma", -86.0, 0.25, &[0, 1]).unwrap(),
            MacPolicy::Tdma {
                duty_cycle: 0.25,
                coordinated: vec![0, 1]
            }
        );
        assert!(parse_policy("aloha", -86.0, 0.1, &[]).unwrap_err().is_config());
    }

    #[test]
    fn experiment_roundtrips_through_kv() {
        let kv = KvConfig::parse(
            "mac.policy = tdma\nmac.tdma_duty = 0.25\nmac.tdma_coordinated = 0,1\nsynth.num_bans = 4\nseed = 9\nsweep.gamma_db = 1,2\n",
        )
        .unwrap();
        let cfg = experiment_from_kv(&kv).unwrap();
        let back = experiment_from_kv(&KvConfig::parse(&experiment_to_kv(&cfg).to_text()).unwrap()).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn unknown_key_is_config_error() {
        let kv = KvConfig::parse("mac.polcy = adaptive\n").unwrap();
        assert!(experiment_from_kv(&kv).unwrap_err().is_config());
    }

    #[test]
    fn sweep_expansion_order() {
        let kv = KvConfig::parse(
            "synth.num_bans = 4\nsweep.policies = adaptive,static:-86\nsweep.routings = spr_etx,cmr\nsweep.arrival_rates = 1,2,4\n",
        )
        .unwrap();
        let cfgs = sweep_from_kv(&kv).unwrap();
        assert_eq!(cfgs.len(), 12);
        assert_eq!(cfgs[0].policy, MacPolicy::AdaptiveCsma);
        assert_eq!(cfgs[0].routing, RoutingStrategy::SprEtx);
        assert_eq!(cfgs[1].arrival_rate, 2.0);
        assert_eq!(cfgs[3].routing, RoutingStrategy::Cmr);
        assert_eq!(cfgs[6].policy, MacPolicy::StaticCsma { threshold_dbm: -86.0 });
    }
}
