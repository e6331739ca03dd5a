//! Window loop.
//!
//! Each window runs the MAC over the routes and thresholds decided at the end
//! of the previous window, then measures what happened to decide the next
//! window. Window 0 starts from the initial threshold and a random-ETX graph.
//! Nothing measured inside a window influences that same window.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;

use crate::channel::{
    ingest_trace, synthesize_trace, windows, ChannelTrace, Device, RadioId, SynthConfig, TimestampWindow,
    DEFAULT_CLAMP_FLOOR_DBM, DEFAULT_WINDOW_MS,
};
use crate::error::{Error, Result};
use crate::mac::{
    backoff_runs, run_csma_window, run_tdma_window, ForwardingTable, Hop, MacConfig, MacWindowStats, Packet,
    SlotKind, TdmaSchedule, ThresholdController, TrafficQueues, WindowContext, WindowResult,
    INITIAL_THRESHOLD_DBM, TDMA_SUPERFRAME_SLOTS,
};
use crate::metrics::{self, backoff_histogram, DbmPower, MetricsReport, OutagePoint, SensitivityPoint};
use crate::routing::{build_graph, init_graph, plan_route, BranchSinr, InitEtx, NetworkGraph, RoutePlan, RoutingStrategy};

// Independent random streams derived from the master seed.
const STREAM_ARRIVALS: u64 = 1;
const STREAM_INIT_GRAPH: u64 = 2;
const STREAM_CHANNEL: u64 = 3;

/// Seed for a named sub-process, independent of the other streams.
pub fn stream_seed(master: u64, stream: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(stream);
    rng.random()
}

#[derive(Debug, Clone, PartialEq)]
pub enum TraceSource {
    File(PathBuf),
    /// Synthetic trace seeded from the channel stream of the master seed.
    Synth(SynthConfig),
}

#[derive(Debug, Clone, PartialEq)]
pub enum MacPolicy {
    AdaptiveCsma,
    StaticCsma { threshold_dbm: f64 },
    Tdma { duty_cycle: f64, coordinated: Vec<usize> },
}

impl MacPolicy {
    /// Short label used in output tables, also accepted by `FromStr`.
    pub fn label(&self) -> String {
        match self {
            MacPolicy::AdaptiveCsma => "adaptive".into(),
            MacPolicy::StaticCsma { threshold_dbm } => format!("static:{threshold_dbm}"),
            MacPolicy::Tdma { duty_cycle, .. } => format!("tdma:{duty_cycle}"),
        }
    }
}

impl fmt::Display for MacPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Full description of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub trace: TraceSource,
    pub clamp_floor_dbm: f64,
    pub policy: MacPolicy,
    pub routing: RoutingStrategy,
    /// Mean Poisson packet arrivals per second at each source hub.
    pub arrival_rate: f64,
    pub mac: MacConfig,
    pub gamma_sweep_db: Vec<f64>,
    pub sensitivity_sweep_dbm: Vec<f64>,
    pub seed: u64,
    pub window_ms: u64,
    pub initial_threshold_dbm: f64,
    /// One controller for the whole network instead of one per BAN.
    pub shared_controller: bool,
    pub init_etx: InitEtx,
    /// Destination BAN per source BAN; `None` means the ring `i -> i+1`
    /// (within the coordinated and the non-coordinated groups for TDMA).
    pub destinations: Option<Vec<usize>>,
    pub backoff_bin_edges_ms: Vec<f64>,
    pub max_hops: u32,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            trace: TraceSource::Synth(SynthConfig::default()),
            clamp_floor_dbm: DEFAULT_CLAMP_FLOOR_DBM,
            policy: MacPolicy::AdaptiveCsma,
            routing: RoutingStrategy::SprEtx2Hop,
            arrival_rate: 1.0,
            mac: MacConfig::default(),
            gamma_sweep_db: vec![0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0],
            sensitivity_sweep_dbm: vec![-100.0, -98.0, -96.0, -94.0, -92.0, -90.0, -88.0],
            seed: 1,
            window_ms: DEFAULT_WINDOW_MS,
            initial_threshold_dbm: INITIAL_THRESHOLD_DBM,
            shared_controller: false,
            init_etx: InitEtx::default(),
            destinations: None,
            backoff_bin_edges_ms: vec![0.0, 100.0, 200.0, 500.0, 1000.0, 3000.0, 10000.0, 100000.0, 1000000.0],
            max_hops: 8,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.arrival_rate >= 0.0 && self.arrival_rate.is_finite()) {
            return Err(Error::config(format!("arrival rate {} must be >= 0", self.arrival_rate)));
        }
        if self.gamma_sweep_db.is_empty() || self.sensitivity_sweep_dbm.is_empty() {
            return Err(Error::config("gamma and sensitivity sweep lists must be non-empty"));
        }
        if self.window_ms == 0 || !self.window_ms.is_multiple_of(self.mac.slot_ms) {
            return Err(Error::config(format!(
                "window of {} ms must be a positive multiple of the {} ms slot",
                self.window_ms, self.mac.slot_ms
            )));
        }
        if self.max_hops == 0 {
            return Err(Error::config("max_hops must be positive"));
        }
        self.mac.validate()?;
        if let MacPolicy::Tdma { duty_cycle, coordinated } = &self.policy {
            TdmaSchedule::new(*duty_cycle, coordinated, TDMA_SUPERFRAME_SLOTS)?;
        }
        if let TraceSource::Synth(s) = &self.trace {
            s.validate()?;
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        format!("{}/{}@{}", self.policy, self.routing, self.arrival_rate)
    }
}

/// Seed of the synthetic channel for a master seed.
pub fn channel_seed(master: u64) -> u64 {
    stream_seed(master, STREAM_CHANNEL)
}

/// Loads or synthesizes the trace a config refers to.
pub fn resolve_trace(cfg: &ExperimentConfig) -> Result<ChannelTrace> {
    match &cfg.trace {
        TraceSource::File(path) => ingest_trace(path, cfg.clamp_floor_dbm),
        TraceSource::Synth(s) => synthesize_trace(s, channel_seed(cfg.seed)),
    }
}

fn ring(group: &[usize], dest: &mut [usize]) {
    for (i, &b) in group.iter().enumerate() {
        dest[b] = group[(i + 1) % group.len()];
    }
}

/// Counters accumulated over a whole run.
#[derive(Debug, Clone, Default)]
struct Tally {
    kinds: Vec<Vec<SlotKind>>,
    sinr_samples: Vec<f64>,
    transmissions: u64,
    successes: u64,
    generated: u64,
    delivered_by_origin: Vec<u64>,
    dropped: u64,
    threshold_history: Vec<Vec<f64>>,
}

/// Step-by-step run over one trace.
pub struct Simulation<'t> {
    cfg: ExperimentConfig,
    trace: &'t ChannelTrace,
    windows: Vec<TimestampWindow>,
    next_window: usize,
    n: usize,
    measured: Vec<bool>,
    destinations: Vec<usize>,
    schedule: Option<TdmaSchedule>,
    controllers: Vec<ThresholdController>,
    thresholds: Vec<f64>,
    plans: BTreeMap<(usize, usize), RoutePlan>,
    forwarding: ForwardingTable,
    queues: TrafficQueues,
    arrivals_rng: ChaCha8Rng,
    arrivals: Option<Poisson<f64>>,
    next_packet_id: u64,
    tally: Tally,
}

impl<'t> Simulation<'t> {
    pub fn new(cfg: &ExperimentConfig, trace: &'t ChannelTrace) -> Result<Self> {
        cfg.validate()?;
        let n = trace.num_bans();
        if n < 2 {
            return Err(Error::config("need at least two BANs"));
        }
        if trace.sample_period_ms() != cfg.mac.slot_ms {
            return Err(Error::config(format!(
                "trace grid of {} ms does not match the {} ms slot",
                trace.sample_period_ms(),
                cfg.mac.slot_ms
            )));
        }
        let windows = windows(trace, cfg.window_ms)?;
        if windows.is_empty() {
            return Err(Error::config(format!(
                "trace of {} ms is shorter than one {} ms window",
                trace.duration_ms(),
                cfg.window_ms
            )));
        }

        let schedule = match &cfg.policy {
            MacPolicy::Tdma { duty_cycle, coordinated } => {
                if let Some(&b) = coordinated.iter().find(|&&b| b >= n) {
                    return Err(Error::config(format!("coordinated BAN {b} not in a {n}-BAN trace")));
                }
                Some(TdmaSchedule::new(*duty_cycle, coordinated, TDMA_SUPERFRAME_SLOTS)?)
            }
            _ => None,
        };
        let measured: Vec<bool> = match &schedule {
            Some(s) => (0..n).map(|b| s.is_coordinated(b)).collect(),
            None => vec![true; n],
        };

        let destinations = match &cfg.destinations {
            Some(d) => {
                if d.len() != n || d.iter().enumerate().any(|(i, &x)| x >= n || x == i) {
                    return Err(Error::config(format!(
                        "destinations must name a different BAN for each of the {n} BANs"
                    )));
                }
                if let Some(s) = &schedule {
                    if (0..n).any(|b| s.is_coordinated(b) != s.is_coordinated(d[b])) {
                        return Err(Error::config(
                            "under TDMA, coordinated and non-coordinated BANs must send within their own group",
                        ));
                    }
                }
                d.clone()
            }
            None => {
                let mut d = vec![0; n];
                match &schedule {
                    Some(_) => {
                        let coord: Vec<usize> = (0..n).filter(|&b| measured[b]).collect();
                        let other: Vec<usize> = (0..n).filter(|&b| !measured[b]).collect();
                        for group in [&coord, &other] {
                            if group.len() == 1 {
                                return Err(Error::config(
                                    "ring traffic needs at least two BANs in each TDMA group",
                                ));
                            }
                            ring(group, &mut d);
                        }
                    }
                    None => ring(&(0..n).collect::<Vec<_>>(), &mut d),
                }
                d
            }
        };

        let controllers = vec![ThresholdController::new(cfg.initial_threshold_dbm); n];
        let thresholds = match cfg.policy {
            MacPolicy::StaticCsma { threshold_dbm } => vec![threshold_dbm; n],
            _ => vec![cfg.initial_threshold_dbm; n],
        };
        let arrivals = if cfg.arrival_rate > 0.0 {
            let lambda = cfg.arrival_rate * cfg.mac.slot_ms as f64 / 1000.0;
            Some(Poisson::new(lambda).map_err(|e| Error::config(format!("arrival rate: {e}")))?)
        } else {
            None
        };
        let mut arrivals_rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        arrivals_rng.set_stream(STREAM_ARRIVALS);

        let mut sim = Self {
            cfg: cfg.clone(),
            trace,
            windows,
            next_window: 0,
            n,
            measured,
            destinations,
            schedule,
            controllers,
            thresholds,
            plans: BTreeMap::new(),
            forwarding: ForwardingTable::new(n, cfg.max_hops),
            queues: vec![VecDeque::new(); n],
            arrivals_rng,
            arrivals,
            next_packet_id: 0,
            tally: Tally {
                kinds: vec![Vec::new(); n],
                delivered_by_origin: vec![0; n],
                ..Tally::default()
            },
        };
        let graph = init_graph(n, stream_seed(cfg.seed, STREAM_INIT_GRAPH), cfg.init_etx)?;
        // No measurements yet: every branch looks the same, so CMR keeps its primary path.
        let sinr = BranchSinr::filled(n, 0.0);
        sim.replan(graph, &sinr)?;
        Ok(sim)
    }

    pub fn num_windows(&self) -> usize {
        self.windows.len()
    }

    /// Index of the window the current decisions apply to.
    pub fn next_window(&self) -> usize {
        self.next_window
    }

    pub fn is_done(&self) -> bool {
        self.next_window >= self.windows.len()
    }

    /// Carrier-sense thresholds for the upcoming window, per BAN.
    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    /// Route plans for the upcoming window, keyed by (current hub, destination).
    pub fn plans(&self) -> &BTreeMap<(usize, usize), RoutePlan> {
        &self.plans
    }

    pub fn forwarding(&self) -> &ForwardingTable {
        &self.forwarding
    }

    fn replan(&mut self, mut graph: NetworkGraph, sinr: &BranchSinr) -> Result<()> {
        let n = self.n;
        if self.schedule.is_some() {
            graph.retain_vertices(&self.measured);
        }
        let diversity = self.cfg.routing.uses_diversity();
        let mut dests: Vec<usize> = self.destinations.clone();
        dests.sort_unstable();
        dests.dedup();
        self.plans.clear();
        let mut table = ForwardingTable::new(n, self.cfg.max_hops);
        for at in 0..n {
            for &d in &dests {
                if at == d {
                    continue;
                }
                if !self.measured[at] || !self.measured[d] {
                    // unmeasured TDMA traffic goes straight to its destination
                    if !self.measured[at] && !self.measured[d] {
                        table.set(at, d, Hop { next: d, diversity: false });
                    }
                    continue;
                }
                if let Some(plan) = plan_route(&graph, at, d, self.cfg.routing, sinr)? {
                    table.set(
                        at,
                        d,
                        Hop {
                            next: plan.next_hop(),
                            diversity,
                        },
                    );
                    self.plans.insert((at, d), plan);
                }
            }
        }
        self.forwarding = table;
        Ok(())
    }

    fn draw_arrivals(&mut self, window: &TimestampWindow) -> Vec<Vec<Packet>> {
        let first_slot = window.start_ms / self.cfg.mac.slot_ms;
        (0..window.n_samples)
            .map(|k| {
                let mut slot_packets = Vec::new();
                let Some(dist) = &self.arrivals else {
                    return slot_packets;
                };
                for origin in 0..self.n {
                    let count = dist.sample(&mut self.arrivals_rng) as u64;
                    for _ in 0..count {
                        slot_packets.push(Packet {
                            id: self.next_packet_id,
                            origin,
                            dest: self.destinations[origin],
                            created_slot: first_slot + k as u64,
                            hops: 0,
                        });
                        self.next_packet_id += 1;
                    }
                }
                slot_packets
            })
            .collect()
    }

    /// Simulates the next window and decides the one after it.
    /// Returns `None` once the trace is exhausted.
    pub fn step_window(&mut self) -> Result<Option<WindowResult>> {
        let Some(&window) = self.windows.get(self.next_window) else {
            return Ok(None);
        };
        let arrivals = self.draw_arrivals(&window);
        let ctx = WindowContext {
            trace: self.trace,
            window: &window,
            forwarding: &self.forwarding,
            arrivals: &arrivals,
            cfg: &self.cfg.mac,
        };
        let result = match &self.schedule {
            Some(s) => run_tdma_window(&ctx, s, &mut self.queues)?,
            None => run_csma_window(&ctx, &self.thresholds, &mut self.queues)?,
        };
        self.record(&result, &arrivals);
        self.next_window += 1;

        if let MacPolicy::AdaptiveCsma = self.cfg.policy {
            if self.cfg.shared_controller {
                let mut all = MacWindowStats::default();
                for s in &result.stats {
                    all.merge(s);
                }
                let th = self.controllers[0].apply(&all);
                self.thresholds.iter_mut().for_each(|t| *t = th);
            } else {
                for (ban, s) in result.stats.iter().enumerate() {
                    self.thresholds[ban] = self.controllers[ban].apply(s);
                }
            }
        }
        let (outage, sinr) = self.measure(&window, &result);
        let graph = build_graph(&outage, self.n)?;
        self.replan(graph, &sinr)?;
        Ok(Some(result))
    }

    fn record(&mut self, result: &WindowResult, arrivals: &[Vec<Packet>]) {
        let t = &mut self.tally;
        t.threshold_history.push(self.thresholds.clone());
        for o in &result.outcomes {
            t.kinds[o.source.ban].push(o.kind);
        }
        for tx in result.transmissions.iter().filter(|tx| self.measured[tx.tx_ban]) {
            t.transmissions += 1;
            t.successes += tx.success as u64;
            t.sinr_samples.push(tx.best_sinr_db);
        }
        t.generated += arrivals
            .iter()
            .flatten()
            .filter(|p| self.measured[p.origin])
            .count() as u64;
        for d in &result.deliveries {
            t.delivered_by_origin[d.packet.origin] += 1;
        }
        t.dropped += result.dropped.iter().filter(|p| self.measured[p.origin]).count() as u64;
    }

    /// Per-link outage of the hub links and per-branch mean SINR, as seen
    /// against the transmitters active in each slot of the window.
    fn measure(&self, window: &TimestampWindow, result: &WindowResult) -> (Vec<f64>, BranchSinr) {
        let n = self.n;
        let cfg = &self.cfg.mac;
        let trace = self.trace;
        let noise_mw = DbmPower(cfg.noise_dbm).mw();
        let want_branches = self.cfg.routing.uses_diversity();
        let radios = trace.num_radios();
        let slots = window.n_samples;

        let mut fails = vec![0u32; n * n];
        let mut sinr_sum = vec![[0.0f64; 3]; n * n];
        let mut rx_sum = vec![[0.0f64; 3]; n * n];
        // received power (mW) at every radio from each transmitter in the slot
        let mut rx_mw = vec![0.0f64; radios];

        for (k, sample) in window.sample_range().enumerate() {
            let txs = &result.transmitters[k];
            let rx_from: Vec<Vec<f64>> = txs
                .iter()
                .map(|&t| {
                    let tr = RadioId::hub(t).index();
                    (0..radios)
                        .map(|r| if r == tr { 0.0 } else { DbmPower(cfg.p_tx_dbm + trace.gain_idx(tr, r, sample)).mw() })
                        .collect()
                })
                .collect();
            for r in 0..radios {
                rx_mw[r] = rx_from.iter().map(|v| v[r]).sum();
            }
            for a in 0..n {
                let ar = RadioId::hub(a).index();
                let a_pos = txs.iter().position(|&t| t == a);
                for b in 0..n {
                    if a == b {
                        continue;
                    }
                    let b_pos = txs.iter().position(|&t| t == b);
                    let devices: &[Device] = if want_branches { &Device::ALL } else { &[Device::Hub] };
                    for &dev in devices {
                        let r = RadioId::new(b, dev).index();
                        let gain = trace.gain_idx(ar, r, sample);
                        let mut interference = rx_mw[r];
                        if let Some(p) = a_pos {
                            interference -= rx_from[p][r];
                        }
                        if let Some(p) = b_pos {
                            interference -= rx_from[p][r];
                        }
                        let signal_dbm = cfg.p_tx_dbm + gain;
                        let sinr_db = signal_dbm - DbmPower::from_mw(interference.max(0.0) + noise_mw).dbm();
                        if dev == Device::Hub && (signal_dbm <= cfg.rx_sensitivity_dbm || sinr_db < cfg.decode_sinr_db) {
                            fails[a * n + b] += 1;
                        }
                        sinr_sum[a * n + b][dev.index()] += sinr_db;
                        rx_sum[a * n + b][dev.index()] += signal_dbm;
                    }
                }
            }
        }

        let mut outage = vec![f64::NAN; n * n];
        let mut branch = BranchSinr::filled(n, f64::NEG_INFINITY);
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let idx = a * n + b;
                outage[idx] = fails[idx] as f64 / slots as f64;
                if want_branches {
                    let mut v = [f64::NEG_INFINITY; 3];
                    for d in 0..3 {
                        let mean_rx = rx_sum[idx][d] / slots as f64;
                        if mean_rx > cfg.rx_sensitivity_dbm {
                            v[d] = sinr_sum[idx][d] / slots as f64;
                        }
                    }
                    branch.set(a, b, v);
                }
            }
        }
        (outage, branch)
    }

    /// Runs all remaining windows.
    pub fn run_to_end(&mut self) -> Result<()> {
        while self.step_window()?.is_some() {}
        Ok(())
    }

    /// Assembles metrics for everything simulated so far.
    pub fn report(&self) -> Result<MetricsReport> {
        let cfg = &self.cfg;
        let t = &self.tally;
        let windows_done = self.next_window;
        let total_time_s = windows_done as f64 * cfg.window_ms as f64 / 1000.0;
        if total_time_s <= 0.0 {
            return Err(Error::config("no window simulated yet"));
        }
        let measured: Vec<usize> = (0..self.n).filter(|&b| self.measured[b]).collect();
        let m = measured.len() as f64;
        let delivered: u64 = measured.iter().map(|&b| t.delivered_by_origin[b]).sum();
        let per_source = metrics::throughput(delivered, cfg.mac.packet_bits, total_time_s * m)?;
        let n_active = measured.iter().filter(|&&b| t.delivered_by_origin[b] > 0).count();
        let speff = metrics::spectral_efficiency(per_source.bits_per_s, n_active, cfg.mac.bandwidth_hz)?;
        let aggregate = metrics::throughput(delivered, cfg.mac.packet_bits, total_time_s)?;
        let speff_sum = aggregate.bits_per_s / cfg.mac.bandwidth_hz;

        let durations: Vec<f64> = measured
            .iter()
            .flat_map(|&b| backoff_runs(&t.kinds[b], cfg.mac.slot_ms))
            .collect();
        let measured_time_ms = total_time_s * 1000.0 * m;
        let backoff = backoff_histogram(&durations, &cfg.backoff_bin_edges_ms, measured_time_ms)?;
        let over_3s = if durations.is_empty() {
            0.0
        } else {
            durations.iter().filter(|&&d| d > 3000.0).count() as f64 / durations.len() as f64
        };

        let outage = cfg
            .gamma_sweep_db
            .iter()
            .map(|&g| OutagePoint {
                gamma_th_db: g,
                probability: metrics::outage_probability(&t.sinr_samples, g).ok(),
            })
            .collect();

        Ok(MetricsReport {
            policy: cfg.policy.label(),
            routing: cfg.routing.to_string(),
            arrival_rate_cfg: cfg.arrival_rate,
            packet_arrival_rate_pkts_per_s: t.generated as f64 / (total_time_s * m),
            throughput_pkts_per_s: per_source.pkts_per_s,
            throughput_bps: per_source.bits_per_s,
            generated: t.generated,
            delivered,
            dropped: t.dropped,
            transmissions: t.transmissions,
            successful_transmissions: t.successes,
            pdr: metrics::pdr(t.successes, t.transmissions)?,
            backoff,
            backoff_fraction_over_3s: over_3s,
            outage,
            sensitivity: Vec::new(),
            spectral_efficiency_bps_per_hz: speff,
            spectral_efficiency_sum_bps_per_hz: speff_sum,
            n_active_channels: n_active,
            measured_sources: measured.len(),
            total_time_s,
            threshold_history: t.threshold_history.clone(),
        })
    }
}

/// Simulates the whole trace once at the config's receiver sensitivity.
pub fn simulate(cfg: &ExperimentConfig, trace: &ChannelTrace) -> Result<MetricsReport> {
    let mut sim = Simulation::new(cfg, trace)?;
    sim.run_to_end()?;
    sim.report()
}

/// Full run on a given trace: the base simulation plus one simulation per
/// swept receiver sensitivity.
pub fn run_on_trace(cfg: &ExperimentConfig, trace: &ChannelTrace) -> Result<MetricsReport> {
    let mut report = simulate(cfg, trace)?;
    for &s in &cfg.sensitivity_sweep_dbm {
        let mut c = cfg.clone();
        c.mac.rx_sensitivity_dbm = s;
        let r = simulate(&c, trace)?;
        report.sensitivity.push(SensitivityPoint {
            rx_sensitivity_dbm: s,
            pdr: r.pdr,
            throughput_pkts_per_s: r.throughput_pkts_per_s,
            spectral_efficiency: r.spectral_efficiency_bps_per_hz,
            spectral_efficiency_sum: r.spectral_efficiency_sum_bps_per_hz,
        });
    }
    Ok(report)
}

pub fn run(cfg: &ExperimentConfig) -> Result<MetricsReport> {
    cfg.validate()?;
    let trace = resolve_trace(cfg)?;
    run_on_trace(cfg, &trace)
}

/// Runs configs independently, in parallel on up to `threads` threads
/// (rayon's default when `None`). Results keep the input order.
pub fn sweep_with_threads(configs: &[ExperimentConfig], threads: Option<usize>) -> Vec<Result<MetricsReport>> {
    let work = || configs.par_iter().map(run).collect::<Vec<_>>();
    match threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build() {
            Ok(pool) => pool.install(work),
            Err(_) => configs.iter().map(run).collect(),
        },
        None => work(),
    }
}

pub fn sweep(configs: &[ExperimentConfig]) -> Vec<Result<MetricsReport>> {
    sweep_with_threads(configs, None)
}
