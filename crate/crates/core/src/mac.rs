//! Slot-level MAC simulation.
//!
//! Time advances in 50 ms slots, one per trace sample. In every slot each hub
//! with a routable packet either transmits, backs off, or waits, depending on
//! the policy:
//!
//! - CSMA/CA with maximum-interference-power carrier sensing: the hub
//!   transmits iff the strongest contender, as received at the hub's next-hop
//!   destination, is below its carrier-sense threshold.
//! - TDMA: coordinated hubs transmit only in the slots they own; the others
//!   transmit as soon as they have traffic.
//!
//! All hubs transmitting in the same slot interfere with each other, except
//! that a BAN's own hub never interferes with its reception. A
//! transmission succeeds when a receiving radio hears it above the receiver
//! sensitivity with SINR at or above the decode threshold. Failed packets stay
//! at the head of the queue and are retried.

use std::collections::VecDeque;

use crate::channel::{ChannelTrace, Device, RadioId, TimestampWindow};
use crate::error::{Error, Result};
use crate::metrics::sinr;
use crate::routing::select_combine;

/// Radio and timing parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct MacConfig {
    pub t_sifs_us: f64,
    pub t_packet_ms: f64,
    pub t_ack_ms: f64,
    pub data_rate_kbps: f64,
    pub packet_bits: u32,
    pub bandwidth_hz: f64,
    pub p_tx_dbm: f64,
    pub noise_dbm: f64,
    pub rx_sensitivity_dbm: f64,
    pub decode_sinr_db: f64,
    pub slot_ms: u64,
}

impl Default for MacConfig {
    fn default() -> Self {
        Self {
            t_sifs_us: 50.0,
            t_packet_ms: 0.6,
            t_ack_ms: 0.2,
            data_rate_kbps: 486.0,
            packet_bits: 273,
            bandwidth_hz: 1e6,
            p_tx_dbm: 0.0,
            noise_dbm: -100.0,
            rx_sensitivity_dbm: -90.0,
            decode_sinr_db: 0.0,
            slot_ms: 50,
        }
    }
}

impl MacConfig {
    /// Packet + SIFS + ACK airtime of a single attempt.
    pub fn attempt_ms(&self) -> f64 {
        self.t_packet_ms + self.t_sifs_us / 1000.0 + self.t_ack_ms
    }

    pub fn validate(&self) -> Result<()> {
        if self.slot_ms == 0 {
            return Err(Error::config("slot_ms must be positive"));
        }
        if !(self.attempt_ms() < self.slot_ms as f64) {
            return Err(Error::config(format!(
                "an attempt takes {} ms, which does not fit a {} ms slot",
                self.attempt_ms(),
                self.slot_ms
            )));
        }
        if !self.noise_dbm.is_finite() || !self.p_tx_dbm.is_finite() {
            return Err(Error::config("noise and transmit power must be finite"));
        }
        if !(self.bandwidth_hz > 0.0) {
            return Err(Error::config("bandwidth must be positive"));
        }
        Ok(())
    }
}

/// Carrier sensing admission: true iff the strongest interferer, received at
/// `p_tx_dbm + gain`, is below `cs_th_dbm`. No interferers always passes.
pub fn mpcs_permits(p_tx_dbm: f64, interferer_gains_db: &[f64], cs_th_dbm: f64) -> bool {
    let strongest = interferer_gains_db
        .iter()
        .map(|g| p_tx_dbm + g)
        .fold(f64::NEG_INFINITY, f64::max);
    strongest < cs_th_dbm
}

pub const INITIAL_THRESHOLD_DBM: f64 = -90.0;

/// Adaptive carrier-sense threshold of one source (or of the whole network
/// when shared).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdController {
    pub cs_th_dbm: f64,
    pub step_db: f64,
}

impl Default for ThresholdController {
    fn default() -> Self {
        Self::new(INITIAL_THRESHOLD_DBM)
    }
}

impl ThresholdController {
    pub fn new(initial_dbm: f64) -> Self {
        Self {
            cs_th_dbm: initial_dbm,
            step_db: 1.0,
        }
    }

    /// Moves to the threshold for the next window and returns it.
    pub fn apply(&mut self, stats: &MacWindowStats) -> f64 {
        self.cs_th_dbm = adapt_threshold(self, stats);
        self.cs_th_dbm
    }
}

/// Threshold for window i+1 given window i's statistics: up one step when
/// the source spent at least half its pending slots backed off, down one
/// step when it backed off less but more than half its transmissions failed.
pub fn adapt_threshold(ctrl: &ThresholdController, stats: &MacWindowStats) -> f64 {
    let bop = stats.bop();
    if bop >= 0.5 {
        ctrl.cs_th_dbm + ctrl.step_db
    } else if stats.icp() > 0.5 {
        ctrl.cs_th_dbm - ctrl.step_db
    } else {
        ctrl.cs_th_dbm
    }
}

/// Per-source counters for one window.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MacWindowStats {
    /// Slots in which the source had a routable packet and contended.
    pub pending_slots: u64,
    pub backoffs: u64,
    pub transmissions: u64,
    pub successes: u64,
    pub failures: u64,
}

impl MacWindowStats {
    /// Each pending slot is one channel-access attempt.
    pub fn attempts(&self) -> u64 {
        self.pending_slots
    }

    /// Back-off percentage as a fraction.
    pub fn bop(&self) -> f64 {
        if self.pending_slots == 0 {
            0.0
        } else {
            self.backoffs as f64 / self.pending_slots as f64
        }
    }

    /// Fraction of transmissions that were not decoded.
    pub fn icp(&self) -> f64 {
        if self.transmissions == 0 {
            0.0
        } else {
            self.failures as f64 / self.transmissions as f64
        }
    }

    pub fn merge(&mut self, other: &MacWindowStats) {
        self.pending_slots += other.pending_slots;
        self.backoffs += other.backoffs;
        self.transmissions += other.transmissions;
        self.successes += other.successes;
        self.failures += other.failures;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SlotKind {
    Idle,
    BackOff,
    Success,
    DecodeFailure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlotOutcome {
    pub source: RadioId,
    pub slot_index: u64,
    pub kind: SlotKind,
}

/// Lengths of maximal back-off runs of one source, in ms.
///
/// Runs end at any other outcome or at a gap in the slot sequence.
pub fn continuous_backoff_durations(outcomes: &[SlotOutcome], source: RadioId, slot_ms: u64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut run = 0u64;
    let mut last_slot: Option<u64> = None;
    for o in outcomes.iter().filter(|o| o.source == source) {
        let contiguous = last_slot.is_some_and(|s| o.slot_index == s + 1);
        if !contiguous && run > 0 {
            out.push((run * slot_ms) as f64);
            run = 0;
        }
        if o.kind == SlotKind::BackOff {
            run += 1;
        } else if run > 0 {
            out.push((run * slot_ms) as f64);
            run = 0;
        }
        last_slot = Some(o.slot_index);
    }
    if run > 0 {
        out.push((run * slot_ms) as f64);
    }
    out
}

/// Same as [`continuous_backoff_durations`] over a dense per-slot log.
pub fn backoff_runs(kinds: &[SlotKind], slot_ms: u64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut run = 0u64;
    for &k in kinds {
        if k == SlotKind::BackOff {
            run += 1;
        } else if run > 0 {
            out.push((run * slot_ms) as f64);
            run = 0;
        }
    }
    if run > 0 {
        out.push((run * slot_ms) as f64);
    }
    out
}

pub const TDMA_SUPERFRAME_SLOTS: usize = 12;

/// Slot ownership for the coordinated BANs, repeating every superframe.
#[derive(Debug, Clone, PartialEq)]
pub struct TdmaSchedule {
    pub duty_cycle: f64,
    pub coordinated: Vec<usize>,
    owners: Vec<Option<usize>>,
}

impl TdmaSchedule {
    /// Gives each coordinated BAN a contiguous block of
    /// `round(duty_cycle * superframe_slots)` slots (at least one).
    pub fn new(duty_cycle: f64, coordinated: &[usize], superframe_slots: usize) -> Result<Self> {
        if !(duty_cycle > 0.0 && duty_cycle <= 1.0) || superframe_slots == 0 {
            return Err(Error::config(format!(
                "TDMA duty cycle {duty_cycle} must lie in (0, 1] with a non-empty superframe"
            )));
        }
        let mut seen = coordinated.to_vec();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != coordinated.len() {
            return Err(Error::config("TDMA coordinated set lists a BAN twice"));
        }
        let per_ban = ((duty_cycle * superframe_slots as f64).round() as usize).max(1);
        if per_ban * coordinated.len() > superframe_slots {
            return Err(Error::config(format!(
                "{} coordinated BANs x {per_ban} slots exceed a {superframe_slots}-slot superframe",
                coordinated.len()
            )));
        }
        let mut owners = vec![None; superframe_slots];
        for (i, &ban) in coordinated.iter().enumerate() {
            for s in 0..per_ban {
                owners[i * per_ban + s] = Some(ban);
            }
        }
        Ok(Self {
            duty_cycle,
            coordinated: coordinated.to_vec(),
            owners,
        })
    }

    pub fn superframe_slots(&self) -> usize {
        self.owners.len()
    }

    pub fn owner(&self, slot_index: u64) -> Option<usize> {
        self.owners[(slot_index % self.owners.len() as u64) as usize]
    }

    pub fn is_coordinated(&self, ban: usize) -> bool {
        self.coordinated.contains(&ban)
    }

    pub fn slots_owned(&self, ban: usize) -> usize {
        self.owners.iter().filter(|o| **o == Some(ban)).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Packet {
    pub id: u64,
    pub origin: usize,
    pub dest: usize,
    pub created_slot: u64,
    pub hops: u32,
}

/// FIFO queue per BAN hub.
pub type TrafficQueues = Vec<VecDeque<Packet>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hop {
    pub next: usize,
    /// Receive on all three radios of the next BAN with selection combining.
    pub diversity: bool,
}

/// Next hop per (current hub, final destination) for one window.
#[derive(Debug, Clone, PartialEq)]
pub struct ForwardingTable {
    n: usize,
    hops: Vec<Option<Hop>>,
    /// Packets reaching this many hops without arriving are dropped.
    pub max_hops: u32,
}

impl ForwardingTable {
    pub fn new(n: usize, max_hops: u32) -> Self {
        Self {
            n,
            hops: vec![None; n * n],
            max_hops,
        }
    }

    pub fn num_bans(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, at: usize, dest: usize, hop: Hop) {
        self.hops[at * self.n + dest] = Some(hop);
    }

    pub fn get(&self, at: usize, dest: usize) -> Option<Hop> {
        if at >= self.n || dest >= self.n {
            return None;
        }
        self.hops[at * self.n + dest]
    }

    fn check(&self, trace: &ChannelTrace) -> Result<()> {
        for (i, hop) in self.hops.iter().enumerate() {
            if let Some(h) = hop {
                let (at, dest) = (i / self.n, i % self.n);
                for ban in [at, dest, h.next] {
                    if ban >= trace.num_bans() {
                        return Err(Error::Topology(format!(
                            "route {at}->{dest} via {} references BAN {ban}, trace has {}",
                            h.next,
                            trace.num_bans()
                        )));
                    }
                }
                if h.next == at {
                    return Err(Error::Topology(format!("route {at}->{dest} loops on itself")));
                }
            }
        }
        Ok(())
    }
}

/// Received power and SINR at one receiving radio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchReading {
    pub rx_dbm: f64,
    pub sinr_db: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transmission {
    pub slot_index: u64,
    pub tx_ban: usize,
    pub rx_ban: usize,
    pub packet: Packet,
    /// Hub, sensor A, sensor B; `None` where the radio was not listening.
    pub branches: [Option<BranchReading>; 3],
    /// Best SINR among available branches, ignoring sensitivity.
    pub best_sinr_db: f64,
    /// Selection-combined SINR over branches above sensitivity.
    pub combined_sinr_db: f64,
    pub success: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Delivery {
    pub packet: Packet,
    pub slot_index: u64,
}

/// Everything one window of MAC simulation produced.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WindowResult {
    /// One outcome per BAN hub per slot, slot-major.
    pub outcomes: Vec<SlotOutcome>,
    /// Indexed by BAN.
    pub stats: Vec<MacWindowStats>,
    pub transmissions: Vec<Transmission>,
    pub deliveries: Vec<Delivery>,
    pub dropped: Vec<Packet>,
    /// Transmitting hubs per slot of the window.
    pub transmitters: Vec<Vec<usize>>,
}

/// Inputs shared by the CSMA and TDMA engines.
pub struct WindowContext<'a> {
    pub trace: &'a ChannelTrace,
    pub window: &'a TimestampWindow,
    pub forwarding: &'a ForwardingTable,
    /// Packets entering each origin queue at the start of each slot.
    pub arrivals: &'a [Vec<Packet>],
    pub cfg: &'a MacConfig,
}

#[derive(Debug, Clone, Copy)]
struct Head {
    pos: usize,
    hop: Hop,
}

enum Gate {
    Transmit,
    BackOff,
    Hold,
}

/// CSMA/CA window with per-BAN carrier-sense thresholds (`thresholds[ban]`).
pub fn run_csma_window(ctx: &WindowContext<'_>, thresholds: &[f64], queues: &mut TrafficQueues) -> Result<WindowResult> {
    let n = ctx.trace.num_bans();
    if thresholds.len() < n {
        return Err(Error::config(format!(
            "{} thresholds for {n} BANs",
            thresholds.len()
        )));
    }
    let p_tx = ctx.cfg.p_tx_dbm;
    let mut gains = Vec::with_capacity(n);
    run_window(ctx, queues, |_slot, sample, ban, heads| {
        let dest = heads[ban].expect("gate only sees pending sources").hop.next;
        gains.clear();
        // contenders: every other pending hub except the destination itself
        for (c, h) in heads.iter().enumerate() {
            if h.is_some() && c != ban && c != dest {
                gains.push(ctx.trace.gain_idx(RadioId::hub(c).index(), RadioId::hub(dest).index(), sample));
            }
        }
        if mpcs_permits(p_tx, &gains, thresholds[ban]) {
            Gate::Transmit
        } else {
            Gate::BackOff
        }
    })
}

/// TDMA window: coordinated BANs transmit in owned slots only, everyone else
/// whenever they hold traffic. Slot ownership uses the absolute slot index.
pub fn run_tdma_window(ctx: &WindowContext<'_>, schedule: &TdmaSchedule, queues: &mut TrafficQueues) -> Result<WindowResult> {
    if let Some(&bad) = schedule.coordinated.iter().find(|&&b| b >= ctx.trace.num_bans()) {
        return Err(Error::Topology(format!("coordinated BAN {bad} not in trace")));
    }
    run_window(ctx, queues, |slot, _sample, ban, _heads| {
        if !schedule.is_coordinated(ban) || schedule.owner(slot) == Some(ban) {
            Gate::Transmit
        } else {
            Gate::Hold
        }
    })
}

fn run_window<G>(ctx: &WindowContext<'_>, queues: &mut TrafficQueues, mut gate: G) -> Result<WindowResult>
where
    G: FnMut(u64, usize, usize, &[Option<Head>]) -> Gate,
{
    let trace = ctx.trace;
    let n = trace.num_bans();
    let window = ctx.window;
    ctx.cfg.validate()?;
    ctx.forwarding.check(trace)?;
    if ctx.forwarding.num_bans() != n || queues.len() != n {
        return Err(Error::Topology(format!(
            "forwarding table or queues sized for {} BANs, trace has {n}",
            ctx.forwarding.num_bans()
        )));
    }
    if window.first_sample + window.n_samples > trace.n_samples() {
        return Err(Error::config("window extends past the end of the trace"));
    }
    if ctx.arrivals.len() != window.n_samples {
        return Err(Error::config(format!(
            "arrival schedule covers {} slots, window has {}",
            ctx.arrivals.len(),
            window.n_samples
        )));
    }
    let first_slot = window.start_ms / ctx.cfg.slot_ms;

    let mut result = WindowResult {
        stats: vec![MacWindowStats::default(); n],
        ..WindowResult::default()
    };
    let mut heads: Vec<Option<Head>> = vec![None; n];
    let mut decisions: Vec<SlotKind> = vec![SlotKind::Idle; n];
    let mut relayed: Vec<(usize, Packet)> = Vec::new();

    for k in 0..window.n_samples {
        let sample = window.first_sample + k;
        let slot = first_slot + k as u64;

        for p in &ctx.arrivals[k] {
            if p.origin >= n {
                return Err(Error::Topology(format!("packet from unknown BAN {}", p.origin)));
            }
            queues[p.origin].push_back(*p);
        }

        for ban in 0..n {
            heads[ban] = queues[ban].iter().enumerate().find_map(|(pos, p)| {
                ctx.forwarding.get(ban, p.dest).map(|hop| Head { pos, hop })
            });
        }

        let mut tx_list = Vec::new();
        for ban in 0..n {
            decisions[ban] = SlotKind::Idle;
            if heads[ban].is_none() {
                continue;
            }
            match gate(slot, sample, ban, &heads) {
                Gate::Transmit => {
                    tx_list.push(ban);
                    result.stats[ban].pending_slots += 1;
                    result.stats[ban].transmissions += 1;
                }
                Gate::BackOff => {
                    decisions[ban] = SlotKind::BackOff;
                    result.stats[ban].pending_slots += 1;
                    result.stats[ban].backoffs += 1;
                }
                Gate::Hold => {}
            }
        }

        for &ban in &tx_list {
            let head = heads[ban].expect("transmitters have a head packet");
            let packet = queues[ban][head.pos];
            let tx = receive(ctx, sample, slot, ban, head.hop, packet, &tx_list);
            if tx.success {
                decisions[ban] = SlotKind::Success;
                result.stats[ban].successes += 1;
                queues[ban].remove(head.pos);
                if head.hop.next == packet.dest {
                    result.deliveries.push(Delivery { packet, slot_index: slot });
                } else {
                    let forwarded = Packet {
                        hops: packet.hops + 1,
                        ..packet
                    };
                    if forwarded.hops >= ctx.forwarding.max_hops {
                        result.dropped.push(forwarded);
                    } else {
                        relayed.push((head.hop.next, forwarded));
                    }
                }
            } else {
                decisions[ban] = SlotKind::DecodeFailure;
                result.stats[ban].failures += 1;
            }
            result.transmissions.push(tx);
        }

        for (ban, &kind) in decisions.iter().enumerate() {
            result.outcomes.push(SlotOutcome {
                source: RadioId::hub(ban),
                slot_index: slot,
                kind,
            });
        }
        result.transmitters.push(tx_list);
        for (ban, p) in relayed.drain(..) {
            queues[ban].push_back(p);
        }
    }
    Ok(result)
}

fn receive(
    ctx: &WindowContext<'_>,
    sample: usize,
    slot: u64,
    tx_ban: usize,
    hop: Hop,
    packet: Packet,
    tx_list: &[usize],
) -> Transmission {
    let cfg = ctx.cfg;
    let devices: &[Device] = if hop.diversity { &Device::ALL } else { &[Device::Hub] };
    let tx_radio = RadioId::hub(tx_ban).index();
    let mut branches = [None; 3];
    let mut eligible = [f64::NEG_INFINITY; 3];
    let mut best = f64::NEG_INFINITY;
    let mut interferers = Vec::with_capacity(tx_list.len());
    for &dev in devices {
        let rx = RadioId::new(hop.next, dev).index();
        let gain = ctx.trace.gain_idx(tx_radio, rx, sample);
        interferers.clear();
        interferers.extend(
            tx_list
                .iter()
                // the receiving BAN's own hub sends at a different instant of the slot
                .filter(|&&t| t != tx_ban && t != hop.next)
                .map(|&t| ctx.trace.gain_idx(RadioId::hub(t).index(), rx, sample)),
        );
        let reading = BranchReading {
            rx_dbm: cfg.p_tx_dbm + gain,
            sinr_db: sinr(gain, &interferers, cfg.p_tx_dbm, cfg.noise_dbm),
        };
        best = best.max(reading.sinr_db);
        if reading.rx_dbm > cfg.rx_sensitivity_dbm {
            eligible[dev.index()] = reading.sinr_db;
        }
        branches[dev.index()] = Some(reading);
    }
    let (combined, _) = select_combine(eligible);
    Transmission {
        slot_index: slot,
        tx_ban,
        rx_ban: hop.next,
        packet,
        branches,
        best_sinr_db: best,
        combined_sinr_db: combined,
        success: combined.is_finite() && combined >= cfg.decode_sinr_db,
    }
}
