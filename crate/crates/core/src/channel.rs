//! Channel-gain traces.
//!
//! A trace holds one gain series per unordered radio pair on a fixed sampling
//! grid. Storing pairs rather than directed links makes reciprocity hold by
//! construction once a trace exists; ingest checks it on the way in.

use std::collections::HashMap;
use std::fmt;
use std::io::Write;
use std::ops::Range;
use std::path::Path;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::config::KvConfig;
use crate::error::{Error, Result};

/// Gains strictly below this level are replaced by the clamp floor.
pub const CLAMP_BELOW_DBM: f64 = -100.0;
pub const DEFAULT_CLAMP_FLOOR_DBM: f64 = -101.0;
pub const DEFAULT_SAMPLE_PERIOD_MS: u64 = 50;
pub const DEFAULT_WINDOW_MS: u64 = 600;
pub const RADIOS_PER_BAN: usize = 3;

pub const TRACE_HEADER: [&str; 6] = ["time_ms", "tx_ban", "tx_device", "rx_ban", "rx_device", "rssi_dbm"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Device {
    Hub,
    SensorA,
    SensorB,
}

impl Device {
    pub const ALL: [Device; 3] = [Device::Hub, Device::SensorA, Device::SensorB];

    pub fn index(self) -> usize {
        match self {
            Device::Hub => 0,
            Device::SensorA => 1,
            Device::SensorB => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Device::Hub => "hub",
            Device::SensorA => "sensor_a",
            Device::SensorB => "sensor_b",
        }
    }
}

impl FromStr for Device {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "hub" => Ok(Device::Hub),
            "sensor_a" => Ok(Device::SensorA),
            "sensor_b" => Ok(Device::SensorB),
            other => Err(format!("unknown device `{other}`")),
        }
    }
}

/// One radio: a BAN index plus its position on the body.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RadioId {
    pub ban: usize,
    pub device: Device,
}

impl RadioId {
    pub fn new(ban: usize, device: Device) -> Self {
        Self { ban, device }
    }

    pub fn hub(ban: usize) -> Self {
        Self::new(ban, Device::Hub)
    }

    /// Dense index `ban * 3 + device`.
    pub fn index(self) -> usize {
        self.ban * RADIOS_PER_BAN + self.device.index()
    }

    pub fn from_index(idx: usize) -> Self {
        Self::new(idx / RADIOS_PER_BAN, Device::ALL[idx % RADIOS_PER_BAN])
    }
}

impl fmt::Display for RadioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.device.as_str(), self.ban)
    }
}

/// A directed link between two distinct radios.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkId {
    pub tx: RadioId,
    pub rx: RadioId,
}

impl LinkId {
    pub fn new(tx: RadioId, rx: RadioId) -> Result<Self> {
        if tx == rx {
            return Err(Error::Topology(format!("link from {tx} to itself")));
        }
        Ok(Self { tx, rx })
    }

    pub fn reverse(self) -> Self {
        Self {
            tx: self.rx,
            rx: self.tx,
        }
    }

    pub fn is_intra_ban(self) -> bool {
        self.tx.ban == self.rx.ban
    }
}

impl fmt::Display for LinkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.tx, self.rx)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSample {
    pub time_ms: u64,
    pub gain_db: f64,
}

/// Index of the unordered pair `{a, b}` (a != b) in triangular order.
#[inline]
fn pair_index(a: usize, b: usize) -> usize {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    hi * (hi - 1) / 2 + lo
}

fn num_pairs(radios: usize) -> usize {
    radios * radios.saturating_sub(1) / 2
}

fn clamp_gain(gain_db: f64, floor_dbm: f64) -> f64 {
    if gain_db < CLAMP_BELOW_DBM {
        floor_dbm
    } else {
        gain_db
    }
}

/// Immutable gain trace for every link among `num_bans * 3` radios.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelTrace {
    sample_period_ms: u64,
    num_bans: usize,
    n_samples: usize,
    /// Pair-major: `gains[pair * n_samples + k]`.
    gains: Vec<f64>,
}

impl ChannelTrace {
    /// Builds a trace from a gain function over unordered radio pairs.
    ///
    /// `f(a, b, k)` is called once per pair with `a.index() < b.index()`.
    pub fn from_pair_fn(
        num_bans: usize,
        sample_period_ms: u64,
        n_samples: usize,
        mut f: impl FnMut(RadioId, RadioId, usize) -> f64,
    ) -> Result<Self> {
        if num_bans == 0 || sample_period_ms == 0 || n_samples == 0 {
            return Err(Error::config("trace needs bans, a sample period and samples"));
        }
        let radios = num_bans * RADIOS_PER_BAN;
        let mut gains = vec![0.0; num_pairs(radios) * n_samples];
        for hi in 1..radios {
            for lo in 0..hi {
                let base = pair_index(lo, hi) * n_samples;
                let (a, b) = (RadioId::from_index(lo), RadioId::from_index(hi));
                for k in 0..n_samples {
                    gains[base + k] = f(a, b, k);
                }
            }
        }
        Ok(Self {
            sample_period_ms,
            num_bans,
            n_samples,
            gains,
        })
    }

    pub fn num_bans(&self) -> usize {
        self.num_bans
    }

    pub fn num_radios(&self) -> usize {
        self.num_bans * RADIOS_PER_BAN
    }

    pub fn sample_period_ms(&self) -> u64 {
        self.sample_period_ms
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    pub fn duration_ms(&self) -> u64 {
        self.n_samples as u64 * self.sample_period_ms
    }

    pub fn contains(&self, radio: RadioId) -> bool {
        radio.ban < self.num_bans
    }

    /// Gain by dense radio indices and sample index. Hot path for the MAC.
    #[inline]
    pub fn gain_idx(&self, tx: usize, rx: usize, sample: usize) -> f64 {
        debug_assert_ne!(tx, rx);
        self.gains[pair_index(tx, rx) * self.n_samples + sample]
    }

    #[inline]
    pub fn gain(&self, tx: RadioId, rx: RadioId, sample: usize) -> f64 {
        self.gain_idx(tx.index(), rx.index(), sample)
    }

    fn check_link(&self, link: LinkId) -> Result<()> {
        for r in [link.tx, link.rx] {
            if !self.contains(r) {
                return Err(Error::Topology(format!(
                    "radio {r} not in a trace of {} BANs",
                    self.num_bans
                )));
            }
        }
        Ok(())
    }

    /// Whole gain series of a link.
    pub fn series(&self, link: LinkId) -> Result<&[f64]> {
        self.check_link(link)?;
        let base = pair_index(link.tx.index(), link.rx.index()) * self.n_samples;
        Ok(&self.gains[base..base + self.n_samples])
    }

    pub fn samples(&self, link: LinkId) -> Result<impl Iterator<Item = ChannelSample> + '_> {
        let period = self.sample_period_ms;
        Ok(self
            .series(link)?
            .iter()
            .enumerate()
            .map(move |(k, &g)| ChannelSample {
                time_ms: k as u64 * period,
                gain_db: g,
            }))
    }

    /// Zero-order-hold lookup: the sample at the greatest grid time `<= t_ms`.
    pub fn gain_at(&self, link: LinkId, t_ms: u64) -> Result<f64> {
        if t_ms >= self.duration_ms() {
            return Err(Error::Bounds {
                t_ms,
                duration_ms: self.duration_ms(),
            });
        }
        Ok(self.series(link)?[(t_ms / self.sample_period_ms) as usize])
    }

    /// All directed links, ordered by (tx, rx) index.
    pub fn links(&self) -> impl Iterator<Item = LinkId> + '_ {
        let n = self.num_radios();
        (0..n).flat_map(move |a| {
            (0..n).filter(move |&b| b != a).map(move |b| LinkId {
                tx: RadioId::from_index(a),
                rx: RadioId::from_index(b),
            })
        })
    }

    /// Copy holding only the first `n_samples` samples.
    pub fn truncated(&self, n_samples: usize) -> Result<Self> {
        if n_samples == 0 || n_samples > self.n_samples {
            return Err(Error::config(format!(
                "cannot truncate {} samples to {n_samples}",
                self.n_samples
            )));
        }
        let pairs = num_pairs(self.num_radios());
        let mut gains = Vec::with_capacity(pairs * n_samples);
        for p in 0..pairs {
            let base = p * self.n_samples;
            gains.extend_from_slice(&self.gains[base..base + n_samples]);
        }
        Ok(Self {
            sample_period_ms: self.sample_period_ms,
            num_bans: self.num_bans,
            n_samples,
            gains,
        })
    }

    /// Writes the trace CSV, one row per pair and sample (lower radio index
    /// transmits). Ingest restores the reverse direction by reciprocity.
    pub fn write_csv<W: Write>(&self, w: W) -> std::io::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(TRACE_HEADER)?;
        let radios = self.num_radios();
        for k in 0..self.n_samples {
            let t = (k as u64 * self.sample_period_ms).to_string();
            for a in 0..radios {
                for b in a + 1..radios {
                    let (ra, rb) = (RadioId::from_index(a), RadioId::from_index(b));
                    let g = self.gain_idx(a, b, k);
                    out.write_record([
                        t.as_str(),
                        &ra.ban.to_string(),
                        ra.device.as_str(),
                        &rb.ban.to_string(),
                        rb.device.as_str(),
                        &format!("{g}"),
                    ])?;
                }
            }
        }
        out.flush()
    }
}

// ---------------------------------------------------------------------------
// Ingest
// ---------------------------------------------------------------------------

struct RawRow {
    time_ms: u64,
    tx: RadioId,
    rx: RadioId,
    gain_db: f64,
    line: u64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Reads a trace CSV (`time_ms,tx_ban,tx_device,rx_ban,rx_device,rssi_dbm`).
///
/// The sampling grid is the greatest common divisor of the time offsets from
/// the first timestamp. Gains below -100 dBm become `clamp_floor_dbm`. A
/// missing cell takes the reverse link's sample at the same time, else the
/// previous sample of the pair; leading gaps take the first later sample and
/// a pair never observed sits at the clamp floor.
pub fn ingest_trace(path: &Path, clamp_floor_dbm: f64) -> Result<ChannelTrace> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    ingest_reader(file, path, clamp_floor_dbm)
}

pub fn ingest_reader<R: std::io::Read>(
    reader: R,
    path: &Path,
    clamp_floor_dbm: f64,
) -> Result<ChannelTrace> {
    let parse_err = |line: u64, msg: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        msg,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header = rdr
        .headers()
        .map_err(|e| parse_err(1, format!("cannot read header: {e}")))?
        .clone();
    if header.iter().collect::<Vec<_>>() != TRACE_HEADER {
        return Err(parse_err(
            1,
            format!("expected header `{}`", TRACE_HEADER.join(",")),
        ));
    }

    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map(|p| p.line()).unwrap_or(0);
            parse_err(line, e.to_string())
        })?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        if rec.len() != TRACE_HEADER.len() {
            return Err(parse_err(line, format!("expected 6 fields, got {}", rec.len())));
        }
        let field = |i: usize| rec.get(i).unwrap_or_default();
        let num = |i: usize| -> Result<u64> {
            field(i)
                .parse::<u64>()
                .map_err(|e| parse_err(line, format!("{}: `{}`: {e}", TRACE_HEADER[i], field(i))))
        };
        let dev = |i: usize| -> Result<Device> {
            field(i).parse::<Device>().map_err(|e| parse_err(line, e))
        };
        let time_ms = num(0)?;
        let tx = RadioId::new(num(1)? as usize, dev(2)?);
        let rx = RadioId::new(num(3)? as usize, dev(4)?);
        let rssi: f64 = field(5)
            .parse()
            .map_err(|e| parse_err(line, format!("rssi_dbm: `{}`: {e}", field(5))))?;
        if !rssi.is_finite() {
            return Err(parse_err(line, format!("rssi_dbm not finite: `{}`", field(5))));
        }
        if tx == rx {
            return Err(parse_err(line, format!("link from {tx} to itself")));
        }
        rows.push(RawRow {
            time_ms,
            tx,
            rx,
            gain_db: clamp_gain(rssi, clamp_floor_dbm),
            line,
        });
    }
    if rows.is_empty() {
        return Err(Error::Data(format!("{}: trace has no samples", path.display())));
    }

    let t0 = rows.iter().map(|r| r.time_ms).min().unwrap_or(0);
    let t_max = rows.iter().map(|r| r.time_ms).max().unwrap_or(0);
    let period = rows
        .iter()
        .fold(0, |g, r| gcd(g, r.time_ms - t0));
    let period = if period == 0 { DEFAULT_SAMPLE_PERIOD_MS } else { period };
    let n_samples = ((t_max - t0) / period + 1) as usize;
    let num_bans = rows.iter().map(|r| r.tx.ban.max(r.rx.ban)).max().unwrap_or(0) + 1;

    // Directed observations per link, NaN = missing.
    let mut observed: HashMap<(usize, usize), Vec<f64>> = HashMap::new();
    for row in &rows {
        let k = ((row.time_ms - t0) / period) as usize;
        let series = observed
            .entry((row.tx.index(), row.rx.index()))
            .or_insert_with(|| vec![f64::NAN; n_samples]);
        let cell = &mut series[k];
        if cell.is_nan() {
            *cell = row.gain_db;
        } else if *cell != row.gain_db {
            return Err(Error::Data(format!(
                "line {}: link {}->{} at t={} ms already has gain {} dB, got {} dB",
                row.line, row.tx, row.rx, row.time_ms, cell, row.gain_db
            )));
        }
    }

    let radios = num_bans * RADIOS_PER_BAN;
    let mut gains = vec![clamp_floor_dbm; num_pairs(radios) * n_samples];
    let mut violation: Option<(u64, LinkId, f64, f64)> = None;
    for hi in 1..radios {
        for lo in 0..hi {
            let fwd = observed.get(&(lo, hi));
            let rev = observed.get(&(hi, lo));
            if fwd.is_none() && rev.is_none() {
                continue;
            }
            let base = pair_index(lo, hi) * n_samples;
            let out = &mut gains[base..base + n_samples];
            let mut filled = vec![false; n_samples];
            for k in 0..n_samples {
                let f = fwd.map_or(f64::NAN, |s| s[k]);
                let r = rev.map_or(f64::NAN, |s| s[k]);
                match (f.is_nan(), r.is_nan()) {
                    (false, false) if f != r => {
                        let t = t0 + k as u64 * period;
                        let link = LinkId {
                            tx: RadioId::from_index(lo),
                            rx: RadioId::from_index(hi),
                        };
                        if violation.as_ref().is_none_or(|v| (t, link) < (v.0, v.1)) {
                            violation = Some((t, link, f, r));
                        }
                        out[k] = f;
                        filled[k] = true;
                    }
                    (false, _) => {
                        out[k] = f;
                        filled[k] = true;
                    }
                    (true, false) => {
                        out[k] = r;
                        filled[k] = true;
                    }
                    (true, true) => {}
                }
            }
            hold_fill(out, &filled);
        }
    }
    if let Some((time_ms, link, forward, reverse)) = violation {
        return Err(Error::Reciprocity {
            link,
            time_ms: time_ms - t0,
            forward,
            reverse,
        });
    }

    Ok(ChannelTrace {
        sample_period_ms: period,
        num_bans,
        n_samples,
        gains,
    })
}

/// Previous-sample hold over unfilled cells; a leading gap takes the first
/// filled value. At least one cell must be filled.
fn hold_fill(series: &mut [f64], filled: &[bool]) {
    let Some(first) = filled.iter().position(|&f| f) else {
        return;
    };
    let lead = series[first];
    for v in &mut series[..first] {
        *v = lead;
    }
    let mut last = lead;
    for k in first..series.len() {
        if filled[k] {
            last = series[k];
        } else {
            series[k] = last;
        }
    }
}

// ---------------------------------------------------------------------------
// Synthesis
// ---------------------------------------------------------------------------

/// Parameters of the synthetic AR(1) channel generator. Gains are in dB.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub num_bans: usize,
    pub duration_ms: u64,
    pub sample_period_ms: u64,
    pub intra_mean_db: f64,
    pub inter_mean_db: f64,
    pub shadowing_std_db: f64,
    /// Lag at which the autocorrelation equals `coherence_corr`.
    pub coherence_ms: f64,
    pub coherence_corr: f64,
    pub clamp_floor_dbm: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            num_bans: 10,
            duration_ms: 10 * 60 * 1000,
            sample_period_ms: DEFAULT_SAMPLE_PERIOD_MS,
            intra_mean_db: -60.0,
            inter_mean_db: -85.0,
            shadowing_std_db: 8.0,
            coherence_ms: 900.0,
            coherence_corr: 0.7,
            clamp_floor_dbm: DEFAULT_CLAMP_FLOOR_DBM,
        }
    }
}

impl SynthConfig {
    pub const KEYS: [&'static str; 9] = [
        "num_bans",
        "duration_ms",
        "sample_period_ms",
        "intra_mean_db",
        "inter_mean_db",
        "shadowing_std_db",
        "coherence_ms",
        "coherence_corr",
        "clamp_floor_dbm",
    ];

    /// Reads keys `<prefix>num_bans`, `<prefix>duration_ms`, ...; absent
    /// keys keep their defaults.
    pub fn from_kv(kv: &KvConfig, prefix: &str) -> Result<Self> {
        let d = Self::default();
        let k = |name: &str| format!("{prefix}{name}");
        let cfg = Self {
            num_bans: kv.get_or(&k("num_bans"), d.num_bans)?,
            duration_ms: kv.get_or(&k("duration_ms"), d.duration_ms)?,
            sample_period_ms: kv.get_or(&k("sample_period_ms"), d.sample_period_ms)?,
            intra_mean_db: kv.get_or(&k("intra_mean_db"), d.intra_mean_db)?,
            inter_mean_db: kv.get_or(&k("inter_mean_db"), d.inter_mean_db)?,
            shadowing_std_db: kv.get_or(&k("shadowing_std_db"), d.shadowing_std_db)?,
            coherence_ms: kv.get_or(&k("coherence_ms"), d.coherence_ms)?,
            coherence_corr: kv.get_or(&k("coherence_corr"), d.coherence_corr)?,
            clamp_floor_dbm: kv.get_or(&k("clamp_floor_dbm"), d.clamp_floor_dbm)?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn write_kv(&self, kv: &mut KvConfig, prefix: &str) {
        let k = |name: &str| format!("{prefix}{name}");
        kv.set(&k("num_bans"), self.num_bans);
        kv.set(&k("duration_ms"), self.duration_ms);
        kv.set(&k("sample_period_ms"), self.sample_period_ms);
        kv.set(&k("intra_mean_db"), self.intra_mean_db);
        kv.set(&k("inter_mean_db"), self.inter_mean_db);
        kv.set(&k("shadowing_std_db"), self.shadowing_std_db);
        kv.set(&k("coherence_ms"), self.coherence_ms);
        kv.set(&k("coherence_corr"), self.coherence_corr);
        kv.set(&k("clamp_floor_dbm"), self.clamp_floor_dbm);
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_bans < 2 {
            return Err(Error::config(format!(
                "synthetic trace needs at least 2 BANs, got {}",
                self.num_bans
            )));
        }
        if self.sample_period_ms == 0 {
            return Err(Error::config("sample_period_ms must be positive"));
        }
        if self.duration_ms < self.sample_period_ms {
            return Err(Error::config(format!(
                "duration_ms must cover at least one {} ms sample, got {}",
                self.sample_period_ms, self.duration_ms
            )));
        }
        if !(self.shadowing_std_db >= 0.0 && self.shadowing_std_db.is_finite()) {
            return Err(Error::config("shadowing_std_db must be finite and >= 0"));
        }
        if !(self.coherence_corr > 0.0 && self.coherence_corr < 1.0) || self.coherence_ms <= 0.0 {
            return Err(Error::config(
                "coherence_corr must lie in (0, 1) and coherence_ms be positive",
            ));
        }
        Ok(())
    }

    /// Per-sample AR(1) coefficient giving `coherence_corr` at `coherence_ms` lag.
    pub fn ar_coefficient(&self) -> f64 {
        self.coherence_corr
            .powf(self.sample_period_ms as f64 / self.coherence_ms)
    }
}

/// Generates a trace where each radio pair follows a stationary AR(1)
/// process in dB around its class mean (intra- or inter-BAN).
pub fn synthesize_trace(cfg: &SynthConfig, seed: u64) -> Result<ChannelTrace> {
    cfg.validate()?;
    let n_samples = (cfg.duration_ms / cfg.sample_period_ms) as usize;
    let rho = cfg.ar_coefficient();
    let innovation = cfg.shadowing_std_db * (1.0 - rho * rho).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = 0.0;
    ChannelTrace::from_pair_fn(cfg.num_bans, cfg.sample_period_ms, n_samples, |a, b, k| {
        let mean = if a.ban == b.ban {
            cfg.intra_mean_db
        } else {
            cfg.inter_mean_db
        };
        let z: f64 = StandardNormal.sample(&mut rng);
        state = if k == 0 {
            cfg.shadowing_std_db * z
        } else {
            rho * state + innovation * z
        };
        clamp_gain(mean + state, cfg.clamp_floor_dbm)
    })
}

// ---------------------------------------------------------------------------
// Windows
// ---------------------------------------------------------------------------

/// One estimation window: a contiguous block of trace samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TimestampWindow {
    pub index: usize,
    pub start_ms: u64,
    pub end_ms: u64,
    pub first_sample: usize,
    pub n_samples: usize,
}

impl TimestampWindow {
    pub fn sample_range(&self) -> Range<usize> {
        self.first_sample..self.first_sample + self.n_samples
    }

    pub fn link_samples<'a>(&self, trace: &'a ChannelTrace, link: LinkId) -> Result<&'a [f64]> {
        Ok(&trace.series(link)?[self.sample_range()])
    }
}

/// Tiles the trace with `window_ms` windows; a trailing partial window is dropped.
pub fn windows(trace: &ChannelTrace, window_ms: u64) -> Result<Vec<TimestampWindow>> {
    let period = trace.sample_period_ms();
    if window_ms == 0 || !window_ms.is_multiple_of(period) {
        return Err(Error::config(format!(
            "window of {window_ms} ms is not a positive multiple of the {period} ms grid"
        )));
    }
    let per_window = (window_ms / period) as usize;
    let count = trace.n_samples() / per_window;
    Ok((0..count)
        .map(|i| TimestampWindow {
            index: i,
            start_ms: i as u64 * window_ms,
            end_ms: (i as u64 + 1) * window_ms,
            first_sample: i * per_window,
            n_samples: per_window,
        })
        .collect())
}
