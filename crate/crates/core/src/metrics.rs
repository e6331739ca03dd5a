//! Link and run metrics.
//!
//! All power arithmetic happens in linear milliwatts; results are reported
//! in dB.

use crate::error::{Error, Result};

/// A power level in dBm.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DbmPower(pub f64);

impl DbmPower {
    pub fn from_mw(mw: f64) -> Self {
        DbmPower(10.0 * mw.log10())
    }

    pub fn mw(self) -> f64 {
        10f64.powf(self.0 / 10.0)
    }

    pub fn dbm(self) -> f64 {
        self.0
    }
}

/// SINR in dB of a signal received over `signal_gain_db` against the sum of
/// interferers (all transmitting at `p_tx_dbm`) plus noise.
pub fn sinr(signal_gain_db: f64, interferer_gains_db: &[f64], p_tx_dbm: f64, noise_dbm: f64) -> f64 {
    let signal = DbmPower(p_tx_dbm + signal_gain_db).mw();
    let interference: f64 = interferer_gains_db
        .iter()
        .map(|g| DbmPower(p_tx_dbm + g).mw())
        .sum();
    10.0 * (signal / (interference + DbmPower(noise_dbm).mw())).log10()
}

/// Fraction of samples strictly below `gamma_th_db`.
pub fn outage_probability(sinr_series_db: &[f64], gamma_th_db: f64) -> Result<f64> {
    if sinr_series_db.is_empty() {
        return Err(Error::Undefined("outage of an empty SINR series".into()));
    }
    let below = sinr_series_db.iter().filter(|&&s| s < gamma_th_db).count();
    Ok(below as f64 / sinr_series_db.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Throughput {
    pub pkts_per_s: f64,
    pub bits_per_s: f64,
}

pub fn throughput(successful_packets: u64, packet_bits: u32, total_time_s: f64) -> Result<Throughput> {
    if !(total_time_s > 0.0) {
        return Err(Error::Domain(format!(
            "throughput over non-positive time {total_time_s} s"
        )));
    }
    let p = successful_packets as f64;
    Ok(Throughput {
        pkts_per_s: p / total_time_s,
        bits_per_s: p * packet_bits as f64 / total_time_s,
    })
}

/// Aggregate spectral efficiency: single-channel throughput times the
/// number of actively routed channels, over the bandwidth.
pub fn spectral_efficiency(throughput_bps: f64, n_active_channels: usize, bandwidth_hz: f64) -> Result<f64> {
    if !(bandwidth_hz > 0.0) {
        return Err(Error::Domain(format!("bandwidth must be positive, got {bandwidth_hz}")));
    }
    Ok(throughput_bps * n_active_channels as f64 / bandwidth_hz)
}

/// Packet delivery ratio; 1 when nothing was sent.
pub fn pdr(delivered: u64, sent: u64) -> Result<f64> {
    if delivered > sent {
        return Err(Error::Accounting(format!(
            "{delivered} packets delivered but only {sent} sent"
        )));
    }
    if sent == 0 {
        return Ok(1.0);
    }
    Ok(delivered as f64 / sent as f64)
}

/// Continuous back-off histogram over `[edge_k, edge_k+1)` bins plus an
/// overflow bin for durations at or beyond the last edge.
#[derive(Debug, Clone, PartialEq)]
pub struct BackoffHistogram {
    pub edges_ms: Vec<f64>,
    /// `edges_ms.len() - 1` regular bins followed by the overflow bin.
    pub counts: Vec<u64>,
    /// Summed duration per bin.
    pub time_ms: Vec<f64>,
    pub pct_runs: Vec<f64>,
    pub pct_time: Vec<f64>,
    /// `None` when there are no back-off runs.
    pub mean_ms: Option<f64>,
    pub total_runs: u64,
}

impl BackoffHistogram {
    pub fn is_empty(&self) -> bool {
        self.total_runs == 0
    }

    /// `(lo, hi)` for bin `i`; the overflow bin has `hi = inf`.
    pub fn bin_bounds(&self, i: usize) -> (f64, f64) {
        let n = self.edges_ms.len();
        if i + 1 < n {
            (self.edges_ms[i], self.edges_ms[i + 1])
        } else {
            (self.edges_ms[n - 1], f64::INFINITY)
        }
    }
}

/// Bins back-off run durations. Percentages of time are relative to
/// `measured_time_ms`, the total observed source time.
pub fn backoff_histogram(durations_ms: &[f64], bin_edges_ms: &[f64], measured_time_ms: f64) -> Result<BackoffHistogram> {
    if bin_edges_ms.len() < 2 || bin_edges_ms.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Domain("bin edges must be at least two strictly increasing values".into()));
    }
    let nbins = bin_edges_ms.len();
    let mut counts = vec![0u64; nbins];
    let mut time_ms = vec![0.0; nbins];
    for &d in durations_ms {
        if d < bin_edges_ms[0] {
            return Err(Error::Domain(format!(
                "duration {d} ms below the first bin edge {}",
                bin_edges_ms[0]
            )));
        }
        // first edge strictly greater than d, minus one
        let bin = bin_edges_ms.partition_point(|&e| e <= d) - 1;
        counts[bin] += 1;
        time_ms[bin] += d;
    }
    let total_runs = durations_ms.len() as u64;
    let pct_runs = counts
        .iter()
        .map(|&c| if total_runs == 0 { 0.0 } else { 100.0 * c as f64 / total_runs as f64 })
        .collect();
    let pct_time = time_ms
        .iter()
        .map(|&t| if measured_time_ms > 0.0 { 100.0 * t / measured_time_ms } else { 0.0 })
        .collect();
    let mean_ms = (total_runs > 0).then(|| durations_ms.iter().sum::<f64>() / total_runs as f64);
    Ok(BackoffHistogram {
        edges_ms: bin_edges_ms.to_vec(),
        counts,
        time_ms,
        pct_runs,
        pct_time,
        mean_ms,
        total_runs,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutagePoint {
    pub gamma_th_db: f64,
    /// `None` when no transmission was observed.
    pub probability: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SensitivityPoint {
    pub rx_sensitivity_dbm: f64,
    pub pdr: f64,
    pub throughput_pkts_per_s: f64,
    /// Single-channel throughput times active channels over bandwidth.
    pub spectral_efficiency: f64,
    /// Sum of per-channel throughputs over bandwidth.
    pub spectral_efficiency_sum: f64,
}

/// Aggregated results of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub policy: String,
    pub routing: String,
    /// Configured per-source arrival rate.
    pub arrival_rate_cfg: f64,
    /// Measured per-source arrival rate.
    pub packet_arrival_rate_pkts_per_s: f64,
    pub throughput_pkts_per_s: f64,
    pub throughput_bps: f64,
    pub generated: u64,
    pub delivered: u64,
    pub dropped: u64,
    pub transmissions: u64,
    pub successful_transmissions: u64,
    pub pdr: f64,
    pub backoff: BackoffHistogram,
    pub backoff_fraction_over_3s: f64,
    pub outage: Vec<OutagePoint>,
    pub sensitivity: Vec<SensitivityPoint>,
    pub spectral_efficiency_bps_per_hz: f64,
    pub spectral_efficiency_sum_bps_per_hz: f64,
    pub n_active_channels: usize,
    pub measured_sources: usize,
    pub total_time_s: f64,
    /// Carrier-sense threshold in force per window, per BAN.
    pub threshold_history: Vec<Vec<f64>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sinr_examples() {
        assert!((sinr(-60.0, &[], 0.0, -100.0) - 40.0).abs() < 1e-12);
        let want = 10.0 * (1e-6f64 / (1e-9 + 1e-10)).log10();
        assert!((sinr(-60.0, &[-90.0], 0.0, -100.0) - want).abs() < 1e-12);
        assert!((want - 29.586).abs() < 1e-3);
        assert!(sinr(-60.0, &[-60.0], 0.0, -200.0).abs() < 1e-9);
    }

    #[test]
    fn outage_examples() {
        assert_eq!(outage_probability(&[20.0, 30.0], 10.0).unwrap(), 0.0);
        assert_eq!(outage_probability(&[5.0, 15.0], 10.0).unwrap(), 0.5);
        assert_eq!(outage_probability(&[5.0, 15.0], f64::NEG_INFINITY).unwrap(), 0.0);
        assert_eq!(outage_probability(&[5.0, 15.0], f64::INFINITY).unwrap(), 1.0);
        // strict comparison
        assert_eq!(outage_probability(&[10.0], 10.0).unwrap(), 0.0);
        assert!(matches!(outage_probability(&[], 1.0), Err(Error::Undefined(_))));
    }

    #[test]
    fn throughput_examples() {
        let t = throughput(2700, 273, 2700.0).unwrap();
        assert_eq!(t.pkts_per_s, 1.0);
        assert_eq!(t.bits_per_s, 273.0);
        assert_eq!(throughput(0, 273, 10.0).unwrap().bits_per_s, 0.0);
        assert!(throughput(1, 273, 0.0).is_err());
        // data-rate ceiling in packets
        let ceiling: f64 = 486_000.0 / 273.0;
        assert!((ceiling - 1780.2).abs() < 0.05);
    }

    #[test]
    fn spectral_efficiency_examples() {
        assert!((spectral_efficiency(273.0, 10, 1e6).unwrap() - 0.00273).abs() < 1e-15);
        assert_eq!(spectral_efficiency(273.0, 0, 1e6).unwrap(), 0.0);
        let one = spectral_efficiency(500.0, 3, 1e6).unwrap();
        let two = spectral_efficiency(500.0, 6, 1e6).unwrap();
        assert_eq!(two, 2.0 * one);
        assert!(spectral_efficiency(1.0, 1, 0.0).is_err());
    }

    #[test]
    fn pdr_examples() {
        assert_eq!(pdr(90, 100).unwrap(), 0.9);
        assert_eq!(pdr(0, 100).unwrap(), 0.0);
        assert_eq!(pdr(100, 100).unwrap(), 1.0);
        assert_eq!(pdr(0, 0).unwrap(), 1.0);
        assert!(matches!(pdr(2, 1), Err(Error::Accounting(_))));
    }

    #[test]
    fn histogram_examples() {
        let h = backoff_histogram(&[100.0, 100.0, 50.0], &[0.0, 75.0, 150.0], 1000.0).unwrap();
        assert_eq!(h.counts, vec![1, 2, 0]);
        assert!((h.mean_ms.unwrap() - 250.0 / 3.0).abs() < 1e-12);
        assert_eq!(h.pct_time, vec![5.0, 20.0, 0.0]);

        let empty = backoff_histogram(&[], &[0.0, 75.0, 150.0], 1000.0).unwrap();
        assert!(empty.counts.iter().all(|&c| c == 0));
        assert_eq!(empty.mean_ms, None);
        assert!(empty.is_empty());

        let big = backoff_histogram(&[1e6], &[0.0, 1000.0, 3000.0], 2.7e6).unwrap();
        assert_eq!(big.counts, vec![0, 0, 1]);
        assert_eq!(big.mean_ms, Some(1e6));
        assert_eq!(big.bin_bounds(2), (3000.0, f64::INFINITY));

        assert!(backoff_histogram(&[1.0], &[0.0, 0.0], 1.0).is_err());
    }

    proptest! {
        #[test]
        fn dbm_round_trip(v in -150.0f64..50.0) {
            let back = DbmPower::from_mw(DbmPower(v).mw()).dbm();
            prop_assert!((back - v).abs() <= 1e-12 * v.abs().max(1.0));
        }

        #[test]
        fn sinr_drops_as_interference_grows(sig in -90.0f64..-40.0, others in proptest::collection::vec(-110.0f64..-50.0, 0..5), g in -110.0f64..-50.0, bump in 0.1f64..20.0) {
            let mut base = others.clone();
            base.push(g);
            let mut louder = others;
            louder.push(g + bump);
            prop_assert!(sinr(sig, &louder, 0.0, -100.0) < sinr(sig, &base, 0.0, -100.0));
        }

        #[test]
        fn outage_monotone_and_counted(series in proptest::collection::vec(-20.0f64..40.0, 1..50), a in -30.0f64..50.0, b in -30.0f64..50.0) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let p_lo = outage_probability(&series, lo).unwrap();
            let p_hi = outage_probability(&series, hi).unwrap();
            prop_assert!(p_lo <= p_hi);
            let brute = series.iter().filter(|&&s| s < hi).count() as f64 / series.len() as f64;
            prop_assert_eq!(p_hi, brute);
        }

        #[test]
        fn histogram_counts_sum(durs in proptest::collection::vec(0.0f64..5000.0, 0..60)) {
            let h = backoff_histogram(&durs, &[0.0, 100.0, 1000.0, 3000.0], 1e6).unwrap();
            prop_assert_eq!(h.counts.iter().sum::<u64>(), durs.len() as u64);
        }
    }
}
