//! Statistics of the synthetic channel over 45-minute traces.

use bbn_sim::channel::{synthesize_trace, Device, LinkId, RadioId, SynthConfig};

fn long_trace() -> (SynthConfig, bbn_sim::channel::ChannelTrace) {
    let cfg = SynthConfig {
        num_bans: 2,
        duration_ms: 45 * 60 * 1000,
        ..SynthConfig::default()
    };
    let trace = synthesize_trace(&cfg, 2024).unwrap();
    (cfg, trace)
}

fn intra_links() -> Vec<LinkId> {
    let mut out = Vec::new();
    for ban in 0..2 {
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            out.push(LinkId::new(RadioId::new(ban, Device::ALL[a]), RadioId::new(ban, Device::ALL[b])).unwrap());
        }
    }
    out
}

fn mean_std(x: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let m = x.iter().sum::<f64>() / n;
    let v = x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, v.sqrt())
}

fn autocorr(x: &[f64], lag: usize) -> f64 {
    let (m, _) = mean_std(x);
    let num: f64 = x.iter().zip(&x[lag..]).map(|(a, b)| (a - m) * (b - m)).sum();
    let den: f64 = x.iter().map(|a| (a - m).powi(2)).sum();
    num / den
}

#[test]
fn coherence_lag_autocorrelation_near_target() {
    let (cfg, trace) = long_trace();
    // 900 ms coherence on a 50 ms grid
    let lag = (cfg.coherence_ms / cfg.sample_period_ms as f64) as usize;
    assert_eq!(lag, 18);
    let links = intra_links();
    let per_link: Vec<f64> = links.iter().map(|l| autocorr(trace.series(*l).unwrap(), lag)).collect();
    let avg = per_link.iter().sum::<f64>() / per_link.len() as f64;
    assert!((avg - 0.7).abs() <= 0.05, "lag-18 autocorrelation {avg} ({per_link:?})");
}

#[test]
fn mean_and_std_within_three_standard_errors() {
    let (cfg, trace) = long_trace();
    let rho = cfg.ar_coefficient();
    for link in intra_links() {
        let x = trace.series(link).unwrap();
        let n = x.len() as f64;
        let (m, s) = mean_std(x);
        // AR(1) inflates the variance of both estimators
        let se_mean = cfg.shadowing_std_db * ((1.0 + rho) / (1.0 - rho) / n).sqrt();
        let se_std = cfg.shadowing_std_db / (2.0 * n).sqrt() * ((1.0 + rho * rho) / (1.0 - rho * rho)).sqrt();
        assert!((m - cfg.intra_mean_db).abs() <= 3.0 * se_mean, "{link}: mean {m}, se {se_mean}");
        assert!((s - cfg.shadowing_std_db).abs() <= 3.0 * se_std, "{link}: std {s}, se {se_std}");
    }
}

#[test]
fn inter_ban_links_sit_near_their_class_mean() {
    let (cfg, trace) = long_trace();
    let link = LinkId::new(RadioId::hub(0), RadioId::hub(1)).unwrap();
    let (m, _) = mean_std(trace.series(link).unwrap());
    assert!((m - cfg.inter_mean_db).abs() < 2.0, "inter mean {m}");
}
