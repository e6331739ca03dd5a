//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any check fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use bbn_sim::channel::RadioId;
use bbn_sim::mac::{adapt_threshold, mpcs_permits, MacWindowStats, ThresholdController};
use bbn_sim::metrics::{sinr, spectral_efficiency, throughput, MetricsReport};
use bbn_sim::routing::{cmr, etx, spr, BranchSinr, NetworkGraph, RoutingStrategy, SprMetric};
use bbn_sim::sim::{self, ExperimentConfig, MacPolicy, TraceSource};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

type Check = fn() -> Option<Outcome>;

fn main() {
    let checks: Vec<(&str, u64, Check)> = vec![
        ("carrier sense vs brute-force max", 1, carrier_sense),
        ("threshold update branch table", 1, threshold_table),
        ("etx exact values and monotonicity", 1, etx_values),
        ("sinr vs linear-domain reference", 1, sinr_reference),
        ("spectral efficiency identity", 1, speff_identity),
        ("spr vs simple-path enumeration", 10, spr_oracle),
        ("cmr vs brute-force branch/path choice", 5, cmr_oracle),
        ("back-off: adaptive vs static -95 dBm", 60, backoff_claim),
        ("throughput: adaptive vs static -86 dBm and tdma", 120, throughput_claim),
        ("outage: static -86 dBm <= adaptive", 60, outage_claim),
        ("pdr: cmr >= spr on 5 seeds", 120, cmr_pdr_claim),
        ("cli run is byte-deterministic", 60, determinism),
        ("dataset replay ordering", 600, dataset_replay),
    ];
    let mut failed = 0;
    for (name, budget_s, check) in checks {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        match result {
            None => println!("SKIPPED {name}"),
            Some(o) => {
                let in_time = elapsed <= Duration::from_secs(budget_s);
                let pass = o.pass && in_time;
                if !pass {
                    failed += 1;
                }
                let timing = if in_time {
                    format!("{:.2}s", elapsed.as_secs_f64())
                } else {
                    format!("{:.2}s > {budget_s}s budget", elapsed.as_secs_f64())
                };
                println!("{} {name}: {} [{timing}]", if pass { "PASS" } else { "FAIL" }, o.detail);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance check(s) failed");
        std::process::exit(1);
    }
}

fn carrier_sense() -> Option<Outcome> {
    let oracle = |p: f64, gains: &[f64], th: f64| {
        let mut max = f64::NEG_INFINITY;
        for &g in gains {
            if p + g > max {
                max = p + g;
            }
        }
        max < th
    };
    let mut cases: Vec<(f64, Vec<f64>, f64)> = vec![
        (0.0, vec![-95.0, -88.0], -86.0),
        (0.0, vec![-95.0, -85.0], -86.0),
        (0.0, vec![], -86.0),
        (0.0, vec![], -200.0),
        (0.0, vec![-86.0], -86.0),
        (0.0, vec![-86.000001], -86.0),
        (0.0, vec![-90.0, -90.0, -90.0], -90.0),
        (0.0, vec![-91.0, -92.0, -89.5], -90.0),
        (-5.0, vec![-82.0], -86.0),
        (-5.0, vec![-80.0], -86.0),
        (3.0, vec![-100.0, -101.0], -96.0),
        (3.0, vec![-100.0, -98.0], -96.0),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    while cases.len() < 20 {
        let k = rng.random_range(0..6);
        let gains = (0..k).map(|_| rng.random_range(-105.0..-60.0)).collect();
        cases.push((rng.random_range(-10.0..5.0), gains, rng.random_range(-100.0..-70.0)));
    }
    let mismatches = cases
        .iter()
        .filter(|(p, g, th)| mpcs_permits(*p, g, *th) != oracle(*p, g, *th))
        .count();
    Some(outcome(mismatches == 0, format!("{} cases, {mismatches} mismatches", cases.len())))
}

fn threshold_table() -> Option<Outcome> {
    // 10000 pending slots so every ratio is an exact fraction of integers
    let stats = |bop: u64, icp_failures: u64| {
        let backoffs = bop * 100;
        let transmissions = 10_000 - backoffs;
        MacWindowStats {
            pending_slots: 10_000,
            backoffs,
            transmissions,
            successes: transmissions - icp_failures,
            failures: icp_failures,
        }
    };
    // (bop %, failures, expected step); failures give icp 0.5 / 0.51 / 0.6
    let table = [
        (49, 2550, 0.0),
        (49, 2601, -1.0),
        (50, 2500, 1.0),
        (50, 2550, 1.0),
        (50, 3000, 1.0),
        (40, 3600, -1.0),
    ];
    let mut bad = Vec::new();
    for (bop, fails, want) in table {
        let s = stats(bop, fails);
        let ctrl = ThresholdController::new(-90.0);
        let got = adapt_threshold(&ctrl, &s) + 90.0;
        if got != want {
            bad.push(format!("bop {} icp {:.2}: {got:+} want {want:+}", s.bop(), s.icp()));
        }
    }
    Some(outcome(bad.is_empty(), if bad.is_empty() { "6/6 rows".into() } else { bad.join("; ") }))
}

fn etx_values() -> Option<Outcome> {
    let e0 = etx(0.0).ok()?;
    let e5 = etx(0.5).ok()?;
    let e9 = etx(0.9).ok()?;
    // 0.9 is not representable; 1/(1 - fl(0.9)) rounds to 10 + 1 ulp
    let ulp_10 = f64::EPSILON * 8.0;
    let exact = e0 == 1.0 && e5 == 2.0 && (e9 - 10.0).abs() <= ulp_10;
    let mut monotone = true;
    let mut prev = etx(0.0).ok()?;
    for i in 1..10_000 {
        let e = etx(i as f64 / 10_000.0).ok()?;
        monotone &= e > prev;
        prev = e;
    }
    Some(outcome(
        exact && monotone,
        format!("etx(0)={e0} etx(0.5)={e5} etx(0.9)={e9:.17} monotone={monotone}"),
    ))
}

fn sinr_reference() -> Option<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let p_tx: f64 = rng.random_range(-10.0..5.0);
        let noise: f64 = rng.random_range(-110.0..-90.0);
        let signal: f64 = rng.random_range(-100.0..-40.0);
        let k = rng.random_range(0..8);
        let interferers: Vec<f64> = (0..k).map(|_| rng.random_range(-110.0..-50.0)).collect();
        // linear domain, watts
        let w = |dbm: f64| 1e-3 * 10f64.powf(dbm / 10.0);
        let denom = interferers.iter().map(|g| w(p_tx + g)).sum::<f64>() + w(noise);
        let want = 10.0 * (w(p_tx + signal) / denom).log10();
        let got = sinr(signal, &interferers, p_tx, noise);
        worst = worst.max(((got - want) / want).abs());
    }
    Some(outcome(worst <= 1e-9, format!("100 cases, worst relative error {worst:.2e}")))
}

fn speff_identity() -> Option<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let p = rng.random_range(0..1_000_000u64);
        let bits = rng.random_range(1..4096u32);
        let t: f64 = rng.random_range(1.0..10_000.0);
        let n = rng.random_range(1..20usize);
        let b: f64 = rng.random_range(1e3..1e8);
        let got = spectral_efficiency(throughput(p, bits, t).ok()?.bits_per_s, n, b).ok()?;
        let want = p as f64 * bits as f64 * n as f64 / (t * b);
        if want != 0.0 {
            worst = worst.max(((got - want) / want).abs());
        } else if got != 0.0 {
            worst = f64::INFINITY;
        }
    }
    // 273-bit packets on 1 MHz: 2700 packets in 2700 s over 10 channels
    let table = spectral_efficiency(throughput(2700, 273, 2700.0).ok()?.bits_per_s, 10, 1e6).ok()?;
    let table_ok = ((table - 2.73e-3) / 2.73e-3).abs() <= 1e-12;
    Some(outcome(
        worst <= 1e-12 && table_ok,
        format!("worst relative error {worst:.2e}; 273 bit / 1 MHz instance = {table}"),
    ))
}

fn random_graph(rng: &mut ChaCha8Rng) -> NetworkGraph {
    let n = rng.random_range(2..=6);
    let mut g = NetworkGraph::empty(n);
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.random_bool(0.6) {
                // coarse values so ties actually occur
                let e = 1.0 + rng.random_range(0..12) as f64 * 0.25;
                g.set_edge(a, b, e).expect("valid etx");
            }
        }
    }
    g
}

/// All simple paths from s to d with their ETX sums, summed hop by hop.
fn simple_paths(g: &NetworkGraph, s: usize, d: usize) -> Vec<(Vec<usize>, f64)> {
    fn walk(g: &NetworkGraph, path: &mut Vec<usize>, cost: f64, d: usize, out: &mut Vec<(Vec<usize>, f64)>) {
        let u = *path.last().unwrap();
        if u == d {
            out.push((path.clone(), cost));
            return;
        }
        for v in 0..g.num_vertices() {
            if path.contains(&v) {
                continue;
            }
            if let Some(w) = g.edge(u, v) {
                path.push(v);
                walk(g, path, cost + w, d, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(g, &mut vec![s], 0.0, d, &mut out);
    out
}

fn spr_oracle() -> Option<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut problems = Vec::new();
    let mut queries = 0;
    for gi in 0..200 {
        let g = random_graph(&mut rng);
        let n = g.num_vertices();
        let s = rng.random_range(0..n);
        let d = (s + rng.random_range(1..n)) % n;
        queries += 1;
        let paths = simple_paths(&g, s, d);

        let best = paths.iter().map(|p| p.1).min_by(f64::total_cmp);
        let got = spr(&g, s, d, SprMetric::EtxOnly).ok()?;
        if got.as_ref().map(|p| p.cost) != best {
            problems.push(format!("graph {gi}: EtxOnly {:?} vs {best:?}", got.map(|p| p.cost)));
        }

        let capped = paths
            .iter()
            .filter(|p| p.0.len() <= 3)
            .map(|p| p.1 + (p.0.len() - 1) as f64)
            .min_by(f64::total_cmp);
        let got = spr(&g, s, d, SprMetric::EtxPlusHopMax2).ok()?;
        if let Some(p) = &got {
            if p.hop_count() > 2 {
                problems.push(format!("graph {gi}: {} hops", p.hop_count()));
            }
        }
        if got.as_ref().map(|p| p.cost) != capped {
            problems.push(format!("graph {gi}: capped {:?} vs {capped:?}", got.map(|p| p.cost)));
        }
    }
    Some(outcome(
        problems.is_empty(),
        if problems.is_empty() {
            format!("{queries} graphs, both metrics match")
        } else {
            problems.join("; ")
        },
    ))
}

fn cmr_oracle() -> Option<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut problems = Vec::new();
    let mut routed = 0;
    for gi in 0..50 {
        let g = random_graph(&mut rng);
        let n = g.num_vertices();
        let s = rng.random_range(0..n);
        let d = (s + rng.random_range(1..n)) % n;
        let mut table = BranchSinr::filled(n, f64::NEG_INFINITY);
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    let mut v = [0.0; 3];
                    for x in &mut v {
                        *x = rng.random_range(-10..40) as f64;
                    }
                    table.set(a, b, v);
                }
            }
        }

        // candidates: direct and 2-hop paths by ETX sum + hops, ties by vertex order
        let mut cands: Vec<(f64, Vec<usize>)> = simple_paths(&g, s, d)
            .into_iter()
            .filter(|p| p.0.len() <= 3)
            .map(|(v, c)| (c + (v.len() - 1) as f64, v))
            .collect();
        cands.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        let want = cands.first().map(|(_, p1)| {
            let relays = |p: &[usize]| p[1..p.len() - 1].to_vec();
            let p2 = cands
                .iter()
                .skip(1)
                .map(|c| &c.1)
                .find(|p| relays(p).iter().all(|r| !relays(p1).contains(r)));
            let score = |p: &[usize]| {
                p.windows(2)
                    .map(|h| {
                        let b = table.get(h[0], h[1]);
                        b[0].max(b[1]).max(b[2])
                    })
                    .fold(f64::INFINITY, f64::min)
            };
            match p2 {
                Some(p2) => score(p1).max(score(p2)),
                None => score(p1),
            }
        });

        let plan = cmr(&g, s, d, &table).ok()?;
        let got = plan.as_ref().and_then(|p| p.combined_metric_db);
        if plan.is_some() {
            routed += 1;
        }
        if got != want {
            problems.push(format!("instance {gi}: {got:?} vs {want:?}"));
        }
        if let Some(p) = &plan {
            let hub_ok = p
                .hop_branches
                .iter()
                .zip(p.delivered_path().hops())
                .all(|(r, (_, v)): (&RadioId, _)| r.ban == v);
            if !hub_ok {
                problems.push(format!("instance {gi}: branch radios off path"));
            }
        }
    }
    Some(outcome(
        problems.is_empty(),
        if problems.is_empty() {
            format!("50 instances ({routed} routable) match")
        } else {
            problems.join("; ")
        },
    ))
}

fn base() -> ExperimentConfig {
    ExperimentConfig::default()
}

fn run_all(configs: &[ExperimentConfig]) -> Option<Vec<MetricsReport>> {
    let trace = sim::resolve_trace(&configs[0]).ok()?;
    use rayon::prelude::*;
    configs
        .par_iter()
        .map(|c| sim::simulate(c, &trace).ok())
        .collect()
}

fn with(policy: MacPolicy, rate: f64) -> ExperimentConfig {
    ExperimentConfig {
        policy,
        arrival_rate: rate,
        ..base()
    }
}

fn static_at(th: f64) -> MacPolicy {
    MacPolicy::StaticCsma { threshold_dbm: th }
}

fn tdma() -> MacPolicy {
    MacPolicy::Tdma {
        duty_cycle: 1.0 / 12.0,
        coordinated: vec![0, 1, 2, 3],
    }
}

fn backoff_claim() -> Option<Outcome> {
    let r = run_all(&[with(MacPolicy::AdaptiveCsma, 1.0), with(static_at(-95.0), 1.0)])?;
    let (a, s) = (&r[0], &r[1]);
    let (am, sm) = (a.backoff.mean_ms?, s.backoff.mean_ms?);
    let pass = am < sm && a.backoff_fraction_over_3s == 0.0 && s.backoff_fraction_over_3s > 0.0;
    Some(outcome(
        pass,
        format!(
            "mean {am:.0} ms vs {sm:.0} ms; runs > 3 s: adaptive {:.4} ({} of {}), static {:.4}",
            a.backoff_fraction_over_3s,
            (a.backoff_fraction_over_3s * a.backoff.total_runs as f64).round(),
            a.backoff.total_runs,
            s.backoff_fraction_over_3s
        ),
    ))
}

fn throughput_claim() -> Option<Outcome> {
    let rates = [1.0, 2.0, 4.0, 8.0];
    let mut configs = Vec::new();
    for &r in &rates {
        configs.push(with(MacPolicy::AdaptiveCsma, r));
        configs.push(with(static_at(-86.0), r));
    }
    configs.push(with(tdma(), 8.0));
    let r = run_all(&configs)?;
    let mut pass = true;
    let mut parts = Vec::new();
    for (i, rate) in rates.iter().enumerate() {
        let (a, s) = (r[2 * i].throughput_pkts_per_s, r[2 * i + 1].throughput_pkts_per_s);
        pass &= a >= s;
        parts.push(format!("@{rate}: {a:.3} vs {s:.3}"));
    }
    let (a8, t8) = (r[6].throughput_pkts_per_s, r[8].throughput_pkts_per_s);
    pass &= a8 >= t8;
    parts.push(format!("tdma@8: {t8:.3}"));
    Some(outcome(pass, parts.join(", ")))
}

fn outage_claim() -> Option<Outcome> {
    let r = run_all(&[with(MacPolicy::AdaptiveCsma, 1.0), with(static_at(-86.0), 1.0)])?;
    let mut pass = true;
    let mut parts = Vec::new();
    for (a, s) in r[0].outage.iter().zip(&r[1].outage) {
        if ![5.0, 10.0, 15.0, 20.0].contains(&a.gamma_th_db) {
            continue;
        }
        let (Some(pa), Some(ps)) = (a.probability, s.probability) else {
            pass = false;
            parts.push(format!("{} dB: undefined", a.gamma_th_db));
            continue;
        };
        pass &= ps <= pa;
        parts.push(format!("{} dB: {ps:.3} <= {pa:.3}", a.gamma_th_db));
    }
    Some(outcome(pass && parts.len() == 4, parts.join(", ")))
}

fn cmr_pdr_claim() -> Option<Outcome> {
    use rayon::prelude::*;
    let per_seed: Vec<Option<(bool, String)>> = (1..=5u64)
        .into_par_iter()
        .map(|seed| {
            let cfg = ExperimentConfig { seed, ..base() };
            let trace = sim::resolve_trace(&cfg).ok()?;
            let spr = sim::run_on_trace(
                &ExperimentConfig {
                    routing: RoutingStrategy::SprEtx2Hop,
                    ..cfg.clone()
                },
                &trace,
            )
            .ok()?;
            let cmr = sim::run_on_trace(
                &ExperimentConfig {
                    routing: RoutingStrategy::Cmr,
                    ..cfg
                },
                &trace,
            )
            .ok()?;
            let ok = spr.sensitivity.len() == cmr.sensitivity.len()
                && spr.sensitivity.iter().zip(&cmr.sensitivity).all(|(s, c)| c.pdr >= s.pdr);
            let worst = spr
                .sensitivity
                .iter()
                .zip(&cmr.sensitivity)
                .map(|(s, c)| c.pdr - s.pdr)
                .fold(f64::INFINITY, f64::min);
            Some((ok, format!("seed {seed} min margin {worst:+.3}")))
        })
        .collect();
    let per_seed: Option<Vec<_>> = per_seed.into_iter().collect();
    let per_seed = per_seed?;
    let pass = per_seed.iter().all(|(ok, _)| *ok);
    Some(outcome(pass, per_seed.into_iter().map(|(_, s)| s).collect::<Vec<_>>().join(", ")))
}

fn run_cli(config: &Path, out: &Path) -> bool {
    Command::new(env!("CARGO_BIN_EXE_bbn-sim"))
        .arg("run")
        .arg("--config")
        .arg(config)
        .arg("--out")
        .arg(out)
        .arg("--quiet")
        .status()
        .map(|s| s.success())
        .unwrap_or(false)
}

fn determinism() -> Option<Outcome> {
    let dir = tempfile::tempdir().ok()?;
    let config = dir.path().join("c.cfg");
    std::fs::write(&config, "seed = 3\nmac.policy = adaptive\nrouting.strategy = cmr\ntraffic.arrival_rate = 2\n").ok()?;
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    if !(run_cli(&config, &a) && run_cli(&config, &b)) {
        return Some(outcome(false, "cli run failed"));
    }
    let mut differing = Vec::new();
    for name in bbn_sim::cli::OUTPUT_FILES {
        let x = std::fs::read(a.join(name)).ok()?;
        let y = std::fs::read(b.join(name)).ok()?;
        if x != y {
            differing.push(name);
        }
    }
    Some(outcome(
        differing.is_empty(),
        if differing.is_empty() {
            format!("{} files identical", bbn_sim::cli::OUTPUT_FILES.len())
        } else {
            format!("differ: {differing:?}")
        },
    ))
}

fn dataset_replay() -> Option<Outcome> {
    let path = std::env::var_os("BBN_DATASET_CSV")?;
    let cfg = ExperimentConfig {
        trace: TraceSource::File(path.into()),
        ..base()
    };
    let trace = match sim::resolve_trace(&cfg) {
        Ok(t) => t,
        Err(e) => return Some(outcome(false, format!("ingest failed: {e}"))),
    };
    let run = |policy: MacPolicy| {
        sim::simulate(
            &ExperimentConfig {
                policy,
                ..cfg.clone()
            },
            &trace,
        )
    };
    let (a, s95, s86) = match (run(MacPolicy::AdaptiveCsma), run(static_at(-95.0)), run(static_at(-86.0))) {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        _ => return Some(outcome(false, "simulation failed")),
    };
    let am = a.backoff.mean_ms.unwrap_or(0.0);
    let sm = s95.backoff.mean_ms.unwrap_or(0.0);
    let pass = am < 250.0 && sm > 1000.0 && a.throughput_pkts_per_s >= 1.5 * s86.throughput_pkts_per_s;
    Some(outcome(
        pass,
        format!(
            "adaptive mean {am:.0} ms, static -95 mean {sm:.0} ms, throughput {:.3} vs static -86 {:.3}",
            a.throughput_pkts_per_s, s86.throughput_pkts_per_s
        ),
    ))
}
