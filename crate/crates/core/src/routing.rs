//! Hub-tier routing.
//!
//! Each window gets a fresh [`NetworkGraph`] whose edge costs are expected
//! transmission counts derived from the previous window's link outage. Routes
//! are either plain shortest paths over ETX, shortest paths over ETX plus hop
//! count restricted to two hops, or cooperative multi-path plans that pick
//! between two disjoint paths using per-hop selection combining.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;

use rand::distr::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::channel::{Device, RadioId};
use crate::error::{Error, Result};

/// Expected transmission count for a link with the given outage.
///
/// An outage of exactly 1 yields `f64::INFINITY`: the link is unusable and
/// is left out of graphs.
pub fn etx(outage: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&outage) {
        return Err(Error::Domain(format!("outage {outage} outside [0, 1]")));
    }
    if outage == 1.0 {
        return Ok(f64::INFINITY);
    }
    Ok(1.0 / (1.0 - outage))
}

/// Directed graph over BAN hubs, indexed by BAN.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkGraph {
    n: usize,
    etx: Vec<Option<f64>>,
    outage: Vec<Option<f64>>,
}

impl NetworkGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            etx: vec![None; n * n],
            outage: vec![None; n * n],
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    /// Sets an edge cost directly. Costs must be finite and non-negative;
    /// graphs built from outage always have costs >= 1.
    pub fn set_edge(&mut self, from: usize, to: usize, etx: f64) -> Result<()> {
        self.check_vertex(from)?;
        self.check_vertex(to)?;
        if from == to || !(etx >= 0.0 && etx.is_finite()) {
            return Err(Error::Domain(format!("bad edge {from}->{to} with cost {etx}")));
        }
        self.etx[from * self.n + to] = Some(etx);
        self.outage[from * self.n + to] = None;
        Ok(())
    }

    pub fn remove_edge(&mut self, from: usize, to: usize) {
        if from < self.n && to < self.n {
            self.etx[from * self.n + to] = None;
            self.outage[from * self.n + to] = None;
        }
    }

    pub fn edge(&self, from: usize, to: usize) -> Option<f64> {
        if from >= self.n || to >= self.n {
            return None;
        }
        self.etx[from * self.n + to]
    }

    pub fn outage(&self, from: usize, to: usize) -> Option<f64> {
        if from >= self.n || to >= self.n {
            return None;
        }
        self.outage[from * self.n + to]
    }

    /// Drops every edge touching a vertex for which `keep` is false.
    pub fn retain_vertices(&mut self, keep: &[bool]) {
        for u in 0..self.n {
            for v in 0..self.n {
                if !keep.get(u).copied().unwrap_or(false) || !keep.get(v).copied().unwrap_or(false) {
                    self.remove_edge(u, v);
                }
            }
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |u| {
            (0..self.n).filter_map(move |v| self.edge(u, v).map(|c| (u, v, c)))
        })
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::Topology(format!(
                "hub {v} not in a graph of {} hubs",
                self.n
            )));
        }
        Ok(())
    }

    fn path_cost(&self, vertices: &[usize]) -> Option<f64> {
        vertices
            .windows(2)
            .try_fold(0.0, |acc, w| self.edge(w[0], w[1]).map(|c| acc + c))
    }
}

/// Builds the graph for the next window from per-link outage estimates.
///
/// `outage` is row-major `n x n` (`outage[from * n + to]`); the diagonal and
/// NaN entries are ignored, and links with outage 1 are omitted.
pub fn build_graph(outage: &[f64], num_bans: usize) -> Result<NetworkGraph> {
    if outage.len() != num_bans * num_bans {
        return Err(Error::Domain(format!(
            "outage matrix has {} entries, expected {}",
            outage.len(),
            num_bans * num_bans
        )));
    }
    let mut g = NetworkGraph::empty(num_bans);
    for u in 0..num_bans {
        for v in 0..num_bans {
            let o = outage[u * num_bans + v];
            if u == v || o.is_nan() {
                continue;
            }
            let cost = etx(o)?;
            if cost.is_finite() {
                g.etx[u * num_bans + v] = Some(cost);
                g.outage[u * num_bans + v] = Some(o);
            }
        }
    }
    Ok(g)
}

/// Range of the random ETX values used before any measurement exists.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitEtx {
    pub min: f64,
    pub max: f64,
}

impl Default for InitEtx {
    fn default() -> Self {
        Self { min: 1.0, max: 8.0 }
    }
}

/// Bootstrap graph: every edge gets an independent ETX drawn uniformly from
/// `[min, max)` (constant `min` when the range is empty).
pub fn init_graph(num_bans: usize, seed: u64, range: InitEtx) -> Result<NetworkGraph> {
    if !(range.min >= 1.0 && range.max >= range.min && range.max.is_finite()) {
        return Err(Error::config(format!(
            "initial ETX range [{}, {}) must satisfy 1 <= min <= max < inf",
            range.min, range.max
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dist = (range.max > range.min)
        .then(|| Uniform::new(range.min, range.max))
        .transpose()
        .map_err(|e| Error::config(format!("initial ETX range: {e}")))?;
    let mut g = NetworkGraph::empty(num_bans);
    for u in 0..num_bans {
        for v in 0..num_bans {
            if u != v {
                let c = dist.as_ref().map_or(range.min, |d| d.sample(&mut rng));
                g.etx[u * num_bans + v] = Some(c);
            }
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SprMetric {
    EtxOnly,
    EtxPlusHopMax2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    pub vertices: Vec<usize>,
    /// ETX sum, plus hop count under [`SprMetric::EtxPlusHopMax2`].
    pub cost: f64,
}

impl Path {
    pub fn hop_count(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn source(&self) -> usize {
        self.vertices[0]
    }

    pub fn destination(&self) -> usize {
        self.vertices[self.vertices.len() - 1]
    }

    pub fn next_hop(&self) -> usize {
        self.vertices[1]
    }

    pub fn intermediates(&self) -> &[usize] {
        let n = self.vertices.len();
        if n <= 2 {
            &[]
        } else {
            &self.vertices[1..n - 1]
        }
    }

    pub fn hops(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }
}

#[derive(Debug, PartialEq)]
struct Frontier {
    cost: f64,
    vertices: Vec<usize>,
}

impl Eq for Frontier {}

impl Ord for Frontier {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cost
            .total_cmp(&other.cost)
            .then_with(|| self.vertices.cmp(&other.vertices))
    }
}

impl PartialOrd for Frontier {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn check_pair(g: &NetworkGraph, s: usize, d: usize) -> Result<()> {
    g.check_vertex(s)?;
    g.check_vertex(d)?;
    if s == d {
        return Err(Error::Domain(format!("route from hub {s} to itself")));
    }
    Ok(())
}

/// Shortest path from `s` to `d`; `Ok(None)` when `d` is unreachable.
///
/// Ties on cost go to the lexicographically smallest vertex sequence.
pub fn spr(g: &NetworkGraph, s: usize, d: usize, metric: SprMetric) -> Result<Option<Path>> {
    check_pair(g, s, d)?;
    Ok(match metric {
        SprMetric::EtxOnly => dijkstra(g, s, d),
        SprMetric::EtxPlusHopMax2 => two_hop_candidates(g, s, d).into_iter().next(),
    })
}

fn dijkstra(g: &NetworkGraph, s: usize, d: usize) -> Option<Path> {
    let mut settled = vec![false; g.n];
    let mut heap = BinaryHeap::new();
    heap.push(Reverse(Frontier {
        cost: 0.0,
        vertices: vec![s],
    }));
    while let Some(Reverse(Frontier { cost, vertices })) = heap.pop() {
        let u = *vertices.last().expect("frontier paths are non-empty");
        if settled[u] {
            continue;
        }
        settled[u] = true;
        if u == d {
            return Some(Path { vertices, cost });
        }
        for (v, &done) in settled.iter().enumerate() {
            if done {
                continue;
            }
            if let Some(w) = g.edge(u, v) {
                let mut next = vertices.clone();
                next.push(v);
                heap.push(Reverse(Frontier {
                    cost: cost + w,
                    vertices: next,
                }));
            }
        }
    }
    None
}

/// Direct and two-hop paths from `s` to `d`, scored by ETX sum plus hop
/// count and sorted best first.
fn two_hop_candidates(g: &NetworkGraph, s: usize, d: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut push = |vertices: Vec<usize>| {
        if let Some(etx_sum) = g.path_cost(&vertices) {
            let hops = (vertices.len() - 1) as f64;
            out.push(Path {
                vertices,
                cost: etx_sum + hops,
            });
        }
    };
    push(vec![s, d]);
    for r in (0..g.n).filter(|&r| r != s && r != d) {
        push(vec![s, r, d]);
    }
    out.sort_by(|a, b| {
        a.cost
            .total_cmp(&b.cost)
            .then_with(|| a.vertices.cmp(&b.vertices))
    });
    out
}

/// Selection combining over three branches: the largest SINR and its index,
/// lowest index on ties. NaN counts as an absent branch.
pub fn select_combine(branch_sinrs_db: [f64; 3]) -> (f64, usize) {
    let mut best = (f64::NEG_INFINITY, 0);
    for (i, &v) in branch_sinrs_db.iter().enumerate() {
        if v > best.0 {
            best = (v, i);
        }
    }
    best
}

/// Per-link, per-branch SINR estimates: for transmitting hub `tx` and
/// receiving BAN `rx`, the SINR at the BAN's hub, sensor A and sensor B.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchSinr {
    n: usize,
    values: Vec<[f64; 3]>,
}

impl BranchSinr {
    pub fn filled(n: usize, value_db: f64) -> Self {
        Self {
            n,
            values: vec![[value_db; 3]; n * n],
        }
    }

    pub fn num_bans(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, tx: usize, rx: usize, branches: [f64; 3]) {
        self.values[tx * self.n + rx] = branches;
    }

    pub fn get(&self, tx: usize, rx: usize) -> [f64; 3] {
        self.values[tx * self.n + rx]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RoutingStrategy {
    SprEtx,
    SprEtx2Hop,
    Cmr,
}

impl RoutingStrategy {
    pub fn as_str(self) -> &'static str {
        match self {
            RoutingStrategy::SprEtx => "spr_etx",
            RoutingStrategy::SprEtx2Hop => "spr_etx_2hop",
            RoutingStrategy::Cmr => "cmr",
        }
    }

    /// Whether receivers combine all three radios of the BAN.
    pub fn uses_diversity(self) -> bool {
        self == RoutingStrategy::Cmr
    }
}

impl fmt::Display for RoutingStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RoutingStrategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "spr_etx" => Ok(RoutingStrategy::SprEtx),
            "spr_etx_2hop" => Ok(RoutingStrategy::SprEtx2Hop),
            "cmr" => Ok(RoutingStrategy::Cmr),
            other => Err(format!(
                "unknown routing strategy `{other}` (spr_etx, spr_etx_2hop, cmr)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathChoice {
    Primary,
    Secondary,
}

/// Routing decision for one source/destination pair in one window.
#[derive(Debug, Clone, PartialEq)]
pub struct RoutePlan {
    pub strategy: RoutingStrategy,
    pub primary: Path,
    pub secondary: Option<Path>,
    pub delivered: PathChoice,
    /// Radio chosen by selection combining at each hop of the delivered path.
    pub hop_branches: Vec<RadioId>,
    pub combined_metric_db: Option<f64>,
}

impl RoutePlan {
    pub fn delivered_path(&self) -> &Path {
        match (self.delivered, &self.secondary) {
            (PathChoice::Secondary, Some(p)) => p,
            _ => &self.primary,
        }
    }

    pub fn next_hop(&self) -> usize {
        self.delivered_path().next_hop()
    }
}

/// Min over hops of the selection-combined SINR, with the chosen radio per hop.
fn combine_path(path: &Path, sinr: &BranchSinr) -> (f64, Vec<RadioId>) {
    let mut metric = f64::INFINITY;
    let mut branches = Vec::with_capacity(path.hop_count());
    for (u, v) in path.hops() {
        let (best, idx) = select_combine(sinr.get(u, v));
        metric = metric.min(best);
        branches.push(RadioId::new(v, Device::ALL[idx]));
    }
    (metric, branches)
}

/// Cooperative multi-path routing.
///
/// The primary path is the two-hop-capped shortest path. The secondary is
/// the best remaining candidate whose relays avoid the primary's relays.
/// Each path scores the minimum over its hops of the selection-combined
/// SINR; the plan delivers over the better-scoring path (primary on ties).
pub fn cmr(g: &NetworkGraph, s: usize, d: usize, sinr: &BranchSinr) -> Result<Option<RoutePlan>> {
    check_pair(g, s, d)?;
    if sinr.num_bans() < g.num_vertices() {
        return Err(Error::Domain("branch SINR table smaller than the graph".into()));
    }
    let mut candidates = two_hop_candidates(g, s, d).into_iter();
    let Some(primary) = candidates.next() else {
        return Ok(None);
    };
    let secondary = candidates.find(|p| {
        p.vertices != primary.vertices
            && p.intermediates()
                .iter()
                .all(|v| !primary.intermediates().contains(v))
    });

    let (comb_primary, branches_primary) = combine_path(&primary, sinr);
    let (delivered, metric, hop_branches) = match &secondary {
        Some(p2) => {
            let (comb_secondary, branches_secondary) = combine_path(p2, sinr);
            if comb_secondary > comb_primary {
                (PathChoice::Secondary, comb_secondary, branches_secondary)
            } else {
                (PathChoice::Primary, comb_primary, branches_primary)
            }
        }
        None => (PathChoice::Primary, comb_primary, branches_primary),
    };
    Ok(Some(RoutePlan {
        strategy: RoutingStrategy::Cmr,
        primary,
        secondary,
        delivered,
        hop_branches,
        combined_metric_db: Some(metric),
    }))
}

/// Plans a route under any strategy. `sinr` is only consulted by CMR.
pub fn plan_route(
    g: &NetworkGraph,
    s: usize,
    d: usize,
    strategy: RoutingStrategy,
    sinr: &BranchSinr,
) -> Result<Option<RoutePlan>> {
    let metric = match strategy {
        RoutingStrategy::Cmr => return cmr(g, s, d, sinr),
        RoutingStrategy::SprEtx => SprMetric::EtxOnly,
        RoutingStrategy::SprEtx2Hop => SprMetric::EtxPlusHopMax2,
    };
    Ok(spr(g, s, d, metric)?.map(|primary| {
        let hop_branches = primary.hops().map(|(_, v)| RadioId::hub(v)).collect();
        RoutePlan {
            strategy,
            primary,
            secondary: None,
            delivered: PathChoice::Primary,
            hop_branches,
            combined_metric_db: None,
        }
    }))
}
