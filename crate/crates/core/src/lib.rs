//! Simulator for co-located body-area networks (BANs) whose hubs form a
//! body-to-body mesh.
//!
//! The crate replays channel-gain traces slot by slot and compares three MAC
//! policies: CSMA/CA with maximum-interference-power carrier sensing and an
//! adaptive threshold, the same with a static threshold, and a duty-cycled
//! TDMA baseline. Routing over the hub tier is recomputed every estimation
//! window from the previous window's measurements, either as ETX shortest
//! path routing or as cooperative multi-path routing with 3-branch selection
//! combining.
//!
//! Module map:
//!
//! - [`channel`]: trace ingest, synthesis, windowing and lookup.
//! - [`mac`]: carrier sensing, threshold control, CSMA and TDMA slot engines.
//! - [`routing`]: ETX graphs, shortest paths and cooperative multi-path plans.
//! - [`metrics`]: SINR, outage, throughput, PDR, spectral efficiency, histograms.
//! - [`sim`]: the window loop tying everything together.
//! - [`cli`]: config files, output tables and the command-line front end.

// `!(x > 0.0)` is used on purpose so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod cli;
pub mod config;
pub mod error;
pub mod mac;
pub mod metrics;
pub mod routing;
pub mod sim;

pub use error::{Error, Result};
