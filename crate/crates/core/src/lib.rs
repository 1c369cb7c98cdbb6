//! Decontamination of graphs by a mobile agent under *temporal immunity*.
//!
//! A clean vertex that is continuously exposed to a contaminated neighbor for
//! τ time units reverts to contaminated. This crate provides:
//!
//! * [`graph`] — immutable undirected graphs, distance metrics, tree views;
//! * [`topology`] — generators for the supported graph families;
//! * [`dynamics`] — the discrete-time contagion engine with trace recording;
//! * [`strategy`] — single-agent decontamination strategies, one per family;
//! * [`oracle`] — exact immunity numbers for small graphs by exhaustive
//!   reachability search over packed configurations;
//! * [`matching`] — the mesh cut-matching bound checker.
//!
//! The crate is `no_std` (with `alloc`); all IO and file formats live in the
//! companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod dynamics;
pub mod error;
pub mod graph;
pub mod matching;
pub mod oracle;
pub mod strategy;
pub mod topology;

pub use error::Error;
pub use graph::{Graph, Vertex};

/// Convenience result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
