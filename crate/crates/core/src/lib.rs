//! Time-space modelling of computing systems.
//!
//! Positions are expressed as the time a signal needs to reach them, so
//! physical distance and processing time share one axis. On top of that
//! coordinate system the crate provides:
//!
//! - [`timespace`]: transfer, idle and apparent processing times of chained
//!   elements;
//! - [`dispersion`]: the dispersion merit of a processor technology;
//! - [`gates`]: event-driven simulation of gate netlists placed in space;
//! - [`bus`]: cores contending for a single shared bus;
//! - [`distributed`]: orchestrated fork-join processing and Amdahl
//!   efficiency;
//! - [`io`], [`render`] and [`cli`]: file formats, SVG diagrams and the
//!   `tempograph` command line.

pub mod bus;
pub mod cli;
pub mod dispersion;
pub mod distributed;
pub mod error;
pub mod gates;
pub mod io;
pub mod render;
pub mod timespace;

pub use error::{Error, Result};
pub use timespace::{ComputingElement, InteractionSpeed, TimePoint};
