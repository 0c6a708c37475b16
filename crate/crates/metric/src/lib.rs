//! Numerical Riemannian geometry on model charts: connection and curvature by
//! finite differences, geodesic shooting, and probes of geodesic spheres and
//! disks.

#![allow(clippy::needless_range_loop)]

pub mod chart;
pub mod constants;
pub mod curvature;
pub mod error;
pub mod frames;
pub mod geodesic;
pub mod models;
pub mod probes;
pub mod spectral;

pub use chart::{MetricChart, Point, Tensor2};
pub use error::{MetricError, Result};
pub use models::Model;
pub use probes::{gauss_bonnet_disk, sphere_area_probe, w3_limit, DiskResult, Grid, LimitResult, ProbeResult};
