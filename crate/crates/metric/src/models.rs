//! Named model geometries with chart pairs and closed-form reference values.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::chart::{Conformal, Euclidean, MetricChart, Polar2, Profile, Spherical3, WarpedCartesian};
use crate::error::{MetricError, Result};

pub const DEFAULT_WARP: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Model {
    Flat2,
    RoundS2,
    Hyperbolic2,
    RoundS3,
    Flat3,
    Warped3 { c: f64 },
}

pub const MODEL_NAMES: [&str; 6] = ["round-s2", "hyperbolic-2", "flat-2", "round-s3", "flat-3", "warped-3"];

impl Model {
    /// Parses a model name; `warp` sets c for `warped-3`.
    pub fn parse(name: &str, warp: Option<f64>) -> Result<Self> {
        let m = match name {
            "flat-2" => Model::Flat2,
            "round-s2" => Model::RoundS2,
            "hyperbolic-2" => Model::Hyperbolic2,
            "round-s3" => Model::RoundS3,
            "flat-3" => Model::Flat3,
            "warped-3" => Model::Warped3 { c: warp.unwrap_or(DEFAULT_WARP) },
            other => return Err(MetricError::UnknownModel(other.to_string())),
        };
        if warp.is_some() && !matches!(m, Model::Warped3 { .. }) {
            return Err(MetricError::InvalidParameter(format!("--warp applies only to warped-3, not {name}")));
        }
        Ok(m)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Model::Flat2 => "flat-2",
            Model::RoundS2 => "round-s2",
            Model::Hyperbolic2 => "hyperbolic-2",
            Model::RoundS3 => "round-s3",
            Model::Flat3 => "flat-3",
            Model::Warped3 { .. } => "warped-3",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Model::Flat2 | Model::RoundS2 | Model::Hyperbolic2 => 2,
            _ => 3,
        }
    }

    fn profile(&self) -> Profile {
        match *self {
            Model::Flat2 | Model::Flat3 => Profile::Flat,
            Model::RoundS2 | Model::RoundS3 => Profile::Sphere,
            Model::Hyperbolic2 => Profile::Hyperbolic,
            Model::Warped3 { c } => Profile::Warped(c),
        }
    }

    /// Chart used for numerical probes, centered at the origin.
    pub fn probe_chart2(&self) -> Result<Box<dyn MetricChart<2>>> {
        match self {
            Model::Flat2 => Ok(Box::new(Euclidean::<2>)),
            Model::RoundS2 => Ok(Box::new(Conformal::<2>::stereographic())),
            Model::Hyperbolic2 => Ok(Box::new(Conformal::<2>::poincare())),
            _ => Err(self.wrong_dim(2)),
        }
    }

    pub fn probe_chart3(&self) -> Result<Box<dyn MetricChart<3>>> {
        match *self {
            Model::Flat3 => Ok(Box::new(Euclidean::<3>)),
            Model::RoundS3 => Ok(Box::new(Conformal::<3>::stereographic())),
            Model::Warped3 { c } => Ok(Box::new(WarpedCartesian { c })),
            _ => Err(self.wrong_dim(3)),
        }
    }

    /// Geodesic polar chart with closed-form reference values.
    pub fn polar_chart2(&self) -> Result<Polar2> {
        if self.dim() != 2 {
            return Err(self.wrong_dim(2));
        }
        Ok(Polar2 { profile: self.profile() })
    }

    pub fn polar_chart3(&self) -> Result<Spherical3> {
        if self.dim() != 3 {
            return Err(self.wrong_dim(3));
        }
        Ok(Spherical3 { profile: self.profile() })
    }

    fn wrong_dim(&self, d: usize) -> MetricError {
        MetricError::InvalidParameter(format!("{} has dimension {}, not {d}", self.name(), self.dim()))
    }

    /// Largest geodesic radius the probes accept.
    pub fn radius_guard(&self) -> f64 {
        match self {
            Model::RoundS2 | Model::RoundS3 => 0.5 * PI,
            _ => 2.0,
        }
    }

    /// Closed-form length (m = 2) or area (m = 3) of the geodesic sphere of radius ε.
    pub fn exact_sphere_measure(&self, eps: f64) -> f64 {
        let f = self.profile().f(eps);
        if self.dim() == 2 {
            2.0 * PI * f
        } else {
            4.0 * PI * f * f
        }
    }

    /// Closed-form (∫K dμ, ∮k_g ds) over the geodesic disk of radius ε.
    pub fn exact_disk(&self, eps: f64) -> Option<(f64, f64)> {
        if self.dim() != 2 {
            return None;
        }
        let p = self.profile();
        Some((2.0 * PI * (1.0 - p.df(eps)), 2.0 * PI * p.df(eps)))
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Warped3 { c } => write!(f, "warped-3(c={c})"),
            m => write!(f, "{}", m.name()),
        }
    }
}
