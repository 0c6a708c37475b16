//! Geodesic-sphere and geodesic-disk probes built from shot families.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::chart::{Conformal, Euclidean, MetricChart, Point, Tensor2, WarpedCartesian};
use crate::curvature::{christoffel, curvature_at};
use crate::error::{MetricError, Result};
use crate::geodesic::{geodesic_path, geodesic_shoot, GeodesicState};
use crate::models::Model;
use crate::spectral::{differentiation_matrix, gauss_legendre, simpson, uniform_angles, PeriodicDerivative};

/// Direction and radial resolution of a probe.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Grid {
    /// Azimuthal directions (uniform in angle).
    pub directions: usize,
    /// Polar Gauss–Legendre nodes; unused in dimension 2.
    pub polar: usize,
    /// RK4 steps per shot.
    pub steps: usize,
    /// Largest accepted error estimate.
    pub tolerance: f64,
}

impl Grid {
    pub fn disk() -> Self {
        Self { directions: 512, polar: 0, steps: 256, tolerance: 1e-7 }
    }

    pub fn sphere(dim: usize) -> Self {
        if dim == 2 {
            Self::disk()
        } else {
            Self { directions: 256, polar: 128, steps: 256, tolerance: 1e-7 }
        }
    }

    /// Same grid with `directions` azimuthal samples and half as many polar nodes.
    pub fn with_directions(self, directions: usize) -> Self {
        let polar = if self.polar == 0 { 0 } else { directions / 2 };
        Self { directions, polar, ..self }
    }

    pub fn with_tolerance(self, tolerance: f64) -> Self {
        Self { tolerance, ..self }
    }

    pub fn half(&self) -> Self {
        Self { directions: self.directions / 2, polar: self.polar / 2, steps: self.steps / 2, ..*self }
    }

    fn validate(&self, dim: usize) -> Result<()> {
        let polar_ok = dim == 2 || self.polar >= 4;
        if self.directions < 8 || self.steps < 4 || !self.steps.is_multiple_of(4) || !polar_ok {
            return Err(MetricError::InvalidParameter(format!(
                "grid {}x{} with {} steps is too small (need >= 8 directions, >= 4 polar nodes, steps divisible by 4)",
                self.directions, self.polar, self.steps
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeResult {
    pub value: f64,
    /// |value − value on the half grid|
    pub error_estimate: f64,
    /// value / (ω_{m−1} ε^{m−1}) for sphere probes.
    pub ratio: Option<f64>,
    pub eps: f64,
    pub step: f64,
    pub grid: Grid,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiskResult {
    /// ∫ K dμ over the geodesic disk.
    pub interior: f64,
    /// ∮ k_g ds over its boundary.
    pub boundary: f64,
    pub total: f64,
    pub error_estimate: f64,
    /// round(total / 2π) mod 2.
    pub cochain: u8,
    pub eps: f64,
    pub step: f64,
    pub grid: Grid,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitResult {
    pub limit: f64,
    pub error_estimate: f64,
    /// round(limit) mod 2.
    pub cochain: u8,
    pub probes: Vec<ProbeResult>,
}

fn check_eps(model: &Model, eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps < model.radius_guard()) {
        return Err(MetricError::InvalidParameter(format!(
            "eps {eps} outside (0, {}) for {}",
            model.radius_guard(),
            model.name()
        )));
    }
    Ok(())
}

fn center_point<const D: usize>(center: &[f64]) -> Result<Point<D>> {
    if center.len() != D {
        return Err(MetricError::InvalidParameter(format!("center has {} coordinates, expected {D}", center.len())));
    }
    Ok(Point::<D>::from_column_slice(center))
}

/// Columns form a g-orthonormal basis at `p`.
fn orthonormal_frame<const D: usize, C: MetricChart<D> + ?Sized>(chart: &C, p: &Point<D>) -> Result<Tensor2<D>> {
    let g = chart.metric(p)?;
    let chol = nalgebra::Cholesky::new(g).ok_or_else(|| MetricError::SingularMetric { point: p.iter().copied().collect() })?;
    let linv = chol.l().try_inverse().ok_or_else(|| MetricError::SingularMetric { point: p.iter().copied().collect() })?;
    Ok(linv.transpose())
}

fn inner<const D: usize>(g: &Tensor2<D>, a: &Point<D>, b: &Point<D>) -> f64 {
    a.dot(&(g * b))
}

fn exceeds(estimate: f64, grid: &Grid) -> Result<()> {
    if estimate > grid.tolerance {
        return Err(MetricError::GridTooCoarse { estimate, tolerance: grid.tolerance });
    }
    Ok(())
}

/// Length of the geodesic circle of radius `eps` about `center`.
pub fn geodesic_circle_length<C: MetricChart<2> + ?Sized>(chart: &C, center: &Point<2>, eps: f64, grid: &Grid) -> Result<f64> {
    let e = orthonormal_frame(chart, center)?;
    let n = grid.directions;
    let angles = uniform_angles(n);
    let ends: Vec<Point<2>> = angles
        .par_iter()
        .map(|a| {
            let v = e * Point::<2>::new(a.cos(), a.sin());
            geodesic_shoot(chart, GeodesicState::new(*center, v), eps, eps / grid.steps as f64).map(|s| s.end.position)
        })
        .collect::<Result<_>>()?;
    let fft = PeriodicDerivative::new(n);
    let dx = fft.derivative(&ends.iter().map(|p| p[0]).collect::<Vec<_>>());
    let dy = fft.derivative(&ends.iter().map(|p| p[1]).collect::<Vec<_>>());
    let mut len = 0.0;
    for (j, p) in ends.iter().enumerate() {
        let t = Point::<2>::new(dx[j], dy[j]);
        len += inner(&chart.metric(p)?, &t, &t).sqrt();
    }
    Ok(len * 2.0 * PI / n as f64)
}

/// Area of the geodesic 2-sphere of radius `eps` about `center`.
///
/// Directions are parametrized by (θ, φ) with Gauss–Legendre nodes in θ and
/// uniform samples in φ; tangent vectors come from the interpolants.
pub fn geodesic_sphere_area<C: MetricChart<3> + ?Sized>(chart: &C, center: &Point<3>, eps: f64, grid: &Grid) -> Result<f64> {
    let e = orthonormal_frame(chart, center)?;
    let (thetas, weights) = gauss_legendre(grid.polar, 0.0, PI);
    let phis = uniform_angles(grid.directions);
    let (nt, np) = (thetas.len(), phis.len());
    let h = eps / grid.steps as f64;
    let ends: Vec<Point<3>> = (0..nt * np)
        .into_par_iter()
        .map(|idx| {
            let (t, f) = (thetas[idx / np], phis[idx % np]);
            let u = Point::<3>::new(t.sin() * f.cos(), t.sin() * f.sin(), t.cos());
            geodesic_shoot(chart, GeodesicState::new(*center, e * u), eps, h).map(|s| s.end.position)
        })
        .collect::<Result<_>>()?;
    let at = |a: usize, b: usize| ends[a * np + b];

    let mut d_phi = vec![Point::<3>::zeros(); nt * np];
    let fft = PeriodicDerivative::new(np);
    for a in 0..nt {
        for c in 0..3 {
            let row: Vec<f64> = (0..np).map(|b| at(a, b)[c]).collect();
            for (b, v) in fft.derivative(&row).into_iter().enumerate() {
                d_phi[a * np + b][c] = v;
            }
        }
    }
    let dm = differentiation_matrix(&thetas);
    let mut d_theta = vec![Point::<3>::zeros(); nt * np];
    for b in 0..np {
        for a in 0..nt {
            let mut v = Point::<3>::zeros();
            for (k, w) in dm[a].iter().enumerate() {
                v += at(k, b) * *w;
            }
            d_theta[a * np + b] = v;
        }
    }

    let mut area = 0.0;
    for a in 0..nt {
        let mut ring = 0.0;
        for b in 0..np {
            let i = a * np + b;
            let g = chart.metric(&ends[i])?;
            let (xt, xp) = (&d_theta[i], &d_phi[i]);
            let det = inner(&g, xt, xt) * inner(&g, xp, xp) - inner(&g, xt, xp).powi(2);
            ring += det.max(0.0).sqrt();
        }
        area += weights[a] * ring;
    }
    Ok(area * 2.0 * PI / np as f64)
}

// Concrete chart types below, matching `Model::probe_chart2/3`, so the
// integrator inlines the metric.
fn sphere_measure(model: &Model, center: &[f64], eps: f64, grid: &Grid) -> Result<f64> {
    match model.dim() {
        2 => {
            let c = center_point::<2>(center)?;
            match *model {
                Model::Flat2 => geodesic_circle_length(&Euclidean::<2>, &c, eps, grid),
                Model::RoundS2 => geodesic_circle_length(&Conformal::<2>::stereographic(), &c, eps, grid),
                Model::Hyperbolic2 => geodesic_circle_length(&Conformal::<2>::poincare(), &c, eps, grid),
                _ => unreachable!("dimension 2"),
            }
        }
        _ => {
            let c = center_point::<3>(center)?;
            match *model {
                Model::Flat3 => geodesic_sphere_area(&Euclidean::<3>, &c, eps, grid),
                Model::RoundS3 => geodesic_sphere_area(&Conformal::<3>::stereographic(), &c, eps, grid),
                Model::Warped3 { c: warp } => geodesic_sphere_area(&WarpedCartesian { c: warp }, &c, eps, grid),
                _ => unreachable!("dimension 3"),
            }
        }
    }
}

/// Measure of the geodesic sphere of radius ε and its ratio to the Euclidean value.
pub fn sphere_area_probe(model: &Model, center: &[f64], eps: f64, grid: &Grid) -> Result<ProbeResult> {
    check_eps(model, eps)?;
    grid.validate(model.dim())?;
    let value = sphere_measure(model, center, eps, grid)?;
    let coarse = sphere_measure(model, center, eps, &grid.half())?;
    let euclid = if model.dim() == 2 { 2.0 * PI * eps } else { 4.0 * PI * eps * eps };
    let error_estimate = (value - coarse).abs() / euclid;
    exceeds(error_estimate, grid)?;
    Ok(ProbeResult { value, error_estimate, ratio: Some(value / euclid), eps, step: eps / grid.steps as f64, grid: *grid })
}

/// Neville extrapolation of (x_i, y_i) to x = 0.
fn extrapolate_to_zero(xs: &[f64], ys: &[f64]) -> f64 {
    let mut p = ys.to_vec();
    let n = xs.len();
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (xs[i + m] * p[i] - xs[i] * p[i + 1]) / (xs[i + m] - xs[i]);
        }
    }
    p[0]
}

/// Tolerance for treating consecutive ratios as equal.
const FLAT_RATIO: f64 = 1e-12;

/// Extrapolates `ratios` measured at strictly decreasing `eps` to ε = 0 by
/// polynomial extrapolation in ε²; returns the limit and the change from
/// dropping the smallest ε.
pub fn extrapolate_ratios(eps: &[f64], ratios: &[f64]) -> Result<(f64, f64)> {
    if eps.len() < 3 || eps.len() != ratios.len() {
        return Err(MetricError::InvalidParameter(format!("need at least 3 eps values, got {}", eps.len())));
    }
    if eps.windows(2).any(|w| w[1] >= w[0]) || eps[eps.len() - 1] <= 0.0 {
        return Err(MetricError::InvalidParameter("eps values must be positive and strictly decreasing".into()));
    }
    let steps: Vec<f64> = ratios.windows(2).map(|w| w[1] - w[0]).collect();
    for w in steps.windows(2) {
        if w[0].abs() <= FLAT_RATIO && w[1].abs() <= FLAT_RATIO {
            continue;
        }
        if w[0] * w[1] < 0.0 && w[1].abs() > FLAT_RATIO {
            return Err(MetricError::NonConvergent(format!("ratios {ratios:?} are not monotone")));
        }
        if w[1].abs() > w[0].abs() + FLAT_RATIO {
            return Err(MetricError::NonConvergent(format!("ratio increments grow: {steps:?}")));
        }
    }
    let xs: Vec<f64> = eps.iter().map(|e| e * e).collect();
    let limit = extrapolate_to_zero(&xs, ratios);
    let previous = extrapolate_to_zero(&xs[..xs.len() - 1], &ratios[..ratios.len() - 1]);
    Ok((limit, (limit - previous).abs()))
}

/// Sphere-area ratios at each ε, extrapolated to ε = 0.
pub fn w3_limit(model: &Model, center: &[f64], eps: &[f64], grid: &Grid) -> Result<LimitResult> {
    // validate the sequence before paying for any probe
    extrapolate_ratios(eps, &vec![1.0; eps.len()])?;
    let probes = eps.iter().map(|&e| sphere_area_probe(model, center, e, grid)).collect::<Result<Vec<_>>>()?;
    let ratios: Vec<f64> = probes.iter().map(|p| p.ratio.unwrap_or(f64::NAN)).collect();
    let (limit, drift) = extrapolate_ratios(eps, &ratios)?;
    let probe_err = probes.iter().map(|p| p.error_estimate).fold(0.0, f64::max);
    Ok(LimitResult { limit, error_estimate: drift + probe_err, cochain: (limit.round() as i64).rem_euclid(2) as u8, probes })
}

struct DiskParts {
    interior: f64,
    boundary: f64,
}

fn disk_parts<C: MetricChart<2> + ?Sized>(chart: &C, center: &Point<2>, eps: f64, grid: &Grid) -> Result<DiskParts> {
    let e = orthonormal_frame(chart, center)?;
    let (n, m) = (grid.directions, grid.steps);
    let angles = uniform_angles(n);
    let paths: Vec<Vec<GeodesicState<2>>> = angles
        .par_iter()
        .map(|a| geodesic_path(chart, GeodesicState::new(*center, e * Point::<2>::new(a.cos(), a.sin())), eps, m))
        .collect::<Result<_>>()?;
    let fft = PeriodicDerivative::new(n);

    // interior: ∫∫ K J dr dα, J the area density of (r, α) ↦ exp(r u(α))
    let radial: Vec<Vec<f64>> = (0..=m)
        .into_par_iter()
        .map(|k| -> Result<Vec<f64>> {
            let xs: Vec<f64> = paths.iter().map(|p| p[k].position[0]).collect();
            let ys: Vec<f64> = paths.iter().map(|p| p[k].position[1]).collect();
            let (dx, dy) = (fft.derivative(&xs), fft.derivative(&ys));
            let mut out = Vec::with_capacity(n);
            for j in 0..n {
                let s = &paths[j][k];
                let curv = curvature_at(chart, &s.position)?;
                let g = curv.metric;
                let xa = Point::<2>::new(dx[j], dy[j]);
                let xr = s.velocity;
                let jac = (inner(&g, &xr, &xr) * inner(&g, &xa, &xa) - inner(&g, &xr, &xa).powi(2)).max(0.0).sqrt();
                out.push(0.5 * curv.scalar * jac);
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let h = eps / m as f64;
    let mut interior = 0.0;
    for j in 0..n {
        let column: Vec<f64> = radial.iter().map(|row| row[j]).collect();
        interior += simpson(&column, h);
    }
    interior *= 2.0 * PI / n as f64;

    // boundary: ∮ g(D_α c′, N) / |c′| dα with N the inward unit normal
    let xs: Vec<f64> = paths.iter().map(|p| p[m].position[0]).collect();
    let ys: Vec<f64> = paths.iter().map(|p| p[m].position[1]).collect();
    let (dx, ddx) = fft.derivatives(&xs);
    let (dy, ddy) = fft.derivatives(&ys);
    let mut boundary = 0.0;
    for j in 0..n {
        let s = &paths[j][m];
        let g = chart.metric(&s.position)?;
        let c1 = Point::<2>::new(dx[j], dy[j]);
        let c2 = Point::<2>::new(ddx[j], ddy[j]);
        let accel = c2 + christoffel(chart, &s.position)?.contract(&c1, &c1);
        let speed2 = inner(&g, &c1, &c1);
        let inward = -s.velocity;
        let mut normal = inward - c1 * (inner(&g, &inward, &c1) / speed2);
        normal /= inner(&g, &normal, &normal).sqrt();
        boundary += inner(&g, &accel, &normal) / speed2.sqrt();
    }
    boundary *= 2.0 * PI / n as f64;
    Ok(DiskParts { interior, boundary })
}

/// Disk Gauss–Bonnet probe: interior curvature plus boundary geodesic curvature.
pub fn gauss_bonnet_disk(model: &Model, center: &[f64], eps: f64, grid: &Grid) -> Result<DiskResult> {
    check_eps(model, eps)?;
    grid.validate(2)?;
    let c = center_point::<2>(center)?;
    let parts = |g: &Grid| match *model {
        Model::Flat2 => disk_parts(&Euclidean::<2>, &c, eps, g),
        Model::RoundS2 => disk_parts(&Conformal::<2>::stereographic(), &c, eps, g),
        Model::Hyperbolic2 => disk_parts(&Conformal::<2>::poincare(), &c, eps, g),
        _ => Err(MetricError::InvalidParameter(format!("{} is not 2-dimensional", model.name()))),
    };
    let fine = parts(grid)?;
    let coarse = parts(&grid.half())?;
    let total = fine.interior + fine.boundary;
    let error_estimate = (fine.interior - coarse.interior).abs() + (fine.boundary - coarse.boundary).abs();
    exceeds(error_estimate, grid)?;
    Ok(DiskResult {
        interior: fine.interior,
        boundary: fine.boundary,
        total,
        error_estimate,
        cochain: ((total / (2.0 * PI)).round() as i64).rem_euclid(2) as u8,
        eps,
        step: eps / grid.steps as f64,
        grid: *grid,
    })
}
