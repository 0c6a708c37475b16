//! Fixed-step RK4 integration of the geodesic equation.

use serde::Serialize;

use crate::chart::{MetricChart, Point};
use crate::curvature::geodesic_acceleration;
use crate::error::{MetricError, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeodesicState<const D: usize> {
    pub position: Point<D>,
    pub velocity: Point<D>,
}

impl<const D: usize> GeodesicState<D> {
    pub fn new(position: Point<D>, velocity: Point<D>) -> Self {
        Self { position, velocity }
    }

    /// g-length of the velocity.
    pub fn speed<C: MetricChart<D> + ?Sized>(&self, chart: &C) -> f64 {
        let g = chart.metric_unchecked(&self.position);
        self.velocity.dot(&(g * self.velocity)).sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ShotStats {
    pub steps: usize,
    pub step: f64,
    /// |speed(end) − speed(start)|
    pub speed_drift: f64,
    /// Drift budget 1e−8 · T / h.
    pub drift_bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Shot<const D: usize> {
    pub end: GeodesicState<D>,
    pub stats: ShotStats,
}

fn rk4_step<const D: usize, C: MetricChart<D> + ?Sized>(
    chart: &C,
    s: &GeodesicState<D>,
    h: f64,
    t: f64,
) -> Result<GeodesicState<D>> {
    let left = |x: &Point<D>| MetricError::LeftDomain { t, point: x.iter().copied().collect() };
    let acc = |x: &Point<D>, v: &Point<D>| -> Result<Point<D>> {
        geodesic_acceleration(chart, x, v).map_err(|e| match e {
            MetricError::OutOfDomain { .. } => left(x),
            other => other,
        })
    };
    let (x, v) = (s.position, s.velocity);
    let a1 = acc(&x, &v)?;
    let (x2, v2) = (x + v * (0.5 * h), v + a1 * (0.5 * h));
    let a2 = acc(&x2, &v2)?;
    let (x3, v3) = (x + v2 * (0.5 * h), v + a2 * (0.5 * h));
    let a3 = acc(&x3, &v3)?;
    let (x4, v4) = (x + v3 * h, v + a3 * h);
    let a4 = acc(&x4, &v4)?;
    let position = x + (v + v2 * 2.0 + v3 * 2.0 + v4) * (h / 6.0);
    let velocity = v + (a1 + a2 * 2.0 + a3 * 2.0 + a4) * (h / 6.0);
    if !chart.contains(&position) {
        return Err(left(&position));
    }
    Ok(GeodesicState { position, velocity })
}

fn step_count(length: f64, step: f64) -> Result<usize> {
    if !(length >= 0.0 && step > 0.0 && length.is_finite()) {
        return Err(MetricError::InvalidParameter(format!("length {length}, step {step}")));
    }
    Ok(((length / step).ceil() as usize).max(1))
}

/// Integrates for parameter time `length` with steps no longer than `step`.
pub fn geodesic_shoot<const D: usize, C: MetricChart<D> + ?Sized>(
    chart: &C,
    state: GeodesicState<D>,
    length: f64,
    step: f64,
) -> Result<Shot<D>> {
    let n = step_count(length, step)?;
    let h = length / n as f64;
    chart.metric(&state.position)?;
    let mut s = state;
    for k in 0..n {
        s = rk4_step(chart, &s, h, k as f64 * h)?;
    }
    let drift = (s.speed(chart) - state.speed(chart)).abs();
    Ok(Shot { end: s, stats: ShotStats { steps: n, step: h, speed_drift: drift, drift_bound: 1e-8 * length / h } })
}

/// As [`geodesic_shoot`], keeping the state after every step (index 0 is the start).
pub fn geodesic_path<const D: usize, C: MetricChart<D> + ?Sized>(
    chart: &C,
    state: GeodesicState<D>,
    length: f64,
    steps: usize,
) -> Result<Vec<GeodesicState<D>>> {
    if steps == 0 {
        return Err(MetricError::InvalidParameter("zero steps".into()));
    }
    let h = length / steps as f64;
    chart.metric(&state.position)?;
    let mut out = Vec::with_capacity(steps + 1);
    out.push(state);
    for k in 0..steps {
        let next = rk4_step(chart, &out[k], h, k as f64 * h)?;
        out.push(next);
    }
    Ok(out)
}
