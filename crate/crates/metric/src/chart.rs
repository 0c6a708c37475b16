//! Coordinate charts carrying a Riemannian metric.

use nalgebra::{Cholesky, SMatrix, SVector};

use crate::error::{MetricError, Result};

pub type Point<const D: usize> = SVector<f64, D>;
pub type Tensor2<const D: usize> = SMatrix<f64, D, D>;

/// Metric components on a coordinate domain.
pub trait MetricChart<const D: usize>: Sync {
    fn name(&self) -> String;

    fn contains(&self, p: &Point<D>) -> bool;

    /// Components g_ij at `p`, without domain or definiteness checks.
    fn metric_unchecked(&self, p: &Point<D>) -> Tensor2<D>;

    /// Closed-form scalar curvature, when the chart knows it.
    fn scalar_curvature_exact(&self, _p: &Point<D>) -> Option<f64> {
        None
    }

    fn metric(&self, p: &Point<D>) -> Result<Tensor2<D>> {
        if !self.contains(p) {
            return Err(MetricError::OutOfDomain { point: p.iter().copied().collect() });
        }
        let g = self.metric_unchecked(p);
        if Cholesky::new(g).is_none() {
            return Err(MetricError::SingularMetric { point: p.iter().copied().collect() });
        }
        Ok(g)
    }
}

/// Radial profile f of a rotationally symmetric metric dr² + f(r)² dΩ².
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Profile {
    Flat,
    Sphere,
    Hyperbolic,
    /// f(r) = r + c r³
    Warped(f64),
}

impl Profile {
    pub fn f(&self, r: f64) -> f64 {
        match *self {
            Profile::Flat => r,
            Profile::Sphere => r.sin(),
            Profile::Hyperbolic => r.sinh(),
            Profile::Warped(c) => r + c * r * r * r,
        }
    }

    pub fn df(&self, r: f64) -> f64 {
        match *self {
            Profile::Flat => 1.0,
            Profile::Sphere => r.cos(),
            Profile::Hyperbolic => r.cosh(),
            Profile::Warped(c) => 1.0 + 3.0 * c * r * r,
        }
    }

    pub fn d2f(&self, r: f64) -> f64 {
        match *self {
            Profile::Flat => 0.0,
            Profile::Sphere => -r.sin(),
            Profile::Hyperbolic => r.sinh(),
            Profile::Warped(c) => 6.0 * c * r,
        }
    }

    fn r_max(&self) -> f64 {
        match self {
            Profile::Sphere => std::f64::consts::PI,
            _ => f64::INFINITY,
        }
    }

    fn label(&self) -> String {
        match self {
            Profile::Flat => "flat".into(),
            Profile::Sphere => "sphere".into(),
            Profile::Hyperbolic => "hyperbolic".into(),
            Profile::Warped(c) => format!("warped(c={c})"),
        }
    }
}

/// Cartesian coordinates on Euclidean space.
#[derive(Clone, Copy, Debug, Default)]
pub struct Euclidean<const D: usize>;

impl<const D: usize> MetricChart<D> for Euclidean<D> {
    fn name(&self) -> String {
        format!("euclidean-{D}")
    }

    fn contains(&self, p: &Point<D>) -> bool {
        p.iter().all(|x| x.is_finite())
    }

    fn metric_unchecked(&self, _p: &Point<D>) -> Tensor2<D> {
        Tensor2::<D>::identity()
    }

    fn scalar_curvature_exact(&self, _p: &Point<D>) -> Option<f64> {
        Some(0.0)
    }
}

/// Geodesic polar coordinates (r, φ): dr² + f(r)² dφ².
#[derive(Clone, Copy, Debug)]
pub struct Polar2 {
    pub profile: Profile,
}

impl MetricChart<2> for Polar2 {
    fn name(&self) -> String {
        format!("polar-2 {}", self.profile.label())
    }

    fn contains(&self, p: &Point<2>) -> bool {
        p[0] > 0.0 && p[0] < self.profile.r_max() && p[1].is_finite()
    }

    fn metric_unchecked(&self, p: &Point<2>) -> Tensor2<2> {
        let f = self.profile.f(p[0]);
        Tensor2::<2>::new(1.0, 0.0, 0.0, f * f)
    }

    fn scalar_curvature_exact(&self, p: &Point<2>) -> Option<f64> {
        Some(-2.0 * self.profile.d2f(p[0]) / self.profile.f(p[0]))
    }
}

/// Geodesic spherical coordinates (r, θ, φ): dr² + f(r)² (dθ² + sin²θ dφ²).
#[derive(Clone, Copy, Debug)]
pub struct Spherical3 {
    pub profile: Profile,
}

impl MetricChart<3> for Spherical3 {
    fn name(&self) -> String {
        format!("spherical-3 {}", self.profile.label())
    }

    fn contains(&self, p: &Point<3>) -> bool {
        p[0] > 0.0 && p[0] < self.profile.r_max() && p[1] > 0.0 && p[1] < std::f64::consts::PI && p[2].is_finite()
    }

    fn metric_unchecked(&self, p: &Point<3>) -> Tensor2<3> {
        let f = self.profile.f(p[0]);
        let s = p[1].sin();
        Tensor2::<3>::from_diagonal(&SVector::<f64, 3>::new(1.0, f * f, f * f * s * s))
    }

    fn scalar_curvature_exact(&self, p: &Point<3>) -> Option<f64> {
        let r = p[0];
        let (f, df, d2f) = (self.profile.f(r), self.profile.df(r), self.profile.d2f(r));
        Some(-4.0 * d2f / f + 2.0 * (1.0 - df * df) / (f * f))
    }
}

/// Conformally flat chart 4/(1 + κ|x|²)² δ: stereographic coordinates of the
/// unit sphere for κ = 1, the Poincaré ball for κ = -1.
#[derive(Clone, Copy, Debug)]
pub struct Conformal<const D: usize> {
    pub kappa: f64,
}

impl<const D: usize> Conformal<D> {
    pub fn stereographic() -> Self {
        Self { kappa: 1.0 }
    }

    pub fn poincare() -> Self {
        Self { kappa: -1.0 }
    }

    pub fn conformal_factor(&self, p: &Point<D>) -> f64 {
        let q = 1.0 + self.kappa * p.norm_squared();
        4.0 / (q * q)
    }
}

impl<const D: usize> MetricChart<D> for Conformal<D> {
    fn name(&self) -> String {
        if self.kappa > 0.0 {
            format!("stereographic-{D}")
        } else {
            format!("poincare-{D}")
        }
    }

    fn contains(&self, p: &Point<D>) -> bool {
        p.iter().all(|x| x.is_finite()) && 1.0 + self.kappa * p.norm_squared() > 0.0
    }

    fn metric_unchecked(&self, p: &Point<D>) -> Tensor2<D> {
        Tensor2::<D>::identity() * self.conformal_factor(p)
    }

    fn scalar_curvature_exact(&self, _p: &Point<D>) -> Option<f64> {
        let n = D as f64;
        Some(self.kappa * n * (n - 1.0))
    }
}

/// Cartesian coordinates for dr² + f(r)² dΩ² with f(r) = r + c r³:
/// g = (1 + c r²)² δ - (2c + c² r²) x xᵀ, smooth through the origin.
#[derive(Clone, Copy, Debug)]
pub struct WarpedCartesian {
    pub c: f64,
}

impl MetricChart<3> for WarpedCartesian {
    fn name(&self) -> String {
        format!("warped-cartesian(c={})", self.c)
    }

    fn contains(&self, p: &Point<3>) -> bool {
        // f(r)/r must stay positive
        let r2 = p.norm_squared();
        p.iter().all(|x| x.is_finite()) && 1.0 + self.c * r2 > 0.0
    }

    fn metric_unchecked(&self, p: &Point<3>) -> Tensor2<3> {
        let r2 = p.norm_squared();
        let a = 1.0 + self.c * r2;
        Tensor2::<3>::identity() * (a * a) - p * p.transpose() * (2.0 * self.c + self.c * self.c * r2)
    }

    fn scalar_curvature_exact(&self, p: &Point<3>) -> Option<f64> {
        let r = p.norm();
        if r == 0.0 {
            return Some(-36.0 * self.c);
        }
        Spherical3 { profile: Profile::Warped(self.c) }.scalar_curvature_exact(&Point::<3>::new(r, 1.0, 0.0))
    }
}
