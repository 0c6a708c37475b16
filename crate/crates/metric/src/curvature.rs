//! Christoffel symbols and curvature by central differences.

use crate::chart::{MetricChart, Point, Tensor2};
use crate::error::{MetricError, Result};

/// Step for first derivatives of the metric.
pub const METRIC_STEP: f64 = 1e-5;
/// Step for derivatives of the Christoffel symbols.
pub const CONNECTION_STEP: f64 = 1e-3;

/// Γ^k_ij stored as `gamma[k][i][j]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Christoffel<const D: usize> {
    pub gamma: [[[f64; D]; D]; D],
}

impl<const D: usize> Christoffel<D> {
    /// Γ(v, w)^k = Γ^k_ij v^i w^j.
    pub fn contract(&self, v: &Point<D>, w: &Point<D>) -> Point<D> {
        Point::<D>::from_fn(|k, _| {
            let mut s = 0.0;
            for i in 0..D {
                for j in 0..D {
                    s += self.gamma[k][i][j] * v[i] * w[j];
                }
            }
            s
        })
    }

    /// Largest |Γ^k_ij − Γ^k_ji|.
    pub fn asymmetry(&self) -> f64 {
        let mut m: f64 = 0.0;
        for k in 0..D {
            for i in 0..D {
                for j in 0..D {
                    m = m.max((self.gamma[k][i][j] - self.gamma[k][j][i]).abs());
                }
            }
        }
        m
    }
}

fn out_of_domain<const D: usize>(p: &Point<D>) -> MetricError {
    MetricError::OutOfDomain { point: p.iter().copied().collect() }
}

/// ∂_l g at `p` for each coordinate direction l.
pub fn metric_derivatives<const D: usize, C: MetricChart<D> + ?Sized>(chart: &C, p: &Point<D>) -> Result<[Tensor2<D>; D]> {
    let h = METRIC_STEP;
    let mut out = [Tensor2::<D>::zeros(); D];
    for (l, d) in out.iter_mut().enumerate() {
        let mut a = *p;
        let mut b = *p;
        a[l] += h;
        b[l] -= h;
        if !chart.contains(&a) || !chart.contains(&b) {
            return Err(out_of_domain(p));
        }
        *d = (chart.metric_unchecked(&a) - chart.metric_unchecked(&b)) / (2.0 * h);
    }
    Ok(out)
}

fn inverse<const D: usize>(g: &Tensor2<D>, p: &Point<D>) -> Result<Tensor2<D>> {
    g.try_inverse().ok_or_else(|| MetricError::SingularMetric { point: p.iter().copied().collect() })
}

/// Γ^k_ij = ½ g^{kl}(∂_i g_jl + ∂_j g_il − ∂_l g_ij).
pub fn christoffel<const D: usize, C: MetricChart<D> + ?Sized>(chart: &C, p: &Point<D>) -> Result<Christoffel<D>> {
    let g = chart.metric(p)?;
    christoffel_with(chart, p, &g)
}

fn christoffel_with<const D: usize, C: MetricChart<D> + ?Sized>(
    chart: &C,
    p: &Point<D>,
    g: &Tensor2<D>,
) -> Result<Christoffel<D>> {
    let ginv = inverse(g, p)?;
    let dg = metric_derivatives(chart, p)?;
    let mut lower = [[[0.0; D]; D]; D];
    for (l, row) in lower.iter_mut().enumerate() {
        for i in 0..D {
            for j in 0..D {
                row[i][j] = 0.5 * (dg[i][(j, l)] + dg[j][(i, l)] - dg[l][(i, j)]);
            }
        }
    }
    let mut gamma = [[[0.0; D]; D]; D];
    for (k, gk) in gamma.iter_mut().enumerate() {
        for i in 0..D {
            for j in 0..D {
                gk[i][j] = (0..D).map(|l| ginv[(k, l)] * lower[l][i][j]).sum();
            }
        }
    }
    Ok(Christoffel { gamma })
}

/// Geodesic acceleration −Γ(v, v) at `p`, skipping the definiteness check.
pub fn geodesic_acceleration<const D: usize, C: MetricChart<D> + ?Sized>(
    chart: &C,
    p: &Point<D>,
    v: &Point<D>,
) -> Result<Point<D>> {
    if !chart.contains(p) {
        return Err(out_of_domain(p));
    }
    let g = chart.metric_unchecked(p);
    let dg = metric_derivatives(chart, p)?;
    let mut dv = Tensor2::<D>::zeros();
    for i in 0..D {
        dv += dg[i] * v[i];
    }
    let first = dv * v;
    let w = Point::<D>::from_fn(|l, _| first[l] - 0.5 * v.dot(&(dg[l] * v)));
    Ok(-(inverse(&g, p)? * w))
}

/// Riemann, Ricci and scalar curvature at a point.
///
/// Conventions: R(∂_i, ∂_j)∂_k = R^l_{ijk} ∂_l, R_{ijkl} = g(R(∂_i, ∂_j)∂_k, ∂_l),
/// Ricci r_jk = R^i_{ijk}, scalar s = g^{jk} r_jk; the unit sphere has r = (n−1)g.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Curvature<const D: usize> {
    /// `up[l][i][j][k]` = R^l_{ijk}.
    pub up: [[[[f64; D]; D]; D]; D],
    pub metric: Tensor2<D>,
    pub ricci: Tensor2<D>,
    pub scalar: f64,
}

impl<const D: usize> Curvature<D> {
    /// R_{ijkl}.
    pub fn lower(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        (0..D).map(|m| self.up[m][i][j][k] * self.metric[(m, l)]).sum()
    }

    /// The vector R(u, v)w.
    pub fn apply(&self, u: &Point<D>, v: &Point<D>, w: &Point<D>) -> Point<D> {
        Point::<D>::from_fn(|l, _| {
            let mut s = 0.0;
            for i in 0..D {
                for j in 0..D {
                    for k in 0..D {
                        s += self.up[l][i][j][k] * u[i] * v[j] * w[k];
                    }
                }
            }
            s
        })
    }

    pub fn ricci_of(&self, x: &Point<D>, y: &Point<D>) -> f64 {
        x.dot(&(self.ricci * y))
    }

    /// Largest violation of R_ijkl = −R_jikl = −R_ijlk = R_klij.
    pub fn symmetry_defect(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..D {
            for j in 0..D {
                for k in 0..D {
                    for l in 0..D {
                        let r = self.lower(i, j, k, l);
                        m = m
                            .max((r + self.lower(j, i, k, l)).abs())
                            .max((r + self.lower(i, j, l, k)).abs())
                            .max((r - self.lower(k, l, i, j)).abs());
                    }
                }
            }
        }
        m
    }
}

pub fn curvature_at<const D: usize, C: MetricChart<D> + ?Sized>(chart: &C, p: &Point<D>) -> Result<Curvature<D>> {
    let g = chart.metric(p)?;
    let gamma = christoffel_with(chart, p, &g)?;
    let h = CONNECTION_STEP;
    // dgamma[i] = ∂_i Γ, fourth-order central stencil
    let mut dgamma = [[[[0.0; D]; D]; D]; D];
    for (i, di) in dgamma.iter_mut().enumerate() {
        let at = |s: f64| -> Result<Christoffel<D>> {
            let mut q = *p;
            q[i] += s * h;
            if !chart.contains(&q) {
                return Err(out_of_domain(p));
            }
            christoffel_with(chart, &q, &chart.metric_unchecked(&q))
        };
        let (p2, p1, m1, m2) = (at(2.0)?, at(1.0)?, at(-1.0)?, at(-2.0)?);
        for l in 0..D {
            for j in 0..D {
                for k in 0..D {
                    di[l][j][k] = (-p2.gamma[l][j][k] + 8.0 * p1.gamma[l][j][k] - 8.0 * m1.gamma[l][j][k]
                        + m2.gamma[l][j][k])
                        / (12.0 * h);
                }
            }
        }
    }
    let gm = &gamma.gamma;
    let mut up = [[[[0.0; D]; D]; D]; D];
    for l in 0..D {
        for i in 0..D {
            for j in 0..D {
                for k in 0..D {
                    let mut r = dgamma[i][l][j][k] - dgamma[j][l][i][k];
                    for m in 0..D {
                        r += gm[l][i][m] * gm[m][j][k] - gm[l][j][m] * gm[m][i][k];
                    }
                    up[l][i][j][k] = r;
                }
            }
        }
    }
    let ricci = Tensor2::<D>::from_fn(|j, k| (0..D).map(|i| up[i][i][j][k]).sum());
    let ginv = inverse(&g, p)?;
    let scalar = (0..D).flat_map(|j| (0..D).map(move |k| (j, k))).map(|(j, k)| ginv[(j, k)] * ricci[(j, k)]).sum();
    Ok(Curvature { up, metric: g, ricci, scalar })
}
