//! Orthonormal frames and the Gauss equation on a coordinate hyperplane.

use serde::Serialize;

use crate::chart::{MetricChart, Point, Tensor2};
use crate::curvature::curvature_at;
use crate::error::{MetricError, Result};

pub const FRAME_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FrameCheck {
    /// det g(e_i, e_j) of the orthonormalized frame.
    pub det: f64,
    pub value: u8,
}

/// Modified Gram–Schmidt on the columns of `frame` against g, applied twice.
pub fn gram_schmidt<const D: usize>(g: &Tensor2<D>, frame: &Tensor2<D>) -> Option<Tensor2<D>> {
    let mut e = *frame;
    for _ in 0..2 {
        for i in 0..D {
            let mut v: Point<D> = e.column(i).into();
            let before = v.dot(&(g * v)).sqrt();
            for j in 0..i {
                let u: Point<D> = e.column(j).into();
                v -= u * u.dot(&(g * v));
            }
            let norm = v.dot(&(g * v)).sqrt();
            if !(norm > 1e-12 * before && norm.is_finite()) {
                return None;
            }
            e.set_column(i, &(v / norm));
        }
    }
    Some(e)
}

/// Orthonormalizes `frame` at `p` and returns its Gram determinant.
pub fn frame_det_w1_with<const D: usize, C: MetricChart<D> + ?Sized>(chart: &C, p: &Point<D>, frame: &Tensor2<D>) -> Result<FrameCheck> {
    let g = chart.metric(p)?;
    let e = gram_schmidt(&g, frame).ok_or_else(|| MetricError::InvalidParameter("degenerate frame".into()))?;
    let gram = e.transpose() * g * e;
    let det = nalgebra::Cholesky::new(gram)
        .map(|c| c.determinant())
        .ok_or_else(|| MetricError::SingularMetric { point: p.iter().copied().collect() })?;
    if (det - 1.0).abs() > FRAME_TOLERANCE {
        return Err(MetricError::FrameNotOrthonormal { det, tolerance: FRAME_TOLERANCE });
    }
    Ok(FrameCheck { det, value: (det.round() as i64).rem_euclid(2) as u8 })
}

/// [`frame_det_w1_with`] on the coordinate frame.
pub fn frame_det_w1<const D: usize, C: MetricChart<D> + ?Sized>(chart: &C, p: &Point<D>) -> Result<FrameCheck> {
    frame_det_w1_with(chart, p, &Tensor2::<D>::identity())
}

/// Restriction of a 3-dimensional chart to the plane x₃ = 0.
pub struct Slice<'a, C: ?Sized> {
    pub ambient: &'a C,
}

impl<C: MetricChart<3> + ?Sized> MetricChart<2> for Slice<'_, C> {
    fn name(&self) -> String {
        format!("{} | x3=0", self.ambient.name())
    }

    fn contains(&self, p: &Point<2>) -> bool {
        self.ambient.contains(&lift(p))
    }

    fn metric_unchecked(&self, p: &Point<2>) -> Tensor2<2> {
        self.ambient.metric_unchecked(&lift(p)).fixed_view::<2, 2>(0, 0).into()
    }
}

fn lift(p: &Point<2>) -> Point<3> {
    Point::<3>::new(p[0], p[1], 0.0)
}

/// r_int(X, Y) − [r_amb(X, Y) − g(R(ν, X)Y, ν)] on the plane x₃ = 0, ν its unit normal.
///
/// The plane must be totally geodesic in `ambient` for the residual to vanish.
pub fn gauss_equation_residual<C: MetricChart<3> + ?Sized>(ambient: &C, p: &Point<2>, x: &Point<2>, y: &Point<2>) -> Result<f64> {
    let slice = Slice { ambient };
    let q = lift(p);
    let amb = curvature_at(ambient, &q)?;
    let int = curvature_at(&slice, p)?;
    let g = amb.metric;
    // third column: e₃ orthogonalized against the tangent plane
    let t = gram_schmidt(&g, &Tensor2::<3>::identity()).ok_or_else(|| MetricError::SingularMetric { point: q.iter().copied().collect() })?;
    let nu: Point<3> = t.column(2).into();
    let (x3, y3) = (lift(x), lift(y));
    let extrinsic = amb.ricci_of(&x3, &y3) - nu.dot(&(g * amb.apply(&nu, &x3, &y3)));
    Ok((int.ricci_of(x, y) - extrinsic).abs())
}

/// Largest residual over coordinate basis pairs at `p`.
pub fn gauss_equation_check<C: MetricChart<3> + ?Sized>(ambient: &C, p: &Point<2>) -> Result<f64> {
    let basis = [Point::<2>::new(1.0, 0.0), Point::<2>::new(0.0, 1.0)];
    let mut worst: f64 = 0.0;
    for x in &basis {
        for y in &basis {
            worst = worst.max(gauss_equation_residual(ambient, p, x, y)?);
        }
    }
    Ok(worst)
}
