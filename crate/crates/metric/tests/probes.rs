use std::f64::consts::PI;

use swlab_metric::probes::{extrapolate_ratios, Grid};
use swlab_metric::{gauss_bonnet_disk, sphere_area_probe, w3_limit, MetricError, Model};

const ORIGIN2: [f64; 2] = [0.0; 2];
const ORIGIN3: [f64; 3] = [0.0; 3];

fn model(name: &str) -> Model {
    Model::parse(name, None).unwrap()
}

/// Coarser than the defaults; still spectrally accurate on these models.
fn light3() -> Grid {
    Grid { directions: 64, polar: 32, steps: 64, tolerance: 1e-7 }
}

#[test]
fn disk_on_round_sphere() {
    let r = gauss_bonnet_disk(&model("round-s2"), &ORIGIN2, 0.5, &Grid::disk()).unwrap();
    assert!((r.interior - 2.0 * PI * (1.0 - 0.5f64.cos())).abs() < 1e-8, "{}", r.interior);
    assert!((r.boundary - 2.0 * PI * 0.5f64.cos()).abs() < 1e-8, "{}", r.boundary);
    assert!((r.total - 2.0 * PI).abs() < 1e-6);
    assert_eq!(r.cochain, 1);
}

#[test]
fn disk_on_hyperbolic_plane() {
    let r = gauss_bonnet_disk(&model("hyperbolic-2"), &ORIGIN2, 0.5, &Grid::disk()).unwrap();
    assert!((r.interior + 2.0 * PI * (0.5f64.cosh() - 1.0)).abs() < 1e-8, "{}", r.interior);
    assert!((r.boundary - 2.0 * PI * 0.5f64.cosh()).abs() < 1e-8, "{}", r.boundary);
    assert!((r.total - 2.0 * PI).abs() < 1e-6);
}

#[test]
fn disk_in_the_plane() {
    let r = gauss_bonnet_disk(&model("flat-2"), &ORIGIN2, 0.5, &Grid::disk()).unwrap();
    assert!(r.interior.abs() < 1e-12);
    assert!((r.boundary - 2.0 * PI).abs() < 1e-10);
}

#[test]
fn disk_totals_for_several_radii() {
    for name in ["round-s2", "hyperbolic-2", "flat-2"] {
        let m = model(name);
        for eps in [0.25, 0.5, 1.0] {
            let r = gauss_bonnet_disk(&m, &ORIGIN2, eps, &Grid::disk()).unwrap();
            assert!((r.total - 2.0 * PI).abs() < 1e-6, "{name} eps={eps}: {}", r.total);
            let (i, b) = m.exact_disk(eps).unwrap();
            assert!((r.interior - i).abs() < 1e-7 && (r.boundary - b).abs() < 1e-7, "{name} eps={eps}");
            assert_eq!(r.cochain, 1);
        }
    }
}

#[test]
fn disk_off_center() {
    let r = gauss_bonnet_disk(&model("round-s2"), &[0.3, -0.2], 0.5, &Grid::disk()).unwrap();
    assert!((r.total - 2.0 * PI).abs() < 1e-6, "{}", r.total);
}

#[test]
fn disk_rejects_bad_input() {
    let m = model("round-s2");
    assert!(matches!(gauss_bonnet_disk(&m, &ORIGIN2, 2.0, &Grid::disk()), Err(MetricError::InvalidParameter(_))));
    assert!(gauss_bonnet_disk(&model("flat-3"), &ORIGIN3, 0.5, &Grid::disk()).is_err());
    let coarse = Grid { directions: 8, polar: 0, steps: 4, tolerance: 1e-12 };
    assert!(matches!(gauss_bonnet_disk(&m, &ORIGIN2, 1.0, &coarse), Err(MetricError::GridTooCoarse { .. })));
}

#[test]
fn flat_sphere_area_ratio_is_one() {
    let r = sphere_area_probe(&model("flat-3"), &ORIGIN3, 0.3, &light3()).unwrap();
    assert!((r.ratio.unwrap() - 1.0).abs() < 1e-12);
    let c = sphere_area_probe(&model("flat-2"), &ORIGIN2, 0.3, &Grid::sphere(2)).unwrap();
    assert!((c.ratio.unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn round_s3_sphere_area() {
    let r = sphere_area_probe(&model("round-s3"), &ORIGIN3, 0.2, &light3()).unwrap();
    assert!((r.value - 4.0 * PI * 0.2f64.sin().powi(2)).abs() < 1e-10);
    assert!((r.ratio.unwrap() - 0.98674).abs() < 1e-5);
}

#[test]
fn warped_sphere_area() {
    let m = model("warped-3");
    for eps in [0.4, 0.2, 0.1] {
        let r = sphere_area_probe(&m, &ORIGIN3, eps, &light3()).unwrap();
        let exact = (1.0 + 0.1 * eps * eps).powi(2);
        assert!((r.ratio.unwrap() - exact).abs() < 1e-10, "{eps}: {}", r.ratio.unwrap());
    }
}

#[test]
fn circle_lengths_match_closed_forms() {
    for name in ["round-s2", "hyperbolic-2"] {
        let m = model(name);
        let r = sphere_area_probe(&m, &ORIGIN2, 0.7, &Grid::sphere(2)).unwrap();
        assert!((r.value - m.exact_sphere_measure(0.7)).abs() < 1e-9, "{name}");
    }
}

#[test]
fn refinement_reduces_error() {
    let m = model("round-s3");
    let eps = 1.0;
    let exact = m.exact_sphere_measure(eps);
    let mut grid = Grid { directions: 16, polar: 8, steps: 4, tolerance: f64::INFINITY };
    let mut last: Option<(f64, f64)> = None;
    for _ in 0..3 {
        let r = sphere_area_probe(&m, &ORIGIN3, eps, &grid).unwrap();
        let err = (r.value - exact).abs();
        if let Some((prev_err, prev_est)) = last {
            assert!(err * 2.0 <= prev_err, "{err} vs {prev_err}");
            assert!(r.error_estimate < prev_est);
        }
        last = Some((err, r.error_estimate));
        grid = Grid { directions: grid.directions * 2, polar: grid.polar * 2, steps: grid.steps * 2, ..grid };
    }
}

#[test]
fn w3_limits_are_one() {
    for name in ["round-s3", "flat-3", "warped-3"] {
        let r = w3_limit(&model(name), &ORIGIN3, &[0.2, 0.1, 0.05], &light3()).unwrap();
        assert!((r.limit - 1.0).abs() < 1e-4, "{name}: {}", r.limit);
        assert_eq!(r.cochain, 1);
        assert_eq!(r.probes.len(), 3);
    }
    let flat = w3_limit(&model("flat-3"), &ORIGIN3, &[0.2, 0.1, 0.05], &light3()).unwrap();
    assert!((flat.limit - 1.0).abs() < 1e-12);
}

#[test]
fn extrapolation_checks_convergence() {
    let eps = [0.2, 0.1, 0.05];
    let (l, _) = extrapolate_ratios(&eps, &[0.96, 0.99, 0.9975]).unwrap();
    assert!((l - 1.0).abs() < 1e-12);
    assert!(matches!(extrapolate_ratios(&eps, &[0.96, 0.99, 0.95]), Err(MetricError::NonConvergent(_))));
    assert!(matches!(extrapolate_ratios(&eps, &[0.99, 0.98, 0.9]), Err(MetricError::NonConvergent(_))));
    assert!(extrapolate_ratios(&[0.1, 0.2, 0.05], &[1.0; 3]).is_err());
    assert!(extrapolate_ratios(&[0.2, 0.1], &[1.0; 2]).is_err());
}

#[test]
fn unknown_models() {
    assert!(matches!(Model::parse("klein", None), Err(MetricError::UnknownModel(_))));
}
