//! Volumes of unit spheres and the Chern–Gauss–Bonnet constant.

use std::f64::consts::PI;

use serde::Serialize;
use statrs::function::gamma::gamma;

/// ω_d = 2π^{(d+1)/2} / Γ((d+1)/2), the volume of the unit d-sphere.
pub fn omega(d: u32) -> f64 {
    let a = (d as f64 + 1.0) / 2.0;
    2.0 * PI.powf(a) / gamma(a)
}

/// (2k − 1)!! as a float.
pub fn double_factorial_odd(k: u32) -> f64 {
    (1..=k).map(|j| (2 * j - 1) as f64).product()
}

/// ω_{2k} = 2^{k+1} π^k / (2k − 1)!!.
pub fn omega_even(k: u32) -> f64 {
    2f64.powi(k as i32 + 1) * PI.powi(k as i32) / double_factorial_odd(k)
}

/// (2π)^k / (2k − 1)!! = ω_{2k} / 2.
pub fn cgb_constant(k: u32) -> f64 {
    (2.0 * PI).powi(k as i32) / double_factorial_odd(k)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SphereConstants {
    pub k: u32,
    /// ω_{2k} from the Gamma function.
    pub omega_gamma: f64,
    /// ω_{2k} from the double factorial.
    pub omega_double_factorial: f64,
    pub cgb_constant: f64,
    pub relative_gap: f64,
}

pub fn sphere_constants(k: u32) -> SphereConstants {
    assert!(k >= 1, "k must be positive");
    let omega_gamma = omega(2 * k);
    let omega_double_factorial = omega_even(k);
    SphereConstants {
        k,
        omega_gamma,
        omega_double_factorial,
        cgb_constant: cgb_constant(k),
        relative_gap: (omega_gamma - omega_double_factorial).abs() / omega_double_factorial,
    }
}
