//! Built-in test integrands on `[-1/2, 1/2]^d` with known integrals.

use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Integrand {
    /// `f = 1`.
    One,
    /// `prod cos(pi x_i)`; integral `(2/pi)^d`.
    CosProduct,
    /// `prod (1 - 4 x_i^2)`; integral `(2/3)^d`, vanishes on the boundary.
    Bump,
    /// `x_1`; integral 0.
    Linear,
}

impl Integrand {
    pub fn eval(self, x: &[f64]) -> f64 {
        match self {
            Integrand::One => 1.0,
            Integrand::CosProduct => x.iter().map(|t| (PI * t).cos()).product(),
            Integrand::Bump => x.iter().map(|t| 1.0 - 4.0 * t * t).product(),
            Integrand::Linear => x[0],
        }
    }

    pub fn exact(self, d: usize) -> f64 {
        match self {
            Integrand::One => 1.0,
            Integrand::CosProduct => (2.0 / PI).powi(d as i32),
            Integrand::Bump => (2.0f64 / 3.0).powi(d as i32),
            Integrand::Linear => 0.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Integrand::One => "one",
            Integrand::CosProduct => "cos-product",
            Integrand::Bump => "bump",
            Integrand::Linear => "linear",
        }
    }
}
