//! Quadratic Gauss sums that decide when the Yang–Baxter constant-term
//! argument degenerates.

use std::f64::consts::PI;

use super::context::ScalarContext;
use super::cyclo::Cyclo;
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct GaussReport {
    pub dim: u32,
    /// Σ_{i<N} q^{-i²}
    pub sum_a: Cyclo,
    /// Σ_{i<N} q^{i-i²}
    pub sum_b: Cyclo,
    pub vanishes_a: bool,
    pub vanishes_b: bool,
    /// |Re Σq^{k²} − cos form| and |Im Σq^{k²} − sin form|.
    pub hansen_residuals: [f64; 2],
}

pub fn gauss_diagnostics(dim: u32) -> Result<GaussReport> {
    let ctx = ScalarContext::new(dim)?;
    let n = dim as i64;
    let sum = |f: &dyn Fn(i64) -> i64| (0..n).map(|i| ctx.q_pow(f(i))).fold(ctx.zero(), |a, b| a + b);
    let sum_a = sum(&|i| -i * i);
    let sum_b = sum(&|i| i - i * i);
    let plain = sum(&|i| i * i).embed();

    let nf = dim as f64;
    let (s, c) = (nf * PI / 2.0).sin_cos();
    let cos_form = nf.sqrt() / 2.0 * (1.0 + c + s);
    let sin_form = nf.sqrt() / 2.0 * (1.0 + c - s);

    Ok(GaussReport {
        dim,
        vanishes_a: sum_a.is_zero(),
        vanishes_b: sum_b.is_zero(),
        sum_a,
        sum_b,
        hansen_residuals: [(plain.re - cos_form).abs(), (plain.im - sin_form).abs()],
    })
}
