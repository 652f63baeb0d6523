//! Wiener amalgam numerics on a uniform 1-D grid: the local maximum
//! function, W(L^inf, L^p) norms with Riemann weight, and the demonstration
//! that no constant can bound ||f||_2 by ||f||_1 uniformly over shrinking
//! indicator functions.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AmalgamError {
    #[error("grid step must be positive, got {0}")]
    BadStep(f64),
    #[error("sample count must be at least 1")]
    EmptyGrid,
    #[error("unsupported exponent {0}; p must be 1, 2 or infinity")]
    BadExponent(String),
    #[error("width {width} is not resolvable by the grid (need step <= width/100, have {step})")]
    WidthUnresolvable { width: f64, step: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Exponent {
    One,
    Two,
    Infinity,
}

/// Real samples of a function on the uniform grid origin + k*step.
#[derive(Debug, Clone)]
pub struct SampledFunction {
    pub origin: f64,
    pub step: f64,
    pub values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(origin: f64, step: f64, values: Vec<f64>) -> Result<Self, AmalgamError> {
        if !(step > 0.0) {
            return Err(AmalgamError::BadStep(step));
        }
        if values.is_empty() {
            return Err(AmalgamError::EmptyGrid);
        }
        Ok(Self { origin, step, values })
    }

    /// Indicator of [a, a + width) sampled on the given grid.
    pub fn indicator(origin: f64, step: f64, count: usize, a: f64, width: f64) -> Result<Self, AmalgamError> {
        let values = (0..count)
            .map(|k| {
                let x = origin + k as f64 * step;
                if x >= a && x < a + width { 1.0 } else { 0.0 }
            })
            .collect();
        Self::new(origin, step, values)
    }

    /// L^p norm with Riemann weight: (h * sum |f|^p)^(1/p), or max |f|.
    pub fn norm(&self, p: Exponent) -> f64 {
        match p {
            Exponent::One => self.step * self.values.iter().map(|v| v.abs()).sum::<f64>(),
            Exponent::Two => {
                (self.step * self.values.iter().map(|v| v * v).sum::<f64>()).sqrt()
            }
            Exponent::Infinity => self.values.iter().fold(0.0f64, |a, &v| a.max(v.abs())),
        }
    }
}

/// Sliding-window maximum of |f| over [x - radius, x + radius] on the grid
/// (the discrete stand-in for f^#_U(x) = ess sup_{y in xU} |f(y)|).
pub fn local_max(f: &SampledFunction, radius: f64) -> SampledFunction {
    let window = (radius / f.step + 1e-12).floor() as usize;
    let n = f.values.len();
    let values = (0..n)
        .map(|k| {
            let lo = k.saturating_sub(window);
            let hi = (k + window).min(n - 1);
            f.values[lo..=hi].iter().fold(0.0f64, |a, &v| a.max(v.abs()))
        })
        .collect();
    SampledFunction { origin: f.origin, step: f.step, values }
}

/// ||f||_{W(L^inf, L^p)} = ||f^#_U||_p with U = [-radius, radius].
pub fn amalgam_norm(f: &SampledFunction, radius: f64, p: Exponent) -> f64 {
    local_max(f, radius).norm(p)
}

#[derive(Debug, Clone, Serialize)]
pub struct ViolationRow {
    pub width: f64,
    pub ratio: f64,
    pub expected: f64,
}

/// For f = indicator of width w, ||f||_2 / ||f||_1 = w^{-1/2}: the table is
/// strictly increasing as w shrinks, so no constant C can dominate it.
/// Each width uses its own grid with step = width / 100.
pub fn estimate_violation_demo(widths: &[f64]) -> Result<Vec<ViolationRow>, AmalgamError> {
    let mut rows = Vec::with_capacity(widths.len());
    for &w in widths {
        if !(w > 0.0) {
            return Err(AmalgamError::WidthUnresolvable { width: w, step: f64::NAN });
        }
        let step = w / 100.0;
        let f = SampledFunction::indicator(0.0, step, 120, 0.0, w)?;
        let one = f.norm(Exponent::One);
        let two = f.norm(Exponent::Two);
        if one <= 0.0 {
            return Err(AmalgamError::WidthUnresolvable { width: w, step });
        }
        rows.push(ViolationRow { width: w, ratio: two / one, expected: w.powf(-0.5) });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_radius_is_abs() {
        let f = SampledFunction::new(0.0, 0.5, vec![1.0, -2.0, 3.0]).unwrap();
        assert_eq!(local_max(&f, 0.0).values, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn indicator_widens_by_one_cell() {
        let f = SampledFunction::new(0.0, 1.0, vec![0.0, 0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(local_max(&f, 1.0).values, vec![0.0, 1.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn constant_function_fixed() {
        let f = SampledFunction::new(-1.0, 0.1, vec![2.0; 30]).unwrap();
        assert_eq!(local_max(&f, 0.5).values, vec![2.0; 30]);
    }

    #[test]
    fn single_cell_l2_norm() {
        let h = 0.01;
        let f = SampledFunction::new(0.0, h, vec![1.0]).unwrap();
        assert_relative_eq!(amalgam_norm(&f, 0.0, Exponent::Two), h.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn unit_indicator_l2_norm() {
        let h = 0.01;
        let f = SampledFunction::indicator(-0.5, h, 250, 0.0, 1.0).unwrap();
        assert_relative_eq!(amalgam_norm(&f, 0.0, Exponent::Two), 1.0, epsilon = 1e-12);
        // widened support [−0.1, 1.1): mass 1.2
        let widened = amalgam_norm(&f, 0.1, Exponent::Two);
        assert!((widened - 1.2f64.sqrt()).abs() < 2.0 * h);
    }

    #[test]
    fn monotone_in_radius() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = SampledFunction::new(
            0.0,
            0.05,
            (0..200).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        )
        .unwrap();
        let mut prev = 0.0;
        for r in [0.0, 0.05, 0.1, 0.2, 0.4] {
            let n = amalgam_norm(&f, r, Exponent::Two);
            assert!(n >= prev - 1e-12);
            prev = n;
        }
        assert_relative_eq!(
            amalgam_norm(&f, 0.0, Exponent::One),
            f.norm(Exponent::One),
            epsilon = 1e-12
        );
    }

    #[test]
    fn violation_table_matches_inverse_sqrt() {
        let rows = estimate_violation_demo(&[1.0, 0.1, 0.01, 1e-4]).unwrap();
        for row in &rows {
            assert!(
                (row.ratio - row.expected).abs() <= 0.01 * row.expected,
                "w={} ratio={} expected={}",
                row.width,
                row.ratio,
                row.expected
            );
        }
        for pair in rows.windows(2) {
            assert!(pair[1].ratio > pair[0].ratio);
        }
    }

    #[test]
    fn convolution_local_max_bound() {
        // (f*g)^#_U <= |f| * g^#_U pointwise, up to grid error
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let h = 0.1;
        let n = 64usize;
        let f: Vec<f64> = (0..n).map(|k| if k < 8 { rng.gen_range(-1.0..1.0) } else { 0.0 }).collect();
        let g: Vec<f64> = (0..n).map(|k| if k < 8 { rng.gen_range(-1.0..1.0) } else { 0.0 }).collect();
        let conv: Vec<f64> = (0..n)
            .map(|k| (0..=k).map(|j| f[j] * g[k - j]).sum::<f64>() * h)
            .collect();
        let conv_fn = SampledFunction::new(0.0, h, conv).unwrap();
        let g_sharp = local_max(&SampledFunction::new(0.0, h, g.clone()).unwrap(), 2.0 * h);
        let bound: Vec<f64> = (0..n)
            .map(|k| (0..=k).map(|j| f[j].abs() * g_sharp.values[k - j]).sum::<f64>() * h)
            .collect();
        let lhs = local_max(&conv_fn, 2.0 * h);
        for k in 0..n {
            assert!(lhs.values[k] <= bound[k] + 1e-9);
        }
    }
}
