//! Default grids and tolerances, collected in one place.
//!
//! Every tolerance that is a numerical choice rather than a mathematical
//! necessity lives here so the CLI and the tests share the same values.

/// Relative accuracy of φ(t): |r^{ϱ(r)} − t|/t at r = φ(t).
pub const PHI_REL_TOL: f64 = 1e-12;
/// Maximum number of bracket expansions when inverting r ↦ r^{ϱ(r)}.
pub const PHI_MAX_DOUBLINGS: usize = 200;
/// Relative step of the central finite difference used for tabulated orders.
pub const FD_REL_STEP: f64 = 1e-6;

/// Radius range scanned when checking that r ↦ r^{ϱ(r)} is increasing.
pub const MONOTONE_SCAN: (f64, f64, usize) = (1e-3, 1e6, 2000);
/// Tail end T of the window [T/2, T] used for limit checks.
pub const LIMIT_TAIL_T: f64 = 1e8;
/// Relative tolerance for limit checks in the tail window.
pub const LIMIT_REL_TOL: f64 = 0.02;
/// Absolute slack for log G_ℓ + log G_k ≤ log G_{ℓ+k}.
pub const G_SUBMULT_TOL: f64 = 1e-9;

/// Default norm scan: radii, angles and smallest radius.
pub const NORM_RADII: usize = 400;
pub const NORM_ANGLES: usize = 64;
pub const NORM_R_MIN: f64 = 1e-3;
/// Relative size of the top block of coefficients allowed before a truncated
/// series stops representing its entire limit.
pub const TRUNCATION_REL_TOL: f64 = 1e-6;
/// Largest radius used by the growth-based type estimator.
pub const GROWTH_R_CAP: f64 = 1e6;

/// Cauchy quadrature defaults.
pub const CAUCHY_NODES: usize = 512;
pub const KERNEL_SINGULAR_GUARD: f64 = 1e-9;
pub const KERNEL_FORM_AGREEMENT: f64 = 1e-11;

/// Certificate grids: 16 log-spaced values in [1e-3, 1e3].
pub const CERT_GRID: (f64, f64, usize) = (1e-3, 1e3, 16);
/// Growth comparison r^{ϱ₁}/r^{ϱ₂} is checked on [1, 1e8].
pub const GROWTH_COMPARISON_RANGE: (f64, f64) = (1.0, 1e8);

/// Superoscillation window, real grid step and imaginary half-width.
pub const SUPEROSC_WINDOW: f64 = 5.0;
pub const SUPEROSC_STEP: f64 = 1e-2;
pub const SUPEROSC_IM_HALF_WIDTH: f64 = 2.0;

/// Log-spaced grid of `count` points on [lo, hi].
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi >= lo && count >= 1);
    if count == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| {
            if i == 0 {
                lo
            } else if i + 1 == count {
                hi
            } else {
                (a + (b - a) * i as f64 / (count - 1) as f64).exp()
            }
        })
        .collect()
}

/// Default λ/σ certificate grid; `refine` doubles its resolution.
pub fn cert_grid(refine: bool) -> Vec<f64> {
    let (lo, hi, count) = CERT_GRID;
    log_grid(lo, hi, if refine { 2 * count - 1 } else { count })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_grid_endpoints() {
        let g = log_grid(1e-3, 1e3, 16);
        assert_eq!(g.len(), 16);
        assert_eq!(g[0], 1e-3);
        assert_eq!(g[15], 1e3);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn refined_cert_grid_contains_coarse_grid() {
        let coarse = cert_grid(false);
        let fine = cert_grid(true);
        for (i, c) in coarse.iter().enumerate() {
            assert!((fine[2 * i] / c - 1.0).abs() < 1e-12);
        }
    }
}
