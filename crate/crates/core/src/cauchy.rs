//! Slice Cauchy kernel, contour quadrature on circles in a complex slice ℂ_j,
//! and Taylor coefficient extraction.

use std::f64::consts::PI;

use crate::clifford::{CliffordNumber, ImaginaryUnit, Paravector};
use crate::config;
use crate::error::{Error, Result};
use crate::growth::validity_radius;
use crate::series::SliceSeries;

/// Circle of radius `radius` around 0 in ℂ_j, traversed counterclockwise
/// (θ increasing in the chart u + jv) with `nodes` trapezoidal points.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourSpec {
    radius: f64,
    j: ImaginaryUnit,
    nodes: usize,
}

impl ContourSpec {
    pub fn new(radius: f64, j: ImaginaryUnit, nodes: usize) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidParameter(format!("contour radius must be positive, got {radius}")));
        }
        if nodes < 8 {
            return Err(Error::InvalidParameter(format!("need at least 8 nodes, got {nodes}")));
        }
        Ok(Self { radius, j, nodes })
    }

    /// Default node count on the slice through e₁.
    pub fn with_radius(n: usize, radius: f64) -> Result<Self> {
        Self::new(radius, ImaginaryUnit::basis(n, 1), config::CAUCHY_NODES)
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn j(&self) -> &ImaginaryUnit {
        &self.j
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    /// Node angles θ_k = 2πk/N.
    fn angles(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.nodes).map(move |k| 2.0 * PI * k as f64 / self.nodes as f64)
    }
}

fn mul_para(a: &Paravector, b: &Paravector) -> CliffordNumber {
    &a.to_clifford() * &b.to_clifford()
}

fn check_singular(s: &Paravector, x: &Paravector) -> Result<()> {
    if s.n() != x.n() {
        return Err(Error::DimensionMismatch(s.n(), x.n()));
    }
    let gap = (x.x0 - s.x0).abs() + (x.vector_norm() - s.vector_norm()).abs();
    if gap < config::KERNEL_SINGULAR_GUARD {
        return Err(Error::SingularKernel);
    }
    Ok(())
}

/// Q = s² − 2x₀s + |x|², a paravector in the slice of s.
fn q_form(s: &Paravector, x: &Paravector) -> Paravector {
    s.square().sub(&s.scale(2.0 * x.x0)).add(&Paravector::real(s.n(), x.norm_sqr()))
}

/// Both expressions of S_L^{-1}(s, x):
/// −(x² − 2s₀x + |s|²)^{-1}(x − s̄) and (s − x̄)(s² − 2x₀s + |x|²)^{-1}.
pub fn kernel_forms(s: &Paravector, x: &Paravector) -> Result<(CliffordNumber, CliffordNumber)> {
    check_singular(s, x)?;
    let p = x.square().sub(&x.scale(2.0 * s.x0)).add(&Paravector::real(x.n(), s.norm_sqr()));
    let first = -&mul_para(&p.inverse()?, &x.sub(&s.conj()));
    let second = mul_para(&s.sub(&x.conj()), &q_form(s, x).inverse()?);
    Ok((first, second))
}

/// S_L^{-1}(s, x), second (right-sided) form. Debug builds also compute the
/// first form and assert that both agree.
pub fn cauchy_kernel(s: &Paravector, x: &Paravector) -> Result<CliffordNumber> {
    check_singular(s, x)?;
    let second = mul_para(&s.sub(&x.conj()), &q_form(s, x).inverse()?);
    #[cfg(debug_assertions)]
    {
        let (first, _) = kernel_forms(s, x)?;
        let scale = second.norm().max(1e-300);
        debug_assert!(
            first.max_abs_diff(&second) <= config::KERNEL_FORM_AGREEMENT * scale,
            "kernel forms disagree at s={s:?}, x={x:?}"
        );
    }
    Ok(second)
}

/// ∂S_L^{-1}(s, x)/∂x_i.
///
/// For i ≥ 1: (e_i s² − 2x₀e_i s + |x|²e_i − 2x_i s + 2x_i x̄)Q^{-2}.
/// For i = 0: (2(s − x̄)(s − x₀) − Q)Q^{-2}, which is 1/(s − x)² when s and
/// x share a slice.
pub fn kernel_derivative(s: &Paravector, x: &Paravector, i: usize) -> Result<CliffordNumber> {
    check_singular(s, x)?;
    let n = x.n();
    if i > n {
        return Err(Error::InvalidParameter(format!("derivative index {i} exceeds n = {n}")));
    }
    let q = q_form(s, x);
    let qinv = q.inverse()?;
    let qinv2 = mul_para(&qinv, &qinv);
    let numer = if i == 0 {
        let t = mul_para(&s.sub(&x.conj()), &s.sub(&Paravector::real(n, x.x0))).scale(2.0);
        &t - &q.to_clifford()
    } else {
        let xi = x.vec[i - 1];
        let mut out = &CliffordNumber::unit(n, i) * &q.to_clifford();
        out.add_scaled(&s.to_clifford(), -2.0 * xi);
        out.add_scaled(&x.conj().to_clifford(), 2.0 * xi);
        out
    };
    Ok(&numer * &qinv2)
}

/// f(x) = (1/2π)∫ S_L^{-1}(s, x) ds_j f(s) with ds_j = −j ds = s dθ on
/// s(θ) = r(cos θ + j sin θ), by the trapezoidal rule.
pub fn cauchy_eval(f: &SliceSeries, x: &Paravector, c: &ContourSpec) -> Result<CliffordNumber> {
    if f.n() != x.n() || c.j.n() != x.n() {
        return Err(Error::DimensionMismatch(f.n(), x.n()));
    }
    if x.norm() >= c.radius {
        return Err(Error::OutsideContour);
    }
    if c.radius >= validity_radius(f) {
        return Err(Error::InvalidParameter(format!(
            "contour radius {} exceeds the validity radius of the truncated series",
            c.radius
        )));
    }
    let mut acc = CliffordNumber::zero(x.n());
    for th in c.angles() {
        let s = Paravector::from_slice(c.radius * th.cos(), c.radius * th.sin(), &c.j);
        let k = cauchy_kernel(&s, x)?;
        let fs = f.evaluate(&s);
        acc.add_scaled(&(&(&k * &s.to_clifford()) * &fs), 1.0);
    }
    Ok(acc.scale(1.0 / c.nodes as f64))
}

/// a_ℓ = (1/2π)∫ s^{-ℓ-1} ds_j f(s) = mean over nodes of s^{-ℓ} f(s), for any
/// evaluator of a left slice monogenic function.
pub fn coeff_extract(f: impl Fn(&Paravector) -> CliffordNumber, l: usize, c: &ContourSpec) -> CliffordNumber {
    let n = c.j.n();
    let mut acc = CliffordNumber::zero(n);
    let scale = c.radius.powi(-(l as i32));
    for th in c.angles() {
        let s = Paravector::from_slice(c.radius * th.cos(), c.radius * th.sin(), &c.j);
        let phase = -(l as f64) * th;
        let inv_pow = c.j.complex(scale * phase.cos(), scale * phase.sin());
        acc.add_scaled(&(&inv_pow * &f(&s)), 1.0);
    }
    acc.scale(1.0 / c.nodes as f64)
}

/// Extracts a₀..a_N of a stored series through its evaluator.
pub fn extract_all(f: &SliceSeries, c: &ContourSpec) -> Vec<CliffordNumber> {
    (0..=f.degree()).map(|l| coeff_extract(|x| f.evaluate(x), l, c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_poly(rng: &mut ChaCha8Rng, n: usize, deg: usize) -> SliceSeries {
        let coeffs = (0..=deg)
            .map(|_| CliffordNumber::from_coeffs(n, (0..1 << n).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap())
            .collect();
        SliceSeries::new(n, coeffs).unwrap()
    }

    fn random_point(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> Paravector {
        Paravector::new(rng.gen_range(-scale..scale), (0..n).map(|_| rng.gen_range(-scale..scale)).collect()).unwrap()
    }

    #[test]
    fn kernel_real_case() {
        let k = cauchy_kernel(&Paravector::real(2, 2.0), &Paravector::real(2, 1.0)).unwrap();
        assert!(k.max_abs_diff(&CliffordNumber::one(2)) < 1e-15);
        assert!(matches!(
            cauchy_kernel(&Paravector::real(2, 1.0), &Paravector::real(2, 1.0)),
            Err(Error::SingularKernel)
        ));
    }

    #[test]
    fn kernel_forms_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..1000 {
            let s = random_point(&mut rng, 3, 2.0);
            let x = random_point(&mut rng, 3, 2.0);
            if let Ok((a, b)) = kernel_forms(&s, &x) {
                assert!(a.max_abs_diff(&b) <= 1e-11 * b.norm().max(1.0));
            }
        }
    }

    #[test]
    fn kernel_blows_up_like_inverse_distance() {
        let x = Paravector::new(0.3, vec![0.4, 0.0]).unwrap();
        let mut prev = 0.0;
        for eps in [1e-2, 1e-3, 1e-4] {
            let s = x.add(&Paravector::real(2, eps));
            let k = cauchy_kernel(&s, &x).unwrap().norm();
            assert!((k * eps - 1.0).abs() < 0.05);
            assert!(k > prev);
            prev = k;
        }
    }

    #[test]
    fn kernel_matches_complex_inverse_on_a_slice() {
        let j = ImaginaryUnit::new(vec![0.6, 0.0, 0.8]).unwrap();
        let s = Paravector::from_slice(1.5, 0.4, &j);
        let x = Paravector::from_slice(0.2, -0.3, &j);
        // (s − x)^{-1} in ℂ
        let (dr, di) = (1.3, 0.7);
        let d2 = dr * dr + di * di;
        let want = j.complex(dr / d2, -di / d2);
        assert!(cauchy_kernel(&s, &x).unwrap().max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn derivative_real_case_and_finite_differences() {
        let d = kernel_derivative(&Paravector::real(2, 3.0), &Paravector::real(2, 1.0), 0).unwrap();
        assert!(d.max_abs_diff(&CliffordNumber::scalar(2, 0.25)) < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let h = 1e-5;
        for _ in 0..100 {
            let s = random_point(&mut rng, 2, 2.0);
            let x = random_point(&mut rng, 2, 1.0);
            for i in 0..=2 {
                let bump = |t: f64| {
                    let mut y = x.clone();
                    if i == 0 {
                        y.x0 += t;
                    } else {
                        y.vec[i - 1] += t;
                    }
                    y
                };
                let (Ok(kp), Ok(km)) = (cauchy_kernel(&s, &bump(h)), cauchy_kernel(&s, &bump(-h))) else { continue };
                let fd = (&kp - &km).scale(0.5 / h);
                let exact = kernel_derivative(&s, &x, i).unwrap();
                assert!(fd.max_abs_diff(&exact) <= 1e-6 * exact.norm().max(1.0));
            }
        }
    }

    #[test]
    fn derivative_is_continuous_at_real_points() {
        let s = Paravector::new(1.2, vec![0.5, -0.7]).unwrap();
        let x = Paravector::real(2, 0.3);
        let at = kernel_derivative(&s, &x, 1).unwrap();
        let near = kernel_derivative(&s, &Paravector::new(0.3, vec![1e-7, 0.0]).unwrap(), 1).unwrap();
        assert!(at.max_abs_diff(&near) < 1e-5);
    }

    #[test]
    fn cauchy_eval_reproduces_polynomials() {
        let one = SliceSeries::constant(CliffordNumber::one(2));
        let c = ContourSpec::with_radius(2, 2.0).unwrap();
        let x = Paravector::new(0.3, vec![0.0, 0.2]).unwrap();
        assert!(cauchy_eval(&one, &x, &c).unwrap().max_abs_diff(&CliffordNumber::one(2)) < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let f = random_poly(&mut rng, 2, 10);
        let direct = f.evaluate(&x);
        let via = cauchy_eval(&f, &x, &c).unwrap();
        assert!(via.max_abs_diff(&direct) < 1e-9 * direct.norm().max(1.0));
        for j in crate::clifford::sphere_sample(2, 6, 4) {
            let cj = ContourSpec::new(2.0, j, 512).unwrap();
            assert!(cauchy_eval(&f, &x, &cj).unwrap().max_abs_diff(&direct) < 1e-9 * direct.norm().max(1.0));
        }
        let c4 = ContourSpec::with_radius(2, 4.0).unwrap();
        assert!(cauchy_eval(&f, &x, &c4).unwrap().max_abs_diff(&via) < 1e-9 * direct.norm().max(1.0));
        let far = Paravector::real(2, 3.0);
        assert!(matches!(cauchy_eval(&f, &far, &c), Err(Error::OutsideContour)));
    }

    #[test]
    fn quadrature_converges_spectrally() {
        let f = SliceSeries::exp_truncated(2, 1.0, 60).with_truncated(false);
        let x = Paravector::new(0.5, vec![0.3, 0.1]).unwrap();
        let direct = f.evaluate(&x);
        let mut prev = f64::INFINITY;
        for nodes in [8, 16, 32] {
            let c = ContourSpec::new(2.0, ImaginaryUnit::basis(2, 1), nodes).unwrap();
            let err = cauchy_eval(&f, &x, &c).unwrap().max_abs_diff(&direct);
            assert!(err < 1e-12 || err * 10.0 <= prev, "nodes={nodes}: {err} vs {prev}");
            prev = err;
        }
    }

    #[test]
    fn coefficient_extraction() {
        let n = 2;
        let f = SliceSeries::monomial(3, CliffordNumber::unit(n, 1));
        let c = ContourSpec::with_radius(n, 1.0).unwrap();
        assert!(coeff_extract(|x| f.evaluate(x), 3, &c).max_abs_diff(&CliffordNumber::unit(n, 1)) < 1e-14);
        assert!(coeff_extract(|x| f.evaluate(x), 2, &c).norm() < 1e-14);
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        let g = random_poly(&mut rng, 3, 20);
        let c3 = ContourSpec::with_radius(3, 1.0).unwrap();
        let got = extract_all(&g, &c3);
        for (a, b) in got.iter().zip(g.coeffs()) {
            assert!(a.max_abs_diff(b) < 1e-10);
        }
    }
}
