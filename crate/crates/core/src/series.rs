//! Entire left slice monogenic functions as Taylor series Σ x^ℓ a_ℓ with
//! Clifford coefficients on the right.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::clifford::{sup_over_sphere, CliffordNumber, ImaginaryUnit, Paravector};
use crate::error::{Error, Result};
use crate::numeric::{binomial, ln_factorials, log_sum_exp};

/// Coefficients a₀..a_N of Σ x^ℓ a_ℓ.
///
/// `truncated` marks a finite section of an entire function with infinitely
/// many nonzero coefficients; without it the series is an exact polynomial.
/// Growth estimators only trust truncated series up to their validity radius.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceSeries {
    n: usize,
    coeffs: Vec<CliffordNumber>,
    truncated: bool,
}

impl SliceSeries {
    /// Exact polynomial.
    pub fn new(n: usize, coeffs: Vec<CliffordNumber>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("a series needs at least one coefficient".into()));
        }
        if let Some(c) = coeffs.iter().find(|c| c.n() != n) {
            return Err(Error::DimensionMismatch(c.n(), n));
        }
        Ok(Self { n, coeffs, truncated: false })
    }

    /// Truncation of an entire function.
    pub fn truncated(n: usize, coeffs: Vec<CliffordNumber>) -> Result<Self> {
        Ok(Self { truncated: true, ..Self::new(n, coeffs)? })
    }

    pub fn with_truncated(mut self, truncated: bool) -> Self {
        self.truncated = truncated;
        self
    }

    pub fn zero(n: usize) -> Self {
        Self { n, coeffs: vec![CliffordNumber::zero(n)], truncated: false }
    }

    pub fn constant(c: CliffordNumber) -> Self {
        Self { n: c.n(), coeffs: vec![c], truncated: false }
    }

    /// x^k c.
    pub fn monomial(k: usize, c: CliffordNumber) -> Self {
        let n = c.n();
        let mut coeffs = vec![CliffordNumber::zero(n); k + 1];
        coeffs[k] = c;
        Self { n, coeffs, truncated: false }
    }

    /// x^k.
    pub fn x_power(n: usize, k: usize) -> Self {
        Self::monomial(k, CliffordNumber::one(n))
    }

    /// Polynomial with real coefficients.
    pub fn from_real(n: usize, coeffs: &[f64]) -> Result<Self> {
        Self::new(n, coeffs.iter().map(|&c| CliffordNumber::scalar(n, c)).collect())
    }

    /// Degree-N section of e^{σx} = Σ x^ℓ σ^ℓ/ℓ!.
    pub fn exp_truncated(n: usize, sigma: f64, degree: usize) -> Self {
        let lf = ln_factorials(degree);
        let coeffs = (0..=degree)
            .map(|l| {
                let v = if l == 0 {
                    1.0
                } else if sigma == 0.0 {
                    0.0
                } else {
                    sigma.signum().powi(l as i32) * (l as f64 * sigma.abs().ln() - lf[l]).exp()
                };
                CliffordNumber::scalar(n, v)
            })
            .collect();
        Self { n, coeffs, truncated: true }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Truncation order N (index of the last stored coefficient).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[CliffordNumber] {
        &self.coeffs
    }

    /// a_ℓ, zero beyond N.
    pub fn coeff(&self, l: usize) -> CliffordNumber {
        self.coeffs.get(l).cloned().unwrap_or_else(|| CliffordNumber::zero(self.n))
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Index of the last nonzero coefficient, `None` for the zero series.
    pub fn effective_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// f(x) via complex powers (u + iv)^ℓ on the slice through x.
    pub fn evaluate(&self, x: &Paravector) -> CliffordNumber {
        assert_eq!(x.n(), self.n, "dimension mismatch");
        let (u, v, j) = x.decompose();
        let (a, b) = self.slice_parts(u, v);
        &a + &j.left_mul(&b)
    }

    /// (A, B) with f(u + jv) = A + jB for every j ∈ 𝕊.
    pub fn slice_parts(&self, u: f64, v: f64) -> (CliffordNumber, CliffordNumber) {
        let mut a = CliffordNumber::zero(self.n);
        let mut b = CliffordNumber::zero(self.n);
        let (mut c0, mut c1) = (1.0, 0.0);
        for coeff in &self.coeffs {
            a.add_scaled(coeff, c0);
            if c1 != 0.0 {
                b.add_scaled(coeff, c1);
            }
            (c0, c1) = (c0 * u - c1 * v, c0 * v + c1 * u);
        }
        (a, b)
    }

    /// f(u + jv).
    pub fn evaluate_slice(&self, u: f64, v: f64, j: &ImaginaryUnit) -> CliffordNumber {
        let (a, b) = self.slice_parts(u, v);
        &a + &j.left_mul(&b)
    }

    /// ∂_S f: b_{ℓ−1} = ℓ a_ℓ.
    pub fn slice_derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self { n: self.n, coeffs: vec![CliffordNumber::zero(self.n)], truncated: self.truncated };
        }
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(l, c)| c.scale(l as f64)).collect();
        Self { n: self.n, coeffs, truncated: self.truncated }
    }

    /// ∂_S^k f, coefficients (ℓ+k)!/ℓ!·a_{ℓ+k}.
    pub fn derivative_n(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        if k > self.degree() {
            return Self { n: self.n, coeffs: vec![CliffordNumber::zero(self.n)], truncated: self.truncated };
        }
        let coeffs = (k..=self.degree())
            .map(|m| {
                let falling: f64 = ((m - k + 1)..=m).map(|i| i as f64).product();
                self.coeffs[m].scale(falling)
            })
            .collect();
        Self { n: self.n, coeffs, truncated: self.truncated }
    }

    /// Cauchy product Σ x^ℓ Σ_k a_k b_{ℓ−k}; truncation N_f + N_g.
    pub fn star_product(&self, g: &Self) -> Result<Self> {
        if self.n != g.n {
            return Err(Error::DimensionMismatch(self.n, g.n));
        }
        let mut coeffs = vec![CliffordNumber::zero(self.n); self.coeffs.len() + g.coeffs.len() - 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (m, b) in g.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[k + m].add_scaled(&(a * b), 1.0);
                }
            }
        }
        Ok(Self { n: self.n, coeffs, truncated: self.truncated || g.truncated })
    }

    /// (f₀, f₁) with f(u + jv) = f₀ + j f₁, by averaging over ±v.
    pub fn components(&self, u: f64, v: f64, j: &ImaginaryUnit) -> (CliffordNumber, CliffordNumber) {
        let plus = self.evaluate_slice(u, v, j);
        let minus = self.evaluate_slice(u, -v, j);
        let f0 = (&plus + &minus).scale(0.5);
        let f1 = j.left_mul(&(&minus - &plus)).scale(0.5);
        (f0, f1)
    }

    /// Coefficients in powers of (x − a) for real a.
    pub fn taylor_recenter(&self, a: f64) -> Self {
        // repeated synthetic division (Taylor shift)
        let mut c = self.coeffs.clone();
        let deg = self.degree();
        for j in 0..deg {
            for k in (j..deg).rev() {
                let next = c[k + 1].clone();
                c[k].add_scaled(&next, a);
            }
        }
        Self { n: self.n, coeffs: c, truncated: self.truncated }
    }

    /// Coefficient-wise f + g (truncation max of both).
    pub fn add(&self, g: &Self) -> Result<Self> {
        if self.n != g.n {
            return Err(Error::DimensionMismatch(self.n, g.n));
        }
        let len = self.coeffs.len().max(g.coeffs.len());
        let coeffs = (0..len).map(|l| &self.coeff(l) + &g.coeff(l)).collect();
        Ok(Self { n: self.n, coeffs, truncated: self.truncated || g.truncated })
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { n: self.n, coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(), truncated: self.truncated }
    }

    /// f·c: every coefficient multiplied by c on the right.
    pub fn mul_right(&self, c: &CliffordNumber) -> Self {
        Self { n: self.n, coeffs: self.coeffs.iter().map(|a| a * c).collect(), truncated: self.truncated }
    }

    /// Largest coefficient difference, treating missing coefficients as zero.
    pub fn max_coeff_diff(&self, g: &Self) -> f64 {
        let len = self.coeffs.len().max(g.coeffs.len());
        (0..len).map(|l| self.coeff(l).max_abs_diff(&g.coeff(l))).fold(0.0, f64::max)
    }

    /// Log-domain evaluator for growth scans.
    pub fn log_evaluator(&self) -> LogEvaluator {
        LogEvaluator::new(self)
    }
}

/// Binomial expansion of (x + a)^k for real a.
pub fn shifted_power(n: usize, a: f64, k: usize) -> SliceSeries {
    let coeffs = (0..=k).map(|m| CliffordNumber::scalar(n, binomial(k, m) * a.powi((k - m) as i32))).collect();
    SliceSeries { n, coeffs, truncated: false }
}

/// Finite-difference residuals of the Cauchy–Riemann system for (f₀, f₁):
/// returns (|∂_u f₀ − ∂_v f₁|, |∂_v f₀ + ∂_u f₁|).
pub fn cauchy_riemann_residual(f: &SliceSeries, u: f64, v: f64, j: &ImaginaryUnit, h: f64) -> (f64, f64) {
    let c = |u, v| f.components(u, v, j);
    let (f0_up, f1_up) = c(u + h, v);
    let (f0_um, f1_um) = c(u - h, v);
    let (f0_vp, f1_vp) = c(u, v + h);
    let (f0_vm, f1_vm) = c(u, v - h);
    let d = |p: &CliffordNumber, m: &CliffordNumber| (p - m).scale(0.5 / h);
    let (f0u, f1u, f0v, f1v) = (d(&f0_up, &f0_um), d(&f1_up, &f1_um), d(&f0_vp, &f0_vm), d(&f1_vp, &f1_vm));
    ((&f0u - &f1v).norm(), (&f0v + &f1u).norm())
}

/// Evaluates |f| in log domain so huge coefficients and radii do not overflow.
#[derive(Debug, Clone)]
pub struct LogEvaluator {
    n: usize,
    /// Indices of nonzero coefficients with ln|a_ℓ| and a_ℓ/|a_ℓ|.
    terms: Vec<(usize, f64, CliffordNumber)>,
    log_a0: f64,
}

impl LogEvaluator {
    pub fn new(f: &SliceSeries) -> Self {
        let terms = f
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(l, c)| {
                let norm = c.norm();
                // divide instead of scaling by 1/norm: subnormal norms overflow
                let unit = CliffordNumber::from_coeffs(c.n(), c.coeffs().iter().map(|x| x / norm).collect())
                    .expect("same dimension");
                (l, norm.ln(), unit)
            })
            .collect();
        Self { n: f.n, terms, log_a0: f.coeffs[0].norm().ln() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// ln sup_{j ∈ 𝕊} |f(r cos θ + j r sin θ)|.
    pub fn log_sup_modulus(&self, r: f64, theta: f64) -> f64 {
        if r == 0.0 {
            return self.log_a0;
        }
        let lr = r.ln();
        let shift = self.terms.iter().map(|&(l, la, _)| la + l as f64 * lr).fold(f64::NEG_INFINITY, f64::max);
        if shift == f64::NEG_INFINITY {
            return shift;
        }
        let mut a = CliffordNumber::zero(self.n);
        let mut b = CliffordNumber::zero(self.n);
        for (l, la, unit) in &self.terms {
            let w = (la + *l as f64 * lr - shift).exp();
            if w < 1e-300 {
                continue;
            }
            let phase = *l as f64 * theta;
            a.add_scaled(unit, w * phase.cos());
            b.add_scaled(unit, w * phase.sin());
        }
        shift + sup_over_sphere(&a, &b).ln()
    }

    /// ln Σ |a_ℓ| r^ℓ over ℓ in `range` (all terms when `None`).
    pub fn log_majorant(&self, r: f64, range: Option<(usize, usize)>) -> f64 {
        let lr = r.ln();
        let (lo, hi) = range.unwrap_or((0, usize::MAX));
        let it = self
            .terms
            .iter()
            .filter(move |t| t.0 >= lo && t.0 <= hi)
            .map(move |&(l, la, _)| if l == 0 { la } else { la + l as f64 * lr });
        log_sum_exp(it.collect::<Vec<_>>())
    }

    /// ln|a_ℓ| for nonzero coefficients.
    pub fn log_abs(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.terms.iter().map(|t| (t.0, t.1))
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    n: usize,
    #[serde(rename = "N")]
    degree: usize,
    coeffs: Vec<CliffordNumber>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    truncated: bool,
}

impl Serialize for SliceSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesRepr { n: self.n, degree: self.degree(), coeffs: self.coeffs.clone(), truncated: self.truncated }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SliceSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = SeriesRepr::deserialize(d)?;
        if repr.coeffs.len() != repr.degree + 1 {
            return Err(D::Error::custom(format!(
                "N = {} but {} coefficients were given",
                repr.degree,
                repr.coeffs.len()
            )));
        }
        SliceSeries::new(repr.n, repr.coeffs).map(|s| s.with_truncated(repr.truncated)).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn e(n: usize, i: usize) -> CliffordNumber {
        CliffordNumber::unit(n, i)
    }

    fn random_series(rng: &mut ChaCha8Rng, n: usize, deg: usize) -> SliceSeries {
        let coeffs = (0..=deg)
            .map(|_| CliffordNumber::from_coeffs(n, (0..1 << n).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap())
            .collect();
        SliceSeries::new(n, coeffs).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let sq = SliceSeries::x_power(2, 2);
        let e1 = Paravector::new(0.0, vec![1.0, 0.0]).unwrap();
        assert!(sq.evaluate(&e1).max_abs_diff(&CliffordNumber::scalar(2, -1.0)) < 1e-15);
        let f = SliceSeries::new(2, vec![CliffordNumber::one(2), e(2, 2)]).unwrap();
        let want = &CliffordNumber::one(2) + &e(2, 2).scale(2.0);
        assert!(f.evaluate(&Paravector::real(2, 2.0)).max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn evaluate_matches_scalar_horner_at_real_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let f = random_series(&mut rng, 3, 12);
            let x: f64 = rng.gen_range(-2.0..2.0);
            let mut horner = CliffordNumber::zero(3);
            for c in f.coeffs().iter().rev() {
                horner = &horner.scale(x) + c;
            }
            let got = f.evaluate(&Paravector::real(3, x));
            assert!(got.max_abs_diff(&horner) < 1e-12 * (1.0 + horner.norm()));
        }
    }

    #[test]
    fn evaluation_at_real_points_is_independent_of_j() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = random_series(&mut rng, 3, 8);
        let reference = f.evaluate_slice(0.7, 0.0, &ImaginaryUnit::basis(3, 1));
        for j in crate::clifford::sphere_sample(3, 16, 1) {
            assert!(f.evaluate_slice(0.7, 0.0, &j).max_abs_diff(&reference) < 1e-13);
        }
    }

    #[test]
    fn derivative_examples() {
        let d = SliceSeries::x_power(1, 2).slice_derivative();
        assert_eq!(d.coeffs(), &[CliffordNumber::zero(1), CliffordNumber::scalar(1, 2.0)]);
        let c = SliceSeries::constant(CliffordNumber::scalar(1, 5.0)).slice_derivative();
        assert!(c.coeffs()[0].is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = random_series(&mut rng, 2, 7);
        assert!(f.derivative_n(3).max_coeff_diff(&f.slice_derivative().slice_derivative().slice_derivative()) < 1e-12);
    }

    #[test]
    fn derivative_matches_finite_difference_in_x0() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let f = random_series(&mut rng, 2, 9);
        let df = f.slice_derivative();
        let x: f64 = 0.4;
        let h = 1e-5;
        let fd = (&f.evaluate(&Paravector::real(2, x + h)) - &f.evaluate(&Paravector::real(2, x - h))).scale(0.5 / h);
        let exact = df.evaluate(&Paravector::real(2, x));
        assert!(fd.max_abs_diff(&exact) <= 1e-6 * exact.norm().max(1.0));
    }

    #[test]
    fn star_product_examples() {
        let one = CliffordNumber::one(2);
        let f = SliceSeries::new(2, vec![one.clone(), e(2, 1)]).unwrap();
        let g = SliceSeries::new(2, vec![one.clone(), e(2, 2)]).unwrap();
        let fg = f.star_product(&g).unwrap();
        assert_eq!(fg.coeffs(), &[one.clone(), &e(2, 1) + &e(2, 2), CliffordNumber::blade(2, 3)]);
        let gf = g.star_product(&f).unwrap();
        assert_eq!(gf.coeffs()[2], CliffordNumber::blade(2, 3).scale(-1.0));
        assert!(f.star_product(&SliceSeries::zero(3)).is_err());
    }

    #[test]
    fn components_examples() {
        let j = ImaginaryUnit::basis(2, 2);
        let (f0, f1) = SliceSeries::x_power(2, 1).components(0.3, 1.7, &j);
        assert!(f0.max_abs_diff(&CliffordNumber::scalar(2, 0.3)) < 1e-15);
        assert!(f1.max_abs_diff(&CliffordNumber::scalar(2, 1.7)) < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = random_series(&mut rng, 2, 6);
        let (_, f1) = f.components(0.5, 0.0, &j);
        assert!(f1.norm() < 1e-15);
        let (f0, f1) = f.components(0.5, 0.8, &j);
        let (g0, g1) = f.components(0.5, -0.8, &j);
        assert!(f0.max_abs_diff(&g0) < 1e-12 && f1.max_abs_diff(&g1.scale(-1.0)) < 1e-12);
        let rebuilt = &f0 + &j.left_mul(&f1);
        assert!(rebuilt.max_abs_diff(&f.evaluate_slice(0.5, 0.8, &j)) < 1e-12);
    }

    #[test]
    fn recenter_examples() {
        let sq = SliceSeries::x_power(1, 2);
        assert_eq!(sq.taylor_recenter(0.0), sq);
        let r = sq.taylor_recenter(1.0);
        let want = SliceSeries::from_real(1, &[1.0, 2.0, 1.0]).unwrap();
        assert!(r.max_coeff_diff(&want) < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let f = random_series(&mut rng, 2, 10);
        let g = f.taylor_recenter(0.5);
        for _ in 0..20 {
            let x = Paravector::new(rng.gen_range(-0.5..1.5), vec![rng.gen_range(-0.7..0.7), 0.0]).unwrap();
            let y = x.sub(&Paravector::real(2, 0.5));
            if y.norm() <= 1.0 {
                assert!(g.evaluate(&y).max_abs_diff(&f.evaluate(&x)) < 1e-10);
            }
        }
    }

    #[test]
    fn cauchy_riemann_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = random_series(&mut rng, 3, 8);
        let j = crate::clifford::sphere_sample(3, 10, 2).pop().unwrap();
        let (r1, r2) = cauchy_riemann_residual(&f, 0.3, 0.6, &j, 1e-4);
        assert!(r1 < 1e-5 && r2 < 1e-5, "{r1} {r2}");
    }

    #[test]
    fn log_evaluator_agrees_with_direct_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let f = random_series(&mut rng, 2, 9);
        let le = f.log_evaluator();
        for _ in 0..20 {
            let (r, th): (f64, f64) = (rng.gen_range(0.1..3.0), rng.gen_range(0.0..std::f64::consts::PI));
            let (a, b) = f.slice_parts(r * th.cos(), r * th.sin());
            let direct = sup_over_sphere(&a, &b).ln();
            assert!((le.log_sup_modulus(r, th) - direct).abs() < 1e-12);
        }
        assert_eq!(le.log_sup_modulus(0.0, 0.0), f.coeffs()[0].norm().ln());
    }

    #[test]
    fn exp_truncated_coefficients() {
        let f = SliceSeries::exp_truncated(1, 2.0, 200);
        assert!(f.is_truncated());
        assert!((f.coeff(3).scalar_part() - 8.0 / 6.0).abs() < 1e-14);
        assert!(f.coeff(200).scalar_part() > 0.0);
    }

    #[test]
    fn serialization_round_trip() {
        let f = SliceSeries::exp_truncated(2, 1.0, 5);
        let json = serde_json::to_string(&f).unwrap();
        let back: SliceSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        let p = SliceSeries::x_power(1, 2);
        let json = serde_json::to_string(&p).unwrap();
        assert!(!json.contains("truncated"));
        assert!(serde_json::from_str::<SliceSeries>(r#"{"n":1,"N":3,"coeffs":[]}"#).is_err());
    }
}
