//! Infinite-order differential operators P = Σ u_ℓ ⋆ ∂^ℓ, their class
//! certificates, and reconstruction of u_ℓ from an operator's action on
//! monomials.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::clifford::CliffordNumber;
use crate::config::{self, cert_grid, log_grid};
use crate::error::{Error, Result};
use crate::growth::{
    derivative_bound_k, norm_estimate, verify_derivative_norm_bound, GrowthParams, NormGrid,
};
use crate::numeric::{binomial, ln_factorials, par_map};
use crate::proximate::ProximateOrder;
use crate::report::{maybe_infinite, num, VerificationReport};
use crate::series::{shifted_power, SliceSeries};

/// Truncated operator Σ_{ℓ ≤ L} u_ℓ ⋆ ∂^ℓ.
///
/// Coefficients are stored as `coeffs[ℓ]·exp(log_scales[ℓ])` so that
/// families like a^ℓ/ℓ! stay representable for large ℓ.
#[derive(Debug, Clone, PartialEq)]
pub struct InfOrderOperator {
    n: usize,
    coeffs: Vec<SliceSeries>,
    log_scales: Vec<f64>,
    rho1: ProximateOrder,
    rho2: ProximateOrder,
}

impl InfOrderOperator {
    /// Operator with the given coefficients and constant order 1 on both sides.
    pub fn new(coeffs: Vec<SliceSeries>) -> Result<Self> {
        let scales = vec![0.0; coeffs.len()];
        Self::with_log_scales(coeffs, scales)
    }

    pub fn with_log_scales(coeffs: Vec<SliceSeries>, log_scales: Vec<f64>) -> Result<Self> {
        let n = coeffs.first().map(|c| c.n()).ok_or_else(|| Error::InvalidParameter("operator needs u_0".into()))?;
        if let Some(c) = coeffs.iter().find(|c| c.n() != n) {
            return Err(Error::DimensionMismatch(n, c.n()));
        }
        if log_scales.len() != coeffs.len() {
            return Err(Error::InvalidParameter(format!(
                "{} log scales for {} coefficients",
                log_scales.len(),
                coeffs.len()
            )));
        }
        if log_scales.iter().any(|s| s.is_nan() || *s == f64::INFINITY) {
            return Err(Error::InvalidParameter("log scales must be finite or -inf".into()));
        }
        let one = ProximateOrder::constant(1.0)?;
        Ok(Self { n, coeffs, log_scales, rho1: one.clone(), rho2: one })
    }

    pub fn with_orders(mut self, rho1: ProximateOrder, rho2: ProximateOrder) -> Self {
        self.rho1 = rho1;
        self.rho2 = rho2;
        self
    }

    /// u_0 = 1.
    pub fn identity(n: usize) -> Self {
        Self::new(vec![SliceSeries::constant(CliffordNumber::one(n))]).expect("valid dimension")
    }

    /// u_ℓ = a^ℓ/ℓ! for ℓ ≤ L, i.e. f ↦ f(x + a) on polynomials of degree ≤ L.
    pub fn translation(n: usize, a: f64, l: usize) -> Self {
        let lf = ln_factorials(l);
        let (mut coeffs, mut scales) = (Vec::with_capacity(l + 1), Vec::with_capacity(l + 1));
        for k in 0..=l {
            let sign = if a < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
            if a == 0.0 && k > 0 {
                coeffs.push(SliceSeries::zero(n));
                scales.push(f64::NEG_INFINITY);
            } else {
                coeffs.push(SliceSeries::constant(CliffordNumber::scalar(n, sign)));
                scales.push(if k == 0 { 0.0 } else { k as f64 * a.abs().ln() - lf[k] });
            }
        }
        Self::with_log_scales(coeffs, scales).expect("consistent lengths")
    }

    /// Scalar coefficients given by their logarithms; −∞ means zero.
    pub fn scalar_log_family(n: usize, log_values: &[f64]) -> Result<Self> {
        let coeffs = log_values
            .iter()
            .map(|&v| {
                if v == f64::NEG_INFINITY {
                    SliceSeries::zero(n)
                } else {
                    SliceSeries::constant(CliffordNumber::one(n))
                }
            })
            .collect();
        Self::with_log_scales(coeffs, log_values.to_vec())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Truncation L.
    pub fn len_l(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn rho1(&self) -> &ProximateOrder {
        &self.rho1
    }

    pub fn rho2(&self) -> &ProximateOrder {
        &self.rho2
    }

    /// Stored coefficient and its log scale.
    pub fn scaled_coefficient(&self, l: usize) -> (&SliceSeries, f64) {
        (&self.coeffs[l], self.log_scales[l])
    }

    /// u_ℓ as a plain series (may underflow for extreme scales).
    pub fn coefficient(&self, l: usize) -> SliceSeries {
        let s = self.log_scales[l];
        if s == 0.0 {
            self.coeffs[l].clone()
        } else {
            self.coeffs[l].scale(s.exp())
        }
    }

    /// Σ_{ℓ ≤ min(L, N_f)} u_ℓ ⋆ ∂^ℓ f.
    pub fn apply(&self, f: &SliceSeries) -> Result<SliceSeries> {
        if f.n() != self.n {
            return Err(Error::DimensionMismatch(self.n, f.n()));
        }
        let mut out = SliceSeries::zero(self.n).with_truncated(f.is_truncated());
        for l in 0..=self.len_l().min(f.degree()) {
            if self.log_scales[l] == f64::NEG_INFINITY {
                continue;
            }
            let term = self.coeffs[l].star_product(&f.derivative_n(l))?;
            out = out.add(&term.scale(self.log_scales[l].exp()))?;
        }
        Ok(out)
    }

    /// Largest coefficient difference over all u_ℓ.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = SliceSeries::zero(self.n);
        (0..len)
            .map(|l| {
                let a = if l < self.coeffs.len() { self.coefficient(l) } else { zero.clone() };
                let b = if l < other.coeffs.len() { other.coefficient(l) } else { zero.clone() };
                a.max_coeff_diff(&b)
            })
            .fold(0.0, f64::max)
    }
}

#[derive(Serialize, Deserialize)]
struct OperatorRepr {
    n: usize,
    #[serde(rename = "L")]
    l: usize,
    coeffs: Vec<SliceSeries>,
    rho1: ProximateOrder,
    rho2: ProximateOrder,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    log_scales: Option<Vec<Option<f64>>>,
}

impl Serialize for InfOrderOperator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // Plain coefficients whenever they survive in f64; otherwise keep the scales.
        let plain = self.log_scales.iter().all(|&v| v == f64::NEG_INFINITY || v.abs() < 600.0);
        let (coeffs, log_scales) = if plain {
            ((0..self.coeffs.len()).map(|l| self.coefficient(l)).collect(), None)
        } else {
            let scales = self.log_scales.iter().map(|&v| v.is_finite().then_some(v)).collect();
            (self.coeffs.clone(), Some(scales))
        };
        OperatorRepr { n: self.n, l: self.len_l(), coeffs, rho1: self.rho1.clone(), rho2: self.rho2.clone(), log_scales }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for InfOrderOperator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = OperatorRepr::deserialize(d)?;
        if repr.coeffs.len() != repr.l + 1 {
            return Err(D::Error::custom(format!("L = {} but {} coefficients were given", repr.l, repr.coeffs.len())));
        }
        let scales = match repr.log_scales {
            None => vec![0.0; repr.coeffs.len()],
            Some(v) => v.into_iter().map(|s| s.unwrap_or(f64::NEG_INFINITY)).collect(),
        };
        let op = InfOrderOperator::with_log_scales(repr.coeffs, scales).map_err(D::Error::custom)?;
        if op.n != repr.n {
            return Err(D::Error::custom(format!("n = {} but coefficients have n = {}", repr.n, op.n)));
        }
        Ok(op.with_orders(repr.rho1, repr.rho2))
    }
}

type Action = Arc<dyn Fn(usize) -> SliceSeries + Send + Sync>;

/// A right-linear operator known through its values on monomials x^k.
#[derive(Clone)]
pub struct AbstractOperator {
    n: usize,
    max_degree: usize,
    action: Action,
}

impl fmt::Debug for AbstractOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AbstractOperator").field("n", &self.n).field("max_degree", &self.max_degree).finish()
    }
}

impl AbstractOperator {
    pub fn new(n: usize, max_degree: usize, action: impl Fn(usize) -> SliceSeries + Send + Sync + 'static) -> Self {
        Self { n, max_degree, action: Arc::new(action) }
    }

    pub fn identity(n: usize, max_degree: usize) -> Self {
        Self::new(n, max_degree, move |k| SliceSeries::x_power(n, k))
    }

    /// f ↦ f(x + a) for real a.
    pub fn translation(n: usize, a: f64, max_degree: usize) -> Self {
        Self::new(n, max_degree, move |k| shifted_power(n, a, k))
    }

    /// f ↦ ∂_{x₀} f.
    pub fn derivative(n: usize, max_degree: usize) -> Self {
        Self::new(n, max_degree, move |k| SliceSeries::x_power(n, k).slice_derivative())
    }

    /// x^k ↦ apply(P, x^k).
    pub fn from_operator(p: InfOrderOperator, max_degree: usize) -> Self {
        let n = p.n();
        Self::new(n, max_degree, move |k| p.apply(&SliceSeries::x_power(n, k)).expect("same dimension"))
    }

    /// `first` followed by `then`.
    pub fn compose(first: AbstractOperator, then: AbstractOperator) -> Result<Self> {
        if first.n != then.n {
            return Err(Error::DimensionMismatch(first.n, then.n));
        }
        let n = first.n;
        let max_degree = first.max_degree.min(then.max_degree);
        Ok(Self::new(n, max_degree, move |k| then.apply_to(&first.act(k)).expect("same dimension")))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// T(x^k).
    pub fn act(&self, k: usize) -> SliceSeries {
        (self.action)(k)
    }

    /// T(Σ x^m a_m) = Σ T(x^m) a_m.
    pub fn apply_to(&self, f: &SliceSeries) -> Result<SliceSeries> {
        if f.n() != self.n {
            return Err(Error::DimensionMismatch(self.n, f.n()));
        }
        let mut out = SliceSeries::zero(self.n);
        for (m, a) in f.coeffs().iter().enumerate() {
            if !a.is_zero() {
                out = out.add(&self.act(m).mul_right(a))?;
            }
        }
        let truncated = out.is_truncated() || f.is_truncated();
        Ok(out.with_truncated(truncated))
    }
}

/// u_ℓ = (1/ℓ!) Σ_k C(ℓ,k) T(x^k) ⋆ (−x)^{ℓ−k} for ℓ = 0..=L.
///
/// Since (−x)^{ℓ−k} is a monomial, each star product is a shift with sign.
pub fn coefficients_from_operator(t: &AbstractOperator, l: usize) -> Result<InfOrderOperator> {
    if t.max_degree() < l {
        return Err(Error::InvalidParameter(format!(
            "operator is only known up to degree {} but L = {l}",
            t.max_degree()
        )));
    }
    let n = t.n();
    let images: Vec<SliceSeries> = (0..=l).map(|k| t.act(k)).collect();
    if let Some(s) = images.iter().find(|s| s.n() != n) {
        return Err(Error::DimensionMismatch(n, s.n()));
    }
    let truncated = images.iter().any(|s| s.is_truncated());
    let lf = ln_factorials(l);
    let coeffs = (0..=l)
        .map(|ell| {
            let deg = (0..=ell).map(|k| images[k].degree() + ell - k).max().unwrap_or(0);
            let mut acc = vec![CliffordNumber::zero(n); deg + 1];
            for (k, img) in images.iter().enumerate().take(ell + 1) {
                let shift = ell - k;
                let w = binomial(ell, k) * if shift % 2 == 1 { -1.0 } else { 1.0 };
                for (i, c) in img.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        acc[i + shift].add_scaled(c, w);
                    }
                }
            }
            let inv = (-lf[ell]).exp();
            let mut coeffs: Vec<CliffordNumber> = acc.into_iter().map(|c| c.scale(inv)).collect();
            while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
                coeffs.pop();
            }
            SliceSeries::new(n, coeffs).map(|s| s.with_truncated(truncated))
        })
        .collect::<Result<Vec<_>>>()?;
    InfOrderOperator::new(coeffs)
}

/// Random Clifford polynomials f of degree ≤ M: apply(reconstructed P, f) against T(f).
pub fn representation_identity_check(
    t: &AbstractOperator,
    l: usize,
    m: usize,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    if m > t.max_degree() || l < m {
        return Err(Error::InvalidParameter(format!("need M <= max degree and L >= M, got M = {m}, L = {l}")));
    }
    let p = coefficients_from_operator(t, l)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = t.n();
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let coeffs = (0..=m)
            .map(|_| CliffordNumber::from_coeffs(n, (0..1 << n).map(|_| rng.gen_range(-1.0..1.0)).collect()))
            .collect::<Result<Vec<_>>>()?;
        let f = SliceSeries::new(n, coeffs)?;
        let lhs = p.apply(&f)?;
        let rhs = t.apply_to(&f)?;
        worst = worst.max(lhs.max_coeff_diff(&rhs));
    }
    Ok(VerificationReport::new("representation_identity")
        .param("n", n)
        .param("L", l)
        .param("M", m)
        .param("seed", seed)
        .constant(1.0)
        .violation(worst)
        .pass(worst < 1e-10)
        .grid("trials", trials))
}

/// Σ_{ℓ=0}^{m}(−1)^ℓ C(m,ℓ) = δ_{m,0} for m ≤ `max_m`, in exact integers.
pub fn telescoping_check(max_m: usize) -> VerificationReport {
    let mut worst: i128 = 0;
    let mut row: Vec<i128> = vec![1];
    for m in 0..=max_m {
        if m > 0 {
            let mut next = vec![1i128; m + 1];
            for k in 1..m {
                next[k] = row[k - 1] + row[k];
            }
            row = next;
        }
        let sum: i128 = row.iter().enumerate().map(|(l, c)| if l % 2 == 0 { *c } else { -*c }).sum();
        let want = i128::from(m == 0);
        worst = worst.max((sum - want).abs());
    }
    VerificationReport::new("telescoping_identity")
        .param("max_m", max_m)
        .constant(1.0)
        .violation(worst as f64)
        .pass(worst == 0)
}

/// Which quantifier order a certificate refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OperatorClass {
    D,
    D0,
}

/// ‖u_ℓ‖_{ϱ₂,σ} ≤ C·G_ℓ·λ^ℓ/ℓ! for ℓ ≤ L, with G built from ϱ̂₁.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub class: OperatorClass,
    pub lambda: f64,
    pub sigma: f64,
    /// exp(log_c); overflows to +∞ (null in JSON) for very large bounds.
    #[serde(rename = "C", with = "maybe_infinite")]
    pub c: f64,
    #[serde(with = "maybe_infinite")]
    pub log_c: f64,
    pub max_ratio_index: usize,
    pub pass: bool,
}

/// ln‖u_ℓ‖_{ϱ₂,σ} + ln ℓ! − ln G_ℓ for one σ; +∞ where the norm diverges.
struct RatioRow {
    base: Vec<f64>,
}

impl RatioRow {
    fn compute(p: &InfOrderOperator, log_g: &[f64], lf: &[f64], sigma: f64, grid: &NormGrid) -> Result<Self> {
        let gp = GrowthParams::new(p.rho2.clone(), sigma)?;
        let norms = par_map(p.coeffs.len(), |l| {
            if p.log_scales[l] == f64::NEG_INFINITY || p.coeffs[l].effective_degree().is_none() {
                return Ok(f64::NEG_INFINITY);
            }
            let est = norm_estimate(&p.coeffs[l], &gp, grid)?;
            Ok(if est.divergent { f64::INFINITY } else { est.log_value + p.log_scales[l] })
        });
        let base = norms
            .into_iter()
            .enumerate()
            .map(|(l, v)| v.map(|v: f64| if v.is_finite() { v + lf[l] - log_g[l] } else { v }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { base })
    }

    /// (ln C, argmax, pass) at λ. The bound must peak in the first half of
    /// the stored range, so the truncation is not hiding growth.
    fn evaluate(&self, lambda: f64) -> (f64, usize, bool) {
        let ll = lambda.ln();
        let (mut best, mut arg) = (f64::NEG_INFINITY, 0);
        for (l, &b) in self.base.iter().enumerate() {
            let v = if b == f64::NEG_INFINITY { b } else { b - l as f64 * ll };
            if v > best {
                (best, arg) = (v, l);
            }
        }
        let half = (self.base.len() - 1) / 2;
        let pass = best.is_finite() && (self.base.len() == 1 || arg <= half);
        let best = if best == f64::NEG_INFINITY { 0.0 } else { best };
        (best, arg, pass)
    }
}

/// r^{ϱ₁(r)}/r^{ϱ₂(r)} stays bounded on the comparison range: its maximum
/// over the last decade exceeds the earlier maximum by at most ln 2.
pub fn growth_comparison(rho1: &ProximateOrder, rho2: &ProximateOrder) -> VerificationReport {
    let (lo, hi) = config::GROWTH_COMPARISON_RANGE;
    let grid = log_grid(lo, hi, 400);
    let d: Vec<f64> = grid.iter().map(|&r| rho1.log_power(r) - rho2.log_power(r)).collect();
    let split = grid.partition_point(|&r| r < hi / 10.0);
    let early = d[..split].iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let late = d[split..].iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let excess = late - early;
    VerificationReport::new("growth_comparison")
        .param("rho1", serde_json::to_value(rho1).unwrap_or_default())
        .param("rho2", serde_json::to_value(rho2).unwrap_or_default())
        .constant(early.max(late).exp())
        .violation(excess)
        .pass(excess <= 2f64.ln())
        .grid("points", grid.len())
}

/// Everything needed to evaluate certificates on a λ × σ grid.
struct CertContext {
    rows: Vec<RatioRow>,
}

impl CertContext {
    fn new(p: &InfOrderOperator, sigmas: &[f64], grid: &NormGrid) -> Result<Self> {
        if !p.rho1.is_normalized() || !p.rho2.is_normalized() {
            return Err(Error::NotNormalized);
        }
        let cmp = growth_comparison(&p.rho1, &p.rho2);
        if !cmp.pass {
            return Err(Error::InvalidParameter(format!(
                "r^rho1 / r^rho2 is not bounded on the comparison range (excess {:.3})",
                cmp.max_violation
            )));
        }
        let l = p.len_l();
        let log_g = p.rho1.g_sequence(l)?.log_values;
        let lf = ln_factorials(l);
        let rows = sigmas.iter().map(|&s| RatioRow::compute(p, &log_g, &lf, s, grid)).collect::<Result<Vec<_>>>()?;
        Ok(Self { rows })
    }
}

fn check_grid(name: &str, g: &[f64]) -> Result<()> {
    if g.is_empty() || g.iter().any(|&v| !(v > 0.0 && v.is_finite())) {
        return Err(Error::InvalidParameter(format!("{name} grid must be non-empty and positive")));
    }
    Ok(())
}

/// For every λ, the smallest σ on the grid admitting a bound.
pub fn certify_class_d(
    p: &InfOrderOperator,
    lambdas: &[f64],
    sigmas: &[f64],
    grid: &NormGrid,
) -> Result<Vec<BoundCertificate>> {
    check_grid("lambda", lambdas)?;
    check_grid("sigma", sigmas)?;
    let mut sigmas = sigmas.to_vec();
    sigmas.sort_by(f64::total_cmp);
    let ctx = CertContext::new(p, &sigmas, grid)?;
    Ok(lambdas
        .iter()
        .map(|&lambda| {
            let mut last = None;
            for (row, &sigma) in ctx.rows.iter().zip(&sigmas) {
                let (lc, arg, pass) = row.evaluate(lambda);
                let cert = BoundCertificate { class: OperatorClass::D, lambda, sigma, c: lc.exp(), log_c: lc, max_ratio_index: arg, pass };
                if pass {
                    return cert;
                }
                last = Some(cert);
            }
            last.expect("non-empty grid")
        })
        .collect())
}

/// For every σ, the smallest λ on the grid admitting a bound.
pub fn certify_class_d0(
    p: &InfOrderOperator,
    sigmas: &[f64],
    lambdas: &[f64],
    grid: &NormGrid,
) -> Result<Vec<BoundCertificate>> {
    check_grid("lambda", lambdas)?;
    check_grid("sigma", sigmas)?;
    let mut lambdas = lambdas.to_vec();
    lambdas.sort_by(f64::total_cmp);
    let ctx = CertContext::new(p, sigmas, grid)?;
    Ok(ctx
        .rows
        .iter()
        .zip(sigmas)
        .map(|(row, &sigma)| {
            let mut last = None;
            for &lambda in &lambdas {
                let (lc, arg, pass) = row.evaluate(lambda);
                let cert = BoundCertificate { class: OperatorClass::D0, lambda, sigma, c: lc.exp(), log_c: lc, max_ratio_index: arg, pass };
                if pass {
                    return cert;
                }
                last = Some(cert);
            }
            last.expect("non-empty grid")
        })
        .collect())
}

/// Certifies on the default grids, then on the 2× grids (λ/σ and norm scan),
/// and checks that every passing (λ, σ) still passes after refinement.
pub fn certificate_stability(p: &InfOrderOperator, class: OperatorClass, grid: &NormGrid) -> Result<VerificationReport> {
    let (coarse_g, fine_g) = (cert_grid(false), cert_grid(true));
    let fine_grid = grid.refined();
    let coarse = match class {
        OperatorClass::D => certify_class_d(p, &coarse_g, &coarse_g, grid)?,
        OperatorClass::D0 => certify_class_d0(p, &coarse_g, &coarse_g, grid)?,
    };
    let passing: Vec<&BoundCertificate> = coarse.iter().filter(|c| c.pass).collect();
    let sigmas: Vec<f64> = {
        let mut s: Vec<f64> = passing.iter().map(|c| c.sigma).collect();
        s.dedup();
        s
    };
    let ctx = CertContext::new(p, &sigmas, &fine_grid)?;
    let mut failures = 0usize;
    let mut worst_log_c_shift: f64 = 0.0;
    for cert in &passing {
        let i = sigmas.iter().position(|&s| s == cert.sigma).expect("collected above");
        let (lc, _, pass) = ctx.rows[i].evaluate(cert.lambda);
        if !pass {
            failures += 1;
        }
        worst_log_c_shift = worst_log_c_shift.max((lc - cert.log_c).abs());
    }
    // The refined run must reach at least as many passing grid points.
    let fine = match class {
        OperatorClass::D => certify_class_d(p, &fine_g, &fine_g, &fine_grid)?,
        OperatorClass::D0 => certify_class_d0(p, &fine_g, &fine_g, &fine_grid)?,
    };
    let coarse_on_fine = fine.iter().step_by(2).filter(|c| c.pass).count();
    let lost = passing.len().saturating_sub(coarse_on_fine);
    Ok(VerificationReport::new("certificate_stability")
        .param("class", if class == OperatorClass::D { "D" } else { "D0" })
        .param("L", p.len_l())
        .param("coarse_passing", passing.len())
        .param("refined_passing", fine.iter().filter(|c| c.pass).count())
        .param("log_c_shift", num(worst_log_c_shift))
        .constant(1.0)
        .violation((failures + lost) as f64)
        .pass(failures == 0 && lost == 0)
        .grid("coarse", coarse_g.len())
        .grid("refined", fine_g.len()))
}

/// Checks ‖Pf‖_{ϱ₂, σ+kτ} ≤ 4·C·C(τ)·‖f‖_{ϱ₁,τ}·Σ q^ℓ with k = 2^{ρ₁+1},
/// q = λ(2kτ)^{1/ρ₁} and (λ, σ, C) from a certificate. C(τ) is the empirical
/// derivative-bound constant of f.
pub fn continuity_check(
    p: &InfOrderOperator,
    cert: &BoundCertificate,
    f: &SliceSeries,
    tau: f64,
    grid: &NormGrid,
) -> Result<VerificationReport> {
    let rho1 = p.rho1.rho();
    let k = derivative_bound_k(rho1);
    let q = cert.lambda * (2.0 * k * tau).powf(1.0 / rho1);
    let base = VerificationReport::new("continuity_estimate")
        .param("lambda", cert.lambda)
        .param("sigma", cert.sigma)
        .param("tau", tau)
        .param("q", q);
    if !cert.pass || q >= 1.0 {
        return Ok(base.violation(f64::INFINITY).pass(false));
    }
    let top = f.effective_degree().unwrap_or(0);
    let c_tau = verify_derivative_norm_bound(f, &p.rho1, tau, top, grid)?.empirical_constant;
    let nf = norm_estimate(f, &GrowthParams::new(p.rho1.clone(), tau)?, grid)?;
    let pf = p.apply(f)?;
    let lhs = norm_estimate(&pf, &GrowthParams::new(p.rho2.clone(), cert.sigma + k * tau)?, grid)?;
    let log_rhs = 4f64.ln() + cert.log_c + c_tau.ln() + nf.log_value - (1.0 - q).ln();
    let excess = lhs.log_value - log_rhs;
    let pass = !lhs.divergent && !nf.divergent && excess <= 1e-9;
    Ok(base
        .param("lhs_log", num(lhs.log_value))
        .param("rhs_log", num(log_rhs))
        .param("c_tau", num(c_tau))
        .constant(cert.c)
        .violation(excess)
        .pass(pass)
        .grid("radii", grid.radii)
        .grid("angles", grid.angles))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(n: usize, c: &[f64]) -> SliceSeries {
        SliceSeries::from_real(n, c).unwrap()
    }

    #[test]
    fn apply_examples() {
        let f = poly(2, &[1.0, -2.0, 0.5, 3.0]);
        assert_eq!(InfOrderOperator::identity(2).apply(&f).unwrap().max_coeff_diff(&f), 0.0);
        let d = InfOrderOperator::new(vec![SliceSeries::zero(2), SliceSeries::constant(CliffordNumber::one(2))]).unwrap();
        assert!(d.apply(&f).unwrap().max_coeff_diff(&f.slice_derivative()) < 1e-15);
        let a = 1.3;
        let t = InfOrderOperator::translation(2, a, 8);
        let got = t.apply(&SliceSeries::x_power(2, 2)).unwrap();
        assert!(got.max_coeff_diff(&poly(2, &[a * a, 2.0 * a, 1.0])) < 1e-14);
        assert!(matches!(t.apply(&poly(3, &[1.0])), Err(Error::DimensionMismatch(2, 3))));
    }

    #[test]
    fn reconstruction_closed_forms() {
        let id = coefficients_from_operator(&AbstractOperator::identity(2, 20), 20).unwrap();
        assert!(id.max_coeff_diff(&InfOrderOperator::identity(2)) == 0.0);
        let tr = coefficients_from_operator(&AbstractOperator::translation(1, 0.7, 20), 20).unwrap();
        assert!(tr.max_coeff_diff(&InfOrderOperator::translation(1, 0.7, 20)) < 1e-11);
        let d = coefficients_from_operator(&AbstractOperator::derivative(1, 3), 3).unwrap();
        for l in 0..=3 {
            let want = if l == 1 { 1.0 } else { 0.0 };
            assert!(d.coefficient(l).max_coeff_diff(&poly(1, &[want])) == 0.0, "l = {l}");
        }
    }

    #[test]
    fn representation_identity_for_builtin_operators() {
        let tr = AbstractOperator::translation(2, 0.7, 12);
        assert!(representation_identity_check(&tr, 12, 12, 5, 1).unwrap().pass);
        let comp = AbstractOperator::compose(AbstractOperator::derivative(2, 12), tr).unwrap();
        let r = representation_identity_check(&comp, 12, 12, 5, 2).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn telescoping_is_exact() {
        assert!(telescoping_check(30).pass);
    }

    #[test]
    fn identity_certificate_has_unit_constant() {
        let g = cert_grid(false);
        let certs = certify_class_d(&InfOrderOperator::identity(1), &g, &g, &NormGrid::default()).unwrap();
        assert!(certs.iter().all(|c| c.pass && c.c == 1.0 && c.sigma == g[0]));
        let certs = certify_class_d0(&InfOrderOperator::identity(1), &g, &g, &NormGrid::default()).unwrap();
        assert!(certs.iter().all(|c| c.pass && c.lambda == g[0]));
    }

    #[test]
    fn factorial_family_fails_for_small_lambda() {
        let lf = ln_factorials(60);
        let p = InfOrderOperator::scalar_log_family(1, &lf).unwrap();
        let g = cert_grid(false);
        let certs = certify_class_d(&p, &g, &g, &NormGrid::default()).unwrap();
        assert!(!certs[0].pass);
    }

    #[test]
    fn serde_round_trip_keeps_scales() {
        let p = InfOrderOperator::translation(1, 1.0, 400);
        let back: InfOrderOperator = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back.len_l(), 400);
        for l in 0..=400 {
            let (a, sa) = p.scaled_coefficient(l);
            let (b, sb) = back.scaled_coefficient(l);
            assert_eq!(a, b);
            assert!((sa - sb).abs() <= 1e-12 * sa.abs().max(1.0));
        }
        let small = InfOrderOperator::translation(1, 0.7, 5);
        let text = serde_json::to_string(&small).unwrap();
        assert!(!text.contains("log_scales"));
        let back: InfOrderOperator = serde_json::from_str(&text).unwrap();
        assert!(back.max_coeff_diff(&small) < 1e-16);
    }
}
