//! Growth norms ‖f‖_{ϱ,σ} = sup |f(x)|·exp(−σ|x|^{ϱ(|x|)}), maximum modulus,
//! type estimators and the quantitative bounds between them.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::config::{self, log_grid};
use crate::error::{Error, Result};
use crate::numeric::{golden_max, ln_factorials, log_sum_exp, par_map};
use crate::proximate::ProximateOrder;
use crate::report::{maybe_infinite, num, VerificationReport};
use crate::series::{LogEvaluator, SliceSeries};

/// A normalized proximate order and a type level σ ≥ 0.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthParams {
    po: ProximateOrder,
    sigma: f64,
}

impl GrowthParams {
    pub fn new(po: ProximateOrder, sigma: f64) -> Result<Self> {
        if !po.is_normalized() {
            return Err(Error::NotNormalized);
        }
        if !(sigma >= 0.0) || !sigma.is_finite() {
            return Err(Error::InvalidParameter(format!("sigma must be finite and non-negative, got {sigma}")));
        }
        Ok(Self { po, sigma })
    }

    pub fn po(&self) -> &ProximateOrder {
        &self.po
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// ln of the weight exp(−σ r^{ϱ(r)}).
    fn log_weight(&self, r: f64) -> f64 {
        if r == 0.0 {
            0.0
        } else {
            -self.sigma * self.po.log_power(r).exp()
        }
    }
}

/// Sampling of the norm scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormGrid {
    pub radii: usize,
    pub angles: usize,
    pub r_min: f64,
    /// Golden-section refinement around the best grid point.
    pub refine: bool,
}

impl Default for NormGrid {
    fn default() -> Self {
        Self { radii: config::NORM_RADII, angles: config::NORM_ANGLES, r_min: config::NORM_R_MIN, refine: true }
    }
}

impl NormGrid {
    /// Twice the resolution in both directions.
    pub fn refined(&self) -> Self {
        Self { radii: 2 * self.radii, angles: 2 * self.angles, ..self.clone() }
    }
}

/// Lower bound for ‖f‖_{ϱ,σ} from a grid scan, kept in log domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    #[serde(with = "maybe_infinite")]
    pub log_value: f64,
    #[serde(with = "maybe_infinite")]
    pub value: f64,
    pub argmax_radius: f64,
    /// Largest radius scanned.
    #[serde(with = "maybe_infinite")]
    pub r_max: f64,
    /// The weighted modulus was still growing at the edge of the trusted
    /// region; the supremum is reported as +∞.
    pub divergent: bool,
}

impl NormEstimate {
    fn exact(log_value: f64) -> Self {
        Self { log_value, value: log_value.exp(), argmax_radius: 0.0, r_max: 0.0, divergent: false }
    }

    fn divergent(r_max: f64) -> Self {
        Self { log_value: f64::INFINITY, value: f64::INFINITY, argmax_radius: r_max, r_max, divergent: true }
    }
}

/// Largest radius on which a truncated series represents its entire limit:
/// the top tenth of its nonzero coefficient range contributes less than
/// 1e-6 of Σ|a_ℓ|r^ℓ. Exact polynomials are valid everywhere.
pub fn validity_radius(f: &SliceSeries) -> f64 {
    if !f.is_truncated() {
        return f64::INFINITY;
    }
    let top = match f.effective_degree() {
        None => return f64::INFINITY,
        Some(0) => return 0.0,
        Some(d) => d,
    };
    let width = top.div_ceil(10).max(1);
    let block = (top + 1 - width, top);
    let le = f.log_evaluator();
    let tol = config::TRUNCATION_REL_TOL.ln();
    let excess = |r: f64| le.log_majorant(r, Some(block)) - le.log_majorant(r, None) - tol;
    let grid = log_grid(1e-8, 1e15, 460);
    let Some(i) = grid.iter().position(|&r| excess(r) > 0.0) else {
        return f64::INFINITY;
    };
    if i == 0 {
        return 0.0;
    }
    let (mut lo, mut hi) = (grid[i - 1].ln(), grid[i].ln());
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if excess(mid.exp()) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    lo.exp()
}

/// Radius beyond which exp(−σ r^ϱ) dominates a degree-`deg` polynomial.
fn radius_cap(gp: &GrowthParams, deg: usize) -> Result<f64> {
    let t = 4.0 * (deg as f64 + 1.0) / (gp.sigma * gp.po.rho()) + 4.0;
    Ok(2.0 * gp.po.phi(t)?)
}

fn angle_grid(count: usize) -> Vec<f64> {
    (0..count).map(|k| PI * k as f64 / (count.max(2) - 1) as f64).collect()
}

/// Grid estimate of ‖f‖_{ϱ,σ}: log radii × angles in [0, π], exact
/// supremum over 𝕊, the origin, and a golden-section refinement.
pub fn norm_estimate(f: &SliceSeries, gp: &GrowthParams, grid: &NormGrid) -> Result<NormEstimate> {
    let le = f.log_evaluator();
    let top = match f.effective_degree() {
        None => return Ok(NormEstimate::exact(f64::NEG_INFINITY)),
        Some(0) => return Ok(NormEstimate::exact(f.coeff(0).norm().ln())),
        Some(d) => d,
    };
    if gp.sigma == 0.0 {
        return Ok(NormEstimate::divergent(f64::INFINITY));
    }
    let valid = validity_radius(f);
    let cap = radius_cap(gp, top)?;
    let r_max = cap.min(valid);
    if r_max == 0.0 {
        return Ok(NormEstimate::exact(f.coeff(0).norm().ln()));
    }
    let r_lo = grid.r_min.min(r_max / 1e3);
    let radii = log_grid(r_lo, r_max, grid.radii);
    let angles = angle_grid(grid.angles);
    let h = |r: f64, th: f64| le.log_sup_modulus(r, th) + gp.log_weight(r);
    let rows = par_map(radii.len(), |i| {
        let r = radii[i];
        let lw = gp.log_weight(r);
        angles
            .iter()
            .enumerate()
            .map(|(k, &th)| (le.log_sup_modulus(r, th) + lw, k))
            .fold((f64::NEG_INFINITY, 0), |a, b| if b.0 > a.0 { b } else { a })
    });
    let (mut best, mut bi, mut bk) = (le.log_sup_modulus(0.0, 0.0), usize::MAX, 0);
    for (i, &(v, k)) in rows.iter().enumerate() {
        if v > best {
            (best, bi, bk) = (v, i, k);
        }
    }
    let mut arg_r = if bi == usize::MAX { 0.0 } else { radii[bi] };
    let divergent = bi != usize::MAX && bi + 3 >= radii.len() && valid < cap;
    if divergent {
        return Ok(NormEstimate::divergent(r_max));
    }
    if grid.refine && bi != usize::MAX {
        let lo = radii[bi.saturating_sub(1)].ln();
        let hi = radii[(bi + 1).min(radii.len() - 1)].ln();
        let th = angles[bk];
        let (u, v) = golden_max(|u| h(u.exp(), th), lo, hi, 60);
        if v > best {
            best = v;
            arg_r = u.exp();
        }
        let tlo = angles[bk.saturating_sub(1)];
        let thi = angles[(bk + 1).min(angles.len() - 1)];
        let (_, v) = golden_max(|t| h(arg_r, t), tlo, thi, 60);
        best = best.max(v);
    }
    Ok(NormEstimate { log_value: best, value: best.exp(), argmax_radius: arg_r, r_max, divergent: false })
}

/// ln max_{|x| = r} |f(x)| by an angle scan with golden refinement.
pub fn log_max_modulus(le: &LogEvaluator, r: f64, angles: usize) -> f64 {
    if r == 0.0 {
        return le.log_sup_modulus(0.0, 0.0);
    }
    let grid = angle_grid(angles);
    let (k, best) = grid
        .iter()
        .enumerate()
        .map(|(k, &t)| (k, le.log_sup_modulus(r, t)))
        .fold((0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
    let lo = grid[k.saturating_sub(1)];
    let hi = grid[(k + 1).min(grid.len() - 1)];
    let (_, v) = golden_max(|t| le.log_sup_modulus(r, t), lo, hi, 50);
    best.max(v)
}

/// max_{|x| ≤ r} |f(x)|, attained on the sphere |x| = r for entire series.
pub fn max_modulus(f: &SliceSeries, r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::InvalidParameter(format!("radius must be non-negative, got {r}")));
    }
    Ok(log_max_modulus(&f.log_evaluator(), r, config::NORM_ANGLES).exp())
}

/// Type of f read off its Taylor coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TypeEstimate {
    /// max over the window of |a_ℓ|^{1/ℓ}·φ(ℓ).
    pub coefficient_limsup: f64,
    /// limsup^ρ/(eρ).
    pub implied_type: f64,
    /// max over the window of (|a_ℓ|·G_ℓ)^{ρ/ℓ}; equal to `implied_type`.
    pub alternative_type: f64,
    pub tail_window: (usize, usize),
}

/// Coefficient route to the type, over the window ℓ ∈ [⌈N/2⌉, N].
///
/// Exact polynomials have type 0. Truncations of entire functions need
/// N ≥ 20 for the window to mean anything.
pub fn coeff_type_estimate(f: &SliceSeries, po: &ProximateOrder) -> Result<TypeEstimate> {
    if !po.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let n = f.degree();
    let window = (n.div_ceil(2).max(1), n.max(1));
    let zero = TypeEstimate { coefficient_limsup: 0.0, implied_type: 0.0, alternative_type: 0.0, tail_window: window };
    if !f.is_truncated() || f.effective_degree().unwrap_or(0) == 0 {
        return Ok(zero);
    }
    if n < 20 {
        return Err(Error::InvalidParameter(format!("truncation N = {n} is too short for a type estimate (need N >= 20)")));
    }
    let rho = po.rho();
    let (mut s_best, mut alt_best) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for (l, la) in f.log_evaluator().log_abs() {
        if l < window.0 || l > window.1 {
            continue;
        }
        let lf = l as f64;
        s_best = s_best.max(la / lf + po.log_phi(lf)?);
        alt_best = alt_best.max(rho / lf * (la + po.log_g(l)?));
    }
    if s_best == f64::NEG_INFINITY {
        return Ok(zero);
    }
    Ok(TypeEstimate {
        coefficient_limsup: s_best.exp(),
        implied_type: (rho * s_best - (E * rho).ln()).exp(),
        alternative_type: alt_best.exp(),
        tail_window: window,
    })
}

/// Growth route to the type.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthTypeEstimate {
    pub value: f64,
    #[serde(with = "maybe_infinite")]
    pub validity_radius: f64,
    pub window: (f64, f64),
}

/// max of ln M(r)/r^{ϱ(r)} over the decade [R/10, R], R = min(validity radius, 1e6).
/// M is the running maximum of the sphere maxima, i.e. the sup over the ball.
/// Exact polynomials have type 0 and short-circuit.
pub fn growth_type_estimate(f: &SliceSeries, po: &ProximateOrder, radii: usize) -> Result<GrowthTypeEstimate> {
    let valid = validity_radius(f);
    let big_r = valid.min(config::GROWTH_R_CAP);
    if f.effective_degree().is_none() || !f.is_truncated() || big_r <= 0.0 {
        return Ok(GrowthTypeEstimate { value: 0.0, validity_radius: valid, window: (0.0, big_r.max(0.0)) });
    }
    let le = f.log_evaluator();
    let grid = log_grid((1e-3f64).min(big_r / 1e4), big_r, radii.max(20));
    let lm = par_map(grid.len(), |i| log_max_modulus(&le, grid[i], config::NORM_ANGLES));
    let mut running = le.log_sup_modulus(0.0, 0.0);
    let mut best: f64 = 0.0;
    for (&r, &m) in grid.iter().zip(&lm) {
        running = running.max(m);
        if r >= big_r / 10.0 {
            best = best.max(running / po.log_power(r).exp());
        }
    }
    Ok(GrowthTypeEstimate { value: best, validity_radius: valid, window: (big_r / 10.0, big_r) })
}

/// ln ‖x^ℓ‖_{ϱ,σ} = sup_r (ℓ ln r − σ r^{ϱ(r)}), a one-dimensional maximum.
pub fn monomial_log_norm(po: &ProximateOrder, sigma: f64, l: usize) -> Result<f64> {
    if l == 0 {
        return Ok(0.0);
    }
    if !(sigma > 0.0) {
        return Ok(f64::INFINITY);
    }
    let lf = l as f64;
    let h = |u: f64| lf * u - sigma * po.log_power(u.exp()).exp();
    let hi = po.log_phi(8.0 * lf / (sigma * po.rho()) + 8.0)?;
    let lo = (-14.0f64).min(hi - 10.0);
    let us: Vec<f64> = (0..600).map(|i| lo + (hi - lo) * i as f64 / 599.0).collect();
    let (k, best) =
        us.iter().enumerate().map(|(k, &u)| (k, h(u))).fold((0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
    let (_, v) = golden_max(h, us[k.saturating_sub(1)], us[(k + 1).min(us.len() - 1)], 80);
    Ok(best.max(v))
}

/// Result of [`verify_monomial_norm_bound`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonomialBound {
    /// C = max_ℓ ‖x^ℓ‖·σ'^{ℓ/ρ}/G_ℓ.
    #[serde(with = "maybe_infinite")]
    pub constant: f64,
    /// First index from which the ratio is non-increasing.
    pub l0: usize,
    pub log_ratios: Vec<f64>,
    pub report: VerificationReport,
}

/// Empirical constant in ‖x^ℓ‖_{ϱ,σ} ≤ C·G_ℓ/σ'^{ℓ/ρ}, 0 < σ' < σ.
pub fn verify_monomial_norm_bound(
    po: &ProximateOrder,
    sigma: f64,
    sigma_prime: f64,
    l_max: usize,
) -> Result<MonomialBound> {
    if !(0.0 < sigma_prime && sigma_prime < sigma) {
        return Err(Error::InvalidParameter(format!("need 0 < sigma' < sigma, got {sigma_prime}, {sigma}")));
    }
    let rho = po.rho();
    let log_ratios = (0..=l_max)
        .map(|l| Ok(monomial_log_norm(po, sigma, l)? + l as f64 / rho * sigma_prime.ln() - po.log_g(l)?))
        .collect::<Result<Vec<f64>>>()?;
    let c = log_ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max).exp();
    let mut l0 = l_max;
    while l0 > 0 && log_ratios[l0] <= log_ratios[l0 - 1] + 1e-12 {
        l0 -= 1;
    }
    let pass = c.is_finite() && l0 <= l_max / 2;
    let report = VerificationReport::new("monomial_norm_bound")
        .param("order", serde_json::to_value(po).unwrap_or_default())
        .param("sigma", sigma)
        .param("sigma_prime", sigma_prime)
        .param("l0", l0)
        .constant(c)
        .violation(if pass { 0.0 } else { f64::INFINITY })
        .pass(pass)
        .grid("l_max", l_max);
    Ok(MonomialBound { constant: c, l0, log_ratios, report })
}

/// Constant k = 2^{ρ+1} in the derivative bound.
pub fn derivative_bound_k(rho: f64) -> f64 {
    2f64.powf(rho + 1.0)
}

/// Empirical C(σ) in (1/ℓ!)‖∂^ℓ f‖_{ϱ,kσ} ≤ C‖f‖_{ϱ,σ}(2kσ)^{ℓ/ρ}/G_ℓ.
pub fn verify_derivative_norm_bound(
    f: &SliceSeries,
    po: &ProximateOrder,
    sigma: f64,
    l_max: usize,
    grid: &NormGrid,
) -> Result<VerificationReport> {
    let rho = po.rho();
    let k = derivative_bound_k(rho);
    let base = norm_estimate(f, &GrowthParams::new(po.clone(), sigma)?, grid)?;
    let high = GrowthParams::new(po.clone(), k * sigma)?;
    let lf = ln_factorials(l_max);
    let top = f.effective_degree().unwrap_or(0);
    let mut worst = f64::NEG_INFINITY;
    let mut divergent = base.divergent;
    for l in 0..=l_max.min(top) {
        let d = norm_estimate(&f.derivative_n(l), &high, grid)?;
        divergent |= d.divergent;
        let r = d.log_value - lf[l] - base.log_value - l as f64 / rho * (2.0 * k * sigma).ln() + po.log_g(l)?;
        worst = worst.max(r);
    }
    let c = worst.exp();
    let pass = !divergent && c.is_finite();
    Ok(VerificationReport::new("derivative_norm_bound")
        .param("order", serde_json::to_value(po).unwrap_or_default())
        .param("sigma", sigma)
        .param("k", k)
        .param("degree", f.degree())
        .constant(if divergent { f64::INFINITY } else { c })
        .violation(if pass { 0.0 } else { f64::INFINITY })
        .pass(pass)
        .grid("l_max", l_max)
        .grid("radii", grid.radii)
        .grid("angles", grid.angles))
}

/// Checks ‖f ⋆ g‖_{ϱ,σ+τ} ≤ 2^{(n+4)/2}‖f‖_{ϱ,σ}‖g‖_{ϱ,τ}; the violation is
/// reported in log domain (negative means slack).
pub fn verify_star_norm_bound(
    f: &SliceSeries,
    g: &SliceSeries,
    po: &ProximateOrder,
    sigma: f64,
    tau: f64,
    grid: &NormGrid,
) -> Result<VerificationReport> {
    let fg = f.star_product(g)?;
    let lhs = norm_estimate(&fg, &GrowthParams::new(po.clone(), sigma + tau)?, grid)?;
    let nf = norm_estimate(f, &GrowthParams::new(po.clone(), sigma)?, grid)?;
    let ng = norm_estimate(g, &GrowthParams::new(po.clone(), tau)?, grid)?;
    let log_c = (f.n() as f64 + 4.0) / 2.0 * 2f64.ln();
    let rhs = log_c + nf.log_value + ng.log_value;
    let excess = if lhs.log_value == f64::NEG_INFINITY { f64::NEG_INFINITY } else { lhs.log_value - rhs };
    let divergent = lhs.divergent || nf.divergent || ng.divergent;
    let pass = !divergent && excess <= 1e-12;
    Ok(VerificationReport::new("star_norm_bound")
        .param("sigma", sigma)
        .param("tau", tau)
        .param("n", f.n())
        .param("lhs_log", num(lhs.log_value))
        .param("rhs_log", num(rhs))
        .constant(log_c.exp())
        .violation(excess)
        .pass(pass)
        .grid("radii", grid.radii)
        .grid("angles", grid.angles))
}

/// Σ_{ℓ ≥ from} |a_ℓ|·‖x^ℓ‖_{ϱ,σ}, summed in log domain.
pub fn taylor_tail_norm(f: &SliceSeries, gp: &GrowthParams, from: usize) -> Result<f64> {
    let terms = f
        .log_evaluator()
        .log_abs()
        .filter(|&(l, _)| l >= from)
        .map(|(l, la)| Ok(la + monomial_log_norm(&gp.po, gp.sigma, l)?))
        .collect::<Result<Vec<f64>>>()?;
    Ok(log_sum_exp(terms).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{CliffordNumber, Paravector};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rho1() -> ProximateOrder {
        ProximateOrder::constant(1.0).unwrap()
    }

    fn gp(sigma: f64) -> GrowthParams {
        GrowthParams::new(rho1(), sigma).unwrap()
    }

    fn random_poly(rng: &mut ChaCha8Rng, n: usize, deg: usize) -> SliceSeries {
        let coeffs = (0..=deg)
            .map(|_| CliffordNumber::from_coeffs(n, (0..1 << n).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap())
            .collect();
        SliceSeries::new(n, coeffs).unwrap()
    }

    #[test]
    fn norm_of_constant_is_its_modulus() {
        let one = SliceSeries::constant(CliffordNumber::one(2));
        let est = norm_estimate(&one, &gp(0.7), &NormGrid::default()).unwrap();
        assert_eq!(est.value, 1.0);
    }

    #[test]
    fn monomial_norms_match_calculus_maximum() {
        for l in [1usize, 5, 20, 50] {
            let exact = l as f64 * ((l as f64).ln() - 1.0);
            let est = norm_estimate(&SliceSeries::x_power(1, l), &gp(1.0), &NormGrid::default()).unwrap();
            assert!((est.log_value - exact).exp() > 0.99 && (est.log_value - exact).exp() < 1.0 + 1e-9, "l={l}");
            let radial = monomial_log_norm(&rho1(), 1.0, l).unwrap();
            assert!((radial - exact).abs() < 1e-9);
        }
    }

    #[test]
    fn norm_dominates_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = random_poly(&mut rng, 2, 6);
        let g = gp(1.0);
        let est = norm_estimate(&f, &g, &NormGrid::default()).unwrap();
        for _ in 0..100 {
            let x = Paravector::new(rng.gen_range(-8.0..8.0), vec![rng.gen_range(-8.0..8.0), rng.gen_range(-8.0..8.0)])
                .unwrap();
            let r = x.norm();
            let v = f.evaluate(&x).norm().ln() - r;
            assert!(v <= est.log_value + 1e-9);
        }
    }

    #[test]
    fn norm_is_monotone_in_sigma() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let f = random_poly(&mut rng, 2, 5);
        let mut prev = f64::INFINITY;
        for s in [0.25, 0.5, 1.0, 2.0, 4.0] {
            let v = norm_estimate(&f, &gp(s), &NormGrid::default()).unwrap().log_value;
            assert!(v <= prev + 1e-9);
            prev = v;
        }
    }

    #[test]
    fn divergent_when_sigma_below_type() {
        let f = SliceSeries::exp_truncated(1, 2.0, 200);
        assert!(norm_estimate(&f, &gp(1.0), &NormGrid::default()).unwrap().divergent);
        assert!(!norm_estimate(&f, &gp(3.0), &NormGrid::default()).unwrap().divergent);
    }

    #[test]
    fn max_modulus_examples() {
        let f = SliceSeries::x_power(2, 7);
        assert!((max_modulus(&f, 1.7).unwrap() / 1.7f64.powi(7) - 1.0).abs() < 5e-3);
        assert_eq!(max_modulus(&SliceSeries::constant(CliffordNumber::one(2)), 3.0).unwrap(), 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let g = random_poly(&mut rng, 2, 5);
        let ms: Vec<f64> = log_grid(0.1, 10.0, 30).into_iter().map(|r| max_modulus(&g, r).unwrap()).collect();
        assert!(ms.windows(2).all(|w| w[1] >= w[0] * (1.0 - 1e-12)));
    }

    #[test]
    fn coefficient_type_of_exponential() {
        for s in [0.5, 1.0, 2.0] {
            let f = SliceSeries::exp_truncated(1, s, 200);
            let t = coeff_type_estimate(&f, &rho1()).unwrap();
            assert!((t.implied_type / s - 1.0).abs() < 0.05, "s={s}: {t:?}");
            assert!((t.alternative_type / t.implied_type - 1.0).abs() < 1e-9);
        }
        let p = SliceSeries::x_power(1, 30);
        assert_eq!(coeff_type_estimate(&p, &rho1()).unwrap().implied_type, 0.0);
        assert!(coeff_type_estimate(&SliceSeries::exp_truncated(1, 1.0, 10), &rho1()).is_err());
    }

    #[test]
    fn growth_type_examples() {
        let one = SliceSeries::constant(CliffordNumber::one(1));
        assert_eq!(growth_type_estimate(&one, &rho1(), 200).unwrap().value, 0.0);
        assert_eq!(growth_type_estimate(&SliceSeries::x_power(1, 7), &rho1(), 200).unwrap().value, 0.0);
        let f = SliceSeries::exp_truncated(1, 2.0, 200);
        let g = growth_type_estimate(&f, &rho1(), 400).unwrap();
        assert!((g.value / 2.0 - 1.0).abs() < 0.1, "{g:?}");
        // a_ℓ c^ℓ scales the type by c
        let c = 1.5;
        let scaled = SliceSeries::exp_truncated(1, 2.0 * c, 200);
        let gs = growth_type_estimate(&scaled, &rho1(), 400).unwrap();
        assert!((gs.value / (c * g.value) - 1.0).abs() < 0.05);
    }

    #[test]
    fn monomial_bound_constant_order() {
        let b = verify_monomial_norm_bound(&rho1(), 1.0, 0.5, 50).unwrap();
        assert_eq!(b.log_ratios[0], 0.0);
        for (l, r) in b.log_ratios.iter().enumerate() {
            assert!((r + l as f64 * 2f64.ln()).abs() < 1e-8);
        }
        assert!((b.constant - 1.0).abs() < 1e-12);
        assert_eq!(b.l0, 0);
        assert!(b.report.pass);
    }

    #[test]
    fn derivative_bound_examples() {
        let c = SliceSeries::constant(CliffordNumber::scalar(1, 3.0));
        let r = verify_derivative_norm_bound(&c, &rho1(), 1.0, 10, &NormGrid::default()).unwrap();
        assert!(r.pass && (r.empirical_constant - 1.0).abs() < 1e-12);
        let f = SliceSeries::exp_truncated(1, 1.0, 120);
        for sigma in [1.2, 2.4] {
            let r = verify_derivative_norm_bound(&f, &rho1(), sigma, 30, &NormGrid::default()).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn star_bound_examples() {
        let one = SliceSeries::constant(CliffordNumber::one(2));
        let r = verify_star_norm_bound(&one, &one, &rho1(), 1.0, 1.0, &NormGrid::default()).unwrap();
        assert!(r.pass);
        let f = SliceSeries::from_real(1, &[1.0, -2.0, 0.5]).unwrap();
        let g = SliceSeries::from_real(1, &[0.3, 1.0]).unwrap();
        let r = verify_star_norm_bound(&f, &g, &rho1(), 0.5, 1.5, &NormGrid::default()).unwrap();
        assert!(r.pass && r.max_violation < -1.0);
    }

    #[test]
    fn tail_norm_examples() {
        let p = SliceSeries::x_power(1, 5);
        assert_eq!(taylor_tail_norm(&p, &gp(1.0), 6).unwrap(), 0.0);
        let f = SliceSeries::exp_truncated(1, 1.0, 200);
        let t50 = taylor_tail_norm(&f, &gp(2.0), 50).unwrap();
        assert!(t50 < 1e-10, "{t50}");
        let tails: Vec<f64> = (0..60).map(|k| taylor_tail_norm(&f, &gp(2.0), k).unwrap()).collect();
        assert!(tails.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn validity_radius_behaviour() {
        assert_eq!(validity_radius(&SliceSeries::x_power(1, 3)), f64::INFINITY);
        // N = 100 keeps every coefficient representable, so only σr matters
        let r1 = validity_radius(&SliceSeries::exp_truncated(1, 1.0, 100));
        let r2 = validity_radius(&SliceSeries::exp_truncated(1, 2.0, 100));
        assert!(r1 > 30.0 && r1 < 100.0, "{r1}");
        assert!((r1 / r2 - 2.0).abs() < 1e-6);
    }
}
