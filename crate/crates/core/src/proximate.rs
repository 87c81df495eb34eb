//! Proximate orders ϱ(r), their normalization, the inverse φ of r ↦ r^{ϱ(r)}
//! and the weight sequence G_ℓ = φ(ℓ)^ℓ/(eρ)^{ℓ/ρ}.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::config::{self, log_grid};
use crate::error::{Error, Result};
use crate::report::{num, VerificationReport};

/// Shape of ϱ before any normalization.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// ϱ(r) = ρ.
    Constant,
    /// ϱ(r) = ρ + b/ln r for r ≥ r0 > 1. Below r0 the function continues as
    /// ϱ(r0) + ϱ'(r0)·r0·(exp((r − r0)/r0) − 1), which is C¹ at r0 and
    /// bounded as r → 0.
    LogShift { b: f64, r0: f64 },
    /// Linear interpolation in ln r between `(r, ϱ(r))` points, clamped
    /// outside the table.
    Table { points: Vec<(f64, f64)> },
}

/// Sine continuation below `r0` that makes an order normalized.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Glue {
    r0: f64,
    value: f64,
    slope: f64,
}

/// A proximate order function together with its limit order ρ.
#[derive(Debug, Clone, PartialEq)]
pub struct ProximateOrder {
    rho: f64,
    family: Family,
    glue: Option<Glue>,
}

impl ProximateOrder {
    pub fn constant(rho: f64) -> Result<Self> {
        check_rho(rho)?;
        Ok(Self { rho, family: Family::Constant, glue: None })
    }

    /// ρ + b/ln r beyond `r0`; `b = ln c` gives r^{ϱ(r)} = c·r^ρ there.
    pub fn log_shift(rho: f64, b: f64, r0: f64) -> Result<Self> {
        check_rho(rho)?;
        if !(r0 > 1.0) || !r0.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParameter(format!("log-shift needs finite b and r0 > 1, got b={b}, r0={r0}")));
        }
        let po = Self { rho, family: Family::LogShift { b, r0 }, glue: None };
        let at_zero = po.family_value(0.0);
        if !(po.family_value(r0) > 0.0 && at_zero > 0.0) {
            return Err(Error::InvalidParameter(format!("log-shift order must stay positive (b={b}, r0={r0})")));
        }
        Ok(po)
    }

    pub fn table(rho: f64, mut points: Vec<(f64, f64)>) -> Result<Self> {
        check_rho(rho)?;
        if points.len() < 2 {
            return Err(Error::InvalidParameter("a table needs at least two points".into()));
        }
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in points.windows(2) {
            if !(w[0].0 < w[1].0) {
                return Err(Error::InvalidParameter("table radii must be distinct".into()));
            }
        }
        if points.iter().any(|&(r, v)| !(r > 0.0) || !(v > 0.0) || !r.is_finite() || !v.is_finite()) {
            return Err(Error::InvalidParameter("table entries must be positive and finite".into()));
        }
        Ok(Self { rho, family: Family::Table { points }, glue: None })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Constant orders are normalized as they stand; the others after [`Self::normalize`].
    pub fn is_normalized(&self) -> bool {
        matches!(self.family, Family::Constant) || self.glue.is_some()
    }

    /// Radius below which the normalizing continuation is used, if any.
    pub fn normalization_radius(&self) -> Option<f64> {
        self.glue.map(|g| g.r0)
    }

    fn family_value(&self, r: f64) -> f64 {
        match &self.family {
            Family::Constant => self.rho,
            Family::LogShift { b, r0 } => {
                if r >= *r0 {
                    self.rho + b / r.ln()
                } else {
                    let (v0, d0) = (self.rho + b / r0.ln(), -b / (r0 * r0.ln().powi(2)));
                    v0 + d0 * r0 * ((r - r0) / r0).exp_m1()
                }
            }
            Family::Table { points } => table_value(points, r),
        }
    }

    fn family_derivative(&self, r: f64) -> f64 {
        match &self.family {
            Family::Constant => 0.0,
            Family::LogShift { b, r0 } => {
                if r >= *r0 {
                    -b / (r * r.ln().powi(2))
                } else {
                    -b / (r0 * r0.ln().powi(2)) * ((r - r0) / r0).exp()
                }
            }
            Family::Table { points } => {
                let h = r * config::FD_REL_STEP;
                (table_value(points, r + h) - table_value(points, r - h)) / (2.0 * h)
            }
        }
    }

    /// ϱ(r).
    pub fn eval(&self, r: f64) -> f64 {
        match self.glue {
            Some(g) if r < g.r0 => g.value - self.rho / 4.0 * (4.0 * g.slope / self.rho * (g.r0 - r)).sin(),
            _ => self.family_value(r),
        }
    }

    /// ϱ'(r). Closed forms for the parametric families, a central difference
    /// with step r·1e-6 for tables.
    pub fn derivative(&self, r: f64) -> f64 {
        match self.glue {
            Some(g) if r < g.r0 => g.slope * (4.0 * g.slope / self.rho * (g.r0 - r)).cos(),
            _ => self.family_derivative(r),
        }
    }

    /// ln(r^{ϱ(r)}) = ϱ(r)·ln r.
    pub fn log_power(&self, r: f64) -> f64 {
        self.eval(r) * r.ln()
    }

    /// r^{ϱ(r)} evaluated as exp(ϱ(r)·ln r).
    pub fn eval_power(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::InvalidParameter(format!("r must be positive, got {r}")));
        }
        Ok(self.log_power(r).exp())
    }

    /// Replaces ϱ on (0, r0) by ϱ(r0) − (ρ/4)·sin(4ϱ'(r0)(r0 − r)/ρ).
    ///
    /// Fails when r0 ≤ 0 or when the result does not pass the normalization
    /// scan (r ↦ r^{ϱ(r)} increasing on a log grid, ϱ positive near 0).
    pub fn normalize(&self, r0: f64) -> Result<Self> {
        if !(r0 > 0.0) || !r0.is_finite() {
            return Err(Error::InvalidParameter(format!("normalization radius must be positive, got {r0}")));
        }
        // the value and slope at r0 come from the branch valid on [r0, ∞)
        let (value, slope) = match self.glue {
            Some(g) if r0 < g.r0 => (self.eval(r0), self.derivative(r0)),
            _ => (self.family_value(r0), self.family_derivative(r0)),
        };
        let out = Self { rho: self.rho, family: self.family.clone(), glue: Some(Glue { r0, value, slope }) };
        let scan = out.normalization_scan();
        if !scan.increasing || !scan.positive_near_zero {
            return Err(Error::InvalidParameter(format!(
                "normalizing at r0={r0} does not give an increasing r^rho(r) (first failure near r={:.3e})",
                scan.first_failure.unwrap_or(0.0)
            )));
        }
        Ok(out)
    }

    /// Grid scan of the properties required of a normalized order.
    pub fn normalization_scan(&self) -> NormalizationScan {
        let (lo, hi, count) = config::MONOTONE_SCAN;
        let grid = log_grid(lo, hi, count);
        let mut first_failure = None;
        let mut prev = f64::NEG_INFINITY;
        for &r in &grid {
            let lp = self.log_power(r);
            if !(lp > prev) {
                first_failure = Some(r);
                break;
            }
            prev = lp;
        }
        let positive_near_zero = [1e-300, 1e-100, 1e-12, 1e-6].iter().all(|&r| self.eval(r) > 0.0);
        NormalizationScan { increasing: first_failure.is_none(), positive_near_zero, first_failure }
    }

    /// Diverging-grid check of the proximate-order axioms beyond the largest
    /// gluing radius: |ϱ − ρ| non-increasing and r·ϱ'(r)·ln r small at the tail.
    pub fn proximate_scan(&self) -> ProximateScan {
        let start = match &self.family {
            Family::LogShift { r0, .. } => *r0,
            Family::Table { points } => points.last().map(|p| p.0).unwrap_or(1.0),
            Family::Constant => 1.0,
        }
        .max(self.glue.map(|g| g.r0).unwrap_or(1.0))
        .max(std::f64::consts::E);
        let grid = log_grid(start, start * 1e12, 200);
        let dev: Vec<f64> = grid.iter().map(|&r| (self.eval(r) - self.rho).abs()).collect();
        let limit_monotone = dev.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12) + 1e-15);
        let tail = |r: f64| (r * self.derivative(r) * r.ln()).abs();
        let tail_first = tail(grid[0]);
        let tail_last = tail(*grid.last().unwrap());
        ProximateScan {
            limit_monotone,
            final_deviation: *dev.last().unwrap(),
            derivative_tail_first: tail_first,
            derivative_tail_last: tail_last,
        }
    }

    /// ln φ(t) where φ inverts r ↦ r^{ϱ(r)}, found by bisection in ln r.
    pub fn log_phi(&self, t: f64) -> Result<f64> {
        if !self.is_normalized() {
            return Err(Error::NotNormalized);
        }
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::InvalidParameter(format!("phi needs a positive finite argument, got {t}")));
        }
        let target = t.ln();
        let g = |u: f64| self.eval(u.exp()) * u;
        let (mut lo, mut hi) = (target.min(0.0), target.max(0.0));
        // widen in ln r, doubling the step each time
        let mut step = 1.0;
        let mut tries = 0;
        while g(lo) > target {
            lo -= step;
            step *= 2.0;
            tries += 1;
            if tries > config::PHI_MAX_DOUBLINGS || lo < -745.0 {
                return Err(Error::BracketFailure(t));
            }
        }
        step = 1.0;
        tries = 0;
        while g(hi) < target {
            hi += step;
            step *= 2.0;
            tries += 1;
            if tries > config::PHI_MAX_DOUBLINGS || hi > 709.0 {
                return Err(Error::BracketFailure(t));
            }
        }
        for _ in 0..400 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let v = g(mid);
            if v == target {
                return Ok(mid);
            }
            if v < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // closer endpoint
        Ok(if (g(lo) - target).abs() <= (g(hi) - target).abs() { lo } else { hi })
    }

    pub fn phi(&self, t: f64) -> Result<f64> {
        Ok(self.log_phi(t)?.exp())
    }

    /// ln G_ℓ = ℓ·ln φ(ℓ) − (ℓ/ρ)(1 + ln ρ), with ln G₀ = 0.
    pub fn log_g(&self, l: usize) -> Result<f64> {
        if l == 0 {
            return Ok(0.0);
        }
        let lf = l as f64;
        Ok(lf * self.log_phi(lf)? - lf / self.rho * (1.0 + self.rho.ln()))
    }

    pub fn g_sequence(&self, max_l: usize) -> Result<GSequence> {
        let log_values = (0..=max_l).map(|l| self.log_g(l)).collect::<Result<Vec<_>>>()?;
        Ok(GSequence { log_values })
    }
}

fn check_rho(rho: f64) -> Result<()> {
    if rho > 0.0 && rho.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("order rho must be positive and finite, got {rho}")))
    }
}

fn table_value(points: &[(f64, f64)], r: f64) -> f64 {
    let first = points[0];
    let last = points[points.len() - 1];
    if r <= first.0 {
        return first.1;
    }
    if r >= last.0 {
        return last.1;
    }
    let i = points.partition_point(|p| p.0 <= r);
    let (a, b) = (points[i - 1], points[i]);
    let w = (r.ln() - a.0.ln()) / (b.0.ln() - a.0.ln());
    a.1 + w * (b.1 - a.1)
}

/// Result of [`ProximateOrder::normalization_scan`].
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationScan {
    pub increasing: bool,
    pub positive_near_zero: bool,
    pub first_failure: Option<f64>,
}

/// Result of [`ProximateOrder::proximate_scan`].
#[derive(Debug, Clone, PartialEq)]
pub struct ProximateScan {
    pub limit_monotone: bool,
    pub final_deviation: f64,
    pub derivative_tail_first: f64,
    pub derivative_tail_last: f64,
}

/// ln G_ℓ for ℓ = 0..=max.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GSequence {
    pub log_values: Vec<f64>,
}

impl GSequence {
    pub fn get(&self, l: usize) -> f64 {
        self.log_values[l]
    }

    pub fn len(&self) -> usize {
        self.log_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log_values.is_empty()
    }
}

#[derive(Serialize, Deserialize)]
struct OrderRepr {
    family: String,
    rho: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    table: Option<Vec<[f64; 2]>>,
    /// Normalization radius; absent for orders used as given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    normalize_at: Option<f64>,
}

impl Serialize for ProximateOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut repr =
            OrderRepr { family: String::new(), rho: self.rho, b: None, r0: None, table: None, normalize_at: None };
        match &self.family {
            Family::Constant => repr.family = "constant".into(),
            Family::LogShift { b, r0 } => {
                repr.family = "logshift".into();
                repr.b = Some(*b);
                repr.r0 = Some(*r0);
            }
            Family::Table { points } => {
                repr.family = "table".into();
                repr.table = Some(points.iter().map(|&(r, v)| [r, v]).collect());
            }
        }
        repr.normalize_at = self.glue.map(|g| g.r0);
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProximateOrder {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = OrderRepr::deserialize(d)?;
        let po = match repr.family.as_str() {
            "constant" => ProximateOrder::constant(repr.rho),
            "logshift" => ProximateOrder::log_shift(
                repr.rho,
                repr.b.ok_or_else(|| D::Error::missing_field("b"))?,
                repr.r0.ok_or_else(|| D::Error::missing_field("r0"))?,
            ),
            "table" => ProximateOrder::table(
                repr.rho,
                repr.table.ok_or_else(|| D::Error::missing_field("table"))?.into_iter().map(|[r, v]| (r, v)).collect(),
            ),
            other => return Err(D::Error::custom(format!("unknown proximate-order family {other:?}"))),
        }
        .map_err(D::Error::custom)?;
        match repr.normalize_at {
            Some(r0) => po.normalize(r0).map_err(D::Error::custom),
            None => Ok(po),
        }
    }
}

/// Sampling choices for [`verify_lemma_suite`].
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaGrid {
    /// Points per axis of the (r, s) grid for the two inequalities.
    pub pairs: usize,
    pub r_min: f64,
    pub r_max: f64,
    pub epsilon: f64,
    /// Tail end T of the limit window [T/2, T].
    pub tail_t: f64,
    pub tail_points: usize,
    pub s_values: Vec<f64>,
    /// σ > σ' > 0 for the φ-quotient bound.
    pub sigma: f64,
    pub sigma_prime: f64,
    pub quotient_points: usize,
    /// Largest ℓ, k in the G submultiplicativity check.
    pub g_max: usize,
    /// Range and size of the φ round-trip grid.
    pub round_trip: (f64, f64, usize),
}

impl Default for LemmaGrid {
    fn default() -> Self {
        Self {
            pairs: 200,
            r_min: 1e-3,
            r_max: 1e5,
            epsilon: 0.1,
            tail_t: config::LIMIT_TAIL_T,
            tail_points: 50,
            s_values: vec![0.5, 2.0, 10.0],
            sigma: 1.0,
            sigma_prime: 0.5,
            quotient_points: 120,
            g_max: 300,
            round_trip: (1e-6, 1e12, 400),
        }
    }
}

/// Runs every inequality and limit check for a normalized order. Failures
/// are reported, not raised; only a non-normalized input is an error.
pub fn verify_lemma_suite(po: &ProximateOrder, grid: &LemmaGrid) -> Result<Vec<VerificationReport>> {
    if !po.is_normalized() {
        return Err(Error::NotNormalized);
    }
    Ok(vec![
        check_round_trip(po, grid)?,
        check_g_submultiplicative(po, grid)?,
        check_sum_bound(po, grid),
        check_scaling_bound(po, grid),
        check_log_derivative_limit(po, grid)?,
        check_phi_ratio_limit(po, grid)?,
        check_power_ratio_limit(po, grid),
        check_phi_quotient_bound(po, grid)?,
    ])
}

fn base_report(name: &str, po: &ProximateOrder) -> VerificationReport {
    VerificationReport::new(name).param("order", serde_json::to_value(po).unwrap_or_default())
}

fn check_round_trip(po: &ProximateOrder, grid: &LemmaGrid) -> Result<VerificationReport> {
    let (lo, hi, count) = grid.round_trip;
    let mut worst: f64 = 0.0;
    for t in log_grid(lo, hi, count) {
        let r = po.phi(t)?;
        worst = worst.max((po.eval_power(r)? - t).abs() / t);
    }
    Ok(base_report("phi_round_trip", po)
        .constant(worst)
        .violation(worst - config::PHI_REL_TOL)
        .pass(worst <= config::PHI_REL_TOL)
        .grid("t_min", lo)
        .grid("t_max", hi)
        .grid("points", count))
}

fn check_g_submultiplicative(po: &ProximateOrder, grid: &LemmaGrid) -> Result<VerificationReport> {
    let m = grid.g_max;
    let g = po.g_sequence(2 * m)?;
    let mut worst = f64::NEG_INFINITY;
    for l in 0..=m {
        for k in 0..=m {
            worst = worst.max(g.get(l) + g.get(k) - g.get(l + k));
        }
    }
    Ok(base_report("g_submultiplicativity", po)
        .constant(worst.max(0.0))
        .violation(worst)
        .pass(worst <= config::G_SUBMULT_TOL)
        .grid("max_index", m)
        .param("tolerance", config::G_SUBMULT_TOL))
}

/// Smallest C making `lhs ≤ rhs + C` hold on a 2D log grid, then the same
/// inequality re-checked on the interleaved (half-step) grid.
fn additive_constant(
    po: &ProximateOrder,
    grid: &LemmaGrid,
    name: &str,
    excess: impl Fn(f64, f64) -> f64,
) -> VerificationReport {
    let pts = log_grid(grid.r_min, grid.r_max, grid.pairs);
    let mut c: f64 = 0.0;
    let mut tail: f64 = f64::NEG_INFINITY;
    for &r in &pts {
        for &s in &pts {
            let e = excess(r, s);
            c = c.max(e);
            if r.max(s) >= grid.r_max / 10.0 {
                tail = tail.max(e);
            }
        }
    }
    let mid: Vec<f64> = pts.windows(2).map(|w| (w[0] * w[1]).sqrt()).collect();
    let mut fresh = f64::NEG_INFINITY;
    for &r in &mid {
        for &s in &mid {
            fresh = fresh.max(excess(r, s) - c);
        }
    }
    let slack = 1e-12 * c.max(1.0);
    base_report(name, po)
        .param("epsilon", grid.epsilon)
        .param("tail_excess", num(tail))
        .constant(c)
        .violation(fresh)
        .pass(c.is_finite() && fresh <= slack)
        .grid("r_min", grid.r_min)
        .grid("r_max", grid.r_max)
        .grid("points_per_axis", grid.pairs)
}

fn check_sum_bound(po: &ProximateOrder, grid: &LemmaGrid) -> VerificationReport {
    let k = 2f64.powf(po.rho() + grid.epsilon);
    let p = |r: f64| po.log_power(r).exp();
    additive_constant(po, grid, "power_sum_bound", |r, s| p(r + s) - k * (p(r) + p(s)))
}

fn check_scaling_bound(po: &ProximateOrder, grid: &LemmaGrid) -> VerificationReport {
    let eps = grid.epsilon;
    let rho = po.rho();
    let p = |r: f64| po.log_power(r).exp();
    additive_constant(po, grid, "power_scaling_bound", |r, s| p(s * r) - (1.0 + eps) * s.powf(rho) * p(r))
}

/// Largest relative deviation of `f` from `limit` on the tail window.
fn tail_deviation(grid: &LemmaGrid, mut f: impl FnMut(f64) -> Result<f64>, limit: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for t in log_grid(grid.tail_t / 2.0, grid.tail_t, grid.tail_points) {
        worst = worst.max((f(t)? / limit - 1.0).abs());
    }
    Ok(worst)
}

fn limit_report(name: &str, po: &ProximateOrder, grid: &LemmaGrid, worst: f64) -> VerificationReport {
    base_report(name, po)
        .constant(worst)
        .violation(worst - config::LIMIT_REL_TOL)
        .pass(worst <= config::LIMIT_REL_TOL)
        .grid("t_min", grid.tail_t / 2.0)
        .grid("t_max", grid.tail_t)
        .grid("points", grid.tail_points)
        .param("relative_tolerance", config::LIMIT_REL_TOL)
}

fn check_log_derivative_limit(po: &ProximateOrder, grid: &LemmaGrid) -> Result<VerificationReport> {
    // t φ'(t)/φ(t) = d ln φ / d ln t
    let h: f64 = 1e-3;
    let worst = tail_deviation(
        grid,
        |t| Ok((po.log_phi(t * h.exp())? - po.log_phi(t * (-h).exp())?) / (2.0 * h)),
        1.0 / po.rho(),
    )?;
    Ok(limit_report("phi_log_derivative_limit", po, grid, worst))
}

fn check_phi_ratio_limit(po: &ProximateOrder, grid: &LemmaGrid) -> Result<VerificationReport> {
    let mut worst: f64 = 0.0;
    for &s in &grid.s_values {
        let w =
            tail_deviation(grid, |t| Ok((po.log_phi(s * t)? - po.log_phi(t)?).exp()), s.powf(1.0 / po.rho()))?;
        worst = worst.max(w);
    }
    Ok(limit_report("phi_ratio_limit", po, grid, worst).param("s_values", grid.s_values.clone()))
}

fn check_power_ratio_limit(po: &ProximateOrder, grid: &LemmaGrid) -> VerificationReport {
    let mut worst: f64 = 0.0;
    for &s in &grid.s_values {
        let w = tail_deviation(grid, |r| Ok((po.log_power(s * r) - po.log_power(r)).exp()), s.powf(po.rho()))
            .unwrap_or(f64::INFINITY);
        worst = worst.max(w);
    }
    limit_report("power_ratio_limit", po, grid, worst).param("s_values", grid.s_values.clone())
}

fn check_phi_quotient_bound(po: &ProximateOrder, grid: &LemmaGrid) -> Result<VerificationReport> {
    let (sigma, sp, rho) = (grid.sigma, grid.sigma_prime, po.rho());
    let ts = log_grid(1.0, grid.tail_t, grid.quotient_points);
    let lp = ts.iter().map(|&t| po.log_phi(t)).collect::<Result<Vec<_>>>()?;
    let shift = (std::f64::consts::E * sp * rho).ln() / rho;
    // index of the first grid point from which every pair satisfies the bound
    let mut start = 0;
    let mut worst_beyond = f64::NEG_INFINITY;
    for (a, &t) in ts.iter().enumerate() {
        for (b, &tp) in ts.iter().enumerate() {
            let excess = lp[a] - lp[b] - (sigma * t / tp - shift);
            if excess > 0.0 {
                start = start.max(a.min(b) + 1);
            }
        }
    }
    if start < ts.len() {
        for a in start..ts.len() {
            for b in start..ts.len() {
                worst_beyond = worst_beyond.max(lp[a] - lp[b] - (sigma * ts[a] / ts[b] - shift));
            }
        }
    }
    let t0 = ts.get(start).copied().unwrap_or(f64::INFINITY);
    Ok(base_report("phi_quotient_bound", po)
        .param("sigma", sigma)
        .param("sigma_prime", sp)
        .constant(t0)
        .violation(worst_beyond)
        .pass(t0 <= grid.tail_t / 10.0)
        .grid("t_min", 1.0)
        .grid("t_max", grid.tail_t)
        .grid("points", grid.quotient_points))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn logshift(b: f64) -> ProximateOrder {
        let r0 = std::f64::consts::E.powi(2);
        ProximateOrder::log_shift(1.0, b, r0).unwrap().normalize(r0).unwrap()
    }

    #[test]
    fn eval_power_examples() {
        let p = ProximateOrder::constant(2.0).unwrap();
        assert!((p.eval_power(3.0).unwrap() - 9.0).abs() < 1e-13);
        assert!(p.eval_power(0.0).is_err());
        let c: f64 = 3.0;
        let q = ProximateOrder::log_shift(1.5, c.ln(), 5.0).unwrap();
        for r in [5.0, 40.0, 1e4] {
            let want = c * f64::powf(r, 1.5);
            assert!((q.eval_power(r).unwrap() / want - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn normalize_constant_is_identity() {
        let p = ProximateOrder::constant(1.3).unwrap();
        let q = p.normalize(4.0).unwrap();
        for r in log_grid(1e-3, 1e6, 50) {
            assert_eq!(p.eval(r), q.eval(r));
        }
    }

    #[test]
    fn normalize_keeps_tail_and_is_idempotent() {
        let r0 = std::f64::consts::E.powi(2);
        let raw = ProximateOrder::log_shift(1.0, 0.5, r0).unwrap();
        let once = raw.normalize(r0).unwrap();
        let twice = once.normalize(r0).unwrap();
        for r in log_grid(1e-3, 1e6, 500) {
            if r >= r0 {
                assert_eq!(raw.eval(r), once.eval(r));
            }
            assert!((once.eval(r) - twice.eval(r)).abs() <= 1e-14);
        }
        assert!(once.normalization_scan().increasing);
        assert!(raw.normalize(-1.0).is_err());
    }

    #[test]
    fn glued_derivative_matches_finite_difference() {
        let p = logshift(-0.4);
        for r in [0.01, 0.5, 3.0, 7.0, 20.0, 1e3] {
            let h = r * 1e-6;
            let fd = (p.eval(r + h) - p.eval(r - h)) / (2.0 * h);
            assert!((fd - p.derivative(r)).abs() < 1e-7, "r={r}");
        }
    }

    #[test]
    fn phi_examples() {
        let p2 = ProximateOrder::constant(2.0).unwrap();
        assert!((p2.phi(9.0).unwrap() - 3.0).abs() < 1e-12);
        let p1 = ProximateOrder::constant(1.0).unwrap();
        for t in [1e-5, 0.3, 7.0, 1e9] {
            assert!((p1.phi(t).unwrap() / t - 1.0).abs() < 1e-12);
        }
        let raw = ProximateOrder::log_shift(1.0, 0.5, 10.0).unwrap();
        assert!(matches!(raw.phi(2.0), Err(Error::NotNormalized)));
    }

    #[test]
    fn log_g_examples() {
        let p1 = ProximateOrder::constant(1.0).unwrap();
        assert_eq!(p1.log_g(0).unwrap(), 0.0);
        assert!((p1.log_g(2).unwrap() - 2.0 * (2f64.ln() - 1.0)).abs() < 1e-12);
        let p2 = ProximateOrder::constant(2.0).unwrap();
        let want = (16.0 / (2.0 * std::f64::consts::E).powi(2)).ln();
        assert!((p2.log_g(4).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn table_family_interpolates_in_log_radius() {
        let t = ProximateOrder::table(1.0, vec![(1.0, 1.2), (100.0, 1.0)]).unwrap();
        assert!((t.eval(10.0) - 1.1).abs() < 1e-12);
        assert_eq!(t.eval(0.1), 1.2);
        assert_eq!(t.eval(1e4), 1.0);
        assert!((t.derivative(10.0) - (-0.2 / (10.0 * 100f64.ln()))).abs() < 1e-9);
        assert!(ProximateOrder::table(1.0, vec![(1.0, 1.0)]).is_err());
    }

    #[test]
    fn invalid_parameters() {
        assert!(ProximateOrder::constant(0.0).is_err());
        assert!(ProximateOrder::log_shift(1.0, 0.5, 1.0).is_err());
        assert!(ProximateOrder::log_shift(0.1, -5.0, 3.0).is_err());
    }

    #[test]
    fn proximate_scan_on_log_shift() {
        let s = logshift(0.5).proximate_scan();
        assert!(s.limit_monotone);
        assert!(s.derivative_tail_last < s.derivative_tail_first);
    }

    #[test]
    fn serialization_round_trip() {
        let p = logshift(0.5);
        let json = serde_json::to_string(&p).unwrap();
        let back: ProximateOrder = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<ProximateOrder>(r#"{"family":"cubic","rho":1}"#).is_err());
        let c: ProximateOrder = serde_json::from_str(r#"{"family":"constant","rho":2}"#).unwrap();
        assert!(c.is_normalized());
    }

    #[test]
    fn lemma_suite_constant_passes() {
        for rho in [0.5, 1.0, 2.0] {
            let p = ProximateOrder::constant(rho).unwrap();
            for r in verify_lemma_suite(&p, &LemmaGrid::default()).unwrap() {
                assert!(r.pass, "rho={rho}: {r:?}");
            }
        }
    }
}
