//! Superoscillatory wave combinations F_n(x,a) and their free evolution
//! under U = Σ (it)^m/m!·d^{2m}/dx^{2m}.
//!
//! Complex numbers live in the ℂ_{e₁} slice of ℝ₁. The amplitudes of F_n sum
//! in absolute value to a^n while F_n itself stays O(1) on the real line, so
//! closed-form evaluation runs in extended precision.

use astro_float::{BigFloat, Consts, RoundingMode, Sign, Word};
use serde::{Deserialize, Serialize};

use crate::clifford::{CliffordNumber, Paravector};
use crate::config;
use crate::error::{Error, Result};
use crate::numeric::{ln_factorials, log_sum_exp, par_map};
use crate::operators::InfOrderOperator;
use crate::report::{num, VerificationReport};
use crate::series::SliceSeries;

const RM: RoundingMode = RoundingMode::ToEven;

/// One plane wave A·e^{iωx}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveTerm {
    pub amplitude: CliffordNumber,
    pub frequency: f64,
}

/// Σ_k A_k e^{iω_k x} with A_k = C(n,k)((1+a)/2)^{n−k}((1−a)/2)^k·e^{−iω_k²t}
/// and ω_k = 1 − 2k/n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveCombo {
    terms: Vec<WaveTerm>,
    n_param: usize,
    a_param: f64,
    time: f64,
}

/// F_n(·, a) for n ≥ 1 and a > 1.
pub fn build_fn(n: usize, a: f64) -> Result<WaveCombo> {
    if !(a > 1.0) || !a.is_finite() {
        return Err(Error::InvalidParameter(format!("superoscillation needs a > 1, got {a}")));
    }
    build_fn_boundary(n, a)
}

/// As [`build_fn`] but also admits the boundary case a = 1, where F_n = e^{ix}.
pub fn build_fn_boundary(n: usize, a: f64) -> Result<WaveCombo> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if !(a >= 1.0) || !a.is_finite() {
        return Err(Error::InvalidParameter(format!("a must be finite and at least 1, got {a}")));
    }
    let mut w = WaveCombo { terms: Vec::new(), n_param: n, a_param: a, time: 0.0 };
    w.terms = w.refresh_terms();
    Ok(w)
}

/// Exact free evolution: (A, ω) ↦ (A·e^{−iω²t}, ω).
pub fn evolve(w: &WaveCombo, t: f64) -> WaveCombo {
    let mut out = w.clone();
    out.time = w.time + t;
    out.terms = w
        .terms
        .iter()
        .map(|term| {
            let phase = -term.frequency * term.frequency * t;
            let rot = CliffordNumber::complex(1, phase.cos(), phase.sin());
            WaveTerm { amplitude: &term.amplitude * &rot, frequency: term.frequency }
        })
        .collect();
    out
}

impl WaveCombo {
    pub fn n_param(&self) -> usize {
        self.n_param
    }

    pub fn a_param(&self) -> f64 {
        self.a_param
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn terms(&self) -> &[WaveTerm] {
        &self.terms
    }

    fn hp(&self) -> Hp {
        Hp::new(self.n_param, self.a_param)
    }

    fn refresh_terms(&self) -> Vec<WaveTerm> {
        let hp = self.hp();
        let mut cc = hp.consts();
        hp.amplitudes(self, &mut cc)
            .into_iter()
            .enumerate()
            .map(|(k, c)| WaveTerm {
                amplitude: CliffordNumber::complex(1, to_f64(&c.re), to_f64(&c.im)),
                frequency: 1.0 - 2.0 * k as f64 / self.n_param as f64,
            })
            .collect()
    }

    /// Plain f64 sum of the stored terms at a real x.
    pub fn eval_f64(&self, x: f64) -> (f64, f64) {
        self.terms.iter().fold((0.0, 0.0), |(re, im), term| {
            let (c, s) = ((term.frequency * x).cos(), (term.frequency * x).sin());
            let (ar, ai) = (term.amplitude.get(0), term.amplitude.get(1));
            (re + ar * c - ai * s, im + ar * s + ai * c)
        })
    }

    /// Value at x = u + iv, evaluated in extended precision.
    pub fn eval(&self, u: f64, v: f64) -> (f64, f64) {
        let hp = self.hp();
        let mut cc = hp.consts();
        let b = hp.amplitudes(self, &mut cc);
        let x = Cx::expi_at(&hp, &hp.f(1.0), u, v, &mut cc);
        let z = Cx::expi_at(&hp, &hp.z_freq(self.n_param), u, v, &mut cc);
        let psi = hp.horner(&b, &z).mul(&x, hp.p);
        (to_f64(&psi.re), to_f64(&psi.im))
    }
}

/// Extended-precision context: enough guard bits to absorb the a^n cancellation.
struct Hp {
    p: usize,
}

impl Hp {
    fn new(n: usize, a: f64) -> Self {
        let bits = 128 + (n as f64 * a.max(1.0).log2()).ceil() as usize;
        Self { p: bits.div_ceil(64) * 64 }
    }

    fn consts(&self) -> Consts {
        Consts::new().expect("astro-float constant cache")
    }

    fn f(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.p)
    }

    /// A_k including the time factor e^{−iω_k²t}.
    fn amplitudes(&self, w: &WaveCombo, cc: &mut Consts) -> Vec<Cx> {
        let p = self.p;
        let n = w.n_param;
        let a = self.f(w.a_param);
        let one = self.f(1.0);
        let two = self.f(2.0);
        let pp = one.add(&a, p, RM).div(&two, p, RM);
        let qq = one.sub(&a, p, RM).div(&two, p, RM);
        let nf = self.f(n as f64);
        let t = self.f(w.time);
        let mut binom = self.f(1.0);
        (0..=n)
            .map(|k| {
                if k > 0 {
                    binom = binom.mul(&self.f((n - k + 1) as f64), p, RM).div(&self.f(k as f64), p, RM);
                }
                let mag = binom.mul(&pp.powi(n - k, p, RM), p, RM).mul(&qq.powi(k, p, RM), p, RM);
                if w.time == 0.0 {
                    return Cx { re: mag, im: self.f(0.0) };
                }
                let omega = self.f(n as f64 - 2.0 * k as f64).div(&nf, p, RM);
                let phase = omega.mul(&omega, p, RM).mul(&t, p, RM).neg();
                let rot = Cx::expi(&phase, p, cc);
                Cx { re: mag, im: self.f(0.0) }.mul(&rot, p)
            })
            .collect()
    }

    /// −2/n, the frequency spacing.
    fn z_freq(&self, n: usize) -> BigFloat {
        self.f(-2.0).div(&self.f(n as f64), self.p, RM)
    }

    /// Σ_k b_k z^k.
    fn horner(&self, b: &[Cx], z: &Cx) -> Cx {
        let mut acc = b[b.len() - 1].clone();
        for bk in b.iter().rev().skip(1) {
            acc = acc.mul(z, self.p).add(bk, self.p);
        }
        acc
    }
}

#[derive(Debug, Clone)]
struct Cx {
    re: BigFloat,
    im: BigFloat,
}

impl Cx {
    fn mul(&self, o: &Cx, p: usize) -> Cx {
        let re = self.re.mul(&o.re, p, RM).sub(&self.im.mul(&o.im, p, RM), p, RM);
        let im = self.re.mul(&o.im, p, RM).add(&self.im.mul(&o.re, p, RM), p, RM);
        Cx { re, im }
    }

    fn add(&self, o: &Cx, p: usize) -> Cx {
        Cx { re: self.re.add(&o.re, p, RM), im: self.im.add(&o.im, p, RM) }
    }

    fn sub(&self, o: &Cx, p: usize) -> Cx {
        Cx { re: self.re.sub(&o.re, p, RM), im: self.im.sub(&o.im, p, RM) }
    }

    fn scale(&self, s: &BigFloat, p: usize) -> Cx {
        Cx { re: self.re.mul(s, p, RM), im: self.im.mul(s, p, RM) }
    }

    /// cos θ + i sin θ.
    fn expi(theta: &BigFloat, p: usize, cc: &mut Consts) -> Cx {
        Cx { re: theta.cos(p, RM, cc), im: theta.sin(p, RM, cc) }
    }

    /// e^{iω(u+iv)} = e^{−ωv}(cos ωu + i sin ωu).
    fn expi_at(hp: &Hp, w: &BigFloat, u: f64, v: f64, cc: &mut Consts) -> Cx {
        let p = hp.p;
        let phase = w.mul(&hp.f(u), p, RM);
        let damp = w.mul(&hp.f(v), p, RM).neg().exp(p, RM, cc);
        Cx::expi(&phase, p, cc).scale(&damp, p)
    }

    fn abs_f64(&self) -> f64 {
        to_f64(&self.re).hypot(to_f64(&self.im))
    }
}

/// Nearest-ish f64 of a BigFloat, from the top two mantissa words.
fn to_f64(x: &BigFloat) -> f64 {
    let Some((m, _, sign, e, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    if m.iter().all(|&w| w == 0) {
        return 0.0;
    }
    let wb = Word::BITS as i32;
    let len = m.len();
    let hi = m[len - 1] as f64 * 2f64.powi(-wb);
    let lo = if len > 1 { m[len - 2] as f64 * 2f64.powi(-2 * wb) } else { 0.0 };
    let frac = hi + lo;
    // scale in two steps so large |e| does not overflow the power itself
    let half = e / 2;
    let v = frac * 2f64.powi(half) * 2f64.powi(e - half);
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

/// Points x = u + iv: u on [−W, W] with the given step, v on [−H, H].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XGrid {
    pub half_width: f64,
    pub step: f64,
    pub im_half_width: f64,
    pub im_step: f64,
}

impl Default for XGrid {
    /// Real window [−5, 5] at step 0.01 and the strip |Im x| ≤ 2 at step 0.1.
    fn default() -> Self {
        Self {
            half_width: config::SUPEROSC_WINDOW,
            step: config::SUPEROSC_STEP,
            im_half_width: config::SUPEROSC_IM_HALF_WIDTH,
            im_step: 0.1,
        }
    }
}

impl XGrid {
    /// Real axis only.
    pub fn real_only(half_width: f64, step: f64) -> Self {
        Self { half_width, step, im_half_width: 0.0, im_step: 1.0 }
    }

    fn check(&self) -> Result<()> {
        let ok = self.half_width >= 0.0
            && self.step > 0.0
            && self.im_half_width >= 0.0
            && self.im_step > 0.0
            && self.half_width.is_finite()
            && self.im_half_width.is_finite();
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter("grid widths must be non-negative and steps positive".into()))
        }
    }

    pub fn real_points(&self) -> Vec<f64> {
        let count = (2.0 * self.half_width / self.step).round() as usize + 1;
        (0..count).map(|j| -self.half_width + j as f64 * self.step).collect()
    }

    pub fn im_points(&self) -> Vec<f64> {
        let count = (2.0 * self.im_half_width / self.im_step).round() as usize + 1;
        (0..count).map(|i| -self.im_half_width + i as f64 * self.im_step).collect()
    }
}

/// |ψ(x) − e^{i(ax − a²t)}| on one grid row v = const, by stepping the
/// factors e^{ix}, e^{−2ix/n} and e^{iax} along the row.
fn row_errors(w: &WaveCombo, hp: &Hp, b: &[Cx], us: &[f64], v: f64) -> Vec<f64> {
    let p = hp.p;
    let mut cc = hp.consts();
    let a = w.a_param;
    let zf = hp.z_freq(w.n_param);
    let h = if us.len() > 1 { us[1] - us[0] } else { 0.0 };
    let u0 = us[0];
    let mut ex = Cx::expi_at(hp, &hp.f(1.0), u0, v, &mut cc);
    let mut z = Cx::expi_at(hp, &zf, u0, v, &mut cc);
    let mut el = Cx::expi_at(hp, &hp.f(a), u0, v, &mut cc);
    let sx = Cx::expi_at(hp, &hp.f(1.0), h, 0.0, &mut cc);
    let sz = Cx::expi_at(hp, &zf, h, 0.0, &mut cc);
    let sl = Cx::expi_at(hp, &hp.f(a), h, 0.0, &mut cc);
    let a2t = hp.f(a).mul(&hp.f(a), p, RM).mul(&hp.f(w.time), p, RM).neg();
    let time_phase = Cx::expi(&a2t, p, &mut cc);
    let mut out = Vec::with_capacity(us.len());
    for j in 0..us.len() {
        if j > 0 {
            ex = ex.mul(&sx, p);
            z = z.mul(&sz, p);
            el = el.mul(&sl, p);
        }
        let psi = hp.horner(b, &z).mul(&ex, p);
        let limit = time_phase.mul(&el, p);
        out.push(psi.sub(&limit, p).abs_f64());
    }
    out
}

/// One row of the convergence table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub t: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub d_n: f64,
}

/// d_n(B) = max over the grid of |ψ_n(x,t) − e^{i(ax − a²t)}|·e^{−B|x|}.
/// Rows are ordered by n, then by B in the given order.
pub fn convergence_measure(ns: &[usize], a: f64, t: f64, bs: &[f64], grid: &XGrid) -> Result<Vec<ConvergenceRow>> {
    grid.check()?;
    if let Some(b) = bs.iter().find(|&&b| !(b > 0.0)) {
        return Err(Error::InvalidParameter(format!("weights B must be positive, got {b}")));
    }
    let us = grid.real_points();
    let vs = grid.im_points();
    let mut rows = Vec::with_capacity(ns.len() * bs.len());
    for &n in ns {
        let w = evolve(&build_fn_boundary(n, a)?, t);
        let hp = w.hp();
        let b = hp.amplitudes(&w, &mut hp.consts());
        let errs = par_map(vs.len(), |i| row_errors(&w, &hp, &b, &us, vs[i]));
        for &bw in bs {
            let mut d: f64 = 0.0;
            for (i, row) in errs.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    d = d.max(e * (-bw * us[j].hypot(vs[i])).exp());
                }
            }
            rows.push(ConvergenceRow { n, t, b: bw, d_n: d });
        }
    }
    Ok(rows)
}

/// B values scanned by default: 1, a and 2a.
pub fn default_weights(a: f64) -> Vec<f64> {
    vec![1.0, a, 2.0 * a]
}

/// Passes when d_n is strictly decreasing in n for every B, or identically zero.
pub fn convergence_report(rows: &[ConvergenceRow], a: f64) -> VerificationReport {
    let mut bs: Vec<f64> = rows.iter().map(|r| r.b).collect();
    bs.sort_by(f64::total_cmp);
    bs.dedup();
    let mut worst = f64::NEG_INFINITY;
    let mut all_zero = true;
    for &b in &bs {
        let ds: Vec<f64> = rows.iter().filter(|r| r.b == b).map(|r| r.d_n).collect();
        all_zero &= ds.iter().all(|&d| d == 0.0);
        for pair in ds.windows(2) {
            worst = worst.max(pair[1] - pair[0]);
        }
    }
    let pass = all_zero || worst < 0.0;
    VerificationReport::new("superoscillation_convergence")
        .param("a", a)
        .param("rows", rows.len())
        .param("all_zero", all_zero)
        .constant(rows.iter().map(|r| r.d_n).fold(0.0, f64::max))
        .violation(if worst == f64::NEG_INFINITY { 0.0 } else { worst })
        .pass(pass)
}

/// CSV with columns n, t, B, d_n.
pub fn rows_to_csv(rows: &[ConvergenceRow]) -> String {
    let mut s = String::from("n,t,B,d_n\n");
    for r in rows {
        s.push_str(&format!("{},{},{},{:e}\n", r.n, r.t, r.b, r.d_n));
    }
    s
}

/// ψ_n and the plane-wave limit on the real window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotData {
    pub x: Vec<f64>,
    pub re_psi: Vec<f64>,
    pub im_psi: Vec<f64>,
    pub re_limit: Vec<f64>,
    pub im_limit: Vec<f64>,
}

pub fn plot_data(w: &WaveCombo, half_width: f64, step: f64) -> Result<PlotData> {
    let grid = XGrid::real_only(half_width, step);
    grid.check()?;
    let x = grid.real_points();
    let hp = w.hp();
    let mut cc = hp.consts();
    let b = hp.amplitudes(w, &mut cc);
    let zf = hp.z_freq(w.n_param);
    let (a, t) = (w.a_param, w.time);
    let mut out = PlotData { x: x.clone(), re_psi: vec![], im_psi: vec![], re_limit: vec![], im_limit: vec![] };
    for &u in &x {
        let z = Cx::expi_at(&hp, &zf, u, 0.0, &mut cc);
        let ex = Cx::expi_at(&hp, &hp.f(1.0), u, 0.0, &mut cc);
        let psi = hp.horner(&b, &z).mul(&ex, hp.p);
        out.re_psi.push(to_f64(&psi.re));
        out.im_psi.push(to_f64(&psi.im));
        let phase = a * u - a * a * t;
        out.re_limit.push(phase.cos());
        out.im_limit.push(phase.sin());
    }
    Ok(out)
}

/// Σ_{i, m excluded} X^i/i!·|t|^m/m!, where (i, m) is kept when
/// i + 2m ≤ N and m ≤ M. Multiplied by Σ|A_k| = a^n this bounds the
/// operator-route error on |x| ≤ X.
fn truncation_tail(x_max: f64, t: f64, m_trunc: usize, n_taylor: usize) -> f64 {
    let i_top = n_taylor.max((4.0 * x_max) as usize) + 300;
    let m_top = n_taylor.max((4.0 * t.abs()) as usize) + m_trunc + 300;
    let lf = ln_factorials(i_top.max(m_top));
    let (lx, lt) = (x_max.ln(), t.abs().ln());
    let mut terms = Vec::new();
    for i in 0..=i_top {
        for m in 0..=m_top {
            if i + 2 * m <= n_taylor && m <= m_trunc {
                continue;
            }
            let li = if i == 0 { 0.0 } else { i as f64 * lx };
            let lm = if m == 0 { 0.0 } else { m as f64 * lt };
            terms.push(li - lf[i] + lm - lf[m]);
        }
    }
    log_sum_exp(terms).exp()
}

/// U truncated at ∂^{2M}: u_{2m} = (it)^m/m!, zero at odd orders.
pub fn evolution_operator(t: f64, m_trunc: usize) -> InfOrderOperator {
    let lf = ln_factorials(m_trunc);
    let mut coeffs = Vec::with_capacity(2 * m_trunc + 1);
    let mut scales = Vec::with_capacity(2 * m_trunc + 1);
    for l in 0..=2 * m_trunc {
        let m = l / 2;
        if l % 2 == 1 || (t == 0.0 && m > 0) {
            coeffs.push(SliceSeries::zero(1));
            scales.push(f64::NEG_INFINITY);
            continue;
        }
        // i^m·sign(t)^m
        let s = if t < 0.0 && m % 2 == 1 { -1.0 } else { 1.0 };
        let unit = match m % 4 {
            0 => CliffordNumber::complex(1, s, 0.0),
            1 => CliffordNumber::complex(1, 0.0, s),
            2 => CliffordNumber::complex(1, -s, 0.0),
            _ => CliffordNumber::complex(1, 0.0, -s),
        };
        coeffs.push(SliceSeries::constant(unit));
        scales.push(if m == 0 { 0.0 } else { m as f64 * t.abs().ln() - lf[m] });
    }
    InfOrderOperator::with_log_scales(coeffs, scales).expect("consistent lengths")
}

/// Degree-N Taylor polynomial of w at 0: c_j = Σ_k A_k (iω_k)^j/j!.
pub fn taylor_series(w: &WaveCombo, n_taylor: usize) -> SliceSeries {
    let hp = w.hp();
    let p = hp.p;
    let mut cc = hp.consts();
    let b = hp.amplitudes(w, &mut cc);
    let nf = hp.f(w.n_param as f64);
    // running (iω_k)^j/j! per term
    let mut pw: Vec<Cx> = b.clone();
    let iw: Vec<Cx> = (0..b.len())
        .map(|k| Cx { re: hp.f(0.0), im: hp.f(w.n_param as f64 - 2.0 * k as f64).div(&nf, p, RM) })
        .collect();
    let mut coeffs = Vec::with_capacity(n_taylor + 1);
    for j in 0..=n_taylor {
        if j > 0 {
            let jf = hp.f(j as f64);
            for (c, s) in pw.iter_mut().zip(&iw) {
                let next = c.mul(s, p);
                *c = Cx { re: next.re.div(&jf, p, RM), im: next.im.div(&jf, p, RM) };
            }
        }
        let mut sum = Cx { re: hp.f(0.0), im: hp.f(0.0) };
        for c in &pw {
            sum = sum.add(c, p);
        }
        coeffs.push(CliffordNumber::complex(1, to_f64(&sum.re), to_f64(&sum.im)));
    }
    SliceSeries::new(1, coeffs).expect("n = 1").with_truncated(true)
}

/// Result of [`evolve_via_operator`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorEvolution {
    pub series: SliceSeries,
    /// Bound on |ψ − series| on the window from the two truncations.
    pub truncation_bound: f64,
    /// Bound on f64 rounding when evaluating `series` on the window.
    pub rounding_bound: f64,
    pub window: f64,
}

/// Taylor-expands w to degree N, then applies U truncated at ∂^{2M}.
pub fn evolve_via_operator(w: &WaveCombo, t: f64, m_trunc: usize, n_taylor: usize) -> Result<OperatorEvolution> {
    let f = taylor_series(w, n_taylor);
    let series = evolution_operator(t, m_trunc).apply(&f)?;
    let x_max = config::SUPEROSC_WINDOW;
    let mass = w.a_param.max(1.0).powi(w.n_param as i32);
    let truncation_bound = mass * truncation_tail(x_max, t, m_trunc, n_taylor);
    let abs_sum: f64 = series.coeffs().iter().enumerate().map(|(j, c)| c.norm() * x_max.powi(j as i32)).sum();
    let rounding_bound = 4.0 * (series.degree() as f64 + 1.0) * f64::EPSILON * abs_sum;
    Ok(OperatorEvolution { series, truncation_bound, rounding_bound, window: x_max })
}

/// Smallest even N (with M = N/2) whose truncation bound on [−5, 5] is below `tol`.
pub fn choose_truncations(w: &WaveCombo, t: f64, tol: f64) -> (usize, usize) {
    let mass = w.a_param.max(1.0).powi(w.n_param as i32);
    let mut n_taylor = 2;
    while n_taylor < 1000 && mass * truncation_tail(config::SUPEROSC_WINDOW, t, n_taylor / 2, n_taylor) >= tol {
        n_taylor += 2;
    }
    (n_taylor / 2, n_taylor)
}

/// Max deviation of the operator route from the closed-form evolution on
/// the real window; passes within truncation plus rounding bounds.
pub fn operator_agreement(w: &WaveCombo, t: f64, m_trunc: usize, n_taylor: usize) -> Result<VerificationReport> {
    let ev = evolve_via_operator(w, t, m_trunc, n_taylor)?;
    let closed = evolve(w, t);
    let grid = XGrid::real_only(ev.window, config::SUPEROSC_STEP);
    let xs = grid.real_points();
    let hp = closed.hp();
    let b = hp.amplitudes(&closed, &mut hp.consts());
    let zf = hp.z_freq(closed.n_param);
    let mut cc = hp.consts();
    let mut worst: f64 = 0.0;
    for &x in &xs {
        let z = Cx::expi_at(&hp, &zf, x, 0.0, &mut cc);
        let ex = Cx::expi_at(&hp, &hp.f(1.0), x, 0.0, &mut cc);
        let psi = hp.horner(&b, &z).mul(&ex, hp.p);
        let got = ev.series.evaluate(&Paravector::real(1, x));
        let d = (got.get(0) - to_f64(&psi.re)).hypot(got.get(1) - to_f64(&psi.im));
        worst = worst.max(d);
    }
    let allowed = ev.truncation_bound + ev.rounding_bound;
    Ok(VerificationReport::new("operator_evolution_agreement")
        .param("n", w.n_param)
        .param("a", w.a_param)
        .param("t", t)
        .param("M", m_trunc)
        .param("N", n_taylor)
        .param("truncation_bound", num(ev.truncation_bound))
        .param("rounding_bound", num(ev.rounding_bound))
        .constant(allowed)
        .violation(worst)
        .pass(worst <= allowed)
        .grid("points", xs.len())
        .grid("step", config::SUPEROSC_STEP))
}
