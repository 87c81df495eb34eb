//! Named verification suites, shared by the CLI and the acceptance tests.
//!
//! Every suite is a pure function of its [`SuiteConfig`]; randomness comes
//! from ChaCha8 streams derived from the seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::cauchy::{cauchy_eval, cauchy_kernel, extract_all, kernel_derivative, ContourSpec};
use crate::clifford::{CliffordNumber, ImaginaryUnit, Paravector};
use crate::config::cert_grid;
use crate::error::{Error, Result};
use crate::growth::{
    coeff_type_estimate, growth_type_estimate, verify_derivative_norm_bound, verify_monomial_norm_bound,
    verify_star_norm_bound, NormGrid,
};
use crate::numeric::ln_factorials;
use crate::operators::{
    certificate_stability, certify_class_d, certify_class_d0, coefficients_from_operator, continuity_check,
    representation_identity_check, telescoping_check, AbstractOperator, InfOrderOperator, OperatorClass,
};
use crate::proximate::{verify_lemma_suite, LemmaGrid, ProximateOrder};
use crate::report::{num, SuiteReport, VerificationReport};
use crate::series::SliceSeries;
use crate::superosc::{
    build_fn, build_fn_boundary, convergence_measure, convergence_report, default_weights, evolution_operator,
    evolve, operator_agreement, XGrid,
};

pub const SUITES: [&str; 11] = [
    "clifford",
    "proximate-order",
    "monomial-norm",
    "derivative-norm",
    "star-norm",
    "type",
    "cauchy",
    "operators",
    "certificates",
    "superosc",
    "all",
];

/// Inputs common to all suites. `None` fields use the suite's own default.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub n: Option<usize>,
    pub trials: Option<usize>,
    pub seed: u64,
    /// Proximate order for the order-dependent suites; must be normalized.
    pub order: ProximateOrder,
    pub norm_grid: NormGrid,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            n: None,
            trials: None,
            seed: 0,
            order: ProximateOrder::constant(1.0).expect("rho = 1"),
            norm_grid: NormGrid::default(),
        }
    }
}

impl SuiteConfig {
    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

/// Runs one named suite.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let reports = match name {
        "clifford" => clifford_suite(cfg)?,
        "proximate-order" => verify_lemma_suite(&cfg.order, &LemmaGrid::default())?,
        "monomial-norm" => monomial_suite(cfg)?,
        "derivative-norm" => derivative_suite(cfg)?,
        "star-norm" => star_suite(cfg)?,
        "type" => type_suite(cfg)?,
        "cauchy" => cauchy_suite(cfg)?,
        "operators" => operator_suite(cfg)?,
        "certificates" => certificate_suite(cfg)?,
        "superosc" => superosc_suite()?,
        "all" => {
            let mut all = Vec::new();
            for s in SUITES.iter().filter(|&&s| s != "all") {
                all.extend(run_suite(s, cfg)?.reports);
            }
            all
        }
        other => return Err(Error::InvalidParameter(format!("unknown suite '{other}' (expected one of {})", SUITES.join(", ")))),
    };
    Ok(SuiteReport::new(name, reports))
}

fn random_clifford(rng: &mut ChaCha8Rng, n: usize) -> CliffordNumber {
    CliffordNumber::from_coeffs(n, (0..1 << n).map(|_| rng.gen_range(-1.0..1.0)).collect()).expect("valid n")
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, deg: usize) -> SliceSeries {
    SliceSeries::new(n, (0..=deg).map(|_| random_clifford(rng, n)).collect()).expect("valid n")
}

fn random_point(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> Paravector {
    Paravector::new(rng.gen_range(-scale..scale), (0..n).map(|_| rng.gen_range(-scale..scale)).collect())
        .expect("valid n")
}

/// Associativity, anticommutation, squares of units and the norm bound
/// |ab| ≤ 2^{n/2}|a||b| on random elements.
pub fn clifford_suite(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let trials = cfg.trials.unwrap_or(10_000);
    let dims: Vec<usize> = cfg.n.map(|n| vec![n]).unwrap_or_else(|| vec![1, 2, 3, 4]);
    let mut out = Vec::new();
    for n in dims {
        let mut rng = cfg.rng(n as u64);
        let (mut assoc, mut anti, mut square, mut ratio) = (0f64, 0f64, 0f64, 0f64);
        for _ in 0..trials {
            let (a, b, c) = (random_clifford(&mut rng, n), random_clifford(&mut rng, n), random_clifford(&mut rng, n));
            let left = &(&a * &b) * &c;
            let right = &a * &(&b * &c);
            assoc = assoc.max(left.max_abs_diff(&right) / (a.norm() * b.norm() * c.norm()).max(1e-300));
            // uv + vu = −2⟨u, v⟩ for 1-vectors
            let (u, v) = (random_vector(&mut rng, n), random_vector(&mut rng, n));
            let (pu, pv) = (Paravector::new(0.0, u.clone())?.to_clifford(), Paravector::new(0.0, v.clone())?.to_clifford());
            let dot: f64 = u.iter().zip(&v).map(|(x, y)| x * y).sum();
            let sym = &(&pu * &pv) + &(&pv * &pu);
            anti = anti.max(sym.max_abs_diff(&CliffordNumber::scalar(n, -2.0 * dot)) / (pu.norm() * pv.norm()).max(1e-300));
            let j = ImaginaryUnit::new(u)?.to_clifford();
            square = square.max((&j * &j).max_abs_diff(&CliffordNumber::scalar(n, -1.0)));
            ratio = ratio.max((&a * &b).norm() / (a.norm() * b.norm()));
        }
        // exact checks on the basis itself
        let mut basis_exact = true;
        for i in 1..=n {
            let ei = CliffordNumber::unit(n, i);
            basis_exact &= &ei * &ei == CliffordNumber::scalar(n, -1.0);
            for k in (i + 1)..=n {
                let ek = CliffordNumber::unit(n, k);
                basis_exact &= &ei * &ek == -&(&ek * &ei);
            }
        }
        let bound = 2f64.powf(n as f64 / 2.0);
        let tol = 1e-12;
        out.push(
            VerificationReport::new("clifford_associativity")
                .param("n", n)
                .constant(assoc)
                .violation(assoc - tol)
                .pass(assoc <= tol)
                .grid("trials", trials),
        );
        out.push(
            VerificationReport::new("clifford_anticommutation")
                .param("n", n)
                .param("basis_exact", basis_exact)
                .constant(anti)
                .violation(anti - tol)
                .pass(anti <= tol && basis_exact)
                .grid("trials", trials),
        );
        out.push(
            VerificationReport::new("clifford_unit_square")
                .param("n", n)
                .constant(square)
                .violation(square - tol)
                .pass(square <= tol)
                .grid("trials", trials),
        );
        out.push(
            VerificationReport::new("clifford_norm_bound")
                .param("n", n)
                .param("bound", bound)
                .constant(ratio)
                .violation(ratio - bound)
                .pass(ratio <= bound * (1.0 + 1e-12))
                .grid("trials", trials),
        );
    }
    Ok(out)
}

/// The monomial bound for several (σ, σ') pairs, and for ϱ = 1 the exact
/// ratio (σ'/σ)^ℓ.
pub fn monomial_suite(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let l_max = 50;
    let pairs = [(1.0, 0.5), (2.0, 1.0), (1.0, 0.1), (0.5, 0.4), (4.0, 3.0)];
    let mut out = Vec::new();
    for (sigma, sp) in pairs {
        out.push(verify_monomial_norm_bound(&cfg.order, sigma, sp, l_max)?.report);
    }
    let rho1 = ProximateOrder::constant(1.0)?;
    let mb = verify_monomial_norm_bound(&rho1, 1.0, 0.5, l_max)?;
    let worst = mb
        .log_ratios
        .iter()
        .enumerate()
        .map(|(l, lr)| ((lr - l as f64 * 0.5f64.ln()).exp() - 1.0).abs())
        .fold(0.0, f64::max);
    out.push(
        VerificationReport::new("monomial_exact_ratio")
            .param("sigma", 1.0)
            .param("sigma_prime", 0.5)
            .constant(mb.constant)
            .violation(worst)
            .pass(worst <= 0.01)
            .grid("l_max", l_max),
    );
    Ok(out)
}

pub fn derivative_suite(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let n = cfg.n.unwrap_or(2);
    let mut rng = cfg.rng(11);
    let trials = cfg.trials.unwrap_or(4);
    let mut fs = vec![SliceSeries::exp_truncated(n, 0.5, 30).with_truncated(false)];
    for _ in 0..trials {
        let deg = rng.gen_range(1..=8);
        fs.push(random_poly(&mut rng, n, deg));
    }
    fs.iter().map(|f| verify_derivative_norm_bound(f, &cfg.order, 1.0, 10, &cfg.norm_grid)).collect()
}

/// Random pairs of Clifford polynomials with random σ, τ.
pub fn star_suite(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let n = cfg.n.unwrap_or(3);
    let trials = cfg.trials.unwrap_or(50);
    let mut rng = cfg.rng(12);
    let grid = NormGrid { radii: 120, angles: 24, ..cfg.norm_grid.clone() };
    let mut worst = f64::NEG_INFINITY;
    let mut failures = 0usize;
    for _ in 0..trials {
        let (df, dg) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
        let f = random_poly(&mut rng, n, df);
        let g = random_poly(&mut rng, n, dg);
        let (sigma, tau) = (rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0));
        let r = verify_star_norm_bound(&f, &g, &cfg.order, sigma, tau, &grid)?;
        worst = worst.max(r.max_violation);
        failures += usize::from(!r.pass);
    }
    Ok(vec![VerificationReport::new("star_norm_bound")
        .param("n", n)
        .param("failures", failures)
        .constant(2f64.powf((n as f64 + 4.0) / 2.0))
        .violation(worst)
        .pass(failures == 0)
        .grid("trials", trials)
        .grid("radii", grid.radii)
        .grid("angles", grid.angles)])
}

/// Coefficient and growth routes to the type of truncated e^{σ₀x}.
pub fn type_suite(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let n = cfg.n.unwrap_or(1);
    let po = ProximateOrder::constant(1.0)?;
    let mut out = Vec::new();
    for sigma0 in [0.5, 1.0, 2.0] {
        let f = SliceSeries::exp_truncated(n, sigma0, 200);
        let c = coeff_type_estimate(&f, &po)?;
        let g = growth_type_estimate(&f, &po, 400)?;
        let rel_c = (c.implied_type / sigma0 - 1.0).abs();
        let rel_g = (g.value / sigma0 - 1.0).abs();
        let agree = (c.implied_type / g.value - 1.0).abs();
        let worst = rel_c.max(rel_g).max(agree);
        out.push(
            VerificationReport::new("type_consistency")
                .param("sigma0", sigma0)
                .param("implied_type", c.implied_type)
                .param("alternative_type", c.alternative_type)
                .param("growth_type", g.value)
                .param("validity_radius", num(g.validity_radius))
                .constant(c.implied_type)
                .violation(worst)
                .pass(worst <= 0.10)
                .grid("N", 200)
                .grid("radii", 400),
        );
    }
    let poly = SliceSeries::from_real(n, &[1.0, 2.0, -3.0])?;
    let zero = coeff_type_estimate(&poly, &po)?.implied_type;
    out.push(
        VerificationReport::new("type_of_polynomial")
            .constant(zero)
            .violation(zero)
            .pass(zero == 0.0),
    );
    Ok(out)
}

/// Coefficient extraction, Cauchy evaluation and the kernel derivative.
pub fn cauchy_suite(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let n = cfg.n.unwrap_or(3);
    let trials = cfg.trials.unwrap_or(100);
    let mut rng = cfg.rng(13);
    let contour = ContourSpec::with_radius(n, 1.0)?;
    let mut extract_err: f64 = 0.0;
    for _ in 0..10 {
        let f = random_poly(&mut rng, n, 20);
        for (a, b) in extract_all(&f, &contour).iter().zip(f.coeffs()) {
            extract_err = extract_err.max(a.max_abs_diff(b));
        }
    }
    let big = ContourSpec::with_radius(n, 2.0)?;
    let mut eval_err: f64 = 0.0;
    for _ in 0..10 {
        let f = random_poly(&mut rng, n, 10);
        let x = random_point(&mut rng, n, 0.7);
        let direct = f.evaluate(&x);
        eval_err = eval_err.max(cauchy_eval(&f, &x, &big)?.max_abs_diff(&direct) / direct.norm().max(1.0));
    }
    let h = 1e-5;
    let mut deriv_err: f64 = 0.0;
    let mut checked = 0usize;
    while checked < trials {
        let s = random_point(&mut rng, n, 2.0);
        let x = random_point(&mut rng, n, 1.0);
        if s.sub(&x).norm() < 0.2 || cauchy_kernel(&s, &x).is_err() {
            continue;
        }
        let mut ok = true;
        for i in 0..=n {
            let bump = |t: f64| {
                let mut y = x.clone();
                if i == 0 {
                    y.x0 += t;
                } else {
                    y.vec[i - 1] += t;
                }
                y
            };
            let (Ok(kp), Ok(km)) = (cauchy_kernel(&s, &bump(h)), cauchy_kernel(&s, &bump(-h))) else {
                ok = false;
                break;
            };
            let fd = (&kp - &km).scale(0.5 / h);
            let exact = kernel_derivative(&s, &x, i)?;
            deriv_err = deriv_err.max(fd.max_abs_diff(&exact) / exact.norm().max(1.0));
        }
        checked += usize::from(ok);
    }
    Ok(vec![
        VerificationReport::new("cauchy_coefficient_extraction")
            .param("n", n)
            .param("degree", 20)
            .constant(extract_err)
            .violation(extract_err - 1e-10)
            .pass(extract_err < 1e-10)
            .grid("nodes", contour.nodes()),
        VerificationReport::new("cauchy_eval")
            .param("n", n)
            .constant(eval_err)
            .violation(eval_err - 1e-9)
            .pass(eval_err < 1e-9)
            .grid("nodes", big.nodes()),
        VerificationReport::new("kernel_derivative")
            .param("n", n)
            .param("fd_step", h)
            .constant(deriv_err)
            .violation(deriv_err - 1e-6)
            .pass(deriv_err < 1e-6)
            .grid("configurations", checked),
    ])
}

/// Reconstruction closed forms, the representation identity, the round
/// trip, linearity and the telescoping identity.
pub fn operator_suite(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let n = cfg.n.unwrap_or(2);
    let trials = cfg.trials.unwrap_or(10);
    let mut rng = cfg.rng(14);
    let mut out = Vec::new();

    let id = coefficients_from_operator(&AbstractOperator::identity(n, 20), 20)?;
    let tr = coefficients_from_operator(&AbstractOperator::translation(n, 0.7, 20), 20)?;
    let d = coefficients_from_operator(&AbstractOperator::derivative(n, 20), 20)?;
    let d_want = InfOrderOperator::new(
        (0..=20)
            .map(|l| if l == 1 { SliceSeries::constant(CliffordNumber::one(n)) } else { SliceSeries::zero(n) })
            .collect(),
    )?;
    let closed = id
        .max_coeff_diff(&InfOrderOperator::identity(n))
        .max(tr.max_coeff_diff(&InfOrderOperator::translation(n, 0.7, 20)))
        .max(d.max_coeff_diff(&d_want));
    out.push(
        VerificationReport::new("reconstruction_closed_forms")
            .param("n", n)
            .param("L", 20)
            .constant(closed)
            .violation(closed - 1e-11)
            .pass(closed < 1e-11),
    );

    let seed = cfg.seed;
    out.push(representation_identity_check(&AbstractOperator::identity(n, 12), 12, 12, trials, seed)?);
    out.push(representation_identity_check(&AbstractOperator::translation(n, 0.7, 12), 12, 12, trials, seed)?);
    let comp = AbstractOperator::compose(AbstractOperator::derivative(n, 12), AbstractOperator::translation(n, 0.7, 12))?;
    out.push(representation_identity_check(&comp, 12, 12, trials, seed)?.param("operator", "derivative_then_translation"));

    // P → apply → reconstruct → P
    let mut round = 0f64;
    for _ in 0..trials {
        let l = rng.gen_range(1..=6);
        let coeffs = (0..=l)
            .map(|_| {
                let deg = rng.gen_range(0..=3);
                random_poly(&mut rng, n, deg)
            })
            .collect();
        let p = InfOrderOperator::new(coeffs)?;
        let back = coefficients_from_operator(&AbstractOperator::from_operator(p.clone(), l), l)?;
        round = round.max(back.max_coeff_diff(&p));
    }
    out.push(
        VerificationReport::new("reconstruction_round_trip")
            .param("n", n)
            .constant(round)
            .violation(round - 1e-11)
            .pass(round < 1e-11)
            .grid("trials", trials),
    );

    // apply(P, f + g·c) = apply(P, f) + apply(P, g)·c
    let mut lin = 0f64;
    for _ in 0..trials {
        let p = InfOrderOperator::new((0..=4).map(|_| random_poly(&mut rng, n, 2)).collect())?;
        let f = random_poly(&mut rng, n, 6);
        let g = random_poly(&mut rng, n, 6);
        let c = random_clifford(&mut rng, n);
        let lhs = p.apply(&f.add(&g.mul_right(&c))?)?;
        let rhs = p.apply(&f)?.add(&p.apply(&g)?.mul_right(&c))?;
        lin = lin.max(lhs.max_coeff_diff(&rhs));
    }
    out.push(
        VerificationReport::new("operator_linearity")
            .param("n", n)
            .constant(lin)
            .violation(lin - 1e-12)
            .pass(lin <= 1e-12)
            .grid("trials", trials),
    );
    out.push(telescoping_check(30));
    Ok(out)
}

fn summarize(name: &str, certs: &[crate::operators::BoundCertificate], expect_all: bool) -> VerificationReport {
    let passing = certs.iter().filter(|c| c.pass).count();
    let worst_log_c = certs.iter().filter(|c| c.pass).map(|c| c.log_c).fold(f64::NEG_INFINITY, f64::max);
    let ok = if expect_all { passing == certs.len() } else { passing < certs.len() };
    VerificationReport::new(name)
        .param("passing", passing)
        .param("max_log_c", num(worst_log_c))
        .param("certificates", serde_json::to_value(certs).unwrap_or_default())
        .constant(worst_log_c.exp())
        .violation((certs.len() - passing) as f64)
        .pass(ok)
        .grid("points", certs.len())
}

/// Class certificates on the default grids: translation passes, the ℓ!
/// family fails for small λ, both are stable under refinement.
pub fn certificate_suite(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let n = cfg.n.unwrap_or(1);
    let grid = &cfg.norm_grid;
    let g = cert_grid(false);
    let tr = InfOrderOperator::translation(n, 1.0, 4096);
    let d = certify_class_d(&tr, &g, &g, grid)?;
    let d0 = certify_class_d0(&tr, &g, &g, grid)?;
    let id = InfOrderOperator::identity(n);
    let mut out = vec![
        summarize("translation_class_d", &d, true),
        summarize("translation_class_d0", &d0, true),
        summarize("identity_class_d", &certify_class_d(&id, &g, &g, grid)?, true),
    ];
    let fact = InfOrderOperator::scalar_log_family(n, &ln_factorials(60))?;
    let fd = certify_class_d(&fact, &g, &g, grid)?;
    out.push(
        VerificationReport::new("factorial_family_rejected")
            .param("smallest_lambda", g[0])
            .param("certificates", serde_json::to_value(&fd).unwrap_or_default())
            .constant(fd[0].c)
            .violation(if fd[0].pass { 1.0 } else { 0.0 })
            .pass(!fd[0].pass),
    );
    let e = InfOrderOperator::new(vec![SliceSeries::exp_truncated(n, 1.0, 60)])?;
    let ed0 = certify_class_d0(&e, &g, &g, grid)?;
    out.push(
        VerificationReport::new("positive_type_rejected_by_d0")
            .param("smallest_sigma", g[0])
            .param("passing", ed0.iter().filter(|c| c.pass).count())
            .violation(if ed0[0].pass { 1.0 } else { 0.0 })
            .pass(!ed0[0].pass),
    );
    out.push(certificate_stability(&tr, OperatorClass::D, grid)?.param("operator", "translation"));
    out.push(certificate_stability(&tr, OperatorClass::D0, grid)?.param("operator", "translation"));
    out.push(certificate_stability(&fact, OperatorClass::D, grid)?.param("operator", "factorial"));
    let small = InfOrderOperator::translation(n, 0.5, 60);
    let cert = certify_class_d(&small, &[0.05], &g, grid)?.remove(0);
    let f = SliceSeries::exp_truncated(n, 0.5, 30).with_truncated(false);
    out.push(continuity_check(&small, &cert, &f, 0.5, grid)?);
    Ok(out)
}

pub fn superosc_suite() -> Result<Vec<VerificationReport>> {
    let mut out = vec![operator_agreement(&build_fn(2, 2.0)?, 0.1, 40, 80)?];
    let rows = convergence_measure(&[5, 10, 20, 40, 80], 2.0, 0.3, &default_weights(2.0), &XGrid::default())?;
    out.push(convergence_report(&rows, 2.0).param("table", serde_json::to_value(&rows).unwrap_or_default()));
    let edge = convergence_measure(&[5, 10, 20, 40, 80], 1.0, 0.3, &[1.0], &XGrid::default())?;
    let edge_max = edge.iter().map(|r| r.d_n).fold(0.0, f64::max);
    out.push(
        VerificationReport::new("superoscillation_boundary")
            .param("a", 1.0)
            .constant(edge_max)
            .violation(edge_max)
            .pass(edge_max == 0.0),
    );
    // Σ amplitudes after evolution equals ψ(0, t) summed directly
    let w = evolve(&build_fn_boundary(12, 3.0)?, 0.4);
    let summed = w.terms().iter().fold(CliffordNumber::zero(1), |acc, t| &acc + &t.amplitude);
    let (re, im) = w.eval_f64(0.0);
    let mass = (summed.get(0) - re).abs().max((summed.get(1) - im).abs());
    out.push(
        VerificationReport::new("mass_conservation")
            .constant(mass)
            .violation(mass)
            .pass(mass == 0.0),
    );
    let g = cert_grid(false);
    let certs = certify_class_d0(&evolution_operator(0.1, 40), &g, &g, &NormGrid::default())?;
    out.push(summarize("evolution_operator_class_d0", &certs, true));
    Ok(out)
}
