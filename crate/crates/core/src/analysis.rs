//! Theorem-verification functionals: Parseval and Plancherel residuals, the
//! Heisenberg uncertainty ratio, the Dunkl operator with its eigen-check,
//! and the Young inequality audit, all reporting into serializable cases.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QpdtError, Result};
use crate::kernels::QpdtParams;
use crate::ops::{convolve, lp_norm};
use crate::quadrature::{
    gauss_legendre_composite, integrate_weighted, IntegrationConfig, QuadratureRule,
};
use crate::signal::{CubicSpline, Evaluate};
use crate::transform::forward;

/// One verified statement: what was measured, what it was held against, and
/// whether it passed at the stated tolerance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaseReport {
    pub name: String,
    pub inputs: String,
    pub measured: f64,
    pub bound: f64,
    pub tol: f64,
    pub pass: bool,
}

/// A suite's worth of cases plus the aggregate verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub cases: Vec<CaseReport>,
    pub aggregate: String,
    pub runtime_seconds: f64,
}

impl VerificationReport {
    pub fn new(suite: &str, seed: u64, cases: Vec<CaseReport>, runtime_seconds: f64) -> Self {
        let aggregate = if cases.iter().all(|c| c.pass) {
            "pass".to_string()
        } else {
            "fail".to_string()
        };
        VerificationReport {
            suite: suite.to_string(),
            seed,
            cases,
            aggregate,
            runtime_seconds,
        }
    }

    pub fn passed(&self) -> bool {
        self.aggregate == "pass"
    }
}

/// Heisenberg-type uncertainty data: the moment product, the theorem's lower
/// bound, and their ratio (the theorem asserts ratio >= 1).
#[derive(Debug, Clone, Copy)]
pub struct HeisenbergRatio {
    pub lhs: f64,
    pub bound: f64,
    pub ratio: f64,
}

const TAIL_START: f64 = 16.0;
const TAIL_MAX: f64 = 64.0;

/// w-side rule for integrals of transform products. The output chirp is
/// removed from the tabulated values before these integrals (see
/// `dechirped_transform`), so the surviving oscillation is the Dunkl part's,
/// bounded by the signal window over |b|.
fn transform_side_rule(
    params: &QpdtParams,
    cfg: &IntegrationConfig,
    l_w: f64,
) -> Result<QuadratureRule> {
    let rate = cfg.half_width / params.b.abs() + 1.0;
    let needed = (l_w * rate / std::f64::consts::PI).ceil() as usize;
    let panels = {
        let n = cfg.panels.max(needed);
        n + (n & 1)
    };
    let cfg2 = IntegrationConfig { panels, ..*cfg };
    gauss_legendre_composite(&cfg2, -l_w, l_w)
}

/// Forward transform tabulated on `nodes`, multiplied by the unimodular
/// output chirp e^{i(c w^2 + e w)}. Moduli and products with a conjugated
/// partner are unchanged exactly, while the tabulated profile loses its
/// fastest oscillation, which keeps the w-side quadrature honest.
fn dechirped_transform<S: Evaluate + ?Sized>(
    params: &QpdtParams,
    f: &S,
    nodes: &[f64],
    cfg: &IntegrationConfig,
) -> Result<Vec<Complex64>> {
    let raw = forward(params, f, nodes, cfg)?;
    Ok(nodes
        .iter()
        .zip(raw.values)
        .map(|(&w, z)| z * Complex64::from_polar(1.0, params.c * w * w + params.e * w))
        .collect())
}

/// Largest integrand modulus over the outermost panel on each side: the
/// decay certificate for truncating the w-integral.
fn tail_metric(rule: &QuadratureRule, order: usize, integrand: impl Fn(usize) -> f64) -> f64 {
    let n = rule.nodes.len();
    let span = order.min(n);
    let mut worst: f64 = 0.0;
    for i in 0..span {
        worst = worst.max(integrand(i).abs());
        worst = worst.max(integrand(n - 1 - i).abs());
    }
    worst
}

/// Signal-side weighted inner product <f, g> over [-half_width, half_width].
fn signal_inner<S: Evaluate + ?Sized, T: Evaluate + ?Sized>(
    f: &S,
    g: &T,
    mu: f64,
    cfg: &IntegrationConfig,
) -> Result<Complex64> {
    let l = cfg.half_width;
    let rule = gauss_legendre_composite(cfg, -l, l)?;
    integrate_weighted(|v| f.eval(v) * g.eval(v).conj(), mu, &rule)
}

/// Transform-side inner product <Ff, Fg>, with the window widened (16, 32,
/// 64) until the integrand has decayed below `threshold` at the edges.
fn transform_inner<S: Evaluate + ?Sized, T: Evaluate + ?Sized>(
    params: &QpdtParams,
    f: &S,
    g: &T,
    cfg: &IntegrationConfig,
    threshold: f64,
) -> Result<Complex64> {
    let mu = params.mu;
    let mut l_w = TAIL_START;
    loop {
        let rule = transform_side_rule(params, cfg, l_w)?;
        let ff = dechirped_transform(params, f, &rule.nodes, cfg)?;
        let gg = dechirped_transform(params, g, &rule.nodes, cfg)?;
        let weight = |i: usize| rule.nodes[i].abs().powf(2.0 * mu + 1.0);
        let tail = tail_metric(&rule, cfg.order, |i| {
            (ff[i] * gg[i].conj()).norm() * weight(i)
        });
        if tail <= threshold {
            let mut re = crate::quadrature::Kahan::default();
            let mut im = crate::quadrature::Kahan::default();
            for i in 0..rule.nodes.len() {
                let z = ff[i] * gg[i].conj() * (rule.weights[i] * weight(i));
                re.add(z.re);
                im.add(z.im);
            }
            return Ok(Complex64::new(re.value(), im.value()));
        }
        if l_w >= TAIL_MAX {
            return Err(QpdtError::TailBound(format!(
                "transform-side integrand still at {tail:.3e} (> {threshold:.3e}) at the \
                 edges of [-{l_w}, {l_w}]"
            )));
        }
        l_w *= 2.0;
    }
}

/// Absolute Parseval residual |<f, g> - <Ff, Fg>|.
pub fn parseval_residual<S: Evaluate + ?Sized, T: Evaluate + ?Sized>(
    params: &QpdtParams,
    f: &S,
    g: &T,
    cfg: &IntegrationConfig,
) -> Result<f64> {
    params.validate()?;
    cfg.validate()?;
    let signal = signal_inner(f, g, params.mu, cfg)?;
    let transformed = transform_inner(params, f, g, cfg, cfg.tol * 1e-2)?;
    Ok((signal - transformed).norm())
}

/// Relative Plancherel residual | ||Ff||^2 - ||f||^2 | / ||f||^2; zero for
/// the zero signal by convention.
pub fn plancherel_residual<S: Evaluate + ?Sized>(
    params: &QpdtParams,
    f: &S,
    cfg: &IntegrationConfig,
) -> Result<f64> {
    params.validate()?;
    cfg.validate()?;
    let signal = signal_inner(f, f, params.mu, cfg)?.re;
    if signal == 0.0 {
        return Ok(0.0);
    }
    let transformed = transform_inner(params, f, f, cfg, cfg.tol * 1e-2)?.re;
    Ok((transformed - signal).abs() / signal)
}

/// Moment product against the uncertainty bound |b|^2 (mu + 1/2)^2 ||f||^4.
///
/// The w-side second moment starts on [-16, 16] and doubles (to at most 64)
/// until the integrand's edge values drop below 1e-10 of the collected mass.
pub fn heisenberg_ratio<S: Evaluate + ?Sized>(
    params: &QpdtParams,
    f: &S,
    cfg: &IntegrationConfig,
) -> Result<HeisenbergRatio> {
    params.validate()?;
    cfg.validate()?;
    let mu = params.mu;
    let l = cfg.half_width;
    let rule_v = gauss_legendre_composite(cfg, -l, l)?;
    let mass = integrate_weighted(|v| Complex64::new(f.eval(v).norm_sqr(), 0.0), mu, &rule_v)?.re;
    if mass <= 0.0 {
        return Err(QpdtError::Domain(
            "the uncertainty ratio needs a signal with positive mass".into(),
        ));
    }
    let mom_v =
        integrate_weighted(|v| Complex64::new(v * v * f.eval(v).norm_sqr(), 0.0), mu, &rule_v)?.re;

    let mut l_w = TAIL_START;
    let mom_w = loop {
        let rule = transform_side_rule(params, cfg, l_w)?;
        let ff = dechirped_transform(params, f, &rule.nodes, cfg)?;
        let integrand = |i: usize| {
            let w: f64 = rule.nodes[i];
            w * w * ff[i].norm_sqr() * w.abs().powf(2.0 * mu + 1.0)
        };
        let mut acc = crate::quadrature::Kahan::default();
        for i in 0..rule.nodes.len() {
            acc.add(rule.weights[i] * integrand(i));
        }
        let collected = acc.value();
        let tail = tail_metric(&rule, cfg.order, integrand);
        if tail <= 1e-10 * collected.max(f64::MIN_POSITIVE) {
            break collected;
        }
        if l_w >= TAIL_MAX {
            return Err(QpdtError::TailBound(format!(
                "w-side second moment tail still at {tail:.3e} at the edges of [-{l_w}, {l_w}]"
            )));
        }
        l_w *= 2.0;
    };

    let lhs = mom_v * mom_w;
    let bound = params.b * params.b * (mu + 0.5) * (mu + 0.5) * mass * mass;
    Ok(HeisenbergRatio {
        lhs,
        bound,
        ratio: lhs / bound,
    })
}

/// Dunkl operator by central difference:
/// f'(v) + (2mu+1)/(2v) (f(v) - f(-v)).
pub fn dunkl_operator_apply<S: Evaluate + ?Sized>(
    mu: f64,
    f: &S,
    v: f64,
    h: f64,
) -> Result<Complex64> {
    if !(mu >= -0.5) || !mu.is_finite() {
        return Err(QpdtError::Domain(format!(
            "order mu must satisfy mu >= -1/2, got {mu}"
        )));
    }
    if v == 0.0 || !v.is_finite() {
        return Err(QpdtError::Domain(format!(
            "the Dunkl operator's reflection term is undefined at v = {v}"
        )));
    }
    if !(h > 1e-6 && h < 1e-2) {
        return Err(QpdtError::Domain(format!(
            "step size must lie in (1e-6, 1e-2), got {h}"
        )));
    }
    let derivative = (f.eval(v + h) - f.eval(v - h)) / (2.0 * h);
    let reflection = (f.eval(v) - f.eval(-v)) * ((2.0 * mu + 1.0) / (2.0 * v));
    Ok(derivative + reflection)
}

/// Young's inequality audit at exponents (p, q) with 1/r = 1/p + 1/q - 1:
/// measures ||f * g||_r against 4 ||f||_p ||g||_q and records the outcome.
pub fn young_check<S: Evaluate + ?Sized, T: Evaluate + ?Sized>(
    params: &QpdtParams,
    f: &S,
    g: &T,
    p: f64,
    q: f64,
    cfg: &IntegrationConfig,
) -> Result<CaseReport> {
    params.validate()?;
    cfg.validate()?;
    if !(p >= 1.0) || !(q >= 1.0) {
        return Err(QpdtError::Domain(format!(
            "Young exponents must satisfy p, q >= 1, got ({p}, {q})"
        )));
    }
    let inv_r = 1.0 / p + 1.0 / q - 1.0;
    if inv_r < -1e-12 {
        return Err(QpdtError::Domain(format!(
            "Young exponents need 1/p + 1/q >= 1, got ({p}, {q})"
        )));
    }
    let r = if inv_r <= 1e-12 { f64::INFINITY } else { 1.0 / inv_r };
    let mu = params.mu;
    let norm_f = lp_norm(f, p, mu, cfg)?;
    let norm_g = lp_norm(g, q, mu, cfg)?;
    let bound = 4.0 * norm_f * norm_g;

    // tabulate the convolution on the same nodes the norm rule uses, so the
    // spline is only ever read at its knots
    let l = cfg.half_width;
    let rule = gauss_legendre_composite(cfg, -l, l)?;
    let conv = convolve(params, f, g, &rule.nodes, cfg)?;
    let spline = CubicSpline::new(&conv)?;
    let lhs = lp_norm(&spline, r, mu, cfg)?;

    let tol = 1e-6;
    Ok(CaseReport {
        name: format!("young p={p} q={q}"),
        inputs: format!(
            "a={} b={} d={} mu={} r={r}",
            params.a, params.b, params.d, params.mu
        ),
        measured: lhs,
        bound,
        tol,
        pass: lhs <= bound + tol,
    })
}
