//! Deterministic quadrature against the weighted measure |v|^{2mu+1} dv.
//!
//! Two rule families cover everything downstream: composite Gauss-Legendre
//! on truncated intervals (transforms, norms, convolutions) and Gauss-Jacobi
//! on (-1,1) for the endpoint-singular translation kernel. The weight
//! |v|^{2mu+1} is folded into the integrand at evaluation time so one rule
//! serves every multiplicity index.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{QpdtError, Result};
use crate::specfun::gamma;

/// Hard ceiling on `panels * order` for composite rules.
pub const NODE_BUDGET: usize = 1_000_000;

/// Nodes and positive weights on a fixed interval, stored in ascending
/// node order. Summation anywhere in the crate walks this order, which is
/// what makes results independent of thread count.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub domain: (f64, f64),
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Truncation and resolution settings for the integral transforms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationConfig {
    /// Truncation half-width L: integrals over the line run over [-L, L].
    pub half_width: f64,
    /// Number of equal panels the interval is split into.
    pub panels: usize,
    /// Gauss-Legendre points per panel.
    pub order: usize,
    /// Accuracy target used by tail estimates.
    pub tol: f64,
}

impl Default for IntegrationConfig {
    fn default() -> Self {
        // L = 12 keeps the tail mass of Gaussian-envelope signals below
        // 1e-25; 64 panels of order 10 resolve them to near machine
        // precision while staying cheap enough to rebuild per call.
        IntegrationConfig {
            half_width: 12.0,
            panels: 64,
            order: 10,
            tol: 1e-8,
        }
    }
}

impl IntegrationConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.half_width > 0.0) || !self.half_width.is_finite() {
            return Err(QpdtError::Domain(format!(
                "truncation half-width must be positive and finite, got {}",
                self.half_width
            )));
        }
        if self.panels == 0 || self.order == 0 {
            return Err(QpdtError::Domain(
                "panels and order must be positive".into(),
            ));
        }
        if !(self.tol > 0.0) {
            return Err(QpdtError::Domain(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        if self.panels.saturating_mul(self.order) > NODE_BUDGET {
            return Err(QpdtError::Resource(format!(
                "{} panels x {} points exceeds the node budget of {NODE_BUDGET}",
                self.panels, self.order
            )));
        }
        Ok(())
    }
}

/// Composite Gauss-Legendre rule: `cfg.panels` equal subintervals of
/// `[lo, hi]`, `cfg.order` points each. Exact for polynomials of degree
/// <= 2*order - 1 on every panel.
pub fn gauss_legendre_composite(
    cfg: &IntegrationConfig,
    lo: f64,
    hi: f64,
) -> Result<QuadratureRule> {
    cfg.validate()?;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(QpdtError::Domain(format!(
            "invalid interval [{lo}, {hi}]"
        )));
    }
    let base = cached_legendre(cfg.order)?;
    let n = cfg.panels * cfg.order;
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let h = (hi - lo) / cfg.panels as f64;
    for p in 0..cfg.panels {
        let a = lo + h * p as f64;
        let mid = a + 0.5 * h;
        for (x, w) in base.nodes.iter().zip(&base.weights) {
            nodes.push(mid + 0.5 * h * x);
            weights.push(0.5 * h * w);
        }
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        domain: (lo, hi),
    })
}

/// Gauss-Jacobi rule of the given order on (-1, 1) for the weight
/// (1-t)^alpha (1+t)^beta, alpha, beta > -1. Built by the Golub-Welsch
/// eigen-solve of the Jacobi recurrence matrix; weights are mu0 times the
/// squared first eigenvector components.
pub fn gauss_jacobi(order: usize, alpha: f64, beta: f64) -> Result<QuadratureRule> {
    if order == 0 || order > 4096 {
        return Err(QpdtError::Domain(format!(
            "Gauss-Jacobi order must be in 1..=4096, got {order}"
        )));
    }
    if !(alpha > -1.0) || !(beta > -1.0) {
        return Err(QpdtError::Domain(format!(
            "Gauss-Jacobi exponents must exceed -1, got alpha={alpha}, beta={beta}"
        )));
    }
    let n = order;
    let ab = alpha + beta;
    let mut m = DMatrix::<f64>::zeros(n, n);
    m[(0, 0)] = (beta - alpha) / (ab + 2.0);
    for k in 1..n {
        let d = 2.0 * k as f64 + ab;
        m[(k, k)] = (beta * beta - alpha * alpha) / (d * (d + 2.0));
    }
    for k in 1..n {
        // k = 1 uses the cancelled form: the generic one is 0/0 at ab = -1.
        let b2 = if k == 1 {
            4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
        } else {
            let kf = k as f64;
            let d = 2.0 * kf + ab;
            4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab) / (d * d * (d + 1.0) * (d - 1.0))
        };
        if !(b2 > 0.0) || !b2.is_finite() {
            return Err(QpdtError::Convergence(format!(
                "Jacobi recurrence broke down at k={k} (alpha={alpha}, beta={beta})"
            )));
        }
        let b = b2.sqrt();
        m[(k, k - 1)] = b;
        m[(k - 1, k)] = b;
    }
    let eig = m.symmetric_eigen();
    let mu0 = 2f64.powf(ab + 1.0) * gamma(alpha + 1.0)? * gamma(beta + 1.0)? / gamma(ab + 2.0)?;
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let x = eig.eigenvalues[i];
            let v0 = eig.eigenvectors[(0, i)];
            (x, mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    for &(x, w) in &pairs {
        if !x.is_finite() || !(w > 0.0) || x.abs() >= 1.0 {
            return Err(QpdtError::Convergence(format!(
                "Gauss-Jacobi eigen-solve produced an invalid node/weight pair ({x}, {w})"
            )));
        }
    }
    Ok(QuadratureRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
        domain: (-1.0, 1.0),
    })
}

/// Integrates `f` against |v|^{2mu+1} dv over the rule's domain:
/// sum_k w_k f(x_k) |x_k|^{2mu+1}, accumulated in ascending node order with
/// compensated summation (real and imaginary parts separately).
pub fn integrate_weighted<F>(f: F, mu: f64, rule: &QuadratureRule) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    if !(mu >= -0.5) {
        return Err(QpdtError::Domain(format!(
            "multiplicity index must satisfy mu >= -1/2, got {mu}"
        )));
    }
    let p = 2.0 * mu + 1.0;
    let mut re = Kahan::default();
    let mut im = Kahan::default();
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let fv = f(x);
        if !fv.re.is_finite() || !fv.im.is_finite() {
            return Err(QpdtError::Evaluation(format!(
                "integrand returned a non-finite value at v = {x}"
            )));
        }
        let scale = w * x.abs().powf(p);
        re.add(fv.re * scale);
        im.add(fv.im * scale);
    }
    Ok(Complex64::new(re.value(), im.value()))
}

/// Kahan-compensated accumulator. Addition order defines the result
/// bit-for-bit, so callers must feed it in a fixed sequence.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    pub(crate) fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(self) -> f64 {
        self.sum
    }
}

// Base Gauss-Legendre rules get reused across every panel and every call
// with the same order, so they are memoized. Newton iteration on P_n with
// the Chebyshev-like initial guess converges in a handful of steps.
fn cached_legendre(order: usize) -> Result<Arc<QuadratureRule>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<QuadratureRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rule) = cache.lock().unwrap().get(&order) {
        return Ok(rule.clone());
    }
    let rule = Arc::new(gauss_legendre_base(order)?);
    cache
        .lock()
        .unwrap()
        .insert(order, rule.clone());
    Ok(rule)
}

fn gauss_legendre_base(n: usize) -> Result<QuadratureRule> {
    if n == 0 || n > 10_000 {
        return Err(QpdtError::Domain(format!(
            "Gauss-Legendre order must be in 1..=10000, got {n}"
        )));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut converged = false;
        for _ in 0..100 {
            let (p, dp) = legendre_and_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(QpdtError::Convergence(format!(
                "Legendre root {i} of {n} did not converge"
            )));
        }
        let (_, dp) = legendre_and_derivative(n, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    // The cosine initial guesses walk the roots from +1 to -1.
    nodes.reverse();
    weights.reverse();
    Ok(QuadratureRule {
        nodes,
        weights,
        domain: (-1.0, 1.0),
    })
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    if n == 1 {
        return (x, 1.0);
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

// Translation evaluates one Gauss-Jacobi rule per point pair; identical
// (order, alpha, beta) triples recur constantly across a sweep.
pub(crate) fn cached_jacobi(order: usize, alpha: f64, beta: f64) -> Result<Arc<QuadratureRule>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u64, u64), Arc<QuadratureRule>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (order, alpha.to_bits(), beta.to_bits());
    if let Some(rule) = cache.lock().unwrap().get(&key) {
        return Ok(rule.clone());
    }
    let rule = Arc::new(gauss_jacobi(order, alpha, beta)?);
    cache.lock().unwrap().insert(key, rule.clone());
    Ok(rule)
}
