//! The quadratic-phase Dunkl transform, its inverse, the factorized route
//! through the plain Dunkl transform, named classical presets, and the
//! dilation identity check.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{QpdtError, Result};
use crate::kernels::{self, QpdtParams};
use crate::quadrature::{gauss_legendre_composite, integrate_weighted, IntegrationConfig, QuadratureRule};
use crate::signal::{CubicSpline, Evaluate, SampledSignal, TestFunction};
use crate::specfun::{dunkl_constant, MAX_BESSEL_ARG};

fn even_up(n: usize) -> usize {
    // an even panel count keeps v = 0, where |v|^{2mu+1} has a kink,
    // on a panel boundary
    n + (n & 1)
}

fn grid_extent(grid: &[f64]) -> Result<f64> {
    if grid.is_empty() {
        return Err(QpdtError::Domain("evaluation grid is empty".into()));
    }
    let mut m: f64 = 0.0;
    for &w in grid {
        if !w.is_finite() {
            return Err(QpdtError::Domain(format!(
                "evaluation grid contains non-finite point {w}"
            )));
        }
        m = m.max(w.abs());
    }
    Ok(m)
}

fn check_kernel_reach(max_arg: f64) -> Result<()> {
    if max_arg > MAX_BESSEL_ARG {
        return Err(QpdtError::Domain(format!(
            "kernel argument reaches {max_arg:.3e}, beyond the supported {MAX_BESSEL_ARG:.1e}; \
             shrink the grid, the integration window, or 1/|b|"
        )));
    }
    Ok(())
}

/// Oscillation-resolving panel count over [-half_width, half_width]: at
/// least one panel per half-period of the fastest phase in the integrand,
/// never below the configured count.
fn oscillation_panels(cfg: &IntegrationConfig, half_width: f64, max_phase_derivative: f64) -> usize {
    let needed = (half_width * max_phase_derivative / std::f64::consts::PI).ceil();
    let needed = if needed.is_finite() { needed as usize } else { usize::MAX / 2 };
    even_up(cfg.panels.max(needed))
}

/// The v-side rule `forward` integrates against, with the panel count raised
/// to resolve the kernel and signal oscillation at the largest |w| requested.
pub fn forward_rule<S: Evaluate + ?Sized>(
    params: &QpdtParams,
    f: &S,
    w_max: f64,
    cfg: &IntegrationConfig,
) -> Result<QuadratureRule> {
    params.validate()?;
    cfg.validate()?;
    let l = cfg.half_width;
    check_kernel_reach(w_max.abs() * l / params.b.abs())?;
    let rate = w_max.abs() / params.b.abs()
        + 2.0 * (params.a.abs() + f.phase_rate()) * l
        + params.d.abs()
        + f.linear_phase();
    let cfg2 = IntegrationConfig {
        panels: oscillation_panels(cfg, l, rate),
        ..*cfg
    };
    gauss_legendre_composite(&cfg2, -l, l)
}

/// The w-side rule `inverse` integrates against.
///
/// The transform of a signal supported in [-L, L] is confined to roughly
/// |w| <= |b| (L + 2|a|L + |d|): intrinsic bandwidth plus the chirp's
/// frequency sweep, all scaled by b. The window must cover that, not just
/// the reconstruction grid. Within the window, the transform's own
/// e^{-i(cw^2+ew)} chirp cancels against the inverse kernel's analytically
/// at every evaluation point, so the quadrature only has to resolve the
/// surviving Dunkl-phase rate (v_max + L) / |b|.
pub fn inverse_rule(
    params: &QpdtParams,
    v_max: f64,
    cfg: &IntegrationConfig,
) -> Result<QuadratureRule> {
    params.validate()?;
    cfg.validate()?;
    let l = cfg.half_width;
    let w_half = v_max
        .abs()
        .max(params.b.abs() * (l + 2.0 * params.a.abs() * l + params.d.abs()));
    check_kernel_reach(v_max.abs() * w_half / params.b.abs())?;
    let rate = (v_max.abs() + l) / params.b.abs();
    let cfg2 = IntegrationConfig {
        panels: oscillation_panels(cfg, w_half, rate),
        ..*cfg
    };
    gauss_legendre_composite(&cfg2, -w_half, w_half)
}

/// The rule `dunkl_transform` integrates against.
pub fn dunkl_rule<S: Evaluate + ?Sized>(
    mu: f64,
    f: &S,
    w_max: f64,
    cfg: &IntegrationConfig,
) -> Result<QuadratureRule> {
    if !(mu >= -0.5) || !mu.is_finite() {
        return Err(QpdtError::Domain(format!(
            "order mu must satisfy mu >= -1/2, got {mu}"
        )));
    }
    cfg.validate()?;
    let l = cfg.half_width;
    check_kernel_reach(w_max.abs() * l)?;
    let rate = w_max.abs() + 2.0 * f.phase_rate() * l + f.linear_phase();
    let cfg2 = IntegrationConfig {
        panels: oscillation_panels(cfg, l, rate),
        ..*cfg
    };
    gauss_legendre_composite(&cfg2, -l, l)
}

/// Forward quadratic-phase Dunkl transform of `f`, tabulated on `wgrid`.
pub fn forward<S: Evaluate + ?Sized>(
    params: &QpdtParams,
    f: &S,
    wgrid: &[f64],
    cfg: &IntegrationConfig,
) -> Result<SampledSignal> {
    params.validate()?;
    let w_max = grid_extent(wgrid)?;
    let rule = forward_rule(params, f, w_max, cfg)?;
    let prefactor = Complex64::new(dunkl_constant(params.mu)?, 0.0)
        / kernels::power_ib(params.b, params.mu)?;
    let values: Vec<Complex64> = wgrid
        .par_iter()
        .map(|&w| -> Result<Complex64> {
            let inner = integrate_weighted(
                |v| kernels::kernel_raw(params, w, v) * f.eval(v),
                params.mu,
                &rule,
            )?;
            Ok(prefactor * inner)
        })
        .collect::<Result<_>>()?;
    SampledSignal::new(wgrid.to_vec(), values, params.mu)
}

/// The plain Dunkl transform of order mu, tabulated on `wgrid`. This is the
/// b = 1, zero-phase member of the family, kept as its own integration path.
pub fn dunkl_transform<S: Evaluate + ?Sized>(
    mu: f64,
    f: &S,
    wgrid: &[f64],
    cfg: &IntegrationConfig,
) -> Result<SampledSignal> {
    let values = dunkl_values(mu, f, wgrid, cfg)?;
    SampledSignal::new(wgrid.to_vec(), values, mu)
}

fn dunkl_values<S: Evaluate + ?Sized>(
    mu: f64,
    f: &S,
    points: &[f64],
    cfg: &IntegrationConfig,
) -> Result<Vec<Complex64>> {
    let w_max = grid_extent(points)?;
    let rule = dunkl_rule(mu, f, w_max, cfg)?;
    let c_mu = dunkl_constant(mu)?;
    points
        .par_iter()
        .map(|&w| -> Result<Complex64> {
            let inner = integrate_weighted(
                |v| kernels::dunkl_kernel_raw(mu, -w, v) * f.eval(v),
                mu,
                &rule,
            )?;
            Ok(inner * c_mu)
        })
        .collect()
}

/// Signal modulated by the input-side quadratic phase, exp(-i(a v^2 + d v)) f(v).
struct Modulated<'a, S: Evaluate + ?Sized> {
    inner: &'a S,
    a: f64,
    d: f64,
}

impl<S: Evaluate + ?Sized> Evaluate for Modulated<'_, S> {
    fn eval(&self, v: f64) -> Complex64 {
        Complex64::from_polar(1.0, -(self.a * v * v + self.d * v)) * self.inner.eval(v)
    }

    fn phase_rate(&self) -> f64 {
        self.inner.phase_rate() + self.a.abs()
    }

    fn linear_phase(&self) -> f64 {
        self.inner.linear_phase() + self.d.abs()
    }
}

/// Forward transform computed through the factorization: modulate the input
/// by its quadratic phase, take the plain Dunkl transform at w/b, then apply
/// the output phase and the 1/(ib)^{mu+1} prefactor. Agrees with `forward`
/// but never touches the combined kernel, so the two routes cross-check
/// each other.
pub fn forward_via_dunkl<S: Evaluate + ?Sized>(
    params: &QpdtParams,
    f: &S,
    wgrid: &[f64],
    cfg: &IntegrationConfig,
) -> Result<SampledSignal> {
    params.validate()?;
    let h = Modulated {
        inner: f,
        a: params.a,
        d: params.d,
    };
    let scaled: Vec<f64> = wgrid.iter().map(|&w| w / params.b).collect();
    let dunkl = dunkl_values(params.mu, &h, &scaled, cfg)?;
    let prefactor = Complex64::new(1.0, 0.0) / kernels::power_ib(params.b, params.mu)?;
    let values: Vec<Complex64> = wgrid
        .iter()
        .zip(dunkl)
        .map(|(&w, dv)| {
            prefactor
                * Complex64::from_polar(1.0, -(params.c * w * w + params.e * w))
                * dv
        })
        .collect();
    SampledSignal::new(wgrid.to_vec(), values, params.mu)
}

/// Inverse transform: reconstructs the signal on `vgrid` from a tabulated
/// transform. The integration window [-half_width, half_width] must lie
/// inside the tabulated domain, and the transform must have been produced
/// at the same order mu.
pub fn inverse(
    params: &QpdtParams,
    transformed: &SampledSignal,
    vgrid: &[f64],
    cfg: &IntegrationConfig,
) -> Result<SampledSignal> {
    params.validate()?;
    cfg.validate()?;
    if transformed.mu != params.mu {
        return Err(QpdtError::Domain(format!(
            "transform was tabulated at mu = {}, parameters say mu = {}",
            transformed.mu, params.mu
        )));
    }
    let v_max = grid_extent(vgrid)?;
    let rule = inverse_rule(params, v_max, cfg)?;
    let (lo, hi) = transformed.domain();
    let (n0, n1) = (rule.nodes[0], *rule.nodes.last().unwrap());
    if n0 < lo || n1 > hi {
        return Err(QpdtError::Interpolation(format!(
            "inverse integrates over nodes spanning [{n0}, {n1}] but the transform is \
             tabulated on [{lo}, {hi}]"
        )));
    }
    let inv = params.inverse_params();
    let prefactor = Complex64::new(dunkl_constant(params.mu)?, 0.0)
        / kernels::power_ib(-params.b, params.mu)?;
    let spline = CubicSpline::new(transformed)?;
    // truncation guard: the weighted transform must have decayed at the
    // window's edges, otherwise the reconstruction silently loses mass
    let weighted: Vec<f64> = rule
        .nodes
        .iter()
        .map(|&w| spline.eval_or_zero(w).norm() * w.abs().powf(2.0 * params.mu + 1.0))
        .collect();
    let peak = weighted.iter().copied().fold(0.0, f64::max);
    let span = cfg.order.min(weighted.len());
    let edge = weighted[..span]
        .iter()
        .chain(&weighted[weighted.len() - span..])
        .copied()
        .fold(0.0, f64::max);
    if edge > 1e-7 * peak {
        return Err(QpdtError::TailBound(format!(
            "transform has not decayed at the integration window's edges \
             (edge integrand {edge:.3e} vs peak {peak:.3e}); the signal's \
             content exceeds what the parameters predict"
        )));
    }
    let values: Vec<Complex64> = vgrid
        .par_iter()
        .map(|&v| -> Result<Complex64> {
            let inner = integrate_weighted(
                |w| kernels::kernel_raw(&inv, v, w) * spline.eval_or_zero(w),
                params.mu,
                &rule,
            )?;
            Ok(prefactor * inner)
        })
        .collect::<Result<_>>()?;
    SampledSignal::new(vgrid.to_vec(), values, params.mu)
}

/// Named classical members of the transform family.
#[derive(Debug, Clone, PartialEq)]
pub enum Preset {
    /// plain Dunkl transform of order mu
    Dunkl { mu: f64 },
    /// Fresnel-type transform with parameter tau != 0
    Fresnel { tau: f64, mu: f64 },
    /// linear canonical Dunkl transform with matrix entries (a, b, c), b != 0
    LinearCanonical { a: f64, b: f64, c: f64, mu: f64 },
    /// fractional Dunkl transform of angle theta not a multiple of pi
    FractionalDunkl { theta: f64, mu: f64 },
    /// five-parameter quadratic-phase Fourier transform (mu = -1/2)
    Qpft { a: f64, b: f64, c: f64, d: f64, e: f64 },
    /// unitary Fourier transform (mu = -1/2)
    Fourier,
}

/// Maps a preset to the parameter tuple realizing it, together with the
/// constant postfactor by which `forward` must be multiplied to reproduce
/// the named transform exactly.
pub fn preset(p: &Preset) -> Result<(QpdtParams, Complex64)> {
    match *p {
        Preset::Dunkl { mu } => Ok((
            QpdtParams::new(0.0, 1.0, 0.0, 0.0, 0.0, mu)?,
            kernels::power_ib(1.0, mu)?,
        )),
        Preset::Fresnel { tau, mu } => {
            if tau == 0.0 || !tau.is_finite() {
                return Err(QpdtError::Domain(format!(
                    "fresnel parameter tau must be nonzero and finite, got {tau}"
                )));
            }
            let q = -1.0 / (2.0 * tau);
            Ok((
                QpdtParams::new(q, tau, q, 0.0, 0.0, mu)?,
                Complex64::new(1.0, 0.0),
            ))
        }
        Preset::LinearCanonical { a, b, c, mu } => {
            if b == 0.0 || !b.is_finite() || !a.is_finite() || !c.is_finite() {
                return Err(QpdtError::Domain(format!(
                    "linear canonical entries must be finite with b != 0, got ({a}, {b}, {c})"
                )));
            }
            Ok((
                QpdtParams::new(-a / (2.0 * b), b, -c / (2.0 * b), 0.0, 0.0, mu)?,
                Complex64::new(1.0, 0.0),
            ))
        }
        Preset::FractionalDunkl { theta, mu } => {
            if !theta.is_finite() {
                return Err(QpdtError::Domain(format!(
                    "fractional angle must be finite, got {theta}"
                )));
            }
            let r = theta.rem_euclid(std::f64::consts::PI);
            if r < 1e-9 || std::f64::consts::PI - r < 1e-9 {
                return Err(QpdtError::Domain(format!(
                    "fractional angle {theta} is a multiple of pi; the transform degenerates there"
                )));
            }
            let (sin, cos) = theta.sin_cos();
            let q = -0.5 * cos / sin;
            Ok((
                QpdtParams::new(q, sin, q, 0.0, 0.0, mu)?,
                Complex64::from_polar(1.0, theta * (mu + 1.0)),
            ))
        }
        Preset::Qpft { a, b, c, d, e } => {
            if b == 0.0 || !b.is_finite() {
                return Err(QpdtError::Domain(format!(
                    "qpft coupling b must be nonzero and finite, got {b}"
                )));
            }
            Ok((
                QpdtParams::new(a, 1.0 / b, c, d, e, -0.5)?,
                kernels::power_ib(1.0 / b, -0.5)?,
            ))
        }
        Preset::Fourier => Ok((
            QpdtParams::new(0.0, 1.0, 0.0, 0.0, 0.0, -0.5)?,
            kernels::power_ib(1.0, -0.5)?,
        )),
    }
}

/// Maximum deviation over `wgrid` between the transform evaluated at k w and
/// the dilation identity's right-hand side: k^{-(2mu+2)} times the transform
/// with parameters (a/k^2, b, c k^2, d/k, e k) applied to f(./k). At k = 1
/// both sides are the same computation and the residual is exactly zero.
pub fn scaling_check(
    params: &QpdtParams,
    k: f64,
    f: &TestFunction,
    wgrid: &[f64],
    cfg: &IntegrationConfig,
) -> Result<f64> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(QpdtError::Domain(format!(
            "dilation factor must be positive and finite, got {k}"
        )));
    }
    let scaled_grid: Vec<f64> = wgrid.iter().map(|&w| k * w).collect();
    let lhs = forward(params, f, &scaled_grid, cfg)?;
    let scaled_params = QpdtParams::new(
        params.a / (k * k),
        params.b,
        params.c * (k * k),
        params.d / k,
        params.e * k,
        params.mu,
    )?;
    let fk = f.dilate(k)?;
    let scaled_cfg = IntegrationConfig {
        half_width: k * cfg.half_width,
        ..*cfg
    };
    let rhs = forward(&scaled_params, &fk, wgrid, &scaled_cfg)?;
    let scale = k.powf(-(2.0 * params.mu + 2.0));
    let mut worst: f64 = 0.0;
    for (l, r) in lhs.values.iter().zip(rhs.values.iter()) {
        worst = worst.max((l - r * scale).norm());
    }
    Ok(worst)
}
