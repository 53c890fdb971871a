//! Translation and convolution structure: the Bessel triangle kernel, the
//! signed translation kernel, the translation operator evaluated through a
//! Gauss-Jacobi rule that absorbs the endpoint singularities, convolution
//! against the chirped measure, and weighted Lp norms.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{QpdtError, Result};
use crate::kernels::QpdtParams;
use crate::quadrature::{
    cached_jacobi, gauss_legendre_composite, integrate_weighted, IntegrationConfig,
};
use crate::signal::{Evaluate, SampledSignal};
use crate::specfun::gamma;

/// Offsets below this evaluate the translation as the exact identity.
const IDENTITY_EPS: f64 = 1e-12;

/// Jacobi orders are rounded up to this granularity so the rule cache stays
/// small while orders adapt to the integrand.
const ORDER_STEP: usize = 16;
const MAX_JACOBI_ORDER: usize = 768;

/// sigma(w, v, kappa) = (w^2 + v^2 - kappa^2) / (2 w v).
pub fn sigma(w: f64, v: f64, kappa: f64) -> Result<f64> {
    if w == 0.0 || v == 0.0 {
        return Err(QpdtError::Domain(format!(
            "sigma is undefined at w = {w}, v = {v}"
        )));
    }
    if !w.is_finite() || !v.is_finite() || !kappa.is_finite() {
        return Err(QpdtError::Domain(
            "sigma requires finite arguments".into(),
        ));
    }
    Ok((w * w + v * v - kappa * kappa) / (2.0 * w * v))
}

fn triangle_prefactor(mu: f64) -> Result<f64> {
    if !(mu > -0.5) || !mu.is_finite() {
        return Err(QpdtError::Domain(format!(
            "the triangle kernel requires mu > -1/2, got {mu}"
        )));
    }
    let pi = std::f64::consts::PI;
    Ok(2.0_f64.powf(1.0 - 2.0 * mu) * gamma(mu + 1.0)? / (pi.sqrt() * gamma(mu + 0.5)?))
}

/// Bessel-kind triangle kernel, evaluated on the moduli of its arguments:
/// zero outside the strict triangle condition ||w|-|v|| < |kappa| < |w|+|v|,
/// and inside it
///
///   k0 * [((W+V)^2 - K^2)(K^2 - (W-V)^2)]^(mu-1/2) / (W V K)^(2 mu)
///
/// with W, V, K the moduli and k0 = 2^{1-2mu} Gamma(mu+1) / (sqrt(pi) Gamma(mu+1/2)).
/// Integrates to one against K^{2mu+1} dK for fixed W, V.
pub fn triangle_kernel(mu: f64, w: f64, v: f64, kappa: f64) -> Result<f64> {
    let k0 = triangle_prefactor(mu)?;
    if w == 0.0 || v == 0.0 || kappa == 0.0 {
        return Err(QpdtError::Domain(format!(
            "the triangle kernel is undefined at w = {w}, v = {v}, kappa = {kappa}"
        )));
    }
    let (bw, bv, bk) = (w.abs(), v.abs(), kappa.abs());
    let sum = bw + bv;
    let diff = bw - bv;
    let p = (sum * sum - bk * bk) * (bk * bk - diff * diff);
    if p <= 0.0 {
        return Ok(0.0);
    }
    Ok(k0 * p.powf(mu - 0.5) / (bw * bv * bk).powf(2.0 * mu))
}

/// Translation kernel: (1/2) {1 - sigma(w,v,k) + sigma(k,w,v) + sigma(k,v,w)}
/// times the triangle kernel. Symmetric in (w, v), supported on
/// ||w|-|v|| < |kappa| < |w|+|v|, nonnegative when all three arguments share
/// a sign, and signed in general.
pub fn dunkl_translation_kernel(mu: f64, w: f64, v: f64, kappa: f64) -> Result<f64> {
    let k = triangle_kernel(mu, w, v, kappa)?;
    if k == 0.0 {
        return Ok(0.0);
    }
    let c = 1.0 - sigma(w, v, kappa)? + sigma(kappa, w, v)? + sigma(kappa, v, w)?;
    Ok(0.5 * c * k)
}

/// Sizes the Jacobi order for the s = kappa^2 substitution: the integrand's
/// envelope and chirp both turn into terms with rate proportional to the
/// half-range r, and Chebyshev-style coefficient decay wants the order a
/// little past that rate.
fn jacobi_order(cfg: &IntegrationConfig, r: f64, phase_rate: f64) -> usize {
    let rho = r * (2.0 + phase_rate);
    let wanted = (rho + 12.0 * rho.sqrt() + 24.0).ceil() as usize;
    let wanted = wanted.max(cfg.order);
    (wanted.div_ceil(ORDER_STEP) * ORDER_STEP).min(MAX_JACOBI_ORDER)
}

/// Translation operator evaluated at a single point.
///
/// tau_w f(v) = e^{-i[a(w^2+v^2)+d(w+v)]} Int f(kappa) W_mu(w,v,kappa)
///              |kappa|^{2mu+1} dkappa;
/// the kappa-side chirp of the defining integral cancels against the
/// kernel's own phase exactly, leaving the constant prefactor.
///
/// The integral runs over both signed support branches through the
/// substitution s = kappa^2, where a Gauss-Jacobi rule with exponents
/// mu - 1/2 absorbs the endpoint singularities. Offsets below 1e-12 return
/// f(v) exactly; v = 0 returns the continuum limit e^{-i(aw^2+dw)} f(w).
pub fn translate_point<S: Evaluate + ?Sized>(
    params: &QpdtParams,
    f: &S,
    w: f64,
    v: f64,
    cfg: &IntegrationConfig,
) -> Result<Complex64> {
    params.validate()?;
    cfg.validate()?;
    let mu = params.mu;
    if !(mu > -0.5) {
        return Err(QpdtError::Domain(format!(
            "translation requires mu > -1/2, got {mu}"
        )));
    }
    if !w.is_finite() || !v.is_finite() {
        return Err(QpdtError::Domain(format!(
            "translation arguments must be finite, got w = {w}, v = {v}"
        )));
    }
    if w.abs() < IDENTITY_EPS {
        return Ok(f.eval(v));
    }
    let phase = Complex64::from_polar(
        1.0,
        -(params.a * (w * w + v * v) + params.d * (w + v)),
    );
    if v.abs() < IDENTITY_EPS {
        return Ok(phase * f.eval(w));
    }

    let (bw, bv) = (w.abs(), v.abs());
    let a_end = (bw - bv).abs();
    let b_end = bw + bv;
    let m = 0.5 * (a_end * a_end + b_end * b_end);
    let r = 0.5 * (b_end * b_end - a_end * a_end);
    let order = jacobi_order(cfg, r, f.phase_rate());
    let rule = cached_jacobi(order, mu - 0.5, mu - 0.5)?;

    let s_wv = sigma(w, v, 0.0)?; // kappa enters sigma squared; branch-independent part
    let inv_2wv = 1.0 / (2.0 * w * v);
    let inv_2tw_num = |t: f64, x: f64, y: f64| (t * t + x * x - y * y) / (2.0 * t * x);

    let mut sum_re = crate::quadrature::Kahan::default();
    let mut sum_im = crate::quadrature::Kahan::default();
    for (&u, &wt) in rule.nodes.iter().zip(rule.weights.iter()) {
        let s = m + r * u;
        let t = s.sqrt();
        let sig_wv = s_wv - s * inv_2wv;
        let sig_twv = inv_2tw_num(t, w, v);
        let sig_tvw = inv_2tw_num(t, v, w);
        let c_plus = 1.0 - sig_wv + sig_twv + sig_tvw;
        let c_minus = 1.0 - sig_wv - sig_twv - sig_tvw;
        let g = f.eval(t) * c_plus + f.eval(-t) * c_minus;
        if !g.re.is_finite() || !g.im.is_finite() {
            return Err(QpdtError::Evaluation(format!(
                "translation integrand is not finite at kappa = {t}"
            )));
        }
        sum_re.add(wt * g.re);
        sum_im.add(wt * g.im);
    }
    let k0 = triangle_prefactor(mu)?;
    let scale = 0.25 * k0 * r.powf(2.0 * mu) / (bw * bv).powf(2.0 * mu);
    Ok(phase * Complex64::new(sum_re.value(), sum_im.value()) * scale)
}

/// Translation tabulated over an evaluation grid.
pub fn translate<S: Evaluate + ?Sized>(
    params: &QpdtParams,
    f: &S,
    w: f64,
    vgrid: &[f64],
    cfg: &IntegrationConfig,
) -> Result<SampledSignal> {
    let values: Vec<Complex64> = vgrid
        .par_iter()
        .map(|&v| translate_point(params, f, w, v, cfg))
        .collect::<Result<_>>()?;
    SampledSignal::new(vgrid.to_vec(), values, params.mu)
}

/// Convolution against the chirped weighted measure:
///
///   (f * g)(w) = Int tau_w f(-v) g(v) e^{i(a v^2 + d v)} |v|^{2mu+1} dv
///
/// over [-half_width, half_width].
///
/// The kappa-side chirps cancel inside the translation, so this pairing is
/// a chirp-conjugated version of the plain weighted convolution only up to
/// the factors the parameters leave behind: it commutes exactly when d = 0
/// and is associative when additionally a = 0. For other parameters the
/// linear phase enters the two slots asymmetrically.
pub fn convolve<S: Evaluate + ?Sized, T: Evaluate + ?Sized>(
    params: &QpdtParams,
    f: &S,
    g: &T,
    wgrid: &[f64],
    cfg: &IntegrationConfig,
) -> Result<SampledSignal> {
    params.validate()?;
    cfg.validate()?;
    if !(params.mu > -0.5) {
        return Err(QpdtError::Domain(format!(
            "convolution requires mu > -1/2, got {}",
            params.mu
        )));
    }
    if wgrid.is_empty() {
        return Err(QpdtError::Domain("evaluation grid is empty".into()));
    }
    let l = cfg.half_width;
    let rate = (4.0 * params.a.abs() + 2.0 * (f.phase_rate() + g.phase_rate())) * l
        + 2.0 * params.d.abs()
        + f.linear_phase()
        + g.linear_phase();
    let needed = (l * rate / std::f64::consts::PI).ceil() as usize;
    let panels = {
        let n = cfg.panels.max(needed);
        n + (n & 1)
    };
    let cfg2 = IntegrationConfig { panels, ..*cfg };
    let rule = gauss_legendre_composite(&cfg2, -l, l)?;
    // parameters are validated above, so a failing inner translation can
    // only mean a non-finite integrand; the NaN it injects surfaces through
    // the quadrature layer's own evaluation check
    let values: Vec<Complex64> = wgrid
        .par_iter()
        .map(|&w| -> Result<Complex64> {
            integrate_weighted(
                |v| match translate_point(params, f, w, -v, cfg) {
                    Ok(t) => {
                        t * g.eval(v)
                            * Complex64::from_polar(1.0, params.a * v * v + params.d * v)
                    }
                    Err(_) => Complex64::new(f64::NAN, f64::NAN),
                },
                params.mu,
                &rule,
            )
        })
        .collect::<Result<_>>()?;
    SampledSignal::new(wgrid.to_vec(), values, params.mu)
}

/// Weighted Lp norm over [-half_width, half_width]: the integral norm for
/// finite p >= 1, the max modulus over the quadrature nodes for p = infinity.
pub fn lp_norm<S: Evaluate + ?Sized>(
    f: &S,
    p: f64,
    mu: f64,
    cfg: &IntegrationConfig,
) -> Result<f64> {
    cfg.validate()?;
    if !(p >= 1.0) {
        return Err(QpdtError::Domain(format!(
            "Lp norms require p >= 1, got {p}"
        )));
    }
    let l = cfg.half_width;
    let rule = gauss_legendre_composite(cfg, -l, l)?;
    if p.is_infinite() {
        let mut worst: f64 = 0.0;
        for &x in &rule.nodes {
            let z = f.eval(x).norm();
            if !z.is_finite() {
                return Err(QpdtError::Evaluation(format!(
                    "signal is not finite at {x}"
                )));
            }
            worst = worst.max(z);
        }
        return Ok(worst);
    }
    let total = integrate_weighted(
        |x| Complex64::new(f.eval(x).norm().powf(p), 0.0),
        mu,
        &rule,
    )?;
    Ok(total.re.powf(1.0 / p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::TestFunction;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dunkl_params(a: f64, d: f64, mu: f64) -> QpdtParams {
        QpdtParams::new(a, 1.0, 0.0, d, 0.0, mu).unwrap()
    }

    #[test]
    fn sigma_values_and_rejections() {
        assert_eq!(sigma(1.0, 2.0, 2.5).unwrap(), (1.0 + 4.0 - 6.25) / 4.0);
        assert!(sigma(0.0, 1.0, 1.0).is_err());
        assert!(sigma(1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn triangle_kernel_frozen_values() {
        // mu = 1 at the equilateral point: 2^{-1} Gamma(2)/(sqrt(pi) Gamma(3/2))
        // * [(4-1)(1-0)]^{1/2} = sqrt(3)/pi
        let got = triangle_kernel(1.0, 1.0, 1.0, 1.0).unwrap();
        assert!((got - 0.551_328_895_421_792_05).abs() <= 1e-14);
        // mu = 1/2 exponent vanishes: k0 / (w v kappa)
        let got = triangle_kernel(0.5, 1.0, 2.0, 2.5).unwrap();
        assert!((got - 0.1).abs() <= 1e-15);
        assert_eq!(triangle_kernel(0.5, 1.0, 2.0, 3.5).unwrap(), 0.0);
        assert_eq!(triangle_kernel(0.5, 1.0, 2.0, 0.9).unwrap(), 0.0);
        assert!(triangle_kernel(-0.5, 1.0, 1.0, 1.0).is_err());
        assert!(triangle_kernel(0.5, 0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn translation_kernel_frozen_values_and_sign() {
        // hand-computed at mu = 1/2: K = 0.1, C+ = 2.8875, C- = -0.2625
        let plus = dunkl_translation_kernel(0.5, 1.0, 2.0, 2.5).unwrap();
        assert!((plus - 0.144_375).abs() <= 1e-14);
        let minus = dunkl_translation_kernel(0.5, 1.0, 2.0, -2.5).unwrap();
        assert!((minus + 0.013_125).abs() <= 1e-14);
        // symmetric in the first two arguments
        let swapped = dunkl_translation_kernel(0.5, 2.0, 1.0, 2.5).unwrap();
        assert!((plus - swapped).abs() <= 1e-15);
        // zero off the support annulus
        assert_eq!(dunkl_translation_kernel(0.5, 1.0, 2.0, 0.5).unwrap(), 0.0);
        assert_eq!(dunkl_translation_kernel(0.5, 1.0, 2.0, 4.0).unwrap(), 0.0);
    }

    #[test]
    fn translation_kernel_nonnegative_on_shared_sign_draws() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2000 {
            let mu: f64 = rng.gen_range(-0.3..2.5);
            let w: f64 = rng.gen_range(0.1..5.0);
            let v: f64 = rng.gen_range(0.1..5.0);
            let lo = (w - v).abs();
            let hi = w + v;
            let kappa = rng.gen_range(lo..hi).max(lo + 1e-9);
            let val = dunkl_translation_kernel(mu, w, v, kappa).unwrap();
            assert!(
                val >= -1e-12,
                "negative kernel {val} at mu={mu} w={w} v={v} kappa={kappa}"
            );
        }
    }

    #[test]
    fn unit_signal_translates_to_unit_mass() {
        let one = |_v: f64| Complex64::new(1.0, 0.0);
        let cfg = IntegrationConfig::default();
        for &mu in &[0.0, 0.5, 1.0, 2.25] {
            let params = dunkl_params(0.0, 0.0, mu);
            for &(w, v) in &[(1.0, 1.0), (1.3, 0.4), (2.0, -1.7), (-3.0, -3.0), (0.2, 4.8)] {
                let got = translate_point(&params, &one, w, v, &cfg).unwrap();
                assert!(
                    (got - Complex64::new(1.0, 0.0)).norm() <= 1e-10,
                    "mass {got} at mu={mu} w={w} v={v}"
                );
            }
        }
    }

    #[test]
    fn zero_offset_is_the_identity() {
        let params = dunkl_params(0.4, -0.3, 0.75);
        let f = TestFunction::chirped_gaussian(1.0, 0.5).unwrap();
        let cfg = IntegrationConfig::default();
        let vgrid: Vec<f64> = (0..9).map(|i| -2.0 + 0.5 * i as f64).collect();
        let out = translate(&params, &f, 0.0, &vgrid, &cfg).unwrap();
        for (&v, z) in vgrid.iter().zip(out.values.iter()) {
            assert_eq!(*z, f.eval(v));
        }
    }

    #[test]
    fn zero_evaluation_point_gives_the_phased_sample() {
        let params = dunkl_params(0.4, -0.3, 0.75);
        let f = TestFunction::gaussian(1.0).unwrap();
        let cfg = IntegrationConfig::default();
        let w = 1.7;
        let got = translate_point(&params, &f, w, 0.0, &cfg).unwrap();
        let want = Complex64::from_polar(1.0, -(0.4 * w * w - 0.3 * w)) * f.eval(w);
        assert!((got - want).norm() <= 1e-15);
    }

    #[test]
    fn translation_is_symmetric_in_offset_and_point() {
        let params = dunkl_params(0.3, 0.2, 0.8);
        let f = TestFunction::gaussian(1.1).unwrap();
        let cfg = IntegrationConfig::default();
        for &(w, v) in &[(1.0, 2.0), (0.7, -1.3), (-2.1, -0.4)] {
            let lhs = translate_point(&params, &f, w, v, &cfg).unwrap();
            let rhs = translate_point(&params, &f, v, w, &cfg).unwrap();
            assert!((lhs - rhs).norm() <= 1e-10, "{lhs} vs {rhs} at ({w}, {v})");
        }
    }

    #[test]
    fn translated_bump_respects_the_support_geometry() {
        let params = dunkl_params(0.0, 0.0, 0.5);
        let f = TestFunction::bump(2.0, 3.0).unwrap();
        let cfg = IntegrationConfig::default();
        let w = 5.0;
        // support annulus of the integral is (|5 - |v||, 5 + |v|)
        for &v in &[0.5, 1.0, -1.5, 9.5, -10.0] {
            let z = translate_point(&params, &f, w, v, &cfg).unwrap();
            assert_eq!(z, Complex64::new(0.0, 0.0), "expected zero at v = {v}");
        }
        let z = translate_point(&params, &f, w, 4.0, &cfg).unwrap();
        assert!(z.norm() > 1e-6);
    }

    #[test]
    fn convolution_commutes_for_smooth_signals() {
        // d = 0: with a linear phase present the product genuinely fails to
        // commute, so the commutativity statement lives on this subfamily
        let params = dunkl_params(0.2, 0.0, 0.6);
        let f = TestFunction::gaussian(0.8).unwrap();
        let g = TestFunction::gaussian(1.3).unwrap();
        let cfg = IntegrationConfig::default();
        let wgrid = [-1.4, -0.2, 0.9, 2.3];
        let fg = convolve(&params, &f, &g, &wgrid, &cfg).unwrap();
        let gf = convolve(&params, &g, &f, &wgrid, &cfg).unwrap();
        for (a, b) in fg.values.iter().zip(gf.values.iter()) {
            assert!((a - b).norm() <= 1e-8, "{a} vs {b}");
        }
    }

    #[test]
    fn convolution_with_zero_vanishes() {
        let params = dunkl_params(0.3, 0.0, 1.0);
        let f = TestFunction::gaussian(1.0).unwrap();
        let cfg = IntegrationConfig::default();
        let out = convolve(&params, &f, &TestFunction::Zero, &[0.0, 1.0], &cfg).unwrap();
        for z in &out.values {
            assert_eq!(*z, Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn lp_norm_oracles() {
        let f = TestFunction::gaussian(1.0).unwrap();
        let cfg = IntegrationConfig::default();
        // Int e^{-v^2} |v| dv = 1, so the L2 norm at mu = 0 is exactly 1
        let l2 = lp_norm(&f, 2.0, 0.0, &cfg).unwrap();
        assert!((l2 - 1.0).abs() <= 1e-12);
        // Int e^{-v^2/2} |v| dv = 2
        let l1 = lp_norm(&f, 1.0, 0.0, &cfg).unwrap();
        assert!((l1 - 2.0).abs() <= 1e-12);
        let sup = lp_norm(&f, f64::INFINITY, 0.0, &cfg).unwrap();
        assert!(sup <= 1.0 && sup >= 0.99);
        assert!(lp_norm(&f, 0.5, 0.0, &cfg).is_err());
    }
}
