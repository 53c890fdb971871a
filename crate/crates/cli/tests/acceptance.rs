//! Release gate: every guarantee the library makes, checked end to end at
//! its contractual tolerance. Each test prints one PASS/FAIL line (visible
//! with --nocapture) and enforces its runtime budget, so the criteria are
//! serialized through a mutex instead of sharing cores.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::{Mutex, MutexGuard};
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qpdt_core::analysis::{
    dunkl_operator_apply, heisenberg_ratio, parseval_residual, plancherel_residual, young_check,
};
use qpdt_core::kernels::{dunkl_kernel, qpdt_kernel, QpdtParams};
use qpdt_core::ops::{convolve, lp_norm, translate, translate_point};
use qpdt_core::quadrature::{gauss_legendre_composite, IntegrationConfig};
use qpdt_core::signal::{CubicSpline, Evaluate, SampledSignal, TestFunction};
use qpdt_core::specfun::dunkl_constant;
use qpdt_core::transform::{
    dunkl_rule, dunkl_transform, forward, forward_via_dunkl, inverse, inverse_rule, preset,
    scaling_check, Preset,
};

static GATE: Mutex<()> = Mutex::new(());

fn serial() -> MutexGuard<'static, ()> {
    // a failed criterion must not wedge the rest of the gate
    GATE.lock().unwrap_or_else(|poisoned| poisoned.into_inner())
}

fn conclude(name: &str, started: Instant, budget: Option<f64>, worst: f64, tol: f64) {
    let elapsed = started.elapsed().as_secs_f64();
    let in_time = budget.map_or(true, |cap| elapsed <= cap);
    let ok = worst.is_finite() && worst <= tol && in_time;
    println!(
        "{} {name}: worst {worst:.3e} vs {tol:.1e}, {elapsed:.1}s",
        if ok { "PASS" } else { "FAIL" },
    );
    assert!(ok, "{name}: worst {worst:.3e} tol {tol:.1e} elapsed {elapsed:.1}s");
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| lo + step * i as f64).collect()
}

fn signed(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let m = rng.gen_range(lo..hi);
    if rng.gen::<bool>() {
        m
    } else {
        -m
    }
}

fn draw_params(rng: &mut ChaCha8Rng, mu: f64) -> QpdtParams {
    QpdtParams::new(
        rng.gen_range(-1.0..1.0),
        signed(rng, 0.5, 2.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        mu,
    )
    .unwrap()
}

fn draw_function(rng: &mut ChaCha8Rng) -> TestFunction {
    match rng.gen_range(0u32..3) {
        0 => TestFunction::gaussian(rng.gen_range(0.7..1.4)),
        1 => TestFunction::chirped_gaussian(rng.gen_range(0.7..1.3), rng.gen_range(-0.6..0.6)),
        _ => TestFunction::hermite_gaussian(rng.gen_range(1u32..4), rng.gen_range(0.8..1.2)),
    }
    .unwrap()
}

/// The frozen tuple set shared by the round-trip and the norm-preservation
/// criteria: moduli of a, c, d, e below 1, |b| in [1/2, 2], mu cycling
/// through {0, 0.75, 2}, inputs without their own chirp.
fn seeded_tuples(seed: u64) -> Vec<(QpdtParams, TestFunction)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mus = [0.0, 0.75, 2.0];
    (0..5)
        .map(|i| {
            let params = draw_params(&mut rng, mus[i % 3]);
            let f = if rng.gen::<bool>() {
                TestFunction::gaussian(rng.gen_range(0.7..1.4)).unwrap()
            } else {
                TestFunction::hermite_gaussian(rng.gen_range(1u32..4), rng.gen_range(0.8..1.2))
                    .unwrap()
            };
            (params, f)
        })
        .collect()
}

/// Composite Boole rule on n equal subintervals (n a multiple of 4). The
/// cross-check quadrature: equally spaced Newton-Cotes shares nothing with
/// the Gauss-Legendre panels the library integrates on.
fn boole(lo: f64, hi: f64, n: usize, f: impl Fn(f64) -> Complex64) -> Complex64 {
    assert_eq!(n % 4, 0);
    let h = (hi - lo) / n as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for seg in 0..n / 4 {
        let x0 = lo + 4.0 * h * seg as f64;
        sum += 7.0 * (f(x0) + f(x0 + 4.0 * h))
            + 32.0 * (f(x0 + h) + f(x0 + 3.0 * h))
            + 12.0 * f(x0 + 2.0 * h);
    }
    sum * (2.0 * h / 45.0)
}

#[test]
fn gaussian_is_a_fixed_point_and_survives_an_independent_quadrature() {
    let _guard = serial();
    let started = Instant::now();
    let cfg = IntegrationConfig::default();
    let gauss = TestFunction::gaussian(1.0).unwrap();
    let wgrid = linspace(-4.0, 4.0, 81);
    let mut worst: f64 = 0.0;

    for mu in [-0.5, 0.0, 1.0, 2.5] {
        let spectrum = dunkl_transform(mu, &gauss, &wgrid, &cfg).unwrap();
        for (&w, z) in wgrid.iter().zip(&spectrum.values) {
            worst = worst.max((z - Complex64::new((-0.5 * w * w).exp(), 0.0)).norm());
        }

        // brute-force oracle at four times the transform's node density,
        // split at v = 0 where the weight kinks
        let l = cfg.half_width;
        let n_lib = dunkl_rule(mu, &gauss, 4.0, &cfg).unwrap().len();
        let n_half = (2 * n_lib).div_ceil(4) * 4;
        let c = dunkl_constant(mu).unwrap();
        for &w in wgrid.iter().step_by(5) {
            let integrand = |v: f64| {
                dunkl_kernel(mu, -w, v).unwrap()
                    * (-0.5 * v * v).exp()
                    * v.abs().powf(2.0 * mu + 1.0)
            };
            let oracle = (boole(-l, 0.0, n_half, integrand) + boole(0.0, l, n_half, integrand)) * c;
            worst = worst.max((oracle - Complex64::new((-0.5 * w * w).exp(), 0.0)).norm());
        }
    }
    conclude("gaussian fixed point", started, Some(10.0), worst, 1e-6);
}

#[test]
fn both_forward_computation_routes_agree() {
    let _guard = serial();
    let started = Instant::now();
    let cfg = IntegrationConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let wgrid = linspace(-6.0, 6.0, 25);
    let fns = [
        TestFunction::gaussian(1.0).unwrap(),
        TestFunction::chirped_gaussian(1.0, 0.4).unwrap(),
    ];
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let mu = rng.gen_range(-0.5..2.5);
        let params = draw_params(&mut rng, mu);
        for f in &fns {
            let direct = forward(&params, f, &wgrid, &cfg).unwrap();
            let via = forward_via_dunkl(&params, f, &wgrid, &cfg).unwrap();
            for (x, y) in direct.values.iter().zip(&via.values) {
                worst = worst.max((x - y).norm());
            }
        }
    }
    conclude("forward route agreement", started, Some(30.0), worst, 1e-8);
}

#[test]
fn inversion_round_trip_recovers_the_input() {
    let _guard = serial();
    let started = Instant::now();
    // the weight's kink at v = 0 asks for higher panel order than the
    // default when the round trip stacks two quadratures
    let cfg = IntegrationConfig {
        order: 16,
        ..IntegrationConfig::default()
    };
    let vgrid = linspace(-3.0, 3.0, 21);
    let mut worst: f64 = 0.0;
    for (params, f) in seeded_tuples(3) {
        let rule = inverse_rule(&params, 3.0, &cfg).unwrap();
        let fwd = forward(&params, &f, &rule.nodes, &cfg).unwrap();
        let rec = inverse(&params, &fwd, &vgrid, &cfg).unwrap();
        for (&v, z) in vgrid.iter().zip(&rec.values) {
            worst = worst.max((z - f.eval(v)).norm());
        }
    }
    conclude("inversion round trip", started, Some(60.0), worst, 1e-5);
}

#[test]
fn norms_and_inner_products_are_preserved() {
    let _guard = serial();
    let started = Instant::now();
    let cfg = IntegrationConfig::default();
    let g = TestFunction::gaussian(1.05).unwrap();
    let mut worst: f64 = 0.0;
    for (params, f) in seeded_tuples(3) {
        worst = worst.max(plancherel_residual(&params, &f, &cfg).unwrap());
        worst = worst.max(parseval_residual(&params, &f, &g, &cfg).unwrap());
    }
    conclude("norm and inner-product preservation", started, None, worst, 1e-6);
}

#[test]
fn kernel_modulus_and_sup_norm_bounds_hold() {
    let _guard = serial();
    let started = Instant::now();
    let cfg = IntegrationConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);

    let mut worst_modulus: f64 = 0.0;
    for _ in 0..100_000 {
        let mu = rng.gen_range(-0.5..2.5);
        let params = draw_params(&mut rng, mu);
        let w = rng.gen_range(-30.0..30.0);
        let v = rng.gen_range(-30.0..30.0);
        worst_modulus = worst_modulus.max(qpdt_kernel(&params, w, v).unwrap().norm());
    }

    let wgrid = linspace(-8.0, 8.0, 129);
    let mut least_slack = f64::INFINITY;
    for _ in 0..20 {
        let mu = rng.gen_range(-0.5..2.5);
        let params = QpdtParams::new(
            signed(&mut rng, 0.1, 1.0),
            signed(&mut rng, 0.5, 2.0),
            rng.gen_range(-1.0..1.0),
            signed(&mut rng, 0.1, 1.0),
            rng.gen_range(-1.0..1.0),
            mu,
        )
        .unwrap();
        let f = draw_function(&mut rng);
        let spectrum = forward(&params, &f, &wgrid, &cfg).unwrap();
        let sup = spectrum.values.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let bound = dunkl_constant(mu).unwrap() / params.b.abs().powf(mu + 1.0)
            * lp_norm(&f, 1.0, mu, &cfg).unwrap();
        least_slack = least_slack.min(bound - sup);
    }

    let elapsed = started.elapsed().as_secs_f64();
    let ok = worst_modulus <= 1.0 + 1e-12 && least_slack >= 0.0;
    println!(
        "{} kernel bounds: modulus {worst_modulus:.12}, sup-norm slack {least_slack:.3e}, {elapsed:.1}s",
        if ok { "PASS" } else { "FAIL" },
    );
    assert!(ok, "modulus {worst_modulus} slack {least_slack}");
}

#[test]
fn dilation_covariance_holds() {
    let _guard = serial();
    let started = Instant::now();
    let cfg = IntegrationConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let wgrid = linspace(-4.0, 4.0, 17);
    let mut worst: f64 = 0.0;
    for mu in [0.0, 0.75, 1.5] {
        let params = draw_params(&mut rng, mu);
        let f = TestFunction::gaussian(rng.gen_range(0.8..1.2)).unwrap();
        for k in [0.5, 2.0, 3.0] {
            worst = worst.max(scaling_check(&params, k, &f, &wgrid, &cfg).unwrap());
        }
    }
    conclude("dilation covariance", started, None, worst, 1e-6);
}

#[test]
fn presets_match_their_classical_reductions() {
    let _guard = serial();
    let started = Instant::now();
    let cfg = IntegrationConfig::default();
    let l = cfg.half_width;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;

    // scalar quadratic-phase transform: (2 pi)^{-1/2} Int f(v)
    // e^{-i(a v^2 + b v w + c w^2 + d v + e w)} dv, checked against a
    // dense Newton-Cotes evaluation of exactly that formula
    {
        let (qa, qb, qc, qd, qe) = (
            rng.gen_range(-1.0..1.0),
            signed(&mut rng, 0.5, 2.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let f = TestFunction::gaussian(0.9).unwrap();
        let compare = [-3.0, -1.5, 0.0, 0.8, 2.2];
        let (params, post) = preset(&Preset::Qpft {
            a: qa,
            b: qb,
            c: qc,
            d: qd,
            e: qe,
        })
        .unwrap();
        let ours = forward(&params, &f, &compare, &cfg).unwrap();
        for (i, &w) in compare.iter().enumerate() {
            let direct = boole(-l, l, 40_960, |v| {
                f.eval(v)
                    * Complex64::from_polar(
                        1.0,
                        -(qa * v * v + qb * v * w + qc * w * w + qd * v + qe * w),
                    )
            }) / (2.0 * PI).sqrt();
            worst = worst.max((ours.values[i] * post - direct).norm());
        }
    }

    // a quarter turn of the fractional family has the plain transform's
    // modulus
    for mu in [0.0, 1.25] {
        let f = TestFunction::hermite_gaussian(1, 1.0).unwrap();
        let compare = linspace(-3.0, 3.0, 13);
        let (params, post) = preset(&Preset::FractionalDunkl {
            theta: FRAC_PI_2,
            mu,
        })
        .unwrap();
        let frac = forward(&params, &f, &compare, &cfg).unwrap();
        let plain = dunkl_transform(mu, &f, &compare, &cfg).unwrap();
        for (x, y) in frac.values.iter().zip(&plain.values) {
            worst = worst.max(((x * post).norm() - y.norm()).abs());
        }
    }

    // unitary Fourier transform
    {
        let f = TestFunction::hermite_gaussian(2, 1.0).unwrap();
        let compare = [-2.5, -1.0, 0.0, 0.7, 1.9];
        let (params, post) = preset(&Preset::Fourier).unwrap();
        let ours = forward(&params, &f, &compare, &cfg).unwrap();
        for (i, &w) in compare.iter().enumerate() {
            let direct = boole(-l, l, 10_240, |v| {
                f.eval(v) * Complex64::from_polar(1.0, -w * v)
            }) / (2.0 * PI).sqrt();
            worst = worst.max((ours.values[i] * post - direct).norm());
        }
    }
    conclude("classical reductions", started, None, worst, 1e-8);
}

#[test]
fn translation_operator_keeps_its_contract() {
    let _guard = serial();
    let started = Instant::now();
    let cfg = IntegrationConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mu = rng.gen_range(0.25..2.25);
    let params = QpdtParams::new(
        rng.gen_range(-1.0..1.0),
        1.0,
        0.0,
        rng.gen_range(-1.0..1.0),
        0.0,
        mu,
    )
    .unwrap();
    let f = TestFunction::gaussian(1.0).unwrap();

    let mut identity: f64 = 0.0;
    for v in [-2.1, -0.3, 0.6, 1.7] {
        identity = identity
            .max((translate_point(&params, &f, 0.0, v, &cfg).unwrap() - f.eval(v)).norm());
    }

    let h1 = TestFunction::hermite_gaussian(1, 1.0).unwrap();
    let mut symmetry: f64 = 0.0;
    for (w, v) in [(0.4, 1.3), (1.1, 2.0), (0.9, 0.9), (2.2, 0.5)] {
        for func in [&f, &h1] {
            let lhs = translate_point(&params, func, w, v, &cfg).unwrap();
            let rhs = translate_point(&params, func, v, w, &cfg).unwrap();
            symmetry = symmetry.max((lhs - rhs).norm());
        }
    }

    let rule = gauss_legendre_composite(&cfg, -cfg.half_width, cfg.half_width).unwrap();
    let shifted =
        CubicSpline::new(&translate(&params, &f, 1.1, &rule.nodes, &cfg).unwrap()).unwrap();
    let mut norm_excess: f64 = f64::NEG_INFINITY;
    for p in [1.0, 2.0] {
        let lhs = lp_norm(&shifted, p, mu, &cfg).unwrap();
        let bound = 4.0 * lp_norm(&f, p, mu, &cfg).unwrap();
        norm_excess = norm_excess.max(lhs - bound);
    }

    let one = |_: f64| Complex64::new(1.0, 0.0);
    let mut mass: f64 = 0.0;
    for (w, v, m) in [(0.7, 1.2, 0.5), (1.5, 0.4, 0.0), (2.0, 2.0, 1.75)] {
        let p = QpdtParams::new(0.0, 1.0, 0.0, 0.0, 0.0, m).unwrap();
        mass = mass
            .max((translate_point(&p, &one, w, v, &cfg).unwrap() - Complex64::new(1.0, 0.0)).norm());
    }

    // a chirp-free translate multiplies the spectrum by the kernel value
    let mut eigen: f64 = 0.0;
    for mu in [0.0, 0.75] {
        let p = QpdtParams::new(0.0, 1.0, 0.0, 0.0, 0.0, mu).unwrap();
        let v0 = 0.8;
        let compare = [0.3, 1.1, 2.4];
        let rule = dunkl_rule(mu, &f, 2.4, &cfg).unwrap();
        let shifted =
            CubicSpline::new(&translate(&p, &f, v0, &rule.nodes, &cfg).unwrap()).unwrap();
        let lhs = dunkl_transform(mu, &shifted, &compare, &cfg).unwrap();
        let base = dunkl_transform(mu, &f, &compare, &cfg).unwrap();
        for i in 0..compare.len() {
            let rhs = dunkl_kernel(mu, compare[i], v0).unwrap() * base.values[i];
            eigen = eigen.max((lhs.values[i] - rhs).norm());
        }
    }

    let elapsed = started.elapsed().as_secs_f64();
    let ok = identity <= 1e-12
        && symmetry <= 1e-6
        && norm_excess <= 1e-6
        && mass <= 1e-8
        && eigen <= 1e-6
        && elapsed <= 60.0;
    println!(
        "{} translation contract: identity {identity:.1e}, symmetry {symmetry:.1e}, \
         norm excess {norm_excess:.1e}, mass {mass:.1e}, eigenrelation {eigen:.1e}, {elapsed:.1}s",
        if ok { "PASS" } else { "FAIL" },
    );
    assert!(ok);
}

#[test]
fn convolution_commutes_associates_and_obeys_young() {
    let _guard = serial();
    let started = Instant::now();
    let cfg = IntegrationConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);

    let wgrid = linspace(-2.5, 2.5, 9);
    let mut commutativity: f64 = 0.0;
    for _ in 0..2 {
        let mu = rng.gen_range(0.25..2.0);
        let params = QpdtParams::new(rng.gen_range(-1.0..1.0), 1.0, 0.0, 0.0, 0.0, mu).unwrap();
        let f = TestFunction::gaussian(rng.gen_range(0.7..1.0)).unwrap();
        let g = TestFunction::gaussian(rng.gen_range(1.0..1.3)).unwrap();
        let fg = convolve(&params, &f, &g, &wgrid, &cfg).unwrap();
        let gf = convolve(&params, &g, &f, &wgrid, &cfg).unwrap();
        for (x, y) in fg.values.iter().zip(&gf.values) {
            commutativity = commutativity.max((x - y).norm());
        }
    }

    let assoc_params = QpdtParams::new(0.0, 1.0, 0.0, 0.0, 0.0, 0.75).unwrap();
    let bf = TestFunction::bump(-1.2, -0.1).unwrap();
    let bg = TestFunction::bump(-0.6, 0.7).unwrap();
    let bh = TestFunction::bump(0.2, 1.3).unwrap();
    let dense = linspace(-3.0, 3.0, 1201);
    let fg = CubicSpline::new(&convolve(&assoc_params, &bf, &bg, &dense, &cfg).unwrap()).unwrap();
    let gh = CubicSpline::new(&convolve(&assoc_params, &bg, &bh, &dense, &cfg).unwrap()).unwrap();
    let compare = linspace(-2.0, 2.0, 7);
    let left = convolve(&assoc_params, &fg, &bh, &compare, &cfg).unwrap();
    let right = convolve(&assoc_params, &bf, &gh, &compare, &cfg).unwrap();
    let mut associativity: f64 = 0.0;
    for (x, y) in left.values.iter().zip(&right.values) {
        associativity = associativity.max((x - y).norm());
    }

    let mu = rng.gen_range(0.25..2.0);
    let params = QpdtParams::new(
        signed(&mut rng, 0.1, 1.0),
        signed(&mut rng, 0.5, 2.0),
        rng.gen_range(-1.0..1.0),
        signed(&mut rng, 0.1, 1.0),
        rng.gen_range(-1.0..1.0),
        mu,
    )
    .unwrap();
    let g1 = TestFunction::gaussian(0.8).unwrap();
    let g2 = TestFunction::gaussian(1.1).unwrap();
    let b1 = TestFunction::bump(-1.0, 0.4).unwrap();
    let b2 = TestFunction::bump(-0.3, 1.1).unwrap();
    let mut young_margin = f64::INFINITY;
    for (f, g, p, q) in [
        (&g1, &g2, 1.0, 1.0),
        (&g1, &g2, 1.0, 2.0),
        (&b1, &b2, 2.0, 2.0),
    ] {
        let case = young_check(&params, f, g, p, q, &cfg).unwrap();
        young_margin = young_margin.min(case.bound + case.tol - case.measured);
    }

    let elapsed = started.elapsed().as_secs_f64();
    let ok = commutativity <= 1e-6 && associativity <= 1e-5 && young_margin >= 0.0;
    println!(
        "{} convolution algebra: commutativity {commutativity:.1e}, \
         associativity {associativity:.1e}, young margin {young_margin:.3e}, {elapsed:.1}s",
        if ok { "PASS" } else { "FAIL" },
    );
    assert!(ok);
}

#[test]
fn uncertainty_product_stays_above_its_floor() {
    let _guard = serial();
    let started = Instant::now();
    let cfg = IntegrationConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(10);

    let mut least: f64 = f64::INFINITY;
    for _ in 0..20 {
        let mu = rng.gen_range(0.0..2.5);
        let params = draw_params(&mut rng, mu);
        let f = draw_function(&mut rng);
        least = least.min(heisenberg_ratio(&params, &f, &cfg).unwrap().ratio);
    }

    // the chirp-free gaussian saturates a closed form that b cannot move
    let f = TestFunction::gaussian(1.0).unwrap();
    let mut closed_form: f64 = 0.0;
    let mut b_drift: f64 = 0.0;
    for mu in [0.0, 1.0] {
        let expect = (mu + 1.0) * (mu + 1.0) / ((mu + 0.5) * (mu + 0.5));
        let mut ratios = Vec::new();
        for b in [1.0, 2.0] {
            let params = QpdtParams::new(0.0, b, 0.0, 0.0, 0.0, mu).unwrap();
            let r = heisenberg_ratio(&params, &f, &cfg).unwrap().ratio;
            closed_form = closed_form.max((r - expect).abs() / expect);
            ratios.push(r);
        }
        b_drift = b_drift.max((ratios[0] - ratios[1]).abs() / ratios[0]);
    }

    let elapsed = started.elapsed().as_secs_f64();
    let ok = least >= 1.0 - 1e-9 && closed_form <= 1e-4 && b_drift <= 1e-4;
    println!(
        "{} uncertainty floor: least ratio {least:.9}, gaussian closed form off by \
         {closed_form:.1e}, b drift {b_drift:.1e}, {elapsed:.1}s",
        if ok { "PASS" } else { "FAIL" },
    );
    assert!(ok);
}

#[test]
fn differential_difference_operator_fixes_its_eigenfunctions() {
    let _guard = serial();
    let started = Instant::now();
    let mu = 1.0;
    let lambda = 1.3;
    let kernel_fn = move |v: f64| dunkl_kernel(mu, lambda, v).unwrap();

    let mut worst: f64 = 0.0;
    for v in [0.1, 0.7, 1.6, 3.0] {
        let want = Complex64::new(0.0, lambda) * kernel_fn(v);
        let got = dunkl_operator_apply(mu, &kernel_fn, v, 1e-4).unwrap();
        worst = worst.max((got - want).norm());
    }

    let v = 1.1;
    let want = Complex64::new(0.0, lambda) * kernel_fn(v);
    let r_full = (dunkl_operator_apply(mu, &kernel_fn, v, 1e-4).unwrap() - want).norm();
    let r_half = (dunkl_operator_apply(mu, &kernel_fn, v, 5e-5).unwrap() - want).norm();
    let second_order = r_half <= r_full / 3.0 + 1e-8;

    let elapsed = started.elapsed().as_secs_f64();
    let ok = worst <= 1e-6 && second_order;
    println!(
        "{} operator eigenfunctions: residual {worst:.3e} at h=1e-4, halved-step \
         {r_half:.3e} vs {r_full:.3e}, {elapsed:.1}s",
        if ok { "PASS" } else { "FAIL" },
    );
    assert!(ok);
}

#[test]
fn cli_verification_and_bit_identical_transform() {
    let _guard = serial();
    let started = Instant::now();
    let dir = tempfile::tempdir().unwrap();

    let report_path = dir.path().join("report.json");
    let verify = std::process::Command::new(env!("CARGO_BIN_EXE_qpdt"))
        .args([
            "verify",
            "--suite",
            "all",
            "--seed",
            "42",
            "--report",
            report_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    let verify_secs = started.elapsed().as_secs_f64();
    assert_eq!(
        verify.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&verify.stdout)
    );

    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    let mut schema_ok = doc["suite"].is_string()
        && doc["seed"].is_u64()
        && doc["aggregate"] == "pass"
        && doc["runtime_seconds"].is_number();
    let cases = doc["cases"].as_array().cloned().unwrap_or_default();
    schema_ok &= !cases.is_empty();
    for case in &cases {
        schema_ok &= case["name"].is_string()
            && case["inputs"].is_string()
            && case["measured"].is_number()
            && case["bound"].is_number()
            && case["tol"].is_number()
            && case["pass"].is_boolean();
    }

    // the binary must add no arithmetic of its own around the library
    let input = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/gaussian.csv");
    let out_path = dir.path().join("spectrum.csv");
    let transform = std::process::Command::new(env!("CARGO_BIN_EXE_qpdt"))
        .args([
            "transform",
            "--a",
            "0.3",
            "--b",
            "1.2",
            "--c",
            "-0.4",
            "--d",
            "0.1",
            "--e",
            "0.2",
            "--mu",
            "0.75",
            "--input",
            input.to_str().unwrap(),
            "--wmin",
            "-3",
            "--wmax",
            "3",
            "--wpoints",
            "41",
            "--output",
            out_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(
        transform.status.success(),
        "{}",
        String::from_utf8_lossy(&transform.stderr)
    );

    let mut grid = Vec::new();
    let mut values = Vec::new();
    for line in std::fs::read_to_string(&input).unwrap().lines().skip(1) {
        let f: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        grid.push(f[0]);
        values.push(Complex64::new(f[1], f[2]));
    }
    let params = QpdtParams::new(0.3, 1.2, -0.4, 0.1, 0.2, 0.75).unwrap();
    let signal = SampledSignal::new(grid, values, 0.75).unwrap();
    let spline = CubicSpline::new(&signal).unwrap();
    let wgrid = linspace(-3.0, 3.0, 41);
    let expect = forward(&params, &spline, &wgrid, &IntegrationConfig::default()).unwrap();

    let text = std::fs::read_to_string(&out_path).unwrap();
    let mut bits_ok = text.lines().skip(1).count() == expect.values.len();
    for (line, want) in text.lines().skip(1).zip(&expect.values) {
        let f: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        bits_ok &= f[1].to_bits() == want.re.to_bits() && f[2].to_bits() == want.im.to_bits();
    }

    let elapsed = started.elapsed().as_secs_f64();
    let ok = schema_ok && bits_ok && verify_secs <= 300.0;
    println!(
        "{} command-line gate: verify all in {verify_secs:.1}s, {} report cases, \
         bit-identical transform {bits_ok}, {elapsed:.1}s",
        if ok { "PASS" } else { "FAIL" },
        cases.len(),
    );
    assert!(ok);
}
