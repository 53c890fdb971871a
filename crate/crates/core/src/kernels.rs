//! Pointwise kernel evaluation: the one-dimensional Dunkl kernel E_mu, the
//! five-parameter quadratic-phase kernel built on it, and the complex branch
//! convention for the transform prefactor.

use num_complex::Complex64;

use crate::error::{QpdtError, Result};
use crate::specfun::normalized_bessel_pair;

/// Parameter tuple (a, b, c, d, e, mu) of the quadratic-phase transform.
///
/// `a, c` weight the quadratic phases in v and w, `d, e` the linear ones,
/// and `b` couples the two variables; `b` must be nonzero and the
/// multiplicity index `mu` at least -1/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QpdtParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub mu: f64,
}

impl QpdtParams {
    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64, mu: f64) -> Result<Self> {
        let p = QpdtParams { a, b, c, d, e, mu };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, x) in [
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
            ("d", self.d),
            ("e", self.e),
            ("mu", self.mu),
        ] {
            if !x.is_finite() {
                return Err(QpdtError::Domain(format!(
                    "parameter {name} must be finite, got {x}"
                )));
            }
        }
        if self.b == 0.0 {
            return Err(QpdtError::Domain("parameter b must be nonzero".into()));
        }
        if !(self.mu >= -0.5) {
            return Err(QpdtError::Domain(format!(
                "multiplicity index must satisfy mu >= -1/2, got {}",
                self.mu
            )));
        }
        Ok(())
    }

    /// Parameter tuple of the inverse transform: (-c, -b, -a, -e, -d, mu).
    /// Composing the transform at `self` with the transform at this tuple
    /// (with matching prefactors) recovers the input.
    pub fn inverse_params(&self) -> QpdtParams {
        QpdtParams {
            a: -self.c,
            b: -self.b,
            c: -self.a,
            d: -self.e,
            e: -self.d,
            mu: self.mu,
        }
    }
}

/// Dunkl kernel E_mu(i*lambda, v) = j_mu(t) + i t / (2(mu+1)) j_{mu+1}(t)
/// with t = lambda*v.
///
/// Symmetric in (lambda, v) exactly (only the product enters), conjugated
/// by lambda -> -lambda, and of modulus <= 1 for mu >= -1/2.
pub fn dunkl_kernel(mu: f64, lambda: f64, v: f64) -> Result<Complex64> {
    if !(mu >= -0.5) {
        return Err(QpdtError::Domain(format!(
            "Dunkl kernel requires mu >= -1/2, got {mu}"
        )));
    }
    let t = lambda * v;
    let (j0, j1) = normalized_bessel_pair(mu, t)?;
    Ok(Complex64::new(j0, t / (2.0 * (mu + 1.0)) * j1))
}

/// The principal-branch power (i b)^{mu+1} = |b|^{mu+1} exp(i sgn(b) pi (mu+1)/2).
///
/// Fixed so that power_ib(b, mu) * power_ib(-b, mu) = |b|^{2mu+2}, which is
/// the identity the inversion formula's prefactor algebra depends on.
pub fn power_ib(b: f64, mu: f64) -> Result<Complex64> {
    if b == 0.0 || !b.is_finite() {
        return Err(QpdtError::Domain(format!(
            "power_ib requires nonzero finite b, got {b}"
        )));
    }
    if !(mu >= -0.5) {
        return Err(QpdtError::Domain(format!(
            "power_ib requires mu >= -1/2, got {mu}"
        )));
    }
    let modulus = b.abs().powf(mu + 1.0);
    let arg = b.signum() * std::f64::consts::FRAC_PI_2 * (mu + 1.0);
    Ok(Complex64::from_polar(modulus, arg))
}

/// Quadratic-phase kernel
/// exp(-i(a v^2 + c w^2 + d v + e w)) * E_mu(-i w/b, v); modulus <= 1.
pub fn qpdt_kernel(params: &QpdtParams, w: f64, v: f64) -> Result<Complex64> {
    params.validate()?;
    let e = dunkl_kernel(params.mu, -w / params.b, v)?;
    let phase = -(params.a * v * v + params.c * w * w + params.d * v + params.e * w);
    Ok(Complex64::from_polar(1.0, phase) * e)
}

/// Kernel evaluation for pre-validated parameters on integration hot paths.
/// Out-of-range arguments surface as NaN, which the quadrature layer rejects
/// instead of silently absorbing.
pub(crate) fn kernel_raw(params: &QpdtParams, w: f64, v: f64) -> Complex64 {
    let e = dunkl_kernel_raw(params.mu, -w / params.b, v);
    let phase = -(params.a * v * v + params.c * w * w + params.d * v + params.e * w);
    Complex64::from_polar(1.0, phase) * e
}

pub(crate) fn dunkl_kernel_raw(mu: f64, lambda: f64, v: f64) -> Complex64 {
    match dunkl_kernel(mu, lambda, v) {
        Ok(z) => z,
        Err(_) => Complex64::new(f64::NAN, f64::NAN),
    }
}
