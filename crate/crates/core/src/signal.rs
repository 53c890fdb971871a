//! Signal carriers: analytic test functions, tabulated signals, and the
//! natural cubic spline that connects the two.

use num_complex::Complex64;

use crate::error::{QpdtError, Result};

/// Anything the transforms can integrate: analytic test functions,
/// splined sample data, or ad-hoc closures.
pub trait Evaluate: Sync {
    fn eval(&self, v: f64) -> Complex64;

    /// Upper bound on the local quadratic-phase rate |d arg / d(v^2)|,
    /// used to size oscillation-aware quadrature. Zero for everything
    /// except chirped signals.
    fn phase_rate(&self) -> f64 {
        0.0
    }

    /// Upper bound on the linear-phase rate, the |d| analogue of
    /// `phase_rate`. Zero unless a modulation wrapper adds one.
    fn linear_phase(&self) -> f64 {
        0.0
    }
}

impl<F> Evaluate for F
where
    F: Fn(f64) -> Complex64 + Sync,
{
    fn eval(&self, v: f64) -> Complex64 {
        self(v)
    }
}

/// Analytic test-function families. All of them are smooth, decay at least
/// super-polynomially, and stay integrable against |v|^{2mu+1} dv for every
/// mu >= -1/2, which is what the theorems assume of their inputs.
#[derive(Debug, Clone, PartialEq)]
pub enum TestFunction {
    /// exp(-v^2 / (2 width^2))
    Gaussian { width: f64 },
    /// exp(-v^2 / (2 width^2)) * exp(i rate v^2)
    ChirpedGaussian { width: f64, rate: f64 },
    /// H_degree(v / width) * exp(-v^2 / (2 width^2)), physicists' Hermite
    HermiteGaussian { degree: u32, width: f64 },
    /// exp(1 - 1/(1 - t^2)) on t = affine map of (lo, hi) to (-1, 1), else 0
    Bump { lo: f64, hi: f64 },
    /// identically zero
    Zero,
}

impl TestFunction {
    pub fn gaussian(width: f64) -> Result<Self> {
        if !(width > 0.0) || !width.is_finite() {
            return Err(QpdtError::Domain(format!(
                "gaussian width must be positive, got {width}"
            )));
        }
        Ok(TestFunction::Gaussian { width })
    }

    pub fn chirped_gaussian(width: f64, rate: f64) -> Result<Self> {
        if !(width > 0.0) || !width.is_finite() || !rate.is_finite() {
            return Err(QpdtError::Domain(format!(
                "chirped gaussian needs positive width and finite rate, got ({width}, {rate})"
            )));
        }
        Ok(TestFunction::ChirpedGaussian { width, rate })
    }

    pub fn hermite_gaussian(degree: u32, width: f64) -> Result<Self> {
        if !(width > 0.0) || !width.is_finite() || degree > 12 {
            return Err(QpdtError::Domain(format!(
                "hermite gaussian needs positive width and degree <= 12, got ({degree}, {width})"
            )));
        }
        Ok(TestFunction::HermiteGaussian { degree, width })
    }

    pub fn bump(lo: f64, hi: f64) -> Result<Self> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(QpdtError::Domain(format!(
                "bump support must be a finite interval, got ({lo}, {hi})"
            )));
        }
        Ok(TestFunction::Bump { lo, hi })
    }

    /// Builds a test function from a CLI-style (name, numeric args) pair.
    /// Missing arguments take natural defaults; excess arguments are an error.
    pub fn from_spec(name: &str, args: &[f64]) -> Result<Self> {
        let arg = |i: usize, default: f64| args.get(i).copied().unwrap_or(default);
        match name {
            "gaussian" => {
                too_many(args, 1, name)?;
                TestFunction::gaussian(arg(0, 1.0))
            }
            "chirped_gaussian" | "chirped-gaussian" => {
                too_many(args, 2, name)?;
                TestFunction::chirped_gaussian(arg(0, 1.0), arg(1, 1.0))
            }
            "hermite_gaussian" | "hermite-gaussian" => {
                too_many(args, 2, name)?;
                let deg = arg(0, 2.0);
                if deg < 0.0 || deg.fract() != 0.0 {
                    return Err(QpdtError::Domain(format!(
                        "hermite degree must be a nonnegative integer, got {deg}"
                    )));
                }
                TestFunction::hermite_gaussian(deg as u32, arg(1, 1.0))
            }
            "bump" => {
                too_many(args, 2, name)?;
                TestFunction::bump(arg(0, -1.0), arg(1, 1.0))
            }
            "zero" => {
                too_many(args, 0, name)?;
                Ok(TestFunction::Zero)
            }
            other => Err(QpdtError::Domain(format!(
                "unknown test function '{other}' \
                 (expected gaussian, chirped_gaussian, hermite_gaussian, bump, or zero)"
            ))),
        }
    }

    /// The dilation f_k(v) = f(v/k) for k > 0 stays inside the family.
    pub fn dilate(&self, k: f64) -> Result<TestFunction> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(QpdtError::Domain(format!(
                "dilation factor must be positive, got {k}"
            )));
        }
        Ok(match *self {
            TestFunction::Gaussian { width } => TestFunction::Gaussian { width: k * width },
            TestFunction::ChirpedGaussian { width, rate } => TestFunction::ChirpedGaussian {
                width: k * width,
                rate: rate / (k * k),
            },
            TestFunction::HermiteGaussian { degree, width } => TestFunction::HermiteGaussian {
                degree,
                width: k * width,
            },
            TestFunction::Bump { lo, hi } => TestFunction::Bump {
                lo: k * lo,
                hi: k * hi,
            },
            TestFunction::Zero => TestFunction::Zero,
        })
    }
}

fn too_many(args: &[f64], max: usize, name: &str) -> Result<()> {
    if args.len() > max {
        return Err(QpdtError::Domain(format!(
            "test function '{name}' takes at most {max} parameter(s), got {}",
            args.len()
        )));
    }
    Ok(())
}

fn hermite(n: u32, x: f64) -> f64 {
    let mut h0 = 1.0;
    if n == 0 {
        return h0;
    }
    let mut h1 = 2.0 * x;
    for j in 1..n {
        let h2 = 2.0 * x * h1 - 2.0 * j as f64 * h0;
        h0 = h1;
        h1 = h2;
    }
    h1
}

impl Evaluate for TestFunction {
    fn eval(&self, v: f64) -> Complex64 {
        match *self {
            TestFunction::Gaussian { width } => {
                let s = v / width;
                Complex64::new((-0.5 * s * s).exp(), 0.0)
            }
            TestFunction::ChirpedGaussian { width, rate } => {
                let s = v / width;
                Complex64::from_polar((-0.5 * s * s).exp(), rate * v * v)
            }
            TestFunction::HermiteGaussian { degree, width } => {
                let s = v / width;
                Complex64::new(hermite(degree, s) * (-0.5 * s * s).exp(), 0.0)
            }
            TestFunction::Bump { lo, hi } => {
                let t = (2.0 * v - (lo + hi)) / (hi - lo);
                if t.abs() >= 1.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new((1.0 - 1.0 / (1.0 - t * t)).exp(), 0.0)
                }
            }
            TestFunction::Zero => Complex64::new(0.0, 0.0),
        }
    }

    fn phase_rate(&self) -> f64 {
        match *self {
            TestFunction::ChirpedGaussian { rate, .. } => rate.abs(),
            _ => 0.0,
        }
    }
}

/// A signal tabulated on a strictly increasing grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    pub grid: Vec<f64>,
    pub values: Vec<Complex64>,
    pub mu: f64,
}

impl SampledSignal {
    pub fn new(grid: Vec<f64>, values: Vec<Complex64>, mu: f64) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(QpdtError::Domain(format!(
                "grid ({}) and values ({}) lengths differ",
                grid.len(),
                values.len()
            )));
        }
        if grid.len() < 2 {
            return Err(QpdtError::Domain(
                "a sampled signal needs at least two samples".into(),
            ));
        }
        for pair in grid.windows(2) {
            if !(pair[0] < pair[1]) {
                return Err(QpdtError::Domain(format!(
                    "grid must be strictly increasing; saw {} then {}",
                    pair[0], pair[1]
                )));
            }
        }
        if grid.iter().any(|x| !x.is_finite())
            || values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(QpdtError::Domain(
                "sampled signal contains non-finite entries".into(),
            ));
        }
        Ok(SampledSignal { grid, values, mu })
    }

    pub fn from_fn<S: Evaluate + ?Sized>(grid: Vec<f64>, mu: f64, f: &S) -> Result<Self> {
        let values = grid.iter().map(|&v| f.eval(v)).collect();
        SampledSignal::new(grid, values, mu)
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.grid[0], *self.grid.last().unwrap())
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }
}

/// Natural cubic spline through complex samples. Evaluation at a grid knot
/// returns the tabulated value exactly; between knots the usual O(h^4)
/// interpolation error applies.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<Complex64>,
    // second derivatives at the knots (natural: zero at both ends)
    m: Vec<Complex64>,
}

impl CubicSpline {
    pub fn new(signal: &SampledSignal) -> Result<Self> {
        let n = signal.len();
        let x = signal.grid.clone();
        let y = signal.values.clone();
        let mut m = vec![Complex64::new(0.0, 0.0); n];
        if n > 2 {
            // Thomas solve of the tridiagonal natural-spline system; the
            // matrix is real and diagonally dominant, the right side complex.
            let k = n - 2;
            let mut diag = vec![0.0; k];
            let mut upper = vec![0.0; k];
            let mut rhs = vec![Complex64::new(0.0, 0.0); k];
            for i in 0..k {
                let h0 = x[i + 1] - x[i];
                let h1 = x[i + 2] - x[i + 1];
                diag[i] = (h0 + h1) / 3.0;
                upper[i] = h1 / 6.0;
                rhs[i] = (y[i + 2] - y[i + 1]) / h1 - (y[i + 1] - y[i]) / h0;
            }
            for i in 1..k {
                // lower[i] = upper[i-1] by symmetry of the system
                let l = upper[i - 1] / diag[i - 1];
                diag[i] -= l * upper[i - 1];
                let prev = rhs[i - 1];
                rhs[i] -= prev * l;
            }
            m[k] = rhs[k - 1] / diag[k - 1];
            for i in (0..k - 1).rev() {
                m[i + 1] = (rhs[i] - m[i + 2] * upper[i]) / diag[i];
            }
        }
        Ok(CubicSpline { x, y, m })
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.x[0], *self.x.last().unwrap())
    }

    /// Strict evaluation: points outside the tabulated domain are an
    /// interpolation error.
    pub fn eval(&self, xq: f64) -> Result<Complex64> {
        let (lo, hi) = self.domain();
        if !(xq >= lo && xq <= hi) {
            return Err(QpdtError::Interpolation(format!(
                "query {xq} lies outside the tabulated domain [{lo}, {hi}]"
            )));
        }
        Ok(self.eval_inside(xq))
    }

    /// Compact-support reading for sampled inputs: zero outside the domain.
    pub fn eval_or_zero(&self, xq: f64) -> Complex64 {
        let (lo, hi) = self.domain();
        if !(xq >= lo && xq <= hi) {
            return Complex64::new(0.0, 0.0);
        }
        self.eval_inside(xq)
    }

    fn eval_inside(&self, xq: f64) -> Complex64 {
        if xq == *self.x.last().unwrap() {
            return *self.y.last().unwrap();
        }
        // last interval whose left knot is <= xq
        let i = match self.x.binary_search_by(|p| p.total_cmp(&xq)) {
            Ok(j) => return self.y[j],
            Err(j) => j - 1,
        };
        let h = self.x[i + 1] - self.x[i];
        let t = xq - self.x[i];
        let b = (self.y[i + 1] - self.y[i]) / h - (self.m[i] * 2.0 + self.m[i + 1]) * (h / 6.0);
        let c = self.m[i] * 0.5;
        let d = (self.m[i + 1] - self.m[i]) / (6.0 * h);
        self.y[i] + (b + (c + d * t) * t) * t
    }
}

impl Evaluate for CubicSpline {
    fn eval(&self, v: f64) -> Complex64 {
        self.eval_or_zero(v)
    }
}
