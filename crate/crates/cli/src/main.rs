//! qpdt: apply quadratic-phase Dunkl transforms to signal files or named
//! test functions, run the seeded verification suites, and emit preset
//! parameter tuples.
//!
//! Exit codes: 0 success, 1 verification suite failure, 2 invalid flags or
//! domain violations, 3 I/O and parse failures, 4 numerical failures.

mod io;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use qpdt_core::kernels::QpdtParams;
use qpdt_core::ops::{convolve, translate};
use qpdt_core::quadrature::IntegrationConfig;
use qpdt_core::signal::{CubicSpline, Evaluate, SampledSignal, TestFunction};
use qpdt_core::suites::run_suite;
use qpdt_core::transform::{forward, inverse, inverse_rule, preset, Preset};

use io::{read_signal, write_signal, CliError, Format};

#[derive(Parser)]
#[command(name = "qpdt", version, about = "Quadratic-phase Dunkl transform toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the transform (or its inverse) to a signal
    Transform(TransformArgs),
    /// Generalized translation of a signal by a fixed offset
    Translate(TranslateArgs),
    /// Convolution of two signals
    Convolve(ConvolveArgs),
    /// Run a named verification suite with a seeded case generator
    Verify(VerifyArgs),
    /// Print a preset's parameter tuple and postfactor as JSON
    Preset(PresetArgs),
}

/// Parameter tuple flags, either given directly or through a preset. With
/// `--preset linear-canonical` the --a/--b/--c flags are read as the
/// transform's matrix entries; with `--preset qpft` all five are the
/// quadratic-phase coefficients.
#[derive(Args)]
struct ParamArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    b: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    c: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    d: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    e: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    mu: f64,
    /// dunkl | fresnel | linear-canonical | fractional-dunkl | qpft | fourier
    #[arg(long)]
    preset: Option<String>,
    /// Angle for --preset fractional-dunkl
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    /// Parameter for --preset fresnel
    #[arg(long, allow_negative_numbers = true)]
    tau: Option<f64>,
}

impl ParamArgs {
    /// Resolved tuple plus the constant postfactor the preset contributes
    /// (1 for raw parameters).
    fn resolve(&self) -> Result<(QpdtParams, Complex64), CliError> {
        let Some(name) = &self.preset else {
            let params = QpdtParams::new(self.a, self.b, self.c, self.d, self.e, self.mu)?;
            return Ok((params, Complex64::new(1.0, 0.0)));
        };
        let spec = match name.as_str() {
            "dunkl" => Preset::Dunkl { mu: self.mu },
            "fresnel" => Preset::Fresnel {
                tau: self
                    .tau
                    .ok_or_else(|| CliError::Usage("--preset fresnel needs --tau".into()))?,
                mu: self.mu,
            },
            "linear-canonical" => Preset::LinearCanonical {
                a: self.a,
                b: self.b,
                c: self.c,
                mu: self.mu,
            },
            "fractional-dunkl" => Preset::FractionalDunkl {
                theta: self.theta.ok_or_else(|| {
                    CliError::Usage("--preset fractional-dunkl needs --theta".into())
                })?,
                mu: self.mu,
            },
            "qpft" => Preset::Qpft {
                a: self.a,
                b: self.b,
                c: self.c,
                d: self.d,
                e: self.e,
            },
            "fourier" => Preset::Fourier,
            other => {
                return Err(CliError::Usage(format!(
                    "unknown preset '{other}'; choose dunkl, fresnel, linear-canonical, \
                     fractional-dunkl, qpft, or fourier"
                )))
            }
        };
        Ok(preset(&spec)?)
    }
}

/// Output grid and quadrature configuration flags.
#[derive(Args)]
struct GridArgs {
    #[arg(long, default_value_t = -8.0, allow_negative_numbers = true)]
    wmin: f64,
    #[arg(long, default_value_t = 8.0, allow_negative_numbers = true)]
    wmax: f64,
    #[arg(long, default_value_t = 257)]
    wpoints: usize,
    /// Quadrature panels per integration window
    #[arg(long)]
    panels: Option<usize>,
    /// Gauss-Legendre nodes per panel
    #[arg(long)]
    order: Option<usize>,
    /// Integration half-width
    #[arg(long = "L")]
    l: Option<f64>,
}

impl GridArgs {
    fn grid(&self) -> Result<Vec<f64>, CliError> {
        if self.wpoints < 2 {
            return Err(CliError::Usage(format!(
                "--wpoints must be at least 2, got {}",
                self.wpoints
            )));
        }
        if !(self.wmin < self.wmax) || !self.wmin.is_finite() || !self.wmax.is_finite() {
            return Err(CliError::Usage(format!(
                "need finite --wmin < --wmax, got {} and {}",
                self.wmin, self.wmax
            )));
        }
        let step = (self.wmax - self.wmin) / (self.wpoints - 1) as f64;
        Ok((0..self.wpoints)
            .map(|i| self.wmin + step * i as f64)
            .collect())
    }

    fn config(&self) -> Result<IntegrationConfig, CliError> {
        let base = IntegrationConfig::default();
        let cfg = IntegrationConfig {
            panels: self.panels.unwrap_or(base.panels),
            order: self.order.unwrap_or(base.order),
            half_width: self.l.unwrap_or(base.half_width),
            ..base
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Input selection: a tabulated file or a named analytic test function.
#[derive(Args)]
struct InputArgs {
    /// Signal file (CSV `v,re,im` or JSON), cubic-spline interpolated and
    /// zero outside its grid
    #[arg(long, conflicts_with = "function", required_unless_present = "function")]
    input: Option<PathBuf>,
    /// Named test function, e.g. gaussian:1.0, chirped-gaussian:1.0,0.5,
    /// hermite-gaussian:2,1.0, bump:-1,1, zero
    #[arg(long = "fn", value_name = "NAME[:ARGS]")]
    function: Option<String>,
}

enum InputSignal {
    Analytic(TestFunction),
    Sampled(SampledSignal, CubicSpline),
}

impl InputSignal {
    fn load(args: &InputArgs, mu: f64) -> Result<Self, CliError> {
        if let Some(path) = &args.input {
            let signal = read_signal(path, mu)?;
            let spline = CubicSpline::new(&signal)?;
            return Ok(InputSignal::Sampled(signal, spline));
        }
        let spec = args.function.as_deref().expect("clap requires one input");
        Ok(InputSignal::Analytic(parse_fn_spec(spec)?))
    }
}

impl Evaluate for InputSignal {
    fn eval(&self, v: f64) -> Complex64 {
        match self {
            InputSignal::Analytic(f) => f.eval(v),
            InputSignal::Sampled(_, spline) => spline.eval_or_zero(v),
        }
    }

    fn phase_rate(&self) -> f64 {
        match self {
            InputSignal::Analytic(f) => f.phase_rate(),
            InputSignal::Sampled(..) => 0.0,
        }
    }

    fn linear_phase(&self) -> f64 {
        match self {
            InputSignal::Analytic(f) => f.linear_phase(),
            InputSignal::Sampled(..) => 0.0,
        }
    }
}

fn parse_fn_spec(spec: &str) -> Result<TestFunction, CliError> {
    let (name, rest) = match spec.split_once(':') {
        Some((n, r)) => (n, r),
        None => (spec, ""),
    };
    let mut args = Vec::new();
    if !rest.is_empty() {
        for piece in rest.split(',') {
            args.push(piece.trim().parse::<f64>().map_err(|_| {
                CliError::Usage(format!("bad numeric argument '{piece}' in --fn {spec}"))
            })?);
        }
    }
    Ok(TestFunction::from_spec(name, &args)?)
}

#[derive(Args)]
struct OutputArgs {
    /// Output file; standard output when omitted
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

impl OutputArgs {
    fn write(&self, signal: &SampledSignal) -> Result<(), CliError> {
        match &self.output {
            Some(path) => {
                let file = fs::File::create(path)
                    .map_err(|e| CliError::Io(format!("cannot create {}: {e}", path.display())))?;
                write_signal(&mut std::io::BufWriter::new(file), signal, self.format)
            }
            None => {
                let stdout = std::io::stdout();
                write_signal(&mut stdout.lock(), signal, self.format)
            }
        }
    }
}

#[derive(Args)]
struct TransformArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    output: OutputArgs,
    /// Apply the inverse transform: the input is read as a tabulated
    /// transform and the output grid is the signal domain
    #[arg(long)]
    inverse: bool,
}

#[derive(Args)]
struct TranslateArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    output: OutputArgs,
    /// Translation offset
    #[arg(long, allow_negative_numbers = true)]
    at: f64,
}

#[derive(Args)]
struct ConvolveArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    input: InputArgs,
    /// Second factor as a signal file
    #[arg(long, conflicts_with = "gfn", required_unless_present = "gfn")]
    g: Option<PathBuf>,
    /// Second factor as a named test function
    #[arg(long, value_name = "NAME[:ARGS]")]
    gfn: Option<String>,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// parseval | plancherel | roundtrip | heisenberg | young |
    /// kernel-bounds | reductions | translation | all
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Write the verification report as JSON
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct PresetArgs {
    /// dunkl | fresnel | linear-canonical | fractional-dunkl | qpft | fourier
    #[arg(long)]
    name: String,
    #[command(flatten)]
    params: ParamArgs,
}

fn main() -> ExitCode {
    init_threads();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Transform(args) => cmd_transform(args),
        Command::Translate(args) => cmd_translate(args),
        Command::Convolve(args) => cmd_convolve(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Preset(args) => cmd_preset(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("qpdt: {e}");
            ExitCode::from(e.code() as u8)
        }
    }
}

/// QPDT_THREADS caps the worker pool; default is the available cores.
fn init_threads() {
    if let Ok(raw) = std::env::var("QPDT_THREADS") {
        if let Ok(n) = raw.parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn cmd_transform(args: TransformArgs) -> Result<u8, CliError> {
    let (params, postfactor) = args.params.resolve()?;
    let grid = args.grid.grid()?;
    let cfg = args.grid.config()?;
    let result = if args.inverse {
        // the tabulated input is the named transform; peel the preset's
        // postfactor off before inverting
        let mut tabulated = match InputSignal::load(&args.input, params.mu)? {
            InputSignal::Sampled(signal, _) => signal,
            InputSignal::Analytic(f) => {
                let v_max = grid.iter().fold(0.0_f64, |m, &v| m.max(v.abs()));
                let rule = inverse_rule(&params, v_max, &cfg)?;
                SampledSignal::from_fn(rule.nodes.clone(), params.mu, &f)?
            }
        };
        if postfactor != Complex64::new(1.0, 0.0) {
            for z in &mut tabulated.values {
                *z /= postfactor;
            }
        }
        inverse(&params, &tabulated, &grid, &cfg)?
    } else {
        let f = InputSignal::load(&args.input, params.mu)?;
        let mut spectrum = forward(&params, &f, &grid, &cfg)?;
        if postfactor != Complex64::new(1.0, 0.0) {
            for z in &mut spectrum.values {
                *z *= postfactor;
            }
        }
        spectrum
    };
    args.output.write(&result)?;
    Ok(0)
}

fn cmd_translate(args: TranslateArgs) -> Result<u8, CliError> {
    let (params, _) = args.params.resolve()?;
    let grid = args.grid.grid()?;
    let cfg = args.grid.config()?;
    let f = InputSignal::load(&args.input, params.mu)?;
    let shifted = translate(&params, &f, args.at, &grid, &cfg)?;
    args.output.write(&shifted)?;
    Ok(0)
}

fn cmd_convolve(args: ConvolveArgs) -> Result<u8, CliError> {
    let (params, _) = args.params.resolve()?;
    let grid = args.grid.grid()?;
    let cfg = args.grid.config()?;
    let f = InputSignal::load(&args.input, params.mu)?;
    let g_args = InputArgs {
        input: args.g.clone(),
        function: args.gfn.clone(),
    };
    let g = InputSignal::load(&g_args, params.mu)?;
    let conv = convolve(&params, &f, &g, &grid, &cfg)?;
    args.output.write(&conv)?;
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, CliError> {
    let cfg = IntegrationConfig::default();
    let report = run_suite(&args.suite, args.seed, &cfg)?;
    for case in &report.cases {
        println!(
            "{} {}: measured {:.6e}, bound {:.6e}, tol {:.1e}",
            if case.pass { "pass" } else { "FAIL" },
            case.name,
            case.measured,
            case.bound,
            case.tol,
        );
    }
    println!(
        "suite {}: {} ({} cases, {:.2}s)",
        report.suite,
        report.aggregate,
        report.cases.len(),
        report.runtime_seconds
    );
    if let Some(path) = &args.report {
        let json = serde_json::to_string_pretty(&report)
            .map_err(|e| CliError::Io(format!("cannot serialize report: {e}")))?;
        fs::write(path, json + "\n")
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_preset(args: PresetArgs) -> Result<u8, CliError> {
    let merged = ParamArgs {
        preset: Some(args.name.clone()),
        ..args.params
    };
    let (params, postfactor) = merged.resolve()?;
    let doc = serde_json::json!({
        "a": params.a,
        "b": params.b,
        "c": params.c,
        "d": params.d,
        "e": params.e,
        "mu": params.mu,
        "postfactor": [postfactor.re, postfactor.im],
    });
    println!("{doc}");
    Ok(0)
}
