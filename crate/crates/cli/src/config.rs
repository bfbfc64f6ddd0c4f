//! Flag definitions, figure presets and resolution into a [`RunConfig`].

use std::f64::consts::FRAC_PI_2;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nlcs_core::{BeamSplitterConfig, ModelKind, QuadratureConvention, SpectrumModel, C64};

use crate::output::{fmt_float, Cell, Format};
use crate::CliError;

const DEFAULT_Z_RANGE: (f64, f64, usize) = (0.0, 3.0, 31);
const DEFAULT_X_RANGE: (f64, f64, usize) = (-6.0, 6.0, 241);

#[derive(Parser, Debug)]
#[command(
    name = "nlcs",
    version,
    about = "Nonlinear coherent and squeezed state diagnostics"
)]
pub struct Cli {
    /// Log progress to stderr.
    #[arg(long, short, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Quadrature variances and their product along a z sweep.
    Dispersion(DispersionArgs),
    /// Position density |psi(x)|^2 on a (z, x) grid.
    Density(DensityArgs),
    /// Beam-splitter linear entropy along a z sweep.
    EntropySweep(EntropyArgs),
    /// Fock amplitudes of a single state.
    StateDump(DumpArgs),
    /// Cross-path consistency suites.
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Fig1,
    Fig2,
    Fig3,
    Fig4a,
    Fig4b,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Half,
    #[default]
    Sqrt2,
}

impl From<ConventionArg> for QuadratureConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Half => QuadratureConvention::Half,
            ConventionArg::Sqrt2 => QuadratureConvention::Sqrt2,
        }
    }
}

#[derive(Args, Debug)]
pub struct StateArgs {
    /// Spectrum model: harmonic, quadratic or lq:A,B. Repeatable.
    #[arg(long = "model", value_parser = parse_model)]
    pub models: Vec<SpectrumModel>,
    /// Real part of the squeezing parameter.
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// Imaginary part of the squeezing parameter.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub gamma_im: f64,
    /// Highest Fock level N.
    #[arg(long)]
    pub levels: Option<usize>,
}

#[derive(Args, Debug)]
pub struct ZArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub z_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub z_max: Option<f64>,
    /// Number of grid points, endpoints included.
    #[arg(long)]
    pub z_steps: Option<usize>,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DispersionArgs {
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    #[command(flatten)]
    pub state: StateArgs,
    #[command(flatten)]
    pub z: ZArgs,
    #[arg(long, value_enum)]
    pub convention: Option<ConventionArg>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct DensityArgs {
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    #[command(flatten)]
    pub state: StateArgs,
    #[command(flatten)]
    pub z: ZArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub x_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub x_max: Option<f64>,
    #[arg(long)]
    pub x_steps: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct EntropyArgs {
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    #[command(flatten)]
    pub state: StateArgs,
    #[command(flatten)]
    pub z: ZArgs,
    /// Beam-splitter mixing angle in [0, pi].
    #[arg(long)]
    pub theta: Option<f64>,
    /// Beam-splitter phase.
    #[arg(long, allow_negative_numbers = true)]
    pub phi: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct DumpArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// Real part of the eigenvalue z.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub z: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub z_im: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Truncation level whose entropy drift against 60 levels is reported.
    #[arg(long, default_value_t = nlcs_core::DEFAULT_LEVELS)]
    pub levels: usize,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

pub fn parse_model(s: &str) -> Result<SpectrumModel, String> {
    match s {
        "harmonic" => Ok(SpectrumModel::harmonic()),
        "quadratic" => Ok(SpectrumModel::quadratic()),
        _ => {
            let params = s.strip_prefix("lq:").ok_or_else(|| {
                format!("unknown model {s:?}; expected harmonic, quadratic or lq:A,B")
            })?;
            let (a, b) = params
                .split_once(',')
                .ok_or_else(|| format!("expected lq:A,B, got {s:?}"))?;
            let num = |v: &str| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|e| format!("bad number {v:?} in {s:?}: {e}"))
            };
            SpectrumModel::linear_quadratic(num(a)?, num(b)?).map_err(|e| e.to_string())
        }
    }
}

/// Inverse of [`parse_model`].
pub fn model_spec(m: &SpectrumModel) -> String {
    match m.kind() {
        ModelKind::Harmonic => "harmonic".into(),
        ModelKind::Quadratic => "quadratic".into(),
        ModelKind::LinearQuadratic => format!("lq:{},{}", fmt_float(m.a()), fmt_float(m.b())),
    }
}

/// Name written in the `model` column; `A` and `B` get their own columns.
pub fn model_name(m: &SpectrumModel) -> &'static str {
    match m.kind() {
        ModelKind::Harmonic => "harmonic",
        ModelKind::Quadratic => "quadratic",
        ModelKind::LinearQuadratic => "linear_quadratic",
    }
}

/// Fully resolved settings of a run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: &'static str,
    pub preset: Option<Preset>,
    pub models: Vec<SpectrumModel>,
    pub z_range: (f64, f64, usize),
    pub gamma: C64,
    pub levels: usize,
    pub splitter: BeamSplitterConfig,
    pub convention: QuadratureConvention,
    pub x_range: Option<(f64, f64, usize)>,
}

impl RunConfig {
    pub fn z_grid(&self) -> Vec<f64> {
        grid(self.z_range)
    }

    pub fn x_grid(&self) -> Vec<f64> {
        self.x_range.map(grid).unwrap_or_default()
    }

    /// Key-value record embedded in every output file.
    pub fn record(&self) -> Vec<(String, Cell)> {
        let models: Vec<String> = self.models.iter().map(model_spec).collect();
        let mut rec = vec![
            ("command".to_string(), Cell::Text(self.command.into())),
            (
                "preset".to_string(),
                Cell::Text(
                    self.preset
                        .map_or("none".into(), |p| format!("{p:?}").to_lowercase()),
                ),
            ),
            ("models".to_string(), Cell::Text(models.join(";"))),
            ("gamma_re".to_string(), Cell::Float(self.gamma.re)),
            ("gamma_im".to_string(), Cell::Float(self.gamma.im)),
            ("levels".to_string(), Cell::Int(self.levels as u64)),
            ("theta".to_string(), Cell::Float(self.splitter.theta())),
            ("phi".to_string(), Cell::Float(self.splitter.phi())),
            (
                "convention".to_string(),
                Cell::Text(self.convention.name().into()),
            ),
            ("z_min".to_string(), Cell::Float(self.z_range.0)),
            ("z_max".to_string(), Cell::Float(self.z_range.1)),
            ("z_steps".to_string(), Cell::Int(self.z_range.2 as u64)),
        ];
        if let Some((lo, hi, n)) = self.x_range {
            rec.push(("x_min".to_string(), Cell::Float(lo)));
            rec.push(("x_max".to_string(), Cell::Float(hi)));
            rec.push(("x_steps".to_string(), Cell::Int(n as u64)));
        }
        rec
    }
}

pub fn grid((lo, hi, steps): (f64, f64, usize)) -> Vec<f64> {
    if steps == 1 {
        return vec![lo];
    }
    (0..steps)
        .map(|k| lo + (hi - lo) * k as f64 / (steps - 1) as f64)
        .collect()
}

struct Defaults {
    models: Vec<SpectrumModel>,
    gamma: f64,
    levels: usize,
}

fn preset_defaults(
    preset: Option<Preset>,
    command: &'static str,
    user_models: &[SpectrumModel],
) -> Result<Defaults, CliError> {
    let standard = vec![SpectrumModel::harmonic(), SpectrumModel::quadratic()];
    let Some(p) = preset else {
        return Ok(Defaults {
            models: standard,
            gamma: 0.0,
            levels: nlcs_core::DEFAULT_LEVELS,
        });
    };
    let expected = match p {
        Preset::Fig1 => "dispersion",
        Preset::Fig2 => "density",
        Preset::Fig3 | Preset::Fig4a | Preset::Fig4b => "entropy-sweep",
    };
    if expected != command {
        return Err(CliError::Config(
            format!("preset {p:?} belongs to the {expected} command").to_lowercase(),
        ));
    }
    Ok(match p {
        Preset::Fig1 | Preset::Fig2 => Defaults {
            models: standard,
            gamma: 0.0,
            levels: nlcs_core::DEFAULT_LEVELS,
        },
        Preset::Fig3 => Defaults {
            models: standard,
            gamma: 0.5,
            levels: nlcs_core::DEFAULT_LEVELS,
        },
        Preset::Fig4a | Preset::Fig4b => {
            let lq: Vec<SpectrumModel> = user_models
                .iter()
                .filter(|m| m.kind() == ModelKind::LinearQuadratic)
                .copied()
                .collect();
            if lq.is_empty() {
                return Err(CliError::Config(
                    "fig4 presets need at least one --model lq:A,B; the (A,B) values are not fixed by the preset".into(),
                ));
            }
            let mut models = standard;
            models.extend(lq);
            let gamma = if p == Preset::Fig4a { 0.0 } else { 0.5 };
            Defaults {
                models,
                gamma,
                levels: nlcs_core::DEFAULT_LQ_LEVELS,
            }
        }
    })
}

fn check_range(name: &str, (lo, hi, steps): (f64, f64, usize)) -> Result<(), CliError> {
    if !lo.is_finite() || !hi.is_finite() {
        return Err(CliError::Config(format!("{name} range must be finite")));
    }
    if steps < 1 {
        return Err(CliError::Config(format!("{name}-steps must be at least 1")));
    }
    if lo > hi {
        return Err(CliError::Config(format!(
            "{name}-min {lo} exceeds {name}-max {hi}"
        )));
    }
    Ok(())
}

fn resolve_z(z: &ZArgs) -> Result<(f64, f64, usize), CliError> {
    let (lo, hi, n) = DEFAULT_Z_RANGE;
    let range = (
        z.z_min.unwrap_or(lo),
        z.z_max.unwrap_or(hi),
        z.z_steps.unwrap_or(n),
    );
    check_range("z", range)?;
    Ok(range)
}

fn resolve_common(
    command: &'static str,
    preset: Option<Preset>,
    state: &StateArgs,
    z_range: (f64, f64, usize),
) -> Result<RunConfig, CliError> {
    let defaults = preset_defaults(preset, command, &state.models)?;
    let models = if state.models.is_empty() || matches!(preset, Some(Preset::Fig4a | Preset::Fig4b))
    {
        defaults.models
    } else {
        state.models.clone()
    };
    let gamma = C64::new(state.gamma.unwrap_or(defaults.gamma), state.gamma_im);
    if !gamma.is_finite() || gamma.norm() >= 1.0 {
        return Err(CliError::Config(format!(
            "|gamma| = {} must be below 1",
            gamma.norm()
        )));
    }
    let levels = state.levels.unwrap_or(defaults.levels);
    if levels < 1 {
        return Err(CliError::Config("levels must be at least 1".into()));
    }
    Ok(RunConfig {
        command,
        preset,
        models,
        z_range,
        gamma,
        levels,
        splitter: BeamSplitterConfig::balanced(),
        convention: QuadratureConvention::Sqrt2,
        x_range: None,
    })
}

pub fn resolve_dispersion(args: &DispersionArgs) -> Result<RunConfig, CliError> {
    let mut cfg = resolve_common("dispersion", args.preset, &args.state, resolve_z(&args.z)?)?;
    cfg.convention = args.convention.unwrap_or_default().into();
    Ok(cfg)
}

pub fn resolve_density(args: &DensityArgs) -> Result<RunConfig, CliError> {
    let mut cfg = resolve_common("density", args.preset, &args.state, resolve_z(&args.z)?)?;
    let (lo, hi, n) = DEFAULT_X_RANGE;
    let x = (
        args.x_min.unwrap_or(lo),
        args.x_max.unwrap_or(hi),
        args.x_steps.unwrap_or(n),
    );
    check_range("x", x)?;
    cfg.x_range = Some(x);
    Ok(cfg)
}

pub fn resolve_entropy(args: &EntropyArgs) -> Result<RunConfig, CliError> {
    let mut cfg = resolve_common(
        "entropy-sweep",
        args.preset,
        &args.state,
        resolve_z(&args.z)?,
    )?;
    let theta = args.theta.unwrap_or(FRAC_PI_2);
    let phi = args.phi.unwrap_or(0.0);
    if !phi.is_finite() {
        return Err(CliError::Config("phi must be finite".into()));
    }
    cfg.splitter = BeamSplitterConfig::new(theta, phi)?;
    Ok(cfg)
}

pub fn resolve_dump(args: &DumpArgs) -> Result<(RunConfig, C64), CliError> {
    let z = C64::new(args.z, args.z_im);
    if !z.is_finite() {
        return Err(CliError::Config("z must be finite".into()));
    }
    let mut cfg = resolve_common("state-dump", None, &args.state, (args.z, args.z, 1))?;
    match args.state.models.len() {
        0 => cfg.models = vec![SpectrumModel::harmonic()],
        1 => {}
        _ => return Err(CliError::Config("state-dump takes a single --model".into())),
    }
    Ok((cfg, z))
}
