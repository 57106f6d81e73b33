//! Command-line driver: TOML configuration, parameter sweeps, validation
//! and the laboratory-estimate report.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 a validation
//! check failed, 3 a quadrature missed its tolerance.

pub mod output;
pub mod repro;
pub mod validate;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Deserialize;
use thiserror::Error;

use crate::densities::{
    self as dens, continuity_residual, ContinuityGrid, DensityError, DensityReport, Dimension, Distribution, Drive,
    FieldProfile, Integrand, Kind, Part, QuadOptions,
};
use crate::model::units::{self, SiParams};
use crate::model::{ModelError, ParamSet, SCALAR_FIELDS};
use crate::Vec3;
use output::{write_csv, write_json, Cell, Row};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_TOLERANCE: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    #[default]
    Natural,
    Si,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Geometry {
    #[value(name = "2d")]
    Planar,
    #[value(name = "3d")]
    Bulk,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub parameter: String,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    #[serde(default)]
    pub scale: Scale,
}

impl Sweep {
    pub fn check(&self) -> Result<(), CliError> {
        if !SCALAR_FIELDS.contains(&self.parameter.as_str()) {
            return Err(CliError::Usage(format!(
                "unknown sweep parameter `{}`; expected one of: {}",
                self.parameter,
                SCALAR_FIELDS.join(", ")
            )));
        }
        if self.steps == 0 {
            return Err(CliError::Usage("sweep steps must be at least 1".into()));
        }
        if self.scale == Scale::Log && (self.min <= 0.0 || self.max <= 0.0) {
            return Err(CliError::Usage("log sweep needs positive bounds".into()));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        let n = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                let t = i as f64 / n;
                if i + 1 == self.steps {
                    return self.max;
                }
                match self.scale {
                    Scale::Linear => self.min + (self.max - self.min) * t,
                    Scale::Log => (self.min.ln() + (self.max / self.min).ln() * t).exp(),
                }
            })
            .collect()
    }
}

fn z_axis() -> [f64; 3] {
    [0.0, 0.0, 1.0]
}

/// Run configuration read from TOML. See `docs/config.md`.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub units: Units,
    #[serde(default)]
    pub params: ParamSet,
    /// SI parameters, used when `units = "si"`
    pub si: Option<SiParams>,
    /// overrides `params.mu` as a multiple of `m`
    pub mu_over_m: Option<f64>,
    pub sweep: Option<Sweep>,
    /// column subset; empty keeps every column
    #[serde(default)]
    pub outputs: Vec<String>,
    #[serde(default)]
    pub output_format: Format,
    pub output_path: Option<PathBuf>,
    /// spin axis for bulk results
    #[serde(default = "z_axis")]
    pub axis: [f64; 3],
    #[serde(default)]
    pub grad_mu: [f64; 3],
    /// also integrate the defining momentum integrals
    #[serde(default)]
    pub quadrature: bool,
    /// also report the divergence of the spin current under the configured
    /// (uniform) electric field
    #[serde(default)]
    pub continuity: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        toml::from_str("").expect("empty config")
    }
}

impl RunConfig {
    pub fn from_toml(s: &str) -> Result<Self, CliError> {
        let c: RunConfig = toml::from_str(s).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        if let Some(sw) = &c.sweep {
            sw.check()?;
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let s = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        Self::from_toml(&s)
    }

    /// Natural-unit parameters before any sweep.
    pub fn base_params(&self) -> Result<ParamSet, CliError> {
        let mut p = match self.units {
            Units::Natural => self.params.clone(),
            Units::Si => self
                .si
                .as_ref()
                .ok_or_else(|| CliError::Usage("units = \"si\" needs an [si] table".into()))?
                .to_natural(),
        };
        if let Some(r) = self.mu_over_m {
            p.mu = r * p.m;
        }
        Ok(p)
    }

    pub fn points(&self) -> Result<Vec<ParamSet>, CliError> {
        let base = self.base_params()?;
        let pts = match &self.sweep {
            None => vec![base],
            Some(sw) => {
                sw.check()?;
                sw.values()
                    .into_iter()
                    .map(|v| {
                        let mut p = base.clone();
                        p.set_scalar(&sw.parameter, v);
                        p
                    })
                    .collect()
            }
        };
        for p in &pts {
            p.validate()?;
        }
        Ok(pts)
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Density(#[from] DensityError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Density(DensityError::Tolerance { .. }) => EXIT_TOLERANCE,
            CliError::Io(_) | CliError::Csv(_) => EXIT_USAGE,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "spinrot", version, about = "Spin densities, spin currents and spin Hall conductivities of Dirac fermions in rotating frames")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// TOML run configuration
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// output file (stdout when absent)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// worker threads for sweeps
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// read parameters from the [si] table and add SI-converted columns
    #[arg(long, global = true)]
    pub si_units: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Planar conductor: conductivities, spin density and spin currents
    Conductivity2d,
    /// Bulk conductor: spin density and spin currents along a spin axis
    Densities3d,
    /// Sweep one parameter, overriding the configured sweep
    Sweep {
        #[arg(long, value_enum, default_value = "2d")]
        geometry: Geometry,
        #[arg(long)]
        parameter: String,
        #[arg(long)]
        min: f64,
        #[arg(long)]
        max: f64,
        #[arg(long, default_value_t = 11)]
        steps: usize,
        #[arg(long, value_enum, default_value = "linear")]
        scale: Scale,
    },
    /// Run the oracle checks
    Validate {
        #[arg(long, value_enum, default_value = "quick")]
        level: LevelArg,
        #[arg(long, hide = true, value_enum)]
        fixture: Option<FixtureArg>,
    },
    /// Compare computed laboratory estimates with the quoted ones
    ReproPaper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Quick,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FixtureArg {
    CorruptCalbSign,
}

fn unit_pair(g: Geometry) -> (&'static str, &'static str, &'static str, &'static str) {
    // (density, current, consistency, SI current)
    match g {
        Geometry::Planar => ("E/L", "E/L", "1/(E L)", "A/m"),
        Geometry::Bulk => ("E/L^2", "E/L^2", "1/(E L^2)", "A/m^2"),
    }
}

fn push_si(row: &mut Row, g: Geometry, p: &ParamSet, n: f64, j_eq: &Vec3, j_neq: &Vec3, cons: f64) {
    let (_, _, _, amp) = unit_pair(g);
    let dens_unit = if g == Geometry::Planar { "J s/m^2" } else { "J s/m^3" };
    row.push("n_spin_si", dens_unit, units::spin_density_to_si(n));
    row.push_vec("j_eq_si", amp, &j_eq.map(|v| units::spin_current_to_ampere(v, p.q)));
    row.push_vec("j_neq_si", amp, &j_neq.map(|v| units::spin_current_to_ampere(v, p.q)));
    row.push("consistency_si", "1/(J s)", units::consistency_coeff_to_si(cons));
}

fn quad_columns(row: &mut Row, g: Geometry, p: &ParamSet, axis: &Vec3, grad_mu: &Vec3) -> Result<(), DensityError> {
    let (nu, ju, _, _) = unit_pair(g);
    let dim = if g == Geometry::Planar { Dimension::Two } else { Dimension::Three };
    let o = QuadOptions::default();
    let q = |k, d, gm: Vec3| {
        dens::quad_density(&Integrand::spin(k, d, dim, *axis), p, &Drive { grad_mu: gm, dmu_dt: 0.0 }, p.temperature, &o)
    };
    let n = q(Kind::Density, Distribution::F0, Vec3::zeros())?;
    let je = q(Kind::Current, Distribution::F0, Vec3::zeros())?;
    let jn = q(Kind::Current, Distribution::F1, *grad_mu)?;
    row.push("n_spin_quad", nu, n.scalar());
    row.push_vec("j_eq_quad", ju, &je.value);
    row.push_vec("j_neq_quad", ju, &jn.value);
    row.push("quad_imag", "1", n.imag.max(je.imag).max(jn.imag));
    Ok(())
}

/// One output row for the planar conductor.
pub fn conductivity2d_row(p: &ParamSet, cfg: &RunConfig) -> Result<Row, DensityError> {
    let gm = Vec3::from(cfg.grad_mu);
    let r = DensityReport::two_d(p, &gm)?;
    let q4 = p.q / (4.0 * std::f64::consts::PI);
    let mut row = Row::echo(p);
    row.push_vec("grad_mu", "E/L", &gm);
    row.push("sigma_sh", "q", r.sigma_sh);
    row.push("sigma_sh_q4pi", "q/4pi", r.sigma_sh / q4);
    row.push("sigma_sh1", "q", r.sigma_sh1);
    row.push("sigma_sh1_q4pi", "q/4pi", r.sigma_sh1.map(|s| s / q4));
    row.push("ohm_coeff", "q", r.ohm_coeff);
    row.push("ohm_pole", "1", r.ohm_pole);
    row.push("a1", "q", r.a1);
    row.push("a2", "q", r.a2);
    row.push("n_spin", "E/L", r.n_spin);
    row.push_vec("j_eq", "E/L", &r.j_eq);
    row.push_vec("j_neq", "E/L", &r.j_neq);
    row.push("consistency", "1/(E L)", r.consistency);
    if cfg.continuity {
        let c = continuity_residual(p, &FieldProfile::uniform(p.e_field), &ContinuityGrid::default(), Part::Total, Dimension::Two)?;
        row.push("continuity_residual", "1", c.residual);
    }
    if cfg.quadrature {
        quad_columns(&mut row, Geometry::Planar, p, &Vec3::z(), &gm)?;
    }
    if cfg.units == Units::Si {
        push_si(&mut row, Geometry::Planar, p, r.n_spin, &r.j_eq, &r.j_neq, r.consistency);
    }
    Ok(row)
}

/// One output row for the bulk conductor.
pub fn densities3d_row(p: &ParamSet, cfg: &RunConfig) -> Result<Row, DensityError> {
    let gm = Vec3::from(cfg.grad_mu);
    let axis = Vec3::from(cfg.axis);
    let r = DensityReport::three_d(p, &axis, &gm)?;
    let mut row = Row::echo(p);
    row.push_vec("grad_mu", "E/L", &gm);
    row.push_vec("axis", "1", &axis);
    row.push("n_spin", "E/L^2", r.n_spin);
    row.push_vec("j_eq", "E/L^2", &r.j_eq);
    row.push_vec("j_neq", "E/L^2", &r.j_neq);
    row.push("sigma_perp", "q/L", r.sigma_perp_sh);
    row.push("b1", "q/L", r.b1);
    row.push("b2", "q/L", r.b2);
    row.push("consistency", "1/(E L^2)", r.consistency);
    if cfg.continuity {
        let c = continuity_residual(p, &FieldProfile::uniform(p.e_field), &ContinuityGrid::default(), Part::Total, Dimension::Three)?;
        row.push("continuity_residual", "1", c.residual);
    }
    if cfg.quadrature {
        quad_columns(&mut row, Geometry::Bulk, p, &axis, &gm)?;
    }
    if cfg.units == Units::Si {
        push_si(&mut row, Geometry::Bulk, p, r.n_spin, &r.j_eq, &r.j_neq, r.consistency);
    }
    Ok(row)
}

/// Evaluate every sweep point in parallel (on `pool` when given); rows keep
/// sweep order.
pub fn table(cfg: &RunConfig, g: Geometry, pool: Option<&rayon::ThreadPool>) -> Result<Vec<Row>, CliError> {
    let pts = cfg.points()?;
    let eval = || -> Result<Vec<Row>, DensityError> {
        pts.par_iter()
            .map(|p| match g {
                Geometry::Planar => conductivity2d_row(p, cfg),
                Geometry::Bulk => densities3d_row(p, cfg),
            })
            .collect()
    };
    let rows = match pool {
        Some(pool) => pool.install(eval)?,
        None => eval()?,
    };
    if cfg.outputs.is_empty() {
        return Ok(rows);
    }
    rows.iter()
        .map(|r| r.select(&cfg.outputs).map_err(|n| CliError::Usage(format!("unknown output column `{n}`"))))
        .collect()
}

pub fn repro_rows() -> Vec<Row> {
    repro::report()
        .into_iter()
        .map(|r| {
            let mut row = Row::default();
            row.push("id", "", Cell::Text(r.id.into()));
            row.push("quoted", r.unit, r.quoted);
            row.push("computed", r.unit, r.computed);
            row.push("agrees", "", r.agrees);
            row.push("citation", "", Cell::Text(r.citation.into()));
            row.push("convention", "", Cell::Text(r.convention));
            row
        })
        .collect()
}

fn emit(rows: &[Row], format: Format, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut buf = Vec::new();
    match format {
        Format::Csv => write_csv(rows, &mut buf)?,
        Format::Json => write_json(rows, &mut buf)?,
    }
    match out {
        Some(path) => fs::write(path, buf)?,
        None => stdout.write_all(&buf)?,
    }
    Ok(())
}

fn execute(cli: Cli, pool: Option<&rayon::ThreadPool>, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if cli.si_units {
        cfg.units = Units::Si;
    }
    let format = cli.format.unwrap_or(cfg.output_format);
    let out = cli.out.clone().or_else(|| cfg.output_path.clone());
    let rows = match cli.command {
        Command::Conductivity2d => table(&cfg, Geometry::Planar, pool)?,
        Command::Densities3d => table(&cfg, Geometry::Bulk, pool)?,
        Command::Sweep { geometry, parameter, min, max, steps, scale } => {
            let sw = Sweep { parameter, min, max, steps, scale };
            sw.check()?;
            cfg.sweep = Some(sw);
            table(&cfg, geometry, pool)?
        }
        Command::ReproPaper => repro_rows(),
        Command::Validate { level, fixture } => {
            let level = match level {
                LevelArg::Quick => validate::Level::Quick,
                LevelArg::Full => validate::Level::Full,
            };
            let fixture = fixture.map(|FixtureArg::CorruptCalbSign| validate::Fixture::CorruptCalbSign);
            let checks = validate::run(level, fixture);
            for c in &checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                writeln!(stdout, "{tag} {:<28} value {:.3e} tolerance {:.1e}  {}", c.id, c.value, c.tolerance, c.detail)?;
            }
            return Ok(if checks.iter().any(|c| c.numerical_failure) {
                EXIT_TOLERANCE
            } else if checks.iter().all(|c| c.passed) {
                EXIT_OK
            } else {
                EXIT_VALIDATION
            });
        }
    };
    emit(&rows, format, out.as_deref(), stdout)?;
    Ok(EXIT_OK)
}

/// Parse arguments, run, and return the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
            } else {
                let _ = write!(stdout, "{e}");
            }
            return code;
        }
    };
    let pool = match cli.jobs {
        None => None,
        Some(0) => {
            let _ = writeln!(stderr, "error: --jobs must be at least 1");
            return EXIT_USAGE;
        }
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(p) => Some(p),
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_USAGE;
            }
        },
    };
    match execute(cli, pool.as_ref(), stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
