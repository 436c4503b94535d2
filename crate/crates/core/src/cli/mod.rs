//! Command-line front end.
//!
//! Every subcommand prints one table, as CSV (17 significant digits, LF line
//! endings) or JSON. Failures print a one-line JSON error record on stderr.
//! Exit status is 0 on success, 1 on numeric failure or a failed
//! verification, and 2 on usage errors.

mod output;
mod params;
mod verify;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cosmology::{particle_horizon, BoxConvention, CosmologyParams};
use crate::error::Error;
use crate::lattice::{LatticeSumSpec, RegularizedDomain};
use crate::spectra::{solve, CouplingScale, Topology};
use crate::sweep::{cgamma_campaign, find_crossover, run_sweep, SweepConfig, BOHR_RADIUS};

pub use output::{Field, Record};
pub use params::ParamsFile;

/// Column set of the `sweep` table.
pub const SWEEP_HEADER: &[&str] = &[
    "a",
    "L_m",
    "rho",
    "topology",
    "s",
    "e_tilde_abs",
    "eta",
    "ln_eta",
    "clamped",
    "status",
];

const SOLVE_HEADER: &[&str] = &[
    "topology",
    "ell_m",
    "L_m",
    "rho",
    "s",
    "excess",
    "e_tilde_abs",
    "eta_vs_free",
    "ln_eta",
    "clamped",
    "iterations",
    "residual",
    "bracket_lo",
    "bracket_hi",
    "energy_joules",
];
const HORIZON_HEADER: &[&str] = &["a", "l_p_m", "L_m", "quadrature_error"];
const CROSSOVER_HEADER: &[&str] = &[
    "topology",
    "eta_target",
    "a",
    "a_lo",
    "a_hi",
    "L_m",
    "l_p_m",
    "rho",
    "eta",
];
const CGAMMA_HEADER: &[&str] = &[
    "topology",
    "c_gamma",
    "nominal",
    "normalized",
    "spread",
    "samples",
    "rho_min",
    "rho_max",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LengthUnit {
    M,
    Cm,
    Mm,
    Um,
    Nm,
    Pm,
    Angstrom,
}

impl LengthUnit {
    pub fn meters(&self) -> f64 {
        match self {
            LengthUnit::M => 1.0,
            LengthUnit::Cm => 1e-2,
            LengthUnit::Mm => 1e-3,
            LengthUnit::Um => 1e-6,
            LengthUnit::Nm => 1e-9,
            LengthUnit::Pm => 1e-12,
            LengthUnit::Angstrom => 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    /// L = 2 l_p
    Half,
    /// L = l_p
    Full,
}

impl From<Convention> for BoxConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Half => BoxConvention::HalfSideIsHorizon,
            Convention::Full => BoxConvention::SideIsHorizon,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    Lemma1,
    Lemma2,
    Sum1d,
    Shells,
}

fn parse_topology(s: &str) -> Result<Topology, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "toposhift",
    version,
    about = "Bound-state energy shifts on compact flat spaces"
)]
pub struct Cli {
    #[command(flatten)]
    pub run: RunArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand. Unset options fall back to the
/// `--params-file` entry of the same name, then to the built-in default.
#[derive(Debug, Args)]
pub struct RunArgs {
    /// Output format [default: csv]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Flat key=value file with defaults for these options
    #[arg(long, global = true)]
    pub params_file: Option<PathBuf>,
    /// Worker threads for sweeps [default: all cores]
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Hubble constant in km/s/Mpc [default: 67.66]
    #[arg(long, global = true)]
    pub h0: Option<f64>,
    /// Matter density today [default: 0.3111]
    #[arg(long, global = true)]
    pub omega_m0: Option<f64>,
    /// Radiation density today [default: 9.18e-5]
    #[arg(long, global = true)]
    pub omega_r0: Option<f64>,
    /// Dark-energy density today [default: 0.6889]
    #[arg(long, global = true)]
    pub omega_l0: Option<f64>,
    /// Coupling length, in --unit [default: 0.529e-10 m]
    #[arg(long, global = true)]
    pub ell: Option<f64>,
    /// Unit of --ell and --L [default: m]
    #[arg(long, global = true, value_enum)]
    pub unit: Option<LengthUnit>,
    /// Sum modes with |n_i| <= CUTOFF exactly
    #[arg(long, global = true, conflicts_with = "adaptive")]
    pub cutoff: Option<u32>,
    /// Grow the mode cutoff until the tail bound is below --tail-tol [default]
    #[arg(long, global = true)]
    pub adaptive: bool,
    /// Tail tolerance of adaptive mode sums [default: 1e-12]
    #[arg(long, global = true)]
    pub tail_tol: Option<f64>,
    /// Relative tolerance of the root solver [default: 1e-12]
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Box side convention: half (L = 2 l_p) or full (L = l_p) [default: half]
    #[arg(long, global = true, value_enum)]
    pub convention: Option<Convention>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one eigenvalue condition
    Solve {
        #[arg(long, short, value_parser = parse_topology)]
        topology: Topology,
        /// Box side, in --unit
        #[arg(long = "L", conflicts_with = "rho", required_unless_present = "rho")]
        box_length: Option<f64>,
        /// Box side over coupling length
        #[arg(long)]
        rho: Option<f64>,
        /// Particle mass in kg, adds the energy in joules
        #[arg(long)]
        mass: Option<f64>,
    },
    /// Shift versus scale factor on a log grid
    Sweep {
        #[arg(long, default_value = "1e-20")]
        a_min: f64,
        #[arg(long, default_value = "1e-18")]
        a_max: f64,
        #[arg(long, default_value_t = 50)]
        n_points: usize,
        #[arg(long, value_delimiter = ',', value_parser = parse_topology, default_value = "circle,e1,e2")]
        topologies: Vec<Topology>,
    },
    /// Scale factor at which the shift reaches a target
    Crossover {
        #[arg(long, short, value_parser = parse_topology, default_value = "e1")]
        topology: Topology,
        #[arg(long, default_value = "1e-2")]
        eta_target: f64,
        #[arg(long, default_value = "1e-20")]
        a_min: f64,
        #[arg(long, default_value = "1e-18")]
        a_max: f64,
    },
    /// Leading correction coefficients over a rho window
    Cgamma {
        #[arg(long, value_delimiter = ',', value_parser = parse_topology, default_value = "e1,e2,circle")]
        topologies: Vec<Topology>,
        #[arg(long, default_value_t = 20.0)]
        rho_min: f64,
        #[arg(long, default_value_t = 30.0)]
        rho_max: f64,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Particle horizon at one scale factor
    Horizon {
        #[arg(long, short)]
        a: f64,
        #[arg(long, default_value = "1e-12")]
        rel_tol: f64,
    },
    /// Built-in numerical checks
    Verify {
        #[arg(value_enum)]
        kind: VerifyKind,
        /// Argument l of the regularized sums
        #[arg(long, default_value_t = 1.0)]
        l: f64,
        /// Cutoff radius; compared against half of it
        #[arg(long, default_value_t = 60.0)]
        lambda: f64,
    },
}

/// Fully resolved run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub format: Format,
    pub output: Option<PathBuf>,
    pub threads: Option<usize>,
    pub cosmology: CosmologyParams<f64>,
    pub ell_m: f64,
    pub unit: LengthUnit,
    pub spec: LatticeSumSpec,
    pub tol: f64,
    pub convention: BoxConvention,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    /// Library error caused by the inputs.
    Invalid(Error),
    Numeric(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidConfig(_)
            | Error::NonPositiveArgument { .. }
            | Error::WindowOutOfRange { .. }
            | Error::InsufficientSamples { .. }
            | Error::UnsupportedTopology(_)
            | Error::NonPositiveScaleFactor { .. }
            | Error::ScaleFactorOutOfRange { .. }
            | Error::RhoOutOfDomain { .. }
            | Error::CutoffTooSmall { .. } => Failure::Invalid(e),
            e => Failure::Numeric(e),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn pick<T: std::str::FromStr>(
    flag: Option<T>,
    file: &ParamsFile,
    key: &str,
    default: T,
) -> Result<T, Failure>
where
    T::Err: std::fmt::Display,
{
    match flag {
        Some(v) => Ok(v),
        None => Ok(file.get(key).map_err(Failure::Usage)?.unwrap_or(default)),
    }
}

fn pick_enum<T: ValueEnum>(
    flag: Option<T>,
    file: &ParamsFile,
    key: &str,
    default: T,
) -> Result<T, Failure> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match file.get::<String>(key).map_err(Failure::Usage)? {
        Some(s) => {
            T::from_str(&s, true).map_err(|e| Failure::Usage(format!("params file `{key}`: {e}")))
        }
        None => Ok(default),
    }
}

impl RunConfig {
    fn resolve(args: &RunArgs) -> Result<Self, Failure> {
        let file = match &args.params_file {
            Some(p) => ParamsFile::load(p).map_err(Failure::Usage)?,
            None => ParamsFile::default(),
        };
        let defaults = CosmologyParams::<f64>::planck2018();
        let cosmology = CosmologyParams {
            h0: pick(args.h0, &file, "h0", defaults.h0)?,
            omega_m0: pick(args.omega_m0, &file, "omega_m0", defaults.omega_m0)?,
            omega_r0: pick(args.omega_r0, &file, "omega_r0", defaults.omega_r0)?,
            omega_l0: pick(args.omega_l0, &file, "omega_l0", defaults.omega_l0)?,
        };
        let unit = pick_enum(args.unit, &file, "unit", LengthUnit::M)?;
        let ell_m = match args.ell {
            Some(v) => v * unit.meters(),
            None => match file.get::<f64>("ell").map_err(Failure::Usage)? {
                Some(v) => v * unit.meters(),
                None => BOHR_RADIUS,
            },
        };
        let tail_tol = pick(args.tail_tol, &file, "tail_tol", 1e-12)?;
        let cutoff = match (args.cutoff, args.adaptive) {
            (Some(m), _) => Some(m),
            (None, true) => None,
            (None, false) => {
                let file_adaptive = file
                    .get::<bool>("adaptive")
                    .map_err(Failure::Usage)?
                    .unwrap_or(false);
                if file_adaptive {
                    None
                } else {
                    file.get::<u32>("cutoff").map_err(Failure::Usage)?
                }
            }
        };
        let spec = match cutoff {
            Some(m) => LatticeSumSpec::fixed(m),
            None => LatticeSumSpec::adaptive(tail_tol),
        };
        let config = Self {
            format: pick_enum(args.format, &file, "format", Format::Csv)?,
            output: args.output.clone(),
            threads: match args.threads {
                Some(n) => Some(n),
                None => file.get("threads").map_err(Failure::Usage)?,
            },
            cosmology,
            ell_m,
            unit,
            spec,
            tol: pick(args.tol, &file, "tol", 1e-12)?,
            convention: pick_enum(args.convention, &file, "convention", Convention::Half)?.into(),
        };
        config.cosmology.validate()?;
        config.spec.validate()?;
        if !(config.tol > 0.0) {
            return Err(Failure::Usage(format!(
                "tol must be positive, got {}",
                config.tol
            )));
        }
        if config.threads == Some(0) {
            return Err(Failure::Usage("threads must be at least 1".into()));
        }
        CouplingScale::new(config.ell_m)?;
        Ok(config)
    }

    fn ell(&self) -> CouplingScale<f64> {
        CouplingScale::new(self.ell_m).expect("validated in resolve")
    }

    fn sweep_config(
        &self,
        a_min: f64,
        a_max: f64,
        n_points: usize,
        topologies: Vec<Topology>,
    ) -> SweepConfig<f64> {
        SweepConfig {
            a_min,
            a_max,
            n_points,
            topologies,
            ell: self.ell(),
            cosmology: self.cosmology,
            spec: self.spec,
            tol: self.tol,
            convention: self.convention,
        }
    }
}

struct Table {
    header: &'static [&'static str],
    records: Vec<Record>,
    single: bool,
    passed: bool,
}

impl Table {
    fn single(header: &'static [&'static str], record: Record) -> Self {
        Self {
            header,
            records: vec![record],
            single: true,
            passed: true,
        }
    }

    fn many(header: &'static [&'static str], records: Vec<Record>) -> Self {
        Self {
            header,
            records,
            single: false,
            passed: true,
        }
    }
}

fn execute(command: &Command, config: &RunConfig) -> Result<Table, Failure> {
    match command {
        Command::Solve {
            topology,
            box_length,
            rho,
            mass,
        } => {
            let l = match (box_length, rho) {
                (Some(l), None) => l * config.unit.meters(),
                (None, Some(r)) => r * config.ell_m,
                _ => {
                    return Err(Failure::Usage(
                        "exactly one of --L and --rho is required".into(),
                    ))
                }
            };
            let mut r = solve(*topology, config.ell(), l, &config.spec, config.tol)?;
            if let Some(m) = mass {
                r = r.with_mass(*m)?;
            }
            let record = Record::new()
                .with("topology", topology.name())
                .with("ell_m", config.ell_m)
                .with("L_m", l)
                .with("rho", r.rho)
                .with("s", r.s)
                .with("excess", r.excess)
                .with("e_tilde_abs", r.e_tilde_abs)
                .with("eta_vs_free", r.eta_vs_free)
                .with("ln_eta", r.ln_eta)
                .with("clamped", r.underflow_clamped)
                .with("iterations", r.solver_report.iterations)
                .with("residual", r.solver_report.residual)
                .with("bracket_lo", r.solver_report.bracket.0)
                .with("bracket_hi", r.solver_report.bracket.1)
                .with("energy_joules", r.energy_joules);
            Ok(Table::single(SOLVE_HEADER, record))
        }
        Command::Sweep {
            a_min,
            a_max,
            n_points,
            topologies,
        } => {
            let rows =
                run_sweep(&config.sweep_config(*a_min, *a_max, *n_points, topologies.clone()))?;
            let records = rows
                .iter()
                .flat_map(|row| {
                    row.entries.iter().map(move |e| {
                        Record::new()
                            .with("a", row.a)
                            .with("L_m", row.box_length)
                            .with("rho", row.rho)
                            .with("topology", e.topology.name())
                            .with("s", e.s)
                            .with("e_tilde_abs", e.e_tilde_abs)
                            .with("eta", e.eta)
                            .with("ln_eta", e.ln_eta)
                            .with("clamped", e.clamped)
                            .with("status", e.status.as_str())
                    })
                })
                .collect();
            Ok(Table::many(SWEEP_HEADER, records))
        }
        Command::Crossover {
            topology,
            eta_target,
            a_min,
            a_max,
        } => {
            let c = find_crossover(
                *topology,
                *eta_target,
                &config.sweep_config(*a_min, *a_max, 2, vec![*topology]),
            )?;
            let record = Record::new()
                .with("topology", topology.name())
                .with("eta_target", c.eta_target)
                .with("a", c.a)
                .with("a_lo", c.bracket.0)
                .with("a_hi", c.bracket.1)
                .with("L_m", c.box_length)
                .with("l_p_m", c.l_p)
                .with("rho", c.rho)
                .with("eta", c.eta);
            Ok(Table::single(CROSSOVER_HEADER, record))
        }
        Command::Cgamma {
            topologies,
            rho_min,
            rho_max,
            samples,
        } => {
            let estimates = cgamma_campaign(
                topologies,
                (*rho_min, *rho_max),
                *samples,
                &config.spec,
                config.tol,
            )?;
            let records = estimates
                .iter()
                .map(|e| {
                    Record::new()
                        .with("topology", e.topology.name())
                        .with("c_gamma", e.estimate)
                        .with("nominal", e.topology.c_gamma())
                        .with("normalized", e.normalized)
                        .with("spread", e.spread)
                        .with("samples", e.samples.len())
                        .with("rho_min", *rho_min)
                        .with("rho_max", *rho_max)
                })
                .collect();
            Ok(Table::many(CGAMMA_HEADER, records))
        }
        Command::Horizon { a, rel_tol } => {
            let h = particle_horizon(*a, &config.cosmology, *rel_tol)?;
            let record = Record::new()
                .with("a", h.a)
                .with("l_p_m", h.l_p)
                .with("L_m", config.convention.factor() * h.l_p)
                .with("quadrature_error", h.quadrature_error);
            Ok(Table::single(HORIZON_HEADER, record))
        }
        Command::Verify { kind, l, lambda } => {
            let report = match kind {
                VerifyKind::Lemma1 => {
                    verify::resummation(&[RegularizedDomain::FullE1], *l, *lambda)?
                }
                VerifyKind::Lemma2 => verify::resummation(
                    &[RegularizedDomain::FullE2, RegularizedDomain::FullE2Lattice],
                    *l,
                    *lambda,
                )?,
                VerifyKind::Sum1d => verify::sum1d()?,
                VerifyKind::Shells => verify::shell_counts()?,
            };
            Ok(Table {
                header: report.header,
                records: report.records,
                single: false,
                passed: report.passed,
            })
        }
    }
}

fn error_record(kind: &str, message: &str, code: i32) -> String {
    serde_json::json!({ "error": kind, "message": message, "exit_code": code }).to_string()
}

fn report_failure(stderr: &mut dyn Write, failure: Failure) -> i32 {
    // reader went away, e.g. `| head`
    if matches!(&failure, Failure::Io(e) if e.kind() == std::io::ErrorKind::BrokenPipe) {
        return 0;
    }
    let (kind, message, code) = match failure {
        Failure::Usage(m) => ("UsageError".to_owned(), m, 2),
        Failure::Invalid(e) => (e.kind().to_owned(), e.to_string(), 2),
        Failure::Numeric(e) => (e.kind().to_owned(), e.to_string(), 1),
        Failure::Io(e) => ("IoError".to_owned(), e.to_string(), 1),
    };
    let _ = writeln!(stderr, "{}", error_record(&kind, &message, code));
    code
}

fn run_parsed(cli: &Cli, stdout: &mut dyn Write) -> Result<bool, Failure> {
    let config = RunConfig::resolve(&cli.run)?;
    let table = match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Failure::Usage(e.to_string()))?
            .install(|| execute(&cli.command, &config))?,
        None => execute(&cli.command, &config)?,
    };
    match &config.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            output::write_table(
                &mut w,
                config.format,
                table.header,
                &table.records,
                table.single,
            )?;
            w.flush()?;
        }
        None => output::write_table(
            stdout,
            config.format,
            table.header,
            &table.records,
            table.single,
        )?,
    }
    Ok(table.passed)
}

/// Parses `args` (program name first), runs the command and returns the exit
/// status.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let message = e.render().to_string();
            return report_failure(stderr, Failure::Usage(message.trim_end().to_owned()));
        }
    };
    match run_parsed(&cli, stdout) {
        Ok(true) => 0,
        Ok(false) => {
            let _ = writeln!(
                stderr,
                "{}",
                error_record("VerificationFailed", "one or more checks failed", 1)
            );
            1
        }
        Err(f) => report_failure(stderr, f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("toposhift").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn defaults_resolve() {
        let cli = Cli::try_parse_from(["toposhift", "horizon", "-a", "1"]).unwrap();
        let c = RunConfig::resolve(&cli.run).unwrap();
        assert_eq!(c.ell_m, BOHR_RADIUS);
        assert_eq!(c.spec, LatticeSumSpec::adaptive(1e-12));
        assert_eq!(c.cosmology, CosmologyParams::planck2018());
        assert_eq!(c.format, Format::Csv);
    }

    #[test]
    fn flags_override_params_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(
            &path,
            "h0 = 70\ncutoff = 20\nell = 2\nunit = nm\nformat = json\n",
        )
        .unwrap();
        let p = path.to_str().unwrap();
        let cli = Cli::try_parse_from([
            "toposhift",
            "--params-file",
            p,
            "--h0",
            "72",
            "horizon",
            "-a",
            "1",
        ])
        .unwrap();
        let c = RunConfig::resolve(&cli.run).unwrap();
        assert_eq!(c.cosmology.h0, 72.0);
        assert_eq!(c.spec, LatticeSumSpec::fixed(20));
        assert!((c.ell_m - 2e-9).abs() < 1e-24);
        assert_eq!(c.format, Format::Json);
        let cli = Cli::try_parse_from([
            "toposhift",
            "--params-file",
            p,
            "--adaptive",
            "horizon",
            "-a",
            "1",
        ])
        .unwrap();
        assert_eq!(
            RunConfig::resolve(&cli.run).unwrap().spec.mode,
            crate::lattice::SumMode::Adaptive
        );
    }

    #[test]
    fn usage_errors_exit_two() {
        let (code, _, err) = run_str(&["solve", "--topology", "e1"]);
        assert_eq!(code, 2);
        let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"], "UsageError");
        assert_eq!(
            run_str(&["solve", "--topology", "torus", "--rho", "3"]).0,
            2
        );
        assert_eq!(
            run_str(&["solve", "--topology", "e1", "--rho", "3", "--L", "1"]).0,
            2
        );
        assert_eq!(run_str(&["horizon", "-a", "2"]).0, 2);
    }

    #[test]
    fn numeric_errors_exit_one() {
        let (code, out, err) = run_str(&["--omega-r0", "0", "horizon", "-a", "0.5"]);
        assert_eq!(code, 1);
        assert!(out.is_empty());
        let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"], "RadiationRequired");
        assert_eq!(v["exit_code"], 1);
    }

    #[test]
    fn failed_verification_exits_one() {
        let (code, out, _) = run_str(&["verify", "lemma2", "--l", "0.5", "--lambda", "40"]);
        assert_eq!(code, 1);
        assert!(out.contains("full_e2_lattice"));
    }
}
