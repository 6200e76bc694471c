//! Command line front end.
//!
//! Configuration is layered: built-in defaults, then the key/value file named
//! by `--config` or `$LAMBSHIFT_CONFIG`, then individual flags.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::constants::{config_path, parse_number, proton_mass_factor, IRCutoff, PhysicsConfig};
use crate::dirac::{Mode, QuantumNumbers};
use crate::error::{Error, Result};
use crate::lamb::{calibrate_cutoff, DChoice, LAMB_EXPERIMENT_MHZ};
use crate::potentials::{log_grid, profile, CorrectionKind};
use crate::report::{emit, lamb_report, matrix_elements, spectrum, Format, Report};

#[derive(Debug, Parser)]
#[command(name = "lambshift", version, about = "Radiative corrections to the hydrogen Dirac spectrum and the Lamb shift")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Fine-structure constant; accepts `1/137.036`.
    #[arg(long, global = true)]
    pub alpha: Option<String>,
    /// two-ln | schwinger | explicit:<ln(2m/lambda)>
    #[arg(long, global = true)]
    pub cutoff: Option<String>,
    /// Reduced-mass factor, or `proton` for M_p/(M_p + m_e).
    #[arg(long, global = true)]
    pub mass_factor: Option<String>,
    #[arg(long, global = true, value_parser = parse_mode, default_value = "exact")]
    pub mode: Mode,
    #[arg(long, global = true, value_parser = parse_format, default_value = "table")]
    pub format: Format,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StateSelection {
    /// Comma-separated labels such as `2S1/2,2P1/2`.
    #[arg(long, value_delimiter = ',')]
    pub states: Vec<String>,
    /// Every (n, j, σ) with n up to this value, used when `--states` is absent.
    #[arg(long, default_value_t = 2)]
    pub n_max: u32,
}

impl StateSelection {
    fn resolve(&self) -> Result<Vec<QuantumNumbers>> {
        if self.states.is_empty() {
            if self.n_max == 0 {
                return Err(Error::Config("--n-max must be at least 1".into()));
            }
            Ok(QuantumNumbers::all_up_to(self.n_max))
        } else {
            self.states.iter().map(|s| s.parse()).collect()
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dirac–Coulomb levels.
    Spectrum(StateSelection),
    /// Diagonal matrix elements of the four corrections.
    MatrixElements(StateSelection),
    /// Splitting between two levels plus the cutoff-convention table.
    Lamb {
        #[arg(long, default_value = "2S1/2")]
        hi: String,
        #[arg(long, default_value = "2P1/2")]
        lo: String,
    },
    /// Correction potential sampled on a logarithmic ρ grid.
    PotentialProfile {
        /// pp | elec | mag | vac
        #[arg(long, default_value = "pp")]
        kind: String,
        #[arg(long, default_value = "1S1/2")]
        state: String,
        #[arg(long, default_value_t = 1e-4)]
        rho_min: f64,
        #[arg(long, default_value_t = 10.0)]
        rho_max: f64,
        #[arg(long, default_value_t = 50)]
        points: usize,
    },
    /// ln(2m/λ) inferred from a measured splitting.
    Calibrate {
        #[arg(long, default_value_t = LAMB_EXPERIMENT_MHZ)]
        target_mhz: f64,
        /// printed | recomputed
        #[arg(long, default_value = "printed")]
        d: String,
    },
}

fn parse_mode(s: &str) -> std::result::Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> std::result::Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_d_choice(s: &str) -> Result<DChoice> {
    match s {
        "printed" => Ok(DChoice::Printed),
        "recomputed" => Ok(DChoice::Recomputed),
        _ => Err(Error::Config(format!("unknown D choice `{s}` (printed|recomputed)"))),
    }
}

/// Defaults, then the config file, then flags.
pub fn resolve_config(g: &GlobalArgs) -> Result<PhysicsConfig> {
    let mut cfg = match config_path(g.config.as_deref()) {
        Some(path) => PhysicsConfig::from_file(&path)?,
        None => PhysicsConfig::default(),
    };
    if let Some(a) = &g.alpha {
        cfg.alpha = parse_number(a).ok_or_else(|| Error::Config(format!("bad --alpha `{a}`")))?;
    }
    if let Some(c) = &g.cutoff {
        cfg.cutoff = c.parse::<IRCutoff>()?;
    }
    if let Some(m) = &g.mass_factor {
        cfg.mass_factor = if m == "proton" {
            proton_mass_factor()
        } else {
            parse_number(m).ok_or_else(|| Error::Config(format!("bad --mass-factor `{m}`")))?
        };
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn execute(cli: &Cli) -> Result<()> {
    let cfg = resolve_config(&cli.global)?;
    let mode = cli.global.mode;
    let format = cli.global.format;
    let out = cli.global.out.as_deref();
    match &cli.command {
        Command::Spectrum(sel) => {
            let rows = spectrum(&sel.resolve()?, &cfg)?;
            emit(&Report::new("spectrum", &cfg, mode, rows), format, out)
        }
        Command::MatrixElements(sel) => {
            let rows = matrix_elements(&sel.resolve()?, &cfg, mode)?;
            emit(&Report::new("matrix-elements", &cfg, mode, rows), format, out)
        }
        Command::Lamb { hi, lo } => {
            let data = lamb_report(&hi.parse()?, &lo.parse()?, &cfg, mode)?;
            emit(&Report::new("lamb", &cfg, mode, data), format, out)
        }
        Command::PotentialProfile {
            kind,
            state,
            rho_min,
            rho_max,
            points,
        } => {
            let kind: CorrectionKind = kind.parse()?;
            let grid = log_grid(*rho_min, *rho_max, *points)?;
            let samples = profile(kind, &state.parse()?, &cfg, &grid)?;
            emit(&Report::new("potential-profile", &cfg, mode, samples), format, out)
        }
        Command::Calibrate { target_mhz, d } => {
            let cal = calibrate_cutoff(*target_mhz, &cfg, parse_d_choice(d)?)?;
            emit(&Report::new("calibrate", &cfg, mode, cal), format, out)
        }
    }
}

/// Parses `args` (program name first) and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
