//! Physical constants, the run configuration and unit conversion.
//!
//! Energies inside the library are dimensionless, measured in units of the
//! electron rest energy mc². Lengths are measured in units of the reduced
//! Compton wavelength λ_C = ħ/mc unless a function says otherwise.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Electron rest energy mc² in eV.
pub const REST_ENERGY_EV: f64 = 510_998.95;
/// Planck constant h in eV·s.
pub const PLANCK_EV_S: f64 = 4.135_667_696e-15;
/// Speed of light in m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Proton to electron mass ratio.
pub const PROTON_ELECTRON_MASS_RATIO: f64 = 1836.152_673_43;
/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
/// Additive constant of the Schwinger infrared cutoff convention.
pub const SCHWINGER_OFFSET: f64 = -2.8118;
/// Default fine-structure constant.
pub const ALPHA_DEFAULT: f64 = 1.0 / 137.036;
/// Environment variable naming a configuration file.
pub const CONFIG_ENV: &str = "LAMBSHIFT_CONFIG";

/// Reduced-mass factor M_p/(M_p + m_e).
pub fn proton_mass_factor() -> f64 {
    PROTON_ELECTRON_MASS_RATIO / (PROTON_ELECTRON_MASS_RATIO + 1.0)
}

/// Convention for the infrared cutoff, which only ever enters as ln(2m/λ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", content = "value")]
pub enum IRCutoff {
    /// ln(2m/λ) = 2 ln(1/α)
    TwoLnInvAlpha,
    /// ln(2m/λ) = ln(1/α²) − 2.8118
    SchwingerShift,
    Explicit(f64),
}

impl IRCutoff {
    pub fn ln_2m_over_lambda(&self, alpha: f64) -> f64 {
        match *self {
            IRCutoff::TwoLnInvAlpha => 2.0 * (1.0 / alpha).ln(),
            IRCutoff::SchwingerShift => 2.0 * (1.0 / alpha).ln() + SCHWINGER_OFFSET,
            IRCutoff::Explicit(v) => v,
        }
    }

    /// The three conventions side by side; `explicit` supplies the third.
    pub fn variants(explicit: f64) -> [IRCutoff; 3] {
        [
            IRCutoff::TwoLnInvAlpha,
            IRCutoff::SchwingerShift,
            IRCutoff::Explicit(explicit),
        ]
    }

    /// ln(m/|E₁|) = ln(2/α²), the Bethe-logarithm scale quoted with the Schwinger numbers.
    pub fn bethe_scale(alpha: f64) -> f64 {
        (2.0 / (alpha * alpha)).ln()
    }
}

impl fmt::Display for IRCutoff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IRCutoff::TwoLnInvAlpha => write!(f, "two-ln"),
            IRCutoff::SchwingerShift => write!(f, "schwinger"),
            IRCutoff::Explicit(v) => write!(f, "explicit:{v}"),
        }
    }
}

impl FromStr for IRCutoff {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "two-ln" => Ok(IRCutoff::TwoLnInvAlpha),
            "schwinger" => Ok(IRCutoff::SchwingerShift),
            _ => {
                let v = s
                    .strip_prefix("explicit:")
                    .ok_or_else(|| Error::Config(format!("unknown cutoff `{s}`")))?;
                let v: f64 = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("bad explicit cutoff `{v}`")))?;
                if !v.is_finite() {
                    return Err(Error::Config("explicit cutoff must be finite".into()));
                }
                Ok(IRCutoff::Explicit(v))
            }
        }
    }
}

/// Change of variable applied to the outer segments of an integration range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndpointMap {
    None,
    /// x = a + s², for (x − a)^(−1/2) behaviour at the lower end.
    SqrtLower,
    /// x = a − ln(1 − t), for e^(−x) tails on [a, ∞).
    ExpUpper,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub singular_endpoint_map: EndpointMap,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-12,
            abs_tol: 0.0,
            max_subdivisions: 4000,
            singular_endpoint_map: EndpointMap::None,
        }
    }
}

impl QuadratureSpec {
    pub fn with_map(mut self, map: EndpointMap) -> Self {
        self.singular_endpoint_map = map;
        self
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::Config("rel_tol must be positive".into()));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(Error::Config("abs_tol must be non-negative".into()));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::Config("max_subdivisions must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicsConfig {
    pub alpha: f64,
    /// mc² in eV.
    pub rest_energy: f64,
    /// h in eV·s; together with `rest_energy` it fixes [`PhysicsConfig::planck_freq`].
    pub planck_ev_s: f64,
    pub cutoff: IRCutoff,
    pub mass_factor: f64,
    pub quadrature: QuadratureSpec,
}

impl Default for PhysicsConfig {
    fn default() -> Self {
        PhysicsConfig {
            alpha: ALPHA_DEFAULT,
            rest_energy: REST_ENERGY_EV,
            planck_ev_s: PLANCK_EV_S,
            cutoff: IRCutoff::TwoLnInvAlpha,
            mass_factor: 1.0,
            quadrature: QuadratureSpec::default(),
        }
    }
}

impl PhysicsConfig {
    pub fn new(alpha: f64) -> Result<Self> {
        let cfg = PhysicsConfig {
            alpha,
            ..PhysicsConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_cutoff(mut self, cutoff: IRCutoff) -> Self {
        self.cutoff = cutoff;
        self
    }

    pub fn with_mass_factor(mut self, mass_factor: f64) -> Self {
        self.mass_factor = mass_factor;
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Config(format!("alpha = {} outside (0, 1)", self.alpha)));
        }
        if !(self.rest_energy > 0.0) {
            return Err(Error::Config("rest_energy must be positive".into()));
        }
        if !(self.planck_ev_s > 0.0) {
            return Err(Error::Config("planck constant must be positive".into()));
        }
        if !(self.mass_factor > 0.0 && self.mass_factor <= 1.0) {
            return Err(Error::Config(format!(
                "mass_factor = {} outside (0, 1]",
                self.mass_factor
            )));
        }
        if let IRCutoff::Explicit(v) = self.cutoff {
            if !v.is_finite() {
                return Err(Error::Config("explicit cutoff must be finite".into()));
            }
        }
        self.quadrature.validate()
    }

    /// ln(2m/λ) under the configured convention.
    pub fn ln_2m_over_lambda(&self) -> f64 {
        self.cutoff.ln_2m_over_lambda(self.alpha)
    }

    /// mc²/h in Hz.
    pub fn planck_freq(&self) -> f64 {
        self.rest_energy / self.planck_ev_s
    }

    /// Loads `path` on top of the defaults.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = PhysicsConfig::default();
        cfg.apply_kv(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Ok(cfg)
    }

    /// Applies `key = value` lines. `#` starts a comment.
    pub fn apply_kv(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let num = || {
                parse_number(value)
                    .ok_or_else(|| Error::Config(format!("line {}: bad number `{value}`", lineno + 1)))
            };
            match key {
                "alpha" => self.alpha = num()?,
                "rest_energy_ev" => self.rest_energy = num()?,
                "planck_ev_s" => self.planck_ev_s = num()?,
                "cutoff" => self.cutoff = value.parse()?,
                "mass_factor" => {
                    self.mass_factor = if value == "proton" {
                        proton_mass_factor()
                    } else {
                        num()?
                    }
                }
                "rel_tol" => self.quadrature.rel_tol = num()?,
                "abs_tol" => self.quadrature.abs_tol = num()?,
                "max_subdivisions" => {
                    self.quadrature.max_subdivisions = value.parse().map_err(|_| {
                        Error::Config(format!("line {}: bad count `{value}`", lineno + 1))
                    })?
                }
                other => {
                    return Err(Error::Config(format!(
                        "line {}: unknown key `{other}`",
                        lineno + 1
                    )))
                }
            }
        }
        self.validate()
    }
}

/// Parses a float, also accepting the `1/x` form used for α.
pub fn parse_number(s: &str) -> Option<f64> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: f64 = num.trim().parse().ok()?;
        let den: f64 = den.trim().parse().ok()?;
        return Some(num / den);
    }
    s.parse().ok()
}

/// Config file path: the explicit argument, else the environment override.
pub fn config_path(explicit: Option<&Path>) -> Option<PathBuf> {
    explicit
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedScales {
    /// ħ/mc in metres.
    pub compton_wavelength: f64,
    /// λ_C/α in metres.
    pub bohr_radius: f64,
    /// r₀ in metres.
    pub r0: f64,
    /// r₀/λ_C = (2α³/15π)^(1/4).
    pub r0_over_compton: f64,
    alpha: f64,
}

impl DerivedScales {
    /// β_{n,j} = (2α/N_{n,j})(2α³/15π)^(1/4), r₀ measured in the state's ρ units.
    pub fn beta(&self, n: u32, two_j: u32) -> f64 {
        let kappa = f64::from(two_j + 1) / 2.0;
        let cal_n = crate::dirac::cal_n(self.alpha, f64::from(n), kappa);
        2.0 * self.alpha / cal_n * self.r0_over_compton
    }
}

pub fn r0_over_compton(alpha: f64) -> f64 {
    (2.0 * alpha.powi(3) / (15.0 * std::f64::consts::PI)).powf(0.25)
}

pub fn derived_scales(cfg: &PhysicsConfig) -> DerivedScales {
    let hbar_c = cfg.planck_ev_s * SPEED_OF_LIGHT / (2.0 * std::f64::consts::PI);
    let compton_wavelength = hbar_c / (cfg.rest_energy * cfg.mass_factor);
    let ratio = r0_over_compton(cfg.alpha);
    DerivedScales {
        compton_wavelength,
        bohr_radius: compton_wavelength / cfg.alpha,
        r0: ratio * compton_wavelength,
        r0_over_compton: ratio,
        alpha: cfg.alpha,
    }
}

/// Converts an energy in units of mc² to MHz.
pub fn energy_to_frequency(e: f64, cfg: &PhysicsConfig) -> f64 {
    e * cfg.mass_factor * cfg.planck_freq() * 1e-6
}
