//! Dirac–Coulomb bound states: levels, radial polynomials, bispinors.
//!
//! Half-integer quantum numbers are carried as doubled integers.
//! The dimensionless radius of a state is ρ = 2r/(r_B N), so in units of
//! λ_C one has r = ρN/(2α).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::PhysicsConfig;
use crate::error::{Error, Result};
use crate::specfun::{factorial, gamma_fn, laguerre, spherical_harmonic, PolynomialCoeffs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sigma {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sigma {
    pub fn sign(self) -> f64 {
        match self {
            Sigma::Plus => 1.0,
            Sigma::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sigma {
        match self {
            Sigma::Plus => Sigma::Minus,
            Sigma::Minus => Sigma::Plus,
        }
    }
}

/// How the radial polynomials are built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Full Dirac–Coulomb parameters.
    #[default]
    Exact,
    /// N → n and γ → κ in the radial polynomials and the normalization,
    /// limit-mode coefficients and tabulated closed forms downstream.
    Paper,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Paper => "paper",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "paper" => Ok(Mode::Paper),
            _ => Err(Error::Config(format!("unknown mode `{s}` (exact|paper)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub n: u32,
    pub two_j: u32,
    pub two_mj: i32,
    pub sigma: Sigma,
}

const ORBITAL_LETTERS: &[u8] = b"SPDFGHIK";

impl QuantumNumbers {
    pub fn new(n: u32, two_j: u32, two_mj: i32, sigma: Sigma) -> Result<Self> {
        let qn = QuantumNumbers {
            n,
            two_j,
            two_mj,
            sigma,
        };
        qn.validate()?;
        Ok(qn)
    }

    /// The state with m_j = +1/2.
    pub fn from_nj(n: u32, two_j: u32, sigma: Sigma) -> Result<Self> {
        QuantumNumbers::new(n, two_j, 1, sigma)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::domain("n must be at least 1"));
        }
        if self.two_j % 2 == 0 || self.two_j > 2 * self.n - 1 {
            return Err(Error::domain(format!(
                "j = {}/2 not in {{1/2, …, n − 1/2}} for n = {}",
                self.two_j, self.n
            )));
        }
        if self.two_mj.rem_euclid(2) != 1 || self.two_mj.unsigned_abs() > self.two_j {
            return Err(Error::domain(format!("m_j = {}/2 incompatible with j", self.two_mj)));
        }
        if self.n_r() == 0 && self.sigma == Sigma::Minus {
            return Err(Error::domain(format!(
                "n = {}, j = {}/2 has n_r = 0 and admits only sigma = +",
                self.n, self.two_j
            )));
        }
        Ok(())
    }

    pub fn j(&self) -> f64 {
        f64::from(self.two_j) / 2.0
    }

    pub fn m_j(&self) -> f64 {
        f64::from(self.two_mj) / 2.0
    }

    pub fn kappa(&self) -> u32 {
        (self.two_j + 1) / 2
    }

    pub fn n_r(&self) -> u32 {
        self.n - self.kappa()
    }

    /// Orbital number of the upper spinor, l = j − σ/2.
    pub fn l(&self) -> u32 {
        match self.sigma {
            Sigma::Plus => (self.two_j - 1) / 2,
            Sigma::Minus => (self.two_j + 1) / 2,
        }
    }

    /// Spectroscopic label such as `2P1/2`.
    pub fn label(&self) -> String {
        format!(
            "{}{}{}/2",
            self.n,
            ORBITAL_LETTERS[self.l() as usize] as char,
            self.two_j
        )
    }

    /// Every state with n ≤ `n_max`, m_j = 1/2.
    pub fn all_up_to(n_max: u32) -> Vec<QuantumNumbers> {
        let mut out = Vec::new();
        for n in 1..=n_max {
            for two_j in (1..2 * n).step_by(2) {
                for sigma in [Sigma::Plus, Sigma::Minus] {
                    if let Ok(qn) = QuantumNumbers::from_nj(n, two_j, sigma) {
                        out.push(qn);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Parses `2S1/2`, `2P3/2`, …; m_j defaults to +1/2.
impl FromStr for QuantumNumbers {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("cannot parse state `{s}` (expected e.g. 2P1/2)"));
        let t = s.trim();
        let split = t.find(|c: char| c.is_ascii_alphabetic()).ok_or_else(bad)?;
        let n: u32 = t[..split].parse().map_err(|_| bad())?;
        let letter = t[split..].chars().next().ok_or_else(bad)?.to_ascii_uppercase();
        let l = ORBITAL_LETTERS
            .iter()
            .position(|&c| c as char == letter)
            .ok_or_else(bad)? as u32;
        let rest = &t[split + 1..];
        let two_j: u32 = rest
            .strip_suffix("/2")
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?;
        let sigma = if two_j == 2 * l + 1 {
            Sigma::Plus
        } else if two_j + 1 == 2 * l {
            Sigma::Minus
        } else {
            return Err(bad());
        };
        QuantumNumbers::from_nj(n, two_j, sigma)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiracLevel {
    pub eps: f64,
    pub cal_n: f64,
    pub gamma_j: f64,
    pub delta_j: f64,
    pub lambda: f64,
    /// ε·mc² in eV (reduced-mass factor applied).
    pub energy: f64,
}

/// γ_κ = √(κ² − α²).
pub fn gamma_kappa(alpha: f64, kappa: f64) -> f64 {
    (kappa * kappa - alpha * alpha).sqrt()
}

/// Δ_j = α²/(κ + γ_κ).
pub fn delta_j(alpha: f64, kappa: f64) -> f64 {
    alpha * alpha / (kappa + gamma_kappa(alpha, kappa))
}

/// N_{n,j} = √((n − Δ_j)² + α²).
pub fn cal_n(alpha: f64, n: f64, kappa: f64) -> f64 {
    let d = n - delta_j(alpha, kappa);
    (d * d + alpha * alpha).sqrt()
}

/// The two closed forms (n − Δ)/N and √(1 − α²/N²).
pub fn eps_forms(alpha: f64, n: u32, kappa: u32) -> (f64, f64) {
    let k = f64::from(kappa);
    let big_n = cal_n(alpha, f64::from(n), k);
    let ratio = (f64::from(n) - delta_j(alpha, k)) / big_n;
    let root = (1.0 - (alpha / big_n).powi(2)).sqrt();
    (ratio, root)
}

pub fn level(qn: &QuantumNumbers, cfg: &PhysicsConfig) -> Result<DiracLevel> {
    qn.validate()?;
    let alpha = cfg.alpha;
    let kappa = f64::from(qn.kappa());
    if !(alpha < kappa) {
        return Err(Error::domain(format!("alpha = {alpha} ≥ κ = {kappa}")));
    }
    let n = f64::from(qn.n);
    let gamma_j = gamma_kappa(alpha, kappa);
    let delta = delta_j(alpha, kappa);
    let big_n = cal_n(alpha, n, kappa);
    let eps = (n - delta) / big_n;
    Ok(DiracLevel {
        eps,
        cal_n: big_n,
        gamma_j,
        delta_j: delta,
        lambda: alpha / (big_n + n - delta),
        energy: eps * cfg.rest_energy * cfg.mass_factor,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialState {
    pub qn: QuantumNumbers,
    pub level: DiracLevel,
    pub mode: Mode,
    /// γ used in ρ^(2γ) and the Laguerre index.
    pub gamma: f64,
    /// N used in the ρ scale.
    pub cal_n: f64,
    pub norm_a: f64,
    /// P^(σ)
    pub p_poly: PolynomialCoeffs,
    /// W^(−σ)
    pub w_poly: PolynomialCoeffs,
    /// a_ν^(1): P² + λ²W²
    pub k1_coeffs: Vec<f64>,
    /// a_ν^(2): P·W
    pub k2_coeffs: Vec<f64>,
    /// 2/(r_B N) in units of 1/λ_C.
    pub rho_scale: f64,
    pub alpha: f64,
}

fn padded(p: &PolynomialCoeffs, len: usize) -> Vec<f64> {
    let mut c = p.coeffs.clone();
    c.resize(len, 0.0);
    c
}

pub fn radial_state(qn: &QuantumNumbers, cfg: &PhysicsConfig) -> Result<RadialState> {
    radial_state_with(qn, cfg, Mode::Exact)
}

pub fn radial_state_with(qn: &QuantumNumbers, cfg: &PhysicsConfig, mode: Mode) -> Result<RadialState> {
    let level = level(qn, cfg)?;
    let kappa = f64::from(qn.kappa());
    let n_r = qn.n_r();
    let nrf = f64::from(n_r);
    let (gamma, big_n) = match mode {
        Mode::Exact => (level.gamma_j, level.cal_n),
        Mode::Paper => (kappa, f64::from(qn.n)),
    };
    let two_g = 2.0 * gamma;
    let l_hi = laguerre(n_r, two_g);
    let l_lo = if n_r == 0 {
        PolynomialCoeffs::zero()
    } else {
        laguerre(n_r - 1, two_g)
    };
    let (p_poly, w_poly) = match qn.sigma {
        Sigma::Plus => {
            let c = (nrf + two_g) / (big_n + kappa);
            let s = l_lo.scale(c);
            (&l_hi - &s, &l_hi + &s)
        }
        Sigma::Minus => {
            let s1 = (nrf * (nrf + two_g)).sqrt() / (big_n + kappa);
            let s2 = ((nrf + two_g) / nrf).sqrt();
            let a = l_hi.scale(s1);
            let b = l_lo.scale(s2);
            (&a - &b, &a + &b)
        }
    };
    let lambda = level.lambda;
    let k1 = &(&p_poly * &p_poly) + &(&w_poly * &w_poly).scale(lambda * lambda);
    let k2 = &p_poly * &w_poly;
    let len = 2 * n_r as usize + 1;
    let a2 = (1.0 + level.eps) * (big_n + kappa) * factorial(n_r)
        / (4.0 * big_n * gamma_fn(nrf + 1.0 + two_g)?);
    Ok(RadialState {
        qn: *qn,
        level,
        mode,
        gamma,
        cal_n: big_n,
        norm_a: a2.sqrt(),
        p_poly,
        w_poly,
        k1_coeffs: padded(&k1, len),
        k2_coeffs: padded(&k2, len),
        rho_scale: 2.0 * cfg.alpha / big_n,
        alpha: cfg.alpha,
    })
}

impl RadialState {
    /// r/λ_C at the given ρ.
    pub fn r_of_rho(&self, rho: f64) -> f64 {
        rho / self.rho_scale
    }

    pub fn rho_of_r(&self, r: f64) -> f64 {
        r * self.rho_scale
    }

    fn envelope(&self, rho: f64) -> f64 {
        self.rho_scale.powf(1.5) * self.norm_a * (-0.5 * rho).exp() * rho.powf(self.gamma - 1.0)
    }

    /// Upper radial function R^(σ) at r (units of λ_C), normalized in λ_C⁻³ᐟ².
    pub fn upper(&self, r: f64) -> f64 {
        let rho = self.rho_of_r(r);
        self.envelope(rho) * self.p_poly.eval(rho)
    }

    /// Lower radial function Q^(−σ) at r, without the λ prefactor.
    pub fn lower(&self, r: f64) -> f64 {
        let rho = self.rho_of_r(r);
        self.envelope(rho) * self.w_poly.eval(rho)
    }

    pub fn k1(&self) -> PolynomialCoeffs {
        PolynomialCoeffs::new(self.k1_coeffs.clone())
    }

    pub fn k2(&self) -> PolynomialCoeffs {
        PolynomialCoeffs::new(self.k2_coeffs.clone())
    }

    /// Break points in ρ covering the bulk of e^(−ρ)ρ^(2γ+2n_r).
    pub fn rho_breakpoints(&self) -> Vec<f64> {
        let peak = 2.0 * self.gamma + 2.0 * f64::from(self.qn.n_r());
        vec![0.0, 0.5 * peak.max(1.0), peak.max(1.0), 2.0 * peak + 4.0, 4.0 * peak + 20.0, f64::INFINITY]
    }
}

/// A² Σ_ν c_ν Γ(2γ + ν + power + 1) = A² ∫₀^∞ e^(−ρ) ρ^(2γ+power) Σ c_ν ρ^ν dρ.
pub fn moment(state: &RadialState, coeffs: &[f64], power: f64) -> Result<f64> {
    let mut sum = 0.0;
    for (nu, c) in coeffs.iter().enumerate() {
        if *c != 0.0 {
            sum += c * gamma_fn(2.0 * state.gamma + nu as f64 + power + 1.0)?;
        }
    }
    Ok(state.norm_a * state.norm_a * sum)
}

/// Γ-moment of the density K^(1); `power = 0` is the normalization integral.
pub fn radial_density_moment(state: &RadialState, power: f64) -> f64 {
    moment(state, &state.k1_coeffs, power).expect("moment arguments exceed zero for power ≥ 0")
}

/// Ω_{l,m_j,±}.
pub fn spherical_spinor(l: u32, two_mj: i32, sigma: Sigma, theta: f64, phi: f64) -> [Complex64; 2] {
    let m1 = (two_mj - 1) / 2;
    let m2 = (two_mj + 1) / 2;
    let two_l1 = f64::from(2 * l + 1);
    let mj2 = f64::from(two_mj);
    let y1 = spherical_harmonic(l, m1, theta, phi);
    let y2 = spherical_harmonic(l, m2, theta, phi);
    match sigma {
        Sigma::Plus => [
            y1 * ((two_l1 + mj2) / (2.0 * two_l1)).max(0.0).sqrt(),
            y2 * ((two_l1 - mj2) / (2.0 * two_l1)).max(0.0).sqrt(),
        ],
        Sigma::Minus => [
            y1 * ((two_l1 - mj2) / (2.0 * two_l1)).max(0.0).sqrt(),
            -y2 * ((two_l1 + mj2) / (2.0 * two_l1)).max(0.0).sqrt(),
        ],
    }
}

/// σ·e_r applied to a two-spinor.
pub fn sigma_r(theta: f64, phi: f64, s: [Complex64; 2]) -> [Complex64; 2] {
    let (st, ct) = theta.sin_cos();
    let e_m = Complex64::from_polar(st, -phi);
    let e_p = Complex64::from_polar(st, phi);
    [s[0] * ct + e_m * s[1], e_p * s[0] - s[1] * ct]
}

/// Ψ(r, θ, φ) = (R Ω, iλQ σ_r Ω), r in units of λ_C.
pub fn assemble_bispinor(state: &RadialState, r: f64, theta: f64, phi: f64) -> [Complex64; 4] {
    let qn = &state.qn;
    let omega = spherical_spinor(qn.l(), qn.two_mj, qn.sigma, theta, phi);
    let lower = sigma_r(theta, phi, omega);
    let up = state.upper(r);
    let lo = Complex64::i() * state.level.lambda * state.lower(r);
    [omega[0] * up, omega[1] * up, lower[0] * lo, lower[1] * lo]
}
