//! Radiative-correction potentials.
//!
//! The three form-factor style corrections are ζ-integrals over [1, ∞); they
//! are evaluated after ζ = cosh u, which removes the (ζ² − 1)^(−1/2) endpoint
//! singularity. Results are electron potential energies V = −eδφ in units of
//! mc². Radii are either the state variable ρ or r in units of λ_C.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::constants::{r0_over_compton, PhysicsConfig};
use crate::dirac::{level, QuantumNumbers};
use crate::error::{Error, Result};
use crate::quadrature::integrate_points;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrectionKind {
    PhotonPolarization,
    ElectricFormFactor,
    MagneticFormFactor,
    VacuumPolarization,
}

impl CorrectionKind {
    pub const ALL: [CorrectionKind; 4] = [
        CorrectionKind::PhotonPolarization,
        CorrectionKind::ElectricFormFactor,
        CorrectionKind::MagneticFormFactor,
        CorrectionKind::VacuumPolarization,
    ];

    /// Only the magnetic correction carries the Γ·e_r matrix structure.
    pub fn angular_odd(self) -> bool {
        self == CorrectionKind::MagneticFormFactor
    }

    pub fn short(self) -> &'static str {
        match self {
            CorrectionKind::PhotonPolarization => "pp",
            CorrectionKind::ElectricFormFactor => "elec",
            CorrectionKind::MagneticFormFactor => "mag",
            CorrectionKind::VacuumPolarization => "vac",
        }
    }
}

impl fmt::Display for CorrectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short())
    }
}

impl FromStr for CorrectionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pp" | "uehling" => Ok(CorrectionKind::PhotonPolarization),
            "elec" => Ok(CorrectionKind::ElectricFormFactor),
            "mag" => Ok(CorrectionKind::MagneticFormFactor),
            "vac" => Ok(CorrectionKind::VacuumPolarization),
            _ => Err(Error::Config(format!("unknown correction `{s}` (pp|elec|mag|vac)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialSample {
    pub rho: f64,
    pub r_over_compton: f64,
    pub value_mc2: f64,
    pub kind: CorrectionKind,
    pub state: QuantumNumbers,
}

/// (1 + 1/(2ζ²)) tanh²u, the Uehling weight after ζ = cosh u.
pub fn uehling_weight(u: f64) -> f64 {
    let c = u.cosh();
    let t = u.tanh();
    (1.0 + 0.5 / (c * c)) * t * t
}

/// f_elec(ζ) √(ζ² − 1) with ζ = cosh u and `ell4` = ln(4m/λ).
pub fn elec_weight(u: f64, ell4: f64) -> f64 {
    let inv = u.cosh().powi(-2);
    let ln_sinh = u + (-(-2.0 * u).exp_m1()).ln() - std::f64::consts::LN_2;
    2.0 * inv - 3.0 + (2.0 - inv) * (2.0 * ell4 + 2.0 * ln_sinh)
}

/// 1 − (1 + t)e^(−t).
pub fn h_mag(t: f64) -> f64 {
    if t < 0.1 {
        let mut term = t;
        let mut sum = 0.0;
        for k in 2..16 {
            term *= -t / f64::from(k);
            sum -= f64::from(k - 1) * term;
        }
        sum
    } else {
        -(-t).exp_m1() - t * (-t).exp()
    }
}

/// Break points in u for integrands carrying e^(−s cosh u).
pub fn u_breakpoints(s: f64) -> Vec<f64> {
    let mut pts = vec![0.0];
    if s < 1.0 {
        pts.push((1.0 / s).acosh());
    }
    let far = (60.0 / s).max(2.0).acosh();
    if far > *pts.last().unwrap() {
        pts.push(far);
    }
    pts.push(f64::INFINITY);
    pts
}

const EXP_CUTOFF: f64 = 700.0;

/// ∫₀^∞ e^(−s cosh u) w(u) du.
pub fn laplace_u<W: Fn(f64) -> f64>(s: f64, w: W, cfg: &PhysicsConfig) -> Result<f64> {
    let est = integrate_points(
        |u: f64| {
            let arg = s * u.cosh();
            if arg > EXP_CUTOFF {
                0.0
            } else {
                (-arg).exp() * w(u)
            }
        },
        &u_breakpoints(s),
        &cfg.quadrature,
    )?;
    Ok(est.value)
}

fn check_rho(rho: f64) -> Result<()> {
    if rho > 0.0 && rho.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("rho = {rho} must be positive")))
    }
}

fn state_n(qn: &QuantumNumbers, cfg: &PhysicsConfig) -> Result<f64> {
    Ok(level(qn, cfg)?.cal_n)
}

/// Uehling potential −(4α³/3πNρ) ∫₁^∞ e^(−(N/α)ρζ)(1 + 1/2ζ²)√(ζ²−1)/ζ² dζ.
pub fn uehling(rho: f64, qn: &QuantumNumbers, cfg: &PhysicsConfig) -> Result<f64> {
    check_rho(rho)?;
    let n = state_n(qn, cfg)?;
    let a = cfg.alpha;
    let s = n / a * rho;
    Ok(-4.0 * a.powi(3) / (3.0 * PI * n * rho) * laplace_u(s, uehling_weight, cfg)?)
}

/// Uehling potential at r (units of λ_C), independent of any state.
pub fn uehling_r(r: f64, cfg: &PhysicsConfig) -> Result<f64> {
    check_rho(r)?;
    let a = cfg.alpha;
    Ok(-2.0 * a * a / (3.0 * PI * r) * laplace_u(2.0 * r, uehling_weight, cfg)?)
}

/// Electric form-factor potential (α³/πNρ) ∫₁^∞ f_elec(ζ) e^(−(N/α)ζρ) dζ.
pub fn elec_ff(rho: f64, qn: &QuantumNumbers, cfg: &PhysicsConfig) -> Result<f64> {
    check_rho(rho)?;
    let n = state_n(qn, cfg)?;
    let a = cfg.alpha;
    let ell4 = cfg.ln_2m_over_lambda() + std::f64::consts::LN_2;
    let s = n / a * rho;
    Ok(a.powi(3) / (PI * n * rho) * laplace_u(s, |u| elec_weight(u, ell4), cfg)?)
}

/// The scalar (α⁴/πN²) dφ̃/dρ, with dφ̃/dρ = −ρ⁻² ∫₀^∞ h((N/α)ρ cosh u)/cosh²u du.
pub fn mag_ff_radial(rho: f64, qn: &QuantumNumbers, cfg: &PhysicsConfig) -> Result<f64> {
    check_rho(rho)?;
    let n = state_n(qn, cfg)?;
    let a = cfg.alpha;
    Ok(a.powi(4) / (PI * n * n) * dphi_tilde(n / a, rho, cfg)?)
}

/// dφ̃/dρ for the scale b = N/α.
pub fn dphi_tilde(b: f64, rho: f64, cfg: &PhysicsConfig) -> Result<f64> {
    let s = b * rho;
    let est = integrate_points(
        |u: f64| {
            let c = u.cosh();
            if c > 1e150 {
                0.0
            } else {
                h_mag(s * c) / (c * c)
            }
        },
        &u_breakpoints(s),
        &cfg.quadrature,
    )?;
    Ok(-est.value / (rho * rho))
}

/// φ(y) = 1/y + ∫₀^y t²dt/(t⁴+1) − π/(2√2), with the tail series for y ≥ 2.
pub fn vac_phi(y: f64) -> f64 {
    if y < 2.0 {
        let s = SQRT_2 * y;
        let log = 0.5 * ((y * y - s + 1.0) / (y * y + s + 1.0)).ln();
        1.0 / y - PI / (2.0 * SQRT_2)
            + (log + (s - 1.0).atan() + (s + 1.0).atan()) / (2.0 * SQRT_2)
    } else {
        let inv4 = y.powi(-4);
        let mut term = y.powi(-5);
        let mut sum = 0.0;
        for m in 0..40 {
            let add = term / f64::from(5 + 4 * m);
            sum += if m % 2 == 0 { add } else { -add };
            term *= inv4;
            if term < 1e-18 * sum.abs() {
                break;
            }
        }
        sum
    }
}

/// ΔE_vac(r) = −(1/3) x₀⁴/(x²(x⁴ + x₀⁴)) in units of e/λ_C², x = r/λ_C.
pub fn vac_field(r: f64, cfg: &PhysicsConfig) -> Result<f64> {
    check_rho(r)?;
    let x0 = r0_over_compton(cfg.alpha);
    let x04 = x0.powi(4);
    Ok(-x04 / (3.0 * r * r * (r.powi(4) + x04)))
}

/// δφ_vac(r) = −(1/3)(1/x + F(x) − π/(2√2 x₀)) in units of e/λ_C.
pub fn vac_delta_phi(r: f64, cfg: &PhysicsConfig) -> Result<f64> {
    check_rho(r)?;
    let x0 = r0_over_compton(cfg.alpha);
    Ok(-vac_phi(r / x0) / (3.0 * x0))
}

/// V_vac = −eδφ_vac in units of mc².
pub fn vac_potential(r: f64, cfg: &PhysicsConfig) -> Result<f64> {
    Ok(-cfg.alpha * vac_delta_phi(r, cfg)?)
}

/// V_vac at the state variable ρ: (2α²/3N) Φ̃(ρ), Φ̃ = φ(ρ/β)/β.
pub fn vac_potential_rho(rho: f64, qn: &QuantumNumbers, cfg: &PhysicsConfig) -> Result<f64> {
    check_rho(rho)?;
    let n = state_n(qn, cfg)?;
    vac_potential(rho * n / (2.0 * cfg.alpha), cfg)
}

/// Electric form-factor potential at r (units of λ_C).
pub fn elec_r(r: f64, cfg: &PhysicsConfig) -> Result<f64> {
    check_rho(r)?;
    let a = cfg.alpha;
    let ell4 = cfg.ln_2m_over_lambda() + std::f64::consts::LN_2;
    Ok(a * a / (2.0 * PI * r) * laplace_u(2.0 * r, |u| elec_weight(u, ell4), cfg)?)
}

/// Magnetic scalar (α²/4π) dφ/dr at r (units of λ_C).
pub fn mag_r(r: f64, cfg: &PhysicsConfig) -> Result<f64> {
    check_rho(r)?;
    Ok(cfg.alpha.powi(2) / (4.0 * PI) * dphi_tilde(2.0, r, cfg)?)
}

/// Scalar radial profile of one correction at r (units of λ_C).
pub fn potential_r(kind: CorrectionKind, r: f64, cfg: &PhysicsConfig) -> Result<f64> {
    match kind {
        CorrectionKind::PhotonPolarization => uehling_r(r, cfg),
        CorrectionKind::ElectricFormFactor => elec_r(r, cfg),
        CorrectionKind::MagneticFormFactor => mag_r(r, cfg),
        CorrectionKind::VacuumPolarization => vac_potential(r, cfg),
    }
}

/// Scalar radial profile of one correction.
pub fn potential(kind: CorrectionKind, rho: f64, qn: &QuantumNumbers, cfg: &PhysicsConfig) -> Result<f64> {
    match kind {
        CorrectionKind::PhotonPolarization => uehling(rho, qn, cfg),
        CorrectionKind::ElectricFormFactor => elec_ff(rho, qn, cfg),
        CorrectionKind::MagneticFormFactor => mag_ff_radial(rho, qn, cfg),
        CorrectionKind::VacuumPolarization => vac_potential_rho(rho, qn, cfg),
    }
}

pub fn profile(
    kind: CorrectionKind,
    qn: &QuantumNumbers,
    cfg: &PhysicsConfig,
    rhos: &[f64],
) -> Result<Vec<PotentialSample>> {
    let n = state_n(qn, cfg)?;
    rhos.iter()
        .map(|&rho| {
            Ok(PotentialSample {
                rho,
                r_over_compton: rho * n / (2.0 * cfg.alpha),
                value_mc2: potential(kind, rho, qn, cfg)?,
                kind,
                state: *qn,
            })
        })
        .collect()
}

/// Logarithmic ρ grid with `count` points from `lo` to `hi`.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo && count >= 2) {
        return Err(Error::domain(format!("bad grid [{lo}, {hi}] × {count}")));
    }
    let step = (hi / lo).ln() / (count - 1) as f64;
    Ok((0..count).map(|i| lo * (step * i as f64).exp()).collect())
}

/// Small-r form −(2α²/3πx)(ln(1/x) − C − 5/6), x = r/λ_C.
pub fn uehling_small_r(r: f64, alpha: f64) -> f64 {
    -2.0 * alpha * alpha / (3.0 * PI * r) * ((1.0 / r).ln() - crate::constants::EULER_GAMMA - 5.0 / 6.0)
}

/// Large-r form −(α²/4√π) e^(−2x) x^(−5/2).
pub fn uehling_large_r(r: f64, alpha: f64) -> f64 {
    -alpha * alpha / (4.0 * PI.sqrt()) * (-2.0 * r).exp() * r.powf(-2.5)
}
