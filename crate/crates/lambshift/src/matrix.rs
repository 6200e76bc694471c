//! Matrix elements of the radiative corrections over Dirac–Coulomb states.
//!
//! The main path composes Γ-moments of the radial polynomials with the
//! one-dimensional coefficients C_μ (and 𝒥_μ for the vacuum term). A direct
//! radial quadrature of the potentials in physical r serves as an independent
//! path and also yields the off-diagonal elements.

use std::f64::consts::{LN_2, PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::constants::{r0_over_compton, PhysicsConfig, QuadratureSpec, EULER_GAMMA};
use crate::dirac::{radial_state_with, Mode, QuantumNumbers, RadialState, Sigma};
use crate::error::{Error, Result};
use crate::potentials::{elec_weight, potential_r, uehling_weight, vac_phi, CorrectionKind};
use crate::quadrature::integrate_points;
use crate::specfun::{digamma_int, factorial, gamma_fn, gamma_real, sin_pi, trigamma_int};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CmuCoefficient {
    pub kind: CorrectionKind,
    pub mu: f64,
    pub value: f64,
    pub alpha_over_n: f64,
}

const U_BREAKS: [f64; 5] = [0.0, 0.5, 2.0, 8.0, f64::INFINITY];

/// C_μ(x) = ∫₁^∞ w(ζ)/(ζ + x)^μ dζ for the three form-factor kernels,
/// written in u with ζ = cosh u.
pub fn c_mu_at(kind: CorrectionKind, mu: f64, x: f64, cfg: &PhysicsConfig) -> Result<f64> {
    if !(mu > 0.0) {
        return Err(Error::domain(format!("mu = {mu} must be positive")));
    }
    let ell4 = cfg.ln_2m_over_lambda() + LN_2;
    let weight: Box<dyn Fn(f64) -> f64> = match kind {
        CorrectionKind::PhotonPolarization => Box::new(uehling_weight),
        CorrectionKind::ElectricFormFactor => Box::new(move |u| elec_weight(u, ell4)),
        CorrectionKind::MagneticFormFactor => Box::new(|u: f64| u.cosh().powi(-2)),
        CorrectionKind::VacuumPolarization => {
            return Err(Error::domain("vacuum polarization has no C_mu; use vac_j_integral"))
        }
    };
    let est = integrate_points(
        |u: f64| {
            if u > 700.0 {
                0.0
            } else {
                weight(u) * (u.cosh() + x).powf(-mu)
            }
        },
        &U_BREAKS,
        &cfg.quadrature,
    )?;
    Ok(est.value)
}

/// C_μ with x = α/N of the state; `Mode::Paper` takes the α/N → 0 limit.
pub fn c_mu(
    kind: CorrectionKind,
    mu: f64,
    qn: &QuantumNumbers,
    cfg: &PhysicsConfig,
    mode: Mode,
) -> Result<CmuCoefficient> {
    let lv = crate::dirac::level(qn, cfg)?;
    let x = cfg.alpha / lv.cal_n;
    let value = match mode {
        Mode::Exact => c_mu_at(kind, mu, x, cfg)?,
        Mode::Paper => c_mu_at(kind, mu, 0.0, cfg)?,
    };
    Ok(CmuCoefficient {
        kind,
        mu,
        value,
        alpha_over_n: x,
    })
}

/// Φ̃(ρ) = φ(ρ/β)/β.
pub fn tilde_phi(rho: f64, beta: f64) -> f64 {
    vac_phi(rho / beta) / beta
}

/// Path (a): 𝒥_μ = ∫₀^∞ Φ̃(ρ) e^(−ρ) ρ^μ dρ by adaptive quadrature.
pub fn vac_j_quadrature(mu: f64, beta: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(beta > 0.0 && mu > 0.0) {
        return Err(Error::domain(format!("vac_j needs beta > 0 and mu > 0 (got {beta}, {mu})")));
    }
    let mut pts = vec![0.0, 0.1 * beta, beta, 2.0 * beta, 10.0 * beta, 100.0 * beta, 1e-2, 0.1, 1.0, 10.0, 60.0];
    pts.retain(|p| *p < 100.0);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts.push(f64::INFINITY);
    Ok(integrate_points(|rho: f64| tilde_phi(rho, beta) * (-rho).exp() * rho.powf(mu), &pts, spec)?.value)
}

/// Mellin transform ∫₀^∞ φ(y) y^s dy = π/(4(s+1) sin(πs/4)), continued in s.
fn mellin_phi(s: f64) -> f64 {
    PI / (4.0 * (s + 1.0) * sin_pi(s / 4.0))
}

const MELLIN_TERMS: usize = 130;
const MELLIN_POLES: usize = 30;

/// Path (b): the convergent residue series
/// 𝒥_μ = β^μ Σ_k (−β)^k/k! M(μ+k) + Σ_m (−1)^m β^(4+4m) Γ(μ−4−4m)/(5+4m),
/// with coincident poles merged analytically.
pub fn vac_j_mellin(mu: f64, beta: f64) -> Result<f64> {
    if !(beta > 0.0 && mu > 0.0) {
        return Err(Error::domain(format!("vac_j needs beta > 0 and mu > 0 (got {beta}, {mu})")));
    }
    // (k0, m, ε) for each coincidence μ + k0 ≈ 4 + 4m
    let poles = MELLIN_POLES.max(((mu + MELLIN_TERMS as f64) / 4.0).ceil() as usize);
    let mut pairs: Vec<(usize, usize, f64)> = Vec::new();
    for m in 0..poles {
        let s0 = (4 + 4 * m) as f64;
        let k0f = s0 - mu;
        let k0 = k0f.round();
        if k0 >= 0.0 && (k0f - k0).abs() < 1e-6 && (k0 as usize) < MELLIN_TERMS {
            pairs.push((k0 as usize, m, mu - (s0 - k0)));
        }
    }
    let ln_beta = beta.ln();
    let mut total = 0.0;
    for k in 0..MELLIN_TERMS {
        if pairs.iter().any(|p| p.0 == k) {
            continue;
        }
        let s = mu + k as f64;
        let mag = (s * ln_beta - crate::specfun::ln_gamma(k as f64 + 1.0)?).exp();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * mag * mellin_phi(s);
    }
    for m in 0..poles {
        if pairs.iter().any(|p| p.1 == m) {
            continue;
        }
        let s0 = (4 + 4 * m) as f64;
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let pw = (s0 * ln_beta).exp();
        let arg = mu - s0;
        if pw == 0.0 || (arg < 0.5 && (arg - arg.round()).abs() < 1e-6) {
            continue;
        }
        total += sign * pw * gamma_real(mu - s0)? / (s0 + 1.0);
    }
    for &(k0, m, eps) in &pairs {
        let s0 = (4 + 4 * m) as f64;
        let c = 1.0 / (factorial(k0 as u32) * (s0 + 1.0));
        let p1 = digamma_int(1 + k0 as u32);
        let q1 = PI * PI / 6.0 - trigamma_int(1 + k0 as u32) / 2.0;
        let p2 = ln_beta - 1.0 / (s0 + 1.0);
        let q2 = PI * PI / 96.0 + 0.5 / (s0 + 1.0).powi(2);
        let val = if eps == 0.0 {
            c * (p1 - p2)
        } else {
            c * ((p1 * eps + q1 * eps * eps).exp_m1() - (p2 * eps + q2 * eps * eps).exp_m1()) / eps
        };
        let sign = if (m + k0) % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * (s0 * ln_beta).exp() * val;
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VacJ {
    pub mu: f64,
    pub beta: f64,
    pub quadrature: f64,
    pub series: f64,
}

impl VacJ {
    pub fn rel_agreement(&self) -> f64 {
        ((self.quadrature - self.series) / self.series).abs()
    }
}

/// 𝒥_μ by both paths, β taken from the state.
pub fn vac_j_integral(mu: f64, qn: &QuantumNumbers, cfg: &PhysicsConfig) -> Result<VacJ> {
    let beta = state_beta(crate::dirac::level(qn, cfg)?.cal_n, cfg.alpha);
    Ok(VacJ {
        mu,
        beta,
        quadrature: vac_j_quadrature(mu, beta, &cfg.quadrature)?,
        series: vac_j_mellin(mu, beta)?,
    })
}

/// β = (2α/N)(2α³/15π)^(1/4).
pub fn state_beta(cal_n: f64, alpha: f64) -> f64 {
    2.0 * alpha / cal_n * r0_over_compton(alpha)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixElementResult {
    pub qn: QuantumNumbers,
    pub kind: CorrectionKind,
    pub mode: Mode,
    pub value_quadrature: f64,
    pub value_closed_form: Option<f64>,
    pub rel_discrepancy: Option<f64>,
    pub method_notes: String,
}

impl MatrixElementResult {
    /// The value a report should use under `mode`.
    pub fn value(&self) -> f64 {
        match (self.mode, self.value_closed_form) {
            (Mode::Paper, Some(c)) => c,
            _ => self.value_quadrature,
        }
    }
}

/// |q − c| / max(|q|, α⁷).
pub fn rel_discrepancy(q: f64, c: f64, alpha: f64) -> f64 {
    (q - c).abs() / q.abs().max(alpha.powi(7))
}

fn prefactor_sum(
    state: &RadialState,
    coeffs: &[f64],
    f: impl Fn(f64) -> Result<f64>,
) -> Result<f64> {
    let mut sum = 0.0;
    for (nu, a) in coeffs.iter().enumerate() {
        if *a != 0.0 {
            sum += a * f(2.0 * state.gamma + nu as f64)?;
        }
    }
    Ok(state.norm_a.powi(2) * sum)
}

/// Diagonal element from Γ-moments and C_μ / 𝒥_μ.
pub fn moment_element(state: &RadialState, kind: CorrectionKind, cfg: &PhysicsConfig) -> Result<f64> {
    let a = cfg.alpha;
    let n = state.cal_n;
    let x = a / n;
    let cx = match state.mode {
        Mode::Exact => x,
        Mode::Paper => 0.0,
    };
    let c = |mu: f64| c_mu_at(kind, mu, cx, cfg);
    match kind {
        CorrectionKind::PhotonPolarization => Ok(-4.0 * a.powi(3) / (3.0 * PI * n)
            * prefactor_sum(state, &state.k1_coeffs, |mu| Ok(gamma_fn(mu)? * x.powf(mu) * c(mu)?))?),
        CorrectionKind::ElectricFormFactor => Ok(a.powi(3) / (PI * n)
            * prefactor_sum(state, &state.k1_coeffs, |mu| Ok(gamma_fn(mu)? * x.powf(mu) * c(mu)?))?),
        CorrectionKind::MagneticFormFactor => {
            let lam = state.level.lambda;
            Ok(2.0 * lam * a.powi(4) / (PI * n * n)
                * prefactor_sum(state, &state.k2_coeffs, |mu| {
                    Ok(gamma_fn(mu - 1.0)?
                        * (1.0 - mu * c(mu - 1.0)? * x.powf(mu - 1.0) + (mu - 1.0) * c(mu)? * x.powf(mu)))
                })?)
        }
        CorrectionKind::VacuumPolarization => {
            let beta = state_beta(n, a);
            Ok(2.0 * a * a / (3.0 * n) * prefactor_sum(state, &state.k1_coeffs, |mu| vac_j_mellin(mu, beta))?)
        }
    }
}

fn r_breakpoints(states: &[&RadialState], alpha: f64) -> Vec<f64> {
    let x0 = r0_over_compton(alpha);
    let mut pts = vec![0.0, x0, 10.0 * x0, 0.1, 1.0, 5.0];
    for st in states {
        let scale = st.r_of_rho(1.0);
        pts.extend(st.rho_breakpoints().iter().filter(|p| p.is_finite()).map(|p| p * scale));
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts.push(f64::INFINITY);
    pts
}

fn outer_spec(cfg: &PhysicsConfig) -> QuadratureSpec {
    let mut spec = cfg.quadrature;
    spec.rel_tol = spec.rel_tol.max(1e-9);
    spec
}

/// ⟨a|V|b⟩ by radial quadrature in r, for states sharing (j, m_j, σ).
fn radial_element(a: &RadialState, b: &RadialState, kind: CorrectionKind, cfg: &PhysicsConfig) -> Result<f64> {
    let (la, lb) = (a.level.lambda, b.level.lambda);
    let pts = r_breakpoints(&[a, b], cfg.alpha);
    let density = |r: f64| -> f64 {
        let (ra, qa, rb, qb) = (a.upper(r), a.lower(r), b.upper(r), b.lower(r));
        if kind.angular_odd() {
            -(lb * (ra * qb) + la * (qa * rb))
        } else {
            ra * rb + (la * lb) * (qa * qb)
        }
    };
    let failure = std::cell::Cell::new(None);
    let est = integrate_points(
        |r: f64| {
            if r == 0.0 {
                return 0.0;
            }
            match potential_r(kind, r, cfg) {
                Ok(v) => v * density(r) * r * r,
                Err(e) => {
                    failure.set(Some(e));
                    f64::NAN
                }
            }
        },
        &pts,
        &outer_spec(cfg),
    );
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(est?.value)
}

/// Diagonal element by direct quadrature of the potential in r.
pub fn radial_quadrature_element(qn: &QuantumNumbers, kind: CorrectionKind, cfg: &PhysicsConfig) -> Result<f64> {
    let st = radial_state_with(qn, cfg, Mode::Exact)?;
    radial_element(&st, &st, kind, cfg)
}

/// ⟨n, j, σ|V|n′, j, σ⟩; elements across different j, m_j or σ vanish.
pub fn off_diagonal_element(
    n: u32,
    n_prime: u32,
    two_j: u32,
    sigma: Sigma,
    kind: CorrectionKind,
    cfg: &PhysicsConfig,
) -> Result<f64> {
    let a = radial_state_with(&QuantumNumbers::from_nj(n, two_j, sigma)?, cfg, Mode::Exact)?;
    let b = radial_state_with(&QuantumNumbers::from_nj(n_prime, two_j, sigma)?, cfg, Mode::Exact)?;
    radial_element(&a, &b, kind, cfg)
}

fn label_of(qn: &QuantumNumbers) -> (u32, u32, Sigma) {
    (qn.n, qn.two_j, qn.sigma)
}

/// Tabulated α-expansions, with 2 ln(1/α) replaced by the configured ln(2m/λ).
pub fn closed_form(qn: &QuantumNumbers, kind: CorrectionKind, cfg: &PhysicsConfig) -> Result<f64> {
    let a = cfg.alpha;
    let l = cfg.ln_2m_over_lambda();
    let c = EULER_GAMMA;
    let x0 = r0_over_compton(a);
    let b1 = 2.0 * a * x0;
    let b2 = a * x0;
    let log_ratio = ((SQRT_2 + 1.0) / (SQRT_2 - 1.0)).ln();
    use CorrectionKind::*;
    let v = match (label_of(qn), kind) {
        ((1, 1, Sigma::Plus), PhotonPolarization) => -4.0 * a.powi(5) / (15.0 * PI),
        ((2, 3, Sigma::Plus), PhotonPolarization) => -a.powi(7) / (560.0 * PI),
        ((2, 1, Sigma::Plus), PhotonPolarization) => -a.powi(5) / (6.0 * PI) * (0.2 - 15.0 * PI / 128.0 * a),
        ((2, 1, Sigma::Minus), PhotonPolarization) => -a.powi(7) / (32.0 * PI) * (9.0 / 35.0 + 5.0 * PI / 128.0 * a),

        ((1, 1, Sigma::Plus), ElectricFormFactor) => 4.0 * a.powi(5) / (3.0 * PI) * (l - 3.0 / 8.0),
        ((2, 3, Sigma::Plus), ElectricFormFactor) => a.powi(7) / (80.0 * PI) * (l - 11.0 / 12.0),
        ((2, 1, Sigma::Plus), ElectricFormFactor) => {
            a.powi(5) / (6.0 * PI) * (l - 3.0 / 8.0 - 3.0 * PI / 64.0 * (5.0 * l - 7.0) * a)
        }
        ((2, 1, Sigma::Minus), ElectricFormFactor) => {
            let c3 = PI / 8.0 * (5.0 * l - 7.0);
            a.powi(7) / (16.0 * PI) * (0.7 * l - 89.0 / 240.0 + a / 6.0 * c3)
        }

        ((1, 1, Sigma::Plus), VacuumPolarization) => {
            a * a / 3.0
                * (2.0 / 3.0 * c + 2.0 / 3.0 * (SQRT_2 / b1).ln() + SQRT_2 / 3.0 * log_ratio + 5.0 / 12.0 * LN_2
                    + PI / 12.0
                    - 1.0 / 3.0)
                * b1
                * b1
                / 2.0
        }
        ((2, 3, Sigma::Plus), VacuumPolarization) => -5.0 * a * a / 216.0 * (2.0 - SQRT_2) * b2 * b2 / 2.0,
        ((2, 1, Sigma::Plus), VacuumPolarization) => {
            a * a / 24.0
                * (8.0 / 3.0 * c + 8.0 / 3.0 * (SQRT_2 / b2).ln() + 4.0 * SQRT_2 / 3.0 * log_ratio + 5.0 / 3.0 * LN_2
                    + PI / 3.0
                    + 4.0 / 3.0
                    + 5.0 * SQRT_2 / 3.0)
                * b2
                * b2
                / 2.0
        }
        ((2, 1, Sigma::Minus), VacuumPolarization) => -a.powi(5) / (48.0 * PI) * (1.0 + 3.0 / 8.0 * a * a),

        ((1, 1, Sigma::Plus), MagneticFormFactor) => a.powi(5) / (2.0 * PI) * (1.0 - PI / 2.0 * a + 2.0 / 3.0 * a * a),
        ((2, 3, Sigma::Plus), MagneticFormFactor) => {
            a.powi(5) / (96.0 * PI) * (1.0 - 3.0 * PI / 32.0 * a.powi(3) + 3.0 / 16.0 * C4_MAG * a.powi(4))
        }
        ((2, 1, Sigma::Plus), MagneticFormFactor) => a.powi(5) / (6.0 * PI) * 3.0 / 8.0 * (1.0 - PI / 2.0 * a),
        ((2, 1, Sigma::Minus), MagneticFormFactor) => -a.powi(5) / (48.0 * PI) * (1.0 + 3.0 / 8.0 * a * a),

        _ if qn.n_r() == 0 && kind == ElectricFormFactor => general_elec(qn.n, cfg)?,
        _ if qn.n_r() == 0 && kind == MagneticFormFactor => general_mag(qn.n, cfg)?,
        _ => return Err(Error::UnsupportedState(format!("{qn} / {kind}"))),
    };
    Ok(v)
}

/// Limit value ∫₁^∞ dζ/(ζ⁶√(ζ²−1)) = 8/15.
pub const C4_MAG: f64 = 8.0 / 15.0;

/// States j = n − 1/2: α^(2γₙ+3)/(2π n^(2γₙ+1) γₙ) C^(elec)_(2γₙ).
pub fn general_elec(n: u32, cfg: &PhysicsConfig) -> Result<f64> {
    let a = cfg.alpha;
    let nf = f64::from(n);
    let g = crate::dirac::gamma_kappa(a, nf);
    let c = c_mu_at(CorrectionKind::ElectricFormFactor, 2.0 * g, 0.0, cfg)?;
    Ok(a.powf(2.0 * g + 3.0) / (2.0 * PI * nf.powf(2.0 * g + 1.0) * g) * c)
}

/// States j = n − 1/2: α⁵/(2πn⁴(2n−1)) (1 − 2n C_(2n−1) (α/n)^(2n−1) + (2n−1) C_(2n) (α/n)^(2n)).
pub fn general_mag(n: u32, cfg: &PhysicsConfig) -> Result<f64> {
    let a = cfg.alpha;
    let nf = f64::from(n);
    let m = 2.0 * nf;
    let x = a / nf;
    let c_lo = c_mu_at(CorrectionKind::MagneticFormFactor, m - 1.0, 0.0, cfg)?;
    let c_hi = c_mu_at(CorrectionKind::MagneticFormFactor, m, 0.0, cfg)?;
    Ok(a.powi(5) / (2.0 * PI * nf.powi(4) * (m - 1.0))
        * (1.0 - m * c_lo * x.powf(m - 1.0) + (m - 1.0) * c_hi * x.powf(m)))
}

pub fn diagonal_element(
    qn: &QuantumNumbers,
    kind: CorrectionKind,
    cfg: &PhysicsConfig,
    mode: Mode,
) -> Result<MatrixElementResult> {
    let state = radial_state_with(qn, cfg, mode)?;
    let value_quadrature = moment_element(&state, kind, cfg)?;
    let closed = match closed_form(qn, kind, cfg) {
        Ok(v) => Some(v),
        Err(Error::UnsupportedState(_)) => None,
        Err(e) => return Err(e),
    };
    let kernel = match kind {
        CorrectionKind::VacuumPolarization => "J_mu residue series",
        _ => "C_mu quadrature",
    };
    let approx = match mode {
        Mode::Exact => "exact gamma_j, N_nj, alpha/N kept in C_mu",
        Mode::Paper => "gamma_j -> kappa_j, N -> n, C_mu at alpha/N -> 0",
    };
    Ok(MatrixElementResult {
        qn: *qn,
        kind,
        mode,
        value_quadrature,
        value_closed_form: closed,
        rel_discrepancy: closed.map(|c| rel_discrepancy(value_quadrature, c, cfg.alpha)),
        method_notes: format!("Gamma moments x {kernel}; {approx}"),
    })
}

/// The four n = 1, 2 states with tabulated expansions.
pub fn shipped_states() -> Vec<QuantumNumbers> {
    ["1S1/2", "2S1/2", "2P1/2", "2P3/2"]
        .iter()
        .map(|s| s.parse().expect("valid label"))
        .collect()
}

/// Every (state × kind) element for the given states, sorted by state then kind.
pub fn element_table(states: &[QuantumNumbers], cfg: &PhysicsConfig, mode: Mode) -> Result<Vec<MatrixElementResult>> {
    let mut out = Vec::new();
    for qn in states {
        for kind in CorrectionKind::ALL {
            out.push(diagonal_element(qn, kind, cfg, mode)?);
        }
    }
    Ok(out)
}
