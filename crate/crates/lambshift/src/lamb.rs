//! Level shifts Δ_{n,j,σ}, the Lamb splitting and cutoff calibration.

use std::f64::consts::{LN_2, PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::constants::{
    energy_to_frequency, proton_mass_factor, r0_over_compton, IRCutoff, PhysicsConfig, EULER_GAMMA,
};
use crate::dirac::{Mode, QuantumNumbers, Sigma};
use crate::error::{Error, Result};
use crate::matrix::{diagonal_element, MatrixElementResult};
use crate::potentials::CorrectionKind;

/// D as printed alongside C_L = ln(2m/λ) + D.
pub const D_PRINTED: f64 = 0.400_759;
/// Measured 2S₁/₂ − 2P₁/₂ splitting in MHz used for calibration.
pub const LAMB_EXPERIMENT_MHZ: f64 = 1057.845;
/// α of the historical comparison.
pub const ALPHA_SCHWINGER: f64 = 1.0 / 137.06;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DChoice {
    Printed,
    Recomputed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub quadrature: f64,
    pub closed_form: Option<f64>,
    pub rel_discrepancy: Option<f64>,
}

impl From<&MatrixElementResult> for Component {
    fn from(r: &MatrixElementResult) -> Self {
        Component {
            quadrature: r.value_quadrature,
            closed_form: r.value_closed_form,
            rel_discrepancy: r.rel_discrepancy,
        }
    }
}

/// The four corrections of one level, in units of mc².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrectionBreakdown {
    pub photon_polarization: Component,
    pub electric_form_factor: Component,
    pub vacuum_polarization: Component,
    pub magnetic_form_factor: Component,
    pub total_quadrature: f64,
    pub total_closed_form: Option<f64>,
}

impl CorrectionBreakdown {
    pub fn components(&self) -> [(CorrectionKind, Component); 4] {
        [
            (CorrectionKind::PhotonPolarization, self.photon_polarization),
            (CorrectionKind::ElectricFormFactor, self.electric_form_factor),
            (CorrectionKind::VacuumPolarization, self.vacuum_polarization),
            (CorrectionKind::MagneticFormFactor, self.magnetic_form_factor),
        ]
    }

    pub fn total(&self, mode: Mode) -> Option<f64> {
        match mode {
            Mode::Exact => Some(self.total_quadrature),
            Mode::Paper => self.total_closed_form,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelShift {
    pub qn: QuantumNumbers,
    pub mode: Mode,
    pub breakdown: CorrectionBreakdown,
    /// Total in units of mc² under `mode`.
    pub total: f64,
    pub frequency_mhz: f64,
}

pub fn breakdown(qn: &QuantumNumbers, cfg: &PhysicsConfig) -> Result<CorrectionBreakdown> {
    let get = |kind| diagonal_element(qn, kind, cfg, Mode::Exact);
    let pp = get(CorrectionKind::PhotonPolarization)?;
    let el = get(CorrectionKind::ElectricFormFactor)?;
    let vac = get(CorrectionKind::VacuumPolarization)?;
    let mag = get(CorrectionKind::MagneticFormFactor)?;
    let all = [&pp, &el, &vac, &mag];
    let total_quadrature = all.iter().map(|r| r.value_quadrature).sum();
    let total_closed_form = all
        .iter()
        .map(|r| r.value_closed_form)
        .sum::<Option<f64>>();
    Ok(CorrectionBreakdown {
        photon_polarization: (&pp).into(),
        electric_form_factor: (&el).into(),
        vacuum_polarization: (&vac).into(),
        magnetic_form_factor: (&mag).into(),
        total_quadrature,
        total_closed_form,
    })
}

/// Δ_{n,j,σ} = V_PP + V_elec + V_vac + V_mag.
pub fn level_shift(qn: &QuantumNumbers, cfg: &PhysicsConfig, mode: Mode) -> Result<LevelShift> {
    cfg.validate()?;
    let breakdown = breakdown(qn, cfg)?;
    let total = breakdown
        .total(mode)
        .ok_or_else(|| Error::UnsupportedState(format!("{qn}: no closed forms for every correction")))?;
    Ok(LevelShift {
        qn: *qn,
        mode,
        breakdown,
        total,
        frequency_mhz: energy_to_frequency(total, cfg),
    })
}

/// mc²α⁵/6π in MHz.
pub fn unit_block_mhz(cfg: &PhysicsConfig) -> f64 {
    energy_to_frequency(cfg.alpha.powi(5) / (6.0 * PI), cfg)
}

/// The closed-form bracket C_L for 2S₁/₂ − 2P₁/₂. The O(α) electric term keeps
/// ln(4m/λ) at its 2 ln(1/α) value, so C_L is affine in ln(2m/λ) with unit slope.
pub fn c_l_bracket(cfg: &PhysicsConfig) -> f64 {
    let a = cfg.alpha;
    let l = cfg.ln_2m_over_lambda();
    let ell4 = 2.0 * (1.0 / a).ln();
    let b2 = a * r0_over_compton(a);
    let vac = 8.0 * EULER_GAMMA / 3.0
        + 8.0 / 3.0 * (SQRT_2 / b2).ln()
        + 4.0 * SQRT_2 / 3.0 * ((SQRT_2 + 1.0) / (SQRT_2 - 1.0)).ln()
        + 5.0 / 3.0 * LN_2
        + PI / 3.0
        + 22.0 / 9.0
        + 10.0 * SQRT_2 / 9.0;
    l + 1.0 / 8.0 - 1.0 / 5.0 - 3.0 / 8.0 * (5.0 * PI / 8.0 * ell4 - 11.0 * PI / 16.0) * a
        + 0.25 * (PI * a / 30.0).sqrt() * vac
}

/// C_L − ln(2m/λ) from the bracket.
pub fn d_recomputed(cfg: &PhysicsConfig) -> f64 {
    c_l_bracket(cfg) - cfg.ln_2m_over_lambda()
}

pub fn d_value(choice: DChoice, cfg: &PhysicsConfig) -> f64 {
    match choice {
        DChoice::Printed => D_PRINTED,
        DChoice::Recomputed => d_recomputed(cfg),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambSplit {
    pub state_hi: QuantumNumbers,
    pub state_lo: QuantumNumbers,
    pub mode: Mode,
    /// Units of mc².
    pub delta: f64,
    pub delta_mhz: f64,
    pub c_l: f64,
    pub cutoff_used: IRCutoff,
    pub ln_2m_over_lambda: f64,
}

pub fn canonical_pair() -> (QuantumNumbers, QuantumNumbers) {
    (
        QuantumNumbers::from_nj(2, 1, Sigma::Plus).expect("2S1/2"),
        QuantumNumbers::from_nj(2, 1, Sigma::Minus).expect("2P1/2"),
    )
}

fn is_canonical(a: &QuantumNumbers, b: &QuantumNumbers) -> bool {
    let (s, p) = canonical_pair();
    let same = |x: &QuantumNumbers, y: &QuantumNumbers| x.n == y.n && x.two_j == y.two_j && x.sigma == y.sigma;
    same(a, &s) && same(b, &p)
}

/// Δ(a) − Δ(b). In paper mode the canonical pair uses the C_L bracket.
pub fn lamb_split(a: &QuantumNumbers, b: &QuantumNumbers, cfg: &PhysicsConfig, mode: Mode) -> Result<LambSplit> {
    cfg.validate()?;
    a.validate()?;
    b.validate()?;
    let unit = cfg.alpha.powi(5) / (6.0 * PI);
    let delta = if mode == Mode::Paper && is_canonical(a, b) {
        unit * c_l_bracket(cfg)
    } else {
        level_shift(a, cfg, mode)?.total - level_shift(b, cfg, mode)?.total
    };
    Ok(LambSplit {
        state_hi: *a,
        state_lo: *b,
        mode,
        delta,
        delta_mhz: energy_to_frequency(delta, cfg),
        c_l: delta / unit,
        cutoff_used: cfg.cutoff,
        ln_2m_over_lambda: cfg.ln_2m_over_lambda(),
    })
}

/// Δ_L = (mc²α⁵/6π)(ln(2m/λ) + D) in MHz.
pub fn lamb_from_d(cfg: &PhysicsConfig, d: f64) -> f64 {
    unit_block_mhz(cfg) * (cfg.ln_2m_over_lambda() + d)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub target_mhz: f64,
    pub d_choice: DChoice,
    pub d: f64,
    pub ln_2m_over_lambda: f64,
    pub offset_vs_ln_inv_alpha_sq: f64,
}

/// Solves Δ_L(target) = (mc²α⁵/6π)(ln(2m/λ) + D) for ln(2m/λ).
pub fn calibrate_cutoff(target_mhz: f64, cfg: &PhysicsConfig, d_choice: DChoice) -> Result<Calibration> {
    if !(target_mhz > 0.0 && target_mhz.is_finite()) {
        return Err(Error::domain(format!("target {target_mhz} MHz must be positive")));
    }
    cfg.validate()?;
    let d = d_value(d_choice, cfg);
    let ln = target_mhz / unit_block_mhz(cfg) - d;
    Ok(Calibration {
        target_mhz,
        d_choice,
        d,
        ln_2m_over_lambda: ln,
        offset_vs_ln_inv_alpha_sq: ln - 2.0 * (1.0 / cfg.alpha).ln(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutoffRow {
    pub cutoff: IRCutoff,
    pub ln_2m_over_lambda: f64,
    pub exact_mhz: f64,
    pub closed_form_mhz: f64,
    pub printed_d_mhz: f64,
}

/// 2 ln(1/α), ln(1/α²) − 2.8118 and ln(2/α²).
pub fn cutoff_variants(alpha: f64) -> [IRCutoff; 3] {
    IRCutoff::variants(IRCutoff::bethe_scale(alpha))
}

/// Δ_L of the canonical pair under each cutoff convention.
pub fn cutoff_table(cfg: &PhysicsConfig) -> Result<Vec<CutoffRow>> {
    let (s, p) = canonical_pair();
    cutoff_variants(cfg.alpha)
        .into_iter()
        .map(|cutoff| {
            let c = cfg.with_cutoff(cutoff);
            Ok(CutoffRow {
                cutoff,
                ln_2m_over_lambda: c.ln_2m_over_lambda(),
                exact_mhz: lamb_split(&s, &p, &c, Mode::Exact)?.delta_mhz,
                closed_form_mhz: lamb_split(&s, &p, &c, Mode::Paper)?.delta_mhz,
                printed_d_mhz: lamb_from_d(&c, D_PRINTED),
            })
        })
        .collect()
}

/// α = 1/137.06, ln(2m/λ) = ln(2/α²), reduced-mass factor.
pub fn schwinger_config() -> PhysicsConfig {
    PhysicsConfig::default()
        .with_alpha(ALPHA_SCHWINGER)
        .with_cutoff(IRCutoff::Explicit(IRCutoff::bethe_scale(ALPHA_SCHWINGER)))
        .with_mass_factor(proton_mass_factor())
}
