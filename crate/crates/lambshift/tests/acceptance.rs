//! Acceptance criteria 1–8. Each criterion prints one PASS/FAIL line with the
//! numbers it was judged on; the process exits non-zero if any line is FAIL.

use std::f64::consts::{LN_2, PI, SQRT_2};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use lambshift::constants::{proton_mass_factor, r0_over_compton, IRCutoff, PhysicsConfig, QuadratureSpec, EULER_GAMMA};
use lambshift::dirac::{eps_forms, level, radial_density_moment, radial_state, Mode, QuantumNumbers, Sigma};
use lambshift::lamb::{self, canonical_pair, DChoice};
use lambshift::matrix::{c_mu_at, closed_form, diagonal_element, shipped_states, vac_j_integral};
use lambshift::potentials::{uehling_large_r, uehling_r, uehling_small_r, vac_delta_phi, vac_field, CorrectionKind};
use lambshift::quadrature::{integrate, integrate_points};

const ALPHA: f64 = 1.0 / 137.036;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn cfg() -> PhysicsConfig {
    PhysicsConfig::default().with_alpha(ALPHA)
}

fn qn(s: &str) -> QuantumNumbers {
    s.parse().unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn within_time(out: Outcome, elapsed: Duration, limit: Duration) -> Outcome {
    let ok = elapsed <= limit;
    Outcome::new(
        out.pass && ok,
        format!("{}; runtime {:.2}s (limit {}s)", out.detail, elapsed.as_secs_f64(), limit.as_secs()),
    )
}

fn spectrum_exactness() -> Outcome {
    let c = cfg();
    let mut worst = 0.0f64;
    for q in QuantumNumbers::all_up_to(5) {
        let (ratio, root) = eps_forms(c.alpha, q.n, q.kappa());
        worst = worst.max((ratio - root).abs());
        let lv = level(&q, &c).unwrap();
        worst = worst.max((lv.eps - ratio).abs());
    }
    let s = level(&qn("2S1/2"), &c).unwrap();
    let p = level(&qn("2P1/2"), &c).unwrap();
    let degenerate = s.eps == p.eps && s.energy == p.energy;
    Outcome::new(
        worst <= 1e-14 && degenerate,
        format!("max |eps_a - eps_b| = {worst:.1e} (tol 1e-14); 2S1/2 == 2P1/2 bitwise: {degenerate}"),
    )
}

fn normalization_suite() -> Outcome {
    let c = cfg();
    let spec = QuadratureSpec::default();
    let (mut worst_moment, mut worst_quad) = (0.0f64, 0.0f64);
    for q in QuantumNumbers::all_up_to(5) {
        let st = radial_state(&q, &c).unwrap();
        worst_moment = worst_moment.max((radial_density_moment(&st, 0.0) - 1.0).abs());
        let lam2 = st.level.lambda.powi(2);
        let scale = st.r_of_rho(1.0);
        let pts: Vec<f64> = st.rho_breakpoints().iter().map(|x| x * scale).collect();
        let norm = integrate_points(|r: f64| (st.upper(r).powi(2) + lam2 * st.lower(r).powi(2)) * r * r, &pts, &spec)
            .unwrap()
            .value;
        worst_quad = worst_quad.max((norm - 1.0).abs());
    }
    Outcome::new(
        worst_moment <= 1e-10 && worst_quad <= 1e-10,
        format!("n<=5: max |norm-1| moments {worst_moment:.1e}, quadrature {worst_quad:.1e} (tol 1e-10)"),
    )
}

fn coefficient_golden_values() -> Outcome {
    let c = cfg();
    let l = 2.0 * (1.0 / c.alpha).ln();
    let pp = CorrectionKind::PhotonPolarization;
    let el = CorrectionKind::ElectricFormFactor;
    let mg = CorrectionKind::MagneticFormFactor;
    // ∫₁^∞ dζ/(ζ^(μ+2)√(ζ²−1)) = ∫₀^(π/2) cos^(μ+1)θ dθ
    let mag_oracle = |mu: f64| {
        integrate(|t: f64| t.cos().powf(mu + 1.0), 0.0, PI / 2.0, &QuadratureSpec::default())
            .unwrap()
            .value
    };
    let checks = [
        ("C2_pp", c_mu_at(pp, 2.0, 0.0, &c).unwrap(), 2.0 / 5.0, 1e-10),
        ("C4_pp", c_mu_at(pp, 4.0, 0.0, &c).unwrap(), 6.0 / 35.0, 1e-10),
        ("C2_elec", c_mu_at(el, 2.0, 0.0, &c).unwrap(), 8.0 / 3.0 * (l - 3.0 / 8.0), 1e-10),
        ("C4_elec", c_mu_at(el, 4.0, 0.0, &c).unwrap(), 8.0 / 5.0 * (l - 11.0 / 12.0), 1e-10),
        ("C1_mag", c_mu_at(mg, 1.0, 0.0, &c).unwrap(), PI / 4.0, 1e-8),
        ("C2_mag", c_mu_at(mg, 2.0, 0.0, &c).unwrap(), 2.0 / 3.0, 1e-8),
        ("C1_mag oracle", mag_oracle(1.0), PI / 4.0, 1e-8),
        ("C2_mag oracle", mag_oracle(2.0), 2.0 / 3.0, 1e-8),
    ];
    let bad: Vec<String> = checks
        .iter()
        .filter(|(_, got, want, tol)| (got - want).abs() > *tol)
        .map(|(name, got, want, _)| format!("{name}: {got} vs {want}"))
        .collect();
    let worst = checks.iter().map(|(_, g, w, _)| (g - w).abs()).fold(0.0, f64::max);
    let mut detail = format!("8 coefficients, max abs deviation {worst:.1e}");
    if !bad.is_empty() {
        detail += &format!("; off: {}", bad.join("; "));
    }
    Outcome::new(bad.is_empty(), detail)
}

/// The 16 tabulated expansions, evaluated straight from their printed form.
fn printed_formula(state: &str, kind: CorrectionKind, a: f64) -> f64 {
    let l = 2.0 * (1.0 / a).ln();
    let x0 = (2.0 * a.powi(3) / (15.0 * PI)).powf(0.25);
    let (b1, b2) = (2.0 * a * x0, a * x0);
    let lr = ((SQRT_2 + 1.0) / (SQRT_2 - 1.0)).ln();
    let c = EULER_GAMMA;
    use CorrectionKind::*;
    match (state, kind) {
        ("1S1/2", PhotonPolarization) => -4.0 * a.powi(5) / (15.0 * PI),
        ("2P3/2", PhotonPolarization) => -a.powi(7) / (560.0 * PI),
        ("2S1/2", PhotonPolarization) => -(a.powi(5) / (6.0 * PI)) * (1.0 / 5.0 - 15.0 * PI * a / 128.0),
        ("2P1/2", PhotonPolarization) => -(a.powi(7) / (32.0 * PI)) * (9.0 / 35.0 + 5.0 * PI * a / 128.0),
        ("1S1/2", ElectricFormFactor) => (4.0 * a.powi(5) / (3.0 * PI)) * (l - 3.0 / 8.0),
        ("2P3/2", ElectricFormFactor) => (a.powi(7) / (80.0 * PI)) * (l - 11.0 / 12.0),
        ("2S1/2", ElectricFormFactor) => {
            (a.powi(5) / (6.0 * PI)) * (l - 3.0 / 8.0 - (3.0 * PI / 64.0) * (5.0 * l - 7.0) * a)
        }
        ("2P1/2", ElectricFormFactor) => {
            (a.powi(7) / (16.0 * PI)) * (0.7 * l - 89.0 / 240.0 + (a / 6.0) * (PI / 8.0) * (5.0 * l - 7.0))
        }
        ("1S1/2", VacuumPolarization) => {
            (a * a / 3.0)
                * (2.0 * c / 3.0 + (2.0 / 3.0) * (SQRT_2 / b1).ln() + (SQRT_2 / 3.0) * lr + (5.0 / 12.0) * LN_2
                    + PI / 12.0
                    - 1.0 / 3.0)
                * b1.powi(2)
                / 2.0
        }
        ("2P3/2", VacuumPolarization) => -(5.0 * a * a / 216.0) * (2.0 - SQRT_2) * b2.powi(2) / 2.0,
        ("2S1/2", VacuumPolarization) => {
            (a * a / 24.0)
                * (8.0 * c / 3.0 + (8.0 / 3.0) * (SQRT_2 / b2).ln() + (4.0 * SQRT_2 / 3.0) * lr + (5.0 / 3.0) * LN_2
                    + PI / 3.0
                    + 4.0 / 3.0
                    + 5.0 * SQRT_2 / 3.0)
                * b2.powi(2)
                / 2.0
        }
        ("2P1/2", VacuumPolarization) => -(a.powi(5) / (48.0 * PI)) * (1.0 + 3.0 * a * a / 8.0),
        ("1S1/2", MagneticFormFactor) => (a.powi(5) / (2.0 * PI)) * (1.0 - PI * a / 2.0 + 2.0 * a * a / 3.0),
        ("2P3/2", MagneticFormFactor) => {
            (a.powi(5) / (96.0 * PI)) * (1.0 - (3.0 * PI / 32.0) * a.powi(3) + (3.0 / 16.0) * (8.0 / 15.0) * a.powi(4))
        }
        ("2S1/2", MagneticFormFactor) => (a.powi(5) / (6.0 * PI)) * (3.0 / 8.0) * (1.0 - PI * a / 2.0),
        ("2P1/2", MagneticFormFactor) => -(a.powi(5) / (48.0 * PI)) * (1.0 + 3.0 * a * a / 8.0),
        _ => unreachable!(),
    }
}

fn closed_form_table() -> Outcome {
    let c = cfg();
    let mut formula_worst = 0.0f64;
    let mut exact_fail = Vec::new();
    let mut flagged = String::new();
    for q in shipped_states() {
        for kind in CorrectionKind::ALL {
            let printed = printed_formula(&q.label(), kind, c.alpha);
            let ours = closed_form(&q, kind, &c).unwrap();
            formula_worst = formula_worst.max(rel(ours, printed));
            let r = diagonal_element(&q, kind, &c, Mode::Exact).unwrap();
            let d = r.rel_discrepancy.unwrap();
            if q.label() == "2P1/2" && kind == CorrectionKind::VacuumPolarization {
                flagged = format!("flagged 2P1/2 vac reported: exact {:.3e} vs printed {:.3e}", r.value_quadrature, printed);
            } else if d > 0.05 {
                exact_fail.push(format!("{} {} {:.3e}/{:.3e} (rel {:.2})", q.label(), kind, r.value_quadrature, printed, d));
            }
        }
    }
    Outcome::new(
        formula_worst <= 1e-12 && exact_fail.is_empty(),
        format!(
            "printed formulas max rel dev {formula_worst:.1e} (tol 1e-12); exact outside 5%: [{}]; {flagged}",
            exact_fail.join(", ")
        ),
    )
}

fn historical_reproduction() -> Outcome {
    let c = PhysicsConfig::default()
        .with_alpha(1.0 / 137.06)
        .with_mass_factor(proton_mass_factor())
        .with_cutoff(IRCutoff::Explicit((2.0 * 137.06f64 * 137.06).ln()));
    let (s, p) = canonical_pair();
    let split = lamb::lamb_split(&s, &p, &c, Mode::Paper).unwrap().delta_mhz;
    let unit = lamb::unit_block_mhz(&c);
    let split_ok = rel(split, 1050.55) <= 0.01;
    let unit_ok = rel(unit, 135.644) <= 0.005;
    let shifted = lamb::lamb_split(&s, &p, &c.with_cutoff(IRCutoff::SchwingerShift), Mode::Paper).unwrap().delta_mhz;
    Outcome::new(
        split_ok && unit_ok,
        format!(
            "Delta_L = {split:.2} MHz vs 1050.55 (rel {:.3}, tol 0.01) [ln(1/a^2)-2.8118 gives {shifted:.2}]; unit block {unit:.4} MHz vs 135.644 (rel {:.4}, tol 0.005)",
            rel(split, 1050.55),
            rel(unit, 135.644)
        ),
    )
}

fn calibration() -> Outcome {
    let c = cfg();
    let cal = lamb::calibrate_cutoff(1057.845, &c, DChoice::Printed).unwrap();
    let offset_ok = (cal.offset_vs_ln_inv_alpha_sq - (-2.44262)).abs() <= 1e-3;
    let d = lamb::d_recomputed(&c);
    let d_ok = (d - 0.400759).abs() <= 1e-4;
    Outcome::new(
        offset_ok && d_ok,
        format!(
            "offset {:.5} vs -2.44262 (tol 1e-3); D from C_L bracket {d:.6} vs 0.400759 (tol 1e-4)",
            cal.offset_vs_ln_inv_alpha_sq
        ),
    )
}

fn headline() -> Outcome {
    let c = cfg();
    let (s, p) = canonical_pair();
    let split = lamb::lamb_split(&s, &p, &c, Mode::Paper).unwrap().delta_mhz;
    let rows = lamb::cutoff_table(&c).unwrap();
    let table: Vec<String> = rows
        .iter()
        .map(|r| {
            format!(
                "{} (ln={:.4}): exact {:.1}, closed {:.1}, printed-D {:.1}",
                r.cutoff, r.ln_2m_over_lambda, r.exact_mhz, r.closed_form_mhz, r.printed_d_mhz
            )
        })
        .collect();
    Outcome::new(
        rel(split, 1340.0) <= 0.05 && rows.len() == 3,
        format!("Delta_L = {split:.1} MHz vs 1340 (rel {:.3}, tol 0.05); variants: {}", rel(split, 1340.0), table.join(" | ")),
    )
}

/// Real root of (t/3)u³ + u − 1 = 0 by Cardano.
fn cubic_root(t: f64) -> f64 {
    let (p, q) = (3.0 / t, -3.0 / t);
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);
    (-q / 2.0 + disc.sqrt()).cbrt() + (-q / 2.0 - disc.sqrt()).cbrt()
}

fn property_suites() -> Outcome {
    let c = cfg();
    let mut notes = Vec::new();
    let mut ok = true;

    let small: f64 = [1e-5, 1e-4, 1e-3]
        .iter()
        .map(|&r| rel(uehling_r(r, &c).unwrap(), uehling_small_r(r, c.alpha)))
        .fold(0.0, f64::max);
    let large: f64 = [8.0, 12.0, 20.0]
        .iter()
        .map(|&r| rel(uehling_r(r, &c).unwrap(), uehling_large_r(r, c.alpha)))
        .fold(0.0, f64::max);
    ok &= small <= 0.02 && large <= 0.02;
    notes.push(format!("Uehling small-r {small:.4}, large-r {large:.4} (tol 0.02)"));

    let x0 = r0_over_compton(c.alpha);
    let mut deriv = 0.0f64;
    for k in [0.3, 1.0, 3.0, 10.0] {
        let r = k * x0;
        let h = r * 1e-5;
        let fd = (vac_delta_phi(r + h, &c).unwrap() - vac_delta_phi(r - h, &c).unwrap()) / (2.0 * h);
        deriv = deriv.max(rel(fd, -vac_field(r, &c).unwrap()));
    }
    ok &= deriv <= 1e-6;
    notes.push(format!("vac dphi/dr identity {deriv:.1e} (tol 1e-6)"));

    let r = 5.0 * x0;
    let t = (x0 / r).powi(4);
    let exact = (cubic_root(t) - 1.0) / (r * r);
    let cubic = rel(vac_field(r, &c).unwrap(), exact);
    let alpha4 = c.alpha.powi(4);
    ok &= cubic <= t.max(alpha4);
    notes.push(format!("cubic oracle at 5 r0 rel {cubic:.1e} (bound {:.1e})", t.max(alpha4)));

    let mut jworst = 0.0f64;
    for s in ["1S1/2", "2S1/2", "2P1/2", "2P3/2"] {
        let st = radial_state(&qn(s), &c).unwrap();
        for nu in 0..st.k1_coeffs.len() {
            jworst = jworst.max(vac_j_integral(2.0 * st.gamma + nu as f64, &qn(s), &c).unwrap().rel_agreement());
        }
    }
    ok &= jworst <= 1e-8;
    notes.push(format!("J_mu paths {jworst:.1e} (tol 1e-8)"));

    let mut slope_dev = 0.0f64;
    for (n, two_j) in [(1u32, 1u32), (2, 3)] {
        let q = QuantumNumbers::from_nj(n, two_j, Sigma::Plus).unwrap();
        let v = |a: f64| {
            diagonal_element(&q, CorrectionKind::PhotonPolarization, &c.with_alpha(a), Mode::Exact)
                .unwrap()
                .value_quadrature
                .abs()
        };
        let slope = (v(1e-2) / v(1e-3)).ln() / 10f64.ln();
        slope_dev = slope_dev.max(rel(slope, 3.0 + 2.0 * f64::from(n)));
    }
    ok &= slope_dev <= 0.02;
    notes.push(format!("PP alpha-slope {slope_dev:.1e} (tol 0.02)"));

    Outcome::new(ok, notes.join("; "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 8] = [
        ("spectrum exactness", spectrum_exactness, 1),
        ("normalization suite", normalization_suite, 10),
        ("coefficient golden values", coefficient_golden_values, 60),
        ("closed-form matrix-element table", closed_form_table, 60),
        ("historical reproduction", historical_reproduction, 60),
        ("calibration", calibration, 60),
        ("headline 1340 MHz", headline, 60),
        ("property suites", property_suites, 300),
    ];
    let start = Instant::now();
    let mut failures = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Outcome::new(false, format!("panicked: {msg}"))
        });
        let out = within_time(out, t0.elapsed(), Duration::from_secs(*limit));
        if !out.pass {
            failures += 1;
        }
        println!("criterion {} [{}] {name}: {}", i + 1, if out.pass { "PASS" } else { "FAIL" }, out.detail);
    }
    let total = start.elapsed();
    println!("acceptance: {} of 8 passed in {:.1}s", 8 - failures, total.as_secs_f64());
    if failures > 0 {
        std::process::exit(1);
    }
}
