//! Gamma function, Laguerre polynomials, sine and cosine integrals,
//! normalized associated Legendre functions.

use std::f64::consts::{FRAC_PI_2, PI};
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::EULER_GAMMA;
use crate::error::{Error, Result};

/// Real polynomial in the monomial basis, `coeffs[k]` multiplying ρᵏ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialCoeffs {
    pub coeffs: Vec<f64>,
}

impl PolynomialCoeffs {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0.0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        PolynomialCoeffs { coeffs }
    }

    pub fn zero() -> Self {
        PolynomialCoeffs { coeffs: vec![0.0] }
    }

    pub fn constant(c: f64) -> Self {
        PolynomialCoeffs::new(vec![c])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn scale(&self, k: f64) -> Self {
        PolynomialCoeffs::new(self.coeffs.iter().map(|c| c * k).collect())
    }
}

impl Add for &PolynomialCoeffs {
    type Output = PolynomialCoeffs;

    fn add(self, rhs: Self) -> PolynomialCoeffs {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n)
            .map(|k| self.coeffs.get(k).unwrap_or(&0.0) + rhs.coeffs.get(k).unwrap_or(&0.0))
            .collect();
        PolynomialCoeffs::new(c)
    }
}

impl Sub for &PolynomialCoeffs {
    type Output = PolynomialCoeffs;

    fn sub(self, rhs: Self) -> PolynomialCoeffs {
        self + &rhs.scale(-1.0)
    }
}

impl Mul for &PolynomialCoeffs {
    type Output = PolynomialCoeffs;

    fn mul(self, rhs: Self) -> PolynomialCoeffs {
        let mut c = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        PolynomialCoeffs::new(c)
    }
}

const LANCZOS_G: f64 = 5.242_187_5;
const LANCZOS: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];

fn lanczos_sum(x: f64) -> f64 {
    let mut ser = 0.999_999_999_999_997_092;
    let mut y = x;
    for c in LANCZOS {
        y += 1.0;
        ser += c / y;
    }
    ser
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("ln_gamma({x})")));
    }
    let t = x + LANCZOS_G;
    Ok((x + 0.5) * t.ln() - t + (2.506_628_274_631_000_5 * lanczos_sum(x) / x).ln())
}

/// Γ(x) for x > 0. Overflows to `+∞` beyond x ≈ 171.6.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("gamma_fn({x})")));
    }
    if x < 0.5 {
        return Ok(gamma_fn(x + 1.0)? / x);
    }
    if x > 20.0 {
        return Ok(ln_gamma(x)?.exp());
    }
    let t = x + LANCZOS_G;
    Ok(2.506_628_274_631_000_5 * lanczos_sum(x) / x * t.powf(x + 0.5) * (-t).exp())
}

/// sin(πx) with the argument reduced first, accurate near integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x.round();
    let s = (PI * (x - r)).sin();
    if r.rem_euclid(2.0) == 0.0 {
        s
    } else {
        -s
    }
}

/// Γ(x) on the real line away from the poles, by reflection for x < 1/2.
pub fn gamma_real(x: f64) -> Result<f64> {
    if x > 0.0 {
        return gamma_fn(x);
    }
    if !x.is_finite() || x == x.round() {
        return Err(Error::domain(format!("gamma_real({x}) at a pole")));
    }
    Ok(PI / (sin_pi(x) * gamma_fn(1.0 - x)?))
}

/// ψ(n) for integer n ≥ 1.
pub fn digamma_int(n: u32) -> f64 {
    (1..n).map(|k| 1.0 / f64::from(k)).sum::<f64>() - EULER_GAMMA
}

/// ψ′(n) for integer n ≥ 1.
pub fn trigamma_int(n: u32) -> f64 {
    PI * PI / 6.0 - (1..n).map(|k| 1.0 / f64::from(k * k)).sum::<f64>()
}

pub fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Generalized Laguerre polynomial L_n^{a}, with a = 2γ.
pub fn laguerre(n: u32, two_gamma: f64) -> PolynomialCoeffs {
    let a = two_gamma;
    let coeffs = (0..=n)
        .map(|m| {
            // C(n + a, n − m) = Π_{i=1}^{n−m} (a + m + i)/i
            let binom: f64 = (1..=n - m)
                .map(|i| (a + f64::from(m) + f64::from(i)) / f64::from(i))
                .product();
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            sign * binom / factorial(m)
        })
        .collect();
    PolynomialCoeffs::new(coeffs)
}

/// Si(x) − π/2 and Ci(x) for x > 0 (x = 0 allowed for the first).
fn si_ci(x: f64) -> (f64, f64) {
    if x < 4.0 {
        let mut si = 0.0;
        let mut ci = 0.0;
        // term_k = (−1)^k x^k / k!
        let mut term = 1.0;
        let mut k = 1u32;
        loop {
            term *= x / f64::from(k);
            let kf = f64::from(k);
            if k % 2 == 1 {
                let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
                si += sign * term / kf;
            } else {
                let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
                ci += sign * term / kf;
            }
            if term < 1e-18 * (si.abs() + ci.abs()).max(1e-300) && k > 2 {
                break;
            }
            k += 1;
            if k > 200 {
                break;
            }
        }
        let ci = if x > 0.0 { EULER_GAMMA + x.ln() + ci } else { f64::NEG_INFINITY };
        (si - FRAC_PI_2, ci)
    } else {
        // E₁(ix) by the modified Lentz continued fraction.
        let tiny = 1e-300;
        let mut b = Complex64::new(1.0, x);
        let mut c = Complex64::new(1.0 / tiny, 0.0);
        let mut d = Complex64::new(1.0, 0.0) / b;
        let mut h = d;
        for i in 2..1000u32 {
            let a = -f64::from((i - 1) * (i - 1));
            b += 2.0;
            d = Complex64::new(1.0, 0.0) / (d * a + b);
            c = b + Complex64::new(a, 0.0) / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).norm() < 1e-16 {
                break;
            }
        }
        let h = Complex64::new(x.cos(), -x.sin()) * h;
        (h.im, -h.re)
    }
}

/// si(x) = Si(x) − π/2, so si(0) = −π/2 and si(x) → 0 as x → ∞.
pub fn sin_integral(x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("sin_integral({x})")));
    }
    Ok(si_ci(x).0)
}

/// ci(x) = ℂ + ln x + Σ_k (−1)ᵏ x²ᵏ/(2k (2k)!), x > 0.
pub fn cos_integral(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("cos_integral({x})")));
    }
    Ok(si_ci(x).1)
}

/// ∫₀^∞ e^(−x) x^(2n+1)/(x² + a²) dx
/// = (−1)^(n−1) a^(2n) [ci(a) cos a + si(a) sin a] + Σ_{k=1}^{n} (2n−2k+1)! (−a²)^(k−1).
pub fn exp_rational_odd(n: u32, a: f64) -> Result<f64> {
    let (si, ci) = (sin_integral(a)?, cos_integral(a)?);
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    let head = sign * a.powi(2 * n as i32) * (ci * a.cos() + si * a.sin());
    let tail: f64 = (1..=n)
        .map(|k| factorial(2 * n - 2 * k + 1) * (-a * a).powi(k as i32 - 1))
        .sum();
    Ok(head + tail)
}

/// ∫₀^∞ e^(−x) x^(2n)/(x² + a²) dx
/// = (−1)ⁿ a^(2n−1) [ci(a) sin a − si(a) cos a] + Σ_{k=1}^{n} (2n−2k)! (−a²)^(k−1).
pub fn exp_rational_even(n: u32, a: f64) -> Result<f64> {
    let (si, ci) = (sin_integral(a)?, cos_integral(a)?);
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let head = sign * a.powi(2 * n as i32 - 1) * (ci * a.sin() - si * a.cos());
    let tail: f64 = (1..=n)
        .map(|k| factorial(2 * n - 2 * k) * (-a * a).powi(k as i32 - 1))
        .sum();
    Ok(head + tail)
}

/// Associated Legendre function P_l^m(x), m ≥ 0, without the Condon–Shortley phase.
fn assoc_legendre(l: u32, m: u32, x: f64) -> f64 {
    let s = (1.0 - x * x).max(0.0).sqrt();
    let mut pmm = 1.0;
    for i in 1..=m {
        pmm *= f64::from(2 * i - 1) * s;
    }
    if l == m {
        return pmm;
    }
    let mut pm1 = x * f64::from(2 * m + 1) * pmm;
    if l == m + 1 {
        return pm1;
    }
    let mut pll = 0.0;
    for ll in m + 2..=l {
        pll = (x * f64::from(2 * ll - 1) * pm1 - f64::from(ll + m - 1) * pmm) / f64::from(ll - m);
        pmm = pm1;
        pm1 = pll;
    }
    pll
}

/// Real part of the normalized associated Legendre function,
/// (−1)^((m+|m|)/2) √((2l+1)/2 · (l−|m|)!/(l+|m|)!) P_l^{|m|}(cos θ).
/// The remaining iˡ phase is applied by [`spherical_harmonic`].
pub fn normalized_legendre(l: u32, m: i32, theta: f64) -> Result<f64> {
    let am = m.unsigned_abs();
    if am > l {
        return Err(Error::domain(format!("|m| = {am} exceeds l = {l}")));
    }
    let ratio: f64 = ((l - am + 1)..=(l + am)).map(|k| 1.0 / f64::from(k)).product();
    let norm = (f64::from(2 * l + 1) / 2.0 * ratio).sqrt();
    let sign = if m > 0 && am % 2 == 1 { -1.0 } else { 1.0 };
    Ok(sign * norm * assoc_legendre(l, am, theta.cos()))
}

/// Y_lm = iˡ e^(imφ)/√(2π) · [`normalized_legendre`]; zero when |m| > l.
pub fn spherical_harmonic(l: u32, m: i32, theta: f64, phi: f64) -> Complex64 {
    if m.unsigned_abs() > l {
        return Complex64::new(0.0, 0.0);
    }
    let p = normalized_legendre(l, m, theta).expect("|m| <= l checked above");
    Complex64::i().powu(l) * Complex64::from_polar(p / (2.0 * PI).sqrt(), f64::from(m) * phi)
}
