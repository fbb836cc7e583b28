//! Cylinder functions of complex order and argument.
//!
//! Supported kinds are J, Y, I, K and the Hankel function H¹, together with
//! their first derivatives and the ratios Z_{ν+1}/Z_ν. All values are
//! principal branches with the cut along the negative real axis.
//!
//! Scaled values remove the dominant exponential:
//!
//! | kind | scaled value |
//! |------|--------------|
//! | J, Y | e^{-\|Im z\|} Z |
//! | I    | e^{-\|Re z\|} I |
//! | K    | e^{z} K |
//! | H¹   | e^{-iz} H¹ |

mod gamma;
mod modified;

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

pub use gamma::{gamma_cx, ln_gamma_cx, rgamma_cx};

/// Largest order magnitude accepted.
pub const MAX_ORDER: f64 = 150.0;
/// Largest argument magnitude accepted.
pub const MAX_ARG: f64 = 250.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("gamma function pole at {0}")]
    Pole(f64),
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("outside the validated envelope: {0}")]
    Envelope(String),
    #[error("no convergence in {0}")]
    Convergence(String),
    #[error("ratio denominator vanishes")]
    ZeroDenominator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CylinderKind {
    J,
    Y,
    I,
    K,
    H1,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalRequest {
    pub kind: CylinderKind,
    pub order: Complex64,
    pub arg: Complex64,
    pub scaled: bool,
}

impl EvalRequest {
    pub fn new(kind: CylinderKind, order: Complex64, arg: Complex64) -> Self {
        Self { kind, order, arg, scaled: false }
    }

    pub fn scaled(mut self) -> Self {
        self.scaled = true;
        self
    }
}

type C = Complex64;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn envelope(nu: C, z: C) -> Result<(), SpecFunError> {
    if !(nu.re.is_finite() && nu.im.is_finite() && z.re.is_finite() && z.im.is_finite()) {
        return Err(SpecFunError::Domain("non-finite order or argument".into()));
    }
    if nu.norm() > MAX_ORDER {
        return Err(SpecFunError::Envelope(format!("|order| = {} > {MAX_ORDER}", nu.norm())));
    }
    if z.norm() > MAX_ARG {
        return Err(SpecFunError::Envelope(format!("|argument| = {} > {MAX_ARG}", z.norm())));
    }
    Ok(())
}

/// Factor that turns a scaled value back into the true one.
fn unscale_factor(kind: CylinderKind, z: C) -> C {
    match kind {
        CylinderKind::J | CylinderKind::Y => c(z.im.abs().exp(), 0.0),
        CylinderKind::I => c(z.re.abs().exp(), 0.0),
        CylinderKind::K => (-z).exp(),
        CylinderKind::H1 => (c(0.0, 1.0) * z).exp(),
    }
}

/// Value at z = 0 for the kinds that are finite there.
fn at_origin(kind: CylinderKind, nu: C) -> Result<C, SpecFunError> {
    match kind {
        CylinderKind::J | CylinderKind::I => {
            if nu == c(0.0, 0.0) {
                Ok(c(1.0, 0.0))
            } else if nu.re > 0.0 || modified::is_negative_integer(nu) {
                Ok(c(0.0, 0.0))
            } else {
                Err(SpecFunError::Domain(format!("{kind:?}_{nu}(0) is unbounded")))
            }
        }
        _ => Err(SpecFunError::Domain(format!("{kind:?} is singular at the origin"))),
    }
}

/// J_ν(z) = e^{iνπ/2} I_ν(-iz) holds for arg z ∈ (-π/2, π] and
/// J_ν(z) = e^{-iνπ/2} I_ν(iz) for arg z ∈ (-π, π/2]. Splitting on the sign
/// of Im z keeps the I argument in the right half plane.
fn j_uses_minus_i(z: C) -> bool {
    z.im >= 0.0
}

/// sin(πν), cos(πν) with exact zeros at integer and half-integer real ν.
fn sincos_pi(nu: C) -> (C, C) {
    if nu.im == 0.0 && (2.0 * nu.re).fract() == 0.0 {
        let r = nu.re.rem_euclid(2.0);
        let (s, c0) = match (2.0 * r) as i64 {
            0 => (0.0, 1.0),
            1 => (1.0, 0.0),
            2 => (0.0, -1.0),
            _ => (-1.0, 0.0),
        };
        return (c(s, 0.0), c(c0, 0.0));
    }
    ((nu * PI).sin(), (nu * PI).cos())
}

/// True when H¹ is reachable through K(-iz), i.e. arg z ∈ (-π/2, π].
fn h1_direct(z: C) -> bool {
    !(z.im < 0.0 && z.re <= 0.0)
}

/// Scaled (Z_ν, Z_{ν+1}) at z ≠ 0.
fn scaled_pair(kind: CylinderKind, nu: C, z: C) -> Result<(C, C), SpecFunError> {
    let i = c(0.0, 1.0);
    match kind {
        CylinderKind::I => modified::i_pair(nu, z),
        CylinderKind::K => modified::k_pair(nu, z),
        CylinderKind::J => {
            if j_uses_minus_i(z) {
                // J_ν(z) = e^{iνπ/2} I_ν(-iz)
                let f = (i * nu * (PI / 2.0)).exp();
                let (i0, i1) = modified::i_pair(nu, -i * z)?;
                Ok((f * i0, i * f * i1))
            } else {
                // J_ν(z) = e^{-iνπ/2} I_ν(iz)
                let f = (-i * nu * (PI / 2.0)).exp();
                let (i0, i1) = modified::i_pair(nu, i * z)?;
                Ok((f * i0, -i * f * i1))
            }
        }
        CylinderKind::H1 => {
            if h1_direct(z) {
                // H¹_ν(z) = (2/πi) e^{-iνπ/2} K_ν(-iz)
                let f = (-i * nu * (PI / 2.0)).exp() * (2.0 / PI) / i;
                let (k0, k1) = modified::k_pair(nu, -i * z)?;
                Ok((f * k0, -i * f * k1))
            } else {
                // H¹ = 2J - H², H²_ν(z) = -(2/πi) e^{iνπ/2} K_ν(iz)
                let f = -(i * nu * (PI / 2.0)).exp() * (2.0 / PI) / i;
                let (k0, k1) = modified::k_pair(nu, i * z)?;
                let (j0, j1) = scaled_pair(CylinderKind::J, nu, z)?;
                // J̃ carries e^{-|Im z|}; K̃(iz) carries e^{iz}. Target e^{-iz}.
                let from_j = (-i * z + z.im.abs()).exp();
                let from_k = (-2.0 * i * z).exp();
                Ok((2.0 * j0 * from_j - f * k0 * from_k, 2.0 * j1 * from_j - i * f * k1 * from_k))
            }
        }
        CylinderKind::Y if nu.re < -0.5 => {
            // Y_{-μ} = sin(μπ) J_μ + cos(μπ) Y_μ, with μ = λ + 1 and μ = λ
            let lam = -nu - 1.0;
            let (j0, j1) = scaled_pair(CylinderKind::J, lam, z)?;
            let (y0, y1) = scaled_pair(CylinderKind::Y, lam, z)?;
            let (s0, c0) = sincos_pi(lam);
            Ok((-s0 * j1 - c0 * y1, s0 * j0 + c0 * y0))
        }
        CylinderKind::Y => {
            // Y = (H¹ - J)/i
            let (h0, h1) = scaled_pair(CylinderKind::H1, nu, z)?;
            let (j0, j1) = scaled_pair(CylinderKind::J, nu, z)?;
            let f = (i * z - z.im.abs()).exp();
            Ok(((h0 * f - j0) / i, (h1 * f - j1) / i))
        }
    }
}

fn finite(v: C, kind: CylinderKind) -> Result<C, SpecFunError> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(SpecFunError::Envelope(format!("{kind:?} value is not representable")))
    }
}

/// (Z_ν(z), Z_{ν+1}(z)), optionally scaled.
pub fn cyl_pair(kind: CylinderKind, nu: C, z: C, scaled: bool) -> Result<(C, C), SpecFunError> {
    envelope(nu, z)?;
    if z == c(0.0, 0.0) {
        return Ok((at_origin(kind, nu)?, at_origin(kind, nu + 1.0)?));
    }
    let (a, b) = scaled_pair(kind, nu, z)?;
    if scaled {
        return Ok((finite(a, kind)?, finite(b, kind)?));
    }
    let f = unscale_factor(kind, z);
    Ok((finite(a * f, kind)?, finite(b * f, kind)?))
}

/// Evaluate a single cylinder function.
pub fn cyl_eval(req: EvalRequest) -> Result<C, SpecFunError> {
    cyl_pair(req.kind, req.order, req.arg, req.scaled).map(|p| p.0)
}

/// Shorthand for unscaled evaluation.
pub fn cyl(kind: CylinderKind, nu: C, z: C) -> Result<C, SpecFunError> {
    cyl_eval(EvalRequest::new(kind, nu, z))
}

/// First derivative with respect to the argument.
pub fn cyl_derivative(kind: CylinderKind, nu: C, z: C) -> Result<C, SpecFunError> {
    envelope(nu, z)?;
    if z == c(0.0, 0.0) {
        // Z' = (Z_{ν-1} ∓ Z_{ν+1}) / 2
        let lo = at_origin(kind, nu - 1.0)?;
        let hi = at_origin(kind, nu + 1.0)?;
        return Ok(match kind {
            CylinderKind::I => (lo + hi) * 0.5,
            _ => (lo - hi) * 0.5,
        });
    }
    let (z0, z1) = cyl_pair(kind, nu, z, false)?;
    let lead = nu / z * z0;
    Ok(match kind {
        CylinderKind::I => lead + z1,
        _ => lead - z1,
    })
}

/// Z_{ν+1}(z) / Z_ν(z), computed without forming the values where possible.
pub fn cyl_ratio(kind: CylinderKind, nu: C, z: C) -> Result<C, SpecFunError> {
    envelope(nu, z)?;
    if z == c(0.0, 0.0) {
        return Err(SpecFunError::ZeroDenominator);
    }
    let i = c(0.0, 1.0);
    let r = match kind {
        CylinderKind::I => modified::i_ratio(nu, z)?,
        CylinderKind::K => modified::k_ratio(nu, z)?,
        CylinderKind::J => {
            if j_uses_minus_i(z) {
                i * modified::i_ratio(nu, -i * z)?
            } else {
                -i * modified::i_ratio(nu, i * z)?
            }
        }
        CylinderKind::H1 if h1_direct(z) => -i * modified::k_ratio(nu, -i * z)?,
        CylinderKind::Y => match scaled_pair(kind, nu, z) {
            Ok((a, b)) if !(a.norm().is_finite() && b.norm().is_finite()) => return cyl_ratio(CylinderKind::H1, nu, z),
            Ok((a, b)) if a.norm() > 0.0 => cdiv(b, a),
            Ok(_) => return Err(SpecFunError::ZeroDenominator),
            // Y overflowing means J/Y is negligible: Y ratio equals the H¹ ratio.
            Err(SpecFunError::Envelope(_)) => return cyl_ratio(CylinderKind::H1, nu, z),
            Err(e) => return Err(e),
        },
        _ => {
            let (a, b) = scaled_pair(kind, nu, z)?;
            if a.norm() == 0.0 {
                return Err(SpecFunError::ZeroDenominator);
            }
            cdiv(b, a)
        }
    };
    if r.re.is_finite() && r.im.is_finite() && r.norm() < 1e300 {
        Ok(r)
    } else {
        Err(SpecFunError::ZeroDenominator)
    }
}

/// Z_ν(s·z) / Z_ν(z) for real s ≥ 0, formed from scaled values so that
/// neither factor needs to be representable on its own.
pub fn cyl_quotient(kind: CylinderKind, nu: C, z: C, s: f64) -> Result<C, SpecFunError> {
    envelope(nu, z)?;
    let w = z * s;
    if matches!(kind, CylinderKind::J | CylinderKind::I) && z.norm() < 1.0 {
        // Integer orders reflect to non-negative ones with the same quotient.
        let nu = if nu.im == 0.0 && nu.re < 0.0 && nu.re == nu.re.round() { -nu } else { nu };
        if nu.re >= 0.0 {
            let sign = if kind == CylinderKind::J { -1.0 } else { 1.0 };
            let num = small_series(nu, w, sign);
            let den = small_series(nu, z, sign);
            let power = if s == 0.0 {
                if nu == c(0.0, 0.0) {
                    c(1.0, 0.0)
                } else {
                    c(0.0, 0.0)
                }
            } else {
                (nu * s.ln()).exp()
            };
            return finite(power * num / den, kind);
        }
    }
    let (den, _) = cyl_pair(kind, nu, z, true)?;
    if den.norm() == 0.0 {
        return Err(SpecFunError::ZeroDenominator);
    }
    if w == c(0.0, 0.0) {
        let lift = unscale_factor(kind, z);
        return Ok(cdiv(at_origin(kind, nu)?, den * lift));
    }
    let (num, _) = cyl_pair(kind, nu, w, true)?;
    let exponent = match kind {
        CylinderKind::J | CylinderKind::Y => c(w.im.abs() - z.im.abs(), 0.0),
        CylinderKind::I => c(w.re.abs() - z.re.abs(), 0.0),
        CylinderKind::K => z - w,
        CylinderKind::H1 => c(0.0, 1.0) * (w - z),
    };
    finite(cdiv(num, den) * exponent.exp(), kind)
}

/// Σ_k (±z²/4)^k / (k! (ν+1)_k) for |z| < 1, Re ν ≥ 0.
fn small_series(nu: C, z: C, sign: f64) -> C {
    let q = sign * z * z / 4.0;
    let mut term = c(1.0, 0.0);
    let mut sum = term;
    for k in 1..60 {
        term *= q / (k as f64 * (nu + k as f64));
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

/// ln of the bound |J_ν(z)| ≤ (|z|/2)^ν e^{|Im z|} / Γ(ν+1), real ν ≥ 0.
pub fn ln_j_bound(nu: f64, z: C) -> f64 {
    let half = z.norm() / 2.0;
    if half == 0.0 {
        return if nu == 0.0 { 0.0 } else { f64::NEG_INFINITY };
    }
    nu * half.ln() + z.im.abs() - ln_gamma_cx(c(nu + 1.0, 0.0)).map(|g| g.re).unwrap_or(f64::INFINITY)
}

/// b / a without overflow in the intermediate |a|².
pub fn cdiv(b: C, a: C) -> C {
    let s = a.re.abs().max(a.im.abs());
    if s == 0.0 || !s.is_finite() {
        return b / a;
    }
    (b / s) / (a / s)
}

/// (-i)^ν = e^{-iπν/2} on the principal branch.
pub fn minus_i_pow(nu: C) -> C {
    (c(0.0, -PI / 2.0) * nu).exp()
}
