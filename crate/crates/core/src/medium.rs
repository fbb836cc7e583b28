//! Fluid medium: capillary length, dispersion, velocities, attenuation and
//! the validity checks of the long-wave, slow-vortex approximation.
//!
//! Units are CGS throughout.

use std::f64::consts::PI;
use std::fmt;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluidProperties {
    /// Density, g/cm³.
    pub rho: f64,
    /// Surface tension, dyn/cm.
    pub tau: f64,
    /// Dynamic viscosity, g/(cm·s).
    pub mu: f64,
    /// Gravity, cm/s².
    pub g: f64,
}

impl FluidProperties {
    pub fn new(rho: f64, tau: f64, mu: f64, g: f64) -> Result<Self> {
        let f = Self { rho, tau, mu, g };
        f.validate()?;
        Ok(f)
    }

    pub fn water() -> Self {
        Self { rho: 1.0, tau: 74.0, mu: 0.01, g: 981.0 }
    }

    /// τ may be zero (pure gravity waves); everything else must be positive.
    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !(ok(self.rho) && ok(self.mu) && ok(self.g) && self.tau.is_finite() && self.tau >= 0.0) {
            return Err(Error::InvalidInput(format!("fluid properties must be positive: {self:?}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayerGeometry {
    /// Equilibrium depth, cm.
    pub h: f64,
}

impl LayerGeometry {
    pub fn new(h: f64) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::InvalidInput(format!("depth must be positive, got {h}")));
        }
        Ok(Self { h })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DispersionModel {
    /// (gk + τk³/ρ) tanh kh
    Full,
    /// Shallow-layer expansion to O((kh)³).
    Cubic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveParameters {
    /// Wavenumber, 1/cm.
    pub k: f64,
    /// Wavelength, cm.
    pub lambda: f64,
    /// Angular frequency, 1/s.
    pub nu: f64,
}

impl WaveParameters {
    pub fn from_k(k: f64, fluid: &FluidProperties, layer: &LayerGeometry, model: DispersionModel) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::InvalidInput(format!("wavenumber must be positive, got {k}")));
        }
        let nu = dispersion(k, fluid, layer, model)?;
        Ok(Self { k, lambda: 2.0 * PI / k, nu })
    }

    pub fn from_lambda(
        lambda: f64,
        fluid: &FluidProperties,
        layer: &LayerGeometry,
        model: DispersionModel,
    ) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidInput(format!("wavelength must be positive, got {lambda}")));
        }
        let mut w = Self::from_k(2.0 * PI / lambda, fluid, layer, model)?;
        w.lambda = lambda;
        Ok(w)
    }
}

/// The numbers that govern the scattering problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessGroups {
    pub alpha: f64,
    /// k·a
    pub beta: f64,
    /// 1/δ = k²(l_c² − h²/3); infinite in the nondispersive limit.
    pub delta: f64,
    /// U₀(a)/c_φ
    pub mach: f64,
    pub kh: f64,
    pub kl_c: f64,
    /// cm/s
    pub c_phi: f64,
    /// cm/s
    pub c_g: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttenuationReport {
    /// s
    pub t_gw: f64,
    /// s
    pub t_cw: f64,
    /// s
    pub period: f64,
    /// Time to cross the core, period·a/λ, s.
    pub travel_time: f64,
}

impl AttenuationReport {
    pub fn total(&self) -> f64 {
        self.t_gw + self.t_cw
    }

    pub fn dissipation_negligible(&self) -> bool {
        self.period < self.total()
    }
}

/// l_c = √(τ/ρg), cm.
pub fn capillary_length(fluid: &FluidProperties) -> f64 {
    (fluid.tau / (fluid.rho * fluid.g)).sqrt()
}

/// δ from 1/δ = k²(l_c² − h²/3).
pub fn delta_parameter(k: f64, h: f64, l_c: f64) -> Result<f64> {
    if !(k > 0.0 && h > 0.0) {
        return Err(Error::InvalidInput(format!("need k > 0 and h > 0, got k = {k}, h = {h}")));
    }
    let d = l_c * l_c - h * h / 3.0;
    if d.abs() < 1e-14 * h * h {
        return Err(Error::DegenerateDispersion { h, l_c });
    }
    Ok(1.0 / (k * k * d))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Velocities {
    pub c_phi: f64,
    pub c_g: f64,
    /// Set for δ ∈ [−2, −1): the group velocity is not positive.
    pub group_velocity_nonpositive: bool,
}

/// Phase and group velocity in terms of δ. δ = ±∞ gives √(gh) for both.
pub fn velocities(h: f64, delta: f64, g: f64) -> Result<Velocities> {
    let gh = g * h;
    if delta.is_infinite() {
        let c = gh.sqrt();
        return Ok(Velocities { c_phi: c, c_g: c, group_velocity_nonpositive: false });
    }
    if delta.is_nan() || delta == 0.0 || (-1.0..0.0).contains(&delta) {
        return Err(Error::NonPropagating(delta));
    }
    let c_phi = (gh * (1.0 + delta) / delta).sqrt();
    if c_phi == 0.0 {
        return Err(Error::NonPropagating(delta));
    }
    let c_g = gh / c_phi * (2.0 + delta) / delta;
    Ok(Velocities { c_phi, c_g, group_velocity_nonpositive: c_g <= 0.0 })
}

/// Angular frequency for wavenumber k.
pub fn dispersion(k: f64, fluid: &FluidProperties, layer: &LayerGeometry, model: DispersionModel) -> Result<f64> {
    let h = layer.h;
    let nu2 = match model {
        DispersionModel::Full => (fluid.g * k + fluid.tau * k.powi(3) / fluid.rho) * (k * h).tanh(),
        DispersionModel::Cubic => {
            fluid.g * h * k * k + (fluid.tau * h / fluid.rho - fluid.g * h.powi(3) / 3.0) * k.powi(4)
        }
    };
    if nu2.is_nan() || nu2 <= 0.0 {
        return Err(Error::Evanescent(nu2));
    }
    Ok(nu2.sqrt())
}

/// Viscous attenuation times and the wave period.
pub fn attenuation(lambda: f64, fluid: &FluidProperties, c_phi: f64, a: f64) -> AttenuationReport {
    let tp = 2.0 * PI;
    let t_gw = fluid.rho * fluid.g.powi(2) * lambda.powi(4) / (2.0 * tp.powi(4) * fluid.mu * c_phi.powi(4));
    let t_cw = fluid.rho * lambda.powi(2) / (2.0 * tp.powi(2) * fluid.mu);
    let period = lambda / c_phi;
    AttenuationReport { t_gw, t_cw, period, travel_time: period * a / lambda }
}

pub const MACH_LIMIT: f64 = 0.2;
pub const BETA_LIMIT: f64 = 4.0;
pub const KH_LIMIT: f64 = 0.8;
pub const DELTA_LIMIT: f64 = 3.0;

#[derive(Debug, Clone, PartialEq)]
pub enum ValidityWarning {
    MachLarge(f64),
    BetaSmall(f64),
    DepthLarge(f64),
    DeltaSmall(f64),
    GroupVelocityNonPositive(f64),
    Dissipative { travel_time: f64, attenuation: f64 },
}

impl ValidityWarning {
    pub fn code(&self) -> &'static str {
        match self {
            Self::MachLarge(_) => "W_MACH_LARGE",
            Self::BetaSmall(_) => "W_BETA_SMALL",
            Self::DepthLarge(_) => "W_KH_LARGE",
            Self::DeltaSmall(_) => "W_DELTA_SMALL",
            Self::GroupVelocityNonPositive(_) => "W_GROUP_VELOCITY_NONPOSITIVE",
            Self::Dissipative { .. } => "W_DISSIPATIVE",
        }
    }
}

impl fmt::Display for ValidityWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MachLarge(m) => write!(f, "Mach number {m:.4} exceeds {MACH_LIMIT}; vortex flow is not slow"),
            Self::BetaSmall(b) => write!(f, "beta = {b:.4} is small; core is not large compared to the wavelength"),
            Self::DepthLarge(kh) => write!(f, "kh = {kh:.4} exceeds {KH_LIMIT}; cubic dispersion is inaccurate"),
            Self::DeltaSmall(d) => {
                write!(f, "|delta| = {:.4} below {DELTA_LIMIT}; fourth-order term is not a small correction", d.abs())
            }
            Self::GroupVelocityNonPositive(cg) => write!(f, "group velocity {cg:.4} cm/s is not positive"),
            Self::Dissipative { travel_time, attenuation } => {
                write!(f, "travel time {travel_time:.4e} s exceeds attenuation time {attenuation:.4e} s")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidityReport {
    pub warnings: Vec<ValidityWarning>,
    /// Order-of-magnitude depth of the vortex free-surface dip, cm.
    pub eta0_estimate: f64,
    pub dissipation_negligible: bool,
}

pub fn validity_report(groups: &DimensionlessGroups, report: &AttenuationReport, g: f64) -> ValidityReport {
    let mut warnings = Vec::new();
    if groups.mach > MACH_LIMIT {
        warnings.push(ValidityWarning::MachLarge(groups.mach));
    }
    if groups.beta < BETA_LIMIT {
        warnings.push(ValidityWarning::BetaSmall(groups.beta));
    }
    if groups.kh > KH_LIMIT {
        warnings.push(ValidityWarning::DepthLarge(groups.kh));
    }
    if groups.delta.abs() < DELTA_LIMIT {
        warnings.push(ValidityWarning::DeltaSmall(groups.delta));
    }
    if groups.c_g <= 0.0 {
        warnings.push(ValidityWarning::GroupVelocityNonPositive(groups.c_g));
    }
    if report.travel_time > report.total() {
        warnings.push(ValidityWarning::Dissipative { travel_time: report.travel_time, attenuation: report.total() });
    }
    let u0 = groups.mach * groups.c_phi;
    let lc_over_a = groups.kl_c / groups.beta;
    ValidityReport {
        warnings,
        eta0_estimate: u0 * u0 / g / (1.0 + lc_over_a * lc_over_a),
        dissipation_negligible: report.dissipation_negligible(),
    }
}
