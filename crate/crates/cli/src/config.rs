//! Line-oriented `key = value` run configuration.

use std::f64::consts::PI;
use std::fmt::Write as _;

use vortexab::medium::{
    capillary_length, delta_parameter, velocities, DispersionModel, FluidProperties, LayerGeometry, WaveParameters,
};
use vortexab::scatter::{dimensionless_setup, Setup, VortexFlow, WaveModel};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WaveSpec {
    K(f64),
    Lambda(f64),
}

/// How the vortex strength is given.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Strength {
    /// Circulation Γ, cm²/s.
    Gamma(f64),
    /// Γν/(2π c_φ c_g).
    Alpha(f64),
    /// Γν/(2π g h): the value α would take without dispersion.
    AlphaShallow(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub fluid: FluidProperties,
    /// Depth, cm.
    pub h: f64,
    pub wave: WaveSpec,
    /// Core radius, cm.
    pub a: f64,
    pub strength: Strength,
    pub model: WaveModel,
    /// Half side of the sampled box in units of a.
    pub half_width: f64,
    pub resolution: usize,
    pub n_core: Option<i64>,
    pub n_ab: Option<i64>,
    /// Snapshot phase ν·t, radians.
    pub phase: f64,
    /// Far-field angular samples.
    pub samples: usize,
    /// Phase velocity used for attenuation times instead of the model value.
    pub c_phi: Option<f64>,
    /// Wavenumber range for the dispersion table, 1/cm.
    pub k_min: Option<f64>,
    pub k_max: Option<f64>,
    pub k_points: usize,
    pub sweep_alpha: Vec<f64>,
    pub sweep_beta: Vec<f64>,
    pub sweep_delta: Vec<f64>,
    pub out: Option<String>,
}

impl RunConfig {
    /// Water with the given depth, wave, radius and strength; defaults elsewhere.
    pub fn new(h: f64, wave: WaveSpec, a: f64, strength: Strength) -> Self {
        Self {
            fluid: FluidProperties::water(),
            h,
            wave,
            a,
            strength,
            model: WaveModel::Dispersive,
            half_width: 5.0,
            resolution: 200,
            n_core: None,
            n_ab: None,
            phase: 0.0,
            samples: 360,
            c_phi: None,
            k_min: None,
            k_max: None,
            k_points: 100,
            sweep_alpha: Vec::new(),
            sweep_beta: Vec::new(),
            sweep_delta: Vec::new(),
            out: None,
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(CliError::Constraint(format!("{name} must be positive, got {v}")))
            }
        };
        positive("rho", self.fluid.rho)?;
        positive("mu", self.fluid.mu)?;
        positive("g", self.fluid.g)?;
        if !(self.fluid.tau.is_finite() && self.fluid.tau >= 0.0) {
            return Err(CliError::Constraint(format!("tau must be non-negative, got {}", self.fluid.tau)));
        }
        positive("h", self.h)?;
        match self.wave {
            WaveSpec::K(k) => positive("k", k)?,
            WaveSpec::Lambda(l) => positive("lambda", l)?,
        }
        positive("a", self.a)?;
        positive("half_width", self.half_width)?;
        let finite = match self.strength {
            Strength::Gamma(v) | Strength::Alpha(v) | Strength::AlphaShallow(v) => v.is_finite(),
        };
        if !finite {
            return Err(CliError::Constraint("vortex strength must be finite".into()));
        }
        if self.resolution == 0 || self.samples == 0 || self.k_points < 2 {
            return Err(CliError::Constraint("resolution and samples must be positive, k_points at least 2".into()));
        }
        for (name, v) in [("n_core", self.n_core), ("n_ab", self.n_ab)] {
            if let Some(n) = v {
                if n < 1 {
                    return Err(CliError::Constraint(format!("{name} must be positive, got {n}")));
                }
            }
        }
        if let (Some(c), Some(a)) = (self.n_core, self.n_ab) {
            if a < c {
                return Err(CliError::Constraint(format!("n_ab = {a} must be at least n_core = {c}")));
            }
        }
        if let Some(c) = self.c_phi {
            positive("c_phi", c)?;
        }
        if let (Some(lo), Some(hi)) = (self.k_min, self.k_max) {
            if !(lo > 0.0 && hi > lo) {
                return Err(CliError::Constraint(format!("need 0 < k_min < k_max, got {lo}, {hi}")));
            }
        }
        if !self.phase.is_finite() {
            return Err(CliError::Constraint("phase must be finite".into()));
        }
        Ok(())
    }

    /// Physical setup and dimensionless groups.
    pub fn setup(&self) -> CliResult<Setup> {
        self.validate()?;
        let fluid = FluidProperties::new(self.fluid.rho, self.fluid.tau, self.fluid.mu, self.fluid.g)?;
        let layer = LayerGeometry::new(self.h)?;
        let mut wave = match self.wave {
            WaveSpec::K(k) => WaveParameters::from_k(k, &fluid, &layer, DispersionModel::Cubic),
            WaveSpec::Lambda(l) => WaveParameters::from_lambda(l, &fluid, &layer, DispersionModel::Cubic),
        }?;
        let gh = fluid.g * layer.h;
        let (c_phi, c_g) = match self.model {
            WaveModel::Shallow => {
                wave.nu = wave.k * gh.sqrt();
                (gh.sqrt(), gh.sqrt())
            }
            WaveModel::Dispersive => {
                let v = velocities(layer.h, delta_parameter(wave.k, layer.h, capillary_length(&fluid))?, fluid.g)?;
                (v.c_phi, v.c_g)
            }
        };
        let gamma = match self.strength {
            Strength::Gamma(g) => g,
            Strength::Alpha(a) => 2.0 * PI * a * c_phi * c_g / wave.nu,
            Strength::AlphaShallow(a) => 2.0 * PI * a * gh / wave.nu,
        };
        let vortex = VortexFlow::from_circulation(gamma, self.a)?;
        let groups = dimensionless_setup(&fluid, &layer, &wave, &vortex, self.model)?;
        Ok(Setup { fluid, layer, wave, vortex, model: self.model, groups })
    }

    /// Config text that parses back to this value. The output directory is
    /// left out so that manifests do not depend on where they were written.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut put = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        put("rho", self.fluid.rho.to_string());
        put("tau", self.fluid.tau.to_string());
        put("mu", self.fluid.mu.to_string());
        put("g", self.fluid.g.to_string());
        put("h", self.h.to_string());
        match self.wave {
            WaveSpec::K(k) => put("k", k.to_string()),
            WaveSpec::Lambda(l) => put("lambda", l.to_string()),
        }
        put("a", self.a.to_string());
        match self.strength {
            Strength::Gamma(v) => put("gamma", v.to_string()),
            Strength::Alpha(v) => put("alpha", v.to_string()),
            Strength::AlphaShallow(v) => put("alpha_shallow", v.to_string()),
        }
        put(
            "model",
            match self.model {
                WaveModel::Dispersive => "dispersive".into(),
                WaveModel::Shallow => "shallow".into(),
            },
        );
        put("half_width", self.half_width.to_string());
        put("resolution", self.resolution.to_string());
        if let Some(n) = self.n_core {
            put("n_core", n.to_string());
        }
        if let Some(n) = self.n_ab {
            put("n_ab", n.to_string());
        }
        put("phase", self.phase.to_string());
        put("samples", self.samples.to_string());
        if let Some(c) = self.c_phi {
            put("c_phi", c.to_string());
        }
        if let Some(k) = self.k_min {
            put("k_min", k.to_string());
        }
        if let Some(k) = self.k_max {
            put("k_max", k.to_string());
        }
        put("k_points", self.k_points.to_string());
        let list = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        if !self.sweep_alpha.is_empty() {
            put("sweep_alpha", list(&self.sweep_alpha));
        }
        if !self.sweep_beta.is_empty() {
            put("sweep_beta", list(&self.sweep_beta));
        }
        if !self.sweep_delta.is_empty() {
            put("sweep_delta", list(&self.sweep_delta));
        }
        s
    }
}

fn number(line: usize, key: &str, v: &str) -> CliResult<f64> {
    v.parse::<f64>().map_err(|_| CliError::Parse { line, message: format!("{key}: '{v}' is not a number") })
}

fn integer<T: std::str::FromStr>(line: usize, key: &str, v: &str) -> CliResult<T> {
    v.parse::<T>().map_err(|_| CliError::Parse { line, message: format!("{key}: '{v}' is not an integer") })
}

fn list(line: usize, key: &str, v: &str) -> CliResult<Vec<f64>> {
    v.split(',').map(|p| number(line, key, p.trim())).collect()
}

/// Parse configuration text.
pub fn parse_config(text: &str) -> CliResult<RunConfig> {
    let mut seen = std::collections::HashMap::new();
    let mut fluid = FluidProperties::water();
    let mut h = None;
    let mut k = None;
    let mut lambda = None;
    let mut a = None;
    let mut strengths = Vec::new();
    let mut cfg = RunConfig::new(1.0, WaveSpec::K(1.0), 1.0, Strength::Gamma(0.0));
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| CliError::Parse { line, message: format!("expected 'key = value', got '{body}'") })?;
        if value.is_empty() {
            return Err(CliError::Parse { line, message: format!("{key} has no value") });
        }
        if let Some(first) = seen.insert(key.to_string(), line) {
            return Err(CliError::Parse { line, message: format!("{key} already set on line {first}") });
        }
        match key {
            "rho" => fluid.rho = number(line, key, value)?,
            "tau" => fluid.tau = number(line, key, value)?,
            "mu" => fluid.mu = number(line, key, value)?,
            "g" => fluid.g = number(line, key, value)?,
            "h" => h = Some(number(line, key, value)?),
            "k" => k = Some(number(line, key, value)?),
            "lambda" => lambda = Some(number(line, key, value)?),
            "a" => a = Some(number(line, key, value)?),
            "gamma" => strengths.push(Strength::Gamma(number(line, key, value)?)),
            "alpha" => strengths.push(Strength::Alpha(number(line, key, value)?)),
            "alpha_shallow" => strengths.push(Strength::AlphaShallow(number(line, key, value)?)),
            "model" => {
                cfg.model = match value {
                    "dispersive" => WaveModel::Dispersive,
                    "shallow" => WaveModel::Shallow,
                    _ => {
                        return Err(CliError::Parse {
                            line,
                            message: format!("model must be 'dispersive' or 'shallow', got '{value}'"),
                        })
                    }
                }
            }
            "half_width" => cfg.half_width = number(line, key, value)?,
            "resolution" => cfg.resolution = integer(line, key, value)?,
            "n_core" => cfg.n_core = Some(integer(line, key, value)?),
            "n_ab" => cfg.n_ab = Some(integer(line, key, value)?),
            "phase" => cfg.phase = number(line, key, value)?,
            "samples" => cfg.samples = integer(line, key, value)?,
            "c_phi" => cfg.c_phi = Some(number(line, key, value)?),
            "k_min" => cfg.k_min = Some(number(line, key, value)?),
            "k_max" => cfg.k_max = Some(number(line, key, value)?),
            "k_points" => cfg.k_points = integer(line, key, value)?,
            "sweep_alpha" => cfg.sweep_alpha = list(line, key, value)?,
            "sweep_beta" => cfg.sweep_beta = list(line, key, value)?,
            "sweep_delta" => cfg.sweep_delta = list(line, key, value)?,
            "out" => cfg.out = Some(value.to_string()),
            _ => return Err(CliError::Parse { line, message: format!("unknown key '{key}'") }),
        }
    }
    cfg.fluid = fluid;
    cfg.h = h.ok_or_else(|| CliError::Constraint("depth h is required".into()))?;
    cfg.wave = match (k, lambda) {
        (Some(k), None) => WaveSpec::K(k),
        (None, Some(l)) => WaveSpec::Lambda(l),
        _ => return Err(CliError::Constraint("exactly one of k and lambda must be given".into())),
    };
    cfg.a = a.ok_or_else(|| CliError::Constraint("core radius a is required".into()))?;
    cfg.strength = match strengths.as_slice() {
        [s] => *s,
        _ => return Err(CliError::Constraint("exactly one of gamma, alpha and alpha_shallow must be given".into())),
    };
    cfg.validate()?;
    Ok(cfg)
}
