//! Subcommand drivers.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use vortexab::field::{boundary_residual, far_field, render_grid, truncation_policy, Scatterer, SeriesTruncation};
use vortexab::medium::{
    attenuation, capillary_length, delta_parameter, dispersion, validity_report, velocities, AttenuationReport,
    DispersionModel, LayerGeometry, ValidityReport,
};
use vortexab::scatter::{solve_modes, CoefficientTable, Setup};

use crate::config::{parse_config, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::{fmt_opt, write_csv, write_field_csv, write_pgm};
use crate::presets::{canonical_config, figure_preset};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Dispersion,
    Coefficients,
    Field,
    Farfield,
    Sweep,
    Validate,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Dispersion => "dispersion",
            Command::Coefficients => "coefficients",
            Command::Field => "field",
            Command::Farfield => "farfield",
            Command::Sweep => "sweep",
            Command::Validate => "validate",
        }
    }
}

#[derive(Debug, Clone)]
pub enum Source {
    Config(PathBuf),
    Preset(String),
}

/// Command-line values that take precedence over the configuration.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub n_core: Option<i64>,
    pub n_ab: Option<i64>,
    pub phase: Option<f64>,
    pub resolution: Option<usize>,
}

impl Overrides {
    fn apply(&self, cfg: &mut RunConfig) {
        if self.n_core.is_some() {
            cfg.n_core = self.n_core;
        }
        if self.n_ab.is_some() {
            cfg.n_ab = self.n_ab;
        }
        if let Some(p) = self.phase {
            cfg.phase = p;
        }
        if let Some(r) = self.resolution {
            cfg.resolution = r;
        }
    }
}

/// Labelled configurations named by a source.
pub fn load(source: &Source) -> CliResult<Vec<(String, RunConfig)>> {
    match source {
        Source::Preset(name) => figure_preset(name),
        Source::Config(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            Ok(vec![(String::new(), parse_config(&text)?)])
        }
    }
}

/// Run a subcommand; returns the files written.
pub fn run(command: Command, source: &Source, overrides: &Overrides) -> CliResult<Vec<PathBuf>> {
    let configs = load(source)?;
    let preset = match source {
        Source::Preset(name) => Some(name.as_str()),
        Source::Config(_) => None,
    };
    let base = overrides
        .out
        .clone()
        .or_else(|| configs.first().and_then(|(_, c)| c.out.clone()).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"));
    let many = configs.len() > 1;
    let mut written = Vec::new();
    for (label, mut cfg) in configs {
        overrides.apply(&mut cfg);
        cfg.validate()?;
        let dir = if many { base.join(&label) } else { base.clone() };
        fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
        let tag = preset.map(|_| label.as_str());
        written.extend(run_one(command, &cfg, &dir, tag)?);
    }
    Ok(written)
}

/// Everything derived from a configuration that goes into a manifest.
struct Derived {
    setup: Setup,
    truncation: SeriesTruncation,
    atten: AttenuationReport,
    validity: ValidityReport,
}

fn derive(cfg: &RunConfig) -> CliResult<Derived> {
    let setup = cfg.setup()?;
    let g = &setup.groups;
    let truncation = truncation_policy(g.beta, cfg.n_core, cfg.n_ab, cfg.half_width * 2f64.sqrt());
    let c_phi = cfg.c_phi.unwrap_or(g.c_phi);
    let atten = attenuation(setup.wave.lambda, &setup.fluid, c_phi, setup.vortex.a);
    let validity = validity_report(g, &atten, setup.fluid.g);
    Ok(Derived { setup, truncation, atten, validity })
}

fn manifest_text(
    command: Command,
    preset: Option<&str>,
    cfg: &RunConfig,
    d: &Derived,
    extra: &[(String, String)],
) -> String {
    let g = &d.setup.groups;
    let mut s = String::new();
    let _ = writeln!(s, "# vortexab {} run manifest", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(s, "# command = {}", command.name());
    if let Some(p) = preset {
        let _ = writeln!(s, "# preset = {p}");
    }
    s.push_str(&cfg.to_text());
    let mut put = |k: &str, v: String| {
        let _ = writeln!(s, "# {k} = {v}");
    };
    put("alpha", g.alpha.to_string());
    put("beta", g.beta.to_string());
    put("delta", g.delta.to_string());
    put("mach", g.mach.to_string());
    put("kh", g.kh.to_string());
    put("kl_c", g.kl_c.to_string());
    put("c_phi_cm_per_s", g.c_phi.to_string());
    put("c_g_cm_per_s", g.c_g.to_string());
    put("k_per_cm", d.setup.wave.k.to_string());
    put("lambda_cm", d.setup.wave.lambda.to_string());
    put("nu_per_s", d.setup.wave.nu.to_string());
    put("gamma_cm2_per_s", d.setup.vortex.gamma.to_string());
    put("omega_per_s", d.setup.vortex.omega.to_string());
    put("capillary_length_cm", capillary_length(&d.setup.fluid).to_string());
    put("n_core", d.truncation.n_core.to_string());
    put("n_ab", d.truncation.n_ab.to_string());
    put("truncation_tail", d.truncation.tail_estimate.to_string());
    put("t_gw_s", d.atten.t_gw.to_string());
    put("t_cw_s", d.atten.t_cw.to_string());
    put("period_s", d.atten.period.to_string());
    put("travel_time_s", d.atten.travel_time.to_string());
    put("dissipation_negligible", d.validity.dissipation_negligible.to_string());
    put("eta0_estimate_cm", d.validity.eta0_estimate.to_string());
    for (k, v) in extra {
        put(k, v.clone());
    }
    for w in &d.validity.warnings {
        put("warning", format!("{}: {w}", w.code()));
    }
    if d.truncation.tail_warning() {
        put(
            "warning",
            format!(
                "W_TRUNCATION_TAIL: first omitted term may reach {:.1e} of the incident amplitude",
                d.truncation.tail_estimate
            ),
        );
    }
    put(
        "note",
        "outer solution neglects terms of relative order alpha/beta^2; accuracy falls with distance from the core"
            .into(),
    );
    s
}

fn write_manifest(dir: &Path, text: &str) -> CliResult<PathBuf> {
    let path = dir.join("manifest.txt");
    fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}

fn run_one(command: Command, cfg: &RunConfig, dir: &Path, preset: Option<&str>) -> CliResult<Vec<PathBuf>> {
    let d = derive(cfg)?;
    let mut files = Vec::new();
    let mut extra = Vec::new();
    match command {
        Command::Dispersion => {
            files.extend(write_dispersion(cfg, &d, dir)?);
        }
        Command::Coefficients => {
            let table = solve_modes(&d.setup.groups, d.truncation.n_core)?;
            extra.push(("max_condition_number".into(), max_condition(&table).to_string()));
            files.push(write_coefficients(&table, dir)?);
        }
        Command::Field => {
            let scatterer = Scatterer::new(&d.setup.groups, d.truncation)?;
            let grid = render_grid(&scatterer, cfg.half_width, cfg.resolution, cfg.phase)?;
            let (resid, peak) = boundary_residual(&scatterer, 64)?;
            extra.push(("boundary_residual".into(), (resid / peak).to_string()));
            let pgm = dir.join("field.pgm");
            write_pgm(&pgm, &grid)?;
            let csv = dir.join("field.csv");
            write_field_csv(&csv, &grid)?;
            files.extend([pgm, csv]);
        }
        Command::Farfield => {
            let table = solve_modes(&d.setup.groups, d.truncation.n_core)?;
            let (path, aniso) = write_farfield(&table, cfg.samples, dir)?;
            extra.push(("anisotropy".into(), aniso.to_string()));
            files.push(path);
        }
        Command::Sweep => {
            files.extend(run_sweep(cfg, dir)?);
        }
        Command::Validate => {}
    }
    files.push(write_manifest(dir, &manifest_text(command, preset, cfg, &d, &extra))?);
    Ok(files)
}

fn max_condition(table: &CoefficientTable) -> f64 {
    table.coefficients().map(|c| c.condition_number).fold(0.0, f64::max)
}

fn write_dispersion(cfg: &RunConfig, d: &Derived, dir: &Path) -> CliResult<Vec<PathBuf>> {
    let fluid = &d.setup.fluid;
    let layer = LayerGeometry::new(cfg.h)?;
    let k0 = d.setup.wave.k;
    let lo = cfg.k_min.unwrap_or(k0 / 10.0);
    let hi = cfg.k_max.unwrap_or(2.0 * k0);
    let l_c = capillary_length(fluid);
    let rows: Vec<Vec<String>> = (0..cfg.k_points)
        .map(|i| {
            let k = lo + (hi - lo) * i as f64 / (cfg.k_points - 1) as f64;
            let full = dispersion(k, fluid, &layer, DispersionModel::Full).ok();
            let cubic = dispersion(k, fluid, &layer, DispersionModel::Cubic).ok();
            let delta = delta_parameter(k, layer.h, l_c).ok();
            let v = delta.and_then(|dl| velocities(layer.h, dl, fluid.g).ok());
            vec![
                k.to_string(),
                fmt_opt(full),
                fmt_opt(cubic),
                fmt_opt(v.map(|v| v.c_phi)),
                fmt_opt(v.map(|v| v.c_g)),
                fmt_opt(delta),
            ]
        })
        .collect();
    let table = dir.join("dispersion.csv");
    write_csv(
        &table,
        &["k_per_cm", "nu_full_per_s", "nu_cubic_per_s", "c_phi_cm_per_s", "c_g_cm_per_s", "delta"],
        &rows,
    )?;
    let att = dir.join("attenuation.csv");
    let a = &d.atten;
    write_csv(
        &att,
        &["lambda_cm", "c_phi_cm_per_s", "t_gw_s", "t_cw_s", "period_s", "travel_time_s"],
        &[vec![
            d.setup.wave.lambda.to_string(),
            cfg.c_phi.unwrap_or(d.setup.groups.c_phi).to_string(),
            a.t_gw.to_string(),
            a.t_cw.to_string(),
            a.period.to_string(),
            a.travel_time.to_string(),
        ]],
    )?;
    Ok(vec![table, att])
}

fn write_coefficients(table: &CoefficientTable, dir: &Path) -> CliResult<PathBuf> {
    let mut header = vec!["n".to_string(), "m_plus_re".into(), "m_plus_im".into()];
    for x in ["a", "b", "c", "d", "e"] {
        for col in ["re", "im", "abs", "log10_abs"] {
            header.push(format!("{x}_{col}"));
        }
    }
    header.push("condition_number".into());
    header.push("underflow".into());
    let rows: Vec<Vec<String>> = table
        .modes
        .iter()
        .map(|m| {
            let co = &m.coefficients;
            let mut r = vec![co.n.to_string(), m.orders.m_plus.re.to_string(), m.orders.m_plus.im.to_string()];
            for x in [co.a, co.b, co.c, co.d, co.e] {
                r.push(x.re.to_string());
                r.push(x.im.to_string());
                r.push(x.norm().to_string());
                r.push(x.norm().log10().to_string());
            }
            r.push(co.condition_number.to_string());
            r.push(u8::from(co.underflow).to_string());
            r
        })
        .collect();
    let path = dir.join("coefficients.csv");
    let h: Vec<&str> = header.iter().map(String::as_str).collect();
    write_csv(&path, &h, &rows)?;
    Ok(path)
}

fn write_farfield(table: &CoefficientTable, samples: usize, dir: &Path) -> CliResult<(PathBuf, f64)> {
    let f = far_field(table, samples)?;
    let rows: Vec<Vec<String>> = f
        .theta
        .iter()
        .zip(&f.values)
        .map(|(t, v)| {
            vec![t.to_string(), v.norm().to_string(), v.arg().to_string(), v.re.to_string(), v.im.to_string()]
        })
        .collect();
    let path = dir.join("farfield.csv");
    write_csv(&path, &["theta_rad", "abs_f", "arg_f_rad", "re_f", "im_f"], &rows)?;
    Ok((path, f.anisotropy()))
}

fn run_sweep(cfg: &RunConfig, dir: &Path) -> CliResult<Vec<PathBuf>> {
    if cfg.sweep_alpha.is_empty() || cfg.sweep_beta.is_empty() || cfg.sweep_delta.is_empty() {
        return Err(CliError::Constraint("sweep needs sweep_alpha, sweep_beta and sweep_delta".into()));
    }
    let mut files = Vec::new();
    let mut summary = Vec::new();
    for &alpha in &cfg.sweep_alpha {
        for &beta in &cfg.sweep_beta {
            for &delta in &cfg.sweep_delta {
                let mut tuple = canonical_config(alpha, beta, delta, cfg.half_width)?;
                tuple.n_core = cfg.n_core;
                tuple.n_ab = cfg.n_ab;
                tuple.phase = cfg.phase;
                tuple.resolution = cfg.resolution;
                tuple.samples = cfg.samples;
                let sub = dir.join(format!("alpha{alpha}_beta{beta}_delta{delta}"));
                fs::create_dir_all(&sub).map_err(|e| CliError::io(&sub, e))?;
                let d = derive(&tuple)?;
                let table = solve_modes(&d.setup.groups, d.truncation.n_core)?;
                files.push(write_coefficients(&table, &sub)?);
                let (ff, aniso) = write_farfield(&table, tuple.samples, &sub)?;
                files.push(ff);
                let extra = vec![
                    ("max_condition_number".to_string(), max_condition(&table).to_string()),
                    ("anisotropy".to_string(), aniso.to_string()),
                ];
                files.push(write_manifest(&sub, &manifest_text(Command::Sweep, None, &tuple, &d, &extra))?);
                summary.push(vec![
                    alpha.to_string(),
                    beta.to_string(),
                    delta.to_string(),
                    aniso.to_string(),
                    max_condition(&table).to_string(),
                ]);
            }
        }
    }
    let path = dir.join("sweep.csv");
    write_csv(&path, &["alpha", "beta", "delta", "anisotropy", "max_condition_number"], &summary)?;
    files.push(path);
    Ok(files)
}
