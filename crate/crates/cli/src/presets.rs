//! Named parameter sets: figure panels, far-field groups and the attenuation table.

use vortexab::scatter::{canonical_water_setup, WaveModel};

use crate::config::{RunConfig, Strength, WaveSpec};
use crate::error::{CliError, CliResult};

pub const PRESET_NAMES: &[&str] = &[
    "fig5a", "fig5b", "fig5c", "fig5d", "fig6a", "fig6b", "fig6c", "fig6d", "fig7a", "fig7b", "fig7c", "fig7d",
    "fig8a", "fig8b", "fig8c", "fig8d", "fig9", "fig10", "fig11a", "fig11b", "table1",
];

const PANEL_ALPHAS: [f64; 4] = [0.5, 1.0, 1.5, 2.0];
const FARFIELD_ALPHAS: [f64; 4] = [0.25, 0.5, 1.0, 1.25];

/// Water realisation of (α, β, δ) on a box of the given half width.
pub fn canonical_config(alpha: f64, beta: f64, delta: f64, half_width: f64) -> CliResult<RunConfig> {
    let s = canonical_water_setup(alpha, beta, delta)?;
    let mut cfg = RunConfig::new(s.layer.h, WaveSpec::K(s.wave.k), s.vortex.a, Strength::Gamma(s.vortex.gamma));
    cfg.fluid = s.fluid;
    cfg.model = s.model;
    cfg.half_width = half_width;
    Ok(cfg)
}

fn worked_example(model: WaveModel) -> RunConfig {
    let mut cfg = RunConfig::new(0.1, WaveSpec::Lambda(2.0), 1.0, Strength::AlphaShallow(1.0));
    cfg.model = model;
    cfg.half_width = 10.0;
    cfg
}

/// Labelled configurations for a preset name.
pub fn figure_preset(name: &str) -> CliResult<Vec<(String, RunConfig)>> {
    let unknown = || CliError::UnknownPreset(name.to_string());
    let single = |cfg: RunConfig| Ok(vec![(name.to_string(), cfg)]);
    match name {
        "fig9" | "fig10" => {
            let delta = if name == "fig9" { 8.0 } else { -8.0 };
            FARFIELD_ALPHAS
                .iter()
                .map(|&a| Ok((format!("{name}_alpha{a}"), canonical_config(a, 5.0, delta, 5.0)?)))
                .collect()
        }
        "fig11a" => single(worked_example(WaveModel::Shallow)),
        "fig11b" => single(worked_example(WaveModel::Dispersive)),
        "table1" => Ok([(0.1, 68.0), (0.5, 32.0), (1.0, 25.0), (2.0, 30.0)]
            .iter()
            .map(|&(lambda, c_phi)| {
                let mut cfg = RunConfig::new(0.1, WaveSpec::Lambda(lambda), 1.0, Strength::Gamma(0.0));
                cfg.c_phi = Some(c_phi);
                (format!("table1_lambda{lambda}"), cfg)
            })
            .collect()),
        _ => {
            let rest = name.strip_prefix("fig").ok_or_else(unknown)?;
            let (fig, panel) = rest.split_at(rest.len().saturating_sub(1));
            let (delta, beta) = match fig {
                "5" => (8.0, 5.0),
                "6" => (8.0, 10.0),
                "7" => (-8.0, 5.0),
                "8" => (-8.0, 10.0),
                _ => return Err(unknown()),
            };
            let idx = match panel {
                "a" => 0,
                "b" => 1,
                "c" => 2,
                "d" => 3,
                _ => return Err(unknown()),
            };
            single(canonical_config(PANEL_ALPHAS[idx], beta, delta, 5.0)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig7d_parameters() {
        let p = figure_preset("fig7d").unwrap();
        assert_eq!(p.len(), 1);
        let cfg = &p[0].1;
        let g = cfg.setup().unwrap().groups;
        assert!((g.delta + 8.0).abs() < 1e-9 && (g.beta - 5.0).abs() < 1e-9 && (g.alpha - 2.0).abs() < 1e-9);
        assert_eq!(cfg.half_width, 5.0);
    }

    #[test]
    fn fig11b_parameters() {
        let cfg = &figure_preset("fig11b").unwrap()[0].1;
        let g = cfg.setup().unwrap().groups;
        assert!((g.beta - std::f64::consts::PI).abs() < 1e-12);
        assert!((g.alpha - 0.41).abs() < 0.01 && (g.delta - 1.4).abs() < 0.05);
        assert_eq!(cfg.half_width, 10.0);
        let g = figure_preset("fig11a").unwrap()[0].1.setup().unwrap().groups;
        assert!((g.alpha - 1.0).abs() < 1e-12 && g.delta.is_infinite());
    }

    #[test]
    fn table1_rows() {
        let rows = figure_preset("table1").unwrap();
        let c: Vec<f64> = rows.iter().map(|(_, cfg)| cfg.c_phi.unwrap()).collect();
        assert_eq!(c, vec![68.0, 32.0, 25.0, 30.0]);
    }

    #[test]
    fn all_names_resolve() {
        for name in PRESET_NAMES {
            for (_, cfg) in figure_preset(name).unwrap() {
                cfg.setup().unwrap();
            }
        }
        for bad in ["fig4a", "fig5e", "fig", "nope", "fig12"] {
            assert!(matches!(figure_preset(bad), Err(CliError::UnknownPreset(_))));
        }
    }
}
