//! Acceptance criteria 1–10. Prints one PASS/FAIL line each and exits nonzero on any failure.

use std::f64::consts::PI;
use std::fs;
use std::time::Instant;

use num_complex::Complex64 as C;
use vortexab::field::{far_field, render_grid, truncation_policy, Scatterer};
use vortexab::medium::{attenuation, capillary_length, delta_parameter, velocities};
use vortexab::scatter::{
    canonical_water_setup, inner_wavenumbers, solve_mode, solve_modes, BoundaryVectors, ModalCoefficients,
};
use vortexab::specfun::{cyl, cyl_derivative, cyl_eval, CylinderKind, EvalRequest};
use vortexab_cli::output::parse_pgm;
use vortexab_cli::{figure_preset, run, Command, Overrides, Source};

type Outcome = Result<String, String>;

/// Printed value and its significant figures.
type Entry = (f64, i32);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn round_sig(x: f64, sig: i32) -> f64 {
    let p = sig - 1 - x.abs().log10().floor() as i32;
    let s = 10f64.powi(p);
    (x * s).round() / s
}

fn criterion_1() -> Outcome {
    // (T_GW, T_CW, period) as printed, with significant figures (max 2).
    let printed: [(f64, Entry, Option<Entry>, Entry); 4] = [
        (0.1, (1e-7, 1), Some((0.013, 2)), (0.0015, 2)),
        (0.5, (0.0018, 2), Some((0.3, 1)), (0.0156, 2)),
        (1.0, (0.08, 1), Some((1.26, 2)), (0.04, 1)),
        (2.0, (0.6, 1), None, (0.07, 1)),
    ];
    let rows = figure_preset("table1").map_err(|e| e.to_string())?;
    let mut bad = Vec::new();
    for ((_, cfg), (lambda, gw, cw, period)) in rows.iter().zip(printed) {
        let s = cfg.setup().map_err(|e| e.to_string())?;
        let r = attenuation(s.wave.lambda, &s.fluid, cfg.c_phi.unwrap(), cfg.a);
        let mut cmp = |got: f64, (want, sig): Entry, what: &str| {
            if round_sig(got, sig) != round_sig(want, sig) {
                bad.push(format!("λ={lambda} {what}={got:.3e} vs {want}"));
            }
        };
        cmp(r.t_gw, gw, "T_GW");
        if let Some(cw) = cw {
            cmp(r.t_cw, cw, "T_CW");
        }
        cmp(r.period, period, "period");
    }
    check(bad.is_empty(), if bad.is_empty() { "4 rows match".into() } else { bad.join("; ") })
}

fn criterion_2() -> Outcome {
    let cfg = &figure_preset("fig11b").map_err(|e| e.to_string())?[0].1;
    let s = cfg.setup().map_err(|e| e.to_string())?;
    let delta = delta_parameter(s.wave.k, s.layer.h, capillary_length(&s.fluid)).map_err(|e| e.to_string())?;
    let v = velocities(s.layer.h, delta, s.fluid.g).map_err(|e| e.to_string())?;
    let alpha = s.groups.alpha;
    let ok = (delta - 1.4).abs() <= 0.05
        && (v.c_phi - 13.0).abs() <= 0.1
        && (v.c_g - 18.4).abs() <= 0.1
        && (alpha - 0.41).abs() <= 0.01;
    check(ok, format!("δ={delta:.4} c_φ={:.3} c_g={:.3} α={alpha:.4}", v.c_phi, v.c_g))
}

fn criterion_3() -> Outcome {
    let s = canonical_water_setup(1.0, 10.0, 1e6).map_err(|e| e.to_string())?;
    let g = s.groups;
    let ratio = s.vortex.omega / s.wave.nu;
    let mut worst: f64 = 0.0;
    for n in -30..=30 {
        let w = inner_wavenumbers(n, &g).map_err(|e| e.to_string())?;
        let expect = g.beta * (1.0 - n as f64 * ratio / 2.0);
        worst = worst.max((w.kn_a.re - expect).abs() / g.beta);
    }
    let gh = s.fluid.g * s.layer.h;
    let shallow = s.vortex.gamma * s.wave.nu / (2.0 * PI * gh);
    let alpha_err = (g.alpha / shallow - 1.0).abs();
    check(worst < 1e-4 && alpha_err < 1e-5, format!("k_n deviation {worst:.2e}, α deviation {alpha_err:.2e}"))
}

fn criterion_4() -> Outcome {
    let g = canonical_water_setup(0.0, 5.0, 8.0).map_err(|e| e.to_string())?.groups;
    let s = Scatterer::new(&g, truncation_policy(5.0, None, None, 5.0 * 2f64.sqrt())).map_err(|e| e.to_string())?;
    let grid = render_grid(&s, 5.0, 10, 0.0).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for row in 0..10 {
        for col in 0..10 {
            let (x, _) = grid.position(row, col);
            worst = worst.max((grid.value(row, col) - (5.0 * x).cos()).abs());
        }
    }
    let largest = s.table.coefficients().map(|c| c.b.norm().max(c.d.norm()).max(c.e.norm())).fold(0.0, f64::max);
    check(worst < 1e-6 && largest < 1e-10, format!("grid deviation {worst:.2e}, max |b,d,e| {largest:.2e}"))
}

fn det4(cols: [[C; 4]; 4]) -> C {
    // Leibniz expansion over the 24 permutations.
    let mut acc = C::new(0.0, 0.0);
    let idx = [0usize, 1, 2, 3];
    for a in idx {
        for b in idx {
            for c in idx {
                for d in idx {
                    let p = [a, b, c, d];
                    if (0..4).any(|i| (i + 1..4).any(|j| p[i] == p[j])) {
                        continue;
                    }
                    let inversions =
                        (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                    let term = cols[0][a] * cols[1][b] * cols[2][c] * cols[3][d];
                    acc += if inversions % 2 == 0 { term } else { -term };
                }
            }
        }
    }
    acc
}

fn cramer(v: &BoundaryVectors) -> [C; 4] {
    let base = [v.v_a, v.v_b, v.v_d, v.v_e];
    let d = det4(base);
    let mut out = [C::new(0.0, 0.0); 4];
    for (k, slot) in out.iter_mut().enumerate() {
        let mut cols = base;
        cols[k] = v.v_c;
        *slot = det4(cols) / d;
    }
    out
}

fn residual(v: &BoundaryVectors, co: &ModalCoefficients) -> f64 {
    let scale = v.v_c.iter().map(|x| x.norm()).fold(0.0, f64::max).max(1e-300);
    (0..4)
        .map(|p| (v.v_a[p] * co.a + v.v_b[p] * co.b + v.v_d[p] * co.d + v.v_e[p] * co.e - v.v_c[p]).norm())
        .fold(0.0, f64::max)
        / scale
}

fn criterion_5() -> Outcome {
    let mut worst_agree: f64 = 0.0;
    let mut worst_resid: f64 = 0.0;
    for delta in [8.0, -8.0] {
        let g = canonical_water_setup(1.0, 5.0, delta).map_err(|e| e.to_string())?.groups;
        for n in -10..=10 {
            let m = solve_mode(n, &g).map_err(|e| e.to_string())?;
            let co = m.coefficients;
            let cond = co.condition_number;
            let scale = co.a.norm().max(co.d.norm()).max(co.c.norm());
            for (x, y) in [co.a, co.b, co.d, co.e].into_iter().zip(cramer(&m.vectors)) {
                worst_agree = worst_agree.max((x - y).norm() / (scale * cond));
            }
            worst_resid = worst_resid.max(residual(&m.vectors, &co) / cond);
        }
    }
    check(
        worst_agree <= 1e-8 && worst_resid <= 1e-8,
        format!("LU vs Cramer {worst_agree:.2e}·cond, residual {worst_resid:.2e}·cond"),
    )
}

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

fn criterion_6() -> Outcome {
    use CylinderKind::*;
    let orders = [
        C::new(0.0, 0.0),
        C::new(1.0, 0.0),
        C::new(5.5, 0.0),
        C::new(2f64.sqrt(), 0.0),
        C::new(0.0, 1.0),
        C::new(0.5, 0.5),
        C::new(0.0, 2.5),
    ];
    let args: Vec<f64> = (0..=30).map(|i| 0.1 * 2000f64.powf(i as f64 / 30.0)).collect();
    let e = |r: Result<C, _>| r.map_err(|e: vortexab::specfun::SpecFunError| e.to_string());
    let mut w_jy: f64 = 0.0;
    let mut w_ik: f64 = 0.0;
    let mut w_h: f64 = 0.0;
    let mut rec: f64 = 0.0;
    for &nu in &orders {
        for &x in &args {
            let z = C::new(x, 0.0);
            let w = e(cyl(J, nu, z))? * e(cyl_derivative(Y, nu, z))? - e(cyl_derivative(J, nu, z))? * e(cyl(Y, nu, z))?;
            w_jy = w_jy.max(rel(w, C::new(2.0 / (PI * x), 0.0)));
            let sc = |k, o| cyl_eval(EvalRequest::new(k, o, z).scaled()).map_err(|e| e.to_string());
            let (i0, k0, i1, k1) = (sc(I, nu)?, sc(K, nu)?, sc(I, nu + 1.0)?, sc(K, nu + 1.0)?);
            let w = i0 * (nu / z * k0 - k1) - (nu / z * i0 + i1) * k0;
            w_ik = w_ik.max(rel(w, C::new(-1.0 / x, 0.0)));
            if x <= 200.0 {
                let h = e(cyl(H1, nu, z))?;
                w_h = w_h.max(rel(h, e(cyl(J, nu, z))? + C::i() * e(cyl(Y, nu, z))?));
            }
        }
        for kind in [J, Y, I, K, H1] {
            for x in [0.3, 1.0, 4.0, 11.0, 37.0, 70.0] {
                let z = C::new(x, 0.0);
                let (lo, mid, hi) = (e(cyl(kind, nu - 1.0, z))?, e(cyl(kind, nu, z))?, e(cyl(kind, nu + 1.0, z))?);
                let two = 2.0 * nu / z * mid;
                let r = match kind {
                    I => lo - hi - two,
                    K => lo - hi + two,
                    _ => lo + hi - two,
                };
                rec = rec.max(r.norm() / lo.norm().max(mid.norm()).max(hi.norm()));
            }
        }
    }
    check(
        w_jy < 1e-8 && w_ik < 1e-8 && w_h < 1e-10 && rec < 1e-8,
        format!("W[J,Y] {w_jy:.1e}, W[I,K] {w_ik:.1e}, H1=J+iY {w_h:.1e}, recurrence {rec:.1e}"),
    )
}

fn criterion_7() -> Outcome {
    let cfg = &figure_preset("fig5a").map_err(|e| e.to_string())?[0].1;
    let g = cfg.setup().map_err(|e| e.to_string())?.groups;
    let table = solve_modes(&g, 45).map_err(|e| e.to_string())?;
    let start = (3.0 * g.beta).ceil() as i64;
    let mut decays = true;
    let mut last_ratio = 0.0;
    for pick in [|c: &ModalCoefficients| c.a, |c: &ModalCoefficients| c.d] {
        let mags: Vec<f64> = (start..=45).map(|n| pick(&table.mode(n).unwrap().coefficients).norm()).collect();
        let ratios: Vec<f64> = mags.windows(2).map(|w| w[1] / w[0]).collect();
        let tail = &ratios[ratios.len() - 10..];
        decays &= tail.iter().all(|&r| r < 0.5) && tail.windows(2).all(|w| w[1] < w[0]);
        last_ratio = f64::max(last_ratio, *tail.last().unwrap());
    }
    let s = Scatterer::new(&g, truncation_policy(g.beta, None, None, 5.0 * 2f64.sqrt())).map_err(|e| e.to_string())?;
    let d = Scatterer::new(&g, s.truncation.doubled()).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    let mut peak: f64 = 0.0;
    for r in [0.2, 0.7, 1.0, 1.3, 2.0, 3.5, 5.0, 7.0] {
        for k in 0..16 {
            let th = 2.0 * PI * k as f64 / 16.0;
            let a = s.elevation(r, th, 0.0).map_err(|e| e.to_string())?;
            let b = d.elevation(r, th, 0.0).map_err(|e| e.to_string())?;
            worst = worst.max((a - b).abs());
            peak = peak.max(a.abs());
        }
    }
    check(
        decays && worst < 1e-8 * peak,
        format!("final ratio {last_ratio:.3}, doubling change {:.2e} relative", worst / peak),
    )
}

fn criterion_8() -> Outcome {
    // Frozen values from this implementation at β = 5, α = 1, 360 samples.
    const PLUS: f64 = 5.199366062576989;
    const MINUS: f64 = 4.778665405984616;
    let aniso = |delta: f64| -> Result<f64, String> {
        let g = canonical_water_setup(1.0, 5.0, delta).map_err(|e| e.to_string())?.groups;
        let n = truncation_policy(5.0, None, None, 1.0).n_core;
        let table = solve_modes(&g, n).map_err(|e| e.to_string())?;
        Ok(far_field(&table, 360).map_err(|e| e.to_string())?.anisotropy())
    };
    let (p, m) = (aniso(8.0)?, aniso(-8.0)?);
    let frozen = (p - PLUS).abs() < 1e-6 * PLUS && (m - MINUS).abs() < 1e-6 * MINUS;
    check(m < p && frozen, format!("δ=+8: {p:.6}, δ=−8: {m:.6}"))
}

fn manifest_value(text: &str, key: &str) -> Option<f64> {
    let prefix = format!("# {key} = ");
    text.lines().find_map(|l| l.strip_prefix(&prefix)).and_then(|v| v.parse().ok())
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut names: Vec<String> = (5..=8).flat_map(|f| ["a", "b", "c", "d"].map(|p| format!("fig{f}{p}"))).collect();
    names.extend(["fig11a".into(), "fig11b".into()]);
    let mut slowest: f64 = 0.0;
    let mut worst_resid: f64 = 0.0;
    let mut bad = Vec::new();
    for name in &names {
        let out = dir.path().join(name);
        let overrides = Overrides { out: Some(out.clone()), resolution: Some(200), ..Default::default() };
        let t = Instant::now();
        run(Command::Field, &Source::Preset(name.clone()), &overrides).map_err(|e| format!("{name}: {e}"))?;
        let secs = t.elapsed().as_secs_f64();
        slowest = slowest.max(secs);
        let pgm = fs::read(out.join("field.pgm")).map_err(|e| e.to_string())?;
        let pgm_ok = matches!(parse_pgm(&pgm), Some((200, 200, _)));
        let csv_rows = fs::read_to_string(out.join("field.csv")).map_err(|e| e.to_string())?.lines().count();
        let manifest = fs::read_to_string(out.join("manifest.txt")).map_err(|e| e.to_string())?;
        let resid = manifest_value(&manifest, "boundary_residual").unwrap_or(f64::INFINITY);
        worst_resid = worst_resid.max(resid);
        if !pgm_ok || csv_rows != 40_001 || resid > 1e-6 || secs >= 60.0 {
            bad.push(format!("{name} (pgm {pgm_ok}, csv rows {csv_rows}, residual {resid:.1e}, {secs:.1} s)"));
        }
    }
    let detail = format!("{} grids, worst residual {worst_resid:.1e}·max|η|, slowest {slowest:.1} s", names.len());
    check(bad.is_empty(), if bad.is_empty() { detail } else { format!("{detail}; failing: {}", bad.join(", ")) })
}

fn criterion_10() -> Outcome {
    let mut detail = Vec::new();
    let mut ok = true;
    for panel in ["a", "b", "c", "d"] {
        let name = format!("fig5{panel}");
        let g = figure_preset(&name).map_err(|e| e.to_string())?[0].1.setup().map_err(|e| e.to_string())?.groups;
        let table = solve_modes(&g, 5).map_err(|e| e.to_string())?;
        let worst = (1..=5)
            .map(|n| {
                let p = table.mode(n).unwrap().coefficients.a.norm();
                let m = table.mode(-n).unwrap().coefficients.a.norm();
                (p - m).abs() / p
            })
            .fold(0.0, f64::max);
        ok &= worst > 0.1;
        detail.push(format!("{name} {worst:.2}"));
    }
    check(ok, detail.join(", "))
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut failed = 0;
    for (n, f) in criteria {
        let t = Instant::now();
        let outcome = f();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("criterion {n}: PASS ({d}; {secs:.2} s)"),
            Err(d) => {
                failed += 1;
                println!("criterion {n}: FAIL ({d}; {secs:.2} s)");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
