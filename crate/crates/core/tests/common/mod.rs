#![allow(dead_code)]

use num_complex::Complex64 as C;
use vortexab::scatter::{BoundaryVectors, Setup};

/// 4×4 determinant by cofactor expansion along the first row, columns given.
pub fn det4(cols: [[C; 4]; 4]) -> C {
    let m = |r: usize, c: usize| cols[c][r];
    let det3 = |rows: [usize; 3], cs: [usize; 3]| {
        let a = |i: usize, j: usize| m(rows[i], cs[j]);
        a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
            + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
    };
    let mut acc = C::new(0.0, 0.0);
    for j in 0..4 {
        let others: Vec<usize> = (0..4).filter(|&k| k != j).collect();
        let minor = det3([1, 2, 3], [others[0], others[1], others[2]]);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * m(0, j) * minor;
    }
    acc
}

/// (a, b, d, e) by Cramer's rule.
pub fn cramer(v: &BoundaryVectors) -> [C; 4] {
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

/// Inner wavenumbers (k_n a, κ_n a) from the dimensional quartic roots.
pub fn primitive_wavenumbers(setup: &Setup, n: i64) -> (C, C) {
    let k = setup.wave.k;
    let nu = setup.wave.nu;
    let omega = setup.vortex.omega;
    let gh = setup.fluid.g * setup.layer.h;
    let delta = setup.groups.delta;
    let a = setup.vortex.a;
    let shift = nu - n as f64 * omega / 2.0;
    if delta > 0.0 {
        let root = (1.0 + 4.0 * shift * shift / (gh * k * k * delta)).sqrt();
        let kp2 = 0.5 * k * k * delta * (root - 1.0);
        let km2 = 0.5 * k * k * delta * (root + 1.0);
        (C::new(a * kp2.sqrt(), 0.0), C::new(a * km2.sqrt(), 0.0))
    } else {
        let ad = delta.abs();
        let root = C::new(1.0 - 4.0 * shift * shift / (gh * k * k * ad), 0.0).sqrt();
        let kminus2 = 0.5 * k * k * ad * (1.0 - root);
        let kplus2 = 0.5 * k * k * ad * (1.0 + root);
        (a * kminus2.sqrt(), a * kplus2.sqrt())
    }
}
