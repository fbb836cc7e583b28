//! Complex gamma function and the auxiliary quantities needed by the
//! Temme series for K.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::SpecFunError;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

// B_{2k} / (2k (2k - 1)) for k = 1..8.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

// Taylor coefficients of 1/Γ(z) = Σ c_k z^k, k = 1..26.
const RGAMMA_TAYLOR: [f64; 26] = [
    1.0,
    0.577_215_664_901_532_9,
    -0.655_878_071_520_253_8,
    -0.042_002_635_034_095_2,
    0.166_538_611_382_291_5,
    -0.042_197_734_555_544_3,
    -0.009_621_971_527_877_0,
    0.007_218_943_246_663_0,
    -0.001_165_167_591_859_1,
    -0.000_215_241_674_114_9,
    0.000_128_050_282_388_2,
    -0.000_020_134_854_780_7,
    -0.000_001_250_493_482_1,
    0.000_001_133_027_232_0,
    -0.000_000_205_633_841_7,
    0.000_000_006_116_095_0,
    0.000_000_005_002_007_5,
    -0.000_000_001_181_274_6,
    0.000_000_000_104_342_7,
    0.000_000_000_007_782_3,
    -0.000_000_000_003_696_8,
    0.000_000_000_000_510_0,
    -0.000_000_000_000_020_6,
    -0.000_000_000_000_005_4,
    0.000_000_000_000_001_4,
    0.000_000_000_000_000_1,
];

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// Stirling series for ln Γ(z), valid once |z| ≥ 15 and Re z > 0.
fn stirling_ln(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut corr = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        corr += pow * c;
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + corr
}

/// ln sin(πz) that stays finite for large |Im z|.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    if z.im.abs() < 20.0 {
        return (z * PI).sin().ln();
    }
    if z.im > 0.0 {
        // sin(πz) = e^{-iπz} (1 - e^{2iπz}) / (2i)
        -i * PI * z - (2.0 * i).ln() + (1.0 - (2.0 * i * PI * z).exp()).ln()
    } else {
        i * PI * z - (-2.0 * i).ln() + (1.0 - (-2.0 * i * PI * z).exp()).ln()
    }
}

/// ln Γ(z) on a branch that is continuous in the right half plane. Only
/// its exponential is meaningful to callers.
pub fn ln_gamma_cx(z: Complex64) -> Result<Complex64, SpecFunError> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(SpecFunError::Domain(format!("gamma of non-finite argument {z}")));
    }
    if is_pole(z) {
        return Err(SpecFunError::Pole(z.re));
    }
    if z.re < 0.5 {
        let refl = Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - ln_gamma_cx(1.0 - z)?;
        return Ok(refl);
    }
    let mut shifted = z;
    let mut ln_prod = Complex64::new(0.0, 0.0);
    while shifted.norm() < 15.0 {
        ln_prod += shifted.ln();
        shifted += 1.0;
    }
    Ok(stirling_ln(shifted) - ln_prod)
}

/// Complex gamma function Γ(z).
pub fn gamma_cx(z: Complex64) -> Result<Complex64, SpecFunError> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(SpecFunError::Domain(format!("gamma of non-finite argument {z}")));
    }
    if is_pole(z) {
        return Err(SpecFunError::Pole(z.re));
    }
    if z.re < 0.5 {
        let denom = (z * PI).sin() * gamma_cx(1.0 - z)?;
        let g = Complex64::new(PI, 0.0) / denom;
        return finite(g, "gamma");
    }
    // Shift up with an explicit product so small arguments keep full accuracy.
    let mut shifted = z;
    let mut prod = Complex64::new(1.0, 0.0);
    while shifted.norm() < 15.0 {
        prod *= shifted;
        shifted += 1.0;
    }
    let ln = stirling_ln(shifted);
    if ln.re > 709.0 {
        return Err(SpecFunError::Envelope(format!("gamma({z}) overflows")));
    }
    finite(ln.exp() / prod, "gamma")
}

/// 1/Γ(z), entire; exactly zero at the poles of Γ.
pub fn rgamma_cx(z: Complex64) -> Complex64 {
    if is_pole(z) {
        return Complex64::new(0.0, 0.0);
    }
    match ln_gamma_cx(z) {
        Ok(l) => (-l).exp(),
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

/// Temme's auxiliary gamma combinations for |Re μ| ≤ 1/2:
/// returns (Γ₁, Γ₂, 1/Γ(1+μ), 1/Γ(1-μ)) with
/// Γ₁ = (1/Γ(1-μ) - 1/Γ(1+μ)) / (2μ), Γ₂ = (1/Γ(1-μ) + 1/Γ(1+μ)) / 2.
pub(crate) fn temme_gammas(mu: Complex64) -> (Complex64, Complex64, Complex64, Complex64) {
    if mu.norm() < 0.5 {
        let mu2 = mu * mu;
        let mut gam1 = Complex64::new(0.0, 0.0);
        let mut gam2 = Complex64::new(0.0, 0.0);
        let mut pow = Complex64::new(1.0, 0.0);
        // c_{2j+1} feed Γ₂, c_{2j+2} feed Γ₁.
        for pair in RGAMMA_TAYLOR.chunks(2) {
            gam2 += pow * pair[0];
            gam1 -= pow * pair[1];
            pow *= mu2;
        }
        // 1/Γ(1±μ) = Γ₂ ∓ μΓ₁
        let gampl = gam2 - mu * gam1;
        let gammi = gam2 + mu * gam1;
        (gam1, gam2, gampl, gammi)
    } else {
        let gampl = rgamma_cx(1.0 + mu);
        let gammi = rgamma_cx(1.0 - mu);
        ((gammi - gampl) / (2.0 * mu), (gammi + gampl) * 0.5, gampl, gammi)
    }
}

fn finite(v: Complex64, what: &str) -> Result<Complex64, SpecFunError> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(SpecFunError::Envelope(format!("{what} result is not representable")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_of_one_and_half() {
        assert!((gamma_cx(c(1.0, 0.0)).unwrap() - 1.0).norm() < 1e-14);
        let g = gamma_cx(c(0.5, 0.0)).unwrap();
        assert!((g - PI.sqrt()).norm() < 1e-14);
    }

    #[test]
    fn poles_are_rejected() {
        for z in [0.0, -1.0, -7.0] {
            assert!(matches!(gamma_cx(c(z, 0.0)), Err(SpecFunError::Pole(_))));
        }
        assert_eq!(rgamma_cx(c(-3.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn factorials() {
        let mut f = 1.0;
        for n in 1..30 {
            f *= n as f64;
            let g = gamma_cx(c(n as f64 + 1.0, 0.0)).unwrap();
            assert!(((g.re - f) / f).abs() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn reflection_near_negative_axis() {
        // Γ(-1/2) = -2√π
        let g = gamma_cx(c(-0.5, 0.0)).unwrap();
        assert!((g.re + 2.0 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn log_gamma_matches_gamma() {
        for z in [c(0.3, 0.2), c(2.5, -1.0), c(-3.7, 0.4), c(40.0, 3.0)] {
            let g = gamma_cx(z).unwrap();
            let lg = ln_gamma_cx(z).unwrap().exp();
            assert!(((g - lg) / g).norm() < 1e-12, "{z}");
        }
    }

    #[test]
    fn temme_gammas_series_matches_direct() {
        for mu in [c(0.1, 0.0), c(0.3, 0.2), c(-0.2, 0.3), c(0.0, 0.45)] {
            let (g1, g2, gp, gm) = temme_gammas(mu);
            let gp_d = rgamma_cx(1.0 + mu);
            let gm_d = rgamma_cx(1.0 - mu);
            assert!((gp - gp_d).norm() < 1e-14);
            assert!((gm - gm_d).norm() < 1e-14);
            assert!((g2 - (gm_d + gp_d) * 0.5).norm() < 1e-14);
            assert!((g1 - (gm_d - gp_d) / (2.0 * mu)).norm() < 1e-12);
        }
    }
}
