//! Modified Bessel functions I_ν(w) and K_ν(w) for complex order and
//! argument. J, Y and H¹ are obtained from these by rotating the argument.
//!
//! K is computed at a base order μ = ν - p with |Re μ| ≤ 1/2 (Temme's series
//! for |w| < 2, Steed's continued fraction CF2 otherwise, and the Hankel
//! expansion at large |w|), then recurred forward in order, which is the
//! stable direction for K. I comes from the continued fraction for
//! I_{ν+1}/I_ν (the limit of Miller's backward recurrence) normalised by
//! the Wronskian I_ν K_{ν+1} + I_{ν+1} K_ν = 1/w, or from the power series
//! when |w| is small relative to the order.
//!
//! Scaling conventions: `Ĩ = e^{-|Re w|} I`, `K̃ = e^{w} K`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::{ln_gamma_cx, temme_gammas};
use super::{cdiv, SpecFunError};

const EPS: f64 = 1e-16;
const TINY: f64 = 1e-150;
const MAX_ITER: usize = 200_000;
const OVERFLOW: f64 = 1e300;

type C = Complex64;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn check(v: C, what: &str) -> Result<C, SpecFunError> {
    if v.re.is_finite() && v.im.is_finite() && v.norm() < OVERFLOW {
        Ok(v)
    } else {
        Err(SpecFunError::Envelope(format!("{what} overflows")))
    }
}

pub(crate) fn is_negative_integer(nu: C) -> bool {
    nu.im == 0.0 && nu.re < 0.0 && nu.re.fract() == 0.0
}

/// Split ν = μ + p with integer p ≥ 0 and -1/2 ≤ Re μ < 1/2; requires Re ν ≥ -1/2.
fn split_order(nu: C) -> (C, usize) {
    let p = (nu.re + 0.5).floor().max(0.0);
    (nu - p, p as usize)
}

/// Temme's series for (K_μ, K_{μ+1}), unscaled, |w| < 2.
fn k_temme(mu: C, w: C) -> Result<(C, C), SpecFunError> {
    let x2 = w * 0.5;
    let pimu = mu * PI;
    let fact = if pimu.norm() < EPS { c(1.0, 0.0) } else { pimu / pimu.sin() };
    let d = -x2.ln();
    let e = mu * d;
    let fact2 = if e.norm() < EPS { c(1.0, 0.0) } else { e.sinh() / e };
    let (gam1, gam2, gampl, gammi) = temme_gammas(mu);
    let mu2 = mu * mu;

    let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
    let mut sum = ff;
    let ee = e.exp();
    let mut p = 0.5 * ee / gampl;
    let mut q = 0.5 / (ee * gammi);
    let mut coef = c(1.0, 0.0);
    let d2 = x2 * x2;
    let mut sum1 = p;
    for i in 1..MAX_ITER {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi - mu2);
        coef *= d2 / fi;
        p /= fi - mu;
        q /= fi + mu;
        let del = coef * ff;
        sum += del;
        let del1 = coef * (p - fi * ff);
        sum1 += del1;
        if del.norm() < sum.norm() * EPS && del1.norm() < sum1.norm() * EPS {
            return Ok((sum, sum1 * 2.0 / w));
        }
    }
    Err(SpecFunError::Convergence("Temme series for K".into()))
}

/// Steed's CF2 with Temme's normalisation: scaled (K̃_μ, K̃_{μ+1}), |w| ≥ 2.
fn k_steed(mu: C, w: C) -> Result<(C, C), SpecFunError> {
    let mu2 = mu * mu;
    let mut b = 2.0 * (1.0 + w);
    let mut d = b.inv();
    let mut h = d;
    let mut delh = d;
    let mut q1 = c(0.0, 0.0);
    let mut q2 = c(1.0, 0.0);
    let a1 = 0.25 - mu2;
    let mut q = a1;
    let mut cc = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    let mut converged = false;
    for i in 2..MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        cc = -a * cc / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += cc * qnew;
        b += 2.0;
        d = (b + a * d).inv();
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if dels.norm() < s.norm() * EPS && delh.norm() < h.norm() * EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(SpecFunError::Convergence("continued fraction CF2 for K".into()));
    }
    h *= a1;
    let kmu = (PI / (2.0 * w)).sqrt() / s;
    let k1 = kmu * (mu + w + 0.5 - h) / w;
    Ok((kmu, k1))
}

/// Hankel's large-argument expansion for e^{w} K_ν(w).
fn k_asymptotic(nu: C, w: C) -> Result<C, SpecFunError> {
    let four_nu2 = 4.0 * nu * nu;
    let mut term = c(1.0, 0.0);
    let mut sum = term;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= (four_nu2 - odd * odd) / (8.0 * k as f64 * w);
        let t = term.norm();
        if t > last {
            return Err(SpecFunError::Convergence("asymptotic expansion for K".into()));
        }
        sum += term;
        if t < EPS * sum.norm() {
            return Ok((PI / (2.0 * w)).sqrt() * sum);
        }
        last = t;
    }
    Err(SpecFunError::Convergence("asymptotic expansion for K".into()))
}

/// Scaled (K̃_μ, K̃_{μ+1}) at a base order |Re μ| ≤ 1/2, Re w ≥ 0.
fn k_base(mu: C, w: C) -> Result<(C, C), SpecFunError> {
    let r = w.norm();
    let temme = || {
        let (k0, k1) = k_temme(mu, w)?;
        let ew = w.exp();
        Ok((k0 * ew, k1 * ew))
    };
    // CF2 stalls near the imaginary axis when Im μ is large; Temme's series
    // is still accurate to ~1e-14 there.
    if r < 2.0_f64.max(1.0 + mu.im.abs()) {
        temme()
    } else if r >= 30.0 + (mu + 1.0).norm_sqr() / 2.0 {
        Ok((k_asymptotic(mu, w)?, k_asymptotic(mu + 1.0, w)?))
    } else {
        match k_steed(mu, w) {
            Err(SpecFunError::Convergence(_)) if r < 12.0 => temme(),
            other => other,
        }
    }
}

/// Scaled (K̃_ν, K̃_{ν+1}) = e^{w}(K_ν, K_{ν+1}) for any order, w ≠ 0.
pub(crate) fn k_pair(nu: C, w: C) -> Result<(C, C), SpecFunError> {
    if w.re < 0.0 {
        return k_pair_left(nu, w);
    }
    if nu.re < -0.5 {
        // K_{-ν} = K_ν
        let (a, b) = k_pair(-nu - 1.0, w)?;
        return Ok((b, a));
    }
    let (mu, p) = split_order(nu);
    let (mut k0, mut k1) = k_base(mu, w)?;
    for j in 1..=p {
        let k2 = k0 + (2.0 * (mu + j as f64) / w) * k1;
        k0 = k1;
        k1 = check(k2, "K recurrence")?;
    }
    Ok((check(k0, "K")?, k1))
}

/// Continuation to Re w < 0: K_ν(w'e^{±iπ}) = e^{∓iνπ} K_ν(w') ∓ iπ I_ν(w').
fn k_pair_left(nu: C, w: C) -> Result<(C, C), SpecFunError> {
    let wp = -w;
    let sign = if w.im >= 0.0 { 1.0 } else { -1.0 };
    let (k0, k1) = k_pair(nu, wp)?;
    let (i0, i1) = i_pair(nu, wp)?;
    let rot = (c(0.0, -sign * PI) * nu).exp();
    let decay = (-2.0 * wp).exp();
    let phase = c(0.0, -wp.im).exp();
    let ipi = c(0.0, sign * PI);
    let r0 = rot * decay * k0 - ipi * phase * i0;
    let r1 = -rot * decay * k1 - ipi * phase * i1;
    Ok((check(r0, "K")?, check(r1, "K")?))
}

/// K_{ν+1}(w) / K_ν(w) without forming either value.
pub(crate) fn k_ratio(nu: C, w: C) -> Result<C, SpecFunError> {
    if w.re < 0.0 {
        let (k0, k1) = k_pair(nu, w)?;
        return Ok(cdiv(k1, k0));
    }
    if nu.re < -0.5 {
        return Ok(k_ratio(-nu - 1.0, w)?.inv());
    }
    let (mu, p) = split_order(nu);
    let (k0, k1) = k_base(mu, w)?;
    let mut rho = k1 / k0;
    for j in 1..=p {
        rho = rho.inv() + 2.0 * (mu + j as f64) / w;
    }
    Ok(rho)
}

/// Continued fraction for I_{ν+1}(w)/I_ν(w), modified Lentz.
fn i_cf1(nu: C, w: C) -> Result<C, SpecFunError> {
    let mut f = c(TINY, 0.0);
    let mut cc = f;
    let mut d = c(0.0, 0.0);
    let winv = w.inv();
    for k in 1..MAX_ITER {
        let b = 2.0 * (nu + k as f64) * winv;
        d = b + d;
        if d.norm() == 0.0 {
            d = c(TINY, 0.0);
        }
        cc = b + cc.inv();
        if cc.norm() == 0.0 {
            cc = c(TINY, 0.0);
        }
        d = d.inv();
        let delta = cc * d;
        f *= delta;
        if (delta - 1.0).norm() < 4.0 * f64::EPSILON {
            return Ok(f);
        }
    }
    Err(SpecFunError::Convergence("continued fraction CF1 for I".into()))
}

fn use_series(nu: C, w: C) -> bool {
    let r = w.norm();
    r < 2.0 || r * r < (nu + 1.0).norm()
}

/// Unscaled ascending series for I_ν(w).
fn i_series(nu: C, w: C) -> Result<C, SpecFunError> {
    let half = w * 0.5;
    let ln_t0 = if nu == c(0.0, 0.0) { c(0.0, 0.0) } else { nu * half.ln() - ln_gamma_cx(nu + 1.0)? };
    if ln_t0.re > 700.0 {
        return Err(SpecFunError::Envelope("I series overflows".into()));
    }
    let mut t = ln_t0.exp();
    let q = half * half;
    let mut sum = t;
    for k in 1..MAX_ITER {
        let fk = k as f64;
        t *= q / (fk * (nu + fk));
        sum += t;
        if t.norm() <= EPS * sum.norm() {
            return Ok(sum);
        }
        if sum.norm() == 0.0 && t.norm() == 0.0 {
            return Ok(sum);
        }
    }
    Err(SpecFunError::Convergence("power series for I".into()))
}

/// Scaled (Ĩ_ν, Ĩ_{ν+1}) = e^{-|Re w|}(I_ν, I_{ν+1}), w ≠ 0.
pub(crate) fn i_pair(nu: C, w: C) -> Result<(C, C), SpecFunError> {
    if w.re < 0.0 {
        // I_ν(w'e^{±iπ}) = e^{±iπν} I_ν(w')
        let sign = if w.im >= 0.0 { 1.0 } else { -1.0 };
        let (i0, i1) = i_pair(nu, -w)?;
        let rot = (c(0.0, sign * PI) * nu).exp();
        return Ok((check(rot * i0, "I")?, check(-rot * i1, "I")?));
    }
    if is_negative_integer(nu) {
        // I_{-n} = I_n
        let (a, b) = i_pair(-nu - 1.0, w)?;
        return Ok((b, a));
    }
    if nu.re < -0.5 {
        // I_ν = I_{-ν} - (2/π) sin(νπ) K_ν
        let lam = -nu - 1.0;
        let (i_lam, i_lam1) = i_pair(lam, w)?;
        let (k_lam, k_lam1) = k_pair(lam, w)?;
        let s = (nu * PI).sin() * (2.0 / PI);
        let f = (-w - w.re).exp();
        let i0 = i_lam1 - s * k_lam1 * f;
        let i1 = i_lam + s * k_lam * f;
        return Ok((check(i0, "I")?, check(i1, "I")?));
    }
    let r = i_cf1(nu, w)?;
    let i0 = if use_series(nu, w) {
        i_series(nu, w)? * (-w.re).exp()
    } else {
        let (k0, k1) = k_pair(nu, w)?;
        // e^{-w} I_ν = 1 / (w (K̃_{ν+1} + r K̃_ν)); rotate to e^{-Re w} scaling.
        c(0.0, w.im).exp() / (w * (k1 + r * k0))
    };
    let i0 = check(i0, "I")?;
    Ok((i0, check(r * i0, "I")?))
}

/// I_{ν+1}(w) / I_ν(w) without forming either value.
pub(crate) fn i_ratio(nu: C, w: C) -> Result<C, SpecFunError> {
    if w.re < 0.0 {
        return Ok(-i_ratio(nu, -w)?);
    }
    if is_negative_integer(nu) {
        return Ok(i_ratio(-nu - 1.0, w)?.inv());
    }
    if nu.re < -0.5 {
        let (i0, i1) = i_pair(nu, w)?;
        return Ok(cdiv(i1, i0));
    }
    i_cf1(nu, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn temme_and_steed_agree_at_the_seam() {
        for mu in [c(0.0, 0.0), c(0.3, 0.0), c(-0.4, 0.2), c(0.0, 1.0)] {
            let w = c(2.0, 0.0);
            let (t0, t1) = k_temme(mu, w).unwrap();
            let (s0, s1) = k_steed(mu, w).unwrap();
            let ew = w.exp();
            assert!(((t0 * ew - s0) / s0).norm() < 1e-13, "mu = {mu}");
            assert!(((t1 * ew - s1) / s1).norm() < 1e-13, "mu = {mu}");
        }
    }

    #[test]
    fn steed_and_asymptotic_agree() {
        for mu in [c(0.0, 0.0), c(0.5, 0.0), c(0.2, -0.3)] {
            for w in [c(35.0, 0.0), c(0.0, -40.0), c(20.0, 25.0)] {
                let (s0, s1) = k_steed(mu, w).unwrap();
                let a0 = k_asymptotic(mu, w).unwrap();
                let a1 = k_asymptotic(mu + 1.0, w).unwrap();
                assert!(((a0 - s0) / s0).norm() < 1e-13, "mu={mu} w={w}");
                assert!(((a1 - s1) / s1).norm() < 1e-13, "mu={mu} w={w}");
            }
        }
    }

    #[test]
    fn half_order_k_is_elementary() {
        // K_{1/2}(x) = √(π/2x) e^{-x}
        for x in [0.5, 3.0, 17.0, 60.0] {
            let (k0, _) = k_pair(c(0.5, 0.0), c(x, 0.0)).unwrap();
            let exact = (PI / (2.0 * x)).sqrt();
            assert!((k0.re - exact).abs() < 1e-13 * exact, "x = {x}: {k0}");
        }
    }

    #[test]
    fn series_and_steed_agree_for_i() {
        for nu in [c(0.0, 0.0), c(1.5, 0.0), c(0.3, 0.7)] {
            for w in [c(2.5, 0.0), c(0.0, 3.0), c(1.5, -2.0)] {
                let s = i_series(nu, w).unwrap() * (-w.re).exp();
                let (k0, k1) = k_pair(nu, w).unwrap();
                let r = i_cf1(nu, w).unwrap();
                let st = c(0.0, w.im).exp() / (w * (k1 + r * k0));
                assert!(((s - st) / s).norm() < 1e-12, "nu={nu} w={w}");
            }
        }
    }
}
