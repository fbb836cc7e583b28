//! Surface elevation synthesis.
//!
//! The elevation is Re Σ_n F_n(r') e^{i(nθ − νt)} with radial terms F_n taken
//! from the core solution for r' ≤ 1 and from the incident plus scattered
//! outer solution for r' > 1. Radii are in units of the core radius.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::medium::DimensionlessGroups;
use crate::scatter::{companion_kinds, solve_modes, CoefficientTable, Regime};
use crate::specfun::{cyl, cyl_quotient, ln_j_bound, minus_i_pow, CylinderKind, MAX_ORDER};
use crate::{Error, Result};

type C = Complex64;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Relative tail size above which a truncation is flagged.
pub const TAIL_TOLERANCE: f64 = 1e-8;

/// Terms whose magnitude bound falls below this are dropped when their
/// order lies outside the special-function envelope.
pub const NEGLIGIBLE: f64 = 1e-30;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesTruncation {
    /// Cutoff for the core and scattered sums.
    pub n_core: i64,
    /// Cutoff for the incident (Aharonov–Bohm) sum.
    pub n_ab: i64,
    /// Bound on the first omitted term relative to unit amplitude.
    pub tail_estimate: f64,
}

impl SeriesTruncation {
    pub fn tail_warning(&self) -> bool {
        self.tail_estimate > TAIL_TOLERANCE
    }

    /// Both cutoffs doubled, as used by the self-convergence checks.
    pub fn doubled(&self) -> Self {
        Self { n_core: 2 * self.n_core, n_ab: 2 * self.n_ab, tail_estimate: self.tail_estimate }
    }
}

/// Debye-type bound on |J_n(x)| for real x ≥ 0. For x ≪ n it reduces to
/// (e x / 2n)^n / √(2πn).
pub fn bessel_tail_bound(n: i64, x: f64) -> f64 {
    let n = n.max(1) as f64;
    if x >= n {
        return 1.0;
    }
    if x == 0.0 {
        return 0.0;
    }
    let a = (n / x).acosh();
    let t = a.tanh();
    ((-n * (a - t)).exp() / (2.0 * PI * n * t).sqrt()).min(1.0)
}

/// Cutoffs for a given β. `r_max` is the outermost radius that will be
/// sampled; the incident series is judged there.
pub fn truncation_policy(beta: f64, n_core: Option<i64>, n_ab: Option<i64>, r_max: f64) -> SeriesTruncation {
    let n_core = n_core.unwrap_or_else(|| (5.0 * beta).ceil().max(30.0) as i64).max(1);
    let n_ab = n_ab.unwrap_or_else(|| (9.0 * beta).ceil().max(90.0) as i64).max(n_core);
    let tail = bessel_tail_bound(n_core + 1, beta).max(bessel_tail_bound(n_ab + 1, beta * r_max.max(1.0)));
    SeriesTruncation { n_core, n_ab, tail_estimate: tail }
}

fn negligible_j(nu: C, z: C) -> bool {
    nu.im == 0.0 && nu.re > 0.0 && ln_j_bound(nu.re, z) < NEGLIGIBLE.ln()
}

/// Solved coefficients together with the truncation used to sum them.
#[derive(Debug, Clone, PartialEq)]
pub struct Scatterer {
    pub table: CoefficientTable,
    pub truncation: SeriesTruncation,
}

impl Scatterer {
    pub fn new(groups: &DimensionlessGroups, truncation: SeriesTruncation) -> Result<Self> {
        let table = solve_modes(groups, truncation.n_core)?;
        Ok(Self { table, truncation })
    }

    pub fn groups(&self) -> &DimensionlessGroups {
        &self.table.groups
    }

    /// Core radial terms for n = −n_core..=n_core.
    pub fn core_terms(&self, r: f64) -> Result<Vec<C>> {
        let (x_kind, _) = companion_kinds(self.table.regime);
        self.table
            .modes
            .iter()
            .map(|m| {
                let co = &m.coefficients;
                if co.a == c(0.0, 0.0) && co.b == c(0.0, 0.0) {
                    return Ok(c(0.0, 0.0));
                }
                let nn = c(m.orders.n as f64, 0.0);
                let mut t = co.a * cyl_quotient(CylinderKind::J, nn, m.wavenumbers.kn_a, r)?;
                if self.table.regime != Regime::Shallow && co.b != c(0.0, 0.0) {
                    t += co.b * cyl_quotient(x_kind, nn, m.wavenumbers.kappan_a, r)?;
                }
                Ok(t)
            })
            .collect()
    }

    /// Scattered radial terms for n = −n_core..=n_core.
    pub fn scattered_terms(&self, r: f64) -> Result<Vec<C>> {
        let (_, y_kind) = companion_kinds(self.table.regime);
        let beta = c(self.table.groups.beta, 0.0);
        self.table
            .modes
            .iter()
            .map(|m| {
                let co = &m.coefficients;
                let mut t = c(0.0, 0.0);
                if co.d != c(0.0, 0.0) {
                    t += co.d * cyl_quotient(CylinderKind::H1, m.orders.m_plus, beta, r)?;
                }
                if self.table.regime != Regime::Shallow && co.e != c(0.0, 0.0) {
                    t += co.e * cyl_quotient(y_kind, m.orders.m_minus, m.wavenumbers.q_a, r)?;
                }
                Ok(t)
            })
            .collect()
    }

    /// Radial terms of the whole field at r, with the lowest mode index.
    pub fn radial_terms(&self, r: f64) -> Result<(i64, Vec<C>)> {
        if r <= 1.0 {
            return Ok((-self.truncation.n_core, self.core_terms(r)?));
        }
        let mut terms = incident_terms(self.groups(), self.truncation.n_ab, r)?;
        let offset = (self.truncation.n_ab - self.truncation.n_core) as usize;
        for (k, s) in self.scattered_terms(r)?.into_iter().enumerate() {
            terms[offset + k] += s;
        }
        Ok((-self.truncation.n_ab, terms))
    }

    /// The complex modal sum at (r', θ) before the time factor.
    pub fn complex_field(&self, r: f64, theta: f64) -> Result<C> {
        let (n0, terms) = self.radial_terms(r)?;
        Ok(angular_sum(&terms, n0, theta))
    }

    /// Elevation at (r', θ) and phase ν·t.
    pub fn elevation(&self, r: f64, theta: f64, phase: f64) -> Result<f64> {
        Ok((self.complex_field(r, theta)? * C::from_polar(1.0, -phase)).re)
    }
}

/// Σ_k terms[k] e^{i(n0 + k)θ}.
pub fn angular_sum(terms: &[C], n0: i64, theta: f64) -> C {
    let step = C::from_polar(1.0, theta);
    let mut w = C::from_polar(1.0, n0 as f64 * theta);
    let mut acc = c(0.0, 0.0);
    for (k, t) in terms.iter().enumerate() {
        // Re-anchor periodically to stop rounding drift in the running power.
        if k % 32 == 0 {
            w = C::from_polar(1.0, (n0 + k as i64) as f64 * theta);
        }
        acc += t * w;
        w *= step;
    }
    acc
}

/// Incident radial terms (−i)^{m_+} J_{m_+}(βr') for n = −n_ab..=n_ab.
pub fn incident_terms(groups: &DimensionlessGroups, n_ab: i64, r: f64) -> Result<Vec<C>> {
    let z = c(groups.beta * r, 0.0);
    (-n_ab..=n_ab)
        .map(|n| {
            let m = crate::scatter::outer_orders(n, groups.alpha).m_plus;
            if m.norm() > MAX_ORDER && negligible_j(m, z) {
                return Ok(c(0.0, 0.0));
            }
            Ok(minus_i_pow(m) * cyl(CylinderKind::J, m, z)?)
        })
        .collect()
}

fn check_core_radius(r: f64) -> Result<()> {
    if (0.0..=1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("core evaluation needs 0 <= r' <= 1, got {r}")))
    }
}

fn check_outer_radius(r: f64) -> Result<()> {
    if r >= 1.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("outer evaluation needs r' >= 1, got {r}")))
    }
}

/// Elevation inside the core.
pub fn eta_core(r: f64, theta: f64, phase: f64, scatterer: &Scatterer) -> Result<f64> {
    check_core_radius(r)?;
    let terms = scatterer.core_terms(r)?;
    Ok((angular_sum(&terms, -scatterer.truncation.n_core, theta) * C::from_polar(1.0, -phase)).re)
}

/// Incident (Aharonov–Bohm) elevation outside the core.
pub fn eta_ab(r: f64, theta: f64, phase: f64, groups: &DimensionlessGroups, n_ab: i64) -> Result<f64> {
    check_outer_radius(r)?;
    let terms = incident_terms(groups, n_ab, r)?;
    Ok((angular_sum(&terms, -n_ab, theta) * C::from_polar(1.0, -phase)).re)
}

/// Scattered elevation outside the core.
pub fn eta_r(r: f64, theta: f64, phase: f64, scatterer: &Scatterer) -> Result<f64> {
    check_outer_radius(r)?;
    let terms = scatterer.scattered_terms(r)?;
    Ok((angular_sum(&terms, -scatterer.truncation.n_core, theta) * C::from_polar(1.0, -phase)).re)
}

/// Finite-core correction to the Aharonov–Bohm far-field amplitude.
pub fn far_field_correction(theta: f64, table: &CoefficientTable) -> Result<C> {
    let groups = &table.groups;
    let beta = c(groups.beta, 0.0);
    let mut acc = c(0.0, 0.0);
    for m in &table.modes {
        let n = m.orders.n;
        let phase = C::from_polar(1.0, n as f64 * theta);
        let g = (c(0.0, -PI) * m.orders.m_plus).exp() - C::from_polar(1.0, -PI * m.orders.m_old);
        let mut t = g;
        let co = &m.coefficients;
        if co.d != c(0.0, 0.0) {
            t += 2.0 * co.d * minus_i_pow(m.orders.m_plus) / cyl(CylinderKind::H1, m.orders.m_plus, beta)?;
        }
        if table.regime == Regime::Negative && co.e != c(0.0, 0.0) {
            let q = m.wavenumbers.q_a;
            let scale = (groups.delta.abs() - 1.0).powf(0.25);
            t += 2.0 * co.e * minus_i_pow(m.orders.m_minus) / (scale * cyl(CylinderKind::H1, m.orders.m_minus, q)?);
        }
        acc += t * phase;
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FarFieldAmplitude {
    pub theta: Vec<f64>,
    pub values: Vec<C>,
}

impl FarFieldAmplitude {
    /// (max − min)/mean of |f̃|.
    pub fn anisotropy(&self) -> f64 {
        let mags: Vec<f64> = self.values.iter().map(|v| v.norm()).collect();
        let max = mags.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = mags.iter().cloned().fold(f64::INFINITY, f64::min);
        let mean = mags.iter().sum::<f64>() / mags.len() as f64;
        (max - min) / mean
    }
}

/// f̃ sampled at θ_j = 2πj/samples.
pub fn far_field(table: &CoefficientTable, samples: usize) -> Result<FarFieldAmplitude> {
    let theta: Vec<f64> = (0..samples).map(|j| 2.0 * PI * j as f64 / samples as f64).collect();
    let values = theta.par_iter().map(|&t| far_field_correction(t, table)).collect::<Result<Vec<_>>>()?;
    Ok(FarFieldAmplitude { theta, values })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    /// Half side of the square box, in units of a.
    pub half_width: f64,
    /// Samples per axis.
    pub resolution: usize,
    /// Row-major, row 0 at the largest y, column 0 at the smallest x.
    pub values: Vec<f64>,
    /// Cells within half a cell of r' = 1.
    pub ring: Vec<bool>,
    /// Snapshot phase ν·t.
    pub time: f64,
}

impl FieldGrid {
    /// Cell-centre coordinate of index i along either axis.
    pub fn coordinate(half_width: f64, resolution: usize, i: usize) -> f64 {
        (2.0 * i as f64 + 1.0 - resolution as f64) * half_width / resolution as f64
    }

    /// (x', y') of a cell.
    pub fn position(&self, row: usize, col: usize) -> (f64, f64) {
        let x = Self::coordinate(self.half_width, self.resolution, col);
        let y = Self::coordinate(self.half_width, self.resolution, self.resolution - 1 - row);
        (x, y)
    }

    pub fn value(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.resolution + col]
    }

    pub fn min_max(&self) -> (f64, f64) {
        self.values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
    }
}

/// Sample the elevation at cell centres of a square box.
///
/// Cells sharing a radius share their radial terms; with a centred grid the
/// squared radius is an integer multiple of (half_width/resolution)².
pub fn render_grid(scatterer: &Scatterer, half_width: f64, resolution: usize, phase: f64) -> Result<FieldGrid> {
    if !(half_width > 0.0 && half_width.is_finite()) || resolution == 0 {
        return Err(Error::InvalidInput(format!(
            "grid needs half_width > 0 and resolution > 0, got {half_width}, {resolution}"
        )));
    }
    let n = resolution as i64;
    let cell = half_width / resolution as f64;
    let key = |i: usize| {
        let u = 2 * i as i64 + 1 - n;
        (u * u) as u64
    };
    let mut keys: Vec<u64> =
        (0..resolution).flat_map(|i| (0..=i).map(move |j| (i, j))).map(|(i, j)| key(i) + key(j)).collect();
    keys.sort_unstable();
    keys.dedup();
    let radial: HashMap<u64, (i64, Vec<C>)> = keys
        .par_iter()
        .map(|&k| scatterer.radial_terms(cell * (k as f64).sqrt()).map(|t| (k, t)))
        .collect::<Result<_>>()?;
    let rotate = C::from_polar(1.0, -phase);
    let values: Vec<f64> = (0..resolution * resolution)
        .into_par_iter()
        .map(|idx| {
            let (row, col) = (idx / resolution, idx % resolution);
            let x = FieldGrid::coordinate(half_width, resolution, col);
            let y = FieldGrid::coordinate(half_width, resolution, resolution - 1 - row);
            let (n0, terms) = &radial[&(key(col) + key(resolution - 1 - row))];
            (angular_sum(terms, *n0, y.atan2(x)) * rotate).re
        })
        .collect();
    let ring = (0..resolution * resolution)
        .map(|idx| {
            let (row, col) = (idx / resolution, idx % resolution);
            let r = cell * ((key(col) + key(resolution - 1 - row)) as f64).sqrt();
            (r - 1.0).abs() <= cell
        })
        .collect();
    Ok(FieldGrid { half_width, resolution, values, ring, time: phase })
}

/// Largest |η_core − (η_AB + η_R)| on r' = 1 and the largest |η| seen,
/// over `angles` equally spaced directions.
pub fn boundary_residual(scatterer: &Scatterer, angles: usize) -> Result<(f64, f64)> {
    let inner = scatterer.core_terms(1.0)?;
    let mut outer = incident_terms(scatterer.groups(), scatterer.truncation.n_ab, 1.0)?;
    let offset = (scatterer.truncation.n_ab - scatterer.truncation.n_core) as usize;
    for (k, s) in scatterer.scattered_terms(1.0)?.into_iter().enumerate() {
        outer[offset + k] += s;
    }
    let mut worst: f64 = 0.0;
    let mut peak: f64 = 0.0;
    for j in 0..angles {
        let theta = 2.0 * PI * j as f64 / angles as f64;
        let a = angular_sum(&inner, -scatterer.truncation.n_core, theta);
        let b = angular_sum(&outer, -scatterer.truncation.n_ab, theta);
        worst = worst.max((a.re - b.re).abs());
        peak = peak.max(a.re.abs()).max(b.re.abs());
    }
    Ok((worst, peak))
}

/// Mean angular phase slope of η·e^{iβx} on a circle, in units of 2π per turn.
///
/// The phase is unwrapped from θ = π + wedge round through θ = 0 to
/// θ = 3π − wedge, skipping the forward wedge where the dislocation sits.
/// A pure Aharonov–Bohm wave gives α.
pub fn dislocation_measure(scatterer: &Scatterer, r: f64, wedge: f64) -> Result<f64> {
    let beta = scatterer.groups().beta;
    let (n0, terms) = scatterer.radial_terms(r)?;
    let steps = 720;
    let span = 2.0 * PI - 2.0 * wedge;
    let mut prev: Option<f64> = None;
    let mut total = 0.0;
    for j in 0..=steps {
        let theta = PI + wedge + span * j as f64 / steps as f64;
        let v = angular_sum(&terms, n0, theta) * C::from_polar(1.0, beta * r * theta.cos());
        let arg = v.arg();
        if let Some(p) = prev {
            let mut d = arg - p;
            d -= 2.0 * PI * (d / (2.0 * PI)).round();
            total += d;
        }
        prev = Some(arg);
    }
    Ok(-total / span)
}
