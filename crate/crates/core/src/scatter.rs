//! Per-mode matching at the vortex edge.
//!
//! Lengths are scaled by the core radius a, so k·a = β. Each angular mode n
//! carries an inner pair of radial wavenumbers, outer Bessel orders m_±, and
//! five amplitudes fixed by continuity of η and three radial derivatives at
//! r = a plus the incident-wave condition.

use std::f64::consts::PI;

use nalgebra::{Matrix2, Matrix4, Vector2, Vector4};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::medium::{
    capillary_length, delta_parameter, velocities, DimensionlessGroups, DispersionModel, FluidProperties,
    LayerGeometry, WaveParameters,
};
use crate::specfun::{cyl_pair, cyl_ratio, ln_j_bound, minus_i_pow, CylinderKind, SpecFunError, MAX_ORDER};
use crate::{Error, Result};

type C = Complex64;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Sign of δ selects the radial function families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// δ > 0: inner J and I, outer H¹ and K.
    Positive,
    /// δ < −1: inner J and J, outer H¹ and H¹.
    Negative,
    /// |δ| = ∞: second-order problem, inner J and outer H¹ only.
    Shallow,
}

impl Regime {
    pub fn of(delta: f64) -> Result<Self> {
        if delta.is_infinite() {
            Ok(Self::Shallow)
        } else if delta > 0.0 {
            Ok(Self::Positive)
        } else if delta < -1.0 {
            Ok(Self::Negative)
        } else {
            Err(Error::NonPropagating(delta))
        }
    }
}

/// Wave propagation model used to derive the dimensionless groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WaveModel {
    /// Capillary–gravity dispersion to first order in depth.
    Dispersive,
    /// Nondispersive shallow water, c = √(gh).
    Shallow,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VortexFlow {
    /// Core vorticity, 1/s.
    pub omega: f64,
    /// Core radius, cm.
    pub a: f64,
    /// Circulation Γ = πωa², cm²/s.
    pub gamma: f64,
}

impl VortexFlow {
    pub fn from_circulation(gamma: f64, a: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0 && gamma.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "need a > 0 and finite circulation, got a = {a}, gamma = {gamma}"
            )));
        }
        Ok(Self { omega: gamma / (PI * a * a), a, gamma })
    }
}

/// Dimensionless groups of a physical configuration.
pub fn dimensionless_setup(
    fluid: &FluidProperties,
    layer: &LayerGeometry,
    wave: &WaveParameters,
    vortex: &VortexFlow,
    model: WaveModel,
) -> Result<DimensionlessGroups> {
    let l_c = capillary_length(fluid);
    let (delta, c_phi, c_g) = match model {
        WaveModel::Dispersive => {
            let delta = delta_parameter(wave.k, layer.h, l_c)?;
            let v = velocities(layer.h, delta, fluid.g)?;
            (delta, v.c_phi, v.c_g)
        }
        WaveModel::Shallow => {
            let c = (fluid.g * layer.h).sqrt();
            (f64::INFINITY, c, c)
        }
    };
    let alpha = vortex.gamma * wave.nu / (2.0 * PI * c_phi * c_g);
    Ok(DimensionlessGroups {
        alpha,
        beta: wave.k * vortex.a,
        delta,
        mach: vortex.omega * vortex.a / 2.0 / c_phi,
        kh: wave.k * layer.h,
        kl_c: wave.k * l_c,
        c_phi,
        c_g,
    })
}

/// A physical configuration together with its groups.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Setup {
    pub fluid: FluidProperties,
    pub layer: LayerGeometry,
    pub wave: WaveParameters,
    pub vortex: VortexFlow,
    pub model: WaveModel,
    pub groups: DimensionlessGroups,
}

/// Water realisation of given (α, β, δ): h = l_c for δ > 0, h = 3 l_c for
/// δ < 0, k fixed by δ, a = β/k and Γ chosen to give α. δ = ±∞ selects the
/// shallow-water model at h = l_c and k·l_c = √3/4.
pub fn canonical_water_setup(alpha: f64, beta: f64, delta: f64) -> Result<Setup> {
    let fluid = FluidProperties::water();
    let l_c = capillary_length(&fluid);
    let (h, k, model) = if delta.is_infinite() {
        (l_c, 3f64.sqrt() / 4.0 / l_c, WaveModel::Shallow)
    } else if delta > 0.0 {
        (l_c, (1.5 / delta).sqrt() / l_c, WaveModel::Dispersive)
    } else if delta < -1.0 {
        (3.0 * l_c, 1.0 / (l_c * (2.0 * delta.abs()).sqrt()), WaveModel::Dispersive)
    } else {
        return Err(Error::NonPropagating(delta));
    };
    let layer = LayerGeometry::new(h)?;
    let mut wave = WaveParameters::from_k(k, &fluid, &layer, DispersionModel::Cubic)?;
    if model == WaveModel::Shallow {
        wave.nu = k * (fluid.g * h).sqrt();
    }
    let a = beta / k;
    let (c_phi, c_g) = match model {
        WaveModel::Shallow => {
            let c = (fluid.g * h).sqrt();
            (c, c)
        }
        WaveModel::Dispersive => {
            let v = velocities(h, delta_parameter(k, h, l_c)?, fluid.g)?;
            (v.c_phi, v.c_g)
        }
    };
    let gamma = 2.0 * PI * alpha * c_phi * c_g / wave.nu;
    let vortex = VortexFlow::from_circulation(gamma, a)?;
    let groups = dimensionless_setup(&fluid, &layer, &wave, &vortex, model)?;
    Ok(Setup { fluid, layer, wave, vortex, model, groups })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModalWavenumbers {
    pub n: i64,
    /// k_n·a
    pub kn_a: C,
    /// κ_n·a; zero in the shallow regime.
    pub kappan_a: C,
    /// q·a; zero in the shallow regime.
    pub q_a: C,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModalOrders {
    pub n: i64,
    pub m_plus: C,
    pub m_minus: C,
    pub m_old: f64,
    /// A·a⁴ = (δ+1)β⁴
    pub a_const: f64,
    /// B·a² = 2nαβ²(δ+2)
    pub b_const: f64,
}

/// 1 − (nα/β²)(c_g/c_φ): Doppler-shifted frequency inside the core over ν.
pub fn doppler_factor(n: i64, groups: &DimensionlessGroups) -> f64 {
    let ratio = if groups.delta.is_infinite() { 1.0 } else { (2.0 + groups.delta) / (1.0 + groups.delta) };
    1.0 - n as f64 * groups.alpha / (groups.beta * groups.beta) * ratio
}

/// √(1+x) − 1 without cancellation.
fn sqrt1pm1(x: C) -> C {
    x / ((1.0 + x).sqrt() + 1.0)
}

pub fn inner_wavenumbers(n: i64, groups: &DimensionlessGroups) -> Result<ModalWavenumbers> {
    let beta = groups.beta;
    let delta = groups.delta;
    let s = doppler_factor(n, groups);
    let (kn_a, kappan_a) = match Regime::of(delta)? {
        Regime::Shallow => (c(beta * s.abs(), 0.0), c(0.0, 0.0)),
        Regime::Positive => {
            let x = 4.0 * (1.0 + delta) * s * s / (delta * delta);
            let root = (1.0 + x).sqrt();
            let pre = beta * (delta / 2.0).sqrt();
            (c(pre * sqrt1pm1(c(x, 0.0)).re.sqrt(), 0.0), c(pre * (1.0 + root).sqrt(), 0.0))
        }
        Regime::Negative => {
            let ad = delta.abs();
            let disc = c(1.0 - 4.0 * (ad - 1.0) * s * s / (delta * delta), 0.0);
            let root = disc.sqrt();
            let pre = (ad / 2.0).sqrt() * beta;
            // 1 − √D = −(√(1 + (D−1)) − 1) keeps accuracy when D ≈ 1.
            let lower = -sqrt1pm1(disc - 1.0);
            (pre * lower.sqrt(), pre * (1.0 + root).sqrt())
        }
    };
    Ok(ModalWavenumbers { n, kn_a, kappan_a, q_a: outer_wavenumber(groups).unwrap_or(c(0.0, 0.0)) })
}

/// √r for r ≥ 0, i√|r| otherwise.
fn branch_sqrt(r: f64) -> C {
    if r >= 0.0 {
        c(r.sqrt(), 0.0)
    } else {
        c(0.0, (-r).sqrt())
    }
}

pub fn outer_orders(n: i64, alpha: f64) -> ModalOrders {
    let nf = n as f64;
    ModalOrders {
        n,
        m_plus: branch_sqrt(nf * nf + 2.0 * nf * alpha),
        m_minus: branch_sqrt(nf * nf - 2.0 * nf * alpha),
        m_old: (nf + alpha).abs(),
        a_const: f64::NAN,
        b_const: f64::NAN,
    }
}

fn orders_with_constants(n: i64, groups: &DimensionlessGroups) -> ModalOrders {
    let mut o = outer_orders(n, groups.alpha);
    let b2 = groups.beta * groups.beta;
    o.a_const = (groups.delta + 1.0) * b2 * b2;
    o.b_const = 2.0 * n as f64 * groups.alpha * b2 * (groups.delta + 2.0);
    o
}

/// q·a of the companion outer wave.
pub fn outer_wavenumber(groups: &DimensionlessGroups) -> Result<C> {
    let d = groups.delta;
    if d.is_infinite() {
        return Err(Error::EvanescentOuter(d));
    }
    if d > 0.0 {
        Ok(c(groups.beta * (1.0 + d).sqrt(), 0.0))
    } else if d < -1.0 {
        Ok(c(groups.beta * (d.abs() - 1.0).sqrt(), 0.0))
    } else {
        Err(Error::EvanescentOuter(d))
    }
}

/// c_n = (−i)^{m_+} J_{m_+}(β).
pub fn incident_coefficient(orders: &ModalOrders, groups: &DimensionlessGroups) -> Result<C> {
    let j = cyl_pair(CylinderKind::J, orders.m_plus, c(groups.beta, 0.0), false)?.0;
    Ok(minus_i_pow(orders.m_plus) * j)
}

/// (1, zZ'/Z, z²Z''/Z, z³Z'''/Z) times Z, given Z_ν(z) and Z_{ν+1}(z).
///
/// Z solves z²Z'' + zZ' + (σz² − ν²)Z = 0 with Z' = (ν/z)Z + s·Z_{ν+1};
/// σ = +1, s = −1 for J and H¹, σ = −1 with s = +1 (I) or s = −1 (K).
pub fn derivative_column(kind: CylinderKind, nu: C, z: C, z0: C, z1: C) -> [C; 4] {
    let (sigma, s) = match kind {
        CylinderKind::I => (-1.0, 1.0),
        CylinderKind::K => (-1.0, -1.0),
        _ => (1.0, -1.0),
    };
    let z2 = z * z;
    let d1 = nu * z0 + s * z * z1;
    let d2 = (nu * nu - sigma * z2) * z0 - d1;
    let d3 = -3.0 * d2 - d1 - 2.0 * sigma * z2 * z0 - (sigma * z2 - nu * nu) * d1;
    [z0, d1, d2, d3]
}

/// Normalised column (a d/dr)^p Z(z r/a)/Z(z) at r = a, p = 0..3.
pub fn normalized_column(kind: CylinderKind, nu: C, z: C) -> Result<[C; 4]> {
    let ratio = if z.norm() == 0.0 { c(0.0, 0.0) } else { cyl_ratio(kind, nu, z)? };
    Ok(derivative_column(kind, nu, z, c(1.0, 0.0), ratio))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryVectors {
    pub v_a: [C; 4],
    pub v_b: [C; 4],
    pub v_d: [C; 4],
    pub v_e: [C; 4],
    pub v_c: [C; 4],
}

/// Radial function kinds (inner companion, outer companion) for a regime.
pub fn companion_kinds(regime: Regime) -> (CylinderKind, CylinderKind) {
    match regime {
        Regime::Positive => (CylinderKind::I, CylinderKind::K),
        Regime::Negative => (CylinderKind::J, CylinderKind::H1),
        Regime::Shallow => (CylinderKind::J, CylinderKind::H1),
    }
}

pub fn boundary_vectors(
    n: i64,
    groups: &DimensionlessGroups,
    wavenumbers: &ModalWavenumbers,
    orders: &ModalOrders,
) -> Result<BoundaryVectors> {
    let regime = Regime::of(groups.delta)?;
    let (x_kind, y_kind) = companion_kinds(regime);
    let nn = c(n as f64, 0.0);
    let beta = c(groups.beta, 0.0);
    let neg = |v: [C; 4]| v.map(|x| -x);

    let v_a = normalized_column(CylinderKind::J, nn, wavenumbers.kn_a)?;
    let v_d = neg(normalized_column(CylinderKind::H1, orders.m_plus, beta)?);
    let (j0, j1) = cyl_pair(CylinderKind::J, orders.m_plus, beta, false)?;
    let v_c = derivative_column(CylinderKind::J, orders.m_plus, beta, j0, j1).map(|x| x * minus_i_pow(orders.m_plus));
    let zero = [c(0.0, 0.0); 4];
    let (v_b, v_e) = if regime == Regime::Shallow {
        (zero, zero)
    } else {
        (
            normalized_column(x_kind, nn, wavenumbers.kappan_a)?,
            neg(normalized_column(y_kind, orders.m_minus, wavenumbers.q_a)?),
        )
    };
    Ok(BoundaryVectors { v_a, v_b, v_d, v_e, v_c })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModalCoefficients {
    pub n: i64,
    pub a: C,
    pub b: C,
    pub c: C,
    pub d: C,
    pub e: C,
    /// 1-norm condition number of the matching matrix.
    pub condition_number: f64,
    /// Some coefficient fell below 1e-300 and was set to zero.
    pub underflow: bool,
}

const UNDERFLOW: f64 = 1e-300;

fn flush(x: C, flag: &mut bool) -> C {
    if x.norm() < UNDERFLOW && x.norm() > 0.0 {
        *flag = true;
        c(0.0, 0.0)
    } else {
        x
    }
}

fn matrix4(v: &BoundaryVectors) -> Matrix4<C> {
    Matrix4::from_columns(&[Vector4::from(v.v_a), Vector4::from(v.v_b), Vector4::from(v.v_d), Vector4::from(v.v_e)])
}

fn norm1<const R: usize, const K: usize>(m: &nalgebra::SMatrix<C, R, K>) -> f64 {
    m.column_iter().map(|col| col.iter().map(|x| x.norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// Solve the 4×4 matching system (2×2 in the shallow regime) by LU with
/// partial pivoting.
pub fn solve_modal_system(n: i64, vectors: &BoundaryVectors, regime: Regime) -> Result<ModalCoefficients> {
    let all_finite = [vectors.v_a, vectors.v_b, vectors.v_c, vectors.v_d, vectors.v_e]
        .iter()
        .flatten()
        .all(|x| x.re.is_finite() && x.im.is_finite());
    if !all_finite {
        return Err(Error::InvalidInput(format!("non-finite boundary vector for mode {n}")));
    }
    let c_n = vectors.v_c[0];
    let (sol, cond) = if regime == Regime::Shallow {
        let m = Matrix2::new(vectors.v_a[0], vectors.v_d[0], vectors.v_a[1], vectors.v_d[1]);
        let rhs = Vector2::new(vectors.v_c[0], vectors.v_c[1]);
        let row_norms: f64 = m.row_iter().map(|r| r.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()).product();
        let det = m.determinant();
        if det.norm() < 1e-13 * row_norms {
            return Err(Error::SingularSystem(n));
        }
        let lu = m.lu();
        let x = lu.solve(&rhs).ok_or(Error::SingularSystem(n))?;
        let inv = lu.try_inverse().ok_or(Error::SingularSystem(n))?;
        ([x[0], c(0.0, 0.0), x[1], c(0.0, 0.0)], norm1(&m) * norm1(&inv))
    } else {
        let m = matrix4(vectors);
        let rhs = Vector4::from(vectors.v_c);
        let row_norms: f64 = m.row_iter().map(|r| r.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()).product();
        let lu = m.lu();
        if lu.determinant().norm() < 1e-13 * row_norms {
            return Err(Error::SingularSystem(n));
        }
        let x = lu.solve(&rhs).ok_or(Error::SingularSystem(n))?;
        let inv = lu.try_inverse().ok_or(Error::SingularSystem(n))?;
        ([x[0], x[1], x[2], x[3]], norm1(&m) * norm1(&inv))
    };
    let mut underflow = false;
    Ok(ModalCoefficients {
        n,
        a: flush(sol[0], &mut underflow),
        b: flush(sol[1], &mut underflow),
        c: flush(c_n, &mut underflow),
        d: flush(sol[2], &mut underflow),
        e: flush(sol[3], &mut underflow),
        condition_number: cond,
        underflow,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorizationReport {
    /// Relative residuals of the four conditions that the factorization enforces.
    pub identities: [f64; 4],
    /// |m² − n²|/β² for the condition dropped at order 1/β².
    pub rel5_violation: f64,
    /// Violation of the 1/r⁴ condition relative to β⁴.
    pub rel6_violation: f64,
    /// 4|m_+² − m_-²|(1/β⁴ + 1/β³): size of the neglected commutator at r = a.
    pub commutator: f64,
}

fn rel_resid(lhs: C, rhs: C) -> f64 {
    let scale = lhs.norm().max(rhs.norm());
    if scale == 0.0 {
        0.0
    } else {
        (lhs - rhs).norm() / scale
    }
}

/// Check the outer factorization conditions for mode n.
pub fn verify_factorization(
    n: i64,
    groups: &DimensionlessGroups,
    wavenumbers: &ModalWavenumbers,
    orders: &ModalOrders,
) -> Result<FactorizationReport> {
    let regime = Regime::of(groups.delta)?;
    let delta = groups.delta;
    let b2 = c(groups.beta * groups.beta, 0.0);
    let nn = n as f64;
    let mp2 = orders.m_plus * orders.m_plus;
    let mm2 = orders.m_minus * orders.m_minus;
    // (q_+², q_-²) and the orders paired with them.
    let (qp2, qm2, pair_p, pair_m) = match regime {
        Regime::Positive => (b2, -wavenumbers.q_a * wavenumbers.q_a, mp2, mm2),
        Regime::Negative => (wavenumbers.q_a * wavenumbers.q_a, b2, mm2, mp2),
        Regime::Shallow => {
            return Ok(FactorizationReport {
                identities: [0.0; 4],
                rel5_violation: 0.0,
                rel6_violation: 0.0,
                commutator: 0.0,
            })
        }
    };
    let a_c = c(orders.a_const, 0.0);
    let b_c = c(orders.b_const, 0.0);
    let identities = [
        rel_resid(qp2 + qm2, -delta * b2),
        rel_resid(qp2 * qm2, -a_c),
        rel_resid(pair_p * qm2 + pair_m * qp2, -delta * b2 * nn * nn - b_c),
        rel_resid(pair_p + pair_m, c(2.0 * nn * nn, 0.0)),
    ];
    let beta = groups.beta;
    let rel5 = (pair_m - nn * nn).norm() / (beta * beta);
    let rel6 = (pair_p * pair_m - 4.0 * pair_m - (nn.powi(4) - 4.0 * nn * nn)).norm() / beta.powi(4);
    Ok(FactorizationReport {
        identities,
        rel5_violation: rel5,
        rel6_violation: rel6,
        commutator: 4.0 * (mp2 - mm2).norm() * (beta.powi(-4) + beta.powi(-3)),
    })
}

/// Everything computed for one angular mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSolution {
    pub wavenumbers: ModalWavenumbers,
    pub orders: ModalOrders,
    pub vectors: BoundaryVectors,
    pub coefficients: ModalCoefficients,
}

pub fn solve_mode(n: i64, groups: &DimensionlessGroups) -> Result<ModeSolution> {
    let regime = Regime::of(groups.delta)?;
    let wavenumbers = inner_wavenumbers(n, groups)?;
    let orders = orders_with_constants(n, groups);
    let top = orders.m_plus.norm().max(orders.m_minus.norm()).max(n.abs() as f64);
    if top > MAX_ORDER {
        // Beyond the special-function envelope the mode is kept only if its
        // driving term is negligible, in which case all amplitudes vanish.
        if orders.m_plus.im == 0.0 && ln_j_bound(orders.m_plus.re, c(groups.beta, 0.0)) < crate::field::NEGLIGIBLE.ln()
        {
            let zero = c(0.0, 0.0);
            return Ok(ModeSolution {
                wavenumbers,
                orders,
                vectors: BoundaryVectors {
                    v_a: [zero; 4],
                    v_b: [zero; 4],
                    v_d: [zero; 4],
                    v_e: [zero; 4],
                    v_c: [zero; 4],
                },
                coefficients: ModalCoefficients {
                    n,
                    a: zero,
                    b: zero,
                    c: zero,
                    d: zero,
                    e: zero,
                    condition_number: 1.0,
                    underflow: true,
                },
            });
        }
        return Err(SpecFunError::Envelope(format!("mode {n} needs order {top} > {MAX_ORDER}")).into());
    }
    let vectors = boundary_vectors(n, groups, &wavenumbers, &orders)?;
    let coefficients = solve_modal_system(n, &vectors, regime)?;
    Ok(ModeSolution { wavenumbers, orders, vectors, coefficients })
}

/// Solutions for −n_max ≤ n ≤ n_max, ordered by n.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    pub groups: DimensionlessGroups,
    pub regime: Regime,
    pub n_max: i64,
    pub modes: Vec<ModeSolution>,
}

impl CoefficientTable {
    pub fn mode(&self, n: i64) -> Option<&ModeSolution> {
        if n.abs() > self.n_max {
            return None;
        }
        self.modes.get((n + self.n_max) as usize)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &ModalCoefficients> {
        self.modes.iter().map(|m| &m.coefficients)
    }
}

pub fn solve_modes(groups: &DimensionlessGroups, n_max: i64) -> Result<CoefficientTable> {
    let regime = Regime::of(groups.delta)?;
    if !(groups.beta > 0.0 && groups.beta.is_finite() && groups.alpha.is_finite()) {
        return Err(Error::InvalidInput(format!("need beta > 0 and finite alpha: {groups:?}")));
    }
    let modes = (-n_max..=n_max).into_par_iter().map(|n| solve_mode(n, groups)).collect::<Result<Vec<_>>>()?;
    Ok(CoefficientTable { groups: *groups, regime, n_max, modes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn groups(alpha: f64, beta: f64, delta: f64) -> DimensionlessGroups {
        canonical_water_setup(alpha, beta, delta).unwrap().groups
    }

    #[test]
    fn canonical_setup_hits_targets() {
        for (a, b, d) in [(0.5, 5.0, 8.0), (2.0, 10.0, -8.0), (1.0, 5.0, f64::INFINITY)] {
            let g = groups(a, b, d);
            assert!((g.alpha - a).abs() < 1e-12 * a);
            assert!((g.beta - b).abs() < 1e-12 * b);
            if d.is_finite() {
                assert!((g.delta - d).abs() < 1e-12 * d.abs());
            } else {
                assert!(g.delta.is_infinite());
            }
            assert!((g.alpha - g.beta * g.mach * g.c_phi / g.c_g).abs() < 1e-12 * a);
        }
        let g = groups(1.0, 5.0, 8.0);
        assert!((g.kh - 3f64.sqrt() / 4.0).abs() < 1e-12);
        let g = groups(1.0, 5.0, -8.0);
        assert!((g.kh - 0.75).abs() < 1e-12);
    }

    #[test]
    fn order_examples() {
        let o = outer_orders(1, 0.5);
        assert!((o.m_plus - 2f64.sqrt()).norm() < 1e-15 && o.m_minus == c(0.0, 0.0));
        assert_eq!(outer_orders(-1, 1.0).m_plus, c(0.0, 1.0));
        let o = outer_orders(0, 0.7);
        assert_eq!((o.m_plus, o.m_minus, o.m_old), (c(0.0, 0.0), c(0.0, 0.0), 0.7));
    }

    #[test]
    fn outer_wavenumber_examples() {
        let q = outer_wavenumber(&groups(1.0, 5.0, 8.0)).unwrap();
        assert!((q.re - 15.0).abs() < 1e-12);
        let q = outer_wavenumber(&groups(1.0, 5.0, -8.0)).unwrap();
        assert!((q.re - 5.0 * 7f64.sqrt()).abs() < 1e-12);
        let mut g = groups(1.0, 5.0, -8.0);
        g.delta = -1.0;
        assert!(matches!(outer_wavenumber(&g), Err(Error::EvanescentOuter(_))));
    }

    #[test]
    fn zeroth_mode_wavenumber_is_beta() {
        for d in [8.0, 1.4, -8.0, -3.0, 50.0] {
            let g = groups(1.0, 5.0, d);
            let w = inner_wavenumbers(0, &g).unwrap();
            assert!((w.kn_a - 5.0).norm() < 1e-13, "delta = {d}: {}", w.kn_a);
        }
    }

    #[test]
    fn incident_coefficient_branch_growth() {
        let g = groups(1.0, 5.0, 8.0);
        let o = outer_orders(-1, 1.0);
        let cn = incident_coefficient(&o, &g).unwrap();
        let j = cyl_pair(CylinderKind::J, c(0.0, 1.0), c(5.0, 0.0), false).unwrap().0;
        assert!((cn.norm() / j.norm() - (PI / 2.0).exp()).abs() < 1e-12);
    }

    #[test]
    fn literal_v_a_row_four() {
        let g = groups(1.0, 5.0, 8.0);
        let n = 3i64;
        let w = inner_wavenumbers(n, &g).unwrap();
        let o = orders_with_constants(n, &g);
        let v = boundary_vectors(n, &g, &w, &o).unwrap();
        let phi = w.kn_a;
        let nf = n as f64;
        let r = cyl_ratio(CylinderKind::J, c(nf, 0.0), phi).unwrap();
        let row4 = (nf - 1.0) * (nf * (nf - 2.0) - phi * phi) + phi * (phi * phi - (nf * nf + 2.0)) * r;
        assert!((v.v_a[3] - row4).norm() < 1e-12 * row4.norm());
    }

    #[test]
    fn no_vortex_passes_through() {
        for d in [8.0, -8.0] {
            let g = groups(0.0, 5.0, d);
            for n in -12..=12 {
                let m = solve_mode(n, &g).unwrap().coefficients;
                let scale = m.c.norm();
                assert!((m.a - m.c).norm() <= 1e-10 * scale, "n={n}");
                for x in [m.b, m.d, m.e] {
                    assert!(x.norm() <= 1e-10 * scale, "n={n}: {x}");
                }
            }
        }
    }

    #[test]
    fn first_matching_row_holds() {
        let g = groups(1.0, 5.0, -8.0);
        for n in -10..=10 {
            let m = solve_mode(n, &g).unwrap().coefficients;
            let lhs = m.a + m.b - m.d - m.e;
            let scale = [m.a, m.b, m.d, m.e, m.c].iter().map(|x| x.norm()).fold(0.0, f64::max);
            assert!((lhs - m.c).norm() <= 1e-8 * scale);
        }
    }

    #[test]
    fn factorization_report_examples() {
        let g = groups(1.0, 5.0, 8.0);
        for n in [-5, 0, 1, 7] {
            let w = inner_wavenumbers(n, &g).unwrap();
            let o = orders_with_constants(n, &g);
            let r = verify_factorization(n, &g, &w, &o).unwrap();
            for id in r.identities {
                assert!(id < 1e-10, "n={n}: {:?}", r.identities);
            }
            if n == 0 {
                assert_eq!((r.rel5_violation, r.rel6_violation), (0.0, 0.0));
            }
            if n == 1 {
                assert!((r.rel5_violation - 0.08).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn regime_classification() {
        assert_eq!(Regime::of(8.0).unwrap(), Regime::Positive);
        assert_eq!(Regime::of(-8.0).unwrap(), Regime::Negative);
        assert_eq!(Regime::of(f64::INFINITY).unwrap(), Regime::Shallow);
        assert!(Regime::of(-0.5).is_err());
    }
}
