//! Lagrangian soliton constructions in C^n = R^{2n}.
//!
//! Real coordinate pairs `(x_{2j-1}, x_{2j})` are identified with the real
//! and imaginary parts of the j-th complex coordinate, so the complex
//! structure `J` acts blockwise and products of plane curves are Lagrangian
//! with zero bookkeeping.
//!
//! The constructions:
//! - [`product_immersion`]: Cartesian products of plane curves.
//! - [`hopf_product`]: `(t, x) -> alpha(t) psi(x)` for a plane curve `alpha`
//!   and a Legendrian immersion `psi` into the unit sphere S^{2n-1}.
//! - [`equivariant_soliton`]: the rotationally invariant solitons, obtained
//!   by taking the continuous n-th root of a soliton curve with velocity
//!   `n a` and multiplying it onto the totally geodesic Legendrian sphere.
//!
//! The key identity behind the last two: `phi = alpha psi` is a soliton with
//! velocity `a` iff `psi` is minimal Legendrian and `beta = alpha^n` is a
//! soliton curve for the inverse curve shortening flow with velocity `n a`.


// Tensor-style index loops mirror the summation conventions; iterator
// rewrites would obscure the symmetric index structure.
#![allow(clippy::needless_range_loop)]
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::curve::{ComplexJet, PlaneCurve, SolitonCurve, CUSP_TOL};
use crate::error::{Error, Result};
use crate::geom::{geometry_at, Grid, Immersion, Jet2, ParamRange};

/// Curves are rejected as passing through the origin below this modulus.
pub const ORIGIN_TOL: f64 = 1e-12;

/// Unwrapping tolerates adjacent-sample argument jumps strictly below pi/2.
pub const ARG_JUMP_MAX: f64 = std::f64::consts::FRAC_PI_2;

/// Kaehler-form residual above which a point is not treated as Lagrangian.
pub const LAGRANGIAN_TOL: f64 = 1e-8;

/// Density of the construction-time regularity scans on curve factors.
const REGULARITY_SAMPLES: usize = 1024;

/// Multiplication by `i` on R^{2n} = C^n, acting blockwise on coordinate
/// pairs. Satisfies `J J = -I`, `<Jv, Jw> = <v, w>`, `<Jv, v> = 0`.
#[derive(Clone, Copy, Debug)]
pub struct ComplexStructure {
    pub complex_dim: usize,
}

impl ComplexStructure {
    pub fn new(complex_dim: usize) -> Self {
        ComplexStructure { complex_dim }
    }

    pub fn apply(&self, v: &DVector<f64>) -> DVector<f64> {
        debug_assert_eq!(v.len(), 2 * self.complex_dim);
        let mut out = DVector::zeros(v.len());
        for j in 0..self.complex_dim {
            out[2 * j] = -v[2 * j + 1];
            out[2 * j + 1] = v[2 * j];
        }
        out
    }
}

/// View an ambient real vector as a complex n-vector.
pub fn as_complex(v: &DVector<f64>) -> Vec<Complex64> {
    v.as_slice()
        .chunks_exact(2)
        .map(|c| Complex64::new(c[0], c[1]))
        .collect()
}

/// Multiply an ambient real vector, viewed in C^n, by a complex scalar.
fn complex_scale(z: Complex64, v: &DVector<f64>) -> DVector<f64> {
    let mut out = DVector::zeros(v.len());
    for j in 0..v.len() / 2 {
        let (re, im) = (v[2 * j], v[2 * j + 1]);
        out[2 * j] = z.re * re - z.im * im;
        out[2 * j + 1] = z.re * im + z.im * re;
    }
    out
}

fn require_even_ambient(imm: &Immersion, context: &'static str) -> Result<usize> {
    if !imm.ambient_dim().is_multiple_of(2) {
        return Err(Error::DimensionMismatch {
            context,
            expected: 2 * imm.intrinsic_dim(),
            actual: imm.ambient_dim(),
        });
    }
    Ok(imm.ambient_dim() / 2)
}

/// Largest normalized Kaehler-form pairing `|<J d_i phi, d_j phi>|` over the
/// grid: zero exactly when the immersion is Lagrangian.
pub fn lagrangian_residual(imm: &Immersion, grid_count: usize) -> Result<f64> {
    let half = require_even_ambient(imm, "Lagrangian immersion ambient dimension")?;
    if half != imm.intrinsic_dim() {
        return Err(Error::DimensionMismatch {
            context: "Lagrangian immersion ambient dimension",
            expected: 2 * imm.intrinsic_dim(),
            actual: imm.ambient_dim(),
        });
    }
    let structure = ComplexStructure::new(half);
    let grid = Grid::uniform(imm.domain(), grid_count)?;
    let mut worst: f64 = 0.0;
    for point in grid.points() {
        let jet = imm.eval_jet(&point)?;
        worst = worst.max(kaehler_residual_at(&structure, &jet));
    }
    Ok(worst)
}

fn kaehler_residual_at(structure: &ComplexStructure, jet: &Jet2) -> f64 {
    let n = jet.intrinsic_dim();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let ji = structure.apply(&jet.d1[i]);
        for j in (i + 1)..n {
            let denom = jet.d1[i].norm() * jet.d1[j].norm();
            if denom > 0.0 {
                worst = worst.max(ji.dot(&jet.d1[j]).abs() / denom);
            }
        }
    }
    worst
}

/// Largest deviation from the Legendrian conditions over the grid:
/// `| |psi| - 1 |` and normalized `|<d_i psi, J psi>|`.
pub fn legendrian_residual(psi: &Immersion, grid_count: usize) -> Result<f64> {
    let half = require_even_ambient(psi, "Legendrian immersion ambient dimension")?;
    let structure = ComplexStructure::new(half);
    let grid = Grid::uniform(psi.domain(), grid_count)?;
    let mut worst: f64 = 0.0;
    for point in grid.points() {
        let jet = psi.eval_jet(&point)?;
        worst = worst.max((jet.position.norm() - 1.0).abs());
        let j_psi = structure.apply(&jet.position);
        for e in &jet.d1 {
            let denom = e.norm();
            if denom > 0.0 {
                worst = worst.max(e.dot(&j_psi).abs() / denom);
            }
        }
    }
    Ok(worst)
}

/// An immersion into the unit sphere S^{2n-1} in C^n satisfying the
/// Legendrian condition `<d psi, J psi> = 0`, together with a minimality
/// claim that [`LegendrianImmersion::verify`] checks numerically.
#[derive(Clone)]
pub struct LegendrianImmersion {
    pub immersion: Immersion,
    pub minimal: bool,
}

impl LegendrianImmersion {
    pub fn new(immersion: Immersion, minimal: bool) -> Self {
        LegendrianImmersion { immersion, minimal }
    }

    /// Totally geodesic Legendrian sphere: `psi(x) = x` on the real points
    /// `S^{n-1}` of `S^{2n-1}`.
    pub fn totally_geodesic_sphere(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadParams(
                "totally geodesic Legendrian sphere needs n >= 2".into(),
            ));
        }
        let chart = crate::geom::sphere_chart(n - 1, 1.0);
        let inner = chart.raw_evaluator();
        let imm = Immersion::new(chart.domain().to_vec(), 2 * n, move |u| {
            let real = inner(u);
            widen_to_real_slots(&real)
        });
        Ok(LegendrianImmersion::new(imm, true))
    }

    /// Flat minimal Legendrian torus
    /// `(1/sqrt(n)) (e^{i x_1}, ..., e^{i x_{n-1}}, e^{-i (x_1 + ... + x_{n-1})})`.
    pub fn flat_torus(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadParams("flat Legendrian torus needs n >= 2".into()));
        }
        let scale = 1.0 / (n as f64).sqrt();
        let imm = Immersion::from_dual_map(
            vec![ParamRange::angle(); n - 1],
            2 * n,
            move |u| {
                let nv = u[0].nvars();
                let mut coords = Vec::with_capacity(2 * n);
                let mut sum = crate::dual::Dual2::constant(0.0, nv);
                for x in u {
                    coords.push(x.cos().scale(scale));
                    coords.push(x.sin().scale(scale));
                    sum = sum + x;
                }
                let neg = -&sum;
                coords.push(neg.cos().scale(scale));
                coords.push(neg.sin().scale(scale));
                coords
            },
        );
        Ok(LegendrianImmersion::new(imm, true))
    }

    /// Check `|psi| = 1`, the Legendrian pairing, and (when claimed) the
    /// numerical minimality of `psi` as a spherical immersion: the component
    /// of its mean curvature tangent to the sphere must vanish.
    pub fn verify(&self, grid_count: usize, tol: f64) -> Result<f64> {
        let mut worst = legendrian_residual(&self.immersion, grid_count)?;
        if self.minimal {
            let grid = Grid::uniform(self.immersion.domain(), grid_count)?;
            for point in grid.points() {
                let jet = self.immersion.eval_jet(&point)?;
                let gs = geometry_at(&jet)?;
                let radial = gs.mean_curvature.dot(&jet.position);
                let tangential = &gs.mean_curvature - radial * &jet.position;
                worst = worst.max(tangential.norm());
            }
        }
        if worst > tol {
            return Err(Error::NotLagrangian { residual: worst });
        }
        Ok(worst)
    }
}

/// Interleave a real m-vector jet into the real slots of C^m.
fn widen_to_real_slots(jet: &Jet2) -> Jet2 {
    let widen = |v: &DVector<f64>| {
        let mut out = DVector::zeros(2 * v.len());
        for (j, &x) in v.iter().enumerate() {
            out[2 * j] = x;
        }
        out
    };
    Jet2 {
        position: widen(&jet.position),
        d1: jet.d1.iter().map(&widen).collect(),
        d2: jet
            .d2
            .iter()
            .map(|row| row.iter().map(&widen).collect())
            .collect(),
    }
}

/// The pseudoumbilical product `(t, x) -> alpha(t) psi(x)` with analytic jets
/// composed by the product rule. The curve must avoid the origin and be
/// regular; its parameter is the first parameter of the result.
pub fn hopf_product(alpha: &PlaneCurve, psi: &LegendrianImmersion) -> Result<Immersion> {
    let (min_origin, max_speed) = alpha.regularity_scan(REGULARITY_SAMPLES);
    if min_origin < ORIGIN_TOL {
        return Err(Error::CurveThroughOrigin {
            theta: f64::NAN,
            modulus: min_origin,
        });
    }
    if max_speed < CUSP_TOL {
        return Err(Error::NonRegularFactor(
            "hopf_product curve factor is constant",
        ));
    }

    let mut domain = vec![alpha.domain()];
    domain.extend_from_slice(psi.immersion.domain());
    let ambient = psi.immersion.ambient_dim();
    let curve = alpha.clone();
    let psi_eval = psi.immersion.raw_evaluator();
    let k = psi.immersion.intrinsic_dim();

    Ok(Immersion::new(domain, ambient, move |u| {
        let cj = curve.eval(u[0]);
        let pj = psi_eval(&u[1..]);
        let n_total = k + 1;
        let mut d1 = Vec::with_capacity(n_total);
        d1.push(complex_scale(cj.d1, &pj.position));
        for a in 0..k {
            d1.push(complex_scale(cj.value, &pj.d1[a]));
        }
        let mut d2 = vec![vec![DVector::zeros(ambient); n_total]; n_total];
        d2[0][0] = complex_scale(cj.d2, &pj.position);
        for a in 0..k {
            let mixed = complex_scale(cj.d1, &pj.d1[a]);
            d2[0][a + 1] = mixed.clone();
            d2[a + 1][0] = mixed;
            for b in a..k {
                let sec = complex_scale(cj.value, &pj.d2[a][b]);
                d2[a + 1][b + 1] = sec.clone();
                d2[b + 1][a + 1] = sec;
            }
        }
        Jet2 {
            position: complex_scale(cj.value, &pj.position),
            d1,
            d2,
        }
    }))
}

/// Unwrap principal arguments along a sample sequence; errors if the curve
/// meets the origin or if adjacent samples jump by pi/2 or more.
pub fn unwrap_arguments(values: &[Complex64]) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(values.len());
    let mut offset = 0.0;
    let mut prev: Option<f64> = None;
    for (index, z) in values.iter().enumerate() {
        if z.norm() < ORIGIN_TOL {
            return Err(Error::CurveThroughOrigin {
                theta: f64::NAN,
                modulus: z.norm(),
            });
        }
        let raw = z.arg();
        if let Some(p) = prev {
            let mut step = raw + offset - p;
            while step > std::f64::consts::PI {
                offset -= std::f64::consts::TAU;
                step -= std::f64::consts::TAU;
            }
            while step < -std::f64::consts::PI {
                offset += std::f64::consts::TAU;
                step += std::f64::consts::TAU;
            }
            if step.abs() >= ARG_JUMP_MAX {
                return Err(Error::ArgumentJumpTooLarge { index, jump: step });
            }
        }
        let unwrapped = raw + offset;
        out.push(unwrapped);
        prev = Some(unwrapped);
    }
    Ok(out)
}

/// `beta = alpha^n` on a sample sequence, with the argument of `alpha`
/// unwrapped continuously along the samples. Derivatives follow the chain
/// rule: `beta' = n alpha^{n-1} alpha'`,
/// `beta'' = n (n-1) alpha^{n-2} alpha'^2 + n alpha^{n-1} alpha''`.
pub fn power_curve(samples: &[ComplexJet], n: u32) -> Result<Vec<ComplexJet>> {
    if n == 0 {
        return Err(Error::BadParams("power exponent must be >= 1".into()));
    }
    if samples.iter().all(|s| s.d1.norm() < CUSP_TOL) {
        return Err(Error::NonRegularFactor("curve is constant"));
    }
    let args = unwrap_arguments(&samples.iter().map(|s| s.value).collect::<Vec<_>>())?;
    let nf = f64::from(n);
    Ok(samples
        .iter()
        .zip(args)
        .map(|(s, arg)| {
            let value = Complex64::from_polar(s.value.norm().powf(nf), nf * arg);
            // alpha^{n-1} and alpha^{n-2} on the same continuous branch
            let pow_m1 = Complex64::from_polar(s.value.norm().powf(nf - 1.0), (nf - 1.0) * arg);
            let pow_m2 = Complex64::from_polar(s.value.norm().powf(nf - 2.0), (nf - 2.0) * arg);
            ComplexJet {
                value,
                d1: nf * pow_m1 * s.d1,
                d2: nf * (nf - 1.0) * pow_m2 * s.d1 * s.d1 + nf * pow_m1 * s.d2,
            }
        })
        .collect())
}

/// Continuous n-th root `alpha = beta^{1/n}` of a plane curve, as a plane
/// curve. The branch is fixed at the first domain sample and continued
/// through a dense precomputed argument table; evaluation at an arbitrary
/// parameter picks the branch nearest the interpolated table value.
pub fn root_curve(beta: &PlaneCurve, n: u32) -> Result<PlaneCurve> {
    if n == 0 {
        return Err(Error::BadParams("root order must be >= 1".into()));
    }
    let (min_origin, _) = beta.regularity_scan(REGULARITY_SAMPLES);
    if min_origin < ORIGIN_TOL {
        return Err(Error::CurveThroughOrigin {
            theta: f64::NAN,
            modulus: min_origin,
        });
    }
    let domain = beta.domain();
    let resolution = REGULARITY_SAMPLES.max(4096);
    let step = domain.length() / resolution as f64;
    let params: Vec<f64> = (0..=resolution)
        .map(|i| domain.lo + i as f64 * step)
        .collect();
    let values: Vec<Complex64> = params.iter().map(|&t| beta.eval(t).value).collect();
    let table = unwrap_arguments(&values)?;

    let inner = beta.clone();
    let nf = f64::from(n);
    let lo = domain.lo;
    Ok(PlaneCurve::new(domain, move |t| {
        let bj = inner.eval(t);
        // branch from the interpolated unwrapped argument
        let pos = ((t - lo) / step).clamp(0.0, (table.len() - 1) as f64);
        let i = (pos.floor() as usize).min(table.len() - 2);
        let frac = pos - i as f64;
        let expected = table[i] * (1.0 - frac) + table[i + 1] * frac;
        let winding = ((expected - bj.value.arg()) / std::f64::consts::TAU).round();
        let arg = bj.value.arg() + winding * std::f64::consts::TAU;

        let value = Complex64::from_polar(bj.value.norm().powf(1.0 / nf), arg / nf);
        let d1 = value * bj.d1 / (nf * bj.value);
        let d2 = d1 * bj.d1 / (nf * bj.value)
            + value * (bj.d2 * bj.value - bj.d1 * bj.d1) / (nf * bj.value * bj.value);
        ComplexJet { value, d1, d2 }
    }))
}

/// Pointwise deviation from the pseudoumbilical soliton equation for the
/// curve factor:
/// `a <alpha', J alpha> (|alpha'| kappa + (n-1) <alpha', J alpha> / |alpha|^2) = |alpha'|^2`.
///
/// Vanishes exactly when `beta = alpha^n` is a soliton curve with velocity
/// `n a` (compose [`power_curve`] with [`crate::curve::icsf_residual`] for
/// the independent route).
pub fn pseudoumbilical_residual(samples: &[ComplexJet], n: u32, a: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for s in samples {
        let modulus = s.value.norm();
        if modulus < ORIGIN_TOL {
            return Err(Error::CurveThroughOrigin {
                theta: f64::NAN,
                modulus,
            });
        }
        let speed = s.d1.norm();
        if speed < CUSP_TOL {
            return Err(Error::CuspPoint { theta: f64::NAN });
        }
        let kappa = s.curvature()?;
        let pairing = s.j_pairing();
        let lhs = a * pairing * (speed * kappa + (f64::from(n) - 1.0) * pairing / (modulus * modulus));
        worst = worst.max((lhs - speed * speed).abs());
    }
    Ok(worst)
}

/// Cartesian product of plane curves as a flat Lagrangian immersion in C^n,
/// with blockwise jets.
pub fn product_immersion(curves: &[PlaneCurve]) -> Result<Immersion> {
    if curves.is_empty() {
        return Err(Error::BadParams("product of zero curves".into()));
    }
    for c in curves {
        let mut max_speed: f64 = 0.0;
        for t in c.domain().samples(REGULARITY_SAMPLES) {
            max_speed = max_speed.max(c.eval(t).d1.norm());
        }
        if max_speed < CUSP_TOL {
            return Err(Error::NonRegularFactor("product factor is constant"));
        }
    }
    let n = curves.len();
    let domain: Vec<ParamRange> = curves.iter().map(|c| c.domain()).collect();
    let curves = curves.to_vec();
    Ok(Immersion::new(domain, 2 * n, move |u| {
        let jets: Vec<ComplexJet> = curves.iter().zip(u).map(|(c, &t)| c.eval(t)).collect();
        let mut position = DVector::zeros(2 * n);
        for (j, cj) in jets.iter().enumerate() {
            position[2 * j] = cj.value.re;
            position[2 * j + 1] = cj.value.im;
        }
        let mut d1 = vec![DVector::zeros(2 * n); n];
        let mut d2 = vec![vec![DVector::zeros(2 * n); n]; n];
        for (j, cj) in jets.iter().enumerate() {
            d1[j][2 * j] = cj.d1.re;
            d1[j][2 * j + 1] = cj.d1.im;
            d2[j][j][2 * j] = cj.d2.re;
            d2[j][j][2 * j + 1] = cj.d2.im;
        }
        Jet2 { position, d1, d2 }
    }))
}

/// The SO(n)-equivariant Lagrangian soliton with velocity `a`:
/// `(theta, x) -> |beta(theta)|^{1/n} e^{i arg beta(theta) / n} x`
/// where `beta` is the soliton curve with velocity `n a` and coefficients
/// `(c1, c2)`, restricted to `theta_range`.
pub fn equivariant_soliton(
    n: usize,
    a: f64,
    c1: f64,
    c2: f64,
    theta_range: ParamRange,
) -> Result<Immersion> {
    if n < 2 {
        return Err(Error::BadParams("equivariant soliton needs n >= 2".into()));
    }
    let beta = SolitonCurve::new(n as f64 * a, c1, c2)?.plane_curve(theta_range);
    let alpha = root_curve(&beta, n as u32)?;
    hopf_product(&alpha, &LegendrianImmersion::totally_geodesic_sphere(n)?)
}

/// Lagrangian angle at a point: the argument of the complex determinant of
/// the coordinate tangent frame, together with `J grad(theta)` assembled
/// from a central-difference gradient for comparison against the mean
/// curvature vector (`H = J grad(theta)` on Lagrangian submanifolds).
pub fn lagrangian_angle(imm: &Immersion, u: &[f64], h: f64) -> Result<(f64, DVector<f64>)> {
    let half = require_even_ambient(imm, "Lagrangian immersion ambient dimension")?;
    if half != imm.intrinsic_dim() {
        return Err(Error::DimensionMismatch {
            context: "Lagrangian immersion ambient dimension",
            expected: 2 * imm.intrinsic_dim(),
            actual: imm.ambient_dim(),
        });
    }
    let structure = ComplexStructure::new(half);
    let jet = imm.eval_jet(u)?;
    let residual = kaehler_residual_at(&structure, &jet);
    if residual > LAGRANGIAN_TOL {
        return Err(Error::NotLagrangian { residual });
    }

    let theta = angle_at(imm, u)?;

    // Central-difference gradient of the angle, unwrapped mod 2 pi.
    let n = imm.intrinsic_dim();
    let mut dtheta = vec![0.0; n];
    for j in 0..n {
        let mut plus = u.to_vec();
        plus[j] += h;
        let mut minus = u.to_vec();
        minus[j] -= h;
        dtheta[j] = angle_difference(angle_at(imm, &plus)?, angle_at(imm, &minus)?) / (2.0 * h);
    }
    let gs = geometry_at(&jet)?;
    let mut grad = DVector::zeros(imm.ambient_dim());
    for i in 0..n {
        let mut coeff = 0.0;
        for j in 0..n {
            coeff += gs.metric_inv[(i, j)] * dtheta[j];
        }
        grad += coeff * &jet.d1[i];
    }
    Ok((theta.rem_euclid(std::f64::consts::TAU), structure.apply(&grad)))
}

fn angle_at(imm: &Immersion, u: &[f64]) -> Result<f64> {
    let jet = imm.eval_jet(u)?;
    let n = jet.intrinsic_dim();
    let mut frame = DMatrix::<Complex64>::zeros(n, n);
    for (col, e) in jet.d1.iter().enumerate() {
        for (row, z) in as_complex(e).into_iter().enumerate() {
            frame[(row, col)] = z;
        }
    }
    Ok(frame.determinant().arg())
}

fn angle_difference(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    if d > std::f64::consts::PI {
        d - std::f64::consts::TAU
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::icsf_residual;
    use approx::assert_abs_diff_eq;

    #[test]
    fn complex_structure_identities() {
        let j = ComplexStructure::new(3);
        let v = DVector::from_row_slice(&[1.0, -0.5, 2.0, 0.25, -1.5, 3.0]);
        let w = DVector::from_row_slice(&[0.4, 1.1, -2.2, 0.8, 0.0, -0.6]);
        let jjv = j.apply(&j.apply(&v));
        assert!((&jjv + &v).amax() < 1e-15);
        assert_abs_diff_eq!(j.apply(&v).dot(&j.apply(&w)), v.dot(&w), epsilon = 1e-14);
        assert!(j.apply(&v).dot(&v).abs() < 1e-15);
    }

    #[test]
    fn curve_products_are_lagrangian() {
        let imm = product_immersion(&[
            PlaneCurve::circle(1.0),
            PlaneCurve::circle(1.0),
            PlaneCurve::line(ParamRange::interval(-1.0, 1.0)),
        ])
        .unwrap();
        assert!(lagrangian_residual(&imm, 5).unwrap() < 1e-15);
    }

    #[test]
    fn sphere_in_complex_plane_is_not_lagrangian() {
        // Round S^2 inside span(e1, e2, e3) of C^2: tangent planes meet
        // complex lines, so the Kaehler form does not vanish.
        let chart = crate::geom::sphere_chart(2, 1.0);
        let inner = chart.raw_evaluator();
        let imm = Immersion::new(chart.domain().to_vec(), 4, move |u| {
            let j = inner(u);
            let pad = |v: &DVector<f64>| {
                DVector::from_fn(4, |r, _| if r < 3 { v[r] } else { 0.0 })
            };
            Jet2 {
                position: pad(&j.position),
                d1: j.d1.iter().map(&pad).collect(),
                d2: j
                    .d2
                    .iter()
                    .map(|row| row.iter().map(&pad).collect())
                    .collect(),
            }
        });
        assert!(lagrangian_residual(&imm, 8).unwrap() > 0.1);
    }

    #[test]
    fn legendrian_families_verify() {
        for n in 2..=4 {
            let geo = LegendrianImmersion::totally_geodesic_sphere(n).unwrap();
            assert!(geo.verify(7, 1e-8).unwrap() < 1e-10, "geodesic n={n}");
            let torus = LegendrianImmersion::flat_torus(n).unwrap();
            assert!(torus.verify(7, 1e-8).unwrap() < 1e-10, "torus n={n}");
        }
    }

    #[test]
    fn antidiagonal_circle_is_the_two_torus() {
        // (e^{it}, e^{-it})/sqrt(2) is exactly the n = 2 flat torus.
        let torus = LegendrianImmersion::flat_torus(2).unwrap();
        let jet = torus.immersion.eval_jet(&[0.7]).unwrap();
        let r = 0.5f64.sqrt();
        assert_abs_diff_eq!(jet.position[0], r * 0.7f64.cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(jet.position[1], r * 0.7f64.sin(), epsilon = 1e-15);
        assert_abs_diff_eq!(jet.position[2], r * 0.7f64.cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(jet.position[3], -r * 0.7f64.sin(), epsilon = 1e-15);
        assert!(legendrian_residual(&torus.immersion, 32).unwrap() < 1e-12);
    }

    #[test]
    fn hopf_product_metric_splits() {
        // Induced metric must be |alpha'|^2 dt^2 x |alpha|^2 g.
        let alpha = SolitonCurve::new(2.0, 1.0, 1.0)
            .unwrap()
            .plane_curve(ParamRange::interval(-1.0, 1.0));
        let psi = LegendrianImmersion::totally_geodesic_sphere(3).unwrap();
        let phi = hopf_product(&alpha, &psi).unwrap();

        let u = [0.3, 1.1, 2.0];
        let gphi = geometry_at(&phi.eval_jet(&u).unwrap()).unwrap();
        let gpsi = geometry_at(&psi.immersion.eval_jet(&u[1..]).unwrap()).unwrap();
        let cj = alpha.eval(u[0]);
        assert_abs_diff_eq!(
            gphi.metric[(0, 0)],
            cj.d1.norm_sqr(),
            epsilon = 1e-12
        );
        for i in 0..2 {
            assert!(gphi.metric[(0, i + 1)].abs() < 1e-12);
            for j in 0..2 {
                assert_abs_diff_eq!(
                    gphi.metric[(i + 1, j + 1)],
                    cj.value.norm_sqr() * gpsi.metric[(i, j)],
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn hopf_product_mean_curvature_is_parallel_to_j_phi_t() {
        // H = (G'_alpha / |alpha'|^2) J phi_t with
        // G'_alpha = |alpha'| kappa + (n-1) <alpha', J alpha> / |alpha|^2.
        let alpha = SolitonCurve::new(2.0, 1.0, 1.0)
            .unwrap()
            .plane_curve(ParamRange::interval(-1.0, 1.0));
        let n = 3;
        let psi = LegendrianImmersion::totally_geodesic_sphere(n).unwrap();
        let phi = hopf_product(&alpha, &psi).unwrap();

        let u = [0.4, 1.2, 0.9];
        let jet = phi.eval_jet(&u).unwrap();
        let gs = geometry_at(&jet).unwrap();
        let cj = alpha.eval(u[0]);
        let g_prime = cj.d1.norm() * cj.curvature().unwrap()
            + (n as f64 - 1.0) * cj.j_pairing() / cj.value.norm_sqr();
        let expected = ComplexStructure::new(n)
            .apply(&jet.d1[0])
            .scale(g_prime / cj.d1.norm_sqr());
        assert!((&gs.mean_curvature - &expected).amax() < 1e-8);
    }

    #[test]
    fn hopf_product_rejects_degenerate_curves() {
        let constant = PlaneCurve::new(ParamRange::interval(0.0, 1.0), |_| ComplexJet {
            value: Complex64::new(1.0, 0.0),
            d1: Complex64::new(0.0, 0.0),
            d2: Complex64::new(0.0, 0.0),
        });
        let psi = LegendrianImmersion::totally_geodesic_sphere(2).unwrap();
        assert!(matches!(
            hopf_product(&constant, &psi),
            Err(Error::NonRegularFactor(_))
        ));

        let through_origin = PlaneCurve::line(ParamRange::interval(-1.0, 1.0));
        assert!(matches!(
            hopf_product(&through_origin, &psi),
            Err(Error::CurveThroughOrigin { .. })
        ));
    }

    #[test]
    fn power_curve_frozen_examples() {
        // unit circle squared -> double-speed circle
        let circle = PlaneCurve::circle_by_angle(1.0);
        let samples: Vec<ComplexJet> = (0..200)
            .map(|i| circle.eval(i as f64 * std::f64::consts::TAU / 200.0))
            .collect();
        let beta = power_curve(&samples, 2).unwrap();
        for (i, b) in beta.iter().enumerate() {
            let t = i as f64 * std::f64::consts::TAU / 200.0;
            let expect = Complex64::from_polar(1.0, 2.0 * t);
            assert!((b.value - expect).norm() < 1e-12);
            assert!((b.d1 - Complex64::i() * 2.0 * expect).norm() < 1e-12);
        }

        // exponential spiral: alpha = e^{(1+i) t}, alpha^3 = e^{3 (1+i) t}
        let spiral = PlaneCurve::new(ParamRange::interval(0.0, 1.0), |t| {
            let w = Complex64::new(1.0, 1.0);
            let z = (w * t).exp();
            ComplexJet {
                value: z,
                d1: w * z,
                d2: w * w * z,
            }
        });
        let samples: Vec<ComplexJet> = (0..=100).map(|i| spiral.eval(i as f64 / 100.0)).collect();
        let cubed = power_curve(&samples, 3).unwrap();
        for (i, b) in cubed.iter().enumerate() {
            let t = i as f64 / 100.0;
            let expect = (Complex64::new(3.0, 3.0) * t).exp();
            assert!((b.value - expect).norm() < 1e-10 * expect.norm());
        }

        // constant curve: flagged non-regular
        let constant: Vec<ComplexJet> = (0..10)
            .map(|_| ComplexJet {
                value: Complex64::new(2.0, 0.0),
                d1: Complex64::new(0.0, 0.0),
                d2: Complex64::new(0.0, 0.0),
            })
            .collect();
        assert!(matches!(
            power_curve(&constant, 5),
            Err(Error::NonRegularFactor(_))
        ));
    }

    #[test]
    fn unwrap_rejects_coarse_sampling() {
        // 3 samples per turn jumps by 2 pi / 3 > pi / 2.
        let values: Vec<Complex64> = (0..6)
            .map(|i| Complex64::from_polar(1.0, i as f64 * std::f64::consts::TAU / 3.0))
            .collect();
        assert!(matches!(
            unwrap_arguments(&values),
            Err(Error::ArgumentJumpTooLarge { .. })
        ));
    }

    #[test]
    fn root_curve_inverts_power() {
        let beta = SolitonCurve::new(2.0, 1.0, 1.0)
            .unwrap()
            .plane_curve(ParamRange::interval(0.0, 4.0));
        let alpha = root_curve(&beta, 3).unwrap();
        for i in 0..=40 {
            let t = i as f64 * 0.1;
            let a = alpha.eval(t);
            let b = beta.eval(t);
            let cubed = a.value * a.value * a.value;
            assert!((cubed - b.value).norm() < 1e-10 * b.value.norm().max(1.0));
            // chain rule consistency: beta' = 3 alpha^2 alpha'
            assert!((3.0 * a.value * a.value * a.d1 - b.d1).norm() < 1e-9);
        }
    }

    #[test]
    fn pseudoumbilical_residual_detects_velocity() {
        // alpha = e^{it} with a = 1/n solves the equation.
        let circle = PlaneCurve::circle_by_angle(1.0);
        let samples: Vec<ComplexJet> = (0..100)
            .map(|i| circle.eval(i as f64 * std::f64::consts::TAU / 100.0))
            .collect();
        for n in 2..=4u32 {
            let ok = pseudoumbilical_residual(&samples, n, 1.0 / f64::from(n)).unwrap();
            assert!(ok < 1e-13, "n={n}: {ok}");
        }
        // wrong velocity: circle with n = 2, a = 1
        let bad = pseudoumbilical_residual(&samples, 2, 1.0).unwrap();
        assert!(bad > 0.5, "expected a clear failure, got {bad}");
    }

    #[test]
    fn alpha_and_beta_routes_agree_pointwise() {
        // The two deviations differ by the exact factor n |alpha|^{n-1} / |alpha'|.
        let n = 3u32;
        let a = 0.4;
        let beta_curve = SolitonCurve::new(f64::from(n) * a + 0.3, 1.0, 0.5).unwrap();
        let beta_pc = beta_curve.plane_curve(ParamRange::interval(0.2, 2.0));
        let alpha = root_curve(&beta_pc, n).unwrap();
        for i in 0..=20 {
            let t = 0.2 + i as f64 * 0.09;
            let aj = alpha.eval(t);
            let alpha_dev = pseudoumbilical_residual(&[aj], n, a).unwrap();
            let bj = beta_pc.eval(t);
            let kappa = bj.curvature().unwrap();
            let beta_dev =
                (f64::from(n) * a * kappa * bj.j_pairing() - bj.d1.norm()).abs();
            let factor = f64::from(n) * aj.value.norm().powi(n as i32 - 1) / aj.d1.norm();
            assert_abs_diff_eq!(beta_dev, factor * alpha_dev, epsilon = 1e-8);
        }
    }

    #[test]
    fn equivariant_soliton_is_lagrangian_and_consistent() {
        let imm = equivariant_soliton(2, 1.0, 1.0, 1.0, ParamRange::interval(0.0, 2.0)).unwrap();
        assert_eq!(imm.intrinsic_dim(), 2);
        assert_eq!(imm.ambient_dim(), 4);
        assert!(lagrangian_residual(&imm, 9).unwrap() < 1e-12);

        // beta = alpha^2 must satisfy the curve soliton equation with velocity 2.
        let beta = SolitonCurve::new(2.0, 1.0, 1.0).unwrap();
        for i in 0..10 {
            let cj = beta.point(0.1 + 0.17 * i as f64);
            assert!(icsf_residual(&cj, 2.0).unwrap() < 1e-12);
        }
    }

    #[test]
    fn lagrangian_angle_of_circle_products() {
        let imm = product_immersion(&[
            PlaneCurve::circle(1.0),
            PlaneCurve::circle(1.0),
            PlaneCurve::circle(1.0),
        ])
        .unwrap();
        let u = [0.3, 1.4, 2.2];
        let (theta, j_grad) = lagrangian_angle(&imm, &u, 1e-4).unwrap();
        let expected = (u.iter().sum::<f64>() + 3.0 * std::f64::consts::FRAC_PI_2)
            .rem_euclid(std::f64::consts::TAU);
        assert_abs_diff_eq!(theta, expected, epsilon = 1e-12);

        // H = J grad(theta) on Lagrangian submanifolds
        let gs = geometry_at(&imm.eval_jet(&u).unwrap()).unwrap();
        assert!((&gs.mean_curvature - &j_grad).amax() < 1e-6);
    }

    #[test]
    fn hopf_angle_rate_is_n() {
        let n = 3;
        let alpha = PlaneCurve::circle_by_angle((n as f64).sqrt());
        let psi = LegendrianImmersion::totally_geodesic_sphere(n).unwrap();
        let phi = hopf_product(&alpha, &psi).unwrap();
        let h = 1e-5;
        let base = [0.4, 1.0, 0.8];
        let mut plus = base;
        plus[0] += h;
        let mut minus = base;
        minus[0] -= h;
        let (tp, _) = lagrangian_angle(&phi, &plus, 1e-4).unwrap();
        let (tm, _) = lagrangian_angle(&phi, &minus, 1e-4).unwrap();
        let rate = angle_difference(tp, tm) / (2.0 * h);
        assert_abs_diff_eq!(rate, n as f64, epsilon = 1e-6);
    }

    #[test]
    fn flat_lagrangian_plane_has_constant_angle_and_zero_h() {
        let imm = product_immersion(&[
            PlaneCurve::line(ParamRange::interval(-1.0, 1.0)),
            PlaneCurve::line(ParamRange::interval(-1.0, 1.0)),
        ])
        .unwrap();
        let (theta0, j_grad) = lagrangian_angle(&imm, &[0.1, -0.2], 1e-4).unwrap();
        let (theta1, _) = lagrangian_angle(&imm, &[0.5, 0.4], 1e-4).unwrap();
        assert_abs_diff_eq!(theta0, theta1, epsilon = 1e-12);
        assert!(j_grad.amax() < 1e-10);
        let gs = geometry_at(&imm.eval_jet(&[0.1, -0.2]).unwrap()).unwrap();
        assert!(gs.mean_curvature.amax() < 1e-14);
    }

    #[test]
    fn rejects_odd_ambient_dimension() {
        let imm = crate::geom::sphere_chart(2, 1.0); // ambient R^3
        assert!(matches!(
            lagrangian_residual(&imm, 4),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
