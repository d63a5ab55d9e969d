//! Immersions with exact 2-jets and pointwise extrinsic geometry.
//!
//! An [`Immersion`] is a parametric map `phi` from an n-dimensional box into
//! R^m whose evaluator returns the exact analytic 2-jet (position, first and
//! second partials) at a parameter point. From one jet, [`geometry_at`]
//! computes the induced metric, the second fundamental form norm, the mean
//! curvature vector `H = g^{ij} (d_ij phi)^normal` and the normal/tangent
//! split of the position vector — everything the soliton equation
//! `-H/|H|^2 = a phi^normal` consumes.
//!
//! Analytic jets are the primary path; [`fd_jet`] provides an independent
//! central-difference cross-check built from positions only.


// Tensor-style index loops mirror the summation conventions; iterator
// rewrites would obscure the symmetric index structure.
#![allow(clippy::needless_range_loop)]
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::dual::Dual2;
use crate::error::{Error, Result};

/// Gram determinants below `DEGENERACY_FACTOR * (product of row norms)` are
/// treated as degenerate. Chart poles must fail loudly, not silently.
pub const DEGENERACY_FACTOR: f64 = 1e-12;

/// Default absolute step for finite-difference cross-checks; parameters are
/// O(1) angles throughout the catalog.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// Polar angles of sphere charts are clamped to `[MARGIN, pi - MARGIN]`.
pub const CHART_POLE_MARGIN: f64 = 1e-2;

/// One parameter interval, optionally periodic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamRange {
    pub lo: f64,
    pub hi: f64,
    pub periodic: bool,
}

impl ParamRange {
    pub fn periodic(lo: f64, hi: f64) -> Self {
        ParamRange {
            lo,
            hi,
            periodic: true,
        }
    }

    pub fn interval(lo: f64, hi: f64) -> Self {
        ParamRange {
            lo,
            hi,
            periodic: false,
        }
    }

    /// Full circle `[0, 2*pi)`.
    pub fn angle() -> Self {
        ParamRange::periodic(0.0, std::f64::consts::TAU)
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    /// Map `u` into the fundamental interval (periodic ranges only).
    pub fn wrap(&self, u: f64) -> f64 {
        if self.periodic {
            let w = (u - self.lo).rem_euclid(self.length()) + self.lo;
            // rem_euclid can round up to the period itself
            if w >= self.hi {
                self.lo
            } else {
                w
            }
        } else {
            u
        }
    }

    pub fn contains(&self, u: f64) -> bool {
        self.periodic || (u >= self.lo && u <= self.hi)
    }

    /// Uniform sample positions for grid scans. Periodic ranges are sampled
    /// half-open on `[lo, hi)` to avoid double-counting the seam;
    /// non-periodic ranges are inset by 1% on both ends to stay clear of
    /// chart edges.
    pub fn samples(&self, count: usize) -> Vec<f64> {
        if count == 0 {
            return Vec::new();
        }
        if self.periodic {
            let step = self.length() / count as f64;
            (0..count).map(|j| self.lo + j as f64 * step).collect()
        } else {
            let inset = 0.01 * self.length();
            let (lo, hi) = (self.lo + inset, self.hi - inset);
            if count == 1 {
                return vec![0.5 * (lo + hi)];
            }
            let step = (hi - lo) / (count - 1) as f64;
            (0..count).map(|j| lo + j as f64 * step).collect()
        }
    }
}

/// A tensor-product sample grid over a parameter box, indexable so scans can
/// parallelize over a flat range without materializing every point.
#[derive(Clone, Debug)]
pub struct Grid {
    axes: Vec<Vec<f64>>,
}

impl Grid {
    /// Uniform grid with `counts[i]` samples along `domain[i]` (periodic
    /// axes half-open, non-periodic axes inset by 1%).
    pub fn new(domain: &[ParamRange], counts: &[usize]) -> Result<Grid> {
        if counts.len() != domain.len() {
            return Err(Error::DimensionMismatch {
                context: "grid counts",
                expected: domain.len(),
                actual: counts.len(),
            });
        }
        if counts.contains(&0) {
            return Err(Error::BadParams("grid counts must be positive".into()));
        }
        Ok(Grid {
            axes: domain
                .iter()
                .zip(counts)
                .map(|(range, &count)| range.samples(count))
                .collect(),
        })
    }

    /// Same count along every axis.
    pub fn uniform(domain: &[ParamRange], count: usize) -> Result<Grid> {
        Grid::new(domain, &vec![count; domain.len()])
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(Vec::len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Decode a flat index (row-major, last axis fastest) into a point.
    pub fn point(&self, mut idx: usize) -> Vec<f64> {
        let mut p = vec![0.0; self.axes.len()];
        for (axis, out) in self.axes.iter().zip(p.iter_mut()).rev() {
            *out = axis[idx % axis.len()];
            idx /= axis.len();
        }
        p
    }

    pub fn points(&self) -> impl Iterator<Item = Vec<f64>> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }
}

/// Position, first partials and second partials of an immersion at one
/// parameter point. `d2` is stored full and symmetric.
#[derive(Clone, Debug)]
pub struct Jet2 {
    pub position: DVector<f64>,
    pub d1: Vec<DVector<f64>>,
    pub d2: Vec<Vec<DVector<f64>>>,
}

impl Jet2 {
    pub fn intrinsic_dim(&self) -> usize {
        self.d1.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.position.len()
    }

    /// Assemble a jet from ambient coordinates evaluated in `Dual2`
    /// arithmetic. Symmetry of `d2` is exact: both triangles are filled from
    /// the same Hessian entry.
    pub fn from_duals(coords: &[Dual2]) -> Self {
        let m = coords.len();
        let n = coords[0].nvars();
        let position = DVector::from_iterator(m, coords.iter().map(|c| c.val()));
        let d1 = (0..n)
            .map(|i| DVector::from_iterator(m, coords.iter().map(|c| c.grad()[i])))
            .collect();
        let mut d2 = vec![vec![DVector::zeros(m); n]; n];
        for i in 0..n {
            for j in i..n {
                let v = DVector::from_iterator(m, coords.iter().map(|c| c.hess(i, j)));
                d2[j][i] = v.clone();
                d2[i][j] = v;
            }
        }
        Jet2 { position, d1, d2 }
    }
}

type Evaluator = Arc<dyn Fn(&[f64]) -> Jet2 + Send + Sync>;

/// A parametric immersion of an n-box into R^m with an exact analytic jet
/// evaluator. Evaluators are immutable after construction; evaluation is safe
/// to run concurrently across grid points.
#[derive(Clone)]
pub struct Immersion {
    intrinsic_dim: usize,
    ambient_dim: usize,
    domain: Vec<ParamRange>,
    evaluator: Evaluator,
}

impl Immersion {
    pub fn new(
        domain: Vec<ParamRange>,
        ambient_dim: usize,
        evaluator: impl Fn(&[f64]) -> Jet2 + Send + Sync + 'static,
    ) -> Self {
        Immersion {
            intrinsic_dim: domain.len(),
            ambient_dim,
            domain,
            evaluator: Arc::new(evaluator),
        }
    }

    /// Build from a map written in `Dual2` arithmetic: one call yields the
    /// exact 2-jet.
    pub fn from_dual_map(
        domain: Vec<ParamRange>,
        ambient_dim: usize,
        map: impl Fn(&[Dual2]) -> Vec<Dual2> + Send + Sync + 'static,
    ) -> Self {
        Immersion::new(domain, ambient_dim, move |u| {
            Jet2::from_duals(&map(&Dual2::vars(u)))
        })
    }

    pub fn intrinsic_dim(&self) -> usize {
        self.intrinsic_dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn domain(&self) -> &[ParamRange] {
        &self.domain
    }

    /// Wrap periodic parameters and reject points outside non-periodic
    /// intervals.
    pub fn clamp_domain(&self, u: &[f64]) -> Result<Vec<f64>> {
        if u.len() != self.intrinsic_dim {
            return Err(Error::DimensionMismatch {
                context: "parameter point",
                expected: self.intrinsic_dim,
                actual: u.len(),
            });
        }
        let mut w = Vec::with_capacity(u.len());
        for (i, (&ui, range)) in u.iter().zip(&self.domain).enumerate() {
            let wi = range.wrap(ui);
            if !range.contains(wi) {
                return Err(Error::OutOfDomain {
                    index: i,
                    value: ui,
                    lo: range.lo,
                    hi: range.hi,
                });
            }
            w.push(wi);
        }
        Ok(w)
    }

    /// Exact analytic jet at `u` (after periodic wrap).
    pub fn eval_jet(&self, u: &[f64]) -> Result<Jet2> {
        let w = self.clamp_domain(u)?;
        Ok((self.evaluator)(&w))
    }

    /// Position only; used by the finite-difference cross-check.
    pub fn position(&self, u: &[f64]) -> Result<DVector<f64>> {
        Ok(self.eval_jet(u)?.position)
    }

    /// Central-difference jet built from positions only. Second-order
    /// accurate; a cross-check, never the primary path.
    pub fn fd_jet(&self, u: &[f64], h: f64) -> Result<Jet2> {
        let w = self.clamp_domain(u)?;
        let this = self.clone();
        fd_jet(
            move |p| (this.evaluator)(p).position,
            &self.domain,
            &w,
            h,
        )
    }

    /// Same immersion with a fixed ambient linear isometry applied.
    pub fn rotated(&self, q: DMatrix<f64>) -> Immersion {
        assert_eq!(q.nrows(), self.ambient_dim);
        let inner = self.evaluator.clone();
        Immersion::new(self.domain.clone(), self.ambient_dim, move |u| {
            let jet = inner(u);
            Jet2 {
                position: &q * &jet.position,
                d1: jet.d1.iter().map(|v| &q * v).collect(),
                d2: jet
                    .d2
                    .iter()
                    .map(|row| row.iter().map(|v| &q * v).collect())
                    .collect(),
            }
        })
    }

    /// Same immersion dilated by `rho > 0`.
    pub fn scaled(&self, rho: f64) -> Immersion {
        let inner = self.evaluator.clone();
        Immersion::new(self.domain.clone(), self.ambient_dim, move |u| {
            let jet = inner(u);
            Jet2 {
                position: rho * &jet.position,
                d1: jet.d1.iter().map(|v| rho * v).collect(),
                d2: jet
                    .d2
                    .iter()
                    .map(|row| row.iter().map(|v| rho * v).collect())
                    .collect(),
            }
        })
    }

    pub(crate) fn raw_evaluator(&self) -> Evaluator {
        self.evaluator.clone()
    }
}

/// Central-difference 2-jet of a position-only evaluator. Errors with
/// [`Error::StepTooLarge`] if any stencil point `u +- 2h` leaves a
/// non-periodic interval.
pub fn fd_jet(
    position: impl Fn(&[f64]) -> DVector<f64>,
    domain: &[ParamRange],
    u: &[f64],
    h: f64,
) -> Result<Jet2> {
    if h <= 0.0 {
        return Err(Error::StepTooLarge { step: h });
    }
    let n = u.len();
    for (ui, range) in u.iter().zip(domain) {
        if !range.periodic && (ui - 2.0 * h < range.lo || ui + 2.0 * h > range.hi) {
            return Err(Error::StepTooLarge { step: h });
        }
    }
    let at = |offsets: &[(usize, f64)]| {
        let mut p = u.to_vec();
        for &(i, d) in offsets {
            p[i] += d;
        }
        for (pi, range) in p.iter_mut().zip(domain) {
            *pi = range.wrap(*pi);
        }
        position(&p)
    };

    let center = at(&[]);
    let m = center.len();
    let mut d1 = Vec::with_capacity(n);
    let mut d2 = vec![vec![DVector::zeros(m); n]; n];
    for i in 0..n {
        let plus = at(&[(i, h)]);
        let minus = at(&[(i, -h)]);
        d1.push((&plus - &minus) / (2.0 * h));
        d2[i][i] = (&plus - &(2.0 * &center) + &minus) / (h * h);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let pp = at(&[(i, h), (j, h)]);
            let pm = at(&[(i, h), (j, -h)]);
            let mp = at(&[(i, -h), (j, h)]);
            let mm = at(&[(i, -h), (j, -h)]);
            let mixed = (&pp - &pm - &mp + &mm) / (4.0 * h * h);
            d2[i][j] = mixed.clone();
            d2[j][i] = mixed;
        }
    }
    Ok(Jet2 {
        position: center,
        d1,
        d2,
    })
}

/// First and second order extrinsic geometry at one point: induced metric,
/// mean curvature vector, |sigma|^2, and the normal/tangent split of the
/// position vector.
#[derive(Clone, Debug)]
pub struct GeometrySample {
    pub metric: DMatrix<f64>,
    pub metric_inv: DMatrix<f64>,
    pub mean_curvature: DVector<f64>,
    pub mean_curvature_norm_sq: f64,
    pub sigma_norm_sq: f64,
    pub phi_normal: DVector<f64>,
    pub phi_tangent: DVector<f64>,
    pub position: DVector<f64>,
}

impl GeometrySample {
    pub fn intrinsic_dim(&self) -> usize {
        self.metric.nrows()
    }
}

/// Lower-triangular Cholesky factor of a small dense SPD matrix, stored
/// flat. Grid scans call [`geometry_at`] millions of times; this avoids the
/// allocation churn of general-purpose matrix types in the hot path.
struct SmallCholesky {
    n: usize,
    l: Vec<f64>,
}

impl SmallCholesky {
    /// Factor `g` (row-major n x n); returns the factor and `det(g)`, or
    /// `None` when the matrix is not positive definite.
    fn new(g: &[f64], n: usize) -> Option<(SmallCholesky, f64)> {
        let mut l = g.to_vec();
        let mut det = 1.0;
        for j in 0..n {
            let mut d = l[j * n + j];
            for k in 0..j {
                d -= l[j * n + k] * l[j * n + k];
            }
            if d <= 0.0 || !d.is_finite() {
                return None;
            }
            det *= d;
            let s = d.sqrt();
            l[j * n + j] = s;
            for i in (j + 1)..n {
                let mut v = l[i * n + j];
                for k in 0..j {
                    v -= l[i * n + k] * l[j * n + k];
                }
                l[i * n + j] = v / s;
            }
        }
        Some((SmallCholesky { n, l }, det))
    }

    fn solve_in_place(&self, b: &mut [f64]) {
        let (n, l) = (self.n, &self.l);
        for i in 0..n {
            let mut v = b[i];
            for k in 0..i {
                v -= l[i * n + k] * b[k];
            }
            b[i] = v / l[i * n + i];
        }
        for i in (0..n).rev() {
            let mut v = b[i];
            for k in (i + 1)..n {
                v -= l[k * n + i] * b[k];
            }
            b[i] = v / l[i * n + i];
        }
    }

    fn inverse(&self) -> Vec<f64> {
        let n = self.n;
        let mut inv = vec![0.0; n * n];
        let mut col = vec![0.0; n];
        for c in 0..n {
            col.fill(0.0);
            col[c] = 1.0;
            self.solve_in_place(&mut col);
            for r in 0..n {
                inv[r * n + c] = col[r];
            }
        }
        inv
    }
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
fn axpy(out: &mut [f64], scale: f64, v: &[f64]) {
    for (o, x) in out.iter_mut().zip(v) {
        *o += scale * x;
    }
}

/// All pointwise geometry from one jet. The Gram matrix is factored with a
/// symmetric positive-definite Cholesky; there is no pseudo-inverse fallback,
/// so chart poles fail loudly with [`Error::DegenerateMetric`].
pub fn geometry_at(jet: &Jet2) -> Result<GeometrySample> {
    let n = jet.intrinsic_dim();
    let m = jet.ambient_dim();
    let d1: Vec<&[f64]> = jet.d1.iter().map(|v| v.as_slice()).collect();
    let pos = jet.position.as_slice();

    let mut gram = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let g = dot(d1[i], d1[j]);
            gram[i * n + j] = g;
            gram[j * n + i] = g;
        }
    }
    let row_norm_product: f64 = (0..n)
        .map(|i| dot(&gram[i * n..(i + 1) * n], &gram[i * n..(i + 1) * n]).sqrt())
        .product();
    let threshold = DEGENERACY_FACTOR * row_norm_product.max(f64::MIN_POSITIVE);
    let (chol, det) = SmallCholesky::new(&gram, n).ok_or(Error::DegenerateMetric {
        det: 0.0,
        threshold,
    })?;
    if det < threshold {
        return Err(Error::DegenerateMetric { det, threshold });
    }
    let ginv = chol.inverse();

    // Normal/tangent split of the position via a Gram solve.
    let mut coef = vec![0.0; n];
    for i in 0..n {
        coef[i] = dot(pos, d1[i]);
    }
    chol.solve_in_place(&mut coef);
    let mut phi_tangent = vec![0.0; m];
    for i in 0..n {
        axpy(&mut phi_tangent, coef[i], d1[i]);
    }
    let phi_normal: Vec<f64> = pos.iter().zip(&phi_tangent).map(|(p, t)| p - t).collect();

    // sigma_ij = normal part of d2_ij; only the upper triangle is distinct.
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let t = pairs.len();
    let mut pair_index = vec![0usize; n * n];
    for (p, &(i, j)) in pairs.iter().enumerate() {
        pair_index[i * n + j] = p;
        pair_index[j * n + i] = p;
    }
    let mut sigma = vec![0.0; t * m];
    for (p, &(i, j)) in pairs.iter().enumerate() {
        let w = jet.d2[i][j].as_slice();
        for (k, c) in coef.iter_mut().enumerate() {
            *c = dot(w, d1[k]);
        }
        chol.solve_in_place(&mut coef);
        let row = &mut sigma[p * m..(p + 1) * m];
        row.copy_from_slice(w);
        for k in 0..n {
            axpy(row, -coef[k], d1[k]);
        }
    }

    // H = g^{ij} sigma_ij; off-diagonal pairs enter twice by symmetry.
    let mut mean_curvature = vec![0.0; m];
    for (p, &(i, j)) in pairs.iter().enumerate() {
        let weight = if i == j { 1.0 } else { 2.0 } * ginv[i * n + j];
        axpy(&mut mean_curvature, weight, &sigma[p * m..(p + 1) * m]);
    }

    // |sigma|^2 = g^{ik} g^{jl} <sigma_ij, sigma_kl>, contracted through a
    // table of the distinct pair inner products.
    let mut dots = vec![0.0; t * t];
    for p in 0..t {
        for q in p..t {
            let v = dot(&sigma[p * m..(p + 1) * m], &sigma[q * m..(q + 1) * m]);
            dots[p * t + q] = v;
            dots[q * t + p] = v;
        }
    }
    let mut sigma_norm_sq = 0.0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    sigma_norm_sq += ginv[i * n + k]
                        * ginv[j * n + l]
                        * dots[pair_index[i * n + j] * t + pair_index[k * n + l]];
                }
            }
        }
    }

    Ok(GeometrySample {
        mean_curvature_norm_sq: dot(&mean_curvature, &mean_curvature),
        mean_curvature: DVector::from_vec(mean_curvature),
        metric: DMatrix::from_row_slice(n, n, &gram),
        metric_inv: DMatrix::from_row_slice(n, n, &ginv),
        sigma_norm_sq,
        phi_normal: DVector::from_vec(phi_normal),
        phi_tangent: DVector::from_vec(phi_tangent),
        position: jet.position.clone(),
    })
}

/// Intrinsic Laplacian of `f = |phi|^2` at `u`, computed from the chart:
/// `Lap f = g^{ij} (d_ij f - Gamma^k_ij d_k f)` with Christoffel symbols from
/// central differences of the metric. Deliberately independent of the
/// identity `Lap |phi|^2 = 2(<H, phi> + n)`, which serves as its oracle.
pub fn laplace_beltrami_normsq(imm: &Immersion, u: &[f64], h: f64) -> Result<f64> {
    let w = imm.clamp_domain(u)?;
    let n = imm.intrinsic_dim();
    for (ui, range) in w.iter().zip(imm.domain()) {
        if !range.periodic && (ui - 2.0 * h < range.lo || ui + 2.0 * h > range.hi) {
            return Err(Error::StepTooLarge { step: h });
        }
    }

    let jet = imm.eval_jet(&w)?;
    let gs = geometry_at(&jet)?;

    // d_k f and d_ij f come straight from the analytic jet.
    let df: Vec<f64> = (0..n).map(|k| 2.0 * jet.position.dot(&jet.d1[k])).collect();
    let ddf = DMatrix::from_fn(n, n, |i, j| {
        2.0 * (jet.d1[i].dot(&jet.d1[j]) + jet.position.dot(&jet.d2[i][j]))
    });

    // dg[k][(i,j)] = d_k g_ij by central differences of the analytic metric.
    let metric_at = |p: &[f64]| -> Result<DMatrix<f64>> {
        let jp = imm.eval_jet(p)?;
        Ok(DMatrix::from_fn(n, n, |i, j| jp.d1[i].dot(&jp.d1[j])))
    };
    let mut dg = Vec::with_capacity(n);
    for k in 0..n {
        let mut plus = w.clone();
        plus[k] += h;
        let mut minus = w.clone();
        minus[k] -= h;
        dg.push((metric_at(&plus)? - metric_at(&minus)?) / (2.0 * h));
    }

    // Gamma^k_ij = (1/2) g^{kl} (d_i g_jl + d_j g_il - d_l g_ij)
    let mut laplacian = 0.0;
    for i in 0..n {
        for j in 0..n {
            let mut correction = 0.0;
            for k in 0..n {
                let mut gamma = 0.0;
                for l in 0..n {
                    gamma += 0.5
                        * gs.metric_inv[(k, l)]
                        * (dg[i][(j, l)] + dg[j][(i, l)] - dg[l][(i, j)]);
                }
                correction += gamma * df[k];
            }
            laplacian += gs.metric_inv[(i, j)] * (ddf[(i, j)] - correction);
        }
    }
    Ok(laplacian)
}

/// Round sphere of radius `r` in R^{k+1} in spherical coordinates: polar
/// angles clamped away from the poles, final angle periodic.
pub fn sphere_chart(k: usize, r: f64) -> Immersion {
    let mut domain = vec![
        ParamRange::interval(
            CHART_POLE_MARGIN,
            std::f64::consts::PI - CHART_POLE_MARGIN
        );
        k.saturating_sub(1)
    ];
    domain.push(ParamRange::angle());
    Immersion::from_dual_map(domain, k + 1, move |u| sphere_coords(u, r))
}

/// Spherical-coordinate chart written in dual arithmetic; shared by the
/// catalog constructions that contain a sphere factor.
pub fn sphere_coords(u: &[Dual2], r: f64) -> Vec<Dual2> {
    let k = u.len();
    let nvars = u[0].nvars();
    let mut coords = Vec::with_capacity(k + 1);
    let mut sin_prod = Dual2::constant(r, nvars);
    for ui in u {
        coords.push(sin_prod * ui.cos());
        sin_prod = sin_prod * ui.sin();
    }
    coords.push(sin_prod);
    coords
}
