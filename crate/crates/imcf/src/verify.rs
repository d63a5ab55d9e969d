//! Soliton verification: residuals of `-H/|H|^2 = a phi^normal`, velocity
//! estimation via `<H, phi> = -1/a`, pinching ratios `|sigma|^2/|H|^2`, and
//! grid scans aggregating all of it into a [`SolitonReport`].

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{geometry_at, laplace_beltrami_normsq, GeometrySample, Grid, Immersion};

/// `|H| |phi|` products below this are treated as vanishing mean curvature.
pub const MEAN_CURVATURE_TOL: f64 = 1e-12;

/// `|<H, phi>| < NOT_A_SOLITON_FACTOR * |H| |phi|` means no finite velocity
/// constant fits the point.
pub const NOT_A_SOLITON_FACTOR: f64 = 1e-12;

/// Pointwise norm of the soliton equation defect `-H/|H|^2 - a phi^normal`,
/// in absolute ambient units (the quantity is dilation-covariant; no
/// normalization is applied).
pub fn soliton_residual(gs: &GeometrySample, a: f64) -> Result<f64> {
    if a == 0.0 {
        return Err(Error::BadParams("soliton velocity a must be nonzero".into()));
    }
    let h_sq = gs.mean_curvature_norm_sq;
    if h_sq * (1.0 + gs.position.norm_squared()) < MEAN_CURVATURE_TOL * MEAN_CURVATURE_TOL {
        return Err(Error::MeanCurvatureVanishes);
    }
    Ok((-&gs.mean_curvature / h_sq - a * &gs.phi_normal).norm())
}

/// The unique velocity fitting the point: `-1 / <H, phi>`.
pub fn estimate_velocity(gs: &GeometrySample) -> Result<f64> {
    let pairing = gs.mean_curvature.dot(&gs.position);
    let scale = gs.mean_curvature.norm() * gs.position.norm();
    if scale == 0.0 || pairing.abs() < NOT_A_SOLITON_FACTOR * scale {
        return Err(Error::NotASoliton);
    }
    Ok(-1.0 / pairing)
}

/// Dilation-invariant pinching ratio `|sigma|^2 / |H|^2`.
pub fn pinching_ratio(gs: &GeometrySample) -> Result<f64> {
    let h_sq = gs.mean_curvature_norm_sq;
    if h_sq * (1.0 + gs.position.norm_squared()) < MEAN_CURVATURE_TOL * MEAN_CURVATURE_TOL {
        return Err(Error::MeanCurvatureVanishes);
    }
    Ok(gs.sigma_norm_sq / h_sq)
}

/// Min/max/mean of a per-sample quantity.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Stats {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

impl Stats {
    fn from_values(values: impl Iterator<Item = f64>) -> Option<Stats> {
        let mut count = 0usize;
        let (mut min, mut max, mut sum) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
        for v in values {
            count += 1;
            min = min.min(v);
            max = max.max(v);
            sum += v;
        }
        (count > 0).then(|| Stats {
            min,
            max,
            mean: sum / count as f64,
        })
    }

    pub fn spread(&self) -> f64 {
        self.max - self.min
    }
}

/// Aggregated result of a grid scan.
#[derive(Clone, Debug, Serialize)]
pub struct SolitonReport {
    /// The claimed velocity the residual was evaluated against.
    pub velocity_a: f64,
    pub max_residual: f64,
    pub mean_residual: f64,
    /// Per-sample `-1/<H, phi>` statistics.
    pub estimated_a_stats: Stats,
    /// Largest deviation of the intrinsic finite-difference Laplacian of
    /// `|phi|^2` from `2 (n - 1/a)`, over the Laplacian-check subgrid.
    pub lemma_b_max_dev: f64,
    /// Per-sample `|sigma|^2/|H|^2` statistics.
    pub ratio_stats: Stats,
    pub samples_total: usize,
    pub samples_degenerate: usize,
}

/// One grid sample for CSV export; degenerate samples carry no values.
#[derive(Clone, Debug)]
pub struct SampleRow {
    pub params: Vec<f64>,
    pub residual: Option<f64>,
    pub estimated_a: Option<f64>,
    pub ratio: Option<f64>,
}

/// Scan options. The Laplacian identity check costs `2n` extra jet
/// evaluations per point, so by default it runs on an evenly strided subgrid
/// of at most `lemma_b_budget` samples.
#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    pub lemma_b_budget: Option<usize>,
    pub fd_step: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            lemma_b_budget: Some(256),
            fd_step: crate::geom::DEFAULT_FD_STEP,
        }
    }
}

/// Evaluate the pointwise soliton checks over a uniform grid with
/// `counts[i]` samples along parameter `i`. Degenerate points (chart poles,
/// cusps, vanishing mean curvature) are counted, not fatal. Grid points are
/// evaluated in parallel; the aggregation is performed in index order so
/// identical inputs produce bit-identical reports.
pub fn scan(imm: &Immersion, a: f64, counts: &[usize]) -> Result<SolitonReport> {
    scan_with(imm, a, counts, ScanOptions::default()).map(|(report, _)| report)
}

/// [`scan`] that also returns one row per grid sample.
pub fn scan_samples(
    imm: &Immersion,
    a: f64,
    counts: &[usize],
) -> Result<(SolitonReport, Vec<SampleRow>)> {
    scan_with(imm, a, counts, ScanOptions::default())
}

pub fn scan_with(
    imm: &Immersion,
    a: f64,
    counts: &[usize],
    options: ScanOptions,
) -> Result<(SolitonReport, Vec<SampleRow>)> {
    if a == 0.0 {
        return Err(Error::BadParams("soliton velocity a must be nonzero".into()));
    }
    let grid = Grid::new(imm.domain(), counts)?;
    let total = grid.len();
    if total == 0 {
        return Err(Error::BadParams("empty scan grid".into()));
    }

    let rows: Vec<SampleRow> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let params = grid.point(idx);
            let values = imm
                .eval_jet(&params)
                .and_then(|jet| geometry_at(&jet))
                .and_then(|gs| {
                    Ok((
                        soliton_residual(&gs, a)?,
                        estimate_velocity(&gs)?,
                        pinching_ratio(&gs)?,
                    ))
                });
            match values {
                Ok((residual, estimated_a, ratio)) => SampleRow {
                    params,
                    residual: Some(residual),
                    estimated_a: Some(estimated_a),
                    ratio: Some(ratio),
                },
                Err(_) => SampleRow {
                    params,
                    residual: None,
                    estimated_a: None,
                    ratio: None,
                },
            }
        })
        .collect();

    let valid: Vec<&SampleRow> = rows.iter().filter(|r| r.residual.is_some()).collect();
    if valid.is_empty() {
        return Err(Error::AllSamplesDegenerate(total));
    }

    // Laplacian identity: intrinsic FD Lap |phi|^2 vs 2 (n - 1/a), on a
    // strided subset of the valid samples.
    let n = imm.intrinsic_dim() as f64;
    let lemma_indices: Vec<usize> = match options.lemma_b_budget {
        Some(budget) if budget > 0 => {
            let stride = valid.len().div_ceil(budget);
            (0..valid.len()).step_by(stride).collect()
        }
        Some(_) => Vec::new(),
        None => (0..valid.len()).collect(),
    };
    let lemma_b_max_dev = lemma_indices
        .into_par_iter()
        .filter_map(|i| {
            laplace_beltrami_normsq(imm, &valid[i].params, options.fd_step)
                .ok()
                .map(|lap| (lap - 2.0 * (n - 1.0 / a)).abs())
        })
        .reduce(|| 0.0, f64::max);

    let max_residual = valid
        .iter()
        .map(|r| r.residual.unwrap())
        .fold(0.0, f64::max);
    let mean_residual =
        valid.iter().map(|r| r.residual.unwrap()).sum::<f64>() / valid.len() as f64;
    let estimated_a_stats =
        Stats::from_values(valid.iter().map(|r| r.estimated_a.unwrap())).expect("nonempty");
    let ratio_stats = Stats::from_values(valid.iter().map(|r| r.ratio.unwrap())).expect("nonempty");

    let report = SolitonReport {
        velocity_a: a,
        max_residual,
        mean_residual,
        estimated_a_stats,
        lemma_b_max_dev,
        ratio_stats,
        samples_total: total,
        samples_degenerate: total - valid.len(),
    };
    Ok((report, rows))
}
