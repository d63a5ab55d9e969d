//! Pointwise extrinsic geometry from exact analytic jets.
//!
//! Evaluates catalog immersions at a sample point, prints the quantities the
//! soliton equation is built from (|H|^2, |sigma|^2, the normal part of the
//! position), and cross-checks the analytic jets against central
//! finite differences.
//!
//! Run with: `cargo run --example jet_geometry`

use imcf::catalog::{catalog_get, CatalogParams};
use imcf::geom::{geometry_at, DEFAULT_FD_STEP};

fn main() -> imcf::Result<()> {
    let entries: &[(&str, CatalogParams)] = &[
        (
            "round_sphere",
            CatalogParams {
                n: Some(2),
                ..Default::default()
            },
        ),
        (
            "clifford",
            CatalogParams {
                n1: Some(1),
                n2: Some(2),
                ..Default::default()
            },
        ),
        (
            "hopf_sphere",
            CatalogParams {
                n: Some(3),
                ..Default::default()
            },
        ),
        ("veronese", CatalogParams::default()),
    ];

    for (name, params) in entries {
        let (imm, facts) = catalog_get(name, params)?;
        let u: Vec<f64> = (0..imm.intrinsic_dim())
            .map(|i| 0.8 + 0.3 * i as f64)
            .collect();
        let jet = imm.eval_jet(&u)?;
        let gs = geometry_at(&jet)?;

        println!(
            "{name}: M^{} -> R^{}",
            imm.intrinsic_dim(),
            imm.ambient_dim()
        );
        println!("  |phi|        = {:.12}", jet.position.norm());
        println!("  |H|^2        = {:.12}", gs.mean_curvature_norm_sq);
        println!("  |sigma|^2    = {:.12}", gs.sigma_norm_sq);
        println!(
            "  ratio        = {:.12}  (expected {:?})",
            gs.sigma_norm_sq / gs.mean_curvature_norm_sq,
            facts.ratio
        );
        println!(
            "  |phi_normal| = {:.12}, |phi_tangent| = {:.12}",
            gs.phi_normal.norm(),
            gs.phi_tangent.norm()
        );

        // Finite-difference cross-check of the analytic jet.
        let fd = imm.fd_jet(&u, DEFAULT_FD_STEP)?;
        let mut worst: f64 = 0.0;
        for i in 0..imm.intrinsic_dim() {
            worst = worst.max((&fd.d1[i] - &jet.d1[i]).amax());
            for j in 0..imm.intrinsic_dim() {
                worst = worst.max((&fd.d2[i][j] - &jet.d2[i][j]).amax());
            }
        }
        println!("  max |fd - analytic| over the 2-jet = {worst:.3e}\n");
    }
    Ok(())
}
