//! Scan every soliton in the catalog against the soliton equation
//! `-H/|H|^2 = a phi^normal` and print one summary line per entry.
//!
//! Run with: `cargo run --release --example verify_catalog`

use imcf::catalog::{CatalogSpec, ExpectedFacts};
use imcf::geom::{Immersion, ParamRange};
use imcf::verify::scan;

fn entries() -> Vec<(String, CatalogSpec)> {
    let mut list: Vec<(String, CatalogSpec)> = vec![
        ("round_sphere(2)".into(), CatalogSpec::RoundSphere { n: 2, radius: 1.0 }),
        ("round_sphere(3, r=2)".into(), CatalogSpec::RoundSphere { n: 3, radius: 2.0 }),
        ("clifford(1,1)".into(), CatalogSpec::Clifford { n1: 1, n2: 1 }),
        ("clifford(1,2)".into(), CatalogSpec::Clifford { n1: 1, n2: 2 }),
        ("circles_product(3)".into(), CatalogSpec::CirclesProduct { n: 3 }),
        ("hopf_sphere(2)".into(), CatalogSpec::HopfSphere { n: 2 }),
        ("hopf_sphere(3)".into(), CatalogSpec::HopfSphere { n: 3 }),
        ("cylinder_circles(3,1)".into(), CatalogSpec::CylinderCircles { n: 3, k: 1 }),
        ("veronese".into(), CatalogSpec::Veronese),
    ];
    let spiral = imcf::curve::SolitonCurve::new(2.0, 1.0, 1.0).expect("valid");
    list.push((
        "curve_cylinder(spiral a=2)".into(),
        CatalogSpec::CurveCylinder {
            curve: spiral,
            n: 2,
            theta: ParamRange::interval(-1.0, 1.0),
        },
    ));
    list
}

fn grid_for(imm: &Immersion) -> Vec<usize> {
    // keep the total work bounded as the dimension grows
    let per_axis = match imm.intrinsic_dim() {
        1 => 64,
        2 => 32,
        3 => 16,
        _ => 8,
    };
    vec![per_axis; imm.intrinsic_dim()]
}

fn main() -> imcf::Result<()> {
    println!(
        "{:<28} {:>14} {:>14} {:>12} {:>10}",
        "entry", "max residual", "estimated a", "ratio", "degenerate"
    );
    for (label, spec) in entries() {
        let (imm, facts): (Immersion, ExpectedFacts) = spec.build()?;
        let a = facts.velocity_a.expect("soliton entry");
        let report = scan(&imm, a, &grid_for(&imm))?;
        println!(
            "{:<28} {:>14.3e} {:>14.9} {:>12.9} {:>7}/{}",
            label,
            report.max_residual,
            report.estimated_a_stats.mean,
            report.ratio_stats.mean,
            report.samples_degenerate,
            report.samples_total,
        );
    }
    Ok(())
}
