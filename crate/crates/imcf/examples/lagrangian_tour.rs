//! Lagrangian constructions end to end: products of circles, the Hopf
//! product over a minimal Legendrian immersion, the Lagrangian angle and its
//! relation `H = J grad(theta)`, and the alpha^n reduction of the
//! pseudoumbilical soliton equation.
//!
//! Run with: `cargo run --example lagrangian_tour`

use imcf::curve::{icsf_residual, ComplexJet, PlaneCurve, SolitonCurve};
use imcf::geom::{geometry_at, ParamRange};
use imcf::lagrangian::{
    hopf_product, lagrangian_angle, lagrangian_residual, power_curve, pseudoumbilical_residual,
    root_curve, LegendrianImmersion,
};

fn main() -> imcf::Result<()> {
    // Products of plane curves are Lagrangian by construction.
    let product = imcf::lagrangian::product_immersion(&[
        PlaneCurve::circle(1.0),
        PlaneCurve::circle(1.0),
        PlaneCurve::line(ParamRange::interval(-1.0, 1.0)),
    ])?;
    println!(
        "Kaehler residual of S^1 x S^1 x R in C^3: {:.3e}",
        lagrangian_residual(&product, 9)?
    );

    // Lagrangian angle of a circle product and H = J grad(theta).
    let torus3 = imcf::lagrangian::product_immersion(&vec![PlaneCurve::circle(1.0); 3])?;
    let u = [0.3, 1.1, 2.0];
    let (theta, j_grad) = lagrangian_angle(&torus3, &u, 1e-4)?;
    let gs = geometry_at(&torus3.eval_jet(&u)?)?;
    println!(
        "T^3 angle at {u:?}: theta = {theta:.9}, |H - J grad(theta)| = {:.3e}",
        (&gs.mean_curvature - &j_grad).amax()
    );

    // Hopf product over the two explicit minimal Legendrian immersions.
    for (label, psi) in [
        ("totally geodesic S^2", LegendrianImmersion::totally_geodesic_sphere(3)?),
        ("flat Legendrian torus", LegendrianImmersion::flat_torus(3)?),
    ] {
        let worst = psi.verify(9, 1e-8)?;
        let phi = hopf_product(&PlaneCurve::circle_by_angle(3f64.sqrt()), &psi)?;
        let report = imcf::verify::scan(&phi, 1.0 / 3.0, &[12, 12, 12])?;
        println!(
            "sqrt(3) e^(it) psi with psi = {label}: legendrian residual {worst:.3e}, \
             soliton residual {:.3e}, ratio {:.9}",
            report.max_residual, report.ratio_stats.mean
        );
    }

    // alpha^n reduction: alpha = beta^(1/n) for a soliton curve beta with
    // velocity n a satisfies the pseudoumbilical equation with velocity a.
    let (n, a) = (3u32, 0.4);
    let beta = SolitonCurve::new(f64::from(n) * a, 1.0, 0.5)?;
    let beta_pc = beta.plane_curve(ParamRange::interval(0.2, 2.0));
    let alpha = root_curve(&beta_pc, n)?;
    let samples: Vec<ComplexJet> = (0..=60).map(|i| alpha.eval(0.2 + 0.03 * i as f64)).collect();
    println!(
        "pseudoumbilical residual of beta^(1/3) with a = {a}: {:.3e}",
        pseudoumbilical_residual(&samples, n, a)?
    );
    println!(
        "   ... and with the wrong velocity 2a: {:.3e}",
        pseudoumbilical_residual(&samples, n, 2.0 * a)?
    );

    // The other direction: alpha^n of those samples is a curve soliton with
    // velocity n a.
    let powered = power_curve(&samples, n)?;
    let mut worst: f64 = 0.0;
    for b in &powered {
        let kappa = b.curvature()?;
        worst = worst.max((f64::from(n) * a * kappa * b.j_pairing() - b.d1.norm()).abs());
    }
    println!("curve-soliton residual of alpha^3 at velocity 3a: {worst:.3e}");

    // Sanity: the circle itself is the velocity-1 curve soliton.
    let circle = SolitonCurve::new(1.0, 1.0, 0.0)?;
    println!(
        "icsf residual of the unit circle at a = 1: {:.3e}",
        icsf_residual(&circle.point(0.7), 1.0)?
    );
    Ok(())
}
