//! Plot the named members of the soliton curve family: involute of a
//! circle, logarithmic spiral, epicycloids and hypocycloids, plus the circle
//! they all degenerate to. Writes SVG plots and one CSV into `out/`.
//!
//! Run with: `cargo run --example curve_families`

use imcf::curve::{classify_family, CurveJet, SolitonCurve};
use imcf::export::{curve_csv, svg_document, SvgPath};

fn sample(sc: &SolitonCurve, lo: f64, hi: f64, count: usize) -> Vec<CurveJet> {
    (0..count)
        .map(|i| sc.point(lo + (hi - lo) * i as f64 / (count - 1) as f64))
        .collect()
}

fn to_path(points: &[CurveJet]) -> SvgPath {
    SvgPath {
        points: points.iter().map(|p| [p.alpha.x, p.alpha.y]).collect(),
        markers: points
            .iter()
            .filter(|p| p.is_cusp())
            .map(|p| [p.alpha.x, p.alpha.y])
            .collect(),
        closed: false,
    }
}

fn main() -> imcf::Result<()> {
    std::fs::create_dir_all("out")?;

    // involute of the unit circle and a logarithmic spiral
    let involute = SolitonCurve::new(1.0, 0.0, 1.0)?;
    let spiral = SolitonCurve::new(2.0, 1.0, 1.0)?;
    let svg = svg_document(&[
        to_path(&sample(&involute, -8.0, 8.0, 1200)),
        to_path(&sample(&spiral, -6.0, 2.2, 800)),
    ]);
    std::fs::write("out/involute_spiral.svg", svg)?;

    // epicycloids: a = 1 - m^2/k^2 with m < k
    let mut epi = Vec::new();
    for (m, k) in [(1u64, 2u64), (1, 3), (2, 3)] {
        let a = 1.0 - (m * m) as f64 / ((k * k) as f64);
        let sc = SolitonCurve::new(a, 1.0, 0.0)?;
        let (lo, hi) = classify_family(a, 1.0, 0.0).default_theta_range();
        epi.push(to_path(&sample(&sc, lo, hi, 1600)));
    }
    std::fs::write("out/epicycloids.svg", svg_document(&epi))?;

    // hypocycloids: m > k
    let mut hypo = Vec::new();
    for (m, k) in [(3u64, 2u64), (4, 3), (5, 2)] {
        let a = 1.0 - (m * m) as f64 / ((k * k) as f64);
        let sc = SolitonCurve::new(a, 1.0, 0.0)?;
        let (lo, hi) = classify_family(a, 1.0, 0.0).default_theta_range();
        hypo.push(to_path(&sample(&sc, lo, hi, 1600)));
    }
    std::fs::write("out/hypocycloids.svg", svg_document(&hypo))?;

    // everything together, circle included
    let circle = SolitonCurve::new(1.0, 1.0, 0.0)?;
    let mut all = vec![to_path(&sample(&circle, 0.0, std::f64::consts::TAU, 400))];
    all.extend(epi);
    all.extend(hypo);
    std::fs::write("out/family_together.svg", svg_document(&all))?;

    // CSV of one epicycloid for downstream plotting
    let sc = SolitonCurve::new(0.75, 1.0, 0.0)?;
    std::fs::write(
        "out/epicycloid_1_2.csv",
        curve_csv(&sample(&sc, 0.0, 2.0 * std::f64::consts::TAU, 1000)),
    )?;

    for (a, c1, c2) in [(1.0, 3.0, 0.0), (1.0, 0.0, 2.0), (0.75, 1.0, 0.0), (-1.25, 1.0, 0.0), (2.0, 1.0, 1.0)] {
        println!("classify(a={a:>5}, c1={c1}, c2={c2}) = {:?}", classify_family(a, c1, c2));
    }
    println!("wrote out/involute_spiral.svg, out/epicycloids.svg, out/hypocycloids.svg, out/family_together.svg, out/epicycloid_1_2.csv");
    Ok(())
}
