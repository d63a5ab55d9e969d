//! Named example immersions with analytic jets and their expected facts.
//!
//! Every soliton entry is stored at its natural radii (e.g. the Clifford
//! immersion `S^{n1}(sqrt(n1)) x S^{n2}(sqrt(n2))`, the Hopf immersion
//! `sqrt(n) e^{it} x`); scans exploit dilation invariance instead of
//! re-normalizing. Closed entries satisfy `a = 1/n` and `|H| |phi| = n`.

use serde::Serialize;

use crate::curve::{PlaneCurve, SolitonCurve};
use crate::error::{Error, Result};
use crate::geom::{sphere_chart, sphere_coords, Immersion, ParamRange, CHART_POLE_MARGIN};
use crate::lagrangian::{hopf_product, product_immersion, LegendrianImmersion};

/// What is known in closed form about a catalog entry.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ExpectedFacts {
    /// Soliton velocity, if the entry is a soliton (`None` for pure
    /// Legendrian inputs).
    pub velocity_a: Option<f64>,
    /// Pinching ratio |sigma|^2/|H|^2; constant on these homogeneous
    /// examples. For cylinder entries it is measured at build time.
    pub ratio: Option<f64>,
    pub closed: bool,
    pub lagrangian: bool,
    pub intrinsic_dim: usize,
    pub ambient_dim: usize,
}

/// Parsed identity of a catalog entry.
#[derive(Clone, Debug)]
pub enum CatalogSpec {
    /// Round n-sphere of radius `radius` in R^{n+1}.
    RoundSphere { n: usize, radius: f64 },
    /// Clifford immersion `S^{n1}(sqrt(n1)) x S^{n2}(sqrt(n2))` in R^{n+2}.
    Clifford { n1: usize, n2: usize },
    /// Product of n unit circles in R^{2n}.
    CirclesProduct { n: usize },
    /// Hopf immersion `(t, x) -> sqrt(n) e^{it} x` of S^1 x S^{n-1} in C^n.
    HopfSphere { n: usize },
    /// k unit circles times R^{n-k} in C^n.
    CylinderCircles { n: usize, k: usize },
    /// A soliton curve times R^{n-1} in C^n.
    CurveCylinder {
        curve: SolitonCurve,
        n: usize,
        theta: ParamRange,
    },
    /// Flat minimal Legendrian torus in S^{2n-1}; an input for Hopf
    /// products, not itself catalogued as a soliton.
    LegendrianTorus { n: usize },
    /// Veronese immersion of S^2 in R^5 (the quadratic harmonic chart).
    Veronese,
}

impl CatalogSpec {
    /// Build the immersion and its expected facts.
    pub fn build(&self) -> Result<(Immersion, ExpectedFacts)> {
        match *self {
            CatalogSpec::RoundSphere { n, radius } => {
                if n < 1 || radius <= 0.0 {
                    return Err(Error::BadParams(format!(
                        "round_sphere needs n >= 1 and radius > 0, got n={n}, radius={radius}"
                    )));
                }
                let imm = sphere_chart(n, radius);
                let facts = ExpectedFacts {
                    velocity_a: Some(1.0 / n as f64),
                    ratio: Some(1.0 / n as f64),
                    closed: true,
                    lagrangian: n == 1,
                    intrinsic_dim: n,
                    ambient_dim: n + 1,
                };
                Ok((imm, facts))
            }
            CatalogSpec::Clifford { n1, n2 } => {
                if n1 < 1 || n2 < 1 {
                    return Err(Error::BadParams(format!(
                        "clifford needs n1, n2 >= 1, got ({n1}, {n2})"
                    )));
                }
                let n = n1 + n2;
                let imm = clifford_immersion(n1, n2);
                let facts = ExpectedFacts {
                    velocity_a: Some(1.0 / n as f64),
                    ratio: Some(2.0 / n as f64),
                    closed: true,
                    lagrangian: n1 == 1 && n2 == 1,
                    intrinsic_dim: n,
                    ambient_dim: n + 2,
                };
                Ok((imm, facts))
            }
            CatalogSpec::CirclesProduct { n } => {
                if n < 1 {
                    return Err(Error::BadParams("circles_product needs n >= 1".into()));
                }
                let imm = product_immersion(&vec![PlaneCurve::circle(1.0); n])?;
                let facts = ExpectedFacts {
                    velocity_a: Some(1.0 / n as f64),
                    ratio: Some(1.0),
                    closed: true,
                    lagrangian: true,
                    intrinsic_dim: n,
                    ambient_dim: 2 * n,
                };
                Ok((imm, facts))
            }
            CatalogSpec::HopfSphere { n } => {
                if n < 2 {
                    return Err(Error::BadParams("hopf_sphere needs n >= 2".into()));
                }
                let alpha = PlaneCurve::circle_by_angle((n as f64).sqrt());
                let psi = LegendrianImmersion::totally_geodesic_sphere(n)?;
                let imm = hopf_product(&alpha, &psi)?;
                let facts = ExpectedFacts {
                    velocity_a: Some(1.0 / n as f64),
                    ratio: Some((3.0 * n as f64 - 2.0) / (n * n) as f64),
                    closed: true,
                    lagrangian: true,
                    intrinsic_dim: n,
                    ambient_dim: 2 * n,
                };
                Ok((imm, facts))
            }
            CatalogSpec::CylinderCircles { n, k } => {
                if k < 1 || k >= n {
                    return Err(Error::BadParams(format!(
                        "cylinder_circles needs 1 <= k < n, got (n={n}, k={k})"
                    )));
                }
                let mut factors = vec![PlaneCurve::circle(1.0); k];
                factors.extend(vec![
                    PlaneCurve::line(ParamRange::interval(-1.0, 1.0));
                    n - k
                ]);
                let imm = product_immersion(&factors)?;
                let ratio = measured_ratio(&imm, 1.0 / k as f64)?;
                let facts = ExpectedFacts {
                    velocity_a: Some(1.0 / k as f64),
                    ratio: Some(ratio),
                    closed: false,
                    lagrangian: true,
                    intrinsic_dim: n,
                    ambient_dim: 2 * n,
                };
                Ok((imm, facts))
            }
            CatalogSpec::CurveCylinder { curve, n, theta } => {
                if n < 1 {
                    return Err(Error::BadParams("curve_cylinder needs n >= 1".into()));
                }
                let mut factors = vec![curve.plane_curve(theta)];
                factors.extend(vec![
                    PlaneCurve::line(ParamRange::interval(-1.0, 1.0));
                    n - 1
                ]);
                let imm = product_immersion(&factors)?;
                let ratio = measured_ratio(&imm, curve.a)?;
                let facts = ExpectedFacts {
                    velocity_a: Some(curve.a),
                    ratio: Some(ratio),
                    closed: false,
                    lagrangian: true,
                    intrinsic_dim: n,
                    ambient_dim: 2 * n,
                };
                Ok((imm, facts))
            }
            CatalogSpec::LegendrianTorus { n } => {
                let psi = LegendrianImmersion::flat_torus(n)?;
                let facts = ExpectedFacts {
                    velocity_a: None,
                    ratio: None,
                    closed: true,
                    lagrangian: false,
                    intrinsic_dim: n - 1,
                    ambient_dim: 2 * n,
                };
                Ok((psi.immersion, facts))
            }
            CatalogSpec::Veronese => {
                let imm = veronese_immersion();
                let facts = ExpectedFacts {
                    velocity_a: Some(0.5),
                    ratio: Some(5.0 / 6.0),
                    closed: true,
                    lagrangian: false,
                    intrinsic_dim: 2,
                    ambient_dim: 5,
                };
                Ok((imm, facts))
            }
        }
    }
}

/// Measure the (constant) pinching ratio of an entry on a coarse grid; used
/// for the cylinder entries whose ratio is not stated in closed form.
fn measured_ratio(imm: &Immersion, a: f64) -> Result<f64> {
    let counts = vec![5usize; imm.intrinsic_dim()];
    let report = crate::verify::scan(imm, a, &counts)?;
    Ok(report.ratio_stats.mean)
}

/// `S^{n1}(sqrt(n1)) x S^{n2}(sqrt(n2))` in R^{n1+n2+2}.
fn clifford_immersion(n1: usize, n2: usize) -> Immersion {
    let factor_domain = |k: usize| -> Vec<ParamRange> {
        let mut d = vec![
            ParamRange::interval(
                CHART_POLE_MARGIN,
                std::f64::consts::PI - CHART_POLE_MARGIN
            );
            k.saturating_sub(1)
        ];
        d.push(ParamRange::angle());
        d
    };
    let mut domain = factor_domain(n1);
    domain.extend(factor_domain(n2));
    Immersion::from_dual_map(domain, n1 + n2 + 2, move |u| {
        let mut coords = sphere_coords(&u[..n1], (n1 as f64).sqrt());
        coords.extend(sphere_coords(&u[n1..], (n2 as f64).sqrt()));
        coords
    })
}

/// Veronese immersion: the quadratic harmonic map from `S^2(sqrt(3))` onto a
/// minimal surface in `S^4(1)`, in a spherical chart.
fn veronese_immersion() -> Immersion {
    let domain = vec![
        ParamRange::interval(CHART_POLE_MARGIN, std::f64::consts::PI - CHART_POLE_MARGIN),
        ParamRange::angle(),
    ];
    let s3 = 3f64.sqrt();
    Immersion::from_dual_map(domain, 5, move |u| {
        let xyz = sphere_coords(u, s3);
        let (x, y, z) = (&xyz[0], &xyz[1], &xyz[2]);
        let inv_s3 = 1.0 / s3;
        vec![
            (x * y).scale(inv_s3),
            (x * z).scale(inv_s3),
            (y * z).scale(inv_s3),
            ((x * x) - (y * y)).scale(0.5 * inv_s3),
            (((x * x) + (y * y)) - (z * z).scale(2.0)).scale(1.0 / 6.0),
        ]
    })
}

/// One row of the public registry listing.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CatalogEntryMeta {
    pub name: &'static str,
    pub params: &'static str,
    pub velocity: &'static str,
    pub ratio: &'static str,
    pub closed: bool,
}

/// Stable, documented listing of every registry entry.
pub fn catalog_list() -> Vec<CatalogEntryMeta> {
    vec![
        CatalogEntryMeta {
            name: "round_sphere",
            params: "n >= 1, radius > 0 (default 1)",
            velocity: "1/n",
            ratio: "1/n",
            closed: true,
        },
        CatalogEntryMeta {
            name: "clifford",
            params: "n1 >= 1, n2 >= 1",
            velocity: "1/(n1+n2)",
            ratio: "2/(n1+n2)",
            closed: true,
        },
        CatalogEntryMeta {
            name: "circles_product",
            params: "n >= 1",
            velocity: "1/n",
            ratio: "1",
            closed: true,
        },
        CatalogEntryMeta {
            name: "hopf_sphere",
            params: "n >= 2",
            velocity: "1/n",
            ratio: "(3n-2)/n^2",
            closed: true,
        },
        CatalogEntryMeta {
            name: "cylinder_circles",
            params: "n >= 2, 1 <= k < n",
            velocity: "1/k",
            ratio: "measured at build",
            closed: false,
        },
        CatalogEntryMeta {
            name: "curve_cylinder",
            params: "curve (a != 0, c1, c2), n >= 1, theta range",
            velocity: "a of the curve",
            ratio: "measured at build",
            closed: false,
        },
        CatalogEntryMeta {
            name: "legendrian_torus",
            params: "n >= 2",
            velocity: "none (Legendrian input)",
            ratio: "none",
            closed: true,
        },
        CatalogEntryMeta {
            name: "veronese",
            params: "none",
            velocity: "1/2",
            ratio: "5/6",
            closed: true,
        },
    ]
}

/// Loosely-typed parameters, as collected from the command line.
#[derive(Clone, Copy, Debug, Default)]
pub struct CatalogParams {
    pub n: Option<usize>,
    pub n1: Option<usize>,
    pub n2: Option<usize>,
    pub k: Option<usize>,
    pub radius: Option<f64>,
    pub curve_a: Option<f64>,
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub theta_min: Option<f64>,
    pub theta_max: Option<f64>,
}

/// Resolve a name and parameter set into a [`CatalogSpec`].
pub fn catalog_spec(name: &str, p: &CatalogParams) -> Result<CatalogSpec> {
    match name {
        "round_sphere" => Ok(CatalogSpec::RoundSphere {
            n: p.n.unwrap_or(2),
            radius: p.radius.unwrap_or(1.0),
        }),
        "clifford" => Ok(CatalogSpec::Clifford {
            n1: p.n1.unwrap_or(1),
            n2: p.n2.unwrap_or(1),
        }),
        "circles_product" => Ok(CatalogSpec::CirclesProduct {
            n: p.n.unwrap_or(2),
        }),
        "hopf_sphere" => Ok(CatalogSpec::HopfSphere { n: p.n.unwrap_or(2) }),
        "cylinder_circles" => {
            let n = p.n.unwrap_or(2);
            Ok(CatalogSpec::CylinderCircles {
                n,
                k: p.k.unwrap_or(n.saturating_sub(1).max(1)),
            })
        }
        "curve_cylinder" => {
            let curve = SolitonCurve::new(
                p.curve_a.unwrap_or(1.0),
                p.c1.unwrap_or(1.0),
                p.c2.unwrap_or(0.0),
            )?;
            Ok(CatalogSpec::CurveCylinder {
                curve,
                n: p.n.unwrap_or(2),
                theta: ParamRange::interval(
                    p.theta_min.unwrap_or(-std::f64::consts::PI),
                    p.theta_max.unwrap_or(std::f64::consts::PI),
                ),
            })
        }
        "legendrian_torus" => Ok(CatalogSpec::LegendrianTorus { n: p.n.unwrap_or(2) }),
        "veronese" => Ok(CatalogSpec::Veronese),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

/// Build a catalog entry by name.
pub fn catalog_get(name: &str, p: &CatalogParams) -> Result<(Immersion, ExpectedFacts)> {
    catalog_spec(name, p)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::geometry_at;
    use crate::verify::{estimate_velocity, pinching_ratio, scan};
    use approx::assert_abs_diff_eq;

    #[test]
    fn clifford_1_1_is_the_clifford_torus() {
        let (imm, facts) = CatalogSpec::Clifford { n1: 1, n2: 1 }.build().unwrap();
        assert_eq!(facts.ratio, Some(1.0));
        assert!(facts.lagrangian);
        let jet = imm.eval_jet(&[0.0, 0.0]).unwrap();
        for (i, expect) in [1.0, 0.0, 1.0, 0.0].iter().enumerate() {
            assert_abs_diff_eq!(jet.position[i], *expect, epsilon = 1e-15);
        }
        let gs = geometry_at(&imm.eval_jet(&[0.7, 2.1]).unwrap()).unwrap();
        assert_abs_diff_eq!(pinching_ratio(&gs).unwrap(), 1.0, epsilon = 1e-13);
    }

    #[test]
    fn clifford_ratio_depends_only_on_total_dimension() {
        let measure = |n1: usize, n2: usize| -> f64 {
            let (imm, _) = CatalogSpec::Clifford { n1, n2 }.build().unwrap();
            let u: Vec<f64> = (0..(n1 + n2)).map(|i| 0.8 + 0.2 * i as f64).collect();
            pinching_ratio(&geometry_at(&imm.eval_jet(&u).unwrap()).unwrap()).unwrap()
        };
        assert_abs_diff_eq!(measure(1, 2), 2.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(measure(2, 1), 2.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(measure(2, 2), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(measure(1, 3), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn hopf_sphere_facts() {
        let (imm, facts) = CatalogSpec::HopfSphere { n: 3 }.build().unwrap();
        assert_eq!(facts.velocity_a, Some(1.0 / 3.0));
        assert_abs_diff_eq!(facts.ratio.unwrap(), 7.0 / 9.0, epsilon = 1e-15);
        let gs = geometry_at(&imm.eval_jet(&[0.4, 1.0, 2.2]).unwrap()).unwrap();
        assert_abs_diff_eq!(pinching_ratio(&gs).unwrap(), 7.0 / 9.0, epsilon = 1e-12);
        assert_abs_diff_eq!(estimate_velocity(&gs).unwrap(), 1.0 / 3.0, epsilon = 1e-12);

        // position at the chart center: sqrt(2) (1, 0, 0, 0) for n = 2
        let (imm2, _) = CatalogSpec::HopfSphere { n: 2 }.build().unwrap();
        let jet = imm2.eval_jet(&[0.0, 0.0]).unwrap();
        assert_abs_diff_eq!(jet.position[0], 2f64.sqrt(), epsilon = 1e-15);
        for i in 1..4 {
            assert_abs_diff_eq!(jet.position[i], 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn veronese_is_spherically_minimal_with_ratio_five_sixths() {
        let (imm, facts) = CatalogSpec::Veronese.build().unwrap();
        for point in [[1.0, 0.3], [2.0, 4.1], [0.6, 5.5]] {
            let jet = imm.eval_jet(&point).unwrap();
            assert_abs_diff_eq!(jet.position.norm(), 1.0, epsilon = 1e-13);
            let gs = geometry_at(&jet).unwrap();
            // H parallel to phi: spherical minimality
            let radial = gs.mean_curvature.dot(&jet.position);
            let tangential = &gs.mean_curvature - radial * &jet.position;
            assert!(tangential.norm() < 1e-8, "|H_tan| = {}", tangential.norm());
            assert_abs_diff_eq!(
                pinching_ratio(&gs).unwrap(),
                facts.ratio.unwrap(),
                epsilon = 1e-11
            );
            assert_abs_diff_eq!(estimate_velocity(&gs).unwrap(), 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn closed_entries_have_natural_scale() {
        // |H| |phi| = n for minimal submanifolds of spheres.
        let entries: Vec<(CatalogSpec, usize)> = vec![
            (CatalogSpec::RoundSphere { n: 2, radius: 1.0 }, 2),
            (CatalogSpec::Clifford { n1: 1, n2: 2 }, 3),
            (CatalogSpec::CirclesProduct { n: 3 }, 3),
            (CatalogSpec::HopfSphere { n: 2 }, 2),
            (CatalogSpec::Veronese, 2),
        ];
        for (spec, n) in entries {
            let (imm, facts) = spec.build().unwrap();
            assert!(facts.closed);
            assert_eq!(facts.intrinsic_dim, n);
            assert_abs_diff_eq!(facts.velocity_a.unwrap(), 1.0 / n as f64, epsilon = 1e-15);
            let u: Vec<f64> = (0..n).map(|i| 0.9 + 0.25 * i as f64).collect();
            let jet = imm.eval_jet(&u).unwrap();
            let gs = geometry_at(&jet).unwrap();
            let product = gs.mean_curvature.norm() * jet.position.norm();
            assert_abs_diff_eq!(product, n as f64, epsilon = 1e-10);
        }
    }

    #[test]
    fn cylinder_ratios_are_measured() {
        let (_, facts) = CatalogSpec::CylinderCircles { n: 3, k: 2 }.build().unwrap();
        assert_abs_diff_eq!(facts.ratio.unwrap(), 1.0, epsilon = 1e-10);
        let curve = SolitonCurve::new(2.0, 1.0, 1.0).unwrap();
        let (_, facts) = CatalogSpec::CurveCylinder {
            curve,
            n: 2,
            theta: ParamRange::interval(-1.0, 1.0),
        }
        .build()
        .unwrap();
        assert_abs_diff_eq!(facts.ratio.unwrap(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn cylinder_scan_verifies_velocity() {
        let (imm, facts) = CatalogSpec::CylinderCircles { n: 3, k: 1 }.build().unwrap();
        let report = scan(&imm, facts.velocity_a.unwrap(), &[8, 4, 4]).unwrap();
        assert!(report.max_residual < 1e-11);
        assert_abs_diff_eq!(report.estimated_a_stats.mean, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn legendrian_torus_entry_is_legendrian() {
        let (imm, facts) = CatalogSpec::LegendrianTorus { n: 3 }.build().unwrap();
        assert_eq!(facts.velocity_a, None);
        assert!(crate::lagrangian::legendrian_residual(&imm, 9).unwrap() < 1e-12);
    }

    #[test]
    fn registry_listing_is_stable_and_complete() {
        let a = serde_json::to_string(&catalog_list()).unwrap();
        let b = serde_json::to_string(&catalog_list()).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("clifford"));
        assert!(a.contains("curve_cylinder"));
        assert_eq!(catalog_list().len(), 8);
    }

    #[test]
    fn name_resolution_errors() {
        assert!(matches!(
            catalog_get("moebius", &CatalogParams::default()),
            Err(Error::UnknownName(_))
        ));
        let bad = CatalogParams {
            n1: Some(0),
            ..Default::default()
        };
        assert!(matches!(
            catalog_get("clifford", &bad),
            Err(Error::BadParams(_))
        ));
        let bad_k = CatalogParams {
            n: Some(2),
            k: Some(2),
            ..Default::default()
        };
        assert!(matches!(
            catalog_get("cylinder_circles", &bad_k),
            Err(Error::BadParams(_))
        ));
    }
}
