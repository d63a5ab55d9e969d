//! The `imcf` command-line front end.
//!
//! Subcommands: `catalog list`, `verify <name>`, `curve gen`,
//! `lagrangian check <name>`, `pseudo build`, `flow run`.
//!
//! Exit codes: 0 when every requested check passes its tolerance, 2 when a
//! check fails, 1 on usage or runtime errors. Outputs are deterministic:
//! identical arguments produce byte-identical files.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::catalog::{catalog_get, catalog_list, CatalogParams};
use crate::curve::{classify_family, CurveJet, SolitonCurve};
use crate::error::{Error, Result};
use crate::export;
use crate::flow::{flow_convex_curve, flow_sphere, homothety_deviation, CurveFlowState};
use crate::geom::ParamRange;
use crate::lagrangian::{equivariant_soliton, lagrangian_residual, legendrian_residual};
use crate::verify::scan_samples;

#[derive(Parser)]
#[command(
    name = "imcf",
    version,
    about = "Construct, verify and flow-test homothetic solitons of the inverse mean curvature flow"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect the example catalog
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Scan a catalog immersion against the soliton equation
    Verify(VerifyArgs),
    /// Work with soliton curves of the inverse curve shortening flow
    Curve {
        #[command(subcommand)]
        action: CurveAction,
    },
    /// Lagrangian / Legendrian residual checks
    Lagrangian {
        #[command(subcommand)]
        action: LagrangianAction,
    },
    /// Pseudoumbilical (rotationally equivariant) constructions
    Pseudo {
        #[command(subcommand)]
        action: PseudoAction,
    },
    /// Desk-scale flow integrators
    Flow {
        #[command(subcommand)]
        action: FlowAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Print the registry as JSON
    List {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum PlotFormat {
    #[default]
    Csv,
    Svg,
}

/// Catalog entry parameters shared by `verify` and `lagrangian check`.
#[derive(Args, Clone, Copy, Default)]
struct EntryParams {
    /// Intrinsic dimension n (round_sphere, circles_product, hopf_sphere, ...)
    #[arg(long)]
    n: Option<usize>,
    /// First factor dimension (clifford)
    #[arg(long)]
    n1: Option<usize>,
    /// Second factor dimension (clifford)
    #[arg(long)]
    n2: Option<usize>,
    /// Number of circle factors (cylinder_circles)
    #[arg(long)]
    k: Option<usize>,
    /// Sphere radius (round_sphere)
    #[arg(long)]
    radius: Option<f64>,
    /// Curve velocity constant (curve_cylinder)
    #[arg(long)]
    curve_a: Option<f64>,
    /// Curve coefficient c1 (curve_cylinder)
    #[arg(long)]
    c1: Option<f64>,
    /// Curve coefficient c2 (curve_cylinder)
    #[arg(long)]
    c2: Option<f64>,
    /// Curve parameter lower bound (curve_cylinder)
    #[arg(long)]
    theta_min: Option<f64>,
    /// Curve parameter upper bound (curve_cylinder)
    #[arg(long)]
    theta_max: Option<f64>,
}

impl From<EntryParams> for CatalogParams {
    fn from(p: EntryParams) -> CatalogParams {
        CatalogParams {
            n: p.n,
            n1: p.n1,
            n2: p.n2,
            k: p.k,
            radius: p.radius,
            curve_a: p.curve_a,
            c1: p.c1,
            c2: p.c2,
            theta_min: p.theta_min,
            theta_max: p.theta_max,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Catalog entry name (see `imcf catalog list`)
    name: String,
    #[command(flatten)]
    params: EntryParams,
    /// Claimed soliton velocity; defaults to the catalog's expected value
    #[arg(long)]
    a: Option<f64>,
    /// Samples per parameter axis
    #[arg(long, default_value_t = 16)]
    grid: usize,
    /// Maximum allowed soliton residual
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, value_enum, default_value_t)]
    format: ReportFormat,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CurveAction {
    /// Sample one soliton curve family member to CSV or SVG
    Gen(CurveGenArgs),
}

#[derive(Args)]
struct CurveGenArgs {
    /// Velocity constant (a != 0)
    #[arg(long, allow_hyphen_values = true)]
    a: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    c1: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    c2: f64,
    /// Defaults to the family's natural plotting range
    #[arg(long, allow_hyphen_values = true)]
    theta_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    theta_max: Option<f64>,
    #[arg(long, default_value_t = 1024)]
    samples: usize,
    #[arg(long, value_enum, default_value_t)]
    format: PlotFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum LagrangianAction {
    /// Measure the Kaehler-form (or Legendrian) residual of a catalog entry
    Check {
        name: String,
        #[command(flatten)]
        params: EntryParams,
        #[arg(long, default_value_t = 9)]
        grid: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum PseudoAction {
    /// Build the SO(n)-equivariant soliton with velocity a and verify it
    Build(PseudoBuildArgs),
}

#[derive(Args)]
struct PseudoBuildArgs {
    /// Soliton velocity of the n-dimensional immersion
    #[arg(long, allow_hyphen_values = true)]
    a: f64,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    c1: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    c2: f64,
    #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
    theta_min: f64,
    #[arg(long, default_value_t = 1.3, allow_hyphen_values = true)]
    theta_max: f64,
    #[arg(long, default_value_t = 16)]
    grid: usize,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum FlowShape {
    #[default]
    Circle,
    Ellipse,
    Sphere,
}

#[derive(Subcommand)]
enum FlowAction {
    /// Evolve a shape under the inverse mean curvature flow
    Run(FlowRunArgs),
}

#[derive(Args)]
struct FlowRunArgs {
    #[arg(long, value_enum, default_value_t)]
    shape: FlowShape,
    /// Circle or sphere radius
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Ellipse semi-axes
    #[arg(long, default_value_t = 1.2)]
    rx: f64,
    #[arg(long, default_value_t = 1.0)]
    ry: f64,
    /// Sphere dimension
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 1e-4)]
    dt: f64,
    /// Flow horizon
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    #[arg(long, default_value_t = 512)]
    vertices: usize,
    /// Number of snapshots written along the way
    #[arg(long, default_value_t = 4)]
    snapshots: usize,
    /// Normalized homothety deviation allowed for the circle soliton check
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
    #[arg(long, value_enum, default_value_t)]
    format: PlotFormat,
    /// Directory for snapshot files (CSV/SVG); no files when omitted
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

/// Parse and execute; returns the process exit code.
pub fn run(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Catalog {
            action: CatalogAction::List { out },
        } => {
            let json = serde_json::to_string_pretty(&catalog_list()).expect("serializable");
            emit(out.as_deref(), &(json + "\n"))?;
            Ok(0)
        }
        Command::Verify(args) => verify(args),
        Command::Curve {
            action: CurveAction::Gen(args),
        } => curve_gen(args),
        Command::Lagrangian {
            action:
                LagrangianAction::Check {
                    name,
                    params,
                    grid,
                    tol,
                    out,
                },
        } => lagrangian_check(&name, params, grid, tol, out),
        Command::Pseudo {
            action: PseudoAction::Build(args),
        } => pseudo_build(args),
        Command::Flow {
            action: FlowAction::Run(args),
        } => flow_run(args),
    }
}

fn emit(out: Option<&std::path::Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn verify(args: VerifyArgs) -> Result<i32> {
    let (imm, facts) = catalog_get(&args.name, &args.params.into())?;
    let a = args
        .a
        .or(facts.velocity_a)
        .ok_or_else(|| Error::BadParams(format!("{} is not a soliton entry; pass --a", args.name)))?;
    let counts = vec![args.grid; imm.intrinsic_dim()];
    let (report, rows) = scan_samples(&imm, a, &counts)?;
    let content = match args.format {
        ReportFormat::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
        ReportFormat::Csv => export::samples_csv(&rows),
    };
    emit(args.out.as_deref(), &content)?;
    Ok(if report.max_residual < args.tol { 0 } else { 2 })
}

fn curve_gen(args: CurveGenArgs) -> Result<i32> {
    let sc = SolitonCurve::new(args.a, args.c1, args.c2)?;
    let tag = classify_family(args.a, args.c1, args.c2);
    let (default_lo, default_hi) = tag.default_theta_range();
    let lo = args.theta_min.unwrap_or(default_lo);
    let hi = args.theta_max.unwrap_or(default_hi);
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // also rejects NaN bounds
    let invalid_range = !(hi > lo);
    if invalid_range || args.samples < 2 {
        return Err(Error::BadParams(
            "need theta_max > theta_min and samples >= 2".into(),
        ));
    }
    let points: Vec<CurveJet> = (0..args.samples)
        .map(|i| sc.point(lo + (hi - lo) * i as f64 / (args.samples - 1) as f64))
        .collect();
    let content = match args.format {
        PlotFormat::Csv => export::curve_csv(&points),
        PlotFormat::Svg => {
            let path = export::SvgPath {
                points: points.iter().map(|p| [p.alpha.x, p.alpha.y]).collect(),
                markers: points
                    .iter()
                    .filter(|p| p.is_cusp())
                    .map(|p| [p.alpha.x, p.alpha.y])
                    .collect(),
                closed: false,
            };
            export::svg_document(&[path])
        }
    };
    emit(args.out.as_deref(), &content)?;
    Ok(0)
}

#[derive(Serialize)]
struct LagrangianCheckReport {
    name: String,
    kind: &'static str,
    residual: f64,
    grid: usize,
}

fn lagrangian_check(
    name: &str,
    params: EntryParams,
    grid: usize,
    tol: f64,
    out: Option<PathBuf>,
) -> Result<i32> {
    let (imm, _) = catalog_get(name, &params.into())?;
    let (kind, residual) = if name == "legendrian_torus" {
        ("legendrian", legendrian_residual(&imm, grid)?)
    } else {
        ("lagrangian", lagrangian_residual(&imm, grid)?)
    };
    let report = LagrangianCheckReport {
        name: name.to_string(),
        kind,
        residual,
        grid,
    };
    let json = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
    emit(out.as_deref(), &json)?;
    Ok(if residual < tol { 0 } else { 2 })
}

fn pseudo_build(args: PseudoBuildArgs) -> Result<i32> {
    let imm = equivariant_soliton(
        args.n,
        args.a,
        args.c1,
        args.c2,
        ParamRange::interval(args.theta_min, args.theta_max),
    )?;
    let counts = vec![args.grid; imm.intrinsic_dim()];
    let (report, _) = scan_samples(&imm, args.a, &counts)?;
    let json = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
    emit(args.out.as_deref(), &json)?;
    Ok(if report.max_residual < args.tol { 0 } else { 2 })
}

#[derive(Serialize)]
struct FlowReport {
    shape: &'static str,
    horizon: f64,
    expected_scale: f64,
    final_mean_radius: Option<f64>,
    initial_isoperimetric: Option<f64>,
    final_isoperimetric: Option<f64>,
    homothety_deviation: Option<f64>,
}

fn flow_run(args: FlowRunArgs) -> Result<i32> {
    if let FlowShape::Sphere = args.shape {
        let report = FlowReport {
            shape: "sphere",
            horizon: args.t,
            expected_scale: (args.t / args.n as f64).exp(),
            final_mean_radius: Some(flow_sphere(args.n, args.radius, args.t)),
            initial_isoperimetric: None,
            final_isoperimetric: None,
            homothety_deviation: None,
        };
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        );
        return Ok(0);
    }

    let initial = match args.shape {
        FlowShape::Circle => CurveFlowState::circle(args.radius, args.vertices, args.dt),
        FlowShape::Ellipse => CurveFlowState::ellipse(args.rx, args.ry, args.vertices, args.dt),
        FlowShape::Sphere => unreachable!(),
    };

    let snapshots = args.snapshots.max(1);
    let mut states = vec![initial.clone()];
    let chunk = args.t / snapshots as f64;
    for _ in 0..snapshots {
        let next = match flow_convex_curve(states.last().expect("nonempty"), chunk) {
            Ok(next) => next,
            Err(e @ Error::ConvexityLost { .. }) => {
                eprintln!("check failed: {e}");
                return Ok(2);
            }
            Err(e) => return Err(e),
        };
        states.push(next);
    }
    let last = states.last().expect("nonempty");

    if let Some(dir) = &args.out_dir {
        std::fs::create_dir_all(dir)?;
        match args.format {
            PlotFormat::Csv => {
                let rows: Vec<_> = states.iter().map(|s| (s.time, s.vertices.clone())).collect();
                std::fs::write(dir.join("flow.csv"), export::flow_csv(&rows))?;
            }
            PlotFormat::Svg => {
                for (i, s) in states.iter().enumerate() {
                    let path = export::SvgPath {
                        points: s.vertices.iter().map(|v| [v.x, v.y]).collect(),
                        markers: Vec::new(),
                        closed: true,
                    };
                    std::fs::write(
                        dir.join(format!("flow_{i:04}.svg")),
                        export::svg_document(&[path]),
                    )?;
                }
            }
        }
    }

    // The circle is the closed 1D soliton (velocity 1): gate on homothety.
    let deviation = match args.shape {
        FlowShape::Circle => Some(homothety_deviation(
            &initial.vertices,
            &last.vertices,
            1.0,
            args.t,
        )),
        _ => None,
    };
    let report = FlowReport {
        shape: match args.shape {
            FlowShape::Circle => "circle",
            FlowShape::Ellipse => "ellipse",
            FlowShape::Sphere => unreachable!(),
        },
        horizon: args.t,
        expected_scale: args.t.exp(),
        final_mean_radius: Some(last.mean_radius()),
        initial_isoperimetric: Some(initial.isoperimetric_ratio()),
        final_isoperimetric: Some(last.isoperimetric_ratio()),
        homothety_deviation: deviation,
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("serializable")
    );
    Ok(match deviation {
        Some(d) if d >= args.tol => 2,
        _ => 0,
    })
}
