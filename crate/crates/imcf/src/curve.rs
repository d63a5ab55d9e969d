//! Homothetic soliton curves for the inverse curve shortening flow.
//!
//! A regular plane curve `alpha` is a soliton with velocity `a` when
//! `a * kappa * <alpha', J alpha> = |alpha'|`, with `J` the +pi/2 rotation.
//! Parametrized by the slope `theta` of the tangent vector, the complete
//! family is
//!
//! ```text
//! x(theta) = -nu'(theta) cos(theta) - nu(theta) sin(theta)
//! y(theta) = -nu'(theta) sin(theta) + nu(theta) cos(theta)
//! ```
//!
//! where the support function `nu` solves `nu'' = (a - 1) nu`, so it is
//! trigonometric for `a < 1`, affine for `a = 1`, hyperbolic for `a > 1`.
//! Circles (`a = 1, c2 = 0`), involutes of circles (`a = 1, c2 != 0`),
//! logarithmic spirals (`a > 1`), epicycloids (`0 < a < 1` rational) and
//! hypocycloids (`a < 0` rational) all arise as members.

use std::sync::Arc;

use nalgebra::Vector2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geom::{Immersion, Jet2, ParamRange};

/// Points with |alpha'| below this are cusps: the curvature is undefined.
pub const CUSP_TOL: f64 = 1e-12;

/// Maximum RK4 step for the support-function ODE oracle.
pub const ODE_MAX_STEP: f64 = 1e-3;

/// Which branch of the support-function ODE a velocity constant selects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `a < 1`: trigonometric support function.
    Sub,
    /// `a = 1`: affine support function.
    Linear,
    /// `a > 1`: hyperbolic support function.
    Super,
}

/// One member of the closed-form soliton curve family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolitonCurve {
    pub a: f64,
    pub c1: f64,
    pub c2: f64,
}

impl SolitonCurve {
    pub fn new(a: f64, c1: f64, c2: f64) -> Result<Self> {
        if a == 0.0 || !a.is_finite() {
            return Err(Error::BadParams(format!(
                "soliton velocity must be nonzero and finite, got {a}"
            )));
        }
        if c1 == 0.0 && c2 == 0.0 {
            return Err(Error::BadParams(
                "(c1, c2) = (0, 0) degenerates to the origin".into(),
            ));
        }
        Ok(SolitonCurve { a, c1, c2 })
    }

    pub fn branch(&self) -> Branch {
        if self.a < 1.0 {
            Branch::Sub
        } else if self.a == 1.0 {
            Branch::Linear
        } else {
            Branch::Super
        }
    }

    /// Support function and its first two derivatives at `theta`.
    pub fn nu(&self, theta: f64) -> (f64, f64, f64) {
        nu_eval(self.a, self.c1, self.c2, theta)
    }

    /// Closed-form curve jet at `theta`.
    pub fn point(&self, theta: f64) -> CurveJet {
        curve_point(self, theta)
    }

    /// The member as a plane curve with analytic complex jets on `domain`.
    pub fn plane_curve(&self, domain: ParamRange) -> PlaneCurve {
        let sc = *self;
        PlaneCurve::new(domain, move |theta| {
            let cj = sc.point(theta);
            ComplexJet {
                value: Complex64::new(cj.alpha.x, cj.alpha.y),
                d1: Complex64::new(cj.alpha1.x, cj.alpha1.y),
                d2: Complex64::new(cj.alpha2.x, cj.alpha2.y),
            }
        })
    }
}

/// Support function of the family: `nu'' = (a - 1) nu` in closed form.
/// The second derivative is returned as `(a - 1) * nu`, so the ODE identity
/// holds exactly.
pub fn nu_eval(a: f64, c1: f64, c2: f64, theta: f64) -> (f64, f64, f64) {
    let (nu, nu1) = if a < 1.0 {
        let w = (1.0 - a).sqrt();
        let (s, c) = (w * theta).sin_cos();
        (c1 * c + c2 * s, w * (-c1 * s + c2 * c))
    } else if a == 1.0 {
        (c1 + c2 * theta, c2)
    } else {
        let w = (a - 1.0).sqrt();
        let (s, c) = ((w * theta).sinh(), (w * theta).cosh());
        (c1 * c + c2 * s, w * (c1 * s + c2 * c))
    };
    (nu, nu1, (a - 1.0) * nu)
}

/// Curve data at one `theta`: position, two derivatives, signed curvature
/// (absent at cusps) and the support function value.
#[derive(Clone, Copy, Debug)]
pub struct CurveJet {
    pub theta: f64,
    pub alpha: Vector2<f64>,
    pub alpha1: Vector2<f64>,
    pub alpha2: Vector2<f64>,
    /// `None` at cusp points (|alpha'| < [`CUSP_TOL`]).
    pub kappa: Option<f64>,
    /// Support function `nu(theta)`.
    pub support: f64,
}

impl CurveJet {
    pub fn is_cusp(&self) -> bool {
        self.kappa.is_none()
    }

    /// Signed curvature, or [`Error::CuspPoint`] where it is undefined.
    pub fn curvature(&self) -> Result<f64> {
        self.kappa.ok_or(Error::CuspPoint { theta: self.theta })
    }
}

/// `<u, Jv>` with `J` the +pi/2 rotation `(x, y) -> (-y, x)`.
pub fn pair_j(u: Vector2<f64>, v: Vector2<f64>) -> f64 {
    u.y * v.x - u.x * v.y
}

/// Evaluate one family member at `theta`. Positions and derivatives are
/// total; the signed curvature comes from the cross-product identity
/// `kappa |alpha'|^3 = alpha' x alpha''` and is absent at cusps.
pub fn curve_point(sc: &SolitonCurve, theta: f64) -> CurveJet {
    let (nu, nu1, _) = sc.nu(theta);
    let (s, c) = theta.sin_cos();
    let e_r = Vector2::new(c, s);
    let e_t = Vector2::new(-s, c);

    let alpha = -nu1 * e_r + nu * e_t;
    // alpha' = -(nu'' + nu) e_r = -a nu e_r; alpha'' follows by one more derivative.
    let alpha1 = -(sc.a * nu) * e_r;
    let alpha2 = -sc.a * (nu1 * e_r + nu * e_t);

    let speed = alpha1.norm();
    let kappa = if speed < CUSP_TOL {
        None
    } else {
        let cross = alpha1.x * alpha2.y - alpha1.y * alpha2.x;
        Some(cross / (speed * speed * speed))
    };
    CurveJet {
        theta,
        alpha,
        alpha1,
        alpha2,
        kappa,
        support: nu,
    }
}

/// Pointwise deviation from the inverse curve shortening soliton equation:
/// `|a kappa <alpha', J alpha> - |alpha'||`.
pub fn icsf_residual(cj: &CurveJet, a: f64) -> Result<f64> {
    let kappa = cj.curvature()?;
    let pairing = pair_j(cj.alpha1, cj.alpha);
    Ok((a * kappa * pairing - cj.alpha1.norm()).abs())
}

/// RK4 integration of `nu'' = (a - 1) nu` from `theta_grid[0]`, used as an
/// independent check of [`nu_eval`]. Substeps never exceed [`ODE_MAX_STEP`].
pub fn nu_ode_oracle(a: f64, nu0: f64, nu0p: f64, theta_grid: &[f64]) -> Vec<f64> {
    let rhs = |state: [f64; 2]| [state[1], (a - 1.0) * state[0]];
    let mut state = [nu0, nu0p];
    let mut out = Vec::with_capacity(theta_grid.len());
    if theta_grid.is_empty() {
        return out;
    }
    out.push(nu0);
    for pair in theta_grid.windows(2) {
        let span = pair[1] - pair[0];
        let steps = (span.abs() / ODE_MAX_STEP).ceil().max(1.0) as usize;
        let h = span / steps as f64;
        for _ in 0..steps {
            let k1 = rhs(state);
            let k2 = rhs([state[0] + 0.5 * h * k1[0], state[1] + 0.5 * h * k1[1]]);
            let k3 = rhs([state[0] + 0.5 * h * k2[0], state[1] + 0.5 * h * k2[1]]);
            let k4 = rhs([state[0] + h * k3[0], state[1] + h * k3[1]]);
            state[0] += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
            state[1] += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        }
        out.push(state[0]);
    }
    out
}

/// Named members of the soliton curve family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FamilyTag {
    /// `a = 1, c2 = 0`: circle centered at the origin.
    CircleOrigin { radius: f64 },
    /// `a = 1, c2 != 0`: involute of a circle.
    InvoluteOfCircle { radius: f64 },
    /// `a > 1`: logarithmic spiral family.
    LogSpiralFamily,
    /// `a = 1 - m^2/k^2` with coprime `m < k`.
    Epicycloid { m: u64, k: u64 },
    /// `a = 1 - m^2/k^2` with coprime `m > k`.
    Hypocycloid { m: u64, k: u64 },
    Generic,
}

impl FamilyTag {
    /// Default plotting range: one full closure period for cycloids,
    /// `[-2 pi, 2 pi]` otherwise.
    pub fn default_theta_range(&self) -> (f64, f64) {
        match self {
            FamilyTag::Epicycloid { k, .. } | FamilyTag::Hypocycloid { k, .. } => {
                (0.0, *k as f64 * std::f64::consts::TAU)
            }
            FamilyTag::CircleOrigin { .. } => (0.0, std::f64::consts::TAU),
            _ => (-std::f64::consts::TAU, std::f64::consts::TAU),
        }
    }
}

/// Best rational approximation `p/q` of `x >= 0` with `q <= max_den`, by
/// continued fractions.
fn rational_approx(x: f64, max_den: u64) -> (u64, u64) {
    let (mut p0, mut q0, mut p1, mut q1) = (1u64, 0u64, x.floor() as u64, 1u64);
    let mut frac = x - x.floor();
    while frac > 1e-15 {
        let inv = 1.0 / frac;
        let digit = inv.floor() as u64;
        let (p2, q2) = (
            digit.saturating_mul(p1).saturating_add(p0),
            digit.saturating_mul(q1).saturating_add(q0),
        );
        if q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        frac = inv - digit as f64;
    }
    (p1, q1)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Classify a family member by its named type. Cycloid detection matches
/// `sqrt(1 - a)` against rationals `m/k` with `k <= 64` and error below
/// 1e-9; floating-point velocities that miss every such rational are
/// `Generic`.
pub fn classify_family(a: f64, c1: f64, c2: f64) -> FamilyTag {
    if a == 1.0 {
        return if c2 == 0.0 {
            FamilyTag::CircleOrigin { radius: c1.abs() }
        } else {
            FamilyTag::InvoluteOfCircle { radius: c2.abs() }
        };
    }
    if a > 1.0 {
        return FamilyTag::LogSpiralFamily;
    }
    let freq = (1.0 - a).sqrt();
    let (m, k) = rational_approx(freq, 64);
    if k == 0 || m == 0 || m == k {
        return FamilyTag::Generic;
    }
    if (freq - m as f64 / k as f64).abs() > 1e-9 {
        return FamilyTag::Generic;
    }
    let g = gcd(m, k);
    let (m, k) = (m / g, k / g);
    if m < k {
        FamilyTag::Epicycloid { m, k }
    } else {
        FamilyTag::Hypocycloid { m, k }
    }
}

/// Complex-valued 2-jet of a plane curve at one parameter.
#[derive(Clone, Copy, Debug)]
pub struct ComplexJet {
    pub value: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
}

impl ComplexJet {
    /// Signed curvature from the cross-product identity.
    pub fn curvature(&self) -> Result<f64> {
        let speed = self.d1.norm();
        if speed < CUSP_TOL {
            return Err(Error::CuspPoint { theta: f64::NAN });
        }
        Ok((self.d1.conj() * self.d2).im / (speed * speed * speed))
    }

    /// `<value', J value>` = Im(d1 * conj(value)).
    pub fn j_pairing(&self) -> f64 {
        (self.d1 * self.value.conj()).im
    }
}

/// A plane curve with an analytic complex 2-jet evaluator on a domain
/// interval. The building block for products, Hopf products and powers.
#[derive(Clone)]
pub struct PlaneCurve {
    domain: ParamRange,
    eval: Arc<dyn Fn(f64) -> ComplexJet + Send + Sync>,
}

impl PlaneCurve {
    pub fn new(domain: ParamRange, eval: impl Fn(f64) -> ComplexJet + Send + Sync + 'static) -> Self {
        PlaneCurve {
            domain,
            eval: Arc::new(eval),
        }
    }

    /// Circle of radius `r` centered at the origin, arclength-parametrized.
    pub fn circle(r: f64) -> Self {
        PlaneCurve::new(
            ParamRange::periodic(0.0, std::f64::consts::TAU * r),
            move |s| {
                let z = Complex64::from_polar(r, s / r);
                let i_over_r = Complex64::new(0.0, 1.0 / r);
                ComplexJet {
                    value: z,
                    d1: i_over_r * z,
                    d2: i_over_r * i_over_r * z,
                }
            },
        )
    }

    /// Circle of radius `r` parametrized by angle: `t -> r e^{it}`.
    pub fn circle_by_angle(r: f64) -> Self {
        PlaneCurve::new(ParamRange::angle(), move |t| {
            let z = Complex64::from_polar(r, t);
            let i = Complex64::i();
            ComplexJet {
                value: z,
                d1: i * z,
                d2: -z,
            }
        })
    }

    /// The real axis, unit speed.
    pub fn line(range: ParamRange) -> Self {
        PlaneCurve::new(range, |s| ComplexJet {
            value: Complex64::new(s, 0.0),
            d1: Complex64::new(1.0, 0.0),
            d2: Complex64::new(0.0, 0.0),
        })
    }

    pub fn domain(&self) -> ParamRange {
        self.domain
    }

    pub fn eval(&self, t: f64) -> ComplexJet {
        (self.eval)(self.domain.wrap(t))
    }

    /// Reinterpret as a 1-dimensional immersion in R^2.
    pub fn as_immersion(&self) -> Immersion {
        let eval = self.eval.clone();
        let domain = self.domain;
        Immersion::new(vec![domain], 2, move |u| {
            let j = eval(domain.wrap(u[0]));
            Jet2 {
                position: nalgebra::dvector![j.value.re, j.value.im],
                d1: vec![nalgebra::dvector![j.d1.re, j.d1.im]],
                d2: vec![vec![nalgebra::dvector![j.d2.re, j.d2.im]]],
            }
        })
    }

    /// Smallest distance from the origin to the sampled polyline and the
    /// largest |alpha'| over a dense sampling; used by constructions that
    /// must reject curves through the origin or constant "curves". The
    /// segment distance catches sign-crossing curves that no vertex sample
    /// would.
    pub(crate) fn regularity_scan(&self, samples: usize) -> (f64, f64) {
        let points: Vec<ComplexJet> = self.domain.samples(samples).iter().map(|&t| self.eval(t)).collect();
        let mut min_origin = f64::INFINITY;
        let mut max_speed: f64 = 0.0;
        for j in &points {
            min_origin = min_origin.min(j.value.norm());
            max_speed = max_speed.max(j.d1.norm());
        }
        for pair in points.windows(2) {
            min_origin = min_origin.min(segment_origin_distance(pair[0].value, pair[1].value));
        }
        (min_origin, max_speed)
    }
}

/// Distance from the origin to the segment `[z0, z1]`.
fn segment_origin_distance(z0: Complex64, z1: Complex64) -> f64 {
    let d = z1 - z0;
    let len_sq = d.norm_sqr();
    if len_sq == 0.0 {
        return z0.norm();
    }
    // projection of -z0 onto the segment direction, clamped to the segment
    let t = (-(z0.re * d.re + z0.im * d.im) / len_sq).clamp(0.0, 1.0);
    (z0 + t * d).norm()
}
