//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong while constructing or evaluating geometry.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter point lies outside a non-periodic domain interval.
    #[error("parameter {index} = {value} outside domain [{lo}, {hi}]")]
    OutOfDomain {
        index: usize,
        value: f64,
        lo: f64,
        hi: f64,
    },

    /// A finite-difference stencil would leave the domain.
    #[error("finite-difference step {step} too large: stencil leaves the domain or exceeds the stability bound")]
    StepTooLarge { step: f64 },

    /// The Gram matrix of the first partials is numerically singular.
    #[error("degenerate metric: Gram determinant {det:.3e} below threshold {threshold:.3e}")]
    DegenerateMetric { det: f64, threshold: f64 },

    /// |H| is numerically zero, so -H/|H|^2 (and the flow) is undefined.
    #[error("mean curvature vanishes at this point; the inverse flow is undefined")]
    MeanCurvatureVanishes,

    /// <H, phi> is numerically zero, so no finite velocity constant fits.
    #[error("<H, phi> is numerically zero: no finite soliton velocity fits this point")]
    NotASoliton,

    /// Every grid sample was degenerate; nothing to aggregate.
    #[error("all {0} grid samples were degenerate")]
    AllSamplesDegenerate(usize),

    /// |alpha'| = 0: the curvature of the curve is undefined here.
    #[error("cusp point at theta = {theta}: |alpha'| vanishes and the curvature is undefined")]
    CuspPoint { theta: f64 },

    /// A plane curve passes through (or too close to) the origin.
    #[error("curve passes through the origin near theta = {theta}: |alpha| = {modulus:.3e}")]
    CurveThroughOrigin { theta: f64, modulus: f64 },

    /// Adjacent samples jump in argument by >= pi/2; unwrapping is ambiguous.
    #[error("argument jump {jump:.3} at sample {index} exceeds pi/2; resample the curve more densely")]
    ArgumentJumpTooLarge { index: usize, jump: f64 },

    /// Ambient/intrinsic dimensions do not match the operation's requirement.
    #[error("dimension mismatch: {context} (expected {expected}, got {actual})")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        actual: usize,
    },

    /// The immersion is not Lagrangian at the requested point.
    #[error("not Lagrangian: Kaehler-form residual {residual:.3e} above tolerance")]
    NotLagrangian { residual: f64 },

    /// A curve factor of a product construction is not regular.
    #[error("non-regular curve factor: {0}")]
    NonRegularFactor(&'static str),

    /// The evolving polygon stopped being strictly convex.
    #[error("convexity lost at step {step} (t = {time}); reduce dt or smooth the input")]
    ConvexityLost { step: usize, time: f64 },

    /// Unknown catalog entry name.
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),

    /// Parameters invalid for the requested catalog entry.
    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
