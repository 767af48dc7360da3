//! Newton's problem of minimal resistance in Lorentz–Minkowski 3-space.
//!
//! ℝ³ with the metric dx² + dy² − dz²; a body whose upper surface is the
//! spacelike graph z = u(x,y) (|Du| < 1) moving through a fluid along the
//! z-axis picks up the resistance
//!
//!   E[u] = ∫_Ω dx dy / (1 − |Du|²),
//!
//! the hyperbolic cosine-squared analogue of Newton's sine-squared law. The
//! crate computes E by closed form and adaptive quadrature for canonical
//! radial profiles (disk, hyperbolic cap, spacelike cone, truncated
//! sequences), constructs the radial extremals of the Euler–Lagrange
//! equation — parametrized by p = u' with a conical point on the axis — and
//! verifies extremality (residuals, ellipticity, Legendre and Weierstrass
//! conditions, a direct discrete minimizer) and the single shock condition.
//!
//! All numerics are generic over the scalar type via [`scalar::Real`]
//! (`f64` in anger, `f32` compiles too); the `*64` aliases below fix the
//! common case.

// `!(x > 0)` guards below are deliberate: they reject NaN along with the
// out-of-range values, which `x <= 0` would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
pub mod error;
pub mod extremal;
pub mod field;
pub mod grid;
pub mod lorentz;
pub mod profile;
pub mod quad;
pub mod resistance;
pub mod scalar;
pub mod ssc;
pub mod tol;
pub mod variational;

pub use error::{Error, Result};
pub use extremal::{g_fn, table1, ExtremalEvaluation, ParametricExtremal, Table1Row};
pub use field::{ClosureField, Domain2, Field2, PlaneField};
pub use grid::Grid2D;
pub use lorentz::{CausalType, Grad2, GraphPointData, Vec3L};
pub use profile::{BoundaryData, ProfileDescriptor, ProfileKind, RadialProfile};
pub use resistance::{
    dilation_check, divergence_scan, resistance_2d, resistance_closed_form, resistance_radial,
    Epsilon, LagrangianSpec, Method, ResistanceReport,
};
pub use scalar::Real;
pub use ssc::{final_slope, ssc_check, ssc_identity_check, ExtensionPolicy, SscProbe};
pub use variational::{
    direct_minimize, el_residual_1d, el_residual_2d, ellipticity, legendre_check,
    max_principle_probe, separable_falsify, weierstrass_excess, DirectMinimizeResult,
    EllipticityReport,
};

/// f64 instantiations of the core types.
pub type Vec3L64 = Vec3L<f64>;
pub type Grad264 = Grad2<f64>;
pub type RadialProfile64 = RadialProfile<f64>;
pub type BoundaryData64 = BoundaryData<f64>;
pub type ParametricExtremal64 = ParametricExtremal<f64>;
pub type ResistanceReport64 = ResistanceReport<f64>;

/// f32 instantiations, for callers trading precision for width.
pub type Vec3L32 = Vec3L<f32>;
pub type RadialProfile32 = RadialProfile<f32>;
