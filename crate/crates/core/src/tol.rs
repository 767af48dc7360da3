//! Centralized numerical tolerances.
//!
//! All model quantities are O(1) in model units, so absolute tolerances are
//! meaningful. Anything that needs a different band documents it inline.

/// Causal classification: |⟨v,v⟩| below this is treated as lightlike.
pub const LIGHTLIKE_TOL: f64 = 1e-12;

/// Unit-norm and boundary-condition checks on composed square roots.
pub const UNIT_NORM_TOL: f64 = 1e-10;

/// Quadrature guard: integrand evaluation aborts when 1 − u'² drops below
/// this at an interior node (the graph is grazing the light cone).
pub const EDGE_TOL: f64 = 1e-9;

/// Default absolute tolerance for adaptive quadrature.
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

/// Bisection interval width for the monotone root solves (p_R, p(r)).
pub const ROOT_TOL: f64 = 1e-13;

/// Open-bracket inset for root solves on (0, 1).
pub const ROOT_BRACKET_INSET: f64 = 1e-9;

/// Profile eval/deriv finite-difference consistency band.
pub const PROFILE_FD_TOL: f64 = 1e-6;

/// Continuity at piecewise-profile kink radii.
pub const KINK_CONTINUITY_TOL: f64 = 1e-12;

/// Slope box inset for the direct minimizer: |s| ≤ 1 − SLOPE_INSET.
pub const SLOPE_INSET: f64 = 1e-3;
