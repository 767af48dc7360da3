//! The resistance functional E[u] = ∫_Ω dx dy / (1 − |Du|²), its polar form
//! E[u] = 2π ∫₀^R r/(1 − u'²) dr, closed forms for the canonical profiles,
//! and the ε-unified family 1/(1 + ε|Du|²) covering the Euclidean case.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Domain2, Field2};
use crate::profile::{BoundaryData, ProfileKind, RadialProfile};
use crate::quad;
use crate::scalar::Real;
use crate::tol;

/// Sign selector for the density 1/(1 + ε|Du|²).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Epsilon {
    /// ε = −1: density 1/(1−|Du|²), needs |Du| < 1.
    Lorentzian,
    /// ε = +1: density 1/(1+|Du|²), unconstrained.
    Euclidean,
}

impl Epsilon {
    pub fn sign<T: Real>(self) -> T {
        match self {
            Epsilon::Lorentzian => -T::one(),
            Epsilon::Euclidean => T::one(),
        }
    }
}

/// The ε-family member selecting which resistance density to integrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LagrangianSpec {
    pub epsilon: Epsilon,
}

impl LagrangianSpec {
    pub fn lorentzian() -> Self {
        LagrangianSpec {
            epsilon: Epsilon::Lorentzian,
        }
    }

    pub fn euclidean() -> Self {
        LagrangianSpec {
            epsilon: Epsilon::Euclidean,
        }
    }

    /// Pointwise density 1/(1 + ε d²) for d² = |Du|²; inadmissible when the
    /// denominator is not safely positive.
    pub fn density<T: Real>(&self, grad_norm_sq: T) -> Option<T> {
        let denom = T::one() + self.epsilon.sign::<T>() * grad_norm_sq;
        if denom < T::of(tol::EDGE_TOL) {
            None
        } else {
            Some(denom.recip())
        }
    }
}

/// How a resistance value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    ClosedForm,
    Quadrature1D,
    Quadrature2D,
}

/// Resistance value plus provenance.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ResistanceReport<T> {
    pub value: T,
    pub method: Method,
    pub abs_error_estimate: T,
}

impl<T: Real> ResistanceReport<T> {
    fn closed(value: T) -> Self {
        ResistanceReport {
            value,
            method: Method::ClosedForm,
            abs_error_estimate: T::zero(),
        }
    }
}

/// E[u] = 2π ∫₀^R r/(1 − u'²) dr by adaptive quadrature, split at the
/// profile's kink radii. Extremal-kind profiles integrate in p-space, where
/// the integrand is smooth through the conical point.
pub fn resistance_radial<T: Real>(
    profile: &RadialProfile<T>,
    quad_tol: T,
) -> Result<ResistanceReport<T>> {
    if !(quad_tol > T::zero()) {
        return Err(Error::DomainError {
            name: "tol",
            value: quad_tol.as_f64(),
        });
    }
    if !profile.is_certified_spacelike() {
        return Err(Error::NotSpacelike {
            grad_norm_sq: f64::NAN,
        });
    }

    if let ProfileKind::Extremal(e) = profile.kind() {
        let out = e.resistance_quadrature(quad_tol)?;
        return Ok(ResistanceReport {
            value: out.value,
            method: Method::Quadrature1D,
            abs_error_estimate: out.abs_error,
        });
    }

    let two_pi = T::of(2.0) * T::pi();
    let inner_tol = quad_tol / two_pi;
    let edge = T::of(tol::EDGE_TOL);
    let out = quad::integrate_split(
        |r: T| {
            let s = profile.deriv(r);
            let w = (T::one() - s) * (T::one() + s);
            if w < edge {
                return Err(Error::SingularIntegrand { at: r.as_f64() });
            }
            Ok(r / w)
        },
        T::zero(),
        profile.radius(),
        profile.kinks(),
        inner_tol,
    )?;
    Ok(ResistanceReport {
        value: two_pi * out.value,
        method: Method::Quadrature1D,
        abs_error_estimate: two_pi * out.abs_error,
    })
}

/// Sloped-part and total closed-form resistance of a truncated profile.
///
/// The flat annulus [a, R] carries density 1 and contributes its area
/// π(R²−a²) to the polar integral; the sloped part alone is what the
/// divergence argument tracks. Both are reported.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TruncatedParts<T> {
    pub sloped: T,
    pub total: T,
}

/// Closed forms for the truncated kinds; `None` otherwise.
pub fn truncated_closed_form_parts<T: Real>(
    profile: &RadialProfile<T>,
) -> Option<TruncatedParts<T>> {
    let radius = profile.radius();
    match profile.kind() {
        ProfileKind::TruncatedCone { height, knee, .. } => {
            let a2 = *knee * *knee;
            let sloped = T::pi() * a2 * a2 / (a2 - *height * *height);
            Some(TruncatedParts {
                sloped,
                total: sloped + T::pi() * (radius * radius - a2),
            })
        }
        ProfileKind::TruncatedCap { rho, knee, .. } => {
            let a2 = *knee * *knee;
            let r2 = *rho * *rho;
            let sloped = T::pi() * a2 * (a2 + T::of(2.0) * r2) / (T::of(2.0) * r2);
            Some(TruncatedParts {
                sloped,
                total: sloped + T::pi() * (radius * radius - a2),
            })
        }
        _ => None,
    }
}

/// Closed-form resistance of the canonical profiles:
/// disk πR², cap πR²(2ρ²+R²)/(2ρ²), cone πR²/(1−λ²), truncated kinds the
/// sloped closed form plus the flat annulus area.
pub fn resistance_closed_form<T: Real>(profile: &RadialProfile<T>) -> Result<ResistanceReport<T>> {
    let radius = profile.radius();
    let r2 = radius * radius;
    let value = match profile.kind() {
        ProfileKind::Flat => T::pi() * r2,
        ProfileKind::HyperbolicCap { rho } => {
            let rr = *rho * *rho;
            T::pi() * r2 * (T::of(2.0) * rr + r2) / (T::of(2.0) * rr)
        }
        ProfileKind::Cone { slope } => T::pi() * r2 / ((T::one() - *slope) * (T::one() + *slope)),
        ProfileKind::TruncatedCone { .. } | ProfileKind::TruncatedCap { .. } => {
            truncated_closed_form_parts(profile)
                .expect("truncated")
                .total
        }
        other => {
            return Err(Error::NoClosedForm { kind: other.name() });
        }
    };
    Ok(ResistanceReport::closed(value))
}

/// ∫_Ω 1/(1 + ε|Du|²) dx dy by nested (tensor-product) adaptive quadrature:
/// the outer x-integral integrates inner adaptive y-section integrals.
pub fn resistance_2d<T: Real>(
    field: &dyn Field2<T>,
    domain: &Domain2<T>,
    spec: &LagrangianSpec,
    quad_tol: T,
) -> Result<ResistanceReport<T>> {
    let (x0, x1) = domain.x_range();
    let width = x1 - x0;
    if !(width > T::zero()) {
        return Err(Error::DomainError {
            name: "domain width",
            value: width.as_f64(),
        });
    }
    let inner_tol = quad_tol / (T::of(4.0) * width);
    let outer_tol = quad_tol * T::of(0.5);

    let outer = quad::integrate(
        |x: T| {
            let (ylo, yhi) = domain.y_section(x);
            if yhi <= ylo {
                return Ok(T::zero());
            }
            let inner = quad::integrate(
                |y: T| {
                    spec.density(field.grad_norm_sq(x, y))
                        .ok_or(Error::NotAdmissible {
                            x: x.as_f64(),
                            y: y.as_f64(),
                        })
                },
                ylo,
                yhi,
                inner_tol,
            )?;
            Ok(inner.value)
        },
        x0,
        x1,
        outer_tol,
    )?;

    Ok(ResistanceReport {
        value: outer.value,
        method: Method::Quadrature2D,
        abs_error_estimate: outer.abs_error + width * inner_tol,
    })
}

/// Both sides of the dilation identity E[c·u(·/c)] = c²·E[u].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DilationCheck<T> {
    pub original: T,
    pub dilated: T,
    pub ratio: T,
}

pub fn dilation_check<T: Real>(
    profile: &RadialProfile<T>,
    c: T,
    quad_tol: T,
) -> Result<DilationCheck<T>> {
    let original = resistance_radial(profile, quad_tol)?.value;
    let dilated = resistance_radial(&profile.dilate(c)?, quad_tol)?.value;
    Ok(DilationCheck {
        original,
        dilated,
        ratio: dilated / original,
    })
}

/// One row of the divergent-sequence scan (truncated cones of Prop-4.4 type).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DivergenceRow<T> {
    pub n: u32,
    /// π a_n⁴/(a_n² − M²): the sloped part only.
    pub closed_sloped: T,
    /// Sloped part plus the flat annulus π(R² − a_n²); this is what the
    /// polar integral over all of [0, R] equals.
    pub closed_total: T,
    pub quadrature: T,
}

/// E[u_n] for the truncated-cone sequence u_n through (R, M), n over
/// `n_list` (strictly increasing). Closed forms and quadrature side by side;
/// the sloped/total split exposes the annulus term the divergence argument
/// drops.
pub fn divergence_scan<T: Real>(
    radius: T,
    height: T,
    n_list: &[u32],
    quad_tol: T,
) -> Result<Vec<DivergenceRow<T>>> {
    BoundaryData::new(radius, height)?;
    if n_list.windows(2).any(|w| w[0] >= w[1]) || n_list.iter().any(|&n| n < 1) {
        return Err(Error::DomainError {
            name: "n_list",
            value: f64::NAN,
        });
    }
    n_list
        .iter()
        .map(|&n| {
            let profile = RadialProfile::truncated_cone(radius, height, n)?;
            let parts = truncated_closed_form_parts(&profile).expect("truncated cone");
            let quadrature = resistance_radial(&profile, quad_tol)?.value;
            Ok(DivergenceRow {
                n,
                closed_sloped: parts.sloped,
                closed_total: parts.total,
                quadrature,
            })
        })
        .collect()
}
