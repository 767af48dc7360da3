//! The Single Shock Condition (SSC).
//!
//! A reflected particle leaves the graph along a ray of slope
//! s_p = (1+|Du|²)/(2|Du|); the SSC asks that the ray clears the surface:
//!
//!   u(x,y) − u((x,y) − t·Du(x,y)) ≤ (t/2)(1 + |Du(x,y)|²)   for all t > 0.
//!
//! In the Lorentzian setting every spacelike graph satisfies it; the probes
//! here verify that numerically on a log-spaced t-grid.

use crate::error::{Error, Result};
use crate::field::{Domain2, Field2};
use crate::lorentz::Grad2;
use crate::scalar::Real;

/// Slope of the reflected ray, s_p = (1+|Du|²)/(2|Du|) > 1 for spacelike
/// gradients. A vertical escape (Du = 0) has no finite slope.
pub fn final_slope<T: Real>(du: Grad2<T>) -> Result<T> {
    let d2 = du.norm_sq();
    if d2 >= T::one() {
        return Err(Error::NotSpacelike {
            grad_norm_sq: d2.as_f64(),
        });
    }
    if d2 == T::zero() {
        return Err(Error::ZeroGradient);
    }
    let d = d2.sqrt();
    Ok((T::one() + d2) / (T::of(2.0) * d))
}

/// How to treat foot points (x,y) − t·Du that leave the domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionPolicy {
    /// Evaluate anyway: canonical profiles have a natural analytic extension.
    Natural,
    /// Skip those t values (vacuously satisfied) and flag the probe.
    ClipToDomain,
}

/// SSC margins at one point over a t-grid; the condition holds at the point
/// iff `worst_margin` ≥ 0.
#[derive(Debug, Clone)]
pub struct SscProbe<T> {
    pub point: (T, T),
    pub t_grid: Vec<T>,
    /// (t/2)(1+|Du|²) − [u(x,y) − u((x,y) − t·Du)] per grid t; NaN where the
    /// foot point was clipped.
    pub margins: Vec<T>,
    pub worst_margin: T,
    /// True when some foot points were outside the domain under
    /// [`ExtensionPolicy::ClipToDomain`].
    pub clipped: bool,
}

/// Log-spaced t-grid in [1e−4·diameter, t_max].
pub fn log_t_grid<T: Real>(diameter: T, t_max: T, n_t: usize) -> Vec<T> {
    let t_min = T::of(1e-4) * diameter;
    if n_t == 1 {
        return vec![t_max];
    }
    let ratio = (t_max / t_min).ln();
    (0..n_t)
        .map(|k| {
            let f = T::from_usize(k).unwrap() / T::from_usize(n_t - 1).unwrap();
            t_min * (ratio * f).exp()
        })
        .collect()
}

/// Evaluate the SSC margin at `point` for every t in a log-spaced grid of
/// `n_t` values up to `t_max`.
pub fn ssc_check<T: Real>(
    field: &dyn Field2<T>,
    domain: &Domain2<T>,
    point: (T, T),
    t_max: T,
    n_t: usize,
    policy: ExtensionPolicy,
) -> Result<SscProbe<T>> {
    let du = field.grad(point.0, point.1);
    let d2 = du.norm_sq();
    if d2 >= T::one() {
        return Err(Error::NotSpacelike {
            grad_norm_sq: d2.as_f64(),
        });
    }
    let u0 = field.value(point.0, point.1);
    let t_grid = log_t_grid(domain.diameter(), t_max, n_t);
    let mut margins = Vec::with_capacity(t_grid.len());
    let mut worst = T::infinity();
    let mut clipped = false;
    let half = T::of(0.5);
    for &t in &t_grid {
        let foot = (point.0 - t * du.x, point.1 - t * du.y);
        if policy == ExtensionPolicy::ClipToDomain && !domain.contains(foot.0, foot.1) {
            clipped = true;
            margins.push(T::nan());
            continue;
        }
        let margin = half * t * (T::one() + d2) - (u0 - field.value(foot.0, foot.1));
        worst = worst.min(margin);
        margins.push(margin);
    }
    Ok(SscProbe {
        point,
        t_grid,
        margins,
        worst_margin: worst,
        clipped,
    })
}

/// Worst margin over a set of probe points (64 t-values each by default
/// caller choice); the Lorentzian theory predicts ≥ 0 throughout.
pub fn worst_margin_sweep<T: Real>(
    field: &dyn Field2<T>,
    domain: &Domain2<T>,
    points: &[(T, T)],
    t_max: T,
    n_t: usize,
    policy: ExtensionPolicy,
) -> Result<T> {
    let mut worst = T::infinity();
    for &point in points {
        let probe = ssc_check(field, domain, point, t_max, n_t, policy)?;
        worst = worst.min(probe.worst_margin);
    }
    Ok(worst)
}

/// CSV export "x,y,t,margin" of a probe.
pub fn probe_to_csv<T: Real>(probe: &SscProbe<T>) -> String {
    let mut out = String::from("x,y,t,margin\n");
    for (t, m) in probe.t_grid.iter().zip(&probe.margins) {
        out.push_str(&format!(
            "{},{},{},{}\n",
            probe.point.0, probe.point.1, t, m
        ));
    }
    out
}

/// Both sides of the mean-value identity behind the shock theorem:
/// 1 + u'(x)² − 2u'(ξ)u'(x) = (u'(x) − u'(ξ))² + 1 − u'(ξ)².
#[derive(Debug, Clone, Copy)]
pub struct SscIdentity<T> {
    /// LHS − RHS; zero up to rounding.
    pub difference: T,
    /// The common value; strictly positive whenever |u'(ξ)| < 1.
    pub value: T,
}

pub fn ssc_identity_check<T: Real>(ux: T, uxi: T) -> SscIdentity<T> {
    let lhs = T::one() + ux * ux - T::of(2.0) * uxi * ux;
    let diff = ux - uxi;
    let rhs = diff * diff + T::one() - uxi * uxi;
    SscIdentity {
        difference: lhs - rhs,
        value: lhs,
    }
}
