//! Radial extremals of the resistance functional.
//!
//! A non-planar radial extremal satisfies the first integral
//! r·u'/(1−u'²)² = c₁. With p = u' as parameter the generating curve is
//!
//!   r(p) = (c₁/p)(1−p²)²,
//!   u(p) = c₁(1/4 − ln p − p² + 3p⁴/4),      p ∈ (0, 1],
//!
//! which runs from the conical point (0,0) (where u' → 1) out to r → ∞
//! (where u' → 0). Boundary data u(R) = M pins p_R as the root of
//! g(p_R) = M/R and c₁ = R·p_R/(1−p_R²)².
//!
//! Everything here is evaluated in p-space; no expression divides by
//! 1 − u'² in r-space, so the conical point costs nothing numerically.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::profile::{BoundaryData, ProfileKind, RadialProfile};
use crate::quad::{self, QuadOutcome};
use crate::scalar::Real;
use crate::tol;

/// 1 − p² without cancellation near p = 1.
#[inline]
fn one_minus_sq<T: Real>(p: T) -> T {
    (T::one() - p) * (T::one() + p)
}

/// The boundary-matching function g(x) = x/(1−x²)² · (1/4 − ln x − x² + 3x⁴/4).
///
/// Strictly increasing on (0,1) with g(0⁺) = 0 and g(1⁻) = 1; its value at
/// p_R equals M/R for the extremal through (R, M).
pub fn g_fn<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero() && x < T::one()) {
        return Err(Error::DomainError {
            name: "x",
            value: x.as_f64(),
        });
    }
    let w = one_minus_sq(x);
    Ok(x / (w * w) * g_bracket(x))
}

/// 1/4 − ln x − x² + 3x⁴/4. Vanishes to second order at x = 1; the direct
/// form cancels catastrophically there, so near 1 it is evaluated in
/// q = 1 − x as [−ln(1−q) − q] + 7q²/2 − 3q³ + 3q⁴/4.
#[inline]
fn g_bracket<T: Real>(x: T) -> T {
    let q = T::one() - x;
    if q < T::of(0.05) {
        let log_part = -(-q).ln_1p() - q;
        log_part + q * q * (T::of(3.5) - T::of(3.0) * q + T::of(0.75) * q * q)
    } else {
        T::of(0.25) - x.ln() - x * x + T::of(0.75) * x.powi(4)
    }
}

/// d/dx of `g_fn`.
fn g_fn_deriv<T: Real>(x: T) -> T {
    let w = one_minus_sq(x);
    let h = g_bracket(x);
    // h'(x) = -1/x - 2x + 3x³
    let hp = -x.recip() - T::of(2.0) * x + T::of(3.0) * x.powi(3);
    (h + x * hp) / (w * w) + T::of(4.0) * x * x * h / (w * w * w)
}

/// The extremal of Thm-5.1 type through boundary data (R, M), encoded by
/// (c₁, p_R); c₂ = c₁/4 is forced by u(0) = 0.
#[derive(Debug, Clone, Copy)]
pub struct ParametricExtremal<T> {
    radius: T,
    height: T,
    p_boundary: T,
    c1: T,
    c2: T,
}

/// Pointwise evaluation of the extremal at a radius r > 0.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ExtremalEvaluation<T> {
    pub r: T,
    pub u: T,
    /// u'(r) = p ∈ (0, 1).
    pub du: T,
    /// u''(r) = 1/r'(p) = −p²/(c₁(1−p²)(1+3p²)) ≤ 0.
    pub d2u: T,
}

impl<T: Real> ParametricExtremal<T> {
    /// Solve g(p_R) = M/R by bracketing bisection on (δ, 1−δ) refined with
    /// guarded Newton steps, then set c₁ = R·p_R/(1−p_R²)².
    pub fn solve(boundary: &BoundaryData<T>, root_tol: T) -> Result<Self> {
        let target = boundary.height() / boundary.radius();
        let inset = T::of(tol::ROOT_BRACKET_INSET);
        let mut lo = inset;
        let mut hi = T::one() - inset;
        if g_fn(lo)? > target || g_fn(hi)? < target {
            // g sweeps (0,1) monotonically; M/R ∈ (0,1) is always bracketed
            return Err(Error::RootNotBracketed);
        }
        while hi - lo > root_tol {
            let mid = T::of(0.5) * (lo + hi);
            if g_fn(mid)? < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut p = T::of(0.5) * (lo + hi);
        // Newton polish to machine precision; g' > 0 on the bracket.
        for _ in 0..6 {
            let gp = g_fn_deriv(p);
            if !(gp > T::zero()) {
                break;
            }
            let step = (g_fn(p)? - target) / gp;
            let next = p - step;
            if next <= lo || next >= hi {
                break;
            }
            p = next;
            if step.abs() <= T::epsilon() * p {
                break;
            }
        }

        let w = one_minus_sq(p);
        let c1 = boundary.radius() * p / (w * w);
        Ok(ParametricExtremal {
            radius: boundary.radius(),
            height: boundary.height(),
            p_boundary: p,
            c1,
            c2: c1 * T::of(0.25),
        })
    }

    /// Extremal with a prescribed boundary slope p_R ∈ (0,1); the height
    /// follows as M = R·g(p_R).
    pub fn from_p_boundary(radius: T, p_boundary: T) -> Result<Self> {
        if !(radius > T::zero()) {
            return Err(Error::DomainError {
                name: "R",
                value: radius.as_f64(),
            });
        }
        let height = radius * g_fn(p_boundary)?;
        let w = one_minus_sq(p_boundary);
        let c1 = radius * p_boundary / (w * w);
        Ok(ParametricExtremal {
            radius,
            height,
            p_boundary,
            c1,
            c2: c1 * T::of(0.25),
        })
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    pub fn height(&self) -> T {
        self.height
    }

    /// p_R = u'(R), the parameter value at the boundary.
    pub fn p_boundary(&self) -> T {
        self.p_boundary
    }

    /// First-integral constant c₁ = r·u'/(1−u'²)².
    pub fn c1(&self) -> T {
        self.c1
    }

    /// c₂ = c₁/4.
    pub fn c2(&self) -> T {
        self.c2
    }

    /// Generating curve point (r, u) at parameter p ∈ (0, 1].
    pub fn curve_at_p(&self, p: T) -> Result<(T, T)> {
        if !(p > T::zero() && p <= T::one()) {
            return Err(Error::DomainError {
                name: "p",
                value: p.as_f64(),
            });
        }
        let w = one_minus_sq(p);
        let r = self.c1 / p * w * w;
        let u = self.c1 * g_bracket(p);
        Ok((r, u))
    }

    /// dr/dp = −c₁(1/p² + 2 − 3p²) < 0 on (0, 1).
    pub fn r_prime(&self, p: T) -> T {
        -self.c1 * (p.powi(-2) + T::of(2.0) - T::of(3.0) * p * p)
    }

    /// Invert r(p): the unique p ∈ (0, 1] with (c₁/p)(1−p²)² = r.
    ///
    /// r may exceed R (the extremal extends to all of (0, ∞)). Bisection to
    /// `root_tol`, then guarded Newton polish (skipped near p = 1 where
    /// r'(p) → 0).
    pub fn p_of_r(&self, r: T, root_tol: T) -> Result<T> {
        if r < T::zero() {
            return Err(Error::DomainError {
                name: "r",
                value: r.as_f64(),
            });
        }
        if r == T::zero() {
            return Ok(T::one());
        }
        let r_at = |p: T| {
            let w = one_minus_sq(p);
            self.c1 / p * w * w
        };
        // expand the lower bracket until r(lo) ≥ r
        let mut lo = T::of(0.5).min(self.p_boundary);
        let mut guard = 0;
        while r_at(lo) < r {
            lo *= T::of(0.5);
            guard += 1;
            if guard > 2000 {
                return Err(Error::RootNotBracketed);
            }
        }
        let mut hi = T::one();
        while hi - lo > root_tol {
            let mid = T::of(0.5) * (lo + hi);
            if r_at(mid) > r {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut p = T::of(0.5) * (lo + hi);
        for _ in 0..6 {
            let rp = self.r_prime(p);
            // r'(1) = 0: the root is double there, leave bisection's answer
            if rp.abs() < T::of(1e-6) * self.c1 {
                break;
            }
            let step = (r_at(p) - r) / rp;
            let next = p - step;
            if !(next > T::zero() && next <= T::one()) {
                break;
            }
            p = next;
            if step.abs() <= T::epsilon() * p {
                break;
            }
        }
        Ok(p)
    }

    /// Evaluate u, u', u'' at radius r > 0.
    pub fn eval_at_r(&self, r: T) -> Result<ExtremalEvaluation<T>> {
        if !(r > T::zero()) {
            return Err(Error::DomainError {
                name: "r",
                value: r.as_f64(),
            });
        }
        let p = self.p_of_r(r, T::of(tol::ROOT_TOL))?;
        let (_, u) = self.curve_at_p(p)?;
        let w = one_minus_sq(p);
        let d2u = -(p * p) / (self.c1 * w * (T::one() + T::of(3.0) * p * p));
        Ok(ExtremalEvaluation { r, u, du: p, d2u })
    }

    /// Height u(r); r = 0 maps to the vertex value 0.
    pub fn height_at(&self, r: T) -> Result<T> {
        if r == T::zero() {
            return Ok(T::zero());
        }
        let p = self.p_of_r(r, T::of(tol::ROOT_TOL))?;
        Ok(self.curve_at_p(p)?.1)
    }

    /// Slope u'(r) = p; the limit value 1 at r = 0.
    pub fn slope_at(&self, r: T) -> Result<T> {
        self.p_of_r(r, T::of(tol::ROOT_TOL))
    }

    /// Closed-form resistance: R² times the R = 1 normalization
    ///
    ///   E₁ = −π(3p_R⁶ − 10p_R⁴ + 9p_R² + 4p_R² ln p_R − 2) / (2(1−p_R²)⁴).
    pub fn resistance(&self) -> T {
        self.radius * self.radius * resistance_unit(self.p_boundary)
    }

    /// Resistance via adaptive quadrature in p-space,
    /// E = 2π ∫_{p_R}^{1} c₁²(1−p²)²(1+3p²)/p³ dp.
    ///
    /// Independent route used to cross-validate the closed form; also the
    /// quadrature backend for extremal-kind profiles (the r-space integrand
    /// looks singular at the cone point, the p-space one is smooth).
    pub fn resistance_quadrature(&self, quad_tol: T) -> Result<QuadOutcome<T>> {
        let c1sq = self.c1 * self.c1;
        let out = quad::integrate(
            |p: T| {
                let w = one_minus_sq(p);
                Ok(c1sq * w * w * (T::one() + T::of(3.0) * p * p) / p.powi(3))
            },
            self.p_boundary,
            T::one(),
            quad_tol,
        )?;
        Ok(QuadOutcome {
            value: T::of(2.0) * T::pi() * out.value,
            abs_error: T::of(2.0) * T::pi() * out.abs_error,
            evaluations: out.evaluations,
        })
    }

    /// Dilated extremal through (cR, cM): same p_R, c₁ scaled by c.
    pub fn scaled(&self, c: T) -> Result<Self> {
        if !(c > T::zero()) {
            return Err(Error::DomainError {
                name: "c",
                value: c.as_f64(),
            });
        }
        Ok(ParametricExtremal {
            radius: c * self.radius,
            height: c * self.height,
            p_boundary: self.p_boundary,
            c1: c * self.c1,
            c2: c * self.c2,
        })
    }

    /// Wrap as a radial profile on [0, R] (vertical shift stays at u(0) = 0,
    /// so u(R) = M rather than the examples' u(R) = 0 convention).
    pub fn to_profile(&self) -> RadialProfile<T> {
        RadialProfile::from_kind(self.radius, ProfileKind::Extremal(*self))
    }

    /// n curve samples with p descending from just below 1 to p_R, i.e. r
    /// ascending from the vertex out to R.
    pub fn sample_curve(&self, n: usize) -> Vec<ExtremalEvaluation<T>> {
        let mut rows = Vec::with_capacity(n);
        for k in 0..n {
            let t = T::from_usize(k + 1).unwrap() / T::from_usize(n).unwrap();
            let p = T::one() - (T::one() - self.p_boundary) * t;
            let (r, u) = self.curve_at_p(p).expect("p in (0,1]");
            let w = one_minus_sq(p);
            let d2u = -(p * p) / (self.c1 * w * (T::one() + T::of(3.0) * p * p));
            rows.push(ExtremalEvaluation { r, u, du: p, d2u });
        }
        rows
    }
}

/// Closed-form resistance for R = 1 as a function of p_R; tends to π
/// (the flat disk) as p_R → 0.
pub fn resistance_unit<T: Real>(p_boundary: T) -> T {
    let p2 = p_boundary * p_boundary;
    let w = one_minus_sq(p_boundary);
    let numerator = T::of(3.0) * p2.powi(3) - T::of(10.0) * p2 * p2
        + T::of(9.0) * p2
        + T::of(4.0) * p2 * p_boundary.ln()
        - T::of(2.0);
    -T::pi() * numerator / (T::of(2.0) * w.powi(4))
}

/// One row of the resistance table: extremal vs. cone through (R, M).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Table1Row<T> {
    #[serde(rename = "M")]
    pub height: T,
    #[serde(rename = "p_R")]
    pub p_boundary: T,
    #[serde(rename = "E_extremal")]
    pub resistance_extremal: T,
    #[serde(rename = "E_cone")]
    pub resistance_cone: T,
}

/// Resistance of the extremal and of the comparison cone v(r) = (M/R)·r for
/// each height in `heights`; the cone value is πR⁴/(R²−M²).
pub fn table1<T: Real>(radius: T, heights: &[T]) -> Result<Vec<Table1Row<T>>> {
    heights
        .iter()
        .map(|&m| {
            let boundary = BoundaryData::new(radius, m)?;
            let extremal = ParametricExtremal::solve(&boundary, T::of(tol::ROOT_TOL))?;
            let r2 = radius * radius;
            Ok(Table1Row {
                height: m,
                p_boundary: extremal.p_boundary(),
                resistance_extremal: extremal.resistance(),
                resistance_cone: T::pi() * r2 * r2 / (r2 - m * m),
            })
        })
        .collect()
}
