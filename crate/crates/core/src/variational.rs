//! Extremality and minimality verification: Euler–Lagrange residuals (1D and
//! 2D), ellipticity of the second-order terms, the Legendre and Weierstrass
//! conditions for the radial Lagrangian F(r, u, p) = r/(1−p²), separable-
//! candidate falsification, and a direct discrete minimizer that serves as an
//! independent oracle for the radial extremal.

use crate::error::{Error, Result};
use crate::grid::Grid2D;
use crate::lorentz::Grad2;
use crate::profile::{BoundaryData, RadialProfile};
use crate::quad::neumaier_sum;
use crate::resistance::{Epsilon, LagrangianSpec};
use crate::scalar::Real;
use crate::tol;

/// Eigenvalues of the second-order coefficient matrix of the Euler–Lagrange
/// equation (1 + ε|Du|²)Δu − 4ε D²u(Du,Du) = 0.
#[derive(Debug, Clone, Copy)]
pub struct EllipticityReport<T> {
    pub lambda_min: T,
    pub lambda_max: T,
    pub epsilon: Epsilon,
}

/// Numerically computed eigenvalues of A = (1+εd²)I − 4ε Du⊗Du.
///
/// They must match the closed forms λ_ε = 1−(2+ε)d², Λ_ε = 1+(2−ε)d²; for
/// ε = −1 both are positive on spacelike gradients (elliptic), for ε = +1
/// λ_ε turns negative once |Du|² > 1/3 (mixed type).
pub fn ellipticity<T: Real>(du: Grad2<T>, spec: &LagrangianSpec) -> Result<EllipticityReport<T>> {
    let d2 = du.norm_sq();
    if spec.epsilon == Epsilon::Lorentzian && d2 >= T::one() {
        return Err(Error::NotAdmissible {
            x: du.x.as_f64(),
            y: du.y.as_f64(),
        });
    }
    let eps = spec.epsilon.sign::<T>();
    let four = T::of(4.0);
    let a = T::one() + eps * d2 - four * eps * du.x * du.x;
    let c = T::one() + eps * d2 - four * eps * du.y * du.y;
    let b = -four * eps * du.x * du.y;
    let mean = T::of(0.5) * (a + c);
    let disc = (T::of(0.5) * (a - c)).powi(2) + b * b;
    let root = disc.sqrt();
    Ok(EllipticityReport {
        lambda_min: mean - root,
        lambda_max: mean + root,
        epsilon: spec.epsilon,
    })
}

/// Closed-form eigenvalues (λ_ε, Λ_ε).
pub fn ellipticity_closed_form<T: Real>(du: Grad2<T>, spec: &LagrangianSpec) -> (T, T) {
    let d2 = du.norm_sq();
    let eps = spec.epsilon.sign::<T>();
    (
        T::one() - (T::of(2.0) + eps) * d2,
        T::one() + (T::of(2.0) - eps) * d2,
    )
}

/// Max |d/dr [r u'/(1−u'²)²]| over `r_samples`, the first integral's drift,
/// by central differences with step 1e−6·R. Zero for extremals.
pub fn el_residual_1d<T: Real>(profile: &RadialProfile<T>, r_samples: &[T]) -> T {
    let h = profile.radius() * T::of(1e-6);
    let first_integral = |r: T| {
        let s = profile.deriv(r);
        let w = (T::one() - s) * (T::one() + s);
        r * s / (w * w)
    };
    let mut worst = T::zero();
    for &r in r_samples {
        let res = (first_integral(r + h) - first_integral(r - h)) / (T::of(2.0) * h);
        worst = worst.max(res.abs());
    }
    worst
}

/// Uniform residual sample radii in [0.1R, 0.95R], clear of the endpoints.
pub fn default_residual_samples<T: Real>(radius: T, n: usize) -> Vec<T> {
    (0..n)
        .map(|i| {
            let t = (T::from_usize(i).unwrap() + T::of(0.5)) / T::from_usize(n).unwrap();
            radius * (T::of(0.1) + T::of(0.85) * t)
        })
        .collect()
}

/// Pointwise Euler–Lagrange residual of a gridded function by second-order
/// central differences (mixed derivative via the 4-point cross stencil):
///
///   (1+εd²)(u_xx+u_yy) − 4ε(u_x²u_xx + 2u_xu_yu_xy + u_y²u_yy),
///
/// which for ε = −1 is (1+3u_x²−u_y²)u_xx + (1−u_x²+3u_y²)u_yy + 8u_xu_yu_xy.
/// Returns a grid carrying the residual at stencil-interior points (masked
/// out elsewhere).
pub fn el_residual_2d<T: Real>(u: &Grid2D<T>, spec: &LagrangianSpec) -> Result<Grid2D<T>> {
    let h = u.h();
    let two = T::of(2.0);
    let four = T::of(4.0);
    let eps = spec.epsilon.sign::<T>();
    let mut out = Grid2D::from_fn(u.x(0), u.y(0), u.nx(), u.ny(), h, |_, _| T::nan());
    for i in 0..u.nx() {
        for j in 0..u.ny() {
            if !u.is_stencil_interior(i, j) {
                out.mask_out(i, j);
                continue;
            }
            let ux = (u.at(i + 1, j) - u.at(i - 1, j)) / (two * h);
            let uy = (u.at(i, j + 1) - u.at(i, j - 1)) / (two * h);
            let d2 = ux * ux + uy * uy;
            if spec.epsilon == Epsilon::Lorentzian && d2 >= T::one() {
                return Err(Error::NotAdmissible {
                    x: u.x(i).as_f64(),
                    y: u.y(j).as_f64(),
                });
            }
            let uxx = (u.at(i + 1, j) - two * u.at(i, j) + u.at(i - 1, j)) / (h * h);
            let uyy = (u.at(i, j + 1) - two * u.at(i, j) + u.at(i, j - 1)) / (h * h);
            let uxy = (u.at(i + 1, j + 1) - u.at(i + 1, j - 1) - u.at(i - 1, j + 1)
                + u.at(i - 1, j - 1))
                / (four * h * h);
            let res = (T::one() + eps * d2) * (uxx + uyy)
                - four * eps * (ux * ux * uxx + two * ux * uy * uxy + uy * uy * uyy);
            out.set(i, j, res);
        }
    }
    Ok(out)
}

/// Max |residual| over the masked (stencil-interior) points.
pub fn residual_max_abs<T: Real>(residual: &Grid2D<T>) -> T {
    let mut worst = T::zero();
    for i in 0..residual.nx() {
        for j in 0..residual.ny() {
            if residual.in_mask(i, j) {
                worst = worst.max(residual.at(i, j).abs());
            }
        }
    }
    worst
}

/// CSV export "i,j,x,y,residual" of the masked points.
pub fn residual_to_csv<T: Real>(residual: &Grid2D<T>) -> String {
    let mut out = String::from("i,j,x,y,residual\n");
    for i in 0..residual.nx() {
        for j in 0..residual.ny() {
            if residual.in_mask(i, j) {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    i,
                    j,
                    residual.x(i),
                    residual.y(j),
                    residual.at(i, j)
                ));
            }
        }
    }
    out
}

/// Exact Euler–Lagrange residual of the separable candidate
/// u = a1·x²/2 + b1·y²/2, evaluated symbolically:
///
///   (1 − f'² − g'²)(f'' + g'') + 4(f'²f'' + g'²g'')
///
/// with f' = a1·x, g' = b1·y.
pub fn separable_residual<T: Real>(a1: T, b1: T, x: T, y: T) -> T {
    let fp2 = (a1 * x) * (a1 * x);
    let gp2 = (b1 * y) * (b1 * y);
    (T::one() - fp2 - gp2) * (a1 + b1) + T::of(4.0) * (fp2 * a1 + gp2 * b1)
}

/// True when the quadratic separable candidate is falsified as an extremal:
/// its residual is nonzero at some spacelike grid point. Linear candidates
/// (a1 = b1 = 0) return false — their residual vanishes identically.
pub fn separable_falsify<T: Real>(a1: T, b1: T, grid: &[(T, T)]) -> bool {
    let threshold = T::of(1e-12) * (T::one() + a1.abs() + b1.abs());
    grid.iter().any(|&(x, y)| {
        let fp2 = (a1 * x) * (a1 * x);
        let gp2 = (b1 * y) * (b1 * y);
        fp2 + gp2 < T::one() && separable_residual(a1, b1, x, y).abs() > threshold
    })
}

/// Uniform (2k+1)² candidate grid on [−1, 1]².
pub fn separable_default_grid<T: Real>(k: usize) -> Vec<(T, T)> {
    let n = 2 * k + 1;
    let mut pts = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let x =
                -T::one() + T::of(2.0) * T::from_usize(i).unwrap() / T::from_usize(n - 1).unwrap();
            let y =
                -T::one() + T::of(2.0) * T::from_usize(j).unwrap() / T::from_usize(n - 1).unwrap();
            pts.push((x, y));
        }
    }
    pts
}

/// Legendre condition: F_pp(r, u, p) = 2r(1+3p²)/(1−p²)³, positive on the
/// admissible strip r > 0, p² < 1.
pub fn legendre_check<T: Real>(r: T, p: T) -> Result<T> {
    if !(r > T::zero()) {
        return Err(Error::DomainError {
            name: "r",
            value: r.as_f64(),
        });
    }
    if !(p * p < T::one()) {
        return Err(Error::DomainError {
            name: "p",
            value: p.as_f64(),
        });
    }
    let w = (T::one() - p) * (T::one() + p);
    Ok(T::of(2.0) * r * (T::one() + T::of(3.0) * p * p) / w.powi(3))
}

/// Weierstrass excess by its definition
/// ℰ = F(r,·,vp) − F(r,·,up) − (vp−up)·F_p(r,·,up).
pub fn weierstrass_excess<T: Real>(r: T, up: T, vp: T) -> Result<T> {
    check_slope_pair(r, up, vp)?;
    let f = |s: T| r / ((T::one() - s) * (T::one() + s));
    let w = (T::one() - up) * (T::one() + up);
    let fp = T::of(2.0) * r * up / (w * w);
    Ok(f(vp) - f(up) - (vp - up) * fp)
}

/// The factored closed form of the excess,
/// r(up−vp)²((up+vp)² + (1−vp²)) / ((1−up²)²(1−vp²)) — manifestly ≥ 0 with
/// equality iff up = vp.
pub fn weierstrass_excess_closed_form<T: Real>(r: T, up: T, vp: T) -> Result<T> {
    check_slope_pair(r, up, vp)?;
    let wu = (T::one() - up) * (T::one() + up);
    let wv = (T::one() - vp) * (T::one() + vp);
    let diff = up - vp;
    let sum = up + vp;
    Ok(r * diff * diff * (sum * sum + wv) / (wu * wu * wv))
}

fn check_slope_pair<T: Real>(r: T, up: T, vp: T) -> Result<()> {
    if !(r > T::zero()) {
        return Err(Error::DomainError {
            name: "r",
            value: r.as_f64(),
        });
    }
    if !(up * up < T::one()) {
        return Err(Error::DomainError {
            name: "up",
            value: up.as_f64(),
        });
    }
    if !(vp * vp < T::one()) {
        return Err(Error::DomainError {
            name: "vp",
            value: vp.as_f64(),
        });
    }
    Ok(())
}

/// Outcome of the discrete direct minimization.
#[derive(Debug, Clone)]
pub struct DirectMinimizeResult<T> {
    /// n+1 node radii 0 = r_0 < … < r_n = R.
    pub node_radii: Vec<T>,
    /// u at the nodes; u_0 = 0 and u_n = M up to projection residual.
    pub node_heights: Vec<T>,
    /// Per-interval slopes, each within (−1+δ, 1−δ).
    pub slopes: Vec<T>,
    pub energy: T,
    pub iterations: usize,
    /// Accepted energies; nonincreasing by the line-search contract.
    pub energy_trace: Vec<T>,
}

/// Minimize the midpoint discretization of 2π ∫ r/(1−u'²) dr over piecewise-
/// linear profiles with u(0) = 0, u(R) = M, slopes boxed to |s| ≤ 1−δ, by
/// projected gradient descent with backtracking line search (step halving
/// from 0.1). Projection onto box ∩ hyperplane is exact (clamped shift, the
/// multiplier found by bisection).
///
/// Entirely independent of the extremal module: used as the minimality
/// oracle for the closed-form radial solution.
pub fn direct_minimize<T: Real>(
    boundary: &BoundaryData<T>,
    n_nodes: usize,
    max_iters: usize,
) -> Result<DirectMinimizeResult<T>> {
    if n_nodes < 32 {
        return Err(Error::DomainError {
            name: "n_nodes",
            value: n_nodes as f64,
        });
    }
    let radius = boundary.radius();
    let height = boundary.height();
    let s_max = T::one() - T::of(tol::SLOPE_INSET);
    if boundary.ratio() > s_max {
        return Err(Error::DomainError {
            name: "M/R",
            value: boundary.ratio().as_f64(),
        });
    }

    let n = n_nodes;
    let dr = radius / T::from_usize(n).unwrap();
    let midpoints: Vec<T> = (0..n)
        .map(|i| (T::from_usize(i).unwrap() + T::of(0.5)) * dr)
        .collect();
    let two_pi = T::of(2.0) * T::pi();

    let energy = |s: &[T]| -> T {
        two_pi
            * neumaier_sum(midpoints.iter().zip(s).map(|(&m, &si)| {
                let w = (T::one() - si) * (T::one() + si);
                m * dr / w
            }))
    };
    let gradient = |s: &[T], g: &mut [T]| {
        for ((gi, &m), &si) in g.iter_mut().zip(&midpoints).zip(s) {
            let w = (T::one() - si) * (T::one() + si);
            *gi = two_pi * m * dr * T::of(2.0) * si / (w * w);
        }
    };
    // exact Euclidean projection onto {Σ s_i dr = M} ∩ [−s_max, s_max]^n
    let target = height / dr;
    let project = |x: &[T], out: &mut [T]| {
        let mut lo = x.iter().fold(T::infinity(), |a, &b| a.min(b)) - s_max - T::one();
        let mut hi = x.iter().fold(T::neg_infinity(), |a, &b| a.max(b)) + s_max + T::one();
        for _ in 0..100 {
            let nu = T::of(0.5) * (lo + hi);
            let total: T = x.iter().map(|&xi| (xi - nu).max(-s_max).min(s_max)).sum();
            if total > target {
                lo = nu;
            } else {
                hi = nu;
            }
        }
        let nu = T::of(0.5) * (lo + hi);
        for (o, &xi) in out.iter_mut().zip(x) {
            *o = (xi - nu).max(-s_max).min(s_max);
        }
    };

    let ratio = boundary.ratio();
    let mut s = vec![T::zero(); n];
    project(&vec![ratio; n], &mut s);
    let mut e = energy(&s);
    let mut trace = vec![e];

    let alpha0 = T::of(0.1);
    let armijo = T::of(1e-4);
    let gtol = T::of(1e-9);
    let mut g = vec![T::zero(); n];
    let mut trial = vec![T::zero(); n];
    let mut shifted = vec![T::zero(); n];
    let mut iterations = 0;
    let mut converged = false;

    while iterations < max_iters {
        iterations += 1;
        gradient(&s, &mut g);
        let mut alpha = alpha0;
        let mut accepted = false;
        loop {
            for i in 0..n {
                shifted[i] = s[i] - alpha * g[i];
            }
            project(&shifted, &mut trial);
            let e_new = energy(&trial);
            let directional: T = g
                .iter()
                .zip(trial.iter().zip(&s))
                .map(|(&gi, (&ti, &si))| gi * (ti - si))
                .sum();
            if e_new <= e + armijo * directional {
                // movement of the accepted step; once it underflows the
                // tolerance no further floating-point progress is possible
                let mapping = trial
                    .iter()
                    .zip(&s)
                    .fold(T::zero(), |a, (&t, &x)| a.max((t - x).abs()));
                s.copy_from_slice(&trial);
                e = e_new;
                trace.push(e);
                accepted = true;
                if mapping <= gtol {
                    converged = true;
                }
                break;
            }
            alpha *= T::of(0.5);
            if alpha < T::of(1e-14) {
                break;
            }
        }
        if converged || !accepted {
            // a dead line search at a non-stationary point cannot improve;
            // the stationarity check below decides whether that is an error
            if !accepted {
                for i in 0..n {
                    shifted[i] = s[i] - alpha0 * g[i];
                }
                project(&shifted, &mut trial);
                let mapping = trial
                    .iter()
                    .zip(&s)
                    .fold(T::zero(), |a, (&t, &x)| a.max((t - x).abs()));
                converged = mapping <= T::of(1e-6);
            }
            break;
        }
    }

    if !converged {
        return Err(Error::NonConvergence { iters: max_iters });
    }

    let mut node_radii = Vec::with_capacity(n + 1);
    let mut node_heights = Vec::with_capacity(n + 1);
    let mut u = T::zero();
    node_radii.push(T::zero());
    node_heights.push(u);
    for (i, &si) in s.iter().enumerate() {
        u += si * dr;
        node_radii.push(dr * T::from_usize(i + 1).unwrap());
        node_heights.push(u);
    }

    Ok(DirectMinimizeResult {
        node_radii,
        node_heights,
        slopes: s,
        energy: e,
        iterations,
        energy_trace: trace,
    })
}

/// Necessary-condition probe of the maximum principle on a radial profile:
/// true iff the sampled profile is monotone or constant (no strict interior
/// local extremum). Not a proof, a numerical screen.
pub fn max_principle_probe<T: Real>(profile: &RadialProfile<T>) -> bool {
    let n = 2001usize;
    let radius = profile.radius();
    let mut scale = T::zero();
    let values: Vec<T> = (0..n)
        .map(|i| {
            let r = radius * T::from_usize(i).unwrap() / T::from_usize(n - 1).unwrap();
            let v = profile.eval(r);
            scale = scale.max(v.abs());
            v
        })
        .collect();
    let flat_tol = T::of(1e-12) * scale.max(T::one());
    let mut last_sign = 0i8;
    for w in values.windows(2) {
        let d = w[1] - w[0];
        let sign = if d > flat_tol {
            1i8
        } else if d < -flat_tol {
            -1i8
        } else {
            0i8
        };
        if sign != 0 {
            if last_sign != 0 && sign != last_sign {
                return false;
            }
            last_sign = sign;
        }
    }
    true
}
