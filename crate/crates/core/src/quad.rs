//! Adaptive quadrature on finite intervals.
//!
//! 15-point Gauss–Kronrod rule per interval with interval bisection driven by
//! the local error estimate. Results are deterministic: the final value is a
//! compensated (Neumaier) sum over intervals in left-endpoint order, so it
//! does not depend on the refinement schedule.
//!
//! Integrands return `Result<T>` so that admissibility failures (for example
//! a profile slope grazing the light cone) abort the quadrature cleanly.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadOutcome<T> {
    pub value: T,
    /// Conservative absolute error estimate (sum of per-interval estimates).
    pub abs_error: T,
    /// Number of integrand evaluations.
    pub evaluations: usize,
}

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights. Standard QUADPACK values.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One Gauss–Kronrod application on [a, b]: (value, error estimate, evals).
fn gk15<T: Real, F>(f: &F, a: T, b: T) -> Result<(T, T, usize)>
where
    F: Fn(T) -> Result<T>,
{
    let half = T::of(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);

    let fc = f(center)?;
    let mut kronrod = fc * T::of(WGK[7]);
    let mut gauss = fc * T::of(WG[3]);
    let mut res_abs = kronrod.abs();

    let mut fv = [T::zero(); 14];
    let mut evals = 1;
    for j in 0..7 {
        let abscissa = half_len * T::of(XGK[j]);
        let f1 = f(center - abscissa)?;
        let f2 = f(center + abscissa)?;
        evals += 2;
        fv[2 * j] = f1;
        fv[2 * j + 1] = f2;
        let fsum = f1 + f2;
        kronrod += fsum * T::of(WGK[j]);
        res_abs += (f1.abs() + f2.abs()) * T::of(WGK[j]);
        if j % 2 == 1 {
            gauss += fsum * T::of(WG[j / 2]);
        }
    }

    // QUADPACK-style error rescale: sharper than |K - G| on smooth pieces,
    // still conservative near rough behavior.
    let mean = kronrod * half;
    let mut res_asc = T::of(WGK[7]) * (fc - mean).abs();
    for j in 0..7 {
        res_asc += ((fv[2 * j] - mean).abs() + (fv[2 * j + 1] - mean).abs()) * T::of(WGK[j]);
    }

    let raw = ((kronrod - gauss) * half_len).abs();
    res_asc *= half_len.abs();
    res_abs *= half_len.abs();

    let mut err = raw;
    if res_asc != T::zero() && raw != T::zero() {
        let scale = (T::of(200.0) * raw / res_asc).powf(T::of(1.5));
        err = if scale < T::one() {
            res_asc * scale
        } else {
            res_asc
        };
    }
    let tiny_floor = T::min_positive_value() / (T::of(50.0) * T::epsilon());
    if res_abs > tiny_floor {
        err = err.max(T::of(50.0) * T::epsilon() * res_abs);
    }

    Ok((kronrod * half_len, err, evals))
}

#[derive(Debug, Clone, Copy)]
struct Interval<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

/// Adaptive integration of `f` over [a, b] to absolute tolerance `tol`.
pub fn integrate<T: Real, F>(f: F, a: T, b: T, tol: T) -> Result<QuadOutcome<T>>
where
    F: Fn(T) -> Result<T>,
{
    integrate_split(f, a, b, &[], tol)
}

/// Adaptive integration with mandatory initial splits at `interior_splits`
/// (e.g. kink radii of a piecewise profile). Split points outside (a, b)
/// are ignored; intervals never straddle a split.
pub fn integrate_split<T: Real, F>(
    f: F,
    a: T,
    b: T,
    interior_splits: &[T],
    tol: T,
) -> Result<QuadOutcome<T>>
where
    F: Fn(T) -> Result<T>,
{
    if !(tol > T::zero()) {
        return Err(Error::DomainError {
            name: "tol",
            value: tol.as_f64(),
        });
    }
    if a == b {
        return Ok(QuadOutcome {
            value: T::zero(),
            abs_error: T::zero(),
            evaluations: 0,
        });
    }

    let mut cuts: Vec<T> = interior_splits
        .iter()
        .copied()
        .filter(|&s| s > a && s < b)
        .collect();
    cuts.sort_by(|p, q| p.partial_cmp(q).expect("split points must be finite"));
    cuts.dedup();

    let mut edges = Vec::with_capacity(cuts.len() + 2);
    edges.push(a);
    edges.extend(cuts);
    edges.push(b);

    let mut evaluations = 0;
    let mut work: Vec<Interval<T>> = Vec::new();
    for w in edges.windows(2) {
        let (value, error, n) = gk15(&f, w[0], w[1])?;
        evaluations += n;
        work.push(Interval {
            a: w[0],
            b: w[1],
            value,
            error,
        });
    }

    const MAX_INTERVALS: usize = 20_000;
    loop {
        let total_error: T = work.iter().map(|iv| iv.error).sum();
        if total_error <= tol || work.len() >= MAX_INTERVALS {
            break;
        }
        // worst interval; ties broken by left endpoint for determinism
        let mut worst = 0;
        for (i, iv) in work.iter().enumerate() {
            let cur = &work[worst];
            if iv.error > cur.error || (iv.error == cur.error && iv.a < cur.a) {
                worst = i;
            }
        }
        let iv = work.swap_remove(worst);
        let mid = T::of(0.5) * (iv.a + iv.b);
        if mid <= iv.a || mid >= iv.b {
            // interval no longer representable; keep as is
            work.push(iv);
            break;
        }
        let (v1, e1, n1) = gk15(&f, iv.a, mid)?;
        let (v2, e2, n2) = gk15(&f, mid, iv.b)?;
        evaluations += n1 + n2;
        work.push(Interval {
            a: iv.a,
            b: mid,
            value: v1,
            error: e1,
        });
        work.push(Interval {
            a: mid,
            b: iv.b,
            value: v2,
            error: e2,
        });
    }

    // Deterministic reduction: fixed left-endpoint order, compensated sums.
    work.sort_by(|p, q| p.a.partial_cmp(&q.a).expect("finite endpoints"));
    let value = neumaier_sum(work.iter().map(|iv| iv.value));
    let abs_error = neumaier_sum(work.iter().map(|iv| iv.error));

    if abs_error > tol {
        return Err(Error::ToleranceNotMet {
            requested: tol.as_f64(),
            achieved: abs_error.as_f64(),
        });
    }
    Ok(QuadOutcome {
        value,
        abs_error,
        evaluations,
    })
}

/// Compensated summation (Neumaier variant of Kahan).
pub fn neumaier_sum<T: Real, I: Iterator<Item = T>>(items: I) -> T {
    let mut sum = T::zero();
    let mut comp = T::zero();
    for x in items {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
