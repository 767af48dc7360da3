//! Lorentzian vector algebra on ℝ³ with metric dx² + dy² − dz².
//!
//! The z-axis plays the time role; the timelike orientation is fixed by
//! e₃ = (0,0,1). Spacelike graphs z = u(x,y) have |Du| < 1, a future-oriented
//! timelike unit normal, and a hyperbolic angle θ against e₃ with
//! cosh θ = 1/√(1−|Du|²).

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tol;

/// Vector in Lorentz–Minkowski 3-space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3L<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

/// Causal character of a vector, by the sign of ⟨v,v⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalType {
    Spacelike,
    Timelike,
    Lightlike,
}

impl<T: Real> Vec3L<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Vec3L { x, y, z }
    }

    /// The reference future timelike direction e₃ = (0,0,1).
    pub fn e3() -> Self {
        Vec3L::new(T::zero(), T::zero(), T::one())
    }

    /// Lorentzian inner product ⟨v,w⟩ = v_x w_x + v_y w_y − v_z w_z.
    pub fn inner(&self, other: &Self) -> T {
        self.x * other.x + self.y * other.y - self.z * other.z
    }

    /// Modulus |v| = √|⟨v,v⟩|.
    pub fn modulus(&self) -> T {
        self.inner(self).abs().sqrt()
    }

    /// Causal classification against the lightlike tolerance.
    pub fn classify(&self) -> CausalType {
        let q = self.inner(self);
        let tau = T::of(tol::LIGHTLIKE_TOL);
        if q > tau {
            CausalType::Spacelike
        } else if q < -tau {
            CausalType::Timelike
        } else {
            CausalType::Lightlike
        }
    }

    /// True when timelike and in the same timelike cone as e₃ (⟨v,e₃⟩ < 0).
    pub fn is_future_timelike(&self) -> bool {
        self.classify() == CausalType::Timelike && self.inner(&Self::e3()) < T::zero()
    }

    pub fn scale(&self, c: T) -> Self {
        Vec3L::new(self.x * c, self.y * c, self.z * c)
    }

    pub fn add(&self, other: &Self) -> Self {
        Vec3L::new(self.x + other.x, self.y + other.y, self.z + other.z)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Vec3L::new(self.x - other.x, self.y - other.y, self.z - other.z)
    }
}

/// Gradient of a graph function, a Euclidean 2-vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grad2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Real> Grad2<T> {
    pub fn new(x: T, y: T) -> Self {
        Grad2 { x, y }
    }

    pub fn zero() -> Self {
        Grad2::new(T::zero(), T::zero())
    }

    pub fn norm_sq(&self) -> T {
        self.x * self.x + self.y * self.y
    }

    pub fn norm(&self) -> T {
        self.norm_sq().sqrt()
    }

    /// Spacelike admissibility |Du| < 1.
    pub fn is_spacelike(&self) -> bool {
        self.norm_sq() < T::one()
    }

    fn require_spacelike(&self) -> Result<()> {
        if self.is_spacelike() {
            Ok(())
        } else {
            Err(Error::NotSpacelike {
                grad_norm_sq: self.norm_sq().as_f64(),
            })
        }
    }
}

/// Pointwise data of a spacelike graph: unit normal and hyperbolic angle.
#[derive(Debug, Clone, Copy)]
pub struct GraphPointData<T> {
    pub gradient: Grad2<T>,
    /// Future-oriented timelike unit normal N = (Du, 1)/√(1−|Du|²).
    pub normal: Vec3L<T>,
    /// cosh θ = 1/√(1−|Du|²) = −⟨e₃, N⟩ ≥ 1.
    pub cosh_theta: T,
}

/// Normal and hyperbolic angle of the graph point with gradient `du`.
pub fn graph_point<T: Real>(du: Grad2<T>) -> Result<GraphPointData<T>> {
    du.require_spacelike()?;
    let s = (T::one() - du.norm_sq()).sqrt();
    Ok(GraphPointData {
        gradient: du,
        normal: Vec3L::new(du.x / s, du.y / s, T::one() / s),
        cosh_theta: T::one() / s,
    })
}

/// Final velocity of a unit-mass particle with incident velocity v_i = e₃
/// after one collision: the tangential component is kept, the normal one
/// flips, giving v_f = e₃ − 2 cosh θ · N = (−2Du, −(1+|Du|²)) / (1−|Du|²).
pub fn reflect_particle<T: Real>(du: Grad2<T>) -> Result<Vec3L<T>> {
    du.require_spacelike()?;
    let d2 = du.norm_sq();
    let denom = T::one() - d2;
    let two = T::of(2.0);
    Ok(Vec3L::new(
        -two * du.x / denom,
        -two * du.y / denom,
        -(T::one() + d2) / denom,
    ))
}

/// Momentum transferred to the body by one collision, ⟨v_f − v_i, v_i⟩.
/// Equals 2 cosh²θ = 2/(1−|Du|²) — the hyperbolic cosine-squared law.
pub fn resistance_density<T: Real>(du: Grad2<T>) -> Result<T> {
    du.require_spacelike()?;
    Ok(T::of(2.0) / (T::one() - du.norm_sq()))
}

/// Orthonormal frame (T, N) at a graph point with Du ≠ 0: N the future unit
/// normal, T the spacelike unit tangent in the span of {e_x, e₃}, so that
/// e₃ = −sinh θ T + cosh θ N.
pub fn graph_frame<T: Real>(du: Grad2<T>) -> Result<(Vec3L<T>, Vec3L<T>)> {
    du.require_spacelike()?;
    let d = du.norm();
    if d == T::zero() {
        return Err(Error::ZeroGradient);
    }
    let s = (T::one() - du.norm_sq()).sqrt();
    let tangent = Vec3L::new(du.x / (d * s), du.y / (d * s), d / s);
    let normal = Vec3L::new(du.x / s, du.y / s, T::one() / s);
    Ok((tangent, normal))
}
