//! Two-dimensional graph functions u(x, y) and the domains they live on.

use std::sync::Arc;

use crate::lorentz::Grad2;
use crate::profile::RadialProfile;
use crate::scalar::Real;

/// A C¹ graph function on (a subset of) the plane.
pub trait Field2<T: Real> {
    fn value(&self, x: T, y: T) -> T;

    fn grad(&self, x: T, y: T) -> Grad2<T>;

    /// |Du|², overridable where a cheaper/cleaner form exists (radial
    /// profiles: u'(r)², well-defined even at the axis).
    fn grad_norm_sq(&self, x: T, y: T) -> T {
        self.grad(x, y).norm_sq()
    }
}

/// Radial profiles are fields via u(x, y) = u(√(x²+y²)).
impl<T: Real> Field2<T> for RadialProfile<T> {
    fn value(&self, x: T, y: T) -> T {
        self.eval((x * x + y * y).sqrt())
    }

    fn grad(&self, x: T, y: T) -> Grad2<T> {
        let r = (x * x + y * y).sqrt();
        if r == T::zero() {
            // direction undefined at the axis; the magnitude u'(0) is what
            // matters and is reported along +x
            return Grad2::new(self.deriv(T::zero()), T::zero());
        }
        let s = self.deriv(r);
        Grad2::new(s * x / r, s * y / r)
    }

    fn grad_norm_sq(&self, x: T, y: T) -> T {
        let s = self.deriv((x * x + y * y).sqrt());
        s * s
    }
}

/// Plane u = ax + by + c; stationary whenever a² + b² < 1.
#[derive(Debug, Clone, Copy)]
pub struct PlaneField<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Real> Field2<T> for PlaneField<T> {
    fn value(&self, x: T, y: T) -> T {
        self.a * x + self.b * y + self.c
    }

    fn grad(&self, _x: T, _y: T) -> Grad2<T> {
        Grad2::new(self.a, self.b)
    }
}

/// Field backed by closures (value, gradient).
#[derive(Clone)]
pub struct ClosureField<T> {
    pub value: Arc<dyn Fn(T, T) -> T + Send + Sync>,
    pub grad: Arc<dyn Fn(T, T) -> Grad2<T> + Send + Sync>,
}

impl<T: Real> ClosureField<T> {
    pub fn new(
        value: impl Fn(T, T) -> T + Send + Sync + 'static,
        grad: impl Fn(T, T) -> Grad2<T> + Send + Sync + 'static,
    ) -> Self {
        ClosureField {
            value: Arc::new(value),
            grad: Arc::new(grad),
        }
    }
}

impl<T: Real> Field2<T> for ClosureField<T> {
    fn value(&self, x: T, y: T) -> T {
        (self.value)(x, y)
    }

    fn grad(&self, x: T, y: T) -> Grad2<T> {
        (self.grad)(x, y)
    }
}

/// Integration / probing domain.
#[derive(Debug, Clone, Copy)]
pub enum Domain2<T> {
    Rectangle {
        x0: T,
        x1: T,
        y0: T,
        y1: T,
    },
    /// Disk of the given radius centered at the origin.
    Disk {
        radius: T,
    },
}

impl<T: Real> Domain2<T> {
    pub fn unit_disk() -> Self {
        Domain2::Disk { radius: T::one() }
    }

    pub fn contains(&self, x: T, y: T) -> bool {
        match *self {
            Domain2::Rectangle { x0, x1, y0, y1 } => x >= x0 && x <= x1 && y >= y0 && y <= y1,
            Domain2::Disk { radius } => x * x + y * y <= radius * radius,
        }
    }

    pub fn diameter(&self) -> T {
        match *self {
            Domain2::Rectangle { x0, x1, y0, y1 } => {
                let dx = x1 - x0;
                let dy = y1 - y0;
                (dx * dx + dy * dy).sqrt()
            }
            Domain2::Disk { radius } => T::of(2.0) * radius,
        }
    }

    pub fn x_range(&self) -> (T, T) {
        match *self {
            Domain2::Rectangle { x0, x1, .. } => (x0, x1),
            Domain2::Disk { radius } => (-radius, radius),
        }
    }

    /// Vertical section {y : (x, y) ∈ Ω}; empty sections at disk edges
    /// degenerate to a point.
    pub fn y_section(&self, x: T) -> (T, T) {
        match *self {
            Domain2::Rectangle { y0, y1, .. } => (y0, y1),
            Domain2::Disk { radius } => {
                let s = (radius * radius - x * x).max(T::zero()).sqrt();
                (-s, s)
            }
        }
    }
}
