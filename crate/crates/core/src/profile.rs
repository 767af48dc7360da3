//! Canonical radial height functions u(r) on [0, R].
//!
//! All §-2-style examples are surfaces of revolution with u(R) = 0: the flat
//! disk, the hyperbolic cap, the spacelike cone; plus the divergent truncated
//! sequences (cone and cap glued to a flat annulus) and the radial extremal.
//! Profiles evaluate on all of [0, ∞) via their natural extension so that
//! dilation and shock probes can leave the nominal disk.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal::ParametricExtremal;
use crate::scalar::Real;

/// Boundary data (R, M) with 0 < M < R.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryData<T> {
    radius: T,
    height: T,
}

impl<T: Real> BoundaryData<T> {
    pub fn new(radius: T, height: T) -> Result<Self> {
        if !(radius > T::zero() && height > T::zero() && height < radius) {
            return Err(Error::BadBoundaryData {
                radius: radius.as_f64(),
                height: height.as_f64(),
            });
        }
        Ok(BoundaryData { radius, height })
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    pub fn height(&self) -> T {
        self.height
    }

    /// M/R ∈ (0, 1).
    pub fn ratio(&self) -> T {
        self.height / self.radius
    }
}

/// User-supplied profile, for test inputs that are none of the canonical
/// kinds (e.g. a sine bump).
#[derive(Clone)]
pub struct CustomProfile<T> {
    pub eval: Arc<dyn Fn(T) -> T + Send + Sync>,
    pub deriv: Arc<dyn Fn(T) -> T + Send + Sync>,
}

impl<T> fmt::Debug for CustomProfile<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("CustomProfile")
    }
}

/// What the profile is, with its defining parameters.
#[derive(Debug, Clone)]
pub enum ProfileKind<T> {
    /// u ≡ 0.
    Flat,
    /// u(r) = −√(ρ²+R²) + √(ρ²+r²).
    HyperbolicCap {
        rho: T,
    },
    /// u(r) = λ(r − R), 0 < λ < 1.
    Cone {
        slope: T,
    },
    /// (M/a)·r up to the knee a = M + (R−M)/n, then ≡ M.
    TruncatedCone {
        height: T,
        knee: T,
        n: u32,
    },
    /// −ρ + √(ρ²+r²) up to the knee a (with ρ = (a²−M²)/(2M)), then ≡ M.
    TruncatedCap {
        height: T,
        rho: T,
        knee: T,
        n: u32,
    },
    /// The radial extremal through (R, M); u(0) = 0, u(R) = M.
    Extremal(ParametricExtremal<T>),
    Custom(CustomProfile<T>),
}

impl<T> ProfileKind<T> {
    pub fn name(&self) -> &'static str {
        match self {
            ProfileKind::Flat => "flat",
            ProfileKind::HyperbolicCap { .. } => "hyperbolic_cap",
            ProfileKind::Cone { .. } => "cone",
            ProfileKind::TruncatedCone { .. } => "truncated_cone",
            ProfileKind::TruncatedCap { .. } => "truncated_cap",
            ProfileKind::Extremal(_) => "extremal",
            ProfileKind::Custom(_) => "custom",
        }
    }
}

/// A radial height function with derivative access, recorded kink radii, and
/// spacelike certification.
#[derive(Debug, Clone)]
pub struct RadialProfile<T> {
    radius: T,
    kind: ProfileKind<T>,
    /// Interior radii where u' jumps; quadrature splits here.
    kinks: Vec<T>,
}

impl<T: Real> RadialProfile<T> {
    fn positive(name: &'static str, value: T) -> Result<T> {
        if value > T::zero() {
            Ok(value)
        } else {
            Err(Error::DomainError {
                name,
                value: value.as_f64(),
            })
        }
    }

    /// Horizontal disk u ≡ 0 on [0, R].
    pub fn flat(radius: T) -> Result<Self> {
        Self::positive("R", radius)?;
        Ok(RadialProfile {
            radius,
            kind: ProfileKind::Flat,
            kinks: Vec::new(),
        })
    }

    /// Hyperbolic cap of radius ρ over the disk of radius R; u(R) = 0 and
    /// u'(r) = r/√(ρ²+r²) < 1 everywhere.
    pub fn hyperbolic_cap(radius: T, rho: T) -> Result<Self> {
        Self::positive("R", radius)?;
        Self::positive("rho", rho)?;
        Ok(RadialProfile {
            radius,
            kind: ProfileKind::HyperbolicCap { rho },
            kinks: Vec::new(),
        })
    }

    /// Spacelike cone u(r) = λ(r − R); λ must lie in (0, 1), the lightlike
    /// cone λ = 1 is excluded.
    pub fn cone(radius: T, slope: T) -> Result<Self> {
        Self::positive("R", radius)?;
        if !(slope > T::zero() && slope < T::one()) {
            return Err(Error::SlopeOutOfRange {
                slope: slope.as_f64(),
            });
        }
        Ok(RadialProfile {
            radius,
            kind: ProfileKind::Cone { slope },
            kinks: Vec::new(),
        })
    }

    /// n-th truncated cone of the divergent sequence: slope M/a_n up to
    /// a_n = M + (R−M)/n, flat at height M beyond. Tends to the lightlike
    /// cone as n → ∞.
    pub fn truncated_cone(radius: T, height: T, n: u32) -> Result<Self> {
        let boundary = BoundaryData::new(radius, height)?;
        if n < 1 {
            return Err(Error::DomainError {
                name: "n",
                value: n as f64,
            });
        }
        let knee = height + (radius - height) / T::from_u32(n).unwrap();
        let kinks = if knee < radius {
            vec![knee]
        } else {
            Vec::new()
        };
        Ok(RadialProfile {
            radius,
            kind: ProfileKind::TruncatedCone {
                height: boundary.height(),
                knee,
                n,
            },
            kinks,
        })
    }

    /// n-th truncated hyperbolic cap of the divergent sequence:
    /// ρ_n = (a_n²−M²)/(2M) makes u(a_n) = M exact, flat beyond the knee.
    pub fn truncated_cap(radius: T, height: T, n: u32) -> Result<Self> {
        let boundary = BoundaryData::new(radius, height)?;
        if n < 1 {
            return Err(Error::DomainError {
                name: "n",
                value: n as f64,
            });
        }
        let knee = height + (radius - height) / T::from_u32(n).unwrap();
        let rho = (knee * knee - height * height) / (T::of(2.0) * height);
        let kinks = if knee < radius {
            vec![knee]
        } else {
            Vec::new()
        };
        Ok(RadialProfile {
            radius,
            kind: ProfileKind::TruncatedCap {
                height: boundary.height(),
                rho,
                knee,
                n,
            },
            kinks,
        })
    }

    /// Profile from user closures; `kinks` are interior radii where u' jumps.
    pub fn custom(
        radius: T,
        eval: Arc<dyn Fn(T) -> T + Send + Sync>,
        deriv: Arc<dyn Fn(T) -> T + Send + Sync>,
        kinks: Vec<T>,
    ) -> Result<Self> {
        Self::positive("R", radius)?;
        Ok(RadialProfile {
            radius,
            kind: ProfileKind::Custom(CustomProfile { eval, deriv }),
            kinks,
        })
    }

    pub(crate) fn from_kind(radius: T, kind: ProfileKind<T>) -> Self {
        RadialProfile {
            radius,
            kind,
            kinks: Vec::new(),
        }
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    pub fn kind(&self) -> &ProfileKind<T> {
        &self.kind
    }

    /// Interior kink radii in (0, R).
    pub fn kinks(&self) -> &[T] {
        &self.kinks
    }

    /// u(r), extended naturally beyond R.
    pub fn eval(&self, r: T) -> T {
        match &self.kind {
            ProfileKind::Flat => T::zero(),
            ProfileKind::HyperbolicCap { rho } => {
                let rr = *rho * *rho;
                -(rr + self.radius * self.radius).sqrt() + (rr + r * r).sqrt()
            }
            ProfileKind::Cone { slope } => *slope * (r - self.radius),
            ProfileKind::TruncatedCone { height, knee, .. } => {
                if r <= *knee {
                    *height / *knee * r
                } else {
                    *height
                }
            }
            ProfileKind::TruncatedCap {
                height, rho, knee, ..
            } => {
                if r <= *knee {
                    -*rho + (*rho * *rho + r * r).sqrt()
                } else {
                    *height
                }
            }
            ProfileKind::Extremal(e) => e.height_at(r).expect("r >= 0"),
            ProfileKind::Custom(c) => (c.eval)(r),
        }
    }

    /// u'(r). At a kink the left-piece value is returned; quadrature never
    /// evaluates there because intervals split at kinks.
    pub fn deriv(&self, r: T) -> T {
        match &self.kind {
            ProfileKind::Flat => T::zero(),
            ProfileKind::HyperbolicCap { rho } => r / (*rho * *rho + r * r).sqrt(),
            ProfileKind::Cone { slope } => *slope,
            ProfileKind::TruncatedCone { height, knee, .. } => {
                if r <= *knee {
                    *height / *knee
                } else {
                    T::zero()
                }
            }
            ProfileKind::TruncatedCap { rho, knee, .. } => {
                if r <= *knee {
                    r / (*rho * *rho + r * r).sqrt()
                } else {
                    T::zero()
                }
            }
            ProfileKind::Extremal(e) => e.slope_at(r).expect("r >= 0"),
            ProfileKind::Custom(c) => (c.deriv)(r),
        }
    }

    /// Spacelike certificate sup |u'| < 1.
    ///
    /// Kinds with a closed-form supremum use it (cone: λ; cap: R/√(ρ²+R²);
    /// truncated kinds: the knee slope; extremal: u' = p < 1 pointwise).
    /// Custom profiles are sampled on a 10⁴-point grid per smooth piece.
    pub fn is_certified_spacelike(&self) -> bool {
        match &self.kind {
            ProfileKind::Flat => true,
            ProfileKind::HyperbolicCap { rho } => {
                let sup = self.radius / (*rho * *rho + self.radius * self.radius).sqrt();
                sup < T::one()
            }
            ProfileKind::Cone { slope } => *slope < T::one(),
            ProfileKind::TruncatedCone { height, knee, .. } => *height / *knee < T::one(),
            ProfileKind::TruncatedCap { rho, knee, .. } => {
                *knee / (*rho * *rho + *knee * *knee).sqrt() < T::one()
            }
            ProfileKind::Extremal(_) => true,
            ProfileKind::Custom(_) => {
                let pieces = self.smooth_pieces();
                let n = 10_000usize;
                pieces.iter().all(|&(lo, hi)| {
                    (0..n).all(|i| {
                        let t =
                            (T::from_usize(i).unwrap() + T::of(0.5)) / T::from_usize(n).unwrap();
                        let r = lo + (hi - lo) * t;
                        self.deriv(r).abs() < T::one()
                    })
                })
            }
        }
    }

    /// [0, R] split at the recorded kinks.
    pub fn smooth_pieces(&self) -> Vec<(T, T)> {
        let mut edges = vec![T::zero()];
        edges.extend(self.kinks.iter().copied());
        edges.push(self.radius);
        edges.windows(2).map(|w| (w[0], w[1])).collect()
    }

    /// Max |central difference of eval − deriv| over `n` sample radii,
    /// skipping neighborhoods of kinks and of the two endpoints.
    pub fn fd_consistency_max_dev(&self, n: usize) -> T {
        let margin = self.radius * T::of(1e-3);
        let h = self.radius * T::of(1e-5);
        let mut worst = T::zero();
        for i in 0..n {
            let t = (T::from_usize(i).unwrap() + T::of(0.5)) / T::from_usize(n).unwrap();
            let r = margin + (self.radius - T::of(2.0) * margin) * t;
            if self
                .kinks
                .iter()
                .any(|&k| (r - k).abs() < T::of(2.0) * h + margin)
            {
                continue;
            }
            let fd = (self.eval(r + h) - self.eval(r - h)) / (T::of(2.0) * h);
            worst = worst.max((fd - self.deriv(r)).abs());
        }
        worst
    }

    /// Disk specialization of the height bound: |u(r)| < R − r at interior
    /// sample radii. Presumes u(R) = 0 and a spacelike certificate.
    pub fn height_bound_check(&self) -> bool {
        let n = 2000usize;
        (0..n).all(|i| {
            let r = self.radius * T::from_usize(i).unwrap() / T::from_usize(n).unwrap();
            self.eval(r).abs() < self.radius - r
        })
    }

    /// Dilated profile v(r) = c·u(r/c) on [0, cR]; kind-preserving.
    pub fn dilate(&self, c: T) -> Result<Self> {
        Self::positive("c", c)?;
        let radius = c * self.radius;
        match &self.kind {
            ProfileKind::Flat => Self::flat(radius),
            ProfileKind::HyperbolicCap { rho } => Self::hyperbolic_cap(radius, c * *rho),
            ProfileKind::Cone { slope } => Self::cone(radius, *slope),
            ProfileKind::TruncatedCone { height, n, .. } => {
                Self::truncated_cone(radius, c * *height, *n)
            }
            ProfileKind::TruncatedCap { height, n, .. } => {
                Self::truncated_cap(radius, c * *height, *n)
            }
            ProfileKind::Extremal(e) => Ok(e.scaled(c)?.to_profile()),
            ProfileKind::Custom(custom) => {
                let eval = custom.eval.clone();
                let deriv = custom.deriv.clone();
                Self::custom(
                    radius,
                    Arc::new(move |r| c * eval(r / c)),
                    Arc::new(move |r| deriv(r / c)),
                    self.kinks.iter().map(|&k| c * k).collect(),
                )
            }
        }
    }

    /// Serializable description {kind, parameters, R}; `None` for custom
    /// profiles, which have no parameter form.
    pub fn descriptor(&self) -> Option<ProfileDescriptor> {
        let mut parameters = BTreeMap::new();
        let kind = self.kind.name().to_string();
        match &self.kind {
            ProfileKind::Flat => {}
            ProfileKind::HyperbolicCap { rho } => {
                parameters.insert("rho".into(), rho.as_f64());
            }
            ProfileKind::Cone { slope } => {
                parameters.insert("lambda".into(), slope.as_f64());
            }
            ProfileKind::TruncatedCone { height, n, .. } => {
                parameters.insert("M".into(), height.as_f64());
                parameters.insert("n".into(), *n as f64);
            }
            ProfileKind::TruncatedCap { height, n, .. } => {
                parameters.insert("M".into(), height.as_f64());
                parameters.insert("n".into(), *n as f64);
            }
            ProfileKind::Extremal(e) => {
                parameters.insert("M".into(), e.height().as_f64());
                parameters.insert("p_R".into(), e.p_boundary().as_f64());
                parameters.insert("c1".into(), e.c1().as_f64());
            }
            ProfileKind::Custom(_) => return None,
        }
        Some(ProfileDescriptor {
            kind,
            parameters,
            radius: self.radius.as_f64(),
        })
    }
}

/// JSON form of a profile: {"kind": ..., "parameters": {...}, "R": ...}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProfileDescriptor {
    pub kind: String,
    pub parameters: BTreeMap<String, f64>,
    #[serde(rename = "R")]
    pub radius: f64,
}
