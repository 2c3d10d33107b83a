//! Parabolic Möbius dynamics on the extended complex plane and the extended
//! real line, together with constructive pseudo-orbit witnesses showing that
//! the difference equation `b_{n+1} = g(b_n)` has no Hyers-Ulam stability
//! when `g` is parabolic.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the `*64` aliases
//! below fix the scalar to `f64`.

// `!(x >= y)` rejects NaN along with small values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod horocycle;
pub mod mobius;
pub mod orbit;
pub mod realline;
pub mod scalar;
pub mod sphere;
pub mod stability;

pub use error::{Error, Result};
pub use horocycle::{ArcOrdering, CenterLine, Circle, Horocycle, InvarianceReport};
pub use mobius::{MapClass, MobiusMap, NormalForm, PointMap};
pub use orbit::Orbit;
pub use realline::{IntervalLabel, RealMobiusMap};
pub use scalar::{Real, Sign};
pub use sphere::{chordal_distance, euclid_distance, Separation, SpherePoint};
pub use stability::{Conclusion, PseudoOrbit, StabilityVerdict};

pub type SpherePoint64 = SpherePoint<f64>;
pub type MobiusMap64 = MobiusMap<f64>;
pub type NormalForm64 = NormalForm<f64>;
pub type Horocycle64 = Horocycle<f64>;
pub type Orbit64 = Orbit<f64>;
pub type RealMobiusMap64 = RealMobiusMap<f64>;
pub type PseudoOrbit64 = PseudoOrbit<f64>;
pub type StabilityVerdict64 = StabilityVerdict<f64>;

pub type SpherePoint32 = SpherePoint<f32>;
pub type MobiusMap32 = MobiusMap<f32>;
pub type RealMobiusMap32 = RealMobiusMap<f32>;

/// Complex number over `f64`.
pub type Complex64 = num_complex::Complex<f64>;
