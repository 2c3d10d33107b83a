//! Points of the extended complex plane and the two metrics used on it.

use std::fmt;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{c, is_finite_c, Real, C};

/// Absolute tolerance used for point comparisons when the caller does not
/// supply one.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A point of the Riemann sphere: a finite complex value or the point at
/// infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpherePoint<T> {
    Finite(C<T>),
    Infinity,
}

/// Euclidean separation of two sphere points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Separation<T> {
    Finite(T),
    /// Exactly one of the points is infinity.
    Infinite,
}

impl<T: Real> Separation<T> {
    /// `true` if this separation is at least `threshold`; infinite
    /// separations exceed every threshold.
    pub fn at_least(self, threshold: T) -> bool {
        match self {
            Separation::Finite(d) => d >= threshold,
            Separation::Infinite => true,
        }
    }

    /// The value as a float, with `Infinite` mapped to `+inf`.
    pub fn value(self) -> T {
        match self {
            Separation::Finite(d) => d,
            Separation::Infinite => T::infinity(),
        }
    }
}

impl<T: Real> SpherePoint<T> {
    pub fn new(re: T, im: T) -> Self {
        Self::from_complex(c(re, im))
    }

    pub fn real(x: T) -> Self {
        Self::from_complex(c(x, T::zero()))
    }

    /// Wraps a complex value; overflowed or NaN values saturate to
    /// `Infinity` so that no non-finite sentinel survives inside `Finite`.
    pub fn from_complex(z: C<T>) -> Self {
        if is_finite_c(z) {
            SpherePoint::Finite(z)
        } else {
            SpherePoint::Infinity
        }
    }

    /// Strict constructor: rejects non-finite input instead of saturating.
    pub fn try_finite(z: C<T>) -> Result<Self> {
        if is_finite_c(z) {
            Ok(SpherePoint::Finite(z))
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }

    pub fn finite(&self) -> Option<C<T>> {
        match *self {
            SpherePoint::Finite(z) => Some(z),
            SpherePoint::Infinity => None,
        }
    }

    /// Equality up to an absolute tolerance on finite points; `Infinity`
    /// only equals itself.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        match (self, other) {
            (SpherePoint::Infinity, SpherePoint::Infinity) => true,
            (SpherePoint::Finite(p), SpherePoint::Finite(q)) => (*p - *q).norm() <= tol,
            _ => false,
        }
    }

    pub fn chordal_distance(&self, other: &Self) -> T {
        chordal_distance(*self, *other)
    }

    pub fn euclid_distance(&self, other: &Self) -> Separation<T> {
        euclid_distance(*self, *other)
    }
}

impl<T: Real> From<C<T>> for SpherePoint<T> {
    fn from(z: C<T>) -> Self {
        Self::from_complex(z)
    }
}

impl<T: Real> fmt::Display for SpherePoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpherePoint::Finite(z) => write!(f, "{}", crate::scalar::format_complex(*z)),
            SpherePoint::Infinity => write!(f, "inf"),
        }
    }
}

/// `sqrt(1 + r^2)` without overflow for large `r`.
#[inline]
fn lift<T: Real>(r: T) -> T {
    T::one().hypot(r)
}

/// Chordal distance between the stereographic images of `p` and `q` on the
/// unit sphere. Ranges over `[0, 2]`.
pub fn chordal_distance<T: Real>(p: SpherePoint<T>, q: SpherePoint<T>) -> T {
    match (p, q) {
        (SpherePoint::Infinity, SpherePoint::Infinity) => T::zero(),
        (SpherePoint::Finite(z), SpherePoint::Infinity) | (SpherePoint::Infinity, SpherePoint::Finite(z)) => {
            T::two() / lift(z.norm())
        }
        (SpherePoint::Finite(z), SpherePoint::Finite(w)) => {
            T::two() * (z - w).norm() / (lift(z.norm()) * lift(w.norm()))
        }
    }
}

/// Euclidean distance `|p - q|`, with a distinct signal when exactly one
/// side is infinity.
pub fn euclid_distance<T: Real>(p: SpherePoint<T>, q: SpherePoint<T>) -> Separation<T> {
    match (p, q) {
        (SpherePoint::Infinity, SpherePoint::Infinity) => Separation::Finite(T::zero()),
        (SpherePoint::Finite(z), SpherePoint::Finite(w)) => Separation::Finite((z - w).norm()),
        _ => Separation::Infinite,
    }
}

// Wire format: `[re, im]` for finite points, the string `"inf"` for infinity.

impl<T: Real> Serialize for SpherePoint<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SpherePoint::Finite(z) => {
                let mut t = serializer.serialize_tuple(2)?;
                t.serialize_element(&z.re)?;
                t.serialize_element(&z.im)?;
                t.end()
            }
            SpherePoint::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de, T: Real> Deserialize<'de> for SpherePoint<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PointVisitor<T>(std::marker::PhantomData<T>);

        impl<'de, T: Real> Visitor<'de> for PointVisitor<T> {
            type Value = SpherePoint<T>;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a [re, im] pair or the string \"inf\"")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Self::Value, E> {
                if v == "inf" {
                    Ok(SpherePoint::Infinity)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Self::Value, A::Error> {
                let re: T = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let im: T = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                SpherePoint::try_finite(c(re, im)).map_err(de::Error::custom)
            }
        }

        deserializer.deserialize_any(PointVisitor(std::marker::PhantomData))
    }
}
