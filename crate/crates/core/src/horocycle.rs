//! Horocycles at the fixed point of a parabolic map.
//!
//! For `g` parabolic with `c != 0` every horocycle is either the extended
//! line `L∞` through `a/c`, `-d/c` and `∞`, or a circle tangent to `L∞` at
//! `α` whose centre lies on the perpendicular bisector `ℓ` of
//! `[-d/c, a/c]`. The conjugator `h` flattens each circle to a horizontal
//! line `Im w = const`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mobius::{MobiusMap, NormalForm};
use crate::scalar::{c, Real, C};
use crate::sphere::{SpherePoint, DEFAULT_TOL};

/// Tolerance on `|Im h(z)|` below which `z` is taken to lie on `L∞`.
pub const LINE_TOL: f64 = 1e-12;
/// Half-width, in radians, of the window around `α` skipped when sampling a
/// circle.
pub const ALPHA_WINDOW: f64 = 1e-6;

/// Two circles closer than this in centre and radius are the same horocycle.
pub const EQUALITY_TOL: f64 = 1e-9;

/// The line `ℓ = { z : |z + d/c| = |z - a/c| }` of horocycle centres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CenterLine<T> {
    pub anchor: C<T>,
    /// Unit vector along `ℓ`; `+i` when `[-d/c, a/c]` is real.
    pub direction: C<T>,
}

impl<T: Real> CenterLine<T> {
    pub fn point(&self, t: T) -> C<T> {
        self.anchor + self.direction * t
    }

    /// Perpendicular distance from `z` to the line.
    pub fn distance(&self, z: C<T>) -> T {
        ((z - self.anchor) * self.direction.conj()).im.abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle<T> {
    pub center: C<T>,
    pub radius: T,
}

impl<T: Real> Circle<T> {
    pub fn point_at(&self, theta: T) -> C<T> {
        self.center + C::from_polar(self.radius, theta)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        let tol = T::tol(EQUALITY_TOL);
        (self.center - other.center).norm() < tol && (self.radius - other.radius).abs() < tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Horocycle<T> {
    /// `L∞`, stored as a point and a unit direction.
    ExtendedLine {
        anchor: C<T>,
        direction: C<T>,
    },
    Circle(Circle<T>),
}

impl<T: Real> Horocycle<T> {
    /// Distance from `z` to the horocycle. Infinity lies on `L∞` and is
    /// infinitely far from every circle.
    pub fn residual(&self, z: SpherePoint<T>) -> T {
        match (self, z) {
            (Horocycle::ExtendedLine { .. }, SpherePoint::Infinity) => T::zero(),
            (Horocycle::ExtendedLine { anchor, direction }, SpherePoint::Finite(z)) => {
                ((z - *anchor) * direction.conj()).im.abs()
            }
            (Horocycle::Circle(_), SpherePoint::Infinity) => T::infinity(),
            (Horocycle::Circle(k), SpherePoint::Finite(z)) => ((z - k.center).norm() - k.radius).abs(),
        }
    }

    pub fn contains(&self, z: SpherePoint<T>, tol: T) -> bool {
        self.residual(z) <= tol
    }

    pub fn as_circle(&self) -> Option<&Circle<T>> {
        match self {
            Horocycle::Circle(k) => Some(k),
            Horocycle::ExtendedLine { .. } => None,
        }
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        let tol = T::tol(EQUALITY_TOL);
        match (self, other) {
            (Horocycle::Circle(p), Horocycle::Circle(q)) => p.approx_eq(q),
            (
                Horocycle::ExtendedLine {
                    anchor: a1,
                    direction: d1,
                },
                Horocycle::ExtendedLine {
                    anchor: a2,
                    direction: d2,
                },
            ) => {
                // same line: parallel directions, second anchor on the first line
                (d1 * d2.conj()).im.abs() < tol && ((a2 - a1) * d1.conj()).im.abs() < tol
            }
            _ => false,
        }
    }
}

fn parabolic_normal_form<T: Real>(g: &MobiusMap<T>) -> Result<NormalForm<T>> {
    g.normal_form()
}

pub fn center_line<T: Real>(g: &MobiusMap<T>) -> Result<CenterLine<T>> {
    let nf = parabolic_normal_form(g)?;
    let v = g.trace() / g.c();
    let mut direction = c(T::zero(), T::one()) * v / v.norm();
    if direction.im < T::zero() || (direction.im == T::zero() && direction.re < T::zero()) {
        direction = -direction;
    }
    Ok(CenterLine {
        anchor: nf.alpha,
        direction,
    })
}

/// `L∞` as a horocycle.
pub fn extended_line<T: Real>(g: &MobiusMap<T>) -> Result<Horocycle<T>> {
    let nf = parabolic_normal_form(g)?;
    let v = g.trace() / g.c();
    Ok(Horocycle::ExtendedLine {
        anchor: nf.alpha,
        direction: v / v.norm(),
    })
}

/// The horocycle through `z`.
pub fn horocycle_through<T: Real>(g: &MobiusMap<T>, z: SpherePoint<T>) -> Result<Horocycle<T>> {
    horocycle_through_tol(g, z, T::tol(LINE_TOL))
}

pub fn horocycle_through_tol<T: Real>(g: &MobiusMap<T>, z: SpherePoint<T>, line_tol: T) -> Result<Horocycle<T>> {
    let nf = parabolic_normal_form(g)?;
    let w = match nf.to_normal(z) {
        SpherePoint::Infinity => return Err(Error::FixedPointInput),
        SpherePoint::Finite(w) => w,
    };
    if w.im.abs() <= line_tol {
        return extended_line(g);
    }
    // Im w = 1/(2c(p - α)i)  =>  p = α - i/(2c·Im w)
    let center = nf.alpha - c(T::zero(), T::one()) / (nf.c * (T::two() * w.im));
    Ok(Horocycle::Circle(Circle {
        center,
        radius: (center - nf.alpha).norm(),
    }))
}

/// The horocycle centred at the point of `ℓ` at parameter `t`.
pub fn horocycle_at<T: Real>(g: &MobiusMap<T>, t: T) -> Result<Horocycle<T>> {
    let line = center_line(g)?;
    if t == T::zero() {
        return extended_line(g);
    }
    Ok(Horocycle::Circle(Circle {
        center: line.point(t),
        radius: t.abs(),
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvarianceReport<T> {
    pub samples: usize,
    /// Largest distance of `g(z)` or `g⁻¹(z)` from the horocycle.
    pub max_residual: T,
}

/// Sample points of a horocycle: equi-angular on a circle (skipping a small
/// window around `alpha`), and a tangent-spaced grid plus infinity on a line.
pub fn sample_points<T: Real>(hc: &Horocycle<T>, alpha: Option<C<T>>, samples: usize) -> Vec<SpherePoint<T>> {
    match hc {
        Horocycle::Circle(k) => {
            let base = alpha.map(|a| (a - k.center).arg()).unwrap_or_else(T::zero);
            let window = T::lit(ALPHA_WINDOW);
            let span = T::TAU() - T::two() * window;
            let denom = T::from_usize(samples.saturating_sub(1).max(1)).unwrap();
            (0..samples)
                .map(|j| {
                    let theta = base + window + span * T::from_usize(j).unwrap() / denom;
                    SpherePoint::Finite(k.point_at(theta))
                })
                .collect()
        }
        Horocycle::ExtendedLine { anchor, direction } => {
            let n = T::from_usize(samples.max(1)).unwrap();
            let mut pts: Vec<_> = (0..samples.saturating_sub(1))
                .map(|j| {
                    let u = -T::FRAC_PI_2() + T::PI() * (T::from_usize(j).unwrap() + T::half()) / n;
                    SpherePoint::from_complex(*anchor + *direction * u.tan())
                })
                .collect();
            if samples > 0 {
                pts.push(SpherePoint::Infinity);
            }
            pts
        }
    }
}

pub fn check_invariance<T: Real>(g: &MobiusMap<T>, hc: &Horocycle<T>, samples: usize) -> InvarianceReport<T> {
    let alpha = g.fixed_point().ok().and_then(|p| p.finite());
    let inv = g.inverse();
    let max_residual = sample_points(hc, alpha, samples)
        .into_iter()
        .map(|z| hc.residual(g.apply(z)).max(hc.residual(inv.apply(z))))
        .fold(T::zero(), T::max);
    InvarianceReport { samples, max_residual }
}

/// Angle of `z - p` lifted into the open window
/// `(Arg(α - p), Arg(α - p) + 2π)`.
pub fn argument_of<T: Real>(z: C<T>, p: C<T>, alpha: C<T>) -> Result<T> {
    if (z - alpha).norm() <= T::tol(DEFAULT_TOL) {
        return Err(Error::FixedPointInput);
    }
    let base = (alpha - p).arg();
    let mut theta = (z - p).arg();
    while theta <= base {
        theta = theta + T::TAU();
    }
    while theta >= base + T::TAU() {
        theta = theta - T::TAU();
    }
    Ok(theta)
}

/// Arguments of points on one horocycle circle, measured in the window
/// that starts at `α`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcOrdering<T> {
    pub base: T,
    pub angles: Vec<T>,
}

impl<T: Real> ArcOrdering<T> {
    pub fn new(p: C<T>, alpha: C<T>, points: &[C<T>]) -> Result<Self> {
        let angles = points
            .iter()
            .map(|z| argument_of(*z, p, alpha))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            base: (alpha - p).arg(),
            angles,
        })
    }

    /// `Some(Less)` if strictly increasing, `Some(Greater)` if strictly
    /// decreasing, `None` otherwise.
    pub fn monotonicity(&self) -> Option<Ordering> {
        let cmp = |o: Ordering| self.angles.windows(2).all(|w| w[0].partial_cmp(&w[1]) == Some(o));
        if cmp(Ordering::Less) {
            Some(Ordering::Less)
        } else if cmp(Ordering::Greater) {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

/// Second intersection of `ℓ` with the circle, `2p - α`.
pub fn diametral_point<T: Real>(g: &MobiusMap<T>, circle: &Circle<T>) -> Result<C<T>> {
    let nf = parabolic_normal_form(g)?;
    Ok(circle.center * T::two() - nf.alpha)
}

/// Residuals of the algebraic facts behind horocycle invariance. Each
/// function takes a parabolic `g` with `c != 0` and a point `p` that should
/// lie on `ℓ`; a residual near zero confirms the identity.
pub mod identities {
    use super::*;

    /// `(a, c, d, α)`.
    type Parts<T> = (C<T>, C<T>, C<T>, C<T>);

    fn parts<T: Real>(g: &MobiusMap<T>) -> Result<Parts<T>> {
        let nf = g.normal_form()?;
        Ok((g.a(), g.c(), g.d(), nf.alpha))
    }

    /// `|conj(cp - a) + (cp + d)|`.
    pub fn conjugate<T: Real>(g: &MobiusMap<T>, p: C<T>) -> Result<T> {
        let (a, cc, d, _) = parts(g)?;
        Ok(((cc * p - a).conj() + (cc * p + d)).norm())
    }

    /// `|Re c(p - α)|`.
    pub fn purely_imaginary<T: Real>(g: &MobiusMap<T>, p: C<T>) -> Result<T> {
        let (_, cc, _, alpha) = parts(g)?;
        Ok((cc * (p - alpha)).re.abs())
    }

    /// `|d/c + conj(cp - a)/c + p|`.
    pub fn center_shift<T: Real>(g: &MobiusMap<T>, p: C<T>) -> Result<T> {
        let (a, cc, d, _) = parts(g)?;
        Ok((d / cc + (cc * p - a).conj() / cc + p).norm())
    }

    /// `| |cp - a|² - |c(p - α)|² - 1 |`.
    pub fn pythagorean<T: Real>(g: &MobiusMap<T>, p: C<T>) -> Result<T> {
        let (a, cc, _, alpha) = parts(g)?;
        Ok(((cc * p - a).norm_sqr() - (cc * (p - alpha)).norm_sqr() - T::one()).abs())
    }

    /// `| |p + d/c| - |p - a/c| |`: distance from the defining equation of `ℓ`.
    pub fn on_center_line<T: Real>(g: &MobiusMap<T>, p: C<T>) -> Result<T> {
        let (a, cc, d, _) = parts(g)?;
        Ok(((p + d / cc).norm() - (p - a / cc).norm()).abs())
    }

    /// The circle `{ z : |1/z + A| = |B| }` for `|A| != |B|`: centre
    /// `-conj(A)/(|A|² - |B|²)`, radius `|B| / ||A|² - |B|²|`.
    pub fn reciprocal_circle<T: Real>(a: C<T>, b: C<T>) -> Result<Circle<T>> {
        let k = a.norm_sqr() - b.norm_sqr();
        if k.abs() <= T::epsilon() * (a.norm_sqr() + b.norm_sqr()) {
            return Err(Error::EqualModuli);
        }
        Ok(Circle {
            center: -a.conj() / k,
            radius: b.norm() / k.abs(),
        })
    }
}
