//! Real parabolic maps on the extended real line.
//!
//! With `σ = sign((a+d)c)` the three special points are ordered
//! `-d/c < α < a/c` when `σ = +1` and `a/c < α < -d/c` when `σ = -1`.
//! Forward orbits converge to `α` monotonically from the `a/c` side and
//! move away from it on the pole side.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mobius::{MobiusMap, PointMap, IDENTITY_TOL, POLE_TOL, SINGULAR_DET, TRACE_REL_TOL};
use crate::scalar::{c, Real, Sign};
use crate::sphere::SpherePoint;

/// Absolute boundary tolerance for [`RealMobiusMap::locate`], scaled by
/// `max(1, |boundary|)`.
pub const LABEL_TOL: f64 = 1e-12;
pub const ESCAPE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealMobiusMap<T> {
    a: T,
    b: T,
    c: T,
    d: T,
}

/// Position of a point relative to `-d/c`, `α`, `a/c` and `∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntervalLabel {
    // σ = +1, left to right
    BelowPole,
    AtPole,
    PoleToAlpha,
    AtAlpha,
    #[serde(rename = "alpha_to_ac")]
    AlphaToAC,
    #[serde(rename = "at_ac")]
    AtAC,
    #[serde(rename = "above_ac")]
    AboveAC,
    // σ = -1, left to right (AtAC, AtAlpha, AtPole shared)
    #[serde(rename = "below_ac")]
    BelowAC,
    #[serde(rename = "ac_to_alpha")]
    ACToAlpha,
    AlphaToPole,
    AbovePole,
    Infinity,
}

impl fmt::Display for IntervalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl IntervalLabel {
    /// An open interval together with its endpoint labels.
    fn closure(self, sigma: Sign) -> Vec<IntervalLabel> {
        use IntervalLabel::*;
        let line = match sigma {
            Sign::Plus => [BelowPole, AtPole, PoleToAlpha, AtAlpha, AlphaToAC, AtAC, AboveAC],
            Sign::Minus => [BelowAC, AtAC, ACToAlpha, AtAlpha, AlphaToPole, AtPole, AbovePole],
        };
        match line.iter().position(|l| *l == self) {
            Some(0) => vec![Infinity, line[0], line[1]],
            Some(6) => vec![line[5], line[6], Infinity],
            Some(i) if i % 2 == 0 => vec![line[i - 1], line[i], line[i + 1]],
            _ => vec![self],
        }
    }
}

/// Residuals of the three auxiliary identities of a real parabolic map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuxIdentities<T> {
    /// `|(a+d)/2 - 2/(a+d)|`
    pub half_trace: T,
    /// `|cα + d - (a+d)/2|`
    pub shifted_pole: T,
    /// `|α - a/c + 2/(c(a+d))|`
    pub alpha_formula: T,
}

impl<T: Real> AuxIdentities<T> {
    pub fn max(&self) -> T {
        self.half_trace.max(self.shifted_pole).max(self.alpha_formula)
    }
}

/// A monotone forward orbit `x_0, ..., x_N` and the sign of `g(x) - x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotoneOrbit<T> {
    pub points: Vec<T>,
    pub direction: Sign,
}

impl<T: Real> RealMobiusMap<T> {
    /// Scales by `1/sqrt(ad - bc)`; a negative determinant cannot be
    /// normalized over the reals.
    pub fn new(a: T, b: T, c_: T, d: T) -> Result<Self> {
        let det = a * d - b * c_;
        if !(det.abs() >= T::tol(SINGULAR_DET)) {
            return Err(Error::SingularMatrix {
                det: det.abs().as_f64(),
            });
        }
        if det < T::zero() {
            return Err(Error::NegativeDeterminant { det: det.as_f64() });
        }
        let k = det.sqrt().recip();
        Ok(Self {
            a: a * k,
            b: b * k,
            c: c_ * k,
            d: d * k,
        })
    }

    /// Parabolic map with fixed point `alpha`, coefficient `c != 0` and
    /// trace `2s`.
    pub fn parabolic_from_fixed_point(alpha: T, c_: T, s: Sign) -> Result<Self> {
        let s = s.value::<T>();
        let ca = c_ * alpha;
        Self::new(s + ca, -ca * alpha, c_, s - ca)
    }

    pub fn coefficients(&self) -> [T; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn trace(&self) -> T {
        self.a + self.d
    }

    pub fn to_complex(&self) -> MobiusMap<T> {
        MobiusMap::from_real(self.a, self.b, self.c, self.d).expect("determinant already 1")
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    fn fixes_infinity(&self) -> bool {
        self.c.abs() <= T::tol(POLE_TOL)
    }

    /// Trace sign `s`; errors unless parabolic.
    pub fn trace_direction(&self) -> Result<Sign> {
        let t = self.trace();
        let two = T::two();
        let near = |x: T| (x - two).abs() <= T::tol(TRACE_REL_TOL) * two;
        let identity = (self.a - self.d).abs() <= T::tol(IDENTITY_TOL)
            && self.b.abs() <= T::tol(IDENTITY_TOL)
            && self.c.abs() <= T::tol(IDENTITY_TOL);
        if identity || !near(t.abs()) {
            return Err(Error::NotParabolic {
                trace: format!("{}", t.as_f64()),
            });
        }
        Ok(Sign::of(t))
    }

    pub fn is_parabolic(&self) -> bool {
        self.trace_direction().is_ok()
    }

    /// `σ = sign((a+d)c)`.
    pub fn sigma(&self) -> Result<Sign> {
        let s = self.trace_direction()?;
        if self.fixes_infinity() {
            return Err(Error::FixesInfinity);
        }
        Ok(s * Sign::of(self.c))
    }

    /// `(-d/c, α, a/c)`.
    pub fn special_points(&self) -> Result<(T, T, T)> {
        self.sigma()?;
        let alpha = (self.a - self.d) / (T::two() * self.c);
        Ok((-self.d / self.c, alpha, self.a / self.c))
    }

    pub fn fixed_point(&self) -> Result<T> {
        Ok(self.special_points()?.1)
    }

    pub fn apply_real(&self, x: T) -> SpherePoint<T> {
        self.apply(SpherePoint::real(x))
    }

    pub fn apply(&self, x: SpherePoint<T>) -> SpherePoint<T> {
        match x {
            SpherePoint::Infinity => {
                if self.fixes_infinity() {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::real(self.a / self.c)
                }
            }
            SpherePoint::Finite(z) => {
                let x = z.re;
                let den = self.c * x + self.d;
                if den.abs() < T::tol(POLE_TOL) {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::from_complex(c((self.a * x + self.b) / den, T::zero()))
                }
            }
        }
    }

    pub fn aux_identities(&self) -> Result<AuxIdentities<T>> {
        let (_, alpha, ac) = self.special_points()?;
        let t = self.trace();
        let two = T::two();
        Ok(AuxIdentities {
            half_trace: (t / two - two / t).abs(),
            shifted_pole: (self.c * alpha + self.d - t / two).abs(),
            alpha_formula: (alpha - ac + two / (self.c * t)).abs(),
        })
    }

    pub fn locate(&self, x: SpherePoint<T>) -> Result<IntervalLabel> {
        use IntervalLabel::*;
        let sigma = self.sigma()?;
        let (pole, alpha, ac) = self.special_points()?;
        let x = match x {
            SpherePoint::Infinity => return Ok(Infinity),
            SpherePoint::Finite(z) => z.re,
        };
        let at = |b: T| (x - b).abs() <= T::tol(LABEL_TOL) * T::one().max(b.abs());
        let (bounds, labels) = match sigma {
            Sign::Plus => (
                [pole, alpha, ac],
                [BelowPole, AtPole, PoleToAlpha, AtAlpha, AlphaToAC, AtAC, AboveAC],
            ),
            Sign::Minus => (
                [ac, alpha, pole],
                [BelowAC, AtAC, ACToAlpha, AtAlpha, AlphaToPole, AtPole, AbovePole],
            ),
        };
        for (i, b) in bounds.iter().enumerate() {
            if at(*b) {
                return Ok(labels[2 * i + 1]);
            }
            if x < *b {
                return Ok(labels[2 * i]);
            }
        }
        Ok(labels[6])
    }

    /// Interval that the lemmas predict for `g(x)` given the interval of `x`.
    fn predicted(&self, from: IntervalLabel, sigma: Sign) -> Vec<IntervalLabel> {
        use IntervalLabel::*;
        match (sigma, from) {
            (_, AtAlpha) => vec![AtAlpha],
            (_, AtPole) => vec![Infinity],
            (_, Infinity) => vec![AtAC],
            (Sign::Plus, BelowPole) => AboveAC.closure(sigma),
            (Sign::Plus, PoleToAlpha) => {
                let mut v = BelowPole.closure(sigma);
                v.extend(PoleToAlpha.closure(sigma));
                v
            }
            (Sign::Plus, AlphaToAC | AtAC | AboveAC) => AlphaToAC.closure(sigma),
            (Sign::Minus, BelowAC | AtAC | ACToAlpha) => ACToAlpha.closure(sigma),
            (Sign::Minus, AlphaToPole) => {
                let mut v = AlphaToPole.closure(sigma);
                v.extend(AbovePole.closure(sigma));
                v
            }
            (Sign::Minus, AbovePole) => BelowAC.closure(sigma),
            _ => vec![],
        }
    }

    /// Applies `g` once and checks the image against the interval lemmas.
    pub fn step_image_lemma(&self, x: SpherePoint<T>) -> Result<(IntervalLabel, IntervalLabel)> {
        let sigma = self.sigma()?;
        let from = self.locate(x)?;
        let to = self.locate(self.apply(x))?;
        if !self.predicted(from, sigma).contains(&to) {
            return Err(Error::LemmaViolation {
                x: x.finite().map_or(f64::INFINITY, |z| z.re.as_f64()),
                from: from.to_string(),
                to: to.to_string(),
            });
        }
        Ok((from, to))
    }

    fn open_interval(&self, lo: T, hi: T, x0: T) -> Result<()> {
        if lo < x0 && x0 < hi {
            Ok(())
        } else {
            Err(Error::OutOfBasin {
                x: x0.as_f64(),
                basin: format!("({}, {})", lo.as_f64(), hi.as_f64()),
            })
        }
    }

    /// `x_0, g(x_0), ..., g^N(x_0)` for `x_0` between `α` and `a/c`.
    pub fn monotone_convergence(&self, x0: T, n: usize) -> Result<MonotoneOrbit<T>> {
        let (_, alpha, ac) = self.special_points()?;
        self.open_interval(alpha.min(ac), alpha.max(ac), x0)?;
        // g(x) - x = -c(x - α)²/(cx + d)
        let step = -self.c * (x0 - alpha).powi(2) / (self.c * x0 + self.d);
        let mut points = Vec::with_capacity(n + 1);
        let mut x = x0;
        points.push(x);
        for _ in 0..n {
            x = self.apply_real(x).finite().map(|z| z.re).unwrap_or(x);
            points.push(x);
        }
        Ok(MonotoneOrbit {
            points,
            direction: Sign::of(step),
        })
    }

    /// `x_0, g⁻¹(x_0), ..., g⁻ᴺ(x_0)`. The basin is `(-d/c, α)` for
    /// `σ = +1` and `(α, ∞)` for `σ = -1`.
    pub fn backward_dynamics(&self, x0: T, n: usize) -> Result<Vec<T>> {
        let sigma = self.sigma()?;
        let (pole, alpha, _) = self.special_points()?;
        match sigma {
            Sign::Plus => self.open_interval(pole, alpha, x0)?,
            Sign::Minus => self.open_interval(alpha, T::infinity(), x0)?,
        }
        let inv = self.inverse();
        let mut points = Vec::with_capacity(n + 1);
        let mut x = x0;
        points.push(x);
        for _ in 0..n {
            x = inv.apply_real(x).finite().map(|z| z.re).unwrap_or(x);
            points.push(x);
        }
        Ok(points)
    }

    /// Least `N` with `g^N(x0)` labelled `target`.
    pub fn escape_time_to(&self, x0: SpherePoint<T>, target: IntervalLabel) -> Result<usize> {
        self.escape_time_capped(x0, target, ESCAPE_CAP)
    }

    pub fn escape_time_capped(&self, x0: SpherePoint<T>, target: IntervalLabel, cap: usize) -> Result<usize> {
        let mut x = x0;
        for n in 0..=cap {
            if self.locate(x)? == target {
                return Ok(n);
            }
            x = self.apply(x);
        }
        Err(Error::NoEscape {
            target: target.to_string(),
            cap,
        })
    }

    /// `h⁻¹(h(x) + n·s)` on the real line.
    pub fn closed_form_iterate(&self, x: SpherePoint<T>, n: i64) -> Result<SpherePoint<T>> {
        let nf = self.to_complex().normal_form()?;
        let z = nf.iterate(x, n)?;
        Ok(z.finite().map_or(SpherePoint::Infinity, |z| SpherePoint::real(z.re)))
    }
}

impl<T: Real> PointMap<T> for RealMobiusMap<T> {
    fn step(&self, z: SpherePoint<T>) -> SpherePoint<T> {
        self.apply(z)
    }
}

impl<T: Real> fmt::Display for RealMobiusMap<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.a, self.b, self.c, self.d)
    }
}
