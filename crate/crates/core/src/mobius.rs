//! Möbius map algebra on the Riemann sphere.
//!
//! Maps are stored with determinant one. Parabolic maps (trace `±2`, not the
//! identity) get a fixed point and a conjugator `h(z) = 1/(c(z - α))` that
//! turns them into the translation `w ↦ w + s`, `s = ±1`.

use std::fmt;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{c, format_complex, Real, Sign, C};
use crate::sphere::SpherePoint;

/// Determinants smaller than this are treated as singular.
pub const SINGULAR_DET: f64 = 1e-14;
/// `|cz + d|` below this sends `z` to infinity; `|c|` below this means `c = 0`.
pub const POLE_TOL: f64 = 1e-14;
/// Relative tolerance on `|a + d ∓ 2|` for the parabolic test.
pub const TRACE_REL_TOL: f64 = 1e-9;
/// Absolute tolerance on `b`, `c`, `a - d` for recognising the identity.
pub const IDENTITY_TOL: f64 = 1e-12;

/// A difference equation `z_{n+1} = F(z_n)` on the extended plane.
pub trait PointMap<T: Real> {
    fn step(&self, z: SpherePoint<T>) -> SpherePoint<T>;
}

/// Möbius map `z ↦ (az + b)/(cz + d)` with `ad - bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MobiusMap<T> {
    a: C<T>,
    b: C<T>,
    c: C<T>,
    d: C<T>,
}

/// Trace classification of a normalized map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapClass {
    Identity,
    Parabolic(Sign),
    Elliptic,
    Hyperbolic,
    Loxodromic,
}

impl MapClass {
    pub fn name(&self) -> &'static str {
        match self {
            MapClass::Identity => "identity",
            MapClass::Parabolic(_) => "parabolic",
            MapClass::Elliptic => "elliptic",
            MapClass::Hyperbolic => "hyperbolic",
            MapClass::Loxodromic => "loxodromic",
        }
    }
}

impl<T: Real> MobiusMap<T> {
    /// Scales `(a, b, c, d)` by the square root of `1/(ad - bc)` whose real
    /// part is nonnegative (ties: nonnegative imaginary part).
    pub fn normalize(a: C<T>, b: C<T>, c: C<T>, d: C<T>) -> Result<Self> {
        let det = a * d - b * c;
        if !(det.norm() >= T::tol(SINGULAR_DET)) {
            return Err(Error::SingularMatrix {
                det: det.norm().as_f64(),
            });
        }
        let mut k = det.inv().sqrt();
        if k.re < T::zero() || (k.re == T::zero() && k.im < T::zero()) {
            k = -k;
        }
        Ok(Self {
            a: a * k,
            b: b * k,
            c: c * k,
            d: d * k,
        })
    }

    /// Normalizes a map given by real coefficients.
    pub fn from_real(a: T, b: T, c_: T, d: T) -> Result<Self> {
        let z = T::zero();
        Self::normalize(c(a, z), c(b, z), c(c_, z), c(d, z))
    }

    /// Parabolic map with fixed point `alpha`, lower-left coefficient
    /// `c_coef != 0` and trace `2·sign`.
    pub fn parabolic_from_fixed_point(alpha: C<T>, c_coef: C<T>, sign: Sign) -> Result<Self> {
        let s = c(sign.value::<T>(), T::zero());
        let ca = c_coef * alpha;
        Self::normalize(s + ca, -(ca * alpha), c_coef, s - ca)
    }

    /// The translation `z ↦ z + q`.
    pub fn translation(q: C<T>) -> Self {
        let (one, zero) = (Complex::new(T::one(), T::zero()), Complex::new(T::zero(), T::zero()));
        Self {
            a: one,
            b: q,
            c: zero,
            d: one,
        }
    }

    pub fn identity() -> Self {
        Self::translation(c(T::zero(), T::zero()))
    }

    pub fn a(&self) -> C<T> {
        self.a
    }
    pub fn b(&self) -> C<T> {
        self.b
    }
    pub fn c(&self) -> C<T> {
        self.c
    }
    pub fn d(&self) -> C<T> {
        self.d
    }

    pub fn coefficients(&self) -> [C<T>; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn trace(&self) -> C<T> {
        self.a + self.d
    }

    pub fn determinant(&self) -> C<T> {
        self.a * self.d - self.b * self.c
    }

    /// `true` when the map fixes infinity (`c = 0`).
    pub fn fixes_infinity(&self) -> bool {
        self.c.norm() <= T::tol(POLE_TOL)
    }

    /// The pole `-d/c`, sent to infinity; `None` when `c = 0`.
    pub fn pole(&self) -> Option<C<T>> {
        (!self.fixes_infinity()).then(|| -self.d / self.c)
    }

    /// The image of infinity `a/c`; `None` when `c = 0`.
    pub fn image_of_infinity(&self) -> Option<C<T>> {
        (!self.fixes_infinity()).then(|| self.a / self.c)
    }

    pub fn apply(&self, z: SpherePoint<T>) -> SpherePoint<T> {
        match z {
            SpherePoint::Infinity => match self.image_of_infinity() {
                Some(w) => SpherePoint::from_complex(w),
                None => SpherePoint::Infinity,
            },
            SpherePoint::Finite(z) => {
                let den = self.c * z + self.d;
                if den.norm() < T::tol(POLE_TOL) {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::from_complex((self.a * z + self.b) / den)
                }
            }
        }
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    /// Adjugate `(d, -b, -c, a)`.
    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// `true` if the two coefficient quadruples agree up to the global sign.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        let diff = |sgn: T| {
            self.coefficients()
                .iter()
                .zip(other.coefficients())
                .map(|(x, y)| (*x - y * sgn).norm())
                .fold(T::zero(), T::max)
        };
        diff(T::one()) <= tol || diff(-T::one()) <= tol
    }

    pub fn classify(&self) -> MapClass {
        let t = self.trace();
        let tol = T::tol(IDENTITY_TOL);
        if self.b.norm() <= tol && self.c.norm() <= tol && (self.a - self.d).norm() <= tol {
            return MapClass::Identity;
        }
        let two = T::two();
        let ptol = T::tol(TRACE_REL_TOL) * two;
        if (t - c(two, T::zero())).norm() <= ptol {
            return MapClass::Parabolic(Sign::Plus);
        }
        if (t + c(two, T::zero())).norm() <= ptol {
            return MapClass::Parabolic(Sign::Minus);
        }
        let real = t.im.abs() <= T::tol(TRACE_REL_TOL) * T::one().max(t.norm());
        match (real, t.re.abs() < two) {
            (true, true) => MapClass::Elliptic,
            (true, false) => MapClass::Hyperbolic,
            (false, _) => MapClass::Loxodromic,
        }
    }

    pub fn is_parabolic(&self) -> bool {
        matches!(self.classify(), MapClass::Parabolic(_))
    }

    fn not_parabolic(&self) -> Error {
        Error::NotParabolic {
            trace: format_complex(self.trace()),
        }
    }

    /// `+1` for trace `2`, `-1` for trace `-2`.
    pub fn trace_direction(&self) -> Result<Sign> {
        match self.classify() {
            MapClass::Parabolic(s) => Ok(s),
            _ => Err(self.not_parabolic()),
        }
    }

    /// The unique fixed point `(a - d)/(2c)`, or infinity when `c = 0`.
    pub fn fixed_point(&self) -> Result<SpherePoint<T>> {
        self.trace_direction()?;
        if self.fixes_infinity() {
            return Ok(SpherePoint::Infinity);
        }
        Ok(SpherePoint::from_complex((self.a - self.d) / (self.c * T::two())))
    }

    pub fn normal_form(&self) -> Result<NormalForm<T>> {
        let direction = self.trace_direction()?;
        if self.fixes_infinity() {
            return Err(Error::FixesInfinity);
        }
        let alpha = (self.a - self.d) / (self.c * T::two());
        let zero = c(T::zero(), T::zero());
        let one = c(T::one(), T::zero());
        let conjugator = Self::normalize(zero, one, self.c, -(self.c * alpha))?;
        let inverse_conjugator = Self::normalize(self.c * alpha, one, self.c, zero)?;
        Ok(NormalForm {
            conjugator,
            inverse_conjugator,
            direction,
            alpha,
            c: self.c,
        })
    }
}

impl<T: Real> PointMap<T> for MobiusMap<T> {
    fn step(&self, z: SpherePoint<T>) -> SpherePoint<T> {
        self.apply(z)
    }
}

impl<T: Real> fmt::Display for MobiusMap<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            format_complex(self.a),
            format_complex(self.b),
            format_complex(self.c),
            format_complex(self.d)
        )
    }
}

/// Conjugation of a parabolic map (with `c != 0`) to a unit translation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalForm<T> {
    /// `h(z) = 1/(c(z - α))`, normalized.
    pub conjugator: MobiusMap<T>,
    /// `h⁻¹(w) = α + 1/(cw)`, normalized.
    pub inverse_conjugator: MobiusMap<T>,
    pub direction: Sign,
    pub alpha: C<T>,
    /// Lower-left coefficient of the normalized map.
    pub c: C<T>,
}

impl<T: Real> NormalForm<T> {
    /// `h(z)`, evaluated from the closed form rather than the matrix.
    pub fn to_normal(&self, z: SpherePoint<T>) -> SpherePoint<T> {
        match z {
            SpherePoint::Infinity => SpherePoint::Finite(c(T::zero(), T::zero())),
            SpherePoint::Finite(z) => {
                let u = self.c * (z - self.alpha);
                if u.norm() < T::tol(POLE_TOL) {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::from_complex(u.inv())
                }
            }
        }
    }

    /// `h⁻¹(w)`.
    pub fn from_normal(&self, w: SpherePoint<T>) -> SpherePoint<T> {
        match w {
            SpherePoint::Infinity => SpherePoint::Finite(self.alpha),
            SpherePoint::Finite(w) => {
                let v = self.c * w;
                if v.norm() < T::tol(POLE_TOL) {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::from_complex(self.alpha + v.inv())
                }
            }
        }
    }

    /// `h⁻¹(h(z) + k·s)`: the k-th iterate in closed form.
    pub fn iterate(&self, z: SpherePoint<T>, k: i64) -> Result<SpherePoint<T>> {
        match self.to_normal(z) {
            SpherePoint::Infinity => Err(Error::FixedPointInput),
            SpherePoint::Finite(w) => {
                let shift = T::from_i64(k).unwrap_or_else(T::infinity) * self.direction.value::<T>();
                Ok(self.from_normal(SpherePoint::from_complex(w + shift)))
            }
        }
    }

    /// `Im h` is constant on a horocycle; this returns it for the horocycle
    /// centred at `p` (a point of the centre line): `1/(2c(p - α)i)`.
    pub fn horocycle_level(&self, p: C<T>) -> C<T> {
        (self.c * (p - self.alpha) * c(T::zero(), T::two())).inv()
    }
}


#[cfg(test)]
mod tests {
    use super::testing::parabolic;
    use super::*;
    use proptest::prelude::*;

    type M = MobiusMap<f64>;
    type P = SpherePoint<f64>;

    fn m(a: f64, b: f64, cc: f64, d: f64) -> M {
        M::from_real(a, b, cc, d).unwrap()
    }

    fn cx(re: f64, im: f64) -> C<f64> {
        c(re, im)
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(m(2.0, 0.0, 0.0, 2.0), m(1.0, 0.0, 0.0, 1.0));
        assert_eq!(m(2.0, 0.0, 0.0, 2.0).coefficients(), M::identity().coefficients());
        assert_eq!(
            m(1.0, 1.0, 0.0, 1.0).coefficients(),
            M::translation(cx(1.0, 0.0)).coefficients()
        );
        let g = m(2.0, 0.0, 2.0, 2.0);
        assert_eq!(
            g.coefficients(),
            [cx(1.0, 0.0), cx(0.0, 0.0), cx(1.0, 0.0), cx(1.0, 0.0)]
        );
        assert!((g.determinant() - cx(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn normalize_sign_representative() {
        // det = -1: 1/det = -1, sqrt picks +i (real part 0, imaginary part > 0).
        let g = M::normalize(cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(-1.0, 0.0)).unwrap();
        assert_eq!(g.a(), cx(0.0, 1.0));
        // det = 4: scale +1/2, never -1/2.
        assert_eq!(m(-2.0, 0.0, -2.0, -2.0).a(), cx(-1.0, 0.0));
    }

    #[test]
    fn singular_rejected() {
        assert!(matches!(
            M::from_real(1.0, 2.0, 2.0, 4.0),
            Err(Error::SingularMatrix { .. })
        ));
        assert!(M::from_real(0.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn apply_examples() {
        let g = m(1.0, 0.0, 1.0, 1.0);
        assert_eq!(g.apply(P::real(-1.0)), P::Infinity);
        assert_eq!(g.apply(P::Infinity), P::real(1.0));
        let w = g.apply(P::new(0.0, 2.0));
        assert!(w.approx_eq(&P::new(0.8, 0.4), 1e-15));
        let t = m(1.0, 5.0, 0.0, 1.0);
        assert_eq!(t.apply(P::Infinity), P::Infinity);
        assert_eq!(t.apply(P::real(1.0)), P::real(6.0));
    }

    #[test]
    fn group_examples() {
        let g = m(1.0, 0.0, 1.0, 1.0);
        assert_eq!(g.inverse().coefficients(), m(1.0, 0.0, -1.0, 1.0).coefficients());
        assert!(g.compose(&g.inverse()).approx_eq(&M::identity(), 1e-15));
        let t = m(1.0, 1.0, 0.0, 1.0);
        assert_eq!(t.compose(&t).coefficients(), m(1.0, 2.0, 0.0, 1.0).coefficients());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(m(1.0, 0.0, 1.0, 1.0).classify(), MapClass::Parabolic(Sign::Plus));
        assert_eq!(m(0.0, 1.0, -1.0, 0.0).classify(), MapClass::Elliptic);
        assert_eq!(m(2.0, 0.0, 0.0, 0.5).classify(), MapClass::Hyperbolic);
        assert_eq!(M::identity().classify(), MapClass::Identity);
        assert_eq!(m(-1.0, 0.0, 0.0, -1.0).classify(), MapClass::Identity);
        assert_eq!(m(-1.0, 0.0, 1.0, -1.0).classify(), MapClass::Parabolic(Sign::Minus));
        let lox = M::normalize(cx(2.0, 1.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(2.0, 1.0).inv()).unwrap();
        assert_eq!(lox.classify(), MapClass::Loxodromic);
        // Decimal input that only hits trace 2 after normalization.
        let near = m(1.0 + 1e-11, 0.0, 1.0, 1.0);
        assert!(near.is_parabolic());
    }

    #[test]
    fn fixed_point_examples() {
        assert_eq!(m(1.0, 0.0, 1.0, 1.0).fixed_point().unwrap(), P::real(0.0));
        let g = m(3.0, -2.0, 2.0, -1.0);
        let alpha = g.fixed_point().unwrap();
        assert!(alpha.approx_eq(&P::real(1.0), 1e-15));
        assert!(g.apply(alpha).approx_eq(&alpha, 1e-12));
        assert_eq!(m(1.0, 5.0, 0.0, 1.0).fixed_point().unwrap(), P::Infinity);
        assert!(matches!(
            m(2.0, 0.0, 0.0, 0.5).fixed_point(),
            Err(Error::NotParabolic { .. })
        ));
        assert!(M::identity().fixed_point().is_err());
    }

    #[test]
    fn normal_form_examples() {
        let g = m(1.0, 0.0, 1.0, 1.0);
        let nf = g.normal_form().unwrap();
        assert_eq!(nf.direction, Sign::Plus);
        let z = P::new(0.0, 2.0);
        let lhs = nf.to_normal(g.apply(z)).finite().unwrap();
        assert!((lhs - cx(1.0, -0.5)).norm() < 1e-14);
        let rhs = nf.to_normal(z).finite().unwrap() + 1.0;
        assert!((rhs - cx(1.0, -0.5)).norm() < 1e-15);
        assert_eq!(nf.from_normal(P::Infinity), P::real(0.0));
        assert_eq!(nf.to_normal(P::real(0.0)), P::Infinity);
        // Matrix form of h agrees with the closed form.
        assert!(nf.conjugator.apply(z).approx_eq(&nf.to_normal(z), 1e-14));
        assert!(nf.inverse_conjugator.apply(P::Infinity).approx_eq(&P::real(0.0), 1e-15));

        let minus = m(-1.0, 0.0, 1.0, -1.0).normal_form().unwrap();
        assert_eq!(minus.direction, Sign::Minus);
        assert!(matches!(m(1.0, 5.0, 0.0, 1.0).normal_form(), Err(Error::FixesInfinity)));
        assert!(matches!(
            m(0.0, 1.0, -1.0, 0.0).normal_form(),
            Err(Error::NotParabolic { .. })
        ));
    }

    #[test]
    fn trace_direction_examples() {
        assert_eq!(m(1.0, 0.0, 1.0, 1.0).trace_direction().unwrap(), Sign::Plus);
        assert_eq!(m(-1.0, 0.0, 1.0, -1.0).trace_direction().unwrap(), Sign::Minus);
        assert_eq!(m(1.0, 1.0, 0.0, 1.0).trace_direction().unwrap(), Sign::Plus);
        assert!(m(2.0, 0.0, 0.0, 0.5).trace_direction().is_err());
    }

    #[test]
    fn generic_over_f32() {
        let g = MobiusMap::<f32>::from_real(1.0, 0.0, 1.0, 1.0).unwrap();
        assert!(g.is_parabolic());
        let w = g.apply(SpherePoint::new(0.0f32, 2.0));
        assert!(w.approx_eq(&SpherePoint::new(0.8, 0.4), 1e-6));
    }

    fn sample_point() -> impl Strategy<Value = P> {
        prop_oneof![
            19 => (-6.0..6.0f64, -6.0..6.0f64).prop_map(|(x, y)| P::new(x, y)),
            1 => Just(P::Infinity),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn conjugates_to_translation(
            g in parabolic(),
            zs in prop::collection::vec((-4.0..4.0f64, -4.0..4.0f64), 50),
        ) {
            let nf = g.normal_form().unwrap();
            let s = nf.direction.value::<f64>();
            for (x, y) in zs {
                let z = P::new(x, y);
                let w = match nf.to_normal(z) { P::Finite(w) => w, P::Infinity => continue };
                if w.norm() > 1e3 { continue; }
                match nf.to_normal(g.apply(z)) {
                    P::Finite(hw) => prop_assert!((hw - (w + s)).norm() < 1e-8),
                    P::Infinity => prop_assert!((w + s).norm() < 1e-8),
                }
            }
        }

        #[test]
        fn composition_is_application(g1 in parabolic(), g2 in parabolic(), z in sample_point()) {
            let lhs = g1.compose(&g2).apply(z);
            let rhs = g1.apply(g2.apply(z));
            prop_assert!(lhs.chordal_distance(&rhs) < 1e-9);
            prop_assert!((g1.compose(&g2).determinant() - 1.0).norm() < 1e-9);
        }

        #[test]
        fn inverse_undoes(g in parabolic(), z in sample_point()) {
            let back = g.inverse().apply(g.apply(z));
            prop_assert!(back.chordal_distance(&z) < 1e-9);
        }

        #[test]
        fn parabolic_auxiliary_identities(g in parabolic()) {
            let alpha = g.fixed_point().unwrap().finite().unwrap();
            let (a, cc, d) = (g.a(), g.c(), g.d());
            let t = a + d;
            prop_assert!((cc * alpha + d - t / 2.0).norm() < 1e-12);
            prop_assert!((alpha - (a / cc - (cc * t).inv() * 2.0)).norm() < 1e-12);
            prop_assert!((cc * alpha - a + t / 2.0).norm() < 1e-12);
            prop_assert!((g.determinant() - 1.0).norm() < 1e-12);
        }

        #[test]
        fn normalize_yields_unit_determinant(
            ar in -5.0..5.0f64, ai in -5.0..5.0f64, br in -5.0..5.0f64, bi in -5.0..5.0f64,
            cr in -5.0..5.0f64, ci in -5.0..5.0f64, dr in -5.0..5.0f64, di in -5.0..5.0f64,
        ) {
            let (a, b, cc, d) = (cx(ar, ai), cx(br, bi), cx(cr, ci), cx(dr, di));
            prop_assume!((a * d - b * cc).norm() > 1e-3);
            let g = M::normalize(a, b, cc, d).unwrap();
            prop_assert!((g.determinant() - 1.0).norm() < 1e-12);
            let h = M::normalize(-a, -b, -cc, -d).unwrap();
            prop_assert!(g.approx_eq(&h, 1e-12));
        }
    }
}
