//! Forward and backward orbits, and convergence toward the fixed point.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mobius::{MobiusMap, NormalForm};
use crate::scalar::{Real, Sign};
use crate::sphere::SpherePoint;

/// Half-width of the window rescanned around the closed-form entry time.
const RESCAN: i64 = 5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct Orbit<T> {
    pub map: MobiusMap<T>,
    pub start: SpherePoint<T>,
    /// `z_{-m}, ..., z_0, ..., z_n`.
    pub points: Vec<SpherePoint<T>>,
    /// `m`, the number of backward iterates stored before `z_0`.
    pub backward: usize,
    /// `s`, or `None` if the map is not parabolic.
    pub direction: Option<Sign>,
}

impl<T: Real> Orbit<T> {
    /// `z_k`, if stored.
    pub fn at(&self, k: i64) -> Option<SpherePoint<T>> {
        let idx = k + self.backward as i64;
        usize::try_from(idx).ok().and_then(|i| self.points.get(i).copied())
    }

    /// `z_0, ..., z_n`.
    pub fn forward(&self) -> &[SpherePoint<T>] {
        &self.points[self.backward..]
    }

    /// `z_{-m}, ..., z_{-1}`.
    pub fn backward_points(&self) -> &[SpherePoint<T>] {
        &self.points[..self.backward]
    }

    /// `(k, z_k)` pairs in storage order.
    pub fn indexed(&self) -> impl Iterator<Item = (i64, SpherePoint<T>)> + '_ {
        let m = self.backward as i64;
        self.points.iter().enumerate().map(move |(i, z)| (i as i64 - m, *z))
    }
}

/// `g^k(z0)` for `-n_backward <= k <= n_forward`, by repeated application of
/// `g` and `g⁻¹`.
pub fn iterate<T: Real>(g: &MobiusMap<T>, z0: SpherePoint<T>, n_forward: usize, n_backward: usize) -> Orbit<T> {
    let inv = g.inverse();
    let mut back = Vec::with_capacity(n_backward);
    let mut z = z0;
    for _ in 0..n_backward {
        z = inv.apply(z);
        back.push(z);
    }
    back.reverse();
    let mut points = back;
    points.reserve(n_forward + 1);
    let mut z = z0;
    points.push(z);
    for _ in 0..n_forward {
        z = g.apply(z);
        points.push(z);
    }
    Orbit {
        map: *g,
        start: z0,
        points,
        backward: n_backward,
        direction: g.trace_direction().ok(),
    }
}

/// `h⁻¹(h(z0) + k·s)`.
pub fn iterate_normal<T: Real>(g: &MobiusMap<T>, z0: SpherePoint<T>, k: i64) -> Result<SpherePoint<T>> {
    g.normal_form()?.iterate(z0, k)
}

fn normal_start<T: Real>(nf: &NormalForm<T>, z0: SpherePoint<T>) -> Result<num_complex::Complex<T>> {
    nf.to_normal(z0).finite().ok_or(Error::FixedPointInput)
}

/// `(n, |g^n(z0) - α|)` for `n = 1..=N` then `n = -1..=-N`, from the closed
/// form `1/(|c|·|w_0 + n·s|)`.
pub fn convergence_profile<T: Real>(g: &MobiusMap<T>, z0: SpherePoint<T>, n: usize) -> Result<Vec<(i64, T)>> {
    let nf = g.normal_form()?;
    let w0 = normal_start(&nf, z0)?;
    let (cn, s) = (nf.c.norm(), nf.direction.value::<T>());
    let dist = |k: i64| T::one() / (cn * (w0 + s * T::from_i64(k).unwrap()).norm());
    let n = n as i64;
    Ok((1..=n).chain((1..=n).map(|k| -k)).map(|k| (k, dist(k))).collect())
}

/// Least `N >= 0` with `|g^n(z0) - α| < radius` for every `n >= N`.
pub fn escape_entry_time<T: Real>(g: &MobiusMap<T>, z0: SpherePoint<T>, radius: T) -> Result<u64> {
    if !(radius > T::zero()) || !radius.is_finite() {
        return Err(Error::InvalidEpsilon(radius.as_f64()));
    }
    let nf = g.normal_form()?;
    let w0 = normal_start(&nf, z0)?;
    let (cn, s) = (nf.c.norm(), nf.direction.value::<T>());
    let inside = |k: i64| T::one() / (cn * (w0 + s * T::from_i64(k).unwrap()).norm()) < radius;

    // |w0 + n s|^2 = (x0 + n)^2 + y0^2 with x0 = s·Re w0; outside the ball
    // exactly when |x0 + n| <= sqrt(R^2 - y0^2).
    let big_r = T::one() / (cn * radius);
    let (x0, y0) = (s * w0.re, w0.im);
    let guess = if y0 * y0 > big_r * big_r {
        0
    } else {
        let last_out = ((big_r * big_r - y0 * y0).sqrt() - x0).floor();
        if last_out < T::zero() {
            0
        } else {
            last_out.to_i64().unwrap_or(i64::MAX - RESCAN) + 1
        }
    };
    let lo = (guess - RESCAN).max(0);
    // The outside set is an interval of integers. If none of it shows up
    // near its predicted top end it holds no integer at all.
    let n = match (lo..guess + RESCAN).rev().find(|&k| !inside(k)) {
        Some(k) => k + 1,
        None => 0,
    };
    Ok(n as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::horocycle::horocycle_through;
    use crate::mobius::testing::parabolic;
    use crate::sphere::chordal_distance;
    use proptest::prelude::*;

    type M = MobiusMap<f64>;
    type P = SpherePoint<f64>;

    fn g0() -> M {
        M::from_real(1.0, 0.0, 1.0, 1.0).unwrap()
    }

    fn close(p: P, q: P) -> bool {
        chordal_distance(p, q) < 1e-12
    }

    #[test]
    fn iterate_examples() {
        let o = iterate(&g0(), P::real(1.0), 3, 0);
        let want = [1.0, 0.5, 1.0 / 3.0, 0.25].map(P::real);
        assert!(o.forward().iter().zip(want).all(|(p, q)| close(*p, q)));

        let o = iterate(&g0(), P::real(0.0), 5, 5);
        assert!(o.points.iter().all(|p| *p == P::real(0.0)));

        let o = iterate(&g0(), P::real(-1.0), 3, 0);
        assert_eq!(o.forward()[1], P::Infinity);
        assert!(close(o.forward()[2], P::real(1.0)));
        assert!(close(o.forward()[3], P::real(0.5)));
        assert_eq!(o.direction, Some(Sign::Plus));
    }

    #[test]
    fn orbit_indexing() {
        let o = iterate(&g0(), P::real(1.0), 2, 2);
        assert_eq!(o.points.len(), 5);
        assert_eq!(o.at(0), Some(P::real(1.0)));
        // g⁻¹(x) = x/(1 - x): 1 -> ∞ -> -1
        assert_eq!(o.at(-1), Some(P::Infinity));
        assert!(close(o.at(-2).unwrap(), P::real(-1.0)));
        assert_eq!(o.at(3), None);
        assert_eq!(o.at(-3), None);
        assert_eq!(o.backward_points().len(), 2);
        assert_eq!(o.indexed().next().unwrap().0, -2);
    }

    #[test]
    fn iterate_normal_examples() {
        let g = g0();
        let z = iterate_normal(&g, P::real(1.0), 3).unwrap();
        assert!(close(z, P::real(0.25)));
        assert!(close(
            iterate_normal(&g, P::new(0.3, 0.7), 0).unwrap(),
            P::new(0.3, 0.7)
        ));
        let z = P::new(0.3, 0.7);
        assert!(close(iterate_normal(&g, z, -1).unwrap(), g.inverse().apply(z)));
        assert_eq!(iterate_normal(&g, P::real(0.0), 1), Err(Error::FixedPointInput));
    }

    #[test]
    fn convergence_examples() {
        let prof = convergence_profile(&g0(), P::real(1.0), 10).unwrap();
        assert_eq!(prof.len(), 20);
        for &(n, d) in &prof[..10] {
            assert!((d - 1.0 / (n as f64 + 1.0)).abs() < 1e-15);
        }
        assert_eq!(prof[10].0, -1);
        // g^{-1}(1) = ∞ sits at distance 1/0
        assert!(prof[10].1.is_infinite());

        let prof = convergence_profile(&g0(), P::real(1.0), 10_000).unwrap();
        let (n, d) = prof[9_999];
        assert!((n as f64 * d - 1.0).abs() < 0.01);
        assert_eq!(convergence_profile(&g0(), P::real(0.0), 3), Err(Error::FixedPointInput));
    }

    #[test]
    fn escape_entry_examples() {
        let g = g0();
        assert_eq!(escape_entry_time(&g, P::real(1.0), 0.05).unwrap(), 20);
        // oracle: brute-force scan of 1/(n+1)
        let scan = (0..1000).rev().find(|&n| 1.0 / (n as f64 + 1.0) >= 0.05).unwrap() + 1;
        assert_eq!(scan, 20);
        assert_eq!(escape_entry_time(&g, P::real(0.1), 0.5).unwrap(), 0);
        // -1 -> ∞ -> 1 -> 1/2 -> ..., so g^n(-1) = 1/(n - 1) for n >= 2
        let n = escape_entry_time(&g, P::real(-1.0), 0.05).unwrap();
        assert_eq!(n, 22);
        let o = iterate(&g, P::real(-1.0), n as usize + 200, 0);
        assert!(o.forward()[n as usize..]
            .iter()
            .all(|p| p.finite().is_some_and(|z| z.norm() < 0.05)));
        assert_eq!(escape_entry_time(&g, P::real(0.0), 0.05), Err(Error::FixedPointInput));
        assert!(matches!(
            escape_entry_time(&g, P::real(1.0), 0.0),
            Err(Error::InvalidEpsilon(_))
        ));
        // ∞ -> 1 -> 1/2 -> 1/3: the first point strictly inside is at n = 3
        assert_eq!(escape_entry_time(&g, P::Infinity, 0.5).unwrap(), 3);
    }

    #[test]
    fn escape_entry_with_no_integer_outside() {
        // w0 = -3.5 + iy with |w_n| <= 10 only for n in [3.2, 3.8]
        let y = (100.0f64 - 0.09).sqrt();
        let z0 = P::Finite(num_complex::Complex::new(-3.5, y).inv());
        assert_eq!(escape_entry_time(&g0(), z0, 0.1).unwrap(), 0);
        let o = iterate(&g0(), z0, 50, 0);
        assert!(o.forward().iter().all(|p| p.finite().unwrap().norm() < 0.1));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn closed_form_matches_repeated_application(g in parabolic(), x in -3.0..3.0f64, y in -3.0..3.0f64) {
            let z = P::new(x, y);
            let alpha = g.normal_form().unwrap().alpha;
            prop_assume!((z.finite().unwrap() - alpha).norm() > 1e-3);
            let o = iterate(&g, z, 50, 50);
            for (k, zk) in o.indexed() {
                let cf = iterate_normal(&g, z, k).unwrap();
                prop_assert!(chordal_distance(cf, zk) < 1e-7, "k={} {} {}", k, cf, zk);
            }
        }

        #[test]
        fn orbit_stays_on_its_horocycle(g in parabolic(), x in -3.0..3.0f64, y in -3.0..3.0f64) {
            let z = P::new(x, y);
            let alpha = g.normal_form().unwrap().alpha;
            prop_assume!((z.finite().unwrap() - alpha).norm() > 1e-3);
            let hc = horocycle_through(&g, z).unwrap();
            for p in iterate(&g, z, 30, 30).points {
                if p.finite().is_some() {
                    prop_assert!(hc.residual(p) < 1e-7 * (1.0 + hc.as_circle().map_or(0.0, |k| k.radius)));
                }
            }
        }

        #[test]
        fn profile_eventually_decreasing(g in parabolic(), x in -3.0..3.0f64, y in -3.0..3.0f64) {
            let z = P::new(x, y);
            let alpha = g.normal_form().unwrap().alpha;
            prop_assume!((z.finite().unwrap() - alpha).norm() > 1e-2);
            let prof = convergence_profile(&g, z, 400).unwrap();
            let (fwd, bwd) = prof.split_at(400);
            for half in [fwd, bwd] {
                let tail = &half[200..];
                prop_assert!(tail.windows(2).all(|w| w[1].1 < w[0].1));
                prop_assert!(tail.last().unwrap().1 < 0.05);
            }
        }

        #[test]
        fn entry_time_is_exact(g in parabolic(), x in -3.0..3.0f64, y in -3.0..3.0f64, r in 0.01..1.0f64) {
            let z = P::new(x, y);
            let nf = g.normal_form().unwrap();
            prop_assume!((z.finite().unwrap() - nf.alpha).norm() > 1e-3);
            let n = escape_entry_time(&g, z, r).unwrap() as i64;
            let dist = |k: i64| iterate_normal(&g, z, k).unwrap().finite().map_or(f64::INFINITY, |p| (p - nf.alpha).norm());
            if n > 0 {
                prop_assert!(dist(n - 1) >= r * (1.0 - 1e-9));
            }
            for k in n..n + 200 {
                prop_assert!(dist(k) < r * (1.0 + 1e-9));
            }
        }
    }
}
