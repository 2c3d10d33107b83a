//! Pseudo-orbit constructions.
//!
//! Everything is laid out in normal coordinates `w = h(z)`, where the map is
//! `w ↦ w + s` and `|z - α| = 1/(|c||w|)`. A point is within `ε/2` of `α`
//! exactly when `|w| > 2/(|c|ε)`.

use serde::{Deserialize, Serialize};

use super::{check_epsilon, PseudoOrbit};
use crate::error::{Error, Result};
use crate::mobius::{MobiusMap, PointMap};
use crate::orbit::escape_entry_time;
use crate::realline::RealMobiusMap;
use crate::scalar::{c, Real, C};
use crate::sphere::SpherePoint;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessOptions {
    /// Use the horocycle on the other side of `L∞`.
    pub mirror: bool,
}

/// Parameters of the complex construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexPlan<T> {
    /// Entry time of the exact orbit into `B(α, ε/2)`.
    pub n1: usize,
    /// Steps from `q` to the diametral point.
    pub n2: usize,
    pub q: C<T>,
    pub w_q: C<T>,
    /// Radius of the horocycle through `q`, `1 + 2ε`.
    pub radius: T,
    pub diametral: C<T>,
}

impl<T> ComplexPlan<T> {
    pub fn preperiod(&self) -> usize {
        self.n1 + 1
    }

    pub fn period(&self) -> usize {
        2 * self.n2
    }

    /// Index of the first diametral point in the pseudo-orbit.
    pub fn first_diametral_index(&self) -> usize {
        self.n1 + 1 + self.n2
    }
}

fn positive_epsilon<T: Real>(epsilon: T) -> Result<()> {
    check_epsilon(epsilon)?;
    if epsilon > T::zero() {
        Ok(())
    } else {
        Err(Error::InvalidEpsilon(epsilon.as_f64()))
    }
}

fn to_usize<T: Real>(x: T) -> usize {
    x.to_usize().unwrap_or(usize::MAX)
}

/// Entry time of `b0` into `B(α, radius)`; zero when `b0 = α`.
fn entry_time<T: Real>(g: &MobiusMap<T>, b0: SpherePoint<T>, radius: T) -> Result<usize> {
    match escape_entry_time(g, b0, radius) {
        Ok(n) => Ok(n as usize),
        Err(Error::FixedPointInput) => Ok(0),
        Err(e) => Err(e),
    }
}

pub fn complex_plan<T: Real>(
    g: &MobiusMap<T>,
    b0: SpherePoint<T>,
    epsilon: T,
    opts: WitnessOptions,
) -> Result<ComplexPlan<T>> {
    positive_epsilon(epsilon)?;
    let nf = g.normal_form()?;
    let n1 = entry_time(g, b0, epsilon * T::half())?;
    let cn = nf.c.norm();
    let s = nf.direction.value::<T>();
    let n2 = to_usize((T::two() / (cn * epsilon)).ceil()).max(1);
    // r = 1/(2|c||Im w|) = 1 + 2ε
    let mut y = -T::one() / (T::two() * cn * (T::one() + T::two() * epsilon));
    if opts.mirror {
        y = -y;
    }
    let w_q = c(-s * T::from_usize(n2).unwrap(), y);
    let q = nf
        .from_normal(SpherePoint::Finite(w_q))
        .finite()
        .ok_or(Error::NonFinite)?;
    let diametral = nf
        .from_normal(SpherePoint::Finite(c(T::zero(), y)))
        .finite()
        .ok_or(Error::NonFinite)?;
    Ok(ComplexPlan {
        n1,
        n2,
        q,
        w_q,
        radius: T::one() / (T::two() * cn * y.abs()),
        diametral,
    })
}

/// `g^k(start)` for `k < len`, by repeated application.
fn run<T: Real>(g: &impl PointMap<T>, start: SpherePoint<T>, len: usize) -> Vec<SpherePoint<T>> {
    std::iter::successors(Some(start), |z| Some(g.step(*z)))
        .take(len)
        .collect()
}

/// Exact orbit up to `n_pre`, then the block repeated (copied, not
/// recomputed) up to index `horizon`.
fn assemble<T: Real>(
    g: &impl PointMap<T>,
    b0: SpherePoint<T>,
    n_pre: usize,
    block: &[SpherePoint<T>],
    epsilon: T,
    horizon: usize,
) -> Result<PseudoOrbit<T>> {
    let mut points = run(g, b0, (n_pre + 1).min(horizon + 1));
    let mut k = 0;
    while points.len() <= horizon {
        points.push(block[k % block.len()]);
        k += 1;
    }
    PseudoOrbit::new(epsilon, points, n_pre + 1, block.len())
}

/// Pre-periodic pseudo-orbit that follows the exact orbit of `b0` into
/// `B(α, ε/2)`, jumps to `q`, and cycles once around a horocycle of radius
/// `1 + 2ε` forever.
pub fn build_complex_witness<T: Real>(
    g: &MobiusMap<T>,
    b0: SpherePoint<T>,
    epsilon: T,
    horizon: usize,
) -> Result<PseudoOrbit<T>> {
    build_complex_witness_with(g, b0, epsilon, horizon, WitnessOptions::default())
}

pub fn build_complex_witness_with<T: Real>(
    g: &MobiusMap<T>,
    b0: SpherePoint<T>,
    epsilon: T,
    horizon: usize,
    opts: WitnessOptions,
) -> Result<PseudoOrbit<T>> {
    let plan = complex_plan(g, b0, epsilon, opts)?;
    let block = run(g, SpherePoint::Finite(plan.q), plan.period());
    assemble(g, b0, plan.n1, &block, epsilon, horizon)
}

/// `a_n = a_0 + n(ε + q)` for the translation `z ↦ z + q`.
pub fn build_translation_witness<T: Real>(q: C<T>, a0: C<T>, epsilon: T, horizon: usize) -> Result<PseudoOrbit<T>> {
    check_epsilon(epsilon)?;
    let step = q + epsilon;
    let points = (0..=horizon)
        .map(|n| SpherePoint::try_finite(a0 + step * T::from_usize(n).unwrap()))
        .collect::<Result<Vec<_>>>()?;
    PseudoOrbit::new(epsilon, points, 0, 0)
}

/// Parameters of the real construction. The periodic block is
/// `q, g(q), ..., g^{n1+n2}(q)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealPlan<T> {
    /// Entry time of the exact orbit into `(α - ε/2, α + ε/2)`.
    pub n0: usize,
    /// Steps from `q` to the far point.
    pub n1: usize,
    /// Steps from the far point back into the `ε/2` window.
    pub n2: usize,
    pub q: T,
}

impl<T> RealPlan<T> {
    pub fn preperiod(&self) -> usize {
        self.n0 + 1
    }

    pub fn period(&self) -> usize {
        self.n1 + self.n2 + 1
    }

    pub fn first_far_index(&self) -> usize {
        self.n0 + 1 + self.n1
    }
}

struct RealSetup<T> {
    n0: usize,
    alpha: T,
    c: T,
    s: T,
    /// `min(1, 1/(|c|(1+ε)))`: `|w|` below this puts `|x - α|` above
    /// `max(1/|c|, 1+ε)`.
    mu: T,
    /// `2/(|c|ε)`.
    inner: T,
}

fn real_setup<T: Real>(g: &RealMobiusMap<T>, b0: T, epsilon: T) -> Result<RealSetup<T>> {
    positive_epsilon(epsilon)?;
    g.sigma()?;
    let alpha = g.fixed_point()?;
    let [_, _, c_, _] = g.coefficients();
    let cm = c_.abs();
    Ok(RealSetup {
        n0: entry_time(&g.to_complex(), SpherePoint::real(b0), epsilon * T::half())?,
        alpha,
        c: c_,
        s: g.trace_direction()?.value(),
        mu: T::one().min((cm * (T::one() + epsilon)).recip()),
        inner: T::two() / (cm * epsilon),
    })
}

fn finish_real_plan<T: Real>(st: &RealSetup<T>, t: T, n1: usize, q: T) -> RealPlan<T> {
    // w_{n1+n2} = s(n1 + n2 - t) must clear 2/(|c|ε) strictly.
    let n2 = to_usize((st.inner + t - T::from_usize(n1).unwrap()).floor()) + 1;
    RealPlan { n0: st.n0, n1, n2, q }
}

/// Default seed: `w_q = -s(n1 + μ/2)` with `n1 = ceil(2/(|c|ε))`.
pub fn real_plan<T: Real>(g: &RealMobiusMap<T>, b0: T, epsilon: T) -> Result<RealPlan<T>> {
    let st = real_setup(g, b0, epsilon)?;
    let n1 = to_usize(st.inner.ceil());
    let t = T::from_usize(n1).unwrap() + st.mu * T::half();
    let q = st.alpha + (st.c * -st.s * t).recip();
    Ok(finish_real_plan(&st, t, n1, q))
}

/// Plan for a caller-chosen `q`, which must lie strictly between `α` and
/// `α - σε/2` (the side the exact orbit does not approach from).
pub fn real_plan_with_seed<T: Real>(g: &RealMobiusMap<T>, b0: T, epsilon: T, q: T) -> Result<RealPlan<T>> {
    let st = real_setup(g, b0, epsilon)?;
    let sigma = g.sigma()?.value::<T>();
    let off = -sigma * (q - st.alpha);
    if !(off > T::zero() && off < epsilon * T::half()) {
        let edge = st.alpha - sigma * epsilon * T::half();
        return Err(Error::SeedOutsideInterval {
            q: q.as_f64(),
            interval: format!("({}, {})", st.alpha.min(edge).as_f64(), st.alpha.max(edge).as_f64()),
        });
    }
    let t = -st.s / (st.c * (q - st.alpha));
    let n1 = t.round();
    if (t - n1).abs() >= st.mu {
        return Err(Error::SeedDoesNotEscape { q: q.as_f64() });
    }
    Ok(finish_real_plan(&st, t, to_usize(n1), q))
}

fn real_from_plan<T: Real>(
    g: &RealMobiusMap<T>,
    b0: T,
    epsilon: T,
    horizon: usize,
    plan: &RealPlan<T>,
) -> Result<PseudoOrbit<T>> {
    let block = run(g, SpherePoint::real(plan.q), plan.period());
    assemble(g, SpherePoint::real(b0), plan.n0, &block, epsilon, horizon)
}

/// Real pseudo-orbit that jumps across `α` to the side the exact orbit
/// avoids, escapes past the pole to distance `> max(1/|c|, 1+ε)`, and comes
/// back.
pub fn build_real_witness<T: Real>(g: &RealMobiusMap<T>, b0: T, epsilon: T, horizon: usize) -> Result<PseudoOrbit<T>> {
    let plan = real_plan(g, b0, epsilon)?;
    real_from_plan(g, b0, epsilon, horizon, &plan)
}

pub fn real_witness_with_seed<T: Real>(
    g: &RealMobiusMap<T>,
    b0: T,
    epsilon: T,
    q: T,
    horizon: usize,
) -> Result<PseudoOrbit<T>> {
    let plan = real_plan_with_seed(g, b0, epsilon, q)?;
    real_from_plan(g, b0, epsilon, horizon, &plan)
}
