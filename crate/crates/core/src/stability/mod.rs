//! Pseudo-orbits, their verification against exact orbits, and explicit
//! constructions showing that parabolic maps admit no Hyers-Ulam constant.

mod witness;

pub use witness::{
    build_complex_witness, build_complex_witness_with, build_real_witness, build_translation_witness, complex_plan,
    real_plan, real_plan_with_seed, real_witness_with_seed, ComplexPlan, RealPlan, WitnessOptions,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mobius::PointMap;
use crate::scalar::Real;
use crate::sphere::{euclid_distance, SpherePoint};

/// Separation the pseudo-orbit must reach, independent of `ε`.
pub const SEPARATION_THRESHOLD: f64 = 1.0;
/// Relative slack allowed on the defect bound.
pub const DEFECT_SLACK: f64 = 1e-9;

/// A finite sequence `a_0, ..., a_H` with one-step defect at most `epsilon`.
/// When `period > 0`, `a_{k+period} == a_k` for every `k >= preperiod`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPseudoOrbit<T>", into = "RawPseudoOrbit<T>")]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct PseudoOrbit<T> {
    pub epsilon: T,
    pub points: Vec<SpherePoint<T>>,
    pub preperiod: usize,
    pub period: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
struct RawPseudoOrbit<T> {
    epsilon: T,
    preperiod: usize,
    period: usize,
    points: Vec<SpherePoint<T>>,
}

impl<T: Real> TryFrom<RawPseudoOrbit<T>> for PseudoOrbit<T> {
    type Error = Error;

    fn try_from(r: RawPseudoOrbit<T>) -> Result<Self> {
        PseudoOrbit::new(r.epsilon, r.points, r.preperiod, r.period)
    }
}

impl<T: Real> From<PseudoOrbit<T>> for RawPseudoOrbit<T> {
    fn from(p: PseudoOrbit<T>) -> Self {
        RawPseudoOrbit {
            epsilon: p.epsilon,
            preperiod: p.preperiod,
            period: p.period,
            points: p.points,
        }
    }
}

impl<T: Real> PseudoOrbit<T> {
    pub fn new(epsilon: T, points: Vec<SpherePoint<T>>, preperiod: usize, period: usize) -> Result<Self> {
        check_epsilon(epsilon)?;
        if points.is_empty() {
            return Err(Error::InvalidPseudoOrbit("no points".into()));
        }
        if period > 0 {
            if let Some(k) = (preperiod..points.len().saturating_sub(period)).find(|&k| points[k] != points[k + period])
            {
                return Err(Error::InvalidPseudoOrbit(format!(
                    "a_{} != a_{} although period is {period}",
                    k,
                    k + period
                )));
            }
        }
        Ok(Self {
            epsilon,
            points,
            preperiod,
            period,
        })
    }

    /// `H`, the index of the last point.
    pub fn horizon(&self) -> usize {
        self.points.len() - 1
    }

    /// `max_{n < H} |a_{n+1} - g(a_n)|`; infinite when exactly one side is
    /// infinity.
    pub fn defect(&self, g: &impl PointMap<T>) -> T {
        self.points
            .windows(2)
            .map(|w| euclid_distance(w[1], g.step(w[0])).value())
            .fold(T::zero(), T::max)
    }
}

pub(crate) fn check_epsilon<T: Real>(epsilon: T) -> Result<()> {
    if epsilon >= T::zero() && epsilon.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidEpsilon(epsilon.as_f64()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conclusion {
    NonStabilityWitnessed,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityVerdict<T> {
    pub epsilon: T,
    pub defect_observed: T,
    pub separation_threshold: T,
    pub exceed_count: usize,
    pub exceed_indices: Vec<usize>,
    pub conclusion: Conclusion,
}

/// `b_0, g(b_0), ..., g^H(b_0)`.
pub fn exact_orbit<T: Real>(g: &impl PointMap<T>, b0: SpherePoint<T>, horizon: usize) -> Vec<SpherePoint<T>> {
    std::iter::successors(Some(b0), |b| Some(g.step(*b)))
        .take(horizon + 1)
        .collect()
}

/// `(n, |a_n - b_n|)` for `0 <= n <= H`, with `+inf` when exactly one of the
/// two points is infinity.
pub fn separation_profile<T: Real>(
    g: &impl PointMap<T>,
    pseudo: &PseudoOrbit<T>,
    b0: SpherePoint<T>,
) -> Vec<(usize, T)> {
    let exact = exact_orbit(g, b0, pseudo.horizon());
    pseudo
        .points
        .iter()
        .zip(exact)
        .enumerate()
        .map(|(n, (a, b))| (n, euclid_distance(*a, b).value()))
        .collect()
}

pub fn verify<T: Real>(
    g: &impl PointMap<T>,
    pseudo: &PseudoOrbit<T>,
    b0: SpherePoint<T>,
    min_exceed: usize,
) -> Result<StabilityVerdict<T>> {
    verify_with(g, pseudo, b0, min_exceed, T::lit(SEPARATION_THRESHOLD))
}

/// [`verify`] with a custom separation threshold.
pub fn verify_with<T: Real>(
    g: &impl PointMap<T>,
    pseudo: &PseudoOrbit<T>,
    b0: SpherePoint<T>,
    min_exceed: usize,
    threshold: T,
) -> Result<StabilityVerdict<T>> {
    let required = pseudo.preperiod + min_exceed * pseudo.period;
    if pseudo.horizon() < required {
        return Err(Error::HorizonTooShort {
            required,
            actual: pseudo.horizon(),
        });
    }
    let defect_observed = pseudo.defect(g);
    let exact = exact_orbit(g, b0, pseudo.horizon());
    let exceed_indices: Vec<usize> = pseudo
        .points
        .iter()
        .zip(&exact)
        .enumerate()
        .filter(|(_, (a, b))| euclid_distance(**a, **b).at_least(threshold))
        .map(|(n, _)| n)
        .collect();
    let exceed_count = exceed_indices.len();
    let small_defect = defect_observed <= pseudo.epsilon * (T::one() + T::lit(DEFECT_SLACK));
    let conclusion = if small_defect && exceed_count >= min_exceed {
        Conclusion::NonStabilityWitnessed
    } else {
        Conclusion::Inconclusive
    };
    Ok(StabilityVerdict {
        epsilon: pseudo.epsilon,
        defect_observed,
        separation_threshold: threshold,
        exceed_count,
        exceed_indices,
        conclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mobius::MobiusMap;
    use crate::scalar::c;

    type P = SpherePoint<f64>;

    fn g0() -> MobiusMap<f64> {
        MobiusMap::from_real(1.0, 0.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn exact_orbit_is_inconclusive() {
        let g = g0();
        let pts = exact_orbit(&g, P::real(1.0), 50);
        let pseudo = PseudoOrbit::new(0.1, pts, 0, 0).unwrap();
        let v = verify(&g, &pseudo, P::real(1.0), 1).unwrap();
        assert_eq!(v.defect_observed, 0.0);
        assert_eq!(v.exceed_count, 0);
        assert_eq!(v.conclusion, Conclusion::Inconclusive);
        assert!(separation_profile(&g, &pseudo, P::real(1.0))
            .iter()
            .all(|(_, d)| *d == 0.0));
    }

    #[test]
    fn horizon_precondition() {
        let g = g0();
        let pts = vec![P::real(1.0); 11];
        let pseudo = PseudoOrbit::new(0.1, pts, 3, 1).unwrap();
        assert_eq!(
            verify(&g, &pseudo, P::real(1.0), 8),
            Err(Error::HorizonTooShort {
                required: 11,
                actual: 10
            })
        );
        assert!(verify(&g, &pseudo, P::real(1.0), 7).is_ok());
    }

    #[test]
    fn constructor_checks() {
        assert!(matches!(
            PseudoOrbit::<f64>::new(0.1, vec![], 0, 0),
            Err(Error::InvalidPseudoOrbit(_))
        ));
        assert!(matches!(
            PseudoOrbit::new(-0.1, vec![P::real(0.0)], 0, 0),
            Err(Error::InvalidEpsilon(_))
        ));
        assert!(matches!(
            PseudoOrbit::new(f64::NAN, vec![P::real(0.0)], 0, 0),
            Err(Error::InvalidEpsilon(_))
        ));
        let pts = vec![P::real(0.0), P::real(1.0), P::real(2.0), P::real(1.0), P::real(2.5)];
        assert!(matches!(
            PseudoOrbit::new(0.1, pts.clone(), 1, 2),
            Err(Error::InvalidPseudoOrbit(_))
        ));
        assert!(PseudoOrbit::new(0.1, pts[..4].to_vec(), 1, 2).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let pseudo = PseudoOrbit::new(0.5, vec![P::new(1.0, 2.0), P::Infinity, P::Infinity], 1, 1).unwrap();
        let s = serde_json::to_string(&pseudo).unwrap();
        assert_eq!(
            s,
            r#"{"epsilon":0.5,"preperiod":1,"period":1,"points":[[1.0,2.0],"inf","inf"]}"#
        );
        let back: PseudoOrbit<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, pseudo);
        let bad = r#"{"epsilon":0.5,"preperiod":0,"period":1,"points":[[1.0,2.0],"inf"]}"#;
        assert!(serde_json::from_str::<PseudoOrbit<f64>>(bad).is_err());
    }

    #[test]
    fn verdict_serializes_every_field() {
        let g = MobiusMap::translation(c(1.0, 0.0));
        let pseudo = build_translation_witness(c(1.0, 0.0), c(0.0, 0.0), 0.1, 20).unwrap();
        let v = verify(&g, &pseudo, P::real(0.0), 3).unwrap();
        let json: serde_json::Value = serde_json::to_value(&v).unwrap();
        for key in [
            "epsilon",
            "defect_observed",
            "separation_threshold",
            "exceed_count",
            "exceed_indices",
            "conclusion",
        ] {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert_eq!(json["conclusion"], "NonStabilityWitnessed");
    }

    #[test]
    fn infinite_points_count_as_exceeding() {
        let g = g0();
        // pseudo jumps onto the pole orbit -1 -> ∞ -> 1
        let pts = vec![P::real(-1.0), P::Infinity, P::real(1.0)];
        let pseudo = PseudoOrbit::new(0.1, pts, 0, 0).unwrap();
        let v = verify(&g, &pseudo, P::real(-1.0 + 1e-3), 0).unwrap();
        assert!(v.exceed_indices.contains(&1));
    }
}
