use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::logic::Tv3;
use crate::quantum::{c, StateVector, C64};

use super::{ReportBuilder, ScenarioError, ScenarioReport};

pub const SLIT_PREDICATE: &str = "particle";

const PATHS: [&str; 2] = ["path1", "path2"];
const PHASE_GRID: usize = 720;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum SlitSetup {
    OneSlitObserved,
    OneSlitUnobserved,
    TwoSlitsUnobserved,
}

impl SlitSetup {
    pub const ALL: [SlitSetup; 3] = [
        SlitSetup::OneSlitObserved,
        SlitSetup::OneSlitUnobserved,
        SlitSetup::TwoSlitsUnobserved,
    ];

    pub fn context(self) -> &'static str {
        match self {
            SlitSetup::OneSlitObserved => "one_slit_observed",
            SlitSetup::OneSlitUnobserved => "one_slit_unobserved",
            SlitSetup::TwoSlitsUnobserved => "two_slits_unobserved",
        }
    }

    fn observed(self) -> bool {
        self == SlitSetup::OneSlitObserved
    }

    fn path_state(self) -> StateVector {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let amps = match self {
            SlitSetup::TwoSlitsUnobserved => [c(h, 0.0), c(h, 0.0)],
            _ => [c(1.0, 0.0), c(0.0, 0.0)],
        };
        StateVector::new(amps, PATHS).expect("path state is valid")
    }
}

/// Fringe contrast `(max - min) / (max + min)` of the screen intensity as the
/// relative phase between the two paths sweeps a uniform grid.
///
/// With `which_path` the paths add incoherently, `|a1|^2 + |a2|^2`;
/// otherwise `|a1 + e^{i theta} a2|^2`.
pub fn visibility(state: &StateVector, which_path: bool) -> f64 {
    let a = state.amplitudes();
    let (a1, a2) = (a[0], a[1]);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for k in 0..PHASE_GRID {
        let theta = 2.0 * PI * k as f64 / PHASE_GRID as f64;
        let intensity = if which_path {
            a1.norm_sqr() + a2.norm_sqr()
        } else {
            (a1 + C64::from_polar(1.0, theta) * a2).norm_sqr()
        };
        lo = lo.min(intensity);
        hi = hi.max(intensity);
    }
    if hi + lo == 0.0 {
        0.0
    } else {
        (hi - lo) / (hi + lo)
    }
}

/// One context per setup. A recorded path means particle behaviour (`T`); a
/// coherent two-path superposition is the pure state (`U`); a single
/// unobserved slit diffracts as a wave (`F`).
pub fn double_slit(setups: &[SlitSetup]) -> Result<ScenarioReport, ScenarioError> {
    let mut r = ReportBuilder::new("double_slit", "electron", SLIT_PREDICATE);
    let two_path = SlitSetup::TwoSlitsUnobserved.path_state();
    r.witness("visibility_unobserved", visibility(&two_path, false))
        .witness("visibility_which_path", visibility(&two_path, true));

    let mut seen = Vec::new();
    for &s in setups {
        if seen.contains(&s) {
            continue;
        }
        seen.push(s);
        let v = visibility(&s.path_state(), s.observed());
        let value = if s.observed() {
            Tv3::True3
        } else if v > 0.5 {
            Tv3::Undet3
        } else {
            Tv3::False3
        };
        r.witness(format!("visibility_{}", s.context()), v)
            .judge(s.context(), value);
    }
    r.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::SchemaKind;

    #[test]
    fn per_setup_values() {
        let r = double_slit(&SlitSetup::ALL).unwrap();
        let vals: Vec<_> = r
            .judgments
            .iter()
            .map(|j| (j.context.as_str(), j.value))
            .collect();
        assert_eq!(
            vals,
            [
                ("one_slit_observed", Tv3::True3),
                ("one_slit_unobserved", Tv3::False3),
                ("two_slits_unobserved", Tv3::Undet3),
            ]
        );
        assert_eq!(r.classify().unwrap().kind(), Some(SchemaKind::P7));
    }

    #[test]
    fn visibilities() {
        let two = SlitSetup::TwoSlitsUnobserved.path_state();
        assert!((visibility(&two, false) - 1.0).abs() <= 1e-12);
        assert_eq!(visibility(&two, true), 0.0);
        assert_eq!(
            visibility(&SlitSetup::OneSlitUnobserved.path_state(), false),
            0.0
        );
    }

    #[test]
    fn subsets() {
        let r = double_slit(&[SlitSetup::OneSlitObserved, SlitSetup::OneSlitUnobserved]).unwrap();
        assert_eq!(r.classify().unwrap().kind(), Some(SchemaKind::P4));
        let r = double_slit(&[]).unwrap();
        assert!(r.classify().unwrap().kind().is_none());
        assert!(r.matches_expected());
    }
}
