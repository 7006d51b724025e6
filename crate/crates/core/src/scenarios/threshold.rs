use crate::logic::Tv3;

use super::{ReportBuilder, ScenarioError, ScenarioReport};

pub const THRESHOLD_PREDICATE: &str = "detected";

pub(crate) const DEFAULT_LEVELS: [f64; 6] = [0.5, 1.0, 2.0, 3.0, 4.5, 6.0];
pub(crate) const DEFAULT_CUTS: (f64, f64) = (1.5, 4.0);

/// Each stimulus level is a context: `F` below `lower`, `U` from `lower` to
/// `upper` inclusive, `T` above `upper`.
pub fn threshold(levels: &[f64], lower: f64, upper: f64) -> Result<ScenarioReport, ScenarioError> {
    if lower.partial_cmp(&upper) != Some(std::cmp::Ordering::Less) {
        return Err(ScenarioError::BadCuts { lower, upper });
    }
    if let Some(bad) = levels.iter().find(|l| !l.is_finite()) {
        return Err(ScenarioError::BadLevel(*bad));
    }
    let width = levels.len().saturating_sub(1).to_string().len();
    let mut r = ReportBuilder::new("threshold", "subject", THRESHOLD_PREDICATE);
    r.witness("lower_cut", lower).witness("upper_cut", upper);
    for (i, &level) in levels.iter().enumerate() {
        let value = if level < lower {
            Tv3::False3
        } else if level > upper {
            Tv3::True3
        } else {
            Tv3::Undet3
        };
        let ctx = format!("level_{i:0width$}");
        r.witness(format!("intensity_{ctx}"), level)
            .judge(ctx, value);
    }
    r.build()
}
