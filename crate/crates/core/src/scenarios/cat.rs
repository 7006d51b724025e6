use std::f64::consts::FRAC_1_SQRT_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::logic::Tv3;
use crate::quantum::{c, StateVector};

use super::{value_from_probability, ReportBuilder, ScenarioError, ScenarioReport};

pub const CAT_PREDICATE: &str = "alive";

fn cat_state() -> StateVector {
    StateVector::new(
        [c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)],
        ["alive", "dead"],
    )
    .expect("cat state is valid")
}

fn p_alive() -> f64 {
    cat_state()
        .probability("alive")
        .expect("alive is a basis label")
}

/// `n` box openings from one ChaCha8 stream seeded with `seed`; `true` is
/// alive.
pub fn cat_outcomes(seed: u64, n: usize) -> Vec<bool> {
    let p = p_alive();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.random::<f64>() < p).collect()
}

/// The first outcome of [`cat_outcomes`].
pub fn cat_outcome(seed: u64) -> bool {
    cat_outcomes(seed, 1)[0]
}

/// The closed box always contributes `U`. Opening it adds the sampled
/// outcome under a second context.
pub fn cat(open_box: bool, seed: u64) -> Result<ScenarioReport, ScenarioError> {
    let p = p_alive();
    let mut r = ReportBuilder::new("cat", "cat", CAT_PREDICATE);
    r.witness("p_alive", p)
        .witness("norm", cat_state().norm_sqr())
        .judge("box_closed", value_from_probability(p));
    if open_box {
        let alive = cat_outcome(seed);
        r.judge("box_open", if alive { Tv3::True3 } else { Tv3::False3 })
            .note("generator", "ChaCha8Rng::seed_from_u64")
            .note("seed", seed.to_string())
            .note("outcome", if alive { "alive" } else { "dead" });
    }
    r.build()
}
