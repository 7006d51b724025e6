use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::quantum::{c, condition_on_first, superposition, tensor_product, Operator, StateVector};

use super::{value_from_probability, ReportBuilder, ScenarioError, ScenarioReport};

pub const WIGNER_PREDICATE: &str = "spin_up";

const SPIN: [&str; 2] = ["up", "down"];
const FRIEND: [&str; 2] = ["saw_up", "saw_down"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Perspective {
    Friend,
    Wigner,
}

impl Perspective {
    pub const ALL: [Perspective; 2] = [Perspective::Friend, Perspective::Wigner];

    pub fn context(self) -> &'static str {
        match self {
            Perspective::Friend => "friend_lab",
            Perspective::Wigner => "wigner_outside",
        }
    }
}

/// What the friend records inside the lab.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum SpinOutcome {
    #[default]
    Up,
    Down,
}

fn spin(i: usize) -> StateVector {
    StateVector::basis(SPIN, i)
}

/// The friend sees a collapsed spin; Wigner, outside, assigns the correlated
/// spin-and-friend pair and so cannot settle the spin.
pub fn wigner(
    perspectives: &[Perspective],
    outcome: SpinOutcome,
) -> Result<ScenarioReport, ScenarioError> {
    let h = c(FRAC_1_SQRT_2, 0.0);
    let s = superposition(&[(h, &spin(0)), (h, &spin(1))])?;
    let seen = match outcome {
        SpinOutcome::Up => 0,
        SpinOutcome::Down => 1,
    };
    let collapsed = StateVector::new(
        Operator::projector(&spin(seen), "P")
            .apply(&s)?
            .iter()
            .copied(),
        SPIN,
    )?;

    let composite = superposition(&[
        (h, &tensor_product(&spin(0), &StateVector::basis(FRIEND, 0))),
        (h, &tensor_product(&spin(1), &StateVector::basis(FRIEND, 1))),
    ])?;
    let (p_up, _) = condition_on_first(&composite, &spin(0), FRIEND)?;
    let (p_down, _) = condition_on_first(&composite, &spin(1), FRIEND)?;

    let mut r = ReportBuilder::new("wigner", "spin", WIGNER_PREDICATE);
    r.witness("norm_composite", composite.norm_sqr())
        .witness("p_up_wigner", p_up)
        .witness("p_down_wigner", p_down)
        .note("friend_outcome", SPIN[seen]);
    let p_up_friend = collapsed.probability("up").expect("up is a basis label");
    r.witness("p_up_friend", p_up_friend);

    let mut done = Vec::new();
    for &p in perspectives {
        if done.contains(&p) {
            continue;
        }
        done.push(p);
        let value = match p {
            Perspective::Friend => value_from_probability(p_up_friend),
            Perspective::Wigner => value_from_probability(p_up),
        };
        r.judge(p.context(), value);
    }
    r.build()
}
