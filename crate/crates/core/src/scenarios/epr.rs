use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::quantum::{
    c, condition_on_first, inner_product, superposition, tensor_product, StateVector,
};

use super::{value_from_probability, ReportBuilder, ScenarioError, ScenarioReport};

pub const EPR_PREDICATE: &str = "b_is_b0";

const A: [&str; 2] = ["A0", "A1"];
const B: [&str; 2] = ["B0", "B1"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum EprBasis {
    ZeroOne,
    PlusMinus,
}

impl EprBasis {
    pub const ALL: [EprBasis; 2] = [EprBasis::ZeroOne, EprBasis::PlusMinus];

    pub fn context(self) -> &'static str {
        match self {
            EprBasis::ZeroOne => "measure_zero_one",
            EprBasis::PlusMinus => "measure_plus_minus",
        }
    }
}

/// Which of the two outcomes of her chosen basis Alice obtains: `A0` or
/// `A+` for `First`, `A1` or `A-` for `Second`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum AliceOutcome {
    #[default]
    First,
    Second,
}

/// `(|0> + sign |1>) / sqrt 2` over `labels`.
fn rotated(labels: [&str; 2], sign: f64) -> StateVector {
    superposition(&[
        (c(FRAC_1_SQRT_2, 0.0), &StateVector::basis(labels, 0)),
        (c(sign * FRAC_1_SQRT_2, 0.0), &StateVector::basis(labels, 1)),
    ])
    .expect("rotated state is valid")
}

/// Builds the singlet-like pair in the 0/1 basis and in the plus/minus basis,
/// then conditions B on Alice's outcome for each requested basis.
pub fn epr(bases: &[EprBasis], outcome: AliceOutcome) -> Result<ScenarioReport, ScenarioError> {
    let (a0, a1) = (StateVector::basis(A, 0), StateVector::basis(A, 1));
    let (b0, b1) = (StateVector::basis(B, 0), StateVector::basis(B, 1));
    let (ap, am) = (rotated(A, 1.0), rotated(A, -1.0));
    let (bp, bm) = (rotated(B, 1.0), rotated(B, -1.0));

    let h = c(FRAC_1_SQRT_2, 0.0);
    let zero_one = superposition(&[
        (h, &tensor_product(&a0, &b0)),
        (h, &tensor_product(&a1, &b1)),
    ])?;
    let plus_minus = superposition(&[
        (h, &tensor_product(&ap, &bp)),
        (h, &tensor_product(&am, &bm)),
    ])?;
    let max_diff = zero_one
        .amplitudes()
        .iter()
        .zip(plus_minus.amplitudes().iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max);

    let mut r = ReportBuilder::new("epr", "pair", EPR_PREDICATE);
    r.witness("max_amplitude_difference", max_diff);

    let mut done = Vec::new();
    for &basis in bases {
        if done.contains(&basis) {
            continue;
        }
        done.push(basis);
        let (alice, partner, tag) = match (basis, outcome) {
            (EprBasis::ZeroOne, AliceOutcome::First) => (&a0, &b0, "A0"),
            (EprBasis::ZeroOne, AliceOutcome::Second) => (&a1, &b1, "A1"),
            (EprBasis::PlusMinus, AliceOutcome::First) => (&ap, &bp, "A+"),
            (EprBasis::PlusMinus, AliceOutcome::Second) => (&am, &bm, "A-"),
        };
        let (p_alice, b_state) = condition_on_first(&zero_one, alice, B)?;
        let fidelity = inner_product(partner, &b_state)?.norm_sqr();
        let p_b0 = inner_product(&b0, &b_state)?.norm_sqr();
        let ctx = basis.context();
        r.witness(format!("p_alice_{ctx}"), p_alice)
            .witness(format!("fidelity_b_partner_{ctx}"), fidelity)
            .witness(format!("p_b0_{ctx}"), p_b0)
            .note(format!("alice_outcome_{ctx}"), tag)
            .judge(ctx, value_from_probability(p_b0));
    }
    r.build()
}
