use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::DMatrix;

use crate::logic::Tv3;
use crate::quantum::{
    c, superposition, tensor_product, weak_value, Operator, StateVector, C64, TOLERANCE,
};

use super::{value_from_probability, ReportBuilder, ScenarioError, ScenarioReport};

pub const QCC_PREDICATE: &str = "photon_present";

const ARM: [&str; 2] = ["L", "R"];
const POL: [&str; 2] = ["H", "V"];

/// Pre-selected state: a 50:50 beam splitter with a factor `i` on
/// reflection into `L`, horizontal polarization.
pub(crate) fn pre_selected() -> StateVector {
    let arm = superposition(&[
        (c(0.0, FRAC_1_SQRT_2), &StateVector::basis(ARM, 0)),
        (c(FRAC_1_SQRT_2, 0.0), &StateVector::basis(ARM, 1)),
    ])
    .expect("arm state is valid");
    tensor_product(&arm, &StateVector::basis(POL, 0))
}

/// Post-selected state `(|L H> + |R V>) / sqrt 2`.
pub(crate) fn post_selected() -> StateVector {
    let h = c(FRAC_1_SQRT_2, 0.0);
    superposition(&[
        (
            h,
            &tensor_product(&StateVector::basis(ARM, 0), &StateVector::basis(POL, 0)),
        ),
        (
            h,
            &tensor_product(&StateVector::basis(ARM, 1), &StateVector::basis(POL, 1)),
        ),
    ])
    .expect("post-selected state is valid")
}

/// `|+i><+i| - |-i><-i|` with `|±i> = (|H> ± i|V>) / sqrt 2`.
fn sigma_circ() -> Operator {
    let circ = |sign: f64| {
        StateVector::new([c(FRAC_1_SQRT_2, 0.0), c(0.0, sign * FRAC_1_SQRT_2)], POL)
            .expect("circular state is valid")
    };
    let plus = Operator::projector(&circ(1.0), "|+i><+i|");
    let minus = Operator::projector(&circ(-1.0), "|-i><-i|");
    let one = c(1.0, 0.0);
    let diff = Operator::combine(one, &plus, -one, &minus).expect("same dimension");
    Operator::new(diff.matrix().clone(), "sigma_circ").expect("square")
}

fn arm_projector(i: usize) -> Operator {
    let p = Operator::projector(&StateVector::basis(ARM, i), format!("Pi_{}", ARM[i]));
    Operator::kron(&p, &Operator::identity(2), format!("Pi_{}", ARM[i]))
}

fn weak_truth(w: C64) -> Tv3 {
    if (w - c(1.0, 0.0)).norm() <= TOLERANCE {
        Tv3::True3
    } else if w.norm() <= TOLERANCE {
        Tv3::False3
    } else {
        Tv3::Undet3
    }
}

/// Photon presence in each arm is read from the weak value of that arm's
/// projector; the pre-selected state alone leaves it open.
pub fn qcc() -> Result<ScenarioReport, ScenarioError> {
    let (pre, post) = (pre_selected(), post_selected());
    let (pi_l, pi_r) = (arm_projector(0), arm_projector(1));
    let sigma = sigma_circ();
    let arm_local = |i: usize| {
        let p = Operator::projector(&StateVector::basis(ARM, i), "");
        Operator::kron(&p, &sigma, format!("sigma_circ_{}", ARM[i]))
    };

    let wv_l = weak_value(&pi_l, &pre, &post)?;
    let wv_r = weak_value(&pi_r, &pre, &post)?;
    let wv_sigma_l = weak_value(&arm_local(0), &pre, &post)?;
    let wv_sigma_r = weak_value(&arm_local(1), &pre, &post)?;
    let overlap = crate::quantum::inner_product(&post, &pre)?;
    let p_left = pi_l.expectation(&pre)?.re;

    let mut r = ReportBuilder::new("qcc", "photon", QCC_PREDICATE);
    r.witness("overlap_post_pre", overlap)
        .witness("weak_value_pi_l", wv_l)
        .witness("weak_value_pi_r", wv_r)
        .witness("weak_value_sigma_l", wv_sigma_l)
        .witness("weak_value_sigma_r", wv_sigma_r)
        .witness("p_left_pre_selected", p_left)
        .note("basis", pre.labels().join(","))
        .note("polarization_operator", "sigma_circ = |+i><+i| - |-i><-i|, |±i> = (|H> ± i|V>)/sqrt2; arm-local form Pi_arm ⊗ sigma_circ")
        .note("sigma_circ_matrix", format!("{:?}", matrix_rows(sigma.matrix())))
        .judge("left_arm", weak_truth(wv_l))
        .judge("right_arm", weak_truth(wv_r))
        .judge("pre_selected", value_from_probability(p_left));
    r.build()
}

fn matrix_rows(m: &DMatrix<C64>) -> Vec<Vec<(f64, f64)>> {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| (m[(i, j)].re, m[(i, j)].im))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::SchemaKind;

    fn close(a: C64, b: C64) -> bool {
        (a - b).norm() <= 1e-12
    }

    #[test]
    fn weak_values() {
        let r = qcc().unwrap();
        let w = |k: &str| r.witness(k).unwrap().as_complex();
        assert!(close(w("overlap_post_pre"), c(0.0, 0.5)));
        assert!(close(w("weak_value_pi_l"), c(1.0, 0.0)));
        assert!(close(w("weak_value_pi_r"), c(0.0, 0.0)));
        assert!(close(w("weak_value_sigma_l"), c(0.0, 0.0)));
        assert!(close(w("weak_value_sigma_r"), c(1.0, 0.0)));
        assert_eq!(r.classify().unwrap().kind(), Some(SchemaKind::P7));
    }

    #[test]
    fn sigma_circ_is_sigma_y() {
        let m = sigma_circ().matrix().clone();
        let y =
            DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]);
        assert!((m - y).norm() <= 1e-12);
    }
}
