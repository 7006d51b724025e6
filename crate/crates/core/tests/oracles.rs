//! Numbers worked out by hand and recomputed here with plain array
//! arithmetic, compared against the library.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

mod common;

use common::qcc_oracle::*;
use sapta_core::quantum::{
    c, inner_product, tensor_product, weak_value, Operator, StateVector, C64,
};
use sapta_core::scenarios::{self, visibility, AliceOutcome, EprBasis, SlitSetup};

const TOL: f64 = 1e-12;

fn near(a: C64, b: C64) -> bool {
    (a - b).norm() <= TOL
}

#[test]
fn qcc_against_hand_algebra() {
    assert!(near(dot(&phi(), &psi()), c(0.0, 0.5)));
    let r = scenarios::qcc().unwrap();
    let w = |k: &str| r.witness(k).unwrap().as_complex();
    assert!(near(w("overlap_post_pre"), dot(&phi(), &psi())));
    assert!(near(
        w("weak_value_pi_l"),
        oracle_weak(&diag([1.0, 1.0, 0.0, 0.0]))
    ));
    assert!(near(
        w("weak_value_pi_r"),
        oracle_weak(&diag([0.0, 0.0, 1.0, 1.0]))
    ));
    assert!(near(w("weak_value_sigma_l"), oracle_weak(&sigma_in_arm(0))));
    assert!(near(w("weak_value_sigma_r"), oracle_weak(&sigma_in_arm(1))));
    assert!(near(oracle_weak(&diag([1.0, 1.0, 0.0, 0.0])), c(1.0, 0.0)));
    assert!(near(oracle_weak(&diag([0.0, 0.0, 1.0, 1.0])), c(0.0, 0.0)));
    assert!(near(oracle_weak(&sigma_in_arm(1)), c(1.0, 0.0)));
}

#[test]
fn library_states_match_hand_layout() {
    let l = StateVector::basis(["L", "R"], 0);
    let h = StateVector::basis(["H", "V"], 0);
    let lh = tensor_product(&l, &h);
    assert_eq!(lh.labels(), ["L⊗H", "L⊗V", "R⊗H", "R⊗V"]);
    let pre = StateVector::new(psi(), lh.labels().to_vec()).unwrap();
    let post = StateVector::new(phi(), lh.labels().to_vec()).unwrap();
    assert!(near(inner_product(&post, &pre).unwrap(), c(0.0, 0.5)));
    let pi_l = Operator::kron(
        &Operator::projector(&l, "L"),
        &Operator::identity(2),
        "Pi_L",
    );
    assert!(near(weak_value(&pi_l, &pre, &post).unwrap(), c(1.0, 0.0)));
    let orth = StateVector::new(
        [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        lh.labels().to_vec(),
    )
    .unwrap();
    assert!(weak_value(&pi_l, &pre, &orth).is_err());
}

#[test]
fn epr_bases_expand_to_the_same_state() {
    // (A+B+ + A-B-)/sqrt2 = ((A0+A1)(B0+B1) + (A0-A1)(B0-B1)) / (2 sqrt2)
    //                     = (A0B0 + A1B1)/sqrt2.
    let h = FRAC_1_SQRT_2;
    let zero_one = [h, 0.0, 0.0, h];
    let plus = [0.5, 0.5, 0.5, 0.5];
    let minus = [0.5, -0.5, -0.5, 0.5];
    let plus_minus: Vec<f64> = plus.iter().zip(minus).map(|(p, m)| h * (p + m)).collect();
    for (a, b) in zero_one.iter().zip(&plus_minus) {
        assert!((a - b).abs() <= TOL);
    }
    let r = scenarios::epr(&EprBasis::ALL, AliceOutcome::First).unwrap();
    assert!(
        r.witness("max_amplitude_difference")
            .unwrap()
            .as_complex()
            .re
            <= TOL
    );
    // Alice finds A0 or A+ with probability 1/2; B is then B0 or B+ exactly.
    for ctx in ["measure_zero_one", "measure_plus_minus"] {
        let p = r
            .witness(&format!("p_alice_{ctx}"))
            .unwrap()
            .as_complex()
            .re;
        assert!((p - 0.5).abs() <= TOL);
    }
    let p_b0 = r
        .witness("p_b0_measure_plus_minus")
        .unwrap()
        .as_complex()
        .re;
    assert!((p_b0 - 0.5).abs() <= TOL);
}

#[test]
fn two_path_visibility_by_brute_force() {
    let (a1, a2) = (FRAC_1_SQRT_2, FRAC_1_SQRT_2);
    let grid = 1000;
    let (mut lo, mut hi) = (f64::MAX, f64::MIN);
    for k in 0..grid {
        let t = 2.0 * PI * k as f64 / grid as f64;
        let i = (a1 + a2 * t.cos()).powi(2) + (a2 * t.sin()).powi(2);
        lo = lo.min(i);
        hi = hi.max(i);
    }
    let oracle = (hi - lo) / (hi + lo);
    assert!((oracle - 1.0).abs() <= TOL);
    let state = StateVector::new([c(a1, 0.0), c(a2, 0.0)], ["path1", "path2"]).unwrap();
    assert!((visibility(&state, false) - oracle).abs() <= TOL);
    assert_eq!(visibility(&state, true), 0.0);
    let r = scenarios::double_slit(&SlitSetup::ALL).unwrap();
    assert!((r.witness("visibility_unobserved").unwrap().as_complex().re - 1.0).abs() <= TOL);
    assert_eq!(
        r.witness("visibility_which_path").unwrap().as_complex().re,
        0.0
    );
}
