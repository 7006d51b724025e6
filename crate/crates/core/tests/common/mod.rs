//! Generators and independent oracles shared by the integration suites.
#![allow(dead_code)]

use std::collections::BTreeMap;

use proptest::prelude::*;
use sapta_core::syntax::{resolve_guards, Formula, Node};
use sapta_core::{Model, Tv3};

pub const PREDICATES: [&str; 3] = ["p", "q", "r"];
pub const ENTITIES: [&str; 2] = ["e0", "e1"];
pub const VARS: [&str; 2] = ["x", "y"];

pub fn tv3() -> impl Strategy<Value = Tv3> {
    prop_oneof![Just(Tv3::True3), Just(Tv3::False3), Just(Tv3::Undet3)]
}

/// Arbitrary formulas over guards `g0`, `g1` and the content predicates.
pub fn any_formula() -> impl Strategy<Value = Formula> {
    let atom = (0usize..5, 0usize..2).prop_map(|(n, v)| match n {
        0 | 1 => Formula::guard(format!("g{n}"), VARS[v]),
        _ => Formula::pred(PREDICATES[n - 2], VARS[v]),
    });
    atom.prop_recursive(6, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)),
            (0usize..2, inner.clone()).prop_map(|(v, b)| Formula::forall(VARS[v], b)),
            (0usize..2, inner).prop_map(|(v, b)| Formula::exists(VARS[v], b)),
        ]
    })
    .prop_map(resolve_guards)
}

/// Guard-free formulas over the content predicates, closed by wrapping in
/// universal quantifiers.
pub fn content_formula() -> impl Strategy<Value = Formula> {
    let atom = (0usize..3, 0usize..2).prop_map(|(n, v)| Formula::pred(PREDICATES[n], VARS[v]));
    atom.prop_recursive(5, 32, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)),
            (0usize..2, inner.clone()).prop_map(|(v, b)| Formula::forall(VARS[v], b)),
            (0usize..2, inner).prop_map(|(v, b)| Formula::exists(VARS[v], b)),
        ]
    })
}

pub fn close(f: Formula) -> Formula {
    Formula::forall("x", Formula::forall("y", f))
}

/// Background valuation of every (entity, predicate) pair.
pub type Valuation = BTreeMap<(usize, usize), Tv3>;

pub fn valuation(values: impl Strategy<Value = Tv3>) -> impl Strategy<Value = Valuation> {
    proptest::collection::vec(values, ENTITIES.len() * PREDICATES.len()).prop_map(|vs| {
        let mut m = BTreeMap::new();
        for (i, v) in vs.into_iter().enumerate() {
            m.insert((i / PREDICATES.len(), i % PREDICATES.len()), v);
        }
        m
    })
}

pub fn model_of(v: &Valuation) -> Model {
    let mut b = Model::builder().entities(ENTITIES);
    for p in PREDICATES {
        b = b.predicate(p);
    }
    for ((e, p), t) in v {
        b = b.value("background", ENTITIES[*e], PREDICATES[*p], *t);
    }
    b.build().unwrap()
}

/// Two-valued reference evaluator for guard-free formulas; written against
/// the AST only.
pub fn classical_eval(
    f: &Formula,
    v: &BTreeMap<(usize, usize), bool>,
    env: &mut BTreeMap<String, usize>,
) -> bool {
    match &f.node {
        Node::PredicateApp { name, var } => {
            let p = PREDICATES.iter().position(|q| q == name).unwrap();
            v[&(env[var], p)]
        }
        Node::ContextGuard { .. } => panic!("guard-free formulas only"),
        Node::Not { operand } => !classical_eval(operand, v, env),
        Node::And { left, right } => classical_eval(left, v, env) && classical_eval(right, v, env),
        Node::Or { left, right } => classical_eval(left, v, env) || classical_eval(right, v, env),
        Node::Implies { left, right } => {
            !classical_eval(left, v, env) || classical_eval(right, v, env)
        }
        Node::Iff { left, right } => classical_eval(left, v, env) == classical_eval(right, v, env),
        Node::ForAll { var, body } | Node::Exists { var, body } => {
            let universal = matches!(f.node, Node::ForAll { .. });
            let saved = env.get(var).copied();
            let mut acc = universal;
            for e in 0..ENTITIES.len() {
                env.insert(var.clone(), e);
                let b = classical_eval(body, v, env);
                acc = if universal { acc && b } else { acc || b };
            }
            match saved {
                Some(s) => env.insert(var.clone(), s),
                None => env.remove(var),
            };
            acc
        }
    }
}

/// Pre/post-selected interferometer states in the basis LH, LV, RH, RV,
/// written out by hand.
pub mod qcc_oracle {
    use std::f64::consts::FRAC_1_SQRT_2;

    use sapta_core::quantum::{c, C64};

    pub type V4 = [C64; 4];

    pub fn dot(a: &V4, b: &V4) -> C64 {
        a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
    }

    pub fn mat_vec(m: &[[C64; 4]; 4], v: &V4) -> V4 {
        let mut out = [c(0.0, 0.0); 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i] += m[i][j] * v[j];
            }
        }
        out
    }

    pub fn diag(d: [f64; 4]) -> [[C64; 4]; 4] {
        let mut m = [[c(0.0, 0.0); 4]; 4];
        for i in 0..4 {
            m[i][i] = c(d[i], 0.0);
        }
        m
    }

    // Basis order LH, LV, RH, RV.
    pub fn psi() -> V4 {
        let h = FRAC_1_SQRT_2;
        [c(0.0, h), c(0.0, 0.0), c(h, 0.0), c(0.0, 0.0)]
    }

    pub fn phi() -> V4 {
        let h = FRAC_1_SQRT_2;
        [c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)]
    }

    /// sigma_y on polarization inside one arm: H -> iV, V -> -iH.
    pub fn sigma_in_arm(arm: usize) -> [[C64; 4]; 4] {
        let mut m = [[c(0.0, 0.0); 4]; 4];
        let (h, v) = (2 * arm, 2 * arm + 1);
        m[h][v] = c(0.0, -1.0);
        m[v][h] = c(0.0, 1.0);
        m
    }

    pub fn oracle_weak(m: &[[C64; 4]; 4]) -> C64 {
        dot(&phi(), &mat_vec(m, &psi())) / dot(&phi(), &psi())
    }
}
