use serde::Serialize;

use crate::logic::{SchemaKind, Tv3, ValueSet};
use crate::semantics::Model;

use super::{classify, Judgment, JudgmentSet, PredicationClass};

const PREDICATE: &str = "p";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateRow {
    pub left: String,
    pub right: String,
    #[serde(rename = "leftValues")]
    pub left_values: String,
    #[serde(rename = "rightValues")]
    pub right_values: String,
    pub verdict: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExclusivityCertificate {
    pub rows: Vec<CertificateRow>,
    pub distinct: usize,
    pub total: usize,
}

impl ExclusivityCertificate {
    pub fn all_distinct(&self) -> bool {
        self.distinct == self.total
    }
}

fn witness(kind: SchemaKind) -> (JudgmentSet, Model) {
    let names: Vec<String> = (1..=kind.arity()).map(|i| format!("c{i}")).collect();
    let js = kind
        .values()
        .iter()
        .zip(&names)
        .map(|(v, c)| Judgment::new(c.clone(), PREDICATE, *v))
        .collect();
    let mut b = Model::builder().entity("e").predicate(PREDICATE);
    for c in &names {
        b = b.context(c.clone(), ["e"]);
    }
    let m = b
        .pairwise_incompatible()
        .build()
        .expect("witness model is well formed");
    (js, m)
}

fn render(set: ValueSet) -> String {
    let parts: Vec<&str> = set.values().map(Tv3::symbol).collect();
    format!("{{{}}}", parts.join(","))
}

/// Checks, for each of the 21 unordered pairs of predications, that the
/// canonical witness of each classifies as itself and not as the other.
pub fn mutual_exclusivity_certificate() -> ExclusivityCertificate {
    let classes: Vec<PredicationClass> = SchemaKind::ALL
        .iter()
        .map(|k| {
            let (js, m) = witness(*k);
            classify(&js, &m, PREDICATE).expect("witness contexts are declared")
        })
        .collect();

    let mut rows = Vec::new();
    for (i, a) in SchemaKind::ALL.iter().enumerate() {
        for (j, b) in SchemaKind::ALL.iter().enumerate().skip(i + 1) {
            let ok = classes[i].kind() == Some(*a)
                && classes[j].kind() == Some(*b)
                && classes[i].kind() != Some(*b)
                && classes[j].kind() != Some(*a)
                && a.value_set() != b.value_set();
            rows.push(CertificateRow {
                left: a.tag().to_string(),
                right: b.tag().to_string(),
                left_values: render(a.value_set()),
                right_values: render(b.value_set()),
                verdict: if ok { "distinct" } else { "overlap" },
            });
        }
    }
    let distinct = rows.iter().filter(|r| r.verdict == "distinct").count();
    ExclusivityCertificate {
        total: rows.len(),
        distinct,
        rows,
    }
}
