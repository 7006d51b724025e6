//! Three basic truth values and the strong-Kleene connectives used inside a
//! single context.
//!
//! Implication is material: `a -> b` is `~a | b`. Swapping in a different
//! implication table only touches [`impl3`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// One of the three basic truth values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tv3 {
    #[serde(rename = "T")]
    True3,
    #[serde(rename = "F")]
    False3,
    /// Indeterminate (avaktavyam).
    #[serde(rename = "U")]
    Undet3,
}

/// Name of the connective tables, reported alongside evaluation output.
pub const CONNECTIVES: &str = "strong-kleene";
/// Name of the implication table.
pub const IMPLICATION: &str = "material";

impl Tv3 {
    pub const ALL: [Tv3; 3] = [Tv3::True3, Tv3::False3, Tv3::Undet3];

    pub fn symbol(self) -> &'static str {
        match self {
            Tv3::True3 => "T",
            Tv3::False3 => "F",
            Tv3::Undet3 => "U",
        }
    }

    pub fn is_classical(self) -> bool {
        self != Tv3::Undet3
    }

    fn bit(self) -> u8 {
        match self {
            Tv3::True3 => 0b001,
            Tv3::False3 => 0b010,
            Tv3::Undet3 => 0b100,
        }
    }
}

impl From<bool> for Tv3 {
    fn from(b: bool) -> Self {
        if b {
            Tv3::True3
        } else {
            Tv3::False3
        }
    }
}

impl fmt::Display for Tv3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown truth value {0:?}, expected \"T\", \"F\" or \"U\"")]
pub struct ParseTvError(pub String);

impl FromStr for Tv3 {
    type Err = ParseTvError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "T" => Ok(Tv3::True3),
            "F" => Ok(Tv3::False3),
            "U" => Ok(Tv3::Undet3),
            other => Err(ParseTvError(other.to_string())),
        }
    }
}

pub fn neg3(a: Tv3) -> Tv3 {
    match a {
        Tv3::True3 => Tv3::False3,
        Tv3::False3 => Tv3::True3,
        Tv3::Undet3 => Tv3::Undet3,
    }
}

pub fn conj3(a: Tv3, b: Tv3) -> Tv3 {
    match (a, b) {
        (Tv3::False3, _) | (_, Tv3::False3) => Tv3::False3,
        (Tv3::True3, Tv3::True3) => Tv3::True3,
        _ => Tv3::Undet3,
    }
}

pub fn disj3(a: Tv3, b: Tv3) -> Tv3 {
    match (a, b) {
        (Tv3::True3, _) | (_, Tv3::True3) => Tv3::True3,
        (Tv3::False3, Tv3::False3) => Tv3::False3,
        _ => Tv3::Undet3,
    }
}

pub fn impl3(a: Tv3, b: Tv3) -> Tv3 {
    disj3(neg3(a), b)
}

pub fn iff3(a: Tv3, b: Tv3) -> Tv3 {
    conj3(impl3(a, b), impl3(b, a))
}

impl std::ops::Not for Tv3 {
    type Output = Tv3;

    fn not(self) -> Tv3 {
        neg3(self)
    }
}

impl std::ops::BitAnd for Tv3 {
    type Output = Tv3;

    fn bitand(self, rhs: Tv3) -> Tv3 {
        conj3(self, rhs)
    }
}

impl std::ops::BitOr for Tv3 {
    type Output = Tv3;

    fn bitor(self, rhs: Tv3) -> Tv3 {
        disj3(self, rhs)
    }
}

/// A subset of `{T, F, U}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ValueSet(u8);

impl ValueSet {
    pub const EMPTY: ValueSet = ValueSet(0);

    pub fn insert(&mut self, v: Tv3) {
        self.0 |= v.bit();
    }

    pub fn contains(self, v: Tv3) -> bool {
        self.0 & v.bit() != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Members in the canonical order T, F, U.
    pub fn values(self) -> impl Iterator<Item = Tv3> {
        Tv3::ALL.into_iter().filter(move |v| self.contains(*v))
    }

    /// All seven nonempty subsets, in schema order.
    pub fn nonempty() -> impl Iterator<Item = ValueSet> {
        SchemaKind::ALL.into_iter().map(SchemaKind::value_set)
    }
}

impl FromIterator<Tv3> for ValueSet {
    fn from_iter<I: IntoIterator<Item = Tv3>>(iter: I) -> Self {
        let mut set = ValueSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

/// The seven predications of the sevenfold schema, one per nonempty subset of
/// `{T, F, U}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemaKind {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P7,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("schema index {0} out of range 1..=7")]
pub struct SchemaIndexError(pub u8);

impl SchemaKind {
    pub const ALL: [SchemaKind; 7] = [
        SchemaKind::P1,
        SchemaKind::P2,
        SchemaKind::P3,
        SchemaKind::P4,
        SchemaKind::P5,
        SchemaKind::P6,
        SchemaKind::P7,
    ];

    pub fn index(self) -> u8 {
        self as u8 + 1
    }

    /// Values asserted by the predication, one per context, in textual order.
    pub fn values(self) -> &'static [Tv3] {
        use Tv3::*;
        match self {
            SchemaKind::P1 => &[True3],
            SchemaKind::P2 => &[False3],
            SchemaKind::P3 => &[Undet3],
            SchemaKind::P4 => &[True3, False3],
            SchemaKind::P5 => &[True3, Undet3],
            SchemaKind::P6 => &[False3, Undet3],
            SchemaKind::P7 => &[True3, False3, Undet3],
        }
    }

    pub fn arity(self) -> usize {
        self.values().len()
    }

    pub fn value_set(self) -> ValueSet {
        self.values().iter().copied().collect()
    }

    pub fn from_value_set(set: ValueSet) -> Option<SchemaKind> {
        SchemaKind::ALL.into_iter().find(|k| k.value_set() == set)
    }

    pub fn tag(self) -> &'static str {
        match self {
            SchemaKind::P1 => "P1",
            SchemaKind::P2 => "P2",
            SchemaKind::P3 => "P3",
            SchemaKind::P4 => "P4",
            SchemaKind::P5 => "P5",
            SchemaKind::P6 => "P6",
            SchemaKind::P7 => "P7",
        }
    }

    /// Transliterated Sanskrit name of the predication.
    pub fn sanskrit(self) -> &'static str {
        match self {
            SchemaKind::P1 => "syāt asti",
            SchemaKind::P2 => "syāt nāsti",
            SchemaKind::P3 => "syāt avaktavyam",
            SchemaKind::P4 => "syāt asti cha nāsti cha",
            SchemaKind::P5 => "syāt asti cha avaktavyam cha",
            SchemaKind::P6 => "syāt nāsti cha avaktavyam cha",
            SchemaKind::P7 => "syād asti cha nāsti cha avaktavyam cha",
        }
    }
}

impl TryFrom<u8> for SchemaKind {
    type Error = SchemaIndexError;

    fn try_from(n: u8) -> Result<Self, Self::Error> {
        match n {
            1..=7 => Ok(SchemaKind::ALL[n as usize - 1]),
            _ => Err(SchemaIndexError(n)),
        }
    }
}

impl fmt::Display for SchemaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}
