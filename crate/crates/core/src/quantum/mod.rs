//! Finite-dimensional pure states, operators and weak values.

use nalgebra::{DMatrix, DVector};

pub use nalgebra::Complex;

pub type C64 = Complex<f64>;

/// Tolerance for normalization and projector checks.
pub const TOLERANCE: f64 = 1e-12;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuantumError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("states are expressed in different bases")]
    BasisMismatch,
    #[error("post-selection impossible: |<post|pre>| = {overlap:e}")]
    OrthogonalSelection { overlap: f64 },
    #[error("state has zero norm")]
    ZeroNorm,
    #[error("{amplitudes} amplitudes but {labels} basis labels")]
    LabelCount { amplitudes: usize, labels: usize },
    #[error("basis label `{0}` repeated")]
    DuplicateLabel(String),
    #[error("operator is not square")]
    NotSquare,
}

/// A normalized pure state over a labelled orthonormal basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: DVector<C64>,
    labels: Vec<String>,
}

impl StateVector {
    /// Builds and normalizes a state.
    pub fn new<S: Into<String>>(
        amplitudes: impl IntoIterator<Item = C64>,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<StateVector, QuantumError> {
        let amplitudes: Vec<C64> = amplitudes.into_iter().collect();
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if amplitudes.len() != labels.len() {
            return Err(QuantumError::LabelCount {
                amplitudes: amplitudes.len(),
                labels: labels.len(),
            });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(QuantumError::DuplicateLabel(l.clone()));
            }
        }
        let v = DVector::from_vec(amplitudes);
        let norm = v.norm();
        if norm <= TOLERANCE {
            return Err(QuantumError::ZeroNorm);
        }
        Ok(StateVector {
            amplitudes: v.unscale(norm),
            labels,
        })
    }

    /// The `index`-th basis state.
    pub fn basis<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        index: usize,
    ) -> StateVector {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut amps = vec![c(0.0, 0.0); labels.len()];
        amps[index] = c(1.0, 0.0);
        StateVector::new(amps, labels).expect("basis state is valid")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, label: &str) -> Option<C64> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.amplitudes[i])
    }

    pub fn probability(&self, label: &str) -> Option<f64> {
        self.amplitude(label).map(|a| a.norm_sqr())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.norm_squared()
    }

    /// The same amplitudes over a new set of labels.
    pub fn relabel<S: Into<String>>(
        &self,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<StateVector, QuantumError> {
        StateVector::new(self.amplitudes.iter().copied(), labels)
    }

    fn check_same_basis(&self, other: &StateVector) -> Result<(), QuantumError> {
        if self.dim() != other.dim() {
            return Err(QuantumError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        if self.labels != other.labels {
            return Err(QuantumError::BasisMismatch);
        }
        Ok(())
    }
}

/// Normalized `sum_k w_k |s_k>` over a shared basis.
pub fn superposition(terms: &[(C64, &StateVector)]) -> Result<StateVector, QuantumError> {
    let (_, first) = terms.first().ok_or(QuantumError::ZeroNorm)?;
    let mut acc = DVector::zeros(first.dim());
    for (w, s) in terms {
        first.check_same_basis(s)?;
        acc += s.amplitudes.map(|z| z * w);
    }
    StateVector::new(acc.iter().copied(), first.labels.clone())
}

/// Projects the first factor of a bipartite state onto `outcome`.
///
/// `composite` must be laid out as `first ⊗ second` with `outcome.dim()`
/// rows. Returns the outcome probability and the normalized conditional
/// state of the second factor, labelled with `second_labels`.
pub fn condition_on_first<S: Into<String>>(
    composite: &StateVector,
    outcome: &StateVector,
    second_labels: impl IntoIterator<Item = S>,
) -> Result<(f64, StateVector), QuantumError> {
    let second_labels: Vec<String> = second_labels.into_iter().map(Into::into).collect();
    let (da, db) = (outcome.dim(), second_labels.len());
    if da * db != composite.dim() {
        return Err(QuantumError::DimensionMismatch {
            left: composite.dim(),
            right: da * db,
        });
    }
    let mut reduced = DVector::zeros(db);
    for j in 0..db {
        for i in 0..da {
            reduced[j] += outcome.amplitudes[i].conj() * composite.amplitudes[i * db + j];
        }
    }
    let probability = reduced.norm_squared();
    Ok((
        probability,
        StateVector::new(reduced.iter().copied(), second_labels)?,
    ))
}

/// `<a|b>`, conjugate-linear in `a`.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<C64, QuantumError> {
    a.check_same_basis(b)?;
    Ok(a.amplitudes.dotc(&b.amplitudes))
}

/// Kronecker product with labels `"a⊗b"`, `a` varying slowest.
pub fn tensor_product(a: &StateVector, b: &StateVector) -> StateVector {
    let amplitudes = a.amplitudes.kronecker(&b.amplitudes);
    let labels = a
        .labels
        .iter()
        .flat_map(|x| b.labels.iter().map(move |y| format!("{x}⊗{y}")))
        .collect();
    StateVector { amplitudes, labels }
}

/// A square matrix acting on states of matching dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    matrix: DMatrix<C64>,
    label: String,
}

impl Operator {
    pub fn new(matrix: DMatrix<C64>, label: impl Into<String>) -> Result<Operator, QuantumError> {
        if !matrix.is_square() {
            return Err(QuantumError::NotSquare);
        }
        Ok(Operator {
            matrix,
            label: label.into(),
        })
    }

    pub fn identity(dim: usize) -> Operator {
        Operator {
            matrix: DMatrix::identity(dim, dim),
            label: "I".to_string(),
        }
    }

    /// `|s><s|`.
    pub fn projector(s: &StateVector, label: impl Into<String>) -> Operator {
        let v = &s.amplitudes;
        Operator {
            matrix: v * v.adjoint(),
            label: label.into(),
        }
    }

    /// `a ⊗ b`, matching [`tensor_product`] ordering.
    pub fn kron(a: &Operator, b: &Operator, label: impl Into<String>) -> Operator {
        Operator {
            matrix: a.matrix.kronecker(&b.matrix),
            label: label.into(),
        }
    }

    /// `alpha * a + beta * b`.
    pub fn combine(
        alpha: C64,
        a: &Operator,
        beta: C64,
        b: &Operator,
    ) -> Result<Operator, QuantumError> {
        if a.dim() != b.dim() {
            return Err(QuantumError::DimensionMismatch {
                left: a.dim(),
                right: b.dim(),
            });
        }
        Ok(Operator {
            matrix: a.matrix.map(|z| z * alpha) + b.matrix.map(|z| z * beta),
            label: format!("({alpha})*{} + ({beta})*{}", a.label, b.label),
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn is_projector(&self) -> bool {
        let sq = &self.matrix * &self.matrix;
        (sq - &self.matrix).iter().all(|z| z.norm() <= TOLERANCE)
    }

    pub fn apply(&self, s: &StateVector) -> Result<DVector<C64>, QuantumError> {
        if self.dim() != s.dim() {
            return Err(QuantumError::DimensionMismatch {
                left: self.dim(),
                right: s.dim(),
            });
        }
        Ok(&self.matrix * &s.amplitudes)
    }

    /// `<s|A|s>`.
    pub fn expectation(&self, s: &StateVector) -> Result<C64, QuantumError> {
        Ok(s.amplitudes.dotc(&self.apply(s)?))
    }
}

/// Weak value `<post|A|pre> / <post|pre>`.
pub fn weak_value(
    a: &Operator,
    pre: &StateVector,
    post: &StateVector,
) -> Result<C64, QuantumError> {
    let overlap = inner_product(post, pre)?;
    if overlap.norm() <= TOLERANCE {
        return Err(QuantumError::OrthogonalSelection {
            overlap: overlap.norm(),
        });
    }
    let numerator = post.amplitudes.dotc(&a.apply(pre)?);
    Ok(numerator / overlap)
}
