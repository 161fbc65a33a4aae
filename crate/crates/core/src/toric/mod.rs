//! Toric ideals of integer matrices with nonnegative kernel-free columns:
//! lattice ideals, Markov and Graver bases, fibers and primitivity.

mod binomial;
mod fiber;
mod groebner;
mod ideal;
mod order;

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

pub use binomial::Binomial;
pub use fiber::{fiber_enumerate, is_markov_on_fiber, is_primitive, Fiber};
pub use ideal::{
    graver_basis, lattice_ideal_groebner, minimal_markov, octahedral_generators, saturation_equals,
    IdealMembership,
};
pub use order::MonomialOrder;

use crate::exactmath::IntMatrix;
use crate::incidence::IncidenceMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    Markov,
    Graver,
    Groebner,
    Octahedral,
}

/// Hard limits for the toric computations. Exceeding any of them is an
/// error, never a truncated answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ToricBudget {
    pub pair_queue: u64,
    pub box_points: u64,
    pub fiber_points: u64,
}

impl Default for ToricBudget {
    fn default() -> Self {
        ToricBudget {
            pair_queue: 2_000_000,
            box_points: 50_000_000,
            fiber_points: 2_000_000,
        }
    }
}

/// A matrix whose columns index the variables of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricMatrix {
    pub matrix: IntMatrix,
    pub labels: Vec<String>,
}

impl ToricMatrix {
    pub fn new(matrix: IntMatrix) -> Self {
        let labels = (1..=matrix.cols()).map(|i| i.to_string()).collect();
        ToricMatrix { matrix, labels }
    }

    pub fn with_labels(matrix: IntMatrix, labels: Vec<String>) -> Self {
        assert_eq!(matrix.cols(), labels.len(), "one label per column");
        ToricMatrix { matrix, labels }
    }

    pub fn var_count(&self) -> usize {
        self.matrix.cols()
    }
}

impl From<&IncidenceMatrix> for ToricMatrix {
    fn from(a: &IncidenceMatrix) -> Self {
        ToricMatrix {
            matrix: a.matrix.clone(),
            labels: a.col_labels.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialBasis {
    pub kind: BasisKind,
    pub elements: Vec<Binomial>,
    pub matrix: ToricMatrix,
}

impl BinomialBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Number of elements per degree.
    pub fn degree_counts(&self) -> BTreeMap<u64, usize> {
        let mut m = BTreeMap::new();
        for b in &self.elements {
            *m.entry(b.degree()).or_insert(0) += 1;
        }
        m
    }

    /// Every element lies in the integer kernel of the matrix.
    pub fn all_in_kernel(&self) -> bool {
        self.elements.iter().all(|b| b.in_kernel(&self.matrix.matrix))
    }

    pub fn all_homogeneous(&self) -> bool {
        self.elements.iter().all(Binomial::is_homogeneous)
    }

    pub fn contains_up_to_sign(&self, b: &Binomial) -> bool {
        let nb = b.negated();
        self.elements.iter().any(|e| e == b || *e == nb)
    }

    pub fn display_lines(&self, prefix: &str) -> Vec<String> {
        self.elements
            .iter()
            .map(|b| b.display_with(prefix, &self.matrix.labels))
            .collect()
    }
}

impl Serialize for BinomialBasis {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.elements.iter().map(|b| b.to_json(&self.matrix.labels)))
    }
}
