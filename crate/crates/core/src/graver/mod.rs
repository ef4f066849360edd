//! Graver bases, the conformal order, circuits, brute-force minimality
//! oracles and Graver complexity.

mod circuits;
mod complexity;
mod engine;
mod oracle;
mod trie;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{integer_kernel_basis, IntMatrix, IntVector};

pub use circuits::{circuits, circuits_with, CircuitSet};
pub use complexity::{graver_complexity, graver_complexity_literal, graver_complexity_with, pair_representatives};
pub use oracle::{is_graver_element, is_graver_element_with, kernel_vectors_in_box, minimal_kernel_vectors_in_box};

/// Caps on the exact computations. Exceeding one is an error, never a
/// truncated answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraverBudget {
    /// Maximum number of sign representatives held during completion.
    pub max_elements: usize,
    /// Maximum absolute entry of any intermediate vector.
    pub max_entry: i64,
    /// Maximum conformal box size the membership oracle will search.
    pub oracle_box: u64,
    /// Maximum number of column subsets the circuit enumeration inspects.
    pub circuit_subsets: u64,
}

impl Default for GraverBudget {
    fn default() -> Self {
        Self { max_elements: 1_000_000, max_entry: 1 << 40, oracle_box: 10_000_000, circuit_subsets: 10_000_000 }
    }
}

/// Which completion algorithm [`graver_basis_using`] runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    ProjectAndLift,
    Completion,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraverBasis {
    matrix: IntMatrix,
    elements: Vec<IntVector>,
}

impl GraverBasis {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Lexicographically sorted, both signs present.
    pub fn elements(&self) -> &[IntVector] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, v: &IntVector) -> bool {
        self.elements.binary_search(v).is_ok()
    }

    pub fn max_l1_norm(&self) -> BigInt {
        self.elements.iter().map(IntVector::l1_norm).max().unwrap_or_default()
    }

    /// One element per ± pair: those whose first nonzero entry is positive.
    pub fn representatives(&self) -> Vec<&IntVector> {
        self.elements.iter().filter(|v| v.0.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_positive)).collect()
    }

    pub fn is_sign_symmetric(&self) -> bool {
        self.elements.iter().all(|v| self.contains(&v.neg()))
    }

    /// No element is conformally below another.
    pub fn is_minimal(&self) -> bool {
        self.elements
            .iter()
            .enumerate()
            .all(|(i, u)| self.elements.iter().enumerate().all(|(j, v)| i == j || !conforms(u, v).unwrap_or(false)))
    }

    /// Writes `v` as a sign-compatible sum of basis elements by repeated
    /// conformal reduction. `None` if some remainder has no reducer, which
    /// for a genuine Graver basis and a kernel vector never happens.
    pub fn decompose(&self, v: &IntVector) -> Option<Vec<(IntVector, BigInt)>> {
        let mut rest = v.clone();
        let mut parts: Vec<(IntVector, BigInt)> = Vec::new();
        while !rest.is_zero() {
            let g = self.elements.iter().find(|g| conforms(g, &rest).unwrap_or(false))?;
            let times = g.0.iter().zip(&rest.0).filter(|(a, _)| !a.is_zero()).map(|(a, b)| b / a).min()?;
            rest = rest.add(&g.scale(&-&times)).ok()?;
            match parts.iter_mut().find(|(p, _)| p == g) {
                Some((_, k)) => *k += times,
                None => parts.push((g.clone(), times)),
            }
        }
        Some(parts)
    }
}

/// The conformal order: `u ⊑ v` iff `u_j v_j >= 0` and `|u_j| <= |v_j|` for
/// every `j`.
pub fn conforms(u: &IntVector, v: &IntVector) -> Result<bool> {
    if u.len() != v.len() {
        return Err(Error::Dimension(format!("conformal comparison of lengths {} and {}", u.len(), v.len())));
    }
    Ok(u.0.iter().zip(&v.0).all(|(a, b)| a.is_zero() || (a.signum() == b.signum() && a.abs() <= b.abs())))
}

pub fn graver_basis(m: &IntMatrix) -> Result<GraverBasis> {
    graver_basis_with(m, &GraverBudget::default())
}

pub fn graver_basis_with(m: &IntMatrix, budget: &GraverBudget) -> Result<GraverBasis> {
    graver_basis_using(m, budget, Algorithm::ProjectAndLift)
}

pub fn graver_basis_using(m: &IntMatrix, budget: &GraverBudget, algorithm: Algorithm) -> Result<GraverBasis> {
    let kernel = integer_kernel_basis(m);
    let seed = kernel
        .iter()
        .map(|v| {
            v.to_i64()
                .filter(|e| e.iter().all(|x| x.abs() <= budget.max_entry))
                .ok_or(Error::BudgetExceeded { what: "Graver entry size", limit: budget.max_entry as u64 })
        })
        .collect::<Result<Vec<_>>>()?;
    let raw = match algorithm {
        Algorithm::ProjectAndLift => engine::project_and_lift(seed, m.cols(), budget)?,
        Algorithm::Completion => engine::completion(seed, m.cols(), budget)?,
    };
    let mut elements: Vec<IntVector> = raw.iter().map(|v| IntVector::from_i64(v)).collect();
    elements.sort();
    elements.dedup();
    Ok(GraverBasis { matrix: m.clone(), elements })
}
