use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{rank, rational_kernel_basis, IntMatrix, IntVector};

/// Support-minimal kernel vectors with coprime entries, both signs, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitSet {
    matrix: IntMatrix,
    elements: Vec<IntVector>,
}

impl CircuitSet {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn elements(&self) -> &[IntVector] {
        &self.elements
    }

    pub fn max_support(&self) -> usize {
        self.elements.iter().map(support_size).max().unwrap_or(0)
    }

    /// The first circuit (canonical sign) of largest support.
    pub fn max_support_circuit(&self) -> Option<&IntVector> {
        let best = self.max_support();
        self.elements.iter().filter(|c| first_nonzero_positive(c)).find(|c| support_size(c) == best)
    }
}

fn support_size(v: &IntVector) -> usize {
    v.0.iter().filter(|x| !x.is_zero()).count()
}

fn first_nonzero_positive(v: &IntVector) -> bool {
    v.0.iter().find(|x| !x.is_zero()).is_some_and(BigInt::is_positive)
}

pub fn circuits(m: &IntMatrix) -> Result<CircuitSet> {
    circuits_with(m, super::GraverBudget::default().circuit_subsets)
}

/// Enumerates column subsets up to size `rank + 1`; a subset spans a circuit
/// exactly when its submatrix has a one-dimensional kernel whose generator
/// uses every column of the subset.
pub fn circuits_with(m: &IntMatrix, subset_budget: u64) -> Result<CircuitSet> {
    let n = m.cols();
    let r = rank(m);
    let mut visited: u64 = 0;
    let mut elements = Vec::new();
    for size in 1..=(r + 1).min(n) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            visited += 1;
            if visited > subset_budget {
                return Err(Error::BudgetExceeded { what: "circuit column subsets", limit: subset_budget });
            }
            let cols: Vec<IntVector> = idx.iter().map(|&j| m.column(j)).collect();
            let sub = IntMatrix::from_columns(&cols, m.rows())?;
            let kernel = rational_kernel_basis(&sub);
            if let [gen] = &kernel[..] {
                if gen.0.iter().all(|x| !x.is_zero()) {
                    let mut full = IntVector::zeros(n);
                    for (&j, x) in idx.iter().zip(&gen.0) {
                        full.0[j] = x.clone();
                    }
                    if !first_nonzero_positive(&full) {
                        full = full.neg();
                    }
                    elements.push(full.neg());
                    elements.push(full);
                }
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    elements.sort();
    Ok(CircuitSet { matrix: m.clone(), elements })
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
