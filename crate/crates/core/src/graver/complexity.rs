//! Graver complexity `g(A, B)`: the largest 1-norm in the Graver basis of the
//! matrix whose columns are `B·v` for `v` in `G(A)`.
//!
//! With every element of `G(A)` taken as a column, the column matrix has the
//! shape `[V, -V]` where `V` holds one column per ± pair. Its Graver basis is
//! `±(e_i, e_i)` for every nonzero column `i` together with the sign-splittings
//! `(x, y)` (`x_j y_j <= 0`) of the elements `x - y` of `G(V)`, and a splitting
//! has the 1-norm of the element it splits. So
//! `g(A, B) = max(max_{z in G(V)} |z|_1, 2)` (the 2 only when some column is
//! nonzero), which is what [`graver_complexity_with`] evaluates.
//! [`graver_complexity_literal`] computes `G([V, -V])` directly and is kept
//! as a cross-check for small inputs.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{graver_basis_with, GraverBasis, GraverBudget};
use crate::error::{Error, Result};
use crate::exact::{IntMatrix, IntVector};

pub fn graver_complexity(a: &IntMatrix, b: &IntMatrix) -> Result<BigInt> {
    graver_complexity_with(a, b, &GraverBudget::default())
}

/// One element of every ± pair of `G(A)` (first nonzero entry positive).
pub fn pair_representatives(basis: &GraverBasis) -> Vec<IntVector> {
    basis.representatives().into_iter().cloned().collect()
}

fn column_matrix(a: &IntMatrix, b: &IntMatrix, vectors: &[IntVector]) -> Result<IntMatrix> {
    if a.cols() != b.cols() {
        return Err(Error::Dimension(format!("A has {} columns, B has {}", a.cols(), b.cols())));
    }
    let cols = vectors.iter().map(|v| b.mul_vec(v)).collect::<Result<Vec<_>>>()?;
    IntMatrix::from_columns(&cols, b.rows())
}

pub fn graver_complexity_with(a: &IntMatrix, b: &IntMatrix, budget: &GraverBudget) -> Result<BigInt> {
    if a.cols() != b.cols() {
        return Err(Error::Dimension(format!("A has {} columns, B has {}", a.cols(), b.cols())));
    }
    let inner = graver_basis_with(a, budget)?;
    if inner.is_empty() {
        return Ok(BigInt::zero());
    }
    let reps = pair_representatives(&inner);
    let v = column_matrix(a, b, &reps)?;
    let outer = graver_basis_with(&v, budget)?;
    let any_nonzero_column = (0..v.cols()).any(|j| !v.column(j).is_zero());
    let pair_norm = if any_nonzero_column { BigInt::from(2) } else { BigInt::zero() };
    Ok(outer.max_l1_norm().max(pair_norm))
}

/// Same value, computed from the matrix with one column per element of
/// `G(A)` (both signs).
pub fn graver_complexity_literal(a: &IntMatrix, b: &IntMatrix, budget: &GraverBudget) -> Result<BigInt> {
    let inner = graver_basis_with(a, budget)?;
    if inner.is_empty() {
        return Ok(BigInt::zero());
    }
    let v = column_matrix(a, b, inner.elements())?;
    Ok(graver_basis_with(&v, budget)?.max_l1_norm())
}
