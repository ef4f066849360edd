//! Brute-force oracles, independent of the completion engine.
//!
//! Both searches walk integer boxes coordinate by coordinate and prune a
//! branch as soon as some row of `m · z` can no longer reach zero given the
//! ranges of the coordinates still unassigned.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::{IntMatrix, IntVector};

struct BoxSearch {
    rows: Vec<Vec<i128>>,
    lo: Vec<i128>,
    hi: Vec<i128>,
    // suffix_min[i][j]: least value rows[i] · z[j..] can take inside the box
    suffix_min: Vec<Vec<i128>>,
    suffix_max: Vec<Vec<i128>>,
}

impl BoxSearch {
    fn new(m: &[Vec<i64>], lo: Vec<i128>, hi: Vec<i128>) -> Self {
        let n = lo.len();
        let rows: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
        let mut suffix_min = vec![vec![0i128; n + 1]; rows.len()];
        let mut suffix_max = vec![vec![0i128; n + 1]; rows.len()];
        for (i, r) in rows.iter().enumerate() {
            for j in (0..n).rev() {
                let (a, b) = (r[j] * lo[j], r[j] * hi[j]);
                suffix_min[i][j] = suffix_min[i][j + 1] + a.min(b);
                suffix_max[i][j] = suffix_max[i][j + 1] + a.max(b);
            }
        }
        Self { rows, lo, hi, suffix_min, suffix_max }
    }

    /// Calls `visit` on every kernel point of the box; stops early when
    /// `visit` returns `true`. Returns whether it stopped early.
    fn run<F: FnMut(&[i128]) -> bool>(&self, mut visit: F) -> bool {
        let n = self.lo.len();
        let mut z = vec![0i128; n];
        let mut partial = vec![0i128; self.rows.len()];
        self.descend(0, &mut z, &mut partial, &mut visit)
    }

    fn descend<F: FnMut(&[i128]) -> bool>(
        &self,
        j: usize,
        z: &mut [i128],
        partial: &mut [i128],
        visit: &mut F,
    ) -> bool {
        let feasible = (0..self.rows.len())
            .all(|i| partial[i] + self.suffix_min[i][j] <= 0 && partial[i] + self.suffix_max[i][j] >= 0);
        if !feasible {
            return false;
        }
        if j == z.len() {
            return visit(z);
        }
        for value in self.lo[j]..=self.hi[j] {
            z[j] = value;
            for (i, r) in self.rows.iter().enumerate() {
                partial[i] += r[j] * value;
            }
            let stop = self.descend(j + 1, z, partial, visit);
            for (i, r) in self.rows.iter().enumerate() {
                partial[i] -= r[j] * value;
            }
            if stop {
                z[j] = 0;
                return true;
            }
        }
        z[j] = 0;
        false
    }
}

fn small_matrix(m: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    m.to_i64_rows().ok_or(Error::BudgetExceeded { what: "oracle matrix entry size", limit: i64::MAX as u64 })
}

fn box_size<I: IntoIterator<Item = u128>>(widths: I) -> u128 {
    widths.into_iter().fold(1u128, |acc, w| acc.saturating_mul(w))
}

pub fn is_graver_element(m: &IntMatrix, x: &IntVector) -> Result<bool> {
    is_graver_element_with(m, x, super::GraverBudget::default().oracle_box)
}

/// `true` iff `x` is a nonzero kernel vector of `m` with no nonzero kernel
/// vector `z ≠ x`, `z ⊑ x`. The search covers the whole conformal box of
/// `x`; a box with more than `box_budget` points is refused.
pub fn is_graver_element_with(m: &IntMatrix, x: &IntVector, box_budget: u64) -> Result<bool> {
    if x.len() != m.cols() {
        return Err(Error::Dimension(format!("vector of length {} for {} columns", x.len(), m.cols())));
    }
    if x.is_zero() || !m.annihilates(x) {
        return Ok(false);
    }
    let xs: Vec<i128> =
        x.0.iter()
            .map(|v| v.to_i128())
            .collect::<Option<_>>()
            .ok_or(Error::BudgetExceeded { what: "oracle box size", limit: box_budget })?;
    let size = box_size(xs.iter().map(|v| v.unsigned_abs() + 1));
    if size > box_budget as u128 {
        return Err(Error::BudgetExceeded { what: "oracle box size", limit: box_budget });
    }
    let rows = small_matrix(m)?;
    let lo: Vec<i128> = xs.iter().map(|&v| v.min(0)).collect();
    let hi: Vec<i128> = xs.iter().map(|&v| v.max(0)).collect();
    let search = BoxSearch::new(&rows, lo, hi);
    let found = search.run(|z| z.iter().any(|&v| v != 0) && z != &xs[..]);
    Ok(!found)
}

/// Every nonzero kernel vector of `m` with entries in `[-bound, bound]`,
/// lexicographically sorted.
pub fn kernel_vectors_in_box(m: &IntMatrix, bound: u64, box_budget: u64) -> Result<Vec<IntVector>> {
    let n = m.cols();
    let size = box_size(std::iter::repeat_n(2 * bound as u128 + 1, n));
    if size > box_budget as u128 {
        return Err(Error::BudgetExceeded { what: "oracle box size", limit: box_budget });
    }
    let rows = small_matrix(m)?;
    let b = bound as i128;
    let search = BoxSearch::new(&rows, vec![-b; n], vec![b; n]);
    let mut out = Vec::new();
    search.run(|z| {
        if z.iter().any(|&v| v != 0) {
            out.push(IntVector(z.iter().map(|&v| BigInt::from(v)).collect()));
        }
        false
    });
    out.sort();
    Ok(out)
}

/// The brute-force Graver set inside a box: kernel vectors that pass
/// [`is_graver_element_with`].
pub fn minimal_kernel_vectors_in_box(m: &IntMatrix, bound: u64, box_budget: u64) -> Result<Vec<IntVector>> {
    let mut out = Vec::new();
    for v in kernel_vectors_in_box(m, bound, box_budget)? {
        if is_graver_element_with(m, &v, box_budget)? {
            out.push(v);
        }
    }
    Ok(out)
}
