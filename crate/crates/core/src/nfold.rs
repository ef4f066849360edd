//! N-fold and M-fold matrices, and the brick (table) view of their kernel
//! vectors.
//!
//! Bricks are 0-indexed in code. A vector of `A^(M)` with `A` having `c`
//! columns is an `M x c` table whose `i`-th row is brick `i`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{IntMatrix, IntVector};

/// `[A,B]^(N)`: a top block row of `N` copies of `B` over a block diagonal of
/// `N` copies of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NFoldSpec {
    a: IntMatrix,
    b: IntMatrix,
    copies: usize,
}

impl NFoldSpec {
    pub fn new(a: IntMatrix, b: IntMatrix, copies: usize) -> Result<Self> {
        if a.cols() != b.cols() {
            return Err(Error::InvalidSpec(format!("A has {} columns but B has {}", a.cols(), b.cols())));
        }
        if copies == 0 {
            return Err(Error::InvalidSpec("need at least one copy".into()));
        }
        Ok(Self { a, b, copies })
    }

    pub fn a(&self) -> &IntMatrix {
        &self.a
    }

    pub fn b(&self) -> &IntMatrix {
        &self.b
    }

    pub fn copies(&self) -> usize {
        self.copies
    }
}

pub fn assemble_nfold(spec: &NFoldSpec) -> IntMatrix {
    let (a, b, n) = (&spec.a, &spec.b, spec.copies);
    let c = a.cols();
    let (r, d) = (a.rows(), b.rows());
    let mut m = IntMatrix::zeros(d + n * r, n * c);
    for k in 0..n {
        for i in 0..d {
            for j in 0..c {
                m.set(i, k * c + j, b.get(i, j).clone());
            }
        }
        for i in 0..r {
            for j in 0..c {
                m.set(d + k * r + i, k * c + j, a.get(i, j).clone());
            }
        }
    }
    m
}

/// `A^(M)`, the N-fold with `B` the identity.
pub fn assemble_mfold(a: &IntMatrix, copies: usize) -> IntMatrix {
    let spec = NFoldSpec { a: a.clone(), b: IntMatrix::identity(a.cols()), copies: copies.max(1) };
    assemble_nfold(&spec)
}

/// A vector of length `M * c` viewed as `M` bricks of length `c`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrickVector {
    brick_len: usize,
    data: Vec<BigInt>,
}

impl BrickVector {
    pub fn zeros(copies: usize, brick_len: usize) -> Self {
        Self { brick_len, data: vec![BigInt::zero(); copies * brick_len] }
    }

    pub fn from_flat(v: IntVector, brick_len: usize) -> Result<Self> {
        if brick_len == 0 || !v.len().is_multiple_of(brick_len) {
            return Err(Error::Dimension(format!("length {} is not a multiple of brick length {brick_len}", v.len())));
        }
        Ok(Self { brick_len, data: v.0 })
    }

    /// Builds from table rows (one row per brick).
    pub fn from_table(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let brick_len = rows.first().map_or(0, Vec::len);
        if brick_len == 0 {
            return Err(Error::Dimension("empty table".into()));
        }
        let mut data = Vec::with_capacity(rows.len() * brick_len);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != brick_len {
                return Err(Error::Dimension(format!("table row {i} has {} entries, expected {brick_len}", r.len())));
            }
            data.extend(r);
        }
        Ok(Self { brick_len, data })
    }

    /// Literal helper for small tables; panics on ragged input.
    pub fn from_i64_table<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Self::from_table(rows.iter().map(|r| r.as_ref().iter().map(|&v| BigInt::from(v)).collect()).collect())
            .expect("well-formed table literal")
    }

    pub fn copies(&self) -> usize {
        self.data.len() / self.brick_len
    }

    pub fn brick_len(&self) -> usize {
        self.brick_len
    }

    pub fn brick(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.brick_len..(i + 1) * self.brick_len]
    }

    pub fn bricks(&self) -> impl Iterator<Item = &[BigInt]> {
        self.data.chunks(self.brick_len)
    }

    pub fn flat(&self) -> &[BigInt] {
        &self.data
    }

    pub fn to_flat(&self) -> IntVector {
        IntVector(self.data.clone())
    }

    pub fn to_table(&self) -> Vec<Vec<BigInt>> {
        self.bricks().map(<[BigInt]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.brick_len != other.brick_len || self.data.len() != other.data.len() {
            return Err(Error::Dimension(format!(
                "{}x{} table vs {}x{} table",
                self.copies(),
                self.brick_len,
                other.copies(),
                other.brick_len
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self { brick_len: self.brick_len, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self { brick_len: self.brick_len, data: self.data.iter().map(|v| v * k).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigInt::one())
    }

    /// Number of nonzero bricks.
    pub fn type_of(&self) -> usize {
        self.bricks().filter(|b| b.iter().any(|v| !v.is_zero())).count()
    }

    /// Indices of the nonzero bricks, ascending.
    pub fn support_bricks(&self) -> Vec<usize> {
        self.bricks().enumerate().filter(|(_, b)| b.iter().any(|v| !v.is_zero())).map(|(i, _)| i).collect()
    }

    pub fn append_zero_brick(&self) -> Self {
        let mut data = self.data.clone();
        data.extend(std::iter::repeat_with(BigInt::zero).take(self.brick_len));
        Self { brick_len: self.brick_len, data }
    }

    /// Moves the last brick into a new final brick and zeroes its old slot.
    pub fn move_last_brick(&self) -> Self {
        let c = self.brick_len;
        let m = self.copies();
        let mut out = self.append_zero_brick();
        if m == 0 {
            return out;
        }
        for j in 0..c {
            out.data.swap((m - 1) * c + j, m * c + j);
        }
        out
    }

    /// Replaces the last two bricks by their sum.
    pub fn merge_last_two_bricks(&self) -> Result<Self> {
        let m = self.copies();
        if m < 2 {
            return Err(Error::Dimension(format!("cannot merge bricks of a {m}-brick vector")));
        }
        let c = self.brick_len;
        let mut data = self.data[..(m - 1) * c].to_vec();
        for j in 0..c {
            data[(m - 2) * c + j] += &self.data[(m - 1) * c + j];
        }
        Ok(Self { brick_len: c, data })
    }

    /// Brick `i` of the result is brick `perm[i]` of `self`.
    pub fn permute_bricks(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.copies() {
            return Err(Error::Dimension(format!("permutation of length {} for {} bricks", perm.len(), self.copies())));
        }
        let mut data = Vec::with_capacity(self.data.len());
        for &p in perm {
            data.extend_from_slice(self.brick(p));
        }
        Ok(Self { brick_len: self.brick_len, data })
    }

    /// Same vector with brick `i` replaced.
    pub fn with_brick(&self, i: usize, brick: &[BigInt]) -> Self {
        let mut out = self.clone();
        out.data[i * self.brick_len..(i + 1) * self.brick_len].clone_from_slice(brick);
        out
    }
}

impl fmt::Debug for BrickVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, b) in self.bricks().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}", IntVector(b.to_vec()))?;
        }
        write!(f, "]")
    }
}

/// Prints one brick per line with right-aligned columns.
impl fmt::Display for BrickVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.data.iter().map(|v| v.to_string().len()).max().unwrap_or(1);
        for b in self.bricks() {
            let cells: Vec<String> = b.iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_fold_of_row_of_ones() {
        let m = assemble_mfold(&IntMatrix::from_rows(&[[1, 1, 1]]), 2);
        let expect = IntMatrix::from_rows(&[
            [1, 0, 0, 1, 0, 0],
            [0, 1, 0, 0, 1, 0],
            [0, 0, 1, 0, 0, 1],
            [1, 1, 1, 0, 0, 0],
            [0, 0, 0, 1, 1, 1],
        ]);
        assert_eq!(m, expect);
    }

    #[test]
    fn one_fold_stacks_b_over_a() {
        let a = IntMatrix::from_rows(&[[1, 2], [3, 4]]);
        let b = IntMatrix::from_rows(&[[5, 6]]);
        let m = assemble_nfold(&NFoldSpec::new(a, b, 1).unwrap());
        assert_eq!(m, IntMatrix::from_rows(&[[5, 6], [1, 2], [3, 4]]));
    }

    #[test]
    fn mismatched_spec_rejected() {
        let a = IntMatrix::from_rows(&[[1, 1, 1]]);
        let b = IntMatrix::identity(2);
        assert!(matches!(NFoldSpec::new(a, b, 3), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn brick_operations() {
        let x = BrickVector::from_i64_table(&[[0, -1, 1], [1, 0, -1], [0, 0, 0], [-1, 1, 0]]);
        assert_eq!(x.type_of(), 3);
        assert_eq!(BrickVector::zeros(4, 3).type_of(), 0);
        let moved = x.move_last_brick();
        assert_eq!(moved, BrickVector::from_i64_table(&[[0, -1, 1], [1, 0, -1], [0, 0, 0], [0, 0, 0], [-1, 1, 0]]));
        assert_eq!(moved.merge_last_two_bricks().unwrap(), x);
        assert_eq!(x.append_zero_brick().merge_last_two_bricks().unwrap(), x);
        assert_eq!(moved.type_of(), 3);

        let single = BrickVector::from_i64_table(&[[2, -2]]);
        assert_eq!(single.move_last_brick(), BrickVector::from_i64_table(&[[0, 0], [2, -2]]));
        assert!(single.merge_last_two_bricks().is_err());
    }

    #[test]
    fn mixing_shapes_is_an_error() {
        let x = BrickVector::zeros(2, 3);
        let y = BrickVector::zeros(3, 2);
        assert!(x.add(&y).is_err());
    }
}
