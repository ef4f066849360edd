//! Exact integer and rational linear algebra.
//!
//! Everything here works over [`BigInt`] / [`BigRational`]; there is no
//! floating point anywhere in the crate. Matrices are small (tens of rows and
//! columns), so dense row-major storage and textbook elimination are enough.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// Integer vector; its ambient dimension is the entry count.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntVector(pub Vec<BigInt>);

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from small-integer rows. Panics on ragged input, so it
    /// is meant for literals; parsers go through [`IntMatrix::from_big_rows`].
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged matrix literal");
            data.extend(r.iter().map(|&v| BigInt::from(v)));
        }
        Self { rows: rows.len(), cols, data }
    }

    /// Builds a matrix from rows of arbitrary-precision entries; `cols` is
    /// needed to give a zero-row matrix a width.
    pub fn from_big_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            data.extend(r);
        }
        Ok(Self { rows: nrows, cols, data })
    }

    /// Matrix whose columns are the given vectors, all of length `dim`.
    pub fn from_columns(columns: &[IntVector], dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != dim {
                return Err(Error::Dimension(format!("column {j} has length {}, expected {dim}", c.len())));
            }
            for (i, v) in c.0.iter().enumerate() {
                m.data[i * columns.len() + j] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> IntVector {
        IntVector((0..self.rows).map(|r| self.get(r, c).clone()).collect())
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &IntVector) -> Result<IntVector> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("matrix has {} columns, vector has length {}", self.cols, v.len())));
        }
        Ok(IntVector((0..self.rows).map(|r| self.row(r).iter().zip(&v.0).map(|(a, b)| a * b).sum()).collect()))
    }

    /// `true` iff `v` is in the integer kernel.
    pub fn annihilates(&self, v: &IntVector) -> bool {
        v.len() == self.cols
            && (0..self.rows).all(|r| self.row(r).iter().zip(&v.0).map(|(a, b)| a * b).sum::<BigInt>().is_zero())
    }

    /// Entries as `i64`, or `None` if any entry does not fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|v| v.to_i64()).collect()).collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} ", self.rows, self.cols)?;
        f.debug_list().entries((0..self.rows).map(|r| IntVector(self.row(r).to_vec()))).finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl IntVector {
    pub fn zeros(n: usize) -> Self {
        Self(vec![BigInt::zero(); n])
    }

    pub fn from_i64(v: &[i64]) -> Self {
        Self(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|v| -v).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self(self.0.iter().map(|v| v * k).collect())
    }

    /// Componentwise sum; lengths must agree.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::Dimension(format!("vector lengths {} and {} differ", self.len(), other.len())));
        }
        Ok(Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn l1_norm(&self) -> BigInt {
        self.0.iter().map(|v| v.abs()).sum()
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|v| v.to_i64()).collect()
    }
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// gcd of the absolute values; the empty gcd is 0.
pub fn gcd_all<'a, I>(values: I) -> BigInt
where
    I: IntoIterator<Item = &'a BigInt>,
{
    values.into_iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// Reduced row echelon form over the rationals. Returns the reduced rows and
/// the pivot column of each nonzero row.
pub fn rref(m: &IntMatrix) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut a: Vec<Vec<BigRational>> =
        (0..m.rows()).map(|r| m.row(r).iter().map(|v| BigRational::from_integer(v.clone())).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols() {
        if row == a.len() {
            break;
        }
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for v in a[row].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot = a[row].clone();
        for (r, target) in a.iter_mut().enumerate() {
            if r != row && !target[col].is_zero() {
                let factor = target[col].clone();
                for (x, p) in target[col..].iter_mut().zip(&pivot[col..]) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    a.truncate(row);
    (a, pivots)
}

pub fn rank(m: &IntMatrix) -> usize {
    rref(m).1.len()
}

/// Dimension of the rational null space, `cols - rank`.
pub fn rational_kernel_dimension(m: &IntMatrix) -> usize {
    m.cols() - rank(m)
}

/// A basis of the rational null space, each vector scaled to a primitive
/// integer vector (coprime entries, positive entry at its free column).
pub fn rational_kernel_basis(m: &IntMatrix) -> Vec<IntVector> {
    let (reduced, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); m.cols()];
            v[f] = BigRational::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            primitive_from_rationals(&v)
        })
        .collect()
}

/// Clears denominators and divides out the content.
pub fn primitive_from_rationals(v: &[BigRational]) -> IntVector {
    let lcm = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = gcd_all(&ints);
    if g.is_zero() {
        return IntVector(ints);
    }
    IntVector(ints.into_iter().map(|x| x / &g).collect())
}

/// Brings integer rows into Hermite normal form in place: echelon shape,
/// positive pivots, entries above each pivot reduced into `[0, pivot)`.
/// Zero rows are dropped. Only unimodular row operations are used, so the
/// row lattice is unchanged.
pub fn hermite_rows(rows: &mut Vec<Vec<BigInt>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let pivots = echelon_rows(rows, ncols);
    rows.truncate(pivots.len());
    for (i, &p) in pivots.iter().enumerate() {
        if rows[i][p].is_negative() {
            for v in rows[i].iter_mut() {
                *v = -&*v;
            }
        }
        for r in 0..i {
            let q = rows[r][p].div_floor(&rows[i][p]);
            if !q.is_zero() {
                let (head, tail) = rows.split_at_mut(i);
                for (a, b) in head[r].iter_mut().zip(&tail[0]) {
                    *a -= &q * b;
                }
            }
        }
    }
    pivots
}

/// Integer row echelon form over the first `upto` columns using extended-gcd
/// row combinations. Returns pivot columns; rows past the pivot count are
/// zero on the first `upto` columns.
fn echelon_rows(rows: &mut [Vec<BigInt>], upto: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..upto {
        if top == rows.len() {
            break;
        }
        // fold every lower row into `top` via gcd steps
        let mut found = false;
        for r in top..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            if !found {
                rows.swap(top, r);
                found = true;
                continue;
            }
            let a = rows[top][col].clone();
            let b = rows[r][col].clone();
            let e = a.extended_gcd(&b);
            let (ua, ub) = (&a / &e.gcd, &b / &e.gcd);
            // [x y; -b/g a/g] has determinant 1
            let new_top: Vec<BigInt> = rows[top].iter().zip(&rows[r]).map(|(p, q)| &e.x * p + &e.y * q).collect();
            let new_r: Vec<BigInt> = rows[top].iter().zip(&rows[r]).map(|(p, q)| &ua * q - &ub * p).collect();
            rows[top] = new_top;
            rows[r] = new_r;
        }
        if found {
            pivots.push(col);
            top += 1;
        }
    }
    pivots
}

/// A lattice basis of `ker(m) ∩ Z^n`, returned in Hermite normal form so the
/// output is canonical for the lattice.
pub fn integer_kernel_basis(m: &IntMatrix) -> Vec<IntVector> {
    let n = m.cols();
    let r = m.rows();
    // rows of [m^T | I]; unimodular row ops keep the right block invertible
    let mut aug: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigInt> = (0..r).map(|k| m.get(k, i).clone()).collect();
            row.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let pivots = echelon_rows(&mut aug, r);
    let mut kernel: Vec<Vec<BigInt>> = aug[pivots.len()..].iter().map(|row| row[r..].to_vec()).collect();
    if kernel.is_empty() {
        return Vec::new();
    }
    hermite_rows(&mut kernel);
    kernel.into_iter().map(IntVector).collect()
}
