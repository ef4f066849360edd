//! Primitive relations among kernel elements of `A^(M)`.
//!
//! A relation `Σ h_i x^i = 0` is primitive when the `h_i` are nonzero and
//! coprime and no proper subset of the `x^i` is linearly dependent. The last
//! condition is checked as "the rational kernel of the matrix with columns
//! `x^i` is one-dimensional": together with nonzero `h` it forces every
//! dependency to be a multiple of `h`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{gcd_all, rational_kernel_basis, rational_kernel_dimension, IntMatrix, IntVector};
use crate::graver::{is_graver_element_with, GraverBudget};
use crate::nfold::{assemble_mfold, BrickVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveRelation {
    base_matrix: IntMatrix,
    elements: Vec<BrickVector>,
    coefficients: Vec<BigInt>,
}

impl PrimitiveRelation {
    /// Checks shapes only: one coefficient per element, every element an
    /// `M x c` table with `c` the column count of `base_matrix`.
    pub fn new(base_matrix: IntMatrix, elements: Vec<BrickVector>, coefficients: Vec<BigInt>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Dimension("relation has no elements".into()));
        }
        if elements.len() != coefficients.len() {
            return Err(Error::Dimension(format!(
                "{} elements but {} coefficients",
                elements.len(),
                coefficients.len()
            )));
        }
        let copies = elements[0].copies();
        for (i, e) in elements.iter().enumerate() {
            if e.brick_len() != base_matrix.cols() || e.copies() != copies {
                return Err(Error::Dimension(format!(
                    "element {i} is a {}x{} table, expected {copies}x{}",
                    e.copies(),
                    e.brick_len(),
                    base_matrix.cols()
                )));
            }
        }
        Ok(Self { base_matrix, elements, coefficients })
    }

    pub fn base_matrix(&self) -> &IntMatrix {
        &self.base_matrix
    }

    pub fn copies(&self) -> usize {
        self.elements[0].copies()
    }

    pub fn elements(&self) -> &[BrickVector] {
        &self.elements
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `A^(M)` for this relation's base matrix and copy count.
    pub fn mfold_matrix(&self) -> IntMatrix {
        assemble_mfold(&self.base_matrix, self.copies())
    }

    /// `Σ h_i x^i`.
    pub fn weighted_sum(&self) -> BrickVector {
        let mut acc = BrickVector::zeros(self.copies(), self.base_matrix.cols());
        for (x, h) in self.elements.iter().zip(&self.coefficients) {
            acc = acc.add(&x.scale(h)).expect("shapes checked in constructor");
        }
        acc
    }

    /// Matrix whose columns are the flattened elements.
    pub fn column_matrix(&self) -> IntMatrix {
        let cols: Vec<IntVector> = self.elements.iter().map(BrickVector::to_flat).collect();
        IntMatrix::from_columns(&cols, self.copies() * self.base_matrix.cols()).expect("uniform element length")
    }

    /// A basis of all rational dependencies among the elements, each scaled
    /// to a primitive integer vector.
    pub fn dependencies(&self) -> Vec<IntVector> {
        rational_kernel_basis(&self.column_matrix())
    }

    /// Negates every element whose coefficient is negative so that all
    /// coefficients become positive. Graver bases are sign-symmetric, so
    /// membership is unaffected.
    pub fn normalize_signs(&self) -> Self {
        let mut out = self.clone();
        for (x, h) in out.elements.iter_mut().zip(out.coefficients.iter_mut()) {
            if h.is_negative() {
                *x = x.neg();
                *h = -&*h;
            }
        }
        out
    }

    /// Applies the same brick permutation to every element.
    pub fn permute_bricks(&self, perm: &[usize]) -> Result<Self> {
        let elements = self.elements.iter().map(|x| x.permute_bricks(perm)).collect::<Result<Vec<_>>>()?;
        Ok(Self { elements, ..self.clone() })
    }

    /// Reorders elements (and their coefficients): position `i` of the result
    /// holds element `order[i]`.
    pub fn reorder(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.len()];
        if order.len() != self.len() || order.iter().any(|&i| i >= self.len() || std::mem::replace(&mut seen[i], true))
        {
            return Err(Error::Dimension(format!("{order:?} is not a permutation of {} elements", self.len())));
        }
        Ok(Self {
            base_matrix: self.base_matrix.clone(),
            elements: order.iter().map(|&i| self.elements[i].clone()).collect(),
            coefficients: order.iter().map(|&i| self.coefficients[i].clone()).collect(),
        })
    }

    /// Indices of elements with type greater than 2, the candidates for the
    /// distinguished element of a lift.
    pub fn x0_candidates(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.elements[i].type_of() > 2).collect()
    }
}

impl fmt::Display for PrimitiveRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, h)) in self.elements.iter().zip(&self.coefficients).enumerate() {
            writeln!(f, "h[{i}] = {h}")?;
            for line in x.to_string().lines() {
                writeln!(f, "    {line}")?;
            }
        }
        writeln!(f, "sum |h| = {}", lemma2_bound(self))
    }
}

/// Outcome of the oracle check for one element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Member,
    NotMember,
    /// The conformal box exceeded the oracle budget.
    Inconclusive,
    /// Not checked; membership holds by construction of the lift.
    Asserted,
}

/// Results of the checks that were actually run; `None` means not run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub sum_zero: Option<bool>,
    pub coprime: Option<bool>,
    pub nonzero: Option<bool>,
    pub kernel_dim_one: Option<bool>,
    pub membership: Vec<Membership>,
}

impl VerificationReport {
    /// Conjunction of the checks that ran. Inconclusive or asserted
    /// memberships do not count either way.
    pub fn is_valid(&self) -> bool {
        [self.sum_zero, self.coprime, self.nonzero, self.kernel_dim_one].iter().all(|c| c.unwrap_or(true))
            && !self.membership.contains(&Membership::NotMember)
    }

    pub fn has_inconclusive(&self) -> bool {
        self.membership.contains(&Membership::Inconclusive)
    }

    /// Combines an algebraic report with a membership report.
    pub fn merge(mut self, other: VerificationReport) -> Self {
        self.sum_zero = self.sum_zero.or(other.sum_zero);
        self.coprime = self.coprime.or(other.coprime);
        self.nonzero = self.nonzero.or(other.nonzero);
        self.kernel_dim_one = self.kernel_dim_one.or(other.kernel_dim_one);
        if self.membership.is_empty() {
            self.membership = other.membership;
        }
        self
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |c: Option<bool>| match c {
            Some(true) => "ok",
            Some(false) => "FAILED",
            None => "not run",
        };
        writeln!(f, "weighted sum is zero     : {}", show(self.sum_zero))?;
        writeln!(f, "coefficients coprime     : {}", show(self.coprime))?;
        writeln!(f, "coefficients nonzero     : {}", show(self.nonzero))?;
        writeln!(f, "dependency space is 1-dim: {}", show(self.kernel_dim_one))?;
        if self.membership.is_empty() {
            writeln!(f, "Graver membership        : not run")?;
        }
        for (i, m) in self.membership.iter().enumerate() {
            let s = match m {
                Membership::Member => "member",
                Membership::NotMember => "NOT A MEMBER",
                Membership::Inconclusive => "inconclusive (oracle budget)",
                Membership::Asserted => "asserted, unverified",
            };
            writeln!(f, "element {i:>2} in Graver basis: {s}")?;
        }
        writeln!(f, "verdict: {}", if self.is_valid() { "valid" } else { "INVALID" })
    }
}

/// The three algebraic primitivity checks on plain vectors.
pub fn check_primitive_vectors(vectors: &[IntVector], coefficients: &[BigInt]) -> Result<VerificationReport> {
    if vectors.len() != coefficients.len() {
        return Err(Error::Dimension(format!("{} vectors but {} coefficients", vectors.len(), coefficients.len())));
    }
    let dim = vectors.first().map_or(0, IntVector::len);
    if vectors.iter().any(|v| v.len() != dim) {
        return Err(Error::Dimension("vectors of different lengths".into()));
    }
    let mut sum = IntVector::zeros(dim);
    for (v, h) in vectors.iter().zip(coefficients) {
        sum = sum.add(&v.scale(h))?;
    }
    let columns = IntMatrix::from_columns(vectors, dim)?;
    Ok(VerificationReport {
        sum_zero: Some(sum.is_zero()),
        coprime: Some(gcd_all(coefficients).is_one()),
        nonzero: Some(coefficients.iter().all(|h| !h.is_zero())),
        kernel_dim_one: Some(rational_kernel_dimension(&columns) == 1),
        membership: Vec::new(),
    })
}

/// Algebraic primitivity of `Σ h_i x^i = 0`. Graver membership is a separate
/// check, see [`verify_membership`].
pub fn verify_primitive(elements: &[BrickVector], coefficients: &[BigInt]) -> Result<VerificationReport> {
    if let Some(first) = elements.first() {
        if elements.iter().any(|e| e.copies() != first.copies() || e.brick_len() != first.brick_len()) {
            return Err(Error::Dimension("elements of different table shapes".into()));
        }
    }
    let flat: Vec<IntVector> = elements.iter().map(BrickVector::to_flat).collect();
    check_primitive_vectors(&flat, coefficients)
}

pub fn verify_relation(rel: &PrimitiveRelation) -> VerificationReport {
    verify_primitive(rel.elements(), rel.coefficients()).expect("shapes checked in constructor")
}

pub fn verify_membership(rel: &PrimitiveRelation) -> Result<VerificationReport> {
    verify_membership_with(rel, GraverBudget::default().oracle_box)
}

/// Runs the brute-force Graver oracle against `A^(M)` on every element. A
/// budget overrun marks that element inconclusive and the others still run.
pub fn verify_membership_with(rel: &PrimitiveRelation, oracle_box: u64) -> Result<VerificationReport> {
    let c = rel.mfold_matrix();
    let membership = rel
        .elements()
        .iter()
        .map(|x| match is_graver_element_with(&c, &x.to_flat(), oracle_box) {
            Ok(true) => Ok(Membership::Member),
            Ok(false) => Ok(Membership::NotMember),
            Err(Error::BudgetExceeded { .. }) => Ok(Membership::Inconclusive),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport { membership, ..Default::default() })
}

/// Membership left unchecked for every element, reported as asserted.
pub fn asserted_membership(rel: &PrimitiveRelation) -> VerificationReport {
    VerificationReport { membership: vec![Membership::Asserted; rel.len()], ..Default::default() }
}

/// `Σ |h_i|`, a lower bound on the Graver complexity of `A^(M)` once the
/// relation is primitive and its elements lie in the Graver basis.
pub fn lemma2_bound(rel: &PrimitiveRelation) -> BigInt {
    rel.coefficients().iter().map(BigInt::abs).sum()
}

/// How [`canonicalize_for_lift`] rearranged a relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftLayout {
    /// Brick `i` of every output element is brick `brick_perm[i]` of the input.
    pub brick_perm: Vec<usize>,
    /// Output element `i` is input element `element_order[i]`.
    pub element_order: Vec<usize>,
    /// Input indices of elements whose last brick (after permuting) is the
    /// negated last nonzero brick of the distinguished element.
    pub eligible: Vec<usize>,
}

/// Puts the relation into the shape the lift expects: the chosen element
/// first with its nonzero bricks in positions `0..g-1` and `M-1`, followed by
/// `l` elements whose last brick is the negative of that element's last
/// brick, then the rest in their original order.
///
/// Each nonzero brick of `x0` is tried as the last brick, starting from the
/// highest position, and the first one with at least `l` eligible elements
/// wins. The first `l` eligible elements in array order are moved forward.
pub fn canonicalize_for_lift(
    rel: &PrimitiveRelation,
    x0_index: usize,
    l: usize,
) -> Result<(PrimitiveRelation, LiftLayout)> {
    if x0_index >= rel.len() {
        return Err(Error::NotCanonicalizable(format!("x0 index {x0_index} out of range")));
    }
    let x0 = &rel.elements()[x0_index];
    let support = x0.support_bricks();
    let g = support.len();
    if g <= 2 {
        return Err(Error::NotCanonicalizable(format!("x0 has type {g}, need more than 2")));
    }
    let others: Vec<usize> = (0..rel.len()).filter(|&i| i != x0_index).collect();
    let mut best: Option<(usize, Vec<usize>)> = None;
    for &q in support.iter().rev() {
        let target = x0.brick(q).iter().map(|v| -v).collect::<Vec<_>>();
        let eligible: Vec<usize> =
            others.iter().copied().filter(|&i| rel.elements()[i].brick(q) == &target[..]).collect();
        if eligible.len() >= l {
            best = Some((q, eligible));
            break;
        }
    }
    let Some((q, eligible)) = best else {
        return Err(Error::NotCanonicalizable(format!("no brick of x0 has {l} eligible elements")));
    };
    let m = rel.copies();
    let mut brick_perm: Vec<usize> = support.iter().copied().filter(|&b| b != q).collect();
    brick_perm.extend((0..m).filter(|b| !support.contains(b)));
    brick_perm.push(q);

    let chosen = &eligible[..l];
    let mut element_order = vec![x0_index];
    element_order.extend_from_slice(chosen);
    element_order.extend(others.iter().copied().filter(|i| !chosen.contains(i)));

    let out = rel.reorder(&element_order)?.permute_bricks(&brick_perm)?;
    Ok((out, LiftLayout { brick_perm, element_order, eligible }))
}
