//! Closed-form lower bounds on Graver complexity, evaluated exactly.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed};

use crate::error::{Error, Result};
use crate::relation::{lemma2_bound, PrimitiveRelation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulaId {
    Cor1,
    Cor2,
    Cor3,
    BersteinOnn,
    Mixed,
    Lemma2,
}

impl FormulaId {
    pub const ALL: [FormulaId; 6] = [
        FormulaId::Cor1,
        FormulaId::Cor2,
        FormulaId::Cor3,
        FormulaId::BersteinOnn,
        FormulaId::Mixed,
        FormulaId::Lemma2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FormulaId::Cor1 => "cor1",
            FormulaId::Cor2 => "cor2",
            FormulaId::Cor3 => "cor3",
            FormulaId::BersteinOnn => "berstein_onn",
            FormulaId::Mixed => "mixed",
            FormulaId::Lemma2 => "lemma2",
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for FormulaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FormulaId::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown formula '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundResult {
    pub formula: FormulaId,
    /// Parameter names and values in a fixed order per formula.
    pub params: Vec<(&'static str, BigInt)>,
    pub value: BigInt,
    /// Smallest `M` the formula is claimed for.
    pub valid_from: usize,
}

impl BoundResult {
    pub fn param(&self, name: &str) -> Option<&BigInt> {
        self.params.iter().find(|(n, _)| *n == name).map(|(_, v)| v)
    }
}

fn rat(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

fn integral(formula: FormulaId, v: BigRational) -> Result<BigInt> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(Error::Internal(format!("{formula} evaluated to the non-integer {v}")))
    }
}

fn pow(base: i64, exp: usize) -> BigRational {
    rat(BigInt::from(base).pow(exp))
}

/// `(g-1)^(M-M0) (Σh + c) - c` with `c = (2g-3)s/(g-2)` for `s >= 0` and
/// `c = -s/(g-2)` for `s < 0`.
pub fn bound_cor1(sum_h: &BigInt, g: usize, s: &BigInt, m0: usize, m: usize) -> Result<BoundResult> {
    if g < 3 {
        return Err(Error::InvalidArgument(format!("cor1 needs g > 2, got {g}")));
    }
    if m < m0 {
        return Err(Error::InvalidArgument(format!("cor1 needs M >= M0, got M={m}, M0={m0}")));
    }
    let gi = g as i64;
    let c = if s.is_negative() { rat(-s) / rat(gi - 2) } else { rat(BigInt::from(2 * gi - 3) * s) / rat(gi - 2) };
    let value = pow(gi - 1, m - m0) * (rat(sum_h.clone()) + &c) - c;
    Ok(BoundResult {
        formula: FormulaId::Cor1,
        params: vec![("sum_h", sum_h.clone()), ("g", g.into()), ("s", s.clone()), ("m0", m0.into()), ("m", m.into())],
        value: integral(FormulaId::Cor1, value)?,
        valid_from: m0,
    })
}

/// `(g-1)/(g-2) (g-1)^(M-(g-1)) - 1/(g-2)`.
pub fn bound_cor2(g: usize, m: usize) -> Result<BoundResult> {
    if g < 3 {
        return Err(Error::InvalidArgument(format!("cor2 needs g >= 3, got {g}")));
    }
    if m < g {
        return Err(Error::InvalidArgument(format!("cor2 needs M >= g, got M={m}, g={g}")));
    }
    let gi = g as i64;
    let value = rat(gi - 1) / rat(gi - 2) * pow(gi - 1, m - (g - 1)) - BigRational::one() / rat(gi - 2);
    Ok(BoundResult {
        formula: FormulaId::Cor2,
        params: vec![("g", g.into()), ("m", m.into())],
        value: integral(FormulaId::Cor2, value)?,
        valid_from: g,
    })
}

/// `24 · 2^(M-3) - 21`.
pub fn bound_cor3(m: usize) -> Result<BoundResult> {
    if m < 4 {
        return Err(Error::InvalidArgument(format!("cor3 needs M >= 4, got {m}")));
    }
    let value = rat(24) * pow(2, m - 3) - rat(21);
    Ok(BoundResult {
        formula: FormulaId::Cor3,
        params: vec![("m", m.into())],
        value: integral(FormulaId::Cor3, value)?,
        valid_from: 4,
    })
}

/// `17 · 2^(M-3) - 7`.
pub fn bound_berstein_onn(m: usize) -> Result<BoundResult> {
    if m < 4 {
        return Err(Error::InvalidArgument(format!("berstein_onn needs M >= 4, got {m}")));
    }
    let value = rat(17) * pow(2, m - 3) - rat(7);
    Ok(BoundResult {
        formula: FormulaId::BersteinOnn,
        params: vec![("m", m.into())],
        value: integral(FormulaId::BersteinOnn, value)?,
        valid_from: 4,
    })
}

/// `(28 - 224/2^M0) · 2^(M-3) - (2^(M0-1) - 7)`.
pub fn bound_mixed(m0: usize, m: usize) -> Result<BoundResult> {
    if m0 < 6 {
        return Err(Error::InvalidArgument(format!("mixed needs M0 >= 6, got {m0}")));
    }
    if m < m0 {
        return Err(Error::InvalidArgument(format!("mixed needs M >= M0, got M={m}, M0={m0}")));
    }
    let value = (rat(28) - rat(224) / pow(2, m0)) * pow(2, m - 3) - (pow(2, m0 - 1) - rat(7));
    Ok(BoundResult {
        formula: FormulaId::Mixed,
        params: vec![("m0", m0.into()), ("m", m.into())],
        value: integral(FormulaId::Mixed, value)?,
        valid_from: m0,
    })
}

/// The coefficient sum of a verified relation.
pub fn bound_lemma2(rel: &PrimitiveRelation) -> BoundResult {
    BoundResult {
        formula: FormulaId::Lemma2,
        params: vec![("m", rel.copies().into()), ("elements", rel.len().into())],
        value: lemma2_bound(rel),
        valid_from: rel.copies(),
    }
}
