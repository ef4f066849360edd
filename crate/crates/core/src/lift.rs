//! Lifting a primitive relation on `G(A^(M))` to one on `G(A^(M+1))`.
//!
//! The input relation `Σ h_i x^i = 0` (all `h_i > 0`) must be in lifting
//! form (see [`canonicalize_for_lift`]):
//!
//! * (a) `x^0 = (x_1, .., x_{g-1}, 0, .., 0, x_g)` with `g = type(x^0) > 2`
//!   and `x_1 + .. + x_g = 0` primitive;
//! * (b) the last brick of `x^1, .., x^l` is `-x_g`;
//! * (c) `s = h_1 + .. + h_l - h_0` satisfies `gcd(g - 1, s) = 1`.
//!
//! The lifted relation keeps `x^0..x^l` with their last brick moved one
//! position down, appends a zero brick to `x^{l+1}..x^k`, and adds `g - 1` new
//! elements, one per brick `j < g - 1` of `x^0`. Coefficients become
//! `(g-1) h_0 + (g-2) s`, `(g-1) h_i`, and `|s|` for each new element.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{IntMatrix, IntVector};
use crate::graver::{circuits_with, graver_basis_with, GraverBudget};
use crate::nfold::BrickVector;
use crate::relation::{canonicalize_for_lift, check_primitive_vectors, lemma2_bound, PrimitiveRelation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionCheck {
    pub passed: bool,
    pub detail: String,
}

impl ConditionCheck {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self { passed, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftCertificate {
    /// Type of `x^0`.
    pub g: usize,
    pub l: usize,
    /// `h_1 + .. + h_l - h_0`.
    pub s: BigInt,
    /// `l <= k` and all coefficients positive.
    pub preconditions: ConditionCheck,
    pub condition_a: ConditionCheck,
    pub condition_b: ConditionCheck,
    pub condition_c: ConditionCheck,
}

impl LiftCertificate {
    pub fn passes(&self) -> bool {
        [&self.preconditions, &self.condition_a, &self.condition_b, &self.condition_c].iter().all(|c| c.passed)
    }

    pub fn failure_reasons(&self) -> String {
        let mut out = Vec::new();
        for (name, c) in [
            ("preconditions", &self.preconditions),
            ("(a)", &self.condition_a),
            ("(b)", &self.condition_b),
            ("(c)", &self.condition_c),
        ] {
            if !c.passed {
                out.push(format!("{name}: {}", c.detail));
            }
        }
        out.join("; ")
    }
}

impl std::fmt::Display for LiftCertificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "g = {}, l = {}, s = {}", self.g, self.l, self.s)?;
        for (name, c) in [
            ("preconditions", &self.preconditions),
            ("condition (a)", &self.condition_a),
            ("condition (b)", &self.condition_b),
            ("condition (c)", &self.condition_c),
        ] {
            writeln!(f, "{name}: {} ({})", if c.passed { "pass" } else { "FAIL" }, c.detail)?;
        }
        Ok(())
    }
}

/// Evaluates the three lifting conditions for a relation already in lifting
/// form, with `x^0` at index 0 and the `l` witnesses at indices `1..=l`.
pub fn check_conditions(rel: &PrimitiveRelation, l: usize) -> LiftCertificate {
    let h = rel.coefficients();
    let k = rel.len() - 1;
    let m = rel.copies();
    let x0 = &rel.elements()[0];
    let support = x0.support_bricks();
    let g = support.len();

    let s: BigInt = h.iter().skip(1).take(l).sum::<BigInt>() - &h[0];

    let preconditions = if l > k {
        ConditionCheck::new(false, format!("l = {l} exceeds k = {k}"))
    } else if let Some(i) = h.iter().position(|v| !v.is_positive()) {
        ConditionCheck::new(false, format!("coefficient h[{i}] = {} is not positive", h[i]))
    } else {
        ConditionCheck::new(true, "all coefficients positive")
    };

    let condition_a = {
        let expected: Vec<usize> = (0..g.saturating_sub(1)).chain(std::iter::once(m - 1)).collect();
        if g <= 2 {
            ConditionCheck::new(false, format!("type of x0 is {g}, need > 2"))
        } else if support != expected {
            ConditionCheck::new(false, format!("x0 nonzero bricks {support:?}, expected {expected:?}"))
        } else {
            let bricks: Vec<IntVector> = support.iter().map(|&b| IntVector(x0.brick(b).to_vec())).collect();
            let ones = vec![BigInt::one(); g];
            match check_primitive_vectors(&bricks, &ones) {
                Ok(r) if r.is_valid() => ConditionCheck::new(true, format!("type {g}, brick sum primitive")),
                Ok(_) => ConditionCheck::new(false, "x_1 + .. + x_g = 0 is not a primitive relation"),
                Err(e) => ConditionCheck::new(false, e.to_string()),
            }
        }
    };

    let condition_b = if l > k {
        ConditionCheck::new(false, "not enough elements")
    } else {
        let target: Vec<BigInt> = x0.brick(m - 1).iter().map(|v| -v).collect();
        match (1..=l).find(|&i| rel.elements()[i].brick(m - 1) != &target[..]) {
            Some(i) => ConditionCheck::new(false, format!("last brick of element {i} is not -x_g")),
            None => ConditionCheck::new(true, format!("elements 1..={l} end in -x_g")),
        }
    };

    let condition_c = {
        let gm1 = BigInt::from(g as i64 - 1);
        let d = gm1.gcd(&s);
        ConditionCheck::new(d.is_one(), format!("gcd(g-1, s) = gcd({gm1}, {s}) = {d}"))
    };

    LiftCertificate { g, l, s, preconditions, condition_a, condition_b, condition_c }
}

/// One application of the lifting construction.
pub fn lift(rel: &PrimitiveRelation, cert: &LiftCertificate) -> Result<PrimitiveRelation> {
    if !cert.passes() {
        return Err(Error::ConditionsFailed { step: Some(rel.copies()), reasons: cert.failure_reasons() });
    }
    if check_conditions(rel, cert.l) != *cert {
        return Err(Error::InvalidArgument("certificate was not issued for this relation".into()));
    }
    let (g, l, s) = (cert.g, cert.l, &cert.s);
    let m = rel.copies();
    let c = rel.base_matrix().cols();
    let x0 = &rel.elements()[0];
    let h = rel.coefficients();
    let gm1 = BigInt::from(g as i64 - 1);
    let gm2 = BigInt::from(g as i64 - 2);

    let mut elements: Vec<BrickVector> = rel
        .elements()
        .iter()
        .enumerate()
        .map(|(i, x)| if i <= l { x.move_last_brick() } else { x.append_zero_brick() })
        .collect();
    let h0 = &gm1 * &h[0] + &gm2 * s;
    if !h0.is_positive() {
        return Err(Error::Internal(format!("lifted leading coefficient {h0} is not positive")));
    }
    let mut coefficients: Vec<BigInt> = std::iter::once(h0).chain(h.iter().skip(1).map(|v| &gm1 * v)).collect();

    let sign = if s.is_negative() { BigInt::one() } else { -BigInt::one() };
    let signed = |b: usize| -> Vec<BigInt> { x0.brick(b).iter().map(|v| v * &sign).collect() };
    for j in 0..g - 1 {
        let mut y = BrickVector::zeros(m + 1, c);
        for t in (0..g - 1).filter(|&t| t != j) {
            y = y.with_brick(t, &signed(t));
        }
        y = y.with_brick(m - 1, &signed(m - 1));
        y = y.with_brick(m, &signed(j));
        elements.push(y);
        coefficients.push(s.abs());
    }
    PrimitiveRelation::new(rel.base_matrix().clone(), elements, coefficients)
}

/// Switch the witness count once the relation reaches `at` copies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainSwitch {
    pub at: usize,
    pub new_l: usize,
}

/// Every relation along the chain, starting with the (canonicalized) input
/// and ending at `target` copies.
pub fn lift_chain_steps(
    rel: &PrimitiveRelation,
    l: usize,
    target: usize,
    switch: Option<ChainSwitch>,
) -> Result<Vec<PrimitiveRelation>> {
    let start = rel.copies();
    if target < start {
        return Err(Error::InvalidArgument(format!("target M={target} is below the starting M={start}")));
    }
    if let Some(sw) = switch {
        if sw.at > target {
            return Err(Error::InvalidArgument(format!("switch at M={} is beyond target M={target}", sw.at)));
        }
    }
    let l_at = |m: usize| match switch {
        Some(sw) if m >= sw.at => sw.new_l,
        _ => l,
    };
    let canonical = |r: &PrimitiveRelation, l: usize| -> Result<PrimitiveRelation> {
        canonicalize_for_lift(r, 0, l)
            .map(|(r, _)| r)
            .map_err(|e| Error::ConditionsFailed { step: Some(r.copies()), reasons: e.to_string() })
    };
    let mut current = canonical(rel, l_at(start))?;
    let mut steps = vec![current.clone()];
    while current.copies() < target {
        let m = current.copies();
        let l_now = l_at(m);
        if m > start && l_now != l_at(m - 1) {
            current = canonical(&current, l_now)?;
        }
        let cert = check_conditions(&current, l_now);
        if !cert.passes() {
            return Err(Error::ConditionsFailed { step: Some(m), reasons: cert.failure_reasons() });
        }
        current = lift(&current, &cert)?;
        steps.push(current.clone());
    }
    Ok(steps)
}

pub fn lift_chain(
    rel: &PrimitiveRelation,
    l: usize,
    target: usize,
    switch: Option<ChainSwitch>,
) -> Result<PrimitiveRelation> {
    Ok(lift_chain_steps(rel, l, target, switch)?.pop().expect("chain holds at least its start"))
}

/// The seven-element relation on `G(A_{3x4})` with coefficients
/// `(1, 3, 5, 2, 3, 6, 7)`.
pub fn base_relation_a34() -> PrimitiveRelation {
    let tables: [[[i64; 3]; 4]; 7] = [
        [[0, -1, 1], [1, 0, -1], [0, 0, 0], [-1, 1, 0]],
        [[0, 0, 0], [0, 1, -1], [-1, 0, 1], [1, -1, 0]],
        [[-1, 0, 1], [0, 0, 0], [0, 1, -1], [1, -1, 0]],
        [[-1, 1, 0], [0, 0, 0], [0, -1, 1], [1, 0, -1]],
        [[0, 0, 0], [0, 1, -1], [1, -1, 0], [-1, 0, 1]],
        [[0, 1, -1], [1, -1, 0], [0, 0, 0], [-1, 0, 1]],
        [[1, -1, 0], [-1, 0, 1], [0, 0, 0], [0, 1, -1]],
    ];
    let elements = tables.iter().map(|t| BrickVector::from_i64_table(t)).collect();
    let coefficients = [1, 3, 5, 2, 3, 6, 7].iter().map(|&h| BigInt::from(h)).collect();
    PrimitiveRelation::new(IntMatrix::from_rows(&[[1, 1, 1]]), elements, coefficients).expect("well-formed literal")
}

pub fn base_relation_cor2(a: &IntMatrix) -> Result<PrimitiveRelation> {
    base_relation_cor2_with(a, &GraverBudget::default())
}

/// Builds the cyclic relation from a largest-support circuit `Σ c_i v_i = 0`
/// of the matrix whose columns are `G(A)`: `x^0` has bricks `c_i v_i`, the
/// other elements are its cyclic brick shifts, all coefficients are 1.
pub fn base_relation_cor2_with(a: &IntMatrix, budget: &GraverBudget) -> Result<PrimitiveRelation> {
    let graver = graver_basis_with(a, budget)?;
    if graver.is_empty() {
        return Err(Error::NoCircuitOfSupport3 { max_support: 0 });
    }
    let columns = IntMatrix::from_columns(graver.elements(), a.cols())?;
    let circuit_set = circuits_with(&columns, budget.circuit_subsets)?;
    let g = circuit_set.max_support();
    if g < 3 {
        return Err(Error::NoCircuitOfSupport3 { max_support: g });
    }
    let circuit = circuit_set.max_support_circuit().expect("max support is attained");
    let bricks: Vec<Vec<BigInt>> = circuit
        .0
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| graver.elements()[j].0.iter().map(|v| v * c).collect())
        .collect();
    let elements = (0..g)
        .map(|shift| BrickVector::from_table((0..g).map(|t| bricks[(t + shift) % g].clone()).collect()))
        .collect::<Result<Vec<_>>>()?;
    PrimitiveRelation::new(a.clone(), elements, vec![BigInt::one(); g])
}

/// One candidate lift found by [`discover_lifts`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftOption {
    pub l: usize,
    pub s: BigInt,
    pub passes: bool,
    /// `Σ h̄` of the lifted relation when the certificate passes.
    pub lifted_sum: Option<BigInt>,
    /// Input indices moved to the witness slots; set only for the
    /// experimental subset search.
    pub witnesses: Option<Vec<usize>>,
}

/// Tries every `l` for the given distinguished element. With
/// `experimental_subsets`, also tries every subset of eligible witnesses
/// (not just the first `l` in array order); those options are tagged with
/// their witness indices.
pub fn discover_lifts(rel: &PrimitiveRelation, x0_index: usize, experimental_subsets: bool) -> Result<Vec<LiftOption>> {
    let rel = rel.normalize_signs();
    let mut out = Vec::new();
    for l in 0..rel.len() {
        let Ok((canon, _)) = canonicalize_for_lift(&rel, x0_index, l) else { continue };
        out.push(evaluate(&canon, l, None)?);
    }
    if experimental_subsets {
        let (_, layout) = canonicalize_for_lift(&rel, x0_index, 0)?;
        let eligible = layout.eligible;
        if eligible.len() > 16 {
            return Err(Error::BudgetExceeded { what: "witness subsets", limit: 1 << 16 });
        }
        for mask in 1u32..(1 << eligible.len()) {
            let chosen: Vec<usize> = (0..eligible.len()).filter(|b| mask >> b & 1 == 1).map(|b| eligible[b]).collect();
            let mut order = vec![x0_index];
            order.extend(&chosen);
            order.extend((0..rel.len()).filter(|i| *i != x0_index && !chosen.contains(i)));
            let reordered = rel.reorder(&order)?;
            let (canon, _) = canonicalize_for_lift(&reordered, 0, chosen.len())?;
            out.push(evaluate(&canon, chosen.len(), Some(chosen))?);
        }
    }
    Ok(out)
}

fn evaluate(canon: &PrimitiveRelation, l: usize, witnesses: Option<Vec<usize>>) -> Result<LiftOption> {
    let cert = check_conditions(canon, l);
    let lifted_sum = if cert.passes() { Some(lemma2_bound(&lift(canon, &cert)?)) } else { None };
    Ok(LiftOption { l, s: cert.s.clone(), passes: cert.passes(), lifted_sum, witnesses })
}
