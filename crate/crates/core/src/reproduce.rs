//! Regenerates the `A_{3xM}` sample relations from the base relation and
//! compares them with the shipped golden listings.

use std::fmt;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;

use crate::bounds::{bound_cor3, bound_mixed};
use crate::error::{Error, Result};
use crate::io::{relation_from_json, relation_to_json};
use crate::lift::{base_relation_a34, lift_chain_steps, ChainSwitch};
use crate::relation::{asserted_membership, lemma2_bound, verify_membership_with, verify_relation, PrimitiveRelation};

pub const GOLDEN_NAMES: [&str; 5] = ["base_a34", "lift_m5", "lift_m6", "lift_m7", "lift_m7_switch"];

pub fn embedded_golden(name: &str) -> Option<&'static str> {
    Some(match name {
        "base_a34" => include_str!("../golden/base_a34.json"),
        "lift_m5" => include_str!("../golden/lift_m5.json"),
        "lift_m6" => include_str!("../golden/lift_m6.json"),
        "lift_m7" => include_str!("../golden/lift_m7.json"),
        "lift_m7_switch" => include_str!("../golden/lift_m7_switch.json"),
        _ => return None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum GoldenSource {
    #[default]
    Embedded,
    Directory(PathBuf),
}

pub fn load_golden(source: &GoldenSource, name: &str) -> Result<String> {
    match source {
        GoldenSource::Embedded => embedded_golden(name)
            .map(str::to_owned)
            .ok_or_else(|| Error::InvalidArgument(format!("no golden '{name}'"))),
        GoldenSource::Directory(dir) => read(&dir.join(format!("{name}.json"))),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

#[derive(Debug, Clone)]
pub struct ReproduceOptions {
    pub skip_membership: bool,
    /// Largest `M` whose elements go through the Graver oracle.
    pub membership_max_m: usize,
    pub oracle_box: u64,
    pub golden: GoldenSource,
}

impl Default for ReproduceOptions {
    fn default() -> Self {
        Self { skip_membership: false, membership_max_m: 7, oracle_box: 10_000_000, golden: GoldenSource::Embedded }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct ReproduceReport {
    pub checks: Vec<Check>,
}

impl ReproduceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }
}

impl fmt::Display for ReproduceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "[{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

/// Where two relation documents first differ, or `None` if they are
/// byte-identical.
pub fn locate_diff(expected: &str, actual: &str) -> Option<String> {
    if expected == actual {
        return None;
    }
    if let (Ok(e), Ok(a)) = (relation_from_json(expected), relation_from_json(actual)) {
        if let Some(d) = relation_diff(&e, &a) {
            return Some(d);
        }
    }
    let line = expected.lines().zip(actual.lines()).position(|(x, y)| x != y);
    Some(match line {
        Some(n) => format!(
            "line {}: expected '{}', got '{}'",
            n + 1,
            expected.lines().nth(n).unwrap_or_default().trim(),
            actual.lines().nth(n).unwrap_or_default().trim()
        ),
        None => {
            format!("documents differ in length ({} vs {} lines)", expected.lines().count(), actual.lines().count())
        }
    })
}

fn relation_diff(e: &PrimitiveRelation, a: &PrimitiveRelation) -> Option<String> {
    if e.base_matrix() != a.base_matrix() {
        return Some("base matrix differs".into());
    }
    if (e.copies(), e.len()) != (a.copies(), a.len()) {
        return Some(format!(
            "shape: expected M={} with {} elements, got M={} with {}",
            e.copies(),
            e.len(),
            a.copies(),
            a.len()
        ));
    }
    for i in 0..e.len() {
        if e.coefficients()[i] != a.coefficients()[i] {
            return Some(format!("coefficient {i}: expected {}, got {}", e.coefficients()[i], a.coefficients()[i]));
        }
        let (ex, ax) = (&e.elements()[i], &a.elements()[i]);
        for b in 0..e.copies() {
            if ex.brick(b) != ax.brick(b) {
                let fmt = |v: &[BigInt]| v.iter().map(BigInt::to_string).collect::<Vec<_>>().join(" ");
                return Some(format!(
                    "element {i}, brick {}: expected ({}), got ({})",
                    b + 1,
                    fmt(ex.brick(b)),
                    fmt(ax.brick(b))
                ));
            }
        }
    }
    None
}

/// Every relation the harness produces, keyed by golden name where one
/// exists.
pub struct Reproduced {
    pub base: PrimitiveRelation,
    /// Relations for `M = 4..=8` along the `l = 2` chain.
    pub chain: Vec<PrimitiveRelation>,
    pub switched: PrimitiveRelation,
}

pub fn regenerate() -> Result<Reproduced> {
    let base = base_relation_a34();
    let chain = lift_chain_steps(&base, 2, 8, None)?;
    let switched = lift_chain_steps(&base, 2, 7, Some(ChainSwitch { at: 6, new_l: 0 }))?.pop().expect("nonempty chain");
    Ok(Reproduced { base, chain, switched })
}

pub fn reproduce(opts: &ReproduceOptions) -> Result<ReproduceReport> {
    let mut report = ReproduceReport::default();
    let r = regenerate()?;
    let by_m = |m: usize| &r.chain[m - 4];

    let against_golden: [(&str, &PrimitiveRelation); 5] = [
        ("base_a34", &r.base),
        ("lift_m5", by_m(5)),
        ("lift_m6", by_m(6)),
        ("lift_m7", by_m(7)),
        ("lift_m7_switch", &r.switched),
    ];
    for (name, rel) in against_golden {
        let check = format!("golden {name}");
        match load_golden(&opts.golden, name) {
            Ok(expected) => match locate_diff(&expected, &relation_to_json(rel)) {
                None => report.push(check, true, "tables and coefficients identical"),
                Some(diff) => report.push(check, false, diff),
            },
            Err(e) => report.push(check, false, e.to_string()),
        }
    }

    for (m, want) in [(4, 27), (5, 75), (6, 171), (7, 363)] {
        let got = lemma2_bound(by_m(m));
        report.push(format!("sum M={m}"), got == BigInt::from(want), format!("expected {want}, got {got}"));
    }
    let switched = lemma2_bound(&r.switched);
    let plain = lemma2_bound(by_m(7));
    report.push("sum M=7 after switch", switched == BigInt::from(367), format!("expected 367, got {switched}"));
    report.push("switch beats plain chain", switched > plain, format!("{switched} > {plain}"));

    for m in 4..=8 {
        let formula = bound_cor3(m)?.value;
        let got = lemma2_bound(by_m(m));
        report.push(format!("bound coherence M={m}"), formula == got, format!("formula {formula}, chain {got}"));
    }
    let mixed = bound_mixed(6, 7)?.value;
    report.push("bound coherence after switch", mixed == switched, format!("formula {mixed}, chain {switched}"));

    let all: Vec<(String, &PrimitiveRelation)> = r
        .chain
        .iter()
        .map(|rel| (format!("M={}", rel.copies()), rel))
        .chain(std::iter::once(("M=7 switched".to_string(), &r.switched)))
        .collect();
    for (label, rel) in &all {
        let v = verify_relation(rel);
        report.push(format!("primitive {label}"), v.is_valid(), if v.is_valid() { "ok".into() } else { v.to_string() });
    }
    if !opts.skip_membership {
        for (label, rel) in &all {
            let name = format!("membership {label}");
            if rel.copies() > opts.membership_max_m {
                let n = asserted_membership(rel).membership.len();
                report.push(name, true, format!("{n} elements asserted, unverified"));
                continue;
            }
            let v = verify_membership_with(rel, opts.oracle_box)?;
            let detail = if v.has_inconclusive() {
                "oracle budget exceeded".to_string()
            } else {
                format!("{} elements verified", v.membership.len())
            };
            report.push(name, v.is_valid() && !v.has_inconclusive(), detail);
        }
    }
    Ok(report)
}
