//! Text and JSON formats.
//!
//! Plain matrix files start with a `rows cols` line followed by the rows;
//! blank lines and lines starting with `#` are ignored. Relation documents
//! are JSON objects with the keys `base_matrix`, `copies`, `coefficients`
//! and `elements` (one table of brick rows per element). Integers of any size
//! are accepted.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::Value;

use crate::bounds::BoundResult;
use crate::error::{Error, Result};
use crate::exact::{IntMatrix, IntVector};
use crate::graver::GraverBasis;
use crate::nfold::BrickVector;
use crate::relation::PrimitiveRelation;

pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let mut lines = text.lines().map(str::trim).enumerate().filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let dims = parse_ints(header, 1)?;
    let [rows, cols] = &dims[..] else {
        return Err(Error::Parse(format!("line 1: expected 'rows cols', got '{header}'")));
    };
    let to_usize = |v: &BigInt| usize::try_from(v).map_err(|_| Error::Parse(format!("bad dimension {v}")));
    let (rows, cols) = (to_usize(rows)?, to_usize(cols)?);
    let mut data = Vec::with_capacity(rows * cols);
    let mut seen = 0;
    for (n, line) in lines {
        let row = parse_ints(line, n + 1)?;
        if row.len() != cols {
            return Err(Error::Parse(format!("line {}: expected {cols} entries, got {}", n + 1, row.len())));
        }
        data.extend(row);
        seen += 1;
    }
    if seen != rows {
        return Err(Error::Parse(format!("expected {rows} rows, got {seen}")));
    }
    IntMatrix::new(rows, cols, data)
}

fn parse_ints(line: &str, line_no: usize) -> Result<Vec<BigInt>> {
    line.split_whitespace()
        .map(|t| t.parse::<BigInt>().map_err(|_| Error::Parse(format!("line {line_no}: '{t}' is not an integer"))))
        .collect()
}

pub fn format_matrix(m: &IntMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(BigInt::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn int_list<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> String {
    let items: Vec<String> = values.into_iter().map(BigInt::to_string).collect();
    format!("[{}]", items.join(","))
}

fn rows_list(rows: &[Vec<BigInt>]) -> String {
    let items: Vec<String> = rows.iter().map(int_list).collect();
    format!("[{}]", items.join(","))
}

pub fn matrix_to_json(m: &IntMatrix) -> String {
    rows_list(&m.to_rows())
}

pub fn matrix_from_json(text: &str) -> Result<IntMatrix> {
    matrix_from_value(&parse_json(text)?, "matrix")
}

/// Deterministic layout: one element table per line.
pub fn relation_to_json(rel: &PrimitiveRelation) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"base_matrix\": {},", matrix_to_json(rel.base_matrix()));
    let _ = writeln!(out, "  \"copies\": {},", rel.copies());
    let _ = writeln!(out, "  \"coefficients\": {},", int_list(rel.coefficients()));
    out.push_str("  \"elements\": [\n");
    let tables: Vec<String> = rel.elements().iter().map(|e| format!("    {}", rows_list(&e.to_table()))).collect();
    out.push_str(&tables.join(",\n"));
    out.push_str("\n  ]\n}\n");
    out
}

pub fn relation_from_json(text: &str) -> Result<PrimitiveRelation> {
    let doc = parse_json(text)?;
    let obj = doc.as_object().ok_or_else(|| Error::Parse("relation document must be an object".into()))?;
    let field = |k: &str| obj.get(k).ok_or_else(|| Error::Parse(format!("missing key '{k}'")));
    let base = matrix_from_value(field("base_matrix")?, "base_matrix")?;
    let copies = usize::try_from(&big_from_value(field("copies")?, "copies")?)
        .map_err(|_| Error::Parse("copies must be a nonnegative integer".into()))?;
    let coefficients = int_array(field("coefficients")?, "coefficients")?;
    let elements = field("elements")?
        .as_array()
        .ok_or_else(|| Error::Parse("'elements' must be an array".into()))?
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let what = format!("elements[{i}]");
            let rows = rows_from_value(t, &what)?;
            if rows.len() != copies {
                return Err(Error::Parse(format!("{what} has {} bricks, expected {copies}", rows.len())));
            }
            BrickVector::from_table(rows).map_err(|e| Error::Parse(format!("{what}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    PrimitiveRelation::new(base, elements, coefficients)
}

pub fn bound_to_json(b: &BoundResult) -> String {
    let params: Vec<String> = b.params.iter().map(|(k, v)| format!("\"{k}\": {v}")).collect();
    format!("{{\"formula\": \"{}\", \"params\": {{{}}}, \"value\": \"{}\"}}", b.formula, params.join(", "), b.value)
}

pub fn graver_to_json(basis: &GraverBasis) -> String {
    let elements: Vec<String> = basis.elements().iter().map(|v| format!("    {}", int_list(&v.0))).collect();
    format!(
        "{{\n  \"matrix\": {},\n  \"count\": {},\n  \"max_l1_norm\": {},\n  \"elements\": [\n{}\n  ]\n}}\n",
        matrix_to_json(basis.matrix()),
        basis.len(),
        basis.max_l1_norm(),
        elements.join(",\n")
    )
}

pub fn vectors_from_json(text: &str) -> Result<Vec<IntVector>> {
    Ok(rows_from_value(&parse_json(text)?, "vectors")?.into_iter().map(IntVector).collect())
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn big_from_value(v: &Value, what: &str) -> Result<BigInt> {
    match v {
        // arbitrary_precision keeps the literal text
        Value::Number(n) => n.to_string().parse().map_err(|_| Error::Parse(format!("{what}: '{n}' is not an integer"))),
        Value::String(s) => s.parse().map_err(|_| Error::Parse(format!("{what}: '{s}' is not an integer"))),
        _ => Err(Error::Parse(format!("{what}: expected an integer"))),
    }
}

fn int_array(v: &Value, what: &str) -> Result<Vec<BigInt>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("{what}: expected an array")))?
        .iter()
        .map(|x| big_from_value(x, what))
        .collect()
}

fn rows_from_value(v: &Value, what: &str) -> Result<Vec<Vec<BigInt>>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("{what}: expected an array of rows")))?
        .iter()
        .map(|r| int_array(r, what))
        .collect()
}

fn matrix_from_value(v: &Value, what: &str) -> Result<IntMatrix> {
    let rows = rows_from_value(v, what)?;
    let cols = rows.first().map_or(0, Vec::len);
    IntMatrix::from_big_rows(rows, cols).map_err(|e| Error::Parse(format!("{what}: {e}")))
}
