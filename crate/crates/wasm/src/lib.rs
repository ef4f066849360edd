//! Browser bindings. Every export returns a JSON string so the page needs no
//! generated type glue beyond `wasm-bindgen` itself.

use graver_core::bounds::{bound_berstein_onn, bound_cor2, bound_cor3, bound_mixed, BoundResult};
use graver_core::graver::{graver_basis_with, GraverBudget};
use graver_core::io::{graver_to_json, parse_matrix};
use graver_core::lift::{base_relation_a34, lift_chain_steps, ChainSwitch};
use graver_core::relation::lemma2_bound;
use wasm_bindgen::prelude::*;

fn err(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

fn eval(formula: &str, m: usize, g: usize, m0: usize) -> Result<BoundResult, JsError> {
    match formula {
        "cor2" => bound_cor2(g, m),
        "cor3" => bound_cor3(m),
        "berstein_onn" => bound_berstein_onn(m),
        "mixed" => bound_mixed(m0, m),
        other => return Err(JsError::new(&format!("unknown formula '{other}'"))),
    }
    .map_err(err)
}

/// `[{"m": M, "<formula>": "value", ..}, ..]` for every M in `from..=to`.
/// Entries outside a formula's range are `null`.
#[wasm_bindgen]
pub fn bound_table(formulas: &str, from: usize, to: usize, g: usize, m0: usize) -> Result<String, JsError> {
    if from > to || to - from > 200 {
        return Err(JsError::new("range must be nonempty and at most 200 long"));
    }
    let names: Vec<&str> = formulas.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let mut rows = Vec::new();
    for m in from..=to {
        let mut cells = vec![format!("\"m\": {m}")];
        for name in &names {
            let value = match eval(name, m, g, m0) {
                Ok(b) => format!("\"{}\"", b.value),
                Err(_) if matches!(*name, "cor2" | "cor3" | "berstein_onn" | "mixed") => "null".into(),
                Err(e) => return Err(e),
            };
            cells.push(format!("\"{name}\": {value}"));
        }
        rows.push(format!("{{{}}}", cells.join(", ")));
    }
    Ok(format!("[{}]", rows.join(", ")))
}

/// Every step of the lift chain from the A_3x4 base relation:
/// `[{"m", "sum", "coefficients", "elements"}, ..]`, elements as brick tables.
#[wasm_bindgen]
pub fn lift_chain_table(l: usize, target: usize, switch_at: usize, switch_l: usize) -> Result<String, JsError> {
    if target > 12 {
        return Err(JsError::new("target is capped at 12 copies"));
    }
    let switch = (switch_at > 0).then_some(ChainSwitch { at: switch_at, new_l: switch_l });
    let steps = lift_chain_steps(&base_relation_a34(), l, target, switch).map_err(err)?;
    let list = |v: Vec<String>| format!("[{}]", v.join(","));
    let rows: Vec<String> = steps
        .iter()
        .map(|rel| {
            let coefficients = list(rel.coefficients().iter().map(|h| h.to_string()).collect());
            let elements = list(
                rel.elements()
                    .iter()
                    .map(|e| list(e.bricks().map(|b| list(b.iter().map(|x| x.to_string()).collect())).collect()))
                    .collect(),
            );
            format!(
                "{{\"m\": {}, \"sum\": \"{}\", \"coefficients\": {coefficients}, \"elements\": {elements}}}",
                rel.copies(),
                lemma2_bound(rel)
            )
        })
        .collect();
    Ok(format!("[{}]", rows.join(", ")))
}

/// Graver basis of a matrix given in the plain text format, with a small
/// element budget so the page stays responsive.
#[wasm_bindgen]
pub fn graver_basis_json(matrix_text: &str) -> Result<String, JsError> {
    let m = parse_matrix(matrix_text).map_err(err)?;
    let budget = GraverBudget { max_elements: 20_000, ..Default::default() };
    Ok(graver_to_json(&graver_basis_with(&m, &budget).map_err(err)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_table_rows() {
        let t = bound_table("cor3,berstein_onn", 4, 5, 3, 6).unwrap();
        assert_eq!(
            t,
            r#"[{"m": 4, "cor3": "27", "berstein_onn": "27"}, {"m": 5, "cor3": "75", "berstein_onn": "61"}]"#
        );
    }

    #[test]
    fn chain_table_sums() {
        let t = lift_chain_table(2, 7, 6, 0).unwrap();
        assert!(t.contains("\"sum\": \"171\""));
        assert!(t.contains("\"sum\": \"367\""));
    }

    #[test]
    fn graver_basis_of_row() {
        assert!(graver_basis_json("1 3\n1 1 1\n").unwrap().contains("\"count\": 6"));
    }
}
