//! JSON descriptions of finite rings and modules.
//!
//! Ring forms:
//! - `{"zn": n}`, optionally with `"module_rank": k` for `ℤ_n (+) ℤ_n^k`
//! - `{"poly_quotient": {"base": <ring>, "f": [c0, c1, ..., 1]}}`
//! - `{"product": [<ring>, ...]}`
//! - `{"idealization": {"ring": <ring>, "module": <module>}}` or a flat
//!   `{"idealization": {"zn": n, "module_rank": k}}`
//! - `{"quotient": {"ring": <ring>, "ideal": [generators]}}`
//! - raw `{"order", "zero", "one", "add", "mul"}` tables
//!
//! Any form may carry a `"label"`.
//!
//! Module forms: `{"free": k}`, `"zero"`, `{"quotient": [generators]}`,
//! `{"direct_sum": [<module>, ...]}`, raw `{"zero", "add", "action"}`.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Limits, Result};
use crate::finideal::FinIdeal;
use crate::finring::{FinModule, FinRing};

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidRing(msg.into())
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| bad(format!("{what} must be a non-negative integer")))
}

fn as_u32(v: &Value, what: &str) -> Result<u32> {
    v.as_u64()
        .and_then(|n| u32::try_from(n).ok())
        .ok_or_else(|| bad(format!("{what} must be a non-negative integer")))
}

fn table(v: Option<&Value>, what: &str) -> Result<Vec<Vec<u32>>> {
    let rows = v
        .and_then(Value::as_array)
        .ok_or_else(|| bad(format!("missing table {what:?}")))?;
    rows.iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| bad(format!("{what} rows must be arrays")))?
                .iter()
                .map(|x| as_u32(x, what))
                .collect()
        })
        .collect()
}

fn element_list(v: &Value, ring: &FinRing, what: &str) -> Result<Vec<u32>> {
    let items = v.as_array().ok_or_else(|| bad(format!("{what} must be an array of element indices")))?;
    items
        .iter()
        .map(|x| {
            let e = as_u32(x, what)?;
            if e as usize >= ring.order() {
                return Err(bad(format!("element {e} out of range for order {}", ring.order())));
            }
            Ok(e)
        })
        .collect()
}

pub fn parse_ring(v: &Value, limits: &Limits) -> Result<FinRing> {
    let ring = parse_ring_inner(v, limits)?;
    Ok(match v.get("label").and_then(Value::as_str) {
        Some(l) => ring.with_label(l),
        None => ring,
    })
}

fn parse_ring_inner(v: &Value, limits: &Limits) -> Result<FinRing> {
    let obj = v.as_object().ok_or_else(|| bad("ring description must be a JSON object"))?;
    if let Some(n) = obj.get("zn") {
        let base = FinRing::zn_with(as_usize(n, "zn")?, limits)?;
        return match obj.get("module_rank") {
            None => Ok(base),
            Some(k) => {
                let a = Arc::new(base);
                let e = FinModule::free(a.clone(), as_usize(k, "module_rank")?)?;
                FinRing::idealization_with(&a, &e, limits)
            }
        };
    }
    if let Some(pq) = obj.get("poly_quotient") {
        let base = parse_ring(pq.get("base").ok_or_else(|| bad("poly_quotient needs \"base\""))?, limits)?;
        let f = pq
            .get("f")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("poly_quotient needs coefficient array \"f\""))?
            .iter()
            .map(|c| c.as_i64().ok_or_else(|| bad("coefficients must be integers")))
            .collect::<Result<Vec<i64>>>()?;
        return FinRing::poly_quotient_with(&base, &f, limits);
    }
    if let Some(p) = obj.get("product") {
        let parts = p.as_array().ok_or_else(|| bad("product must be an array"))?;
        let mut rings = parts.iter().map(|r| parse_ring(r, limits));
        let first = rings.next().ok_or_else(|| bad("empty product"))??;
        return rings.try_fold(first, |acc, r| FinRing::product_with(&acc, &r?, limits));
    }
    if let Some(id) = obj.get("idealization") {
        let (ring, module) = match id.get("ring") {
            Some(r) => (parse_ring(r, limits)?, id.get("module")),
            None => {
                let mut base = id.clone();
                let module = base.as_object_mut().and_then(|o| o.remove("module"));
                let rank = base.as_object_mut().and_then(|o| o.remove("module_rank"));
                let ring = parse_ring(&base, limits)?;
                let a = Arc::new(ring);
                let e = match (module, rank) {
                    (Some(m), _) => parse_module(&m, &a)?,
                    (None, Some(k)) => FinModule::free(a.clone(), as_usize(&k, "module_rank")?)?,
                    (None, None) => return Err(bad("idealization needs a module")),
                };
                return FinRing::idealization_with(&a, &e, limits);
            }
        };
        let a = Arc::new(ring);
        let m = module.ok_or_else(|| bad("idealization needs \"module\""))?;
        let e = parse_module(m, &a)?;
        return FinRing::idealization_with(&a, &e, limits);
    }
    if let Some(q) = obj.get("quotient") {
        let ring = parse_ring(q.get("ring").ok_or_else(|| bad("quotient needs \"ring\""))?, limits)?;
        let gens = element_list(q.get("ideal").ok_or_else(|| bad("quotient needs \"ideal\""))?, &ring, "ideal")?;
        let ideal = ring.generated_ideal(&gens);
        return ring.quotient(&ideal);
    }
    if obj.contains_key("add") || obj.contains_key("mul") {
        let add = table(obj.get("add"), "add")?;
        let mul = table(obj.get("mul"), "mul")?;
        if let Some(n) = obj.get("order") {
            if as_usize(n, "order")? != add.len() {
                return Err(bad("order does not match the table size"));
            }
        }
        let zero = as_u32(obj.get("zero").ok_or_else(|| bad("missing \"zero\""))?, "zero")?;
        let one = as_u32(obj.get("one").ok_or_else(|| bad("missing \"one\""))?, "one")?;
        let label = obj.get("label").and_then(Value::as_str).unwrap_or("R");
        return FinRing::from_tables_with(label, zero, one, &add, &mul, limits);
    }
    Err(bad("unrecognized ring description"))
}

pub fn parse_module(v: &Value, ring: &Arc<FinRing>) -> Result<FinModule> {
    let badm = |m: &str| Error::InvalidModule(m.into());
    if v.as_str() == Some("zero") || v.get("zero").is_some_and(|z| z.is_boolean()) {
        return Ok(FinModule::zero(ring.clone()));
    }
    if let Some(k) = v.get("free") {
        return FinModule::free(ring.clone(), as_usize(k, "free")?);
    }
    if let Some(g) = v.get("quotient") {
        let gens = element_list(g, ring, "quotient")?;
        return FinModule::cyclic(ring.clone(), &ring.generated_ideal(&gens));
    }
    if let Some(parts) = v.get("direct_sum") {
        let parts = parts.as_array().ok_or_else(|| badm("direct_sum must be an array"))?;
        let mut it = parts.iter().map(|m| parse_module(m, ring));
        let first = it.next().ok_or_else(|| badm("empty direct sum"))??;
        return it.try_fold(first, |acc, m| FinModule::direct_sum(&acc, &m?));
    }
    if v.get("add").is_some() {
        let add = table(v.get("add"), "add")?;
        let action = table(v.get("action"), "action")?;
        let zero = as_u32(v.get("zero").ok_or_else(|| badm("missing \"zero\""))?, "zero")?;
        let label = v.get("label").and_then(Value::as_str).unwrap_or("E");
        return FinModule::from_tables(ring.clone(), label, zero, &add, &action);
    }
    Err(badm("unrecognized module description"))
}

/// `{ "label", "order", "zero", "one", "add", "mul" }`.
pub fn ring_to_json(r: &FinRing) -> Value {
    json!({
        "label": r.label(),
        "order": r.order(),
        "zero": r.zero(),
        "one": r.one(),
        "add": r.add_rows(),
        "mul": r.mul_rows(),
    })
}

/// Sorted element-index array.
pub fn ideal_to_json(i: &FinIdeal) -> Value {
    json!(i.elements())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sspengine::decide_ssp;

    fn ring(v: Value) -> FinRing {
        parse_ring(&v, &Limits::default()).unwrap()
    }

    #[test]
    fn shorthands() {
        assert_eq!(ring(json!({"zn": 6})).order(), 6);
        let gf4 = ring(json!({"poly_quotient": {"base": {"zn": 2}, "f": [1, 1, 1]}}));
        assert!(gf4.is_field());
        let p = ring(json!({"product": [{"zn": 2}, {"zn": 3}, {"zn": 5}]}));
        assert_eq!(p.order(), 30);
        let q = ring(json!({"quotient": {"ring": {"zn": 12}, "ideal": [4]}}));
        assert_eq!(q.order(), 4);
        let l = ring(json!({"zn": 5, "label": "F5"}));
        assert_eq!(l.label(), "F5");
    }

    #[test]
    fn idealization_forms_agree() {
        let flat = ring(json!({"idealization": {"zn": 2, "module_rank": 2}}));
        let nested = ring(json!({"idealization": {"ring": {"zn": 2}, "module": {"free": 2}}}));
        let top = ring(json!({"zn": 2, "module_rank": 2}));
        assert_eq!(flat, nested);
        assert_eq!(flat, top);
        assert_eq!(flat.order(), 8);
        assert!(!decide_ssp(&flat).unwrap().is_ssp);
        let sum = ring(json!({"idealization": {"ring": {"zn": 6}, "module": {"direct_sum": [{"quotient": [2]}, {"quotient": [3]}]}}}));
        assert_eq!(sum.order(), 36);
    }

    #[test]
    fn raw_tables_roundtrip() {
        let z4 = FinRing::zn(4).unwrap();
        let back = ring(ring_to_json(&z4));
        assert_eq!(back, z4);
        let mut broken = ring_to_json(&z4);
        broken["mul"][1][1] = json!(3);
        assert!(parse_ring(&broken, &Limits::default()).is_err());
    }

    #[test]
    fn rejects_garbage() {
        let l = Limits::default();
        assert!(parse_ring(&json!({"zn": 0}), &l).is_err());
        assert!(parse_ring(&json!({"what": 1}), &l).is_err());
        assert!(parse_ring(&json!([1]), &l).is_err());
        assert!(parse_ring(&json!({"quotient": {"ring": {"zn": 4}, "ideal": [9]}}), &l).is_err());
        assert!(parse_ring(&json!({"zn": 5000}), &l).is_err());
    }
}
