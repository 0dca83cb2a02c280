//! The standard census catalog.

use serde_json::{json, Value};

/// Largest order admitted among catalog products.
pub const PRODUCT_ORDER_BOUND: usize = 256;

/// `ℤ_p[x]/(x^k)` as a description.
pub fn truncated_poly(p: usize, k: usize) -> Value {
    let mut f = vec![0i64; k + 1];
    f[k] = 1;
    json!({"poly_quotient": {"base": {"zn": p}, "f": f}})
}

/// `ℤ_n` for `n ≤ 64` and `ℤ_p[x]/(x^k)` for `p ∈ {2, 3}`, `k ≤ 3`, with orders.
pub fn base_rings() -> Vec<(Value, usize)> {
    let mut out: Vec<(Value, usize)> = (1..=64).map(|n| (json!({"zn": n}), n)).collect();
    for p in [2usize, 3] {
        for k in 1..=3u32 {
            out.push((truncated_poly(p, k as usize), p.pow(k)));
        }
    }
    out
}

/// Idealizations `A (+) E`, all of order at most 256.
pub fn idealizations() -> Vec<Value> {
    let gf4 = json!({"poly_quotient": {"base": {"zn": 2}, "f": [1, 1, 1]}});
    let dual2 = truncated_poly(2, 2);
    let v22 = json!({"product": [{"zn": 2}, {"zn": 2}]});
    let pairs: Vec<(Value, Value)> = vec![
        (json!({"zn": 2}), json!({"free": 2})),
        (json!({"zn": 2}), json!({"free": 1})),
        (json!({"zn": 2}), json!({"free": 3})),
        (json!({"zn": 2}), json!("zero")),
        (json!({"zn": 3}), json!({"free": 1})),
        (json!({"zn": 3}), json!({"free": 2})),
        (json!({"zn": 5}), json!({"free": 2})),
        (json!({"zn": 4}), json!({"free": 1})),
        (json!({"zn": 4}), json!({"quotient": [2]})),
        (json!({"zn": 6}), json!({"free": 1})),
        (json!({"zn": 6}), json!({"quotient": [2]})),
        (json!({"zn": 6}), json!({"direct_sum": [{"quotient": [2]}, {"quotient": [3]}]})),
        (json!({"zn": 9}), json!({"quotient": [3]})),
        (json!({"zn": 10}), json!({"free": 1})),
        (gf4.clone(), json!({"free": 1})),
        (gf4, json!({"free": 2})),
        (dual2.clone(), json!({"free": 1})),
        (dual2, json!({"quotient": [2]})),
        (v22.clone(), json!({"free": 1})),
        (v22.clone(), json!({"free": 2})),
        (v22, json!({"quotient": [1]})),
    ];
    pairs
        .into_iter()
        .map(|(ring, module)| json!({"idealization": {"ring": ring, "module": module}}))
        .collect()
}

/// Base rings, all pairwise products of base rings up to [`PRODUCT_ORDER_BOUND`],
/// and the idealizations.
pub fn standard_catalog() -> Vec<Value> {
    let bases = base_rings();
    let mut out: Vec<Value> = bases.iter().map(|b| b.0.clone()).collect();
    for i in 0..bases.len() {
        for j in i..bases.len() {
            if bases[i].1 * bases[j].1 <= PRODUCT_ORDER_BOUND {
                out.push(json!({"product": [bases[i].0, bases[j].0]}));
            }
        }
    }
    out.extend(idealizations());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::desc::parse_ring;
    use crate::error::Limits;

    #[test]
    fn catalog_shape() {
        let cat = standard_catalog();
        assert!(cat.len() >= 200);
        assert!(idealizations().len() >= 10);
        for v in idealizations() {
            let r = parse_ring(&v, &Limits::default()).unwrap();
            assert!(r.order() <= PRODUCT_ORDER_BOUND, "{}", r.label());
        }
    }
}
