//! Formal ZPI rings: finite products of special primary components, given by
//! their nilpotency index, and Dedekind components (ℤ or a quadratic order).

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Limits, Result};
use crate::quadring::{
    is_radical, parse_element, sp_factor, DedekindDomain, IntIdeal, IntegerRing, QuadElement, QuadIdeal, QuadRing,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dedekind {
    Integers(IntegerRing),
    Quadratic(QuadRing),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    /// Special primary ring with `M^t = 0`, `M^(t−1) ≠ 0`. Ideals are `M^k`, `0 ≤ k ≤ t`.
    Spr(u32),
    Ded(Dedekind),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Entry {
    /// `M^k` with `k` capped at `t`.
    Spr(u32),
    Int(IntIdeal),
    Quad(QuadIdeal),
    /// The zero ideal of a Dedekind component.
    Zero,
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Spr(0) => f.write_str("1"),
            Entry::Spr(1) => f.write_str("M"),
            Entry::Spr(k) => write!(f, "M^{k}"),
            Entry::Int(i) => write!(f, "{i}"),
            Entry::Quad(i) => write!(f, "{i}"),
            Entry::Zero => f.write_str("0"),
        }
    }
}

/// An ideal of a [`ZpiRing`], one entry per component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZpiIdeal {
    pub entries: Vec<Entry>,
}

impl fmt::Display for ZpiIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZpiRing {
    components: Vec<Component>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZpiChainChecks {
    pub ascending: bool,
    pub radical_links: bool,
    pub last_proper: bool,
    pub product_equals_input: bool,
}

impl ZpiChainChecks {
    pub fn all(&self) -> bool {
        self.ascending && self.radical_links && self.last_proper && self.product_equals_input
    }
}

impl ZpiRing {
    pub fn new(components: Vec<Component>) -> Result<ZpiRing> {
        if components.is_empty() {
            return Err(Error::invalid("a ZPI ring needs at least one component"));
        }
        if components.iter().any(|c| matches!(c, Component::Spr(0))) {
            return Err(Error::invalid("special primary components need t >= 1"));
        }
        Ok(ZpiRing { components })
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn unit_ideal(&self) -> ZpiIdeal {
        let entries = self
            .components
            .iter()
            .map(|c| match c {
                Component::Spr(_) => Entry::Spr(0),
                Component::Ded(Dedekind::Integers(z)) => Entry::Int(z.unit_ideal()),
                Component::Ded(Dedekind::Quadratic(q)) => Entry::Quad(q.unit_ideal()),
            })
            .collect();
        ZpiIdeal { entries }
    }

    /// Validates entries against components and caps exponents.
    pub fn ideal(&self, entries: Vec<Entry>) -> Result<ZpiIdeal> {
        if entries.len() != self.components.len() {
            return Err(Error::invalid(format!(
                "expected {} entries, got {}",
                self.components.len(),
                entries.len()
            )));
        }
        let entries = entries
            .into_iter()
            .zip(&self.components)
            .enumerate()
            .map(|(idx, (e, c))| match (e, c) {
                (Entry::Spr(k), Component::Spr(t)) => Ok(Entry::Spr(k.min(*t))),
                (Entry::Int(i), Component::Ded(Dedekind::Integers(_))) => Ok(Entry::Int(i)),
                (Entry::Quad(i), Component::Ded(Dedekind::Quadratic(q))) if i.d() == q.d() => Ok(Entry::Quad(i)),
                (Entry::Zero, Component::Ded(_)) => Ok(Entry::Zero),
                _ => Err(Error::invalid(format!("entry {idx} does not match its component"))),
            })
            .collect::<Result<_>>()?;
        Ok(ZpiIdeal { entries })
    }

    fn check_shape(&self, i: &ZpiIdeal) -> Result<()> {
        if i.entries.len() != self.components.len() {
            return Err(Error::invalid("ideal has the wrong number of entries"));
        }
        Ok(())
    }

    pub fn zpi_product(&self, i: &ZpiIdeal, j: &ZpiIdeal) -> Result<ZpiIdeal> {
        self.check_shape(i)?;
        self.check_shape(j)?;
        let mut entries = Vec::with_capacity(self.components.len());
        for ((a, b), c) in i.entries.iter().zip(&j.entries).zip(&self.components) {
            entries.push(match (a, b, c) {
                (Entry::Spr(x), Entry::Spr(y), Component::Spr(t)) => Entry::Spr((x + y).min(*t)),
                (Entry::Zero, _, Component::Ded(_)) | (_, Entry::Zero, Component::Ded(_)) => Entry::Zero,
                (Entry::Int(x), Entry::Int(y), Component::Ded(Dedekind::Integers(z))) => Entry::Int(z.mul(x, y)?),
                (Entry::Quad(x), Entry::Quad(y), Component::Ded(Dedekind::Quadratic(q))) => {
                    Entry::Quad(q.ideal_product(x, y)?)
                }
                _ => return Err(Error::invalid("entries do not match their components")),
            });
        }
        Ok(ZpiIdeal { entries })
    }

    pub fn product<'a>(&self, it: impl IntoIterator<Item = &'a ZpiIdeal>) -> Result<ZpiIdeal> {
        it.into_iter().try_fold(self.unit_ideal(), |acc, j| self.zpi_product(&acc, j))
    }

    /// `inner ⊆ outer`, componentwise.
    pub fn contains(&self, outer: &ZpiIdeal, inner: &ZpiIdeal) -> bool {
        outer
            .entries
            .iter()
            .zip(&inner.entries)
            .zip(&self.components)
            .all(|((o, n), c)| match (o, n, c) {
                (Entry::Spr(a), Entry::Spr(b), _) => b >= a,
                (_, Entry::Zero, _) => true,
                (Entry::Zero, _, _) => false,
                (Entry::Int(a), Entry::Int(b), Component::Ded(Dedekind::Integers(z))) => z.contains(a, b),
                (Entry::Quad(a), Entry::Quad(b), Component::Ded(Dedekind::Quadratic(q))) => q.contains(a, b),
                _ => false,
            })
    }

    pub fn is_unit(&self, i: &ZpiIdeal) -> bool {
        *i == self.unit_ideal()
    }

    pub fn is_radical(&self, i: &ZpiIdeal) -> Result<bool> {
        for (e, c) in i.entries.iter().zip(&self.components) {
            let ok = match (e, c) {
                (Entry::Spr(k), Component::Spr(_)) => *k <= 1,
                (Entry::Zero, _) => true,
                (Entry::Int(x), Component::Ded(Dedekind::Integers(z))) => is_radical(z, x)?,
                (Entry::Quad(x), Component::Ded(Dedekind::Quadratic(q))) => is_radical(q, x)?,
                _ => return Err(Error::invalid("entry does not match its component")),
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when some special primary entry is the zero ideal `M^t`, where
    /// exponent capping replaces literal uniqueness.
    pub fn uses_capped_exponent(&self, i: &ZpiIdeal) -> bool {
        i.entries
            .iter()
            .zip(&self.components)
            .any(|(e, c)| matches!((e, c), (Entry::Spr(k), Component::Spr(t)) if k == t))
    }

    /// Componentwise ascending radical chain, padded with unit entries.
    pub fn radical_chain(&self, i: &ZpiIdeal) -> Result<Vec<ZpiIdeal>> {
        self.check_shape(i)?;
        if self.is_unit(i) {
            return Err(Error::UnitIdeal);
        }
        let unit = self.unit_ideal();
        let mut per_component: Vec<Vec<Entry>> = Vec::with_capacity(self.components.len());
        for (e, c) in i.entries.iter().zip(&self.components) {
            per_component.push(match (e, c) {
                (Entry::Spr(k), Component::Spr(t)) => vec![Entry::Spr(1); (*k).min(*t) as usize],
                (Entry::Zero, _) => return Err(Error::ZeroIdeal),
                (Entry::Int(x), Component::Ded(Dedekind::Integers(z))) => {
                    if z.is_unit(x) {
                        vec![]
                    } else {
                        sp_factor(z, x)?.links.into_iter().map(Entry::Int).collect()
                    }
                }
                (Entry::Quad(x), Component::Ded(Dedekind::Quadratic(q))) => {
                    if q.is_unit(x) {
                        vec![]
                    } else {
                        sp_factor(q, x)?.links.into_iter().map(Entry::Quad).collect()
                    }
                }
                _ => return Err(Error::invalid("entry does not match its component")),
            });
        }
        let n = per_component.iter().map(Vec::len).max().unwrap_or(0);
        Ok((0..n)
            .map(|k| ZpiIdeal {
                entries: per_component
                    .iter()
                    .zip(&unit.entries)
                    .map(|(links, u)| links.get(k).copied().unwrap_or(*u))
                    .collect(),
            })
            .collect())
    }

    pub fn check_chain(&self, links: &[ZpiIdeal], target: &ZpiIdeal) -> Result<ZpiChainChecks> {
        let ascending = links.windows(2).all(|w| self.contains(&w[1], &w[0]));
        let mut radical_links = true;
        for j in links {
            radical_links &= self.is_radical(j)?;
        }
        let last_proper = links.last().is_some_and(|j| !self.is_unit(j));
        let product_equals_input = self.product(links.iter())? == *target;
        Ok(ZpiChainChecks { ascending, radical_links, last_proper, product_equals_input })
    }

    /// Parses `{ "components": [ {"spr": t} | {"ded": {"d": d}} | {"ded": {}} ] }`;
    /// a Dedekind component without `d` is `ℤ`.
    pub fn from_json(v: &Value, limits: &Limits) -> Result<ZpiRing> {
        let comps = v
            .get("components")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::invalid("ZPI ring needs a \"components\" array"))?;
        let mut out = Vec::with_capacity(comps.len());
        for c in comps {
            if let Some(t) = c.get("spr") {
                let t = t
                    .as_u64()
                    .and_then(|t| u32::try_from(t).ok())
                    .ok_or_else(|| Error::invalid("spr needs a positive integer t"))?;
                out.push(Component::Spr(t));
            } else if let Some(ded) = c.get("ded") {
                match ded.get("d") {
                    None | Some(Value::Null) => out.push(Component::Ded(Dedekind::Integers(IntegerRing::with_limits(limits)))),
                    Some(d) => {
                        let d = d.as_i64().ok_or_else(|| Error::invalid("ded.d must be an integer"))?;
                        out.push(Component::Ded(Dedekind::Quadratic(QuadRing::with_limits(d, limits)?)));
                    }
                }
            } else {
                return Err(Error::invalid("component must be {\"spr\": t} or {\"ded\": {...}}"));
            }
        }
        ZpiRing::new(out)
    }

    /// Parses an array of entries: integers (exponents, or generators for ℤ),
    /// `"unit"`, `"zero"`, `{"gens": [...]}` or `{"hnf": [a, b, c]}`.
    pub fn ideal_from_json(&self, v: &Value) -> Result<ZpiIdeal> {
        let items = v.as_array().ok_or_else(|| Error::invalid("ZPI ideal must be an array"))?;
        if items.len() != self.components.len() {
            return Err(Error::invalid(format!(
                "expected {} entries, got {}",
                self.components.len(),
                items.len()
            )));
        }
        let mut entries = Vec::with_capacity(items.len());
        for (item, c) in items.iter().zip(&self.components) {
            entries.push(parse_entry(item, c)?);
        }
        self.ideal(entries)
    }

    pub fn entry_json(e: &Entry) -> Value {
        match e {
            Entry::Spr(k) => json!(k),
            Entry::Int(i) => json!(i.generator()),
            Entry::Quad(i) => json!(i),
            Entry::Zero => json!("zero"),
        }
    }

    pub fn ideal_json(i: &ZpiIdeal) -> Value {
        Value::Array(i.entries.iter().map(Self::entry_json).collect())
    }
}

fn parse_entry(item: &Value, c: &Component) -> Result<Entry> {
    if item.as_str() == Some("zero") {
        return match c {
            Component::Ded(_) => Ok(Entry::Zero),
            Component::Spr(t) => Ok(Entry::Spr(*t)),
        };
    }
    let unit = item.as_str() == Some("unit");
    match c {
        Component::Spr(_) => {
            if unit {
                return Ok(Entry::Spr(0));
            }
            let k = item
                .as_u64()
                .and_then(|k| u32::try_from(k).ok())
                .ok_or_else(|| Error::invalid("spr entries are exponents"))?;
            Ok(Entry::Spr(k))
        }
        Component::Ded(Dedekind::Integers(z)) => {
            if unit {
                return Ok(Entry::Int(z.unit_ideal()));
            }
            let n = item
                .as_u64()
                .or_else(|| item.as_i64().map(i64::unsigned_abs))
                .ok_or_else(|| Error::invalid("integer entries are generators"))?;
            if n == 0 {
                return Ok(Entry::Zero);
            }
            Ok(Entry::Int(z.ideal(n)?))
        }
        Component::Ded(Dedekind::Quadratic(q)) => {
            if unit {
                return Ok(Entry::Quad(q.unit_ideal()));
            }
            if let Some(gens) = item.get("gens").and_then(Value::as_array) {
                let gens = gens
                    .iter()
                    .map(|g| {
                        g.as_str()
                            .ok_or_else(|| Error::invalid("generators must be strings"))
                            .and_then(parse_element)
                    })
                    .collect::<Result<Vec<QuadElement>>>()?;
                if gens.iter().all(QuadElement::is_zero) {
                    return Ok(Entry::Zero);
                }
                return Ok(Entry::Quad(q.ideal_from_gens(&gens)?));
            }
            if let Some(h) = item.get("hnf").and_then(Value::as_array) {
                let h: Vec<i128> = h.iter().filter_map(|x| x.as_i64().map(i128::from)).collect();
                if h.len() != 3 {
                    return Err(Error::invalid("hnf must be three integers"));
                }
                return Ok(Entry::Quad(q.ideal_from_hnf(h[0], h[1], h[2])?));
            }
            Err(Error::invalid("quadratic entries need \"gens\" or \"hnf\""))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(v: Value) -> ZpiRing {
        ZpiRing::from_json(&v, &Limits::default()).unwrap()
    }

    #[test]
    fn exponent_cap() {
        let r = ring(json!({"components": [{"spr": 3}]}));
        let m2 = r.ideal(vec![Entry::Spr(2)]).unwrap();
        assert_eq!(r.zpi_product(&m2, &m2).unwrap().entries, vec![Entry::Spr(3)]);
        assert_eq!(r.ideal(vec![Entry::Spr(9)]).unwrap().entries, vec![Entry::Spr(3)]);
        let u = r.unit_ideal();
        assert_eq!(r.zpi_product(&u, &m2).unwrap(), m2);
    }

    #[test]
    fn mixed_product() {
        let r = ring(json!({"components": [{"spr": 3}, {"ded": {"d": -5}}]}));
        let a = r.ideal_from_json(&json!([1, {"gens": ["6"]}])).unwrap();
        let b = r.ideal_from_json(&json!([1, "unit"])).unwrap();
        let p = r.zpi_product(&a, &b).unwrap();
        assert_eq!(p, r.ideal_from_json(&json!([2, {"gens": ["6"]}])).unwrap());
    }

    #[test]
    fn chains() {
        let r = ring(json!({"components": [{"spr": 3}]}));
        let m2 = r.ideal(vec![Entry::Spr(2)]).unwrap();
        let c = r.radical_chain(&m2).unwrap();
        assert_eq!(c, vec![r.ideal(vec![Entry::Spr(1)]).unwrap(); 2]);

        let r = ring(json!({"components": [{"spr": 3}, {"ded": {}}]}));
        let i = r.ideal_from_json(&json!([2, 12])).unwrap();
        let c = r.radical_chain(&i).unwrap();
        let expected = vec![
            r.ideal_from_json(&json!([1, 6])).unwrap(),
            r.ideal_from_json(&json!([1, 2])).unwrap(),
        ];
        assert_eq!(c, expected);
        assert!(r.check_chain(&c, &i).unwrap().all());
        assert!(matches!(r.radical_chain(&r.unit_ideal()), Err(Error::UnitIdeal)));
        let z = r.ideal_from_json(&json!([1, "zero"])).unwrap();
        assert!(matches!(r.radical_chain(&z), Err(Error::ZeroIdeal)));
    }

    #[test]
    fn single_dedekind_component_matches_quadring() {
        let r = ring(json!({"components": [{"ded": {"d": -5}}]}));
        let q = QuadRing::new(-5).unwrap();
        let six = q.principal(6, 0).unwrap();
        let i = r.ideal(vec![Entry::Quad(six)]).unwrap();
        let c: Vec<Entry> = r.radical_chain(&i).unwrap().into_iter().map(|j| j.entries[0]).collect();
        let direct: Vec<Entry> = sp_factor(&q, &six).unwrap().links.into_iter().map(Entry::Quad).collect();
        assert_eq!(c, direct);
    }

    #[test]
    fn bad_specs() {
        let l = Limits::default();
        assert!(ZpiRing::from_json(&json!({"components": []}), &l).is_err());
        assert!(ZpiRing::from_json(&json!({"components": [{"spr": 0}]}), &l).is_err());
        assert!(ZpiRing::from_json(&json!({"components": [{"ded": {"d": 4}}]}), &l).is_err());
        let r = ring(json!({"components": [{"spr": 2}]}));
        assert!(r.ideal_from_json(&json!([1, 1])).is_err());
    }
}
