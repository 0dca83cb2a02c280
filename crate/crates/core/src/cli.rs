//! Batch jobs behind the `radfact` binary: one JSON payload in, one JSON report out.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::catalog::standard_catalog;
use crate::desc::{ideal_to_json, parse_ring};
use crate::error::{Error, Limits, Result};
use crate::finideal::FinIdeal;
use crate::finring::FinRing;
use crate::polychain::{check_poly_chain, parse_poly, product_chain, sf_chain, vk_poly, RatPoly};
use crate::quadring::{
    check_chain, normalize_factorization, parse_element, radical, sp_factor, vn, DedekindDomain, IntIdeal,
    IntegerRing, QuadElement, QuadIdeal, QuadRing,
};
use crate::sspengine::{decide_ssp_with, structural_ssp, SP_NOTE};
use crate::zpicompose::ZpiRing;

/// Exit status for a census whose two decision routes disagree.
pub const EXIT_DISAGREEMENT: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Factor,
    DecideSsp,
    Spectrum,
    Ideals,
    SfChain,
    Census,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Factor,
        Command::DecideSsp,
        Command::Spectrum,
        Command::Ideals,
        Command::SfChain,
        Command::Census,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Command::Factor => "factor",
            Command::DecideSsp => "decide-ssp",
            Command::Spectrum => "spectrum",
            Command::Ideals => "ideals",
            Command::SfChain => "sf-chain",
            Command::Census => "census",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown command {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Job {
    pub command: Command,
    pub input: Value,
    pub limits: Limits,
    pub output: Option<PathBuf>,
}

/// Exit status and report of one job.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: Value,
}

impl Outcome {
    /// Canonical rendering: sorted keys, two-space indentation, trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("reports are always serializable");
        s.push('\n');
        s
    }
}

/// Parses JSON, reporting failures with a byte offset.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        let offset = text
            .split_inclusive('\n')
            .take(e.line().saturating_sub(1))
            .map(str::len)
            .sum::<usize>()
            + e.column().saturating_sub(1);
        Error::Parse { position: offset, message: format!("malformed JSON (line {}, column {}): {e}", e.line(), e.column()) }
    })
}

impl Job {
    /// Builds a job from raw input text. `sf-chain` also accepts one
    /// polynomial per line; every other command takes a JSON payload.
    pub fn from_text(command: Command, text: &str, limits: Limits) -> Result<Job> {
        let trimmed = text.trim_start();
        let input = if command == Command::SfChain && !(trimmed.starts_with('{') || trimmed.starts_with('[')) {
            Value::Array(
                text.lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(|l| Value::String(l.to_string()))
                    .collect(),
            )
        } else if trimmed.is_empty() && command == Command::Census {
            json!({"catalog": []})
        } else {
            parse_json(text)?
        };
        let job = Job { command, input, limits, output: None };
        job.validate()?;
        Ok(job)
    }

    /// Checks that the payload has the shape the command expects.
    pub fn validate(&self) -> Result<()> {
        let v = &self.input;
        let ok = match self.command {
            Command::Factor => v.is_object(),
            Command::DecideSsp | Command::Ideals | Command::Spectrum => v.is_object(),
            Command::SfChain => v.is_array() || v.get("polys").is_some() || v.get("components").is_some(),
            Command::Census => v.is_array() || v.get("catalog").is_some() || v.get("preset").is_some(),
        };
        if !ok {
            return Err(Error::invalid(format!("payload does not fit the {} command", self.command)));
        }
        Ok(())
    }
}

fn error_report(e: &Error) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), json!(error_kind(e)));
    m.insert("message".into(), json!(e.to_string()));
    match e {
        Error::Parse { position, .. } => {
            m.insert("position".into(), json!(position));
        }
        Error::Resource { bound, limit } => {
            m.insert("bound".into(), json!(bound.to_string()));
            m.insert("limit".into(), json!(limit));
        }
        Error::NotRadical { index } => {
            m.insert("index".into(), json!(index));
        }
        _ => {}
    }
    json!({ "error": Value::Object(m) })
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidRing(_) => "invalid_ring",
        Error::InvalidModule(_) => "invalid_module",
        Error::InvalidArgument(_) => "invalid_argument",
        Error::NotAnIdeal(_) => "not_an_ideal",
        Error::NotRadical { .. } => "not_radical",
        Error::UnitIdeal => "unit_ideal",
        Error::ZeroIdeal => "zero_ideal",
        Error::NotPrime(_) => "not_prime",
        Error::Parse { .. } => "parse",
        Error::Resource { .. } => "resource",
        Error::Unfactorable(_) => "unfactorable",
        Error::Overflow(_) => "overflow",
        Error::Internal(_) => "internal",
    }
}

/// Outcome for a failure before or during dispatch.
pub fn failure(e: &Error) -> Outcome {
    Outcome { exit_code: e.exit_code(), report: error_report(e) }
}

pub fn run(job: &Job) -> Outcome {
    let result = job.validate().and_then(|_| match job.command {
        Command::Factor => factor(&job.input, &job.limits),
        Command::DecideSsp => decide(&job.input, &job.limits),
        Command::Spectrum => spectrum(&job.input, &job.limits),
        Command::Ideals => ideals(&job.input, &job.limits),
        Command::SfChain => sf_chain_job(&job.input),
        Command::Census => census(&job.input, &job.limits),
    });
    match result {
        Ok(outcome) => outcome,
        Err(e) => failure(&e),
    }
}

fn ok(report: Value) -> Result<Outcome> {
    Ok(Outcome { exit_code: 0, report })
}

// ---------------------------------------------------------------- factor

fn gens_of(v: &Value) -> Result<Vec<QuadElement>> {
    let items = v.as_array().ok_or_else(|| Error::invalid("\"gens\" must be an array of strings"))?;
    items
        .iter()
        .map(|g| match g {
            Value::String(s) => parse_element(s),
            Value::Number(n) => n
                .as_i64()
                .map(|x| QuadElement::new(x as i128, 0))
                .ok_or_else(|| Error::invalid("integer generator out of range")),
            _ => Err(Error::invalid("generators must be strings like \"1+w\"")),
        })
        .collect()
}

fn quad_ideal(q: &QuadRing, v: &Value) -> Result<QuadIdeal> {
    if let Some(g) = v.get("gens") {
        return q.ideal_from_gens(&gens_of(g)?);
    }
    if let Some(h) = v.get("hnf").and_then(Value::as_array) {
        let h: Vec<i128> = h.iter().filter_map(|x| x.as_i64().map(i128::from)).collect();
        if h.len() != 3 {
            return Err(Error::invalid("\"hnf\" must be [a, b, c]"));
        }
        return q.ideal_from_hnf(h[0], h[1], h[2]);
    }
    Err(Error::invalid("ideal needs \"gens\" or \"hnf\""))
}

fn int_ideal(z: &IntegerRing, v: &Value) -> Result<IntIdeal> {
    let n: i128 = if let Some(n) = v.get("n").or(if v.is_number() { Some(v) } else { None }) {
        n.as_i64().ok_or_else(|| Error::invalid("\"n\" must be an integer"))? as i128
    } else if let Some(g) = v.get("gens") {
        let gens = gens_of(g)?;
        if gens.iter().any(|e| e.y != 0) {
            return Err(Error::invalid("generators over Z cannot involve w; give \"d\" for a quadratic ring"));
        }
        gens.iter().fold(0, |acc, e| crate::quadring::arith::gcd(acc, e.x))
    } else {
        return Err(Error::invalid("ideal of Z needs \"n\" or \"gens\""));
    };
    let n = u64::try_from(n.unsigned_abs()).map_err(|_| Error::Overflow("integer ideal generator"))?;
    z.ideal(n)
}

/// Factorization report shared by the quadratic and integer paths.
fn chain_report<D>(
    dom: &D,
    input: &D::Ideal,
    factors_in: Option<&[D::Ideal]>,
    allow_unit: bool,
    norm: impl Fn(&D::Ideal) -> u128,
    containing: impl Fn(&D::Ideal) -> Result<Vec<D::Ideal>>,
) -> Result<Map<String, Value>>
where
    D: DedekindDomain,
    D::Ideal: Serialize,
{
    let mut m = Map::new();
    m.insert("input".into(), json!(input));
    m.insert("norm".into(), json!(norm(input).to_string()));
    let fact = dom.factor(input)?;
    m.insert(
        "factorization".into(),
        Value::Array(
            fact.factors
                .iter()
                .map(|(p, e)| json!({"prime": p, "exponent": e, "norm": norm(p).to_string()}))
                .collect(),
        ),
    );
    if dom.is_unit(input) {
        if !allow_unit {
            return Err(Error::UnitIdeal);
        }
        m.insert("unit".into(), json!(true));
        m.insert("chain".into(), json!([]));
        return Ok(m);
    }
    let chain = match factors_in {
        Some(f) => {
            let c = normalize_factorization(dom, f)?;
            m.insert("normalized_from".into(), json!(f));
            c
        }
        None => sp_factor(dom, input)?,
    };
    m.insert("radical".into(), json!(radical(dom, input)?));
    m.insert("chain".into(), json!(chain.links));
    m.insert(
        "chain_norms".into(),
        json!(chain.links.iter().map(|j| norm(j).to_string()).collect::<Vec<_>>()),
    );
    let checks = check_chain(dom, &chain, input)?;
    let mut v_coherent = true;
    for (k, j) in chain.links.iter().enumerate() {
        let mut lhs = containing(j)?;
        lhs.sort();
        let mut rhs = vn(dom, input, k as u32 + 1)?;
        rhs.sort();
        v_coherent &= lhs == rhs;
    }
    let product_norm: u128 = chain.links.iter().map(&norm).product();
    let mut c = serde_json::to_value(checks).expect("checks serialize");
    c["v_coherent"] = json!(v_coherent);
    c["norm_multiplicative"] = json!(product_norm == norm(input));
    c["all"] = json!(checks.all() && v_coherent && product_norm == norm(input));
    m.insert("checks".into(), c);
    Ok(m)
}

fn factor(v: &Value, limits: &Limits) -> Result<Outcome> {
    if v.get("components").is_some() {
        return factor_zpi(v, limits);
    }
    let allow_unit = v.get("allow_unit").and_then(Value::as_bool).unwrap_or(false);
    match v.get("d") {
        Some(d) if !d.is_null() => {
            let d = d.as_i64().ok_or_else(|| Error::invalid("\"d\" must be an integer"))?;
            let q = QuadRing::with_limits(d, limits)?;
            let factors = match v.get("factors") {
                Some(f) => Some(
                    f.as_array()
                        .ok_or_else(|| Error::invalid("\"factors\" must be an array of ideals"))?
                        .iter()
                        .map(|x| quad_ideal(&q, x))
                        .collect::<Result<Vec<_>>>()?,
                ),
                None => None,
            };
            let input = match &factors {
                Some(f) if v.get("gens").is_none() && v.get("hnf").is_none() => q.product(f.iter())?,
                _ => quad_ideal(&q, v)?,
            };
            let mut m = chain_report(&q, &input, factors.as_deref(), allow_unit, |i| i.norm(), |i| {
                q.primes_containing(i)
            })?;
            m.insert(
                "ring".into(),
                json!({"d": d, "omega": q.kind(), "min_poly": q.min_poly()}),
            );
            ok(Value::Object(m))
        }
        _ => {
            let z = IntegerRing::with_limits(limits);
            let factors = match v.get("factors") {
                Some(f) => Some(
                    f.as_array()
                        .ok_or_else(|| Error::invalid("\"factors\" must be an array of ideals"))?
                        .iter()
                        .map(|x| int_ideal(&z, x))
                        .collect::<Result<Vec<_>>>()?,
                ),
                None => None,
            };
            let input = match &factors {
                Some(f) if v.get("gens").is_none() && v.get("n").is_none() => z.product(f.iter())?,
                _ => int_ideal(&z, v)?,
            };
            let mut m = chain_report(&z, &input, factors.as_deref(), allow_unit, |i| i.generator() as u128, |i| {
                // primes dividing the generator, by trial division
                let mut n = i.generator();
                let mut out = Vec::new();
                let mut p = 2u64;
                while p * p <= n {
                    if n % p == 0 {
                        out.push(z.prime(p)?);
                        while n % p == 0 {
                            n /= p;
                        }
                    }
                    p += 1;
                }
                if n > 1 {
                    out.push(z.prime(n)?);
                }
                Ok(out)
            })?;
            m.insert("ring".into(), json!("Z"));
            ok(Value::Object(m))
        }
    }
}

fn factor_zpi(v: &Value, limits: &Limits) -> Result<Outcome> {
    let r = ZpiRing::from_json(v, limits)?;
    let ideal = r.ideal_from_json(v.get("ideal").ok_or_else(|| Error::invalid("ZPI job needs \"ideal\""))?)?;
    let chain = r.radical_chain(&ideal)?;
    let checks = r.check_chain(&chain, &ideal)?;
    let mut c = serde_json::to_value(checks).expect("checks serialize");
    c["all"] = json!(checks.all());
    ok(json!({
        "ring": {"components": v["components"]},
        "input": ZpiRing::ideal_json(&ideal),
        "chain": chain.iter().map(ZpiRing::ideal_json).collect::<Vec<_>>(),
        "capped_exponents": r.uses_capped_exponent(&ideal),
        "checks": c,
    }))
}

// ---------------------------------------------------------------- finite rings

fn ring_payload(v: &Value, limits: &Limits) -> Result<FinRing> {
    match v.get("ring") {
        Some(r) => parse_ring(r, limits),
        None => parse_ring(v, limits),
    }
}

fn ring_header(r: &FinRing) -> Value {
    json!({"label": r.label(), "order": r.order()})
}

fn ideal_key(i: &FinIdeal) -> String {
    serde_json::to_string(&i.elements()).expect("element arrays serialize")
}

fn decide(v: &Value, limits: &Limits) -> Result<Outcome> {
    let r = ring_payload(v, limits)?;
    let verdict = decide_ssp_with(&r, limits)?;
    let structural = structural_ssp(&r)?;
    let mut factorizations = Map::new();
    let mut remultiply = true;
    let mut factors_radical = true;
    for (ideal, f) in &verdict.factorizations {
        let entry = match f {
            Some(f) => {
                let prod = f.iter().fold(r.whole_ideal(), |acc, j| r.ideal_product(&acc, j));
                remultiply &= &prod == ideal;
                factors_radical &= f.iter().all(|j| r.is_radical(j));
                json!(f.iter().map(ideal_to_json).collect::<Vec<_>>())
            }
            None => Value::Null,
        };
        factorizations.insert(ideal_key(ideal), entry);
    }
    let witness_outside = verdict.witness.as_ref().is_none_or(|w| !verdict.closure.contains(w));
    ok(json!({
        "ring": ring_header(&r),
        "is_ssp": verdict.is_ssp,
        "is_sp": verdict.is_sp,
        "sp_note": SP_NOTE,
        "witness": verdict.witness.as_ref().map(ideal_to_json),
        "factorizations": factorizations,
        "radical_closure": verdict.closure.members().iter().map(ideal_to_json).collect::<Vec<_>>(),
        "structural_ssp": structural,
        "checks": {
            "witnesses_remultiply": remultiply,
            "factors_radical": factors_radical,
            "witness_outside_closure": witness_outside,
            "agrees_with_structure": structural == verdict.is_ssp,
        },
    }))
}

fn local_profile(r: &FinRing) -> Result<(Vec<usize>, Vec<bool>)> {
    let mut orders = Vec::new();
    let mut sp = Vec::new();
    for f in r.decompose_local() {
        orders.push(f.ring.order());
        sp.push(f.ring.is_special_primary()?.special_primary);
    }
    Ok((orders, sp))
}

fn spectrum(v: &Value, limits: &Limits) -> Result<Outcome> {
    if let (Some(d), Some(p)) = (v.get("d"), v.get("p")) {
        let d = d.as_i64().ok_or_else(|| Error::invalid("\"d\" must be an integer"))?;
        let p = p.as_u64().ok_or_else(|| Error::invalid("\"p\" must be a positive integer"))?;
        let q = QuadRing::with_limits(d, limits)?;
        let primes = q.primes_above(p)?;
        let product = primes
            .iter()
            .try_fold(q.unit_ideal(), |acc, (pr, e)| q.power(pr, *e).and_then(|pe| q.ideal_product(&acc, &pe)))?;
        return ok(json!({
            "ring": {"d": d, "omega": q.kind(), "min_poly": q.min_poly()},
            "p": p,
            "primes": primes.iter().map(|(pr, e)| json!({"prime": pr, "exponent": e, "norm": pr.norm().to_string()})).collect::<Vec<_>>(),
            "checks": {"product_equals_p": product == q.principal(p as i128, 0)?},
        }));
    }
    let r = ring_payload(v, limits)?;
    let spec = r.prime_spectrum()?;
    let maximal = r.maximal_ideals()?;
    let (orders, sp) = local_profile(&r)?;
    let mut report = json!({
        "ring": ring_header(&r),
        "primes": spec.iter().map(ideal_to_json).collect::<Vec<_>>(),
        "maximal": maximal.iter().map(ideal_to_json).collect::<Vec<_>>(),
        "local_factors": orders,
        "special_primary": sp,
        "checks": {"primes_are_maximal": spec == maximal},
    });
    if let Some(vn_req) = v.get("vn") {
        let gens = vn_req
            .get("ideal")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::invalid("\"vn\" needs \"ideal\" generators"))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .filter(|&e| (e as usize) < r.order())
                    .map(|e| e as u32)
                    .ok_or_else(|| Error::invalid("ideal generators must be element indices"))
            })
            .collect::<Result<Vec<u32>>>()?;
        let n = vn_req.get("n").and_then(Value::as_u64).unwrap_or(1) as usize;
        let i = r.generated_ideal(&gens);
        report["vn"] = json!({
            "ideal": ideal_to_json(&i),
            "n": n,
            "primes": r.vn_set(&i, n)?.iter().map(ideal_to_json).collect::<Vec<_>>(),
        });
    }
    ok(report)
}

fn ideals(v: &Value, limits: &Limits) -> Result<Outcome> {
    let r = ring_payload(v, limits)?;
    let all = r.all_ideals_with(limits)?;
    let rows: Vec<Value> = all
        .iter()
        .map(|i| {
            json!({
                "elements": ideal_to_json(i),
                "size": i.len(),
                "radical": r.is_radical(i),
                "prime": r.is_prime(i),
            })
        })
        .collect();
    ok(json!({"ring": ring_header(&r), "count": all.len(), "ideals": rows}))
}

// ---------------------------------------------------------------- polynomials

fn poly_from_value(v: &Value) -> Result<RatPoly> {
    match v {
        Value::String(s) => parse_poly(s),
        Value::Array(items) => {
            let strs = items
                .iter()
                .map(|x| match x {
                    Value::String(s) => Ok(s.clone()),
                    Value::Number(n) => Ok(n.to_string()),
                    _ => Err(Error::invalid("coefficients must be \"p/q\" strings")),
                })
                .collect::<Result<Vec<_>>>()?;
            RatPoly::from_strings(&strs)
        }
        _ => Err(Error::invalid("polynomials are strings or coefficient arrays")),
    }
}

fn poly_report(f: &RatPoly, source: &Value) -> Result<Value> {
    let chain = sf_chain(f)?;
    let checks = check_poly_chain(&chain, f)?;
    let mut vk_agrees = true;
    for (k, g) in chain.iter().enumerate() {
        vk_agrees &= vk_poly(f, k + 1)? == *g;
    }
    vk_agrees &= vk_poly(f, chain.len() + 1)?.is_one();
    let lc = f.leading();
    let mut c = serde_json::to_value(checks).expect("checks serialize");
    c["vk_agrees"] = json!(vk_agrees);
    c["all"] = json!(checks.all() && vk_agrees);
    Ok(json!({
        "input": source,
        "leading_coefficient": format!("{}/{}", lc.numer(), lc.denom()),
        "monic": f.monic().to_string(),
        "chain": chain.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "chain_coeffs": chain,
        "checks": c,
    }))
}

fn sf_chain_job(v: &Value) -> Result<Outcome> {
    if let Some(comps) = v.get("components") {
        let comps = comps.as_array().ok_or_else(|| Error::invalid("\"components\" must be an array"))?;
        let polys = comps.iter().map(poly_from_value).collect::<Result<Vec<_>>>()?;
        let links = product_chain(&polys)?;
        let mut product_ok = true;
        for (idx, f) in polys.iter().enumerate() {
            let prod = links.iter().fold(RatPoly::one(), |acc, l| &acc * &l[idx]);
            product_ok &= prod == f.monic();
        }
        return ok(json!({
            "components": comps,
            "chain": links.iter().map(|l| l.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "checks": {"product_equals_input": product_ok},
        }));
    }
    let items: Vec<Value> = match v.get("polys") {
        Some(p) => p.as_array().cloned().ok_or_else(|| Error::invalid("\"polys\" must be an array"))?,
        None => v.as_array().cloned().unwrap_or_default(),
    };
    let mut results = Vec::with_capacity(items.len());
    for (line, item) in items.iter().enumerate() {
        let f = poly_from_value(item).map_err(|e| match e {
            Error::Parse { position, message } => {
                Error::Parse { position, message: format!("polynomial {}: {message}", line + 1) }
            }
            other => other,
        })?;
        results.push(poly_report(&f, item)?);
    }
    ok(json!({"results": results}))
}

// ---------------------------------------------------------------- census

fn census(v: &Value, limits: &Limits) -> Result<Outcome> {
    let catalog: Vec<Value> = if let Some(p) = v.get("preset") {
        match p.as_str() {
            Some("standard") => standard_catalog(),
            _ => return Err(Error::invalid("unknown preset; the only preset is \"standard\"")),
        }
    } else {
        v.get("catalog")
            .unwrap_or(v)
            .as_array()
            .cloned()
            .ok_or_else(|| Error::invalid("\"catalog\" must be an array of ring descriptions"))?
    };
    let mut rows = Vec::with_capacity(catalog.len());
    let mut disagreements = 0usize;
    for desc in &catalog {
        let r = parse_ring(desc, limits)?;
        let (orders, sp) = local_profile(&r)?;
        let decided = decide_ssp_with(&r, limits)?.is_ssp;
        let structural = structural_ssp(&r)?;
        let agreement = decided == structural;
        if !agreement {
            disagreements += 1;
        }
        rows.push(json!({
            "label": r.label(),
            "order": r.order(),
            "local_factors": orders,
            "special_primary": sp,
            "decide_ssp": decided,
            "structural_ssp": structural,
            "agreement": agreement,
        }));
    }
    let report = json!({
        "rows": rows,
        "summary": {"rings": catalog.len(), "disagreements": disagreements},
    });
    Ok(Outcome { exit_code: if disagreements > 0 { EXIT_DISAGREEMENT } else { 0 }, report })
}

/// Applies command-line overrides to the default bounds.
pub fn limits_from(max_order: Option<usize>, max_ideals: Option<usize>, max_norm: Option<u128>) -> Limits {
    let d = Limits::default();
    Limits {
        max_order: max_order.unwrap_or(d.max_order),
        max_ideals: max_ideals.unwrap_or(d.max_ideals),
        max_norm: max_norm.unwrap_or(d.max_norm),
    }
}
