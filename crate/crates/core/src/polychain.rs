//! Radical chains of principal ideals of `ℚ[X]` from iterated derivative gcds.
//!
//! Over a field of characteristic zero an irreducible `π` satisfies
//! `π^k | f` iff `π` divides `f, f′, …, f^(k−1)`, so the chain of `(f)` can be
//! read off from `gcd(f, f′)` iterates without factoring `f`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A polynomial with exact rational coefficients, constant term first, no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `x − r`.
    pub fn linear_root(r: BigRational) -> Self {
        Self::new(vec![-r, BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let dd = d.degree().ok_or_else(|| Error::invalid("division by the zero polynomial"))?;
        let mut r = self.coeffs.clone();
        let lc_inv = d.leading().recip();
        if r.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    /// Exact quotient; errors when `d` does not divide `self`.
    pub fn exact_div(&self, d: &RatPoly) -> Result<RatPoly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Internal(format!("{d} does not divide {self}")));
        }
        Ok(q)
    }

    pub fn divides(&self, f: &RatPoly) -> Result<bool> {
        Ok(f.div_rem(self)?.1.is_zero())
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, o: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let zero = BigRational::zero();
        RatPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + o.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, o: &RatPoly) -> RatPoly {
        self + &(-o)
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, o: &RatPoly) -> RatPoly {
        if self.is_zero() || o.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

/// Integer multiple of `p` with coprime coefficients and positive leading coefficient.
fn primitive_int(p: &RatPoly) -> Vec<BigInt> {
    let lcm = p.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
    primitive_part(ints)
}

fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return v;
    }
    let content = if v.last().is_some_and(|c| c.is_negative()) { -content } else { content };
    v.iter().map(|c| c / &content).collect()
}

/// Pseudo-remainder of `a` by `b` (both nonzero).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let lr = r.last().cloned().expect("nonempty");
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &lr * bc;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Monic gcd, computed with a primitive integer remainder sequence so that
/// coefficients stay in lowest terms without rational normalization at every step.
pub fn poly_gcd(f: &RatPoly, g: &RatPoly) -> Result<RatPoly> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::invalid("gcd(0, 0) is undefined"));
    }
    let (mut a, mut b) = (primitive_int(f), primitive_int(g));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = primitive_part(pseudo_rem(&a, &b));
        a = b;
        b = r;
    }
    Ok(RatPoly::new(a.into_iter().map(BigRational::from_integer).collect()).monic())
}

/// Monic `gcd(f, f′, …, f^(k−1))`.
pub fn derivative_gcd(f: &RatPoly, k: usize) -> Result<RatPoly> {
    if f.is_zero() {
        return Err(Error::invalid("derivative gcd of the zero polynomial"));
    }
    if k == 0 {
        return Err(Error::invalid("derivative gcd requires k >= 1"));
    }
    let mut g = f.monic();
    let mut d = f.clone();
    for _ in 1..k {
        if g.is_one() {
            break;
        }
        d = d.derivative();
        g = poly_gcd(&g, &d)?;
    }
    Ok(g)
}

/// `f / gcd(f, f′)`, monic.
pub fn squarefree_part(f: &RatPoly) -> Result<RatPoly> {
    if f.is_zero() {
        return Err(Error::invalid("squarefree part of the zero polynomial"));
    }
    let m = f.monic();
    m.exact_div(&poly_gcd(&m, &m.derivative())?)
}

/// `g₁, …, gₙ` with `gₖ` the product of the irreducible factors of
/// multiplicity at least `k`; `(g₁) ⊆ ⋯ ⊆ (gₙ)` and `∏ gₖ = monic(f)`.
pub fn sf_chain(f: &RatPoly) -> Result<Vec<RatPoly>> {
    if f.is_constant() {
        return Err(Error::invalid("constant polynomials have no radical chain"));
    }
    let mut prev = f.monic();
    let mut links = Vec::new();
    while !prev.is_one() {
        let next = poly_gcd(&prev, &prev.derivative())?;
        links.push(prev.exact_div(&next)?);
        prev = next;
    }
    Ok(links)
}

/// Monic polynomial whose roots form `V_k(f)`.
pub fn vk_poly(f: &RatPoly, k: usize) -> Result<RatPoly> {
    squarefree_part(&derivative_gcd(f, k)?)
}

/// Invariant checks for a polynomial chain against `monic(f)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PolyChainChecks {
    pub ascending: bool,
    pub squarefree_links: bool,
    pub monic_links: bool,
    pub product_equals_input: bool,
}

impl PolyChainChecks {
    pub fn all(&self) -> bool {
        self.ascending && self.squarefree_links && self.monic_links && self.product_equals_input
    }
}

pub fn check_poly_chain(links: &[RatPoly], f: &RatPoly) -> Result<PolyChainChecks> {
    let mut ascending = true;
    for w in links.windows(2) {
        ascending &= w[1].divides(&w[0])?;
    }
    let mut squarefree_links = true;
    for g in links {
        squarefree_links &= poly_gcd(g, &g.derivative())?.is_one();
    }
    let monic_links = links.iter().all(|g| g.is_monic() && !g.is_constant());
    let product = links.iter().fold(RatPoly::one(), |acc, g| &acc * g);
    Ok(PolyChainChecks {
        ascending,
        squarefree_links,
        monic_links,
        product_equals_input: product == f.monic(),
    })
}

/// Chain of a principal ideal `(f₁, …, f_r)` of `(ℚ × ⋯ × ℚ)[X]`: chains are
/// computed per component and padded with units. Components must be nonzero
/// and at least one must be nonconstant.
pub fn product_chain(components: &[RatPoly]) -> Result<Vec<Vec<RatPoly>>> {
    let mut chains = Vec::with_capacity(components.len());
    for f in components {
        if f.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        chains.push(if f.is_constant() { vec![] } else { sf_chain(f)? });
    }
    let n = chains.iter().map(Vec::len).max().unwrap_or(0);
    if n == 0 {
        return Err(Error::UnitIdeal);
    }
    Ok((0..n)
        .map(|k| chains.iter().map(|c| c.get(k).cloned().unwrap_or_else(RatPoly::one)).collect())
        .collect())
}

fn fmt_rat(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if neg {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let a = c.abs();
            let body = match e {
                0 => fmt_rat(&a),
                _ => {
                    let coef = if a.is_one() { String::new() } else { format!("{}*", fmt_rat(&a)) };
                    let mono = if e == 1 { "x".to_string() } else { format!("x^{e}") };
                    format!("{coef}{mono}")
                }
            };
            f.write_str(&body)?;
        }
        Ok(())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

impl std::str::FromStr for RatPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s)
    }
}

/// Parses expressions such as `x^3-x^2-x+1`, `3/2*x^2 + 1`, `-2x`, `7`.
pub fn parse_poly(s: &str) -> Result<RatPoly> {
    let chars: Vec<(usize, char)> = s.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let err = |i: usize, m: &str| Error::Parse { position: chars.get(i).map_or(s.len(), |c| c.0), message: m.into() };
    if chars.is_empty() {
        return Err(err(0, "empty polynomial"));
    }
    let mut coeffs: Vec<BigRational> = Vec::new();
    let mut i = 0;
    let number = |i: &mut usize| -> Option<BigInt> {
        let start = *i;
        while *i < chars.len() && chars[*i].1.is_ascii_digit() {
            *i += 1;
        }
        let digits: String = chars[start..*i].iter().map(|c| c.1).collect();
        digits.parse().ok()
    };
    while i < chars.len() {
        let mut sign = BigRational::one();
        match chars[i].1 {
            '+' => i += 1,
            '-' => {
                sign = -sign;
                i += 1;
            }
            _ if i > 0 => return Err(err(i, "expected + or -")),
            _ => {}
        }
        let mut coef: Option<BigRational> = None;
        if let Some(n) = number(&mut i) {
            let mut c = BigRational::from_integer(n);
            if i < chars.len() && chars[i].1 == '/' {
                i += 1;
                let d = number(&mut i).ok_or_else(|| err(i, "expected denominator"))?;
                if d.is_zero() {
                    return Err(err(i - 1, "zero denominator"));
                }
                c /= BigRational::from_integer(d);
            }
            coef = Some(c);
            if i < chars.len() && chars[i].1 == '*' {
                i += 1;
                if i >= chars.len() || !matches!(chars[i].1, 'x' | 'X') {
                    return Err(err(i, "expected x after *"));
                }
            }
        }
        let mut exp = 0usize;
        if i < chars.len() && matches!(chars[i].1, 'x' | 'X') {
            i += 1;
            exp = 1;
            if i < chars.len() && chars[i].1 == '^' {
                i += 1;
                let e = number(&mut i).ok_or_else(|| err(i, "expected exponent"))?;
                exp = usize::try_from(e).ok().filter(|&e| e <= 100_000).ok_or_else(|| err(i - 1, "exponent too large"))?;
            }
        } else if coef.is_none() {
            return Err(err(i, "expected a term"));
        }
        let c = sign * coef.unwrap_or_else(BigRational::one);
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigRational::zero());
        }
        coeffs[exp] += c;
    }
    Ok(RatPoly::new(coeffs))
}

fn parse_rat(s: &str) -> Result<BigRational> {
    let bad = || Error::invalid(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl RatPoly {
    /// Coefficients as `"p/q"` strings, constant term first.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<RatPoly> {
        Ok(RatPoly::new(items.iter().map(|s| parse_rat(s.as_ref())).collect::<Result<_>>()?))
    }
}

impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        RatPoly::from_strings(&items).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> RatPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("x^3-x^2-x+1"), RatPoly::from_i64(&[1, -1, -1, 1]));
        assert_eq!(p("x^3-x^2-x+1").to_string(), "x^3-x^2-x+1");
        assert_eq!(p("3/2*x^2").to_string(), "3/2*x^2");
        assert_eq!(p("-2x + 7").to_string(), "-2*x+7");
        assert_eq!(p("x - x").to_string(), "0");
        assert_eq!(p("-1/3").to_string(), "-1/3");
        let e = parse_poly("x^2+*3").unwrap_err();
        assert!(matches!(e, Error::Parse { position: 4, .. }), "{e:?}");
        assert!(parse_poly("").is_err());
        assert!(parse_poly("1/0").is_err());
        assert!(parse_poly("x y").is_err());
    }

    #[test]
    fn string_serialization() {
        let f = p("3/2*x^2-1");
        assert_eq!(f.to_strings(), vec!["-1/1", "0/1", "3/2"]);
        let json = serde_json::to_string(&f).unwrap();
        let back: RatPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        assert_eq!(RatPoly::from_strings(&["2", "1/2"]).unwrap(), p("1/2*x+2"));
    }

    #[test]
    fn division() {
        let (q, r) = p("x^3+2x+5").div_rem(&p("x^2+1")).unwrap();
        assert_eq!(q, p("x"));
        assert_eq!(r, p("x+5"));
        assert!(p("x").div_rem(&RatPoly::zero()).is_err());
    }

    #[test]
    fn gcds() {
        assert_eq!(poly_gcd(&p("2x^2-2"), &RatPoly::zero()).unwrap(), p("x^2-1"));
        assert_eq!(poly_gcd(&p("x^2-1"), &p("x^2-2x+1")).unwrap(), p("x-1"));
        assert!(poly_gcd(&p("x^2+1"), &p("x+3")).unwrap().is_one());
        assert!(poly_gcd(&RatPoly::zero(), &RatPoly::zero()).is_err());
    }

    fn euclid_gcd(f: &RatPoly, g: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (f.monic(), g.monic());
        while !b.is_zero() {
            let r = a.div_rem(&b).unwrap().1.monic();
            a = b;
            b = r;
        }
        a
    }

    #[test]
    fn gcd_matches_rational_euclid() {
        let pool = ["x^2-1", "3/2*x^3-x+1/5", "x-1", "x^4+2x^2+1", "7", "1/3*x^2+2/3*x+1/3", "x^5-x"];
        let polys: Vec<RatPoly> = pool.iter().map(|s| p(s)).collect();
        for f in &polys {
            for g in &polys {
                let prod = f * g;
                assert_eq!(poly_gcd(&prod, g).unwrap(), euclid_gcd(&prod, g), "{prod} {g}");
                assert_eq!(poly_gcd(f, g).unwrap(), euclid_gcd(f, g), "{f} {g}");
            }
        }
    }

    #[test]
    fn derivative_gcds() {
        let f = p("x^3-x^2-x+1");
        assert_eq!(derivative_gcd(&f, 1).unwrap(), f);
        assert_eq!(derivative_gcd(&f, 2).unwrap(), p("x-1"));
        assert!(derivative_gcd(&p("x^2-2"), 2).unwrap().is_one());
        assert!(derivative_gcd(&f, 0).is_err());
    }

    #[test]
    fn chains() {
        let f = p("x^3-x^2-x+1");
        assert_eq!(sf_chain(&f).unwrap(), vec![p("x^2-1"), p("x-1")]);
        assert_eq!(sf_chain(&p("2x^2-4")).unwrap(), vec![p("x^2-2")]);
        let cube = p("x^2+1").pow(3);
        assert_eq!(sf_chain(&cube).unwrap(), vec![p("x^2+1"); 3]);
        assert!(sf_chain(&p("5")).is_err());
        let links = sf_chain(&f).unwrap();
        assert!(check_poly_chain(&links, &f).unwrap().all());
    }

    #[test]
    fn vk() {
        let f = p("x^3-x^2-x+1");
        assert_eq!(vk_poly(&f, 1).unwrap(), p("x^2-1"));
        assert_eq!(vk_poly(&f, 2).unwrap(), p("x-1"));
        assert!(vk_poly(&f, 3).unwrap().is_one());
    }

    #[test]
    fn componentwise() {
        let links = product_chain(&[p("x^3-x^2-x+1"), p("x^2+1")]).unwrap();
        assert_eq!(links.len(), 2);
        assert_eq!(links[0], vec![p("x^2-1"), p("x^2+1")]);
        assert_eq!(links[1], vec![p("x-1"), RatPoly::one()]);
        assert!(matches!(product_chain(&[p("3"), p("1")]), Err(Error::UnitIdeal)));
        assert!(product_chain(&[RatPoly::zero(), p("x")]).is_err());
    }
}
