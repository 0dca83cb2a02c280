//! Ideals of maximal quadratic orders `ℤ[ω]`, stored in Hermite normal form.
//!
//! An ideal is the lattice with rows `(a, 0)` and `(b, c)` in the basis
//! `(1, ω)`, normalized so `a, c > 0` and `0 ≤ b < a`. Equality of ideals is
//! equality of these triples.

pub mod arith;
pub mod chain;
pub mod integers;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Limits, Result};
use arith::{ext_gcd, factor_u128, gcd, is_prime, is_squarefree, sqrt_mod};
pub use chain::{
    check_chain, chain_from_factorization, is_radical, normalize_factorization, radical, sp_factor, vn,
    ChainChecks, DedekindDomain, PrimeFactorization, RadicalChain,
};
pub use integers::{IntIdeal, IntegerRing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OmegaKind {
    /// `ω = √d`, for `d ≡ 2, 3 (mod 4)`.
    SqrtD,
    /// `ω = (1 + √d)/2`, for `d ≡ 1 (mod 4)`.
    HalfIntegral,
}

/// The ring of integers of `ℚ(√d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadRing {
    d: i64,
    kind: OmegaKind,
    /// `ω² = c0 + c1·ω`.
    c0: i128,
    c1: i128,
    max_norm: u128,
}

/// An element `x + y·ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadElement {
    pub x: i128,
    pub y: i128,
}

impl QuadElement {
    pub fn new(x: i128, y: i128) -> Self {
        QuadElement { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadIdeal {
    a: i128,
    b: i128,
    c: i128,
    d: i64,
}

impl fmt::Debug for QuadIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

impl fmt::Display for QuadIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let second = match (self.b, self.c) {
            (0, 1) => "w".to_string(),
            (0, c) => format!("{c}*w"),
            (b, 1) => format!("{b}+w"),
            (b, c) => format!("{b}+{c}*w"),
        };
        write!(f, "({}, {})", self.a, second)
    }
}

impl Serialize for QuadIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QuadIdeal", 2)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("hnf", &[self.a, self.b, self.c])?;
        st.end()
    }
}

impl QuadIdeal {
    pub fn hnf(&self) -> [i128; 3] {
        [self.a, self.b, self.c]
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn norm(&self) -> u128 {
        (self.a * self.c) as u128
    }

    pub fn is_unit(&self) -> bool {
        self.a == 1
    }

    /// Lattice membership of `x + y·ω`.
    pub fn contains_element(&self, e: QuadElement) -> bool {
        if e.y % self.c != 0 {
            return false;
        }
        (e.x - (e.y / self.c) * self.b) % self.a == 0
    }

    fn basis(&self) -> [QuadElement; 2] {
        [QuadElement::new(self.a, 0), QuadElement::new(self.b, self.c)]
    }
}

/// HNF of the lattice spanned by `vecs` together with `modulus·ℤ²`, which
/// must lie in the lattice. All arithmetic stays below `modulus²`.
fn hnf_mod(vecs: &[QuadElement], modulus: i128) -> (i128, i128, i128) {
    let n = modulus;
    let (mut a, mut b, mut c) = (n, 0i128, n);
    for v in vecs {
        let (x, y) = (v.x.rem_euclid(n), v.y.rem_euclid(n));
        if y == 0 {
            a = gcd(a, x);
        } else {
            let (g, u, w) = ext_gcd(c, y);
            let nb = (u * b + w * x).rem_euclid(n);
            let other = ((y / g) * b - (c / g) * x).rem_euclid(n);
            b = nb;
            c = g;
            a = gcd(a, other);
        }
        // (0, a) lies in the lattice with (a, 0) by the ideal property; use it
        // to keep c dividing a.
        let g = gcd(c, a);
        if g != c {
            let (g2, u, _) = ext_gcd(c, a);
            debug_assert_eq!(g, g2);
            // combine (b, c) with (0, a): u·(b, c) + w·(0, a) = (u·b, g)
            let nb = (u * b).rem_euclid(n);
            let other = ((a / g) * b).rem_euclid(n);
            b = nb;
            c = g;
            a = gcd(a, other);
        }
        b = b.rem_euclid(a);
    }
    (a, b.rem_euclid(a), c)
}

impl QuadRing {
    pub fn new(d: i64) -> Result<QuadRing> {
        Self::with_limits(d, &Limits::default())
    }

    pub fn with_limits(d: i64, limits: &Limits) -> Result<QuadRing> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(Error::invalid(format!("d = {d} must be squarefree and different from 0, 1")));
        }
        let (kind, c0, c1) = if d.rem_euclid(4) == 1 {
            (OmegaKind::HalfIntegral, ((d - 1) / 4) as i128, 1)
        } else {
            (OmegaKind::SqrtD, d as i128, 0)
        };
        Ok(QuadRing { d, kind, c0, c1, max_norm: limits.max_norm })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn kind(&self) -> OmegaKind {
        self.kind
    }

    /// Coefficients `[constant, linear, 1]` of the minimal polynomial of `ω`.
    pub fn min_poly(&self) -> [i128; 3] {
        [-self.c0, -self.c1, 1]
    }

    pub fn max_norm(&self) -> u128 {
        self.max_norm
    }

    pub fn mul_elements(&self, p: QuadElement, q: QuadElement) -> Result<QuadElement> {
        let ov = || Error::Overflow("quadratic element product");
        let xx = p.x.checked_mul(q.x).ok_or_else(ov)?;
        let xy = p.x.checked_mul(q.y).ok_or_else(ov)?;
        let yx = p.y.checked_mul(q.x).ok_or_else(ov)?;
        let yy = p.y.checked_mul(q.y).ok_or_else(ov)?;
        let x = xx.checked_add(yy.checked_mul(self.c0).ok_or_else(ov)?).ok_or_else(ov)?;
        let y = xy
            .checked_add(yx)
            .and_then(|s| s.checked_add(yy.checked_mul(self.c1)?))
            .ok_or_else(ov)?;
        Ok(QuadElement { x, y })
    }

    fn times_omega(&self, e: QuadElement) -> Result<QuadElement> {
        self.mul_elements(e, QuadElement::new(0, 1))
    }

    /// `N(x + yω) = x² + c1·xy − c0·y²`.
    pub fn element_norm(&self, e: QuadElement) -> Result<i128> {
        let ov = || Error::Overflow("element norm");
        let x2 = e.x.checked_mul(e.x).ok_or_else(ov)?;
        let xy = e.x.checked_mul(e.y).ok_or_else(ov)?.checked_mul(self.c1).ok_or_else(ov)?;
        let y2 = e.y.checked_mul(e.y).ok_or_else(ov)?.checked_mul(self.c0).ok_or_else(ov)?;
        x2.checked_add(xy).and_then(|s| s.checked_sub(y2)).ok_or_else(ov)
    }

    fn lattice_ideal(&self, gens: &[QuadElement], modulus: i128) -> Result<QuadIdeal> {
        let mut vecs = Vec::with_capacity(gens.len() * 2);
        for &g in gens {
            vecs.push(g);
            vecs.push(self.times_omega(g)?);
        }
        let (a, b, c) = hnf_mod(&vecs, modulus);
        Ok(QuadIdeal { a, b, c, d: self.d })
    }

    /// The ideal generated by `gens`.
    pub fn ideal_from_gens(&self, gens: &[QuadElement]) -> Result<QuadIdeal> {
        let mut modulus: i128 = 0;
        for &g in gens {
            if !g.is_zero() {
                modulus = gcd(modulus, self.element_norm(g)?);
            }
        }
        if modulus == 0 {
            return Err(Error::ZeroIdeal);
        }
        if modulus as u128 > self.max_norm {
            return Err(Error::Resource { bound: crate::error::Bound::MaxNorm, limit: self.max_norm as u64 });
        }
        self.lattice_ideal(gens, modulus)
    }

    pub fn principal(&self, x: i128, y: i128) -> Result<QuadIdeal> {
        self.ideal_from_gens(&[QuadElement::new(x, y)])
    }

    pub fn unit_ideal(&self) -> QuadIdeal {
        QuadIdeal { a: 1, b: 0, c: 1, d: self.d }
    }

    /// Validates a Hermite normal form triple as an ideal of this ring.
    pub fn ideal_from_hnf(&self, a: i128, b: i128, c: i128) -> Result<QuadIdeal> {
        if a <= 0 || c <= 0 || b < 0 || b >= a {
            return Err(Error::invalid(format!("[{a}, {b}, {c}] is not in Hermite normal form")));
        }
        if a % c != 0 || b % c != 0 {
            return Err(Error::invalid(format!("[{a}, {b}, {c}] violates c | a, c | b")));
        }
        let ideal = QuadIdeal { a, b, c, d: self.d };
        for e in ideal.basis() {
            if !ideal.contains_element(self.times_omega(e)?) {
                return Err(Error::invalid(format!("[{a}, {b}, {c}] is not closed under multiplication by w")));
            }
        }
        Ok(ideal)
    }

    fn same_ring(&self, i: &QuadIdeal) -> Result<()> {
        if i.d != self.d {
            return Err(Error::invalid(format!("ideal of d = {} used in ring d = {}", i.d, self.d)));
        }
        Ok(())
    }

    pub fn ideal_product(&self, i: &QuadIdeal, j: &QuadIdeal) -> Result<QuadIdeal> {
        self.same_ring(i)?;
        self.same_ring(j)?;
        let norm = i.norm().checked_mul(j.norm()).ok_or(Error::Overflow("ideal norm"))?;
        Limits { max_norm: self.max_norm, ..Limits::default() }.check_norm(norm)?;
        let mut gens = Vec::with_capacity(4);
        for p in i.basis() {
            for q in j.basis() {
                gens.push(self.mul_elements(p, q)?);
            }
        }
        self.lattice_ideal(&gens, i.a * j.a)
    }

    pub fn ideal_sum(&self, i: &QuadIdeal, j: &QuadIdeal) -> Result<QuadIdeal> {
        self.same_ring(i)?;
        self.same_ring(j)?;
        let gens: Vec<QuadElement> = i.basis().into_iter().chain(j.basis()).collect();
        self.lattice_ideal(&gens, gcd(i.a, j.a))
    }

    /// `inner ⊆ outer`.
    pub fn ideal_contains(&self, outer: &QuadIdeal, inner: &QuadIdeal) -> bool {
        inner.basis().iter().all(|&e| outer.contains_element(e))
    }

    pub fn ideal_norm(&self, i: &QuadIdeal) -> u128 {
        i.norm()
    }

    /// Kummer–Dedekind splitting of a rational prime: each irreducible factor
    /// `g` of the minimal polynomial mod `p` gives the prime `(p, g(ω))`.
    pub fn primes_above(&self, p: u64) -> Result<Vec<(QuadIdeal, u32)>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let pi = p as i128;
        // roots of x² − c1·x − c0 mod p
        let roots: Vec<i128> = if p == 2 {
            (0..2).filter(|&r| (r * r - self.c1 * r - self.c0).rem_euclid(2) == 0).collect()
        } else {
            let disc = (self.c1 * self.c1 + 4 * self.c0).rem_euclid(pi) as u64;
            let inv2 = (pi + 1) / 2;
            match sqrt_mod(disc, p) {
                None => vec![],
                Some(0) => vec![(self.c1 * inv2).rem_euclid(pi)],
                Some(s) => {
                    let s = s as i128;
                    let mut v = vec![
                        ((self.c1 + s) * inv2).rem_euclid(pi),
                        ((self.c1 - s) * inv2).rem_euclid(pi),
                    ];
                    v.sort();
                    v
                }
            }
        };
        let mut out = match roots.len() {
            0 => vec![(self.principal(pi, 0)?, 1)],
            1 => vec![(self.ideal_from_gens(&[QuadElement::new(pi, 0), QuadElement::new(-roots[0], 1)])?, 2)],
            _ => roots
                .iter()
                .map(|&r| Ok((self.ideal_from_gens(&[QuadElement::new(pi, 0), QuadElement::new(-r, 1)])?, 1)))
                .collect::<Result<Vec<_>>>()?,
        };
        out.sort();
        Ok(out)
    }

    /// Primes containing `i`, found from the primes dividing its norm by
    /// direct containment tests.
    pub fn primes_containing(&self, i: &QuadIdeal) -> Result<Vec<QuadIdeal>> {
        let mut out = Vec::new();
        for (p, _) in factor_u128(i.norm())? {
            for (q, _) in self.primes_above(p)? {
                if self.ideal_contains(&q, i) {
                    out.push(q);
                }
            }
        }
        Ok(out)
    }

    /// Prime factorization; exponents are found as the largest `k` with `I ⊆ P^k`.
    pub fn factor_ideal(&self, i: &QuadIdeal) -> Result<PrimeFactorization<QuadIdeal>> {
        self.same_ring(i)?;
        let norm = i.norm();
        let mut factors = Vec::new();
        for (p, _) in factor_u128(norm)? {
            for (q, _) in self.primes_above(p)? {
                let qn = q.norm();
                let mut k = 0u32;
                let mut power = q;
                let mut power_norm = qn;
                while norm.is_multiple_of(power_norm) && self.ideal_contains(&power, i) {
                    k += 1;
                    power_norm *= qn;
                    if !norm.is_multiple_of(power_norm) {
                        break;
                    }
                    power = self.ideal_product(&power, &q)?;
                }
                if k > 0 {
                    factors.push((q, k));
                }
            }
        }
        factors.sort();
        let fact = PrimeFactorization { factors };
        let mut rebuilt = self.unit_ideal();
        for (q, e) in &fact.factors {
            for _ in 0..*e {
                rebuilt = self.ideal_product(&rebuilt, q)?;
            }
        }
        if rebuilt != *i {
            return Err(Error::Internal(format!("factorization of {i} does not re-multiply")));
        }
        Ok(fact)
    }
}

impl DedekindDomain for QuadRing {
    type Ideal = QuadIdeal;

    fn unit_ideal(&self) -> QuadIdeal {
        QuadRing::unit_ideal(self)
    }

    fn mul(&self, a: &QuadIdeal, b: &QuadIdeal) -> Result<QuadIdeal> {
        self.ideal_product(a, b)
    }

    fn contains(&self, outer: &QuadIdeal, inner: &QuadIdeal) -> bool {
        self.ideal_contains(outer, inner)
    }

    fn factor(&self, i: &QuadIdeal) -> Result<PrimeFactorization<QuadIdeal>> {
        self.factor_ideal(i)
    }
}

/// Parses `x + y*w` style elements, e.g. `6`, `1+w`, `2-3*w`, `-w`, `1 + 2w`.
pub fn parse_element(s: &str) -> Result<QuadElement> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::Parse { position: 0, message: "empty element".into() });
    }
    let (mut x, mut y) = (0i128, 0i128);
    let mut pos = 0;
    while pos < chars.len() {
        let mut sign = 1i128;
        if chars[pos] == '+' || chars[pos] == '-' {
            if chars[pos] == '-' {
                sign = -1;
            }
            pos += 1;
        } else if pos != 0 {
            return Err(Error::Parse { position: pos, message: "expected + or -".into() });
        }
        let start = pos;
        while pos < chars.len() && chars[pos].is_ascii_digit() {
            pos += 1;
        }
        let coef: Option<i128> = if pos > start {
            let digits: String = chars[start..pos].iter().collect();
            Some(digits.parse().map_err(|_| Error::Parse { position: start, message: "integer too large".into() })?)
        } else {
            None
        };
        if pos < chars.len() && chars[pos] == '*' {
            pos += 1;
            if pos >= chars.len() || chars[pos] != 'w' {
                return Err(Error::Parse { position: pos, message: "expected w after *".into() });
            }
        }
        if pos < chars.len() && chars[pos] == 'w' {
            pos += 1;
            y += sign * coef.unwrap_or(1);
        } else {
            match coef {
                Some(c) => x += sign * c,
                None => return Err(Error::Parse { position: pos, message: "expected a term".into() }),
            }
        }
    }
    Ok(QuadElement { x, y })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(r: &QuadRing, s: &[&str]) -> QuadIdeal {
        let g: Vec<QuadElement> = s.iter().map(|t| parse_element(t).unwrap()).collect();
        r.ideal_from_gens(&g).unwrap()
    }

    #[test]
    fn ring_shapes() {
        let gi = QuadRing::new(-1).unwrap();
        assert_eq!(gi.kind(), OmegaKind::SqrtD);
        assert_eq!(gi.min_poly(), [1, 0, 1]);
        let e = QuadRing::new(-7).unwrap();
        assert_eq!(e.kind(), OmegaKind::HalfIntegral);
        assert_eq!(e.min_poly(), [2, -1, 1]);
        assert!(QuadRing::new(4).is_err());
        assert!(QuadRing::new(1).is_err());
        assert!(QuadRing::new(0).is_err());
    }

    #[test]
    fn generators_to_hnf() {
        let gi = QuadRing::new(-1).unwrap();
        assert_eq!(gens(&gi, &["1"]).hnf(), [1, 0, 1]);
        let p2 = gens(&gi, &["2", "1+w"]);
        assert_eq!(p2.norm(), 2);
        assert_eq!(p2.hnf(), [2, 1, 1]);
        let r5 = QuadRing::new(-5).unwrap();
        assert_eq!(gens(&r5, &["6"]).norm(), 36);
        assert!(gi.ideal_from_gens(&[QuadElement::new(0, 0)]).is_err());
    }

    #[test]
    fn products() {
        let r5 = QuadRing::new(-5).unwrap();
        let p2 = gens(&r5, &["2", "1+w"]);
        assert_eq!(r5.ideal_product(&p2, &p2).unwrap(), gens(&r5, &["2"]));
        let i = gens(&r5, &["3", "1-w"]);
        assert_eq!(r5.ideal_product(&i, &r5.unit_ideal()).unwrap(), i);
    }

    #[test]
    fn hnf_validation() {
        let gi = QuadRing::new(-1).unwrap();
        assert!(gi.ideal_from_hnf(2, 1, 1).is_ok());
        assert!(gi.ideal_from_hnf(2, 0, 1).is_err());
        assert!(gi.ideal_from_hnf(3, 3, 1).is_err());
    }

    #[test]
    fn splitting_in_gaussian_integers() {
        let gi = QuadRing::new(-1).unwrap();
        let five = gi.primes_above(5).unwrap();
        assert_eq!(five.len(), 2);
        assert!(five.iter().all(|(p, e)| p.norm() == 5 && *e == 1));
        let mut expected = vec![gens(&gi, &["2+w"]), gens(&gi, &["2-w"])];
        expected.sort();
        assert_eq!(five.iter().map(|f| f.0).collect::<Vec<_>>(), expected);
        let two = gi.primes_above(2).unwrap();
        assert_eq!(two, vec![(gens(&gi, &["1+w"]), 2)]);
        assert!(gi.primes_above(15).is_err());
    }

    #[test]
    fn inert_prime() {
        let r5 = QuadRing::new(-5).unwrap();
        let eleven = r5.primes_above(11).unwrap();
        assert_eq!(eleven.len(), 1);
        assert_eq!(eleven[0].0.norm(), 121);
        assert_eq!(eleven[0].1, 1);
        assert_eq!(eleven[0].0, gens(&r5, &["11"]));
    }

    #[test]
    fn factor_twelve_in_gaussian_integers() {
        let gi = QuadRing::new(-1).unwrap();
        let f = gi.factor_ideal(&gens(&gi, &["12"])).unwrap();
        assert_eq!(f.factors, vec![(gens(&gi, &["1+w"]), 4), (gens(&gi, &["3"]), 1)]);
        assert!(gi.factor_ideal(&gi.unit_ideal()).unwrap().factors.is_empty());
    }

    #[test]
    fn factor_six_in_z_sqrt_minus_5() {
        let r5 = QuadRing::new(-5).unwrap();
        let f = r5.factor_ideal(&gens(&r5, &["6"])).unwrap();
        let p2 = gens(&r5, &["2", "1+w"]);
        let p3 = gens(&r5, &["3", "1+w"]);
        let p3b = gens(&r5, &["3", "1-w"]);
        let mut expected = vec![(p2, 2), (p3, 1), (p3b, 1)];
        expected.sort();
        assert_eq!(f.factors, expected);
    }

    #[test]
    fn radical_and_vn() {
        let gi = QuadRing::new(-1).unwrap();
        let twelve = gens(&gi, &["12"]);
        let rad = radical(&gi, &twelve).unwrap();
        assert_eq!(rad.norm(), 18);
        assert_eq!(rad, gi.ideal_product(&gens(&gi, &["1+w"]), &gens(&gi, &["3"])).unwrap());
        assert_eq!(vn(&gi, &twelve, 4).unwrap(), vec![gens(&gi, &["1+w"])]);
        assert!(vn(&gi, &twelve, 5).unwrap().is_empty());
        let p = gens(&gi, &["3"]);
        assert_eq!(radical(&gi, &p).unwrap(), p);
    }

    #[test]
    fn chain_of_six() {
        let r5 = QuadRing::new(-5).unwrap();
        let six = gens(&r5, &["6"]);
        let chain = sp_factor(&r5, &six).unwrap();
        assert_eq!(chain.links.len(), 2);
        assert_eq!(chain.links[0].norm(), 18);
        assert_eq!(chain.links[1], gens(&r5, &["2", "1+w"]));
        assert!(check_chain(&r5, &chain, &six).unwrap().all());
        assert!(matches!(sp_factor(&r5, &r5.unit_ideal()), Err(Error::UnitIdeal)));
        let p = gens(&r5, &["3", "1+w"]);
        assert_eq!(sp_factor(&r5, &p).unwrap().links, vec![p]);
    }

    #[test]
    fn normalize_rejects_non_radical() {
        let gi = QuadRing::new(-1).unwrap();
        let p = gens(&gi, &["3"]);
        let four = gens(&gi, &["2"]);
        assert!(matches!(
            normalize_factorization(&gi, &[p, four]),
            Err(Error::NotRadical { index: 1 })
        ));
    }

    #[test]
    fn element_parser() {
        assert_eq!(parse_element("6").unwrap(), QuadElement::new(6, 0));
        assert_eq!(parse_element("1+w").unwrap(), QuadElement::new(1, 1));
        assert_eq!(parse_element("2-3*w").unwrap(), QuadElement::new(2, -3));
        assert_eq!(parse_element("-w").unwrap(), QuadElement::new(0, -1));
        assert_eq!(parse_element(" 1 + 2w ").unwrap(), QuadElement::new(1, 2));
        assert!(parse_element("1+").is_err());
        assert!(parse_element("x").is_err());
    }
}
