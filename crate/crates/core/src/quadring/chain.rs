//! Ascending radical chains over Dedekind domains.
//!
//! Once an ideal's prime factorization `I = ∏ Pᵢ^{eᵢ}` is known, the primes
//! with `I ⊆ P^k` are exactly those with `eᵢ ≥ k`. Taking `J_k` to be the
//! product of those primes gives radical ideals `J₁ ⊆ J₂ ⊆ ⋯ ⊆ Jₙ` whose
//! product is `I`, and this chain is the only ascending radical factorization.

use std::fmt::Debug;

use crate::error::{Error, Result};

/// The ideal arithmetic a chain computation needs.
pub trait DedekindDomain {
    type Ideal: Clone + Eq + Ord + Debug;

    fn unit_ideal(&self) -> Self::Ideal;

    fn mul(&self, a: &Self::Ideal, b: &Self::Ideal) -> Result<Self::Ideal>;

    /// `inner ⊆ outer`.
    fn contains(&self, outer: &Self::Ideal, inner: &Self::Ideal) -> bool;

    fn factor(&self, i: &Self::Ideal) -> Result<PrimeFactorization<Self::Ideal>>;

    fn is_unit(&self, i: &Self::Ideal) -> bool {
        *i == self.unit_ideal()
    }

    fn product<'a>(&self, factors: impl IntoIterator<Item = &'a Self::Ideal>) -> Result<Self::Ideal>
    where
        Self::Ideal: 'a,
    {
        factors
            .into_iter()
            .try_fold(self.unit_ideal(), |acc, f| self.mul(&acc, f))
    }

    fn power(&self, i: &Self::Ideal, k: u32) -> Result<Self::Ideal> {
        let mut acc = self.unit_ideal();
        for _ in 0..k {
            acc = self.mul(&acc, i)?;
        }
        Ok(acc)
    }
}

/// Prime ideals with positive exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFactorization<I> {
    pub factors: Vec<(I, u32)>,
}

impl<I: Clone> PrimeFactorization<I> {
    pub fn max_exponent(&self) -> u32 {
        self.factors.iter().map(|f| f.1).max().unwrap_or(0)
    }

    pub fn primes(&self) -> Vec<I> {
        self.factors.iter().map(|f| f.0.clone()).collect()
    }

    /// Primes whose exponent is at least `n`.
    pub fn at_least(&self, n: u32) -> Vec<I> {
        self.factors
            .iter()
            .filter(|f| f.1 >= n)
            .map(|f| f.0.clone())
            .collect()
    }
}

/// `J₁ ⊆ J₂ ⊆ ⋯ ⊆ Jₙ`, each radical, `Jₙ` proper.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalChain<I> {
    pub links: Vec<I>,
}

impl<I> RadicalChain<I> {
    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }
}

pub fn radical<D: DedekindDomain>(dom: &D, i: &D::Ideal) -> Result<D::Ideal> {
    dom.product(dom.factor(i)?.factors.iter().map(|f| &f.0))
}

pub fn is_radical<D: DedekindDomain>(dom: &D, i: &D::Ideal) -> Result<bool> {
    Ok(dom.factor(i)?.factors.iter().all(|f| f.1 == 1))
}

/// `V_n(I)`: primes with exponent at least `n` in `I`.
pub fn vn<D: DedekindDomain>(dom: &D, i: &D::Ideal, n: u32) -> Result<Vec<D::Ideal>> {
    if n == 0 {
        return Err(Error::invalid("V_n requires n >= 1"));
    }
    Ok(dom.factor(i)?.at_least(n))
}

/// The ascending radical chain of a proper nonzero ideal.
pub fn sp_factor<D: DedekindDomain>(dom: &D, i: &D::Ideal) -> Result<RadicalChain<D::Ideal>> {
    let fact = dom.factor(i)?;
    chain_from_factorization(dom, &fact)
}

pub fn chain_from_factorization<D: DedekindDomain>(
    dom: &D,
    fact: &PrimeFactorization<D::Ideal>,
) -> Result<RadicalChain<D::Ideal>> {
    let n = fact.max_exponent();
    if n == 0 {
        return Err(Error::UnitIdeal);
    }
    let links = (1..=n)
        .map(|k| dom.product(fact.at_least(k).iter()))
        .collect::<Result<Vec<_>>>()?;
    Ok(RadicalChain { links })
}

/// Rewrites any product of proper radical ideals as the unique ascending chain with the same product.
pub fn normalize_factorization<D: DedekindDomain>(
    dom: &D,
    factors: &[D::Ideal],
) -> Result<RadicalChain<D::Ideal>> {
    for (index, f) in factors.iter().enumerate() {
        if dom.is_unit(f) || !is_radical(dom, f)? {
            return Err(Error::NotRadical { index });
        }
    }
    let product = dom.product(factors.iter())?;
    sp_factor(dom, &product)
}

/// Invariant checks for a chain against the ideal it should factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct ChainChecks {
    pub ascending: bool,
    pub radical_links: bool,
    pub last_proper: bool,
    pub product_equals_input: bool,
}

impl ChainChecks {
    pub fn all(&self) -> bool {
        self.ascending && self.radical_links && self.last_proper && self.product_equals_input
    }
}

pub fn check_chain<D: DedekindDomain>(
    dom: &D,
    chain: &RadicalChain<D::Ideal>,
    target: &D::Ideal,
) -> Result<ChainChecks> {
    let ascending = chain
        .links
        .windows(2)
        .all(|w| dom.contains(&w[1], &w[0]));
    let mut radical_links = true;
    for j in &chain.links {
        radical_links &= is_radical(dom, j)?;
    }
    let last_proper = chain.links.last().is_some_and(|j| !dom.is_unit(j));
    let product_equals_input = dom.product(chain.links.iter())? == *target;
    Ok(ChainChecks { ascending, radical_links, last_proper, product_equals_input })
}
