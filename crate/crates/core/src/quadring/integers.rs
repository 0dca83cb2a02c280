//! The rational integers as a Dedekind domain; an ideal `nℤ` is stored as `n > 0`.

use std::fmt;

use serde::Serialize;

use super::arith::{factor_u128, is_prime};
use super::chain::{DedekindDomain, PrimeFactorization};
use crate::error::{Error, Limits, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct IntIdeal(u64);

impl IntIdeal {
    pub fn new(n: u64) -> Result<IntIdeal> {
        if n == 0 {
            return Err(Error::ZeroIdeal);
        }
        Ok(IntIdeal(n))
    }

    pub fn generator(&self) -> u64 {
        self.0
    }
}

impl fmt::Display for IntIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntegerRing {
    max_norm: u128,
}

impl Default for IntegerRing {
    fn default() -> Self {
        IntegerRing { max_norm: Limits::default().max_norm }
    }
}

impl IntegerRing {
    pub fn with_limits(limits: &Limits) -> Self {
        IntegerRing { max_norm: limits.max_norm }
    }

    pub fn ideal(&self, n: u64) -> Result<IntIdeal> {
        let i = IntIdeal::new(n)?;
        Limits { max_norm: self.max_norm, ..Limits::default() }.check_norm(n as u128)?;
        Ok(i)
    }

    pub fn prime(&self, p: u64) -> Result<IntIdeal> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        IntIdeal::new(p)
    }
}

impl DedekindDomain for IntegerRing {
    type Ideal = IntIdeal;

    fn unit_ideal(&self) -> IntIdeal {
        IntIdeal(1)
    }

    fn mul(&self, a: &IntIdeal, b: &IntIdeal) -> Result<IntIdeal> {
        let n = a.0.checked_mul(b.0).ok_or(Error::Overflow("integer ideal product"))?;
        self.ideal(n)
    }

    fn contains(&self, outer: &IntIdeal, inner: &IntIdeal) -> bool {
        inner.0.is_multiple_of(outer.0)
    }

    fn factor(&self, i: &IntIdeal) -> Result<PrimeFactorization<IntIdeal>> {
        let factors = factor_u128(i.0 as u128)?
            .into_iter()
            .map(|(p, e)| (IntIdeal(p), e))
            .collect();
        Ok(PrimeFactorization { factors })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadring::chain::{check_chain, radical, sp_factor, vn};

    #[test]
    fn chain_of_360() {
        let z = IntegerRing::default();
        let i = z.ideal(360).unwrap();
        let c = sp_factor(&z, &i).unwrap();
        let gens: Vec<u64> = c.links.iter().map(|j| j.generator()).collect();
        assert_eq!(gens, vec![30, 6, 2]);
        assert!(check_chain(&z, &c, &i).unwrap().all());
        assert_eq!(radical(&z, &i).unwrap().generator(), 30);
        assert_eq!(vn(&z, &i, 2).unwrap(), vec![IntIdeal(2), IntIdeal(3)]);
    }

    #[test]
    fn rejects_zero_and_unit() {
        let z = IntegerRing::default();
        assert!(z.ideal(0).is_err());
        assert!(matches!(sp_factor(&z, &z.ideal(1).unwrap()), Err(Error::UnitIdeal)));
        assert!(z.prime(9).is_err());
    }
}
