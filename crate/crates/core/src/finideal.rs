//! Ideal lattices of finite rings: generation, products, radicals, spectra.

use std::collections::HashSet;

use crate::elements::ElementSet;
use crate::error::{Bound, Error, Limits, Result};
use crate::finring::FinRing;

/// An ideal of a finite ring, as a bitset of element indices.
///
/// Ideals carry no pointer to their ring; every operation takes the ring
/// explicitly. Ordering is the canonical bitset order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinIdeal(ElementSet);

impl std::fmt::Debug for FinIdeal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ideal{:?}", self.0)
    }
}

impl FinIdeal {
    pub(crate) fn new_unchecked(members: ElementSet) -> Self {
        FinIdeal(members)
    }

    pub fn members(&self) -> &ElementSet {
        &self.0
    }

    pub fn elements(&self) -> Vec<u32> {
        self.0.to_vec()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: u32) -> bool {
        self.0.contains(x)
    }

    pub fn is_subset(&self, other: &FinIdeal) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn intersection(&self, other: &FinIdeal) -> FinIdeal {
        FinIdeal(self.0.intersection(&other.0))
    }
}

impl FinRing {
    pub fn zero_ideal(&self) -> FinIdeal {
        FinIdeal(ElementSet::from_indices(self.order(), [self.zero()]))
    }

    pub fn whole_ideal(&self) -> FinIdeal {
        FinIdeal(ElementSet::full(self.order()))
    }

    /// Checks the ideal axioms on an arbitrary subset.
    pub fn is_ideal(&self, set: &ElementSet) -> bool {
        if set.universe() != self.order() || !set.contains(self.zero()) {
            return false;
        }
        let members = set.to_vec();
        members
            .iter()
            .all(|&a| members.iter().all(|&b| set.contains(self.add(a, b))))
            && members
                .iter()
                .all(|&a| self.elements().all(|r| set.contains(self.mul(r, a))))
    }

    /// Wraps a subset after checking that it is an ideal.
    pub fn ideal_from_set(&self, set: ElementSet) -> Result<FinIdeal> {
        if self.is_ideal(&set) {
            Ok(FinIdeal(set))
        } else {
            Err(Error::NotAnIdeal(format!("{set:?}")))
        }
    }

    pub fn principal_ideal(&self, g: u32) -> FinIdeal {
        FinIdeal(ElementSet::from_indices(self.order(), self.elements().map(|r| self.mul(r, g))))
    }

    /// Least ideal containing `gens`.
    pub fn generated_ideal(&self, gens: &[u32]) -> FinIdeal {
        let multiples = gens
            .iter()
            .flat_map(|&g| self.elements().map(move |r| (r, g)))
            .map(|(r, g)| self.mul(r, g));
        FinIdeal(self.add_group().span(multiples))
    }

    pub fn ideal_sum(&self, i: &FinIdeal, j: &FinIdeal) -> FinIdeal {
        let group = self.add_group();
        let gens = group.generators(&j.0);
        FinIdeal(group.extend(&i.0, gens))
    }

    /// `IJ`, the additive span of products of additive generators of `I` and `J`.
    pub fn ideal_product(&self, i: &FinIdeal, j: &FinIdeal) -> FinIdeal {
        let group = self.add_group();
        let gi = group.generators(&i.0);
        let gj = group.generators(&j.0);
        let seeds: Vec<u32> = gi
            .iter()
            .flat_map(|&a| gj.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.mul(a, b))
            .collect();
        FinIdeal(group.span(seeds))
    }

    pub fn ideal_power(&self, i: &FinIdeal, n: usize) -> FinIdeal {
        let mut acc = self.whole_ideal();
        for _ in 0..n {
            acc = self.ideal_product(&acc, i);
        }
        acc
    }

    pub fn all_ideals(&self) -> Result<Vec<FinIdeal>> {
        self.all_ideals_with(&Limits::default())
    }

    /// Every ideal, as the join-closure of the principal ideals, in canonical order.
    pub fn all_ideals_with(&self, limits: &Limits) -> Result<Vec<FinIdeal>> {
        let group = self.add_group();
        let mut principal: Vec<FinIdeal> = self.elements().map(|g| self.principal_ideal(g)).collect();
        principal.sort();
        principal.dedup();
        let principal_gens: Vec<Vec<u32>> = principal.iter().map(|p| group.generators(&p.0)).collect();

        let mut seen: HashSet<FinIdeal> = principal.iter().cloned().collect();
        let exceeded = |n: usize| n > limits.max_ideals;
        if exceeded(seen.len()) {
            return Err(Error::Resource { bound: Bound::MaxIdeals, limit: limits.max_ideals as u64 });
        }
        let mut frontier = principal.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for i in &frontier {
                for (p, gens) in principal.iter().zip(&principal_gens) {
                    if p.0.is_subset(&i.0) {
                        continue;
                    }
                    let sum = FinIdeal(group.extend(&i.0, gens.iter().copied()));
                    if !seen.contains(&sum) {
                        seen.insert(sum.clone());
                        if exceeded(seen.len()) {
                            return Err(Error::Resource {
                                bound: Bound::MaxIdeals,
                                limit: limits.max_ideals as u64,
                            });
                        }
                        next.push(sum);
                    }
                }
            }
            frontier = next;
        }
        let mut all: Vec<FinIdeal> = seen.into_iter().collect();
        all.sort();
        Ok(all)
    }

    /// `{ x : x^k ∈ I for some k }`, by walking each element's power sequence until it cycles.
    pub fn radical(&self, i: &FinIdeal) -> FinIdeal {
        let mut set = ElementSet::empty(self.order());
        for x in self.elements() {
            let mut seen = ElementSet::empty(self.order());
            let mut p = x;
            while seen.insert(p) {
                if i.contains(p) {
                    set.insert(x);
                    break;
                }
                p = self.mul(p, x);
            }
        }
        FinIdeal(set)
    }

    pub fn is_radical(&self, i: &FinIdeal) -> bool {
        self.radical(i) == *i
    }

    pub fn is_proper(&self, i: &FinIdeal) -> bool {
        !i.contains(self.one())
    }

    /// Primality by exhaustive pair scan.
    pub fn is_prime(&self, i: &FinIdeal) -> bool {
        if !self.is_proper(i) {
            return false;
        }
        let outside: Vec<u32> = self.elements().filter(|&x| !i.contains(x)).collect();
        outside
            .iter()
            .all(|&a| outside.iter().all(|&b| !i.contains(self.mul(a, b))))
    }

    pub fn prime_spectrum(&self) -> Result<Vec<FinIdeal>> {
        Ok(self.all_ideals()?.into_iter().filter(|i| self.is_prime(i)).collect())
    }

    /// Maximal ideals as the maximal elements of the proper part of the lattice.
    pub fn maximal_ideals(&self) -> Result<Vec<FinIdeal>> {
        let proper: Vec<FinIdeal> = self.all_ideals()?.into_iter().filter(|i| self.is_proper(i)).collect();
        Ok(proper
            .iter()
            .filter(|i| !proper.iter().any(|j| j != *i && i.is_subset(j)))
            .cloned()
            .collect())
    }

    /// `V_n(I)`: the primes `P` with `I ⊆ P^n`.
    pub fn vn_set(&self, i: &FinIdeal, n: usize) -> Result<Vec<FinIdeal>> {
        if n == 0 {
            return Err(Error::invalid("V_n requires n >= 1"));
        }
        Ok(self
            .prime_spectrum()?
            .into_iter()
            .filter(|p| i.is_subset(&self.ideal_power(p, n)))
            .collect())
    }
}
