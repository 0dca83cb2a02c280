//! Deciding whether every ideal of a finite ring is a product of radical ideals.
//!
//! The decision closes the set of radical ideals under multiplication with a
//! breadth-first worklist, so the first recorded witness for each ideal is a
//! shortest product. The structural route (local factors all special primary)
//! is computed independently and serves as an oracle.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Limits, Result};
use crate::finideal::FinIdeal;
use crate::finring::{FinModule, FinRing};

/// Explanation attached to every verdict: over a finite ring the restricted property is vacuous.
pub const SP_NOTE: &str = "every regular element of a finite ring is a unit, so the only regular \
ideal is the unit ideal and the ring is trivially SP; is_ssp is the substantive verdict";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// The unit ideal, as the empty product.
    Unit,
    /// A radical ideal reached as `parent · factor`.
    Product { parent: FinIdeal, factor: FinIdeal },
}

/// The closure of the radical ideals under ideal multiplication.
#[derive(Debug, Clone)]
pub struct RadicalClosure {
    pub radicals: Vec<FinIdeal>,
    /// Each member, with the BFS layer (product length) at which it was first reached.
    members: HashMap<FinIdeal, (usize, Provenance)>,
}

impl RadicalClosure {
    pub fn contains(&self, i: &FinIdeal) -> bool {
        self.members.contains_key(i)
    }

    /// Members in canonical order.
    pub fn members(&self) -> Vec<FinIdeal> {
        let mut v: Vec<FinIdeal> = self.members.keys().cloned().collect();
        v.sort();
        v
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn provenance(&self, i: &FinIdeal) -> Option<&Provenance> {
        self.members.get(i).map(|(_, p)| p)
    }

    /// Shortest radical factorization, factors sorted by size then bitset
    /// (an ascending arrangement when the factors form a chain).
    pub fn factorization(&self, i: &FinIdeal) -> Option<Vec<FinIdeal>> {
        let mut factors = Vec::new();
        let mut cur = i;
        loop {
            match self.provenance(cur)? {
                Provenance::Unit => break,
                Provenance::Product { parent, factor } => {
                    factors.push(factor.clone());
                    cur = parent;
                }
            }
        }
        factors.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Some(factors)
    }
}

pub fn radical_closure(ring: &FinRing) -> Result<RadicalClosure> {
    radical_closure_with(ring, &Limits::default())
}

pub fn radical_closure_with(ring: &FinRing, limits: &Limits) -> Result<RadicalClosure> {
    let ideals = ring.all_ideals_with(limits)?;
    let radicals: Vec<FinIdeal> = ideals.into_iter().filter(|i| ring.is_radical(i)).collect();
    let proper: Vec<&FinIdeal> = radicals.iter().filter(|r| ring.is_proper(r)).collect();

    let whole = ring.whole_ideal();
    let mut members = HashMap::new();
    members.insert(whole.clone(), (0, Provenance::Unit));
    let mut layer = vec![whole];
    let mut depth = 0;
    while !layer.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for x in &layer {
            for &r in &proper {
                let p = ring.ideal_product(x, r);
                if !members.contains_key(&p) {
                    members.insert(p.clone(), (depth, Provenance::Product { parent: x.clone(), factor: r.clone() }));
                    next.push(p);
                }
            }
        }
        next.sort();
        layer = next;
    }
    Ok(RadicalClosure { radicals, members })
}

#[derive(Debug, Clone)]
pub struct SspVerdict {
    pub is_ssp: bool,
    /// Always true for finite rings; see [`SP_NOTE`].
    pub is_sp: bool,
    /// The first ideal (canonical order) with no radical factorization.
    pub witness: Option<FinIdeal>,
    pub factorizations: BTreeMap<FinIdeal, Option<Vec<FinIdeal>>>,
    pub closure: RadicalClosure,
}

pub fn decide_ssp(ring: &FinRing) -> Result<SspVerdict> {
    decide_ssp_with(ring, &Limits::default())
}

pub fn decide_ssp_with(ring: &FinRing, limits: &Limits) -> Result<SspVerdict> {
    let closure = radical_closure_with(ring, limits)?;
    let ideals = ring.all_ideals_with(limits)?;
    let factorizations: BTreeMap<FinIdeal, Option<Vec<FinIdeal>>> =
        ideals.iter().map(|i| (i.clone(), closure.factorization(i))).collect();
    let witness = ideals.iter().find(|i| !closure.contains(i)).cloned();
    Ok(SspVerdict {
        is_ssp: witness.is_none(),
        is_sp: true,
        witness,
        factorizations,
        closure,
    })
}

/// Oracle route: every local factor is special primary.
pub fn structural_ssp(ring: &FinRing) -> Result<bool> {
    for factor in ring.decompose_local() {
        if !factor.ring.is_special_primary()?.special_primary {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Von Neumann regularity: every `a` has some `b` with `a = aba`.
pub fn is_vnr(ring: &FinRing) -> bool {
    ring.elements()
        .all(|a| ring.elements().any(|b| ring.mul(ring.mul(a, b), a) == a))
}

/// Every submodule `F` equals `IE` for some ideal `I` of the base ring.
pub fn is_multiplication_module(e: &FinModule) -> Result<bool> {
    let products: std::collections::HashSet<_> = e
        .ring()
        .all_ideals()?
        .iter()
        .map(|i| e.ideal_times(i))
        .collect();
    Ok(e.submodules().iter().all(|f| products.contains(f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn trivial_square() -> FinRing {
        let z2 = Arc::new(FinRing::zn(2).unwrap());
        FinRing::idealization(&z2, &FinModule::free(z2.clone(), 2).unwrap()).unwrap()
    }

    #[test]
    fn flagship_ring_is_not_ssp() {
        let b = trivial_square();
        let v = decide_ssp(&b).unwrap();
        assert!(!v.is_ssp);
        assert!(v.is_sp);
        let w = v.witness.unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(w, b.generated_ideal(&[1]));
        let expected = vec![b.zero_ideal(), b.generated_ideal(&[1, 2]), b.whole_ideal()];
        assert_eq!(v.closure.members(), expected);
        assert!(!structural_ssp(&b).unwrap());
    }

    #[test]
    fn vnr_closure_is_everything() {
        let z6 = FinRing::zn(6).unwrap();
        let c = radical_closure(&z6).unwrap();
        assert_eq!(c.members(), z6.all_ideals().unwrap());
        assert!(is_vnr(&z6));
    }

    #[test]
    fn z8_closure_is_powers() {
        let z8 = FinRing::zn(8).unwrap();
        let c = radical_closure(&z8).unwrap();
        assert_eq!(c.len(), 4);
        let zero = z8.zero_ideal();
        let f = c.factorization(&zero).unwrap();
        assert_eq!(f, vec![z8.generated_ideal(&[2]); 3]);
        assert_eq!(c.factorization(&z8.whole_ideal()).unwrap(), vec![]);
    }

    #[test]
    fn prime_power_rings_are_ssp() {
        for n in [2usize, 4, 8, 16, 32, 3, 9, 27, 25, 49] {
            assert!(decide_ssp(&FinRing::zn(n).unwrap()).unwrap().is_ssp, "Z/{n}");
        }
        assert!(decide_ssp(&FinRing::zn(1).unwrap()).unwrap().is_ssp);
    }

    #[test]
    fn structural_examples() {
        assert!(structural_ssp(&FinRing::zn(12).unwrap()).unwrap());
        let z2 = FinRing::zn(2).unwrap();
        let z3 = FinRing::zn(3).unwrap();
        assert!(structural_ssp(&FinRing::product(&z2, &z3).unwrap()).unwrap());
        assert!(structural_ssp(&FinRing::zn(1).unwrap()).unwrap());
    }

    #[test]
    fn vnr_examples() {
        let z2 = FinRing::zn(2).unwrap();
        assert!(is_vnr(&FinRing::product(&z2, &z2).unwrap()));
        assert!(!is_vnr(&FinRing::zn(4).unwrap()));
    }

    #[test]
    fn multiplication_modules() {
        let z6 = Arc::new(FinRing::zn(6).unwrap());
        assert!(is_multiplication_module(&FinModule::free(z6.clone(), 1).unwrap()).unwrap());
        let f2 = Arc::new(FinRing::zn(2).unwrap());
        assert!(!is_multiplication_module(&FinModule::free(f2.clone(), 2).unwrap()).unwrap());
        assert!(is_multiplication_module(&FinModule::zero(f2)).unwrap());
    }

    #[test]
    fn witnesses_remultiply() {
        for n in 1..=48 {
            let r = FinRing::zn(n).unwrap();
            let v = decide_ssp(&r).unwrap();
            for (ideal, f) in &v.factorizations {
                let f = f.as_ref().unwrap();
                let prod = f.iter().fold(r.whole_ideal(), |acc, j| r.ideal_product(&acc, j));
                assert_eq!(&prod, ideal);
                assert!(f.iter().all(|j| r.is_radical(j)));
            }
        }
    }
}
