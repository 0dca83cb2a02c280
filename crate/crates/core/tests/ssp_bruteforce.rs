//! The SSP decision against a naive search that shares no code with the engine's
//! ideal arithmetic: products are generated from all pairwise element products,
//! radicals from explicit powers, ideals from explicit subset filtering.

use std::collections::BTreeSet;

use radfact::catalog::standard_catalog;
use radfact::desc::parse_ring;
use radfact::sspengine::decide_ssp;
use radfact::{ElementSet, FinIdeal, FinRing, Limits};

fn naive_product(r: &FinRing, i: &FinIdeal, j: &FinIdeal) -> Vec<u32> {
    let gens: Vec<u32> = i
        .elements()
        .iter()
        .flat_map(|&a| j.elements().into_iter().map(move |b| (a, b)))
        .map(|(a, b)| r.mul(a, b))
        .collect();
    r.generated_ideal(&gens).elements()
}

fn naive_radical(r: &FinRing, i: &FinIdeal) -> Vec<u32> {
    r.elements()
        .filter(|&x| {
            let mut p = x;
            (0..r.order()).any(|_| {
                let hit = i.contains(p);
                p = r.mul(p, x);
                hit
            })
        })
        .collect()
}

fn is_ideal_naive(r: &FinRing, s: &[u32]) -> bool {
    let set: BTreeSet<u32> = s.iter().copied().collect();
    set.contains(&r.zero())
        && s.iter().all(|&a| s.iter().all(|&b| set.contains(&r.add(a, b))))
        && s.iter().all(|&a| r.elements().all(|x| set.contains(&r.mul(a, x))))
}

fn small_catalog() -> Vec<FinRing> {
    standard_catalog()
        .into_iter()
        .map(|d| parse_ring(&d, &Limits::default()).unwrap())
        .filter(|r| r.all_ideals().unwrap().len() <= 64)
        .collect()
}

#[test]
fn decision_matches_layered_search() {
    let mut checked = 0;
    for r in small_catalog() {
        let ideals = r.all_ideals().unwrap();
        let radicals: Vec<&FinIdeal> = ideals
            .iter()
            .filter(|i| naive_radical(&r, i) == i.elements() && r.is_proper(i))
            .collect();
        // layer l holds every product of exactly l proper radicals
        let whole = r.whole_ideal();
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::from([whole.elements()]);
        let mut shortest: Vec<(Vec<u32>, usize)> = vec![(whole.elements(), 0)];
        let mut layer: Vec<FinIdeal> = vec![whole];
        for l in 1..=ideals.len() {
            let mut next = Vec::new();
            for x in &layer {
                for rad in &radicals {
                    let p = naive_product(&r, x, rad);
                    if seen.insert(p.clone()) {
                        shortest.push((p.clone(), l));
                        next.push(r.generated_ideal(&p));
                    }
                }
            }
            layer = next;
        }
        let verdict = decide_ssp(&r).unwrap();
        let expect_ssp = ideals.iter().all(|i| seen.contains(&i.elements()));
        assert_eq!(verdict.is_ssp, expect_ssp, "{}", r.label());
        for (elems, len) in shortest {
            let ideal = r.generated_ideal(&elems);
            let f = verdict.factorizations[&ideal].as_ref().expect("reachable ideal has a witness");
            assert_eq!(f.len(), len, "{} {:?}", r.label(), elems);
        }
        checked += 1;
    }
    assert!(checked >= 200, "only {checked} rings had at most 64 ideals");
}

#[test]
fn ideal_enumeration_matches_subset_filter() {
    for r in small_catalog().into_iter().filter(|r| r.order() <= 16) {
        let n = r.order();
        let mut brute = Vec::new();
        for mask in 0u32..(1u32 << n) {
            let s: Vec<u32> = (0..n as u32).filter(|b| mask >> b & 1 == 1).collect();
            if is_ideal_naive(&r, &s) {
                brute.push(ElementSet::from_indices(n, s));
            }
        }
        brute.sort();
        let fast: Vec<ElementSet> = r.all_ideals().unwrap().iter().map(|i| i.members().clone()).collect();
        assert_eq!(fast, brute, "{}", r.label());
    }
}

#[test]
fn radical_and_product_agree_with_naive_versions() {
    for r in small_catalog().into_iter().filter(|r| r.order() <= 64) {
        let ideals = r.all_ideals().unwrap();
        for i in &ideals {
            assert_eq!(r.radical(i).elements(), naive_radical(&r, i), "{}", r.label());
            for j in ideals.iter().take(8) {
                assert_eq!(r.ideal_product(i, j).elements(), naive_product(&r, i, j), "{}", r.label());
            }
        }
    }
}
