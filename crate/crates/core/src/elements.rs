//! Dense bitsets over element indices.

use std::cmp::Ordering;
use std::fmt;

/// A set of element indices `0..universe`, stored as a dense bitset.
///
/// Sets compare by the numeric value of the bitset (element `i` is bit `i`),
/// which is the canonical order used for every emitted list of ideals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    universe: usize,
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for i in 0..universe {
            s.insert(i as u32);
        }
        s
    }

    pub fn from_indices(universe: usize, items: impl IntoIterator<Item = u32>) -> Self {
        let mut s = Self::empty(universe);
        for i in items {
            s.insert(i);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, i: u32) -> bool {
        let i = i as usize;
        i < self.universe && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Inserts `i`, returning true if it was not already present.
    #[inline]
    pub fn insert(&mut self, i: u32) -> bool {
        let i = i as usize;
        assert!(i < self.universe, "element {i} outside universe {}", self.universe);
        let w = &mut self.words[i / 64];
        let bit = 1u64 << (i % 64);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            universe: self.universe,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            universe: self.universe,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros();
                w &= w - 1;
                Some(wi as u32 * 64 + t)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe.cmp(&other.universe).then_with(|| {
            for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// The additive group of a ring or module, viewed through its Cayley table.
#[derive(Clone, Copy)]
pub(crate) struct AddTable<'a> {
    pub size: usize,
    pub add: &'a [u32],
    pub zero: u32,
}

impl AddTable<'_> {
    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.size + b as usize]
    }

    /// Smallest subgroup containing `base` and every element of `seeds`.
    /// `base` must already be a subgroup.
    pub fn extend(&self, base: &ElementSet, seeds: impl IntoIterator<Item = u32>) -> ElementSet {
        let mut cur = base.clone();
        let mut members = cur.to_vec();
        for s in seeds {
            if cur.contains(s) {
                continue;
            }
            // cur + <s>: add multiples of s to every existing member until closed
            let mut frontier = members.clone();
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for &m in &frontier {
                    let v = self.add(m, s);
                    if cur.insert(v) {
                        members.push(v);
                        next.push(v);
                    }
                }
                frontier = next;
            }
        }
        cur
    }

    pub fn span(&self, seeds: impl IntoIterator<Item = u32>) -> ElementSet {
        let zero = ElementSet::from_indices(self.size, [self.zero]);
        self.extend(&zero, seeds)
    }

    /// A small generating set for the subgroup `set` (greedy, at most log2 |set| elements).
    pub fn generators(&self, set: &ElementSet) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut span = ElementSet::from_indices(self.size, [self.zero]);
        for x in set.iter() {
            if !span.contains(x) {
                gens.push(x);
                span = self.extend(&span, [x]);
                if span.len() == set.len() {
                    break;
                }
            }
        }
        gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_numeric() {
        let a = ElementSet::from_indices(130, [0, 1]);
        let b = ElementSet::from_indices(130, [2]);
        let c = ElementSet::from_indices(130, [129]);
        assert!(a < b);
        assert!(b < c);
        assert_eq!(c.to_vec(), vec![129]);
    }

    #[test]
    fn span_in_cyclic_group() {
        let n = 12usize;
        let add: Vec<u32> = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        let g = AddTable { size: n, add: &add, zero: 0 };
        assert_eq!(g.span([8]).to_vec(), vec![0, 4, 8]);
        assert_eq!(g.span([8, 6]).to_vec(), vec![0, 2, 4, 6, 8, 10]);
        let all = ElementSet::full(n);
        assert_eq!(g.span(g.generators(&all)), all);
    }
}
