//! Finite commutative rings presented by dense operation tables.
//!
//! Elements are the indices `0..order`. Every constructor re-checks the ring
//! axioms before handing a ring out; the check uses additive generators so it
//! stays at `O(order² · log order)` instead of the cubic naive scan.

use std::fmt;
use std::sync::Arc;

use crate::elements::{AddTable, ElementSet};
use crate::error::{Error, Limits, Result};
use crate::finideal::FinIdeal;

#[derive(Clone)]
pub struct FinRing {
    label: String,
    order: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    zero: u32,
    one: u32,
}

/// Two rings are equal when their tables coincide; labels are ignored.
impl PartialEq for FinRing {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.zero == other.zero
            && self.one == other.one
            && self.add == other.add
            && self.mul == other.mul
    }
}

impl Eq for FinRing {}

impl fmt::Debug for FinRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinRing")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

fn flatten(order: usize, rows: &[Vec<u32>], what: &str) -> Result<Vec<u32>> {
    if rows.len() != order || rows.iter().any(|r| r.len() != order) {
        return Err(Error::InvalidRing(format!("{what} table must be {order}x{order}")));
    }
    Ok(rows.iter().flatten().copied().collect())
}

impl FinRing {
    /// Builds a ring from user-supplied tables, verifying every axiom.
    pub fn from_tables(
        label: impl Into<String>,
        zero: u32,
        one: u32,
        add: &[Vec<u32>],
        mul: &[Vec<u32>],
    ) -> Result<FinRing> {
        Self::from_tables_with(label, zero, one, add, mul, &Limits::default())
    }

    pub fn from_tables_with(
        label: impl Into<String>,
        zero: u32,
        one: u32,
        add: &[Vec<u32>],
        mul: &[Vec<u32>],
        limits: &Limits,
    ) -> Result<FinRing> {
        let order = add.len();
        if order == 0 {
            return Err(Error::InvalidRing("a ring needs at least one element".into()));
        }
        limits.check_order(order)?;
        let add = flatten(order, add, "add")?;
        let mul = flatten(order, mul, "mul")?;
        Self::from_flat(label.into(), order, add, mul, zero, one)
    }

    fn from_flat(
        label: String,
        order: usize,
        add: Vec<u32>,
        mul: Vec<u32>,
        zero: u32,
        one: u32,
    ) -> Result<FinRing> {
        let bad = |msg: String| Err(Error::InvalidRing(format!("{label}: {msg}")));
        let n = order as u32;
        if zero >= n || one >= n {
            return bad("zero/one index out of range".into());
        }
        if add.iter().chain(&mul).any(|&x| x >= n) {
            return bad("table entry out of range".into());
        }
        if zero == one && order != 1 {
            return bad("zero equals one in a nonzero ring".into());
        }
        let mut neg = vec![u32::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if add[a * order + b] == zero {
                    neg[a] = b as u32;
                    break;
                }
            }
        }
        let ring = FinRing { label, order, add, mul, neg, zero, one };
        ring.verify()?;
        Ok(ring)
    }

    /// Exhaustive axiom check.
    ///
    /// Associativity of both operations is checked only with the middle
    /// argument drawn from an additive generating set: the elements `g` with
    /// `(xg)y = x(gy)` for all `x, y` form a set closed under the operation (and
    /// under addition once distributivity holds), so generators suffice.
    pub fn verify(&self) -> Result<()> {
        let n = self.order;
        let bad = |msg: String| Err(Error::InvalidRing(format!("{}: {msg}", self.label)));
        for a in 0..n as u32 {
            if self.add(self.zero, a) != a {
                return bad(format!("zero is not an additive identity for {a}"));
            }
            if self.mul(self.one, a) != a {
                return bad(format!("one is not a multiplicative identity for {a}"));
            }
            if self.neg[a as usize] == u32::MAX {
                return bad(format!("{a} has no additive inverse"));
            }
            for b in 0..a {
                if self.add(a, b) != self.add(b, a) {
                    return bad(format!("addition not commutative at ({a},{b})"));
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return bad(format!("multiplication not commutative at ({a},{b})"));
                }
            }
        }
        let group = self.add_group();
        let gens = group.generators(&ElementSet::full(n));
        if group.span(gens.iter().copied()).len() != n {
            return bad("additive table does not form a group".into());
        }
        for &g in &gens {
            for x in 0..n as u32 {
                let xg = self.add(x, g);
                for y in 0..n as u32 {
                    if self.add(xg, y) != self.add(x, self.add(g, y)) {
                        return bad(format!("addition not associative at ({x},{g},{y})"));
                    }
                }
            }
        }
        for a in 0..n as u32 {
            for &g in &gens {
                let ag = self.mul(a, g);
                for y in 0..n as u32 {
                    if self.mul(a, self.add(g, y)) != self.add(ag, self.mul(a, y)) {
                        return bad(format!("not distributive at ({a},{g},{y})"));
                    }
                }
            }
        }
        for &g in &gens {
            for x in 0..n as u32 {
                let xg = self.mul(x, g);
                for y in 0..n as u32 {
                    if self.mul(xg, y) != self.mul(x, self.mul(g, y)) {
                        return bad(format!("multiplication not associative at ({x},{g},{y})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// ℤ/nℤ with representatives `0..n`.
    pub fn zn(n: usize) -> Result<FinRing> {
        Self::zn_with(n, &Limits::default())
    }

    pub fn zn_with(n: usize, limits: &Limits) -> Result<FinRing> {
        if n == 0 {
            return Err(Error::invalid("Z/n requires n >= 1"));
        }
        limits.check_order(n)?;
        let add = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        let mul = (0..n * n).map(|k| ((k / n) * (k % n) % n) as u32).collect();
        Self::from_flat(format!("Z/{n}"), n, add, mul, 0, (1 % n) as u32)
    }

    /// `base[x]/(f)` for monic `f` of degree `d >= 1`; `f` lists integer
    /// coefficients (mapped to `c·1` in the base), constant term first.
    pub fn poly_quotient(base: &FinRing, f: &[i64]) -> Result<FinRing> {
        Self::poly_quotient_with(base, f, &Limits::default())
    }

    pub fn poly_quotient_with(base: &FinRing, f: &[i64], limits: &Limits) -> Result<FinRing> {
        let mut f: Vec<u32> = f.iter().map(|&c| base.integer(c)).collect();
        while f.len() > 1 && *f.last().unwrap() == base.zero {
            f.pop();
        }
        let d = f.len().saturating_sub(1);
        if d == 0 {
            return Err(Error::invalid("modulus polynomial must have degree >= 1"));
        }
        if f[d] != base.one {
            return Err(Error::invalid("modulus polynomial must be monic"));
        }
        let q = base.order;
        let order = q
            .checked_pow(d as u32)
            .filter(|&o| o <= limits.max_order)
            .ok_or(Error::Resource {
                bound: crate::error::Bound::MaxOrder,
                limit: limits.max_order as u64,
            })?;
        let digits = |mut x: usize| -> Vec<u32> {
            (0..d)
                .map(|_| {
                    let c = (x % q) as u32;
                    x /= q;
                    c
                })
                .collect()
        };
        let encode = |cs: &[u32]| -> u32 { cs.iter().rev().fold(0usize, |acc, &c| acc * q + c as usize) as u32 };
        let all: Vec<Vec<u32>> = (0..order).map(digits).collect();
        let mut add = vec![0u32; order * order];
        let mut mul = vec![0u32; order * order];
        for i in 0..order {
            for j in 0..order {
                let s: Vec<u32> = (0..d).map(|k| base.add(all[i][k], all[j][k])).collect();
                add[i * order + j] = encode(&s);
                let mut prod = vec![base.zero; 2 * d - 1];
                for (a, &ca) in all[i].iter().enumerate() {
                    for (b, &cb) in all[j].iter().enumerate() {
                        prod[a + b] = base.add(prod[a + b], base.mul(ca, cb));
                    }
                }
                // x^d = -(f_0 + ... + f_{d-1} x^{d-1})
                for top in (d..prod.len()).rev() {
                    let c = prod[top];
                    if c == base.zero {
                        continue;
                    }
                    prod[top] = base.zero;
                    for k in 0..d {
                        let t = base.neg(base.mul(c, f[k]));
                        prod[top - d + k] = base.add(prod[top - d + k], t);
                    }
                }
                mul[i * order + j] = encode(&prod[..d]);
            }
        }
        let one = encode(&{
            let mut v = vec![base.zero; d];
            v[0] = base.one;
            v
        });
        let label = format!("{}[x]/({})", base.label, format_int_poly(&f, base));
        Self::from_flat(label, order, add, mul, 0, one)
    }

    /// Componentwise product; the element `(i, j)` has index `i·|b| + j`.
    pub fn product(a: &FinRing, b: &FinRing) -> Result<FinRing> {
        Self::product_with(a, b, &Limits::default())
    }

    pub fn product_with(a: &FinRing, b: &FinRing, limits: &Limits) -> Result<FinRing> {
        let (na, nb) = (a.order, b.order);
        let order = na * nb;
        limits.check_order(order)?;
        let mut add = vec![0u32; order * order];
        let mut mul = vec![0u32; order * order];
        for x in 0..order {
            let (x1, x2) = ((x / nb) as u32, (x % nb) as u32);
            for y in 0..order {
                let (y1, y2) = ((y / nb) as u32, (y % nb) as u32);
                add[x * order + y] = a.add(x1, y1) * nb as u32 + b.add(x2, y2);
                mul[x * order + y] = a.mul(x1, y1) * nb as u32 + b.mul(x2, y2);
            }
        }
        let label = format!("{} x {}", wrap(&a.label), wrap(&b.label));
        Self::from_flat(label, order, add, mul, a.zero * nb as u32 + b.zero, a.one * nb as u32 + b.one)
    }

    /// The idealization `A(+)E` on pairs `(a, x)` with `(a,x)(b,y) = (ab, ay + bx)`.
    /// The pair `(r, m)` has index `r·|E| + m`.
    pub fn idealization(a: &FinRing, e: &FinModule) -> Result<FinRing> {
        Self::idealization_with(a, e, &Limits::default())
    }

    pub fn idealization_with(a: &FinRing, e: &FinModule, limits: &Limits) -> Result<FinRing> {
        if e.ring.as_ref() != a {
            return Err(Error::InvalidModule(format!(
                "module {} is over {}, not {}",
                e.label, e.ring.label, a.label
            )));
        }
        let s = e.size;
        let order = a.order * s;
        limits.check_order(order)?;
        let mut add = vec![0u32; order * order];
        let mut mul = vec![0u32; order * order];
        for p in 0..order {
            let (r, x) = ((p / s) as u32, (p % s) as u32);
            for q in 0..order {
                let (t, y) = ((q / s) as u32, (q % s) as u32);
                add[p * order + q] = a.add(r, t) * s as u32 + e.add(x, y);
                mul[p * order + q] = a.mul(r, t) * s as u32 + e.add(e.act(r, y), e.act(t, x));
            }
        }
        let label = format!("{}(+){}", wrap(&a.label), wrap(&e.label));
        Self::from_flat(label, order, add, mul, a.zero * s as u32 + e.zero, a.one * s as u32 + e.zero)
    }

    /// `A/I` on coset representatives; each coset is represented by its least
    /// element and cosets are numbered in order of their representatives.
    pub fn quotient(&self, ideal: &FinIdeal) -> Result<FinRing> {
        if !self.is_ideal(ideal.members()) {
            return Err(Error::NotAnIdeal(format!("{:?} in {}", ideal.members(), self.label)));
        }
        let (class, reps) = self.cosets(ideal.members());
        let m = reps.len();
        let mut add = vec![0u32; m * m];
        let mut mul = vec![0u32; m * m];
        for (i, &ri) in reps.iter().enumerate() {
            for (j, &rj) in reps.iter().enumerate() {
                add[i * m + j] = class[self.add(ri, rj) as usize];
                mul[i * m + j] = class[self.mul(ri, rj) as usize];
            }
        }
        let gens = self.add_group().generators(ideal.members());
        let label = format!("{}/({})", wrap(&self.label), join(&gens));
        Self::from_flat(label, m, add, mul, class[self.zero as usize], class[self.one as usize])
    }

    /// Maps each element to the index of its coset of the subgroup `sub`, and
    /// lists coset representatives (least element of each coset).
    pub(crate) fn cosets(&self, sub: &ElementSet) -> (Vec<u32>, Vec<u32>) {
        let mut class = vec![u32::MAX; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order as u32 {
            if class[x as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for i in sub.iter() {
                class[self.add(x, i) as usize] = id;
            }
        }
        (class, reps)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> u32 {
        self.zero
    }

    pub fn one(&self) -> u32 {
        self.one
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    /// The element `c·1`.
    pub fn integer(&self, c: i64) -> u32 {
        let mut acc = self.zero;
        for _ in 0..c.unsigned_abs() % self.additive_order(self.one) as u64 {
            acc = self.add(acc, self.one);
        }
        if c < 0 {
            self.neg(acc)
        } else {
            acc
        }
    }

    fn additive_order(&self, x: u32) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != self.zero {
            acc = self.add(acc, x);
            k += 1;
        }
        k
    }

    pub fn add_rows(&self) -> Vec<Vec<u32>> {
        self.add.chunks(self.order).map(<[u32]>::to_vec).collect()
    }

    pub fn mul_rows(&self) -> Vec<Vec<u32>> {
        self.mul.chunks(self.order).map(<[u32]>::to_vec).collect()
    }

    pub(crate) fn add_group(&self) -> AddTable<'_> {
        AddTable { size: self.order, add: &self.add, zero: self.zero }
    }

    /// Elements `x` such that `xy = 0` forces `y = 0`.
    pub fn regular_elements(&self) -> ElementSet {
        let mut set = ElementSet::empty(self.order);
        for x in self.elements() {
            if self.elements().all(|y| y == self.zero || self.mul(x, y) != self.zero) {
                set.insert(x);
            }
        }
        set
    }

    pub fn units(&self) -> ElementSet {
        let mut set = ElementSet::empty(self.order);
        for x in self.elements() {
            if self.elements().any(|y| self.mul(x, y) == self.one) {
                set.insert(x);
            }
        }
        set
    }

    pub fn is_field(&self) -> bool {
        self.order > 1 && self.units().len() == self.order - 1
    }

    pub fn idempotents(&self) -> Vec<u32> {
        self.elements().filter(|&e| self.mul(e, e) == e).collect()
    }

    /// Primitive idempotents: nonzero idempotents with no nonzero idempotent strictly below them.
    pub fn primitive_idempotents(&self) -> Vec<u32> {
        let idem = self.idempotents();
        idem.iter()
            .copied()
            .filter(|&e| e != self.zero)
            .filter(|&e| idem.iter().all(|&f| {
                let ef = self.mul(e, f);
                ef == self.zero || ef == e
            }))
            .collect()
    }

    /// Splits the ring into its local factors `eA`, one per primitive idempotent.
    pub fn decompose_local(&self) -> Vec<LocalFactor> {
        self.primitive_idempotents()
            .into_iter()
            .map(|e| LocalFactor { idempotent: e, ring: self.principal_subring(e) })
            .collect()
    }

    /// The ring `eA` for an idempotent `e`, with identity `e`.
    fn principal_subring(&self, e: u32) -> FinRing {
        let members = ElementSet::from_indices(self.order, self.elements().map(|x| self.mul(e, x)));
        let elems = members.to_vec();
        let mut index = vec![u32::MAX; self.order];
        for (i, &x) in elems.iter().enumerate() {
            index[x as usize] = i as u32;
        }
        let m = elems.len();
        let mut add = vec![0u32; m * m];
        let mut mul = vec![0u32; m * m];
        for (i, &x) in elems.iter().enumerate() {
            for (j, &y) in elems.iter().enumerate() {
                add[i * m + j] = index[self.add(x, y) as usize];
                mul[i * m + j] = index[self.mul(x, y) as usize];
            }
        }
        let label = format!("{}*{}", e, wrap(&self.label));
        Self::from_flat(label, m, add, mul, index[self.zero as usize], index[e as usize])
            .expect("eA is a ring for an idempotent e")
    }

    pub fn is_local(&self) -> bool {
        self.maximal_if_local().is_some()
    }

    /// When the nonunits form an ideal, that ideal is the unique maximal ideal.
    pub fn maximal_if_local(&self) -> Option<FinIdeal> {
        if self.order == 1 {
            return None;
        }
        let units = self.units();
        let nonunits = ElementSet::from_indices(self.order, self.elements().filter(|&x| !units.contains(x)));
        let closed = nonunits
            .iter()
            .all(|a| nonunits.iter().all(|b| nonunits.contains(self.add(a, b))));
        closed.then(|| FinIdeal::new_unchecked(nonunits))
    }

    /// Special primary test: a unique maximal ideal `M` with every proper ideal a power of `M`.
    pub fn is_special_primary(&self) -> Result<SpecialPrimary> {
        let Some(maximal) = self.maximal_if_local() else {
            return Ok(SpecialPrimary { special_primary: false, maximal: None, nilpotency: None });
        };
        let mut powers = vec![maximal.clone()];
        let zero = self.zero_ideal();
        while *powers.last().unwrap() != zero {
            let next = self.ideal_product(powers.last().unwrap(), &maximal);
            if next == *powers.last().unwrap() {
                break;
            }
            powers.push(next);
        }
        let nilpotency = (*powers.last().unwrap() == zero).then_some(powers.len());
        let whole = self.whole_ideal();
        let special = nilpotency.is_some()
            && self
                .all_ideals()?
                .iter()
                .all(|i| *i == whole || powers.contains(i));
        Ok(SpecialPrimary { special_primary: special, maximal: Some(maximal), nilpotency })
    }
}

#[derive(Debug, Clone)]
pub struct LocalFactor {
    pub idempotent: u32,
    pub ring: FinRing,
}

impl LocalFactor {
    /// Index in `ring` of `e·x`.
    pub fn project(&self, parent: &FinRing, x: u32) -> u32 {
        let ex = parent.mul(self.idempotent, x);
        // elements of eA are numbered in increasing parent index
        (0..parent.order() as u32)
            .filter(|&y| parent.mul(self.idempotent, y) == y)
            .position(|y| y == ex)
            .expect("e·x lies in eA") as u32
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialPrimary {
    pub special_primary: bool,
    /// The maximal ideal, present whenever the ring is local.
    pub maximal: Option<FinIdeal>,
    /// Least `t` with `M^t = 0`.
    pub nilpotency: Option<usize>,
}

/// A finite module over a finite ring, presented by tables.
#[derive(Clone)]
pub struct FinModule {
    ring: Arc<FinRing>,
    label: String,
    size: usize,
    add: Vec<u32>,
    zero: u32,
    action: Vec<u32>,
}

impl fmt::Debug for FinModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinModule")
            .field("label", &self.label)
            .field("ring", &self.ring.label)
            .field("size", &self.size)
            .finish()
    }
}

impl FinModule {
    pub fn zero(ring: Arc<FinRing>) -> FinModule {
        let n = ring.order;
        FinModule {
            ring,
            label: "0".into(),
            size: 1,
            add: vec![0],
            zero: 0,
            action: vec![0; n],
        }
    }

    /// The free module `A^rank`; coordinates are base-|A| digits, first coordinate lowest.
    pub fn free(ring: Arc<FinRing>, rank: usize) -> Result<FinModule> {
        if rank == 0 {
            return Ok(Self::zero(ring));
        }
        let q = ring.order;
        let size = q
            .checked_pow(rank as u32)
            .filter(|&s| s <= Limits::default().max_order)
            .ok_or_else(|| Error::InvalidModule(format!("free module of rank {rank} is too large")))?;
        let digits = |mut x: usize| -> Vec<u32> {
            (0..rank)
                .map(|_| {
                    let c = (x % q) as u32;
                    x /= q;
                    c
                })
                .collect()
        };
        let encode = |cs: &[u32]| cs.iter().rev().fold(0usize, |acc, &c| acc * q + c as usize) as u32;
        let all: Vec<Vec<u32>> = (0..size).map(digits).collect();
        let mut add = vec![0u32; size * size];
        for i in 0..size {
            for j in 0..size {
                let s: Vec<u32> = (0..rank).map(|k| ring.add(all[i][k], all[j][k])).collect();
                add[i * size + j] = encode(&s);
            }
        }
        let mut action = vec![0u32; q * size];
        for r in 0..q as u32 {
            for x in 0..size {
                let v: Vec<u32> = all[x].iter().map(|&c| ring.mul(r, c)).collect();
                action[r as usize * size + x] = encode(&v);
            }
        }
        let label = if rank == 1 { ring.label.clone() } else { format!("{}^{rank}", wrap(&ring.label)) };
        let zero = encode(&vec![ring.zero; rank]);
        Ok(FinModule { ring, label, size, add, zero, action })
    }

    /// The cyclic module `A/I`.
    pub fn cyclic(ring: Arc<FinRing>, ideal: &FinIdeal) -> Result<FinModule> {
        if !ring.is_ideal(ideal.members()) {
            return Err(Error::NotAnIdeal(format!("{:?}", ideal.members())));
        }
        let quotient = ring.quotient(ideal)?;
        let (class, reps) = ring.cosets(ideal.members());
        let size = reps.len();
        let mut action = vec![0u32; ring.order * size];
        for r in ring.elements() {
            for (i, &rep) in reps.iter().enumerate() {
                action[r as usize * size + i] = class[ring.mul(r, rep) as usize];
            }
        }
        Ok(FinModule {
            label: quotient.label.clone(),
            size,
            add: quotient.add,
            zero: quotient.zero,
            action,
            ring,
        })
    }

    pub fn direct_sum(a: &FinModule, b: &FinModule) -> Result<FinModule> {
        if a.ring != b.ring {
            return Err(Error::InvalidModule("direct sum of modules over different rings".into()));
        }
        let (sa, sb) = (a.size, b.size);
        let size = sa * sb;
        Limits::default().check_order(size)?;
        let mut add = vec![0u32; size * size];
        for x in 0..size {
            for y in 0..size {
                add[x * size + y] = a.add((x / sb) as u32, (y / sb) as u32) * sb as u32
                    + b.add((x % sb) as u32, (y % sb) as u32);
            }
        }
        let n = a.ring.order;
        let mut action = vec![0u32; n * size];
        for r in 0..n as u32 {
            for x in 0..size {
                action[r as usize * size + x] =
                    a.act(r, (x / sb) as u32) * sb as u32 + b.act(r, (x % sb) as u32);
            }
        }
        Ok(FinModule {
            ring: a.ring.clone(),
            label: format!("{} + {}", a.label, b.label),
            size,
            add,
            zero: a.zero * sb as u32 + b.zero,
            action,
        })
    }

    /// Builds a module from tables and checks the module axioms exhaustively.
    pub fn from_tables(
        ring: Arc<FinRing>,
        label: impl Into<String>,
        zero: u32,
        add: &[Vec<u32>],
        action: &[Vec<u32>],
    ) -> Result<FinModule> {
        let size = add.len();
        if size == 0 || add.iter().any(|r| r.len() != size) {
            return Err(Error::InvalidModule("add table must be square and nonempty".into()));
        }
        if action.len() != ring.order || action.iter().any(|r| r.len() != size) {
            return Err(Error::InvalidModule("action table must be |A| x |E|".into()));
        }
        let m = FinModule {
            label: label.into(),
            size,
            add: add.iter().flatten().copied().collect(),
            zero,
            action: action.iter().flatten().copied().collect(),
            ring,
        };
        m.verify()?;
        Ok(m)
    }

    pub fn verify(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidModule(format!("{}: {msg}", self.label)));
        let s = self.size as u32;
        let r = &self.ring;
        if self.zero >= s || self.add.iter().chain(&self.action).any(|&x| x >= s) {
            return bad("entry out of range");
        }
        for x in 0..s {
            if self.add(self.zero, x) != x || (0..s).all(|y| self.add(x, y) != self.zero) {
                return bad("additive identity or inverse missing");
            }
            if self.act(r.one, x) != x {
                return bad("action is not unital");
            }
            for y in 0..s {
                if self.add(x, y) != self.add(y, x) {
                    return bad("addition not commutative");
                }
                for z in 0..s {
                    if self.add(self.add(x, y), z) != self.add(x, self.add(y, z)) {
                        return bad("addition not associative");
                    }
                }
            }
        }
        for a in r.elements() {
            for x in 0..s {
                for y in 0..s {
                    if self.act(a, self.add(x, y)) != self.add(self.act(a, x), self.act(a, y)) {
                        return bad("action not additive in the module argument");
                    }
                }
                for b in r.elements() {
                    if self.act(r.add(a, b), x) != self.add(self.act(a, x), self.act(b, x)) {
                        return bad("action not additive in the ring argument");
                    }
                    if self.act(r.mul(a, b), x) != self.act(a, self.act(b, x)) {
                        return bad("action not associative");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Arc<FinRing> {
        &self.ring
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero_element(&self) -> u32 {
        self.zero
    }

    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        self.add[x as usize * self.size + y as usize]
    }

    #[inline]
    pub fn act(&self, r: u32, x: u32) -> u32 {
        self.action[r as usize * self.size + x as usize]
    }

    pub(crate) fn add_group(&self) -> AddTable<'_> {
        AddTable { size: self.size, add: &self.add, zero: self.zero }
    }

    /// The submodule `I·E`.
    pub fn ideal_times(&self, ideal: &FinIdeal) -> ElementSet {
        let igens = self.ring.add_group().generators(ideal.members());
        let egens = self.add_group().generators(&ElementSet::full(self.size));
        let seeds: Vec<u32> = igens
            .iter()
            .flat_map(|&i| egens.iter().map(move |&e| (i, e)))
            .map(|(i, e)| self.act(i, e))
            .collect();
        self.add_group().span(seeds)
    }

    /// Every submodule, in canonical bitset order (join-closure of cyclic submodules).
    pub fn submodules(&self) -> Vec<ElementSet> {
        let group = self.add_group();
        let cyclic: Vec<ElementSet> = {
            let mut v: Vec<ElementSet> = (0..self.size as u32)
                .map(|x| ElementSet::from_indices(self.size, self.ring.elements().map(|r| self.act(r, x))))
                .collect();
            v.sort();
            v.dedup();
            v
        };
        let mut seen: std::collections::HashSet<ElementSet> = cyclic.iter().cloned().collect();
        let mut frontier = cyclic.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for c in &cyclic {
                    if c.is_subset(s) {
                        continue;
                    }
                    let sum = group.extend(s, c.iter());
                    if seen.insert(sum.clone()) {
                        next.push(sum);
                    }
                }
            }
            frontier = next;
        }
        let mut all: Vec<ElementSet> = seen.into_iter().collect();
        all.sort();
        all
    }
}

fn wrap(label: &str) -> String {
    if label.contains(' ') || label.contains("(+)") {
        format!("({label})")
    } else {
        label.to_string()
    }
}

fn join(xs: &[u32]) -> String {
    xs.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn format_int_poly(f: &[u32], _base: &FinRing) -> String {
    let mut terms = Vec::new();
    for (k, &c) in f.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{k}"),
        };
        terms.push(match (c, k) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    terms.join("+")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zn_basics() {
        let z1 = FinRing::zn(1).unwrap();
        assert_eq!(z1.order(), 1);
        assert_eq!(z1.zero(), z1.one());
        let z4 = FinRing::zn(4).unwrap();
        assert_eq!(z4.mul(2, 2), 0);
        assert!(FinRing::zn(0).is_err());
    }

    #[test]
    fn zn_regular_elements() {
        assert_eq!(FinRing::zn(6).unwrap().regular_elements().to_vec(), vec![1, 5]);
        assert_eq!(FinRing::zn(4).unwrap().regular_elements().to_vec(), vec![1, 3]);
        let z7 = FinRing::zn(7).unwrap();
        assert_eq!(z7.regular_elements().len(), 6);
    }

    #[test]
    fn regular_equals_units() {
        for n in 1..=40 {
            let r = FinRing::zn(n).unwrap();
            assert_eq!(r.regular_elements(), r.units(), "Z/{n}");
        }
    }

    #[test]
    fn gf4_is_a_field() {
        let z2 = FinRing::zn(2).unwrap();
        let gf4 = FinRing::poly_quotient(&z2, &[1, 1, 1]).unwrap();
        assert_eq!(gf4.order(), 4);
        assert!(gf4.is_field());
        assert_eq!(gf4.label(), "Z/2[x]/(x^2+x+1)");
    }

    #[test]
    fn dual_numbers_have_nilpotent() {
        let z2 = FinRing::zn(2).unwrap();
        let r = FinRing::poly_quotient(&z2, &[0, 0, 1]).unwrap();
        // x is encoded as digits (0, 1) = index 2
        assert_eq!(r.mul(2, 2), r.zero());
        assert_ne!(2, r.zero());
    }

    #[test]
    fn degree_one_quotient_is_base() {
        let z3 = FinRing::zn(3).unwrap();
        let r = FinRing::poly_quotient(&z3, &[0, 1]).unwrap();
        assert_eq!(r.order(), 3);
        assert_eq!(r, z3);
    }

    #[test]
    fn poly_quotient_rejects_bad_modulus() {
        let z4 = FinRing::zn(4).unwrap();
        assert!(FinRing::poly_quotient(&z4, &[1, 1, 2]).is_err());
        assert!(FinRing::poly_quotient(&z4, &[3]).is_err());
        assert!(FinRing::poly_quotient(&z4, &[]).is_err());
    }

    #[test]
    fn product_orders() {
        let z2 = FinRing::zn(2).unwrap();
        let z3 = FinRing::zn(3).unwrap();
        let p = FinRing::product(&z2, &z3).unwrap();
        assert_eq!(p.order(), 6);
        let z1 = FinRing::zn(1).unwrap();
        assert_eq!(FinRing::product(&z1, &z3).unwrap(), z3);
    }

    #[test]
    fn from_tables_rejects_broken_tables() {
        let z3 = FinRing::zn(3).unwrap();
        let add = z3.add_rows();
        let mut mul = z3.mul_rows();
        assert!(FinRing::from_tables("ok", 0, 1, &add, &mul).is_ok());
        mul[2][2] = 2;
        assert!(FinRing::from_tables("bad", 0, 1, &add, &mul).is_err());
        let mut add2 = add.clone();
        add2[1][1] = 0;
        assert!(FinRing::from_tables("bad", 0, 1, &add2, &z3.mul_rows()).is_err());
        assert!(FinRing::from_tables("bad", 0, 0, &add, &z3.mul_rows()).is_err());
        assert!(FinRing::from_tables("bad", 0, 1, &add[..2], &z3.mul_rows()).is_err());
    }

    #[test]
    fn idealization_squares_module_to_zero() {
        let z2 = Arc::new(FinRing::zn(2).unwrap());
        let e = FinModule::free(z2.clone(), 2).unwrap();
        let b = FinRing::idealization(&z2, &e).unwrap();
        assert_eq!(b.order(), 8);
        for x in 0..4u32 {
            for y in 0..4u32 {
                assert_eq!(b.mul(x, y), b.zero());
            }
        }
        let zero = FinModule::zero(z2.clone());
        assert_eq!(FinRing::idealization(&z2, &zero).unwrap(), *z2);
        let other = Arc::new(FinRing::zn(3).unwrap());
        let e3 = FinModule::free(other, 1).unwrap();
        assert!(FinRing::idealization(&z2, &e3).is_err());
    }

    #[test]
    fn decompose_z12() {
        let z12 = FinRing::zn(12).unwrap();
        let f = z12.decompose_local();
        let mut orders: Vec<usize> = f.iter().map(|x| x.ring.order()).collect();
        orders.sort();
        assert_eq!(orders, vec![3, 4]);
        let mut idem: Vec<u32> = f.iter().map(|x| x.idempotent).collect();
        idem.sort();
        assert_eq!(idem, vec![4, 9]);
    }

    #[test]
    fn decompose_local_ring_is_trivial() {
        let z8 = FinRing::zn(8).unwrap();
        let f = z8.decompose_local();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].ring, z8);
        let z2 = FinRing::zn(2).unwrap();
        let cube = FinRing::product(&FinRing::product(&z2, &z2).unwrap(), &z2).unwrap();
        let f = cube.decompose_local();
        assert_eq!(f.len(), 3);
        assert!(f.iter().all(|x| x.ring == z2));
    }

    #[test]
    fn canonical_map_is_bijective() {
        for n in [6usize, 12, 30, 36, 60] {
            let r = FinRing::zn(n).unwrap();
            let factors = r.decompose_local();
            let total: usize = factors.iter().map(|f| f.ring.order()).product();
            assert_eq!(total, n);
            let mut images: Vec<Vec<u32>> = r
                .elements()
                .map(|x| factors.iter().map(|f| f.project(&r, x)).collect())
                .collect();
            images.sort();
            images.dedup();
            assert_eq!(images.len(), n);
        }
    }

    #[test]
    fn special_primary_examples() {
        let z9 = FinRing::zn(9).unwrap();
        let sp = z9.is_special_primary().unwrap();
        assert!(sp.special_primary);
        assert_eq!(sp.maximal.unwrap().elements(), vec![0, 3, 6]);
        assert_eq!(sp.nilpotency, Some(2));

        let z2 = FinRing::zn(2).unwrap();
        let gf4 = FinRing::poly_quotient(&z2, &[1, 1, 1]).unwrap();
        let sp = gf4.is_special_primary().unwrap();
        assert!(sp.special_primary);
        assert_eq!(sp.nilpotency, Some(1));
        assert_eq!(sp.maximal.unwrap(), gf4.zero_ideal());

        let z2 = Arc::new(z2);
        let b = FinRing::idealization(&z2, &FinModule::free(z2.clone(), 2).unwrap()).unwrap();
        let sp = b.is_special_primary().unwrap();
        assert!(!sp.special_primary);
        assert_eq!(sp.nilpotency, Some(2));

        assert!(!FinRing::zn(6).unwrap().is_special_primary().unwrap().special_primary);
        assert!(!FinRing::zn(1).unwrap().is_special_primary().unwrap().special_primary);
    }

    #[test]
    fn special_primary_counts_ideals() {
        for n in 2..=64 {
            let r = FinRing::zn(n).unwrap();
            let sp = r.is_special_primary().unwrap();
            if sp.special_primary {
                assert_eq!(r.all_ideals().unwrap().len(), sp.nilpotency.unwrap() + 1, "Z/{n}");
            }
        }
    }

    #[test]
    fn module_constructors_verify() {
        let z4 = Arc::new(FinRing::zn(4).unwrap());
        FinModule::free(z4.clone(), 2).unwrap().verify().unwrap();
        let two = z4.generated_ideal(&[2]);
        let cyc = FinModule::cyclic(z4.clone(), &two).unwrap();
        cyc.verify().unwrap();
        assert_eq!(cyc.size(), 2);
        FinModule::direct_sum(&cyc, &cyc).unwrap().verify().unwrap();
    }
}
