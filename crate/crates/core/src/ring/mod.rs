//! Finite commutative unital rings stored as full addition and
//! multiplication tables over element indices.
//!
//! Subsets of a ring (subrings, ideals) are [`ElementSet`] bitsets indexed
//! by element. Everything that the analysis layer needs, including the
//! structure of a subring `T` seen from inside the ambient ring, is computed
//! on these sets without building a separate ring.

use fixedbitset::FixedBitSet;

mod construct;
mod enumerate;
mod extension;
mod module;
mod spec;

pub use construct::RingBuilder;
pub use enumerate::SubringLattice;
pub use extension::{ResidueExtension, ResidueField, RingExtension};
pub use module::Module;
pub use spec::{ExtensionSpec, ModuleSpec, RingSpec};

pub type ElementSet = FixedBitSet;

pub const DEFAULT_RING_CAP: usize = 256;
/// Indices are stored as `u16`, and tables hold `order²` entries.
pub const MAX_RING_ORDER: usize = 4096;
/// Exhaustive triple checks of the axioms run up to this order.
pub const AXIOM_CHECK_LIMIT: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("polynomial {poly:?} is not irreducible over F_{p}")]
    NotIrreducible { poly: Vec<u32>, p: u32 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("ring of order {order} exceeds the cap of {cap}")]
    TooLarge { order: u128, cap: usize },
    #[error("ring axiom violated: {0}")]
    AxiomViolation(String),
    #[error("invalid ring specification: {0}")]
    InvalidSpec(String),
    #[error("not a module: {0}")]
    NotAModule(String),
    #[error("subset is not an ideal")]
    NotAnIdeal,
    #[error("quotient by the unit ideal is the zero ring")]
    UnitIdeal,
    #[error("ideal is not maximal")]
    NotMaximal,
    #[error("subset is not a subring")]
    NotASubring,
    #[error("not an injective unital ring homomorphism: {0}")]
    NotAHomomorphism(String),
}

#[derive(Debug, Clone)]
pub struct FiniteCommRing {
    order: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    zero: usize,
    one: usize,
    names: Vec<String>,
    recipe: String,
    nilpotent: FixedBitSet,
    characteristic: usize,
}

/// Equality of tables and distinguished elements; names are ignored.
impl PartialEq for FiniteCommRing {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.zero == other.zero
            && self.one == other.one
            && self.add == other.add
            && self.mul == other.mul
    }
}

impl Eq for FiniteCommRing {}

impl FiniteCommRing {
    /// Validates raw tables (`order²` entries each, row-major) and computes
    /// the derived data. Axioms are checked on all triples up to
    /// [`AXIOM_CHECK_LIMIT`]; above that only identities and commutativity.
    pub(crate) fn from_raw(
        order: usize,
        add: Vec<u16>,
        mul: Vec<u16>,
        zero: usize,
        one: usize,
        names: Vec<String>,
        recipe: String,
    ) -> Result<Self, RingError> {
        let bad = |msg: String| Err(RingError::AxiomViolation(msg));
        if order < 2 {
            return bad("a ring needs 0 != 1".into());
        }
        if order > MAX_RING_ORDER {
            return Err(RingError::TooLarge {
                order: order as u128,
                cap: MAX_RING_ORDER,
            });
        }
        if add.len() != order * order || mul.len() != order * order || names.len() != order {
            return bad("table dimensions do not match the order".into());
        }
        if add.iter().chain(&mul).any(|&v| v as usize >= order) {
            return bad("table entry out of range".into());
        }
        if zero >= order || one >= order || zero == one {
            return bad("zero and one must be distinct elements".into());
        }
        let mut neg = vec![0u16; order];
        for a in 0..order {
            match (0..order).find(|&b| add[a * order + b] as usize == zero) {
                Some(b) => neg[a] = b as u16,
                None => return bad(format!("element {a} has no additive inverse")),
            }
        }
        let mut ring = FiniteCommRing {
            order,
            add,
            mul,
            neg,
            zero,
            one,
            names,
            recipe,
            nilpotent: FixedBitSet::with_capacity(order),
            characteristic: 0,
        };
        ring.check_axioms()?;
        ring.characteristic = {
            let mut k = 1;
            let mut x = one;
            while x != zero {
                x = ring.add(x, one);
                k += 1;
            }
            k
        };
        for x in 0..order {
            if ring.pow(x, order as u64) == zero {
                ring.nilpotent.insert(x);
            }
        }
        Ok(ring)
    }

    fn check_axioms(&self) -> Result<(), RingError> {
        let n = self.order;
        let fail = |what: &str, a: usize, b: usize, c: usize| {
            Err(RingError::AxiomViolation(format!(
                "{what} fails at ({}, {}, {})",
                self.names[a], self.names[b], self.names[c]
            )))
        };
        for a in 0..n {
            if self.add(a, self.zero) != a {
                return fail("additive identity", a, a, a);
            }
            if self.mul(a, self.one) != a {
                return fail("multiplicative identity", a, a, a);
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return fail("additive commutativity", a, b, b);
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return fail("multiplicative commutativity", a, b, b);
                }
            }
        }
        if n > AXIOM_CHECK_LIMIT {
            return Ok(());
        }
        for a in 0..n {
            for b in 0..n {
                let ab_sum = self.add(a, b);
                let ab_prod = self.mul(a, b);
                for c in 0..n {
                    if self.add(ab_sum, c) != self.add(a, self.add(b, c)) {
                        return fail("additive associativity", a, b, c);
                    }
                    if self.mul(ab_prod, c) != self.mul(a, self.mul(b, c)) {
                        return fail("multiplicative associativity", a, b, c);
                    }
                    if self.mul(a, self.add(b, c)) != self.add(ab_prod, self.mul(a, c)) {
                        return fail("distributivity", a, b, c);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: usize, mut e: u64) -> usize {
        let mut acc = self.one;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `k · 1`, reduced by the characteristic.
    pub fn integer(&self, k: usize) -> usize {
        (0..k % self.characteristic).fold(self.zero, |acc, _| self.add(acc, self.one))
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Human-readable description of how the ring was built.
    pub fn recipe(&self) -> &str {
        &self.recipe
    }

    pub(crate) fn with_recipe(mut self, recipe: impl Into<String>) -> Self {
        self.recipe = recipe.into();
        self
    }

    pub fn characteristic(&self) -> usize {
        self.characteristic
    }

    pub fn is_nilpotent(&self, a: usize) -> bool {
        self.nilpotent.contains(a)
    }

    pub fn add_table(&self) -> &[u16] {
        &self.add
    }

    pub fn mul_table(&self) -> &[u16] {
        &self.mul
    }

    pub fn empty_set(&self) -> ElementSet {
        FixedBitSet::with_capacity(self.order)
    }

    pub fn full_set(&self) -> ElementSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    pub fn set_of(&self, elements: impl IntoIterator<Item = usize>) -> ElementSet {
        let mut s = self.empty_set();
        s.extend(elements);
        s
    }

    /// Closed under `+`, `×` and contains `1`. Negatives follow from
    /// additive closure in a finite group.
    pub fn is_subring(&self, set: &ElementSet) -> bool {
        if !set.contains(self.one) {
            return false;
        }
        let members: Vec<usize> = set.ones().collect();
        members.iter().all(|&a| {
            members
                .iter()
                .all(|&b| set.contains(self.add(a, b)) && set.contains(self.mul(a, b)))
        })
    }

    /// Smallest subring containing `seed`.
    pub fn close(&self, seed: &ElementSet) -> ElementSet {
        let mut base = self.empty_set();
        base.insert(self.zero);
        let mut extra: Vec<usize> = seed.ones().collect();
        extra.push(self.one);
        self.close_with(base, extra)
    }

    /// Smallest subring containing the subring `base` and `extra`.
    pub fn close_over(&self, base: &ElementSet, extra: impl IntoIterator<Item = usize>) -> ElementSet {
        self.close_with(base.clone(), extra.into_iter().collect())
    }

    // `set` must already be closed under `+` and `×`. Each pair is combined
    // once, when the later of its two members is dequeued.
    fn close_with(&self, mut set: ElementSet, queue: Vec<usize>) -> ElementSet {
        let mut members: Vec<usize> = set.ones().collect();
        let mut queue: Vec<usize> = queue.into_iter().filter(|&x| !set.contains(x)).collect();
        for &x in &queue {
            set.insert(x);
        }
        while let Some(x) = queue.pop() {
            members.push(x);
            let mut i = 0;
            while i < members.len() {
                let y = members[i];
                for z in [self.add(x, y), self.mul(x, y)] {
                    if !set.contains(z) {
                        set.insert(z);
                        queue.push(z);
                    }
                }
                i += 1;
            }
        }
        set
    }

    /// Ideal of the subring `within` generated by `gens`.
    pub fn ideal_generated(&self, within: &ElementSet, gens: impl IntoIterator<Item = usize>) -> ElementSet {
        let gens: Vec<usize> = gens.into_iter().collect();
        let mut set = self.empty_set();
        set.insert(self.zero);
        let mut queue = Vec::new();
        for t in within.ones() {
            for &g in &gens {
                let p = self.mul(t, g);
                if !set.contains(p) {
                    set.insert(p);
                    queue.push(p);
                }
            }
        }
        let mut members = vec![self.zero];
        while let Some(x) = queue.pop() {
            members.push(x);
            let mut i = 0;
            while i < members.len() {
                let z = self.add(x, members[i]);
                if !set.contains(z) {
                    set.insert(z);
                    queue.push(z);
                }
                i += 1;
            }
        }
        set
    }

    pub fn is_ideal(&self, within: &ElementSet, set: &ElementSet) -> bool {
        if !set.is_subset(within) || !set.contains(self.zero) {
            return false;
        }
        let members: Vec<usize> = set.ones().collect();
        members.iter().all(|&a| {
            members.iter().all(|&b| set.contains(self.add(a, b)))
                && within.ones().all(|t| set.contains(self.mul(a, t)))
        })
    }

    /// Whether every product `a·b` with `a ∈ x`, `b ∈ y` lies in `target`.
    pub fn products_within(&self, x: &ElementSet, y: &ElementSet, target: &ElementSet) -> bool {
        x.ones().all(|a| y.ones().all(|b| target.contains(self.mul(a, b))))
    }

    /// `{x e : x ∈ set}`.
    pub fn scale(&self, set: &ElementSet, e: usize) -> ElementSet {
        self.set_of(set.ones().map(|x| self.mul(x, e)))
    }

    pub fn idempotents(&self, within: &ElementSet) -> Vec<usize> {
        within.ones().filter(|&e| self.mul(e, e) == e).collect()
    }

    /// Minimal nonzero idempotents of the subring `within`, one per local
    /// factor, in increasing index order.
    pub fn primitive_idempotents(&self, within: &ElementSet) -> Vec<usize> {
        let ids: Vec<usize> = self
            .idempotents(within)
            .into_iter()
            .filter(|&e| e != self.zero)
            .collect();
        ids.iter()
            .copied()
            .filter(|&e| !ids.iter().any(|&f| f != e && self.mul(e, f) == f))
            .collect()
    }

    /// Maximal ideals of the subring `within`, paired with the primitive
    /// idempotent of the local factor each one lives over. The ideal for `e`
    /// is `{x : x e nilpotent}`.
    pub fn maximal_ideals_with_idempotents(&self, within: &ElementSet) -> Vec<(usize, ElementSet)> {
        self.primitive_idempotents(within)
            .into_iter()
            .map(|e| {
                let m = self.set_of(within.ones().filter(|&x| self.is_nilpotent(self.mul(x, e))));
                (e, m)
            })
            .collect()
    }

    pub fn maximal_ideals(&self, within: &ElementSet) -> Vec<ElementSet> {
        self.maximal_ideals_with_idempotents(within)
            .into_iter()
            .map(|(_, m)| m)
            .collect()
    }

    pub fn is_local(&self, within: &ElementSet) -> bool {
        self.primitive_idempotents(within).len() == 1
    }

    /// Every nonzero element of `within` is a unit of `within`.
    pub fn is_field(&self, within: &ElementSet) -> bool {
        within.ones().filter(|&x| x != self.zero).all(|x| {
            within.ones().any(|y| self.mul(x, y) == self.one)
        })
    }

    /// `(t : v) = {x ∈ v : x v ⊆ t}`, the largest ideal of `v` inside `t`.
    pub fn conductor(&self, t: &ElementSet, v: &ElementSet) -> ElementSet {
        self.set_of(v.ones().filter(|&x| v.ones().all(|y| t.contains(self.mul(x, y)))))
    }

    /// Quotient by an ideal of the whole ring, with the projection. Cosets are
    /// numbered by their least element.
    pub fn quotient_by(&self, ideal: &ElementSet) -> Result<(FiniteCommRing, Vec<usize>), RingError> {
        if !self.is_ideal(&self.full_set(), ideal) {
            return Err(RingError::NotAnIdeal);
        }
        if ideal.contains(self.one) {
            return Err(RingError::UnitIdeal);
        }
        let mut class = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if class[x] == usize::MAX {
                for i in ideal.ones() {
                    class[self.add(x, i)] = reps.len();
                }
                reps.push(x);
            }
        }
        let m = reps.len();
        let mut add = Vec::with_capacity(m * m);
        let mut mul = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                add.push(class[self.add(a, b)] as u16);
                mul.push(class[self.mul(a, b)] as u16);
            }
        }
        let names = reps.iter().map(|&r| self.names[r].clone()).collect();
        let ring = FiniteCommRing::from_raw(
            m,
            add,
            mul,
            class[self.zero],
            class[self.one],
            names,
            format!("{}/I", self.recipe),
        )?;
        Ok((ring, class))
    }

    /// The subring (or, with `one` another idempotent, the ideal-ring `Re`)
    /// on `members` as a standalone ring. Returns the ring and the index
    /// map from new elements to old ones.
    pub fn restrict(
        &self,
        members: &ElementSet,
        one: usize,
        recipe: impl Into<String>,
    ) -> Result<(FiniteCommRing, Vec<usize>), RingError> {
        let old: Vec<usize> = members.ones().collect();
        let mut new_of = vec![usize::MAX; self.order];
        for (i, &x) in old.iter().enumerate() {
            new_of[x] = i;
        }
        let m = old.len();
        let mut add = Vec::with_capacity(m * m);
        let mut mul = Vec::with_capacity(m * m);
        for &a in &old {
            for &b in &old {
                let (s, p) = (new_of[self.add(a, b)], new_of[self.mul(a, b)]);
                if s == usize::MAX || p == usize::MAX {
                    return Err(RingError::NotASubring);
                }
                add.push(s as u16);
                mul.push(p as u16);
            }
        }
        if new_of[self.zero] == usize::MAX || new_of[one] == usize::MAX {
            return Err(RingError::NotASubring);
        }
        let names = old.iter().map(|&x| self.names[x].clone()).collect();
        let ring = FiniteCommRing::from_raw(m, add, mul, new_of[self.zero], new_of[one], names, recipe.into())
            .map_err(|_| RingError::NotASubring)?;
        Ok((ring, old))
    }

    pub fn format_set(&self, set: &ElementSet) -> String {
        let parts: Vec<&str> = set.ones().map(|x| self.name(x)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod4_structure() {
        let r = FiniteCommRing::zmod(4).unwrap();
        assert_eq!(r.order(), 4);
        assert_eq!(r.characteristic(), 4);
        let max = r.maximal_ideals(&r.full_set());
        assert_eq!(max, vec![r.set_of([0, 2])]);
        assert!(r.is_nilpotent(2));
        assert!(!r.is_nilpotent(3));
    }

    #[test]
    fn f4_is_a_field_with_zero_maximal_ideal() {
        let f4 = FiniteCommRing::gf(2, &[1, 1, 1]).unwrap();
        assert_eq!(f4.order(), 4);
        assert!(f4.is_field(&f4.full_set()));
        assert_eq!(f4.maximal_ideals(&f4.full_set()), vec![f4.set_of([0])]);
    }

    #[test]
    fn product_has_one_maximal_ideal_per_factor() {
        let f2 = FiniteCommRing::zmod(2).unwrap();
        let f4 = FiniteCommRing::gf(2, &[1, 1, 1]).unwrap();
        let s = FiniteCommRing::product(&[&f2, &f4]).unwrap();
        assert_eq!(s.order(), 8);
        let max = s.maximal_ideals(&s.full_set());
        assert_eq!(max.len(), 2);
        let mut sizes: Vec<usize> = max.iter().map(|m| m.count_ones(..)).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 4]);
    }

    #[test]
    fn closure_of_primitive_element_is_whole_field() {
        let f4 = FiniteCommRing::gf(2, &[1, 1, 1]).unwrap();
        let x = f4.index_of("x").unwrap();
        assert_eq!(f4.close(&f4.set_of([x])), f4.full_set());
        let prime = f4.close(&f4.empty_set());
        assert_eq!(prime.count_ones(..), 2);
    }

    #[test]
    fn conductor_examples() {
        let f4 = FiniteCommRing::gf(2, &[1, 1, 1]).unwrap();
        let prime = f4.close(&f4.empty_set());
        assert_eq!(f4.conductor(&prime, &f4.full_set()), f4.set_of([0]));
        assert_eq!(f4.conductor(&prime, &prime), prime);
    }

    #[test]
    fn bad_tables_are_rejected() {
        // Z/2 addition with the multiplication of a non-ring: 1·1 = 0.
        let err = RingBuilder::default()
            .from_tables(&[vec![0, 1], vec![1, 0]], &[vec![0, 0], vec![0, 0]], 0, 1)
            .unwrap_err();
        assert!(matches!(err, RingError::AxiomViolation(_)));
    }

    #[test]
    fn quotient_of_z8_by_4() {
        let r = FiniteCommRing::zmod(8).unwrap();
        let i = r.ideal_generated(&r.full_set(), [4]);
        assert_eq!(i, r.set_of([0, 4]));
        let (q, proj) = r.quotient_by(&i).unwrap();
        assert_eq!(q, FiniteCommRing::zmod(4).unwrap());
        assert_eq!(proj[5], 1);
        assert_eq!(r.quotient_by(&r.full_set()).unwrap_err(), RingError::UnitIdeal);
    }
}
