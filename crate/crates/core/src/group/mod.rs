//! Finite groups as Cayley tables, their subgroup lattices and
//! supersolvability.

use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::Hash;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::lattice::{FiniteLattice, LatticeError};

mod catalog;

pub use catalog::{catalog, CatalogEntry, GROUP_COUNTS};

/// Groups above this order are refused.
pub const DEFAULT_GROUP_BOUND: usize = 48;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("group of order {order} exceeds the bound {bound}")]
    SizeLimitExceeded { order: usize, bound: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Permutation generators on `points` points, images 1-indexed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub points: usize,
    pub generators: Vec<Vec<usize>>,
}

impl GroupSpec {
    pub fn build(&self, bound: usize) -> Result<FiniteGroup, GroupError> {
        FiniteGroup::from_permutations(self.points, &self.generators, bound)
    }
}

pub type Subgroup = FixedBitSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u16>,
    identity: usize,
    inverse: Vec<u16>,
}

impl FiniteGroup {
    /// Closure of `generators` under `mul`; element 0 is `identity`.
    pub fn from_closure<T: Clone + Eq + Hash>(
        identity: T,
        generators: &[T],
        mul: impl Fn(&T, &T) -> T,
        bound: usize,
    ) -> Result<Self, GroupError> {
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let x = mul(&elements[i], g);
                if !index.contains_key(&x) {
                    if elements.len() == bound {
                        return Err(GroupError::SizeLimitExceeded {
                            order: bound + 1,
                            bound,
                        });
                    }
                    index.insert(x.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(x);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&mul(&elements[a], &elements[b])] as u16;
            }
        }
        Ok(Self::from_table_unchecked(n, table))
    }

    fn from_table_unchecked(order: usize, table: Vec<u16>) -> Self {
        let identity = 0;
        let inverse = (0..order)
            .map(|a| (0..order).find(|&b| table[a * order + b] as usize == identity).expect("inverse") as u16)
            .collect();
        FiniteGroup {
            order,
            table,
            identity,
            inverse,
        }
    }

    /// Group generated by permutations of `1..=points`.
    pub fn from_permutations(points: usize, generators: &[Vec<usize>], bound: usize) -> Result<Self, GroupError> {
        let mut perms = Vec::with_capacity(generators.len());
        for g in generators {
            if g.len() != points {
                return Err(GroupError::InvalidPermutation(format!("{g:?} does not act on {points} points")));
            }
            let mut seen = vec![false; points];
            let mut p = Vec::with_capacity(points);
            for &x in g {
                if x == 0 || x > points || std::mem::replace(&mut seen[x - 1], true) {
                    return Err(GroupError::InvalidPermutation(format!("{g:?} is not a permutation")));
                }
                p.push((x - 1) as u8);
            }
            perms.push(p);
        }
        let identity: Vec<u8> = (0..points as u8).collect();
        // Apply `a` then `b`.
        Self::from_closure(identity, &perms, |a, b| a.iter().map(|&x| b[x as usize]).collect(), bound)
    }

    /// Direct product with elements `(a, b)` at index `a * |H| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order, other.order);
        let mut table = vec![0u16; n * m * n * m];
        for x in 0..n * m {
            for y in 0..n * m {
                let a = self.mul(x / m, y / m);
                let b = other.mul(x % m, y % m);
                table[x * n * m + y] = (a * m + b) as u16;
            }
        }
        Self::from_table_unchecked(n * m, table)
    }

    /// `N ⋊ C_k` where the generator of `C_k` acts on `N` by the automorphism
    /// `action` (a permutation of the elements of `N` with `action^k = 1`).
    pub fn semidirect_cyclic(normal: &FiniteGroup, action: &[usize], k: usize) -> FiniteGroup {
        let n = normal.order;
        let mut powers = vec![(0..n).collect::<Vec<usize>>()];
        for i in 1..k {
            powers.push(powers[i - 1].iter().map(|&x| action[x]).collect());
        }
        debug_assert!((0..n).all(|x| action[powers[k - 1][x]] == x), "action order divides k");
        let mut table = vec![0u16; n * k * n * k];
        for x in 0..n * k {
            let (a, i) = (x / k, x % k);
            for y in 0..n * k {
                let (b, j) = (y / k, y % k);
                let c = normal.mul(a, powers[i][b]);
                table[x * n * k + y] = (c * k + (i + j) % k) as u16;
            }
        }
        Self::from_table_unchecked(n * k, table)
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u16).collect();
        Self::from_table_unchecked(n, table)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn full(&self) -> Subgroup {
        let mut s = FixedBitSet::with_capacity(self.order);
        s.insert_range(..);
        s
    }

    pub fn trivial(&self) -> Subgroup {
        let mut s = FixedBitSet::with_capacity(self.order);
        s.insert(self.identity);
        s
    }

    /// Subgroup generated by `base` and `extra`.
    pub fn generate(&self, base: &Subgroup, extra: impl IntoIterator<Item = usize>) -> Subgroup {
        let mut set = base.clone();
        set.insert(self.identity);
        let mut gens: Vec<usize> = base.ones().collect();
        for x in extra {
            if !set.contains(x) {
                gens.push(x);
            }
        }
        let mut queue: Vec<usize> = set.ones().collect();
        for &g in &gens {
            if !set.contains(g) {
                set.insert(g);
                queue.push(g);
            }
        }
        while let Some(x) = queue.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !set.contains(y) {
                    set.insert(y);
                    queue.push(y);
                }
            }
        }
        set
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        (0..self.order).all(|g| {
            let gi = self.inv(g);
            h.ones().all(|x| h.contains(self.mul(self.mul(g, x), gi)))
        })
    }

    /// All subgroups, sorted by order and then by element list.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let start = self.trivial();
        let mut found: HashSet<Subgroup> = HashSet::from([start.clone()]);
        let mut queue = vec![start];
        while let Some(h) = queue.pop() {
            for x in 0..self.order {
                if !h.contains(x) {
                    let k = self.generate(&h, [x]);
                    if found.insert(k.clone()) {
                        queue.push(k);
                    }
                }
            }
        }
        let mut out: Vec<Subgroup> = found.into_iter().collect();
        out.sort_by_cached_key(|s| (s.count_ones(..), s.ones().collect::<Vec<_>>()));
        out
    }

    /// Subgroups ordered by inclusion; element `i` is labelled `H{i}`.
    pub fn subgroup_lattice(&self) -> Result<FiniteLattice, GroupError> {
        let subs = self.subgroups();
        let n = subs.len();
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b
                    && subs[a].is_subset(&subs[b])
                    && !(0..n).any(|c| c != a && c != b && subs[a].is_subset(&subs[c]) && subs[c].is_subset(&subs[b]))
                {
                    covers.push((a, b));
                }
            }
        }
        let labels = (0..n).map(|i| format!("H{i}")).collect();
        Ok(FiniteLattice::from_indexed(labels, covers)?)
    }

    /// Some chain `1 = G_r ⊂ … ⊂ G_0 = G` of subgroups normal in `G` has
    /// cyclic factors. Searched downward from `G` with memoization.
    pub fn is_supersolvable(&self) -> bool {
        let normal: Vec<Subgroup> = self.subgroups().into_iter().filter(|h| self.is_normal(h)).collect();
        let mut memo: HashMap<usize, bool> = HashMap::new();
        let top = normal.len() - 1;
        self.descends(top, &normal, &mut memo)
    }

    fn descends(&self, k: usize, normal: &[Subgroup], memo: &mut HashMap<usize, bool>) -> bool {
        if normal[k].count_ones(..) == 1 {
            return true;
        }
        if let Some(&v) = memo.get(&k) {
            return v;
        }
        let result = (0..normal.len()).any(|n| {
            n != k
                && normal[n].is_subset(&normal[k])
                && normal[k].ones().any(|x| self.generate(&normal[n], [x]) == normal[k])
                && self.descends(n, normal, memo)
        });
        memo.insert(k, result);
        result
    }

    pub fn center(&self) -> Subgroup {
        let mut z = FixedBitSet::with_capacity(self.order);
        for a in 0..self.order {
            if (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)) {
                z.insert(a);
            }
        }
        z
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let commutators: Vec<usize> = (0..self.order)
            .flat_map(|a| {
                (0..self.order).map(move |b| (a, b))
            })
            .map(|(a, b)| self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b))))
            .collect();
        self.generate(&self.trivial(), commutators)
    }
}

/// Comparison of group supersolvability with the subgroup lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupersolvabilityReport {
    pub order: usize,
    pub subgroups: usize,
    pub supersolvable_group: bool,
    pub graded: bool,
    pub dual_graded: bool,
    pub length: usize,
    /// Lattice supersolvability, when the lattice is within the cap.
    pub supersolvable_lattice: Option<bool>,
    pub left_modular: bool,
    pub holds: bool,
}

/// The group is supersolvable iff its subgroup lattice is graded iff (within
/// `cap`) that lattice is supersolvable, which in turn matches graded and left
/// modular. The dual lattice has the same gradedness.
pub fn supersolvable_iff_graded(group: &FiniteGroup, cap: usize) -> Result<SupersolvabilityReport, GroupError> {
    let lattice = group.subgroup_lattice()?;
    let supersolvable_group = group.is_supersolvable();
    let graded = lattice.is_graded().graded;
    let dual_graded = lattice.dual().is_graded().graded;
    let left_modular = lattice.is_left_modular_lattice();
    let supersolvable_lattice = match lattice.is_supersolvable(cap) {
        Ok(v) => Some(v),
        Err(LatticeError::SizeLimitExceeded { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let holds = supersolvable_group == graded
        && dual_graded == graded
        && supersolvable_lattice.is_none_or(|s| s == graded && s == (graded && left_modular));
    Ok(SupersolvabilityReport {
        order: group.order(),
        subgroups: lattice.len(),
        supersolvable_group,
        graded,
        dual_graded,
        length: lattice.height(),
        supersolvable_lattice,
        left_modular,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::from_permutations(3, &[vec![2, 1, 3], vec![2, 3, 1]], 48).unwrap()
    }

    fn s4() -> FiniteGroup {
        GroupSpec {
            points: 4,
            generators: vec![vec![2, 1, 3, 4], vec![2, 3, 4, 1]],
        }
        .build(48)
        .unwrap()
    }

    #[test]
    fn cyclic_twelve_is_the_divisor_lattice() {
        let g = FiniteGroup::cyclic(12);
        let l = g.subgroup_lattice().unwrap();
        assert_eq!(l.len(), 6);
        assert_eq!(l.height(), 3);
        assert!(l.is_distributive());
        let r = supersolvable_iff_graded(&g, 64).unwrap();
        assert!(r.holds && r.supersolvable_group && r.graded);
    }

    #[test]
    fn symmetric_groups() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert_eq!(g.subgroups().len(), 6);
        assert!(g.is_supersolvable());
        assert!(g.subgroup_lattice().unwrap().is_graded().graded);

        let g = s4();
        assert_eq!(g.order(), 24);
        assert_eq!(g.subgroups().len(), 30);
        let r = supersolvable_iff_graded(&g, 64).unwrap();
        assert!(!r.supersolvable_group && !r.graded && r.holds);
    }

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::cyclic(1);
        assert_eq!(g.subgroup_lattice().unwrap().len(), 1);
        assert!(g.is_supersolvable());
    }

    #[test]
    fn bad_generators() {
        assert!(matches!(
            FiniteGroup::from_permutations(3, &[vec![1, 1, 2]], 48),
            Err(GroupError::InvalidPermutation(_))
        ));
        assert!(matches!(
            FiniteGroup::from_permutations(5, &[vec![2, 1, 3, 4, 5], vec![2, 3, 4, 5, 1]], 48),
            Err(GroupError::SizeLimitExceeded { .. })
        ));
    }

    #[test]
    fn semidirect_gives_dihedral() {
        let c4 = FiniteGroup::cyclic(4);
        let inversion: Vec<usize> = (0..4).map(|x| c4.inv(x)).collect();
        let d4 = FiniteGroup::semidirect_cyclic(&c4, &inversion, 2);
        assert_eq!(d4.order(), 8);
        assert!(!d4.is_abelian());
        assert_eq!(d4.center().count_ones(..), 2);
        assert_eq!(d4.subgroups().len(), 10);
    }
}
