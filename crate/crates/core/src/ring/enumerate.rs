use std::collections::{HashMap, HashSet, VecDeque};

use super::{ElementSet, FiniteCommRing, RingError, RingExtension};
use crate::lattice::{FiniteLattice, LatticeError};

/// All subrings between two subrings of one ring, as a lattice.
///
/// Members are sorted by size, then by their sorted element lists; member
/// `i` is lattice element `i` and is labelled `T{i}`.
#[derive(Debug, Clone)]
pub struct SubringLattice {
    members: Vec<ElementSet>,
    lattice: FiniteLattice,
}

fn canonical_key(set: &ElementSet) -> (usize, Vec<usize>) {
    (set.count_ones(..), set.ones().collect())
}

impl SubringLattice {
    /// Breadth-first search from `lower`: every cover of `T` is `T[s]` for
    /// any `s` in the cover outside `T`, so the covers of `T` are the
    /// minimal sets among the one-step extensions `T[s]`, `s ∈ upper \ T`.
    pub fn between(ring: &FiniteCommRing, lower: &ElementSet, upper: &ElementSet) -> Result<Self, RingError> {
        if !ring.is_subring(lower) || !ring.is_subring(upper) || !lower.is_subset(upper) {
            return Err(RingError::NotASubring);
        }
        let mut found: Vec<ElementSet> = vec![lower.clone()];
        let mut index: HashMap<ElementSet, usize> = HashMap::from([(lower.clone(), 0)]);
        let mut covers: Vec<(usize, usize)> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let t = found[i].clone();
            let mut steps: Vec<ElementSet> = Vec::new();
            let mut seen: HashSet<ElementSet> = HashSet::new();
            for s in upper.difference(&t) {
                let u = ring.close_over(&t, [s]);
                if seen.insert(u.clone()) {
                    steps.push(u);
                }
            }
            let minimal: Vec<&ElementSet> = steps
                .iter()
                .filter(|u| !steps.iter().any(|w| w != *u && w.is_subset(u)))
                .collect();
            for u in minimal {
                let j = *index.entry(u.clone()).or_insert_with(|| {
                    found.push(u.clone());
                    queue.push_back(found.len() - 1);
                    found.len() - 1
                });
                covers.push((i, j));
            }
        }
        let mut order: Vec<usize> = (0..found.len()).collect();
        order.sort_by_cached_key(|&i| canonical_key(&found[i]));
        let mut rank = vec![0; found.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let members: Vec<ElementSet> = order.iter().map(|&i| found[i].clone()).collect();
        let covers = covers.into_iter().map(|(a, b)| (rank[a], rank[b])).collect();
        let labels = (0..members.len()).map(|i| format!("T{i}")).collect();
        let lattice = FiniteLattice::from_indexed(labels, covers).map_err(lattice_error)?;
        Ok(SubringLattice { members, lattice })
    }

    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &ElementSet {
        &self.members[i]
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, set: &ElementSet) -> Option<usize> {
        self.members
            .binary_search_by_key(&canonical_key(set), canonical_key)
            .ok()
    }

    /// Lattice meets are intersections and joins are generated subrings.
    pub fn operations_agree(&self, ring: &FiniteCommRing) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (a..n).all(|b| {
                let (x, y) = (&self.members[a], &self.members[b]);
                let mut inter = x.clone();
                inter.intersect_with(y);
                let joined = ring.close_over(x, y.ones());
                self.index_of(&inter) == Some(self.lattice.meet(a, b))
                    && self.index_of(&joined) == Some(self.lattice.join(a, b))
            })
        })
    }
}

fn lattice_error(e: LatticeError) -> RingError {
    RingError::InvalidSpec(format!("intermediate subrings failed lattice validation: {e}"))
}

impl RingExtension {
    /// `[R, S]` for `|S| ≤ cap`.
    pub fn enumerate_interval(&self, cap: usize) -> Result<SubringLattice, RingError> {
        if self.top().order() > cap {
            return Err(RingError::TooLarge {
                order: self.top().order() as u128,
                cap,
            });
        }
        SubringLattice::between(self.top(), self.base_set(), &self.top().full_set())
    }
}

impl FiniteCommRing {
    /// All ideals of the subring `within`, sorted like subring lattices.
    pub fn ideals(&self, within: &ElementSet) -> Vec<ElementSet> {
        let zero = self.set_of([self.zero()]);
        let mut found: HashSet<ElementSet> = HashSet::from([zero.clone()]);
        let mut queue = vec![zero];
        while let Some(i) = queue.pop() {
            for x in within.difference(&i) {
                let j = self.ideal_generated(within, i.ones().chain([x]));
                if found.insert(j.clone()) {
                    queue.push(j);
                }
            }
        }
        let mut out: Vec<ElementSet> = found.into_iter().collect();
        out.sort_by_cached_key(canonical_key);
        out
    }
}
