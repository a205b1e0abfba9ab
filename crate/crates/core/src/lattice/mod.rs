//! Finite lattices given by their Hasse diagram.
//!
//! A [`FiniteLattice`] is built from a list of labels and a list of cover
//! pairs. Construction computes the order relation, checks that every pair of
//! elements has a unique join and meet, and caches both operation tables.
//! After that the value is immutable and every query is a table lookup.

mod construct;
mod enumerate;
mod io;
mod props;

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;
use thiserror::Error;

pub(crate) use construct::is_prime;
pub use enumerate::{unlabeled_lattices, OrderCode, MAX_ENUMERATED_SIZE};
pub use io::{parse_dot, DotParseError, LatticeSpec};
pub use props::{GradedResult, LengthBounds, DEFAULT_SUPERSOLVABLE_CAP};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("label `{0}` appears more than once")]
    DuplicateLabel(String),
    #[error("cover references unknown label `{0}`")]
    UnknownLabel(String),
    #[error("cover relation has a cycle through `{0}`")]
    CycleDetected(String),
    #[error("`{lower}` < `{upper}` is listed as a cover but `{via}` lies strictly between them")]
    RedundantCover {
        lower: String,
        upper: String,
        via: String,
    },
    #[error("`{a}` and `{b}` have no unique {op}")]
    NotALattice { a: String, b: String, op: &'static str },
    #[error("`{0}` is not below `{1}`")]
    NotComparable(String, String),
    #[error("lattice has {size} elements, over the cap of {cap}")]
    SizeLimitExceeded { size: usize, cap: usize },
    #[error("more than {0} maximal chains")]
    TooManyChains(usize),
}

/// Rank function of a graded lattice: rank of the bottom is zero and every
/// cover step adds exactly one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankFunction(Vec<usize>);

impl RankFunction {
    pub fn rank(&self, element: usize) -> usize {
        self.0[element]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// A strictly increasing sequence of elements of a lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    elements: Vec<usize>,
}

impl Chain {
    pub fn new(elements: Vec<usize>) -> Self {
        Chain { elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// Number of steps, one less than the number of elements.
    pub fn length(&self) -> usize {
        self.elements.len().saturating_sub(1)
    }

    pub fn contains(&self, element: usize) -> bool {
        self.elements.contains(&element)
    }

    /// Consecutive pairs of the chain.
    pub fn steps(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.elements.windows(2).map(|w| (w[0], w[1]))
    }

    /// True when the chain runs from `a` to `b` through cover steps only.
    pub fn is_maximal_in(&self, lattice: &FiniteLattice, a: usize, b: usize) -> bool {
        self.elements.first() == Some(&a)
            && self.elements.last() == Some(&b)
            && self.steps().all(|(x, y)| lattice.covers_pair(x, y))
    }
}

#[derive(Debug, Clone)]
pub struct FiniteLattice {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    covers: Vec<(usize, usize)>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    // up[a] = { b : a <= b }, down[a] = { b : b <= a }
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    join: Vec<u32>,
    meet: Vec<u32>,
    topo: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl PartialEq for FiniteLattice {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.covers == other.covers
    }
}

impl Eq for FiniteLattice {}

impl FiniteLattice {
    /// Builds a lattice from labels and `(lower, upper)` cover pairs given by
    /// label.
    pub fn build<S: AsRef<str>>(
        elements: &[S],
        covers: &[(S, S)],
    ) -> Result<Self, LatticeError> {
        let labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(LatticeError::DuplicateLabel(l.clone()));
            }
        }
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| LatticeError::UnknownLabel(s.as_ref().to_string()))
        };
        let pairs = covers
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>, LatticeError>>()?;
        Self::from_indexed(labels, pairs)
    }

    /// Builds a lattice from labels and cover pairs given by position.
    pub fn from_indexed(
        labels: Vec<String>,
        covers: Vec<(usize, usize)>,
    ) -> Result<Self, LatticeError> {
        let n = labels.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(LatticeError::DuplicateLabel(l.clone()));
            }
        }
        let mut seen = HashSet::new();
        let mut cover_list = Vec::with_capacity(covers.len());
        for (a, b) in covers {
            if a >= n || b >= n {
                return Err(LatticeError::UnknownLabel(format!("#{}", a.max(b))));
            }
            if a == b {
                return Err(LatticeError::CycleDetected(labels[a].clone()));
            }
            if seen.insert((a, b)) {
                cover_list.push((a, b));
            }
        }
        cover_list.sort_unstable();

        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for &(a, b) in &cover_list {
            upper[a].push(b);
            lower[b].push(a);
        }

        // Kahn's algorithm, smallest index first so the order is reproducible.
        let mut indegree: Vec<usize> = lower.iter().map(Vec::len).collect();
        let mut ready: std::collections::BTreeSet<usize> =
            (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(a) = ready.pop_first() {
            topo.push(a);
            for &b in &upper[a] {
                indegree[b] -= 1;
                if indegree[b] == 0 {
                    ready.insert(b);
                }
            }
        }
        if topo.len() != n {
            let stuck = (0..n).find(|&i| indegree[i] > 0).unwrap_or(0);
            return Err(LatticeError::CycleDetected(labels[stuck].clone()));
        }

        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &a in topo.iter().rev() {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(a);
            for &b in &upper[a] {
                set.union_with(&up[b]);
            }
            up[a] = set;
        }

        for &(a, b) in &cover_list {
            if let Some(&c) = upper[a].iter().find(|&&c| c != b && up[c].contains(b)) {
                return Err(LatticeError::RedundantCover {
                    lower: labels[a].clone(),
                    upper: labels[b].clone(),
                    via: labels[c].clone(),
                });
            }
        }

        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for a in 0..n {
            for b in up[a].ones() {
                down[b].insert(a);
            }
        }

        let join = bound_table(&up, &labels, "join")?;
        let meet = bound_table(&down, &labels, "meet")?;

        let bottom = (0..n).fold(0, |acc, x| meet[acc * n + x] as usize);
        let top = (0..n).fold(0, |acc, x| join[acc * n + x] as usize);

        Ok(FiniteLattice {
            labels,
            index,
            covers: cover_list,
            upper,
            lower,
            up,
            down,
            join,
            meet,
            topo,
            bottom,
            top,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, element: usize) -> &str {
        &self.labels[element]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Cover pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn upper_covers(&self, element: usize) -> &[usize] {
        &self.upper[element]
    }

    pub fn lower_covers(&self, element: usize) -> &[usize] {
        &self.lower[element]
    }

    pub fn covers_pair(&self, lower: usize, upper: usize) -> bool {
        self.upper[lower].binary_search(&upper).is_ok()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b] as usize
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b] as usize
    }

    pub fn join_all(&self, elements: impl IntoIterator<Item = usize>) -> usize {
        elements
            .into_iter()
            .fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Elements in a linear extension of the order (bottom first).
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn up_set(&self, element: usize) -> &FixedBitSet {
        &self.up[element]
    }

    pub fn down_set(&self, element: usize) -> &FixedBitSet {
        &self.down[element]
    }

    fn require_leq(&self, a: usize, b: usize) -> Result<(), LatticeError> {
        if self.leq(a, b) {
            Ok(())
        } else {
            Err(LatticeError::NotComparable(
                self.labels[a].clone(),
                self.labels[b].clone(),
            ))
        }
    }

    /// Members of the interval `[a, b]`, sorted by index.
    pub fn interval_members(&self, a: usize, b: usize) -> Result<Vec<usize>, LatticeError> {
        self.require_leq(a, b)?;
        let mut set = self.up[a].clone();
        set.intersect_with(&self.down[b]);
        Ok(set.ones().collect())
    }

    /// The interval `[a, b]` as a lattice in its own right, with the covers
    /// it inherits.
    pub fn interval(&self, a: usize, b: usize) -> Result<FiniteLattice, LatticeError> {
        let members = self.interval_members(a, b)?;
        let position: HashMap<usize, usize> =
            members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let covers = self
            .covers
            .iter()
            .filter_map(|(x, y)| Some((*position.get(x)?, *position.get(y)?)))
            .collect();
        let labels = members.iter().map(|&m| self.labels[m].clone()).collect();
        FiniteLattice::from_indexed(labels, covers)
    }

    /// Lattice on a subset of the elements with the induced order. The subset
    /// must be closed under join and meet for the result to be a lattice.
    pub fn induced_sublattice(&self, members: &[usize]) -> Result<FiniteLattice, LatticeError> {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        let mut covers = Vec::new();
        for &a in &members {
            for &b in &members {
                if a != b
                    && self.leq(a, b)
                    && !members
                        .iter()
                        .any(|&c| c != a && c != b && self.leq(a, c) && self.leq(c, b))
                {
                    let ia = members.binary_search(&a).unwrap();
                    let ib = members.binary_search(&b).unwrap();
                    covers.push((ia, ib));
                }
            }
        }
        let labels = members.iter().map(|&m| self.labels[m].clone()).collect();
        FiniteLattice::from_indexed(labels, covers)
    }

    /// Checks that `map` is an order isomorphism from `self` onto `other`.
    pub fn is_isomorphism(&self, other: &FiniteLattice, map: &[usize]) -> bool {
        if self.len() != other.len() || map.len() != self.len() {
            return false;
        }
        let mut hit = vec![false; other.len()];
        for &m in map {
            if m >= other.len() || std::mem::replace(&mut hit[m], true) {
                return false;
            }
        }
        (0..self.len()).all(|a| {
            (0..self.len()).all(|b| self.leq(a, b) == other.leq(map[a], map[b]))
        })
    }
}

fn bound_table(
    cones: &[FixedBitSet],
    labels: &[String],
    op: &'static str,
) -> Result<Vec<u32>, LatticeError> {
    let n = cones.len();
    let counts: Vec<usize> = cones.iter().map(|c| c.count_ones(..)).collect();
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        table[a * n + a] = a as u32;
        for b in (a + 1)..n {
            let mut common = cones[a].clone();
            common.intersect_with(&cones[b]);
            let size = common.count_ones(..);
            let bound = common
                .ones()
                .find(|&c| counts[c] == size)
                .ok_or_else(|| LatticeError::NotALattice {
                    a: labels[a].clone(),
                    b: labels[b].clone(),
                    op,
                })?;
            table[a * n + b] = bound as u32;
            table[b * n + a] = bound as u32;
        }
    }
    Ok(table)
}
