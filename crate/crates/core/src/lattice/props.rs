use fixedbitset::FixedBitSet;

use super::{Chain, FiniteLattice, LatticeError, RankFunction};

/// Lattices above this size are refused by [`FiniteLattice::is_supersolvable`].
pub const DEFAULT_SUPERSOLVABLE_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedResult {
    pub graded: bool,
    pub rank: Option<RankFunction>,
}

/// Shortest and longest maximal chain in an interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct LengthBounds {
    pub min: usize,
    pub max: usize,
}

impl LengthBounds {
    pub fn is_graded(&self) -> bool {
        self.min == self.max
    }
}

impl FiniteLattice {
    /// Decides gradedness by propagating ranks upward from the bottom along
    /// covers; a conflict means two maximal chains of some `[bottom, x]`
    /// differ in length.
    pub fn is_graded(&self) -> GradedResult {
        let mut rank: Vec<Option<usize>> = vec![None; self.len()];
        rank[self.bottom] = Some(0);
        for &a in &self.topo {
            let Some(r) = rank[a] else { continue };
            for &b in &self.upper[a] {
                match rank[b] {
                    None => rank[b] = Some(r + 1),
                    Some(rb) if rb != r + 1 => {
                        return GradedResult {
                            graded: false,
                            rank: None,
                        }
                    }
                    Some(_) => {}
                }
            }
        }
        let rank = rank.into_iter().map(|r| r.expect("bottom reaches everything")).collect();
        GradedResult {
            graded: true,
            rank: Some(RankFunction(rank)),
        }
    }

    /// Shortest and longest maximal chain of `[a, b]`.
    pub fn length(&self, a: usize, b: usize) -> Result<LengthBounds, LatticeError> {
        self.require_leq(a, b)?;
        let n = self.len();
        let mut shortest = vec![usize::MAX; n];
        let mut longest = vec![0usize; n];
        shortest[a] = 0;
        for &x in &self.topo {
            if shortest[x] == usize::MAX || !self.leq(x, b) {
                continue;
            }
            for &y in &self.upper[x] {
                if self.leq(y, b) {
                    shortest[y] = shortest[y].min(shortest[x] + 1);
                    longest[y] = longest[y].max(longest[x] + 1);
                }
            }
        }
        Ok(LengthBounds {
            min: shortest[b],
            max: longest[b],
        })
    }

    /// Length of the whole lattice, that is the longest chain from bottom to
    /// top.
    pub fn height(&self) -> usize {
        self.length(self.bottom, self.top).map(|l| l.max).unwrap_or(0)
    }

    /// Distinct lengths of maximal chains of `[a, b]`, ascending.
    pub fn maximal_chain_lengths(&self, a: usize, b: usize) -> Result<Vec<usize>, LatticeError> {
        self.require_leq(a, b)?;
        let n = self.len();
        let mut reach = vec![FixedBitSet::with_capacity(n); n];
        reach[a].insert(0);
        for &x in &self.topo {
            if reach[x].is_clear() || !self.leq(x, b) {
                continue;
            }
            let shifted: Vec<usize> = reach[x].ones().map(|k| k + 1).collect();
            for &y in &self.upper[x] {
                if self.leq(y, b) {
                    reach[y].extend(shifted.iter().copied());
                }
            }
        }
        Ok(reach[b].ones().collect())
    }

    /// Every maximal chain of `[a, b]`, in lexicographic order of indices.
    /// Fails once more than `limit` chains have been found.
    pub fn maximal_chains(
        &self,
        a: usize,
        b: usize,
        limit: usize,
    ) -> Result<Vec<Chain>, LatticeError> {
        self.require_leq(a, b)?;
        let mut out = Vec::new();
        let mut path = vec![a];
        self.extend_chains(b, &mut path, &mut out, limit)?;
        Ok(out)
    }

    fn extend_chains(
        &self,
        target: usize,
        path: &mut Vec<usize>,
        out: &mut Vec<Chain>,
        limit: usize,
    ) -> Result<(), LatticeError> {
        let last = *path.last().unwrap();
        if last == target {
            if out.len() == limit {
                return Err(LatticeError::TooManyChains(limit));
            }
            out.push(Chain::new(path.clone()));
            return Ok(());
        }
        for &next in &self.upper[last] {
            if self.leq(next, target) {
                path.push(next);
                self.extend_chains(target, path, out, limit)?;
                path.pop();
            }
        }
        Ok(())
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (0..n).all(|b| {
                (b..n).all(|c| {
                    self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c))
                })
            })
        })
    }

    /// Upper covers of `a` that lie below `b`.
    pub fn atoms(&self, a: usize, b: usize) -> Result<Vec<usize>, LatticeError> {
        self.require_leq(a, b)?;
        Ok(self.upper[a]
            .iter()
            .copied()
            .filter(|&x| self.leq(x, b))
            .collect())
    }

    /// Join of the atoms of `[a, b]`; `a` itself when the interval is trivial.
    pub fn socle(&self, a: usize, b: usize) -> Result<usize, LatticeError> {
        Ok(self
            .atoms(a, b)?
            .into_iter()
            .fold(a, |acc, x| self.join(acc, x)))
    }

    /// Iterated socles from the bottom up to the top.
    pub fn loewy_series(&self) -> Vec<usize> {
        let mut series = vec![self.bottom];
        let mut current = self.bottom;
        while current != self.top {
            current = self
                .socle(current, self.top)
                .expect("current lies below top");
            series.push(current);
        }
        series
    }

    /// True when every element sits between two consecutive Loewy terms.
    pub fn is_p_extension(&self) -> bool {
        let series = self.loewy_series();
        if series.len() == 1 {
            return true;
        }
        (0..self.len()).all(|x| {
            series
                .windows(2)
                .any(|w| self.leq(w[0], x) && self.leq(x, w[1]))
        })
    }

    pub fn is_left_modular_element(&self, x: usize) -> bool {
        let n = self.len();
        (0..n).all(|y| {
            self.up[y].ones().all(|z| {
                self.meet(self.join(y, x), z) == self.join(y, self.meet(x, z))
            })
        })
    }

    pub fn left_modular_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.is_left_modular_element(x))
            .collect()
    }

    /// True when some maximal chain consists of left modular elements.
    pub fn is_left_modular_lattice(&self) -> bool {
        let mut good = FixedBitSet::with_capacity(self.len());
        for x in self.left_modular_elements() {
            good.insert(x);
        }
        // Reachability from the bottom along covers that stay inside `good`.
        let mut reach = FixedBitSet::with_capacity(self.len());
        if good.contains(self.bottom) {
            reach.insert(self.bottom);
        }
        for &a in &self.topo {
            if !reach.contains(a) {
                continue;
            }
            for &b in &self.upper[a] {
                if good.contains(b) {
                    reach.insert(b);
                }
            }
        }
        reach.contains(self.top)
    }

    /// Closure of `subset` under join and meet, sorted.
    pub fn generated_members(&self, subset: &[usize]) -> Vec<usize> {
        let mut set = FixedBitSet::with_capacity(self.len());
        let mut list: Vec<usize> = Vec::new();
        for &x in subset {
            if !set.put(x) {
                list.push(x);
            }
        }
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for j in 0..=i {
                let y = list[j];
                for z in [self.join(x, y), self.meet(x, y)] {
                    if !set.put(z) {
                        list.push(z);
                    }
                }
            }
            i += 1;
        }
        list.sort_unstable();
        list
    }

    /// The sublattice generated by `subset`, with its own cover relation.
    pub fn sublattice_generated(&self, subset: &[usize]) -> Result<FiniteLattice, LatticeError> {
        self.induced_sublattice(&self.generated_members(subset))
    }

    /// Distributivity of the sublattice on `members`, which must be closed
    /// under join and meet.
    fn members_distributive(&self, members: &[usize]) -> bool {
        members.iter().all(|&a| {
            members.iter().enumerate().all(|(i, &b)| {
                members[i..].iter().all(|&c| {
                    self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c))
                })
            })
        })
    }

    /// Literal check: some maximal chain generates a distributive sublattice
    /// together with every other chain. Only maximal chains are tried as the
    /// second chain, since every chain extends to one and sublattices of a
    /// distributive lattice stay distributive.
    pub fn is_supersolvable(&self, cap: usize) -> Result<bool, LatticeError> {
        if self.len() > cap {
            return Err(LatticeError::SizeLimitExceeded {
                size: self.len(),
                cap,
            });
        }
        let chains = self.maximal_chains(self.bottom, self.top, usize::MAX)?;
        // Try chains of left modular elements first; this only affects how
        // soon a witness is found, not the answer.
        let modular: Vec<bool> = (0..self.len())
            .map(|x| self.is_left_modular_element(x))
            .collect();
        let mut order: Vec<usize> = (0..chains.len()).collect();
        order.sort_by_key(|&i| {
            chains[i]
                .elements()
                .iter()
                .filter(|&&x| !modular[x])
                .count()
        });
        for &i in &order {
            let candidate = chains[i].elements();
            let works = chains.iter().all(|other| {
                let mut seed = candidate.to_vec();
                seed.extend_from_slice(other.elements());
                self.members_distributive(&self.generated_members(&seed))
            });
            if works {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Every pair of composable cover steps spans an interval of length two.
    pub fn is_2_catenarian(&self) -> bool {
        self.covers.iter().all(|&(u, t)| {
            self.upper[t]
                .iter()
                .all(|&v| self.length(u, v).map(|l| l.max == 2).unwrap_or(false))
        })
    }
}
