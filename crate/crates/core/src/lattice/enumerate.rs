//! Exhaustive generation of finite lattices up to isomorphism.
//!
//! Removing an atom from a lattice with at least three elements leaves a
//! lattice, so every lattice on `n + 1` elements is a lattice on `n` elements
//! with a new atom `a` added below an up-set `U` of non-bottom elements. The
//! result is a lattice exactly when `U` is closed under those meets that are
//! not the bottom. Duplicates are removed by a canonical form.

use std::collections::HashSet;

use rayon::prelude::*;

use super::FiniteLattice;

/// Largest supported lattice size; up-sets are stored as `u16` masks.
pub const MAX_ENUMERATED_SIZE: usize = 16;

/// A lattice in canonical form: `up[i]` is the mask of elements `≥ i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderCode(Vec<u16>);

impl OrderCode {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn up_masks(&self) -> &[u16] {
        &self.0
    }

    pub fn to_lattice(&self) -> FiniteLattice {
        let n = self.0.len();
        let up = &self.0;
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || up[a] & (1 << b) == 0 {
                    continue;
                }
                let between = (0..n).any(|c| c != a && c != b && up[a] & (1 << c) != 0 && up[c] & (1 << b) != 0);
                if !between {
                    covers.push((a, b));
                }
            }
        }
        let labels = (0..n).map(|i| format!("x{i}")).collect();
        FiniteLattice::from_indexed(labels, covers).expect("generated order is a lattice")
    }
}

/// All lattices on `1..=max` elements; entry `k` holds those on `k + 1`
/// elements, sorted by canonical code.
pub fn unlabeled_lattices(max: usize) -> Vec<Vec<OrderCode>> {
    assert!(max <= MAX_ENUMERATED_SIZE, "lattice enumeration is limited to {MAX_ENUMERATED_SIZE} elements");
    let mut levels: Vec<Vec<OrderCode>> = Vec::new();
    if max == 0 {
        return levels;
    }
    levels.push(vec![OrderCode(vec![1])]);
    if max >= 2 {
        levels.push(vec![canonical(&[0b11, 0b10])]);
    }
    while levels.len() < max {
        let next: HashSet<OrderCode> = levels
            .last()
            .unwrap()
            .par_iter()
            .flat_map_iter(|code| {
                let mut children = Vec::new();
                extend_by_atom(&code.0, |child| children.push(canonical(child)));
                children
            })
            .collect();
        let mut level: Vec<OrderCode> = next.into_iter().collect();
        level.sort();
        levels.push(level);
    }
    levels
}

fn extend_by_atom(up: &[u16], mut emit: impl FnMut(&[u16])) {
    let n = up.len();
    let full: u16 = ((1u32 << n) - 1) as u16;
    let bottom = (0..n).find(|&i| up[i] == full).expect("lattice has a bottom");
    let down: Vec<u16> = (0..n)
        .map(|i| (0..n).filter(|&j| up[j] & (1 << i) != 0).fold(0, |m, j| m | (1 << j)))
        .collect();
    let meet = |x: usize, y: usize| {
        let common = down[x] & down[y];
        (0..n).find(|&z| common & (1 << z) != 0 && down[z] == common).expect("meet exists")
    };
    let candidates: Vec<usize> = (0..n).filter(|&i| i != bottom).collect();
    let mut chosen: Vec<usize> = Vec::new();
    let mut child = up.to_vec();
    child.push(0);

    // Antichains of non-bottom elements, each giving the up-set it generates.
    fn walk(
        start: usize,
        candidates: &[usize],
        up: &[u16],
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(u16),
    ) {
        for k in start..candidates.len() {
            let x = candidates[k];
            if chosen.iter().any(|&c| up[c] & (1 << x) != 0 || up[x] & (1 << c) != 0) {
                continue;
            }
            chosen.push(x);
            visit(chosen.iter().fold(0, |m, &c| m | up[c]));
            walk(k + 1, candidates, up, chosen, visit);
            chosen.pop();
        }
    }

    walk(0, &candidates, up, &mut chosen, &mut |upset: u16| {
        let members: Vec<usize> = (0..n).filter(|&i| upset & (1 << i) != 0).collect();
        let closed = members.iter().enumerate().all(|(i, &x)| {
            members[i + 1..].iter().all(|&y| {
                let m = meet(x, y);
                m == bottom || upset & (1 << m) != 0
            })
        });
        if closed {
            child[n] = upset | (1 << n);
            let saved = child[bottom];
            child[bottom] |= 1 << n;
            emit(&child);
            child[bottom] = saved;
        }
    });
}

/// Rank the signatures and return dense colours in signature order.
fn dense<T: Ord + Clone>(sigs: &[T]) -> Vec<u16> {
    let mut sorted: Vec<T> = sigs.to_vec();
    sorted.sort();
    sorted.dedup();
    sigs.iter().map(|s| sorted.binary_search(s).unwrap() as u16).collect()
}

struct Graph {
    n: usize,
    up: Vec<u16>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
}

impl Graph {
    fn refine(&self, mut colors: Vec<u16>) -> Vec<u16> {
        loop {
            let sigs: Vec<(u16, Vec<u16>, Vec<u16>)> = (0..self.n)
                .map(|v| {
                    let mut u: Vec<u16> = self.upper[v].iter().map(|&w| colors[w]).collect();
                    let mut l: Vec<u16> = self.lower[v].iter().map(|&w| colors[w]).collect();
                    u.sort_unstable();
                    l.sort_unstable();
                    (colors[v], u, l)
                })
                .collect();
            let next = dense(&sigs);
            let before = colors.iter().copied().max().unwrap_or(0);
            let after = next.iter().copied().max().unwrap_or(0);
            colors = next;
            if after == before {
                return colors;
            }
        }
    }

    fn code(&self, colors: &[u16]) -> Vec<u16> {
        // Discrete colouring: colour is the new position.
        let mut pos = vec![0usize; self.n];
        for v in 0..self.n {
            pos[colors[v] as usize] = v;
        }
        (0..self.n)
            .map(|p| {
                let v = pos[p];
                (0..self.n)
                    .filter(|&q| self.up[v] & (1 << pos[q]) != 0)
                    .fold(0u16, |m, q| m | (1 << q))
            })
            .collect()
    }

    fn twins(&self, a: usize, b: usize) -> bool {
        self.upper[a] == self.upper[b] && self.lower[a] == self.lower[b]
    }

    fn search(&self, colors: Vec<u16>, best: &mut Option<Vec<u16>>) {
        let cells = colors.iter().copied().max().map_or(0, |m| m as usize + 1);
        if cells == self.n {
            let code = self.code(&colors);
            if best.as_ref().is_none_or(|b| code < *b) {
                *best = Some(code);
            }
            return;
        }
        let mut size = vec![0usize; cells];
        for &c in &colors {
            size[c as usize] += 1;
        }
        let target = (0..cells).find(|&c| size[c] > 1).unwrap() as u16;
        let mut tried: Vec<usize> = Vec::new();
        for v in (0..self.n).filter(|&v| colors[v] == target) {
            if tried.iter().any(|&t| self.twins(t, v)) {
                continue;
            }
            tried.push(v);
            let sigs: Vec<(u16, bool)> = (0..self.n).map(|w| (colors[w], w != v)).collect();
            self.search(self.refine(dense(&sigs)), best);
        }
    }
}

fn canonical(up: &[u16]) -> OrderCode {
    let n = up.len();
    let lt = |a: usize, b: usize| a != b && up[a] & (1 << b) != 0;
    let covers = |a: usize, b: usize| lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b));
    let mut upper = vec![Vec::new(); n];
    let mut lower = vec![Vec::new(); n];
    for a in 0..n {
        for b in 0..n {
            if covers(a, b) {
                upper[a].push(b);
                lower[b].push(a);
            }
        }
    }
    let g = Graph {
        n,
        up: up.to_vec(),
        upper,
        lower,
    };
    let start: Vec<(u32, u32)> = (0..n).map(|v| (up[v].count_ones(), (0..n).filter(|&w| lt(w, v)).count() as u32)).collect();
    // Larger up-sets first puts the bottom at position 0.
    let start: Vec<(std::cmp::Reverse<u32>, u32)> = start.into_iter().map(|(u, d)| (std::cmp::Reverse(u), d)).collect();
    let colors = g.refine(dense(&start));
    let mut best = None;
    g.search(colors, &mut best);
    OrderCode(best.expect("search reaches a leaf"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts_and_shapes() {
        let levels = unlabeled_lattices(6);
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15]);
        let five: Vec<FiniteLattice> = levels[4].iter().map(OrderCode::to_lattice).collect();
        assert_eq!(five.iter().filter(|l| !l.is_graded().graded).count(), 1);
        assert_eq!(five.iter().filter(|l| l.is_distributive()).count(), 3);
    }

    #[test]
    fn canonical_form_ignores_labelling() {
        // A diamond as bottom, atom, atom, top and as top, atom, bottom, atom.
        let a = canonical(&[0b1111, 0b1010, 0b1100, 0b1000]);
        let b = canonical(&[0b0001, 0b0011, 0b1111, 0b1001]);
        assert_eq!(a, b);
        assert_ne!(a, canonical(&[0b1111, 0b1110, 0b1100, 0b1000]));
    }
}
