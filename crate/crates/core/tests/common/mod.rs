//! Brute-force reference implementations, kept independent of the library
//! algorithms they are compared against.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use catena::lattice::FiniteLattice;
use catena::ring::FiniteCommRing;

/// A finite poset as up-set masks: bit `b` of `up[a]` is set iff `a ≤ b`.
#[derive(Debug, Clone)]
pub struct Order {
    pub n: usize,
    pub up: Vec<u128>,
    upper: Vec<Vec<usize>>,
}

impl Order {
    pub fn new(up: Vec<u128>) -> Self {
        let n = up.len();
        let lt = |a: usize, b: usize| a != b && up[a] >> b & 1 == 1;
        let upper = (0..n)
            .map(|a| (0..n).filter(|&b| lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b))).collect())
            .collect();
        Order { n, up, upper }
    }

    pub fn from_lattice(l: &FiniteLattice) -> Self {
        Self::new((0..l.len()).map(|a| (0..l.len()).filter(|&b| l.leq(a, b)).fold(0, |m, b| m | 1 << b)).collect())
    }

    pub fn from_masks(masks: &[u16]) -> Self {
        Self::new(masks.iter().map(|&m| m as u128).collect())
    }

    /// Members ordered by inclusion.
    pub fn from_sets(sets: &[u128]) -> Self {
        Self::new(
            sets.iter()
                .map(|&a| (0..sets.len()).filter(|&j| a & !sets[j] == 0).fold(0, |m, j| m | 1 << j))
                .collect(),
        )
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a] >> b & 1 == 1
    }

    pub fn covers(&self, a: usize, b: usize) -> bool {
        self.upper[a].contains(&b)
    }

    pub fn upper(&self, a: usize) -> &[usize] {
        &self.upper[a]
    }

    pub fn bottom(&self) -> usize {
        (0..self.n).find(|&a| self.up[a].count_ones() as usize == self.n).expect("bottom")
    }

    pub fn top(&self) -> usize {
        (0..self.n).find(|&a| self.up[a].count_ones() == 1).expect("top")
    }

    /// Every saturated chain from `a` to `b`, by depth-first enumeration.
    pub fn chains(&self, a: usize, b: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = vec![a];
        self.walk(b, &mut path, &mut out);
        out
    }

    fn walk(&self, b: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if last == b {
            out.push(path.clone());
            return;
        }
        for &c in &self.upper[last] {
            if self.leq(c, b) {
                path.push(c);
                self.walk(b, path, out);
                path.pop();
            }
        }
    }

    pub fn chain_lengths(&self, a: usize, b: usize) -> BTreeSet<usize> {
        self.chains(a, b).iter().map(|c| c.len() - 1).collect()
    }

    /// Every interval has maximal chains of a single length.
    pub fn graded(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).filter(|&b| self.leq(a, b)).all(|b| self.chain_lengths(a, b).len() == 1))
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        let common = self.up[a] & self.up[b];
        (0..self.n).find(|&c| common >> c & 1 == 1 && self.up[c] & common == common).expect("join")
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        let below = |x: usize| (0..self.n).filter(|&c| self.leq(c, x)).fold(0u128, |m, c| m | 1 << c);
        let common = below(a) & below(b);
        (0..self.n).find(|&c| common >> c & 1 == 1 && common & !below(c) == 0).expect("meet")
    }

    pub fn is_left_modular(&self, x: usize) -> bool {
        (0..self.n).all(|y| {
            (0..self.n)
                .filter(|&z| self.leq(y, z))
                .all(|z| self.meet(self.join(y, x), z) == self.join(y, self.meet(x, z)))
        })
    }

    /// Some maximal chain consists of left modular elements.
    pub fn left_modular_lattice(&self) -> bool {
        let good: Vec<bool> = (0..self.n).map(|x| self.is_left_modular(x)).collect();
        self.chains(self.bottom(), self.top()).iter().any(|c| c.iter().all(|&x| good[x]))
    }

    fn generated(&self, seed: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = seed.iter().copied().collect();
        loop {
            let items: Vec<usize> = set.iter().copied().collect();
            let mut grew = false;
            for &a in &items {
                for &b in &items {
                    grew |= set.insert(self.join(a, b));
                    grew |= set.insert(self.meet(a, b));
                }
            }
            if !grew {
                return set.into_iter().collect();
            }
        }
    }

    fn distributive_on(&self, members: &[usize]) -> bool {
        members.iter().all(|&a| {
            members.iter().all(|&b| {
                members
                    .iter()
                    .all(|&c| self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c)))
            })
        })
    }

    pub fn distributive(&self) -> bool {
        self.distributive_on(&(0..self.n).collect::<Vec<_>>())
    }

    /// Some maximal chain generates a distributive sublattice with every
    /// maximal chain.
    pub fn supersolvable(&self) -> bool {
        let chains = self.chains(self.bottom(), self.top());
        chains.iter().any(|m| {
            chains.iter().all(|c| {
                let seed: Vec<usize> = m.iter().chain(c).copied().collect();
                self.distributive_on(&self.generated(&seed))
            })
        })
    }
}

pub fn bits(set: u128) -> impl Iterator<Item = usize> {
    (0..128).filter(move |&i| set >> i & 1 == 1)
}

pub fn mask_of(set: impl IntoIterator<Item = usize>) -> u128 {
    set.into_iter().fold(0, |m, i| m | 1 << i)
}

pub fn full(s: &FiniteCommRing) -> u128 {
    if s.order() == 128 {
        u128::MAX
    } else {
        (1u128 << s.order()) - 1
    }
}

/// Closure of `seed ∪ {0, 1}` under addition and multiplication.
pub fn ring_closure(s: &FiniteCommRing, seed: u128) -> u128 {
    let mut set = seed | 1 << s.zero() | 1 << s.one();
    loop {
        let mut next = set;
        for a in bits(set) {
            for b in bits(set) {
                next |= 1 << s.add(a, b) | 1 << s.mul(a, b);
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

/// Subrings of `s` containing `base`, sorted by size then mask.
pub fn intermediate_rings(s: &FiniteCommRing, base: u128) -> Vec<u128> {
    let start = ring_closure(s, base);
    let mut found: HashSet<u128> = HashSet::from([start]);
    let mut queue = vec![start];
    while let Some(t) = queue.pop() {
        for x in 0..s.order() {
            if t >> x & 1 == 0 {
                let u = ring_closure(s, t | 1 << x);
                if found.insert(u) {
                    queue.push(u);
                }
            }
        }
    }
    let mut out: Vec<u128> = found.into_iter().collect();
    out.sort_by_key(|&m| (m.count_ones(), m));
    out
}

/// Ideals of the subring `t`.
pub fn ideals(s: &FiniteCommRing, t: u128) -> Vec<u128> {
    let close = |seed: u128| {
        let mut set = seed | 1 << s.zero();
        loop {
            let mut next = set;
            for a in bits(set) {
                for b in bits(set) {
                    next |= 1 << s.add(a, b);
                }
                for r in bits(t) {
                    next |= 1 << s.mul(a, r);
                }
            }
            if next == set {
                return set;
            }
            set = next;
        }
    };
    let start = close(0);
    let mut found: HashSet<u128> = HashSet::from([start]);
    let mut queue = vec![start];
    while let Some(i) = queue.pop() {
        for x in bits(t) {
            if i >> x & 1 == 0 {
                let j = close(i | 1 << x);
                if found.insert(j) {
                    queue.push(j);
                }
            }
        }
    }
    found.into_iter().collect()
}

pub fn maximal_ideals(s: &FiniteCommRing, t: u128) -> Vec<u128> {
    let proper: Vec<u128> = ideals(s, t).into_iter().filter(|&i| i != t).collect();
    let mut out: Vec<u128> = proper
        .iter()
        .copied()
        .filter(|&i| !proper.iter().any(|&j| j != i && i & !j == 0))
        .collect();
    out.sort_unstable();
    out
}

/// `m` is an ideal of `t` with `t/m` a field.
pub fn is_maximal_ideal(s: &FiniteCommRing, m: u128, t: u128) -> bool {
    if m & !t != 0 || m == t || m >> s.zero() & 1 == 0 {
        return false;
    }
    let ideal = bits(m).all(|a| bits(m).all(|b| m >> s.add(a, b) & 1 == 1) && bits(t).all(|r| m >> s.mul(a, r) & 1 == 1));
    let one = s.one();
    let units = bits(t & !m).all(|x| bits(t).any(|y| m >> s.sub(s.mul(x, y), one) & 1 == 1));
    ideal && units
}

/// `{x ∈ v : x v ⊆ t}`.
pub fn conductor(s: &FiniteCommRing, t: u128, v: u128) -> u128 {
    mask_of(bits(v).filter(|&x| bits(v).all(|y| t >> s.mul(x, y) & 1 == 1)))
}

/// No `b ∈ top ∖ t` has `r ∈ t` with `b² − rb` and `b³ − rb²` in `t`.
pub fn t_closed(s: &FiniteCommRing, t: u128, top: u128) -> bool {
    bits(top & !t).all(|b| {
        let b2 = s.mul(b, b);
        let b3 = s.mul(b2, b);
        !bits(t).any(|r| t >> s.sub(b2, s.mul(r, b)) & 1 == 1 && t >> s.sub(b3, s.mul(r, b2)) & 1 == 1)
    })
}

/// Smallest t-closed member of `rings` (which lists `[R, S]`).
pub fn t_closure(s: &FiniteCommRing, rings: &[u128]) -> u128 {
    let top = *rings.last().unwrap();
    let closed: Vec<u128> = rings.iter().copied().filter(|&t| t_closed(s, t, top)).collect();
    let meet = closed.iter().fold(top, |m, &t| m & t);
    assert!(closed.contains(&meet), "t-closed members are closed under intersection");
    meet
}

/// Residue fields of the whole ring `s` match those of `r` below them.
pub fn infra_integral(s: &FiniteCommRing, r: u128) -> bool {
    let whole = full(s);
    maximal_ideals(s, whole).into_iter().all(|q| {
        let residue_top = s.order() / q.count_ones() as usize;
        let residue_base = r.count_ones() as usize / (q & r).count_ones() as usize;
        residue_top == residue_base
    })
}

/// The intermediate rings of `base ⊆ s` as an order, with the masks.
pub fn ring_order(s: &FiniteCommRing, base: u128) -> (Vec<u128>, Order) {
    let rings = intermediate_rings(s, base);
    let order = Order::from_sets(&rings);
    (rings, order)
}
