use super::{FiniteLattice, LatticeError};

impl FiniteLattice {
    /// Total order `0 < 1 < ... < k`, labelled by number.
    pub fn chain(k: usize) -> FiniteLattice {
        let labels = (0..=k).map(|i| i.to_string()).collect();
        let covers = (0..k).map(|i| (i, i + 1)).collect();
        FiniteLattice::from_indexed(labels, covers).expect("a chain is a lattice")
    }

    /// `M_k`: a bottom, `k` pairwise incomparable atoms and a top.
    pub fn diamond(k: usize) -> FiniteLattice {
        let mut labels = vec!["0".to_string()];
        labels.extend((1..=k).map(|i| format!("a{i}")));
        labels.push("1".to_string());
        let covers = (1..=k).flat_map(|i| [(0, i), (i, k + 1)]).collect();
        FiniteLattice::from_indexed(labels, covers).expect("M_k is a lattice")
    }

    /// The pentagon `N_5` with elements `0, a, b, c, 1` where `b < c`.
    pub fn pentagon() -> FiniteLattice {
        FiniteLattice::build(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("b", "c"), ("a", "1"), ("c", "1")],
        )
        .expect("N_5 is a lattice")
    }

    /// Divisors of `n` ordered by divisibility.
    pub fn divisors(n: u64) -> FiniteLattice {
        assert!(n >= 1);
        let divs: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
        let mut covers = Vec::new();
        for (i, &a) in divs.iter().enumerate() {
            for (j, &b) in divs.iter().enumerate() {
                if b % a == 0 && b != a && is_prime(b / a) {
                    covers.push((i, j));
                }
            }
        }
        let labels = divs.iter().map(u64::to_string).collect();
        FiniteLattice::from_indexed(labels, covers).expect("divisors form a lattice")
    }

    /// Subsets of a `k`-element set, indexed by bitmask.
    pub fn boolean(k: usize) -> FiniteLattice {
        let n = 1usize << k;
        let labels = (0..n).map(|m| format!("{m:0k$b}")).collect();
        let covers = (0..n)
            .flat_map(|m| (0..k).filter(move |b| m & (1 << b) == 0).map(move |b| (m, m | (1 << b))))
            .collect();
        FiniteLattice::from_indexed(labels, covers).expect("subsets form a lattice")
    }

    /// The same elements with the order reversed.
    pub fn dual(&self) -> FiniteLattice {
        let covers = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        FiniteLattice::from_indexed(self.labels.clone(), covers).expect("dual of a lattice")
    }

    /// Componentwise product. Elements are tuples in lexicographic order with
    /// the first factor most significant; a cover moves exactly one
    /// coordinate along a cover of its factor.
    pub fn product(factors: &[&FiniteLattice]) -> Result<FiniteLattice, LatticeError> {
        let sizes: Vec<usize> = factors.iter().map(|f| f.len()).collect();
        let total: usize = sizes.iter().product();
        let decode = |mut idx: usize| {
            let mut coords = vec![0; sizes.len()];
            for (i, &s) in sizes.iter().enumerate().rev() {
                coords[i] = idx % s;
                idx /= s;
            }
            coords
        };
        let encode = |coords: &[usize]| coords.iter().zip(&sizes).fold(0, |acc, (c, s)| acc * s + c);

        let mut labels = Vec::with_capacity(total);
        let mut covers = Vec::new();
        for idx in 0..total {
            let coords = decode(idx);
            if factors.len() == 1 {
                labels.push(factors[0].label(coords[0]).to_string());
            } else {
                let parts: Vec<&str> = coords
                    .iter()
                    .zip(factors)
                    .map(|(&c, f)| f.label(c))
                    .collect();
                labels.push(format!("({})", parts.join(",")));
            }
            for (i, f) in factors.iter().enumerate() {
                for &up in f.upper_covers(coords[i]) {
                    let mut next = coords.clone();
                    next[i] = up;
                    covers.push((idx, encode(&next)));
                }
            }
        }
        FiniteLattice::from_indexed(labels, covers)
    }

    /// Position of a coordinate tuple in [`FiniteLattice::product`].
    pub fn product_index(sizes: &[usize], coords: &[usize]) -> usize {
        coords.iter().zip(sizes).fold(0, |acc, (c, s)| acc * s + c)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}
