//! Every group of order at most 24, one per isomorphism class.

use super::{FiniteGroup, GroupSpec};

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub group: FiniteGroup,
}

impl FiniteGroup {
    /// Right regular representation on a greedy generating set.
    pub fn regular_spec(&self) -> GroupSpec {
        let mut span = self.trivial();
        let mut generators = Vec::new();
        for g in 0..self.order() {
            if !span.contains(g) {
                span = self.generate(&span, [g]);
                generators.push((0..self.order()).map(|x| self.mul(x, g) + 1).collect());
            }
        }
        GroupSpec {
            points: self.order(),
            generators,
        }
    }
}

fn power_map(g: &FiniteGroup, r: usize) -> Vec<usize> {
    (0..g.order()).map(|x| g.pow(x, r)).collect()
}

fn inversion(g: &FiniteGroup) -> Vec<usize> {
    (0..g.order()).map(|x| g.inv(x)).collect()
}

fn c(n: usize) -> FiniteGroup {
    FiniteGroup::cyclic(n)
}

fn prod(parts: &[FiniteGroup]) -> FiniteGroup {
    parts[1..].iter().fold(parts[0].clone(), |acc, g| acc.direct_product(g))
}

/// `C_n ⋊ C_k` with the generator acting by `x ↦ x^r`.
fn metacyclic(n: usize, k: usize, r: usize) -> FiniteGroup {
    let base = c(n);
    FiniteGroup::semidirect_cyclic(&base, &power_map(&base, r), k)
}

fn dihedral(n: usize) -> FiniteGroup {
    metacyclic(n, 2, n - 1)
}

/// `⟨a, x | a^{2n}, x² = a^n, x a x⁻¹ = a⁻¹⟩` of order `4n`.
fn dicyclic(n: usize) -> FiniteGroup {
    let m = 2 * n;
    FiniteGroup::from_closure(
        (0usize, false),
        &[(1, false), (0, true)],
        |&(k1, e1), &(k2, e2)| match (e1, e2) {
            (false, _) => ((k1 + k2) % m, e2),
            (true, false) => ((k1 + m - k2) % m, true),
            (true, true) => ((k1 + m - k2 + n) % m, false),
        },
        4 * n,
    )
    .expect("dicyclic group")
}

/// Abelian `N ⋊ C2` acting by inversion.
fn generalized_dihedral(normal: &FiniteGroup) -> FiniteGroup {
    FiniteGroup::semidirect_cyclic(normal, &inversion(normal), 2)
}

fn perm(points: usize, generators: &[&[usize]]) -> FiniteGroup {
    let gens: Vec<Vec<usize>> = generators.iter().map(|g| g.to_vec()).collect();
    FiniteGroup::from_permutations(points, &gens, 48).expect("permutation group")
}

fn symmetric3() -> FiniteGroup {
    perm(3, &[&[2, 1, 3], &[2, 3, 1]])
}

fn symmetric4() -> FiniteGroup {
    perm(4, &[&[2, 1, 3, 4], &[2, 3, 4, 1]])
}

fn alternating4() -> FiniteGroup {
    perm(4, &[&[2, 3, 1, 4], &[1, 3, 4, 2]])
}

/// 2×2 matrices over F3 with determinant 1.
fn sl2_3() -> FiniteGroup {
    type M = [u8; 4];
    let mul = |a: &M, b: &M| -> M {
        [
            (a[0] * b[0] + a[1] * b[2]) % 3,
            (a[0] * b[1] + a[1] * b[3]) % 3,
            (a[2] * b[0] + a[3] * b[2]) % 3,
            (a[2] * b[1] + a[3] * b[3]) % 3,
        ]
    };
    FiniteGroup::from_closure([1, 0, 0, 1], &[[1, 1, 0, 1], [1, 0, 1, 1]], mul, 24).expect("SL(2,3)")
}

/// `(C4 × C2) ⋊ C2` where the generator fixes `a` and sends `b ↦ a²b`.
fn pauli() -> FiniteGroup {
    let n = prod(&[c(4), c(2)]);
    // Element (a^i, b^j) sits at 2i + j.
    let action: Vec<usize> = (0..8)
        .map(|x| {
            let (i, j) = (x / 2, x % 2);
            2 * ((i + 2 * j) % 4) + j
        })
        .collect();
    FiniteGroup::semidirect_cyclic(&n, &action, 2)
}

/// `C2² ⋊ C4` with the generator swapping the two factors.
fn c2_squared_by_c4() -> FiniteGroup {
    let n = prod(&[c(2), c(2)]);
    let swap: Vec<usize> = (0..4).map(|x| 2 * (x % 2) + x / 2).collect();
    FiniteGroup::semidirect_cyclic(&n, &swap, 4)
}

/// `C3 ⋊ D4` where `D4 = C2² ⋊ C2` acts through the quotient by `C2²`.
fn c3_by_d4() -> FiniteGroup {
    let n = prod(&[c(3), c(2), c(2)]);
    // (c, u, v) at 4c + 2u + v: invert c and swap u, v.
    let action: Vec<usize> = (0..12)
        .map(|x| {
            let (k, u, v) = (x / 4, (x / 2) % 2, x % 2);
            4 * ((3 - k) % 3) + 2 * v + u
        })
        .collect();
    FiniteGroup::semidirect_cyclic(&n, &action, 2)
}

/// The catalog, restricted to orders up to `max_order` (at most 24).
pub fn catalog(max_order: usize) -> Vec<CatalogEntry> {
    assert!(max_order <= 24, "the catalog covers orders up to 24");
    let s3 = symmetric3;
    let q8 = || dicyclic(2);
    let d4 = || dihedral(4);
    let a4 = alternating4;
    let list: Vec<(&str, Box<dyn Fn() -> FiniteGroup>)> = vec![
        ("1", Box::new(|| c(1))),
        ("C2", Box::new(|| c(2))),
        ("C3", Box::new(|| c(3))),
        ("C4", Box::new(|| c(4))),
        ("C2^2", Box::new(|| prod(&[c(2), c(2)]))),
        ("C5", Box::new(|| c(5))),
        ("C6", Box::new(|| c(6))),
        ("S3", Box::new(s3)),
        ("C7", Box::new(|| c(7))),
        ("C8", Box::new(|| c(8))),
        ("C4xC2", Box::new(|| prod(&[c(4), c(2)]))),
        ("C2^3", Box::new(|| prod(&[c(2), c(2), c(2)]))),
        ("D4", Box::new(d4)),
        ("Q8", Box::new(q8)),
        ("C9", Box::new(|| c(9))),
        ("C3^2", Box::new(|| prod(&[c(3), c(3)]))),
        ("C10", Box::new(|| c(10))),
        ("D5", Box::new(|| dihedral(5))),
        ("C11", Box::new(|| c(11))),
        ("C12", Box::new(|| c(12))),
        ("C6xC2", Box::new(|| prod(&[c(6), c(2)]))),
        ("A4", Box::new(a4)),
        ("D6", Box::new(|| dihedral(6))),
        ("Dic3", Box::new(|| dicyclic(3))),
        ("C13", Box::new(|| c(13))),
        ("C14", Box::new(|| c(14))),
        ("D7", Box::new(|| dihedral(7))),
        ("C15", Box::new(|| c(15))),
        ("C16", Box::new(|| c(16))),
        ("C4^2", Box::new(|| prod(&[c(4), c(4)]))),
        ("C8xC2", Box::new(|| prod(&[c(8), c(2)]))),
        ("C4xC2^2", Box::new(|| prod(&[c(4), c(2), c(2)]))),
        ("C2^4", Box::new(|| prod(&[c(2), c(2), c(2), c(2)]))),
        ("D8", Box::new(|| dihedral(8))),
        ("Q16", Box::new(|| dicyclic(4))),
        ("SD16", Box::new(|| metacyclic(8, 2, 3))),
        ("M16", Box::new(|| metacyclic(8, 2, 5))),
        ("C4:C4", Box::new(|| metacyclic(4, 4, 3))),
        ("C2xD4", Box::new(|| prod(&[c(2), d4()]))),
        ("C2xQ8", Box::new(|| prod(&[c(2), q8()]))),
        ("C4oD4", Box::new(pauli)),
        ("C2^2:C4", Box::new(c2_squared_by_c4)),
        ("C17", Box::new(|| c(17))),
        ("C18", Box::new(|| c(18))),
        ("C6xC3", Box::new(|| prod(&[c(6), c(3)]))),
        ("D9", Box::new(|| dihedral(9))),
        ("C3xS3", Box::new(|| prod(&[c(3), s3()]))),
        ("C3^2:C2", Box::new(|| generalized_dihedral(&prod(&[c(3), c(3)])))),
        ("C19", Box::new(|| c(19))),
        ("C20", Box::new(|| c(20))),
        ("C10xC2", Box::new(|| prod(&[c(10), c(2)]))),
        ("D10", Box::new(|| dihedral(10))),
        ("Dic5", Box::new(|| dicyclic(5))),
        ("F20", Box::new(|| metacyclic(5, 4, 2))),
        ("C21", Box::new(|| c(21))),
        ("C7:C3", Box::new(|| metacyclic(7, 3, 2))),
        ("C22", Box::new(|| c(22))),
        ("D11", Box::new(|| dihedral(11))),
        ("C23", Box::new(|| c(23))),
        ("C24", Box::new(|| c(24))),
        ("C12xC2", Box::new(|| prod(&[c(12), c(2)]))),
        ("C6xC2^2", Box::new(|| prod(&[c(6), c(2), c(2)]))),
        ("C3:C8", Box::new(|| metacyclic(3, 8, 2))),
        ("SL(2,3)", Box::new(sl2_3)),
        ("Dic6", Box::new(|| dicyclic(6))),
        ("C4xS3", Box::new(|| prod(&[c(4), s3()]))),
        ("D12", Box::new(|| dihedral(12))),
        ("C2xDic3", Box::new(|| prod(&[c(2), dicyclic(3)]))),
        ("C3:D4", Box::new(c3_by_d4)),
        ("C3xD4", Box::new(|| prod(&[c(3), d4()]))),
        ("C3xQ8", Box::new(|| prod(&[c(3), q8()]))),
        ("S4", Box::new(symmetric4)),
        ("C2xA4", Box::new(|| prod(&[c(2), a4()]))),
        ("C2^2xS3", Box::new(|| prod(&[c(2), c(2), s3()]))),
    ];
    let mut out: Vec<CatalogEntry> = list
        .into_iter()
        .map(|(name, build)| CatalogEntry {
            name: name.to_string(),
            group: build(),
        })
        .filter(|e| e.group.order() <= max_order)
        .collect();
    out.sort_by_key(|e| e.group.order());
    out
}

/// Number of isomorphism classes of groups of each order `0..=24`.
pub const GROUP_COUNTS: [usize; 25] = [0, 1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_sizes_match_the_class_counts() {
        let groups = catalog(24);
        assert_eq!(groups.len(), 74);
        for n in 1..=24 {
            let count = groups.iter().filter(|e| e.group.order() == n).count();
            assert_eq!(count, GROUP_COUNTS[n], "order {n}");
        }
    }

    #[test]
    fn regular_spec_rebuilds_the_group() {
        let g = dicyclic(2);
        let spec = g.regular_spec();
        let h = spec.build(48).unwrap();
        assert_eq!(h.order(), 8);
        assert_eq!(h.subgroups().len(), g.subgroups().len());
        assert_eq!(h.center().count_ones(..), 2);
    }
}
