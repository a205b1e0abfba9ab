//! Gradedness and length under quotients by shared ideals, idealization and
//! products, each compared against the lattice of the original extension.

use serde::Serialize;

use super::{AnalysisError, ExtensionLattice};
use crate::lattice::FiniteLattice;
use crate::ring::{ElementSet, Module, RingBuilder, RingExtension};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    pub construction: String,
    pub holds: bool,
    pub detail: String,
}

fn order_isomorphic(a: &FiniteLattice, members_a: &[usize], b: &FiniteLattice, map: &[usize]) -> bool {
    let mut hit = vec![false; b.len()];
    if members_a.len() != b.len() {
        return false;
    }
    for &m in map {
        if std::mem::replace(&mut hit[m], true) {
            return false;
        }
    }
    members_a.iter().enumerate().all(|(i, &x)| {
        members_a
            .iter()
            .enumerate()
            .all(|(j, &y)| a.leq(x, y) == b.leq(map[i], map[j]))
    })
}

/// `R/(J ∩ R) ⊆ S/J` for an ideal `J` of `S`: `T ↦ T/J` is an isomorphism
/// from `[R + J, S]`, gradedness passes down, and when `J ⊆ R` the whole
/// lattice, its gradedness and its length are preserved.
pub fn quotient_transfer(ext: &RingExtension, j: &ElementSet, cap: usize) -> Result<TransferReport, AnalysisError> {
    let s = ext.top();
    let el = ExtensionLattice::new(ext.clone(), cap)?;
    let (_, proj) = s.quotient_by(j)?;
    let quotient = ExtensionLattice::new(ext.quotient_extension(j)?, cap)?;
    let q = quotient.ring();

    let r_plus_j = el.index_of(&s.close_over(ext.base_set(), j.ones()))?;
    let members = el.lattice().interval_members(r_plus_j, el.top()).expect("R + J ≤ S");
    let map = members
        .iter()
        .map(|&x| quotient.index_of(&q.set_of(el.member(x).ones().map(|y| proj[y]))))
        .collect::<Result<Vec<_>, _>>()?;
    let iso = order_isomorphic(el.lattice(), &members, quotient.lattice(), &map);

    let graded = el.lattice().is_graded().graded;
    let quotient_graded = quotient.lattice().is_graded().graded;
    let shared = j.is_subset(ext.base_set());
    let length = el.lattice().length(el.bottom(), el.top()).expect("bottom ≤ top");
    let q_length = quotient.lattice().length(quotient.bottom(), quotient.top()).expect("bottom ≤ top");
    let whole = !shared || (members.len() == el.len() && graded == quotient_graded && length == q_length);
    Ok(TransferReport {
        construction: format!("quotient by {}", s.format_set(j)),
        holds: iso && (!graded || quotient_graded) && whole,
        detail: format!(
            "shared {shared}, isomorphic above R+J {iso}, graded {graded} -> {quotient_graded}, length {}..{} -> {}..{}",
            length.min, length.max, q_length.min, q_length.max
        ),
    })
}

/// `R(+)M ⊆ S(+)M` has a lattice of the same size, gradedness and length.
pub fn idealization_transfer(
    ext: &RingExtension,
    module: &Module,
    builder: &RingBuilder,
    cap: usize,
) -> Result<TransferReport, AnalysisError> {
    let el = ExtensionLattice::new(ext.clone(), cap)?;
    let ideal = ExtensionLattice::new(ext.idealize(module, builder)?, cap)?;
    let summary = |e: &ExtensionLattice| {
        let l = e.lattice();
        (e.len(), l.is_graded().graded, l.length(l.bottom(), l.top()).expect("bottom ≤ top"))
    };
    let (before, after) = (summary(&el), summary(&ideal));
    Ok(TransferReport {
        construction: format!("idealization by {}", module.description()),
        holds: before == after,
        detail: format!("{before:?} -> {after:?}"),
    })
}

/// `∏ R_i ⊆ ∏ S_i` has the product lattice: gradedness iff every factor is
/// graded, and lengths add.
pub fn product_transfer(parts: &[&RingExtension], builder: &RingBuilder, cap: usize) -> Result<TransferReport, AnalysisError> {
    let prod = ExtensionLattice::new(RingExtension::product(parts, builder)?, cap)?;
    let factors = parts
        .iter()
        .map(|p| ExtensionLattice::new((*p).clone(), cap))
        .collect::<Result<Vec<_>, _>>()?;
    let lattices: Vec<&FiniteLattice> = factors.iter().map(|f| f.lattice()).collect();
    let grid = FiniteLattice::product(&lattices).expect("product of lattices");
    let sizes: Vec<usize> = factors.iter().map(|f| f.len()).collect();
    let orders: Vec<usize> = parts.iter().map(|p| p.top().order()).collect();

    let s = prod.ring();
    let mut map = Vec::with_capacity(grid.len());
    for idx in 0..grid.len() {
        let mut coords = vec![0; sizes.len()];
        let mut rest = idx;
        for i in (0..sizes.len()).rev() {
            coords[i] = rest % sizes[i];
            rest /= sizes[i];
        }
        let mut elements = vec![0usize];
        for (i, &c) in coords.iter().enumerate() {
            let part: Vec<usize> = factors[i].member(c).ones().collect();
            let order = orders[i];
            elements = elements
                .iter()
                .flat_map(|&acc| part.iter().map(move |&x| acc * order + x))
                .collect();
        }
        map.push(prod.index_of(&s.set_of(elements))?);
    }
    let iso = grid.is_isomorphism(prod.lattice(), &map);

    let graded = prod.lattice().is_graded().graded;
    let all_graded = factors.iter().all(|f| f.lattice().is_graded().graded);
    let bounds = |e: &ExtensionLattice| e.lattice().length(e.bottom(), e.top()).expect("bottom ≤ top");
    let total = bounds(&prod);
    let (min_sum, max_sum) = factors
        .iter()
        .map(bounds)
        .fold((0, 0), |(a, b), l| (a + l.min, b + l.max));
    Ok(TransferReport {
        construction: format!("product of {} extensions", parts.len()),
        holds: iso && graded == all_graded && total.min == min_sum && total.max == max_sum,
        detail: format!(
            "isomorphic {iso}, graded {graded} vs factors {all_graded}, length {}..{} vs {min_sum}..{max_sum}",
            total.min, total.max
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::FiniteCommRing;

    fn f2() -> FiniteCommRing {
        FiniteCommRing::zmod(2).unwrap()
    }

    fn f4() -> FiniteCommRing {
        FiniteCommRing::gf(2, &[1, 1, 1]).unwrap()
    }

    #[test]
    fn quotient_by_every_ideal_of_a_product() {
        let s = FiniteCommRing::product(&[&f2(), &f4()]).unwrap();
        let ext = RingExtension::over_prime_subring(&s);
        for j in s.ideals(&s.full_set()) {
            if j.count_ones(..) == s.order() {
                continue;
            }
            let report = quotient_transfer(&ext, &j, 256).unwrap();
            assert!(report.holds, "{report:?}");
        }
    }

    #[test]
    fn idealization_keeps_the_lattice() {
        let s = FiniteCommRing::product(&[&f2(), &f4()]).unwrap();
        let ext = RingExtension::over_prime_subring(&s);
        let m = Module::cyclic(&s, &[s.index_of("(1,0)").unwrap()]).unwrap();
        let report = idealization_transfer(&ext, &m, &RingBuilder::default(), 256).unwrap();
        assert!(report.holds, "{report:?}");
    }

    #[test]
    fn products_add_lengths() {
        let a = RingExtension::over_prime_subring(&f4());
        let b = RingExtension::over_prime_subring(&FiniteCommRing::product(&[&f2(), &f2()]).unwrap());
        let report = product_transfer(&[&a, &b], &RingBuilder::default(), 256).unwrap();
        assert!(report.holds, "{report:?}");
    }
}
