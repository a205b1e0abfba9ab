//! Cover-edge classification and chain-length analysis of `[R, S]`.
//!
//! All computations run inside the tables of `S`: subrings, ideals and
//! conductors are [`ElementSet`]s of `S`. Several notions are decided by
//! two independent routes (a definitional one on elements and one on edge
//! types of the enumerated lattice); disagreement is reported as
//! [`AnalysisError::InconsistentCharacterization`].

use std::collections::BTreeMap;

use serde::Serialize;

use crate::lattice::FiniteLattice;
use crate::ring::{ElementSet, FiniteCommRing, RingError, RingExtension, SubringLattice};

mod checks;
mod closure;
mod report;
mod transfer;

pub use checks::{CrosswiseReport, InertPairReport, PointwiseMinimal, PointwiseCase};
pub use closure::{is_infra_integral_by_definition, is_t_closed_by_definition, t_closure_fixpoint};
pub use report::{analyze_catenarity, AnalysisConfig, CatenarityReport, CheckOutcome, CHECK_NAMES, REPORT_SCHEMA_VERSION};
pub use transfer::{idealization_transfer, product_transfer, quotient_transfer, TransferReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("extension is not minimal")]
    NotMinimal,
    #[error("conductor {0} is not a maximal ideal of the lower ring")]
    NotConductorMaximal(String),
    #[error("cover edge matches {0} of the three minimal types")]
    Unclassified(usize),
    #[error("inconsistent characterization: {0}")]
    InconsistentCharacterization(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("edge types do not match the required pattern: {0}")]
    TypePatternMismatch(String),
    #[error("subring is not in the enumerated lattice")]
    UnknownSubring,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MinimalType {
    Inert,
    Decomposed,
    Ramified,
}

impl MinimalType {
    pub fn as_str(self) -> &'static str {
        match self {
            MinimalType::Inert => "inert",
            MinimalType::Decomposed => "decomposed",
            MinimalType::Ramified => "ramified",
        }
    }

    /// DOT colour used for edges of this type.
    pub fn color(self) -> &'static str {
        match self {
            MinimalType::Inert => "blue",
            MinimalType::Decomposed => "darkgreen",
            MinimalType::Ramified => "red",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeInfo {
    pub kind: MinimalType,
    /// The conductor `(T : V)`, maximal in `T`.
    pub crucial: ElementSet,
}

fn order_of(set: &ElementSet) -> usize {
    set.count_ones(..)
}

fn intersect(a: &ElementSet, b: &ElementSet) -> ElementSet {
    let mut c = a.clone();
    c.intersect_with(b);
    c
}

/// Type and crucial ideal of a cover `t ⋖ v` of subrings of `s`. The caller
/// guarantees minimality.
pub(crate) fn classify_cover(
    s: &FiniteCommRing,
    t: &ElementSet,
    v: &ElementSet,
) -> Result<EdgeInfo, AnalysisError> {
    let m = s.conductor(t, v);
    let max_t = s.maximal_ideals(t);
    if !max_t.contains(&m) {
        return Err(AnalysisError::NotConductorMaximal(s.format_set(&m)));
    }
    let q = order_of(t) / order_of(&m);
    let residue = |ideal: &ElementSet| order_of(v) / order_of(ideal);
    let max_v = s.maximal_ideals(v);

    let inert = max_v.contains(&m) && {
        let (mut size, mut degree) = (residue(&m), 0u64);
        while size % q == 0 && size > 1 {
            size /= q;
            degree += 1;
        }
        size == 1 && crate::fpoly::is_prime(degree)
    };
    let decomposed = max_v.iter().enumerate().any(|(i, m1)| {
        max_v[i + 1..]
            .iter()
            .any(|m2| intersect(m1, m2) == m && residue(m1) == q && residue(m2) == q)
    });
    let ramified = residue(&m) == q * q
        && max_v.iter().any(|mp| {
            m.is_subset(mp) && m != *mp && s.products_within(mp, mp, &m) && residue(mp) == q
        });

    let kinds: Vec<MinimalType> = [
        (inert, MinimalType::Inert),
        (decomposed, MinimalType::Decomposed),
        (ramified, MinimalType::Ramified),
    ]
    .into_iter()
    .filter_map(|(hit, k)| hit.then_some(k))
    .collect();
    match kinds.as_slice() {
        [kind] => Ok(EdgeInfo { kind: *kind, crucial: m }),
        _ => Err(AnalysisError::Unclassified(kinds.len())),
    }
}

/// Classifies `t ⊂ v` after confirming that no subring lies strictly
/// between them.
pub fn classify_minimal(
    s: &FiniteCommRing,
    t: &ElementSet,
    v: &ElementSet,
) -> Result<(MinimalType, ElementSet), AnalysisError> {
    if t == v || SubringLattice::between(s, t, v)?.len() != 2 {
        return Err(AnalysisError::NotMinimal);
    }
    let info = classify_cover(s, t, v)?;
    Ok((info.kind, info.crucial))
}

/// `[R, S]` with every cover edge classified.
#[derive(Debug, Clone)]
pub struct ExtensionLattice {
    ext: RingExtension,
    subrings: SubringLattice,
    edges: BTreeMap<(usize, usize), EdgeInfo>,
}

impl ExtensionLattice {
    pub fn new(ext: RingExtension, cap: usize) -> Result<Self, AnalysisError> {
        let subrings = ext.enumerate_interval(cap)?;
        let s = ext.top();
        let mut edges = BTreeMap::new();
        for &(a, b) in subrings.lattice().covers() {
            let info = classify_cover(s, subrings.member(a), subrings.member(b))?;
            edges.insert((a, b), info);
        }
        Ok(ExtensionLattice { ext, subrings, edges })
    }

    pub fn extension(&self) -> &RingExtension {
        &self.ext
    }

    pub fn ring(&self) -> &FiniteCommRing {
        self.ext.top()
    }

    pub fn subrings(&self) -> &SubringLattice {
        &self.subrings
    }

    pub fn lattice(&self) -> &FiniteLattice {
        self.subrings.lattice()
    }

    pub fn member(&self, i: usize) -> &ElementSet {
        self.subrings.member(i)
    }

    pub fn len(&self) -> usize {
        self.subrings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subrings.is_empty()
    }

    pub fn bottom(&self) -> usize {
        self.lattice().bottom()
    }

    pub fn top(&self) -> usize {
        self.lattice().top()
    }

    pub fn index_of(&self, set: &ElementSet) -> Result<usize, AnalysisError> {
        self.subrings.index_of(set).ok_or(AnalysisError::UnknownSubring)
    }

    pub fn edge(&self, lower: usize, upper: usize) -> Option<&EdgeInfo> {
        self.edges.get(&(lower, upper))
    }

    pub fn edges(&self) -> &BTreeMap<(usize, usize), EdgeInfo> {
        &self.edges
    }

    pub fn edge_type(&self, lower: usize, upper: usize) -> MinimalType {
        self.edges[&(lower, upper)].kind
    }

    /// Label of a subring in the lattice, `T{i}`.
    pub fn label(&self, i: usize) -> &str {
        self.lattice().label(i)
    }

    /// `(a : b)` for lattice members `a ≤ b`.
    pub fn conductor(&self, a: usize, b: usize) -> ElementSet {
        self.ring().conductor(self.member(a), self.member(b))
    }

    /// Lattice drawn with edges coloured by type.
    pub fn to_dot(&self) -> String {
        self.lattice().to_dot_with(|a, b| {
            let kind = self.edge_type(a, b);
            Some(format!("color={}, label=\"{}\"", kind.color(), kind.as_str()))
        })
    }

    /// Maximal ideals `M` of the member `base` at which `x` and `y` differ
    /// locally, i.e. `x e_M ≠ y e_M` for the local idempotent `e_M` of `base`.
    pub fn support_over(&self, base: usize, x: usize, y: usize) -> Vec<ElementSet> {
        let s = self.ring();
        s.maximal_ideals_with_idempotents(self.member(base))
            .into_iter()
            .filter(|(e, _)| s.scale(self.member(x), *e) != s.scale(self.member(y), *e))
            .map(|(_, m)| m)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Module;

    fn f2() -> FiniteCommRing {
        FiniteCommRing::zmod(2).unwrap()
    }

    fn f4() -> FiniteCommRing {
        FiniteCommRing::gf(2, &[1, 1, 1]).unwrap()
    }

    fn prime_type(top: &FiniteCommRing) -> (MinimalType, ElementSet) {
        let base = top.close(&top.empty_set());
        classify_minimal(top, &base, &top.full_set()).unwrap()
    }

    #[test]
    fn trichotomy_on_the_three_basic_cases() {
        let (kind, m) = prime_type(&f4());
        assert_eq!(kind, MinimalType::Inert);
        assert_eq!(m, f4().set_of([0]));

        let f2sq = FiniteCommRing::product(&[&f2(), &f2()]).unwrap();
        assert_eq!(prime_type(&f2sq).0, MinimalType::Decomposed);

        let dual = FiniteCommRing::poly_quotient(&f2(), &[0, 0, 1]).unwrap();
        let (kind, m) = prime_type(&dual);
        assert_eq!(kind, MinimalType::Ramified);
        assert_eq!(m, dual.set_of([0]));
    }

    #[test]
    fn non_minimal_is_rejected() {
        let s = FiniteCommRing::product(&[&f2(), &f4()]).unwrap();
        let base = s.close(&s.empty_set());
        assert_eq!(
            classify_minimal(&s, &base, &s.full_set()).unwrap_err(),
            AnalysisError::NotMinimal
        );
    }

    #[test]
    fn product_instance_edges() {
        let s = FiniteCommRing::product(&[&f2(), &f4()]).unwrap();
        let el = ExtensionLattice::new(RingExtension::over_prime_subring(&s), 256).unwrap();
        assert_eq!(el.len(), 3);
        assert_eq!(el.edge_type(0, 1), MinimalType::Decomposed);
        assert_eq!(el.edge_type(1, 2), MinimalType::Inert);
        assert!(el.to_dot().contains("color=blue"));
    }

    #[test]
    fn idealization_edges_are_classified() {
        let m = Module::free(&f4(), 1).unwrap();
        let ext = RingExtension::over_prime_subring(&f4())
            .idealize(&m, &Default::default())
            .unwrap();
        let el = ExtensionLattice::new(ext, 256).unwrap();
        assert!(el.lattice().is_graded().graded);
        assert_eq!(el.len(), 2);
        assert_eq!(el.edge_type(0, 1), MinimalType::Inert);
    }
}
