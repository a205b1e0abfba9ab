use super::{AnalysisError, ExtensionLattice, MinimalType};
use crate::ring::{ElementSet, FiniteCommRing};

/// Elements `b` of `upper` admitting `r ∈ lower` with `b² − rb` and
/// `b³ − rb²` both in `lower`.
fn t_witnesses(s: &FiniteCommRing, lower: &ElementSet, upper: &ElementSet) -> Vec<usize> {
    upper
        .difference(lower)
        .filter(|&b| {
            let b2 = s.mul(b, b);
            let b3 = s.mul(b2, b);
            lower.ones().any(|r| {
                lower.contains(s.sub(b2, s.mul(r, b))) && lower.contains(s.sub(b3, s.mul(r, b2)))
            })
        })
        .collect()
}

/// Smallest subring `B` of `[lower, upper]` with `B ⊆ upper` t-closed: adjoin
/// every witness over the current ring until none is left.
pub fn t_closure_fixpoint(s: &FiniteCommRing, lower: &ElementSet, upper: &ElementSet) -> ElementSet {
    let mut t = lower.clone();
    loop {
        let found = t_witnesses(s, &t, upper);
        if found.is_empty() {
            return t;
        }
        t = s.close_over(&t, found);
    }
}

pub fn is_t_closed_by_definition(s: &FiniteCommRing, lower: &ElementSet, upper: &ElementSet) -> bool {
    t_witnesses(s, lower, upper).is_empty()
}

/// Every residue field of `upper` equals the residue field below it. The
/// lower one embeds in the upper one, so comparing orders suffices.
pub fn is_infra_integral_by_definition(s: &FiniteCommRing, lower: &ElementSet, upper: &ElementSet) -> bool {
    let size = |x: &ElementSet| x.count_ones(..);
    s.maximal_ideals(upper).iter().all(|q| {
        let mut p = q.clone();
        p.intersect_with(lower);
        size(upper) / size(q) == size(lower) / size(&p)
    })
}

impl ExtensionLattice {
    /// Greatest member reachable from `from` along edges whose type passes
    /// `keep`. Errors when the reachable set has no greatest element.
    fn reach_top(&self, from: usize, keep: impl Fn(MinimalType) -> bool) -> Result<usize, AnalysisError> {
        let l = self.lattice();
        let mut seen = vec![false; self.len()];
        seen[from] = true;
        let mut stack = vec![from];
        while let Some(a) = stack.pop() {
            for &b in l.upper_covers(a) {
                if !seen[b] && keep(self.edge_type(a, b)) {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        let reached: Vec<usize> = (0..self.len()).filter(|&i| seen[i]).collect();
        let top = l.join_all(reached.iter().copied());
        if seen[top] {
            Ok(top)
        } else {
            Err(AnalysisError::InconsistentCharacterization(format!(
                "members reachable from {} have no greatest element",
                self.label(from)
            )))
        }
    }

    /// A maximal chain of `[a, b]` taking the first available upper cover.
    pub fn greedy_chain(&self, a: usize, b: usize) -> Vec<usize> {
        let l = self.lattice();
        let mut chain = vec![a];
        let mut x = a;
        while x != b {
            x = *l
                .upper_covers(x)
                .iter()
                .find(|&&y| l.leq(y, b))
                .expect("a < b has an upper cover below b");
            chain.push(x);
        }
        chain
    }

    fn chain_types(&self, a: usize, b: usize) -> impl Iterator<Item = MinimalType> + '_ {
        let chain = self.greedy_chain(a, b);
        (1..chain.len())
            .map(move |i| self.edge_type(chain[i - 1], chain[i]))
            .collect::<Vec<_>>()
            .into_iter()
    }

    /// t-closure of the bottom as the top of the non-inert part.
    pub fn t_closure_by_chains(&self) -> Result<usize, AnalysisError> {
        self.reach_top(self.bottom(), |k| k != MinimalType::Inert)
    }

    /// t-closure of the bottom, computed by the fixpoint and by edge types.
    pub fn t_closure(&self) -> Result<usize, AnalysisError> {
        let s = self.ring();
        let direct = self.index_of(&t_closure_fixpoint(s, self.member(self.bottom()), &s.full_set()))?;
        let chained = self.t_closure_by_chains()?;
        if direct != chained {
            return Err(AnalysisError::InconsistentCharacterization(format!(
                "t-closure is {} by fixpoint but {} by edge types",
                self.label(direct),
                self.label(chained)
            )));
        }
        Ok(direct)
    }

    /// Seminormalization of the bottom: top of the ramified part.
    pub fn plus_closure(&self) -> Result<usize, AnalysisError> {
        self.reach_top(self.bottom(), |k| k == MinimalType::Ramified)
    }

    /// `a ⊆ b` is infra-integral, decided by residue fields and by the edge
    /// types of one maximal chain.
    pub fn is_infra_integral(&self, a: usize, b: usize) -> Result<bool, AnalysisError> {
        let direct = is_infra_integral_by_definition(self.ring(), self.member(a), self.member(b));
        let chained = self.chain_types(a, b).all(|k| k != MinimalType::Inert);
        self.agree("infra-integral", a, b, direct, chained)
    }

    /// `a ⊆ b` is t-closed, decided on elements and by edge types.
    pub fn is_t_closed(&self, a: usize, b: usize) -> Result<bool, AnalysisError> {
        let direct = is_t_closed_by_definition(self.ring(), self.member(a), self.member(b));
        let chained = self.chain_types(a, b).all(|k| k == MinimalType::Inert);
        self.agree("t-closed", a, b, direct, chained)
    }

    fn agree(&self, what: &str, a: usize, b: usize, direct: bool, chained: bool) -> Result<bool, AnalysisError> {
        if direct == chained {
            Ok(direct)
        } else {
            Err(AnalysisError::InconsistentCharacterization(format!(
                "{} ⊆ {} is {what}: {direct} on elements, {chained} by edge types",
                self.label(a),
                self.label(b)
            )))
        }
    }

    /// Every cover edge is ramified.
    pub fn is_subintegral_chainwise(&self) -> bool {
        self.edges().values().all(|e| e.kind == MinimalType::Ramified)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingExtension;

    fn lattice_over_prime(top: &FiniteCommRing) -> ExtensionLattice {
        ExtensionLattice::new(RingExtension::over_prime_subring(top), 256).unwrap()
    }

    fn f2() -> FiniteCommRing {
        FiniteCommRing::zmod(2).unwrap()
    }

    fn f4() -> FiniteCommRing {
        FiniteCommRing::gf(2, &[1, 1, 1]).unwrap()
    }

    #[test]
    fn t_closure_of_f2_in_f2_times_f4() {
        let s = FiniteCommRing::product(&[&f2(), &f4()]).unwrap();
        let el = lattice_over_prime(&s);
        let t = el.t_closure().unwrap();
        let names: Vec<&str> = el.member(t).ones().map(|x| s.name(x)).collect();
        assert_eq!(names, ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]);
        assert_eq!(el.plus_closure().unwrap(), el.bottom());
    }

    #[test]
    fn closures_at_the_extremes() {
        let el = lattice_over_prime(&f4());
        assert_eq!(el.t_closure().unwrap(), el.bottom());
        assert!(el.is_t_closed(0, 1).unwrap());
        assert!(!el.is_infra_integral(0, 1).unwrap());

        let sq = FiniteCommRing::product(&[&f2(), &f2()]).unwrap();
        let el = lattice_over_prime(&sq);
        assert_eq!(el.t_closure().unwrap(), el.top());
        assert!(el.is_infra_integral(0, 1).unwrap());
        assert!(!el.is_t_closed(0, 1).unwrap());
        assert!(!el.is_subintegral_chainwise());

        let el = ExtensionLattice::new(RingExtension::identity(&f4()), 256).unwrap();
        assert!(el.is_infra_integral(0, 0).unwrap() && el.is_t_closed(0, 0).unwrap());
        assert!(el.is_subintegral_chainwise());
    }

    #[test]
    fn dual_numbers_are_subintegral() {
        let d = FiniteCommRing::poly_quotient(&f2(), &[0, 0, 1]).unwrap();
        let el = lattice_over_prime(&d);
        assert!(el.is_subintegral_chainwise());
        assert_eq!(el.plus_closure().unwrap(), el.top());
    }
}
