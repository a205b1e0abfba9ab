use serde::Serialize;

use super::{t_closure_fixpoint, AnalysisError, ExtensionLattice, MinimalType};
use crate::ring::ElementSet;

fn intersect(a: &ElementSet, b: &ElementSet) -> ElementSet {
    let mut c = a.clone();
    c.intersect_with(b);
    c
}

/// Outcome of exchanging two stacked minimal extensions `r ⋖ s ⋖ t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosswiseReport {
    pub interval_size: usize,
    /// The fourth member of `[r, t]` when the interval has four members.
    pub other: Option<usize>,
    pub types_swapped: bool,
    pub crucial_ideals_match: bool,
}

impl CrosswiseReport {
    pub fn holds(&self) -> bool {
        self.interval_size == 4 && self.other.is_some() && self.types_swapped && self.crucial_ideals_match
    }
}

/// Outcome for an inert cover followed by a non-inert one, `u ⋖ t ⋖ v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InertPairReport {
    pub conductors_equal: bool,
    pub interval_size: usize,
    pub max_length: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointwiseCase {
    /// Seminormal and infra-integral.
    InfraIntegralSeminormal,
    Subintegral,
    TClosed,
    /// Seminormalization equals the t-closure, strictly between the ends.
    SeminormalIsTClosure,
}

impl PointwiseCase {
    /// Every case except the last forces a graded lattice.
    pub fn forces_graded(self) -> bool {
        self != PointwiseCase::SeminormalIsTClosure
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointwiseMinimal {
    pub pointwise_minimal: bool,
    pub case: Option<PointwiseCase>,
    /// The structural conditions attached to the case are met.
    pub conditions_hold: bool,
}

impl ExtensionLattice {
    fn require_cover(&self, a: usize, b: usize) -> Result<MinimalType, AnalysisError> {
        self.edge(a, b).map(|e| e.kind).ok_or_else(|| {
            AnalysisError::HypothesisNotMet(format!("{} ⋖ {} is not a cover", self.label(a), self.label(b)))
        })
    }

    /// Exchange of `r ⋖ s ⋖ t` when the crucial ideal of `s ⋖ t` traced on
    /// `r` is not inside the crucial ideal of `r ⋖ s`: the interval has a
    /// fourth member `s'` with the two types swapped, `(s' : t) = M s'` and
    /// `(r : s')` the trace.
    pub fn check_crosswise_exchange(&self, r: usize, s: usize, t: usize) -> Result<CrosswiseReport, AnalysisError> {
        let lower = self.require_cover(r, s)?;
        let upper = self.require_cover(s, t)?;
        let m = &self.edges()[&(r, s)].crucial;
        let n = &self.edges()[&(s, t)].crucial;
        let p = intersect(n, self.member(r));
        if p.is_subset(m) {
            return Err(AnalysisError::HypothesisNotMet(
                "trace of the upper crucial ideal lies in the lower one".into(),
            ));
        }
        let members = self.lattice().interval_members(r, t).expect("r ≤ t");
        let mut report = CrosswiseReport {
            interval_size: members.len(),
            other: None,
            types_swapped: false,
            crucial_ideals_match: false,
        };
        if members.len() != 4 {
            return Ok(report);
        }
        let other = *members.iter().find(|&&x| x != r && x != s && x != t).expect("four members");
        report.other = Some(other);
        let (Some(first), Some(second)) = (self.edge(r, other), self.edge(other, t)) else {
            return Ok(report);
        };
        report.types_swapped = first.kind == upper && second.kind == lower;
        let m_other = self.ring().ideal_generated(self.member(other), m.ones());
        report.crucial_ideals_match = first.crucial == p && second.crucial == m_other;
        Ok(report)
    }

    /// `u ⋖ t` inert and `t ⋖ v` non-inert. Distinct conductors give a
    /// four-member interval whose other middle member is the t-closure of `u`
    /// in `v`, with the types swapped; equal conductors force a chain of
    /// length above two.
    pub fn check_inert_then_non_inert(&self, u: usize, t: usize, v: usize) -> Result<InertPairReport, AnalysisError> {
        let first = self.require_cover(u, t)?;
        let second = self.require_cover(t, v)?;
        if first != MinimalType::Inert || second == MinimalType::Inert {
            return Err(AnalysisError::TypePatternMismatch(format!(
                "{} then {}",
                first.as_str(),
                second.as_str()
            )));
        }
        let equal = self.edges()[&(u, t)].crucial == self.edges()[&(t, v)].crucial;
        let members = self.lattice().interval_members(u, v).expect("u ≤ v");
        let max_length = self.lattice().length(u, v).expect("u ≤ v").max;
        let holds = if equal {
            max_length > 2
        } else {
            let closure = t_closure_fixpoint(self.ring(), self.member(u), self.member(v));
            let tc = self.index_of(&closure)?;
            members.len() == 4
                && members.contains(&tc)
                && self.edge(u, tc).map(|e| e.kind) == Some(second)
                && self.edge(tc, v).map(|e| e.kind) == Some(MinimalType::Inert)
        };
        Ok(InertPairReport {
            conductors_equal: equal,
            interval_size: members.len(),
            max_length,
            holds,
        })
    }

    /// Whether adjoining any single element of `S \ R` gives a minimal
    /// extension of `R`, and if so which of the four structural cases holds.
    pub fn pointwise_minimal(&self) -> Result<PointwiseMinimal, AnalysisError> {
        let (b, top) = (self.bottom(), self.top());
        if b == top {
            return Err(AnalysisError::HypothesisNotMet("extension is not proper".into()));
        }
        let s = self.ring();
        let r = self.member(b);
        for x in s.full_set().difference(r) {
            let idx = self.index_of(&s.close_over(r, [x]))?;
            if !self.lattice().covers_pair(b, idx) {
                return Ok(PointwiseMinimal {
                    pointwise_minimal: false,
                    case: None,
                    conditions_hold: true,
                });
            }
        }

        let full = s.full_set();
        let size = |x: &ElementSet| x.count_ones(..);
        let m = self.conductor(b, top);
        let tc = self.t_closure()?;
        let pc = self.plus_closure()?;
        let q = size(r) / size(&m);
        let p = (2..=q).find(|d| q % d == 0).unwrap_or(1);
        let over_m: Vec<ElementSet> = s.maximal_ideals(&full).into_iter().filter(|n| m.is_subset(n)).collect();
        let square_zero_over_m = over_m.len() == 1 && over_m[0].ones().all(|x| m.contains(s.mul(x, x)));
        let frobenius_lands_in_r = full.ones().all(|x| r.contains(s.pow(x, p as u64)));

        let case = if pc == b && tc == top {
            Some(PointwiseCase::InfraIntegralSeminormal)
        } else if pc == top {
            Some(PointwiseCase::Subintegral)
        } else if tc == b {
            Some(PointwiseCase::TClosed)
        } else if pc == tc {
            Some(PointwiseCase::SeminormalIsTClosure)
        } else {
            None
        };
        let structural = match case {
            Some(PointwiseCase::InfraIntegralSeminormal) => {
                let n = over_m.len();
                size(&full) / size(&m) == q.pow(n as u32)
                    && over_m.iter().all(|x| size(&full) / size(x) == q)
                    && (q == 2 || n == 2)
            }
            Some(PointwiseCase::Subintegral) => square_zero_over_m,
            Some(PointwiseCase::TClosed) => {
                let residue = size(&full) / size(&m);
                let mut degree = 0;
                let mut rest = residue;
                while rest > 1 && rest % q == 0 {
                    rest /= q;
                    degree += 1;
                }
                over_m.first() == Some(&m)
                    && (crate::fpoly::is_prime(degree) || frobenius_lands_in_r)
            }
            Some(PointwiseCase::SeminormalIsTClosure) => square_zero_over_m && frobenius_lands_in_r,
            None => false,
        };
        let conductor_maximal = s.maximal_ideals(r).contains(&m);
        Ok(PointwiseMinimal {
            pointwise_minimal: true,
            case,
            conditions_hold: conductor_maximal && structural,
        })
    }
}
