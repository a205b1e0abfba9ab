use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use super::{
    is_infra_integral_by_definition, is_t_closed_by_definition, t_closure_fixpoint, AnalysisError,
    ExtensionLattice, MinimalType, PointwiseMinimal,
};
use crate::lattice::{LatticeError, LengthBounds, DEFAULT_SUPERSOLVABLE_CAP};
use crate::ring::ElementSet;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Every check name [`analyze_catenarity`] reports, in output order.
pub const CHECK_NAMES: &[&str] = &[
    "chain_improvement",
    "chains_through_t_closure_have_additive_length",
    "crosswise_exchange_instances",
    "crucial_ideal_is_the_local_support",
    "disjoint_support_sets_imply_graded",
    "edge_classification",
    "graded_iff_locally_graded",
    "graded_iff_t_part_graded_and_2_catenarian",
    "graded_left_modular_iff_supersolvable",
    "inert_then_non_inert_instances",
    "infra_integral_implies_graded",
    "infra_integral_routes_agree",
    "lattice_operations",
    "local_lengths_add_up",
    "loewy_criterion",
    "pointwise_minimal_cases",
    "split_and_t_part_graded_implies_graded",
    "support_equals_crucial_traces",
    "support_sets_criterion",
    "support_sets_union",
    "t_closed_routes_agree",
    "t_closed_support_and_gradedness",
    "t_closure_characterization",
    "t_closure_routes_agree",
    "unbranched_all_local",
    "unbranched_graded_iff_split",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    Fail(String),
    /// The hypothesis of the check is not met, or a size limit was hit.
    Skip(String),
}

impl CheckOutcome {
    fn from_bool(ok: bool, why: impl FnOnce() -> String) -> Self {
        if ok {
            CheckOutcome::Pass
        } else {
            CheckOutcome::Fail(why())
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, CheckOutcome::Fail(_))
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, CheckOutcome::Pass)
    }
}

impl std::fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CheckOutcome::Pass => f.write_str("pass"),
            CheckOutcome::Fail(why) => write!(f, "fail: {why}"),
            CheckOutcome::Skip(why) => write!(f, "skip: {why}"),
        }
    }
}

impl Serialize for CheckOutcome {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AnalysisConfig {
    /// Checks that walk every maximal chain skip above this many chains.
    pub chain_limit: usize,
    pub supersolvable_cap: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            chain_limit: 20_000,
            supersolvable_cap: DEFAULT_SUPERSOLVABLE_CAP,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CatenarityReport {
    pub schema_version: u32,
    pub ring: String,
    pub base_order: usize,
    pub top_order: usize,
    pub members: usize,
    pub graded: bool,
    pub length: LengthBounds,
    pub edge_types: BTreeMap<String, MinimalType>,
    pub t_closure: String,
    pub plus_closure: String,
    pub t_part_graded: bool,
    pub two_catenarian: bool,
    /// Every member is comparable with the t-closure.
    pub split: bool,
    pub infra_integral: bool,
    pub t_closed: bool,
    pub unbranched: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pointwise: Option<PointwiseMinimal>,
    pub checks: BTreeMap<String, CheckOutcome>,
}

impl CatenarityReport {
    pub fn failures(&self) -> impl Iterator<Item = (&str, &CheckOutcome)> {
        self.checks
            .iter()
            .filter(|(_, o)| o.is_fail())
            .map(|(n, o)| (n.as_str(), o))
    }

    pub fn all_pass(&self) -> bool {
        self.failures().next().is_none()
    }
}

fn sorted(mut sets: Vec<ElementSet>) -> Vec<ElementSet> {
    sets.sort_by_key(|s| s.ones().collect::<Vec<_>>());
    sets.dedup();
    sets
}

fn intersect(a: &ElementSet, b: &ElementSet) -> ElementSet {
    let mut c = a.clone();
    c.intersect_with(b);
    c
}

struct Ctx<'a> {
    el: &'a ExtensionLattice,
    config: AnalysisConfig,
    tc: usize,
    graded: bool,
    t_part_graded: bool,
    split: bool,
    checks: BTreeMap<String, CheckOutcome>,
}

impl Ctx<'_> {
    fn record(&mut self, name: &str, outcome: CheckOutcome) {
        debug_assert!(CHECK_NAMES.contains(&name), "unlisted check {name}");
        self.checks.insert(name.to_string(), outcome);
    }

    fn graded_between(&self, a: usize, b: usize) -> bool {
        self.el.lattice().length(a, b).expect("a ≤ b").is_graded()
    }

    fn lengths(&self, a: usize, b: usize) -> Vec<usize> {
        self.el.lattice().maximal_chain_lengths(a, b).expect("a ≤ b")
    }

    fn max_length(&self, a: usize, b: usize) -> usize {
        self.el.lattice().length(a, b).expect("a ≤ b").max
    }

    fn chains(&self) -> Result<Vec<Vec<usize>>, LatticeError> {
        let l = self.el.lattice();
        Ok(l.maximal_chains(l.bottom(), l.top(), self.config.chain_limit)?
            .into_iter()
            .map(|c| c.elements().to_vec())
            .collect())
    }

    fn comparable_pairs(&self) -> Vec<(usize, usize)> {
        let l = self.el.lattice();
        (0..l.len())
            .flat_map(|a| (0..l.len()).filter(move |&b| l.leq(a, b)).map(move |b| (a, b)))
            .collect()
    }

    /// Triples `u ⋖ t ⋖ v` with `u ⋖ t` inert and `t ⋖ v` non-inert.
    fn inert_pairs(&self) -> Vec<(usize, usize, usize)> {
        let l = self.el.lattice();
        l.covers()
            .iter()
            .filter(|&&(u, t)| self.el.edge_type(u, t) == MinimalType::Inert)
            .flat_map(|&(u, t)| {
                l.upper_covers(t)
                    .iter()
                    .filter(move |&&v| self.el.edge_type(t, v) != MinimalType::Inert)
                    .map(move |&v| (u, t, v))
            })
            .collect()
    }
}

/// Runs every named check on `[R, S]`. Failures are reported, not returned
/// as errors; errors are reserved for the t-closure not being a member.
pub fn analyze_catenarity(el: &ExtensionLattice, config: AnalysisConfig) -> Result<CatenarityReport, AnalysisError> {
    let l = el.lattice();
    let (bottom, top) = (el.bottom(), el.top());
    let s = el.ring();
    let full = s.full_set();
    let length = l.length(bottom, top).expect("bottom ≤ top");
    let graded = l.is_graded().graded;

    let mut checks = BTreeMap::new();
    let tc = match el.t_closure() {
        Ok(tc) => {
            checks.insert("t_closure_routes_agree".to_string(), CheckOutcome::Pass);
            tc
        }
        Err(e) => {
            checks.insert("t_closure_routes_agree".to_string(), CheckOutcome::Fail(e.to_string()));
            el.index_of(&t_closure_fixpoint(s, el.member(bottom), &full))?
        }
    };
    let pc = el.plus_closure();
    let t_part_graded = l.length(tc, top).expect("t-closure ≤ top").is_graded();
    let split = (0..l.len()).all(|x| l.comparable(x, tc));
    let mut cx = Ctx {
        el,
        config,
        tc,
        graded,
        t_part_graded,
        split,
        checks,
    };

    cx.record(
        "edge_classification",
        CheckOutcome::from_bool(el.edges().len() == l.covers().len(), || "unclassified cover".into()),
    );
    cx.record(
        "lattice_operations",
        CheckOutcome::from_bool(el.subrings().operations_agree(s), || {
            "meets or joins differ from intersections or generated subrings".into()
        }),
    );
    routes(&mut cx);
    t_closure_characterization(&mut cx);
    chain_checks(&mut cx);
    support_checks(&mut cx)?;
    local_checks(&mut cx)?;
    lattice_checks(&mut cx);
    exchange_checks(&mut cx)?;

    let pointwise = if bottom == top {
        cx.record("pointwise_minimal_cases", CheckOutcome::Skip("extension is not proper".into()));
        None
    } else {
        let pm = el.pointwise_minimal()?;
        let outcome = if !pm.pointwise_minimal {
            CheckOutcome::Skip("not pointwise minimal".into())
        } else {
            match pm.case {
                None => CheckOutcome::Fail("no structural case applies".into()),
                Some(case) => CheckOutcome::from_bool(pm.conditions_hold && case.forces_graded() == graded, || {
                    format!("{case:?}: conditions {}, graded {graded}", pm.conditions_hold)
                }),
            }
        };
        cx.record("pointwise_minimal_cases", outcome);
        Some(pm)
    };

    let infra_integral = is_infra_integral_by_definition(s, el.member(bottom), &full);
    let t_closed = is_t_closed_by_definition(s, el.member(bottom), &full);
    let edge_types = el
        .edges()
        .iter()
        .map(|(&(a, b), e)| (format!("{} -> {}", el.label(a), el.label(b)), e.kind))
        .collect();
    Ok(CatenarityReport {
        schema_version: REPORT_SCHEMA_VERSION,
        ring: s.recipe().to_string(),
        base_order: el.extension().base().order(),
        top_order: s.order(),
        members: el.len(),
        graded,
        length,
        edge_types,
        t_closure: el.label(tc).to_string(),
        plus_closure: pc.map(|p| el.label(p).to_string()).unwrap_or_else(|e| e.to_string()),
        t_part_graded,
        two_catenarian: l.is_2_catenarian(),
        split,
        infra_integral,
        t_closed,
        unbranched: s.is_local(&full),
        pointwise,
        checks: cx.checks,
    })
}

fn routes(cx: &mut Ctx) {
    let pairs = cx.comparable_pairs();
    let mut infra = CheckOutcome::Pass;
    let mut closed = CheckOutcome::Pass;
    for &(a, b) in &pairs {
        if let (CheckOutcome::Pass, Err(e)) = (&infra, cx.el.is_infra_integral(a, b)) {
            infra = CheckOutcome::Fail(e.to_string());
        }
        if let (CheckOutcome::Pass, Err(e)) = (&closed, cx.el.is_t_closed(a, b)) {
            closed = CheckOutcome::Fail(e.to_string());
        }
    }
    cx.record("infra_integral_routes_agree", infra);
    cx.record("t_closed_routes_agree", closed);
}

/// The t-closure is the greatest member infra-integral over the bottom and
/// the smallest member below which the top is t-closed.
fn t_closure_characterization(cx: &mut Ctx) {
    let (el, tc) = (cx.el, cx.tc);
    let s = el.ring();
    let (bottom, top) = (el.bottom(), el.top());
    let l = el.lattice();
    let bad = (0..el.len()).find(|&x| {
        let infra = is_infra_integral_by_definition(s, el.member(bottom), el.member(x));
        let closed = is_t_closed_by_definition(s, el.member(x), el.member(top));
        infra != l.leq(x, tc) || closed != l.leq(tc, x)
    });
    cx.record(
        "t_closure_characterization",
        CheckOutcome::from_bool(bad.is_none(), || {
            format!("{} contradicts the extremal description of {}", el.label(bad.unwrap()), el.label(tc))
        }),
    );
}

fn chain_checks(cx: &mut Ctx) {
    let el = cx.el;
    let l = el.lattice();
    let (bottom, top, tc) = (el.bottom(), el.top(), cx.tc);

    let two = l.is_2_catenarian();
    cx.record(
        "graded_iff_t_part_graded_and_2_catenarian",
        CheckOutcome::from_bool(cx.graded == (cx.t_part_graded && two), || {
            format!("graded {}, upper part graded {}, 2-catenarian {two}", cx.graded, cx.t_part_graded)
        }),
    );

    cx.record(
        "split_and_t_part_graded_implies_graded",
        if cx.split && cx.t_part_graded {
            CheckOutcome::from_bool(cx.graded, || "split with graded upper part but not graded".into())
        } else {
            CheckOutcome::Skip("hypothesis not met".into())
        },
    );

    let lower = cx.lengths(bottom, tc);
    let upper = cx.lengths(tc, top);
    cx.record(
        "chains_through_t_closure_have_additive_length",
        if upper.len() == 1 {
            CheckOutcome::from_bool(lower.len() == 1, || format!("lower part has chain lengths {lower:?}"))
        } else {
            CheckOutcome::Skip("upper part not graded".into())
        },
    );

    // Chains through the t-closure realize exactly these lengths.
    let through: Vec<usize> = upper.iter().map(|u| lower[0] + u).collect();
    let best = lower.last().copied().unwrap_or(0) + upper.last().copied().unwrap_or(0);
    let outcome = match cx.chains() {
        Err(e) => CheckOutcome::Skip(e.to_string()),
        Ok(chains) => {
            let bad = chains.iter().find(|c| {
                let len = c.len() - 1;
                let pattern = (2..c.len()).any(|i| {
                    let (u, t, v) = (c[i - 2], c[i - 1], c[i]);
                    el.edge_type(u, t) == MinimalType::Inert
                        && el.edge_type(t, v) != MinimalType::Inert
                        && el.edges()[&(u, t)].crucial == el.edges()[&(t, v)].crucial
                });
                if pattern {
                    best <= len
                } else {
                    best < len || (lower.len() == 1 && !through.contains(&len))
                }
            });
            CheckOutcome::from_bool(bad.is_none(), || {
                let c = bad.unwrap();
                let labels: Vec<&str> = c.iter().map(|&x| el.label(x)).collect();
                format!("chain {} has no matching chain through the t-closure", labels.join(" < "))
            })
        }
    };
    cx.record("chain_improvement", outcome);

    let infra = is_infra_integral_by_definition(el.ring(), el.member(bottom), &el.ring().full_set());
    cx.record(
        "infra_integral_implies_graded",
        if infra {
            CheckOutcome::from_bool(cx.graded, || "infra-integral but not graded".into())
        } else {
            CheckOutcome::Skip("not infra-integral".into())
        },
    );
}

fn support_checks(cx: &mut Ctx) -> Result<(), AnalysisError> {
    let el = cx.el;
    let s = el.ring();
    let full = s.full_set();
    let (bottom, top, tc) = (el.bottom(), el.top(), cx.tc);
    let r = el.member(bottom);
    let lower_support = el.support_over(bottom, bottom, tc);
    let upper_support = el.support_over(bottom, tc, top);
    let whole_support = el.support_over(bottom, bottom, top);
    let max_s = s.maximal_ideals(&full);
    let lying_in = |supp: &[ElementSet]| -> Vec<ElementSet> {
        max_s
            .iter()
            .filter(|n| supp.contains(&intersect(n, r)))
            .cloned()
            .collect()
    };
    let m1 = lying_in(&lower_support);
    let m2 = lying_in(&upper_support);
    let mut union = m1.clone();
    union.extend(m2.iter().cloned());
    cx.record(
        "support_sets_union",
        CheckOutcome::from_bool(sorted(union) == sorted(lying_in(&whole_support)), || {
            "maximal ideals over the two supports do not cover those over the whole support".into()
        }),
    );

    let both: Vec<&ElementSet> = m1.iter().filter(|n| m2.contains(n)).collect();
    if cx.t_part_graded {
        let witness = cx.inert_pairs().into_iter().any(|(u, t, v)| {
            let (c1, c2) = (&el.edges()[&(u, t)].crucial, &el.edges()[&(t, v)].crucial);
            both.iter().any(|n| {
                let trace = intersect(n, el.member(t));
                trace == *c1 && trace == *c2
            })
        });
        cx.record(
            "support_sets_criterion",
            CheckOutcome::from_bool(cx.graded != witness, || {
                format!("graded {} but shared maximal ideal witness {witness}", cx.graded)
            }),
        );
        cx.record(
            "disjoint_support_sets_imply_graded",
            if both.is_empty() {
                CheckOutcome::from_bool(cx.graded, || "disjoint support sets but not graded".into())
            } else {
                CheckOutcome::Skip("support sets meet".into())
            },
        );
    } else {
        for name in ["support_sets_criterion", "disjoint_support_sets_imply_graded"] {
            cx.record(name, CheckOutcome::Skip("upper part not graded".into()));
        }
    }

    // Support against crucial traces along maximal chains.
    let support = sorted(el.extension().support());
    let chains = match cx.chains() {
        Ok(chains) => chains,
        Err(_) => vec![el.greedy_chain(bottom, top)],
    };
    let bad = chains.iter().find(|c| {
        let traces = c
            .windows(2)
            .map(|w| intersect(&el.edges()[&(w[0], w[1])].crucial, r))
            .collect();
        sorted(traces) != support
    });
    cx.record(
        "support_equals_crucial_traces",
        CheckOutcome::from_bool(bad.is_none(), || "a maximal chain's crucial traces differ from the support".into()),
    );

    let bad_edge = el
        .edges()
        .iter()
        .find(|(&(a, b), e)| el.support_over(a, a, b) != vec![e.crucial.clone()]);
    cx.record(
        "crucial_ideal_is_the_local_support",
        CheckOutcome::from_bool(bad_edge.is_none(), || {
            let (&(a, b), _) = bad_edge.unwrap();
            format!("{} ⋖ {} is locally nontrivial away from its crucial ideal", el.label(a), el.label(b))
        }),
    );

    let t_closed = is_t_closed_by_definition(s, r, &full);
    let outcome = if !t_closed || bottom == top {
        CheckOutcome::Skip("not a proper t-closed extension".into())
    } else {
        let i = el.conductor(bottom, top);
        let above_i: Vec<ElementSet> = s.maximal_ideals(r).into_iter().filter(|p| i.is_subset(p)).collect();
        let supports_match = sorted(above_i) == support;
        let extended = max_s
            .iter()
            .filter(|q| i.is_subset(q))
            .all(|q| s.ideal_generated(&full, intersect(q, r).ones()) == *q);
        CheckOutcome::from_bool(supports_match && extended && cx.graded, || {
            format!("support matches {supports_match}, ideals extend {extended}, graded {}", cx.graded)
        })
    };
    cx.record("t_closed_support_and_gradedness", outcome);
    Ok(())
}

fn local_checks(cx: &mut Ctx) -> Result<(), AnalysisError> {
    let el = cx.el;
    let ext = el.extension();
    let s = el.ring();
    let mut total = 0;
    let mut all_graded = true;
    for m in ext.support() {
        let local = ExtensionLattice::new(ext.localize_at(&m)?, s.order())?;
        let l = local.lattice();
        let bounds = l.length(l.bottom(), l.top()).expect("bottom ≤ top");
        total += bounds.max;
        all_graded &= l.is_graded().graded;
    }
    let global = cx.max_length(el.bottom(), el.top());
    cx.record(
        "local_lengths_add_up",
        CheckOutcome::from_bool(total == global, || format!("local lengths sum to {total}, length is {global}")),
    );
    cx.record(
        "graded_iff_locally_graded",
        CheckOutcome::from_bool(all_graded == cx.graded, || {
            format!("locally graded {all_graded}, graded {}", cx.graded)
        }),
    );

    let unbranched = s.is_local(&s.full_set());
    if unbranched {
        let bad = (0..el.len()).find(|&x| !s.is_local(el.member(x)));
        cx.record(
            "unbranched_all_local",
            CheckOutcome::from_bool(bad.is_none(), || format!("{} is not local", el.label(bad.unwrap()))),
        );
        let expected = cx.split && cx.t_part_graded;
        cx.record(
            "unbranched_graded_iff_split",
            CheckOutcome::from_bool(cx.graded == expected, || {
                format!("graded {}, split with graded upper part {expected}", cx.graded)
            }),
        );
    } else {
        for name in ["unbranched_all_local", "unbranched_graded_iff_split"] {
            cx.record(name, CheckOutcome::Skip("top ring is not local".into()));
        }
    }
    Ok(())
}

fn lattice_checks(cx: &mut Ctx) {
    let el = cx.el;
    let l = el.lattice();
    let outcome = if l.is_p_extension() {
        let series = l.loewy_series();
        let steps_graded = series.windows(2).all(|w| cx.graded_between(w[0], w[1]));
        let sum: usize = series.windows(2).map(|w| cx.max_length(w[0], w[1])).sum();
        let length = cx.max_length(el.bottom(), el.top());
        CheckOutcome::from_bool(steps_graded == cx.graded && (!cx.graded || sum == length), || {
            format!("steps graded {steps_graded}, graded {}, step lengths sum {sum}, length {length}", cx.graded)
        })
    } else {
        CheckOutcome::Skip("lattice is not covered by its Loewy steps".into())
    };
    cx.record("loewy_criterion", outcome);

    let outcome = match l.is_supersolvable(cx.config.supersolvable_cap) {
        Err(e) => CheckOutcome::Skip(e.to_string()),
        Ok(ss) => {
            let lm = l.is_left_modular_lattice();
            CheckOutcome::from_bool(ss == (cx.graded && lm), || {
                format!("supersolvable {ss}, graded {}, left modular {lm}", cx.graded)
            })
        }
    };
    cx.record("graded_left_modular_iff_supersolvable", outcome);
}

fn exchange_checks(cx: &mut Ctx) -> Result<(), AnalysisError> {
    let el = cx.el;
    let l = el.lattice();
    let mut tried = 0;
    let mut failed = None;
    for &(r, s) in l.covers() {
        for &t in l.upper_covers(s) {
            match el.check_crosswise_exchange(r, s, t) {
                Err(AnalysisError::HypothesisNotMet(_)) => {}
                Err(e) => return Err(e),
                Ok(report) => {
                    tried += 1;
                    if !report.holds() && failed.is_none() {
                        failed = Some((r, s, t));
                    }
                }
            }
        }
    }
    let outcome = match (tried, failed) {
        (0, _) => CheckOutcome::Skip("no exchangeable pair of covers".into()),
        (_, None) => CheckOutcome::Pass,
        (_, Some((r, s, t))) => CheckOutcome::Fail(format!(
            "exchange fails on {} ⋖ {} ⋖ {}",
            el.label(r),
            el.label(s),
            el.label(t)
        )),
    };
    cx.record("crosswise_exchange_instances", outcome);

    let pairs = cx.inert_pairs();
    let mut failed = None;
    for &(u, t, v) in &pairs {
        if !el.check_inert_then_non_inert(u, t, v)?.holds && failed.is_none() {
            failed = Some((u, t, v));
        }
    }
    let outcome = match (pairs.len(), failed) {
        (0, _) => CheckOutcome::Skip("no inert cover below a non-inert one".into()),
        (_, None) => CheckOutcome::Pass,
        (_, Some((u, t, v))) => CheckOutcome::Fail(format!(
            "{} ⋖ {} ⋖ {} violates the inert/non-inert pattern",
            el.label(u),
            el.label(t),
            el.label(v)
        )),
    };
    cx.record("inert_then_non_inert_instances", outcome);
    Ok(())
}
