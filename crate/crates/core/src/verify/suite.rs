use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::corpus::{extension_corpus, named_extensions, ring_corpus, CorpusEntry};
use crate::analysis::{
    analyze_catenarity, idealization_transfer, product_transfer, quotient_transfer, AnalysisConfig, CheckOutcome,
    ExtensionLattice, REPORT_SCHEMA_VERSION,
};
use crate::group::{catalog, supersolvable_iff_graded};
use crate::lattice::{unlabeled_lattices, FiniteLattice, OrderCode};
use crate::ring::{FiniteCommRing, Module, RingBuilder, RingExtension, RingSpec};
use crate::tower::{big_omega, check_polynomial_lattice, TowerSpec};

/// Failure messages kept per check; the counts stay exact.
const KEPT_FAILURES: usize = 20;

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Largest ring order in the exhaustive extension corpus.
    pub corpus_order: usize,
    pub ring_cap: usize,
    pub include_named: bool,
    /// Largest ring order used for quotient, idealization and product checks.
    pub transfer_order: usize,
    pub group_order: usize,
    pub supersolvable_cap: usize,
    pub chain_limit: usize,
    /// Every lattice up to this size is checked for the gradedness oracle and
    /// dual invariants.
    pub lattice_size: usize,
    /// Every lattice up to this size is checked for supersolvability.
    pub supersolvable_lattice_size: usize,
    pub towers: Vec<TowerSpec>,
    /// Extra rings given as explicit tables; each must satisfy the axioms.
    pub extra_tables: Vec<(String, RingSpec)>,
    /// Sections to run, all when `None`. Names are from [`SECTION_NAMES`].
    pub sections: Option<Vec<String>>,
}

pub const SECTION_NAMES: &[&str] = &["ring_axioms", "extensions", "transfers", "groups", "towers", "lattices"];

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            corpus_order: 16,
            ring_cap: 256,
            include_named: true,
            transfer_order: 8,
            group_order: 24,
            supersolvable_cap: 64,
            chain_limit: 20_000,
            lattice_size: 10,
            supersolvable_lattice_size: 10,
            towers: [4, 6, 12].iter().map(|&n| TowerSpec { p: 2, n }).collect(),
            extra_tables: Vec::new(),
            sections: None,
        }
    }
}

impl SuiteConfig {
    /// Shrinks every size bound to at most `cap`.
    pub fn capped(mut self, cap: usize) -> Self {
        self.corpus_order = self.corpus_order.min(cap);
        self.transfer_order = self.transfer_order.min(cap);
        self.group_order = self.group_order.min(cap);
        self.lattice_size = self.lattice_size.min(cap);
        self.supersolvable_lattice_size = self.supersolvable_lattice_size.min(cap);
        self.include_named &= cap >= 64;
        self.towers.retain(|t| (t.n as usize) <= cap);
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

impl CheckTally {
    fn add(&mut self, subject: &str, outcome: &CheckOutcome) {
        match outcome {
            CheckOutcome::Pass => self.pass += 1,
            CheckOutcome::Skip(_) => self.skip += 1,
            CheckOutcome::Fail(why) => {
                self.fail += 1;
                if self.failures.len() < KEPT_FAILURES {
                    self.failures.push(format!("{subject}: {why}"));
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectionReport {
    pub name: String,
    pub subjects: usize,
    pub checks: BTreeMap<String, CheckTally>,
}

impl SectionReport {
    fn new(name: &str) -> Self {
        SectionReport {
            name: name.to_string(),
            subjects: 0,
            checks: BTreeMap::new(),
        }
    }

    fn absorb(&mut self, subject: &str, outcomes: &[(String, CheckOutcome)]) {
        self.subjects += 1;
        for (check, outcome) in outcomes {
            self.checks.entry(check.clone()).or_default().add(subject, outcome);
        }
    }

    pub fn failed(&self) -> usize {
        self.checks.values().map(|t| t.fail).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub sections: Vec<SectionReport>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn section(&self, name: &str) -> Option<&SectionReport> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn tally(&self, section: &str, check: &str) -> Option<&CheckTally> {
        self.section(section)?.checks.get(check)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            out.push_str(&format!("[{}] {} subjects\n", s.name, s.subjects));
            for (name, t) in &s.checks {
                let status = if t.fail > 0 { "FAIL" } else { "ok" };
                out.push_str(&format!(
                    "  {status:<4} {name}: {} pass, {} fail, {} skip\n",
                    t.pass, t.fail, t.skip
                ));
                for f in &t.failures {
                    out.push_str(&format!("       {f}\n"));
                }
            }
        }
        out.push_str(&format!(
            "total: {} pass, {} fail, {} skip\n",
            self.passed, self.failed, self.skipped
        ));
        out
    }
}

type Outcomes = Vec<(String, CheckOutcome)>;

fn outcome(ok: bool, why: impl FnOnce() -> String) -> CheckOutcome {
    if ok {
        CheckOutcome::Pass
    } else {
        CheckOutcome::Fail(why())
    }
}

fn one(name: &str, o: CheckOutcome) -> Outcomes {
    vec![(name.to_string(), o)]
}

/// Associativity, commutativity, distributivity, identities and additive
/// inverses, checked directly on the tables.
pub fn ring_axioms_hold(r: &FiniteCommRing) -> Result<(), String> {
    let n = r.order();
    let (z, o) = (r.zero(), r.one());
    for a in 0..n {
        if r.add(a, z) != a || r.mul(a, o) != a {
            return Err(format!("identity fails at {}", r.name(a)));
        }
        if !(0..n).any(|b| r.add(a, b) == z) {
            return Err(format!("{} has no negative", r.name(a)));
        }
        for b in 0..n {
            if r.add(a, b) != r.add(b, a) || r.mul(a, b) != r.mul(b, a) {
                return Err(format!("not commutative at {}, {}", r.name(a), r.name(b)));
            }
            for c in 0..n {
                if r.add(r.add(a, b), c) != r.add(a, r.add(b, c))
                    || r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c))
                    || r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c))
                {
                    return Err(format!("axiom fails at {}, {}, {}", r.name(a), r.name(b), r.name(c)));
                }
            }
        }
    }
    Ok(())
}

fn ring_section(config: &SuiteConfig, builder: &RingBuilder, rings: &[FiniteCommRing]) -> SectionReport {
    let mut section = SectionReport::new("ring_axioms");
    let results: Vec<(String, Outcomes)> = rings
        .par_iter()
        .map(|r| (r.recipe().to_string(), one("ring_axioms", outcome_of(ring_axioms_hold(r)))))
        .collect();
    for (subject, o) in &results {
        section.absorb(subject, o);
    }
    for (name, spec) in &config.extra_tables {
        let o = match spec.build(builder) {
            Ok(r) => outcome_of(ring_axioms_hold(&r)),
            Err(e) => CheckOutcome::Fail(e.to_string()),
        };
        section.absorb(name, &one("ring_axioms", o));
    }
    section
}

fn outcome_of(r: Result<(), String>) -> CheckOutcome {
    match r {
        Ok(()) => CheckOutcome::Pass,
        Err(e) => CheckOutcome::Fail(e),
    }
}

fn extension_section(config: &SuiteConfig, entries: &[CorpusEntry]) -> SectionReport {
    let analysis = AnalysisConfig {
        chain_limit: config.chain_limit,
        supersolvable_cap: config.supersolvable_cap,
    };
    let results: Vec<Outcomes> = entries
        .par_iter()
        .map(|e| match ExtensionLattice::new(e.ext.clone(), config.ring_cap) {
            Ok(el) => match analyze_catenarity(&el, analysis) {
                Ok(report) => report.checks.into_iter().collect(),
                Err(err) => one("analysis_completes", CheckOutcome::Fail(err.to_string())),
            },
            Err(err) => one("analysis_completes", CheckOutcome::Fail(err.to_string())),
        })
        .collect();
    let mut section = SectionReport::new("extensions");
    for (e, o) in entries.iter().zip(&results) {
        section.absorb(&e.name, o);
    }
    section
}

fn transfer_section(config: &SuiteConfig, builder: &RingBuilder, entries: &[CorpusEntry]) -> SectionReport {
    let small: Vec<&CorpusEntry> = entries
        .iter()
        .filter(|e| e.ext.top().order() <= config.transfer_order)
        .collect();
    let cap = config.ring_cap;
    let report = |r: Result<crate::analysis::TransferReport, crate::analysis::AnalysisError>| match r {
        Ok(t) => outcome(t.holds, || format!("{}: {}", t.construction, t.detail)),
        Err(e) => CheckOutcome::Fail(e.to_string()),
    };
    let mut results: Vec<(String, Outcomes)> = small
        .par_iter()
        .map(|e| {
            let s = e.ext.top();
            let mut out = Outcomes::new();
            for j in s.ideals(&s.full_set()) {
                if j.count_ones(..) < s.order() {
                    out.push(("quotient_by_ideal".into(), report(quotient_transfer(&e.ext, &j, cap))));
                }
            }
            if s.order() * s.order() <= cap {
                match Module::free(s, 1) {
                    Ok(m) => out.push(("idealization".into(), report(idealization_transfer(&e.ext, &m, builder, cap)))),
                    Err(err) => out.push(("idealization".into(), CheckOutcome::Fail(err.to_string()))),
                }
            }
            (e.name.clone(), out)
        })
        .collect();
    let pairs: Vec<(usize, usize)> = (0..small.len())
        .flat_map(|i| (i..small.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| small[i].ext.top().order() * small[j].ext.top().order() <= config.transfer_order * 4)
        .collect();
    results.extend(pairs.par_iter().map(|&(i, j)| {
        let parts: [&RingExtension; 2] = [&small[i].ext, &small[j].ext];
        (
            format!("{} times {}", small[i].name, small[j].name),
            one("product", report(product_transfer(&parts, builder, cap))),
        )
    }).collect::<Vec<_>>());
    let mut section = SectionReport::new("transfers");
    for (subject, o) in &results {
        section.absorb(subject, o);
    }
    section
}

fn group_section(config: &SuiteConfig) -> SectionReport {
    let groups = catalog(config.group_order.min(24));
    let results: Vec<(String, Outcomes)> = groups
        .par_iter()
        .map(|e| {
            let g = &e.group;
            let mut out = Outcomes::new();
            match supersolvable_iff_graded(g, config.supersolvable_cap) {
                Ok(r) => {
                    out.push((
                        "supersolvable_iff_subgroup_lattice_graded".into(),
                        outcome(r.holds, || format!("{r:?}")),
                    ));
                }
                Err(err) => out.push(("supersolvable_iff_subgroup_lattice_graded".into(), CheckOutcome::Fail(err.to_string()))),
            }
            let abelian = if g.is_abelian() {
                match g.subgroup_lattice() {
                    Ok(l) => {
                        let lengths = l.maximal_chain_lengths(l.bottom(), l.top()).unwrap_or_default();
                        let want = big_omega(g.order() as u64);
                        outcome(lengths == [want], || format!("lengths {lengths:?}, expected {want}"))
                    }
                    Err(err) => CheckOutcome::Fail(err.to_string()),
                }
            } else {
                CheckOutcome::Skip("not abelian".into())
            };
            out.push(("abelian_length_is_exponent_sum".into(), abelian));
            (e.name.clone(), out)
        })
        .collect();
    let mut section = SectionReport::new("groups");
    for (subject, o) in &results {
        section.absorb(subject, o);
    }
    section
}

fn tower_section(config: &SuiteConfig) -> SectionReport {
    let mut section = SectionReport::new("towers");
    for spec in &config.towers {
        let o = match spec.build().and_then(|t| check_polynomial_lattice(&t)) {
            Ok(r) => outcome(r.holds, || format!("{r:?}")),
            Err(e) => CheckOutcome::Fail(e.to_string()),
        };
        section.absorb(&format!("F{}^{}", spec.p, spec.n), &one("minimal_polynomial_lattice", o));
    }
    section
}

/// Checks on one lattice: rank-based gradedness against the lengths of all
/// maximal chains, invariants of the dual and, if requested, supersolvability.
pub fn lattice_outcomes(l: &FiniteLattice, supersolvable_cap: Option<usize>) -> Outcomes {
    let mut out = Outcomes::new();
    let graded = l.is_graded().graded;
    let chains_agree = match l.maximal_chains(l.bottom(), l.top(), usize::MAX) {
        Ok(chains) => {
            // Gradedness of every interval follows from equal maximal chain
            // lengths between every comparable pair.
            let all_intervals = (0..l.len()).all(|a| {
                (0..l.len()).filter(|&b| l.leq(a, b)).all(|b| {
                    l.maximal_chain_lengths(a, b).map(|v| v.len() == 1).unwrap_or(false)
                })
            });
            let lengths: Vec<usize> = chains.iter().map(|c| c.length()).collect();
            let top_equal = lengths.iter().all(|&x| x == lengths[0]);
            outcome(graded == all_intervals && (!graded || top_equal), || {
                format!("rank propagation says {graded}, chains say {all_intervals}")
            })
        }
        Err(e) => CheckOutcome::Fail(e.to_string()),
    };
    out.push(("gradedness_matches_chain_enumeration".into(), chains_agree));
    let d = l.dual();
    let len = |x: &FiniteLattice| x.length(x.bottom(), x.top()).expect("bottom ≤ top");
    let same = d.is_graded().graded == graded && d.is_distributive() == l.is_distributive() && len(&d) == len(l);
    out.push(("dual_preserves_invariants".into(), outcome(same, || "dual differs".into())));
    if let Some(cap) = supersolvable_cap {
        let o = match l.is_supersolvable(cap) {
            Ok(s) => {
                let expected = graded && l.is_left_modular_lattice();
                outcome(s == expected, || format!("supersolvable {s}, graded and left modular {expected}"))
            }
            Err(e) => CheckOutcome::Skip(e.to_string()),
        };
        out.push(("supersolvable_iff_graded_left_modular".into(), o));
    }
    out
}

fn lattice_section(config: &SuiteConfig) -> SectionReport {
    let levels = unlabeled_lattices(config.lattice_size.min(crate::lattice::MAX_ENUMERATED_SIZE));
    let all: Vec<&OrderCode> = levels.iter().flatten().collect();
    let results: Vec<Outcomes> = all
        .par_iter()
        .map(|code| {
            let cap = (code.len() <= config.supersolvable_lattice_size).then_some(config.supersolvable_cap);
            lattice_outcomes(&code.to_lattice(), cap)
        })
        .collect();
    let mut section = SectionReport::new("lattices");
    for (code, o) in all.iter().zip(&results) {
        section.absorb(&format!("{:?}", code.up_masks()), o);
    }
    let groups = catalog(config.group_order.min(24));
    for e in &groups {
        if let Ok(l) = e.group.subgroup_lattice() {
            if l.len() <= config.supersolvable_cap {
                section.absorb(&format!("subgroups of {}", e.name), &lattice_outcomes(&l, Some(config.supersolvable_cap)));
            }
        }
    }
    section
}

/// Runs every section in a fixed order. Work inside a section runs in
/// parallel; results are merged in input order.
pub fn run_suite(config: &SuiteConfig) -> SuiteReport {
    let builder = RingBuilder::new(config.ring_cap);
    let rings = ring_corpus(config.corpus_order, &builder);
    let mut entries = extension_corpus(config.corpus_order, &builder);
    let mut named_rings = Vec::new();
    if config.include_named {
        if let Ok(named) = named_extensions(&builder) {
            named_rings.extend(named.iter().map(|e| e.ext.top().clone()));
            entries.extend(named);
        }
    }
    let all_rings: Vec<FiniteCommRing> = rings.into_iter().chain(named_rings).collect();
    let wanted = |name: &str| config.sections.as_ref().is_none_or(|s| s.iter().any(|x| x == name));
    let mut sections = Vec::new();
    if wanted("ring_axioms") {
        sections.push(ring_section(config, &builder, &all_rings));
    }
    if wanted("extensions") {
        sections.push(extension_section(config, &entries));
    }
    if wanted("transfers") {
        sections.push(transfer_section(config, &builder, &entries));
    }
    if wanted("groups") {
        sections.push(group_section(config));
    }
    if wanted("towers") {
        sections.push(tower_section(config));
    }
    if wanted("lattices") {
        sections.push(lattice_section(config));
    }
    let mut report = SuiteReport {
        schema_version: REPORT_SCHEMA_VERSION,
        passed: 0,
        failed: 0,
        skipped: 0,
        sections,
    };
    for s in &report.sections {
        for t in s.checks.values() {
            report.passed += t.pass;
            report.failed += t.fail;
            report.skipped += t.skip;
        }
    }
    report
}
