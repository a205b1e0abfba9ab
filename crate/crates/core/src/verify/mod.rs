//! Deterministic corpus and the full verification suite over it.

mod corpus;
mod suite;

pub use corpus::{extension_corpus, named_extensions, ring_corpus, CorpusEntry};
pub use suite::{lattice_outcomes, ring_axioms_hold, run_suite, CheckTally, SectionReport, SuiteConfig, SuiteReport, SECTION_NAMES};
