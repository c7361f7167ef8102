//! Verification machinery: graph6 IO, exhaustive enumeration, extremal
//! scans, stochastic search, single-graph classification, and the batch
//! suites behind `verify-fact`.

pub mod classify;
pub mod enumerate;
pub mod graph6;
pub mod hillclimb;
pub mod randgen;
pub mod scan;
pub mod suites;

pub use classify::{classify_against_theorem, BoundRelation, Classification};
pub use enumerate::{enumerate_labeled, EnumerateOpts};
pub use graph6::{emit_graph6, parse_graph6, read_graph6_file};
pub use hillclimb::{hillclimb_search, SearchParams, SearchReport};
pub use scan::{
    scan_extremal, write_jsonl_line, CycleConstraint, ScanParams, ScanRecord, ScanReport,
    ScanVerdict, Target, MU_TIE_TOL,
};
pub use suites::{
    gen_lemma5_instance, suite_claims, suite_eg, suite_f1, suite_f2, suite_f4, suite_lemma5,
    suite_lemma8, suite_perron, Lemma5Instance, Lemma5Mode, SuiteReport,
};
