//! Corpora, theorem suites, golden examples, reports and the command-line
//! front end built on `rickart-core`.

pub mod cache;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod goldens;
pub mod probe;
pub mod report;
pub mod suites;
pub mod theorem;

pub use corpus::{generate_corpus, Corpus, CorpusMode, Instance};
pub use error::{HarnessError, HarnessResult};
pub use eval::Evaluator;
pub use report::{FailureBundle, SuiteReport};
pub use suites::{replay, run_theorem_suite};
pub use theorem::TheoremId;
