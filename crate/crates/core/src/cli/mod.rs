//! Domain files, jobs and reports behind the `rtype` binary.

pub mod corpus;
pub mod file;
pub mod job;
pub mod report;

pub use corpus::{corpus_files, run_corpus, CorpusReport, Row};
pub use file::{DomainFile, Expected, Params};
pub use job::{run_job, Got, Invariant, JobSpec, Report, EXIT_ERROR, EXIT_INCONSISTENT, EXIT_NOT_CONVEX, EXIT_OK};
