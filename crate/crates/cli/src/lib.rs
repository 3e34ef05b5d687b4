//! Reports for single monodromy data and for fixture corpora, as text or
//! deterministic JSON.

pub mod corpus;
pub mod exit;
pub mod report;

pub use corpus::{load_corpus, run_corpus, CorpusError, CorpusSummary};
pub use exit::ExitCode;
pub use report::{run_family, FamilyOptions, Report};
