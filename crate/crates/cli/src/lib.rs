//! Corpus loading and subcommands for the `xmodlab` binary.

pub mod commands;
pub mod corpus;
pub mod describe;

pub use commands::{CommandError, Outcome, Status};
pub use corpus::{Corpus, CorpusError, CorpusFile};
