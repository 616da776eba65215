//! Problem files, the bundled corpus, and report rendering.

pub mod corpus;
pub mod parse;
pub mod report;

pub use parse::{parse, serialize, ConfigOverrides, ParseError, ProblemFile};
