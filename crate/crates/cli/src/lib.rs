//! Front end for `lcsk`: spec-file parsing, command dispatch and report
//! rendering.

pub mod expr;
pub mod report;
pub mod run;
pub mod spec;

pub use report::RunReport;
pub use run::{run, Command, Options};
pub use spec::{parse_spec, AlgebraSpecFile, SpecError};
