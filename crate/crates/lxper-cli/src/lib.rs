//! Library half of the batch CLI: the per-paragraph document report and
//! the table renderers the subcommands print.

pub mod report;
pub mod tables;
