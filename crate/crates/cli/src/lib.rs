//! Library half of the `kahler` command: report documents, the fixture
//! corpus and the subcommand implementations.

pub mod commands;
pub mod fixtures;
pub mod report;
