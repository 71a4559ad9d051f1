//! Matrix text format, structured reports, and trial scheduling for the
//! `symflag` command-line tool.

pub mod format;
pub mod report;
pub mod trials;
