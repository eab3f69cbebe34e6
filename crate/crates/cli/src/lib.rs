//! Front end for `ncgasket`: element files, verbs and verification suites.

pub mod app;
pub mod io;
pub mod report;
pub mod suites;
