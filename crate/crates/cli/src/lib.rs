//! Command-line front end for `cd-eigen`: spectra, decompositions, the
//! cancellation solver, generated subalgebras, randomized verification
//! suites and sampling searches.

pub mod app;
pub mod format;
pub mod report;
pub mod search;
pub mod suites;
