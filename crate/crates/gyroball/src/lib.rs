//! Command-line front end for `gyroball-core`: JSON input and output, and a
//! seeded runner for the randomized identity suites.

pub mod check;
pub mod cli;
pub mod error;
pub mod io;
