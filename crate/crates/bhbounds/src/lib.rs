//! Std companion to `bhbounds-core`: polynomial and certificate files, CSV and
//! JSON reports, a rayon-backed executor, and the `bhbounds` command line.

pub mod cli;
pub mod format;
pub mod parallel;
pub mod report;

pub use format::{
    certificate_to_json, parse_certificate, parse_polynomial, polynomial_to_json, read_certificate,
    read_polynomial, FormatError, CERT_SCHEMA,
};
pub use parallel::RayonExecutor;
