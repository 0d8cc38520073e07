//! File formats, certificates, bundled fixtures and the command-line front
//! end for `semicover-core`.

pub mod certificate;
pub mod cli;
pub mod fixtures;
pub mod formats;
pub mod suites;
