//! Exact small-group laboratory for growth of product sets, Bohr sets, large
//! spectra and bi-invariant metric balls in (hereditarily) monomial groups.

pub mod bohr;
pub mod cli;
pub mod error;
pub mod exact;
pub mod group;
pub mod harmonic;
pub mod hypothesis;
pub mod metric;
pub mod pipeline;
pub mod report;
pub mod setops;
pub mod spectra;

pub use error::{Error, Result};
