//! Instance ingestion, sweeps and residue statistics.

pub mod export;
pub mod instance;
pub mod residue;
pub mod sweep;
