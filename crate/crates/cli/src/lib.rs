//! Batch driver: named verification checks over Hecke symmetries, emitted as
//! JSON-line reports.

pub mod checks;
pub mod input;
pub mod report;
pub mod suite;

pub use report::{CheckReport, Status};
