//! Verification harness for the Orlicz-space toolkit: configuration,
//! property suites and report output.

pub mod config;
pub mod record;
pub mod registry;
pub mod suites;

pub use config::SuiteConfig;
pub use record::{emit_report, ReportFormat, VerificationRecord};
pub use suites::{run_suite, run_suites, Suite};
