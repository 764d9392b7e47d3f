//! Reproducible reports over the engines, as driven by the command-line tool.
//!
//! Each `cmd_*` function takes a plain argument struct and returns a
//! [`RunReport`]. Every number in a report is tagged as computed here or as an
//! expected value, and every assertion becomes a named [`Check`]; the
//! report's [`Status`] decides the process exit code.

mod cmd_arrays;
mod cmd_partitions;
mod cmd_ravenous;
mod cmd_subsets;
mod cmd_verify;
mod families;
mod report;

pub use cmd_arrays::{cmd_min_array, cmd_named, cmd_oracle, MinArrayArgs, OracleAction, OracleArgs};
pub use cmd_partitions::{cmd_partitions, expected_minimiser, PartitionsArgs, PartitionsMode, AUTO_ORACLE_DEGREE};
pub use cmd_ravenous::{cmd_ravenous_table, RavenousArgs, BLAHA_WORST};
pub use cmd_subsets::{cmd_subsets, SubsetsArgs, SubsetsMode};
pub use cmd_verify::{cmd_verify, named_instances, VerifyArgs, VerifyId};
pub use families::{base_lower_bound, blaha_ratio, classify, family_bound, signed_residue, Family};
pub use report::{Check, Format, Quantity, RunReport, Source, Status};
