//! Benchmark harness for the `afmm` kernels: matrix text files, timed
//! experiment plans, CSV records, Table-style reports, plot series and the
//! acceptance suites behind `afmm verify`.

pub mod cli;
mod error;
pub mod harness;
pub mod plan;
pub mod records;
pub mod report;
pub mod textfmt;
pub mod verify;

pub use error::{BenchError, Result};
pub use harness::{operands, run_plan, run_plan_with, timer_resolution, BenchmarkRecord};
pub use plan::{BenchArgs, ExperimentPlan};
pub use records::{emit_csv, load_csv, read_csv, write_csv, CSV_HEADER};
pub use report::{emit_plot_data, emit_table, ReportTable};
pub use verify::{run_criterion, run_suite, CriterionOutcome, Suite};
