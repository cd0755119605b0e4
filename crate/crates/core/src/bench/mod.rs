//! Instance ingestion and benchmark reporting.

mod parse;
mod record;
mod report;

pub use parse::{floyd_warshall, parse_dense, parse_instance, parse_orlib, InstanceFormat};
pub use record::{read_reference, read_text, run_benchmark, sidecar_path, BenchmarkRecord};
pub use report::{emit_report, emit_structured, emit_table, parse_structured, scientific, ReportStyle};
