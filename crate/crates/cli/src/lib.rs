//! Driver for the `fpgeom` command line: loads presentations and generator
//! files, runs the subgroup → geometry → MIC pipeline, and writes reports.

pub mod export;
pub mod inputs;
pub mod pipeline;

pub use export::{export, ExportFormat};
pub use inputs::{load_generators, load_presentation, InputError};
pub use pipeline::{analyze_permgroup, analyze_record, run_pipeline, PipelineOptions, PipelineOutcome, PipelineReport};
