//! PDDL description generation: AST assembly, canonical rendering, and the
//! end-to-end pipeline.

pub mod assemble;
pub mod pipeline;

pub use assemble::{generate_domain, generate_problem};
pub use pipeline::{
    generate_task, render, run_pipeline, Counts, GeneratedTask, GenerationReport, PipelineConfig,
};
