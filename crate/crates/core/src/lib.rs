//! m2pddl-core: a compiler toolkit that turns PDDL-annotated system-model
//! documents and product-model data into PDDL domain and problem
//! descriptions, then grounds, solves, and validates the resulting planning
//! task.
//!
//! The pipeline runs in four stages:
//!
//! 1. **Ingest** ([`model`]) — load the `.sysmodel` exchange document and
//!    the product record set, select the scope of observation, and identify
//!    the elements relevant for planning.
//! 2. **Profile** ([`profile`]) — check stereotype conformance and bind
//!    annotated elements to PDDL types, predicates, objects, and actions.
//! 3. **Generate** ([`generator`]) — assemble the [`pddl`] ASTs, render them
//!    canonically, and drive the whole pipeline end to end.
//! 4. **Plan** ([`planner`]) — ground the task, search for a plan (optimal
//!    BFS or greedy goal-count), and validate plans by simulation.
//!
//! [`fixtures`] builds the bundled aircraft-assembly example family used by
//! the test suites and the CLI walkthrough.

pub mod diag;
pub mod fixtures;
pub mod generator;
pub mod model;
pub mod pddl;
pub mod planner;
pub mod profile;

pub use diag::{Code, Diagnostic, Location, Severity, Stage};
