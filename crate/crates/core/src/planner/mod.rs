//! Grounding, forward search, and plan validation.

pub mod ground;
pub mod plan_text;
pub mod search;
pub mod simulate;

pub use ground::{ground, GroundAction, GroundOptions, GroundTask};
pub use plan_text::{parse_plan, render_plan};
pub use search::{solve, Plan, SolveOptions, SolveOutcome, Strategy};
pub use simulate::{validate_plan, FailureReason, PlanStep, StateSnapshot, Verdict};

impl GroundTask {
    /// Resolve a solver plan into name/argument steps.
    pub fn plan_steps(&self, plan: &Plan) -> Vec<PlanStep> {
        plan.steps()
            .iter()
            .map(|&i| {
                let a = &self.actions[i];
                PlanStep {
                    action: a.schema.clone(),
                    args: a.args.clone(),
                }
            })
            .collect()
    }
}
