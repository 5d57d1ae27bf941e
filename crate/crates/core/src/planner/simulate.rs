//! Plan validation by step-by-step simulation.
//!
//! The simulator works directly on the domain/problem ASTs, independent of
//! the grounder and the search: states are sets of ground atoms, an action
//! applies when its positive preconditions hold and its negative ones are
//! absent, and effects delete then add. A step that cannot even be
//! instantiated (unknown action, wrong arity, type-incompatible argument)
//! fails the same way an inapplicable one does.

use std::collections::BTreeSet;
use std::fmt;

use crate::pddl::ast::{GroundAtom, Ident, Literal, PddlDomain, PddlProblem, Term};

/// One plan step: an action name with bound arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanStep {
    pub action: Ident,
    pub args: Vec<Ident>,
}

impl fmt::Display for PlanStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.action)?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureReason {
    PreconditionViolated,
    GoalNotReached,
}

impl FailureReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            FailureReason::PreconditionViolated => "precondition-violated",
            FailureReason::GoalNotReached => "goal-not-reached",
        }
    }
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// State summary after `step` plan steps (step 0 is the initial state).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSnapshot {
    pub step: usize,
    pub atoms: Vec<String>,
}

/// The result of simulating a plan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub valid: bool,
    /// The failing step index; for a goal failure this is the plan length.
    pub failure_step: Option<usize>,
    pub reason: Option<FailureReason>,
    pub trace: Vec<StateSnapshot>,
}

impl Verdict {
    fn failed(step: usize, reason: FailureReason, trace: Vec<StateSnapshot>) -> Verdict {
        Verdict {
            valid: false,
            failure_step: Some(step),
            reason: Some(reason),
            trace,
        }
    }
}

fn snapshot(step: usize, state: &BTreeSet<GroundAtom>) -> StateSnapshot {
    StateSnapshot {
        step,
        atoms: state.iter().map(GroundAtom::to_string).collect(),
    }
}

/// Simulate `steps` from the initial state and check goal satisfaction.
pub fn validate_plan(domain: &PddlDomain, problem: &PddlProblem, steps: &[PlanStep]) -> Verdict {
    let mut state: BTreeSet<GroundAtom> = problem.init.iter().cloned().collect();
    let mut trace = vec![snapshot(0, &state)];

    for (i, step) in steps.iter().enumerate() {
        match apply_step(domain, problem, &state, step) {
            None => return Verdict::failed(i, FailureReason::PreconditionViolated, trace),
            Some(next) => {
                state = next;
                trace.push(snapshot(i + 1, &state));
            }
        }
    }

    if goal_satisfied(&problem.goal, &state) {
        Verdict {
            valid: true,
            failure_step: None,
            reason: None,
            trace,
        }
    } else {
        Verdict::failed(steps.len(), FailureReason::GoalNotReached, trace)
    }
}

fn goal_satisfied(goal: &[Literal], state: &BTreeSet<GroundAtom>) -> bool {
    goal.iter().all(|lit| match lit.as_ground_atom() {
        None => false,
        Some(atom) => state.contains(&atom) != lit.negated,
    })
}

/// Instantiate and apply one step, or `None` if it cannot execute here.
fn apply_step(
    domain: &PddlDomain,
    problem: &PddlProblem,
    state: &BTreeSet<GroundAtom>,
    step: &PlanStep,
) -> Option<BTreeSet<GroundAtom>> {
    let schema = domain.action(&step.action)?;
    if schema.params.len() != step.args.len() {
        return None;
    }
    for (arg, param) in step.args.iter().zip(&schema.params) {
        let obj_ty = problem.objects.get(arg)?;
        if !domain.types.is_subtype(obj_ty, &param.ty) {
            return None;
        }
    }

    let bind = |lit: &Literal| -> GroundAtom {
        GroundAtom {
            predicate: lit.predicate.clone(),
            args: lit
                .args
                .iter()
                .map(|t| match t {
                    Term::Const(c) => c.clone(),
                    Term::Var(v) => {
                        let pos = schema
                            .params
                            .iter()
                            .position(|p| &p.var == v)
                            .expect("validated schemas bind every variable");
                        step.args[pos].clone()
                    }
                })
                .collect(),
        }
    };

    for lit in &schema.precondition {
        let holds = state.contains(&bind(lit));
        if holds == lit.negated {
            return None;
        }
    }

    let mut next = state.clone();
    for lit in schema.effect.iter().filter(|l| l.negated) {
        next.remove(&bind(lit));
    }
    for lit in schema.effect.iter().filter(|l| !l.negated) {
        next.insert(bind(lit));
    }
    Some(next)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pddl::ast::*;

    fn id(s: &str) -> Ident {
        Ident::parse(s).unwrap()
    }

    fn pick_place() -> (PddlDomain, PddlProblem) {
        let mut d = PddlDomain::empty(id("pp"));
        d.types.insert(id("item"), Ident::object()).unwrap();
        d.predicates.push(Predicate {
            name: id("held"),
            params: vec![Param { var: id("i"), ty: id("item") }],
        });
        d.predicates.push(Predicate {
            name: id("stored"),
            params: vec![Param { var: id("i"), ty: id("item") }],
        });
        d.actions.push(ActionSchema {
            name: id("pick"),
            params: vec![Param { var: id("i"), ty: id("item") }],
            precondition: vec![Literal::negative(id("held"), vec![Term::Var(id("i"))])],
            effect: vec![Literal::positive(id("held"), vec![Term::Var(id("i"))])],
        });
        d.actions.push(ActionSchema {
            name: id("store"),
            params: vec![Param { var: id("i"), ty: id("item") }],
            precondition: vec![Literal::positive(id("held"), vec![Term::Var(id("i"))])],
            effect: vec![
                Literal::negative(id("held"), vec![Term::Var(id("i"))]),
                Literal::positive(id("stored"), vec![Term::Var(id("i"))]),
            ],
        });
        let mut p = PddlProblem::new(id("t"), id("pp"));
        p.objects.insert(id("box1"), id("item"));
        p.goal.push(Literal::positive(id("stored"), vec![Term::Const(id("box1"))]));
        (d, p)
    }

    fn step(action: &str, args: &[&str]) -> PlanStep {
        PlanStep {
            action: id(action),
            args: args.iter().map(|a| id(a)).collect(),
        }
    }

    #[test]
    fn empty_plan_on_satisfied_goal_is_valid() {
        let (d, mut p) = pick_place();
        p.init.insert(GroundAtom { predicate: id("stored"), args: vec![id("box1")] });
        let v = validate_plan(&d, &p, &[]);
        assert!(v.valid);
        assert_eq!(v.trace.len(), 1);
    }

    #[test]
    fn good_plan_validates_with_full_trace() {
        let (d, p) = pick_place();
        let v = validate_plan(&d, &p, &[step("pick", &["box1"]), step("store", &["box1"])]);
        assert!(v.valid, "{v:?}");
        assert_eq!(v.trace.len(), 3);
        assert_eq!(v.trace[2].atoms, vec!["(stored box1)".to_string()]);
    }

    #[test]
    fn swapped_steps_fail_at_the_swap_index() {
        let (d, p) = pick_place();
        let v = validate_plan(&d, &p, &[step("store", &["box1"]), step("pick", &["box1"])]);
        assert!(!v.valid);
        assert_eq!(v.failure_step, Some(0));
        assert_eq!(v.reason, Some(FailureReason::PreconditionViolated));
    }

    #[test]
    fn incomplete_plan_misses_the_goal() {
        let (d, p) = pick_place();
        let v = validate_plan(&d, &p, &[step("pick", &["box1"])]);
        assert!(!v.valid);
        assert_eq!(v.failure_step, Some(1));
        assert_eq!(v.reason, Some(FailureReason::GoalNotReached));
    }

    #[test]
    fn unknown_action_or_bad_arity_fails_as_inapplicable() {
        let (d, p) = pick_place();
        let v = validate_plan(&d, &p, &[step("teleport", &["box1"])]);
        assert_eq!(v.reason, Some(FailureReason::PreconditionViolated));
        let v = validate_plan(&d, &p, &[step("pick", &[])]);
        assert_eq!(v.reason, Some(FailureReason::PreconditionViolated));
    }

    #[test]
    fn trace_is_deterministic() {
        let (d, p) = pick_place();
        let steps = [step("pick", &["box1"]), step("store", &["box1"])];
        assert_eq!(validate_plan(&d, &p, &steps), validate_plan(&d, &p, &steps));
    }
}
