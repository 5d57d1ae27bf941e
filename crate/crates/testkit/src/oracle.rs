//! Brute-force oracles over string atoms.
//!
//! States are `BTreeSet<String>` of rendered ground atoms such as
//! `"at robot1 frame-01"`. Substitution, applicability, application, and
//! goal tests are all re-derived here from the STRIPS semantics, sharing
//! nothing with `m2pddl_core::planner` beyond the AST input types.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use itertools::Itertools;
use m2pddl_core::pddl::ast::{ActionSchema, Literal, PddlDomain, PddlProblem, Term};

/// A ground action as strings: (schema name, bound arguments).
pub type OracleAction = (String, Vec<String>);

type State = BTreeSet<String>;

fn atom_key(predicate: &str, args: &[String]) -> String {
    let mut s = predicate.to_string();
    for a in args {
        s.push(' ');
        s.push_str(a);
    }
    s
}

/// All objects whose declared type reaches `ty` via parent edges.
fn pool(problem: &PddlProblem, domain: &PddlDomain, ty: &str) -> Vec<String> {
    let parents: BTreeMap<String, String> = domain
        .types
        .iter()
        .map(|(c, p)| (c.to_string(), p.to_string()))
        .collect();
    problem
        .objects
        .iter()
        .filter(|(_, obj_ty)| {
            let mut cur = obj_ty.to_string();
            let mut steps = 0;
            loop {
                if cur == ty || ty == "object" {
                    return true;
                }
                match parents.get(&cur) {
                    Some(p) if steps <= parents.len() => {
                        cur = p.clone();
                        steps += 1;
                    }
                    _ => return false,
                }
            }
        })
        .map(|(obj, _)| obj.to_string())
        .collect()
}

/// Every type-respecting instantiation of every schema, by cartesian
/// product over per-parameter object pools.
pub fn enumerate_ground_actions(domain: &PddlDomain, problem: &PddlProblem) -> Vec<OracleAction> {
    let mut out = Vec::new();
    for schema in &domain.actions {
        let pools: Vec<Vec<String>> = schema
            .params
            .iter()
            .map(|p| pool(problem, domain, p.ty.as_str()))
            .collect();
        if pools.iter().any(Vec::is_empty) {
            continue;
        }
        if pools.is_empty() {
            out.push((schema.name.to_string(), Vec::new()));
            continue;
        }
        for combo in pools.into_iter().multi_cartesian_product() {
            out.push((schema.name.to_string(), combo));
        }
    }
    out
}

fn substitute(lit: &Literal, schema: &ActionSchema, args: &[String]) -> String {
    let bound: Vec<String> = lit
        .args
        .iter()
        .map(|t| match t {
            Term::Const(c) => c.to_string(),
            Term::Var(v) => {
                let pos = schema
                    .params
                    .iter()
                    .position(|p| &p.var == v)
                    .expect("oracle inputs bind every variable");
                args[pos].clone()
            }
        })
        .collect();
    atom_key(lit.predicate.as_str(), &bound)
}

fn applicable(domain: &PddlDomain, action: &OracleAction, state: &State) -> bool {
    let Some(schema) = domain.actions.iter().find(|a| a.name.as_str() == action.0) else {
        return false;
    };
    schema.precondition.iter().all(|lit| {
        let holds = state.contains(&substitute(lit, schema, &action.1));
        holds != lit.negated
    })
}

/// Delete effects first, then add effects.
fn apply(domain: &PddlDomain, action: &OracleAction, state: &State) -> State {
    let schema = domain
        .actions
        .iter()
        .find(|a| a.name.as_str() == action.0)
        .expect("applicable action exists");
    let mut next = state.clone();
    for lit in schema.effect.iter().filter(|l| l.negated) {
        next.remove(&substitute(lit, schema, &action.1));
    }
    for lit in schema.effect.iter().filter(|l| !l.negated) {
        next.insert(substitute(lit, schema, &action.1));
    }
    next
}

fn initial_state(problem: &PddlProblem) -> State {
    problem
        .init
        .iter()
        .map(|a| {
            let args: Vec<String> = a.args.iter().map(|x| x.to_string()).collect();
            atom_key(a.predicate.as_str(), &args)
        })
        .collect()
}

fn goal_satisfied(problem: &PddlProblem, state: &State) -> bool {
    problem.goal.iter().all(|lit| {
        let Some(atom) = lit.as_ground_atom() else {
            return false;
        };
        let args: Vec<String> = atom.args.iter().map(|x| x.to_string()).collect();
        state.contains(&atom_key(atom.predicate.as_str(), &args)) != lit.negated
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleSearch {
    /// Shortest plan length and the number of reachable states explored.
    Solved { length: usize, states: usize },
    /// The full reachable space (within the cap) contains no goal state.
    Unsolvable { states: usize },
    /// More reachable states than the cap; no verdict.
    Overflow,
}

/// Explicit-state breadth-first search over the full reachable graph.
pub fn shortest_plan_length(
    domain: &PddlDomain,
    problem: &PddlProblem,
    state_cap: usize,
) -> OracleSearch {
    let actions = enumerate_ground_actions(domain, problem);
    let init = initial_state(problem);
    if goal_satisfied(problem, &init) {
        return OracleSearch::Solved { length: 0, states: 1 };
    }
    let mut depth: HashMap<State, usize> = HashMap::from([(init.clone(), 0)]);
    let mut queue: VecDeque<State> = VecDeque::from([init]);
    while let Some(state) = queue.pop_front() {
        let d = depth[&state];
        for action in &actions {
            if !applicable(domain, action, &state) {
                continue;
            }
            let next = apply(domain, action, &state);
            if depth.contains_key(&next) {
                continue;
            }
            if goal_satisfied(problem, &next) {
                return OracleSearch::Solved {
                    length: d + 1,
                    states: depth.len() + 1,
                };
            }
            if depth.len() >= state_cap {
                return OracleSearch::Overflow;
            }
            depth.insert(next.clone(), d + 1);
            queue.push_back(next);
        }
    }
    OracleSearch::Unsolvable { states: depth.len() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict {
    pub valid: bool,
    /// Failing step; plan length when the goal is missed at the end.
    pub failure_step: Option<usize>,
}

/// Independent plan simulation. A step that names an unknown action, has
/// the wrong arity, or binds a type-incompatible argument fails like an
/// inapplicable one.
pub fn simulate_plan(
    domain: &PddlDomain,
    problem: &PddlProblem,
    steps: &[OracleAction],
) -> OracleVerdict {
    let mut state = initial_state(problem);
    for (i, step) in steps.iter().enumerate() {
        let fail = OracleVerdict {
            valid: false,
            failure_step: Some(i),
        };
        let Some(schema) = domain.actions.iter().find(|a| a.name.as_str() == step.0) else {
            return fail;
        };
        if schema.params.len() != step.1.len() {
            return fail;
        }
        let typed_ok = schema.params.iter().zip(&step.1).all(|(param, arg)| {
            pool(problem, domain, param.ty.as_str()).contains(arg)
        });
        if !typed_ok {
            return fail;
        }
        if !applicable(domain, step, &state) {
            return fail;
        }
        state = apply(domain, step, &state);
    }
    if goal_satisfied(problem, &state) {
        OracleVerdict {
            valid: true,
            failure_step: None,
        }
    } else {
        OracleVerdict {
            valid: false,
            failure_step: Some(steps.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use m2pddl_core::pddl::{parse_domain, parse_problem};

    const DOMAIN: &str = "(define (domain toy)
      (:requirements :strips :typing)
      (:types box - object)
      (:predicates (held ?b - box) (stored ?b - box))
      (:action pick
        :parameters (?b - box)
        :precondition (and (not (held ?b)))
        :effect (and (held ?b)))
      (:action store
        :parameters (?b - box)
        :precondition (and (held ?b))
        :effect (and (not (held ?b)) (stored ?b))))";

    const PROBLEM: &str = "(define (problem toy-1)
      (:domain toy)
      (:objects b1 b2 - box)
      (:init )
      (:goal (and (stored b1) (stored b2))))";

    fn load() -> (PddlDomain, PddlProblem) {
        (
            parse_domain(DOMAIN).unwrap().value,
            parse_problem(PROBLEM).unwrap().value,
        )
    }

    #[test]
    fn enumeration_counts_schema_instances() {
        let (d, p) = load();
        // 2 schemas x 2 boxes
        assert_eq!(enumerate_ground_actions(&d, &p).len(), 4);
    }

    #[test]
    fn bfs_oracle_finds_the_four_step_plan() {
        let (d, p) = load();
        match shortest_plan_length(&d, &p, 10_000) {
            OracleSearch::Solved { length, .. } => assert_eq!(length, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn simulator_accepts_and_rejects() {
        let (d, p) = load();
        let good = vec![
            ("pick".to_string(), vec!["b1".to_string()]),
            ("store".to_string(), vec!["b1".to_string()]),
            ("pick".to_string(), vec!["b2".to_string()]),
            ("store".to_string(), vec!["b2".to_string()]),
        ];
        assert!(simulate_plan(&d, &p, &good).valid);
        let mut bad = good.clone();
        bad.swap(0, 1);
        let v = simulate_plan(&d, &p, &bad);
        assert!(!v.valid);
        assert_eq!(v.failure_step, Some(0));
    }
}
