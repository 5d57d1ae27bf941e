//! Seeded random generation of well-formed domains and problems.
//!
//! Generated ASTs always pass `validate_domain`/`validate_problem`; the
//! randomized suites rely on that so any failure is the code under test,
//! not the corpus.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

use m2pddl_core::pddl::ast::{
    ActionSchema, GroundAtom, Ident, Literal, Param, PddlDomain, PddlProblem, Predicate,
    Requirement, Term,
};

#[derive(Debug, Clone, Copy)]
pub struct GenConfig {
    pub max_types: usize,
    pub max_predicates: usize,
    pub max_arity: usize,
    pub max_actions: usize,
    pub max_params: usize,
    pub max_objects: usize,
    /// Allow fixed constants inside schema literals.
    pub allow_constants: bool,
    /// Allow negative goal literals.
    pub negative_goals: bool,
}

impl GenConfig {
    /// Ranges from the grounding-exactness criterion:
    /// <=5 types, <=6 objects, <=4 schemas, <=3 params.
    pub fn grounding() -> Self {
        GenConfig {
            max_types: 5,
            max_predicates: 4,
            max_arity: 3,
            max_actions: 4,
            max_params: 3,
            max_objects: 6,
            allow_constants: false,
            negative_goals: false,
        }
    }

    /// Small tasks whose reachable space stays enumerable.
    pub fn solvable() -> Self {
        GenConfig {
            max_types: 3,
            max_predicates: 3,
            max_arity: 2,
            max_actions: 3,
            max_params: 2,
            max_objects: 4,
            allow_constants: false,
            negative_goals: true,
        }
    }

    /// Wider shapes for the parser/printer round-trip suite.
    pub fn roundtrip() -> Self {
        GenConfig {
            max_types: 5,
            max_predicates: 6,
            max_arity: 3,
            max_actions: 4,
            max_params: 3,
            max_objects: 6,
            allow_constants: true,
            negative_goals: true,
        }
    }
}

fn ident(s: String) -> Ident {
    Ident::parse(&s).expect("generator produces valid identifiers")
}

pub fn random_domain(rng: &mut StdRng, cfg: &GenConfig) -> PddlDomain {
    let mut domain = PddlDomain::empty(ident(format!("dom{}", rng.gen_range(0..1000))));
    domain.requirements.insert(Requirement::Typing);
    if rng.gen_bool(0.3) {
        domain.requirements.insert(Requirement::NegativePreconditions);
    }

    let n_types = rng.gen_range(1..=cfg.max_types);
    let mut type_names: Vec<Ident> = vec![Ident::object()];
    for i in 0..n_types {
        let name = ident(format!("t{i}"));
        let parent = type_names.choose(rng).unwrap().clone();
        domain.types.insert(name.clone(), parent).unwrap();
        type_names.push(name);
    }

    let n_preds = rng.gen_range(1..=cfg.max_predicates);
    for i in 0..n_preds {
        let arity = rng.gen_range(0..=cfg.max_arity);
        let params = (0..arity)
            .map(|k| Param {
                var: ident(format!("v{k}")),
                ty: type_names.choose(rng).unwrap().clone(),
            })
            .collect();
        domain.predicates.push(Predicate {
            name: ident(format!("p{i}")),
            params,
        });
    }

    let n_actions = rng.gen_range(1..=cfg.max_actions);
    for i in 0..n_actions {
        let n_params = rng.gen_range(0..=cfg.max_params);
        let params: Vec<Param> = (0..n_params)
            .map(|k| Param {
                var: ident(format!("x{k}")),
                ty: type_names.choose(rng).unwrap().clone(),
            })
            .collect();

        let mut precondition = Vec::new();
        for _ in 0..rng.gen_range(0..=2) {
            if let Some(mut lit) = random_schema_literal(rng, cfg, &domain, &params) {
                lit.negated = rng.gen_bool(0.3);
                precondition.push(lit);
            }
        }
        let mut effect: Vec<Literal> = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            if let Some(mut lit) = random_schema_literal(rng, cfg, &domain, &params) {
                lit.negated = rng.gen_bool(0.35);
                let contradicts = effect
                    .iter()
                    .any(|e| e.predicate == lit.predicate && e.args == lit.args && e.negated != lit.negated);
                let duplicate = effect.iter().any(|e| e == &lit);
                if !contradicts && !duplicate {
                    effect.push(lit);
                }
            }
        }
        if effect.is_empty() {
            continue;
        }
        domain.actions.push(ActionSchema {
            name: ident(format!("act{i}")),
            params,
            precondition,
            effect,
        });
    }

    domain
}

/// A literal over the action's parameters; argument variables are chosen
/// type-compatibly. Returns None if some predicate slot cannot be filled.
fn random_schema_literal(
    rng: &mut StdRng,
    cfg: &GenConfig,
    domain: &PddlDomain,
    params: &[Param],
) -> Option<Literal> {
    let pred = domain.predicates.choose(rng)?;
    let mut args = Vec::with_capacity(pred.params.len());
    for slot in &pred.params {
        if cfg.allow_constants && rng.gen_bool(0.15) {
            args.push(Term::Const(ident(format!("c{}", rng.gen_range(0..3)))));
            continue;
        }
        let candidates: Vec<&Param> = params
            .iter()
            .filter(|p| domain.types.is_subtype(&p.ty, &slot.ty))
            .collect();
        let choice = candidates.choose(rng)?;
        args.push(Term::Var(choice.var.clone()));
    }
    Some(Literal {
        predicate: pred.name.clone(),
        args,
        negated: false,
    })
}

pub fn random_problem(rng: &mut StdRng, domain: &PddlDomain, cfg: &GenConfig) -> PddlProblem {
    let mut problem = PddlProblem::new(
        ident(format!("task{}", rng.gen_range(0..1000))),
        domain.name.clone(),
    );

    let declared: Vec<Ident> = domain.types.iter().map(|(c, _)| c.clone()).collect();
    let n_objects = rng.gen_range(1..=cfg.max_objects);
    for i in 0..n_objects {
        let ty = if declared.is_empty() || rng.gen_bool(0.2) {
            Ident::object()
        } else {
            declared.choose(rng).unwrap().clone()
        };
        problem.objects.insert(ident(format!("o{i}")), ty);
    }

    // Universe of well-typed ground atoms, used for init and goal.
    let mut universe: Vec<GroundAtom> = Vec::new();
    for pred in &domain.predicates {
        let pools: Vec<Vec<&Ident>> = pred
            .params
            .iter()
            .map(|p| problem.objects_of_type(&p.ty, &domain.types))
            .collect();
        if pools.iter().any(Vec::is_empty) {
            continue;
        }
        let mut idx = vec![0usize; pools.len()];
        loop {
            universe.push(GroundAtom {
                predicate: pred.name.clone(),
                args: idx.iter().zip(&pools).map(|(&i, p)| p[i].clone()).collect(),
            });
            let mut done = true;
            for k in (0..idx.len()).rev() {
                idx[k] += 1;
                if idx[k] < pools[k].len() {
                    done = false;
                    break;
                }
                idx[k] = 0;
            }
            if done {
                break;
            }
        }
    }

    for atom in &universe {
        if rng.gen_bool(0.3) {
            problem.init.insert(atom.clone());
        }
    }

    let n_goals = rng.gen_range(1..=2.min(universe.len().max(1)));
    if !universe.is_empty() {
        for _ in 0..n_goals {
            let atom = universe.choose(rng).unwrap();
            let negated = cfg.negative_goals && rng.gen_bool(0.2);
            let lit = Literal {
                predicate: atom.predicate.clone(),
                args: atom.args.iter().cloned().map(Term::Const).collect(),
                negated,
            };
            if !problem.goal.contains(&lit) {
                problem.goal.push(lit);
            }
        }
    }

    problem
}
