//! Exhaustive, type-respecting grounding of a validated task.
//!
//! Every action schema is instantiated over all argument tuples whose
//! object types are (transitive) subtypes of the parameter types — no
//! reachability pruning, so the ground action count is exactly the
//! cartesian size and can be checked against an independent enumeration.

use std::collections::HashMap;

use crate::diag::{Code, Diagnostic, Location};
use crate::pddl::ast::{GroundAtom, Ident, Literal, PddlDomain, PddlProblem, Term};

/// Grounding limits.
#[derive(Debug, Clone, Copy)]
pub struct GroundOptions {
    /// Refuse to ground tasks with more ground actions than this.
    pub max_actions: usize,
}

impl Default for GroundOptions {
    fn default() -> Self {
        GroundOptions {
            max_actions: 1_000_000,
        }
    }
}

/// A fully instantiated action. Atom ids index into [`GroundTask::atoms`];
/// every id set is sorted and deduplicated, and `add` and `del` are
/// disjoint (a delete shadowed by an add of the same atom is dropped, which
/// leaves STRIPS apply semantics unchanged).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundAction {
    pub schema: Ident,
    pub args: Vec<Ident>,
    pub pre_pos: Vec<u32>,
    pub pre_neg: Vec<u32>,
    pub add: Vec<u32>,
    pub del: Vec<u32>,
}

/// A grounded STRIPS task over an indexed atom universe.
#[derive(Debug, Clone)]
pub struct GroundTask {
    pub atoms: Vec<GroundAtom>,
    pub actions: Vec<GroundAction>,
    pub init: Vec<u32>,
    pub goal_pos: Vec<u32>,
    pub goal_neg: Vec<u32>,
}

impl GroundTask {
    pub fn atom(&self, id: u32) -> &GroundAtom {
        &self.atoms[id as usize]
    }
}

struct Interner {
    ids: HashMap<GroundAtom, u32>,
    atoms: Vec<GroundAtom>,
}

impl Interner {
    fn new() -> Self {
        Interner {
            ids: HashMap::new(),
            atoms: Vec::new(),
        }
    }

    fn intern(&mut self, atom: GroundAtom) -> u32 {
        if let Some(&id) = self.ids.get(&atom) {
            return id;
        }
        let id = self.atoms.len() as u32;
        self.ids.insert(atom.clone(), id);
        self.atoms.push(atom);
        id
    }
}

fn sorted_dedup(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    v.dedup();
    v
}

/// Ground `domain`/`problem`. Both are assumed validated.
pub fn ground(
    domain: &PddlDomain,
    problem: &PddlProblem,
    opts: &GroundOptions,
) -> Result<GroundTask, Vec<Diagnostic>> {
    // Object pools per parameter type, in sorted object order.
    let pools: Vec<Vec<Vec<&Ident>>> = domain
        .actions
        .iter()
        .map(|a| {
            a.params
                .iter()
                .map(|p| problem.objects_of_type(&p.ty, &domain.types))
                .collect()
        })
        .collect();

    let mut total: u128 = 0;
    for schema_pools in &pools {
        let mut count: u128 = 1;
        for pool in schema_pools {
            count = count.saturating_mul(pool.len() as u128);
        }
        total = total.saturating_add(count);
    }
    if total > opts.max_actions as u128 {
        return Err(vec![Diagnostic::error(
            Code::GroundingExplosion,
            Location::None,
            format!(
                "grounding would create {total} actions, above the cap of {}",
                opts.max_actions
            ),
        )]);
    }

    let mut interner = Interner::new();
    let init: Vec<u32> = problem
        .init
        .iter()
        .map(|a| interner.intern(a.clone()))
        .collect();

    let mut goal_pos = Vec::new();
    let mut goal_neg = Vec::new();
    for lit in &problem.goal {
        match lit.as_ground_atom() {
            Some(atom) => {
                let id = interner.intern(atom);
                if lit.negated {
                    goal_neg.push(id);
                } else {
                    goal_pos.push(id);
                }
            }
            None => {
                return Err(vec![Diagnostic::error(
                    Code::NonGroundLiteral,
                    Location::Item(format!("goal:{lit}")),
                    "cannot ground a goal containing variables",
                )])
            }
        }
    }

    let mut actions = Vec::new();
    for (schema, schema_pools) in domain.actions.iter().zip(&pools) {
        if schema_pools.iter().any(Vec::is_empty) {
            continue;
        }
        // Odometer over the pools, rightmost parameter fastest. A
        // zero-parameter schema grounds exactly once.
        let mut idx = vec![0usize; schema_pools.len()];
        loop {
            let args: Vec<Ident> = idx
                .iter()
                .zip(schema_pools)
                .map(|(&i, pool)| pool[i].clone())
                .collect();
            actions.push(instantiate(schema, &args, &mut interner));
            if !advance(&mut idx, schema_pools) {
                break;
            }
        }
    }

    Ok(GroundTask {
        atoms: interner.atoms,
        actions,
        init: sorted_dedup(init),
        goal_pos: sorted_dedup(goal_pos),
        goal_neg: sorted_dedup(goal_neg),
    })
}

fn advance(idx: &mut [usize], pools: &[Vec<&Ident>]) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < pools[k].len() {
            return true;
        }
        idx[k] = 0;
    }
    false
}

fn instantiate(
    schema: &crate::pddl::ast::ActionSchema,
    args: &[Ident],
    interner: &mut Interner,
) -> GroundAction {
    let bind = |lit: &Literal| -> GroundAtom {
        let atom_args = lit
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
                    args[pos].clone()
                }
            })
            .collect();
        GroundAtom {
            predicate: lit.predicate.clone(),
            args: atom_args,
        }
    };

    let mut pre_pos = Vec::new();
    let mut pre_neg = Vec::new();
    for lit in &schema.precondition {
        let id = interner.intern(bind(lit));
        if lit.negated {
            pre_neg.push(id);
        } else {
            pre_pos.push(id);
        }
    }
    let mut add = Vec::new();
    let mut del = Vec::new();
    for lit in &schema.effect {
        let id = interner.intern(bind(lit));
        if lit.negated {
            del.push(id);
        } else {
            add.push(id);
        }
    }
    let add = sorted_dedup(add);
    let mut del = sorted_dedup(del);
    del.retain(|id| !add.contains(id));

    GroundAction {
        schema: schema.name.clone(),
        args: args.to_vec(),
        pre_pos: sorted_dedup(pre_pos),
        pre_neg: sorted_dedup(pre_neg),
        add,
        del,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pddl::ast::*;

    fn id(s: &str) -> Ident {
        Ident::parse(s).unwrap()
    }

    /// 2 params over types with 3 and 2 objects -> 6 ground actions.
    #[test]
    fn cartesian_instantiation_counts() {
        let mut d = PddlDomain::empty(id("d"));
        d.types.insert(id("a"), Ident::object()).unwrap();
        d.types.insert(id("b"), Ident::object()).unwrap();
        d.predicates.push(Predicate {
            name: id("rel"),
            params: vec![
                Param { var: id("x"), ty: id("a") },
                Param { var: id("y"), ty: id("b") },
            ],
        });
        d.actions.push(ActionSchema {
            name: id("link"),
            params: vec![
                Param { var: id("x"), ty: id("a") },
                Param { var: id("y"), ty: id("b") },
            ],
            precondition: vec![],
            effect: vec![Literal::positive(
                id("rel"),
                vec![Term::Var(id("x")), Term::Var(id("y"))],
            )],
        });
        let mut p = PddlProblem::new(id("p"), id("d"));
        for o in ["a1", "a2", "a3"] {
            p.objects.insert(id(o), id("a"));
        }
        for o in ["b1", "b2"] {
            p.objects.insert(id(o), id("b"));
        }
        p.goal.push(Literal::positive(
            id("rel"),
            vec![Term::Const(id("a1")), Term::Const(id("b1"))],
        ));
        let task = ground(&d, &p, &GroundOptions::default()).unwrap();
        assert_eq!(task.actions.len(), 6);
        // rightmost parameter varies fastest and pools are sorted
        assert_eq!(task.actions[0].args, vec![id("a1"), id("b1")]);
        assert_eq!(task.actions[1].args, vec![id("a1"), id("b2")]);
    }

    #[test]
    fn domain_without_actions_grounds_to_none() {
        let mut d = PddlDomain::empty(id("d"));
        d.predicates.push(Predicate { name: id("ok"), params: vec![] });
        let mut p = PddlProblem::new(id("p"), id("d"));
        p.init.insert(GroundAtom { predicate: id("ok"), args: vec![] });
        p.goal.push(Literal::positive(id("ok"), vec![]));
        let task = ground(&d, &p, &GroundOptions::default()).unwrap();
        assert!(task.actions.is_empty());
        assert_eq!(task.init.len(), 1);
        assert_eq!(task.goal_pos.len(), 1);
    }

    #[test]
    fn zero_param_schema_grounds_once() {
        let mut d = PddlDomain::empty(id("d"));
        d.predicates.push(Predicate { name: id("ok"), params: vec![] });
        d.actions.push(ActionSchema {
            name: id("finish"),
            params: vec![],
            precondition: vec![],
            effect: vec![Literal::positive(id("ok"), vec![])],
        });
        let mut p = PddlProblem::new(id("p"), id("d"));
        p.goal.push(Literal::positive(id("ok"), vec![]));
        let task = ground(&d, &p, &GroundOptions::default()).unwrap();
        assert_eq!(task.actions.len(), 1);
    }

    #[test]
    fn explosion_cap_is_enforced() {
        let mut d = PddlDomain::empty(id("d"));
        d.types.insert(id("a"), Ident::object()).unwrap();
        d.predicates.push(Predicate { name: id("ok"), params: vec![] });
        d.actions.push(ActionSchema {
            name: id("big"),
            params: (0..4)
                .map(|i| Param { var: id(&format!("x{i}")), ty: id("a") })
                .collect(),
            precondition: vec![],
            effect: vec![Literal::positive(id("ok"), vec![])],
        });
        let mut p = PddlProblem::new(id("p"), id("d"));
        for i in 0..10 {
            p.objects.insert(id(&format!("o{i}")), id("a"));
        }
        p.goal.push(Literal::positive(id("ok"), vec![]));
        let errs = ground(&d, &p, &GroundOptions { max_actions: 9_999 }).unwrap_err();
        assert_eq!(errs[0].code, Code::GroundingExplosion);
    }

    #[test]
    fn add_wins_over_delete_of_the_same_atom() {
        let mut d = PddlDomain::empty(id("d"));
        d.types.insert(id("t"), Ident::object()).unwrap();
        d.predicates.push(Predicate {
            name: id("p"),
            params: vec![Param { var: id("x"), ty: id("t") }],
        });
        d.actions.push(ActionSchema {
            name: id("a"),
            params: vec![
                Param { var: id("x"), ty: id("t") },
                Param { var: id("y"), ty: id("t") },
            ],
            precondition: vec![],
            effect: vec![
                Literal::positive(id("p"), vec![Term::Var(id("x"))]),
                Literal::negative(id("p"), vec![Term::Var(id("y"))]),
            ],
        });
        let mut p = PddlProblem::new(id("p"), id("d"));
        p.objects.insert(id("o1"), id("t"));
        p.goal.push(Literal::positive(id("p"), vec![Term::Const(id("o1"))]));
        let task = ground(&d, &p, &GroundOptions::default()).unwrap();
        // the x=y=o1 instance must not delete what it adds
        let act = &task.actions[0];
        assert_eq!(act.args, vec![id("o1"), id("o1")]);
        assert_eq!(act.add.len(), 1);
        assert!(act.del.is_empty());
    }
}
