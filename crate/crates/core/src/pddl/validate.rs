//! Semantic validation of PDDL ASTs.
//!
//! Validators return every violation they find; an empty list means the AST
//! is well-formed. They never fail: diagnostics are the result.

use std::collections::{BTreeMap, BTreeSet};

use super::ast::{GroundAtom, Ident, Literal, PddlDomain, PddlProblem, Term};
use crate::diag::{Code, Diagnostic, Location};

fn item(path: String) -> Location {
    Location::Item(path)
}

/// Check every domain invariant; see [`crate::diag::Code`] for the codes.
pub fn validate_domain(d: &PddlDomain) -> Vec<Diagnostic> {
    let mut diags = Vec::new();

    if let Some(ty) = d.types.find_cycle() {
        diags.push(Diagnostic::error(
            Code::TypeCycle,
            item(format!("type:{ty}")),
            format!("type hierarchy contains a cycle through '{ty}'"),
        ));
    }

    for (child, parent) in d.types.iter() {
        if !d.types.is_declared(parent) {
            diags.push(Diagnostic::error(
                Code::UnknownType,
                item(format!("type:{child}")),
                format!("parent type '{parent}' of '{child}' is not declared"),
            ));
        }
    }

    let mut seen_preds: BTreeMap<&Ident, usize> = BTreeMap::new();
    for p in &d.predicates {
        if seen_preds.insert(&p.name, p.arity()).is_some() {
            diags.push(Diagnostic::error(
                Code::DuplicateName,
                item(format!("predicate:{}", p.name)),
                format!("predicate '{}' is declared more than once", p.name),
            ));
        }
        check_params(&p.params, &format!("predicate:{}", p.name), d, &mut diags);
    }

    // Arity lookup uses the first declaration of each name.
    let arity_of: BTreeMap<&Ident, usize> = d
        .predicates
        .iter()
        .rev()
        .map(|p| (&p.name, p.arity()))
        .collect();

    let mut seen_actions: BTreeSet<&Ident> = BTreeSet::new();
    for a in &d.actions {
        let path = format!("action:{}", a.name);
        if !seen_actions.insert(&a.name) {
            diags.push(Diagnostic::error(
                Code::DuplicateName,
                item(path.clone()),
                format!("action '{}' is declared more than once", a.name),
            ));
        }
        check_params(&a.params, &path, d, &mut diags);

        let bound: BTreeSet<&Ident> = a.params.iter().map(|p| &p.var).collect();
        for (section, literals) in [("precondition", &a.precondition), ("effect", &a.effect)] {
            for l in literals {
                check_schema_literal(l, &bound, &arity_of, &format!("{path}/{section}"), &mut diags);
            }
        }

        // A positive and a negative effect on the same atom contradict.
        let positives: BTreeSet<(&Ident, &Vec<Term>)> = a
            .effect
            .iter()
            .filter(|l| !l.negated)
            .map(|l| (&l.predicate, &l.args))
            .collect();
        for l in a.effect.iter().filter(|l| l.negated) {
            if positives.contains(&(&l.predicate, &l.args)) {
                diags.push(Diagnostic::error(
                    Code::ContradictoryEffect,
                    item(format!("{path}/effect")),
                    format!("effect adds and deletes the same literal {}", positive_form(l)),
                ));
            }
        }
    }

    diags
}

fn positive_form(l: &Literal) -> String {
    Literal {
        negated: false,
        ..l.clone()
    }
    .to_string()
}

fn check_params(
    params: &[super::ast::Param],
    path: &str,
    d: &PddlDomain,
    diags: &mut Vec<Diagnostic>,
) {
    let mut seen = BTreeSet::new();
    for p in params {
        if !seen.insert(&p.var) {
            diags.push(Diagnostic::error(
                Code::DuplicateName,
                item(path.to_string()),
                format!("parameter '?{}' is declared more than once", p.var),
            ));
        }
        if !d.types.is_declared(&p.ty) {
            diags.push(Diagnostic::error(
                Code::UnknownType,
                item(path.to_string()),
                format!("parameter '?{}' has undeclared type '{}'", p.var, p.ty),
            ));
        }
    }
}

fn check_schema_literal(
    l: &Literal,
    bound: &BTreeSet<&Ident>,
    arity_of: &BTreeMap<&Ident, usize>,
    path: &str,
    diags: &mut Vec<Diagnostic>,
) {
    match arity_of.get(&l.predicate) {
        None => diags.push(Diagnostic::error(
            Code::UndeclaredPredicate,
            item(path.to_string()),
            format!("literal uses undeclared predicate '{}'", l.predicate),
        )),
        Some(arity) if *arity != l.args.len() => diags.push(Diagnostic::error(
            Code::ArityMismatch,
            item(path.to_string()),
            format!(
                "predicate '{}' expects {} argument(s), got {}",
                l.predicate,
                arity,
                l.args.len()
            ),
        )),
        Some(_) => {}
    }
    for t in &l.args {
        if let Term::Var(v) = t {
            if !bound.contains(v) {
                diags.push(Diagnostic::error(
                    Code::UnboundVariable,
                    item(path.to_string()),
                    format!("variable '?{v}' is not declared in the parameter list"),
                ));
            }
        }
    }
}

/// Check a problem against its (assumed well-formed) domain.
pub fn validate_problem(p: &PddlProblem, d: &PddlDomain) -> Vec<Diagnostic> {
    let mut diags = Vec::new();

    if p.domain_name != d.name {
        diags.push(Diagnostic::error(
            Code::DomainNameMismatch,
            item(format!("problem:{}", p.name)),
            format!(
                "problem references domain '{}' but the domain is named '{}'",
                p.domain_name, d.name
            ),
        ));
    }

    for (obj, ty) in &p.objects {
        if !d.types.is_declared(ty) {
            diags.push(Diagnostic::error(
                Code::UnknownType,
                item(format!("object:{obj}")),
                format!("object '{obj}' has undeclared type '{ty}'"),
            ));
        }
    }

    for atom in &p.init {
        check_ground_atom(atom, p, d, &format!("init:{atom}"), &mut diags);
    }

    for (i, l) in p.goal.iter().enumerate() {
        let path = format!("goal[{i}]");
        match l.as_ground_atom() {
            None => diags.push(Diagnostic::error(
                Code::NonGroundLiteral,
                item(path),
                format!("goal literal {l} contains a variable"),
            )),
            Some(atom) => check_ground_atom(&atom, p, d, &path, &mut diags),
        }
    }

    diags
}

fn check_ground_atom(
    atom: &GroundAtom,
    p: &PddlProblem,
    d: &PddlDomain,
    path: &str,
    diags: &mut Vec<Diagnostic>,
) {
    let decl = match d.predicate(&atom.predicate) {
        None => {
            diags.push(Diagnostic::error(
                Code::UnknownPredicate,
                item(path.to_string()),
                format!("atom uses undeclared predicate '{}'", atom.predicate),
            ));
            return;
        }
        Some(decl) => decl,
    };
    if decl.arity() != atom.args.len() {
        diags.push(Diagnostic::error(
            Code::ArityMismatch,
            item(path.to_string()),
            format!(
                "predicate '{}' expects {} argument(s), got {}",
                atom.predicate,
                decl.arity(),
                atom.args.len()
            ),
        ));
        return;
    }
    for (arg, param) in atom.args.iter().zip(&decl.params) {
        match p.objects.get(arg) {
            None => diags.push(Diagnostic::error(
                Code::UnknownObject,
                item(path.to_string()),
                format!("'{arg}' is not a declared object"),
            )),
            Some(obj_ty) => {
                if !d.types.is_subtype(obj_ty, &param.ty) {
                    diags.push(Diagnostic::error(
                        Code::TypeMismatch,
                        item(path.to_string()),
                        format!(
                            "argument '{arg}' has type '{obj_ty}', which is not a subtype of \
                             '{}' required by '{}'",
                            param.ty, atom.predicate
                        ),
                    ));
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pddl::ast::*;

    fn id(s: &str) -> Ident {
        Ident::parse(s).unwrap()
    }

    fn toy_domain() -> PddlDomain {
        let mut d = PddlDomain::empty(id("toy"));
        d.requirements.insert(Requirement::Typing);
        d.types.insert(id("robot"), Ident::object()).unwrap();
        d.types.insert(id("rivet"), Ident::object()).unwrap();
        d.predicates.push(Predicate {
            name: id("holding"),
            params: vec![Param { var: id("r"), ty: id("robot") }],
        });
        d.predicates.push(Predicate {
            name: id("fastened"),
            params: vec![Param { var: id("v"), ty: id("rivet") }],
        });
        d
    }

    fn codes(diags: &[Diagnostic]) -> Vec<Code> {
        diags.iter().map(|d| d.code).collect()
    }

    #[test]
    fn well_formed_domain_is_clean() {
        assert!(validate_domain(&toy_domain()).is_empty());
    }

    #[test]
    fn undeclared_predicate_in_action() {
        let mut d = toy_domain();
        d.actions.push(ActionSchema {
            name: id("grab"),
            params: vec![Param { var: id("x"), ty: id("robot") }],
            precondition: vec![Literal::positive(id("free"), vec![Term::Var(id("x"))])],
            effect: vec![Literal::positive(id("holding"), vec![Term::Var(id("x"))])],
        });
        assert_eq!(codes(&validate_domain(&d)), vec![Code::UndeclaredPredicate]);
    }

    #[test]
    fn type_cycle_is_reported() {
        let mut d = PddlDomain::empty(id("d"));
        d.types.insert(id("a"), id("b")).unwrap();
        d.types.insert(id("b"), id("a")).unwrap();
        assert!(codes(&validate_domain(&d)).contains(&Code::TypeCycle));
    }

    #[test]
    fn contradictory_effect_detected() {
        let mut d = toy_domain();
        d.actions.push(ActionSchema {
            name: id("flip"),
            params: vec![Param { var: id("x"), ty: id("robot") }],
            precondition: vec![],
            effect: vec![
                Literal::positive(id("holding"), vec![Term::Var(id("x"))]),
                Literal::negative(id("holding"), vec![Term::Var(id("x"))]),
            ],
        });
        assert_eq!(codes(&validate_domain(&d)), vec![Code::ContradictoryEffect]);
    }

    #[test]
    fn unbound_variable_and_arity() {
        let mut d = toy_domain();
        d.actions.push(ActionSchema {
            name: id("bad"),
            params: vec![],
            precondition: vec![Literal::positive(
                id("holding"),
                vec![Term::Var(id("z")), Term::Var(id("z"))],
            )],
            effect: vec![],
        });
        let got = codes(&validate_domain(&d));
        assert!(got.contains(&Code::ArityMismatch));
        assert!(got.contains(&Code::UnboundVariable));
    }

    #[test]
    fn problem_checks_cover_the_documented_codes() {
        let d = toy_domain();
        let mut p = PddlProblem::new(id("t1"), id("other"));
        p.objects.insert(id("r1"), id("rivet"));
        p.init.insert(GroundAtom { predicate: id("holding"), args: vec![id("r1")] });
        p.goal.push(Literal::positive(id("fastened"), vec![Term::Const(id("r9"))]));
        p.goal.push(Literal::positive(id("fastened"), vec![Term::Var(id("v"))]));
        p.goal.push(Literal::positive(id("ghost"), vec![]));
        let got = codes(&validate_problem(&p, &d));
        assert!(got.contains(&Code::DomainNameMismatch));
        assert!(got.contains(&Code::TypeMismatch)); // rivet passed to robot slot
        assert!(got.contains(&Code::UnknownObject));
        assert!(got.contains(&Code::NonGroundLiteral));
        assert!(got.contains(&Code::UnknownPredicate));
    }

    #[test]
    fn clean_problem_passes() {
        let d = toy_domain();
        let mut p = PddlProblem::new(id("t1"), id("toy"));
        p.objects.insert(id("r1"), id("rivet"));
        p.goal.push(Literal::positive(id("fastened"), vec![Term::Const(id("r1"))]));
        assert!(validate_problem(&p, &d).is_empty());
    }
}
