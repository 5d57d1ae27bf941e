//! Assembly of PDDL ASTs from a completed binding and product annotations.

use std::collections::BTreeSet;

use crate::diag::{Code, Diagnostic, Location};
use crate::pddl::ast::{Ident, PddlDomain, PddlProblem, Requirement, RequirementSet};
use crate::pddl::validate::{validate_domain, validate_problem};
use crate::profile::{Annotations, DomainBinding};

/// Build the domain from a completed binding.
///
/// Requirements are computed from content rather than configured:
/// `:typing` appears as soon as the domain declares types or any parameter
/// or object uses one, and `:negative-preconditions` appears iff some
/// action precondition contains a negative literal. The result is validated
/// before it is returned.
pub fn generate_domain(binding: &DomainBinding) -> Result<PddlDomain, Vec<Diagnostic>> {
    let name = match &binding.domain_name {
        Some(n) => n.clone(),
        None => {
            return Err(vec![Diagnostic::error(
                Code::InvalidIdentifier,
                Location::None,
                "binding carries no domain name",
            )])
        }
    };

    let mut requirements = RequirementSet::strips();
    let uses_types = !binding.types.is_empty()
        || !binding.objects.is_empty()
        || binding
            .predicates
            .iter()
            .any(|(_, p)| !p.params.is_empty())
        || binding.actions.iter().any(|(_, a)| !a.params.is_empty());
    if uses_types {
        requirements.insert(Requirement::Typing);
    }
    if binding
        .actions
        .iter()
        .any(|(_, a)| a.precondition.iter().any(|l| l.negated))
    {
        requirements.insert(Requirement::NegativePreconditions);
    }

    let mut domain = PddlDomain::empty(name);
    domain.requirements = requirements;
    let mut diags = Vec::new();
    for (id, ty, parent) in &binding.types {
        if let Err(e) = domain.types.insert(ty.clone(), parent.clone()) {
            diags.push(Diagnostic::error(
                Code::DuplicateName,
                Location::Element(id.clone()),
                format!("cannot declare type '{ty}': {e:?}"),
            ));
        }
    }
    domain.predicates = binding.predicates.iter().map(|(_, p)| p.clone()).collect();
    domain.actions = binding.actions.iter().map(|(_, a)| a.clone()).collect();

    diags.extend(validate_domain(&domain));
    if crate::diag::has_errors(&diags) {
        Err(diags)
    } else {
        Ok(domain)
    }
}

/// Build the problem from the binding, the product annotations, and the
/// configured problem name, and validate it against `domain`.
///
/// Objects are the union of model-bound and product-emitted constants; a
/// name present in both is an error. Init atoms union with set semantics;
/// goal literals union model-first with duplicates dropped.
pub fn generate_problem(
    binding: &DomainBinding,
    annotations: &Annotations,
    domain: &PddlDomain,
    problem_name: Ident,
) -> Result<PddlProblem, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let mut problem = PddlProblem::new(problem_name, domain.name.clone());

    for (id, name, ty) in &binding.objects {
        if problem.objects.insert(name.clone(), ty.clone()).is_some() {
            diags.push(Diagnostic::error(
                Code::ObjectNameCollision,
                Location::Element(id.clone()),
                format!("object '{name}' is bound more than once in the model"),
            ));
        }
    }
    for (name, ty) in &annotations.objects {
        if problem.objects.contains_key(name) {
            diags.push(Diagnostic::error(
                Code::ObjectNameCollision,
                Location::None,
                format!("product object '{name}' collides with a model-bound object"),
            ));
        } else {
            problem.objects.insert(name.clone(), ty.clone());
        }
    }

    for (_, atom) in &binding.init {
        problem.init.insert(atom.clone());
    }
    for atom in &annotations.init {
        problem.init.insert(atom.clone());
    }

    let mut seen = BTreeSet::new();
    for (_, lit) in &binding.goals {
        if seen.insert(lit.clone()) {
            problem.goal.push(lit.clone());
        }
    }
    for lit in &annotations.goal {
        if seen.insert(lit.clone()) {
            problem.goal.push(lit.clone());
        }
    }

    if problem.goal.is_empty() {
        diags.push(Diagnostic::error(
            Code::EmptyGoal,
            Location::None,
            "the assembled problem has an empty goal; planning would be vacuous",
        ));
    }

    diags.extend(validate_problem(&problem, domain));
    if crate::diag::has_errors(&diags) {
        Err(diags)
    } else {
        Ok(problem)
    }
}
