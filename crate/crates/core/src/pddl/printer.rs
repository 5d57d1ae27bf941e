//! Canonical PDDL rendering.
//!
//! The textual form is part of the toolkit contract: lowercase keywords,
//! one construct per line, two-space indentation, fixed section order, and
//! deterministic ordering everywhere the AST does not carry one (types
//! sorted by name, objects grouped by type, init sorted). Structurally equal
//! ASTs therefore render to byte-identical text.
//!
//! `render_*` are total functions over any AST value. `print_domain` /
//! `print_problem` enforce the caller contract that only validated ASTs are
//! rendered for output artifacts.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::ast::{ActionSchema, Ident, Literal, PddlDomain, PddlProblem};
use super::validate::{validate_domain, validate_problem};
use crate::diag::Diagnostic;

/// Render a domain without checking it first.
pub fn render_domain(d: &PddlDomain) -> String {
    let mut out = String::new();
    let _ = write!(out, "(define (domain {})", d.name);
    out.push('\n');

    out.push_str("  (:requirements");
    for r in d.requirements.iter() {
        let _ = write!(out, " {r}");
    }
    out.push_str(")\n");

    if !d.types.is_empty() {
        out.push_str("  (:types\n");
        for (child, parent) in d.types.iter() {
            let _ = writeln!(out, "    {child} - {parent}");
        }
        out.push_str("  )\n");
    }

    if !d.predicates.is_empty() {
        out.push_str("  (:predicates\n");
        for p in &d.predicates {
            let _ = writeln!(out, "    {p}");
        }
        out.push_str("  )\n");
    }

    for a in &d.actions {
        render_action(&mut out, a);
    }

    out.push(')');
    out
}

fn render_action(out: &mut String, a: &ActionSchema) {
    let _ = writeln!(out, "  (:action {}", a.name);
    out.push_str("    :parameters (");
    for (i, p) in a.params.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{p}");
    }
    out.push_str(")\n");
    out.push_str("    :precondition ");
    render_conjunction(out, &a.precondition, "    ");
    out.push('\n');
    out.push_str("    :effect ");
    render_conjunction(out, &a.effect, "    ");
    out.push('\n');
    out.push_str("  )\n");
}

/// `(and )` when empty, otherwise one literal per line.
fn render_conjunction(out: &mut String, literals: &[Literal], indent: &str) {
    if literals.is_empty() {
        out.push_str("(and )");
        return;
    }
    out.push_str("(and\n");
    for l in literals {
        let _ = writeln!(out, "{indent}  {l}");
    }
    out.push_str(indent);
    out.push(')');
}

/// Render a problem without checking it against its domain.
pub fn render_problem(p: &PddlProblem) -> String {
    let mut out = String::new();
    let _ = write!(out, "(define (problem {})", p.name);
    out.push('\n');
    let _ = writeln!(out, "  (:domain {})", p.domain_name);

    if p.objects.is_empty() {
        out.push_str("  (:objects )\n");
    } else {
        // Group by type; BTreeMap keeps both groups and members sorted.
        let mut groups: BTreeMap<&Ident, Vec<&Ident>> = BTreeMap::new();
        for (obj, ty) in &p.objects {
            groups.entry(ty).or_default().push(obj);
        }
        out.push_str("  (:objects\n");
        for (ty, objs) in groups {
            out.push_str("    ");
            for o in objs {
                let _ = write!(out, "{o} ");
            }
            let _ = writeln!(out, "- {ty}");
        }
        out.push_str("  )\n");
    }

    if p.init.is_empty() {
        out.push_str("  (:init )\n");
    } else {
        out.push_str("  (:init\n");
        for atom in &p.init {
            let _ = writeln!(out, "    {atom}");
        }
        out.push_str("  )\n");
    }

    out.push_str("  (:goal ");
    render_conjunction(&mut out, &p.goal, "  ");
    out.push_str(")\n");

    out.push(')');
    out
}

/// Canonical text for a validated domain.
///
/// Refuses a domain that `validate_domain` rejects; printing invalid ASTs
/// into output artifacts is a caller contract violation.
pub fn print_domain(d: &PddlDomain) -> Result<String, Vec<Diagnostic>> {
    let diags = validate_domain(d);
    if crate::diag::has_errors(&diags) {
        return Err(diags);
    }
    Ok(render_domain(d))
}

/// Canonical text for a problem validated against its domain.
pub fn print_problem(p: &PddlProblem, d: &PddlDomain) -> Result<String, Vec<Diagnostic>> {
    let diags = validate_problem(p, d);
    if crate::diag::has_errors(&diags) {
        return Err(diags);
    }
    Ok(render_problem(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pddl::ast::*;

    fn id(s: &str) -> Ident {
        Ident::parse(s).unwrap()
    }

    #[test]
    fn minimal_domain_has_canonical_form() {
        let d = PddlDomain::empty(id("d"));
        assert_eq!(
            print_domain(&d).unwrap(),
            "(define (domain d)\n  (:requirements :strips)\n)"
        );
    }

    #[test]
    fn predicate_block_contains_declaration_verbatim() {
        let mut d = PddlDomain::empty(id("d"));
        d.requirements.insert(Requirement::Typing);
        d.types.insert(id("robot"), Ident::object()).unwrap();
        d.types.insert(id("location"), Ident::object()).unwrap();
        d.predicates.push(Predicate {
            name: id("at"),
            params: vec![
                Param { var: id("r"), ty: id("robot") },
                Param { var: id("l"), ty: id("location") },
            ],
        });
        let text = print_domain(&d).unwrap();
        assert!(text.contains("(at ?r - robot ?l - location)"));
    }

    #[test]
    fn empty_problem_sections_collapse() {
        let p = PddlProblem::new(id("p"), id("d"));
        let text = render_problem(&p);
        assert!(text.contains("(:objects )"));
        assert!(text.contains("(:init )"));
        assert!(text.contains("(:goal (and ))"));
    }

    #[test]
    fn object_insertion_order_does_not_change_bytes() {
        let mut a = PddlProblem::new(id("p"), id("d"));
        a.objects.insert(id("r1"), id("rivet"));
        a.objects.insert(id("r2"), id("rivet"));
        let mut b = PddlProblem::new(id("p"), id("d"));
        b.objects.insert(id("r2"), id("rivet"));
        b.objects.insert(id("r1"), id("rivet"));
        assert_eq!(render_problem(&a), render_problem(&b));
    }

    #[test]
    fn print_domain_rejects_invalid_ast() {
        let mut d = PddlDomain::empty(id("d"));
        d.actions.push(ActionSchema {
            name: id("a"),
            params: vec![],
            precondition: vec![Literal::positive(id("ghost"), vec![])],
            effect: vec![],
        });
        assert!(print_domain(&d).is_err());
    }
}
