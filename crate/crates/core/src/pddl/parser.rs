//! PDDL text parsing for the supported subset.
//!
//! The parser accepts arbitrary whitespace, `;` comments and mixed case, and
//! is deliberately permissive where the validator is the documented
//! authority: e.g. a goal may reference undeclared objects or contain
//! variables — `validate_problem` reports those later. Purely syntactic
//! violations (negative init literals, unknown sections, unsupported
//! requirements) are parse errors.

use std::collections::BTreeMap;

use super::ast::{
    ActionSchema, GroundAtom, Ident, Literal, Param, PddlDomain, PddlProblem, Predicate,
    Requirement, RequirementSet, Term, TypeHierarchy, TypeInsertError,
};
use super::sexpr::{read_one, Pos, Sexpr};
use crate::diag::{Code, Diagnostic};

/// A successful parse plus any non-fatal findings (e.g. duplicate init atoms).
#[derive(Debug, Clone)]
pub struct ParseOutput<T> {
    pub value: T,
    pub warnings: Vec<Diagnostic>,
}

struct Ctx {
    errors: Vec<Diagnostic>,
    warnings: Vec<Diagnostic>,
}

impl Ctx {
    fn new() -> Self {
        Ctx {
            errors: Vec::new(),
            warnings: Vec::new(),
        }
    }

    fn err(&mut self, code: Code, pos: Pos, msg: impl Into<String>) {
        self.errors.push(Diagnostic::error(code, pos.loc(), msg));
    }

    fn warn(&mut self, code: Code, pos: Pos, msg: impl Into<String>) {
        self.warnings.push(Diagnostic::warning(code, pos.loc(), msg));
    }

    fn ident(&mut self, raw: &str, pos: Pos) -> Option<Ident> {
        match Ident::parse(raw) {
            Ok(i) => Some(i),
            Err(e) => {
                self.err(Code::SyntaxError, pos, format!("'{raw}': {e}"));
                None
            }
        }
    }

    fn finish<T>(self, value: T) -> Result<ParseOutput<T>, Vec<Diagnostic>> {
        if self.errors.is_empty() {
            Ok(ParseOutput {
                value,
                warnings: self.warnings,
            })
        } else {
            let mut all = self.errors;
            all.extend(self.warnings);
            Err(all)
        }
    }
}

/// Parse a `(define (domain ...) ...)` document.
pub fn parse_domain(text: &str) -> Result<ParseOutput<PddlDomain>, Vec<Diagnostic>> {
    let form = read_one(text).map_err(|d| vec![d])?;
    let mut ctx = Ctx::new();

    let items = expect_define(&form, "domain", &mut ctx);
    let mut domain = PddlDomain::empty(Ident::parse("unnamed").unwrap());
    let Some(items) = items else {
        return ctx.finish(domain);
    };

    if let Some(name) = named_header(&items[1], "domain", &mut ctx) {
        domain.name = name;
    }

    let mut saw_requirements = false;
    let mut seen_sections: Vec<&str> = Vec::new();
    for section in &items[2..] {
        let pos = section.pos();
        let Some(head) = section.head() else {
            ctx.err(Code::SyntaxError, pos, "expected a (:section ...) list");
            continue;
        };
        let body = &section.list().unwrap()[1..];
        if head != ":action" {
            if seen_sections.contains(&head) {
                ctx.err(Code::SyntaxError, pos, format!("duplicate section '{head}'"));
                continue;
            }
            seen_sections.push(section.head().unwrap());
        }
        match head {
            ":requirements" => {
                saw_requirements = true;
                parse_requirements(body, &mut domain.requirements, &mut ctx);
            }
            ":types" => parse_types(body, pos, &mut domain.types, &mut ctx),
            ":predicates" => parse_predicates(body, &mut domain.predicates, &mut ctx),
            ":action" => {
                if let Some(action) = parse_action(body, pos, &mut ctx) {
                    domain.actions.push(action);
                }
            }
            other => ctx.err(
                Code::UnknownSection,
                pos,
                format!("section '{other}' is not part of the supported PDDL subset"),
            ),
        }
    }
    if !saw_requirements {
        domain.requirements = RequirementSet::strips();
    }

    ctx.finish(domain)
}

/// Parse a `(define (problem ...) ...)` document.
pub fn parse_problem(text: &str) -> Result<ParseOutput<PddlProblem>, Vec<Diagnostic>> {
    let form = read_one(text).map_err(|d| vec![d])?;
    let mut ctx = Ctx::new();

    let items = expect_define(&form, "problem", &mut ctx);
    let unnamed = Ident::parse("unnamed").unwrap();
    let mut problem = PddlProblem::new(unnamed.clone(), unnamed);
    let Some(items) = items else {
        return ctx.finish(problem);
    };

    if let Some(name) = named_header(&items[1], "problem", &mut ctx) {
        problem.name = name;
    }

    let mut saw_domain = false;
    let mut seen_sections: Vec<&str> = Vec::new();
    for section in &items[2..] {
        let pos = section.pos();
        let Some(head) = section.head() else {
            ctx.err(Code::SyntaxError, pos, "expected a (:section ...) list");
            continue;
        };
        let body = &section.list().unwrap()[1..];
        if seen_sections.contains(&head) {
            ctx.err(Code::SyntaxError, pos, format!("duplicate section '{head}'"));
            continue;
        }
        seen_sections.push(section.head().unwrap());
        match head {
            ":domain" => {
                saw_domain = true;
                if body.len() != 1 {
                    ctx.err(Code::SyntaxError, pos, "(:domain ...) takes exactly one name");
                } else if let Some(name) = atom_ident(&body[0], &mut ctx) {
                    problem.domain_name = name;
                }
            }
            ":objects" => parse_objects(body, pos, &mut problem.objects, &mut ctx),
            ":init" => parse_init(body, &mut problem.init, &mut ctx),
            ":goal" => {
                if body.len() != 1 {
                    ctx.err(Code::SyntaxError, pos, "(:goal ...) takes exactly one formula");
                } else {
                    problem.goal = parse_conjunction(&body[0], &mut ctx);
                }
            }
            other => ctx.err(
                Code::UnknownSection,
                pos,
                format!("section '{other}' is not part of the supported PDDL subset"),
            ),
        }
    }
    if !saw_domain {
        ctx.err(
            Code::SyntaxError,
            form.pos(),
            "problem is missing its (:domain ...) section",
        );
    }

    ctx.finish(problem)
}

/// Parse a single literal from embedded tag text, e.g. `(equipped ?r ?e)`
/// or `(not (at ?r ?from))`.
pub fn parse_literal_text(text: &str) -> Result<Literal, Vec<Diagnostic>> {
    let form = read_one(text).map_err(|d| vec![d])?;
    let mut ctx = Ctx::new();
    let lit = parse_literal(&form, &mut ctx);
    match (lit, ctx.errors.is_empty()) {
        (Some(l), true) => Ok(l),
        _ => {
            let mut all = ctx.errors;
            all.extend(ctx.warnings);
            Err(all)
        }
    }
}

/// Unwrap `(define (kind name) section...)`, returning the item slice.
fn expect_define<'a>(form: &'a Sexpr, kind: &str, ctx: &mut Ctx) -> Option<&'a [Sexpr]> {
    let items = match form.list() {
        Some(items) => items,
        None => {
            ctx.err(Code::SyntaxError, form.pos(), "expected a (define ...) form");
            return None;
        }
    };
    if items.first().and_then(Sexpr::atom) != Some("define") || items.len() < 2 {
        ctx.err(
            Code::SyntaxError,
            form.pos(),
            format!("expected (define ({kind} <name>) ...)"),
        );
        return None;
    }
    Some(items)
}

fn named_header(form: &Sexpr, kind: &str, ctx: &mut Ctx) -> Option<Ident> {
    let items = form.list()?;
    if items.len() != 2 || items[0].atom() != Some(kind) {
        ctx.err(
            Code::SyntaxError,
            form.pos(),
            format!("expected ({kind} <name>)"),
        );
        return None;
    }
    atom_ident(&items[1], ctx)
}

fn atom_ident(form: &Sexpr, ctx: &mut Ctx) -> Option<Ident> {
    match form.atom() {
        Some(a) => ctx.ident(a, form.pos()),
        None => {
            ctx.err(Code::SyntaxError, form.pos(), "expected a name, got a list");
            None
        }
    }
}

fn parse_requirements(body: &[Sexpr], reqs: &mut RequirementSet, ctx: &mut Ctx) {
    *reqs = RequirementSet::strips();
    for item in body {
        let pos = item.pos();
        match item.atom() {
            Some(kw) if kw.starts_with(':') => match Requirement::from_keyword(kw) {
                Some(r) => reqs.insert(r),
                None => ctx.err(
                    Code::UnsupportedRequirement,
                    pos,
                    format!(
                        "requirement '{kw}' is outside the supported subset \
                         (:strips :typing :negative-preconditions)"
                    ),
                ),
            },
            _ => ctx.err(Code::SyntaxError, pos, "expected a :requirement keyword"),
        }
    }
}

/// A `name+ - type` grouped list, as used by `:types` and `:objects`.
/// Returns `(name, type, pos)` triples; untyped trailing names get `object`.
fn parse_typed_names(body: &[Sexpr], ctx: &mut Ctx) -> Vec<(Ident, Ident, Pos)> {
    let mut out = Vec::new();
    let mut pending: Vec<(Ident, Pos)> = Vec::new();
    let mut i = 0;
    while i < body.len() {
        let pos = body[i].pos();
        match body[i].atom() {
            None => {
                ctx.err(Code::SyntaxError, pos, "expected a name, got a list");
                i += 1;
            }
            Some("-") => {
                if pending.is_empty() {
                    ctx.err(Code::SyntaxError, pos, "'-' with no names before it");
                    i += 1;
                    continue;
                }
                match body.get(i + 1) {
                    None => {
                        ctx.err(Code::SyntaxError, pos, "'-' with no type after it");
                        i += 1;
                    }
                    Some(ty_form) => {
                        if let Some(ty) = atom_ident(ty_form, ctx) {
                            for (name, npos) in pending.drain(..) {
                                out.push((name, ty.clone(), npos));
                            }
                        } else {
                            pending.clear();
                        }
                        i += 2;
                    }
                }
            }
            Some(raw) => {
                if let Some(name) = ctx.ident(raw, pos) {
                    pending.push((name, pos));
                }
                i += 1;
            }
        }
    }
    for (name, npos) in pending {
        out.push((name, Ident::object(), npos));
    }
    out
}

fn parse_types(body: &[Sexpr], _pos: Pos, types: &mut TypeHierarchy, ctx: &mut Ctx) {
    for (child, parent, pos) in parse_typed_names(body, ctx) {
        match types.insert(child.clone(), parent) {
            Ok(()) => {}
            Err(TypeInsertError::RootRedeclared) => ctx.err(
                Code::SyntaxError,
                pos,
                "built-in type 'object' cannot be redeclared",
            ),
            Err(TypeInsertError::Duplicate(name)) => ctx.err(
                Code::DuplicateName,
                pos,
                format!("type '{name}' is declared more than once"),
            ),
        }
    }
}

fn parse_objects(body: &[Sexpr], _pos: Pos, objects: &mut BTreeMap<Ident, Ident>, ctx: &mut Ctx) {
    for (name, ty, pos) in parse_typed_names(body, ctx) {
        if objects.insert(name.clone(), ty).is_some() {
            ctx.err(
                Code::DuplicateName,
                pos,
                format!("object '{name}' is declared more than once"),
            );
        }
    }
}

/// `?var+ - type` grouped variable list for predicates and parameters.
fn parse_typed_vars(body: &[Sexpr], ctx: &mut Ctx) -> Vec<Param> {
    let mut out = Vec::new();
    let mut pending: Vec<Ident> = Vec::new();
    let mut i = 0;
    while i < body.len() {
        let pos = body[i].pos();
        match body[i].atom() {
            None => {
                ctx.err(Code::SyntaxError, pos, "expected a ?variable, got a list");
                i += 1;
            }
            Some("-") => {
                match body.get(i + 1) {
                    None => {
                        ctx.err(Code::SyntaxError, pos, "'-' with no type after it");
                        i += 1;
                    }
                    Some(ty_form) => {
                        if let Some(ty) = atom_ident(ty_form, ctx) {
                            for var in pending.drain(..) {
                                out.push(Param { var, ty: ty.clone() });
                            }
                        } else {
                            pending.clear();
                        }
                        i += 2;
                    }
                }
            }
            Some(raw) => {
                match raw.strip_prefix('?') {
                    None => ctx.err(
                        Code::SyntaxError,
                        pos,
                        format!("expected a ?variable, got '{raw}'"),
                    ),
                    Some(bare) => {
                        if let Some(var) = ctx.ident(bare, pos) {
                            pending.push(var);
                        }
                    }
                }
                i += 1;
            }
        }
    }
    for var in pending {
        out.push(Param {
            var,
            ty: Ident::object(),
        });
    }
    out
}

fn parse_predicates(body: &[Sexpr], predicates: &mut Vec<Predicate>, ctx: &mut Ctx) {
    for item in body {
        let pos = item.pos();
        let Some(items) = item.list() else {
            ctx.err(Code::SyntaxError, pos, "expected a (name ?v - t ...) declaration");
            continue;
        };
        if items.is_empty() {
            ctx.err(Code::SyntaxError, pos, "empty predicate declaration");
            continue;
        }
        let Some(name) = atom_ident(&items[0], ctx) else {
            continue;
        };
        let params = parse_typed_vars(&items[1..], ctx);
        predicates.push(Predicate { name, params });
    }
}

fn parse_action(body: &[Sexpr], pos: Pos, ctx: &mut Ctx) -> Option<ActionSchema> {
    if body.is_empty() {
        ctx.err(Code::SyntaxError, pos, "(:action ...) is missing its name");
        return None;
    }
    let name = atom_ident(&body[0], ctx)?;

    let mut params: Option<Vec<Param>> = None;
    let mut precondition = Vec::new();
    let mut effect = Vec::new();
    let mut i = 1;
    while i < body.len() {
        let key_pos = body[i].pos();
        let Some(key) = body[i].atom() else {
            ctx.err(Code::SyntaxError, key_pos, "expected :parameters/:precondition/:effect");
            return None;
        };
        let Some(value) = body.get(i + 1) else {
            ctx.err(Code::SyntaxError, key_pos, format!("'{key}' is missing its value"));
            return None;
        };
        match key {
            ":parameters" => match value.list() {
                Some(items) => params = Some(parse_typed_vars(items, ctx)),
                None => ctx.err(Code::SyntaxError, value.pos(), ":parameters expects a list"),
            },
            ":precondition" => precondition = parse_conjunction(value, ctx),
            ":effect" => effect = parse_conjunction(value, ctx),
            other => {
                ctx.err(
                    Code::SyntaxError,
                    key_pos,
                    format!("'{other}' is not a supported action field"),
                );
            }
        }
        i += 2;
    }

    match params {
        None => {
            ctx.err(
                Code::SyntaxError,
                pos,
                format!("action '{name}' is missing :parameters"),
            );
            None
        }
        Some(params) => Some(ActionSchema {
            name,
            params,
            precondition,
            effect,
        }),
    }
}

/// `()`, `(and lit*)`, or a bare literal.
fn parse_conjunction(form: &Sexpr, ctx: &mut Ctx) -> Vec<Literal> {
    let Some(items) = form.list() else {
        ctx.err(Code::SyntaxError, form.pos(), "expected a formula");
        return Vec::new();
    };
    if items.is_empty() {
        return Vec::new();
    }
    if items[0].atom() == Some("and") {
        let mut out = Vec::new();
        for item in &items[1..] {
            if let Some(l) = parse_literal(item, ctx) {
                out.push(l);
            }
        }
        out
    } else {
        parse_literal(form, ctx).into_iter().collect()
    }
}

fn parse_literal(form: &Sexpr, ctx: &mut Ctx) -> Option<Literal> {
    let items = match form.list() {
        Some(items) if !items.is_empty() => items,
        _ => {
            ctx.err(Code::SyntaxError, form.pos(), "expected a literal");
            return None;
        }
    };
    if items[0].atom() == Some("not") {
        if items.len() != 2 {
            ctx.err(Code::SyntaxError, form.pos(), "(not ...) takes exactly one literal");
            return None;
        }
        let inner = parse_literal(&items[1], ctx)?;
        if inner.negated {
            ctx.err(Code::SyntaxError, form.pos(), "double negation is not supported");
            return None;
        }
        return Some(Literal { negated: true, ..inner });
    }

    let predicate = atom_ident(&items[0], ctx)?;
    let mut args = Vec::new();
    for arg in &items[1..] {
        let pos = arg.pos();
        let Some(raw) = arg.atom() else {
            ctx.err(Code::SyntaxError, pos, "literal arguments must be atoms");
            return None;
        };
        let term = match raw.strip_prefix('?') {
            Some(bare) => Term::Var(ctx.ident(bare, pos)?),
            None => Term::Const(ctx.ident(raw, pos)?),
        };
        args.push(term);
    }
    Some(Literal {
        predicate,
        args,
        negated: false,
    })
}

fn parse_init(
    body: &[Sexpr],
    init: &mut std::collections::BTreeSet<GroundAtom>,
    ctx: &mut Ctx,
) {
    for item in body {
        let pos = item.pos();
        let Some(l) = parse_literal(item, ctx) else {
            continue;
        };
        if l.negated {
            ctx.err(Code::SyntaxError, pos, ":init literals must be positive");
            continue;
        }
        match l.as_ground_atom() {
            None => ctx.err(Code::SyntaxError, pos, ":init atoms must be ground"),
            Some(atom) => {
                if !init.insert(atom.clone()) {
                    ctx.warn(
                        Code::DuplicateInitAtom,
                        pos,
                        format!("init atom {atom} appears more than once; kept once"),
                    );
                }
            }
        }
    }
}
