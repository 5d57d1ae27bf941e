//! Profile conformance checking and element-to-PDDL binding.
//!
//! `check_profile` verifies that every `pddl-*` stereotype application is
//! well-formed against the catalog. `bind_static` then maps annotated
//! elements to the static PDDL constructs (types, predicates, objects, and
//! the model-side init/goal literals); `bind_actions` completes the binding
//! with action schemas whose literals must resolve against the static part.

use std::collections::{BTreeMap, BTreeSet};

use super::catalog::{names, StereotypeCatalog, BINDING_STEREOTYPES};
use crate::diag::{Code, Diagnostic, Location};
use crate::model::{Element, ModelDocument};
use crate::pddl::ast::{ActionSchema, GroundAtom, Ident, Literal, Param, Term};
use crate::pddl::parser::parse_literal_text;

/// The resolved mapping from model elements to PDDL constructs.
///
/// Binding order follows document order, which makes generation
/// deterministic for equal documents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DomainBinding {
    pub domain_name: Option<Ident>,
    /// element id -> (type name, parent)
    pub types: Vec<(String, Ident, Ident)>,
    /// element id -> predicate declaration
    pub predicates: Vec<(String, crate::pddl::ast::Predicate)>,
    /// element id -> (constant, type)
    pub objects: Vec<(String, Ident, Ident)>,
    /// element id -> model-side init atom
    pub init: Vec<(String, GroundAtom)>,
    /// element id -> model-side goal literal
    pub goals: Vec<(String, Literal)>,
    /// element id -> action schema
    pub actions: Vec<(String, ActionSchema)>,
}

impl DomainBinding {
    pub fn declares_type(&self, ty: &Ident) -> bool {
        ty.is_object() || self.types.iter().any(|(_, name, _)| name == ty)
    }

    pub fn predicate(&self, name: &Ident) -> Option<&crate::pddl::ast::Predicate> {
        self.predicates
            .iter()
            .map(|(_, p)| p)
            .find(|p| &p.name == name)
    }

    pub fn object_type(&self, obj: &Ident) -> Option<&Ident> {
        self.objects
            .iter()
            .find(|(_, name, _)| name == obj)
            .map(|(_, _, ty)| ty)
    }
}

fn elem_loc(e: &Element) -> Location {
    Location::Element(e.id.clone())
}

/// Check stereotype applications against the catalog.
///
/// Foreign profiles (stereotypes outside the `pddl-` namespace) are ignored;
/// this check guards the PDDL profile only.
pub fn check_profile(doc: &ModelDocument, catalog: &StereotypeCatalog) -> Vec<Diagnostic> {
    let mut diags = Vec::new();

    for e in &doc.elements {
        let mut binding_count = 0;
        for app in &e.stereotypes {
            if !app.name.starts_with("pddl-") {
                continue;
            }
            let spec = match catalog.get(&app.name) {
                None => {
                    diags.push(Diagnostic::error(
                        Code::UnknownStereotype,
                        elem_loc(e),
                        format!("stereotype '{}' is not in the PDDL profile catalog", app.name),
                    ));
                    continue;
                }
                Some(spec) => spec,
            };
            if !spec.kinds.contains(&e.kind) {
                diags.push(Diagnostic::error(
                    Code::StereotypeKindMismatch,
                    elem_loc(e),
                    format!(
                        "stereotype '{}' cannot be applied to a {} element",
                        app.name, e.kind
                    ),
                ));
            }
            for tag in spec.required_tags {
                if app.tag(tag).is_none() {
                    diags.push(Diagnostic::error(
                        Code::MissingRequiredTag,
                        elem_loc(e),
                        format!("stereotype '{}' is missing required tag '{tag}'", app.name),
                    ));
                }
            }
            if BINDING_STEREOTYPES.contains(&app.name.as_str()) {
                binding_count += 1;
            }
        }
        if binding_count > 1 {
            diags.push(Diagnostic::error(
                Code::DuplicatePddlName,
                elem_loc(e),
                format!("element '{}' carries more than one PDDL binding stereotype", e.id),
            ));
        }
    }

    // Name uniqueness per binding class, compared after case folding.
    for class in BINDING_STEREOTYPES {
        let mut seen: BTreeMap<String, &str> = BTreeMap::new();
        for e in &doc.elements {
            if let Some(app) = e.stereotype(class) {
                if let Some(raw) = app.tag("name") {
                    let key = raw.to_ascii_lowercase();
                    if let Some(first) = seen.insert(key, &e.id) {
                        diags.push(Diagnostic::error(
                            Code::DuplicatePddlName,
                            elem_loc(e),
                            format!(
                                "{class} name '{raw}' is already bound by element '{first}'"
                            ),
                        ));
                    }
                }
            }
        }
    }

    let domains: Vec<&Element> = doc
        .elements
        .iter()
        .filter(|e| e.stereotype(names::DOMAIN).is_some())
        .collect();
    if domains.len() > 1 {
        diags.push(Diagnostic::error(
            Code::DuplicatePddlName,
            elem_loc(domains[1]),
            "more than one element carries the pddl-domain stereotype",
        ));
    }

    diags
}

struct Binder {
    diags: Vec<Diagnostic>,
}

impl Binder {
    fn ident_tag(&mut self, e: &Element, stereotype: &str, tag: &str) -> Option<Ident> {
        let app = e.stereotype(stereotype)?;
        let raw = match app.tag(tag) {
            Some(raw) => raw,
            None => {
                self.diags.push(Diagnostic::error(
                    Code::MissingRequiredTag,
                    elem_loc(e),
                    format!("stereotype '{stereotype}' is missing required tag '{tag}'"),
                ));
                return None;
            }
        };
        // Variable-valued tags may be written with the PDDL `?` sigil.
        let raw = raw.strip_prefix('?').unwrap_or(raw);
        match Ident::parse(raw) {
            Ok(i) => Some(i),
            Err(err) => {
                self.diags.push(Diagnostic::error(
                    Code::InvalidIdentifier,
                    elem_loc(e),
                    format!("tag '{tag}' of '{stereotype}': {err}"),
                ));
                None
            }
        }
    }

    fn literal_tag(&mut self, e: &Element, stereotype: &str) -> Option<Literal> {
        let raw = e.stereotype(stereotype)?.tag("literal")?;
        match parse_literal_text(raw) {
            Ok(l) => Some(l),
            Err(errs) => {
                let detail = errs
                    .first()
                    .map(|d| d.message.clone())
                    .unwrap_or_else(|| "unreadable literal".to_string());
                self.diags.push(Diagnostic::error(
                    Code::InvalidIdentifier,
                    elem_loc(e),
                    format!("tag 'literal' of '{stereotype}' is not a valid literal: {detail}"),
                ));
                None
            }
        }
    }
}

/// Parse a `?var - type ?var - type ...` params tag.
fn parse_params_tag(raw: &str, e: &Element, diags: &mut Vec<Diagnostic>) -> Option<Vec<Param>> {
    let tokens: Vec<&str> = raw.split_whitespace().collect();
    if tokens.is_empty() {
        return Some(Vec::new());
    }
    if !tokens.len().is_multiple_of(3) {
        diags.push(Diagnostic::error(
            Code::InvalidIdentifier,
            elem_loc(e),
            format!("params tag '{raw}' is not a sequence of '?var - type' entries"),
        ));
        return None;
    }
    let mut params = Vec::new();
    for chunk in tokens.chunks(3) {
        let (var_raw, dash, ty_raw) = (chunk[0], chunk[1], chunk[2]);
        if dash != "-" {
            diags.push(Diagnostic::error(
                Code::InvalidIdentifier,
                elem_loc(e),
                format!("params tag '{raw}': expected '-' between variable and type"),
            ));
            return None;
        }
        let var = match Ident::parse(var_raw.strip_prefix('?').unwrap_or(var_raw)) {
            Ok(v) => v,
            Err(err) => {
                diags.push(Diagnostic::error(
                    Code::InvalidIdentifier,
                    elem_loc(e),
                    format!("params tag variable '{var_raw}': {err}"),
                ));
                return None;
            }
        };
        let ty = match Ident::parse(ty_raw) {
            Ok(t) => t,
            Err(err) => {
                diags.push(Diagnostic::error(
                    Code::InvalidIdentifier,
                    elem_loc(e),
                    format!("params tag type '{ty_raw}': {err}"),
                ));
                return None;
            }
        };
        params.push(Param { var, ty });
    }
    Some(params)
}

/// Sanitize a free-text model name into a PDDL identifier.
fn sanitize_to_ident(raw: &str) -> Option<Ident> {
    let mut s = String::new();
    for c in raw.trim().chars() {
        let c = c.to_ascii_lowercase();
        if c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' || c == '-' {
            s.push(c);
        } else if c.is_whitespace() {
            s.push('-');
        }
    }
    while s.starts_with(|c: char| !c.is_ascii_lowercase()) && !s.is_empty() {
        s.remove(0);
    }
    Ident::parse(&s).ok()
}

/// Bind the static constructs: types, predicates, objects, plus the
/// model-side init atoms and goal literals.
pub fn bind_static(doc: &ModelDocument) -> Result<DomainBinding, Vec<Diagnostic>> {
    let mut binder = Binder { diags: Vec::new() };
    let mut binding = DomainBinding::default();

    for e in &doc.elements {
        if e.stereotype(names::DOMAIN).is_some() {
            if let Some(name) = binder.ident_tag(e, names::DOMAIN, "name") {
                binding.domain_name.get_or_insert(name);
            }
        }
        if e.stereotype(names::TYPE).is_some() {
            let name = binder.ident_tag(e, names::TYPE, "name");
            let parent = match e.stereotype(names::TYPE).unwrap().tag("parent") {
                Some(_) => binder.ident_tag(e, names::TYPE, "parent"),
                None => Some(Ident::object()),
            };
            if let (Some(name), Some(parent)) = (name, parent) {
                binding.types.push((e.id.clone(), name, parent));
            }
        }
        if let Some(app) = e.stereotype(names::PREDICATE) {
            let name = binder.ident_tag(e, names::PREDICATE, "name");
            let params = match app.tag("params") {
                Some(raw) => parse_params_tag(raw, e, &mut binder.diags),
                None => {
                    binder.diags.push(Diagnostic::error(
                        Code::MissingRequiredTag,
                        elem_loc(e),
                        "stereotype 'pddl-predicate' is missing required tag 'params'",
                    ));
                    None
                }
            };
            if let (Some(name), Some(params)) = (name, params) {
                binding
                    .predicates
                    .push((e.id.clone(), crate::pddl::ast::Predicate { name, params }));
            }
        }
        if e.stereotype(names::OBJECT).is_some() {
            let name = binder.ident_tag(e, names::OBJECT, "name");
            let ty = binder.ident_tag(e, names::OBJECT, "type");
            if let (Some(name), Some(ty)) = (name, ty) {
                binding.objects.push((e.id.clone(), name, ty));
            }
        }
        if e.stereotype(names::INIT).is_some() {
            if let Some(lit) = binder.literal_tag(e, names::INIT) {
                if lit.negated {
                    binder.diags.push(Diagnostic::error(
                        Code::InvalidIdentifier,
                        elem_loc(e),
                        "pddl-init literals must be positive",
                    ));
                } else {
                    match lit.as_ground_atom() {
                        Some(atom) => binding.init.push((e.id.clone(), atom)),
                        None => binder.diags.push(Diagnostic::error(
                            Code::NonGroundLiteral,
                            elem_loc(e),
                            format!("pddl-init literal {lit} contains a variable"),
                        )),
                    }
                }
            }
        }
        if e.stereotype(names::GOAL).is_some() {
            if let Some(lit) = binder.literal_tag(e, names::GOAL) {
                binding.goals.push((e.id.clone(), lit));
            }
        }
    }

    if binding.domain_name.is_none() {
        match sanitize_to_ident(&doc.model) {
            Some(name) => binding.domain_name = Some(name),
            None => binder.diags.push(Diagnostic::error(
                Code::InvalidIdentifier,
                Location::None,
                format!(
                    "model name '{}' cannot be used as a domain name; \
                     add a pddl-domain stereotype",
                    doc.model
                ),
            )),
        }
    }

    // Resolve type references now that every declaration is collected.
    let declared: BTreeSet<&Ident> = binding.types.iter().map(|(_, name, _)| name).collect();
    let is_declared = |ty: &Ident| ty.is_object() || declared.contains(ty);

    for (id, name, parent) in &binding.types {
        if !is_declared(parent) {
            binder.diags.push(Diagnostic::error(
                Code::UnknownParentType,
                Location::Element(id.clone()),
                format!("parent type '{parent}' of '{name}' is not bound by any pddl-type"),
            ));
        }
    }
    for (id, pred) in &binding.predicates {
        for p in &pred.params {
            if !is_declared(&p.ty) {
                binder.diags.push(Diagnostic::error(
                    Code::UnknownParentType,
                    Location::Element(id.clone()),
                    format!(
                        "parameter '?{}' of predicate '{}' has unbound type '{}'",
                        p.var, pred.name, p.ty
                    ),
                ));
            }
        }
    }
    for (id, name, ty) in &binding.objects {
        if !is_declared(ty) {
            binder.diags.push(Diagnostic::error(
                Code::UnknownParentType,
                Location::Element(id.clone()),
                format!("object '{name}' has unbound type '{ty}'"),
            ));
        }
    }

    if binder.diags.iter().any(Diagnostic::is_error) {
        Err(binder.diags)
    } else {
        Ok(binding)
    }
}

/// Complete a static binding with action schemas.
///
/// Never introduces a predicate, type, or object that is not already in the
/// static binding; literals must resolve against the static predicates.
pub fn bind_actions(
    doc: &ModelDocument,
    mut binding: DomainBinding,
) -> Result<DomainBinding, Vec<Diagnostic>> {
    let mut binder = Binder { diags: Vec::new() };

    for e in &doc.elements {
        if e.stereotype(names::ACTION).is_none() {
            continue;
        }
        let Some(name) = binder.ident_tag(e, names::ACTION, "name") else {
            continue;
        };

        let mut params: Vec<Param> = Vec::new();
        let mut precondition: Vec<Literal> = Vec::new();
        let mut effect: Vec<Literal> = Vec::new();
        for child in doc.children_of(&e.id) {
            if child.stereotype(names::PARAMETER).is_some() {
                let var = binder.ident_tag(child, names::PARAMETER, "name");
                let ty = binder.ident_tag(child, names::PARAMETER, "type");
                if let (Some(var), Some(ty)) = (var, ty) {
                    if !binding.declares_type(&ty) {
                        binder.diags.push(Diagnostic::error(
                            Code::UnknownParentType,
                            elem_loc(child),
                            format!("parameter '?{var}' has unbound type '{ty}'"),
                        ));
                    }
                    params.push(Param { var, ty });
                }
            }
            if child.stereotype(names::PRECONDITION).is_some() {
                if let Some(lit) = binder.literal_tag(child, names::PRECONDITION) {
                    precondition.push(lit);
                }
            }
            if child.stereotype(names::EFFECT).is_some() {
                if let Some(lit) = binder.literal_tag(child, names::EFFECT) {
                    effect.push(lit);
                }
            }
        }

        let bound_vars: BTreeSet<&Ident> = params.iter().map(|p| &p.var).collect();
        for lit in precondition.iter().chain(&effect) {
            match binding.predicate(&lit.predicate) {
                None => binder.diags.push(Diagnostic::error(
                    Code::UndeclaredPredicateInAction,
                    elem_loc(e),
                    format!(
                        "action '{name}' uses predicate '{}' which is not in the static binding",
                        lit.predicate
                    ),
                )),
                Some(decl) if decl.arity() != lit.args.len() => {
                    binder.diags.push(Diagnostic::error(
                        Code::ArityMismatch,
                        elem_loc(e),
                        format!(
                            "action '{name}': predicate '{}' expects {} argument(s), got {}",
                            lit.predicate,
                            decl.arity(),
                            lit.args.len()
                        ),
                    ))
                }
                Some(_) => {}
            }
            for t in &lit.args {
                if let Term::Var(v) = t {
                    if !bound_vars.contains(v) {
                        binder.diags.push(Diagnostic::error(
                            Code::UnboundActionVariable,
                            elem_loc(e),
                            format!("action '{name}' uses variable '?{v}' outside its parameters"),
                        ));
                    }
                }
            }
        }

        binding.actions.push((
            e.id.clone(),
            ActionSchema {
                name,
                params,
                precondition,
                effect,
            },
        ));
    }

    if binder.diags.iter().any(Diagnostic::is_error) {
        Err(binder.diags)
    } else {
        Ok(binding)
    }
}
