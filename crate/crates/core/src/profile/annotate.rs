//! Product annotation: instantiate annotation rules over product records.

use std::collections::{BTreeMap, BTreeSet};

use super::binding::DomainBinding;
use super::rules::{AnnotationRule, LiteralTemplate, RuleTarget, TemplateArg};
use crate::diag::{Code, Diagnostic, Location};
use crate::model::ProductRecordSet;
use crate::pddl::ast::{GroundAtom, Ident, Literal, Term};

/// Objects and literals produced by annotating product records.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Annotations {
    /// (constant, type), in emission order, duplicate-free.
    pub objects: Vec<(Ident, Ident)>,
    pub init: Vec<GroundAtom>,
    pub goal: Vec<Literal>,
}

fn row_loc(row: usize) -> Location {
    // header is line 1
    Location::Span {
        line: (row + 2) as u32,
        col: 1,
    }
}

/// Apply `rules` to every record, validating against the binding.
///
/// Emitted output is duplicate-free and is guaranteed to pass the problem
/// validator once combined with the binding's own objects: argument types
/// are checked here against the bound predicate signatures.
pub fn annotate_product(
    records: &ProductRecordSet,
    rules: &[AnnotationRule],
    binding: &DomainBinding,
) -> Result<Annotations, Vec<Diagnostic>> {
    let mut diags = validate_rules(records, rules, binding);
    if crate::diag::has_errors(&diags) {
        return Err(diags);
    }

    let mut out = Annotations::default();
    let mut object_types: BTreeMap<Ident, Ident> = BTreeMap::new();
    let mut seen_init: BTreeSet<GroundAtom> = BTreeSet::new();
    let mut seen_goal: BTreeSet<Literal> = BTreeSet::new();

    for row in 0..records.len() {
        for rule in rules {
            match &rule.target {
                RuleTarget::ObjectOfType(ty) => {
                    let raw = records.value(row, &rule.source_column).unwrap();
                    let name = match Ident::parse(raw) {
                        Ok(n) => n,
                        Err(e) => {
                            diags.push(Diagnostic::error(
                                Code::InvalidIdentifier,
                                row_loc(row),
                                format!("value '{raw}' in column '{}': {e}", rule.source_column),
                            ));
                            continue;
                        }
                    };
                    match object_types.get(&name) {
                        None => {
                            object_types.insert(name.clone(), ty.clone());
                            out.objects.push((name, ty.clone()));
                        }
                        Some(prev) if prev != ty => diags.push(Diagnostic::error(
                            Code::TypeMismatchInRule,
                            row_loc(row),
                            format!(
                                "object '{name}' emitted with conflicting types '{prev}' and '{ty}'"
                            ),
                        )),
                        Some(_) => {} // duplicate emission, keep once
                    }
                }
                RuleTarget::InitLiteral(t) => {
                    if let Some(lit) = instantiate(t, records, row, &mut diags) {
                        let atom = lit.as_ground_atom().unwrap();
                        if seen_init.insert(atom.clone()) {
                            out.init.push(atom);
                        }
                    }
                }
                RuleTarget::GoalLiteral(t) => {
                    if let Some(lit) = instantiate(t, records, row, &mut diags) {
                        if seen_goal.insert(lit.clone()) {
                            out.goal.push(lit);
                        }
                    }
                }
            }
        }
    }

    // Literal arguments must be typed objects the problem will declare:
    // either bound in the model or emitted by an object rule above.
    let arg_type = |arg: &Ident| -> Option<Ident> {
        object_types
            .get(arg)
            .or_else(|| binding.object_type(arg))
            .cloned()
    };
    let check_literal = |predicate: &Ident, args: &[Ident], diags: &mut Vec<Diagnostic>| {
        let decl = binding.predicate(predicate).unwrap();
        for (arg, param) in args.iter().zip(&decl.params) {
            match arg_type(arg) {
                None => diags.push(Diagnostic::error(
                    Code::TypeMismatchInRule,
                    Location::None,
                    format!("literal argument '{arg}' is neither a bound nor an emitted object"),
                )),
                Some(ty) => {
                    let compatible = ty == param.ty
                        || param.ty.is_object()
                        || binding_subtype(binding, &ty, &param.ty);
                    if !compatible {
                        diags.push(Diagnostic::error(
                            Code::TypeMismatchInRule,
                            Location::None,
                            format!(
                                "argument '{arg}' of '{predicate}' has type '{ty}', \
                                 expected a subtype of '{}'",
                                param.ty
                            ),
                        ));
                    }
                }
            }
        }
    };
    for atom in &out.init {
        check_literal(&atom.predicate, &atom.args, &mut diags);
    }
    for lit in &out.goal {
        let atom = lit.as_ground_atom().unwrap();
        check_literal(&atom.predicate, &atom.args, &mut diags);
    }

    if crate::diag::has_errors(&diags) {
        Err(diags)
    } else {
        Ok(out)
    }
}

fn binding_subtype(binding: &DomainBinding, sub: &Ident, sup: &Ident) -> bool {
    let mut cur = sub.clone();
    let mut hops = 0;
    while hops <= binding.types.len() {
        if &cur == sup {
            return true;
        }
        match binding.types.iter().find(|(_, name, _)| name == &cur) {
            Some((_, _, parent)) => cur = parent.clone(),
            None => return false,
        }
        hops += 1;
    }
    false
}

/// Static rule validation: referenced columns, predicates, arities, types.
fn validate_rules(
    records: &ProductRecordSet,
    rules: &[AnnotationRule],
    binding: &DomainBinding,
) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    for (i, rule) in rules.iter().enumerate() {
        let loc = Location::Item(format!("rule[{}]", i + 1));
        if !records.has_column(&rule.source_column) {
            diags.push(Diagnostic::error(
                Code::TemplateColumnMissing,
                loc.clone(),
                format!(
                    "rule references column '{}' absent from the product schema {:?}",
                    rule.source_column, records.schema
                ),
            ));
        }
        let template = match &rule.target {
            RuleTarget::ObjectOfType(ty) => {
                if !binding.declares_type(ty) {
                    diags.push(Diagnostic::error(
                        Code::TypeMismatchInRule,
                        loc,
                        format!("object rule names type '{ty}' which is not bound"),
                    ));
                }
                continue;
            }
            RuleTarget::InitLiteral(t) | RuleTarget::GoalLiteral(t) => t,
        };
        for col in template.columns() {
            if !records.has_column(col) {
                diags.push(Diagnostic::error(
                    Code::TemplateColumnMissing,
                    loc.clone(),
                    format!(
                        "template references column '{col}' absent from the product schema {:?}",
                        records.schema
                    ),
                ));
            }
        }
        match binding.predicate(&template.predicate) {
            None => diags.push(Diagnostic::error(
                Code::UndeclaredPredicate,
                loc,
                format!("template uses unbound predicate '{}'", template.predicate),
            )),
            Some(decl) if decl.arity() != template.args.len() => {
                diags.push(Diagnostic::error(
                    Code::ArityMismatch,
                    loc,
                    format!(
                        "template for '{}' has {} argument(s), predicate expects {}",
                        template.predicate,
                        template.args.len(),
                        decl.arity()
                    ),
                ))
            }
            Some(_) => {}
        }
    }
    diags
}

fn instantiate(
    t: &LiteralTemplate,
    records: &ProductRecordSet,
    row: usize,
    diags: &mut Vec<Diagnostic>,
) -> Option<Literal> {
    let mut args = Vec::with_capacity(t.args.len());
    for arg in &t.args {
        let value = match arg {
            TemplateArg::Constant(c) => c.clone(),
            TemplateArg::Column(col) => {
                let raw = records.value(row, col).unwrap();
                match Ident::parse(raw) {
                    Ok(v) => v,
                    Err(e) => {
                        diags.push(Diagnostic::error(
                            Code::InvalidIdentifier,
                            row_loc(row),
                            format!("value '{raw}' in column '{col}': {e}"),
                        ));
                        return None;
                    }
                }
            }
        };
        args.push(Term::Const(value));
    }
    Some(Literal {
        predicate: t.predicate.clone(),
        args,
        negated: t.negated,
    })
}
