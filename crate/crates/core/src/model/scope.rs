//! Scope selection and relevant-element identification.

use std::collections::BTreeSet;

use super::document::ModelDocument;
use crate::diag::{Code, Diagnostic, Location};
use crate::profile::StereotypeCatalog;

/// The sub-document induced by `root`'s containment closure.
///
/// Kept elements are those reachable from `root` over containment (owner
/// edges and explicit containment relations), in original document order.
/// Relations of any kind survive only if both endpoints stay inside; an
/// owner reference pointing outside the closure is dropped so the result is
/// a valid document on its own.
pub fn select_scope(doc: &ModelDocument, root: &str) -> Result<ModelDocument, Vec<Diagnostic>> {
    if doc.element(root).is_none() {
        return Err(vec![Diagnostic::error(
            Code::UnknownRoot,
            Location::Element(root.to_string()),
            format!("scope root '{root}' does not exist in the model"),
        )]);
    }

    let mut inside: BTreeSet<&str> = BTreeSet::new();
    let mut queue: Vec<&str> = vec![root];
    while let Some(id) = queue.pop() {
        if !inside.insert(id) {
            continue;
        }
        for child in doc.children_of(id) {
            queue.push(&child.id);
        }
    }

    let elements = doc
        .elements
        .iter()
        .filter(|e| inside.contains(e.id.as_str()))
        .map(|e| {
            let mut e = e.clone();
            if let Some(owner) = &e.owner {
                if !inside.contains(owner.as_str()) {
                    e.owner = None;
                }
            }
            e
        })
        .collect();

    let relations = doc
        .relations
        .iter()
        .filter(|r| inside.contains(r.source.as_str()) && inside.contains(r.target.as_str()))
        .cloned()
        .collect();

    Ok(ModelDocument {
        model: doc.model.clone(),
        elements,
        relations,
    })
}

/// Ids of elements carrying at least one stereotype from the PDDL catalog,
/// in document order. An element with several PDDL stereotypes appears once.
pub fn identify_relevant(doc: &ModelDocument, catalog: &StereotypeCatalog) -> Vec<String> {
    doc.elements
        .iter()
        .filter(|e| e.stereotypes.iter().any(|s| catalog.contains(&s.name)))
        .map(|e| e.id.clone())
        .collect()
}
