//! The `.sysmodel` exchange document: elements, relations, stereotypes.
//!
//! The format is a JSON document with normative field names: top-level
//! `model`, `elements[]`, `relations[]`; each element has `id`, `kind`,
//! `name`, optional `owner`, and `stereotypes[]` with `name` and `tags{}`.
//! Containment is carried by the `owner` field; `containment` relations may
//! mirror it explicitly and are honored by scope selection.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diag::{Code, Diagnostic, Location};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementKind {
    Block,
    Part,
    Port,
    Activity,
    Constraint,
    Value,
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ElementKind::Block => "block",
            ElementKind::Part => "part",
            ElementKind::Port => "port",
            ElementKind::Activity => "activity",
            ElementKind::Constraint => "constraint",
            ElementKind::Value => "value",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    Containment,
    Association,
    Allocation,
    Dependency,
}

/// A stereotype application with its tagged values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StereotypeApplication {
    pub name: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tags: BTreeMap<String, String>,
}

impl StereotypeApplication {
    pub fn tag(&self, name: &str) -> Option<&str> {
        self.tags.get(name).map(String::as_str)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Element {
    pub id: String,
    pub kind: ElementKind,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub owner: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub stereotypes: Vec<StereotypeApplication>,
}

impl Element {
    pub fn stereotype(&self, name: &str) -> Option<&StereotypeApplication> {
        self.stereotypes.iter().find(|s| s.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Relation {
    pub id: String,
    pub kind: RelationKind,
    pub source: String,
    pub target: String,
}

/// An element/relation graph with stereotype annotations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub model: String,
    #[serde(default)]
    pub elements: Vec<Element>,
    #[serde(default)]
    pub relations: Vec<Relation>,
}

impl ModelDocument {
    pub fn element(&self, id: &str) -> Option<&Element> {
        self.elements.iter().find(|e| e.id == id)
    }

    /// Direct containment children of `id`: elements owned by it plus
    /// targets of explicit containment relations.
    pub fn children_of<'a>(&'a self, id: &str) -> Vec<&'a Element> {
        let mut out: Vec<&Element> = Vec::new();
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        for e in &self.elements {
            if e.owner.as_deref() == Some(id) && seen.insert(&e.id) {
                out.push(e);
            }
        }
        for r in &self.relations {
            if r.kind == RelationKind::Containment && r.source == id {
                if let Some(e) = self.element(&r.target) {
                    if seen.insert(&e.id) {
                        out.push(e);
                    }
                }
            }
        }
        out
    }
}

/// Parse and verify a `.sysmodel` document.
pub fn load_model(text: &str) -> Result<ModelDocument, Vec<Diagnostic>> {
    let doc: ModelDocument = match serde_json::from_str(text) {
        Ok(doc) => doc,
        Err(e) => {
            return Err(vec![Diagnostic::error(
                Code::MalformedDocument,
                Location::Span {
                    line: e.line() as u32,
                    col: e.column() as u32,
                },
                format!("not a valid model document: {e}"),
            )])
        }
    };
    let diags = verify_model(&doc);
    if crate::diag::has_errors(&diags) {
        Err(diags)
    } else {
        Ok(doc)
    }
}

/// Serialize a document in the exchange format. `load_model` of the result
/// is structural identity.
pub fn save_model(doc: &ModelDocument) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("model documents always serialize");
    text.push('\n');
    text
}

/// Check every ModelDocument invariant.
pub fn verify_model(doc: &ModelDocument) -> Vec<Diagnostic> {
    let mut diags = Vec::new();

    let mut ids: BTreeSet<&str> = BTreeSet::new();
    for e in &doc.elements {
        if !ids.insert(&e.id) {
            diags.push(Diagnostic::error(
                Code::DuplicateElementId,
                Location::Element(e.id.clone()),
                format!("element id '{}' is used more than once", e.id),
            ));
        }
    }

    for e in &doc.elements {
        if let Some(owner) = &e.owner {
            if !ids.contains(owner.as_str()) {
                diags.push(Diagnostic::error(
                    Code::DanglingRelation,
                    Location::Element(e.id.clone()),
                    format!("owner '{owner}' of element '{}' does not exist", e.id),
                ));
            }
        }
    }

    for r in &doc.relations {
        for endpoint in [&r.source, &r.target] {
            if !ids.contains(endpoint.as_str()) {
                diags.push(Diagnostic::error(
                    Code::DanglingRelation,
                    Location::Element(r.id.clone()),
                    format!("relation '{}' references missing element '{endpoint}'", r.id),
                ));
            }
        }
        if r.kind == RelationKind::Dependency && r.source == r.target {
            diags.push(Diagnostic::error(
                Code::MalformedDocument,
                Location::Element(r.id.clone()),
                format!("dependency '{}' has identical source and target", r.id),
            ));
        }
    }

    if let Some(id) = find_containment_cycle(doc) {
        diags.push(Diagnostic::error(
            Code::ContainmentCycle,
            Location::Element(id.clone()),
            format!("containment is cyclic through element '{id}'"),
        ));
    }

    diags
}

/// Detect a cycle in the containment digraph (owner edges plus explicit
/// containment relations). Returns an element on some cycle.
fn find_containment_cycle(doc: &ModelDocument) -> Option<String> {
    let mut edges: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for e in &doc.elements {
        if let Some(owner) = &e.owner {
            edges.entry(owner.as_str()).or_default().push(&e.id);
        }
    }
    for r in &doc.relations {
        if r.kind == RelationKind::Containment {
            edges.entry(&r.source).or_default().push(&r.target);
        }
    }

    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        InProgress,
        Done,
    }
    let mut marks: BTreeMap<&str, Mark> = BTreeMap::new();

    fn visit<'a>(
        node: &'a str,
        edges: &BTreeMap<&'a str, Vec<&'a str>>,
        marks: &mut BTreeMap<&'a str, Mark>,
    ) -> Option<String> {
        match marks.get(node) {
            Some(Mark::Done) => return None,
            Some(Mark::InProgress) => return Some(node.to_string()),
            None => {}
        }
        marks.insert(node, Mark::InProgress);
        if let Some(next) = edges.get(node) {
            for n in next {
                if let Some(cycle) = visit(n, edges, marks) {
                    return Some(cycle);
                }
            }
        }
        marks.insert(node, Mark::Done);
        None
    }

    for e in &doc.elements {
        if let Some(cycle) = visit(&e.id, &edges, &mut marks) {
            return Some(cycle);
        }
    }
    None
}
