//! The PDDL stereotype catalog: which annotations exist, which tags they
//! require, and which element kinds they may attach to.
//!
//! The catalog is closed and versioned; bindings only ever consult the
//! standard catalog, so a model using any other stereotype name is merely
//! decorated, not bound.

use crate::model::ElementKind;

pub const CATALOG_VERSION: &str = "1";

/// Stereotype names, as they appear in model documents.
pub mod names {
    pub const DOMAIN: &str = "pddl-domain";
    pub const TYPE: &str = "pddl-type";
    pub const PREDICATE: &str = "pddl-predicate";
    pub const ACTION: &str = "pddl-action";
    pub const PARAMETER: &str = "pddl-parameter";
    pub const PRECONDITION: &str = "pddl-precondition";
    pub const EFFECT: &str = "pddl-effect";
    pub const OBJECT: &str = "pddl-object";
    pub const PROBLEM: &str = "pddl-problem";
    pub const INIT: &str = "pddl-init";
    pub const GOAL: &str = "pddl-goal";
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StereotypeSpec {
    pub name: &'static str,
    pub required_tags: &'static [&'static str],
    pub optional_tags: &'static [&'static str],
    pub kinds: &'static [ElementKind],
}

/// The closed catalog of PDDL stereotypes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StereotypeCatalog {
    pub version: &'static str,
    entries: &'static [StereotypeSpec],
}

use ElementKind::{Activity, Block, Constraint, Part, Value};

static ENTRIES: &[StereotypeSpec] = &[
    StereotypeSpec {
        name: names::DOMAIN,
        required_tags: &["name"],
        optional_tags: &[],
        kinds: &[Block],
    },
    StereotypeSpec {
        name: names::TYPE,
        required_tags: &["name"],
        optional_tags: &["parent"],
        kinds: &[Block],
    },
    StereotypeSpec {
        name: names::PREDICATE,
        required_tags: &["name", "params"],
        optional_tags: &[],
        kinds: &[Block, Value, Constraint],
    },
    StereotypeSpec {
        name: names::ACTION,
        required_tags: &["name"],
        optional_tags: &[],
        kinds: &[Activity],
    },
    StereotypeSpec {
        name: names::PARAMETER,
        required_tags: &["name", "type"],
        optional_tags: &[],
        kinds: &[Value, Part],
    },
    StereotypeSpec {
        name: names::PRECONDITION,
        required_tags: &["literal"],
        optional_tags: &[],
        kinds: &[Constraint],
    },
    StereotypeSpec {
        name: names::EFFECT,
        required_tags: &["literal"],
        optional_tags: &[],
        kinds: &[Constraint],
    },
    StereotypeSpec {
        name: names::OBJECT,
        required_tags: &["name", "type"],
        optional_tags: &[],
        kinds: &[Block, Part],
    },
    StereotypeSpec {
        name: names::PROBLEM,
        required_tags: &["name"],
        optional_tags: &[],
        kinds: &[Block],
    },
    StereotypeSpec {
        name: names::INIT,
        required_tags: &["literal"],
        optional_tags: &[],
        kinds: &[Constraint],
    },
    StereotypeSpec {
        name: names::GOAL,
        required_tags: &["literal"],
        optional_tags: &[],
        kinds: &[Constraint],
    },
];

static STANDARD: StereotypeCatalog = StereotypeCatalog {
    version: CATALOG_VERSION,
    entries: ENTRIES,
};

impl StereotypeCatalog {
    pub fn standard() -> &'static StereotypeCatalog {
        &STANDARD
    }

    pub fn get(&self, name: &str) -> Option<&StereotypeSpec> {
        self.entries.iter().find(|s| s.name == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.get(name).is_some()
    }

    pub fn entries(&self) -> &[StereotypeSpec] {
        self.entries
    }
}

/// The stereotypes that bind an element to exactly one PDDL construct.
/// An element may carry at most one of these.
pub const BINDING_STEREOTYPES: &[&str] = &[
    names::TYPE,
    names::PREDICATE,
    names::ACTION,
    names::OBJECT,
];
