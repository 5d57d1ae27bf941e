//! The PDDL stereotype profile: catalog, conformance checking, binding, and
//! product annotation.

pub mod annotate;
pub mod binding;
pub mod catalog;
pub mod rules;

pub use annotate::{annotate_product, Annotations};
pub use binding::{bind_actions, bind_static, check_profile, DomainBinding};
pub use catalog::{StereotypeCatalog, StereotypeSpec, CATALOG_VERSION};
pub use rules::{parse_rules, AnnotationRule, LiteralTemplate, RuleSet, RuleTarget, TemplateArg};
