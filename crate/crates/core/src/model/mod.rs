//! System-model and product-model ingestion: loading, scope selection, and
//! relevant-element identification.

pub mod document;
pub mod product;
pub mod scope;

pub use document::{
    load_model, save_model, verify_model, Element, ElementKind, ModelDocument, Relation,
    RelationKind, StereotypeApplication,
};
pub use product::{load_product_data, ProductRecordSet};
pub use scope::{identify_relevant, select_scope};
