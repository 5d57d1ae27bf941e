//! PDDL abstract syntax, canonical rendering, parsing, and validation for
//! the STRIPS + typing + negative-preconditions subset.

pub mod ast;
pub mod parser;
pub mod printer;
pub mod sexpr;
pub mod validate;

pub use ast::{
    ActionSchema, GroundAtom, Ident, IdentError, Literal, Param, PddlDomain, PddlProblem,
    Predicate, Requirement, RequirementSet, Term, TypeHierarchy,
};
pub use parser::{parse_domain, parse_problem, ParseOutput};
pub use printer::{print_domain, print_problem, render_domain, render_problem};
pub use validate::{validate_domain, validate_problem};
