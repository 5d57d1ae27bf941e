//! Typed abstract syntax for the supported PDDL subset:
//! STRIPS with typing and negative preconditions.
//!
//! All values are immutable after construction and cheap to clone. Ordered
//! collections (`BTreeMap`/`BTreeSet`) are used wherever the canonical
//! rendering sorts, so structurally equal documents print byte-identically
//! regardless of insertion order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Words that can never be used as PDDL identifiers in this subset.
const RESERVED: &[&str] = &[
    "define", "and", "or", "not", "either", "forall", "exists", "when", "imply",
];

/// A validated PDDL identifier: `[a-z][a-z0-9_-]*`, never a reserved word.
///
/// Identifiers are case-insensitive on input and canonicalized to lowercase.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ident(String);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentError {
    Empty,
    BadStart(char),
    BadChar(char),
    Reserved(String),
}

impl fmt::Display for IdentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentError::Empty => write!(f, "identifier is empty"),
            IdentError::BadStart(c) => write!(f, "identifier must start with a letter, got '{c}'"),
            IdentError::BadChar(c) => write!(f, "identifier contains invalid character '{c}'"),
            IdentError::Reserved(w) => write!(f, "'{w}' is a reserved PDDL keyword"),
        }
    }
}

impl Ident {
    /// Parse and canonicalize an identifier. Uppercase input is lowered.
    pub fn parse(raw: &str) -> Result<Ident, IdentError> {
        let s = raw.to_ascii_lowercase();
        let mut chars = s.chars();
        match chars.next() {
            None => return Err(IdentError::Empty),
            Some(c) if !c.is_ascii_lowercase() => return Err(IdentError::BadStart(c)),
            Some(_) => {}
        }
        for c in chars {
            if !(c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' || c == '-') {
                return Err(IdentError::BadChar(c));
            }
        }
        if RESERVED.contains(&s.as_str()) {
            return Err(IdentError::Reserved(s));
        }
        Ok(Ident(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The built-in root type `object`.
    pub fn object() -> Ident {
        Ident("object".to_string())
    }

    pub fn is_object(&self) -> bool {
        self.0 == "object"
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Ident {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// The three requirements of the supported subset, in canonical print order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Requirement {
    Strips,
    Typing,
    NegativePreconditions,
}

impl Requirement {
    pub fn as_str(&self) -> &'static str {
        match self {
            Requirement::Strips => ":strips",
            Requirement::Typing => ":typing",
            Requirement::NegativePreconditions => ":negative-preconditions",
        }
    }

    pub fn from_keyword(kw: &str) -> Option<Requirement> {
        match kw {
            ":strips" => Some(Requirement::Strips),
            ":typing" => Some(Requirement::Typing),
            ":negative-preconditions" => Some(Requirement::NegativePreconditions),
            _ => None,
        }
    }
}

impl fmt::Display for Requirement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Set of declared requirements. `:strips` is always present.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RequirementSet(BTreeSet<Requirement>);

impl RequirementSet {
    /// The minimal set: `:strips` only.
    pub fn strips() -> Self {
        let mut s = BTreeSet::new();
        s.insert(Requirement::Strips);
        RequirementSet(s)
    }

    pub fn insert(&mut self, r: Requirement) {
        self.0.insert(r);
    }

    pub fn contains(&self, r: Requirement) -> bool {
        self.0.contains(&r)
    }

    pub fn iter(&self) -> impl Iterator<Item = Requirement> + '_ {
        self.0.iter().copied()
    }
}

/// Type hierarchy: a map from declared type to its parent.
///
/// `object` is the implicit root; it is never stored as a child and has no
/// parent. Parents may be forward references (checked by the validator, not
/// the constructor), so ill-formed hierarchies such as cycles are
/// representable and reportable.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TypeHierarchy {
    edges: BTreeMap<Ident, Ident>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeInsertError {
    /// `object` cannot be redeclared.
    RootRedeclared,
    /// The type was already declared.
    Duplicate(Ident),
}

impl TypeHierarchy {
    pub fn new() -> Self {
        TypeHierarchy::default()
    }

    pub fn insert(&mut self, child: Ident, parent: Ident) -> Result<(), TypeInsertError> {
        if child.is_object() {
            return Err(TypeInsertError::RootRedeclared);
        }
        if self.edges.contains_key(&child) {
            return Err(TypeInsertError::Duplicate(child));
        }
        self.edges.insert(child, parent);
        Ok(())
    }

    /// True if `t` is declared or is the root `object`.
    pub fn is_declared(&self, t: &Ident) -> bool {
        t.is_object() || self.edges.contains_key(t)
    }

    pub fn parent_of(&self, t: &Ident) -> Option<&Ident> {
        self.edges.get(t)
    }

    /// Reflexive-transitive subtype test. Cycle-safe: the walk stops when a
    /// type repeats.
    pub fn is_subtype(&self, sub: &Ident, sup: &Ident) -> bool {
        if sub == sup {
            return true;
        }
        if sup.is_object() {
            // Everything is an object, declared or not.
            return true;
        }
        let mut seen = BTreeSet::new();
        let mut cur = sub;
        while let Some(parent) = self.edges.get(cur) {
            if parent == sup {
                return true;
            }
            if !seen.insert(cur.clone()) {
                return false;
            }
            cur = parent;
        }
        false
    }

    /// Sorted `(child, parent)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (&Ident, &Ident)> {
        self.edges.iter()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Returns one type that participates in a parent cycle, if any exists.
    pub fn find_cycle(&self) -> Option<Ident> {
        for start in self.edges.keys() {
            let mut seen = BTreeSet::new();
            seen.insert(start.clone());
            let mut cur = start;
            while let Some(parent) = self.edges.get(cur) {
                if !seen.insert(parent.clone()) {
                    return Some(parent.clone());
                }
                cur = parent;
            }
        }
        None
    }
}

/// A typed formal parameter, `?var - type`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Param {
    pub var: Ident,
    pub ty: Ident,
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "?{} - {}", self.var, self.ty)
    }
}

/// A predicate declaration with its typed parameter list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Predicate {
    pub name: Ident,
    pub params: Vec<Param>,
}

impl Predicate {
    pub fn arity(&self) -> usize {
        self.params.len()
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.name)?;
        for p in &self.params {
            write!(f, " {p}")?;
        }
        write!(f, ")")
    }
}

/// A term: either a variable (printed `?x`) or a constant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Ident),
    Const(Ident),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "?{v}"),
            Term::Const(c) => write!(f, "{c}"),
        }
    }
}

/// A possibly negated application of a predicate to terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub predicate: Ident,
    pub args: Vec<Term>,
    pub negated: bool,
}

impl Literal {
    pub fn positive(predicate: Ident, args: Vec<Term>) -> Self {
        Literal {
            predicate,
            args,
            negated: false,
        }
    }

    pub fn negative(predicate: Ident, args: Vec<Term>) -> Self {
        Literal {
            predicate,
            args,
            negated: true,
        }
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(|t| matches!(t, Term::Const(_)))
    }

    /// The ground atom underneath, if no argument is a variable.
    pub fn as_ground_atom(&self) -> Option<GroundAtom> {
        let mut args = Vec::with_capacity(self.args.len());
        for t in &self.args {
            match t {
                Term::Const(c) => args.push(c.clone()),
                Term::Var(_) => return None,
            }
        }
        Some(GroundAtom {
            predicate: self.predicate.clone(),
            args,
        })
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "(not ")?;
        }
        write!(f, "({}", self.predicate)?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        write!(f, ")")?;
        if self.negated {
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// A fully instantiated positive atom.
///
/// The derived ordering (predicate, then args) coincides with byte order of
/// the rendered form, which is what "init sorted lexicographically" relies
/// on.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundAtom {
    pub predicate: Ident,
    pub args: Vec<Ident>,
}

impl fmt::Display for GroundAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.predicate)?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        write!(f, ")")
    }
}

/// An action schema: typed parameters plus flat conjunctions of literals for
/// precondition and effect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionSchema {
    pub name: Ident,
    pub params: Vec<Param>,
    pub precondition: Vec<Literal>,
    pub effect: Vec<Literal>,
}

/// A PDDL domain: the reusable action theory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PddlDomain {
    pub name: Ident,
    pub requirements: RequirementSet,
    pub types: TypeHierarchy,
    pub predicates: Vec<Predicate>,
    pub actions: Vec<ActionSchema>,
}

impl PddlDomain {
    /// An empty domain with the minimal requirement set.
    pub fn empty(name: Ident) -> Self {
        PddlDomain {
            name,
            requirements: RequirementSet::strips(),
            types: TypeHierarchy::new(),
            predicates: Vec::new(),
            actions: Vec::new(),
        }
    }

    pub fn predicate(&self, name: &Ident) -> Option<&Predicate> {
        self.predicates.iter().find(|p| &p.name == name)
    }

    pub fn action(&self, name: &Ident) -> Option<&ActionSchema> {
        self.actions.iter().find(|a| &a.name == name)
    }
}

/// A PDDL problem: objects, initial state, and goal for one task instance.
///
/// `objects` maps each constant to its type; `init` is a set of ground
/// positive atoms (duplicates cannot be represented). The goal keeps
/// declaration order, as it is a conjunction written by the modeler.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PddlProblem {
    pub name: Ident,
    pub domain_name: Ident,
    pub objects: BTreeMap<Ident, Ident>,
    pub init: BTreeSet<GroundAtom>,
    pub goal: Vec<Literal>,
}

impl PddlProblem {
    pub fn new(name: Ident, domain_name: Ident) -> Self {
        PddlProblem {
            name,
            domain_name,
            objects: BTreeMap::new(),
            init: BTreeSet::new(),
            goal: Vec::new(),
        }
    }

    /// Objects whose type is a (reflexive-transitive) subtype of `ty`,
    /// in sorted order.
    pub fn objects_of_type<'a>(&'a self, ty: &'a Ident, types: &'a TypeHierarchy) -> Vec<&'a Ident> {
        self.objects
            .iter()
            .filter(|(_, t)| types.is_subtype(t, ty))
            .map(|(o, _)| o)
            .collect()
    }
}
