//! Structured diagnostics shared by every pass of the toolkit.
//!
//! Every validation and transformation stage reports problems as
//! [`Diagnostic`] values instead of bailing with opaque errors. A diagnostic
//! carries a machine-readable [`Code`] from a closed set, a severity, a
//! source location (model element id, line/column, or file path) and, for
//! pipeline runs, the stage that produced it.

use std::fmt;

/// Diagnostic severity. Errors fail a stage; warnings do not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Severity::Warning => write!(f, "warning"),
            Severity::Error => write!(f, "error"),
        }
    }
}

/// The closed set of diagnostic codes emitted by the toolkit.
///
/// Codes render in kebab-case (`undeclared-predicate`, `type-cycle`, ...)
/// and are part of the stable CLI output contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Code {
    // PDDL text parsing
    LexicalError,
    UnbalancedParens,
    UnknownSection,
    UnsupportedRequirement,
    SyntaxError,
    DuplicateInitAtom,
    // PDDL domain validation
    UndeclaredPredicate,
    ArityMismatch,
    UnknownType,
    DuplicateName,
    UnboundVariable,
    ContradictoryEffect,
    TypeCycle,
    // PDDL problem validation
    DomainNameMismatch,
    UnknownObject,
    UnknownPredicate,
    TypeMismatch,
    NonGroundLiteral,
    // Model document loading
    MalformedDocument,
    DuplicateElementId,
    DanglingRelation,
    ContainmentCycle,
    UnknownRoot,
    // Product data loading
    RaggedRow,
    DuplicateKey,
    MissingKeyColumn,
    // Profile conformance and binding
    UnknownStereotype,
    MissingRequiredTag,
    StereotypeKindMismatch,
    DuplicatePddlName,
    InvalidIdentifier,
    UnknownParentType,
    UndeclaredPredicateInAction,
    UnboundActionVariable,
    // Product annotation
    TemplateColumnMissing,
    TypeMismatchInRule,
    // Generation pipeline
    EmptyGoal,
    ObjectNameCollision,
    IoError,
    // Planning
    GroundingExplosion,
    ResourceLimit,
}

impl Code {
    pub fn as_str(&self) -> &'static str {
        match self {
            Code::LexicalError => "lexical-error",
            Code::UnbalancedParens => "unbalanced-parens",
            Code::UnknownSection => "unknown-section",
            Code::UnsupportedRequirement => "unsupported-requirement",
            Code::SyntaxError => "syntax-error",
            Code::DuplicateInitAtom => "duplicate-init-atom",
            Code::UndeclaredPredicate => "undeclared-predicate",
            Code::ArityMismatch => "arity-mismatch",
            Code::UnknownType => "unknown-type",
            Code::DuplicateName => "duplicate-name",
            Code::UnboundVariable => "unbound-variable",
            Code::ContradictoryEffect => "contradictory-effect",
            Code::TypeCycle => "type-cycle",
            Code::DomainNameMismatch => "domain-name-mismatch",
            Code::UnknownObject => "unknown-object",
            Code::UnknownPredicate => "unknown-predicate",
            Code::TypeMismatch => "type-mismatch",
            Code::NonGroundLiteral => "non-ground-literal",
            Code::MalformedDocument => "malformed-document",
            Code::DuplicateElementId => "duplicate-element-id",
            Code::DanglingRelation => "dangling-relation",
            Code::ContainmentCycle => "containment-cycle",
            Code::UnknownRoot => "unknown-root",
            Code::RaggedRow => "ragged-row",
            Code::DuplicateKey => "duplicate-key",
            Code::MissingKeyColumn => "missing-key-column",
            Code::UnknownStereotype => "unknown-stereotype",
            Code::MissingRequiredTag => "missing-required-tag",
            Code::StereotypeKindMismatch => "stereotype-kind-mismatch",
            Code::DuplicatePddlName => "duplicate-pddl-name",
            Code::InvalidIdentifier => "invalid-identifier",
            Code::UnknownParentType => "unknown-parent-type",
            Code::UndeclaredPredicateInAction => "undeclared-predicate-in-action",
            Code::UnboundActionVariable => "unbound-action-variable",
            Code::TemplateColumnMissing => "template-column-missing",
            Code::TypeMismatchInRule => "type-mismatch-in-rule",
            Code::EmptyGoal => "empty-goal",
            Code::ObjectNameCollision => "object-name-collision",
            Code::IoError => "io-error",
            Code::GroundingExplosion => "grounding-explosion",
            Code::ResourceLimit => "resource-limit",
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Source locus of a diagnostic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    /// A model element, identified by its document id.
    Element(String),
    /// A line/column position in a text input.
    Span { line: u32, col: u32 },
    /// A file path.
    Path(String),
    /// A named construct inside a PDDL AST, e.g. `action:screw`.
    Item(String),
    /// No meaningful locus.
    None,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Element(id) => write!(f, "elem:{id}"),
            Location::Span { line, col } => write!(f, "{line}:{col}"),
            Location::Path(p) => write!(f, "{p}"),
            Location::Item(s) => write!(f, "{s}"),
            Location::None => write!(f, "-"),
        }
    }
}

/// Pipeline stage names used to tag diagnostics from `run_pipeline`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    LoadModel,
    SelectScope,
    CheckProfile,
    BindStatic,
    BindActions,
    LoadProduct,
    Annotate,
    GenerateDomain,
    GenerateProblem,
    Render,
}

impl Stage {
    pub fn as_str(&self) -> &'static str {
        match self {
            Stage::LoadModel => "load-model",
            Stage::SelectScope => "select-scope",
            Stage::CheckProfile => "check-profile",
            Stage::BindStatic => "bind-static",
            Stage::BindActions => "bind-actions",
            Stage::LoadProduct => "load-product",
            Stage::Annotate => "annotate",
            Stage::GenerateDomain => "generate-domain",
            Stage::GenerateProblem => "generate-problem",
            Stage::Render => "render",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A single structured finding with provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    pub message: String,
    pub location: Location,
    /// Set when the diagnostic was raised inside a pipeline run.
    pub stage: Option<Stage>,
}

impl Diagnostic {
    pub fn error(code: Code, location: Location, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            code,
            message: message.into(),
            location,
            stage: None,
        }
    }

    pub fn warning(code: Code, location: Location, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            code,
            message: message.into(),
            location,
            stage: None,
        }
    }

    pub fn with_stage(mut self, stage: Stage) -> Self {
        self.stage = Some(stage);
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    /// Stable machine-parseable line: `SEVERITY [STAGE] CODE LOCATION MESSAGE`
    /// (the bracketed stage appears only on pipeline diagnostics).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.stage {
            Some(stage) => write!(
                f,
                "{} [{}] {} {} {}",
                self.severity, stage, self.code, self.location, self.message
            ),
            None => write!(
                f,
                "{} {} {} {}",
                self.severity, self.code, self.location, self.message
            ),
        }
    }
}

/// True if any diagnostic in the slice has error severity.
pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(Diagnostic::is_error)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_machine_parseable() {
        let d = Diagnostic::error(
            Code::UndeclaredPredicate,
            Location::Item("action:screw".into()),
            "precondition references undeclared predicate 'fastened'",
        );
        assert_eq!(
            d.to_string(),
            "error undeclared-predicate action:screw \
             precondition references undeclared predicate 'fastened'"
        );
    }

    #[test]
    fn stage_tag_is_bracketed() {
        let d = Diagnostic::error(Code::TemplateColumnMissing, Location::None, "no such column")
            .with_stage(Stage::Annotate);
        assert_eq!(
            d.to_string(),
            "error [annotate] template-column-missing - no such column"
        );
    }
}
