//! The `.rules` file: how product records become PDDL objects and literals.
//!
//! A rules document is TOML with an optional top-level `key` naming the
//! product key column (default `"id"`) and one `[[rule]]` record per rule,
//! each with the normative fields `column`, `kind`, and `template`:
//!
//! ```toml
//! key = "id"
//!
//! [[rule]]
//! column = "id"
//! kind = "object"
//! template = "rivet"
//!
//! [[rule]]
//! column = "id"
//! kind = "init"
//! template = "(rivet-has-type <id> <rivet-type>)"
//! ```
//!
//! `kind = "object"` emits one constant of the `template` type per record,
//! named by the record's `column` value. `init`/`goal` templates are literal
//! text in which `<column-name>` placeholders are replaced per record.

use serde::Deserialize;

use crate::diag::{Code, Diagnostic, Location};
use crate::pddl::ast::Ident;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TemplateArg {
    /// `<column>` placeholder, filled from the record.
    Column(String),
    /// A fixed constant.
    Constant(Ident),
}

/// A literal with column placeholders, e.g. `(rivet-has-type <id> <rivet-type>)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiteralTemplate {
    pub predicate: Ident,
    pub args: Vec<TemplateArg>,
    pub negated: bool,
}

impl LiteralTemplate {
    pub fn columns(&self) -> impl Iterator<Item = &str> {
        self.args.iter().filter_map(|a| match a {
            TemplateArg::Column(c) => Some(c.as_str()),
            TemplateArg::Constant(_) => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleTarget {
    ObjectOfType(Ident),
    InitLiteral(LiteralTemplate),
    GoalLiteral(LiteralTemplate),
}

/// One product-annotation rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotationRule {
    pub source_column: String,
    pub target: RuleTarget,
}

/// A parsed rules document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    pub key_column: String,
    pub rules: Vec<AnnotationRule>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRules {
    #[serde(default = "default_key")]
    key: String,
    #[serde(default, rename = "rule")]
    rules: Vec<RawRule>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRule {
    column: String,
    kind: String,
    template: String,
}

fn default_key() -> String {
    "id".to_string()
}

fn malformed(msg: impl Into<String>) -> Vec<Diagnostic> {
    vec![Diagnostic::error(
        Code::MalformedDocument,
        Location::None,
        msg,
    )]
}

fn offset_to_span(text: &str, offset: usize) -> Location {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() as u32 + 1;
    let col = before.rsplit('\n').next().map_or(0, str::len) as u32 + 1;
    Location::Span { line, col }
}

/// Parse a rules document.
pub fn parse_rules(text: &str) -> Result<RuleSet, Vec<Diagnostic>> {
    let raw: RawRules = toml::from_str(text).map_err(|e| {
        let location = e
            .span()
            .map(|s| offset_to_span(text, s.start))
            .unwrap_or(Location::None);
        vec![Diagnostic::error(
            Code::MalformedDocument,
            location,
            format!("not a valid rules document: {}", e.message()),
        )]
    })?;

    let mut rules = Vec::new();
    for (i, r) in raw.rules.iter().enumerate() {
        let target = match r.kind.as_str() {
            "object" => {
                let ty = Ident::parse(&r.template).map_err(|e| {
                    malformed(format!("rule {}: object template '{}': {e}", i + 1, r.template))
                })?;
                RuleTarget::ObjectOfType(ty)
            }
            "init" => {
                let t = parse_template(&r.template)
                    .map_err(|e| malformed(format!("rule {}: {e}", i + 1)))?;
                if t.negated {
                    return Err(malformed(format!(
                        "rule {}: init templates must be positive",
                        i + 1
                    )));
                }
                RuleTarget::InitLiteral(t)
            }
            "goal" => {
                let t = parse_template(&r.template)
                    .map_err(|e| malformed(format!("rule {}: {e}", i + 1)))?;
                RuleTarget::GoalLiteral(t)
            }
            other => {
                return Err(malformed(format!(
                    "rule {}: kind '{other}' is not one of object/init/goal",
                    i + 1
                )))
            }
        };
        rules.push(AnnotationRule {
            source_column: r.column.clone(),
            target,
        });
    }

    Ok(RuleSet {
        key_column: raw.key,
        rules,
    })
}

/// Parse `(pred arg ...)` or `(not (pred arg ...))` where each arg is a
/// `<column>` placeholder or a constant.
fn parse_template(text: &str) -> Result<LiteralTemplate, String> {
    let tokens = tokenize_template(text)?;
    parse_template_tokens(&tokens).map_err(|e| format!("template '{text}': {e}"))
}

fn tokenize_template(text: &str) -> Result<Vec<String>, String> {
    let mut tokens = Vec::new();
    let mut cur = String::new();
    for c in text.chars() {
        match c {
            '(' | ')' => {
                if !cur.is_empty() {
                    tokens.push(std::mem::take(&mut cur));
                }
                tokens.push(c.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    tokens.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c.to_ascii_lowercase()),
        }
    }
    if !cur.is_empty() {
        tokens.push(cur);
    }
    Ok(tokens)
}

fn parse_template_tokens(tokens: &[String]) -> Result<LiteralTemplate, String> {
    if tokens.first().map(String::as_str) != Some("(")
        || tokens.last().map(String::as_str) != Some(")")
    {
        return Err("must be a parenthesized literal".to_string());
    }
    let inner = &tokens[1..tokens.len() - 1];
    if inner.first().map(String::as_str) == Some("not") {
        let mut t = parse_template_tokens(&inner[1..])?;
        if t.negated {
            return Err("double negation is not supported".to_string());
        }
        t.negated = true;
        return Ok(t);
    }
    let Some(head) = inner.first() else {
        return Err("empty literal".to_string());
    };
    if head == "(" {
        return Err("literal must start with a predicate name".to_string());
    }
    let predicate = Ident::parse(head).map_err(|e| format!("predicate '{head}': {e}"))?;
    let mut args = Vec::new();
    for tok in &inner[1..] {
        if tok == "(" || tok == ")" {
            return Err("nested lists are not allowed in templates".to_string());
        }
        if let Some(col) = tok.strip_prefix('<').and_then(|t| t.strip_suffix('>')) {
            if col.is_empty() {
                return Err("empty <> placeholder".to_string());
            }
            args.push(TemplateArg::Column(col.to_string()));
        } else {
            let c = Ident::parse(tok).map_err(|e| format!("constant '{tok}': {e}"))?;
            args.push(TemplateArg::Constant(c));
        }
    }
    Ok(LiteralTemplate {
        predicate,
        args,
        negated: false,
    })
}
