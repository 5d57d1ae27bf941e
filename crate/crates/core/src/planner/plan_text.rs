//! Plan file format: one `(<action-name> <arg> ...)` per line,
//! newline-terminated, `;` comments allowed.

use super::simulate::PlanStep;
use crate::diag::{Code, Diagnostic};
use crate::pddl::ast::Ident;
use crate::pddl::sexpr;

pub fn render_plan(steps: &[PlanStep]) -> String {
    let mut out = String::new();
    for s in steps {
        out.push_str(&s.to_string());
        out.push('\n');
    }
    out
}

pub fn parse_plan(text: &str) -> Result<Vec<PlanStep>, Vec<Diagnostic>> {
    let forms = sexpr::read_all(text).map_err(|d| vec![d])?;
    let mut steps = Vec::new();
    let mut errors = Vec::new();
    for form in &forms {
        let Some(items) = form.list() else {
            errors.push(Diagnostic::error(
                Code::SyntaxError,
                form.pos().loc(),
                "plan steps must be (action arg ...) lists",
            ));
            continue;
        };
        let mut names = Vec::with_capacity(items.len());
        for item in items {
            match item.atom().map(Ident::parse) {
                Some(Ok(name)) => names.push(name),
                _ => {
                    errors.push(Diagnostic::error(
                        Code::SyntaxError,
                        item.pos().loc(),
                        "plan steps contain only action and object names",
                    ));
                }
            }
        }
        if names.is_empty() {
            errors.push(Diagnostic::error(
                Code::SyntaxError,
                form.pos().loc(),
                "empty plan step",
            ));
            continue;
        }
        let action = names.remove(0);
        steps.push(PlanStep { action, args: names });
    }
    if errors.is_empty() {
        Ok(steps)
    } else {
        Err(errors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_plan_text() {
        let text = "; solution\n(equip robot1 ee-alpha)\n(screw robot1 ee-alpha r1 type-a)\n";
        let steps = parse_plan(text).unwrap();
        assert_eq!(steps.len(), 2);
        assert_eq!(
            render_plan(&steps),
            "(equip robot1 ee-alpha)\n(screw robot1 ee-alpha r1 type-a)\n"
        );
    }

    #[test]
    fn empty_text_is_the_empty_plan() {
        assert!(parse_plan("").unwrap().is_empty());
        assert_eq!(render_plan(&[]), "");
    }

    #[test]
    fn malformed_steps_are_rejected() {
        assert!(parse_plan("(move ?x)").is_err());
        assert!(parse_plan("move").is_err());
        assert!(parse_plan("()").is_err());
    }
}
