//! An independent PDDL grammar checker used to accept golden files.
//!
//! Written directly against the PDDL BNF for the STRIPS/typing subset with
//! its own tokenizer and recursive-descent walk — no code shared with the
//! production parser. It checks syntactic shape only (no symbol
//! resolution), which is exactly the "valid PDDL grammar" bar golden files
//! must clear before being frozen.

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Word(String),
}

fn lex(text: &str) -> Result<Vec<Tok>, String> {
    let mut toks = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ';' => {
                for c in chars.by_ref() {
                    if c == '\n' {
                        break;
                    }
                }
            }
            '(' => {
                chars.next();
                toks.push(Tok::Open);
            }
            ')' => {
                chars.next();
                toks.push(Tok::Close);
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            c if c.is_ascii_alphanumeric() || "-_:?".contains(c) => {
                let mut w = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || "-_:?".contains(c) {
                        w.push(c.to_ascii_lowercase());
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Word(w));
            }
            c => return Err(format!("illegal character '{c}'")),
        }
    }
    Ok(toks)
}

struct Walk {
    toks: Vec<Tok>,
    at: usize,
}

impl Walk {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at)
    }

    fn next(&mut self) -> Result<Tok, String> {
        let t = self
            .toks
            .get(self.at)
            .cloned()
            .ok_or("unexpected end of input")?;
        self.at += 1;
        Ok(t)
    }

    fn open(&mut self) -> Result<(), String> {
        match self.next()? {
            Tok::Open => Ok(()),
            t => Err(format!("expected '(', found {t:?}")),
        }
    }

    fn close(&mut self) -> Result<(), String> {
        match self.next()? {
            Tok::Close => Ok(()),
            t => Err(format!("expected ')', found {t:?}")),
        }
    }

    fn word(&mut self) -> Result<String, String> {
        match self.next()? {
            Tok::Word(w) => Ok(w),
            t => Err(format!("expected a word, found {t:?}")),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), String> {
        let w = self.word()?;
        if w == kw {
            Ok(())
        } else {
            Err(format!("expected '{kw}', found '{w}'"))
        }
    }

    fn at_word(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Word(w)) if w == kw)
    }
}

fn is_name(w: &str) -> bool {
    let mut cs = w.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_lowercase())
        && cs.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '-' || c == '_')
}

fn is_variable(w: &str) -> bool {
    w.strip_prefix('?').is_some_and(is_name)
}

fn name(w: &mut Walk) -> Result<String, String> {
    let word = w.word()?;
    if is_name(&word) {
        Ok(word)
    } else {
        Err(format!("'{word}' is not a <name>"))
    }
}

/// `<typed list (x)> ::= x* | x+ - <type> <typed list (x)>`
fn typed_list(w: &mut Walk, is_item: fn(&str) -> bool, what: &str) -> Result<(), String> {
    let mut pending = 0usize;
    loop {
        match w.peek() {
            Some(Tok::Close) | None => return Ok(()),
            Some(Tok::Word(word)) if word == "-" => {
                w.next()?;
                if pending == 0 {
                    return Err(format!("'-' without preceding {what}"));
                }
                let ty = w.word()?;
                if !is_name(&ty) {
                    return Err(format!("'{ty}' is not a <type>"));
                }
                pending = 0;
            }
            Some(Tok::Word(word)) => {
                if !is_item(word) {
                    return Err(format!("'{word}' is not a {what}"));
                }
                pending += 1;
                w.next()?;
            }
            Some(Tok::Open) => return Err(format!("unexpected '(' in {what} list")),
        }
    }
}

/// `<atomic formula> ::= ( <predicate> <term>* )`
fn atomic_formula(w: &mut Walk, term_ok: fn(&str) -> bool) -> Result<(), String> {
    w.open()?;
    let head = name(w)?;
    if head == "not" || head == "and" {
        return Err(format!("'{head}' where a predicate name is required"));
    }
    loop {
        match w.peek() {
            Some(Tok::Close) => {
                w.close()?;
                return Ok(());
            }
            Some(Tok::Word(word)) => {
                if !term_ok(word) {
                    return Err(format!("'{word}' is not a valid term here"));
                }
                w.next()?;
            }
            other => return Err(format!("unexpected {other:?} in atomic formula")),
        }
    }
}

fn schema_term(w: &str) -> bool {
    is_name(w) || is_variable(w)
}

fn ground_term(w: &str) -> bool {
    is_name(w)
}

/// `<literal> ::= <atomic formula> | (not <atomic formula>)`
fn literal(w: &mut Walk, term_ok: fn(&str) -> bool) -> Result<(), String> {
    w.open()?;
    if w.at_word("not") {
        w.next()?;
        atomic_formula(w, term_ok)?;
        return w.close();
    }
    // rewind the '(' and read as atomic formula
    w.at -= 1;
    atomic_formula(w, term_ok)
}

/// `(and <literal>*) | <literal> | ()`
fn condition(w: &mut Walk, term_ok: fn(&str) -> bool) -> Result<(), String> {
    w.open()?;
    match w.peek() {
        Some(Tok::Close) => w.close(),
        Some(Tok::Word(word)) if word == "and" => {
            w.next()?;
            while !matches!(w.peek(), Some(Tok::Close)) {
                literal(w, term_ok)?;
            }
            w.close()
        }
        _ => {
            w.at -= 1;
            literal(w, term_ok)
        }
    }
}

/// Check a whole domain document against the grammar.
pub fn check_domain_text(text: &str) -> Result<(), String> {
    let mut w = Walk {
        toks: lex(text)?,
        at: 0,
    };
    w.open()?;
    w.keyword("define")?;
    w.open()?;
    w.keyword("domain")?;
    name(&mut w)?;
    w.close()?;

    while matches!(w.peek(), Some(Tok::Open)) {
        w.open()?;
        let section = w.word()?;
        match section.as_str() {
            ":requirements" => loop {
                match w.peek() {
                    Some(Tok::Close) => break,
                    Some(Tok::Word(word))
                        if [":strips", ":typing", ":negative-preconditions"]
                            .contains(&word.as_str()) =>
                    {
                        w.next()?;
                    }
                    other => return Err(format!("bad requirement {other:?}")),
                }
            },
            ":types" => typed_list(&mut w, is_name, "<name>")?,
            ":predicates" => {
                while matches!(w.peek(), Some(Tok::Open)) {
                    w.open()?;
                    name(&mut w)?;
                    typed_list(&mut w, is_variable, "<variable>")?;
                    w.close()?;
                }
            }
            ":action" => {
                name(&mut w)?;
                w.keyword(":parameters")?;
                w.open()?;
                typed_list(&mut w, is_variable, "<variable>")?;
                w.close()?;
                if w.at_word(":precondition") {
                    w.next()?;
                    condition(&mut w, schema_term)?;
                }
                if w.at_word(":effect") {
                    w.next()?;
                    condition(&mut w, schema_term)?;
                }
            }
            other => return Err(format!("unknown domain section '{other}'")),
        }
        w.close()?;
    }
    w.close()?;
    if w.peek().is_some() {
        return Err("content after the closing ')'".to_string());
    }
    Ok(())
}

/// Check a whole problem document against the grammar.
pub fn check_problem_text(text: &str) -> Result<(), String> {
    let mut w = Walk {
        toks: lex(text)?,
        at: 0,
    };
    w.open()?;
    w.keyword("define")?;
    w.open()?;
    w.keyword("problem")?;
    name(&mut w)?;
    w.close()?;

    while matches!(w.peek(), Some(Tok::Open)) {
        w.open()?;
        let section = w.word()?;
        match section.as_str() {
            ":domain" => {
                name(&mut w)?;
            }
            ":objects" => typed_list(&mut w, is_name, "<name>")?,
            ":init" => {
                while matches!(w.peek(), Some(Tok::Open)) {
                    atomic_formula(&mut w, ground_term)?;
                }
            }
            ":goal" => condition(&mut w, ground_term)?,
            other => return Err(format!("unknown problem section '{other}'")),
        }
        w.close()?;
    }
    w.close()?;
    if w.peek().is_some() {
        return Err("content after the closing ')'".to_string());
    }
    Ok(())
}
