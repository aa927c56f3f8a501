//! Minimal s-expression reader with source locations. `;` starts a comment
//! that runs to the end of the line.

use crate::error::{Error, Location, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SExpr {
    Atom { text: String, loc: Location },
    List { items: Vec<SExpr>, loc: Location },
}

impl SExpr {
    pub fn loc(&self) -> Location {
        match self {
            SExpr::Atom { loc, .. } | SExpr::List { loc, .. } => *loc,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            SExpr::Atom { text, .. } => Some(text),
            SExpr::List { .. } => None,
        }
    }

    pub fn as_list(&self) -> Option<&[SExpr]> {
        match self {
            SExpr::List { items, .. } => Some(items),
            SExpr::Atom { .. } => None,
        }
    }
}

pub fn error(loc: Location, message: impl Into<String>) -> Error {
    Error::Parse {
        location: loc,
        message: message.into(),
    }
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl Reader<'_> {
    fn loc(&self) -> Location {
        Location {
            line: self.line,
            column: self.column,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == ';' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn expr(&mut self) -> Result<SExpr> {
        self.skip_trivia();
        let loc = self.loc();
        match self.chars.peek() {
            None => Err(error(loc, "unexpected end of input")),
            Some(')') => Err(error(loc, "unbalanced `)`")),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.chars.peek() {
                        None => return Err(error(loc, "unclosed `(`")),
                        Some(')') => {
                            self.bump();
                            return Ok(SExpr::List { items, loc });
                        }
                        Some(_) => items.push(self.expr()?),
                    }
                }
            }
            Some(_) => {
                let mut text = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    text.push(c);
                    self.bump();
                }
                Ok(SExpr::Atom { text, loc })
            }
        }
    }
}

/// Reads every top-level expression of `text`.
pub fn parse_sexprs(text: &str) -> Result<Vec<SExpr>> {
    let mut r = Reader {
        chars: text.chars().peekable(),
        line: 1,
        column: 1,
    };
    let mut out = Vec::new();
    loop {
        r.skip_trivia();
        if r.chars.peek().is_none() {
            return Ok(out);
        }
        out.push(r.expr()?);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_nested_lists_with_locations() {
        let es = parse_sexprs("; comment\n(a (b c)\n  d)").unwrap();
        assert_eq!(es.len(), 1);
        let items = es[0].as_list().unwrap();
        assert_eq!(items[0].as_atom(), Some("a"));
        assert_eq!(items[2].loc(), Location { line: 3, column: 3 });
    }

    #[test]
    fn reports_unclosed_list() {
        let err = parse_sexprs("\n  (a b").unwrap_err();
        match err {
            Error::Parse { location, .. } => assert_eq!(location, Location { line: 2, column: 3 }),
            other => panic!("unexpected {other:?}"),
        }
    }
}
