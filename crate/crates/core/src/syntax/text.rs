//! Functional surface syntax for terms, programs and clauses.
//!
//! ```text
//! term     ::= ident | ident "(" term ("," term)* ")" | "?" N ":" sort
//! program  ::= "ite" "(" term "=" term "," program "," program ")" | term
//! literal  ::= term "=" term | term "!=" term
//! clause   ::= "[]" | literal ("|" literal)*
//! answer   ::= "<" clause "," program ">"
//! ```
//!
//! Identifiers that are not symbols denote variables. `?N:sort` names the
//! variable with id `N` directly, which is how machine-generated variables
//! are printed.

use std::collections::BTreeMap;

use crate::clause::{AnswerClause, Clause, Literal};
use crate::error::{Error, Location, Result};
use crate::term::{ProgramTerm, Signature, SortId, Substitution, Term, Var};

/// Renders expressions; variables with a known name print by name.
#[derive(Clone, Copy)]
pub struct Printer<'a> {
    sig: &'a Signature,
    names: Option<&'a BTreeMap<Var, String>>,
}

impl<'a> Printer<'a> {
    pub fn new(sig: &'a Signature) -> Self {
        Printer { sig, names: None }
    }

    pub fn with_names(sig: &'a Signature, names: &'a BTreeMap<Var, String>) -> Self {
        Printer {
            sig,
            names: Some(names),
        }
    }

    pub fn var(&self, v: Var) -> String {
        match self.names.and_then(|n| n.get(&v)) {
            Some(name) => name.clone(),
            None => format!("?{}:{}", v.id, self.sig.sort_name(v.sort)),
        }
    }

    pub fn term(&self, t: &Term) -> String {
        let mut out = String::new();
        self.write_term(t, &mut out);
        out
    }

    fn write_term(&self, t: &Term, out: &mut String) {
        match t {
            Term::Var(v) => out.push_str(&self.var(*v)),
            Term::App(f, args) => {
                out.push_str(self.sig.name(*f));
                if !args.is_empty() {
                    out.push('(');
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            out.push_str(", ");
                        }
                        self.write_term(a, out);
                    }
                    out.push(')');
                }
            }
        }
    }

    pub fn program(&self, p: &ProgramTerm) -> String {
        match p {
            ProgramTerm::Leaf(t) => self.term(t),
            ProgramTerm::Ite {
                lhs,
                rhs,
                then_branch,
                else_branch,
            } => format!(
                "ite({} = {}, {}, {})",
                self.term(lhs),
                self.term(rhs),
                self.program(then_branch),
                self.program(else_branch)
            ),
        }
    }

    pub fn literal(&self, l: &Literal) -> String {
        let op = if l.positive { "=" } else { "!=" };
        format!("{} {op} {}", self.term(&l.lhs), self.term(&l.rhs))
    }

    pub fn clause(&self, c: &Clause) -> String {
        if c.is_empty() {
            return "[]".to_string();
        }
        c.literals
            .iter()
            .map(|l| self.literal(l))
            .collect::<Vec<_>>()
            .join(" | ")
    }

    pub fn answer_clause(&self, ac: &AnswerClause) -> String {
        format!(
            "<{}, {}>",
            self.clause(&ac.clause),
            self.program(&ac.answer)
        )
    }

    pub fn substitution(&self, sigma: &Substitution) -> String {
        let parts: Vec<String> = sigma
            .iter()
            .map(|(v, t)| format!("{} -> {}", self.var(*v), self.term(t)))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Var(u32, String),
    Punct(&'static str),
}

fn lex(text: &str) -> Result<Vec<(Tok, Location)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let is_ident = |c: char| c.is_alphanumeric() || c == '_' || c == '\'' || c == '.';
    while i < chars.len() {
        let c = chars[i];
        let loc = Location { line, column: col };
        let start = i;
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let tok = if c == '!' && chars.get(i + 1) == Some(&'=') {
            i += 2;
            Tok::Punct("!=")
        } else if c == '[' && chars.get(i + 1) == Some(&']') {
            i += 2;
            Tok::Punct("[]")
        } else if let Some(p) = ["(", ")", ",", "=", "|", "<", ">"]
            .into_iter()
            .find(|p| p.starts_with(c))
        {
            i += 1;
            Tok::Punct(p)
        } else if c == '?' {
            i += 1;
            let digits: String = chars[i..].iter().take_while(|c| c.is_ascii_digit()).collect();
            i += digits.len();
            if digits.is_empty() || chars.get(i) != Some(&':') {
                return Err(Error::Parse {
                    location: loc,
                    message: "expected a variable `?N:sort`".into(),
                });
            }
            i += 1;
            let sort: String = chars[i..].iter().take_while(|c| is_ident(**c)).collect();
            i += sort.len();
            Tok::Var(digits.parse().expect("digits"), sort)
        } else if is_ident(c) {
            let name: String = chars[i..].iter().take_while(|c| is_ident(**c)).collect();
            i += name.len();
            Tok::Ident(name)
        } else {
            return Err(Error::Parse {
                location: loc,
                message: format!("unexpected character `{c}`"),
            });
        };
        col += i - start;
        out.push((tok, loc));
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Raw {
    Name(String, Vec<Raw>, bool, Location),
    Var(Var, Location),
}

#[derive(Debug, Clone)]
enum RawProgram {
    Leaf(Raw),
    Ite(Raw, Raw, Box<RawProgram>, Box<RawProgram>),
}

/// Reads the functional syntax against a signature. Unknown identifiers
/// become variables, numbered from `next_id` and remembered by name.
pub struct TextParser<'a> {
    sig: &'a Signature,
    vars: BTreeMap<String, Var>,
    next_id: u32,
    default_sort: Option<SortId>,
    toks: Vec<(Tok, Location)>,
    pos: usize,
}

impl<'a> TextParser<'a> {
    pub fn new(sig: &'a Signature) -> Self {
        TextParser {
            sig,
            vars: BTreeMap::new(),
            next_id: 0,
            default_sort: (sig.num_sorts() == 2).then_some(SortId(1)),
            toks: Vec::new(),
            pos: 0,
        }
    }

    /// Sort for variables whose sort the context does not determine; by
    /// default the only non-`bool` sort, if there is just one.
    pub fn with_default_sort(mut self, sort: SortId) -> Self {
        self.default_sort = Some(sort);
        self
    }

    /// Pre-binds named variables, e.g. the inputs of a specification.
    pub fn with_vars(mut self, vars: impl IntoIterator<Item = (String, Var)>) -> Self {
        for (n, v) in vars {
            self.next_id = self.next_id.max(v.id + 1);
            self.vars.insert(n, v);
        }
        self
    }

    pub fn starting_at(mut self, next_id: u32) -> Self {
        self.next_id = self.next_id.max(next_id);
        self
    }

    pub fn vars(&self) -> &BTreeMap<String, Var> {
        &self.vars
    }

    pub fn term(&mut self, text: &str) -> Result<Term> {
        self.run(text, |p| {
            let raw = p.raw_term()?;
            let sort = p.infer(&raw);
            p.elaborate(&raw, sort)
        })
    }

    pub fn program(&mut self, text: &str) -> Result<ProgramTerm> {
        self.run(text, |p| {
            let raw = p.raw_program()?;
            let sort = p.infer_program(&raw);
            p.elaborate_program(&raw, sort)
        })
    }

    pub fn clause(&mut self, text: &str) -> Result<Clause> {
        self.run(text, Self::clause_here)
    }

    pub fn answer_clause(&mut self, text: &str) -> Result<AnswerClause> {
        self.run(text, |p| {
            p.expect("<")?;
            let clause = p.clause_here()?;
            p.expect(",")?;
            let raw = p.raw_program()?;
            let sort = p.infer_program(&raw);
            let answer = p.elaborate_program(&raw, sort)?;
            p.expect(">")?;
            Ok(AnswerClause::new(clause, answer))
        })
    }

    fn run<T>(&mut self, text: &str, f: impl FnOnce(&mut Self) -> Result<T>) -> Result<T> {
        self.toks = lex(text)?;
        self.pos = 0;
        let out = f(self)?;
        if let Some((t, loc)) = self.toks.get(self.pos) {
            return Err(Error::Parse {
                location: *loc,
                message: format!("unexpected trailing input {t:?}"),
            });
        }
        Ok(out)
    }

    fn loc(&self) -> Location {
        self.toks
            .get(self.pos)
            .or(self.toks.last())
            .map(|(_, l)| *l)
            .unwrap_or(Location { line: 1, column: 1 })
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            location: self.loc(),
            message: message.into(),
        })
    }

    fn peek_punct(&self, p: &str) -> bool {
        matches!(self.toks.get(self.pos), Some((Tok::Punct(q), _)) if *q == p)
    }

    fn expect(&mut self, p: &str) -> Result<()> {
        if self.peek_punct(p) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{p}`"))
        }
    }

    fn clause_here(&mut self) -> Result<Clause> {
        if self.peek_punct("[]") {
            self.pos += 1;
            return Ok(Clause::empty());
        }
        let mut lits = vec![self.literal_here()?];
        while self.peek_punct("|") {
            self.pos += 1;
            lits.push(self.literal_here()?);
        }
        Ok(Clause::new(lits))
    }

    fn literal_here(&mut self) -> Result<Literal> {
        let lhs = self.raw_term()?;
        let positive = if self.peek_punct("=") {
            true
        } else if self.peek_punct("!=") {
            false
        } else {
            return self.err("expected `=` or `!=`");
        };
        self.pos += 1;
        let rhs = self.raw_term()?;
        let (l, r) = self.equation(&lhs, &rhs)?;
        Ok(Literal {
            lhs: l,
            rhs: r,
            positive,
        })
    }

    fn equation(&mut self, lhs: &Raw, rhs: &Raw) -> Result<(Term, Term)> {
        let sort = self.infer(lhs).or_else(|| self.infer(rhs));
        let l = self.elaborate(lhs, sort)?;
        let r = self.elaborate(rhs, Some(l.sort(self.sig)))?;
        Ok((l, r))
    }

    fn raw_term(&mut self) -> Result<Raw> {
        let loc = self.loc();
        match self.toks.get(self.pos).cloned() {
            Some((Tok::Var(id, sort), _)) => {
                self.pos += 1;
                let Some(s) = self.sig.sort_id(&sort) else {
                    return Err(Error::Parse {
                        location: loc,
                        message: format!("undeclared sort `{sort}`"),
                    });
                };
                Ok(Raw::Var(Var::new(id, s), loc))
            }
            Some((Tok::Ident(name), _)) => {
                self.pos += 1;
                let mut args = Vec::new();
                let mut applied = false;
                if self.peek_punct("(") {
                    applied = true;
                    self.pos += 1;
                    args.push(self.raw_term()?);
                    while self.peek_punct(",") {
                        self.pos += 1;
                        args.push(self.raw_term()?);
                    }
                    self.expect(")")?;
                }
                Ok(Raw::Name(name, args, applied, loc))
            }
            _ => self.err("expected a term"),
        }
    }

    fn raw_program(&mut self) -> Result<RawProgram> {
        let is_ite = matches!(self.toks.get(self.pos), Some((Tok::Ident(n), _)) if n == "ite")
            && self.sig.symbol_id("ite").is_none();
        if !is_ite {
            return Ok(RawProgram::Leaf(self.raw_term()?));
        }
        self.pos += 1;
        self.expect("(")?;
        let l = self.raw_term()?;
        self.expect("=")?;
        let r = self.raw_term()?;
        self.expect(",")?;
        let then_branch = self.raw_program()?;
        self.expect(",")?;
        let else_branch = self.raw_program()?;
        self.expect(")")?;
        Ok(RawProgram::Ite(
            l,
            r,
            Box::new(then_branch),
            Box::new(else_branch),
        ))
    }

    fn infer(&self, raw: &Raw) -> Option<SortId> {
        match raw {
            Raw::Var(v, _) => Some(v.sort),
            Raw::Name(n, _, _, _) => self
                .vars
                .get(n)
                .map(|v| v.sort)
                .or_else(|| self.sig.symbol_id(n).map(|f| self.sig.symbol(f).result)),
        }
    }

    fn infer_program(&self, raw: &RawProgram) -> Option<SortId> {
        match raw {
            RawProgram::Leaf(t) => self.infer(t),
            RawProgram::Ite(_, _, a, b) => self.infer_program(a).or_else(|| self.infer_program(b)),
        }
    }

    fn elaborate(&mut self, raw: &Raw, expected: Option<SortId>) -> Result<Term> {
        let check = |this: &Self, got: SortId, loc: Location| match expected {
            Some(e) if e != got => Err(Error::Parse {
                location: loc,
                message: format!(
                    "expected sort `{}`, found `{}`",
                    this.sig.sort_name(e),
                    this.sig.sort_name(got)
                ),
            }),
            _ => Ok(()),
        };
        match raw {
            Raw::Var(v, loc) => {
                check(self, v.sort, *loc)?;
                self.next_id = self.next_id.max(v.id + 1);
                Ok(Term::var(*v))
            }
            Raw::Name(name, args, applied, loc) => {
                if let Some(f) = self.sig.symbol_id(name) {
                    let decl = self.sig.symbol(f).clone();
                    if decl.args.len() != args.len() {
                        return Err(Error::Parse {
                            location: *loc,
                            message: format!(
                                "`{name}` expects {} arguments, got {}",
                                decl.args.len(),
                                args.len()
                            ),
                        });
                    }
                    check(self, decl.result, *loc)?;
                    let args = args
                        .iter()
                        .zip(&decl.args)
                        .map(|(a, s)| self.elaborate(a, Some(*s)))
                        .collect::<Result<Vec<_>>>()?;
                    return Ok(Term::app(f, args));
                }
                if *applied {
                    return Err(Error::Parse {
                        location: *loc,
                        message: format!("undeclared symbol `{name}`"),
                    });
                }
                if let Some(v) = self.vars.get(name).copied() {
                    check(self, v.sort, *loc)?;
                    return Ok(Term::var(v));
                }
                let Some(sort) = expected.or(self.default_sort) else {
                    return Err(Error::Parse {
                        location: *loc,
                        message: format!("cannot infer the sort of variable `{name}`"),
                    });
                };
                let v = Var::new(self.next_id, sort);
                self.next_id += 1;
                self.vars.insert(name.clone(), v);
                Ok(Term::var(v))
            }
        }
    }

    fn elaborate_program(
        &mut self,
        raw: &RawProgram,
        expected: Option<SortId>,
    ) -> Result<ProgramTerm> {
        match raw {
            RawProgram::Leaf(t) => Ok(ProgramTerm::leaf(self.elaborate(t, expected)?)),
            RawProgram::Ite(l, r, a, b) => {
                let (l, r) = self.equation(l, r)?;
                let a = self.elaborate_program(a, expected)?;
                let sort = expected.or_else(|| a.check(self.sig).ok());
                let b = self.elaborate_program(b, sort)?;
                Ok(ProgramTerm::ite(l, r, a, b))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::SymbolDecl;

    fn sig() -> Signature {
        let mut sig = Signature::new();
        let s = sig.add_sort("s").unwrap();
        for (n, args, c) in [("a", 0, true), ("b", 0, true), ("f", 1, false), ("g", 2, true)] {
            sig.add_symbol(SymbolDecl {
                name: n.into(),
                args: vec![s; args],
                result: s,
                computable: c,
            })
            .unwrap();
        }
        sig
    }

    #[test]
    fn program_round_trips() {
        let sig = sig();
        let mut p = TextParser::new(&sig);
        let prog = p.program("ite(x = a, g(x, b), f(a))").unwrap();
        let printed = Printer::with_names(&sig, &p.vars().iter().map(|(n, v)| (*v, n.clone())).collect())
            .program(&prog);
        assert_eq!(printed, "ite(x = a, g(x, b), f(a))");
    }

    #[test]
    fn answer_clause_shares_variables() {
        let sig = sig();
        let mut p = TextParser::new(&sig);
        let ac = p.answer_clause("<f(y) != a | y = b, y>").unwrap();
        assert_eq!(ac.clause.len(), 2);
        assert_eq!(
            ac.answer.as_simple().unwrap(),
            &ac.clause.literals[1].lhs
        );
        let printed = Printer::new(&sig).answer_clause(&ac);
        assert_eq!(printed, "<f(?0:s) != a | ?0:s = b, ?0:s>");
        let again = TextParser::new(&sig).answer_clause(&printed).unwrap();
        assert_eq!(again, ac);
    }

    #[test]
    fn empty_clause_and_errors() {
        let sig = sig();
        assert!(TextParser::new(&sig).clause("[]").unwrap().is_empty());
        assert!(matches!(
            TextParser::new(&sig).term("h(a)"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            TextParser::new(&sig).term("g(a)"),
            Err(Error::Parse { .. })
        ));
    }
}
