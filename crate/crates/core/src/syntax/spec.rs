//! Specification files.
//!
//! ```text
//! (sorts day venue)
//! (computable (fri day) (sat day) (paar venue) (vamp venue))
//! (uncomputable (ws venue bool))
//! (inputs (x day))
//! (output (y venue))
//! (formula (=> (and (or (= x fri) (= x sat))
//!                   (=> (= x fri) (ws vamp))
//!                   (=> (= x sat) (ws paar)))
//!              (ws y)))
//! ```
//!
//! A symbol declaration is `(name arg-sorts... result-sort)`. The sort `bool`
//! and its constants `true` and `false` are built in. Formulas use `=`, `!=`,
//! `not`, `and`, `or`, `=>`, `<=>`, `forall` and `exists` with binder lists
//! `((name sort) ...)`; any other head is a predicate, i.e. a symbol into
//! `bool`. Predicate atoms are encoded as equations with `true` on parsing.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Location, Result};
use crate::formula::{Formula, Specification};
use crate::syntax::sexpr::{error, parse_sexprs, SExpr};
use crate::term::{Signature, SortId, SymbolDecl, Term, Var};

const SECTIONS: [&str; 6] = [
    "sorts",
    "computable",
    "uncomputable",
    "inputs",
    "output",
    "formula",
];

struct Elaborator<'a> {
    sig: &'a Signature,
    scope: Vec<(String, Var)>,
    names: BTreeMap<Var, String>,
    next_id: u32,
}

impl Elaborator<'_> {
    fn lookup(&self, name: &str) -> Option<Var> {
        self.scope
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }

    fn bind(&mut self, name: &str, sort: SortId, loc: Location) -> Result<Var> {
        if self.sig.symbol_id(name).is_some() {
            return Err(error(loc, format!("variable `{name}` shadows a symbol")));
        }
        let v = Var::new(self.next_id, sort);
        self.next_id += 1;
        self.scope.push((name.to_string(), v));
        self.names.insert(v, name.to_string());
        Ok(v)
    }

    fn sort(&self, e: &SExpr) -> Result<SortId> {
        let name = e
            .as_atom()
            .ok_or_else(|| error(e.loc(), "expected a sort name"))?;
        self.sig
            .sort_id(name)
            .ok_or_else(|| error(e.loc(), format!("undeclared sort `{name}`")))
    }

    fn binders(&mut self, e: &SExpr) -> Result<Vec<Var>> {
        let list = e
            .as_list()
            .ok_or_else(|| error(e.loc(), "expected a binder list `((name sort) ...)`"))?;
        let mut out = Vec::new();
        for b in list {
            match b.as_list() {
                Some([name, sort]) if name.as_atom().is_some() => {
                    let sort = self.sort(sort)?;
                    out.push(self.bind(name.as_atom().unwrap(), sort, name.loc())?);
                }
                _ => return Err(error(b.loc(), "expected a binder `(name sort)`")),
            }
        }
        Ok(out)
    }

    fn term(&self, e: &SExpr) -> Result<Term> {
        let (head, args, loc) = match e {
            SExpr::Atom { text, loc } => {
                if let Some(v) = self.lookup(text) {
                    return Ok(Term::var(v));
                }
                (text.as_str(), &[][..], *loc)
            }
            SExpr::List { items, loc } => match items.split_first() {
                Some((h, rest)) => (
                    h.as_atom()
                        .ok_or_else(|| error(h.loc(), "expected a symbol name"))?,
                    rest,
                    *loc,
                ),
                None => return Err(error(*loc, "empty application")),
            },
        };
        let f = self
            .sig
            .symbol_id(head)
            .ok_or_else(|| error(loc, format!("undeclared symbol `{head}`")))?;
        let decl = self.sig.symbol(f);
        if decl.args.len() != args.len() {
            return Err(error(
                loc,
                format!(
                    "`{head}` expects {} arguments, got {}",
                    decl.args.len(),
                    args.len()
                ),
            ));
        }
        let mut out = Vec::with_capacity(args.len());
        for (a, expected) in args.iter().zip(&decl.args) {
            let t = self.term(a)?;
            let got = t.sort(self.sig);
            if got != *expected {
                return Err(error(
                    a.loc(),
                    format!(
                        "argument of `{head}` has sort `{}`, expected `{}`",
                        self.sig.sort_name(got),
                        self.sig.sort_name(*expected)
                    ),
                ));
            }
            out.push(t);
        }
        Ok(Term::app(f, out))
    }

    fn equation(&self, items: &[SExpr], loc: Location) -> Result<(Term, Term)> {
        match items {
            [_, a, b] => {
                let a = self.term(a)?;
                let b = self.term(b)?;
                if a.sort(self.sig) != b.sort(self.sig) {
                    return Err(error(loc, "equation sides differ in sort"));
                }
                Ok((a, b))
            }
            _ => Err(error(loc, "equation needs exactly two sides")),
        }
    }

    fn formula(&mut self, e: &SExpr) -> Result<Formula> {
        let (head, items, loc) = match e {
            SExpr::Atom { .. } => return self.atom(e),
            SExpr::List { items, loc } => match items.first().and_then(SExpr::as_atom) {
                Some(h) => (h, items.as_slice(), *loc),
                None => return Err(error(e.loc(), "expected a formula")),
            },
        };
        let sub = |this: &mut Self, i: usize| this.formula(&items[i]);
        let arity = |n: usize| -> Result<()> {
            if items.len() == n + 1 {
                Ok(())
            } else {
                Err(error(loc, format!("`{head}` takes {n} operands")))
            }
        };
        Ok(match head {
            "=" => {
                let (a, b) = self.equation(items, loc)?;
                Formula::Eq(a, b)
            }
            "!=" => {
                let (a, b) = self.equation(items, loc)?;
                Formula::negation(Formula::Eq(a, b))
            }
            "not" => {
                arity(1)?;
                Formula::negation(sub(self, 1)?)
            }
            "and" | "or" => {
                let gs = (1..items.len())
                    .map(|i| sub(self, i))
                    .collect::<Result<Vec<_>>>()?;
                if head == "and" {
                    Formula::And(gs)
                } else {
                    Formula::Or(gs)
                }
            }
            "=>" => {
                arity(2)?;
                Formula::implies(sub(self, 1)?, sub(self, 2)?)
            }
            "<=>" => {
                arity(2)?;
                Formula::Iff(Box::new(sub(self, 1)?), Box::new(sub(self, 2)?))
            }
            "forall" | "exists" => {
                arity(2)?;
                let mark = self.scope.len();
                let vs = self.binders(&items[1])?;
                let body = sub(self, 2)?;
                self.scope.truncate(mark);
                if head == "forall" {
                    Formula::Forall(vs, Box::new(body))
                } else {
                    Formula::Exists(vs, Box::new(body))
                }
            }
            _ => self.atom(e)?,
        })
    }

    fn atom(&self, e: &SExpr) -> Result<Formula> {
        let t = self.term(e)?;
        if t.sort(self.sig) != SortId::BOOL {
            return Err(error(e.loc(), "expected a formula, found a non-boolean term"));
        }
        Ok(Formula::Atom(t))
    }
}

fn declare_symbols(sig: &mut Signature, section: &SExpr, computable: bool) -> Result<()> {
    for d in &section.as_list().expect("section is a list")[1..] {
        let items = d
            .as_list()
            .filter(|l| l.len() >= 2 && l.iter().all(|i| i.as_atom().is_some()))
            .ok_or_else(|| error(d.loc(), "expected a declaration `(name arg-sorts... result)`"))?;
        let names: Vec<&str> = items.iter().map(|i| i.as_atom().unwrap()).collect();
        let mut sorts = Vec::new();
        for (i, n) in names[1..].iter().enumerate() {
            sorts.push(
                sig.sort_id(n)
                    .ok_or_else(|| error(items[i + 1].loc(), format!("undeclared sort `{n}`")))?,
            );
        }
        let result = sorts.pop().expect("at least one sort");
        sig.add_symbol(SymbolDecl {
            name: names[0].to_string(),
            args: sorts,
            result,
            computable,
        })
        .map_err(|e| error(d.loc(), e.to_string()))?;
    }
    Ok(())
}

fn single_var(section: &SExpr) -> Result<(&SExpr, &SExpr)> {
    match section.as_list().expect("section is a list") {
        [_, decl] => match decl.as_list() {
            Some([n, s]) if n.as_atom().is_some() => Ok((n, s)),
            _ => Err(error(decl.loc(), "expected `(name sort)`")),
        },
        _ => Err(error(section.loc(), "expected exactly one `(name sort)`")),
    }
}

/// Parses and validates a specification; predicate atoms come back encoded.
pub fn parse_spec(text: &str) -> Result<Specification> {
    let top = parse_sexprs(text)?;
    let mut sections: BTreeMap<&str, &SExpr> = BTreeMap::new();
    for e in &top {
        let head = e
            .as_list()
            .and_then(|l| l.first())
            .and_then(SExpr::as_atom)
            .ok_or_else(|| error(e.loc(), "expected a section `(name ...)`"))?;
        let key = SECTIONS
            .iter()
            .find(|s| **s == head)
            .ok_or_else(|| error(e.loc(), format!("unknown section `{head}`")))?;
        if sections.insert(key, e).is_some() {
            return Err(error(e.loc(), format!("duplicate section `{head}`")));
        }
    }
    let eof = Location {
        line: text.lines().count().max(1),
        column: 1,
    };
    let required = |name: &str| {
        sections
            .get(name)
            .copied()
            .ok_or_else(|| error(eof, format!("missing section `{name}`")))
    };

    let mut sig = Signature::new();
    if let Some(s) = sections.get("sorts") {
        for item in &s.as_list().unwrap()[1..] {
            let name = item
                .as_atom()
                .ok_or_else(|| error(item.loc(), "expected a sort name"))?;
            sig.add_sort(name).map_err(|e| error(item.loc(), e.to_string()))?;
        }
    }
    for (name, computable) in [("computable", true), ("uncomputable", false)] {
        if let Some(s) = sections.get(name) {
            declare_symbols(&mut sig, s, computable)?;
        }
    }

    let mut el = Elaborator {
        sig: &sig,
        scope: Vec::new(),
        names: BTreeMap::new(),
        next_id: 0,
    };
    let mut inputs = Vec::new();
    if let Some(s) = sections.get("inputs") {
        for decl in &s.as_list().unwrap()[1..] {
            match decl.as_list() {
                Some([n, srt]) if n.as_atom().is_some() => {
                    let sort = el.sort(srt)?;
                    inputs.push(el.bind(n.as_atom().unwrap(), sort, n.loc())?);
                }
                _ => return Err(error(decl.loc(), "expected an input `(name sort)`")),
            }
        }
    }
    let (out_name, out_sort) = single_var(required("output")?)?;
    let out_sort = el.sort(out_sort)?;
    let output = el.bind(out_name.as_atom().unwrap(), out_sort, out_name.loc())?;
    let formula_section = required("formula")?;
    let formula = match formula_section.as_list().unwrap() {
        [_, f] => el.formula(f)?,
        _ => return Err(error(formula_section.loc(), "expected exactly one formula")),
    };
    let names = el.names;
    let spec = Specification::new(sig, inputs, output, formula.encode_predicates(), names)
        .map_err(|e| error(formula_section.loc(), e.to_string()))?;
    Ok(spec)
}

fn var_name(spec: &Specification, v: Var) -> String {
    spec.var_names
        .get(&v)
        .cloned()
        .unwrap_or_else(|| format!("v{}", v.id))
}

fn sexpr_term(spec: &Specification, t: &Term, out: &mut String) {
    match t {
        Term::Var(v) => out.push_str(&var_name(spec, *v)),
        Term::App(f, args) if args.is_empty() => out.push_str(spec.signature.name(*f)),
        Term::App(f, args) => {
            out.push('(');
            out.push_str(spec.signature.name(*f));
            for a in args {
                out.push(' ');
                sexpr_term(spec, a, out);
            }
            out.push(')');
        }
    }
}

fn sexpr_formula(spec: &Specification, f: &Formula, out: &mut String) {
    let list = |out: &mut String, head: &str, gs: &[&Formula]| {
        out.push('(');
        out.push_str(head);
        for g in gs {
            out.push(' ');
            sexpr_formula(spec, g, out);
        }
        out.push(')');
    };
    match f {
        Formula::Atom(t) => sexpr_term(spec, t, out),
        Formula::Eq(a, b) => {
            out.push_str("(= ");
            sexpr_term(spec, a, out);
            out.push(' ');
            sexpr_term(spec, b, out);
            out.push(')');
        }
        Formula::Not(g) => list(out, "not", &[g]),
        Formula::And(gs) => list(out, "and", &gs.iter().collect::<Vec<_>>()),
        Formula::Or(gs) => list(out, "or", &gs.iter().collect::<Vec<_>>()),
        Formula::Implies(a, b) => list(out, "=>", &[a, b]),
        Formula::Iff(a, b) => list(out, "<=>", &[a, b]),
        Formula::Forall(vs, g) | Formula::Exists(vs, g) => {
            let head = if matches!(f, Formula::Forall(..)) {
                "forall"
            } else {
                "exists"
            };
            let _ = write!(out, "({head} (");
            for (i, v) in vs.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                let _ = write!(
                    out,
                    "({} {})",
                    var_name(spec, *v),
                    spec.signature.sort_name(v.sort)
                );
            }
            out.push_str(") ");
            sexpr_formula(spec, g, out);
            out.push(')');
        }
    }
}

/// Prints a specification in the file format accepted by [`parse_spec`].
pub fn print_spec(spec: &Specification) -> String {
    let sig = &spec.signature;
    let mut out = String::from("(sorts");
    for s in sig.sort_ids().skip(1) {
        let _ = write!(out, " {}", sig.sort_name(s));
    }
    out.push_str(")\n");
    for (head, computable) in [("computable", true), ("uncomputable", false)] {
        out.push('(');
        out.push_str(head);
        for f in sig.symbol_ids().skip(2) {
            let d = sig.symbol(f);
            if d.computable != computable {
                continue;
            }
            let _ = write!(out, "\n  ({}", d.name);
            for a in d.args.iter().chain(std::iter::once(&d.result)) {
                let _ = write!(out, " {}", sig.sort_name(*a));
            }
            out.push(')');
        }
        out.push_str(")\n");
    }
    out.push_str("(inputs");
    for v in &spec.inputs {
        let _ = write!(out, " ({} {})", var_name(spec, *v), sig.sort_name(v.sort));
    }
    out.push_str(")\n");
    let _ = writeln!(
        out,
        "(output ({} {}))",
        var_name(spec, spec.output),
        sig.sort_name(spec.output.sort)
    );
    out.push_str("(formula\n  ");
    sexpr_formula(spec, &spec.formula, &mut out);
    out.push_str(")\n");
    out
}
