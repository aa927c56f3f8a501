//! Equational literals, clauses, and answer clauses `⟨C, p⟩`.

use serde::{Deserialize, Serialize};

use crate::term::{Expr, ProgramTerm, Substitutable, Substitution, Term, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lhs,
    Rhs,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Lhs, Side::Rhs];

    pub fn other(self) -> Side {
        match self {
            Side::Lhs => Side::Rhs,
            Side::Rhs => Side::Lhs,
        }
    }
}

/// `lhs ≈ rhs` when `positive`, `lhs ≉ rhs` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub lhs: Term,
    pub rhs: Term,
    pub positive: bool,
}

impl Literal {
    pub fn eq(lhs: Term, rhs: Term) -> Self {
        Literal {
            lhs,
            rhs,
            positive: true,
        }
    }

    pub fn neq(lhs: Term, rhs: Term) -> Self {
        Literal {
            lhs,
            rhs,
            positive: false,
        }
    }

    pub fn side(&self, side: Side) -> &Term {
        match side {
            Side::Lhs => &self.lhs,
            Side::Rhs => &self.rhs,
        }
    }

    pub fn with_side(&self, side: Side, t: Term) -> Literal {
        let mut l = self.clone();
        match side {
            Side::Lhs => l.lhs = t,
            Side::Rhs => l.rhs = t,
        }
        l
    }

    pub fn flipped(&self) -> Literal {
        Literal {
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
            positive: self.positive,
        }
    }

    pub fn complement(&self) -> Literal {
        Literal {
            lhs: self.lhs.clone(),
            rhs: self.rhs.clone(),
            positive: !self.positive,
        }
    }

    /// Same atom up to symmetry of equality, ignoring polarity.
    pub fn same_atom(&self, other: &Literal) -> bool {
        (self.lhs == other.lhs && self.rhs == other.rhs)
            || (self.lhs == other.rhs && self.rhs == other.lhs)
    }

    pub fn is_reflexive(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// A finite multiset of literals; empty means `□`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Clause {
    pub literals: Vec<Literal>,
}

impl Clause {
    pub fn new(literals: Vec<Literal>) -> Self {
        Clause { literals }
    }

    pub fn empty() -> Self {
        Clause::default()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    /// Literals other than the ones at `skip`.
    pub fn others<'a>(&'a self, skip: &'a [usize]) -> impl Iterator<Item = &'a Literal> + 'a {
        self.literals
            .iter()
            .enumerate()
            .filter(move |(i, _)| !skip.contains(i))
            .map(|(_, l)| l)
    }

    pub fn size(&self) -> usize {
        self.literals
            .iter()
            .map(|l| l.lhs.size() + l.rhs.size())
            .sum()
    }
}

/// `t ≈ t` or a complementary pair.
pub fn is_tautology(c: &Clause) -> bool {
    c.literals.iter().enumerate().any(|(i, l)| {
        (l.positive && l.is_reflexive())
            || c.literals[i + 1..]
                .iter()
                .any(|k| k.positive != l.positive && k.same_atom(l))
    })
}

/// `⟨C, p⟩`: true iff the universal closure of `C ∨ F[ᾱ, p]` holds.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AnswerClause {
    pub clause: Clause,
    pub answer: ProgramTerm,
}

impl AnswerClause {
    pub fn new(clause: Clause, answer: ProgramTerm) -> Self {
        AnswerClause { clause, answer }
    }

    pub fn is_empty(&self) -> bool {
        self.clause.is_empty()
    }

    pub fn symbol_count(&self) -> usize {
        self.clause.size()
    }
}

impl Expr for Literal {
    fn for_each_term<'a>(&'a self, f: &mut dyn FnMut(&'a Term)) {
        f(&self.lhs);
        f(&self.rhs);
    }
}

impl Expr for Clause {
    fn for_each_term<'a>(&'a self, f: &mut dyn FnMut(&'a Term)) {
        for l in &self.literals {
            l.for_each_term(f);
        }
    }
}

impl Expr for AnswerClause {
    fn for_each_term<'a>(&'a self, f: &mut dyn FnMut(&'a Term)) {
        self.clause.for_each_term(f);
        self.answer.for_each_term(f);
    }
}

impl Substitutable for Literal {
    fn apply(&self, sigma: &Substitution) -> Self {
        Literal {
            lhs: sigma.apply_term(&self.lhs),
            rhs: sigma.apply_term(&self.rhs),
            positive: self.positive,
        }
    }
}

impl Substitutable for Clause {
    fn apply(&self, sigma: &Substitution) -> Self {
        Clause {
            literals: self.literals.iter().map(|l| l.apply(sigma)).collect(),
        }
    }
}

impl Substitutable for AnswerClause {
    fn apply(&self, sigma: &Substitution) -> Self {
        AnswerClause {
            clause: self.clause.apply(sigma),
            answer: self.answer.apply(sigma),
        }
    }
}

/// Token encoding used for variant detection. Two answer clauses with the
/// same key are renamings of each other (clause and answer together).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VariantKey(Vec<u32>);

const VAR_TAG: u32 = u32::MAX;
const ITE_TAG: u32 = u32::MAX - 1;
const END_TAG: u32 = u32::MAX - 2;
const NEG_TAG: u32 = u32::MAX - 3;
const POS_TAG: u32 = u32::MAX - 4;

fn encode(t: &Term, names: &mut dyn FnMut(Var) -> u32, out: &mut Vec<u32>) {
    match t {
        Term::Var(v) => {
            out.push(VAR_TAG);
            out.push(v.sort.0);
            out.push(names(*v));
        }
        Term::App(f, args) => {
            out.push(f.0);
            for a in args {
                encode(a, names, out);
            }
            out.push(END_TAG);
        }
    }
}

fn encode_program(p: &ProgramTerm, names: &mut dyn FnMut(Var) -> u32, out: &mut Vec<u32>) {
    match p {
        ProgramTerm::Leaf(t) => encode(t, names, out),
        ProgramTerm::Ite {
            lhs,
            rhs,
            then_branch,
            else_branch,
        } => {
            out.push(ITE_TAG);
            encode(lhs, names, out);
            encode(rhs, names, out);
            encode_program(then_branch, names, out);
            encode_program(else_branch, names, out);
        }
    }
}

fn anonymous(t: &Term) -> Vec<u32> {
    let mut out = Vec::new();
    encode(t, &mut |_| 0, &mut out);
    out
}

/// A literal with its sign, anonymized sides and original sides.
type KeyedLiteral<'a> = (bool, Vec<u32>, Vec<u32>, &'a Term, &'a Term);

impl AnswerClause {
    /// Canonical key: literals oriented and sorted by their shape with
    /// variables anonymized, then variables numbered by first occurrence.
    pub fn variant_key(&self) -> VariantKey {
        let mut lits: Vec<KeyedLiteral> = self
            .clause
            .literals
            .iter()
            .map(|l| {
                let a = anonymous(&l.lhs);
                let b = anonymous(&l.rhs);
                if b < a {
                    (l.positive, b, a, &l.rhs, &l.lhs)
                } else {
                    (l.positive, a, b, &l.lhs, &l.rhs)
                }
            })
            .collect();
        lits.sort_by(|x, y| (x.0, &x.1, &x.2).cmp(&(y.0, &y.1, &y.2)));
        let mut numbering: std::collections::HashMap<Var, u32> = Default::default();
        let mut names = |v: Var| {
            let n = numbering.len() as u32;
            *numbering.entry(v).or_insert(n)
        };
        let mut out = Vec::new();
        for (pos, _, _, l, r) in lits {
            out.push(if pos { POS_TAG } else { NEG_TAG });
            encode(l, &mut names, &mut out);
            encode(r, &mut names, &mut out);
        }
        out.push(ITE_TAG);
        out.push(ITE_TAG);
        encode_program(&self.answer, &mut names, &mut out);
        VariantKey(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{Signature, SortId, SymId, SymbolDecl};

    fn setup() -> (Signature, SortId, SymId, SymId) {
        let mut sig = Signature::new();
        let s = sig.add_sort("s").unwrap();
        let mut add = |n: &str, args: Vec<SortId>| {
            sig.add_symbol(SymbolDecl {
                name: n.into(),
                args,
                result: s,
                computable: true,
            })
            .unwrap()
        };
        let a = add("a", vec![]);
        let c = add("c", vec![]);
        (sig, s, a, c)
    }

    #[test]
    fn tautologies() {
        let (_, s, a, c) = setup();
        let x = Term::var(Var::new(0, s));
        let a = Term::constant(a);
        let c = Term::constant(c);
        assert!(is_tautology(&Clause::new(vec![Literal::eq(a.clone(), a.clone())])));
        assert!(!is_tautology(&Clause::new(vec![Literal::neq(
            a.clone(),
            a.clone()
        )])));
        assert!(is_tautology(&Clause::new(vec![
            Literal::eq(x.clone(), c.clone()),
            Literal::neq(c.clone(), x.clone()),
        ])));
        assert!(!is_tautology(&Clause::new(vec![
            Literal::eq(x.clone(), c.clone()),
            Literal::eq(c, x),
        ])));
    }

    #[test]
    fn variant_keys_ignore_names_and_order() {
        let (_, s, a, c) = setup();
        let x = Term::var(Var::new(0, s));
        let y = Term::var(Var::new(7, s));
        let a = Term::constant(a);
        let c = Term::constant(c);
        let one = AnswerClause::new(
            Clause::new(vec![
                Literal::eq(x.clone(), a.clone()),
                Literal::neq(c.clone(), x.clone()),
            ]),
            ProgramTerm::leaf(x.clone()),
        );
        let two = AnswerClause::new(
            Clause::new(vec![
                Literal::neq(y.clone(), c.clone()),
                Literal::eq(a.clone(), y.clone()),
            ]),
            ProgramTerm::leaf(y.clone()),
        );
        assert_eq!(one.variant_key(), two.variant_key());
        let other_answer = AnswerClause::new(two.clause.clone(), ProgramTerm::leaf(a));
        assert_ne!(one.variant_key(), other_answer.variant_key());
    }
}
