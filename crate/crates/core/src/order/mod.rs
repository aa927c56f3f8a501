//! Simplification orders on terms and their bag extensions to literals and
//! clauses, plus literal selection.
//!
//! Two term orders are provided: LPO over a symbol precedence, and a
//! transfinite KBO whose uncomputable symbols carry weights beyond ω. With a
//! partitioned precedence (every uncomputable symbol above every computable
//! one) both orders make each ground uncomputable term exceed each ground
//! computable term.

mod lpo;
mod tkbo;

pub use lpo::lpo_compare;
pub use tkbo::{tkbo_compare, LinearWeightExpr, OrdinalWeight, WeightFunction};

use crate::clause::{Clause, Literal};
use crate::error::{Error, Result};
use crate::term::{Signature, SymId, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    Greater,
    Less,
    Equal,
    Incomparable,
}

impl Comparison {
    pub fn reverse(self) -> Comparison {
        match self {
            Comparison::Greater => Comparison::Less,
            Comparison::Less => Comparison::Greater,
            c => c,
        }
    }

    pub fn is_greater(self) -> bool {
        self == Comparison::Greater
    }

    /// `⪰`: greater or equal.
    pub fn is_greater_eq(self) -> bool {
        matches!(self, Comparison::Greater | Comparison::Equal)
    }

    /// `⪯`: less or equal.
    pub fn is_less_eq(self) -> bool {
        matches!(self, Comparison::Less | Comparison::Equal)
    }
}

/// Total order on symbols; a higher rank means greater precedence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Precedence {
    rank: Vec<u32>,
}

impl Precedence {
    /// From symbols listed greatest first; must cover every symbol exactly once.
    pub fn from_descending(sig: &Signature, order: &[SymId]) -> Result<Self> {
        let n = sig.num_symbols();
        if order.len() != n {
            return Err(Error::Config(format!(
                "precedence lists {} symbols, signature has {n}",
                order.len()
            )));
        }
        let mut rank = vec![u32::MAX; n];
        for (i, f) in order.iter().enumerate() {
            if rank[f.index()] != u32::MAX {
                return Err(Error::Config(format!(
                    "symbol `{}` listed twice in precedence",
                    sig.name(*f)
                )));
            }
            rank[f.index()] = (n - 1 - i) as u32;
        }
        Ok(Precedence { rank })
    }

    pub fn rank(&self, f: SymId) -> u32 {
        self.rank[f.index()]
    }

    /// `f ≫ g`.
    pub fn greater(&self, f: SymId, g: SymId) -> bool {
        self.rank[f.index()] > self.rank[g.index()]
    }

    /// All symbols, greatest first.
    pub fn descending(&self) -> Vec<SymId> {
        let mut ids: Vec<SymId> = (0..self.rank.len() as u32).map(SymId).collect();
        ids.sort_by_key(|f| std::cmp::Reverse(self.rank(*f)));
        ids
    }

    /// Every uncomputable symbol above every computable symbol.
    pub fn is_partitioned(&self, sig: &Signature) -> bool {
        let max_comp = sig
            .symbol_ids()
            .filter(|f| sig.is_computable_symbol(*f))
            .map(|f| self.rank(f))
            .max();
        let min_uncomp = sig
            .symbol_ids()
            .filter(|f| !sig.is_computable_symbol(*f))
            .map(|f| self.rank(f))
            .min();
        match (max_comp, min_uncomp) {
            (Some(c), Some(u)) => u > c,
            _ => true,
        }
    }

    fn build(sig: &Signature, hints: &[SymId], classes: &[Vec<SymId>]) -> Result<Self> {
        for (i, f) in hints.iter().enumerate() {
            if hints[..i].contains(f) {
                return Err(Error::Config(format!(
                    "symbol `{}` hinted twice",
                    sig.name(*f)
                )));
            }
        }
        // ascending, lowest class first
        let mut ascending = Vec::with_capacity(sig.num_symbols());
        for class in classes {
            let mut unhinted: Vec<SymId> = class
                .iter()
                .copied()
                .filter(|f| !hints.contains(f))
                .collect();
            unhinted.sort_by(|a, b| sig.name(*a).cmp(sig.name(*b)));
            ascending.extend(unhinted);
            ascending.extend(hints.iter().rev().copied().filter(|f| class.contains(f)));
        }
        ascending.reverse();
        Precedence::from_descending(sig, &ascending)
    }
}

/// Partitioned precedence: uncomputable above computable; inside each class
/// hinted symbols (given greatest first) above the rest, the rest by name
/// with later names greater.
pub fn make_partitioned_precedence(sig: &Signature, hints: &[SymId]) -> Result<Precedence> {
    let (comp, uncomp): (Vec<SymId>, Vec<SymId>) =
        sig.symbol_ids().partition(|f| sig.is_computable_symbol(*f));
    if let Some(first_comp) = hints.iter().position(|f| sig.is_computable_symbol(*f)) {
        if let Some(late) = hints[first_comp..]
            .iter()
            .find(|f| !sig.is_computable_symbol(**f))
        {
            return Err(Error::Config(format!(
                "precedence hint places computable `{}` above uncomputable `{}`",
                sig.name(hints[first_comp]),
                sig.name(*late)
            )));
        }
    }
    Precedence::build(sig, hints, &[comp, uncomp])
}

/// Unpartitioned precedence: hinted symbols on top in the given order, then
/// the rest by name.
pub fn make_precedence(sig: &Signature, hints: &[SymId]) -> Result<Precedence> {
    let all: Vec<SymId> = sig.symbol_ids().collect();
    Precedence::build(sig, hints, &[all])
}

/// The configured simplification order on terms.
#[derive(Debug, Clone)]
pub enum TermOrder {
    Lpo(Precedence),
    Tkbo(Precedence, WeightFunction),
}

impl TermOrder {
    pub fn precedence(&self) -> &Precedence {
        match self {
            TermOrder::Lpo(p) | TermOrder::Tkbo(p, _) => p,
        }
    }

    pub fn compare(&self, s: &Term, t: &Term) -> Comparison {
        match self {
            TermOrder::Lpo(p) => lpo_compare(s, t, p),
            TermOrder::Tkbo(p, w) => tkbo_compare(s, t, p, w),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TermOrder::Lpo(_) => "lpo",
            TermOrder::Tkbo(..) => "tkbo",
        }
    }
}

/// Multiset extension of `cmp`.
pub fn bag_compare<T: PartialEq>(
    xs: &[T],
    ys: &[T],
    cmp: impl Fn(&T, &T) -> Comparison,
) -> Comparison {
    let mut ys_left: Vec<Option<&T>> = ys.iter().map(Some).collect();
    let mut xs_only = Vec::new();
    for x in xs {
        match ys_left.iter_mut().find(|y| y.is_some_and(|y| y == x)) {
            Some(slot) => *slot = None,
            None => xs_only.push(x),
        }
    }
    let ys_only: Vec<&T> = ys_left.into_iter().flatten().collect();
    if xs_only.is_empty() && ys_only.is_empty() {
        return Comparison::Equal;
    }
    // every element only in `small` is beaten by one only in `big`
    let dominates = |big: &[&T], small: &[&T], beats: &dyn Fn(&T, &T) -> bool| {
        !big.is_empty() && small.iter().all(|y| big.iter().any(|x| beats(x, y)))
    };
    if dominates(&xs_only, &ys_only, &|x, y| cmp(x, y) == Comparison::Greater) {
        Comparison::Greater
    } else if dominates(&ys_only, &xs_only, &|y, x| cmp(x, y) == Comparison::Less) {
        Comparison::Less
    } else {
        Comparison::Incomparable
    }
}

/// `s ≈ t` as `{s, t}`, `s ≉ t` as `{s, s, t, t}`.
pub fn literal_bag(l: &Literal) -> Vec<&Term> {
    if l.positive {
        vec![&l.lhs, &l.rhs]
    } else {
        vec![&l.lhs, &l.lhs, &l.rhs, &l.rhs]
    }
}

pub fn literal_compare(l: &Literal, k: &Literal, order: &TermOrder) -> Comparison {
    bag_compare(&literal_bag(l), &literal_bag(k), |a, b| order.compare(a, b))
}

pub fn clause_compare(c: &Clause, d: &Clause, order: &TermOrder) -> Comparison {
    let cs: Vec<&Literal> = c.literals.iter().collect();
    let ds: Vec<&Literal> = d.literals.iter().collect();
    bag_compare(&cs, &ds, |a, b| literal_compare(a, b, order))
}

/// Literal selection policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Selection {
    /// Every maximal literal.
    #[default]
    Maximal,
    /// The maximal negative literals when there is a negative literal,
    /// otherwise every maximal literal.
    NegativeFirst,
}

impl Selection {
    pub fn name(self) -> &'static str {
        match self {
            Selection::Maximal => "maximal",
            Selection::NegativeFirst => "negative",
        }
    }
}

fn maximal_among(c: &Clause, candidates: &[usize], order: &TermOrder) -> Vec<usize> {
    candidates
        .iter()
        .copied()
        .filter(|&i| {
            candidates.iter().all(|&j| {
                j == i || !literal_compare(&c.literals[j], &c.literals[i], order).is_greater()
            })
        })
        .collect()
}

/// Indices of the selected literals of a non-empty clause.
pub fn selected_literals(c: &Clause, order: &TermOrder, selection: Selection) -> Result<Vec<usize>> {
    if c.is_empty() {
        return Err(Error::Precondition("selection on the empty clause".into()));
    }
    let all: Vec<usize> = (0..c.len()).collect();
    if selection == Selection::NegativeFirst {
        let negatives: Vec<usize> = all
            .iter()
            .copied()
            .filter(|&i| !c.literals[i].positive)
            .collect();
        if !negatives.is_empty() {
            return Ok(maximal_among(c, &negatives, order));
        }
    }
    Ok(maximal_among(c, &all, order))
}
