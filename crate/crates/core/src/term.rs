//! Sorted signatures, first-order terms, program terms and substitutions.
//!
//! Every signature carries the sort `bool` with the computable constants
//! `true` and `false`; predicate symbols are ordinary functions into `bool`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SortId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymId(pub u32);

impl SortId {
    pub const BOOL: SortId = SortId(0);
}

impl SymId {
    pub const TRUE: SymId = SymId(0);
    pub const FALSE: SymId = SymId(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A sorted variable. Identity is the numeric id; the sort travels along so
/// that terms can be sort-checked without an environment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub id: u32,
    pub sort: SortId,
}

impl Var {
    pub fn new(id: u32, sort: SortId) -> Self {
        Var { id, sort }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolDecl {
    pub name: String,
    pub args: Vec<SortId>,
    pub result: SortId,
    pub computable: bool,
}

impl SymbolDecl {
    pub fn arity(&self) -> usize {
        self.args.len()
    }
}

#[derive(Debug, Clone)]
pub struct Signature {
    sorts: Vec<String>,
    symbols: Vec<SymbolDecl>,
    sort_index: HashMap<String, SortId>,
    symbol_index: HashMap<String, SymId>,
}

impl Default for Signature {
    fn default() -> Self {
        Self::new()
    }
}

impl Signature {
    pub fn new() -> Self {
        let mut sig = Signature {
            sorts: Vec::new(),
            symbols: Vec::new(),
            sort_index: HashMap::new(),
            symbol_index: HashMap::new(),
        };
        sig.add_sort("bool").expect("fresh signature");
        for name in ["true", "false"] {
            sig.add_symbol(SymbolDecl {
                name: name.to_string(),
                args: vec![],
                result: SortId::BOOL,
                computable: true,
            })
            .expect("fresh signature");
        }
        sig
    }

    pub fn add_sort(&mut self, name: &str) -> Result<SortId> {
        if self.sort_index.contains_key(name) {
            return Err(Error::Config(format!("duplicate sort `{name}`")));
        }
        let id = SortId(self.sorts.len() as u32);
        self.sorts.push(name.to_string());
        self.sort_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn add_symbol(&mut self, decl: SymbolDecl) -> Result<SymId> {
        if self.symbol_index.contains_key(&decl.name) {
            return Err(Error::Config(format!("duplicate symbol `{}`", decl.name)));
        }
        for s in decl.args.iter().chain(std::iter::once(&decl.result)) {
            if s.0 as usize >= self.sorts.len() {
                return Err(Error::Config(format!(
                    "symbol `{}` uses an undeclared sort",
                    decl.name
                )));
            }
        }
        let id = SymId(self.symbols.len() as u32);
        self.symbol_index.insert(decl.name.clone(), id);
        self.symbols.push(decl);
        Ok(id)
    }

    pub fn sort_id(&self, name: &str) -> Option<SortId> {
        self.sort_index.get(name).copied()
    }

    pub fn symbol_id(&self, name: &str) -> Option<SymId> {
        self.symbol_index.get(name).copied()
    }

    pub fn sort_name(&self, sort: SortId) -> &str {
        &self.sorts[sort.0 as usize]
    }

    pub fn symbol(&self, id: SymId) -> &SymbolDecl {
        &self.symbols[id.index()]
    }

    pub fn name(&self, id: SymId) -> &str {
        &self.symbols[id.index()].name
    }

    pub fn is_computable_symbol(&self, id: SymId) -> bool {
        self.symbols[id.index()].computable
    }

    pub fn num_sorts(&self) -> usize {
        self.sorts.len()
    }

    pub fn num_symbols(&self) -> usize {
        self.symbols.len()
    }

    pub fn sort_ids(&self) -> impl Iterator<Item = SortId> {
        (0..self.sorts.len() as u32).map(SortId)
    }

    pub fn symbol_ids(&self) -> impl Iterator<Item = SymId> {
        (0..self.symbols.len() as u32).map(SymId)
    }

    pub fn has_uncomputable(&self) -> bool {
        self.symbols.iter().any(|d| !d.computable)
    }

    /// A name not yet used by any symbol, derived from `base`.
    pub fn fresh_symbol_name(&self, base: &str) -> String {
        if !self.symbol_index.contains_key(base) {
            return base.to_string();
        }
        (1..)
            .map(|i| format!("{base}{i}"))
            .find(|n| !self.symbol_index.contains_key(n))
            .expect("unbounded")
    }

    /// Sorts that have at least one ground term.
    pub fn inhabited_sorts(&self) -> Vec<bool> {
        let mut inhabited = vec![false; self.sorts.len()];
        loop {
            let mut changed = false;
            for d in &self.symbols {
                if !inhabited[d.result.0 as usize]
                    && d.args.iter().all(|a| inhabited[a.0 as usize])
                {
                    inhabited[d.result.0 as usize] = true;
                    changed = true;
                }
            }
            if !changed {
                return inhabited;
            }
        }
    }

    /// Sorts that have at least one uncomputable term. Variables of every
    /// sort are available as arguments, so only result sorts matter.
    pub fn sorts_with_uncomputable_terms(&self) -> Vec<bool> {
        let mut reach = vec![false; self.sorts.len()];
        loop {
            let mut changed = false;
            for d in &self.symbols {
                let r = d.result.0 as usize;
                if !reach[r] && (!d.computable || d.args.iter().any(|a| reach[a.0 as usize])) {
                    reach[r] = true;
                    changed = true;
                }
            }
            if !changed {
                return reach;
            }
        }
    }
}

/// Tree address of a subterm: the sequence of argument indices from the root.
pub type Position = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    App(SymId, Vec<Term>),
}

impl Term {
    pub fn var(v: Var) -> Term {
        Term::Var(v)
    }

    pub fn constant(f: SymId) -> Term {
        Term::App(f, Vec::new())
    }

    pub fn app(f: SymId, args: Vec<Term>) -> Term {
        Term::App(f, args)
    }

    pub fn as_var(&self) -> Option<Var> {
        match self {
            Term::Var(v) => Some(*v),
            Term::App(..) => None,
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn top_symbol(&self) -> Option<SymId> {
        match self {
            Term::Var(_) => None,
            Term::App(f, _) => Some(*f),
        }
    }

    pub fn sort(&self, sig: &Signature) -> SortId {
        match self {
            Term::Var(v) => v.sort,
            Term::App(f, _) => sig.symbol(*f).result,
        }
    }

    /// Checks arities and argument sorts; returns the sort of the term.
    pub fn check(&self, sig: &Signature) -> Result<SortId> {
        match self {
            Term::Var(v) => Ok(v.sort),
            Term::App(f, args) => {
                let decl = sig.symbol(*f);
                if decl.args.len() != args.len() {
                    return Err(Error::SortMismatch(format!(
                        "`{}` expects {} arguments, got {}",
                        decl.name,
                        decl.args.len(),
                        args.len()
                    )));
                }
                for (a, expected) in args.iter().zip(&decl.args) {
                    let got = a.check(sig)?;
                    if got != *expected {
                        return Err(Error::SortMismatch(format!(
                            "argument of `{}` has sort `{}`, expected `{}`",
                            decl.name,
                            sig.sort_name(got),
                            sig.sort_name(*expected)
                        )));
                    }
                }
                Ok(decl.result)
            }
        }
    }

    pub fn occurs(&self, v: Var) -> bool {
        match self {
            Term::Var(w) => *w == v,
            Term::App(_, args) => args.iter().any(|a| a.occurs(v)),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => args.iter().map(|a| a.depth() + 1).max().unwrap_or(0),
        }
    }

    pub fn subterm(&self, pos: &[usize]) -> Option<&Term> {
        let mut t = self;
        for &i in pos {
            match t {
                Term::App(_, args) => t = args.get(i)?,
                Term::Var(_) => return None,
            }
        }
        Some(t)
    }

    /// Copy of `self` with the subterm at `pos` replaced by `by`.
    pub fn replace_at(&self, pos: &[usize], by: Term) -> Term {
        match pos.split_first() {
            None => by,
            Some((&i, rest)) => match self {
                Term::App(f, args) => {
                    let mut args = args.clone();
                    args[i] = args[i].replace_at(rest, by);
                    Term::App(*f, args)
                }
                Term::Var(_) => panic!("position runs through a variable"),
            },
        }
    }

    /// Replaces every occurrence of `old` by `new`.
    pub fn replace_all(&self, old: &Term, new: &Term) -> Term {
        if self == old {
            return new.clone();
        }
        match self {
            Term::Var(_) => self.clone(),
            Term::App(f, args) => {
                Term::App(*f, args.iter().map(|a| a.replace_all(old, new)).collect())
            }
        }
    }

    /// All positions of non-variable subterms, outermost first, left to right.
    pub fn nonvar_positions(&self) -> Vec<Position> {
        fn go(t: &Term, cur: &mut Position, out: &mut Vec<Position>) {
            if let Term::App(_, args) = t {
                out.push(cur.clone());
                for (i, a) in args.iter().enumerate() {
                    cur.push(i);
                    go(a, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Proper subterms and `self`, pre-order.
    pub fn subterms(&self) -> Vec<&Term> {
        fn go<'a>(t: &'a Term, out: &mut Vec<&'a Term>) {
            out.push(t);
            if let Term::App(_, args) = t {
                for a in args {
                    go(a, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }
}

/// A term possibly built with the conditional `ite(lhs = rhs, then, else)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProgramTerm {
    Leaf(Term),
    Ite {
        lhs: Term,
        rhs: Term,
        then_branch: Box<ProgramTerm>,
        else_branch: Box<ProgramTerm>,
    },
}

impl ProgramTerm {
    pub fn leaf(t: Term) -> Self {
        ProgramTerm::Leaf(t)
    }

    pub fn ite(lhs: Term, rhs: Term, then_branch: ProgramTerm, else_branch: ProgramTerm) -> Self {
        ProgramTerm::Ite {
            lhs,
            rhs,
            then_branch: Box::new(then_branch),
            else_branch: Box::new(else_branch),
        }
    }

    /// `true` when the program contains no `ite`.
    pub fn is_simple(&self) -> bool {
        matches!(self, ProgramTerm::Leaf(_))
    }

    pub fn as_simple(&self) -> Option<&Term> {
        match self {
            ProgramTerm::Leaf(t) => Some(t),
            ProgramTerm::Ite { .. } => None,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            ProgramTerm::Leaf(t) => t.size(),
            ProgramTerm::Ite {
                lhs,
                rhs,
                then_branch,
                else_branch,
            } => 1 + lhs.size() + rhs.size() + then_branch.size() + else_branch.size(),
        }
    }

    /// Checks branch and condition sorts; returns the output sort.
    pub fn check(&self, sig: &Signature) -> Result<SortId> {
        match self {
            ProgramTerm::Leaf(t) => t.check(sig),
            ProgramTerm::Ite {
                lhs,
                rhs,
                then_branch,
                else_branch,
            } => {
                if lhs.check(sig)? != rhs.check(sig)? {
                    return Err(Error::SortMismatch("ite condition sides differ".into()));
                }
                let a = then_branch.check(sig)?;
                let b = else_branch.check(sig)?;
                if a != b {
                    return Err(Error::SortMismatch("ite branches differ".into()));
                }
                Ok(a)
            }
        }
    }

    pub fn map_terms(&self, f: &mut impl FnMut(&Term) -> Term) -> ProgramTerm {
        match self {
            ProgramTerm::Leaf(t) => ProgramTerm::Leaf(f(t)),
            ProgramTerm::Ite {
                lhs,
                rhs,
                then_branch,
                else_branch,
            } => {
                let lhs = f(lhs);
                let rhs = f(rhs);
                let then_branch = then_branch.map_terms(f);
                let else_branch = else_branch.map_terms(f);
                ProgramTerm::ite(lhs, rhs, then_branch, else_branch)
            }
        }
    }
}

/// Anything built from terms: walk its symbols and variables.
pub trait Expr {
    fn for_each_term<'a>(&'a self, f: &mut dyn FnMut(&'a Term));

    fn for_each_symbol(&self, f: &mut dyn FnMut(SymId)) {
        fn go(t: &Term, f: &mut dyn FnMut(SymId)) {
            if let Term::App(s, args) = t {
                f(*s);
                for a in args {
                    go(a, f);
                }
            }
        }
        self.for_each_term(&mut |t| go(t, f));
    }

    fn vars(&self) -> BTreeSet<Var> {
        fn go(t: &Term, out: &mut BTreeSet<Var>) {
            match t {
                Term::Var(v) => {
                    out.insert(*v);
                }
                Term::App(_, args) => args.iter().for_each(|a| go(a, out)),
            }
        }
        let mut out = BTreeSet::new();
        self.for_each_term(&mut |t| go(t, &mut out));
        out
    }

    /// Variables in order of first occurrence.
    fn vars_ordered(&self) -> Vec<Var> {
        fn go(t: &Term, seen: &mut BTreeSet<Var>, out: &mut Vec<Var>) {
            match t {
                Term::Var(v) => {
                    if seen.insert(*v) {
                        out.push(*v);
                    }
                }
                Term::App(_, args) => args.iter().for_each(|a| go(a, seen, out)),
            }
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        self.for_each_term(&mut |t| go(t, &mut seen, &mut out));
        out
    }

    fn is_ground(&self) -> bool {
        self.vars().is_empty()
    }

    /// No uncomputable symbol occurs anywhere, ite conditions included.
    fn is_computable(&self, sig: &Signature) -> bool {
        let mut ok = true;
        self.for_each_symbol(&mut |s| ok &= sig.is_computable_symbol(s));
        ok
    }

    fn contains_symbol(&self, sym: SymId) -> bool {
        let mut found = false;
        self.for_each_symbol(&mut |s| found |= s == sym);
        found
    }
}

impl Expr for Term {
    fn for_each_term<'a>(&'a self, f: &mut dyn FnMut(&'a Term)) {
        f(self)
    }
}

impl Expr for ProgramTerm {
    fn for_each_term<'a>(&'a self, f: &mut dyn FnMut(&'a Term)) {
        match self {
            ProgramTerm::Leaf(t) => f(t),
            ProgramTerm::Ite {
                lhs,
                rhs,
                then_branch,
                else_branch,
            } => {
                f(lhs);
                f(rhs);
                then_branch.for_each_term(f);
                else_branch.for_each_term(f);
            }
        }
    }
}

/// Free-function form of [`Expr::is_computable`].
pub fn is_computable<E: Expr + ?Sized>(e: &E, sig: &Signature) -> bool {
    e.is_computable(sig)
}

/// A finite, sort-preserving map from variables to terms, applied
/// simultaneously.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Substitution {
    map: BTreeMap<Var, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `v -> t` after checking that `t` is well-sorted at `v`'s sort.
    pub fn bind(&mut self, v: Var, t: Term, sig: &Signature) -> Result<()> {
        let sort = t
            .check(sig)
            .map_err(|e| Error::InvalidSubstitution(e.to_string()))?;
        if sort != v.sort {
            return Err(Error::InvalidSubstitution(format!(
                "variable of sort `{}` bound to a term of sort `{}`",
                sig.sort_name(v.sort),
                sig.sort_name(sort)
            )));
        }
        self.map.insert(v, t);
        Ok(())
    }

    /// Unchecked insertion; callers guarantee well-sortedness.
    pub fn insert(&mut self, v: Var, t: Term) {
        debug_assert!(match &t {
            Term::Var(w) => w.sort == v.sort,
            _ => true,
        });
        self.map.insert(v, t);
    }

    pub fn get(&self, v: Var) -> Option<&Term> {
        self.map.get(&v)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.map.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = Var> + '_ {
        self.map.keys().copied()
    }

    pub fn apply_term(&self, t: &Term) -> Term {
        if self.map.is_empty() {
            return t.clone();
        }
        match t {
            Term::Var(v) => self.map.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::App(f, args) => Term::App(*f, args.iter().map(|a| self.apply_term(a)).collect()),
        }
    }

    /// `self` followed by `other`: x -> (x self) other.
    pub fn then(&self, other: &Substitution) -> Substitution {
        let mut map: BTreeMap<Var, Term> = self
            .map
            .iter()
            .map(|(v, t)| (*v, other.apply_term(t)))
            .collect();
        for (v, t) in &other.map {
            map.entry(*v).or_insert_with(|| t.clone());
        }
        map.retain(|v, t| t.as_var() != Some(*v));
        Substitution { map }
    }

    pub fn is_idempotent(&self) -> bool {
        self.map
            .values()
            .all(|t| self.map.keys().all(|v| !t.occurs(*v)))
    }
}

impl FromIterator<(Var, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (Var, Term)>>(iter: I) -> Self {
        Substitution {
            map: iter.into_iter().collect(),
        }
    }
}

/// Types a substitution can be applied to.
pub trait Substitutable {
    fn apply(&self, sigma: &Substitution) -> Self;
}

impl Substitutable for Term {
    fn apply(&self, sigma: &Substitution) -> Self {
        sigma.apply_term(self)
    }
}

impl Substitutable for ProgramTerm {
    fn apply(&self, sigma: &Substitution) -> Self {
        self.map_terms(&mut |t| sigma.apply_term(t))
    }
}

/// Free-function form of [`Substitutable::apply`].
pub fn apply_subst<T: Substitutable>(sigma: &Substitution, t: &T) -> T {
    t.apply(sigma)
}

/// Run-scoped source of fresh variables.
#[derive(Debug, Clone, Default)]
pub struct VarGen {
    next: u32,
}

impl VarGen {
    pub fn starting_at(next: u32) -> Self {
        VarGen { next }
    }

    pub fn fresh(&mut self, sort: SortId) -> Var {
        let v = Var::new(self.next, sort);
        self.next += 1;
        v
    }

    /// Ensures future variables are above every id in `vars`.
    pub fn reserve<'a>(&mut self, vars: impl IntoIterator<Item = &'a Var>) {
        for v in vars {
            self.next = self.next.max(v.id + 1);
        }
    }

    pub fn peek(&self) -> u32 {
        self.next
    }

    /// A substitution renaming every variable of `e` to a fresh one.
    pub fn renaming<E: Expr + ?Sized>(&mut self, e: &E) -> Substitution {
        e.vars_ordered()
            .into_iter()
            .map(|v| (v, Term::Var(self.fresh(v.sort))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> (Signature, SortId, SymId, SymId) {
        let mut sig = Signature::new();
        let s = sig.add_sort("s").unwrap();
        let a = sig
            .add_symbol(SymbolDecl {
                name: "a".into(),
                args: vec![],
                result: s,
                computable: true,
            })
            .unwrap();
        let f = sig
            .add_symbol(SymbolDecl {
                name: "f".into(),
                args: vec![s, s],
                result: s,
                computable: false,
            })
            .unwrap();
        (sig, s, a, f)
    }

    #[test]
    fn apply_replaces_all_occurrences() {
        let (sig, s, a, f) = sig();
        let x = Var::new(0, s);
        let t = Term::app(f, vec![Term::var(x), Term::var(x)]);
        let mut sigma = Substitution::new();
        sigma.bind(x, Term::constant(a), &sig).unwrap();
        assert_eq!(
            sigma.apply_term(&t),
            Term::app(f, vec![Term::constant(a), Term::constant(a)])
        );
        assert_eq!(Substitution::new().apply_term(&t), t);
    }

    #[test]
    fn bind_rejects_sort_mismatch() {
        let (sig, s, _, _) = sig();
        let x = Var::new(0, s);
        let mut sigma = Substitution::new();
        let err = sigma.bind(x, Term::constant(SymId::TRUE), &sig).unwrap_err();
        assert!(matches!(err, Error::InvalidSubstitution(_)));
    }

    #[test]
    fn duplicate_declarations_rejected() {
        let (mut sig, s, _, _) = sig();
        assert!(sig.add_sort("s").is_err());
        let dup = SymbolDecl {
            name: "a".into(),
            args: vec![],
            result: s,
            computable: true,
        };
        assert!(sig.add_symbol(dup).is_err());
    }

    #[test]
    fn positions_are_outermost_first() {
        let (_, s, a, f) = sig();
        let x = Var::new(0, s);
        let t = Term::app(f, vec![Term::constant(a), Term::var(x)]);
        assert_eq!(t.nonvar_positions(), vec![vec![], vec![0]]);
        assert_eq!(t.subterm(&[1]), Some(&Term::var(x)));
        assert_eq!(
            t.replace_at(&[1], Term::constant(a)),
            Term::app(f, vec![Term::constant(a), Term::constant(a)])
        );
    }

    #[test]
    fn uncomputable_term_sorts() {
        let (sig, s, _, _) = sig();
        let reach = sig.sorts_with_uncomputable_terms();
        assert!(reach[s.0 as usize]);
        assert!(!reach[SortId::BOOL.0 as usize]);
    }

    #[test]
    fn composition_applies_in_order() {
        let (_, s, a, f) = sig();
        let x = Var::new(0, s);
        let y = Var::new(1, s);
        let first: Substitution = [(x, Term::app(f, vec![Term::var(y), Term::var(y)]))]
            .into_iter()
            .collect();
        let second: Substitution = [(y, Term::constant(a))].into_iter().collect();
        let both = first.then(&second);
        let t = Term::var(x);
        assert_eq!(
            both.apply_term(&t),
            second.apply_term(&first.apply_term(&t))
        );
    }
}
