//! Brute-force finite-model semantics: enumeration of interpretations,
//! evaluation of terms, programs, clauses and formulas, the truth of answer
//! clauses, and bounded checking of synthesized programs.
//!
//! Carrier elements are numbered `0..n`. The `bool` carrier always has two
//! elements with `true` as 0 and `false` as 1.

use crate::clause::{AnswerClause, Clause, Literal};
use crate::error::{Error, Result};
use crate::formula::{Formula, Specification};
use crate::preprocess::Problem;
use crate::term::{Expr, ProgramTerm, Signature, SortId, SymId, Term, Var};

/// Refuse enumerations larger than this many interpretations.
pub const ENUMERATION_BOUND: u128 = 10_000_000;

/// Carrier sizes per sort and a total table per symbol. The table of `f`
/// is indexed by its arguments in mixed radix, first argument most
/// significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    pub sizes: Vec<u32>,
    pub tables: Vec<Vec<u32>>,
}

impl Interpretation {
    pub fn size(&self, sort: SortId) -> u32 {
        self.sizes[sort.0 as usize]
    }

    pub fn apply(&self, sig: &Signature, f: SymId, args: &[u32]) -> u32 {
        let decl = sig.symbol(f);
        let mut index = 0usize;
        for (a, s) in args.iter().zip(&decl.args) {
            index = index * self.size(*s) as usize + *a as usize;
        }
        self.tables[f.index()][index]
    }
}

/// A valuation of variables, searched from the most recent binding.
pub type Env = Vec<(Var, u32)>;

fn lookup(env: &Env, v: Var) -> Result<u32> {
    env.iter()
        .rev()
        .find(|(w, _)| *w == v)
        .map(|(_, x)| *x)
        .ok_or_else(|| Error::Evaluation(format!("unbound variable ?{}", v.id)))
}

pub fn eval_term(t: &Term, sig: &Signature, i: &Interpretation, env: &Env) -> Result<u32> {
    match t {
        Term::Var(v) => lookup(env, *v),
        Term::App(f, args) => {
            let vals = args
                .iter()
                .map(|a| eval_term(a, sig, i, env))
                .collect::<Result<Vec<_>>>()?;
            Ok(i.apply(sig, *f, &vals))
        }
    }
}

pub fn eval_program(p: &ProgramTerm, sig: &Signature, i: &Interpretation, env: &Env) -> Result<u32> {
    match p {
        ProgramTerm::Leaf(t) => eval_term(t, sig, i, env),
        ProgramTerm::Ite {
            lhs,
            rhs,
            then_branch,
            else_branch,
        } => {
            if eval_term(lhs, sig, i, env)? == eval_term(rhs, sig, i, env)? {
                eval_program(then_branch, sig, i, env)
            } else {
                eval_program(else_branch, sig, i, env)
            }
        }
    }
}

pub fn eval_literal(l: &Literal, sig: &Signature, i: &Interpretation, env: &Env) -> Result<bool> {
    let same = eval_term(&l.lhs, sig, i, env)? == eval_term(&l.rhs, sig, i, env)?;
    Ok(same == l.positive)
}

pub fn eval_clause(c: &Clause, sig: &Signature, i: &Interpretation, env: &Env) -> Result<bool> {
    for l in &c.literals {
        if eval_literal(l, sig, i, env)? {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn eval_formula(f: &Formula, sig: &Signature, i: &Interpretation, env: &mut Env) -> Result<bool> {
    Ok(match f {
        Formula::Atom(t) => eval_term(t, sig, i, env)? == 0,
        Formula::Eq(a, b) => eval_term(a, sig, i, env)? == eval_term(b, sig, i, env)?,
        Formula::Not(g) => !eval_formula(g, sig, i, env)?,
        Formula::And(gs) => {
            for g in gs {
                if !eval_formula(g, sig, i, env)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::Or(gs) => {
            for g in gs {
                if eval_formula(g, sig, i, env)? {
                    return Ok(true);
                }
            }
            false
        }
        Formula::Implies(a, b) => !eval_formula(a, sig, i, env)? || eval_formula(b, sig, i, env)?,
        Formula::Iff(a, b) => eval_formula(a, sig, i, env)? == eval_formula(b, sig, i, env)?,
        Formula::Forall(vs, g) => quantify(vs, g, true, sig, i, env)?,
        Formula::Exists(vs, g) => quantify(vs, g, false, sig, i, env)?,
    })
}

fn quantify(
    vs: &[Var],
    body: &Formula,
    universal: bool,
    sig: &Signature,
    i: &Interpretation,
    env: &mut Env,
) -> Result<bool> {
    let Some((v, rest)) = vs.split_first() else {
        return eval_formula(body, sig, i, env);
    };
    for x in 0..i.size(v.sort) {
        env.push((*v, x));
        let r = quantify(rest, body, universal, sig, i, env);
        env.pop();
        if r? != universal {
            return Ok(!universal);
        }
    }
    Ok(universal)
}

/// Calls `f` on every valuation of `vars` extending `env`; stops early when
/// `f` returns `false`, and reports whether it never did.
pub fn for_all_valuations(
    vars: &[Var],
    i: &Interpretation,
    env: &mut Env,
    f: &mut dyn FnMut(&Env) -> Result<bool>,
) -> Result<bool> {
    let Some((v, rest)) = vars.split_first() else {
        return f(env);
    };
    for x in 0..i.size(v.sort) {
        env.push((*v, x));
        let r = for_all_valuations(rest, i, env, f);
        env.pop();
        if !r? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Streams every interpretation of the selected symbols with carriers of
/// size `1..=max_size` for the selected sorts. Unselected sorts have one
/// element; unselected symbols map everything to element 0.
pub struct Interpretations<'a> {
    sig: &'a Signature,
    max_size: u32,
    sorts: Vec<SortId>,
    symbols: Vec<SymId>,
    current: Interpretation,
    started: bool,
    done: bool,
}

fn table_len(sig: &Signature, sizes: &[u32], f: SymId) -> usize {
    sig.symbol(f)
        .args
        .iter()
        .map(|s| sizes[s.0 as usize] as usize)
        .product()
}

fn fresh_tables(sig: &Signature, sizes: &[u32]) -> Vec<Vec<u32>> {
    sig.symbol_ids()
        .map(|f| match f {
            SymId::TRUE => vec![0],
            SymId::FALSE => vec![1],
            _ => vec![0; table_len(sig, sizes, f)],
        })
        .collect()
}

impl<'a> Interpretations<'a> {
    fn new(sig: &'a Signature, max_size: u32, sorts: Vec<SortId>, symbols: Vec<SymId>) -> Result<Self> {
        if max_size == 0 {
            return Err(Error::Precondition("carrier size bound must be at least 1".into()));
        }
        let count = count(sig, max_size, &sorts, &symbols);
        if count > ENUMERATION_BOUND {
            return Err(Error::EnumerationBound {
                count,
                bound: ENUMERATION_BOUND,
            });
        }
        let mut sizes = vec![1; sig.num_sorts()];
        sizes[SortId::BOOL.0 as usize] = 2;
        let tables = fresh_tables(sig, &sizes);
        Ok(Interpretations {
            sig,
            max_size,
            sorts,
            symbols,
            current: Interpretation { sizes, tables },
            started: false,
            done: false,
        })
    }

    fn next_tables(&mut self) -> bool {
        for f in &self.symbols {
            let n = self.current.size(self.sig.symbol(*f).result);
            for cell in self.current.tables[f.index()].iter_mut() {
                *cell += 1;
                if *cell < n {
                    return true;
                }
                *cell = 0;
            }
        }
        false
    }

    fn next_sizes(&mut self) -> bool {
        for s in &self.sorts {
            let cell = &mut self.current.sizes[s.0 as usize];
            *cell += 1;
            if *cell <= self.max_size {
                self.current.tables = fresh_tables(self.sig, &self.current.sizes);
                return true;
            }
            *cell = 1;
        }
        false
    }

    /// Lending form of `next`, without cloning.
    pub fn advance(&mut self) -> Option<&Interpretation> {
        if self.done {
            return None;
        }
        if self.started && !self.next_tables() && !self.next_sizes() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(&self.current)
    }
}

impl Iterator for Interpretations<'_> {
    type Item = Interpretation;

    fn next(&mut self) -> Option<Interpretation> {
        self.advance().cloned()
    }
}

fn count(sig: &Signature, max_size: u32, sorts: &[SortId], symbols: &[SymId]) -> u128 {
    let mut total: u128 = 0;
    let mut sizes = vec![1u32; sig.num_sorts()];
    sizes[0] = 2;
    loop {
        let mut n: u128 = 1;
        for f in symbols {
            let d = sig.symbol(*f);
            let cells = table_len(sig, &sizes, *f) as u32;
            let per = (sizes[d.result.0 as usize] as u128).saturating_pow(cells);
            n = n.saturating_mul(per);
        }
        total = total.saturating_add(n);
        let mut advanced = false;
        for s in sorts {
            let cell = &mut sizes[s.0 as usize];
            *cell += 1;
            if *cell <= max_size {
                advanced = true;
                break;
            }
            *cell = 1;
        }
        if !advanced {
            return total;
        }
    }
}

fn all_sorts(sig: &Signature) -> Vec<SortId> {
    sig.sort_ids().filter(|s| *s != SortId::BOOL).collect()
}

fn enumerable(sig: &Signature) -> Vec<SymId> {
    sig.symbol_ids()
        .filter(|f| *f != SymId::TRUE && *f != SymId::FALSE)
        .collect()
}

/// Number of interpretations [`enumerate_interpretations`] would produce.
pub fn interpretation_count(sig: &Signature, max_size: u32) -> u128 {
    count(sig, max_size, &all_sorts(sig), &enumerable(sig))
}

/// Every interpretation of `sig` with non-`bool` carriers of size
/// `1..=max_size`, in a fixed order.
pub fn enumerate_interpretations(sig: &Signature, max_size: u32) -> Result<Interpretations<'_>> {
    Interpretations::new(sig, max_size, all_sorts(sig), enumerable(sig))
}

/// Like [`enumerate_interpretations`] but only over the given sorts and
/// symbols; everything else is fixed.
pub fn enumerate_restricted<'a>(
    sig: &'a Signature,
    max_size: u32,
    sorts: &[SortId],
    symbols: &[SymId],
) -> Result<Interpretations<'a>> {
    let mut sorts: Vec<SortId> = sorts.iter().copied().filter(|s| *s != SortId::BOOL).collect();
    sorts.sort();
    sorts.dedup();
    let mut symbols: Vec<SymId> = symbols
        .iter()
        .copied()
        .filter(|f| *f != SymId::TRUE && *f != SymId::FALSE)
        .collect();
    symbols.sort();
    symbols.dedup();
    Interpretations::new(sig, max_size, sorts, symbols)
}

/// Truth of answer clauses `⟨C, p⟩`: the universal closure of `C ∨ F[ᾱ, p]`.
pub struct AnswerSemantics<'a> {
    problem: &'a Problem,
    formula: Formula,
}

impl<'a> AnswerSemantics<'a> {
    pub fn new(problem: &'a Problem) -> Self {
        AnswerSemantics {
            problem,
            formula: problem.grounded_formula(),
        }
    }

    /// `F[ᾱ, y ↦ value]`.
    pub fn formula_holds(&self, i: &Interpretation, value: u32) -> Result<bool> {
        let mut env = vec![(self.problem.spec.output, value)];
        eval_formula(&self.formula, &self.problem.signature, i, &mut env)
    }

    pub fn holds(&self, ac: &AnswerClause, i: &Interpretation) -> Result<bool> {
        let sig = &self.problem.signature;
        let vars: Vec<Var> = ac.vars().into_iter().collect();
        for_all_valuations(&vars, i, &mut Vec::new(), &mut |env| {
            if eval_clause(&ac.clause, sig, i, env)? {
                return Ok(true);
            }
            let value = eval_program(&ac.answer, sig, i, env)?;
            self.formula_holds(i, value)
        })
    }
}

pub fn holds_answer_clause(ac: &AnswerClause, problem: &Problem, i: &Interpretation) -> Result<bool> {
    AnswerSemantics::new(problem).holds(ac, i)
}

/// Outcome of bounded verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// No counterexample with carriers up to this size.
    VerifiedUpTo(u32),
    /// A model and input values where the program violates the formula.
    /// `inputs` follow the specification's input order, then any further
    /// free variables of the program in id order.
    Counterexample {
        interpretation: Interpretation,
        inputs: Vec<u32>,
    },
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::VerifiedUpTo(_))
    }
}

fn collect_formula_symbols(f: &Formula, out: &mut Vec<SymId>, sorts: &mut Vec<SortId>) {
    f.visit_terms(&mut |t| t.for_each_symbol(&mut |s| out.push(s)));
    for v in f.all_vars() {
        sorts.push(v.sort);
    }
}

/// Checks `∀x̄. F[x̄, p[x̄]]` in every interpretation up to `max_size`.
/// Free variables of `p` other than the inputs are quantified universally.
pub fn check_solution(spec: &Specification, p: &ProgramTerm, max_size: u32) -> Result<Verdict> {
    let sig = &spec.signature;
    let sort = p.check(sig)?;
    if sort != spec.output.sort {
        return Err(Error::Precondition("program does not have the output sort".into()));
    }
    if !p.is_computable(sig) {
        return Err(Error::Precondition("program is not computable".into()));
    }
    let spec = spec.encode_predicates();
    let mut vars = spec.inputs.clone();
    vars.extend(p.vars().into_iter().filter(|v| !spec.inputs.contains(v)));
    let mut symbols = Vec::new();
    let mut sorts: Vec<SortId> = vars.iter().map(|v| v.sort).collect();
    sorts.push(spec.output.sort);
    collect_formula_symbols(&spec.formula, &mut symbols, &mut sorts);
    p.for_each_symbol(&mut |s| symbols.push(s));
    for f in &symbols {
        let d = sig.symbol(*f);
        sorts.extend(d.args.iter().copied());
        sorts.push(d.result);
    }
    let mut models = enumerate_restricted(sig, max_size, &sorts, &symbols)?;
    while let Some(i) = models.advance() {
        let mut failing: Option<Vec<u32>> = None;
        for_all_valuations(&vars, i, &mut Vec::new(), &mut |env| {
            let value = eval_program(p, sig, i, env)?;
            let mut env = env.clone();
            env.push((spec.output, value));
            if eval_formula(&spec.formula, sig, i, &mut env)? {
                Ok(true)
            } else {
                failing = Some(vars.iter().map(|v| lookup(&env, *v).unwrap()).collect());
                Ok(false)
            }
        })?;
        if let Some(inputs) = failing {
            return Ok(Verdict::Counterexample {
                interpretation: i.clone(),
                inputs,
            });
        }
    }
    Ok(Verdict::VerifiedUpTo(max_size))
}
