//! The given-clause loop over answer clauses, program extraction and the
//! inference log.
//!
//! Every clause kept during a run gets an id: the initial clauses are
//! `0..n`, derived clauses are numbered in creation order. Each derived
//! clause has exactly one [`Inference`] record naming its premises, so the
//! log is a replayable proof object.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::time::{Duration, Instant};

use crate::calculus::{Calculus, Conclusion, Rule, Site};
use crate::clause::{is_tautology, AnswerClause, VariantKey};
use crate::error::{Error, Result};
use crate::order::{Precedence, Selection, TermOrder};
use crate::preprocess::Problem;
use crate::syntax::Printer;
use crate::term::{Expr, ProgramTerm, Substitutable, Substitution, Term, Var, VarGen};

/// Resource limits of one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Given-clause iterations.
    pub max_iterations: usize,
    /// Clauses kept (initial and derived).
    pub max_clauses: usize,
    pub timeout: Duration,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_iterations: 10_000,
            max_clauses: 100_000,
            timeout: Duration::from_secs(60),
        }
    }
}

/// Prover configuration.
#[derive(Debug, Clone)]
pub struct Config {
    pub order: TermOrder,
    pub selection: Selection,
    /// Apply `Abs` exhaustively before activation.
    pub abstraction: bool,
    /// Keep going after the first `⟨□, p⟩`.
    pub all_solutions: bool,
    /// Given clauses picked by age per round.
    pub age_picks: u32,
    /// Given clauses picked by weight per round.
    pub weight_picks: u32,
}

impl Config {
    pub fn new(order: TermOrder) -> Self {
        Config {
            order,
            selection: Selection::Maximal,
            abstraction: true,
            all_solutions: false,
            age_picks: 1,
            weight_picks: 1,
        }
    }
}

/// Which limit stopped the run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    Iterations,
    Clauses,
    Time,
}

impl fmt::Display for LimitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LimitKind::Iterations => "iteration limit",
            LimitKind::Clauses => "clause limit",
            LimitKind::Time => "time limit",
        })
    }
}

/// One derivation step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inference {
    /// Id of the derived clause.
    pub id: usize,
    pub rule: Rule,
    /// `[left, right]` for superposition, one premise otherwise.
    pub premises: Vec<usize>,
    pub site: Site,
    /// For superposition: the left premise was renamed apart with fresh
    /// variables starting at this id.
    pub renaming_base: Option<u32>,
    /// For `Abs`: the variable replacing the abstracted subterm.
    pub fresh: Option<Var>,
    pub unifier: Substitution,
    pub conclusion: AnswerClause,
}

/// A solution found during a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    /// Id of the clause `⟨□, p⟩`.
    pub clause: usize,
    /// The raw answer `p`.
    pub answer: ProgramTerm,
    /// The extracted and simplified program over the specification.
    pub program: ProgramTerm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SynthesisResult {
    /// The first solution found and the inferences it depends on.
    Success {
        program: ProgramTerm,
        proof: Vec<Inference>,
    },
    Saturated,
    LimitReached(LimitKind),
}

/// Counters of a run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub iterations: usize,
    /// Conclusions produced by the rules, including discarded ones.
    pub generated: usize,
    /// Clauses kept, including the initial ones.
    pub kept: usize,
    pub active: usize,
    pub tautologies: usize,
    pub duplicates: usize,
}

/// Everything a run produced.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub result: SynthesisResult,
    pub solutions: Vec<Solution>,
    /// Every kept clause by id.
    pub clauses: Vec<AnswerClause>,
    /// One record per derived clause, in id order.
    pub log: Vec<Inference>,
    /// Number of initial clauses; their ids are `0..initial`.
    pub initial: usize,
    pub stats: Stats,
}

impl Outcome {
    /// The inferences `id` depends on, in id order.
    pub fn proof_of(&self, id: usize) -> Vec<Inference> {
        let mut needed = BTreeSet::new();
        let mut stack = vec![id];
        while let Some(i) = stack.pop() {
            if i < self.initial || !needed.insert(i) {
                continue;
            }
            stack.extend(self.log[i - self.initial].premises.iter().copied());
        }
        needed
            .into_iter()
            .map(|i| self.log[i - self.initial].clone())
            .collect()
    }
}

/// Given-clause priority: smaller clauses first, ties by age. The empty
/// clause wins regardless of age.
pub fn clause_priority(ac: &AnswerClause, age: usize) -> (usize, usize) {
    if ac.is_empty() {
        (0, 0)
    } else {
        (ac.symbol_count(), age)
    }
}

/// Collapses `ite(c, q, q)` to `q` and `ite(t = t, q, r)` to `q`, bottom-up.
pub fn simplify_program(p: &ProgramTerm) -> ProgramTerm {
    match p {
        ProgramTerm::Leaf(_) => p.clone(),
        ProgramTerm::Ite {
            lhs,
            rhs,
            then_branch,
            else_branch,
        } => {
            let then_branch = simplify_program(then_branch);
            if lhs == rhs {
                return then_branch;
            }
            let else_branch = simplify_program(else_branch);
            if then_branch == else_branch {
                return then_branch;
            }
            ProgramTerm::ite(lhs.clone(), rhs.clone(), then_branch, else_branch)
        }
    }
}

/// Turns the answer of `⟨□, p⟩` into a program over the specification:
/// input constants become input variables and any other free variable is
/// replaced by the least computable constant of its sort in `prec`.
pub fn extract_program(success: &AnswerClause, problem: &Problem, prec: &Precedence) -> Result<ProgramTerm> {
    let spec = &problem.spec;
    let raw = || Printer::new(&problem.signature).program(&success.answer);
    if !success.is_empty() {
        return Err(Error::Precondition("extraction from a non-empty clause".into()));
    }
    let mut p = success.answer.clone();
    let mut grounding = Substitution::new();
    for v in p.vars() {
        let least = spec
            .signature
            .symbol_ids()
            .filter(|f| {
                let d = spec.signature.symbol(*f);
                d.computable && d.args.is_empty() && d.result == v.sort
            })
            .min_by_key(|f| prec.rank(*f));
        match least {
            Some(c) => grounding.insert(v, Term::constant(c)),
            None => {
                return Err(Error::Extraction {
                    program: raw(),
                    reason: format!(
                        "no computable constant of sort `{}` to ground a free variable",
                        spec.signature.sort_name(v.sort)
                    ),
                })
            }
        }
    }
    p = p.apply(&grounding);
    for (x, a) in spec.inputs.iter().zip(&problem.input_skolems) {
        let (a, x) = (Term::constant(*a), Term::var(*x));
        p = p.map_terms(&mut |t| t.replace_all(&a, &x));
    }
    if p.check(&spec.signature).is_err() || !p.is_computable(&spec.signature) {
        return Err(Error::Extraction {
            program: raw(),
            reason: "answer is not a computable program over the specification".into(),
        });
    }
    Ok(p)
}

/// The saturation state: kept clauses, the passive queues and the active set.
pub struct ProverState<'a> {
    problem: &'a Problem,
    config: &'a Config,
    limits: Limits,
    vars: VarGen,
    clauses: Vec<AnswerClause>,
    log: Vec<Inference>,
    initial: usize,
    seen: HashSet<VariantKey>,
    by_weight: BTreeSet<((usize, usize), usize)>,
    by_age: BTreeSet<usize>,
    active: Vec<usize>,
    solutions: Vec<Solution>,
    stats: Stats,
    picks: u32,
}

enum Step {
    Continue,
    Stop(SynthesisResult),
}

impl<'a> ProverState<'a> {
    pub fn new(problem: &'a Problem, config: &'a Config, limits: Limits) -> Self {
        let mut vars = problem.vars.clone();
        for c in &problem.clauses {
            vars.reserve(&c.vars());
        }
        ProverState {
            problem,
            config,
            limits,
            vars,
            clauses: Vec::new(),
            log: Vec::new(),
            initial: 0,
            seen: HashSet::new(),
            by_weight: BTreeSet::new(),
            by_age: BTreeSet::new(),
            active: Vec::new(),
            solutions: Vec::new(),
            stats: Stats::default(),
            picks: 0,
        }
    }

    fn calculus(&self) -> Calculus<'a> {
        Calculus::new(&self.problem.signature, &self.config.order, self.config.selection)
    }

    /// Stores a clause; returns its id.
    fn store(&mut self, ac: AnswerClause, origin: Option<Inference>) -> usize {
        let id = self.clauses.len();
        self.seen.insert(ac.variant_key());
        self.clauses.push(ac);
        if let Some(mut inf) = origin {
            inf.id = id;
            self.log.push(inf);
        }
        self.stats.kept += 1;
        id
    }

    fn derive(&mut self, premises: Vec<usize>, renaming_base: Option<u32>, fresh: Option<Var>, c: Conclusion) -> usize {
        let inf = Inference {
            id: 0,
            rule: c.rule,
            premises,
            site: c.site,
            renaming_base,
            fresh,
            unifier: c.unifier,
            conclusion: c.clause.clone(),
        };
        self.store(c.clause, Some(inf))
    }

    fn enqueue(&mut self, id: usize) {
        let prio = clause_priority(&self.clauses[id], id);
        self.by_weight.insert((prio, id));
        self.by_age.insert(id);
    }

    fn pop_given(&mut self) -> Option<usize> {
        let round = self.config.age_picks + self.config.weight_picks;
        let by_age = self.picks % round.max(1) < self.config.age_picks;
        self.picks = self.picks.wrapping_add(1);
        let id = if by_age {
            *self.by_age.first()?
        } else {
            self.by_weight.first()?.1
        };
        self.by_age.remove(&id);
        let prio = clause_priority(&self.clauses[id], id);
        self.by_weight.remove(&(prio, id));
        Some(id)
    }

    /// Records a success clause; stops unless all solutions are wanted.
    fn found(&mut self, id: usize) -> Result<Step> {
        let ac = &self.clauses[id];
        let raw = extract_program(ac, self.problem, self.config.order.precedence())?;
        let solution = Solution {
            clause: id,
            answer: ac.answer.clone(),
            program: simplify_program(&raw),
        };
        self.solutions.push(solution);
        if self.config.all_solutions {
            Ok(Step::Continue)
        } else {
            Ok(Step::Stop(self.success()))
        }
    }

    fn success(&self) -> SynthesisResult {
        let first = &self.solutions[0];
        SynthesisResult::Success {
            program: first.program.clone(),
            proof: self.outcome_view().proof_of(first.clause),
        }
    }

    fn outcome_view(&self) -> Outcome {
        Outcome {
            result: SynthesisResult::Saturated,
            solutions: Vec::new(),
            clauses: Vec::new(),
            log: self.log.clone(),
            initial: self.initial,
            stats: self.stats,
        }
    }

    /// Handles a fresh conclusion: discards tautologies and variants,
    /// reports the empty clause, queues everything else.
    fn add_conclusion(
        &mut self,
        premises: Vec<usize>,
        renaming_base: Option<u32>,
        c: Conclusion,
    ) -> Result<Step> {
        self.stats.generated += 1;
        if is_tautology(&c.clause.clause) {
            self.stats.tautologies += 1;
            return Ok(Step::Continue);
        }
        if self.seen.contains(&c.clause.variant_key()) {
            self.stats.duplicates += 1;
            return Ok(Step::Continue);
        }
        let empty = c.clause.is_empty();
        let id = self.derive(premises, renaming_base, None, c);
        if empty {
            return self.found(id);
        }
        self.enqueue(id);
        Ok(Step::Continue)
    }

    fn check_limits(&self, start: Instant) -> Option<LimitKind> {
        if self.stats.iterations >= self.limits.max_iterations {
            Some(LimitKind::Iterations)
        } else if self.clauses.len() >= self.limits.max_clauses {
            Some(LimitKind::Clauses)
        } else if start.elapsed() >= self.limits.timeout {
            Some(LimitKind::Time)
        } else {
            None
        }
    }

    /// Condensation and exhaustive abstraction of the given clause; returns
    /// the id of the clause to activate, or `None` if it was discarded.
    fn prepare(&mut self, mut id: usize) -> Result<Option<usize>> {
        let calc = self.calculus();
        if let Some(c) = calc.condense(&self.clauses[id]) {
            id = self.derive(vec![id], None, None, c);
        }
        if self.config.abstraction {
            let (_, steps) = calc.abstract_fixpoint(&self.clauses[id], &mut self.vars)?;
            if !steps.is_empty() {
                let last = steps.last().unwrap().0.clause.variant_key();
                if self.seen.contains(&last) {
                    self.stats.duplicates += 1;
                    return Ok(None);
                }
                for (c, x) in steps {
                    id = self.derive(vec![id], None, Some(x), c);
                }
            }
        }
        if is_tautology(&self.clauses[id].clause) {
            self.stats.tautologies += 1;
            return Ok(None);
        }
        Ok(Some(id))
    }

    fn renamed(&mut self, id: usize) -> (AnswerClause, u32) {
        let base = self.vars.peek();
        let ren = self.vars.renaming(&self.clauses[id]);
        (self.clauses[id].apply(&ren), base)
    }

    fn activate(&mut self, given: usize) -> Result<Step> {
        self.active.push(given);
        self.stats.active += 1;
        let calc = self.calculus();
        let g = self.clauses[given].clone();
        for c in calc.unary_inferences(&g) {
            if let Step::Stop(r) = self.add_conclusion(vec![given], None, c)? {
                return Ok(Step::Stop(r));
            }
        }
        for partner in self.active.clone() {
            let mut pairs = vec![(partner, given)];
            if partner != given {
                pairs.push((given, partner));
            }
            for (left, right) in pairs {
                let (renamed, base) = self.renamed(left);
                let right_clause = self.clauses[right].clone();
                for c in calc.binary_inferences(&renamed, &right_clause) {
                    if let Step::Stop(r) = self.add_conclusion(vec![left, right], Some(base), c)? {
                        return Ok(Step::Stop(r));
                    }
                }
            }
        }
        Ok(Step::Continue)
    }

    fn finish(self, result: SynthesisResult) -> Outcome {
        Outcome {
            result,
            solutions: self.solutions,
            clauses: self.clauses,
            log: self.log,
            initial: self.initial,
            stats: self.stats,
        }
    }

    /// Runs the loop to success, saturation or a limit.
    pub fn run(mut self) -> Result<Outcome> {
        let start = Instant::now();
        for ac in self.problem.clauses.clone() {
            self.store(ac, None);
        }
        self.initial = self.clauses.len();
        for id in 0..self.initial {
            if self.clauses[id].is_empty() {
                if let Step::Stop(r) = self.found(id)? {
                    return Ok(self.finish(r));
                }
            } else {
                self.enqueue(id);
            }
        }
        loop {
            if let Some(kind) = self.check_limits(start) {
                let result = if self.solutions.is_empty() {
                    SynthesisResult::LimitReached(kind)
                } else {
                    self.success()
                };
                return Ok(self.finish(result));
            }
            let Some(given) = self.pop_given() else {
                let result = if self.solutions.is_empty() {
                    SynthesisResult::Saturated
                } else {
                    self.success()
                };
                return Ok(self.finish(result));
            };
            self.stats.iterations += 1;
            let Some(given) = self.prepare(given)? else {
                continue;
            };
            if let Step::Stop(r) = self.activate(given)? {
                return Ok(self.finish(r));
            }
        }
    }
}

/// Saturates the initial clauses of `problem`.
pub fn saturate(problem: &Problem, config: &Config, limits: Limits) -> Result<Outcome> {
    ProverState::new(problem, config, limits).run()
}
