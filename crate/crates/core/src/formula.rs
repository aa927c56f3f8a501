//! First-order formulas and synthesis specifications `∀x̄ ∃y. F[x̄, y]`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::term::{Expr, Signature, SortId, SymId, Substitution, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    /// A `bool`-valued term in formula position, i.e. a predicate atom.
    Atom(Term),
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(Vec<Var>, Box<Formula>),
    Exists(Vec<Var>, Box<Formula>),
}

impl Formula {
    pub fn negation(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        fn go(f: &Formula, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
            let term = |t: &Term, bound: &Vec<Var>, out: &mut BTreeSet<Var>| {
                out.extend(t.vars().into_iter().filter(|v| !bound.contains(v)));
            };
            match f {
                Formula::Atom(t) => term(t, bound, out),
                Formula::Eq(a, b) => {
                    term(a, bound, out);
                    term(b, bound, out);
                }
                Formula::Not(g) => go(g, bound, out),
                Formula::And(gs) | Formula::Or(gs) => gs.iter().for_each(|g| go(g, bound, out)),
                Formula::Implies(a, b) | Formula::Iff(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
                Formula::Forall(vs, g) | Formula::Exists(vs, g) => {
                    let n = bound.len();
                    bound.extend(vs);
                    go(g, bound, out);
                    bound.truncate(n);
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Every variable, bound or free.
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit_terms(&mut |t| out.extend(t.vars()));
        self.visit_binders(&mut |vs| out.extend(vs.iter().copied()));
        out
    }

    pub fn visit_terms(&self, f: &mut dyn FnMut(&Term)) {
        match self {
            Formula::Atom(t) => f(t),
            Formula::Eq(a, b) => {
                f(a);
                f(b);
            }
            Formula::Not(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => g.visit_terms(f),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().for_each(|g| g.visit_terms(f)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.visit_terms(f);
                b.visit_terms(f);
            }
        }
    }

    fn visit_binders(&self, f: &mut dyn FnMut(&[Var])) {
        match self {
            Formula::Atom(_) | Formula::Eq(..) => {}
            Formula::Not(g) => g.visit_binders(f),
            Formula::Forall(vs, g) | Formula::Exists(vs, g) => {
                f(vs);
                g.visit_binders(f);
            }
            Formula::And(gs) | Formula::Or(gs) => gs.iter().for_each(|g| g.visit_binders(f)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.visit_binders(f);
                b.visit_binders(f);
            }
        }
    }

    /// Applies `sigma` to free occurrences. Bound variables carry ids unique
    /// to their binder, so no capture can occur for well-formed inputs.
    pub fn apply(&self, sigma: &Substitution) -> Formula {
        match self {
            Formula::Atom(t) => Formula::Atom(sigma.apply_term(t)),
            Formula::Eq(a, b) => Formula::Eq(sigma.apply_term(a), sigma.apply_term(b)),
            Formula::Not(g) => Formula::negation(g.apply(sigma)),
            Formula::And(gs) => Formula::And(gs.iter().map(|g| g.apply(sigma)).collect()),
            Formula::Or(gs) => Formula::Or(gs.iter().map(|g| g.apply(sigma)).collect()),
            Formula::Implies(a, b) => Formula::implies(a.apply(sigma), b.apply(sigma)),
            Formula::Iff(a, b) => Formula::Iff(Box::new(a.apply(sigma)), Box::new(b.apply(sigma))),
            Formula::Forall(vs, g) => Formula::Forall(vs.clone(), Box::new(g.apply(sigma))),
            Formula::Exists(vs, g) => Formula::Exists(vs.clone(), Box::new(g.apply(sigma))),
        }
    }

    /// Rewrites every predicate atom `P(t̄)` into `P(t̄) ≈ true`.
    pub fn encode_predicates(&self) -> Formula {
        match self {
            Formula::Atom(t) => Formula::Eq(t.clone(), Term::constant(SymId::TRUE)),
            Formula::Eq(..) => self.clone(),
            Formula::Not(g) => Formula::negation(g.encode_predicates()),
            Formula::And(gs) => Formula::And(gs.iter().map(Formula::encode_predicates).collect()),
            Formula::Or(gs) => Formula::Or(gs.iter().map(Formula::encode_predicates).collect()),
            Formula::Implies(a, b) => Formula::implies(a.encode_predicates(), b.encode_predicates()),
            Formula::Iff(a, b) => Formula::Iff(
                Box::new(a.encode_predicates()),
                Box::new(b.encode_predicates()),
            ),
            Formula::Forall(vs, g) => Formula::Forall(vs.clone(), Box::new(g.encode_predicates())),
            Formula::Exists(vs, g) => Formula::Exists(vs.clone(), Box::new(g.encode_predicates())),
        }
    }

    fn check(&self, sig: &Signature) -> Result<()> {
        match self {
            Formula::Atom(t) => {
                if t.check(sig)? != SortId::BOOL {
                    return Err(Error::SortMismatch(
                        "atom in formula position must have sort bool".into(),
                    ));
                }
                Ok(())
            }
            Formula::Eq(a, b) => {
                if a.check(sig)? != b.check(sig)? {
                    return Err(Error::SortMismatch("equation sides differ in sort".into()));
                }
                Ok(())
            }
            Formula::Not(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => g.check(sig),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().try_for_each(|g| g.check(sig)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.check(sig)?;
                b.check(sig)
            }
        }
    }
}

/// `⟨Σc, ∀x̄ ∃y. F[x̄, y]⟩`; computability is recorded on the symbols.
#[derive(Debug, Clone)]
pub struct Specification {
    pub signature: Signature,
    pub inputs: Vec<Var>,
    pub output: Var,
    /// The body `F`, with `inputs` and `output` free.
    pub formula: Formula,
    /// Source names of the input, output and bound variables.
    pub var_names: BTreeMap<Var, String>,
}

impl Specification {
    pub fn new(
        signature: Signature,
        inputs: Vec<Var>,
        output: Var,
        formula: Formula,
        var_names: BTreeMap<Var, String>,
    ) -> Result<Self> {
        let spec = Specification {
            signature,
            inputs,
            output,
            formula,
            var_names,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        self.formula.check(&self.signature)?;
        let mut allowed: BTreeSet<Var> = self.inputs.iter().copied().collect();
        allowed.insert(self.output);
        if allowed.len() != self.inputs.len() + 1 {
            return Err(Error::Config("input and output variables must be distinct".into()));
        }
        if let Some(v) = self.formula.free_vars().difference(&allowed).next() {
            return Err(Error::Config(format!(
                "formula has free variable `{}` that is neither input nor output",
                self.var_name(*v)
            )));
        }
        Ok(())
    }

    pub fn var_name(&self, v: Var) -> String {
        self.var_names
            .get(&v)
            .cloned()
            .unwrap_or_else(|| format!("?{}", v.id))
    }

    pub fn output_sort(&self) -> SortId {
        self.output.sort
    }

    /// Largest variable id in use, plus one.
    pub fn next_var_id(&self) -> u32 {
        self.formula
            .all_vars()
            .iter()
            .chain(&self.inputs)
            .chain(std::iter::once(&self.output))
            .map(|v| v.id + 1)
            .max()
            .unwrap_or(0)
    }

    /// Same specification with predicate atoms turned into equations.
    pub fn encode_predicates(&self) -> Specification {
        Specification {
            formula: self.formula.encode_predicates(),
            ..self.clone()
        }
    }
}

/// Free-function form of [`Specification::encode_predicates`].
pub fn encode_predicates(spec: &Specification) -> Specification {
    spec.encode_predicates()
}
