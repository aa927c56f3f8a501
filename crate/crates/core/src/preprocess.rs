//! From a specification `∀x̄ ∃y. F[x̄, y]` to the initial answer clauses.
//!
//! The inputs `x̄` become fresh computable constants `ᾱ`; then `¬F[ᾱ, y]`
//! (with `y` implicitly universal) is put in negation normal form,
//! skolemized outermost-first with uncomputable Skolem functions, and
//! clausified by distribution. Every resulting clause carries the answer `y`.

use crate::clause::{AnswerClause, Clause, Literal};
use crate::error::Result;
use crate::formula::{Formula, Specification};
use crate::term::{
    ProgramTerm, Signature, SortId, Substitution, SymId, SymbolDecl, Term, Var, VarGen,
};

/// The initial clause set together with the signature it lives in.
#[derive(Debug, Clone)]
pub struct Problem {
    /// The specification with predicate atoms encoded.
    pub spec: Specification,
    /// The specification signature extended by all Skolem symbols.
    pub signature: Signature,
    /// `αᵢ` for each input `xᵢ`, in input order.
    pub input_skolems: Vec<SymId>,
    /// The output variable `y`, also the answer of every initial clause.
    pub answer_var: Var,
    pub clauses: Vec<AnswerClause>,
    /// Fresh-variable source positioned above every variable in use.
    pub vars: VarGen,
}

impl Problem {
    /// Adds `⟨true ≉ false, y⟩`.
    pub fn with_bool_axiom(mut self) -> Self {
        self.clauses.push(AnswerClause::new(
            Clause::new(vec![Literal::neq(
                Term::constant(SymId::TRUE),
                Term::constant(SymId::FALSE),
            )]),
            ProgramTerm::leaf(Term::var(self.answer_var)),
        ));
        self
    }

    /// `F[ᾱ, y]`: the encoded body with inputs replaced by their constants.
    pub fn grounded_formula(&self) -> Formula {
        let sigma: Substitution = self
            .spec
            .inputs
            .iter()
            .zip(&self.input_skolems)
            .map(|(x, a)| (*x, Term::constant(*a)))
            .collect();
        self.spec.formula.apply(&sigma)
    }
}

#[derive(Debug, Clone)]
enum Nnf {
    Lit(Literal),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
    Forall(Vec<Var>, Box<Nnf>),
    Exists(Vec<Var>, Box<Nnf>),
}

fn nnf(f: &Formula, positive: bool) -> Nnf {
    let lit = |a: &Term, b: &Term| {
        Nnf::Lit(Literal {
            lhs: a.clone(),
            rhs: b.clone(),
            positive,
        })
    };
    let junction = |conj: bool, parts: Vec<Nnf>| {
        if conj {
            Nnf::And(parts)
        } else {
            Nnf::Or(parts)
        }
    };
    match f {
        Formula::Atom(t) => lit(t, &Term::constant(SymId::TRUE)),
        Formula::Eq(a, b) => lit(a, b),
        Formula::Not(g) => nnf(g, !positive),
        Formula::And(gs) => junction(positive, gs.iter().map(|g| nnf(g, positive)).collect()),
        Formula::Or(gs) => junction(!positive, gs.iter().map(|g| nnf(g, positive)).collect()),
        Formula::Implies(a, b) => junction(!positive, vec![nnf(a, !positive), nnf(b, positive)]),
        Formula::Iff(a, b) => {
            // a ⇔ b ≡ (¬a ∨ b) ∧ (a ∨ ¬b);  ¬(a ⇔ b) ≡ (a ∨ b) ∧ (¬a ∨ ¬b)
            let (a1, b1) = if positive {
                (nnf(a, false), nnf(b, true))
            } else {
                (nnf(a, true), nnf(b, true))
            };
            let (a2, b2) = if positive {
                (nnf(a, true), nnf(b, false))
            } else {
                (nnf(a, false), nnf(b, false))
            };
            Nnf::And(vec![Nnf::Or(vec![a1, b1]), Nnf::Or(vec![a2, b2])])
        }
        Formula::Forall(vs, g) | Formula::Exists(vs, g) => {
            let universal = matches!(f, Formula::Forall(..)) == positive;
            let body = Box::new(nnf(g, positive));
            if universal {
                Nnf::Forall(vs.clone(), body)
            } else {
                Nnf::Exists(vs.clone(), body)
            }
        }
    }
}

struct Skolemizer<'a> {
    sig: &'a mut Signature,
    counter: usize,
}

impl Skolemizer<'_> {
    fn fresh_symbol(&mut self, args: Vec<SortId>, result: SortId, computable: bool, base: String) -> Result<SymId> {
        let name = self.sig.fresh_symbol_name(&base);
        self.sig.add_symbol(SymbolDecl {
            name,
            args,
            result,
            computable,
        })
    }

    /// Removes quantifiers; `scope` lists the universal variables in scope.
    fn run(&mut self, f: Nnf, scope: &mut Vec<Var>, sigma: &mut Substitution) -> Result<Nnf> {
        Ok(match f {
            Nnf::Lit(l) => Nnf::Lit(Literal {
                lhs: sigma.apply_term(&l.lhs),
                rhs: sigma.apply_term(&l.rhs),
                positive: l.positive,
            }),
            Nnf::And(gs) => Nnf::And(
                gs.into_iter()
                    .map(|g| self.run(g, scope, sigma))
                    .collect::<Result<_>>()?,
            ),
            Nnf::Or(gs) => Nnf::Or(
                gs.into_iter()
                    .map(|g| self.run(g, scope, sigma))
                    .collect::<Result<_>>()?,
            ),
            Nnf::Forall(vs, g) => {
                let mark = scope.len();
                scope.extend(vs);
                let out = self.run(*g, scope, sigma)?;
                scope.truncate(mark);
                out
            }
            Nnf::Exists(vs, g) => {
                for v in vs {
                    let base = format!("sk{}", self.counter);
                    self.counter += 1;
                    let f = self.fresh_symbol(scope.iter().map(|u| u.sort).collect(), v.sort, false, base)?;
                    let args = scope.iter().map(|u| Term::var(*u)).collect();
                    sigma.insert(v, Term::app(f, args));
                }
                self.run(*g, scope, sigma)?
            }
        })
    }
}

fn cnf(f: &Nnf) -> Vec<Vec<Literal>> {
    match f {
        Nnf::Lit(l) => vec![vec![l.clone()]],
        Nnf::And(gs) => gs.iter().flat_map(cnf).collect(),
        Nnf::Or(gs) => gs.iter().fold(vec![Vec::new()], |acc, g| {
            let part = cnf(g);
            acc.iter()
                .flat_map(|c| {
                    part.iter().map(move |d| {
                        let mut c = c.clone();
                        c.extend(d.iter().cloned());
                        c
                    })
                })
                .collect()
        }),
        Nnf::Forall(..) | Nnf::Exists(..) => unreachable!("skolemized before clausification"),
    }
}

/// Computes the initial set of answer clauses of `spec`.
pub fn preprocess(spec: &Specification) -> Result<Problem> {
    spec.validate()?;
    let spec = spec.encode_predicates();
    let mut signature = spec.signature.clone();
    let mut input_skolems = Vec::new();
    let mut sigma = Substitution::new();
    let mut sk = Skolemizer {
        sig: &mut signature,
        counter: 0,
    };
    for x in &spec.inputs {
        let base = format!("sk_{}", spec.var_name(*x));
        let a = sk.fresh_symbol(Vec::new(), x.sort, true, base)?;
        input_skolems.push(a);
        sigma.insert(*x, Term::constant(a));
    }
    let negated = nnf(&spec.formula, false);
    let mut scope = vec![spec.output];
    let matrix = sk.run(negated, &mut scope, &mut sigma)?;
    let answer = ProgramTerm::leaf(Term::var(spec.output));
    let clauses: Vec<AnswerClause> = cnf(&matrix)
        .into_iter()
        .map(|lits| AnswerClause::new(Clause::new(lits), answer.clone()))
        .collect();
    let vars = VarGen::starting_at(spec.next_var_id());
    Ok(Problem {
        answer_var: spec.output,
        spec,
        signature,
        input_skolems,
        clauses,
        vars,
    })
}
