//! The inference rules on answer clauses.
//!
//! * `SupC`: superposition whose answer branches on the rewriting equation,
//!   `ite(l = r, q, p)`; allowed when that program is computable.
//! * `SupU`: superposition that also unifies the two answers; allowed when
//!   the common answer is a computable simple term.
//! * `EqRes` and `EqFac`: equality resolution and factoring, allowed when the
//!   instantiated answer is computable.
//! * `Abs`: replaces a maximal computable subterm `k` of a selected,
//!   potentially uncomputable literal by a fresh `x`, adding `x ≉ k`. It
//!   replaces its premise and is applied exhaustively before other rules.
//!
//! All maximal literals are selected (see [`Selection`]). Ordering side
//! conditions are checked after unification.

use serde::{Deserialize, Serialize};

use crate::clause::{AnswerClause, Clause, Literal, Side};
use crate::error::{Error, Result};
use crate::order::{selected_literals, Selection, TermOrder};
use crate::term::{
    Expr, Position, ProgramTerm, Signature, Substitutable, Substitution, Term, Var, VarGen,
};
use crate::unify::mgu;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    SupC,
    SupU,
    EqRes,
    EqFac,
    Abs,
    /// Removal of duplicate literals.
    Condense,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::SupC => "SupC",
            Rule::SupU => "SupU",
            Rule::EqRes => "EqRes",
            Rule::EqFac => "EqFac",
            Rule::Abs => "Abs",
            Rule::Condense => "Condense",
        }
    }
}

/// Where in the premises a rule was applied.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Site {
    /// `l ≈ r` is literal `left_lit` read from `left_side`; the rewritten
    /// literal `s[l'] ⋈ t` is `right_lit` with `s` on `right_side`, and `l'`
    /// sits at `position` inside `s`.
    Sup {
        left_lit: usize,
        left_side: Side,
        right_lit: usize,
        right_side: Side,
        position: Position,
    },
    EqRes {
        lit: usize,
    },
    /// `s ≈ t` is `lit` with `s` on `side`; `l ≈ r` is `other` with `l` on
    /// `other_side`.
    EqFac {
        lit: usize,
        side: Side,
        other: usize,
        other_side: Side,
    },
    /// `k` is at `position` inside side `side` of literal `lit`.
    Abs {
        lit: usize,
        side: Side,
        position: Position,
    },
    Condense,
}

/// The result of one rule application.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conclusion {
    pub rule: Rule,
    pub site: Site,
    pub unifier: Substitution,
    pub clause: AnswerClause,
}

/// Rule application under a fixed signature, order and selection.
#[derive(Clone, Copy)]
pub struct Calculus<'a> {
    pub sig: &'a Signature,
    pub order: &'a TermOrder,
    pub selection: Selection,
}

/// Syntactic test standing in for "some θ makes `s[k]θ` uncomputable while
/// `kθ` stays computable": `k` is computable, and `s` is uncomputable or has
/// a variable outside `k` whose sort admits an uncomputable term.
pub fn abstraction_condition(sig: &Signature, s: &Term, k: &Term) -> bool {
    if !k.is_computable(sig) {
        return false;
    }
    if !s.is_computable(sig) {
        return true;
    }
    let reach = sig.sorts_with_uncomputable_terms();
    let inner = k.vars();
    s.vars()
        .iter()
        .any(|v| !inner.contains(v) && reach[v.sort.0 as usize])
}

fn literals_without(c: &Clause, skip: &[usize]) -> Vec<Literal> {
    c.others(skip).cloned().collect()
}

impl<'a> Calculus<'a> {
    pub fn new(sig: &'a Signature, order: &'a TermOrder, selection: Selection) -> Self {
        Calculus {
            sig,
            order,
            selection,
        }
    }

    pub fn selected(&self, c: &Clause) -> Vec<usize> {
        if c.is_empty() {
            return Vec::new();
        }
        selected_literals(c, self.order, self.selection).expect("non-empty clause")
    }

    /// `a ⪰ b` under the term order.
    fn geq(&self, a: &Term, b: &Term) -> bool {
        self.order.compare(a, b).is_greater_eq()
    }

    fn same_sort(&self, a: &Term, b: &Term) -> bool {
        a.sort(self.sig) == b.sort(self.sig)
    }

    /// Both superposition variants at one site. `left` must already be
    /// variable-disjoint from `right`.
    pub fn superpose(
        &self,
        rule: Rule,
        left: &AnswerClause,
        right: &AnswerClause,
        site: &Site,
    ) -> Option<Conclusion> {
        let Site::Sup {
            left_lit,
            left_side,
            right_lit,
            right_side,
            position,
        } = site
        else {
            return None;
        };
        let eq = left.clause.literals.get(*left_lit)?;
        let into = right.clause.literals.get(*right_lit)?;
        if !eq.positive
            || !self.selected(&left.clause).contains(left_lit)
            || !self.selected(&right.clause).contains(right_lit)
        {
            return None;
        }
        let l = eq.side(*left_side);
        let r = eq.side(left_side.other());
        let s = into.side(*right_side);
        let t = into.side(right_side.other());
        let l_prime = s.subterm(position)?;
        if l_prime.is_var() || !self.same_sort(l, l_prime) {
            return None;
        }
        let (p, q) = (&left.answer, &right.answer);
        let sigma = match rule {
            Rule::SupC => mgu(&[(l.clone(), l_prime.clone())]).ok()?,
            Rule::SupU => {
                let (p, q) = (p.as_simple()?, q.as_simple()?);
                mgu(&[(l.clone(), l_prime.clone()), (p.clone(), q.clone())]).ok()?
            }
            _ => return None,
        };
        let (l_s, r_s) = (sigma.apply_term(l), sigma.apply_term(r));
        let (s_s, t_s) = (sigma.apply_term(s), sigma.apply_term(t));
        if self.geq(&r_s, &l_s) || self.geq(&t_s, &s_s) {
            return None;
        }
        let answer = match rule {
            Rule::SupC => {
                let a = ProgramTerm::ite(l.clone(), r.clone(), q.clone(), p.clone()).apply(&sigma);
                if !a.is_computable(self.sig) {
                    return None;
                }
                a
            }
            _ => {
                let a = p.apply(&sigma);
                if !a.is_computable(self.sig) {
                    return None;
                }
                a
            }
        };
        let rewritten = into.with_side(*right_side, s.replace_at(position, r.clone()));
        let mut lits = vec![rewritten];
        lits.extend(literals_without(&left.clause, &[*left_lit]));
        lits.extend(literals_without(&right.clause, &[*right_lit]));
        let clause = Clause::new(lits).apply(&sigma);
        Some(Conclusion {
            rule,
            site: site.clone(),
            unifier: sigma,
            clause: AnswerClause::new(clause, answer),
        })
    }

    pub fn eq_res(&self, premise: &AnswerClause, site: &Site) -> Option<Conclusion> {
        let Site::EqRes { lit } = site else {
            return None;
        };
        let l = premise.clause.literals.get(*lit)?;
        if l.positive || !self.selected(&premise.clause).contains(lit) {
            return None;
        }
        let sigma = mgu(&[(l.lhs.clone(), l.rhs.clone())]).ok()?;
        let answer = premise.answer.apply(&sigma);
        if !answer.is_computable(self.sig) {
            return None;
        }
        let clause = Clause::new(literals_without(&premise.clause, &[*lit])).apply(&sigma);
        Some(Conclusion {
            rule: Rule::EqRes,
            site: site.clone(),
            unifier: sigma,
            clause: AnswerClause::new(clause, answer),
        })
    }

    pub fn eq_factor(&self, premise: &AnswerClause, site: &Site) -> Option<Conclusion> {
        let Site::EqFac {
            lit,
            side,
            other,
            other_side,
        } = site
        else {
            return None;
        };
        let c = &premise.clause;
        let (a, b) = (c.literals.get(*lit)?, c.literals.get(*other)?);
        if lit == other || !a.positive || !b.positive || !self.selected(c).contains(lit) {
            return None;
        }
        let (s, t) = (a.side(*side), a.side(side.other()));
        let (l, r) = (b.side(*other_side), b.side(other_side.other()));
        if !self.same_sort(s, l) {
            return None;
        }
        let sigma = mgu(&[(s.clone(), l.clone())]).ok()?;
        let (s_s, t_s, r_s) = (
            sigma.apply_term(s),
            sigma.apply_term(t),
            sigma.apply_term(r),
        );
        if self.geq(&t_s, &s_s) || self.order.compare(&r_s, &t_s).is_greater() {
            return None;
        }
        let answer = premise.answer.apply(&sigma);
        if !answer.is_computable(self.sig) {
            return None;
        }
        let mut lits = vec![a.clone(), Literal::neq(t.clone(), r.clone())];
        lits.extend(literals_without(c, &[*lit, *other]));
        Some(Conclusion {
            rule: Rule::EqFac,
            site: site.clone(),
            unifier: sigma.clone(),
            clause: AnswerClause::new(Clause::new(lits).apply(&sigma), answer),
        })
    }

    /// The first site at which `Abs` applies: selected literals in order,
    /// both sides, subterms outermost-first and left to right.
    pub fn abs_site(&self, premise: &AnswerClause) -> Option<Site> {
        let c = &premise.clause;
        for lit in self.selected(c) {
            let l = &c.literals[lit];
            for side in Side::BOTH {
                let (s, t) = (l.side(side), l.side(side.other()));
                if self.order.compare(s, t).is_less_eq() {
                    continue;
                }
                let positions = s.nonvar_positions();
                for pos in positions.iter().filter(|p| !p.is_empty()) {
                    let k = s.subterm(pos).expect("own position");
                    if !abstraction_condition(self.sig, s, k) {
                        continue;
                    }
                    let maximal = (0..pos.len()).all(|n| {
                        let sup = s.subterm(&pos[..n]).expect("prefix");
                        !abstraction_condition(self.sig, s, sup)
                    });
                    if maximal {
                        return Some(Site::Abs {
                            lit,
                            side,
                            position: pos.clone(),
                        });
                    }
                }
            }
        }
        None
    }

    /// `Abs` at `site` with the fresh variable `x`; every occurrence of `k`
    /// in the abstracted side is replaced.
    pub fn abstract_at(&self, premise: &AnswerClause, site: &Site, x: Var) -> Option<Conclusion> {
        let Site::Abs {
            lit,
            side,
            position,
        } = site
        else {
            return None;
        };
        let c = &premise.clause;
        let l = c.literals.get(*lit)?;
        let (s, t) = (l.side(*side), l.side(side.other()));
        let k = s.subterm(position)?;
        if position.is_empty()
            || k.is_var()
            || premise.vars().contains(&x)
            || x.sort != k.sort(self.sig)
            || !self.selected(c).contains(lit)
            || self.order.compare(s, t).is_less_eq()
            || !abstraction_condition(self.sig, s, k)
            || (0..position.len())
                .any(|n| abstraction_condition(self.sig, s, s.subterm(&position[..n]).unwrap()))
        {
            return None;
        }
        let mut lits = c.literals.clone();
        lits[*lit] = l.with_side(*side, s.replace_all(k, &Term::var(x)));
        lits.push(Literal::neq(Term::var(x), k.clone()));
        Some(Conclusion {
            rule: Rule::Abs,
            site: site.clone(),
            unifier: Substitution::new(),
            clause: AnswerClause::new(Clause::new(lits), premise.answer.clone()),
        })
    }

    /// One `Abs` step, if any applies.
    pub fn abstract_step(&self, premise: &AnswerClause, vars: &mut VarGen) -> Option<(Conclusion, Var)> {
        let site = self.abs_site(premise)?;
        let Site::Abs { lit, side, position } = &site else {
            unreachable!()
        };
        let k = premise.clause.literals[*lit].side(*side).subterm(position)?;
        let x = vars.fresh(k.sort(self.sig));
        let out = self.abstract_at(premise, &site, x)?;
        Some((out, x))
    }

    /// Applies `Abs` until none applies; returns the steps taken.
    pub fn abstract_fixpoint(
        &self,
        premise: &AnswerClause,
        vars: &mut VarGen,
    ) -> Result<(AnswerClause, Vec<(Conclusion, Var)>)> {
        let bound = 10 * premise.clause.size().max(1);
        let mut current = premise.clone();
        let mut steps = Vec::new();
        while let Some((step, x)) = self.abstract_step(&current, vars) {
            if steps.len() >= bound {
                return Err(Error::Internal(format!(
                    "abstraction did not terminate within {bound} steps"
                )));
            }
            current = step.clause.clone();
            steps.push((step, x));
        }
        Ok((current, steps))
    }

    /// Duplicate-literal removal, if the clause has duplicates.
    pub fn condense(&self, premise: &AnswerClause) -> Option<Conclusion> {
        let mut lits: Vec<Literal> = Vec::with_capacity(premise.clause.len());
        for l in &premise.clause.literals {
            if !lits.contains(l) {
                lits.push(l.clone());
            }
        }
        if lits.len() == premise.clause.len() {
            return None;
        }
        Some(Conclusion {
            rule: Rule::Condense,
            site: Site::Condense,
            unifier: Substitution::new(),
            clause: AnswerClause::new(Clause::new(lits), premise.answer.clone()),
        })
    }

    /// Every `EqRes` and `EqFac` conclusion of `premise`.
    pub fn unary_inferences(&self, premise: &AnswerClause) -> Vec<Conclusion> {
        let c = &premise.clause;
        let mut out = Vec::new();
        for lit in self.selected(c) {
            let l = &c.literals[lit];
            if !l.positive {
                out.extend(self.eq_res(premise, &Site::EqRes { lit }));
                continue;
            }
            for side in Side::BOTH {
                if self.order.compare(l.side(side.other()), l.side(side)).is_greater() {
                    continue;
                }
                for other in (0..c.len()).filter(|&o| o != lit && c.literals[o].positive) {
                    for other_side in Side::BOTH {
                        let site = Site::EqFac {
                            lit,
                            side,
                            other,
                            other_side,
                        };
                        out.extend(self.eq_factor(premise, &site));
                    }
                }
            }
        }
        out
    }

    /// Every superposition of `left` (renamed apart) into `right`, both
    /// variants at every site.
    pub fn binary_inferences(&self, left: &AnswerClause, right: &AnswerClause) -> Vec<Conclusion> {
        let mut out = Vec::new();
        let left_sel = self.selected(&left.clause);
        let right_sel = self.selected(&right.clause);
        for &left_lit in &left_sel {
            let eq = &left.clause.literals[left_lit];
            if !eq.positive {
                continue;
            }
            for left_side in Side::BOTH {
                let l = eq.side(left_side);
                if self.order.compare(eq.side(left_side.other()), l).is_greater() {
                    continue;
                }
                for &right_lit in &right_sel {
                    let into = &right.clause.literals[right_lit];
                    for right_side in Side::BOTH {
                        let s = into.side(right_side);
                        if self.order.compare(into.side(right_side.other()), s).is_greater() {
                            continue;
                        }
                        for position in s.nonvar_positions() {
                            let sub = s.subterm(&position).expect("own position");
                            if l.top_symbol().is_some() && l.top_symbol() != sub.top_symbol() {
                                continue;
                            }
                            let site = Site::Sup {
                                left_lit,
                                left_side,
                                right_lit,
                                right_side,
                                position,
                            };
                            for rule in [Rule::SupC, Rule::SupU] {
                                out.extend(self.superpose(rule, left, right, &site));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Re-applies a recorded step. Binary premises are `[left, right]` with
    /// `left` already renamed; `fresh` is the variable introduced by `Abs`.
    pub fn apply(
        &self,
        rule: Rule,
        site: &Site,
        premises: &[&AnswerClause],
        fresh: Option<Var>,
    ) -> Option<Conclusion> {
        match (rule, premises) {
            (Rule::SupC | Rule::SupU, [left, right]) => self.superpose(rule, left, right, site),
            (Rule::EqRes, [p]) => self.eq_res(p, site),
            (Rule::EqFac, [p]) => self.eq_factor(p, site),
            (Rule::Abs, [p]) => self.abstract_at(p, site, fresh?),
            (Rule::Condense, [p]) => self.condense(p),
            _ => None,
        }
    }
}
