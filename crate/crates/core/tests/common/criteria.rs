//! Property checks shared by the dedicated test files and the acceptance
//! suite. Each returns counted cases and violations instead of panicking,
//! so the acceptance runner can report them.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use supra::calculus::{abstraction_condition, Calculus, Rule};
use supra::clause::{AnswerClause, Clause, Literal};
use supra::oracle::{AnswerSemantics, Interpretation};
use supra::order::{make_partitioned_precedence, Comparison, Selection, TermOrder, WeightFunction};
use supra::preprocess::{preprocess, Problem};
use supra::syntax::{parse_spec, Printer};
use supra::term::{Signature, SortId, Substitutable, Substitution, SymId, SymbolDecl, Term, Var, VarGen};

use super::{all_terms, computable_term, one_sorted, positions, random_term, sym};

/// Counted cases of one property.
#[derive(Debug, Clone)]
pub struct Check {
    pub label: String,
    pub cases: usize,
    pub violations: usize,
    pub first_violation: Option<String>,
}

impl Check {
    pub fn new(label: impl Into<String>) -> Self {
        Check {
            label: label.into(),
            cases: 0,
            violations: 0,
            first_violation: None,
        }
    }

    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.violations += 1;
            if self.first_violation.is_none() {
                self.first_violation = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0 && self.cases > 0
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} violations in {} cases", self.label, self.violations, self.cases)?;
        if let Some(v) = &self.first_violation {
            write!(f, " (first: {v})")?;
        }
        Ok(())
    }
}

pub fn lpo_of(sig: &Signature) -> TermOrder {
    TermOrder::Lpo(make_partitioned_precedence(sig, &[]).unwrap())
}

pub fn tkbo_of(sig: &Signature) -> TermOrder {
    let prec = make_partitioned_precedence(sig, &[]).unwrap();
    let w = WeightFunction::standard(sig);
    w.validate(sig, &prec).unwrap();
    TermOrder::Tkbo(prec, w)
}

/// Constants, unary and binary symbols on both sides of the partition.
pub fn mixed_signature() -> (Signature, Vec<SymId>, Vec<Var>) {
    let (sig, s) = one_sorted(&[
        ("a", 0, true),
        ("b", 0, true),
        ("f", 1, true),
        ("g", 2, true),
        ("c", 0, false),
        ("h", 1, false),
        ("k", 2, false),
    ]);
    let syms = sig.symbol_ids().skip(2).collect();
    let vars = (0..3).map(|i| Var::new(i, s)).collect();
    (sig, syms, vars)
}

fn random_substitution(rng: &mut impl Rng, sig: &Signature, syms: &[SymId], vars: &[Var]) -> Substitution {
    vars.iter()
        .map(|v| (*v, random_term(rng, sig, syms, vars, 2)))
        .collect()
}

/// Irreflexivity, asymmetry, transitivity, the subterm property,
/// stability under substitution and ground totality on `pairs` random
/// pairs of terms of depth at most 4.
pub fn order_properties(order: &TermOrder, sig: &Signature, syms: &[SymId], vars: &[Var], pairs: usize, seed: u64) -> Vec<Check> {
    let name = order.name();
    let mut irreflexive = Check::new(format!("{name} irreflexivity"));
    let mut asymmetric = Check::new(format!("{name} asymmetry"));
    let mut transitive = Check::new(format!("{name} transitivity (sampled)"));
    let mut subterm = Check::new(format!("{name} subterm property"));
    let mut stable = Check::new(format!("{name} stability under substitution (sampled)"));
    let mut total = Check::new(format!("{name} ground totality"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pr = Printer::new(sig);
    let gt = |s: &Term, t: &Term| order.compare(s, t) == Comparison::Greater;
    for _ in 0..pairs {
        let s = random_term(&mut rng, sig, syms, vars, 4);
        let t = random_term(&mut rng, sig, syms, vars, 4);
        let u = random_term(&mut rng, sig, syms, vars, 4);
        irreflexive.record(order.compare(&s, &s) == Comparison::Equal, || pr.term(&s));
        let st = order.compare(&s, &t);
        asymmetric.record(order.compare(&t, &s) == st.reverse(), || format!("{} vs {}", pr.term(&s), pr.term(&t)));
        if st == Comparison::Greater && gt(&t, &u) {
            transitive.record(gt(&s, &u), || format!("{} > {} > {}", pr.term(&s), pr.term(&t), pr.term(&u)));
        }
        for p in positions(&s).into_iter().filter(|p| !p.is_empty()) {
            let sub = s.subterm(&p).unwrap();
            subterm.record(gt(&s, sub), || format!("{} vs {}", pr.term(&s), pr.term(sub)));
        }
        if st == Comparison::Greater {
            let theta = random_substitution(&mut rng, sig, syms, vars);
            let (a, b) = (s.apply(&theta), t.apply(&theta));
            stable.record(gt(&a, &b), || format!("{} > {} under {}", pr.term(&s), pr.term(&t), pr.substitution(&theta)));
        }
        let gs = random_term(&mut rng, sig, syms, &[], 4);
        let gt2 = random_term(&mut rng, sig, syms, &[], 4);
        if gs != gt2 {
            let c = order.compare(&gs, &gt2);
            total.record(matches!(c, Comparison::Greater | Comparison::Less), || {
                format!("{} vs {}", pr.term(&gs), pr.term(&gt2))
            });
        }
    }
    vec![irreflexive, asymmetric, transitive, subterm, stable, total]
}

/// Every computable term stays below every uncomputable term: exhaustive
/// over terms of depth at most 2 with two computable and two uncomputable
/// symbols, ground and with one variable.
pub fn partition_property(use_tkbo: bool) -> Vec<Check> {
    let (sig, s) = one_sorted(&[("a", 0, true), ("g", 2, true), ("b", 0, false), ("h", 1, false)]);
    let order = if use_tkbo { tkbo_of(&sig) } else { lpo_of(&sig) };
    let syms: Vec<SymId> = sig.symbol_ids().skip(2).collect();
    let pr = Printer::new(&sig);
    let mut out = Vec::new();
    for (label, vars) in [("ground", vec![]), ("with a variable", vec![Var::new(0, s)])] {
        let mut check = Check::new(format!("{} partition, {label}, depth <= 2", order.name()));
        let terms = all_terms(&sig, &syms, &vars, 2);
        let (comp, uncomp): (Vec<&Term>, Vec<&Term>) = terms.iter().partition(|t| computable_term(&sig, t));
        for c in &comp {
            for u in &uncomp {
                let cmp = order.compare(c, u);
                let ok = !cmp.is_greater_eq() && (!vars.is_empty() || cmp == Comparison::Less);
                check.record(ok, || format!("{} vs {} gives {cmp:?}", pr.term(c), pr.term(u)));
            }
        }
        out.push(check);
    }
    out
}

fn brute_force_condition(sig: &Signature, s: &Term, k: &Term, thetas: &[Substitution]) -> bool {
    thetas
        .iter()
        .any(|th| !computable_term(sig, &s.apply(th)) && computable_term(sig, &k.apply(th)))
}

fn all_substitutions(sig: &Signature, vars: &[Var], candidates: &[Term]) -> Vec<Substitution> {
    let mut out = vec![Substitution::new()];
    for v in vars {
        let choices: Vec<&Term> = candidates.iter().filter(|t| t.sort(sig) == v.sort).collect();
        out = out
            .into_iter()
            .flat_map(|th| {
                choices.iter().map(move |c| {
                    let mut th = th.clone();
                    th.insert(*v, (*c).clone());
                    th
                })
            })
            .collect();
    }
    out
}

fn lemma_case(label: &str, sig: &Signature, vars: &[Var], depth: usize, theta_depth: usize, theta_vars: bool) -> Check {
    let syms: Vec<SymId> = sig.symbol_ids().skip(2).collect();
    let pr = Printer::new(sig);
    let candidates = all_terms(sig, &syms, if theta_vars { vars } else { &[] }, theta_depth);
    let thetas = all_substitutions(sig, vars, &candidates);
    let mut check = Check::new(format!("abstraction condition, {label}"));
    let data = sig.sort_ids().nth(1).unwrap();
    let mut holds = 0usize;
    for s in all_terms(sig, &syms, vars, depth).iter().filter(|t| t.sort(sig) == data) {
        for p in positions(s) {
            let k = s.subterm(&p).unwrap();
            let syntactic = abstraction_condition(sig, s, k);
            let brute = brute_force_condition(sig, s, k, &thetas);
            holds += brute as usize;
            check.record(syntactic == brute, || {
                format!("s = {}, k = {}: syntactic {syntactic}, search {brute}", pr.term(s), pr.term(k))
            });
        }
    }
    check.label = format!("{} ({holds} pairs satisfy it)", check.label);
    check
}

/// The syntactic abstraction test against a search for a witnessing
/// substitution, over every subterm `k` of every term `s` of depth ≤ 3.
pub fn abstraction_lemma() -> Vec<Check> {
    let mut out = Vec::new();
    let (sig, s) = one_sorted(&[("a", 0, true), ("g", 2, true), ("b", 0, false), ("h", 1, false)]);
    out.push(lemma_case(
        "binary computable symbol, one variable",
        &sig,
        &[Var::new(0, s)],
        3,
        1,
        false,
    ));
    let (sig, s) = one_sorted(&[("a", 0, true), ("f", 1, true), ("b", 0, false), ("h", 1, false)]);
    out.push(lemma_case(
        "unary symbols, two variables",
        &sig,
        &[Var::new(0, s), Var::new(1, s)],
        3,
        2,
        true,
    ));
    let (sig, s) = one_sorted(&[("a", 0, true), ("e", 0, true), ("f", 1, true), ("g", 2, true)]);
    out.push(lemma_case(
        "no uncomputable symbol",
        &sig,
        &[Var::new(0, s), Var::new(1, s)],
        2,
        1,
        true,
    ));
    let mut sig = Signature::new();
    let s = sig.add_sort("s").unwrap();
    let t = sig.add_sort("t").unwrap();
    for (name, args, result, computable) in [
        ("a", vec![], s, true),
        ("u", vec![], s, false),
        ("pair", vec![s, t], s, true),
        ("n", vec![], t, true),
    ] {
        sig.add_symbol(SymbolDecl {
            name: name.into(),
            args,
            result,
            computable,
        })
        .unwrap();
    }
    out.push(lemma_case(
        "two sorts, one without uncomputable terms",
        &sig,
        &[Var::new(0, s), Var::new(1, t)],
        3,
        2,
        true,
    ));
    out
}

const SOUNDNESS_SPEC: &str = "(sorts s)
    (computable (a s) (b s) (f s s) (g s s s))
    (uncomputable (c s) (h s s) (p s bool))
    (inputs (x s))
    (output (y s))
    (formula (or (= (h y) x) (p y)))";

pub fn soundness_problem() -> Problem {
    preprocess(&parse_spec(SOUNDNESS_SPEC).unwrap()).unwrap()
}

/// A random interpretation with a 2-element data carrier.
pub fn random_interpretation(rng: &mut impl Rng, sig: &Signature, size: u32) -> Interpretation {
    let mut sizes = vec![2u32; sig.num_sorts()];
    for s in sig.sort_ids().skip(1) {
        sizes[s.0 as usize] = size;
    }
    let tables = sig
        .symbol_ids()
        .map(|f| {
            let d = sig.symbol(f);
            match f {
                SymId::TRUE => vec![0],
                SymId::FALSE => vec![1],
                _ => {
                    let n: usize = d.args.iter().map(|s| sizes[s.0 as usize] as usize).product();
                    (0..n).map(|_| rng.gen_range(0..sizes[d.result.0 as usize])).collect()
                }
            }
        })
        .collect();
    Interpretation { sizes, tables }
}

struct Gen<'a> {
    sig: &'a Signature,
    data: Vec<SymId>,
    comp: Vec<SymId>,
    pred: SymId,
    sort: SortId,
}

impl Gen<'_> {
    fn vars(&self, base: u32) -> Vec<Var> {
        (base..base + 3).map(|i| Var::new(i, self.sort)).collect()
    }

    fn term(&self, rng: &mut impl Rng, vars: &[Var], depth: usize) -> Term {
        random_term(rng, self.sig, &self.data, vars, depth)
    }

    fn atom(&self, rng: &mut impl Rng, vars: &[Var]) -> Term {
        Term::app(self.pred, vec![self.term(rng, vars, 2)])
    }

    fn literal(&self, rng: &mut impl Rng, vars: &[Var]) -> Literal {
        let positive = rng.gen_bool(0.5);
        let (l, r) = if rng.gen_bool(0.3) {
            (self.atom(rng, vars), Term::constant(SymId::TRUE))
        } else {
            (self.term(rng, vars, 2), self.term(rng, vars, 2))
        };
        Literal { lhs: l, rhs: r, positive }
    }

    fn literals(&self, rng: &mut impl Rng, vars: &[Var], max: usize) -> Vec<Literal> {
        (0..rng.gen_range(0..=max)).map(|_| self.literal(rng, vars)).collect()
    }

    fn simple_answer(&self, rng: &mut impl Rng, vars: &[Var]) -> Term {
        if rng.gen_bool(0.6) {
            Term::var(vars[rng.gen_range(0..vars.len())])
        } else {
            random_term(rng, self.sig, &self.comp, vars, 1)
        }
    }

    fn answer(&self, rng: &mut impl Rng, vars: &[Var]) -> supra::term::ProgramTerm {
        use supra::term::ProgramTerm;
        if rng.gen_bool(0.15) {
            ProgramTerm::ite(
                random_term(rng, self.sig, &self.comp, vars, 1),
                random_term(rng, self.sig, &self.comp, vars, 1),
                ProgramTerm::leaf(self.simple_answer(rng, vars)),
                ProgramTerm::leaf(self.simple_answer(rng, vars)),
            )
        } else {
            ProgramTerm::leaf(self.simple_answer(rng, vars))
        }
    }

    /// Replaces random data subterms of `t` by variables from `vars`.
    fn generalize(&self, rng: &mut impl Rng, t: &Term, vars: &[Var]) -> Term {
        if t.sort(self.sig) == self.sort && rng.gen_bool(0.25) {
            return Term::var(vars[rng.gen_range(0..vars.len())]);
        }
        match t {
            Term::Var(_) => t.clone(),
            Term::App(f, args) => Term::app(*f, args.iter().map(|a| self.generalize(rng, a, vars)).collect()),
        }
    }
}

fn rename(t: &Term, from: &[Var], to: &[Var]) -> Term {
    let sigma: Substitution = from.iter().zip(to).map(|(a, b)| (*a, Term::var(*b))).collect();
    t.apply(&sigma)
}

/// One rule application: premises and conclusion.
struct Instance {
    premises: Vec<AnswerClause>,
    conclusion: AnswerClause,
}

fn instances(rule: Rule, calc: &Calculus, g: &Gen, rng: &mut impl Rng) -> Vec<Instance> {
    let rv = g.vars(10);
    let lv = g.vars(20);
    match rule {
        Rule::EqRes | Rule::EqFac => {
            let s = g.term(rng, &rv, 2);
            let mut lits = if rule == Rule::EqRes {
                let t = if rng.gen_bool(0.7) { g.generalize(rng, &s, &rv) } else { g.term(rng, &rv, 2) };
                vec![Literal::neq(s, t)]
            } else {
                let t = g.term(rng, &rv, 2);
                let l = g.generalize(rng, &s, &rv);
                let r = g.term(rng, &rv, 2);
                vec![Literal::eq(s, t), Literal::eq(l, r)]
            };
            lits.extend(g.literals(rng, &rv, 1));
            lits.shuffle(rng);
            let premise = AnswerClause::new(Clause::new(lits), g.answer(rng, &rv));
            calc.unary_inferences(&premise)
                .into_iter()
                .filter(|c| c.rule == rule)
                .map(|c| Instance {
                    premises: vec![premise.clone()],
                    conclusion: c.clause,
                })
                .collect()
        }
        Rule::SupC | Rule::SupU => {
            let atom = rng.gen_bool(0.4);
            let s = if atom { g.atom(rng, &rv) } else { g.term(rng, &rv, 3) };
            let t = if atom { Term::constant(SymId::TRUE) } else { g.term(rng, &rv, 2) };
            let ps = s.nonvar_positions();
            if ps.is_empty() {
                return Vec::new();
            }
            let sub = s.subterm(&ps[rng.gen_range(0..ps.len())]).unwrap();
            let l = g.generalize(rng, &rename(sub, &rv, &lv), &lv);
            let r = if l.sort(g.sig) == g.sort {
                g.term(rng, &lv, 1)
            } else {
                Term::constant(if rng.gen_bool(0.5) { SymId::TRUE } else { SymId::FALSE })
            };
            let mut left = vec![if rng.gen_bool(0.5) { Literal::eq(l, r) } else { Literal::eq(r, l) }];
            left.extend(g.literals(rng, &lv, 1));
            let mut right = vec![Literal {
                lhs: s,
                rhs: t,
                positive: rng.gen_bool(0.5),
            }];
            right.extend(g.literals(rng, &rv, 1));
            right.shuffle(rng);
            let simple = rule == Rule::SupU || rng.gen_bool(0.5);
            let (la, ra) = if simple {
                (
                    supra::term::ProgramTerm::leaf(g.simple_answer(rng, &lv)),
                    supra::term::ProgramTerm::leaf(g.simple_answer(rng, &rv)),
                )
            } else {
                (g.answer(rng, &lv), g.answer(rng, &rv))
            };
            let left = AnswerClause::new(Clause::new(left), la);
            let right = AnswerClause::new(Clause::new(right), ra);
            calc.binary_inferences(&left, &right)
                .into_iter()
                .filter(|c| c.rule == rule)
                .map(|c| Instance {
                    premises: vec![left.clone(), right.clone()],
                    conclusion: c.clause,
                })
                .collect()
        }
        Rule::Abs => {
            let mut lits = vec![g.literal(rng, &rv)];
            lits.extend(g.literals(rng, &rv, 2));
            let premise = AnswerClause::new(Clause::new(lits), g.answer(rng, &rv));
            calc.abstract_step(&premise, &mut VarGen::starting_at(100))
                .into_iter()
                .map(|(c, _)| Instance {
                    premises: vec![premise.clone()],
                    conclusion: c.clause,
                })
                .collect()
        }
        Rule::Condense => {
            let mut lits = vec![g.literal(rng, &rv)];
            lits.extend(g.literals(rng, &rv, 2));
            let dup = lits[rng.gen_range(0..lits.len())].clone();
            lits.push(dup);
            lits.shuffle(rng);
            let premise = AnswerClause::new(Clause::new(lits), g.answer(rng, &rv));
            calc.condense(&premise)
                .into_iter()
                .map(|c| Instance {
                    premises: vec![premise.clone()],
                    conclusion: c.clause,
                })
                .collect()
        }
    }
}

/// For each rule, `trials` random (inference, interpretation) pairs in
/// which every premise holds; the conclusion must hold too.
pub fn rule_soundness(trials: usize, seed: u64) -> Vec<Check> {
    let problem = soundness_problem();
    let sig = &problem.signature;
    let sem = AnswerSemantics::new(&problem);
    let pr = Printer::new(sig);
    let orders = [lpo_of(sig), tkbo_of(sig)];
    let data: Vec<SymId> = sig
        .symbol_ids()
        .skip(2)
        .filter(|f| sig.symbol(*f).result != SortId::BOOL)
        .collect();
    let g = Gen {
        sig,
        comp: data.iter().copied().filter(|f| sig.is_computable_symbol(*f)).collect(),
        data,
        pred: sym(sig, "p"),
        sort: sig.sort_id("s").unwrap(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for rule in [Rule::SupC, Rule::SupU, Rule::EqRes, Rule::EqFac, Rule::Abs, Rule::Condense] {
        let mut check = Check::new(format!("{} soundness", rule.name()));
        let mut distinct = 0usize;
        let mut attempts = 0usize;
        while check.cases < trials && attempts < 200_000 {
            attempts += 1;
            let order = &orders[attempts % 2];
            let selection = if attempts.is_multiple_of(3) { Selection::NegativeFirst } else { Selection::Maximal };
            let calc = Calculus::new(sig, order, selection);
            for inst in instances(rule, &calc, &g, &mut rng) {
                let mut used = false;
                for _ in 0..3 {
                    let i = random_interpretation(&mut rng, sig, 2);
                    if !inst.premises.iter().all(|p| sem.holds(p, &i).unwrap()) {
                        continue;
                    }
                    used = true;
                    let ok = sem.holds(&inst.conclusion, &i).unwrap();
                    check.record(ok, || {
                        let ps: Vec<String> = inst.premises.iter().map(|p| pr.answer_clause(p)).collect();
                        format!("{} ⊢ {} with {:?}", ps.join(" , "), pr.answer_clause(&inst.conclusion), i.tables)
                    });
                    if check.cases >= trials {
                        break;
                    }
                }
                distinct += used as usize;
            }
        }
        check.label = format!("{} ({distinct} distinct inferences)", check.label);
        out.push(check);
    }
    out
}

