mod common;

use common::{example_text, sym};
use supra::clause::AnswerClause;
use supra::formula::Formula;
use supra::oracle::{
    check_solution, enumerate_interpretations, eval_clause, eval_formula, for_all_valuations, AnswerSemantics,
    Interpretation, Verdict,
};
use supra::preprocess::{preprocess, Problem};
use supra::syntax::{parse_spec, TextParser};
use supra::term::{Expr, ProgramTerm, Var};

fn problem(name: &str) -> Problem {
    preprocess(&parse_spec(&example_text(name)).unwrap()).unwrap()
}

fn program(problem: &Problem, text: &str) -> ProgramTerm {
    let spec = &problem.spec;
    TextParser::new(&spec.signature)
        .with_vars(spec.var_names.iter().map(|(v, n)| (n.clone(), *v)))
        .starting_at(spec.next_var_id())
        .program(text)
        .unwrap()
}

#[test]
fn workshop_program_is_verified() {
    let p = problem("workshop.spec");
    let prog = program(&p, "ite(x = fri, vamp, paar)");
    assert_eq!(check_solution(&p.spec, &prog, 3).unwrap(), Verdict::VerifiedUpTo(3));
}

#[test]
fn constant_venue_has_a_saturday_counterexample() {
    let p = problem("workshop.spec");
    let sig = &p.spec.signature;
    let verdict = check_solution(&p.spec, &program(&p, "vamp"), 3).unwrap();
    let Verdict::Counterexample { interpretation, inputs } = verdict else {
        panic!("expected a counterexample");
    };
    let value = |name: &str| interpretation.apply(sig, sym(sig, name), &[]);
    let ws = |venue: &str| interpretation.apply(sig, sym(sig, "ws"), &[value(venue)]);
    assert_eq!(inputs[0], value("sat"));
    assert_ne!(value("sat"), value("fri"));
    assert_eq!(ws("paar"), 0, "ws(paar) must be true");
    assert_eq!(ws("vamp"), 1, "ws(vamp) must be false");
}

#[test]
fn abstraction_example_program_is_verified_and_constants_are_not() {
    let p = problem("abs.spec");
    assert!(check_solution(&p.spec, &program(&p, "ite(d = c, b, a)"), 3).unwrap().is_verified());
    for wrong in ["a", "b", "ite(d = c, a, b)"] {
        assert!(!check_solution(&p.spec, &program(&p, wrong), 3).unwrap().is_verified(), "{wrong}");
    }
}

#[test]
fn uncomputable_programs_are_rejected() {
    let p = problem("abs.spec");
    assert!(check_solution(&p.spec, &program(&p, "f(a)"), 2).is_err());
}

fn clauses_hold(p: &Problem, i: &Interpretation) -> bool {
    let sig = &p.signature;
    p.clauses.iter().all(|ac: &AnswerClause| {
        let vars: Vec<Var> = ac.clause.vars().into_iter().collect();
        for_all_valuations(&vars, i, &mut Vec::new(), &mut |env| eval_clause(&ac.clause, sig, i, env)).unwrap()
    })
}

fn no_output_works(p: &Problem, i: &Interpretation) -> bool {
    let negated = Formula::Not(Box::new(p.grounded_formula()));
    for_all_valuations(&[p.answer_var], i, &mut Vec::new(), &mut |env| {
        eval_formula(&negated, &p.signature, i, &mut env.clone())
    })
    .unwrap()
}

/// Without Skolem symbols beyond the inputs, the clause set must be
/// equivalent to `∀y. ¬F[ᾱ, y]` in every interpretation.
#[test]
fn clausal_form_is_equivalent_to_the_negated_goal() {
    for name in ["workshop.spec", "abs.spec", "identity.spec"] {
        let p = problem(name);
        assert_eq!(p.signature.num_symbols(), p.spec.signature.num_symbols() + p.input_skolems.len());
        let mut models = enumerate_interpretations(&p.signature, 2).unwrap();
        let mut seen = 0;
        while let Some(i) = models.advance() {
            assert_eq!(clauses_hold(&p, i), no_output_works(&p, i), "{name}: {:?}", i.tables);
            seen += 1;
        }
        assert!(seen > 1);
    }
}

#[test]
fn initial_answer_clauses_are_valid() {
    for name in ["workshop.spec", "abs.spec"] {
        let p = problem(name);
        let sem = AnswerSemantics::new(&p);
        let mut models = enumerate_interpretations(&p.signature, 2).unwrap();
        while let Some(i) = models.advance() {
            for ac in &p.clauses {
                assert!(sem.holds(ac, i).unwrap(), "{name}");
            }
        }
    }
}

#[test]
fn enumeration_refuses_huge_signatures() {
    let p = problem("capital3.spec");
    assert!(enumerate_interpretations(&p.signature, 50).is_err());
}
