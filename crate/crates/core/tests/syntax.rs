mod common;

use common::{example_text, suite_specs};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use supra::clause::{AnswerClause, Clause, Literal};
use supra::error::Error;
use supra::syntax::{parse_spec, print_spec, Printer, TextParser};
use supra::term::{ProgramTerm, SymId, Term, Var};

#[test]
fn every_example_round_trips() {
    for name in suite_specs() {
        let spec = parse_spec(&example_text(&name)).unwrap();
        let printed = print_spec(&spec);
        let again = parse_spec(&printed).unwrap();
        assert_eq!(print_spec(&again), printed, "{name}");
        assert_eq!(again.formula, spec.formula, "{name}");
    }
}

#[test]
fn errors_carry_locations() {
    let cases = [
        ("(sorts s)\n(output (y s)", 2),
        ("(sorts s)\n(computable (a t))", 2),
        ("(sorts s)\n(output (y s))\n(formula (= y q))", 3),
        ("(sorts s) (sorts s)", 1),
    ];
    for (text, line) in cases {
        match parse_spec(text) {
            Err(Error::Parse { location, .. }) => assert_eq!(location.line, line, "{text}"),
            other => panic!("{text}: expected a parse error, got {other:?}"),
        }
    }
}

const SIG: &str = "(sorts s) (computable (a s) (b s) (f s s) (g s s s)) (uncomputable (h s s) (p s bool))
    (output (y s)) (formula (p y))";

proptest! {
    #[test]
    fn printed_answer_clauses_parse_back(seed in any::<u64>()) {
        let spec = parse_spec(SIG).unwrap();
        let sig = &spec.signature;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = sig.sort_id("s").unwrap();
        let vars: Vec<Var> = (10..13).map(|i| Var::new(i, s)).collect();
        let syms: Vec<SymId> = ["a", "b", "f", "g", "h"].iter().map(|n| sig.symbol_id(n).unwrap()).collect();
        let comp = &syms[..4];
        let p = sig.symbol_id("p").unwrap();
        let mut term = |d| common::random_term(&mut rng, sig, &syms, &vars, d);
        let lits = vec![
            Literal::eq(term(3), term(2)),
            Literal::neq(Term::app(p, vec![term(2)]), Term::constant(SymId::TRUE)),
        ];
        let answer = ProgramTerm::ite(
            common::random_term(&mut rng, sig, comp, &vars, 2),
            common::random_term(&mut rng, sig, comp, &vars, 1),
            ProgramTerm::leaf(Term::var(vars[0])),
            ProgramTerm::leaf(common::random_term(&mut rng, sig, comp, &vars, 2)),
        );
        let ac = AnswerClause::new(Clause::new(lits), answer);
        let printed = Printer::new(sig).answer_clause(&ac);
        let back = TextParser::new(sig).answer_clause(&printed).unwrap();
        prop_assert_eq!(back, ac);
    }
}
