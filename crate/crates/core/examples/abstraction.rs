//! Shows one abstraction step and the effect of disabling the rule.
//!
//! Run with `cargo run --example abstraction`.

use supra::calculus::Calculus;
use supra::cli::{synthesize, Options};
use supra::order::{make_partitioned_precedence, Selection, TermOrder};
use supra::syntax::{parse_spec, Printer, TextParser};
use supra::term::VarGen;

const SPEC: &str = "(sorts s)
    (computable (a s) (b s))
    (uncomputable (g s s))
    (output (y s))
    (formula (= (g y) (g a)))";

fn main() -> Result<(), supra::error::Error> {
    let spec = parse_spec(SPEC)?;
    let sig = &spec.signature;
    let order = TermOrder::Lpo(make_partitioned_precedence(sig, &[])?);
    let calc = Calculus::new(sig, &order, Selection::Maximal);
    let mut parser = TextParser::new(sig);
    let premise = parser.answer_clause("<g(y) != g(a), y>")?;
    let pr = Printer::new(sig);
    let mut vars = VarGen::starting_at(parser.vars().len() as u32 + 1);
    match calc.abstract_step(&premise, &mut vars) {
        Some((conclusion, fresh)) => println!(
            "{}  becomes  {}  with fresh {}",
            pr.answer_clause(&premise),
            pr.answer_clause(&conclusion.clause),
            pr.var(fresh)
        ),
        None => println!("no abstraction applies"),
    }

    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/abs.spec"))?;
    let with = synthesize(&text, &Options::default())?;
    let without = synthesize(
        &text,
        &Options {
            no_abs: true,
            ..Options::default()
        },
    )?;
    println!("abs.spec with abstraction: {:?}", with.programs());
    println!("abs.spec without abstraction: {:?}", without.outcome.result);
    Ok(())
}
