//! Synthesizes the workshop venue program and prints its derivation.
//!
//! Run with `cargo run --example workshop`.

use supra::cli::{synthesize, Options};
use supra::saturation::SynthesisResult;
use supra::syntax::Printer;

fn main() -> Result<(), supra::error::Error> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/workshop.spec"))?;
    let run = synthesize(&text, &Options::default())?;
    let SynthesisResult::Success { proof, .. } = &run.outcome.result else {
        println!("no program: {:?}", run.outcome.result);
        return Ok(());
    };
    let pr = Printer::new(&run.problem.signature);
    println!("inputs:");
    for (id, clause) in run.outcome.clauses.iter().take(run.outcome.initial).enumerate() {
        println!("  {id:>3}  {}", pr.answer_clause(clause));
    }
    println!("refutation:");
    for step in proof {
        println!(
            "  {:>3}  {:<60} {:?} {:?}",
            step.id,
            pr.answer_clause(&step.conclusion),
            step.rule,
            step.premises
        );
    }
    println!("program: {}", run.programs()[0]);
    Ok(())
}
