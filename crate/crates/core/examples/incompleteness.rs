//! Runs the workshop specification with a precedence that ignores
//! computability and negative-first selection: the search gets stuck.
//!
//! Run with `cargo run --example incompleteness`.

use supra::cli::{synthesize, Options, SelectionArg};
use supra::trace::Record;

fn main() -> Result<(), supra::error::Error> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/workshop.spec"))?;
    let options = Options {
        precedence: ["sat", "fri", "paar", "vamp", "ws", "sk_x"].map(String::from).to_vec(),
        no_partition: true,
        selection: SelectionArg::Negative,
        no_abs: true,
        ..Options::default()
    };
    let run = synthesize(&text, &options)?;
    for r in &run.records {
        match r {
            Record::Input { id, clause } => println!("{id:>3}  {clause:<56} input"),
            Record::Inference {
                id,
                rule,
                premises,
                conclusion,
                ..
            } => println!("{id:>3}  {conclusion:<56} {rule:?} {premises:?}"),
            _ => {}
        }
    }
    println!("result: {:?}", run.outcome.result);
    Ok(())
}
