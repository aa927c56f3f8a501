//! Checks candidate programs against finite models of a specification.
//!
//! Run with `cargo run --example verify`.

use supra::oracle::{check_solution, Verdict};
use supra::syntax::{parse_spec, TextParser};

fn main() -> Result<(), supra::error::Error> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/workshop.spec"))?;
    let spec = parse_spec(&text)?;
    for candidate in ["ite(x = fri, vamp, paar)", "ite(x = sat, paar, vamp)", "vamp", "paar"] {
        let program = TextParser::new(&spec.signature)
            .with_vars(spec.var_names.iter().map(|(v, n)| (n.clone(), *v)))
            .starting_at(spec.next_var_id())
            .program(candidate)?;
        match check_solution(&spec, &program, 3)? {
            Verdict::VerifiedUpTo(n) => println!("{candidate:<28} holds in every model up to size {n}"),
            Verdict::Counterexample { interpretation, inputs } => {
                println!("{candidate:<28} fails for inputs {inputs:?} in {interpretation:?}")
            }
        }
    }
    Ok(())
}
