//! Writes a trace to memory, replays it, and shows that an edited trace is
//! rejected.
//!
//! Run with `cargo run --example replay`.

use supra::cli::{synthesize, Options};
use supra::trace::{read_records, replay, write_records, Record};

fn main() -> Result<(), supra::error::Error> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/abs.spec"))?;
    let run = synthesize(&text, &Options::default())?;
    let mut jsonl = Vec::new();
    write_records(&mut jsonl, &run.records)?;
    println!("trace: {} records, {} bytes", run.records.len(), jsonl.len());

    let mut records = read_records(&jsonl[..])?;
    let report = replay(&records)?;
    println!(
        "replayed {} inputs and {} inferences: {} {:?}",
        report.inputs, report.inferences, report.status, report.programs
    );

    if let Some(Record::Inference { conclusion, .. }) =
        records.iter_mut().find(|r| matches!(r, Record::Inference { .. }))
    {
        conclusion.insert_str(1, "a = b | ");
    }
    match replay(&records) {
        Ok(_) => println!("edited trace accepted (unexpected)"),
        Err(e) => println!("edited trace rejected: {e}"),
    }
    Ok(())
}
