//! Compares terms under the partitioned LPO and tKBO.
//!
//! Run with `cargo run --example orderings`.

use supra::order::{make_partitioned_precedence, TermOrder, WeightFunction};
use supra::syntax::{parse_spec, TextParser};

const SPEC: &str = "(sorts s)
    (computable (a s) (f s s) (g s s s))
    (uncomputable (c s) (h s s))
    (output (y s))
    (formula (= y a))";

fn main() -> Result<(), supra::error::Error> {
    let spec = parse_spec(SPEC)?;
    let sig = &spec.signature;
    let prec = make_partitioned_precedence(sig, &[])?;
    let weights = WeightFunction::standard(sig);
    weights.validate(sig, &prec)?;
    let orders = [TermOrder::Lpo(prec.clone()), TermOrder::Tkbo(prec, weights)];
    let pairs = [
        ("f(f(f(a)))", "c"),
        ("g(x, a)", "h(x)"),
        ("h(a)", "f(h(a))"),
        ("g(x, y)", "g(y, x)"),
        ("f(x)", "x"),
    ];
    for (l, r) in pairs {
        let mut parser = TextParser::new(sig);
        let (s, t) = (parser.term(l)?, parser.term(r)?);
        let verdicts: Vec<String> = orders.iter().map(|o| format!("{}: {:?}", o.name(), o.compare(&s, &t))).collect();
        println!("{l:>12}  vs  {r:<10} {}", verdicts.join(", "));
    }
    Ok(())
}
