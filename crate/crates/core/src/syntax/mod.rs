//! Surface syntax: s-expression specification files and the functional
//! notation for terms, programs and clauses.

pub mod sexpr;
pub mod spec;
pub mod text;

pub use spec::{parse_spec, print_spec};
pub use text::{Printer, TextParser};
