//! Deductive synthesis of recursion-free programs by superposition.
//!
//! A synthesis problem `∀x̄ ∃y. F[x̄, y]` over a signature split into
//! computable and uncomputable symbols is negated, skolemized and clausified
//! into answer clauses `⟨C, y⟩`. Saturation with the superposition rules
//! (two superposition variants, equality resolution and equality factoring,
//! plus abstraction of computable subterms) tracks program fragments in the
//! answers; deriving `⟨□, p⟩` yields the program `p`, built from computable
//! symbols and `ite`. Programs are checked by brute-force enumeration of
//! finite models.

pub mod calculus;
pub mod clause;
pub mod cli;
pub mod error;
pub mod formula;
pub mod oracle;
pub mod order;
pub mod preprocess;
pub mod saturation;
pub mod syntax;
pub mod term;
pub mod trace;
pub mod unify;

pub use error::{Error, Result};
