//! Shared generators and independent reference checks for the integration
//! tests and the acceptance suite.

#![allow(dead_code)]

pub mod criteria;

use std::path::PathBuf;

use rand::Rng;
use supra::term::{Position, Signature, SortId, SymId, SymbolDecl, Term, Var};

/// A signature with the single data sort `s`; `decls` are
/// `(name, arity, computable)`.
pub fn one_sorted(decls: &[(&str, usize, bool)]) -> (Signature, SortId) {
    let mut sig = Signature::new();
    let s = sig.add_sort("s").unwrap();
    for (name, arity, computable) in decls {
        sig.add_symbol(SymbolDecl {
            name: name.to_string(),
            args: vec![s; *arity],
            result: s,
            computable: *computable,
        })
        .unwrap();
    }
    (sig, s)
}

pub fn sym(sig: &Signature, name: &str) -> SymId {
    sig.symbol_id(name).unwrap_or_else(|| panic!("no symbol {name}"))
}

/// Symbols of sort `s` (everything but `true` and `false`).
pub fn data_symbols(sig: &Signature) -> Vec<SymId> {
    sig.symbol_ids().skip(2).collect()
}

/// A random term of depth at most `depth` over `syms` and `vars`.
pub fn random_term(rng: &mut impl Rng, sig: &Signature, syms: &[SymId], vars: &[Var], depth: usize) -> Term {
    let leaves: Vec<SymId> = syms.iter().copied().filter(|f| sig.symbol(*f).arity() == 0).collect();
    let inner: Vec<SymId> = syms.iter().copied().filter(|f| sig.symbol(*f).arity() > 0).collect();
    let leaf_count = leaves.len() + vars.len();
    if depth == 0 || inner.is_empty() || rng.gen_bool(0.35) {
        let i = rng.gen_range(0..leaf_count);
        return if i < leaves.len() {
            Term::constant(leaves[i])
        } else {
            Term::var(vars[i - leaves.len()])
        };
    }
    let f = inner[rng.gen_range(0..inner.len())];
    let args = (0..sig.symbol(f).arity())
        .map(|_| random_term(rng, sig, syms, vars, depth - 1))
        .collect();
    Term::app(f, args)
}

/// Every well-sorted term of depth at most `depth` over `syms` and `vars`,
/// of any sort.
pub fn all_terms(sig: &Signature, syms: &[SymId], vars: &[Var], depth: usize) -> Vec<Term> {
    let leaves: Vec<Term> = syms
        .iter()
        .filter(|f| sig.symbol(**f).arity() == 0)
        .map(|f| Term::constant(*f))
        .chain(vars.iter().map(|v| Term::var(*v)))
        .collect();
    let mut level = leaves.clone();
    for _ in 0..depth {
        let mut next = leaves.clone();
        for f in syms.iter().filter(|f| sig.symbol(**f).arity() > 0) {
            let mut tuples: Vec<Vec<Term>> = vec![Vec::new()];
            for arg_sort in &sig.symbol(*f).args {
                let choices: Vec<&Term> = level.iter().filter(|t| t.sort(sig) == *arg_sort).collect();
                tuples = tuples
                    .into_iter()
                    .flat_map(|t| {
                        choices.iter().map(move |a| {
                            let mut t = t.clone();
                            t.push((*a).clone());
                            t
                        })
                    })
                    .collect();
            }
            next.extend(tuples.into_iter().map(|args| Term::app(*f, args)));
        }
        level = next;
    }
    level
}

/// Every position of `t`, variables included, outermost first.
pub fn positions(t: &Term) -> Vec<Position> {
    fn go(t: &Term, cur: &mut Position, out: &mut Vec<Position>) {
        out.push(cur.clone());
        if let Term::App(_, args) = t {
            for (i, a) in args.iter().enumerate() {
                cur.push(i);
                go(a, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(t, &mut Vec::new(), &mut out);
    out
}

/// `true` when no uncomputable symbol occurs in `t`; written independently
/// of the library's computability test.
pub fn computable_term(sig: &Signature, t: &Term) -> bool {
    match t {
        Term::Var(_) => true,
        Term::App(f, args) => sig.symbol(*f).computable && args.iter().all(|a| computable_term(sig, a)),
    }
}

pub fn example_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

pub fn example_text(name: &str) -> String {
    std::fs::read_to_string(example_path(name)).unwrap()
}

/// The `.spec` files of the curated suite, sorted.
pub fn suite_specs() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(example_path(""))
        .unwrap()
        .filter_map(|e| {
            let name = e.unwrap().file_name().into_string().unwrap();
            name.ends_with(".spec").then_some(name)
        })
        .collect();
    names.sort();
    names
}
