//! Syntactic unification with occurs check.

use std::collections::BTreeMap;

use crate::term::{Substitution, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UnifyError {
    #[error("occurs check failed")]
    OccursCheck,
    #[error("symbol clash")]
    Clash,
    #[error("sort mismatch")]
    SortMismatch,
}

struct Bindings {
    map: BTreeMap<Var, Term>,
}

impl Bindings {
    fn walk<'a>(&'a self, mut t: &'a Term) -> &'a Term {
        while let Term::Var(v) = t {
            match self.map.get(v) {
                Some(next) => t = next,
                None => break,
            }
        }
        t
    }

    fn occurs(&self, v: Var, t: &Term) -> bool {
        match self.walk(t) {
            Term::Var(w) => *w == v,
            Term::App(_, args) => args.iter().any(|a| self.occurs(v, a)),
        }
    }

    fn resolve(&self, t: &Term) -> Term {
        match self.walk(t) {
            Term::Var(v) => Term::Var(*v),
            Term::App(f, args) => Term::App(*f, args.iter().map(|a| self.resolve(a)).collect()),
        }
    }
}

/// Most general unifier of all `pairs`, idempotent.
pub fn mgu(pairs: &[(Term, Term)]) -> Result<Substitution, UnifyError> {
    let mut b = Bindings {
        map: BTreeMap::new(),
    };
    let mut work: Vec<(Term, Term)> = pairs.iter().rev().cloned().collect();
    while let Some((s, t)) = work.pop() {
        let s = b.walk(&s).clone();
        let t = b.walk(&t).clone();
        match (&s, &t) {
            (Term::Var(x), Term::Var(y)) if x == y => {}
            (Term::Var(x), other) | (other, Term::Var(x)) => {
                if let Term::Var(y) = other {
                    if x.sort != y.sort {
                        return Err(UnifyError::SortMismatch);
                    }
                }
                if b.occurs(*x, other) {
                    return Err(UnifyError::OccursCheck);
                }
                b.map.insert(*x, other.clone());
            }
            (Term::App(f, fa), Term::App(g, ga)) => {
                if f != g || fa.len() != ga.len() {
                    return Err(UnifyError::Clash);
                }
                for (a, c) in fa.iter().zip(ga).rev() {
                    work.push((a.clone(), c.clone()));
                }
            }
        }
    }
    Ok(b.map.keys().map(|v| (*v, b.resolve(&Term::Var(*v)))).collect())
}

pub fn mgu_one(s: &Term, t: &Term) -> Result<Substitution, UnifyError> {
    mgu(&[(s.clone(), t.clone())])
}

/// One-sided matching: `pattern θ = target` with θ only binding pattern
/// variables.
pub fn match_term(pattern: &Term, target: &Term, theta: &mut Substitution) -> bool {
    match pattern {
        Term::Var(v) => match theta.get(*v) {
            Some(bound) => bound == target,
            None => {
                if sort_compatible(*v, target) {
                    theta.insert(*v, target.clone());
                    true
                } else {
                    false
                }
            }
        },
        Term::App(f, args) => match target {
            Term::App(g, targs) if f == g && args.len() == targs.len() => args
                .iter()
                .zip(targs)
                .all(|(p, t)| match_term(p, t, theta)),
            _ => false,
        },
    }
}

fn sort_compatible(v: Var, t: &Term) -> bool {
    match t {
        Term::Var(w) => w.sort == v.sort,
        Term::App(..) => true,
    }
}
