use super::{Comparison, Precedence};
use crate::term::Term;

/// `s ≻lpo t`.
fn greater(s: &Term, t: &Term, prec: &Precedence) -> bool {
    let (f, ss) = match s {
        Term::Var(_) => return false,
        Term::App(f, ss) => (*f, ss),
    };
    let (g, ts) = match t {
        // t a variable and a proper subterm of s
        Term::Var(x) => return s.occurs(*x),
        Term::App(g, ts) => (*g, ts),
    };
    if ss.iter().any(|si| si == t || greater(si, t, prec)) {
        return true;
    }
    let dominates_args = || ts.iter().all(|tj| greater(s, tj, prec));
    if f == g {
        match ss.iter().zip(ts).find(|(a, b)| a != b) {
            Some((a, b)) => greater(a, b, prec) && dominates_args(),
            None => false,
        }
    } else {
        prec.greater(f, g) && dominates_args()
    }
}

pub fn lpo_compare(s: &Term, t: &Term, prec: &Precedence) -> Comparison {
    if s == t {
        Comparison::Equal
    } else if greater(s, t, prec) {
        Comparison::Greater
    } else if greater(t, s, prec) {
        Comparison::Less
    } else {
        Comparison::Incomparable
    }
}
