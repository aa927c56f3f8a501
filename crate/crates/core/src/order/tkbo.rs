use std::collections::BTreeMap;

use super::{Comparison, Precedence};
use crate::error::{Error, Result};
use crate::term::{Signature, SymId, Term, Var};

/// The ordinal `omega·ω + finite`, below ω². Sums are natural (Hessenberg)
/// sums, so addition is coefficient-wise and commutative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct OrdinalWeight {
    pub omega: u64,
    pub finite: u64,
}

impl OrdinalWeight {
    pub const ZERO: OrdinalWeight = OrdinalWeight { omega: 0, finite: 0 };

    pub fn finite(n: u64) -> Self {
        OrdinalWeight { omega: 0, finite: n }
    }

    pub fn transfinite(omega: u64, finite: u64) -> Self {
        OrdinalWeight { omega, finite }
    }

    pub fn is_finite(self) -> bool {
        self.omega == 0
    }
}

impl std::ops::Add for OrdinalWeight {
    type Output = OrdinalWeight;

    fn add(self, other: Self) -> Self {
        OrdinalWeight {
            omega: self.omega + other.omega,
            finite: self.finite + other.finite,
        }
    }
}

impl std::fmt::Display for OrdinalWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.omega, self.finite) {
            (0, n) => write!(f, "{n}"),
            (1, 0) => write!(f, "ω"),
            (1, n) => write!(f, "ω+{n}"),
            (k, 0) => write!(f, "ω·{k}"),
            (k, n) => write!(f, "ω·{k}+{n}"),
        }
    }
}

/// `|t|`: a constant ordinal plus a positive coefficient per variable.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearWeightExpr {
    pub constant: OrdinalWeight,
    pub var_coeffs: BTreeMap<Var, u64>,
}

impl LinearWeightExpr {
    pub fn of(t: &Term, w: &WeightFunction) -> Self {
        let mut e = LinearWeightExpr::default();
        e.accumulate(t, w);
        e
    }

    fn accumulate(&mut self, t: &Term, w: &WeightFunction) {
        match t {
            Term::Var(v) => *self.var_coeffs.entry(*v).or_insert(0) += 1,
            Term::App(f, args) => {
                self.constant = self.constant + w.weight(*f);
                for a in args {
                    self.accumulate(a, w);
                }
            }
        }
    }

    fn coeff(&self, v: &Var) -> u64 {
        self.var_coeffs.get(v).copied().unwrap_or(0)
    }

    /// `self ≳ other` under every grounding.
    pub fn geq_all(&self, other: &Self) -> bool {
        self.constant >= other.constant
            && other
                .var_coeffs
                .iter()
                .all(|(v, c)| self.coeff(v) >= *c)
    }

    /// `self > other` under every grounding; variable weights are at least
    /// w0 > 0, so a strictly larger coefficient suffices.
    pub fn gt_all(&self, other: &Self) -> bool {
        self.geq_all(other)
            && (self.constant > other.constant
                || self.var_coeffs.iter().any(|(v, c)| *c > other.coeff(v)))
    }
}

/// Symbol weights: computable symbols finite, uncomputable ones above ω.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFunction {
    weights: Vec<OrdinalWeight>,
}

impl WeightFunction {
    /// Computable symbols weigh 1, uncomputable ones ω+1.
    pub fn standard(sig: &Signature) -> Self {
        let weights = sig
            .symbol_ids()
            .map(|f| {
                if sig.is_computable_symbol(f) {
                    OrdinalWeight::finite(1)
                } else {
                    OrdinalWeight::transfinite(1, 1)
                }
            })
            .collect();
        WeightFunction { weights }
    }

    pub fn from_weights(weights: Vec<OrdinalWeight>) -> Self {
        WeightFunction { weights }
    }

    pub fn weight(&self, f: SymId) -> OrdinalWeight {
        self.weights[f.index()]
    }

    pub fn set(&mut self, f: SymId, w: OrdinalWeight) {
        self.weights[f.index()] = w;
    }

    /// Checks the partition of weights, w0 > 0, and that each unary symbol of
    /// weight zero is greatest in the precedence.
    pub fn validate(&self, sig: &Signature, prec: &Precedence) -> Result<()> {
        if self.weights.len() != sig.num_symbols() {
            return Err(Error::Config("weight function does not cover the signature".into()));
        }
        for f in sig.symbol_ids() {
            let w = self.weight(f);
            let name = sig.name(f);
            if sig.is_computable_symbol(f) && !w.is_finite() {
                return Err(Error::Config(format!(
                    "computable `{name}` has transfinite weight {w}"
                )));
            }
            if !sig.is_computable_symbol(f) && w.is_finite() {
                return Err(Error::Config(format!(
                    "uncomputable `{name}` has finite weight {w}"
                )));
            }
            let decl = sig.symbol(f);
            if decl.arity() == 0 && w == OrdinalWeight::ZERO {
                return Err(Error::Config(format!("constant `{name}` has weight 0")));
            }
            if decl.arity() == 1
                && w == OrdinalWeight::ZERO
                && sig.symbol_ids().any(|g| g != f && prec.greater(g, f))
            {
                return Err(Error::Config(format!(
                    "unary `{name}` of weight 0 must be greatest in precedence"
                )));
            }
        }
        Ok(())
    }
}

fn greater(s: &Term, t: &Term, prec: &Precedence, w: &WeightFunction) -> bool {
    if s == t {
        return false;
    }
    let ws = LinearWeightExpr::of(s, w);
    let wt = LinearWeightExpr::of(t, w);
    if !ws.geq_all(&wt) {
        return false;
    }
    if ws.gt_all(&wt) {
        return true;
    }
    match (s, t) {
        (Term::App(f, ss), Term::App(g, ts)) => {
            if f != g {
                prec.greater(*f, *g)
            } else {
                match ss.iter().zip(ts).find(|(a, b)| a != b) {
                    Some((a, b)) => greater(a, b, prec, w),
                    None => false,
                }
            }
        }
        // only reachable through chains of weight-0 unary symbols over x
        (Term::App(..), Term::Var(x)) => s.occurs(*x),
        _ => false,
    }
}

pub fn tkbo_compare(s: &Term, t: &Term, prec: &Precedence, w: &WeightFunction) -> Comparison {
    if s == t {
        Comparison::Equal
    } else if greater(s, t, prec, w) {
        Comparison::Greater
    } else if greater(t, s, prec, w) {
        Comparison::Less
    } else {
        Comparison::Incomparable
    }
}
