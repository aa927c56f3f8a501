//! Line-delimited JSON traces of a run, and their independent replay.
//!
//! A trace starts with a `header` record holding the specification text and
//! the prover settings, then one `input` record per initial clause, one
//! `inference` record per derived clause, and a final `result` record.
//! Clauses, programs and unifiers appear in their canonical printed form, so
//! replay compares conclusions textually.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::calculus::{Calculus, Rule, Site};
use crate::clause::AnswerClause;
use crate::error::{Error, Result};
use crate::order::{Precedence, Selection, TermOrder, WeightFunction};
use crate::preprocess::{preprocess, Problem};
use crate::saturation::{extract_program, simplify_program, Config, Outcome, SynthesisResult};
use crate::syntax::{parse_spec, Printer};
use crate::term::{Expr, Signature, Substitutable, Var, VarGen};

pub const FORMAT: &str = "supra-trace/1";

/// Everything needed to rebuild the initial clauses and the calculus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub format: String,
    pub spec: String,
    /// `lpo` or `tkbo`.
    pub ordering: String,
    /// All symbols, greatest first.
    pub precedence: Vec<String>,
    /// `maximal` or `negative`.
    pub selection: String,
    pub abstraction: bool,
    pub bool_axiom: bool,
    pub all_solutions: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreshVar {
    pub id: u32,
    pub sort: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub clause: usize,
    pub answer: String,
    pub program: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Record {
    Header(Header),
    Input {
        id: usize,
        clause: String,
    },
    Inference {
        id: usize,
        rule: Rule,
        premises: Vec<usize>,
        site: Site,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        renaming_base: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fresh: Option<FreshVar>,
        unifier: Vec<(String, String)>,
        conclusion: String,
    },
    Result {
        /// `success`, `saturated` or `limit`.
        status: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        reason: Option<String>,
        solutions: Vec<SolutionRecord>,
    },
}

/// Rebuilds the settings a header describes.
pub fn header_for(spec: &str, problem: &Problem, config: &Config, bool_axiom: bool) -> Header {
    let sig = &problem.signature;
    Header {
        format: FORMAT.into(),
        spec: spec.into(),
        ordering: config.order.name().into(),
        precedence: config
            .order
            .precedence()
            .descending()
            .into_iter()
            .map(|f| sig.name(f).to_string())
            .collect(),
        selection: config.selection.name().into(),
        abstraction: config.abstraction,
        bool_axiom,
        all_solutions: config.all_solutions,
    }
}

fn unifier_pairs(pr: &Printer, sigma: &crate::term::Substitution) -> Vec<(String, String)> {
    sigma
        .iter()
        .map(|(v, t)| (pr.var(*v), pr.term(t)))
        .collect()
}

/// All records of a finished run, in file order.
pub fn records(header: Header, problem: &Problem, outcome: &Outcome) -> Vec<Record> {
    let sig = &problem.signature;
    let pr = Printer::new(sig);
    let names = &problem.spec.var_names;
    let spr = Printer::with_names(&problem.spec.signature, names);
    let mut out = vec![Record::Header(header)];
    for (id, c) in outcome.clauses[..outcome.initial].iter().enumerate() {
        out.push(Record::Input {
            id,
            clause: pr.answer_clause(c),
        });
    }
    for inf in &outcome.log {
        out.push(Record::Inference {
            id: inf.id,
            rule: inf.rule,
            premises: inf.premises.clone(),
            site: inf.site.clone(),
            renaming_base: inf.renaming_base,
            fresh: inf.fresh.map(|v| FreshVar {
                id: v.id,
                sort: sig.sort_name(v.sort).into(),
            }),
            unifier: unifier_pairs(&pr, &inf.unifier),
            conclusion: pr.answer_clause(&inf.conclusion),
        });
    }
    let (status, reason) = match &outcome.result {
        SynthesisResult::Success { .. } => ("success", None),
        SynthesisResult::Saturated => ("saturated", None),
        SynthesisResult::LimitReached(k) => ("limit", Some(k.to_string())),
    };
    out.push(Record::Result {
        status: status.into(),
        reason,
        solutions: outcome
            .solutions
            .iter()
            .map(|s| SolutionRecord {
                clause: s.clause,
                answer: pr.program(&s.answer),
                program: spr.program(&s.program),
            })
            .collect(),
    });
    out
}

pub fn write_records(mut w: impl Write, records: &[Record]) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records(r: impl BufRead) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for line in r.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line)?);
    }
    Ok(out)
}

/// Re-creates the problem and prover configuration from a header.
pub fn setup(header: &Header) -> Result<(Problem, Config)> {
    if header.format != FORMAT {
        return Err(Error::Config(format!("unknown trace format `{}`", header.format)));
    }
    let spec = parse_spec(&header.spec)?;
    let mut problem = preprocess(&spec)?;
    if header.bool_axiom {
        problem = problem.with_bool_axiom();
    }
    let sig = &problem.signature;
    let ids = header
        .precedence
        .iter()
        .map(|n| {
            sig.symbol_id(n)
                .ok_or_else(|| Error::Config(format!("unknown symbol `{n}` in precedence")))
        })
        .collect::<Result<Vec<_>>>()?;
    let prec = Precedence::from_descending(sig, &ids)?;
    let order = match header.ordering.as_str() {
        "lpo" => TermOrder::Lpo(prec),
        "tkbo" => {
            let w = WeightFunction::standard(sig);
            w.validate(sig, &prec)?;
            TermOrder::Tkbo(prec, w)
        }
        other => return Err(Error::Config(format!("unknown ordering `{other}`"))),
    };
    let selection = match header.selection.as_str() {
        "maximal" => Selection::Maximal,
        "negative" => Selection::NegativeFirst,
        other => return Err(Error::Config(format!("unknown selection `{other}`"))),
    };
    let mut config = Config::new(order);
    config.selection = selection;
    config.abstraction = header.abstraction;
    config.all_solutions = header.all_solutions;
    Ok((problem, config))
}

/// What a successful replay checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayReport {
    pub inputs: usize,
    pub inferences: usize,
    pub status: String,
    /// Solution programs, re-extracted and confirmed.
    pub programs: Vec<String>,
}

fn mismatch(record: usize, message: impl Into<String>) -> Error {
    Error::Replay {
        record,
        message: message.into(),
    }
}

fn sort_named(sig: &Signature, name: &str, record: usize) -> Result<crate::term::SortId> {
    sig.sort_id(name)
        .ok_or_else(|| mismatch(record, format!("unknown sort `{name}`")))
}

/// Re-derives every inference of a trace from its recorded premises,
/// site, renaming and fresh variable, checking rule side conditions,
/// unifiers and conclusions, then re-extracts every reported program.
pub fn replay(records: &[Record]) -> Result<ReplayReport> {
    let Some(Record::Header(header)) = records.first() else {
        return Err(mismatch(0, "trace does not start with a header"));
    };
    let (problem, config) = setup(header)?;
    let sig = &problem.signature;
    let pr = Printer::new(sig);
    let spr = Printer::with_names(&problem.spec.signature, &problem.spec.var_names);
    let calc = Calculus::new(sig, &config.order, config.selection);
    let mut clauses: BTreeMap<usize, AnswerClause> = BTreeMap::new();
    let mut report = ReplayReport {
        inputs: 0,
        inferences: 0,
        status: String::new(),
        programs: Vec::new(),
    };
    let mut finished = false;
    for (n, rec) in records.iter().enumerate().skip(1) {
        if finished {
            return Err(mismatch(n, "record after the result"));
        }
        match rec {
            Record::Header(_) => return Err(mismatch(n, "second header")),
            Record::Input { id, clause } => {
                let expected = problem
                    .clauses
                    .get(*id)
                    .filter(|_| *id == report.inputs && report.inferences == 0)
                    .ok_or_else(|| mismatch(n, format!("unexpected input clause {id}")))?;
                let printed = pr.answer_clause(expected);
                if printed != *clause {
                    return Err(mismatch(n, format!("input {id} is `{clause}`, preprocessing gives `{printed}`")));
                }
                clauses.insert(*id, expected.clone());
                report.inputs += 1;
            }
            Record::Inference {
                id,
                rule,
                premises,
                site,
                renaming_base,
                fresh,
                unifier,
                conclusion,
            } => {
                if report.inputs != problem.clauses.len() {
                    return Err(mismatch(n, "inference before all input clauses"));
                }
                if *id != report.inputs + report.inferences {
                    return Err(mismatch(n, format!("expected clause id {}, found {id}", report.inputs + report.inferences)));
                }
                let found = premises
                    .iter()
                    .map(|p| {
                        clauses
                            .get(p)
                            .cloned()
                            .ok_or_else(|| mismatch(n, format!("premise {p} is not an earlier clause")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let fresh_var = match fresh {
                    Some(f) => {
                        let v = Var::new(f.id, sort_named(sig, &f.sort, n)?);
                        if found.iter().any(|c| c.vars().contains(&v)) {
                            return Err(mismatch(n, "abstraction variable is not fresh"));
                        }
                        Some(v)
                    }
                    None => None,
                };
                let premise_refs: Vec<AnswerClause> = match (rule, found.as_slice()) {
                    (Rule::SupC | Rule::SupU, [left, right]) => {
                        let base = renaming_base
                            .ok_or_else(|| mismatch(n, "superposition without a renaming base"))?;
                        let ren = VarGen::starting_at(base).renaming(left);
                        let left = left.apply(&ren);
                        let lv = left.vars();
                        if right.vars().iter().any(|v| lv.contains(v)) {
                            return Err(mismatch(n, "premises are not variable-disjoint after renaming"));
                        }
                        vec![left, right.clone()]
                    }
                    _ => found,
                };
                let refs: Vec<&AnswerClause> = premise_refs.iter().collect();
                let derived = calc
                    .apply(*rule, site, &refs, fresh_var)
                    .ok_or_else(|| mismatch(n, format!("{} is not applicable at the recorded site", rule.name())))?;
                let printed = pr.answer_clause(&derived.clause);
                if printed != *conclusion {
                    return Err(mismatch(n, format!("conclusion is `{conclusion}`, replay gives `{printed}`")));
                }
                let printed_unifier = unifier_pairs(&pr, &derived.unifier);
                if printed_unifier != *unifier {
                    return Err(mismatch(n, "recorded unifier differs from the recomputed one"));
                }
                clauses.insert(*id, derived.clause);
                report.inferences += 1;
            }
            Record::Result {
                status,
                reason: _,
                solutions,
            } => {
                if (status == "success") == solutions.is_empty() {
                    return Err(mismatch(n, "status and solutions disagree"));
                }
                for s in solutions {
                    let clause = clauses
                        .get(&s.clause)
                        .ok_or_else(|| mismatch(n, format!("solution clause {} was never derived", s.clause)))?;
                    if !clause.is_empty() {
                        return Err(mismatch(n, format!("solution clause {} is not empty", s.clause)));
                    }
                    if pr.program(&clause.answer) != s.answer {
                        return Err(mismatch(n, format!("answer of clause {} differs", s.clause)));
                    }
                    let raw = extract_program(clause, &problem, config.order.precedence())?;
                    let program = spr.program(&simplify_program(&raw));
                    if program != s.program {
                        return Err(mismatch(n, format!("program is `{}`, extraction gives `{program}`", s.program)));
                    }
                    report.programs.push(program);
                }
                report.status = status.clone();
                finished = true;
            }
        }
    }
    if !finished {
        return Err(mismatch(records.len(), "trace has no result record"));
    }
    Ok(report)
}
