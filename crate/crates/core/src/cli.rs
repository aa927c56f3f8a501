//! Command-line front end: `supra SPEC [flags]` synthesizes a program,
//! `supra replay TRACE` re-checks a trace.
//!
//! Exit codes: 0 success (verified if requested), 1 saturated without a
//! program, 2 limit reached, 3 verification counterexample, 4 input error;
//! `replay` exits 5 on a mismatch.

use std::ffi::OsString;
use std::fs;
use std::io::{BufReader, Write};
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::oracle::{check_solution, Verdict};
use crate::order::{make_partitioned_precedence, make_precedence, Selection, TermOrder, WeightFunction};
use crate::preprocess::{preprocess, Problem};
use crate::saturation::{saturate, Config, Limits, Outcome, SynthesisResult};
use crate::syntax::{parse_spec, Printer};
use crate::trace::{self, header_for, Record};

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_SATURATED: i32 = 1;
pub const EXIT_LIMIT: i32 = 2;
pub const EXIT_COUNTEREXAMPLE: i32 = 3;
pub const EXIT_INPUT_ERROR: i32 = 4;
pub const EXIT_REPLAY_MISMATCH: i32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Ordering {
    #[default]
    Lpo,
    Tkbo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum SelectionArg {
    /// Every maximal literal.
    #[default]
    Maximal,
    /// Maximal negative literals when there are any.
    Negative,
}

/// Prover settings independent of the specification.
#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Simplification order.
    #[arg(long, value_enum, default_value_t = Ordering::Lpo)]
    pub ordering: Ordering,
    /// Comma-separated symbols, greatest first; they are placed above the
    /// remaining symbols of their class.
    #[arg(long, value_delimiter = ',')]
    pub precedence: Vec<String>,
    /// Allow a precedence that does not put uncomputable symbols above
    /// computable ones.
    #[arg(long)]
    pub no_partition: bool,
    /// Literal selection.
    #[arg(long, value_enum, default_value_t = SelectionArg::Maximal)]
    pub selection: SelectionArg,
    #[arg(long, default_value_t = 10_000)]
    pub max_iterations: usize,
    #[arg(long, default_value_t = 100_000)]
    pub max_clauses: usize,
    /// Time budget in seconds.
    #[arg(long, default_value_t = 60.0)]
    pub timeout: f64,
    /// Report every solution found within the limits.
    #[arg(long)]
    pub all_solutions: bool,
    /// Disable the abstraction rule.
    #[arg(long)]
    pub no_abs: bool,
    /// Add the clause `true != false` to the initial set.
    #[arg(long)]
    pub inject_bool_axiom: bool,
    /// Given-clause picks by age and by weight per round, as `AGE:WEIGHT`.
    #[arg(long, value_parser = parse_ratio, default_value = "1:1", value_name = "AGE:WEIGHT")]
    pub pick_ratio: (u32, u32),
}

fn parse_ratio(text: &str) -> std::result::Result<(u32, u32), String> {
    let (a, w) = text
        .split_once(':')
        .ok_or_else(|| format!("expected AGE:WEIGHT, found `{text}`"))?;
    let a = a.trim().parse::<u32>().map_err(|e| e.to_string())?;
    let w = w.trim().parse::<u32>().map_err(|e| e.to_string())?;
    if a + w == 0 {
        return Err("the ratio needs at least one pick".into());
    }
    Ok((a, w))
}

impl Default for Options {
    fn default() -> Self {
        Options {
            ordering: Ordering::Lpo,
            precedence: Vec::new(),
            no_partition: false,
            selection: SelectionArg::Maximal,
            max_iterations: 10_000,
            max_clauses: 100_000,
            timeout: 60.0,
            all_solutions: false,
            no_abs: false,
            inject_bool_axiom: false,
            pick_ratio: (1, 1),
        }
    }
}

impl Options {
    pub fn limits(&self) -> Limits {
        Limits {
            max_iterations: self.max_iterations,
            max_clauses: self.max_clauses,
            timeout: Duration::from_secs_f64(self.timeout.max(0.0)),
        }
    }

    /// The initial clauses and prover configuration for a specification.
    pub fn prepare(&self, spec_text: &str) -> Result<(Problem, Config)> {
        let spec = parse_spec(spec_text)?;
        let mut problem = preprocess(&spec)?;
        if self.inject_bool_axiom {
            problem = problem.with_bool_axiom();
        }
        let sig = &problem.signature;
        let hints = self
            .precedence
            .iter()
            .map(|n| {
                sig.symbol_id(n.trim())
                    .ok_or_else(|| Error::Config(format!("unknown symbol `{n}` in --precedence")))
            })
            .collect::<Result<Vec<_>>>()?;
        let prec = if self.no_partition {
            make_precedence(sig, &hints)?
        } else {
            make_partitioned_precedence(sig, &hints)?
        };
        let order = match self.ordering {
            Ordering::Lpo => TermOrder::Lpo(prec),
            Ordering::Tkbo => {
                let w = WeightFunction::standard(sig);
                w.validate(sig, &prec)?;
                TermOrder::Tkbo(prec, w)
            }
        };
        let mut config = Config::new(order);
        config.selection = match self.selection {
            SelectionArg::Maximal => Selection::Maximal,
            SelectionArg::Negative => Selection::NegativeFirst,
        };
        config.abstraction = !self.no_abs;
        config.all_solutions = self.all_solutions;
        (config.age_picks, config.weight_picks) = self.pick_ratio;
        Ok((problem, config))
    }
}

/// A finished synthesis run.
#[derive(Debug, Clone)]
pub struct Run {
    pub problem: Problem,
    pub config: Config,
    pub outcome: Outcome,
    /// The trace of the run.
    pub records: Vec<Record>,
}

impl Run {
    /// Solution programs in the specification's surface syntax.
    pub fn programs(&self) -> Vec<String> {
        let spec = &self.problem.spec;
        let pr = Printer::with_names(&spec.signature, &spec.var_names);
        let mut out: Vec<String> = Vec::new();
        for s in &self.outcome.solutions {
            let p = pr.program(&s.program);
            if !out.contains(&p) {
                out.push(p);
            }
        }
        out
    }
}

/// Parses, preprocesses and saturates a specification.
pub fn synthesize(spec_text: &str, options: &Options) -> Result<Run> {
    let (problem, config) = options.prepare(spec_text)?;
    let outcome = saturate(&problem, &config, options.limits())?;
    let header = header_for(spec_text, &problem, &config, options.inject_bool_axiom);
    let records = trace::records(header, &problem, &outcome);
    Ok(Run {
        problem,
        config,
        outcome,
        records,
    })
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Specification file.
    pub spec: Option<PathBuf>,
    #[command(flatten)]
    pub options: Options,
    /// Check the program on all models up to this carrier size.
    #[arg(long, num_args = 0..=1, default_missing_value = "3", value_name = "SIZE")]
    pub verify: Option<u32>,
    /// Write the inference trace here.
    #[arg(long, value_name = "FILE")]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Re-derive every inference of a trace and re-extract its programs.
    Replay {
        trace: PathBuf,
        /// Also check the replayed programs up to this carrier size.
        #[arg(long, num_args = 0..=1, default_missing_value = "3", value_name = "SIZE")]
        verify: Option<u32>,
    },
}

#[derive(Debug, Parser)]
#[command(name = "supra", version, about = "Synthesize recursion-free programs by superposition")]
#[command(args_conflicts_with_subcommands = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    #[command(flatten)]
    pub run: RunArgs,
}

fn describe_counterexample(problem: &Problem, v: &Verdict) -> String {
    let Verdict::Counterexample {
        interpretation,
        inputs,
    } = v
    else {
        return String::new();
    };
    let spec = &problem.spec;
    let sig = &spec.signature;
    let mut parts: Vec<String> = spec
        .inputs
        .iter()
        .zip(inputs)
        .map(|(x, e)| format!("{} = #{e}", spec.var_name(*x)))
        .collect();
    for f in sig.symbol_ids().skip(2) {
        let d = sig.symbol(f);
        if d.args.is_empty() {
            parts.push(format!("{} = #{}", d.name, interpretation.tables[f.index()][0]));
        }
    }
    let sizes: Vec<String> = sig
        .sort_ids()
        .skip(1)
        .map(|s| format!("|{}| = {}", sig.sort_name(s), interpretation.size(s)))
        .collect();
    format!("{}; {}", sizes.join(", "), parts.join(", "))
}

fn run_synthesis(args: &RunArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let Some(path) = &args.spec else {
        writeln!(err, "error: a specification file is required (see --help)")?;
        return Ok(EXIT_INPUT_ERROR);
    };
    let text = fs::read_to_string(path)?;
    let run = synthesize(&text, &args.options)?;
    if let Some(file) = &args.trace {
        trace::write_records(std::io::BufWriter::new(fs::File::create(file)?), &run.records)?;
    }
    let stats = run.outcome.stats;
    writeln!(
        err,
        "% {} iterations, {} clauses kept, {} generated ({} tautologies, {} duplicates)",
        stats.iterations, stats.kept, stats.generated, stats.tautologies, stats.duplicates
    )?;
    let code = match &run.outcome.result {
        SynthesisResult::Success { .. } => {
            let mut code = EXIT_SUCCESS;
            for (program, solution) in run.programs().iter().zip(&run.outcome.solutions) {
                writeln!(out, "{program}")?;
                if let Some(size) = args.verify {
                    let verdict = check_solution(&run.problem.spec, &solution.program, size)?;
                    match &verdict {
                        Verdict::VerifiedUpTo(n) => writeln!(err, "% verified on all models up to size {n}")?,
                        Verdict::Counterexample { .. } => {
                            writeln!(
                                err,
                                "% counterexample: {}",
                                describe_counterexample(&run.problem, &verdict)
                            )?;
                            code = EXIT_COUNTEREXAMPLE;
                        }
                    }
                }
            }
            code
        }
        SynthesisResult::Saturated => {
            writeln!(err, "% saturated: no inference leads to a program (stuck)")?;
            EXIT_SATURATED
        }
        SynthesisResult::LimitReached(kind) => {
            writeln!(err, "% stopped by the {kind} without a program")?;
            EXIT_LIMIT
        }
    };
    Ok(code)
}

fn run_replay(path: &PathBuf, verify: Option<u32>, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let records = trace::read_records(BufReader::new(fs::File::open(path)?))?;
    let report = match trace::replay(&records) {
        Ok(r) => r,
        Err(e @ Error::Replay { .. }) => {
            writeln!(err, "replay failed: {e}")?;
            return Ok(EXIT_REPLAY_MISMATCH);
        }
        Err(e) => return Err(e),
    };
    writeln!(
        out,
        "replayed {} inputs and {} inferences: {}",
        report.inputs, report.inferences, report.status
    )?;
    for p in &report.programs {
        writeln!(out, "{p}")?;
    }
    if let (Some(size), Some(Record::Header(h))) = (verify, records.first()) {
        let (problem, _) = trace::setup(h)?;
        let spec = &problem.spec;
        for p in &report.programs {
            let mut parser = crate::syntax::TextParser::new(&spec.signature)
                .with_vars(spec.var_names.iter().map(|(v, n)| (n.clone(), *v)))
                .starting_at(spec.next_var_id());
            let program = parser.program(p)?;
            if !check_solution(spec, &program, size)?.is_verified() {
                writeln!(err, "% counterexample for `{p}`")?;
                return Ok(EXIT_COUNTEREXAMPLE);
            }
        }
        writeln!(err, "% verified on all models up to size {size}")?;
    }
    Ok(EXIT_SUCCESS)
}

/// Runs the command line `args` (including the program name).
pub fn main_with(args: impl IntoIterator<Item = OsString>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT_ERROR } else { EXIT_SUCCESS };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let result = match &cli.command {
        Some(Command::Replay { trace, verify }) => run_replay(trace, *verify, out, err),
        None => run_synthesis(&cli.run, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT_ERROR
        }
    }
}
