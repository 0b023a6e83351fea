//! Argument handling and the two subcommands.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use irrepcount_core::budget::{Budget, Clock, Limits};
use irrepcount_core::count::{build_quotient_basis, trace_form_rank, FiniteDimAlgebra, TraceFormReport};
use irrepcount_core::decide::{analyze_with_budget, Analysis, DecisionInput, DecisionOptions, Outcome, QuotientMode};
use irrepcount_core::genmat::SSetOptions;
use irrepcount_core::poly::MonomialOrder;

use crate::dump::{self, DumpKind};
use crate::exec::{StdClock, Threaded};
use crate::report::{InputEcho, OptionsEcho, RunReport, Status};
use crate::text::parse_presentation;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_INFINITE: i32 = 4;

const AFTER_HELP: &str = "\
Counts are over the algebraic closure: every class of irreducible
representations over the closure counts once, even when its traces are
not rational (k<X>/(X^2+1) at n=1 has count 2).

Exit codes: 0 ok, 1 internal error, 2 parse/usage/IO error,
3 inconclusive (a resource limit was hit), 4 count requested but the
verdict is INFINITE.";

#[derive(Debug, Parser)]
#[command(name = "irrepcount", version, about = "Finiteness and counting of irreducible n-dimensional representations of finitely presented algebras", after_help = AFTER_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether there are finitely many classes of irreducible
    /// n-dimensional representations. Prints FINITE, INFINITE or INCONCLUSIVE.
    Decide(RunArgs),
    /// Count the classes of irreducible n-dimensional representations over
    /// the algebraic closure (closure points, not rational points).
    Count(RunArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Lex,
    Grevlex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// J = I : <S>^inf (closure of the irreducible locus).
    Saturate,
    /// J = I : <S>, a single quotient step.
    Single,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Matrix dimension.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    /// Print the JSON report on stdout instead of the verdict line.
    #[arg(long)]
    pub json: bool,
    /// Print metrics and per-stage timings on stderr.
    #[arg(long)]
    pub verbose: bool,
    /// Dump an intermediate object; repeatable.
    #[arg(long, value_enum)]
    pub dump: Vec<DumpKind>,
    /// Wall-clock budget in seconds; 0 disables it.
    #[arg(long, default_value_t = 300)]
    pub max_seconds: u64,
    /// Largest total degree allowed inside a Groebner computation.
    #[arg(long, default_value_t = 60)]
    pub max_degree: u32,
    /// Largest number of polynomials a single basis may hold.
    #[arg(long, default_value_t = 20_000)]
    pub max_basis_size: usize,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,
    /// Base monomial order.
    #[arg(long, value_enum, default_value_t = OrderArg::Grevlex)]
    pub order: OrderArg,
    /// How J is formed from the relation ideal and the irreducibility set.
    #[arg(long, value_enum, default_value_t = ModeArg::Saturate)]
    pub quotient_mode: ModeArg,
    /// Use words of at most this length for the irreducibility set.
    #[arg(long)]
    pub length_bound_override: Option<usize>,
    /// Presentation file.
    pub file: PathBuf,
}

impl RunArgs {
    fn options(&self) -> DecisionOptions {
        DecisionOptions {
            mode: match self.quotient_mode {
                ModeArg::Saturate => QuotientMode::Saturate,
                ModeArg::Single => QuotientMode::SingleStep,
            },
            limits: Limits {
                max_degree: self.max_degree,
                max_basis_size: self.max_basis_size,
                max_millis: (self.max_seconds > 0).then(|| self.max_seconds.saturating_mul(1000)),
            },
            order: match self.order {
                OrderArg::Lex => MonomialOrder::Lex,
                OrderArg::Grevlex => MonomialOrder::GrevLex,
            },
            sset: SSetOptions {
                length_bound_override: self.length_bound_override,
            },
        }
    }
}

/// Runs the command line `argv` (program name first) and returns the exit
/// code. Normal output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_INPUT
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let (command, args) = match &cli.command {
        Command::Decide(a) => ("decide", a),
        Command::Count(a) => ("count", a),
    };
    let (report, human, dumps) = execute(command, args);
    emit(&report, &human, &dumps, args, out, err);
    exit_code(&report)
}

fn exit_code(r: &RunReport) -> i32 {
    match r.status {
        Status::Ok => EXIT_OK,
        Status::Inconclusive => EXIT_INCONCLUSIVE,
        Status::Error => {
            if r.verdict == Some(Outcome::Infinite.name()) {
                EXIT_INFINITE
            } else if r.verdict.is_some()
                || r.metrics.is_some()
                || r.error.as_deref().is_some_and(|e| e.starts_with("internal"))
            {
                EXIT_INTERNAL
            } else {
                EXIT_INPUT
            }
        }
    }
}

fn emit(report: &RunReport, human: &str, dumps: &str, args: &RunArgs, out: &mut dyn Write, err: &mut dyn Write) {
    for w in &report.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    if args.json {
        let _ = writeln!(out, "{}", report.to_json());
        let _ = write!(err, "{dumps}");
    } else {
        if let Some(e) = &report.error {
            let _ = writeln!(err, "error: {e}");
        }
        if !human.is_empty() {
            let _ = writeln!(out, "{human}");
        }
        let _ = write!(out, "{dumps}");
    }
    if args.verbose {
        let _ = write!(err, "{}", verbose_text(report));
    }
}

fn verbose_text(r: &RunReport) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    let i = &r.input;
    let _ = writeln!(
        s,
        "input: {} (n={}, mode={}, order={})",
        i.name.as_deref().unwrap_or("-"),
        i.n,
        i.options.quotient_mode,
        i.options.order
    );
    let _ = writeln!(s, "status: {:?}", r.status);
    if let Some(m) = &r.metrics {
        let _ = writeln!(s, "variables: {}", m.variables);
        let _ = writeln!(
            s,
            "relations: {} generators, basis {} (max degree {})",
            m.relation_generators, m.relation_basis_size, m.relation_basis_max_degree
        );
        let _ = writeln!(
            s,
            "irreducibility set: {} members ({} used), {} tuples, {} evaluated",
            m.sset_size, m.sset_used, m.sset_raw_tuples, m.sset_evaluated_tuples
        );
        let _ = writeln!(s, "trace generators: {}", m.trace_generators);
        let _ = writeln!(s, "J basis: {} (max degree {})", m.j_basis_size, m.j_basis_max_degree);
        if let Some(d) = m.algebra_dimension {
            let _ = writeln!(s, "algebra dimension: {d}, trace form rank: {}", m.trace_form_rank.unwrap_or(0));
        }
    }
    for (g, d) in &r.minimal_polynomials {
        let _ = writeln!(s, "minimal polynomial degree {d}: {g}");
    }
    let t = &r.timings_ms;
    let _ = writeln!(
        s,
        "timings (ms): parse {} space {} relations {} sset {} j {} algebraic {} count {} total {}",
        t.parse, t.space, t.relations, t.sset, t.j, t.algebraic, t.count, t.total
    );
    s
}

/// Runs one subcommand; returns the report, the human-readable verdict line
/// and the rendered dumps.
pub fn execute(command: &'static str, args: &RunArgs) -> (RunReport, String, String) {
    let clock = StdClock::new();
    let options = args.options();
    let echo = InputEcho {
        name: args.file.file_stem().map(|s| s.to_string_lossy().into_owned()),
        file: args.file.display().to_string(),
        n: args.n as usize,
        generators: None,
        relations: None,
        options: OptionsEcho {
            quotient_mode: options.mode.name(),
            order: options.order.name(),
            max_seconds: args.max_seconds,
            max_degree: args.max_degree,
            max_basis_size: args.max_basis_size,
            length_bound_override: args.length_bound_override,
        },
    };
    let mut report = RunReport::new(command, echo);
    let (human, dumps) = execute_into(&mut report, command, args, options, &clock);
    report.timings_ms.total = clock.now_millis();
    (report, human, dumps)
}

fn execute_into(
    report: &mut RunReport,
    command: &str,
    args: &RunArgs,
    options: DecisionOptions,
    clock: &StdClock,
) -> (String, String) {
    let source = match std::fs::read_to_string(&args.file) {
        Ok(s) => s,
        Err(e) => {
            report.error = Some(format!("cannot read {}: {e}", args.file.display()));
            return (String::new(), String::new());
        }
    };
    let parsed = match parse_presentation(&source, report.input.name.clone()) {
        Ok(p) => p,
        Err(e) => {
            report.error = Some(format!("{}: {e}", args.file.display()));
            return (String::new(), String::new());
        }
    };
    report.timings_ms.parse = clock.now_millis();
    report.warnings = parsed.warnings.iter().map(|w| w.to_string()).collect();
    report.input.generators = Some(parsed.presentation.generator_count());
    report.input.relations = Some(parsed.presentation.relations().len());

    let input = DecisionInput {
        presentation: parsed.presentation,
        n: args.n as usize,
        options,
    };
    let executor = match args.threads {
        Some(t) => Threaded::new(t as usize),
        None => Threaded::available(),
    };
    let budget = Budget::new(input.options.limits, Some(clock as &dyn Clock));
    let analysis = match analyze_with_budget(&input, &budget, &executor) {
        Ok(a) => a,
        Err(e) => {
            report.error = Some(format!("internal: {e}"));
            return (String::new(), String::new());
        }
    };
    let verdict = &analysis.verdict;
    report.record_verdict(verdict);

    let mut algebra: Option<(FiniteDimAlgebra, TraceFormReport)> = None;
    let wants_algebra = command == "count" || args.dump.contains(&DumpKind::Algebra);
    let human = match verdict.outcome {
        Outcome::Finite => {
            report.status = Status::Ok;
            let mut line = "FINITE".to_string();
            if wants_algebra {
                let start = clock.now_millis();
                let j = analysis.j.as_ref().expect("finite verdicts carry J");
                match build_quotient_basis(&analysis.generators, j, &budget, &executor) {
                    Ok(d) => {
                        let tf = trace_form_rank(&d);
                        if let Some(m) = report.metrics.as_mut() {
                            m.algebra_dimension = Some(d.dim());
                            m.trace_form_rank = Some(tf.rank);
                        }
                        if command == "count" {
                            report.count = Some(tf.count);
                            line = tf.count.to_string();
                        }
                        algebra = Some((d, tf));
                    }
                    Err(limit) if command == "count" => {
                        report.status = Status::Inconclusive;
                        line = format!("INCONCLUSIVE ({limit})");
                        report.limit = Some(limit.to_string());
                    }
                    // the verdict stands; only the dump is missing
                    Err(_) => {}
                }
                report.timings_ms.count = clock.now_millis() - start;
            }
            line
        }
        Outcome::Infinite => {
            let witness = report.witness.clone().unwrap_or_default();
            if command == "count" {
                report.status = Status::Error;
                report.error = Some(format!("count requested but the verdict is INFINITE (witness: {witness})"));
            } else {
                report.status = Status::Ok;
            }
            format!("INFINITE (witness: {witness})")
        }
        Outcome::Inconclusive => {
            report.status = Status::Inconclusive;
            format!("INCONCLUSIVE ({})", report.limit.as_deref().unwrap_or("limit exceeded"))
        }
    };
    let dumps = render_dumps(&args.dump, &analysis, algebra.as_ref());
    (human, dumps)
}

fn render_dumps(kinds: &[DumpKind], a: &Analysis, algebra: Option<&(FiniteDimAlgebra, TraceFormReport)>) -> String {
    kinds
        .iter()
        .map(|&k| dump::render(k, a, algebra.map(|(d, r)| (d, r))))
        .collect()
}
