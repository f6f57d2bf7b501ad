//! The `dtcsp` command line.
//!
//! Exit codes: 0 satisfiable (or success), 1 unsatisfiable (or a failed
//! check), 2 input error, 3 budget exhausted or class undetermined.

mod report;

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use indexmap::IndexMap;

use dtcsp::classifier::VerdictClass;
use dtcsp::oracle::{random_instance, random_language};
use dtcsp::{
    classify, parse_instance, parse_language, solve_with, ComplexityVerdict, ConstraintLanguage,
    Dialect, Error, Instance, Limits, Method,
};

pub use report::{named_assignment, ReportStats, RunReport, Status};

pub const EXIT_SAT: i32 = 0;
pub const EXIT_UNSAT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "dtcsp",
    version,
    about = "Classify and solve discrete temporal CSPs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the complexity class of a language.
    Classify {
        /// Language file (.dtl).
        language: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Solve one or more instances over a language.
    Solve(SolveArgs),
    /// Write a random language and instance.
    Gen(GenArgs),
    /// Check a claimed assignment.
    Check {
        language: PathBuf,
        instance: PathBuf,
        /// JSON object mapping variables to integers, or a `solve --json` report.
        assignment: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Horn,
    Ac,
    Modmax,
    Bt,
    Brute,
}

impl MethodArg {
    fn forced(self) -> Option<Method> {
        match self {
            MethodArg::Auto => None,
            MethodArg::Horn => Some(Method::Horn),
            MethodArg::Ac => Some(Method::Ac),
            MethodArg::Modmax => Some(Method::Modmax),
            MethodArg::Bt => Some(Method::Backtracking),
            MethodArg::Brute => Some(Method::Brute),
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Language file (.dtl).
    pub language: PathBuf,
    /// Instance files (.dti), solved in order.
    #[arg(required = true)]
    pub instances: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: MethodArg,
    /// Search `{0, ..., N-1}` instead of the bounded window (ac, bt, brute).
    #[arg(long)]
    pub window: Option<i64>,
    /// Emit one JSON report per line.
    #[arg(long)]
    pub json: bool,
    /// Recorded in the report for reproducibility.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub seed: u64,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 3)]
    pub relations: usize,
    #[arg(long, default_value_t = 3)]
    pub max_arity: usize,
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long, default_value_t = 5)]
    pub vars: usize,
    #[arg(long, default_value_t = 5)]
    pub constraints: usize,
    /// Use only `=` and `!=` literals.
    #[arg(long)]
    pub successor: bool,
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_budget() {
        EXIT_BUDGET
    } else {
        EXIT_INPUT
    }
}

fn read(path: &Path) -> Result<String, (i32, String)> {
    fs::read_to_string(path).map_err(|e| (EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn load_language(path: &Path) -> Result<ConstraintLanguage, (i32, String)> {
    let text = read(path)?;
    parse_language(&text).map_err(|e| (exit_code(&e), format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path, lang: &mut ConstraintLanguage) -> Result<Instance, (i32, String)> {
    let text = read(path)?;
    parse_instance(&text, lang).map_err(|e| (exit_code(&e), format!("{}: {e}", path.display())))
}

/// Runs a parsed command, writing to `out`; returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Classify { language, json } => cmd_classify(&language, json, out),
        Command::Solve(args) => cmd_solve(&args, out),
        Command::Gen(args) => cmd_gen(&args, out),
        Command::Check {
            language,
            instance,
            assignment,
        } => cmd_check(&language, &instance, &assignment, out),
    };
    match result {
        Ok(code) => code,
        Err((code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn io_err(e: std::io::Error) -> (i32, String) {
    (EXIT_INPUT, e.to_string())
}

fn print_verdict(v: &ComplexityVerdict, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "{v}")?;
    for c in &v.checks {
        writeln!(out, "  check: {c}")?;
    }
    for n in &v.notes {
        writeln!(out, "  note: {n}")?;
    }
    for w in &v.certificate {
        writeln!(
            out,
            "  witness: {} under {}: {:?}, {:?} -> {:?}",
            w.relation, w.operation, w.first, w.second, w.image
        )?;
    }
    Ok(())
}

fn cmd_classify(path: &Path, json: bool, out: &mut dyn Write) -> Result<i32, (i32, String)> {
    let lang = load_language(path)?;
    let start = Instant::now();
    let verdict = classify(&lang, &Limits::default());
    let code = if verdict.class == VerdictClass::DegenerateOrUnknown {
        EXIT_BUDGET
    } else {
        EXIT_SAT
    };
    if json {
        let mut report = RunReport::empty();
        report.stats.wall_time_us = start.elapsed().as_micros() as u64;
        report.verdict = Some(verdict);
        writeln!(out, "{}", serde_json::to_string(&report).unwrap()).map_err(io_err)?;
    } else {
        print_verdict(&verdict, out).map_err(io_err)?;
    }
    Ok(code)
}

/// Solves every instance; the exit code is the largest per-instance code.
fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> Result<i32, (i32, String)> {
    let base = load_language(&args.language)?;
    if let Some(w) = args.window {
        if w < 1 {
            return Err((EXIT_INPUT, "--window must be positive".into()));
        }
    }
    let limits = Limits::default();
    let mut verdicts: HashMap<String, ComplexityVerdict> = HashMap::new();
    let mut worst = EXIT_SAT;
    for path in &args.instances {
        let mut lang = base.clone();
        let (report, code) = match load_instance(path, &mut lang) {
            Err((code, msg)) => {
                let mut r = RunReport::empty();
                r.status = Some(Status::Error);
                r.error = Some(msg);
                (r, code)
            }
            Ok(inst) => {
                // sugar lines may add relations, so the cache key is the full language
                let verdict = verdicts
                    .entry(lang.to_dtl())
                    .or_insert_with(|| classify(&lang, &limits))
                    .clone();
                solve_one(&lang, &inst, verdict, args, &limits)
            }
        };
        let mut report = report;
        report.instance = Some(path.display().to_string());
        report.seed = args.seed;
        worst = worst.max(code);
        if args.json {
            writeln!(out, "{}", serde_json::to_string(&report).unwrap()).map_err(io_err)?;
        } else {
            print_report(&report, out).map_err(io_err)?;
        }
    }
    Ok(worst)
}

fn solve_one(
    lang: &ConstraintLanguage,
    inst: &Instance,
    verdict: ComplexityVerdict,
    args: &SolveArgs,
    limits: &Limits,
) -> (RunReport, i32) {
    let mut report = RunReport::empty();
    let method = args
        .method
        .forced()
        .unwrap_or_else(|| Method::for_class(verdict.class));
    if let Some(m) = args.method.forced() {
        if m != Method::for_class(verdict.class) {
            report.notes.push(format!(
                "method {m} forced; verdict suggests {}",
                Method::for_class(verdict.class)
            ));
        }
    }
    report.method = Some(method);
    let start = Instant::now();
    let result = solve_with(lang, inst, method, &verdict, args.window, limits);
    let elapsed = start.elapsed().as_micros() as u64;
    report.verdict = Some(verdict);
    match result {
        Err(e) => {
            report.status = Some(Status::Error);
            report.error = Some(e.to_string());
            report.stats.wall_time_us = elapsed;
            (report, exit_code(&e))
        }
        Ok(sol) => {
            report.stats = ReportStats::new(&sol.stats, elapsed);
            match sol.assignment() {
                Some(a) => match inst.first_violation(lang, &a.values) {
                    Ok(None) => {
                        report.status = Some(Status::Sat);
                        report.assignment = Some(named_assignment(inst, &a.values));
                        (report, EXIT_SAT)
                    }
                    _ => {
                        report.status = Some(Status::Error);
                        report.error =
                            Some("solver returned an assignment that fails verification".into());
                        (report, EXIT_INPUT)
                    }
                },
                None => {
                    report.status = Some(Status::Unsat);
                    report.notes.extend(sol.reason);
                    (report, EXIT_UNSAT)
                }
            }
        }
    }
}

fn print_report(r: &RunReport, out: &mut dyn Write) -> std::io::Result<()> {
    let status = match r.status {
        Some(Status::Sat) => "SAT",
        Some(Status::Unsat) => "UNSAT",
        _ => "ERROR",
    };
    write!(out, "{}: {status}", r.instance.as_deref().unwrap_or("-"))?;
    if let Some(m) = r.method {
        write!(out, " (method {m}")?;
        if let Some(v) = &r.verdict {
            write!(out, ", verdict {v}")?;
        }
        write!(out, ")")?;
    }
    writeln!(out)?;
    if let Some(a) = &r.assignment {
        for (k, v) in a {
            writeln!(out, "  {k} = {v}")?;
        }
    }
    for n in &r.notes {
        writeln!(out, "  note: {n}")?;
    }
    if let Some(e) = &r.error {
        writeln!(out, "  error: {e}")?;
    }
    Ok(())
}

fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<i32, (i32, String)> {
    let dialect = if args.successor {
        Dialect::SuccessorOnly
    } else {
        Dialect::Order
    };
    let lang: ConstraintLanguage =
        random_language(dialect, args.relations, args.max_arity, args.q, args.seed);
    let inst = random_instance(&lang, args.vars, args.constraints, args.seed);
    fs::create_dir_all(&args.out).map_err(io_err)?;
    let stem = format!("gen-{}", args.seed);
    let dtl = args.out.join(format!("{stem}.dtl"));
    let dti = args.out.join(format!("{stem}.dti"));
    let header = format!("# dtcsp gen --seed {}\n", args.seed);
    fs::write(&dtl, format!("{header}{}", lang.to_dtl())).map_err(io_err)?;
    fs::write(&dti, format!("{header}{}", inst.to_dti())).map_err(io_err)?;
    writeln!(out, "{}\n{}", dtl.display(), dti.display()).map_err(io_err)?;
    Ok(EXIT_SAT)
}

fn parse_assignment(text: &str) -> Result<IndexMap<String, i64>, String> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let map = match value.get("assignment") {
        Some(inner) if value.get("status").is_some() => inner.clone(),
        _ => value,
    };
    serde_json::from_value(map).map_err(|e| e.to_string())
}

fn cmd_check(
    lang_path: &Path,
    inst_path: &Path,
    assignment_path: &Path,
    out: &mut dyn Write,
) -> Result<i32, (i32, String)> {
    let mut lang = load_language(lang_path)?;
    let inst = load_instance(inst_path, &mut lang)?;
    let text = read(assignment_path)?;
    let named = parse_assignment(&text)
        .map_err(|e| (EXIT_INPUT, format!("{}: {e}", assignment_path.display())))?;
    let mut values = Vec::with_capacity(inst.num_vars());
    for v in inst.variables() {
        match named.get(v) {
            Some(&x) => values.push(x),
            None => return Err((EXIT_INPUT, format!("assignment has no value for `{v}`"))),
        }
    }
    match inst.first_violation(&lang, &values) {
        Ok(None) => {
            writeln!(out, "OK").map_err(io_err)?;
            Ok(EXIT_SAT)
        }
        Ok(Some(i)) => {
            let c = &inst.constraints()[i];
            let args: Vec<&str> = c
                .args
                .iter()
                .map(|&a| inst.variables()[a].as_str())
                .collect();
            writeln!(out, "VIOLATED: {}({})", c.relation, args.join(", ")).map_err(io_err)?;
            Ok(EXIT_UNSAT)
        }
        Err(e) => Err((exit_code(&e), e.to_string())),
    }
}
