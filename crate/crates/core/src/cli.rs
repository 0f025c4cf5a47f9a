//! The `garside` command line. [`run`] does all the work and returns the
//! exit code with the text to print, so it can be driven from tests.
//!
//! Exit codes: 0 yes / success, 1 no, 2 usage or parse error, 3 unresolved.

use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::canonical::CanonicalBraid;
use crate::conjugacy::{decide_conjugacy_with, ConjugacyOptions, Mode, Verdict};
use crate::error::{Error, Result};
use crate::format::{braid_from_json_str, parse_word, render_word};
use crate::stats::mc::{mc_experiment, Experiment};
use crate::stats::table::{d_bound_table, DescentTable, Provenance, TableEntry, GRID_K, GRID_N};
use crate::summit::{
    generate_invariant_set, power_and_cycle, CandidatePolicy, InvariantSetOptions,
    PowerCycleOptions, SetKind,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const JOBS_ENV: &str = "GARSIDE_JOBS";

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNRESOLVED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "garside",
    version,
    about = "Garside normal forms and braid conjugacy"
)]
struct Cli {
    /// Worker threads for parallel subcommands [default: $GARSIDE_JOBS or all cores]
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the left-weighted form of a braid.
    Nf {
        /// File path, inline word `n=3; 1 -2 D`, or canonical JSON.
        input: String,
        /// Print the form re-expanded as a word instead of JSON.
        #[arg(long)]
        expand: bool,
    },
    /// Decide whether two braids are conjugate.
    Conj {
        x: String,
        y: String,
        #[arg(long, value_enum, default_value = "auto")]
        mode: ModeArg,
        /// Element budget for exact USS generation.
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
        /// Include wall-clock timings in the certificate.
        #[arg(long)]
        timings: bool,
    },
    /// Generate the ultra summit set.
    Uss(SetArgs),
    /// Generate the reduced super summit set.
    Rsss(SetArgs),
    /// Tabulate the recursive upper bounds on d(n,k).
    Dtable {
        #[arg(long, value_delimiter = ',', default_values_t = GRID_N)]
        n_list: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = GRID_K)]
        k_list: Vec<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutFormat,
    },
    /// Run a Monte-Carlo experiment on random braids.
    Mc {
        #[arg(long)]
        experiment: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        /// Recorded in the output; drawn from the OS when omitted.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: OutFormat,
    },
    /// Search for a power whose cycling reaches a cyclically weighted braid.
    Pacycle {
        input: String,
        #[arg(long)]
        max_power: Option<usize>,
        #[arg(long)]
        max_cyclings: Option<usize>,
        /// Use the looser M ≤ D³, N ≤ D⁴ℓ scope.
        #[arg(long)]
        loose: bool,
    },
}

#[derive(Debug, clap::Args)]
struct SetArgs {
    input: String,
    #[arg(long, value_enum, default_value = "restricted")]
    policy: PolicyArg,
    #[arg(long, default_value_t = 1_000_000)]
    budget: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Fast,
    Exact,
    Auto,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PolicyArg {
    Full,
    Restricted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(code: i32, stdout: String) -> Self {
        Output {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: String) -> Self {
        Output {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: message,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
            let text = e.render().to_string();
            return if code == EXIT_YES {
                Output::ok(code, text)
            } else {
                Output::usage(text)
            };
        }
    };
    let jobs = cli
        .jobs
        .or_else(|| std::env::var(JOBS_ENV).ok()?.parse().ok());
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => return Output::usage(format!("error: {e}\n")),
    };
    match pool.install(|| dispatch(cli.command)) {
        Ok(out) => out,
        Err(e) => Output::usage(format!("error: {e}\n")),
    }
}

fn dispatch(cmd: Command) -> Result<Output> {
    match cmd {
        Command::Nf { input, expand } => {
            let x = read_braid(&input)?;
            if expand {
                Ok(Output::ok(EXIT_YES, render_word(&x.to_word()) + "\n"))
            } else {
                let v = json!({"schema_version": SCHEMA_VERSION, "braid": x});
                Ok(Output::ok(EXIT_YES, to_line(&v)))
            }
        }
        Command::Conj {
            x,
            y,
            mode,
            budget,
            timings,
        } => conj(&read_braid(&x)?, &read_braid(&y)?, mode, budget, timings),
        Command::Uss(a) => invariant_set(SetKind::Uss, a),
        Command::Rsss(a) => invariant_set(SetKind::Rsss, a),
        Command::Dtable {
            n_list,
            k_list,
            format,
        } => {
            if let Some(&n) = n_list.iter().find(|&&n| n < 2) {
                return Err(Error::IndexTooSmall(n));
            }
            if k_list.contains(&0) {
                return Err(Error::InvalidArgument("k must be at least 1".into()));
            }
            let t = d_bound_table(&n_list, &k_list);
            Ok(Output::ok(EXIT_YES, render_table(&t, format)))
        }
        Command::Mc {
            experiment,
            n,
            k,
            samples,
            seed,
            format,
        } => {
            let exp: Experiment = experiment.parse()?;
            let seed = seed.unwrap_or_else(rand::random);
            let r = mc_experiment(exp, n, k, samples, seed)?;
            let text = match format {
                OutFormat::Json => to_line(&serde_json::to_value(&r).expect("report")),
                OutFormat::Csv => render_table(
                    &DescentTable {
                        rows: vec![TableEntry {
                            n,
                            k,
                            value: r.estimate.value,
                            provenance: Provenance::Empirical,
                            samples: Some(samples),
                            seed: Some(seed),
                            ci_low: Some(r.estimate.ci_low),
                            ci_high: Some(r.estimate.ci_high),
                            note: Some(exp.name().to_string()),
                        }],
                    },
                    OutFormat::Csv,
                ),
            };
            Ok(Output::ok(EXIT_YES, text))
        }
        Command::Pacycle {
            input,
            max_power,
            max_cyclings,
            loose,
        } => {
            let x = read_braid(&input)?;
            let mut opts = if loose {
                PowerCycleOptions::loose(&x)
            } else {
                PowerCycleOptions::for_index(x.n())
            };
            if let Some(m) = max_power {
                opts.max_power = m;
            }
            if max_cyclings.is_some() {
                opts.max_cyclings = max_cyclings;
            }
            if opts.max_power == 0 || opts.max_cyclings == Some(0) {
                return Err(Error::InvalidArgument("budgets must be at least 1".into()));
            }
            let budgets = json!({"max_power": opts.max_power, "max_cyclings": opts.max_cyclings});
            Ok(match power_and_cycle(&x, opts) {
                Some(r) => Output::ok(
                    EXIT_YES,
                    to_line(&json!({
                        "schema_version": SCHEMA_VERSION,
                        "found": true,
                        "power": r.power,
                        "cyclings": r.cyclings,
                        "braid": r.braid,
                        "witness": r.witness,
                        "budgets": budgets,
                    })),
                ),
                None => Output::ok(
                    EXIT_UNRESOLVED,
                    to_line(&json!({
                        "schema_version": SCHEMA_VERSION,
                        "found": false,
                        "budgets": budgets,
                    })),
                ),
            })
        }
    }
}

fn conj(
    x: &CanonicalBraid,
    y: &CanonicalBraid,
    mode: ModeArg,
    budget: usize,
    timings: bool,
) -> Result<Output> {
    let mode = match mode {
        ModeArg::Fast => Mode::Fast,
        ModeArg::Exact => Mode::Exact,
        ModeArg::Auto => Mode::Auto,
    };
    let c = decide_conjugacy_with(x, y, ConjugacyOptions { mode, budget })?;
    let mut v = json!({
        "schema_version": SCHEMA_VERSION,
        "verdict": c.verdict,
        "mode": c.mode,
        "witness": c.witness.as_ref().map(|w| render_word(&w.to_word())),
        "witness_braid": c.witness,
        "separation": c.separation.map(|s| json!({
            "x": {"inf_c": s.x.0, "sup_c": s.x.1},
            "y": {"inf_c": s.y.0, "sup_c": s.y.1},
        })),
        "budget": c.budget,
    });
    if timings {
        v["timings"] = json!({"total_ms": c.elapsed.as_secs_f64() * 1e3});
    }
    let code = match c.verdict {
        Verdict::Conjugate => EXIT_YES,
        Verdict::NotConjugate | Verdict::NotConjugateFast => EXIT_NO,
        Verdict::Unresolved => EXIT_UNRESOLVED,
    };
    Ok(Output::ok(code, to_line(&v)))
}

fn invariant_set(kind: SetKind, a: SetArgs) -> Result<Output> {
    let x = read_braid(&a.input)?;
    let policy = match a.policy {
        PolicyArg::Full => CandidatePolicy::Full,
        PolicyArg::Restricted => CandidatePolicy::Restricted,
    };
    let opts = InvariantSetOptions::new(kind)
        .policy(policy)
        .budget(a.budget);
    match generate_invariant_set(&x, opts) {
        Ok(r) => {
            let v = json!({
                "schema_version": SCHEMA_VERSION,
                "kind": r.kind,
                "policy": r.policy,
                "summit_inf": r.summit_inf,
                "summit_sup": r.summit_sup,
                "orbit_count": r.orbit_count(),
                "element_count": r.element_count(),
                "orbits": r.orbits.iter().map(|o| &o.elements).collect::<Vec<_>>(),
                "budget": {"limit": a.budget, "candidates_tested": r.candidates_tested},
            });
            Ok(Output::ok(EXIT_YES, to_line(&v)))
        }
        Err(Error::BudgetExhausted { explored, limit }) => {
            let v = json!({
                "schema_version": SCHEMA_VERSION,
                "kind": kind,
                "policy": policy,
                "status": "budget-exhausted",
                "budget": {"limit": limit, "explored": explored},
            });
            Ok(Output::ok(EXIT_UNRESOLVED, to_line(&v)))
        }
        Err(e) => Err(e),
    }
}

fn render_table(t: &DescentTable, format: OutFormat) -> String {
    match format {
        OutFormat::Csv => t.to_csv(),
        OutFormat::Json => to_line(&json!({"schema_version": SCHEMA_VERSION, "rows": t.rows})),
    }
}

fn to_line(v: &Value) -> String {
    serde_json::to_string(v).expect("json value") + "\n"
}

/// Reads a braid from an inline word, inline JSON or a file holding either.
/// JSON may be bare canonical or wrapped as `{"braid": …}` (as `nf` prints).
pub fn read_braid(input: &str) -> Result<CanonicalBraid> {
    let trimmed = input.trim_start();
    let text = if trimmed.starts_with("n=") || trimmed.starts_with('{') {
        input.to_string()
    } else if Path::new(input).is_file() {
        std::fs::read_to_string(input)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {input}: {e}")))?
    } else {
        return Err(Error::InvalidArgument(format!(
            "{input:?} is neither a file nor an inline braid (`n=<int>; ...` or JSON)"
        )));
    };
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let inner = v.get("braid").cloned().unwrap_or(v);
        braid_from_json_str(&inner.to_string())
    } else {
        parse_word(&text).map(|w| crate::canonical::normalize(&w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Output {
        run(std::iter::once("garside").chain(args.iter().copied()))
    }

    #[test]
    fn nf_examples() {
        let o = run_args(&["nf", "n=3; 1 2 1"]);
        assert_eq!(o.code, 0);
        assert_eq!(
            o.stdout,
            "{\"schema_version\":1,\"braid\":{\"n\":3,\"inf\":1,\"factors\":[]}}\n"
        );
        let o = run_args(&["nf", "n=3; -1"]);
        assert!(o.stdout.contains("\"inf\":-1,\"factors\":[[3,1,2]]"));
    }

    #[test]
    fn nf_expand_is_a_fixpoint() {
        let a = run_args(&["nf", "n=5; 1 -2 3 D 4 -4 2 2 -1"]);
        let word = run_args(&["nf", "--expand", "n=5; 1 -2 3 D 4 -4 2 2 -1"]).stdout;
        let b = run_args(&["nf", word.trim()]);
        assert_eq!(a, b);
        let c = run_args(&["nf", a.stdout.trim()]);
        assert_eq!(a, c);
    }

    #[test]
    fn parse_errors_exit_2() {
        let o = run_args(&["nf", "n=3; 1 q"]);
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.stderr.contains("line 1, column 8"), "{}", o.stderr);
        assert_eq!(run_args(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["nf", "no-such-file"]).code, EXIT_USAGE);
    }

    #[test]
    fn conj_exit_codes() {
        let o = run_args(&["conj", "n=3; 1 1", "n=3; 2 2"]);
        assert_eq!(o.code, EXIT_YES);
        assert!(o.stdout.contains("\"verdict\":\"CONJUGATE\""));
        assert!(!o.stdout.contains("timings"));
        let o = run_args(&["conj", "n=3; 1 1", "n=3; 1 1 1", "--timings"]);
        assert_eq!(o.code, EXIT_NO);
        assert!(o.stdout.contains("\"separation\":{"));
        assert!(o.stdout.contains("timings"));
    }

    #[test]
    fn sets_and_budget() {
        let o = run_args(&["rsss", "n=3; 1 1"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("\"element_count\":2"));
        let o = run_args(&["uss", "n=5; 1 2 3 4 1 2 -3 4 4 2 1", "--budget", "1"]);
        assert_eq!(o.code, EXIT_UNRESOLVED);
        assert!(o.stdout.contains("budget-exhausted"));
    }

    #[test]
    fn mc_is_deterministic_and_records_seed() {
        let args = [
            "mc",
            "--experiment",
            "head-stability",
            "--n",
            "6",
            "--k",
            "5",
            "--samples",
            "300",
            "--seed",
            "11",
        ];
        assert_eq!(run_args(&args), run_args(&args));
        let o = run_args(&[
            "mc",
            "--experiment",
            "wcw",
            "--n",
            "4",
            "--k",
            "4",
            "--samples",
            "10",
        ]);
        assert!(o.stdout.contains("\"seed\":"));
        assert_eq!(
            run_args(&["mc", "--experiment", "bogus", "--n", "4", "--k", "4"]).code,
            EXIT_USAGE
        );
    }

    #[test]
    fn jobs_flag_does_not_change_output() {
        let a = run_args(&["--jobs", "1", "rsss", "n=4; 1 2 3 1 2 1 3 3"]);
        let b = run_args(&["--jobs", "3", "rsss", "n=4; 1 2 3 1 2 1 3 3"]);
        assert_eq!(a, b);
    }

    #[test]
    fn pacycle_reports_budgets() {
        let o = run_args(&["pacycle", "n=3; 2 1 1"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("\"power\":1"));
        let o = run_args(&[
            "pacycle",
            "n=4; 1 2",
            "--max-power",
            "1",
            "--max-cyclings",
            "1",
        ]);
        assert!(o.stdout.contains("budgets"));
    }
}
