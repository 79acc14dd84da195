//! The `folnewt` command line.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::foliated::{
    check_projection_compatibility, integrability_check, load_space_json, logsing_empty, newton_polyhedra_system, Atlas,
};
use crate::groebner::{Decision, Fuel};
use crate::nnd::{
    agreement, check_nnd_direct, desingularize, theorem_route, Agreement, Budget, DesingError, Strategy, Verdict,
};
use crate::report::{
    atlas_dot, input_digest, leaf_summaries, polyhedra_entries, FuelUsage, LogSingSummary, Report, Validation,
    SCHEMA_VERSION,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_UNDETERMINED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
/// The two routes disagreed; this is an implementation bug.
pub const EXIT_DISAGREE: i32 = 70;

#[derive(Debug, Parser)]
#[command(name = "folnewt", version, about = "Newton non-degeneracy of logarithmic foliated spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Newton polyhedra system of the input
    Polyhedra(Common),
    /// Decide whether the logarithmic singular locus is empty
    Logsing(Common),
    /// Decide Newton non-degeneracy
    CheckNnd {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Route::Direct)]
        route: Route,
    },
    /// Blow up admissible centers until the polyhedra system is desingularized
    Desing(Common),
    /// Run both deciders and compare
    Equiv(Common),
    /// Check the input document, integrability and projection compatibility
    Validate(Common),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Direct,
    Theorem,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Input JSON document; `-` reads stdin
    pub input: PathBuf,
    #[arg(long, default_value_t = Fuel::DEFAULT_SPAIRS)]
    pub fuel_spairs: u64,
    #[arg(long, default_value_t = Fuel::DEFAULT_TERMS)]
    pub fuel_terms: usize,
    #[arg(long, default_value_t = Budget::DEFAULT_BLOWUPS)]
    pub fuel_blowups: usize,
    #[arg(long, default_value_t = Strategy::default(), value_parser = parse_strategy)]
    pub strategy: Strategy,
    /// Write the chart tree as Graphviz DOT
    #[arg(long, value_name = "PATH")]
    pub emit_dot: Option<PathBuf>,
    #[arg(long, conflicts_with = "text")]
    pub json: bool,
    #[arg(long)]
    pub text: bool,
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse()
}

/// Result of one invocation: exit code, stdout and stderr text.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

impl Outcome {
    fn usage(msg: String) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: msg,
            report: None,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// `stdin` is consulted only when the input path is `-`.
pub fn run<I, T>(args: I, stdin: impl FnOnce() -> std::io::Result<String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            return Outcome {
                code,
                stdout: if code == EXIT_OK { e.to_string() } else { String::new() },
                stderr: if code == EXIT_OK { String::new() } else { e.to_string() },
                report: None,
            };
        }
    };
    let c = common(&cli.command);
    let text = if c.input.as_os_str() == "-" {
        stdin()
    } else {
        std::fs::read_to_string(&c.input)
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => return Outcome::usage(format!("cannot read {}: {e}\n", c.input.display())),
    };
    match thread_cap() {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli, &text)),
            Err(e) => Outcome::usage(format!("cannot build thread pool: {e}\n")),
        },
        None => execute(&cli, &text),
    }
}

fn thread_cap() -> Option<usize> {
    std::env::var("FOLNEWT_THREADS").ok()?.trim().parse().ok().filter(|&n| n > 0)
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Polyhedra(c)
        | Command::Logsing(c)
        | Command::Desing(c)
        | Command::Equiv(c)
        | Command::Validate(c)
        | Command::CheckNnd { common: c, .. } => c,
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Polyhedra(_) => "polyhedra",
        Command::Logsing(_) => "logsing",
        Command::CheckNnd { .. } => "check-nnd",
        Command::Desing(_) => "desing",
        Command::Equiv(_) => "equiv",
        Command::Validate(_) => "validate",
    }
}

fn verdict_code(v: &Verdict) -> i32 {
    match v {
        Verdict::NonDegenerate => EXIT_OK,
        Verdict::Degenerate { .. } => EXIT_NEGATIVE,
        Verdict::Undetermined { .. } => EXIT_UNDETERMINED,
    }
}

fn execute(cli: &Cli, text: &str) -> Outcome {
    let c = common(&cli.command);
    if c.fuel_spairs == 0 || c.fuel_terms == 0 {
        return Outcome::usage("fuel limits must be positive\n".into());
    }
    let atlas = match load_space_json(text) {
        Ok(a) => a,
        Err(e) => return Outcome::usage(format!("invalid input: {e}\n")),
    };
    let budget = Budget {
        fuel: Fuel::new(c.fuel_spairs, c.fuel_terms),
        max_blowups: c.fuel_blowups,
    };
    let mut timings = BTreeMap::new();
    let start = Instant::now();
    let sys = match newton_polyhedra_system(&atlas) {
        Ok(s) => s,
        Err(e) => return Outcome::usage(format!("invalid input: {e}\n")),
    };
    timings.insert("polyhedra".to_string(), ms(start));

    let mut report = Report {
        schema: SCHEMA_VERSION,
        command: command_name(&cli.command).to_string(),
        input_digest: input_digest(text.as_bytes()),
        exit_code: EXIT_OK,
        outcome: String::new(),
        strategy: None,
        verdicts: BTreeMap::new(),
        agreement: None,
        polyhedra: polyhedra_entries(&sys),
        final_polyhedra: None,
        blowups: Vec::new(),
        leaves: None,
        logsing: None,
        validation: None,
        fuel: FuelUsage::new(&budget.fuel, budget.max_blowups, 0),
        undetermined: Vec::new(),
        timings_ms: BTreeMap::new(),
    };
    let mut dot_atlas: Atlas = atlas.clone();

    match &cli.command {
        Command::Polyhedra(_) => {
            report.outcome = if crate::polyhedra::is_desingularized(&sys) {
                "desingularized".into()
            } else {
                "not-desingularized".into()
            };
        }
        Command::Logsing(_) => {
            let t = Instant::now();
            let l = logsing_empty(&atlas, &budget.fuel);
            timings.insert("logsing".into(), ms(t));
            let summary = LogSingSummary::from(&l);
            report.outcome = summary.status.to_string();
            report.exit_code = match l.decision() {
                Decision::Yes => EXIT_OK,
                Decision::No => EXIT_NEGATIVE,
                Decision::Undetermined => EXIT_UNDETERMINED,
            };
            if report.exit_code == EXIT_UNDETERMINED {
                report.undetermined.push("logsing: fuel exhausted".into());
            }
            report.logsing = Some(summary);
        }
        Command::CheckNnd { route, .. } => {
            let t = Instant::now();
            let v = match route {
                Route::Direct => check_nnd_direct(&atlas, &budget.fuel),
                Route::Theorem => {
                    report.strategy = Some(c.strategy.name().into());
                    let run = theorem_route(&atlas, c.strategy, &budget);
                    if let Some(a) = run.atlas {
                        report.blowups = a.log().to_vec();
                        report.final_polyhedra = newton_polyhedra_system(&a).ok().map(|s| polyhedra_entries(&s));
                        report.leaves = Some(leaf_summaries(&a));
                        dot_atlas = a;
                    }
                    run.verdict
                }
            };
            timings.insert("decide".into(), ms(t));
            let name = match route {
                Route::Direct => "direct",
                Route::Theorem => "theorem",
            };
            record_verdict(&mut report, name, v);
            report.outcome = report.verdicts[name].name().into();
            report.exit_code = verdict_code(&report.verdicts[name]);
        }
        Command::Desing(_) => {
            report.strategy = Some(c.strategy.name().into());
            let t = Instant::now();
            let r = desingularize(&atlas, c.strategy, budget.max_blowups);
            timings.insert("desingularize".into(), ms(t));
            let a = match r {
                Ok(d) => {
                    report.outcome = "desingularized".into();
                    report.final_polyhedra = Some(polyhedra_entries(&d.system));
                    d.atlas
                }
                Err(DesingError::Exhausted { limit, partial }) => {
                    report.outcome = "undetermined".into();
                    report.exit_code = EXIT_UNDETERMINED;
                    report.undetermined.push(format!("desingularize: blow-up budget of {limit} exhausted"));
                    *partial
                }
                Err(e) => return Outcome::usage(format!("desingularization failed: {e}\n")),
            };
            report.blowups = a.log().to_vec();
            report.leaves = Some(leaf_summaries(&a));
            dot_atlas = a;
        }
        Command::Equiv(_) => {
            report.strategy = Some(c.strategy.name().into());
            let t = Instant::now();
            let direct = check_nnd_direct(&atlas, &budget.fuel);
            timings.insert("direct".into(), ms(t));
            let t = Instant::now();
            let run = theorem_route(&atlas, c.strategy, &budget);
            timings.insert("theorem".into(), ms(t));
            let agree = agreement(&direct, &run.verdict);
            report.exit_code = match agree {
                Agreement::Agree => verdict_code(&direct),
                Agreement::Undetermined => EXIT_UNDETERMINED,
                Agreement::Disagree => EXIT_DISAGREE,
            };
            report.outcome = match agree {
                Agreement::Agree => direct.name().into(),
                Agreement::Undetermined => "undetermined".into(),
                Agreement::Disagree => "disagree".into(),
            };
            report.agreement = Some(agree);
            if let Some(a) = run.atlas {
                report.blowups = a.log().to_vec();
                report.final_polyhedra = newton_polyhedra_system(&a).ok().map(|s| polyhedra_entries(&s));
                dot_atlas = a;
            }
            record_verdict(&mut report, "direct", direct);
            record_verdict(&mut report, "theorem", run.verdict);
        }
        Command::Validate(_) => {
            let root = atlas.root();
            let integrable = integrability_check(root);
            report.validation = Some(Validation {
                divisor: root.divisor().iter().map(|v| v.name().to_string()).collect(),
                free: root.free().iter().map(|v| v.name().to_string()).collect(),
                logarithmically_regular: root.has_unit_coefficient(),
                integrable,
                projection_compatible: check_projection_compatibility(&sys).is_ok(),
            });
            report.outcome = match integrable {
                Decision::Yes => "valid",
                Decision::No => "not-integrable",
                Decision::Undetermined => "undetermined",
            }
            .into();
            report.exit_code = match integrable {
                Decision::Yes => EXIT_OK,
                Decision::No => EXIT_NEGATIVE,
                Decision::Undetermined => EXIT_UNDETERMINED,
            };
        }
    }

    report.fuel = FuelUsage::new(&budget.fuel, budget.max_blowups, report.blowups.len());
    report.timings_ms = timings;

    let mut stderr = String::new();
    if let Some(path) = &c.emit_dot {
        if let Err(e) = std::fs::write(path, atlas_dot(&dot_atlas)) {
            return Outcome::usage(format!("cannot write {}: {e}\n", path.display()));
        }
    }
    if report.exit_code == EXIT_DISAGREE {
        stderr.push_str("the two deciders disagree\n");
    }
    let stdout = if c.text { report.to_text() } else { report.to_json() + "\n" };
    Outcome {
        code: report.exit_code,
        stdout,
        stderr,
        report: Some(report),
    }
}

fn record_verdict(report: &mut Report, route: &str, v: Verdict) {
    if let Verdict::Undetermined { reason } = &v {
        report.undetermined.push(format!("{route}: {reason}"));
    }
    report.verdicts.insert(route.to_string(), v);
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1000.0
}
