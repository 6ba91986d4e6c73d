//! `casemod`: solve, verify and generate plan-reuse instances.
//!
//! Exit codes: 0 when a question was decided (YES and NO alike, and a
//! certificate that verifies), 1 when a certificate does not verify, 2 for
//! unreadable or malformed input, 3 for well-formed but invalid instances or
//! option combinations, 4 when the work limit was reached.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use casemod_core::bench::{run_suite, write_csv, Suite};
use casemod_core::io::{format_certificate, from_json, parse_certificate, parse_instance, to_json, Document};
use casemod_core::reductions::{
    gen_random_source, oracle_lcs, oracle_pclique, oracle_wsat, reduce_bool_to_d, reduce_kstep_to_l,
    reduce_l_to_kstep, reduce_lcs_to_v, reduce_pclique_to_lv, reduce_wsat_to_planmod, CircuitInstance,
    LcsInstance, PartitionedCliqueInstance, SizeParams, SourceInstance, SourceKind, DEFAULT_LCS_CAP,
};
use casemod_core::solvers::{solve_kstep_bfs, DEFAULT_WORK_LIMIT};
use casemod_core::{
    compute_parameters, solve, verify, Algorithm, Case, Error, Flavor, PlanningInstance, ReuseInstance,
    ReuseQuery, SolverConfig,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "casemod", version, about = "Plan reuse over SAS+ instances")]
struct Cli {
    /// Output format for reports and generated instances.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Work limit (search nodes) for solvers.
    #[arg(long, global = true, env = "CASEMOD_LIMIT", default_value_t = DEFAULT_WORK_LIMIT)]
    limit: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Brute,
    FptA,
    FptVd,
    Auto,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Brute => Algorithm::Brute,
            AlgoArg::FptA => Algorithm::FptA,
            AlgoArg::FptVd => Algorithm::FptVd,
            AlgoArg::Auto => Algorithm::Auto,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Reduction {
    KstepL,
    LKstep,
    LcsV,
    PcliqueLv,
    BoolD,
    WsatPlanmod,
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    Lcs,
    Pclique,
    Wsat,
    Kstep,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    FptAScaling,
    VdDedupe,
    HardFlavors,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a reuse instance and print the answer, certificate and stats.
    Solve {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = AlgoArg::Auto)]
        algo: AlgoArg,
        /// Decide the same instance as another flavor.
        #[arg(long)]
        flavor: Option<String>,
    },
    /// Check a certificate; exits 0 if it is valid and 1 if not.
    Verify {
        input: PathBuf,
        /// Certificate text (e.g. "glue a3 a4; i 2") or a file holding it.
        #[arg(long)]
        certificate: String,
        /// Check against the same instance read as another flavor.
        #[arg(long)]
        flavor: Option<String>,
    },
    /// Build a gadget instance from a source problem.
    ///
    /// Sources: kstep-l and bool-d read an instance file (kstep-l takes the
    /// step bound from `budget` or --k); l-kstep reads a casemod instance;
    /// lcs-v reads `string S` lines and `target N`; pclique-lv reads
    /// `part V...` and `edge U W` lines; wsat-planmod reads `input X`,
    /// `and G Y...`, `not G Y`, `output Z` and `weight K` lines.
    Generate {
        #[arg(long, value_enum)]
        reduction: Reduction,
        #[arg(long, conflicts_with = "random")]
        source: Option<PathBuf>,
        /// Draw the source from this seed instead of reading it.
        #[arg(long)]
        random: Option<u64>,
        #[command(flatten)]
        size: SizeArgs,
        /// Budget for bool-d (default 2^|V|).
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ground truth for a source problem.
    Oracle {
        #[arg(long, value_enum)]
        problem: Problem,
        #[arg(long)]
        source: PathBuf,
        /// Step bound for kstep sources without a budget line.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Run a benchmark suite and write CSV rows.
    Bench {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct SizeArgs {
    /// Parts, strings, or circuit weight (random sources); step bound for kstep-l.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    size: Option<usize>,
    #[arg(long)]
    alphabet: Option<usize>,
    #[arg(long)]
    density: Option<f64>,
    #[arg(long)]
    domain: Option<u32>,
    #[arg(long)]
    actions: Option<usize>,
    #[arg(long)]
    max_budget: Option<usize>,
}

impl SizeArgs {
    fn params(&self) -> SizeParams {
        let d = SizeParams::default();
        SizeParams {
            k: self.k.unwrap_or(d.k),
            size: self.size.unwrap_or(d.size),
            alphabet: self.alphabet.unwrap_or(d.alphabet),
            density: self.density.unwrap_or(d.density),
            domain: self.domain.unwrap_or(d.domain),
            actions: self.actions.unwrap_or(d.actions),
            budget: self.max_budget.unwrap_or(d.budget),
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn invalid(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => 2,
            Error::InvalidArgument(_) | Error::InvalidInstance(_) => 3,
            Error::ResourceLimit { .. } => 4,
        };
        Failure { code, message: e.to_string() }
    }
}

type CliResult<T> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

/// Text or JSON instance, chosen by the first non-blank character.
fn load_document(path: &Path) -> CliResult<Document> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        return from_json(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())));
    }
    parse_instance(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn load_reuse(path: &Path) -> CliResult<ReuseInstance> {
    match load_document(path)? {
        Document::Reuse(r) => Ok(r),
        Document::Planning(_) => Err(Failure::parse(format!(
            "{}: a bare planning instance has no budget to decide against",
            path.display()
        ))),
    }
}

/// Source files for the graph, string and circuit problems.
fn source_error(path: &Path, e: Error) -> Failure {
    Failure::parse(format!("{}: {e}", path.display()))
}

/// Writes to stdout; a closed pipe (`| head`) is not an error.
fn say(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display()))),
        None => {
            say(text);
            Ok(())
        }
    }
}

fn cmd_solve(cli: &Cli, input: &Path, algo: AlgoArg, flavor: Option<&str>) -> CliResult<()> {
    let mut r = load_reuse(input)?;
    if let Some(f) = flavor {
        r = r.with_flavor(f.parse::<Flavor>()?);
    }
    let result = solve(&r, algo.into(), &SolverConfig::with_limit(cli.limit))?;
    let params = compute_parameters(&r);
    let cert = result
        .certificate
        .as_ref()
        .map(|c| format_certificate(r.instance(), c));
    let elapsed_us = result.stats.elapsed.as_micros();
    match cli.format {
        Format::Json => {
            let report = json!({
                "answer": if result.answer { "YES" } else { "NO" },
                "flavor": r.flavor().as_str(),
                "certificate": cert,
                "certificate_detail": result.certificate,
                "stats": {
                    "states_visited": result.stats.states_visited,
                    "sequences_tried": result.stats.sequences_tried,
                    "bfs_visits": result.stats.bfs_visits,
                    "elapsed_us": elapsed_us,
                },
                "parameters": params,
            });
            say(&(serde_json::to_string_pretty(&report).expect("report is serializable") + "\n"));
        }
        Format::Text => {
            let mut text = String::new();
            let _ = writeln!(text, "answer: {}", if result.answer { "YES" } else { "NO" });
            let _ = writeln!(text, "flavor: {}", r.flavor());
            if let Some(c) = &cert {
                let _ = writeln!(text, "certificate: {c}");
            }
            let _ = writeln!(text, "states_visited: {}", result.stats.states_visited);
            let _ = writeln!(text, "sequences_tried: {}", result.stats.sequences_tried);
            let _ = writeln!(text, "elapsed_us: {elapsed_us}");
            let _ = writeln!(
                text,
                "parameters: k_L={} k_A={} k_V={} k_D={} k_A_distinct={}",
                params.k_l, params.k_a, params.k_v, params.k_d, params.k_a_distinct
            );
            say(&text);
        }
    }
    Ok(())
}

fn cmd_verify(input: &Path, certificate: &str, flavor: Option<&str>) -> CliResult<bool> {
    let mut r = load_reuse(input)?;
    if let Some(f) = flavor {
        r = r.with_flavor(f.parse::<Flavor>()?);
    }
    let text = if Path::new(certificate).is_file() {
        read(Path::new(certificate))?
    } else {
        certificate.to_string()
    };
    let cert = parse_certificate(&r, &text).map_err(|e| Failure::parse(format!("certificate: {e}")))?;
    // Out-of-range splits or infixes are certificates that fail, not bad input.
    let ok = match verify(&r, &cert) {
        Ok(ok) => ok,
        Err(Error::InvalidArgument(msg)) => {
            eprintln!("{msg}");
            false
        }
        Err(e) => return Err(e.into()),
    };
    say(if ok { "valid\n" } else { "invalid\n" });
    Ok(ok)
}

fn random_source(kind: SourceKind, seed: u64, size: &SizeArgs) -> CliResult<SourceInstance> {
    Ok(gen_random_source(kind, seed, &size.params())?)
}

fn planning_of(doc: Document) -> PlanningInstance {
    match doc {
        Document::Planning(pi) => pi,
        Document::Reuse(r) => r.instance().clone(),
    }
}

fn bookkeeping(r: &ReuseInstance) {
    let p = compute_parameters(r);
    eprintln!(
        "flavor={} budget={} vars={} actions={} k_A={} k_V={} k_D={} k_A_distinct={}",
        r.flavor(),
        r.budget(),
        r.instance().num_vars(),
        r.instance().actions().len(),
        p.k_a,
        p.k_v,
        p.k_d,
        p.k_a_distinct
    );
}

fn cmd_generate(
    cli: &Cli,
    reduction: Reduction,
    source: Option<&Path>,
    random: Option<u64>,
    size: &SizeArgs,
    budget: Option<usize>,
    out: Option<&Path>,
) -> CliResult<()> {
    let (kind, path) = match (source, random) {
        (Some(p), None) => (None, Some(p)),
        (None, Some(seed)) => (Some(seed), None),
        _ => return Err(Failure::invalid("give exactly one of --source and --random")),
    };
    let load = |k: SourceKind| -> CliResult<SourceInstance> {
        match (kind, path) {
            (Some(seed), _) => random_source(k, seed, size),
            (None, Some(p)) => Ok(match k {
                SourceKind::PClique => {
                    SourceInstance::PClique(PartitionedCliqueInstance::parse(&read(p)?).map_err(|e| source_error(p, e))?)
                }
                SourceKind::Lcs => SourceInstance::Lcs(LcsInstance::parse(&read(p)?).map_err(|e| source_error(p, e))?),
                SourceKind::Circuit => {
                    SourceInstance::Circuit(CircuitInstance::parse(&read(p)?).map_err(|e| source_error(p, e))?)
                }
                SourceKind::BoolPlanning => match load_document(p)? {
                    Document::Reuse(r) => SourceInstance::Reuse(r),
                    Document::Planning(pi) => SourceInstance::Planning(pi),
                },
                SourceKind::CaseMod => SourceInstance::Reuse(load_reuse(p)?),
            }),
            (None, None) => unreachable!("checked above"),
        }
    };

    let r = match reduction {
        Reduction::PcliqueLv => match load(SourceKind::PClique)? {
            SourceInstance::PClique(g) => reduce_pclique_to_lv(&g)?,
            _ => unreachable!(),
        },
        Reduction::LcsV => match load(SourceKind::Lcs)? {
            SourceInstance::Lcs(l) => reduce_lcs_to_v(&l)?,
            _ => unreachable!(),
        },
        Reduction::WsatPlanmod => match load(SourceKind::Circuit)? {
            SourceInstance::Circuit(c) => reduce_wsat_to_planmod(&c)?,
            _ => unreachable!(),
        },
        Reduction::BoolD => {
            let pi = match load(SourceKind::BoolPlanning)? {
                SourceInstance::Planning(pi) => pi,
                SourceInstance::Reuse(r) => r.instance().clone(),
                _ => unreachable!(),
            };
            reduce_bool_to_d(&pi, budget)?
        }
        Reduction::KstepL => {
            let (pi, k) = match load(SourceKind::BoolPlanning)? {
                SourceInstance::Reuse(r) => (r.instance().clone(), size.k.unwrap_or(r.budget())),
                SourceInstance::Planning(pi) => {
                    let k = match (kind, size.k) {
                        (_, Some(k)) => k,
                        (Some(_), None) => pi.num_vars(),
                        (None, None) => return Err(Failure::invalid("kstep-l needs a budget line or --k")),
                    };
                    (pi, k)
                }
                _ => unreachable!(),
            };
            reduce_kstep_to_l(&pi, k)?
        }
        Reduction::LKstep => {
            let r = match load(SourceKind::CaseMod)? {
                SourceInstance::Reuse(r) => r,
                _ => unreachable!(),
            };
            let (pi, k) = reduce_l_to_kstep(&r)?;
            let glue = pi.action_ids().collect();
            let case = Case::empty_at(pi.initial().clone());
            ReuseInstance::new(pi, case, ReuseQuery::new(glue, k, Flavor::KStep))?
        }
    };
    bookkeeping(&r);
    let doc = Document::Reuse(r);
    let text = match cli.format {
        Format::Text => doc.serialize(),
        Format::Json => to_json(&doc) + "\n",
    };
    emit(out, &text)
}

fn cmd_oracle(problem: Problem, source: &Path, k: Option<usize>, limit: u64) -> CliResult<bool> {
    Ok(match problem {
        Problem::Lcs => {
            let l = LcsInstance::parse(&read(source)?).map_err(|e| source_error(source, e))?;
            oracle_lcs(&l, DEFAULT_LCS_CAP)?
        }
        Problem::Pclique => {
            oracle_pclique(&PartitionedCliqueInstance::parse(&read(source)?).map_err(|e| source_error(source, e))?)
        }
        Problem::Wsat => oracle_wsat(&CircuitInstance::parse(&read(source)?).map_err(|e| source_error(source, e))?),
        Problem::Kstep => {
            let doc = load_document(source)?;
            let budget = match &doc {
                Document::Reuse(r) => Some(r.budget()),
                Document::Planning(_) => None,
            };
            let k = k.or(budget).ok_or_else(|| Failure::invalid("kstep needs a budget line or --k"))?;
            solve_kstep_bfs(&planning_of(doc), k, &SolverConfig::with_limit(limit))?.answer
        }
    })
}

fn cmd_bench(suite: SuiteArg, seed: u64, out: Option<&Path>) -> CliResult<()> {
    let suite = match suite {
        SuiteArg::FptAScaling => Suite::FptAScaling,
        SuiteArg::VdDedupe => Suite::VdDedupe,
        SuiteArg::HardFlavors => Suite::HardFlavors,
    };
    let rows = run_suite(suite, seed)?;
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf)?;
    emit(out, &String::from_utf8(buf).expect("csv is utf-8"))
}

fn run(cli: &Cli) -> CliResult<u8> {
    match &cli.command {
        Command::Solve { input, algo, flavor } => cmd_solve(cli, input, *algo, flavor.as_deref()).map(|_| 0),
        Command::Verify { input, certificate, flavor } => {
            cmd_verify(input, certificate, flavor.as_deref()).map(|ok| if ok { 0 } else { 1 })
        }
        Command::Generate {
            reduction,
            source,
            random,
            size,
            budget,
            out,
        } => cmd_generate(cli, *reduction, source.as_deref(), *random, size, *budget, out.as_deref()).map(|_| 0),
        Command::Oracle { problem, source, k } => {
            let answer = cmd_oracle(*problem, source, *k, cli.limit)?;
            match cli.format {
                Format::Text => say(if answer { "YES\n" } else { "NO\n" }),
                Format::Json => say(&format!("{}\n", json!({ "answer": if answer { "YES" } else { "NO" } }))),
            }
            Ok(0)
        }
        Command::Bench { suite, seed, out } => cmd_bench(*suite, *seed, out.as_deref()).map(|_| 0),
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
