//! Command-line front end: exact solving, transformation, lifting,
//! spectral reports, constructive routes, hypothesis checks, verification
//! campaigns, and the counterexample search.
//!
//! Exit codes: 0 clean, 1 usage or input error, 2 a verification violation
//! was recorded, 3 the solver budget ran out before a decision.

use std::error::Error;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rhc_core::kelmans::kelmans_family;
use rhc_core::spectral::{
    compare_radius_to, compare_signless_radius_to, signless_laplacian_radius, spectral_radius,
    ThresholdCmp, DEFAULT_TOL,
};
use rhc_core::{
    construct_cycle_extremal_traced, construct_cycle_size_condition_traced,
    find_rainbow_hamiltonian_cycle, lift_full, ConstructionError, Edge, ExtremalBranch,
    RainbowCycle, SearchOutcome, DEFAULT_NODE_BUDGET,
};
use rhc_harness::campaign::{
    search_problem, verify_campaign, CampaignKind, CampaignReport, Mode,
};
use rhc_harness::checks::{
    check_family_hypothesis, check_graph_hypothesis, HypothesisReport, TheoremId,
};
use rhc_harness::io::{self, CertificateDoc, FamilyDoc, FileFormat};

type CliResult = Result<i32, Box<dyn Error>>;

#[derive(Parser)]
#[command(
    name = "rhc",
    version,
    about = "Exact toolkit for rainbow Hamiltonian cycles in families of n graphs on n vertices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a family exactly; prints a certificate when a cycle exists
    Solve(SolveArgs),
    /// Run the degree-concentrating transformation to its fixpoint
    Kelmans(KelmansArgs),
    /// Pull a fixpoint certificate back to the original family
    Lift(LiftArgs),
    /// Adjacency and signless Laplacian radii with exact threshold verdicts
    Spectral(SpectralArgs),
    /// Build a certificate through a constructive route
    Construct(ConstructArgs),
    /// Evaluate a named hypothesis on a graph or family file
    Check(CheckArgs),
    /// Run a seeded or exhaustive verification campaign
    Verify(VerifyArgs),
    /// Search for counterexamples to the weak edge-bound question
    Search(SearchArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Route {
    /// Every member exceeds (n-1 choose 2) + 1 edges
    Size,
    /// Every member is a clique with one pendant vertex
    Extremal,
}

#[derive(clap::Args)]
struct SolveArgs {
    /// Family file (text or JSON)
    #[arg(long)]
    input: PathBuf,
    /// Search node budget
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Stdout rendering
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write the JSON certificate here
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct KelmansArgs {
    /// Family file (text or JSON)
    #[arg(long)]
    input: PathBuf,
    /// Stdout rendering; also the encoding of --out
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write the transformed family here
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct LiftArgs {
    /// Original family file; its transformation transcript is recomputed
    #[arg(long)]
    input: PathBuf,
    /// Certificate file valid for the transformed family
    #[arg(long)]
    cycle: PathBuf,
    /// Stdout rendering
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write the lifted JSON certificate here
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct SpectralArgs {
    /// Single-graph file (text or JSON)
    #[arg(long)]
    input: PathBuf,
    /// Stdout rendering
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write the JSON report here
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ConstructArgs {
    /// Family file (text or JSON)
    #[arg(long)]
    input: PathBuf,
    /// Which constructive route to run
    #[arg(long, value_enum)]
    route: Route,
    /// Stdout rendering
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write the JSON certificate here
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct CheckArgs {
    /// Graph file for single-graph hypotheses, family file for family ones
    #[arg(long)]
    input: PathBuf,
    /// ore-size | bondy | fiedler-nikiforov | rainbow-size |
    /// rainbow-spectral | rainbow-signless
    #[arg(long)]
    theorem: TheoremId,
    /// Stdout rendering
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write the JSON report here
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// rainbow-size | rainbow-spectral | rainbow-signless | extremal
    #[arg(long)]
    campaign: CampaignKind,
    /// Order of the families (each has n graphs on n vertices)
    #[arg(long)]
    n: usize,
    /// exhaustive | sampled
    #[arg(long, default_value = "sampled")]
    mode: Mode,
    /// Seed for sampled mode
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of sampled families
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    /// Search node budget per family
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Directory receiving one family file per recorded violation
    #[arg(long)]
    cert_dir: Option<PathBuf>,
    /// Stdout rendering; also the encoding of --out
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write the report here
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct SearchArgs {
    /// Order of the families
    #[arg(long)]
    n: usize,
    /// Seed for the sampled draws
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of sampled families
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    /// Search node budget per family
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Directory receiving one family file per counterexample candidate
    #[arg(long)]
    cert_dir: Option<PathBuf>,
    /// Stdout rendering; also the encoding of --out
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write the report here
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            1
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Kelmans(a) => cmd_kelmans(a),
        Command::Lift(a) => cmd_lift(a),
        Command::Spectral(a) => cmd_spectral(a),
        Command::Construct(a) => cmd_construct(a),
        Command::Check(a) => cmd_check(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Search(a) => cmd_search(a),
    }
}

fn reject_csv(format: OutputFormat) -> Result<(), Box<dyn Error>> {
    if format == OutputFormat::Csv {
        return Err("csv output is only available for campaign reports".into());
    }
    Ok(())
}

fn render_certificate_text(cycle: &RainbowCycle) -> String {
    use std::fmt::Write as _;
    let vs = cycle.vertices();
    let n = vs.len();
    let mut s = format!("rainbow Hamiltonian cycle on {n} vertices\norder:");
    for v in vs {
        let _ = write!(s, " {v}");
    }
    s.push_str("\nedges:\n");
    let colors: std::collections::BTreeMap<Edge, usize> = cycle.colored_edges().collect();
    for i in 0..n {
        let (u, v) = (vs[i], vs[(i + 1) % n]);
        let e = Edge::new(u, v).expect("cycle vertices are distinct");
        let c = colors[&e];
        let (a, b) = e.endpoints();
        let _ = writeln!(s, "  {{{a},{b}}}  color {c}");
    }
    s
}

fn emit_certificate(
    cycle: &RainbowCycle,
    format: OutputFormat,
    out: Option<&Path>,
) -> Result<(), Box<dyn Error>> {
    reject_csv(format)?;
    match format {
        OutputFormat::Text => print!("{}", render_certificate_text(cycle)),
        OutputFormat::Json => {
            println!("{}", serde_json::to_string_pretty(&CertificateDoc::from_cycle(cycle))?)
        }
        OutputFormat::Csv => unreachable!(),
    }
    if let Some(path) = out {
        io::write_certificate(cycle, path)?;
        println!("certificate written to {}", path.display());
    }
    Ok(())
}

fn cmd_solve(a: SolveArgs) -> CliResult {
    let family = io::read_family(&a.input)?;
    match find_rainbow_hamiltonian_cycle(&family, a.budget)? {
        SearchOutcome::Found(cycle) => {
            emit_certificate(&cycle, a.format, a.out.as_deref())?;
            Ok(0)
        }
        SearchOutcome::NotFound => {
            println!("no rainbow Hamiltonian cycle exists for this family");
            Ok(0)
        }
        SearchOutcome::BudgetExceeded { nodes } => {
            eprintln!("undecided: node budget exhausted after {nodes} nodes");
            Ok(3)
        }
    }
}

#[derive(Serialize)]
struct TransformDoc {
    n: usize,
    steps: Vec<(usize, usize)>,
    passes: usize,
    fixpoint: FamilyDoc,
}

fn cmd_kelmans(a: KelmansArgs) -> CliResult {
    reject_csv(a.format)?;
    let family = io::read_family(&a.input)?;
    let (fixed, transcript) = kelmans_family(&family);
    match a.format {
        OutputFormat::Text => {
            println!(
                "fixpoint reached after {} steps in {} passes",
                transcript.len(),
                transcript.passes()
            );
            print!("{}", io::format_family_text(&fixed));
        }
        OutputFormat::Json => {
            let doc = TransformDoc {
                n: family.n(),
                steps: transcript.steps().iter().map(|s| (s.x, s.y)).collect(),
                passes: transcript.passes(),
                fixpoint: FamilyDoc::from_family(&fixed),
            };
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        OutputFormat::Csv => unreachable!(),
    }
    if let Some(path) = &a.out {
        let file_format = match a.format {
            OutputFormat::Json => FileFormat::Json,
            _ => FileFormat::Text,
        };
        io::write_family(&fixed, path, file_format)?;
        println!("transformed family written to {}", path.display());
    }
    Ok(0)
}

fn cmd_lift(a: LiftArgs) -> CliResult {
    let family = io::read_family(&a.input)?;
    let cycle = io::read_certificate(&a.cycle)?;
    let (fixed, transcript) = kelmans_family(&family);
    cycle
        .validate_against(&fixed)
        .map_err(|e| format!("certificate is not valid for the transformed family: {e}"))?;
    let lifted = lift_full(&family, &transcript, &cycle)?;
    println!("certificate lifted back through {} transformation steps", transcript.len());
    emit_certificate(&lifted, a.format, a.out.as_deref())?;
    Ok(0)
}

fn cmp_str(cmp: ThresholdCmp) -> &'static str {
    match cmp {
        ThresholdCmp::Above => "above",
        ThresholdCmp::Equal => "equal",
        ThresholdCmp::Below => "below",
    }
}

#[derive(Serialize)]
struct SpectralReport {
    n: usize,
    edges: usize,
    adjacency_radius: f64,
    adjacency_threshold: i64,
    adjacency_verdict: String,
    signless_radius: f64,
    signless_threshold: i64,
    signless_verdict: String,
}

fn cmd_spectral(a: SpectralArgs) -> CliResult {
    reject_csv(a.format)?;
    let g = io::read_graph(&a.input)?;
    let n = g.n() as i64;
    let report = SpectralReport {
        n: g.n(),
        edges: g.edge_count(),
        adjacency_radius: spectral_radius(&g, DEFAULT_TOL)?.value,
        adjacency_threshold: n - 2,
        adjacency_verdict: cmp_str(compare_radius_to(&g, n - 2)?).to_string(),
        signless_radius: signless_laplacian_radius(&g, DEFAULT_TOL)?.value,
        signless_threshold: 2 * n - 4,
        signless_verdict: cmp_str(compare_signless_radius_to(&g, 2 * n - 4)?).to_string(),
    };
    match a.format {
        OutputFormat::Text => {
            println!("graph on {} vertices, {} edges", report.n, report.edges);
            println!(
                "adjacency radius      {:.12}  ({} threshold {})",
                report.adjacency_radius, report.adjacency_verdict, report.adjacency_threshold
            );
            println!(
                "signless Laplacian    {:.12}  ({} threshold {})",
                report.signless_radius, report.signless_verdict, report.signless_threshold
            );
        }
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        OutputFormat::Csv => unreachable!(),
    }
    if let Some(path) = &a.out {
        io::write_json(&report, path)?;
        println!("report written to {}", path.display());
    }
    Ok(0)
}

fn branch_str(branch: ExtremalBranch) -> &'static str {
    match branch {
        ExtremalBranch::SinglePendant => "single-pendant",
        ExtremalBranch::DirectClose => "direct-close",
        ExtremalBranch::BlockSwitch => "block-switch",
        ExtremalBranch::AttachmentSwitch => "attachment-switch",
    }
}

fn cmd_construct(a: ConstructArgs) -> CliResult {
    let family = io::read_family(&a.input)?;
    match a.route {
        Route::Size => {
            let (cycle, transcript) = construct_cycle_size_condition_traced(&family)?;
            println!(
                "certificate built and lifted through {} transformation steps",
                transcript.len()
            );
            emit_certificate(&cycle, a.format, a.out.as_deref())?;
            Ok(0)
        }
        Route::Extremal => match construct_cycle_extremal_traced(&family) {
            Ok((cycle, branch)) => {
                println!("certificate assembled via the {} branch", branch_str(branch));
                emit_certificate(&cycle, a.format, a.out.as_deref())?;
                Ok(0)
            }
            Err(ConstructionError::AllEqualFamily) => {
                println!(
                    "family admits no rainbow Hamiltonian cycle: all members are identical"
                );
                Ok(0)
            }
            Err(e) => Err(e.into()),
        },
    }
}

fn render_hypothesis_text(r: &HypothesisReport) -> String {
    use std::fmt::Write as _;
    let mut s = format!("hypothesis {}  n={}\n", r.theorem, r.n);
    for c in &r.checks {
        let rel = if c.strict { ">" } else { ">=" };
        let state = if c.pass {
            "pass"
        } else if c.borderline {
            "tie (fails strict bound)"
        } else {
            "FAIL"
        };
        let _ = writeln!(
            s,
            "  {}: {} = {}  {} {}  {}",
            c.label, c.quantity, c.value, rel, c.threshold, state
        );
        if let Some(name) = &c.exceptional {
            let _ = writeln!(s, "    exceptional shape: {name}");
        }
    }
    let _ = writeln!(s, "verdict: {}", if r.verdict { "satisfied" } else { "not satisfied" });
    if let Some(u) = &r.unless {
        let _ = writeln!(s, "unless-clause match: {u}");
    }
    s
}

fn cmd_check(a: CheckArgs) -> CliResult {
    reject_csv(a.format)?;
    let report = if a.theorem.is_family() {
        let family = io::read_family(&a.input)?;
        check_family_hypothesis(&family, a.theorem)?
    } else {
        let g = io::read_graph(&a.input)?;
        check_graph_hypothesis(&g, a.theorem)?
    };
    match a.format {
        OutputFormat::Text => print!("{}", render_hypothesis_text(&report)),
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        OutputFormat::Csv => unreachable!(),
    }
    if let Some(path) = &a.out {
        io::write_json(&report, path)?;
        println!("report written to {}", path.display());
    }
    Ok(0)
}

fn report_csv(r: &CampaignReport) -> String {
    let branch = |f: fn(&rhc_harness::campaign::BranchCounts) -> u64| {
        r.branch_counts.as_ref().map(|b| f(b).to_string()).unwrap_or_default()
    };
    let header = "campaign,n,mode,seed,samples_requested,families_tested,\
hypothesis_rejections,conclusion_holds,exceptional_confirmed,known_boundary_cases,\
violations,budget_exhaustions,oracle_cross_checks,oracle_disagreements,\
branch_single_pendant,branch_direct_close,branch_block_switch,branch_attachment_switch,\
wall_time_ms";
    format!(
        "{header}\n{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
        r.campaign,
        r.n,
        r.mode,
        r.seed.map(|s| s.to_string()).unwrap_or_default(),
        r.samples_requested,
        r.families_tested,
        r.hypothesis_rejections,
        r.conclusion_holds,
        r.exceptional_confirmed,
        r.known_boundary_cases,
        r.violations.len(),
        r.budget_exhaustions,
        r.oracle_cross_checks,
        r.oracle_disagreements,
        branch(|b| b.single_pendant),
        branch(|b| b.direct_close),
        branch(|b| b.block_switch),
        branch(|b| b.attachment_switch),
        r.wall_time_ms,
    )
}

fn emit_report(
    report: &CampaignReport,
    format: OutputFormat,
    out: Option<&Path>,
) -> Result<(), Box<dyn Error>> {
    let rendered = match format {
        OutputFormat::Text => report.render_text(),
        OutputFormat::Json => format!("{}\n", serde_json::to_string_pretty(report)?),
        OutputFormat::Csv => report_csv(report),
    };
    print!("{rendered}");
    if let Some(path) = out {
        std::fs::write(path, rendered)?;
        println!("report written to {}", path.display());
    }
    Ok(())
}

fn report_exit_code(report: &CampaignReport) -> i32 {
    if !report.clean() {
        2
    } else if report.budget_exhaustions > 0 {
        3
    } else {
        0
    }
}

fn cmd_verify(a: VerifyArgs) -> CliResult {
    let report = verify_campaign(
        a.campaign,
        a.n,
        a.mode,
        a.seed,
        a.samples,
        a.budget,
        a.cert_dir.as_deref(),
    )?;
    emit_report(&report, a.format, a.out.as_deref())?;
    Ok(report_exit_code(&report))
}

fn cmd_search(a: SearchArgs) -> CliResult {
    let report = search_problem(a.n, a.seed, a.samples, a.budget, a.cert_dir.as_deref())?;
    emit_report(&report, a.format, a.out.as_deref())?;
    Ok(report_exit_code(&report))
}
