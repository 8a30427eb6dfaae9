//! `ybe`: construct solutions and braces, verify artifacts, run analyses.
//!
//! Exit status: 0 success, 1 a predicate failed, 2 unparsable input,
//! 3 a size cap was exceeded.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use ybe_core::abgroup::{aut_from_matrix, parse_matrix, FinAbGroup, GroupAut, GroupError};
use ybe_core::artifact::{
    parse_artifact, parse_brace_artifact, parse_solution_artifact, solution_failure, Artifact, ArtifactError,
    BraceArtifact, BraceReport, SolutionArtifact, SolutionReport, DEFAULT_IDEAL_THRESHOLD,
};
use ybe_core::brace::{
    brace_from_solution_with_order, find_brace_isomorphism, BraceError, BraceFromSolutionError, FiniteBrace,
    DEFAULT_BRACE_CAP,
};
use ybe_core::constructions::{
    analyze_newsol_with, build_asym_model_with_cap, construct_grid, construct_newsol_with,
    construct_simple_family_with_cap, make_jfamily, model_perm_brace, parse_assignments, parse_prime_powers,
    probe_all, probe_converse_with, AnalyzeOptions, FamilyError, GridError, JFamily, JFamilyError, ModelError,
    NewsolError, ProbeError, ProbeOptions, DEFAULT_PROBE_CAP,
};
use ybe_core::par::Exec;
use ybe_core::ybcore::{distinct_rows, PermGroupError, Solution, SolutionError, DEFAULT_PERM_CAP};

#[derive(Parser, Debug)]
#[command(name = "ybe", version, about = "Involutive Yang-Baxter solutions and finite left braces")]
struct Cli {
    /// Run every scan on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a solution (and optionally a brace) from parameters.
    #[command(subcommand)]
    Construct(Construct),
    /// Check the axioms of a solution or brace file.
    Verify { file: PathBuf },
    /// Invariants of a solution file, or of the family given by flags.
    Analyze(AnalyzeArgs),
    /// The brace on the permutation group of a solution.
    Brace {
        #[arg(long = "from-solution")]
        from_solution: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        caps: PermCaps,
    },
    /// Whether a brace is isomorphic to the permutation group brace of a solution.
    Iso {
        #[arg(long)]
        brace: PathBuf,
        #[arg(long = "from-solution")]
        from_solution: PathBuf,
        #[command(flatten)]
        caps: PermCaps,
    },
    /// Compare the `V_a = A` condition with simplicity over all families.
    Probe(ProbeArgs),
}

#[derive(Args, Debug, Clone)]
struct PermCaps {
    #[arg(long, default_value_t = DEFAULT_PERM_CAP)]
    perm_cap: usize,
    #[arg(long, default_value_t = DEFAULT_BRACE_CAP)]
    brace_cap: usize,
}

#[derive(Args, Debug, Clone)]
struct FamilyArgs {
    /// Group descriptor such as `Z2xZ4`.
    #[arg(long)]
    group: String,
    /// Automorphism matrix such as `[[1,0],[0,1]]`.
    #[arg(long)]
    aut: String,
    /// Assignments `a->j_a`, e.g. `0->0,1->1` or `(0,1)->(1,0),...`.
    #[arg(long)]
    j: String,
}

#[derive(Subcommand, Debug)]
enum Construct {
    Newsol {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Grid {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        t: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    SimpleFamily {
        #[arg(long)]
        p: u64,
        /// Distinct primes with exponents, e.g. `3^1,7^1`.
        #[arg(long)]
        primes: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        brace: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BRACE_CAP)]
        cap: usize,
    },
    AsymModel {
        #[command(flatten)]
        family: FamilyArgs,
        /// Writes the point solution.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        brace: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BRACE_CAP)]
        cap: usize,
    },
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    /// Solution file; omit to give the family by flags.
    file: Option<PathBuf>,
    #[arg(long, requires_all = ["aut", "j"], conflicts_with = "file")]
    group: Option<String>,
    #[arg(long)]
    aut: Option<String>,
    #[arg(long)]
    j: Option<String>,
    #[arg(long, default_value_t = DEFAULT_PERM_CAP)]
    perm_cap: usize,
}

#[derive(Args, Debug)]
struct ProbeArgs {
    #[arg(long, conflicts_with = "all", requires = "aut")]
    group: Option<String>,
    #[arg(long)]
    aut: Option<String>,
    /// Every group of order at most `--max-order` with every automorphism class.
    #[arg(long, requires = "max_order")]
    all: bool,
    #[arg(long)]
    max_order: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_PROBE_CAP)]
    cap: usize,
    /// Analyze every family instead of one per symmetry class.
    #[arg(long)]
    no_reduce: bool,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{predicate}: {witness}")]
    Failed { predicate: String, witness: String },
    #[error("{0}")]
    Cap(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed { .. } => 1,
            CliError::Parse(_) => 2,
            CliError::Cap(_) => 3,
        }
    }

    fn failed(predicate: &str, witness: impl ToString) -> Self {
        CliError::Failed { predicate: predicate.to_string(), witness: witness.to_string() }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::OrderCapExceeded { .. } => CliError::Cap(e.to_string()),
            GroupError::Malformed(_) | GroupError::ElementParse(_) | GroupError::MatrixParse(_) => {
                CliError::Parse(e.to_string())
            }
            _ => CliError::failed("automorphism", e),
        }
    }
}

impl From<JFamilyError> for CliError {
    fn from(e: JFamilyError) -> Self {
        match e {
            JFamilyError::Parse(_) => CliError::Parse(e.to_string()),
            JFamilyError::Group(g) => g.into(),
            _ => CliError::failed("family", e),
        }
    }
}

impl From<ArtifactError> for CliError {
    fn from(e: ArtifactError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<SolutionError> for CliError {
    fn from(e: SolutionError) -> Self {
        let (predicate, witness) = solution_failure(&e);
        CliError::failed(predicate, witness)
    }
}

impl From<BraceError> for CliError {
    fn from(e: BraceError) -> Self {
        match e {
            BraceError::SizeCapExceeded { .. } => CliError::Cap(e.to_string()),
            _ => CliError::failed("brace_ok", e),
        }
    }
}

impl From<PermGroupError> for CliError {
    fn from(e: PermGroupError) -> Self {
        CliError::Cap(e.to_string())
    }
}

impl From<BraceFromSolutionError> for CliError {
    fn from(e: BraceFromSolutionError) -> Self {
        match e {
            BraceFromSolutionError::Group(g) => g.into(),
            BraceFromSolutionError::Brace(b) => b.into(),
            other => CliError::failed("brace_from_solution", other),
        }
    }
}

impl From<NewsolError> for CliError {
    fn from(e: NewsolError) -> Self {
        CliError::failed("newsol", e)
    }
}

impl From<GridError> for CliError {
    fn from(e: GridError) -> Self {
        match e {
            GridError::Solution(s) => s.into(),
            other => CliError::failed("grid", other),
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::SizeCapExceeded { .. } => CliError::Cap(e.to_string()),
            other => CliError::failed("simple_family", other),
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::SizeCapExceeded { .. } => CliError::Cap(e.to_string()),
            ModelError::Group(g) => g.into(),
            ModelError::PermBrace(p) => p.into(),
            other => CliError::failed("asym_model", other),
        }
    }
}

impl From<ProbeError> for CliError {
    fn from(e: ProbeError) -> Self {
        match e {
            ProbeError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            ProbeError::Family(f) => f.into(),
            ProbeError::Newsol(n) => n.into(),
        }
    }
}

/// Report text plus an optional non-success status carried alongside it.
struct Outcome {
    text: String,
    status: Result<(), CliError>,
}

impl From<String> for Outcome {
    fn from(text: String) -> Self {
        Outcome { text, status: Ok(()) }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Parse(format!("cannot write {}: {e}", path.display())))
}

fn load_solution(path: &Path, exec: Exec) -> Result<Solution, CliError> {
    Ok(parse_solution_artifact(&read(path)?)?.into_solution(exec)?)
}

fn load_brace(path: &Path, exec: Exec) -> Result<FiniteBrace, CliError> {
    Ok(parse_brace_artifact(&read(path)?)?.into_brace(usize::MAX, exec)?)
}

fn family(args: &FamilyArgs) -> Result<JFamily, CliError> {
    family_from(&args.group, &args.aut, &args.j)
}

fn automorphism(group: &FinAbGroup, aut: &str) -> Result<GroupAut, CliError> {
    Ok(aut_from_matrix(group, &parse_matrix(aut)?)?)
}

fn family_from(group: &str, aut: &str, j: &str) -> Result<JFamily, CliError> {
    let g = FinAbGroup::parse(group)?;
    let t = automorphism(&g, aut)?;
    let pairs = parse_assignments(&g, j)?;
    Ok(make_jfamily(&g, &t, &pairs)?)
}

fn save_solution(path: &Option<PathBuf>, s: &Solution) -> Result<(), CliError> {
    match path {
        Some(p) => write(p, &SolutionArtifact::from_solution(s).to_json()),
        None => Ok(()),
    }
}

fn save_brace(path: &Option<PathBuf>, b: &FiniteBrace) -> Result<(), CliError> {
    match path {
        Some(p) => write(p, &BraceArtifact::from_brace(b).to_json()),
        None => Ok(()),
    }
}

fn solution_outcome(s: &Solution, perm_cap: usize) -> Outcome {
    let report = SolutionReport::run(s, perm_cap);
    let status = match report.perm_group_order {
        Some(_) => Ok(()),
        None => Err(CliError::Cap(format!("permutation group exceeds the cap of {perm_cap} elements"))),
    };
    Outcome { text: report.to_text(), status }
}

fn construct(cmd: &Construct, exec: Exec) -> Result<Outcome, CliError> {
    match cmd {
        Construct::Newsol { family: args, output } => {
            let fam = family(args)?;
            let s = construct_newsol_with(&fam, exec)?;
            save_solution(output, &s)?;
            let mut text = format!("size: {}\n", s.size());
            text.push_str(&analyze_newsol_with(&fam, &s, AnalyzeOptions { exec, ..Default::default() }).to_text(fam.group()));
            Ok(text.into())
        }
        Construct::Grid { n, m, t, output } => {
            let s = construct_grid(*n, *m, *t)?;
            save_solution(output, &s)?;
            Ok(format!("size: {}\nindecomposable: true\nirretractable: true\n", s.size()).into())
        }
        Construct::SimpleFamily { p, primes, output, brace, cap } => {
            let pp = parse_prime_powers(primes).map_err(CliError::Parse)?;
            let f = construct_simple_family_with_cap(*p, &pp, *cap)?;
            save_solution(output, &f.orbit)?;
            save_brace(brace, &f.brace)?;
            let mut s = String::new();
            let _ = writeln!(s, "p: {}", f.p);
            let _ = writeln!(s, "n: {}", f.n);
            let _ = writeln!(s, "t: {}", f.t);
            let _ = writeln!(s, "brace_size: {}", f.brace.size());
            let _ = writeln!(s, "solution_size: {}", f.orbit.size());
            let _ = writeln!(s, "socle_size: {}", f.socle_size);
            let _ = writeln!(s, "brace_simple: true");
            let _ = writeln!(s, "solution_simple: true");
            let _ = writeln!(s, "grid_isomorphic: true");
            let _ = writeln!(s, "direct_map: {}", f.direct_map);
            Ok(s.into())
        }
        Construct::AsymModel { family: args, output, brace, cap } => {
            let fam = family(args)?;
            let m = build_asym_model_with_cap(&fam, *cap)?;
            save_solution(output, &m.orbit)?;
            save_brace(brace, &m.brace)?;
            let mut s = String::new();
            let _ = writeln!(s, "model_size: {}", m.brace.size());
            let _ = writeln!(s, "points: {}", m.orbit.size());
            let _ = writeln!(s, "exponent: {}", m.exponent);
            let _ = writeln!(s, "t_order: {}", m.t_order);
            let _ = writeln!(s, "coprime: {}", m.coprime);
            let _ = writeln!(s, "generated_size: {}", m.generated_size);
            let _ = writeln!(s, "radical_size: {}", m.radical.len());
            let _ = writeln!(s, "points_match_solution: true");
            if m.coprime {
                let mb = model_perm_brace(&m)?;
                let _ = writeln!(s, "quotient_size: {}", mb.brace.size());
                let _ = writeln!(s, "perm_group_order: {}", mb.group.brace.size());
                let _ = writeln!(s, "quotient_isomorphic: true");
            } else {
                let _ = writeln!(s, "quotient_isomorphic: skipped");
            }
            Ok(s.into())
        }
    }
}

fn verify(path: &Path, exec: Exec) -> Result<Outcome, CliError> {
    match parse_artifact(&read(path)?)? {
        Artifact::Solution(a) => {
            let s = a.into_solution(exec)?;
            Ok(format!("size: {}\ninvolutive: true\nnondegenerate: true\nbraid: true\n", s.size()).into())
        }
        Artifact::Brace(a) => {
            let b = a.into_brace(usize::MAX, exec)?;
            Ok(format!("size: {}\nbrace_ok: true\n", b.size()).into())
        }
    }
}

fn analyze(args: &AnalyzeArgs, exec: Exec) -> Result<Outcome, CliError> {
    if let Some(path) = &args.file {
        return match parse_artifact(&read(path)?)? {
            Artifact::Solution(a) => Ok(solution_outcome(&a.into_solution(exec)?, args.perm_cap)),
            Artifact::Brace(a) => {
                let b = a.into_brace(usize::MAX, exec)?;
                Ok(BraceReport::run(&b, DEFAULT_IDEAL_THRESHOLD).to_text().into())
            }
        };
    }
    let (Some(g), Some(t), Some(j)) = (&args.group, &args.aut, &args.j) else {
        return Err(CliError::Parse("give a solution file or --group, --aut and --j".into()));
    };
    let fam = family_from(g, t, j)?;
    let s = construct_newsol_with(&fam, exec)?;
    let mut out = solution_outcome(&s, args.perm_cap);
    out.text.push_str(&analyze_newsol_with(&fam, &s, AnalyzeOptions { exec, ..Default::default() }).to_text(fam.group()));
    Ok(out)
}

fn perm_brace(path: &Path, caps: &PermCaps, exec: Exec) -> Result<FiniteBrace, CliError> {
    let s = load_solution(path, exec)?;
    Ok(brace_from_solution_with_order(&s, &distinct_rows(&s), caps.perm_cap, caps.brace_cap)?.brace)
}

fn probe(args: &ProbeArgs, exec: Exec) -> Result<Outcome, CliError> {
    let opts = ProbeOptions { cap: args.cap, reduce: !args.no_reduce, exec, ..Default::default() };
    if args.all {
        let max = args.max_order.expect("clap enforces --max-order");
        return Ok(probe_all(max, opts)?.to_text().into());
    }
    let (Some(g), Some(t)) = (&args.group, &args.aut) else {
        return Err(CliError::Parse("give --group and --aut, or --all --max-order N".into()));
    };
    let g = FinAbGroup::parse(g)?;
    let t = automorphism(&g, t)?;
    Ok(probe_converse_with(&g, &t, opts)?.to_text().into())
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    match &cli.command {
        Command::Construct(c) => construct(c, exec),
        Command::Verify { file } => verify(file, exec),
        Command::Analyze(args) => analyze(args, exec),
        Command::Brace { from_solution, output, caps } => {
            let b = perm_brace(from_solution, caps, exec)?;
            save_brace(output, &b)?;
            Ok(BraceReport::run(&b, DEFAULT_IDEAL_THRESHOLD).to_text().into())
        }
        Command::Iso { brace, from_solution, caps } => {
            let given = load_brace(brace, exec)?;
            let built = perm_brace(from_solution, caps, exec)?;
            match find_brace_isomorphism(&given, &built) {
                Some(_) => Ok("isomorphic: true\n".to_string().into()),
                None => Ok(Outcome {
                    text: "isomorphic: false\n".into(),
                    status: Err(CliError::failed(
                        "isomorphic",
                        format!("no isomorphism between braces of orders {} and {}", given.size(), built.size()),
                    )),
                }),
            }
        }
        Command::Probe(args) => probe(args, exec),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).unwrap_or_else(|e| Outcome { text: String::new(), status: Err(e) });
    print!("{}", outcome.text);
    match outcome.status {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let CliError::Failed { predicate, witness } = &e {
                println!("failed: {predicate}");
                println!("witness: {witness}");
            }
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
