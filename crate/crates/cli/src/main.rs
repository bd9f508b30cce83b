use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use qss_core::access::{parse_labels, AccessStructure};
use qss_core::algebra::Matrix;
use qss_core::codes::LinearCode;
use qss_core::matroid::Matroid;
use qss_core::qss::{build_scheme, build_scheme_from_matroid, QssScheme};
use qss_core::simver::{check_privacy, check_recovery, verify_all, Report};
use qss_core::Subset;

/// Quantum secret sharing schemes from self-dual codes and identically
/// self-dual matroids.
#[derive(Parser)]
#[command(name = "qss", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Length, dimension, self-duality and minimal codewords of a code.
    AnalyzeCode(CodeInput),
    /// Build a scheme from a self-dual code or an ISD matroid file.
    BuildScheme(SchemeInput),
    /// Minimal authorized sets of the scheme a code or matroid induces.
    ListAccess(SchemeInput),
    /// Self-orthogonality, self-duality, connectivity and matroid tests.
    CheckAccess(FileIn),
    /// Delete and/or contract players of an access structure.
    Minors(MinorsArgs),
    /// Circuits, rank, bases and self-duality of a matroid.
    MatroidInfo(MatroidArgs),
    /// Reconstruction gate plan for an authorized set.
    Plan(PlanArgs),
    /// Simulate recovery and privacy checks on a scheme.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct FileIn {
    /// Input file
    #[arg(long = "in")]
    input: PathBuf,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CodeInput {
    #[command(flatten)]
    io: FileIn,
    /// Field order for matrix files without a `q` header line
    #[arg(long)]
    field: Option<usize>,
}

#[derive(Args)]
struct SchemeInput {
    #[command(flatten)]
    code: CodeInput,
    /// Dealer coordinate (0-based)
    #[arg(long, default_value_t = 0)]
    dealer: usize,
}

#[derive(Args)]
struct MinorsArgs {
    #[command(flatten)]
    io: FileIn,
    /// Players to delete, comma separated
    #[arg(long, default_value = "")]
    delete: String,
    /// Players to contract, comma separated
    #[arg(long, default_value = "")]
    contract: String,
}

#[derive(Args)]
struct MatroidArgs {
    #[command(flatten)]
    code: CodeInput,
    /// Also print the access structure induced at this element
    #[arg(long)]
    dealer: Option<usize>,
}

#[derive(Args)]
struct PlanArgs {
    /// Scheme file written by build-scheme
    #[arg(long, visible_alias = "in")]
    scheme: PathBuf,
    /// Authorized set, comma separated share labels
    #[arg(long)]
    set: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Scheme file written by build-scheme
    #[arg(long, visible_alias = "in")]
    scheme: PathBuf,
    /// Check one set: recovery if authorized, privacy otherwise
    #[arg(long, required_unless_present = "all", conflicts_with = "all")]
    set: Option<String>,
    /// Recovery on minimal sets, privacy on unauthorized sets, full classification
    #[arg(long)]
    all: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn first_line(text: &str) -> &str {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .unwrap_or("")
}

/// Matrix text, with a `q` header supplied from `--field` when missing.
fn parse_matrix(text: &str, field: Option<usize>) -> Result<Matrix> {
    let has_header = first_line(text).starts_with('q');
    let m = match (has_header, field) {
        (true, _) => Matrix::from_text(text)?,
        (false, Some(q)) => Matrix::from_text(&format!("q {q}\n{text}"))?,
        (false, None) => bail!("matrix file has no `q` header; pass --field"),
    };
    if let Some(q) = field {
        if m.field().order() != q {
            bail!(
                "file is over GF({}) but --field {q} was given",
                m.field().order()
            );
        }
    }
    Ok(m)
}

enum Source {
    Code(LinearCode),
    Matroid(Matroid),
}

fn is_matroid_file(text: &str) -> bool {
    let head = first_line(text);
    head == "matrix" || head.starts_with("ground")
}

fn read_source(input: &CodeInput) -> Result<Source> {
    let text = read(&input.io.input)?;
    if is_matroid_file(&text) {
        return Ok(Source::Matroid(read_matroid(&text, input.field)?));
    }
    Ok(Source::Code(LinearCode::new(parse_matrix(
        &text,
        input.field,
    )?)))
}

fn read_matroid(text: &str, field: Option<usize>) -> Result<Matroid> {
    if first_line(text) == "matrix" {
        let rest: String = text
            .lines()
            .skip_while(|l| l.trim() != "matrix")
            .skip(1)
            .collect::<Vec<_>>()
            .join("\n");
        return Ok(Matroid::from_matrix(&parse_matrix(&rest, field)?)?);
    }
    Ok(Matroid::from_text(text)?)
}

fn scheme_from(input: &SchemeInput) -> Result<QssScheme> {
    Ok(match read_source(&input.code)? {
        Source::Code(c) => build_scheme(&c, input.dealer)?,
        Source::Matroid(m) => build_scheme_from_matroid(&m, input.dealer)?,
    })
}

fn read_scheme(path: &Path) -> Result<QssScheme> {
    Ok(QssScheme::from_text(&read(path)?)?)
}

fn parse_set(s: &str) -> Result<Subset> {
    Ok(parse_labels(s)?)
}

fn analyze_code(args: &CodeInput) -> Result<String> {
    let code = LinearCode::new(parse_matrix(&read(&args.io.input)?, args.field)?);
    let minimal = code.minimal_codewords()?;
    let mut s = String::new();
    writeln!(s, "field: GF({})", code.field().order())?;
    writeln!(s, "n: {}", code.n())?;
    writeln!(s, "k: {}", code.k())?;
    writeln!(s, "self-dual: {}", yes_no(code.is_self_dual()))?;
    writeln!(s, "minimal codewords: {}", minimal.len())?;
    for c in &minimal {
        writeln!(s, "  {}", qss_core::algebra::join(&c.word))?;
    }
    Ok(s)
}

fn check_access(args: &FileIn) -> Result<String> {
    let g = AccessStructure::from_text(&read(&args.input)?)?;
    let so = g.self_orthogonality()?;
    let mut s = String::new();
    writeln!(s, "players: {}", g.num_players())?;
    writeln!(s, "minimal sets: {}", g.minimal_sets().len())?;
    writeln!(s, "authorized sets: {}", g.count_authorized()?)?;
    writeln!(
        s,
        "self-orthogonal: {} (pairwise {}, dual containment {}, adversary {})",
        yes_no(so.pairwise && so.agree()),
        yes_no(so.pairwise),
        yes_no(so.dual_containment),
        yes_no(so.adversary)
    )?;
    writeln!(s, "self-dual: {}", yes_no(g.is_self_dual()))?;
    writeln!(s, "connected: {}", yes_no(g.is_connected()))?;
    match g.forbidden_minor()? {
        None => writeln!(s, "forbidden minor: none")?,
        Some(w) => writeln!(
            s,
            "forbidden minor: {} (delete {}, contract {})",
            w.minor, w.deleted, w.contracted
        )?,
    }
    writeln!(s, "matroid related: {}", yes_no(g.is_matroid_related()?))?;
    Ok(s)
}

fn minors(args: &MinorsArgs) -> Result<String> {
    let mut g = AccessStructure::from_text(&read(&args.io.input)?)?;
    let del = parse_set(&args.delete)?;
    let con = parse_set(&args.contract)?;
    if !del.is_empty() {
        g = g.delete(del)?;
    }
    if !con.is_empty() {
        g = g.contract(con)?;
    }
    Ok(g.to_text())
}

fn matroid_info(args: &MatroidArgs) -> Result<String> {
    let text = read(&args.code.io.input)?;
    let m = if is_matroid_file(&text) {
        read_matroid(&text, args.code.field)?
    } else {
        Matroid::from_matrix(&parse_matrix(&text, args.code.field)?)?
    };
    let mut s = String::new();
    writeln!(s, "ground: {}", m.ground_size())?;
    writeln!(s, "rank: {}", m.full_rank())?;
    writeln!(s, "bases: {}", m.bases()?.len())?;
    writeln!(
        s,
        "identically self-dual: {}",
        yes_no(m.is_identically_self_dual()?)
    )?;
    writeln!(s, "circuits: {}", m.circuits().len())?;
    for c in m.circuits() {
        let elems: Vec<String> = c.iter().map(|e| e.to_string()).collect();
        writeln!(s, "  {}", elems.join(" "))?;
    }
    if let Some(d) = args.dealer {
        writeln!(s, "induced access structure (dealer {d}):")?;
        s.push_str(&m.induced_access_structure(d)?.to_text());
    }
    Ok(s)
}

fn plan(args: &PlanArgs) -> Result<String> {
    let scheme = read_scheme(&args.scheme)?;
    let plan = scheme.reconstruction_plan(parse_set(&args.set)?)?;
    Ok(plan.to_text())
}

fn verify(args: &VerifyArgs) -> Result<(String, Report)> {
    let scheme = read_scheme(&args.scheme)?;
    let report = match &args.set {
        Some(set) => {
            let x = parse_set(set)?;
            if scheme.access_structure().is_authorized(x)? {
                check_recovery(&scheme, x)?
            } else {
                check_privacy(&scheme, x)?
            }
        }
        None => verify_all(&scheme)?,
    };
    Ok((report.to_string(), report))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::AnalyzeCode(a) => emit(a.io.out.as_deref(), &analyze_code(&a)?),
        Command::BuildScheme(a) => emit(a.code.io.out.as_deref(), &scheme_from(&a)?.to_text()),
        Command::ListAccess(a) => {
            let scheme = scheme_from(&a)?;
            let mut s = format!("dealer {}\n", a.dealer);
            s.push_str(&scheme.access_structure().to_text());
            emit(a.code.io.out.as_deref(), &s)
        }
        Command::CheckAccess(a) => emit(a.out.as_deref(), &check_access(&a)?),
        Command::Minors(a) => emit(a.io.out.as_deref(), &minors(&a)?),
        Command::MatroidInfo(a) => emit(a.code.io.out.as_deref(), &matroid_info(&a)?),
        Command::Plan(a) => emit(a.out.as_deref(), &plan(&a)?),
        Command::Verify(a) => {
            let (text, report) = verify(&a)?;
            emit(a.out.as_deref(), &text)?;
            if !report.all_pass() {
                bail!(
                    "{} of {} checks failed",
                    report.failed(),
                    report.checks.len()
                );
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = format!("{e:#}").replace('\n', " ");
            eprintln!("ERROR: {msg}");
            ExitCode::from(1)
        }
    }
}
