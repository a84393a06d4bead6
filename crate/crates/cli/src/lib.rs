//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when an input fails validation or cannot be
//! read, 2 on usage errors.

#![allow(clippy::result_large_err)]

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use authcodes::designs::{
    check_equitable, equitable_order, equitable_order_splitting, equitable_order_splitting_base,
    validate_bibd, validate_edf, validate_splitting_bibd, SplitOrdering, DEFAULT_SEARCH_BUDGET,
};
use authcodes::format::{self, Document, EmitError, ParseError};
use authcodes::oracle::{self, Attack, GameSpec, OracleError, Target};
use authcodes::transform::{self, TransformError};
use authcodes::{
    reproduce, AuthCode, BaseBlocks, CodeError, DesignError, Distribution, EdfSpec, OrderedDesign,
    Rational,
};
use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(
    name = "authcodes",
    version,
    about = "Authentication codes from block designs"
)]
struct Cli {
    /// Write emitted files here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Order {
    /// Keep the cell order of the base blocks.
    Keep,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Develop base blocks through Z_n.
    Gen {
        #[arg(long)]
        base: PathBuf,
        /// Without this flag the rows are emitted as unordered blocks.
        #[arg(long, value_enum)]
        order: Option<Order>,
    },
    /// Equitably order a design or a set of base blocks.
    Order {
        file: PathBuf,
        /// Node budget of the splitting search.
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: usize,
    },
    /// Validate any supported file.
    Validate { file: PathBuf },
    /// Exact attack values of an authentication code.
    Analyze {
        file: PathBuf,
        /// Source weights, separated by spaces or commas.
        #[arg(long)]
        sourcedist: Option<String>,
    },
    /// Dual code (keys and messages exchanged).
    Dual {
        file: PathBuf,
        /// Print the comparison with the original code instead of the dual.
        #[arg(long)]
        verify: bool,
    },
    /// Convert between authentication codes and threshold schemes.
    Convert {
        #[arg(
            long,
            conflicts_with = "to_authcode",
            required_unless_present = "to_authcode"
        )]
        to_threshold: Option<PathBuf>,
        #[arg(long)]
        to_authcode: Option<PathBuf>,
        /// Print the value comparison instead of the converted file.
        #[arg(long)]
        verify: bool,
    },
    /// Play the optimal strategy of an attack against sampled outcomes.
    Simulate {
        file: PathBuf,
        #[arg(long)]
        attack: Attack,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Evaluation budget for finding the strategy.
        #[arg(long, default_value_t = oracle::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Exact optimal value of an attack by full enumeration.
    Exhaustive {
        file: PathBuf,
        #[arg(long)]
        attack: Attack,
        #[arg(long, default_value_t = oracle::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Run the reproduction suite and print a pass/fail table.
    VerifyPaper,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{path}: expected {expected}, found %{found}")]
    WrongKind {
        path: PathBuf,
        expected: &'static str,
        found: &'static str,
    },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Emit(#[from] EmitError),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// Outcome of a successful command: text for standard output and whether
/// the input passed every check.
struct Output {
    text: String,
    /// Emitted files go to `--output` when it is given.
    file: bool,
    ok: bool,
}

impl Output {
    fn file(text: String) -> Self {
        Output {
            text,
            file: true,
            ok: true,
        }
    }

    fn report(text: String, ok: bool) -> Self {
        Output {
            text,
            file: false,
            ok,
        }
    }
}

fn read(path: &Path) -> Result<Document, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    format::parse(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

/// A `%DESIGN` file is read as an encoding matrix with uniform sources.
fn read_code(path: &Path) -> Result<AuthCode, CliError> {
    match read(path)? {
        Document::AuthCode(code) => Ok(code),
        Document::Design(d) => Ok(AuthCode::uniform(d)?),
        other => Err(CliError::WrongKind {
            path: path.to_path_buf(),
            expected: "%AUTHCODE or %DESIGN",
            found: other.kind(),
        }),
    }
}

fn parse_weights(raw: &str) -> Result<Distribution, CliError> {
    let weights = raw
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|w| !w.is_empty())
        .map(|w| {
            w.parse::<Rational>()
                .map_err(|_| CliError::Usage(format!("--sourcedist: {w:?} is not a rational")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Distribution::new(weights).map_err(|e| CliError::Usage(format!("--sourcedist: {e}")))
}

fn gen(base: &Path, order: Option<Order>) -> Result<Output, CliError> {
    let base = match read(base)? {
        Document::BaseBlocks(b) => b,
        other => {
            return Err(CliError::WrongKind {
                path: base.to_path_buf(),
                expected: "%BASEBLOCKS",
                found: other.kind(),
            })
        }
    };
    let developed = base.develop()?;
    let design = match order {
        Some(Order::Keep) => developed,
        None => developed.merged(),
    };
    Ok(Output::file(format::emit_design(&design)?))
}

fn split_result(found: SplitOrdering) -> Result<Output, CliError> {
    match found {
        SplitOrdering::Found(d) => Ok(Output::file(format::emit_design(&d)?)),
        SplitOrdering::NoneFound { nodes } => {
            Ok(Output::report(format!("none_found nodes={nodes}\n"), false))
        }
    }
}

fn order(path: &Path, budget: usize) -> Result<Output, CliError> {
    match read(path)? {
        Document::Design(d) if d.u() == 1 => {
            Ok(Output::file(format::emit_design(&equitable_order(&d)?)?))
        }
        Document::Design(d) => {
            let c = d
                .cell_size()
                .ok_or_else(|| CliError::Invalid("cells have different sizes".into()))?;
            if c == 1 {
                Ok(Output::file(format::emit_design(&equitable_order(
                    &d.merged(),
                )?)?))
            } else {
                split_result(equitable_order_splitting(&d, d.u(), c, budget)?)
            }
        }
        Document::BaseBlocks(b) if b.c == 1 => Ok(Output::file(format::emit_design(
            &equitable_order(&b.develop()?.merged())?,
        )?)),
        Document::BaseBlocks(b) => split_result(equitable_order_splitting_base(&b, budget)?),
        other => Err(CliError::WrongKind {
            path: path.to_path_buf(),
            expected: "%DESIGN or %BASEBLOCKS",
            found: other.kind(),
        }),
    }
}

fn design_lines(design: &OrderedDesign, out: &mut String) -> bool {
    let mut ok = false;
    match validate_bibd(&design.merged()) {
        Ok(p) => {
            ok = true;
            out.push_str(&format!(
                "bibd = ok v={} b={} r={} k={} lambda={}\n",
                p.v, p.b, p.r, p.k, p.lambda
            ));
        }
        Err(e) => out.push_str(&format!("bibd = fail {e}\n")),
    }
    if design.u() > 1 {
        if let Some(c) = design.cell_size() {
            match validate_splitting_bibd(design, design.u(), c) {
                Ok(_) => {
                    ok = true;
                    out.push_str(&format!("splitting = ok u={} c={c}\n", design.u()));
                }
                Err(e) => out.push_str(&format!("splitting = fail {e}\n")),
            }
        }
        match check_equitable(design) {
            Ok(m) => out.push_str(&format!("equitable = ok multiplicity={m}\n")),
            Err(e) => out.push_str(&format!("equitable = fail {e}\n")),
        }
    }
    ok
}

fn base_lines(base: &BaseBlocks, out: &mut String) -> Result<bool, CliError> {
    let mut ok = design_lines(&base.develop()?, out);
    let orbits = if base.has_full_orbits() { "yes" } else { "no" };
    out.push_str(&format!("full_orbits = {orbits}\n"));
    if let [row] = &base.bases[..] {
        if base.u > 1 {
            match validate_edf(&EdfSpec::new(base.n, row.clone())) {
                Ok(lambda) => {
                    ok = true;
                    out.push_str(&format!("edf = ok lambda={lambda}\n"));
                }
                Err(e) => out.push_str(&format!("edf = fail {e}\n")),
            }
        }
    }
    Ok(ok)
}

fn validate(path: &Path) -> Result<Output, CliError> {
    let mut out = String::new();
    let ok = match read(path)? {
        Document::Design(d) => design_lines(&d, &mut out),
        Document::BaseBlocks(b) => base_lines(&b, &mut out)?,
        Document::AuthCode(code) => {
            out.push_str(&format!(
                "authcode = ok v={} b={} u={}\n",
                code.v(),
                code.b(),
                code.u()
            ));
            match code.splitting_number() {
                Some(c) => out.push_str(&format!("splitting = {c}\n")),
                None => out.push_str("splitting = nonuniform\n"),
            }
            true
        }
        Document::Threshold(s) => {
            out.push_str(&format!(
                "threshold = ok s={} a1={} a2={} rules={}\n",
                s.secret_count(),
                s.share1_alphabet(),
                s.share2_alphabet(),
                s.rules().len()
            ));
            match s.share_secrecy() {
                Ok(()) => {
                    out.push_str("share_secrecy = ok\n");
                    true
                }
                Err(w) => {
                    out.push_str(&format!("share_secrecy = fail {w}\n"));
                    false
                }
            }
        }
    };
    Ok(Output::report(out, ok))
}

fn analyze(path: &Path, sourcedist: Option<&str>) -> Result<Output, CliError> {
    let mut code = read_code(path)?;
    if let Some(raw) = sourcedist {
        let dist = parse_weights(raw)?;
        if dist.len() != code.u() {
            return Err(CliError::Usage(format!(
                "--sourcedist has {} weights, the code has {} sources",
                dist.len(),
                code.u()
            )));
        }
        code = code.with_sources(dist)?;
    }
    Ok(Output::report(code.analyze()?.to_string(), true))
}

fn dual(path: &Path, verify: bool) -> Result<Output, CliError> {
    let code = read_code(path)?;
    if verify {
        let report = transform::verify_duality(&code)?;
        return Ok(Output::report(report.to_string(), report.passed()));
    }
    Ok(Output::file(format::emit_authcode(&transform::dual(
        &code,
    )?)))
}

fn convert(
    to_threshold: Option<&Path>,
    to_authcode: Option<&Path>,
    verify: bool,
) -> Result<Output, CliError> {
    match (to_threshold, to_authcode) {
        (Some(path), None) => {
            let code = read_code(path)?;
            if verify {
                let report = transform::verify_equivalence(&code)?;
                return Ok(Output::report(report.to_string(), report.passed()));
            }
            Ok(Output::file(format::emit_threshold(
                &transform::authcode_to_threshold(&code)?,
            )))
        }
        (None, Some(path)) => match read(path)? {
            Document::Threshold(s) => Ok(Output::file(format::emit_authcode(
                &transform::threshold_to_authcode(&s)?,
            ))),
            other => Err(CliError::WrongKind {
                path: path.to_path_buf(),
                expected: "%THRESHOLD22",
                found: other.kind(),
            }),
        },
        _ => Err(CliError::Usage(
            "give exactly one of --to-threshold and --to-authcode".into(),
        )),
    }
}

fn game(path: &Path, attack: Attack) -> Result<GameSpec, CliError> {
    let target = match read(path)? {
        Document::AuthCode(c) => Target::Code(c),
        Document::Design(d) => Target::Code(AuthCode::uniform(d)?),
        Document::Threshold(s) => Target::Scheme(s),
        other => {
            return Err(CliError::WrongKind {
                path: path.to_path_buf(),
                expected: "%AUTHCODE, %DESIGN or %THRESHOLD22",
                found: other.kind(),
            })
        }
    };
    Ok(GameSpec { target, attack })
}

fn simulate(
    path: &Path,
    attack: Attack,
    trials: u64,
    seed: u64,
    budget: u64,
) -> Result<Output, CliError> {
    let spec = game(path, attack)?;
    if trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let best = oracle::exhaustive_value(&spec, budget)?;
    let result = oracle::monte_carlo(&spec, &best.strategy, trials, seed)?;
    Ok(Output::report(format!("{result}\n"), true))
}

fn exhaustive(path: &Path, attack: Attack, budget: u64) -> Result<Output, CliError> {
    let spec = game(path, attack)?;
    let best = oracle::exhaustive_value(&spec, budget)?;
    let strategy: Vec<String> = best.strategy.iter().map(usize::to_string).collect();
    Ok(Output::report(
        format!(
            "value = {}\nstrategy = {}\nevaluations = {}\n",
            best.value,
            strategy.join(" "),
            best.evaluations
        ),
        true,
    ))
}

fn verify_paper() -> Output {
    let mut out = String::new();
    let mut ok = true;
    for result in reproduce::run_all() {
        ok &= result.passed();
        out.push_str(&format!("{result}\n"));
        for check in result.checks.iter().filter(|c| !c.passed) {
            out.push_str(&format!("    fail {}: {}\n", check.label, check.detail));
        }
    }
    Output::report(out, ok)
}

fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Gen { base, order } => gen(base, *order),
        Command::Order { file, budget } => order(file, *budget),
        Command::Validate { file } => validate(file),
        Command::Analyze { file, sourcedist } => analyze(file, sourcedist.as_deref()),
        Command::Dual { file, verify } => dual(file, *verify),
        Command::Convert {
            to_threshold,
            to_authcode,
            verify,
        } => convert(to_threshold.as_deref(), to_authcode.as_deref(), *verify),
        Command::Simulate {
            file,
            attack,
            trials,
            seed,
            budget,
        } => simulate(file, *attack, *trials, *seed, *budget),
        Command::Exhaustive {
            file,
            attack,
            budget,
        } => exhaustive(file, *attack, *budget),
        Command::VerifyPaper => Ok(verify_paper()),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(output) => {
            let written = match (&cli.output, output.file) {
                (Some(path), true) => {
                    fs::write(path, &output.text).map_err(|source| CliError::Io {
                        path: path.clone(),
                        source,
                    })
                }
                _ => out
                    .write_all(output.text.as_bytes())
                    .map_err(|source| CliError::Io {
                        path: "<stdout>".into(),
                        source,
                    }),
            };
            match written {
                Ok(()) if output.ok => 0,
                Ok(()) => 1,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    1
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
