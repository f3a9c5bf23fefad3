//! Command-line surface.
//!
//! Exit codes: 0 success, 1 invalid input, 2 budget exceeded, 3 internal
//! consistency failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::complexes::{ChainComplex, ComplexError, ComplexKind, Config, DEFAULT_BUDGET};
use crate::homology::{betti, HomologyError};
use crate::io::{self, emit, Format, HomologyRow, IoError, ReportBody, ReportFile};
use crate::lemma1::{build_counterexample, full_report};
use crate::lie::{LeviData, LeviError, LieAlgebra, LieError, Representation};
use crate::linalg::{self, RankMethod, Vector};

#[derive(Debug, Parser)]
#[command(name = "hlcalc", version, about = "Exact Lie and Leibniz homology over the rationals")]
pub struct Cli {
    /// Compute ranks modulo three large primes, falling back to exact
    /// elimination when they disagree.
    #[arg(long, global = true)]
    pub modular: bool,
    /// Maximum predicted nonzeros in one chain complex.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Table,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComplexArg {
    Ce,
    Loday,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check antisymmetry records and the Jacobi identity.
    Validate {
        algebra: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
    },
    /// Betti numbers of the Chevalley-Eilenberg or Loday complex.
    Homology {
        algebra: PathBuf,
        #[arg(long, value_enum)]
        complex: ComplexArg,
        /// trivial, adjoint, dual-adjoint or file:<path>
        #[arg(long, default_value = "trivial")]
        coeff: String,
        /// Report degrees 0..=N; boundaries are built through N+1.
        #[arg(long)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
    },
    /// Evaluate conditions (ii)-(v) for a split extension r -> g -> s.
    Lemma1 {
        algebra: PathBuf,
        /// auto (Killing-orthogonal radical) or indices:<i,j,...>
        #[arg(long, default_value = "auto")]
        radical: String,
        /// indices:<i,j,...>; defaults to the complement of an index radical.
        #[arg(long)]
        section: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
    },
    /// Full report for g = ad ⋊ sl2.
    Counterexample {
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
    },
    /// Killing form matrix.
    Killing {
        algebra: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
    },
    /// Solvable radical as the Killing-orthogonal complement of [g, g].
    Radical {
        algebra: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
    },
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Budget(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Input(_) => 1,
            CliError::Budget(_) => 2,
            CliError::Internal(_) => 3,
        })
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Budget(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<LieError> for CliError {
    fn from(e: LieError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<LeviError> for CliError {
    fn from(e: LeviError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            ComplexError::Lie(l) => l.into(),
            ComplexError::EmptyLoday => CliError::Input(e.to_string()),
            ComplexError::CompositionNonzero { .. } | ComplexError::DegreeOutOfRange { .. } => {
                CliError::Internal(e.to_string())
            }
        }
    }
}

impl From<HomologyError> for CliError {
    fn from(e: HomologyError) -> Self {
        match e {
            HomologyError::Complex(c) => c.into(),
            HomologyError::Lie(l) => l.into(),
            HomologyError::Levi(l) => l.into(),
            other => CliError::Internal(other.to_string()),
        }
    }
}

fn format_of(f: FormatArg) -> Format {
    match f {
        FormatArg::Table => Format::Table,
        FormatArg::Machine => Format::Machine,
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<LieAlgebra, CliError> {
    io::parse_algebra(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn parse_indices(text: &str, dim: usize) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Input(format!("expected indices:<i,j,...> with entries below {dim}, got {text:?}"));
    let list = text.strip_prefix("indices:").ok_or_else(bad)?;
    if list.is_empty() {
        return Ok(Vec::new());
    }
    let out: Vec<usize> = list.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
    let mut sorted = out.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != out.len() || out.iter().any(|&i| i >= dim) {
        return Err(bad());
    }
    Ok(out)
}

fn rat_strings(v: &Vector) -> Vec<String> {
    v.to_dense().iter().map(ToString::to_string).collect()
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    let config = Config {
        rank_method: if cli.modular { RankMethod::Modular } else { RankMethod::Exact },
        budget: cli.budget,
    };
    match &cli.command {
        Command::Validate { algebra, format } => {
            let g = load_algebra(algebra)?;
            let text = io::serialize_algebra(&g);
            let body = ReportBody::Validate {
                labels: g.labels().to_vec(),
                dim: g.dim(),
                brackets: g.structure_records().count(),
            };
            let report = ReportFile::new("validate", io::sha256_hex(&[text.as_bytes()]), body);
            Ok(emit(&report, format_of(*format)))
        }
        Command::Homology { algebra, complex, coeff, max_degree, format } => {
            let g = load_algebra(algebra)?;
            let m = match coeff.as_str() {
                "trivial" => Representation::trivial(&g, 1),
                "adjoint" => Representation::adjoint(&g),
                "dual-adjoint" => Representation::adjoint(&g).dual(),
                other => match other.strip_prefix("file:") {
                    Some(path) => {
                        let path = Path::new(path);
                        io::parse_representation(&read(path)?, &g)
                            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
                    }
                    None => return Err(CliError::Input(format!("unknown coefficient module {other:?}"))),
                },
            };
            let kind = match complex {
                ComplexArg::Ce => ComplexKind::CE,
                ComplexArg::Loday => ComplexKind::Loday,
            };
            let top = match kind {
                ComplexKind::Loday => max_degree + 1,
                ComplexKind::CE => (max_degree + 1).min(g.dim()),
            };
            let c = ChainComplex::build(&g, &m, kind, top, &config)?;
            c.precompute_ranks();
            let mut rows = Vec::new();
            for n in 0..=*max_degree {
                let (rank, b) = if n > c.max_degree() { (0, 0) } else { (c.rank(n)?, betti(&c, n)?) };
                rows.push(HomologyRow { degree: n, chain_dim: c.chain_dim(n), boundary_rank: rank, betti: b });
            }
            let module_text = io::serialize_representation(&g, &m);
            let digest = io::sha256_hex(&[io::serialize_algebra(&g).as_bytes(), module_text.as_bytes()]);
            let h = io::homology_report(kind, coeff.clone(), m.dim(), g.dim(), c.max_degree(), rows);
            let report = ReportFile::new(format!("homology --max-degree {max_degree}"), digest, ReportBody::Homology(h));
            Ok(emit(&report, format_of(*format)))
        }
        Command::Lemma1 { algebra, radical, section, max_degree, format } => {
            let g = load_algebra(algebra)?;
            let dim = g.dim();
            let unit = |i: usize| Vector::unit(dim, i);
            let (rad, sec) = match radical.as_str() {
                "auto" => {
                    let list = section.as_deref().ok_or_else(|| {
                        CliError::Input("--radical auto needs --section indices:<list> spanning a Levi subalgebra".into())
                    })?;
                    (g.radical(), parse_indices(list, dim)?.into_iter().map(unit).collect::<Vec<_>>())
                }
                list => {
                    let r = parse_indices(list, dim)?;
                    let s = match section {
                        Some(text) => parse_indices(text, dim)?,
                        None => (0..dim).filter(|i| !r.contains(i)).collect(),
                    };
                    (r.into_iter().map(unit).collect(), s.into_iter().map(unit).collect())
                }
            };
            let ld = LeviData::from_subspaces(&g, &rad, &sec)?;
            lemma1_output("lemma1", &ld, *max_degree, &config, *format)
        }
        Command::Counterexample { max_degree, format } => {
            lemma1_output("counterexample", &build_counterexample(), *max_degree, &config, *format)
        }
        Command::Killing { algebra, format } => {
            let g = load_algebra(algebra)?;
            let k = g.killing_form();
            let matrix = k.to_dense().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
            let body = ReportBody::Killing { labels: g.labels().to_vec(), matrix, rank: linalg::rank(&k) };
            let digest = io::sha256_hex(&[io::serialize_algebra(&g).as_bytes()]);
            Ok(emit(&ReportFile::new("killing", digest, body), format_of(*format)))
        }
        Command::Radical { algebra, format } => {
            let g = load_algebra(algebra)?;
            let basis: Vec<Vec<String>> = g.radical().iter().map(rat_strings).collect();
            let body = ReportBody::Radical {
                labels: g.labels().to_vec(),
                dim: basis.len(),
                basis,
                derived_series: g.derived_series(),
            };
            let digest = io::sha256_hex(&[io::serialize_algebra(&g).as_bytes()]);
            Ok(emit(&ReportFile::new("radical", digest, body), format_of(*format)))
        }
    }
}

fn lemma1_output(command: &str, ld: &LeviData, max_degree: usize, config: &Config, format: FormatArg) -> Result<String, CliError> {
    let report = full_report(ld, max_degree, config)?;
    let failures = report.consistency_failures();
    let digest = io::sha256_hex(&[io::serialize_algebra(ld.total()).as_bytes(), &(ld.ideal_dim() as u64).to_le_bytes()]);
    let file = ReportFile::new(
        format!("{command} --max-degree {max_degree}"),
        digest,
        ReportBody::Lemma1(io::lemma1_report(&report)),
    );
    let text = emit(&file, format_of(format));
    if failures.is_empty() {
        Ok(text)
    } else {
        Err(CliError::Internal(format!("{text}\n{}", failures.join("\n"))))
    }
}

/// Parses `args`, runs, prints, and maps the outcome to an exit code.
pub fn main_with_args(args: impl IntoIterator<Item = std::ffi::OsString>) -> ExitCode {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}
