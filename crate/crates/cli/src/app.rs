use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use cuspline_core::arrange::{
    build_ceva, build_char2, build_char3, build_generic, CuspConstruction, Violation,
};
use cuspline_core::gf::FieldCtx;
use cuspline_core::projplane::{classify_cubic, cubic_conditions, cubics_through};
use cuspline_core::realize::{
    export_ideal, RealizationProblem, Status, EXHAUSTIVE_MAX_GROUND, EXHAUSTIVE_MAX_ORDER,
};
use cuspline_core::triples::{
    automorphism_order, from_arrangement, isomorphic, make_mq, make_nq, make_projection_matroid,
    IsoWitness, TripleSystem,
};

use crate::formats::{self, ArrangementFile, FormatError, PointsFile};
use crate::report::Report;

const EXIT_CODES: &str = "\
Exit codes:
  0  success, or a positive answer
  1  a negative answer (not isomorphic, not realizable, not Steiner, no cubic)
  2  usage, I/O or file-format error
  3  audit found points of multiplicity other than 2 or 3";

const FORMATS: &str = "\
File formats:
  field header   field p=<p> n=<n> modulus=<c0,...,cn>   (low degree first)
  points         field header, then one x:y:z per line
  arrangement    field header, then `<label> a:b:c` per line
  triple system  `ground <l1> <l2> ...`, then `a b c` per line, a < b < c, lex-sorted
Coordinates are field elements written as integers sum(c_i p^i), normalized
so the first nonzero coordinate is 1.";

#[derive(Debug, Parser)]
#[command(name = "cuspline", version, about = "Line arrangements with only triple points, their matroids and realizations over finite fields", after_help = format!("{FORMATS}\n\n{EXIT_CODES}"))]
struct Cli {
    /// Print reports as a JSON object with the same keys as the text form.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct FieldArgs {
    /// Characteristic.
    #[arg(long = "p")]
    p: u32,
    /// Extension degree.
    #[arg(long = "n", default_value_t = 1)]
    n: u32,
    /// Modulus coefficients c0,...,cn, low degree first (default: built-in table).
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
}

impl FieldArgs {
    fn field(&self) -> Result<FieldCtx, CliError> {
        Ok(FieldCtx::new(self.p, self.n, self.modulus.as_deref())?)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Construction {
    /// Duals of all points of the cuspidal cubic over K, characteristic 3.
    Char3,
    /// Duals of the points with nonzero parameter, characteristic 2.
    Char2,
    /// Duals of all points, characteristic at least 5 (has double points).
    Generic,
    /// The nine Ceva lines (x³−y³)(y³−z³)(z³−x³); needs a cube root of unity.
    Ceva,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    /// Zero-sum triples of K, characteristic 3.
    Mq,
    /// Triples {a, b, a+b} of K*, characteristic 2.
    Nq,
    /// Lines of PG(n−1, 2) on binary labels 1..2^n−1 (uses --n only).
    Projection,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the arrangement dual to points of the cuspidal cubic.
    #[command(after_help = EXIT_CODES)]
    Build {
        #[arg(long, value_enum)]
        construction: Construction,
        #[command(flatten)]
        field: FieldArgs,
        /// Output file (default: stdout).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Count the points where exactly k lines meet.
    ///
    /// Prints `lines=<n>` and `t[<k>]=<count>` ascending in k. Arrangements
    /// recognized as a cubic-dual construction also get the exact expected
    /// counts; for the generic construction the commonly quoted values
    /// t3 = q(q-3)/6 and t2 = q are printed and compared with the measurement.
    #[command(after_help = EXIT_CODES)]
    Audit {
        arrangement: PathBuf,
        /// List every multiple point as `x:y:z -> {labels}`.
        #[arg(long)]
        points: bool,
        /// Also check that every line carries R multiple points and every
        /// multiple point has multiplicity K.
        #[arg(long, num_args = 2, value_names = ["R", "K"])]
        config: Option<Vec<usize>>,
    },
    /// Write the dual points of an arrangement as a points file.
    #[command(after_help = EXIT_CODES)]
    DualPoints {
        arrangement: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Triple systems: extraction, constructions and comparisons.
    #[command(subcommand)]
    Matroid(MatroidCommand),
    /// Decide whether a triple system is realized by lines over a field.
    ///
    /// Four labels with no triple among them are fixed to the standard frame,
    /// then the rest is searched exhaustively. Exhaustive answers are
    /// advertised for at most 31 labels over fields of order at most 27;
    /// beyond that --best-effort is required and a failed search reports
    /// NOT_FOUND rather than UNREALIZABLE.
    #[command(
        after_help = "Exit codes:\n  0  REALIZABLE\n  1  UNREALIZABLE (or NOT_FOUND with --best-effort)\n  2  usage, I/O or file-format error"
    )]
    Realize {
        triple_system: PathBuf,
        /// Field as `P N`.
        #[arg(long, num_args = 2, value_names = ["P", "N"], required = true)]
        field: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u32>>,
        /// Enumerate every frame-fixed realization instead of stopping at one.
        #[arg(long)]
        count_all: bool,
        /// Allow inputs outside the exhaustive scope.
        #[arg(long)]
        best_effort: bool,
    },
    /// Write the realization ideal: a determinant per triple that must
    /// vanish and one per other 3-subset that must not.
    ///
    /// Format: `ring vars=<list>`, with --normalize a `normalization=` line
    /// naming the fixed labels, then `== vanishing ==` and
    /// `== nonvanishing ==` sections with one polynomial per line.
    #[command(after_help = EXIT_CODES)]
    ExportIdeal {
        triple_system: PathBuf,
        /// Substitute the standard frame for four labels.
        #[arg(long)]
        normalize: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Fit plane cubics through the points of a points file.
    ///
    /// Prints the dimension of the space of cubic forms through the points,
    /// a basis, and the singularity type of each basis form when the
    /// dimension is at most 2.
    #[command(after_help = EXIT_CODES)]
    CubicFit { points: PathBuf },
}

#[derive(Debug, Subcommand)]
enum MatroidCommand {
    /// Triples of lines through a common point of an arrangement.
    #[command(after_help = EXIT_CODES)]
    Extract {
        arrangement: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write one of the group-law triple systems.
    #[command(after_help = EXIT_CODES)]
    Make {
        #[arg(value_enum)]
        family: Family,
        /// Characteristic (ignored for `projection`).
        #[arg(long = "p", default_value_t = 2)]
        p: u32,
        #[arg(long = "n", default_value_t = 1)]
        n: u32,
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u32>>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search for a label bijection carrying the triples of A onto those of B.
    #[command(
        after_help = "Exit codes:\n  0  isomorphic; the witness is printed as `a->b` pairs\n  1  not isomorphic (search exhausted)\n  2  usage, I/O or file-format error"
    )]
    Iso { a: PathBuf, b: PathBuf },
    /// Count automorphisms exhaustively.
    #[command(after_help = EXIT_CODES)]
    Aut { triple_system: PathBuf },
    /// Keep the triples inside a subset of the labels.
    #[command(after_help = EXIT_CODES)]
    Restrict {
        triple_system: PathBuf,
        /// Explicit labels to keep.
        #[arg(long, value_delimiter = ',', conflicts_with = "span")]
        labels: Option<Vec<i64>>,
        /// Keep the F_p-span of these field elements (encoded), with --field.
        #[arg(long, value_delimiter = ',', requires = "field")]
        span: Option<Vec<u64>>,
        #[arg(long, num_args = 2, value_names = ["P", "N"])]
        field: Option<Vec<u32>>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that every pair of labels lies in exactly one triple.
    #[command(
        after_help = "Exit codes:\n  0  Steiner\n  1  not Steiner\n  2  usage, I/O or file-format error"
    )]
    Steiner { triple_system: PathBuf },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error(transparent)]
    Core(#[from] cuspline_core::Error),
    #[error("{0}")]
    Usage(String),
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `args` (program name first) without touching the
/// process streams.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli) {
        Ok((code, out)) => Outcome {
            code,
            stdout: out,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn parsed<T>(path: &Path, f: impl FnOnce(&str) -> Result<T, FormatError>) -> Result<T, CliError> {
    f(&read(path)?).map_err(|source| CliError::Format {
        path: path.to_owned(),
        source,
    })
}

fn read_ts(path: &Path) -> Result<TripleSystem, CliError> {
    parsed(path, formats::parse_triple_system)
}

fn emit(text: String, output: Option<&Path>) -> Result<String, CliError> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|source| CliError::Io {
                path: path.to_owned(),
                source,
            })?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn pairs(w: &IsoWitness) -> Vec<String> {
    w.pairs.iter().map(|(a, b)| format!("{a}->{b}")).collect()
}

fn field_of(pn: &[u32], modulus: Option<&[u32]>) -> Result<FieldCtx, CliError> {
    Ok(FieldCtx::new(pn[0], pn[1], modulus)?)
}

/// `num/den` in lowest terms, or an integer.
fn fraction(num: u64, den: u64) -> String {
    let (mut a, mut b) = (num, den);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    if a == 0 || den / a == 1 {
        format!("{}", num / a.max(1))
    } else {
        format!("{}/{}", num / a, den / a)
    }
}

fn execute(cli: &Cli) -> Result<(i32, String), CliError> {
    let render = |r: &Report| if cli.json { r.to_json() } else { r.to_text() };
    match &cli.command {
        Command::Build {
            construction,
            field,
            output,
        } => {
            let ctx = field.field()?;
            let a = match construction {
                Construction::Char3 => build_char3(&ctx),
                Construction::Char2 => build_char2(&ctx),
                Construction::Generic => build_generic(&ctx),
                Construction::Ceva => build_ceva(&ctx),
            }?;
            Ok((0, emit(formats::write_arrangement(&a), output.as_deref())?))
        }
        Command::Audit {
            arrangement,
            points,
            config,
        } => {
            let file = parsed(arrangement, ArrangementFile::parse)?;
            let a = file.arrangement();
            let s = a.audit()?;
            let mut r = Report::new();
            r.push("lines", s.line_count);
            for (&k, &t) in &s.counts {
                r.push(format!("t[{k}]"), t);
            }
            if let Some(c) = a.cusp_construction() {
                let q = file.ctx.order() as u64;
                let (t2, t3) = c.predicted(q);
                r.push("construction", c.name());
                r.push("expected_t2", t2);
                r.push("expected_t3", t3);
                r.push(
                    "matches_expected",
                    s.t(2) as u64 == t2 && s.t(3) as u64 == t3 && s.at_most_triple(),
                );
                if c == CuspConstruction::Generic {
                    let quoted_t3 = fraction(q * (q - 3), 6);
                    r.push("quoted_t2", q);
                    r.push("quoted_t3", quoted_t3.clone());
                    r.push("quoted_formulas", "t2=q t3=q(q-3)/6");
                    let agrees = s.t(2) as u64 == q && quoted_t3 == s.t(3).to_string();
                    r.push("quoted_mismatch", !agrees);
                }
            }
            if let Some(rk) = config {
                let report = a.check_configuration(&s, rk[0], rk[1]);
                r.push("config_r", rk[0]);
                r.push("config_k", rk[1]);
                r.push("config_holds", report.holds());
                let violations: Vec<String> = report
                    .violations
                    .iter()
                    .map(|v| match v {
                        Violation::LineRichness { label, found } => format!("line:{label}:{found}"),
                        Violation::PointMultiplicity { point, found } => {
                            format!("point:{}:{}:{}:{found}", point[0], point[1], point[2])
                        }
                    })
                    .collect();
                r.push("config_violations", violations);
            }
            if *points {
                for mp in &s.points {
                    r.push_point(mp.point.to_string(), mp.labels.clone());
                }
            }
            Ok((if s.at_most_triple() { 0 } else { 3 }, render(&r)))
        }
        Command::DualPoints {
            arrangement,
            output,
        } => {
            let file = parsed(arrangement, ArrangementFile::parse)?;
            let a = file.arrangement();
            Ok((
                0,
                emit(
                    formats::write_points(&file.ctx, &a.dual_points()),
                    output.as_deref(),
                )?,
            ))
        }
        Command::Matroid(m) => matroid(m, &render),
        Command::Realize {
            triple_system,
            field,
            modulus,
            count_all,
            best_effort,
        } => {
            let ts = read_ts(triple_system)?;
            let ctx = field_of(field, modulus.as_deref())?;
            let problem = RealizationProblem::new(&ts, &ctx)?;
            let exhaustive = problem.within_exhaustive_scope();
            if !exhaustive && !best_effort {
                return Err(CliError::Usage(format!(
                    "exhaustive answers are limited to {EXHAUSTIVE_MAX_GROUND} labels and fields of order \
                     {EXHAUSTIVE_MAX_ORDER}; pass --best-effort to search anyway"
                )));
            }
            let result = problem.solve(*count_all)?;
            let status = match result.status {
                Status::Realizable => "REALIZABLE",
                Status::Unrealizable if exhaustive => "UNREALIZABLE",
                Status::Unrealizable => "NOT_FOUND",
            };
            let mut r = Report::new();
            r.push("status", status);
            r.push("q", ctx.order());
            r.push("exhaustive", exhaustive);
            r.push("normalization", result.normalization.kind());
            let fixed = result.normalization.labels(&ts);
            r.push(
                "fixed",
                fixed.iter().map(i64::to_string).collect::<Vec<_>>(),
            );
            r.push("nodes", result.stats.nodes);
            r.push("forced", result.stats.forced);
            r.push("witnesses", result.witnesses.len());
            for (i, w) in result.witnesses.iter().enumerate() {
                let items = ts
                    .ground()
                    .iter()
                    .zip(w)
                    .map(|(l, p)| format!("{l}={p}"))
                    .collect::<Vec<_>>();
                r.push(format!("witness[{i}]"), items);
            }
            let code = if result.status == Status::Realizable {
                0
            } else {
                1
            };
            Ok((code, render(&r)))
        }
        Command::ExportIdeal {
            triple_system,
            normalize,
            output,
        } => {
            let ts = read_ts(triple_system)?;
            let ideal = export_ideal(&ts, *normalize)?;
            Ok((
                0,
                emit(formats::write_ideal(&ts, &ideal), output.as_deref())?,
            ))
        }
        Command::CubicFit { points } => {
            let file = parsed(points, PointsFile::parse)?;
            let pts = file.points();
            let basis = cubics_through(&file.ctx, &pts)?;
            let mut r = Report::new();
            r.push("points", pts.len());
            r.push("conditions", cubic_conditions(&file.ctx, &pts));
            r.push("kernel_dim", basis.len());
            for (i, form) in basis.iter().enumerate() {
                r.push(format!("basis[{i}]"), form.to_string());
            }
            if basis.len() <= 2 {
                for (i, form) in basis.iter().enumerate() {
                    let class = classify_cubic(form)?;
                    r.push(format!("kind[{i}]"), class.kind.to_string());
                    r.push(
                        format!("singular[{i}]"),
                        class
                            .singular_points
                            .iter()
                            .map(|p| p.to_string())
                            .collect::<Vec<_>>(),
                    );
                }
            }
            Ok((if basis.is_empty() { 1 } else { 0 }, render(&r)))
        }
    }
}

fn matroid(
    m: &MatroidCommand,
    render: &dyn Fn(&Report) -> String,
) -> Result<(i32, String), CliError> {
    match m {
        MatroidCommand::Extract {
            arrangement,
            output,
        } => {
            let file = parsed(arrangement, ArrangementFile::parse)?;
            let a = file.arrangement();
            let ts = from_arrangement(&a, &a.audit()?);
            Ok((
                0,
                emit(formats::write_triple_system(&ts), output.as_deref())?,
            ))
        }
        MatroidCommand::Make {
            family,
            p,
            n,
            modulus,
            output,
        } => {
            let ts = match family {
                Family::Projection => make_projection_matroid(*n)?,
                Family::Mq | Family::Nq => {
                    let ctx = FieldCtx::new(*p, *n, modulus.as_deref())?;
                    match family {
                        Family::Mq => make_mq(&ctx)?,
                        _ => make_nq(&ctx)?,
                    }
                }
            };
            Ok((
                0,
                emit(formats::write_triple_system(&ts), output.as_deref())?,
            ))
        }
        MatroidCommand::Iso { a, b } => {
            let (ta, tb) = (read_ts(a)?, read_ts(b)?);
            let search = isomorphic(&ta, &tb);
            let mut r = Report::new();
            r.push("isomorphic", search.witness.is_some());
            r.push("nodes", search.nodes);
            if let Some(w) = &search.witness {
                if !w.verify(&ta, &tb) {
                    return Err(CliError::Core(cuspline_core::Error::Invariant(
                        "isomorphism witness failed verification".into(),
                    )));
                }
                r.push("witness", pairs(w));
            }
            Ok((if search.witness.is_some() { 0 } else { 1 }, render(&r)))
        }
        MatroidCommand::Aut { triple_system } => {
            let ts = read_ts(triple_system)?;
            let aut = automorphism_order(&ts);
            let mut r = Report::new();
            r.push("order", aut.order);
            r.push("nodes", aut.nodes);
            r.push("generators", aut.generators.len());
            for (i, g) in aut.generators.iter().enumerate() {
                r.push(format!("generator[{i}]"), pairs(g));
            }
            Ok((0, render(&r)))
        }
        MatroidCommand::Restrict {
            triple_system,
            labels,
            span,
            field,
            output,
        } => {
            let ts = read_ts(triple_system)?;
            let subset: Vec<i64> = match (labels, span, field) {
                (Some(labels), None, _) => labels.clone(),
                (None, Some(codes), Some(pn)) => {
                    let ctx = field_of(pn, None)?;
                    let basis = codes
                        .iter()
                        .map(|&c| ctx.elem(c))
                        .collect::<Result<Vec<_>, _>>()?;
                    ctx.span_members(&basis)?
                        .iter()
                        .map(|e| e.encode() as i64)
                        .collect()
                }
                _ => {
                    return Err(CliError::Usage(
                        "give --labels, or --span with --field".into(),
                    ))
                }
            };
            let sub = ts.restrict(&subset)?;
            Ok((
                0,
                emit(formats::write_triple_system(&sub), output.as_deref())?,
            ))
        }
        MatroidCommand::Steiner { triple_system } => {
            let ts = read_ts(triple_system)?;
            let mut r = Report::new();
            r.push("steiner", ts.is_steiner());
            r.push("ground", ts.ground().len());
            r.push("triples", ts.triples().len());
            Ok((if ts.is_steiner() { 0 } else { 1 }, render(&r)))
        }
    }
}
