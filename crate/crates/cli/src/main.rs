//! Command-line front end.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use toric_ml::check::run_checks;
use toric_ml::demazure::{demazure_roots, DemazureRoot};
use toric_ml::derivation::{AlgebraElement, Operator, SemigroupAlgebra, SupportMode};
use toric_ml::input::MonoidInputDocument;
use toric_ml::invariants::analyze;
use toric_ml::lattice::LatticePoint;
use toric_ml::monoid::{AffineMonoid, Bounds};
use toric_ml::report::{
    to_json, CertificationDoc, DeriveDocument, HolesDocument, ReportDocument, RootDoc, RootsDocument, StatusDoc,
    TermDoc,
};
use toric_ml::Error;

const EXIT_OK: u8 = 0;
const EXIT_FAILED_CHECK: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_UNSUPPORTED: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Exact ML and ML* faces, holes and root derivations of an affine monoid.
#[derive(Parser, Debug)]
#[command(name = "toric-ml", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Degree bound B for bounded searches.
    #[arg(long, global = true)]
    degree_bound: Option<BigInt>,
    /// Window K for infinite hole families.
    #[arg(long, global = true)]
    family_window: Option<usize>,
    /// Height H for Demazure root enumeration.
    #[arg(long, global = true)]
    root_height: Option<BigInt>,
    /// Treat every verdict that is not exact as inconclusive.
    #[arg(long, global = true)]
    exact_only: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full invariant report.
    Analyze { file: PathBuf },
    /// Holes up to a degree bound, with infinite families.
    Holes {
        file: PathBuf,
        #[arg(long)]
        bound: Option<BigInt>,
    },
    /// Demazure roots of one ray of the dual cone and their descent.
    Roots {
        file: PathBuf,
        #[arg(long)]
        ray: usize,
        #[arg(long)]
        height: Option<BigInt>,
    },
    /// Apply a root derivation, or its exponential, to a monomial.
    Derive {
        file: PathBuf,
        #[arg(long)]
        ray: usize,
        /// Root e as comma-separated integers.
        #[arg(long, allow_hyphen_values = true)]
        root: String,
        /// Monomial exponent m as comma-separated integers.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "exp", required_unless_present = "exp")]
        apply: Option<String>,
        /// `t,m`: the parameter t (integer or p/q) followed by the exponent m.
        #[arg(long, allow_hyphen_values = true)]
        exp: Option<String>,
    },
    /// Cross-check every answer for this input against reference computations.
    Check { file: PathBuf },
}

impl Command {
    fn file(&self) -> &PathBuf {
        match self {
            Command::Analyze { file }
            | Command::Holes { file, .. }
            | Command::Roots { file, .. }
            | Command::Derive { file, .. }
            | Command::Check { file } => file,
        }
    }
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::HasUnits { .. } | Error::Unsupported(_) => EXIT_UNSUPPORTED,
            Error::Inconclusive(_) | Error::NotNilpotent { .. } => EXIT_INCONCLUSIVE,
            Error::Internal(_) => EXIT_FAILED_CHECK,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: message.into(),
    }
}

fn parse_ints(s: &str) -> Result<Vec<BigInt>, Failure> {
    s.split(',')
        .map(|t| t.trim().parse::<BigInt>().map_err(|_| invalid(format!("not an integer: {t:?}"))))
        .collect()
}

fn parse_rational(s: &str) -> Result<BigRational, Failure> {
    let s = s.trim();
    let bad = || invalid(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == BigInt::ZERO {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from(s.parse::<BigInt>().map_err(|_| bad())?)),
    }
}

/// A point given in input coordinates, converted to the monoid's coordinates.
fn point(monoid: &AffineMonoid, coords: Vec<BigInt>, what: &str) -> Result<LatticePoint, Failure> {
    if coords.len() != monoid.ambient_rank() {
        return Err(invalid(format!(
            "{what} has {} coordinates, expected {}",
            coords.len(),
            monoid.ambient_rank()
        )));
    }
    monoid
        .transform()
        .apply(&LatticePoint::new(coords))
        .ok_or_else(|| invalid(format!("{what} is outside the group generated by the monoid")))
}

struct Output {
    body: String,
    code: u8,
}

fn emit<T: serde::Serialize>(format: Format, doc: &T, text: String, code: u8) -> Output {
    Output {
        body: match format {
            Format::Json => to_json(doc),
            Format::Text => text,
        },
        code,
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let path = cli.command.file();
    let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    let input = MonoidInputDocument::parse(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    let monoid = input.monoid()?;
    let mut over = input.bounds_override();
    if cli.degree_bound.is_some() {
        over.degree_bound = cli.degree_bound.clone();
    }
    if cli.family_window.is_some() {
        over.family_window = cli.family_window;
    }
    if cli.root_height.is_some() {
        over.root_height = cli.root_height.clone();
    }
    let bounds: Bounds = over.resolve(&monoid);
    if bounds.degree_bound <= BigInt::ZERO || bounds.root_height < BigInt::ZERO || bounds.family_window == 0 {
        return Err(invalid("bounds must be positive"));
    }
    let exact_only = cli.exact_only;

    match &cli.command {
        Command::Analyze { .. } => {
            let report = analyze(&monoid, &bounds, exact_only)?;
            let doc = ReportDocument::new(&input, &report);
            let code = if doc.status == StatusDoc::Complete {
                EXIT_OK
            } else {
                EXIT_INCONCLUSIVE
            };
            Ok(emit(cli.format, &doc, doc.to_text(), code))
        }
        Command::Holes { bound, .. } => {
            let b = bound.clone().unwrap_or_else(|| bounds.degree_bound.clone());
            if b < BigInt::ZERO {
                return Err(invalid("--bound must be nonnegative"));
            }
            let inv = monoid.hole_inventory(&b, bounds.family_window);
            let doc = HolesDocument::new(&input, &monoid, &inv);
            let heuristic = doc.families.iter().any(|f| f.certification != CertificationDoc::Exact);
            let code = if exact_only && (!doc.exact || heuristic) {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_OK
            };
            Ok(emit(cli.format, &doc, doc.to_text(), code))
        }
        Command::Roots { ray, height, .. } => {
            let sigma = monoid.sigma();
            if *ray >= sigma.rays().len() {
                return Err(invalid(format!("--ray {ray}: there are {} rays", sigma.rays().len())));
            }
            let h = height.clone().unwrap_or_else(|| bounds.root_height.clone());
            if h < BigInt::ZERO {
                return Err(invalid("--height must be nonnegative"));
            }
            let roots = demazure_roots(sigma, *ray, &h)?;
            let docs: Vec<RootDoc> = roots
                .iter()
                .map(|r| RootDoc::new(&r.e, &monoid.descends(&r.e, &bounds.degree_bound)))
                .collect();
            let doc = RootsDocument {
                tool: toric_ml::report::ToolDoc::current(),
                input: input.clone(),
                ray: *ray,
                normal: sigma.rays()[*ray].clone(),
                height: h,
                roots: docs,
            };
            let code = if exact_only && doc.roots.iter().any(|r| r.certification != CertificationDoc::Exact) {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_OK
            };
            Ok(emit(cli.format, &doc, doc.to_text(), code))
        }
        Command::Derive { ray, root, apply, exp, .. } => {
            let sigma = monoid.sigma();
            if *ray >= sigma.rays().len() {
                return Err(invalid(format!("--ray {ray}: there are {} rays", sigma.rays().len())));
            }
            let e = point(&monoid, parse_ints(root)?, "--root")?;
            let candidate = DemazureRoot { ray: *ray, e };
            if !candidate.is_valid(sigma) {
                return Err(invalid(format!("{} is not a Demazure root of ray {ray}", candidate.e)));
            }
            let d = candidate.derivation(sigma);
            let (t, m) = match (apply, exp) {
                (Some(m), _) => (None, point(&monoid, parse_ints(m)?, "--apply")?),
                (None, Some(arg)) => {
                    let (t, m) = arg
                        .split_once(',')
                        .ok_or_else(|| invalid("--exp expects t,m1,...,mn"))?;
                    (Some(parse_rational(t)?), point(&monoid, parse_ints(m)?, "--exp")?)
                }
                (None, None) => return Err(invalid("one of --apply or --exp is required")),
            };
            let alg = SemigroupAlgebra::new(monoid.clone(), SupportMode::Strict);
            let f = AlgebraElement::monomial(m.clone());
            let max_iter = bounds
                .max_iter
                .unwrap_or_else(|| alg.default_max_iter(&f, &bounds.root_height).max(4));
            let op: Operator = d.clone().into();
            let result = match &t {
                None => alg.apply(&op, &f, max_iter)?,
                Some(t) => alg.exponential(&op, t, &f, max_iter)?,
            };
            let index = op.nilpotency_index(&f, max_iter)?.index();
            let doc = DeriveDocument {
                tool: toric_ml::report::ToolDoc::current(),
                input: input.clone(),
                ray: *ray,
                rho: d.rho.clone(),
                e: d.e.clone(),
                operation: if t.is_some() { "exp" } else { "apply" }.into(),
                argument: m,
                t: t.as_ref().map(ToString::to_string),
                result: result
                    .terms()
                    .map(|(m, c)| TermDoc {
                        monomial: m.clone(),
                        coefficient: c.to_string(),
                    })
                    .collect(),
                result_text: result.to_string(),
                nilpotency_index: index,
            };
            Ok(emit(cli.format, &doc, doc.to_text(), EXIT_OK))
        }
        Command::Check { .. } => {
            let report = run_checks(&input, &monoid, &bounds, exact_only)?;
            let code = if report.passed() { EXIT_OK } else { EXIT_FAILED_CHECK };
            Ok(emit(cli.format, &report, report.to_text(), code))
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("ML_TORIC_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| invalid(format!("ML_TORIC_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| invalid(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = configure_threads().and_then(|_| run(&cli));
    match result {
        Ok(out) => {
            print!("{}", out.body);
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
