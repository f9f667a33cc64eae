//! Command-line front end. [`run`] parses argv, writes to the given streams and returns the exit code.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

use crate::catalog::{
    boundary_containment, boundary_equality, complete_from_euler, dimension_formula, family_logarithmic, family_rational, keys, named_form,
    seeded_boundary_shape, special_boundary_shape, verify_paper_report, CatalogError, ClaimStatus, EulerCompletion, KNOWN_ERRATA, LEDGER_SEED,
};
use crate::exactalg::{AlgebraError, LinearMap, MonomialOrder, Polynomial, Scalar};
use crate::forms::{FormError, OneForm, ProjectivityFailure, Wedge};
use crate::ideals::{GroebnerBudget, Ideal, IdealError, VarietyRelation};
use crate::integrals::{
    build_boundary_log_form, build_log_form, foliation_from_rational, is_first_integral, verify_log_decomposition, BoundaryShape, IntegralError, LogData,
    RationalPair,
};
use crate::properties::{run_all, run_property, PROPERTY_NAMES};
use crate::textio::{parse_ideal, parse_log_data, parse_one_form, parse_polynomial, parse_rational_pair, serialize_report, ParseError, ReportFormat, TextError};
use crate::torus::{destabilizing_check, fixing_lattice, limit_point, monomial_weight, weight_decompose, Direction, TorusError, WeightVector};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Subcommand names and the library operations each one reaches.
pub const DISPATCH: &[(&str, &[&str])] = &[
    ("check", &["checkProjective", "isIntegrable"]),
    ("sing", &["singularIdeal", "varietyEquals"]),
    ("limit", &["limitPoint"]),
    ("decompose", &["weightDecompose"]),
    ("monomial-weight", &["monomialWeight"]),
    ("fix-lattice", &["fixingLattice"]),
    ("destabilize", &["destabilizingCheck"]),
    ("first-integral", &["isFirstIntegral"]),
    ("foliation", &["foliationFromRational"]),
    ("log-build", &["buildLogForm"]),
    ("log-verify", &["verifyLogDecomposition"]),
    ("boundary", &["buildBoundaryLogForm", "radicalMembership", "varietyEquals"]),
    ("family", &["familyRational", "familyLogarithmic"]),
    ("verify-paper", &["verifyPaperReport", "serializeReport"]),
    ("dim", &["dimensionFormula"]),
    ("complete-euler", &["completeFromEuler"]),
    ("catalog", &["namedForm", "printCanonical"]),
    ("props", &[]),
    ("poly", &["parsePolynomial", "ringOps", "partialDerivative", "linearSubstitute", "homogeneousDegree", "evaluate", "printCanonical"]),
    (
        "form",
        &[
            "parseOneForm",
            "exteriorDerivative",
            "wedge",
            "radialContraction",
            "pullbackLinear",
            "pullbackFromP2",
            "dividePolynomialFactor",
            "projectiveEqual",
        ],
    ),
    ("groebner", &["buchberger"]),
    ("normal-form", &["normalForm"]),
    ("member", &["idealMembership", "radicalMembership"]),
    ("product", &["idealProduct"]),
    ("compare", &["varietyEquals"]),
];

#[derive(Parser, Debug)]
#[command(name = "folium", version, about = "Exact checks for codimension-one foliations on projective 3-space")]
struct Cli {
    /// Cap on the critical-pair queue of one Gröbner computation.
    #[arg(long, global = true, env = "FOLIUM_MAX_PAIRS")]
    max_pairs: Option<usize>,
    /// Cap on reduction steps of one Gröbner computation.
    #[arg(long, global = true, env = "FOLIUM_MAX_REDUCTIONS")]
    max_reductions: Option<u64>,
    /// Seed for randomized subcommands.
    #[arg(long, global = true, default_value_t = LEDGER_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

/// A 1-form: catalog key, file, or inline expression.
#[derive(Args, Debug)]
struct FormInput {
    #[arg(value_name = "FORM", required_unless_present = "expr", conflicts_with = "expr")]
    form: Option<String>,
    /// Inline 1-form text.
    #[arg(long, allow_hyphen_values = true)]
    expr: Option<String>,
    /// Number of variables (default: highest index used).
    #[arg(long)]
    vars: Option<usize>,
}

#[derive(Args, Debug)]
struct PairInput {
    /// Numerator (expression or file).
    #[arg(long, requires = "den", conflicts_with = "pair", allow_hyphen_values = true)]
    num: Option<String>,
    /// Denominator (expression or file).
    #[arg(long, requires = "num", allow_hyphen_values = true)]
    den: Option<String>,
    /// Recorded pair by catalog key, or a two-line file.
    #[arg(long, required_unless_present = "num")]
    pair: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DirArg {
    Zero,
    Infinity,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderArg {
    Degrevlex,
    Lex,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BoundaryCheck {
    None,
    Containment,
    Equality,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PolyOp {
    Print,
    Add,
    Sub,
    Mul,
    Neg,
    Scale,
    Pow,
    Diff,
    Subst,
    Degree,
    Eval,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormOp {
    Print,
    D,
    Radial,
    Wedge,
    WedgeD,
    Pullback,
    FromPlane,
    Divide,
    Ratio,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Projectivity and integrability of a form.
    Check(FormInput),
    /// Singular ideal, optionally compared with a recorded zero set.
    Sing {
        #[command(flatten)]
        form: FormInput,
        /// Ideal (catalog key, file, or inline `ideal(...) * ideal(...)`).
        #[arg(long)]
        equals: Option<String>,
    },
    /// Limit of the torus orbit.
    Limit {
        #[command(flatten)]
        form: FormInput,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        weights: Vec<i64>,
        #[arg(long, value_enum)]
        dir: DirArg,
    },
    /// Weight decomposition under a one-parameter subgroup.
    Decompose {
        #[command(flatten)]
        form: FormInput,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        weights: Vec<i64>,
    },
    /// Weight of a single term `m dz_slot`.
    MonomialWeight {
        #[arg(long, allow_hyphen_values = true)]
        monomial: String,
        /// One-based dz index.
        #[arg(long)]
        slot: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        weights: Vec<i64>,
    },
    /// Basis of the subgroups fixing the form.
    FixLattice(FormInput),
    /// Hilbert-Mumford test along a weight vector.
    Destabilize {
        #[command(flatten)]
        form: FormInput,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        weights: Vec<i64>,
    },
    /// Check that f/g is constant along the leaves.
    FirstIntegral {
        #[command(flatten)]
        form: FormInput,
        #[command(flatten)]
        pair: PairInput,
    },
    /// The foliation defined by a rational function.
    Foliation {
        #[command(flatten)]
        pair: PairInput,
        #[arg(long)]
        vars: Option<usize>,
    },
    /// Expand a logarithmic form from `lambda : factor` data.
    LogBuild {
        /// Catalog key, file, or inline data with `;` between entries.
        data: String,
    },
    /// Check a form against logarithmic data up to a scalar.
    LogVerify {
        #[command(flatten)]
        form: FormInput,
        #[arg(long)]
        data: String,
    },
    /// Build a boundary logarithmic form and optionally check its singular set.
    Boundary {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        shape: u8,
        /// Lines L1, L2, ... (repeat).
        #[arg(long = "line")]
        lines: Vec<String>,
        /// Residues (repeat).
        #[arg(long = "lambda", allow_hyphen_values = true)]
        lambdas: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// Use the instance where the printed formula holds exactly.
        #[arg(long, conflicts_with_all = ["lines", "alpha"])]
        special: bool,
        #[arg(long, value_enum, default_value = "none")]
        check: BoundaryCheck,
    },
    /// Members of the rational and logarithmic families.
    Family {
        #[command(subcommand)]
        family: FamilyCommand,
    },
    /// Run the full claim ledger.
    VerifyPaper {
        #[arg(long)]
        json: bool,
        /// Treat the documented errata as success.
        #[arg(long)]
        expect_errata: bool,
        #[arg(long)]
        timings: bool,
    },
    /// Dimension of the space of degree-s foliations.
    Dim { s: u64 },
    /// Solve the Euler relation of a plane form for its missing coefficient.
    CompleteEuler {
        #[arg(long, allow_hyphen_values = true)]
        dz1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        dz2: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        dz3: Option<String>,
    },
    /// List catalog keys, or show one entry.
    Catalog { key: Option<String> },
    /// Seeded property suites.
    Props {
        #[arg(long, default_value_t = 500)]
        cases: usize,
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Polynomial arithmetic.
    Poly {
        #[arg(value_enum)]
        op: PolyOp,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Second operand.
        #[arg(long, allow_hyphen_values = true)]
        with: Option<String>,
        /// One-based variable index.
        #[arg(long)]
        var: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        scalar: Option<String>,
        #[arg(long)]
        power: Option<u32>,
        /// Rows separated by `;`, entries by `,`.
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long)]
        vars: Option<usize>,
    },
    /// Exterior-algebra operations on a form.
    Form {
        #[arg(value_enum)]
        op: FormOp,
        #[command(flatten)]
        form: FormInput,
        /// Second form, for `wedge` and `ratio`.
        #[arg(long, allow_hyphen_values = true)]
        with: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
        /// Polynomial factor, for `divide`.
        #[arg(long, allow_hyphen_values = true)]
        by: Option<String>,
    },
    /// Reduced Gröbner basis.
    Groebner {
        ideal: String,
        #[arg(long, value_enum, default_value = "degrevlex")]
        order: OrderArg,
    },
    /// Normal form modulo an ideal.
    NormalForm {
        ideal: String,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Ideal or radical membership.
    Member {
        ideal: String,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        radical: bool,
    },
    /// Product of two ideals.
    Product { left: String, right: String },
    /// Compare zero sets of two ideals.
    Compare { left: String, right: String },
}

#[derive(Subcommand, Debug)]
enum FamilyCommand {
    /// Rational family member: `--s`, `--a`, coefficients a_0..a_s of P.
    Rational {
        #[arg(long)]
        s: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        coeffs: Vec<String>,
        /// Also compare the singular set with V(z2, z3).
        #[arg(long)]
        sing: bool,
    },
    /// Logarithmic family member.
    Log {
        #[arg(long, value_delimiter = ',', required = true)]
        shape: Vec<u32>,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        lambdas: Vec<String>,
        #[arg(long)]
        sing: bool,
    },
}

/// A failed subcommand: exit code and message for the error stream.
#[derive(Debug)]
struct Fail {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Fail {
    Fail { code: EXIT_USAGE, message: message.into() }
}

fn ideal_code(e: &IdealError) -> i32 {
    match e {
        IdealError::Inconclusive { .. } => EXIT_INCONCLUSIVE,
        _ => EXIT_USAGE,
    }
}

impl From<IdealError> for Fail {
    fn from(e: IdealError) -> Self {
        Fail { code: ideal_code(&e), message: e.to_string() }
    }
}

impl From<TextError> for Fail {
    fn from(e: TextError) -> Self {
        let code = match &e {
            TextError::Ideal(i) => ideal_code(i),
            _ => EXIT_USAGE,
        };
        Fail { code, message: e.to_string() }
    }
}

impl From<CatalogError> for Fail {
    fn from(e: CatalogError) -> Self {
        let code = match &e {
            CatalogError::Ideal(i) | CatalogError::Text(TextError::Ideal(i)) => ideal_code(i),
            _ => EXIT_USAGE,
        };
        Fail { code, message: e.to_string() }
    }
}

macro_rules! usage_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Fail {
            fn from(e: $t) -> Self {
                usage(e.to_string())
            }
        }
    )*};
}

usage_from!(ParseError, AlgebraError, FormError, IntegralError, TorusError);

type Outcome = Result<i32, Fail>;

/// Parse `argv` (program name first), run the subcommand, and return the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut budget = GroebnerBudget::default();
    if let Some(p) = cli.max_pairs {
        budget.max_pairs = p;
    }
    if let Some(r) = cli.max_reductions {
        budget.max_reductions = r;
    }
    let mut text = String::new();
    let code = match dispatch(cli.command, budget, cli.seed, &mut text) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    };
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
    code
}

/// The clap command tree, for help output and coverage checks.
pub fn command() -> clap::Command {
    Cli::command()
}

fn read_file(spec: &str) -> Result<Option<String>, Fail> {
    let path = Path::new(spec);
    if !path.is_file() {
        return Ok(None);
    }
    std::fs::read_to_string(path).map(Some).map_err(|e| usage(format!("{spec}: {e}")))
}

/// Catalog key, then file, then inline text.
fn resolve_form(spec: &str, vars: Option<usize>) -> Result<OneForm, Fail> {
    if keys().contains(&spec) {
        return Ok(named_form(spec)?.form);
    }
    let text = read_file(spec)?.unwrap_or_else(|| spec.to_string());
    parse_one_form(&text, vars).map_err(|e| usage(format!("`{spec}` is not a catalog key or file, and does not parse: {e}")))
}

fn input_form(input: &FormInput) -> Result<OneForm, Fail> {
    match (&input.form, &input.expr) {
        (_, Some(e)) => Ok(parse_one_form(e, input.vars)?),
        (Some(s), None) => resolve_form(s, input.vars),
        (None, None) => Err(usage("a form is required")),
    }
}

fn resolve_poly(spec: &str, vars: Option<usize>) -> Result<Polynomial, Fail> {
    let text = read_file(spec)?.unwrap_or_else(|| spec.to_string());
    Ok(parse_polynomial(&text, vars)?)
}

/// Fixture under `dir` by key, then file, then inline text.
fn resolve_text(spec: &str, dir: &str, ext: &str) -> Result<String, Fail> {
    if let Some(t) = crate::catalog::fixture(&format!("{dir}/{spec}.{ext}")) {
        return Ok(t.to_string());
    }
    Ok(read_file(spec)?.unwrap_or_else(|| spec.to_string()))
}

fn resolve_ideal(spec: &str, vars: Option<usize>) -> Result<Ideal, Fail> {
    Ok(parse_ideal(&resolve_text(spec, "sing", "ideal")?, vars)?)
}

fn resolve_log(spec: &str, vars: Option<usize>) -> Result<LogData, Fail> {
    Ok(parse_log_data(&resolve_text(spec, "log", "log")?.replace(';', "\n"), vars)?)
}

fn resolve_pair(input: &PairInput, vars: Option<usize>) -> Result<RationalPair, Fail> {
    match (&input.pair, &input.num, &input.den) {
        (Some(p), _, _) => Ok(parse_rational_pair(&resolve_text(p, "integrals", "rat")?, vars)?),
        (None, Some(n), Some(d)) => {
            let (n, d) = (resolve_poly(n, None)?, resolve_poly(d, None)?);
            let nv = vars.unwrap_or(n.nvars().max(d.nvars()));
            Ok(RationalPair::new(n.with_nvars(nv)?, d.with_nvars(nv)?)?)
        }
        _ => Err(usage("give --pair, or both --num and --den")),
    }
}

fn scalar(s: &str) -> Result<Scalar, Fail> {
    s.parse::<Scalar>().map_err(|e| usage(e.to_string()))
}

fn scalars(list: &[String]) -> Result<Vec<Scalar>, Fail> {
    list.iter().map(|s| scalar(s)).collect()
}

fn matrix(text: &str) -> Result<LinearMap, Fail> {
    let rows = text.split(';').map(|r| r.split(',').map(scalar).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>()?;
    Ok(LinearMap::from_rows(rows)?)
}

fn weights(entries: &[i64], form: &OneForm) -> Result<WeightVector, Fail> {
    let n = WeightVector::new(entries.to_vec())?;
    if n.len() != form.nvars() {
        return Err(TorusError::Length { expected: form.nvars(), got: n.len() }.into());
    }
    Ok(n)
}

fn same_ambient(a: usize, b: usize) -> Result<(), Fail> {
    if a == b {
        Ok(())
    } else {
        Err(AlgebraError::AmbientMismatch { left: a, right: b }.into())
    }
}

fn status_code(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_REFUTED
    }
}

fn dispatch(command: Command, budget: GroebnerBudget, seed: u64, out: &mut String) -> Outcome {
    match command {
        Command::Check(input) => check(&input_form(&input)?, out),
        Command::Sing { form, equals } => {
            let w = input_form(&form)?;
            let sing = w.singular_ideal();
            writeln!(out, "{sing}").ok();
            match equals {
                None => Ok(EXIT_OK),
                Some(spec) => {
                    let claim = resolve_ideal(&spec, Some(w.nvars()))?;
                    compare(&sing, &claim, budget, out)
                }
            }
        }
        Command::Limit { form, weights: n, dir } => {
            let w = input_form(&form)?;
            let dir = match dir {
                DirArg::Zero => Direction::ToZero,
                DirArg::Infinity => Direction::ToInfinity,
            };
            writeln!(out, "{}", limit_point(&w, &weights(&n, &w)?, dir)?).ok();
            Ok(EXIT_OK)
        }
        Command::Decompose { form, weights: n } => {
            let w = input_form(&form)?;
            for (k, part) in weight_decompose(&w, &weights(&n, &w)?)?.parts() {
                writeln!(out, "{k}: {part}").ok();
            }
            Ok(EXIT_OK)
        }
        Command::MonomialWeight { monomial, slot, weights: n } => {
            let p = parse_polynomial(&monomial, Some(n.len()))?;
            let m = match p.terms().collect::<Vec<_>>().as_slice() {
                [(m, _)] => **m,
                _ => return Err(usage("--monomial must be a single term")),
            };
            if slot == 0 || slot > n.len() {
                return Err(usage(format!("--slot must be between 1 and {}", n.len())));
            }
            writeln!(out, "{}", monomial_weight(&m, slot - 1, &WeightVector::new(n)?)).ok();
            Ok(EXIT_OK)
        }
        Command::FixLattice(input) => {
            let basis = fixing_lattice(&input_form(&input)?)?;
            writeln!(out, "rank {}", basis.len()).ok();
            for b in basis {
                writeln!(out, "{b}").ok();
            }
            Ok(EXIT_OK)
        }
        Command::Destabilize { form, weights: n } => {
            let w = input_form(&form)?;
            let d = destabilizing_check(&w, &weights(&n, &w)?)?;
            writeln!(out, "driven to zero: {}\nminimum weight: {}", d.driven_to_zero, d.min_weight).ok();
            Ok(EXIT_OK)
        }
        Command::FirstIntegral { form, pair } => {
            let w = input_form(&form)?;
            let r = resolve_pair(&pair, Some(w.nvars()))?;
            let c = is_first_integral(&w, &r)?;
            if c.holds {
                writeln!(out, "first integral: yes").ok();
            } else {
                writeln!(out, "first integral: no\nwitness: {}", c.witness).ok();
            }
            Ok(status_code(c.holds))
        }
        Command::Foliation { pair, vars } => {
            let f = foliation_from_rational(&resolve_pair(&pair, vars)?)?;
            writeln!(out, "{}", f.form).ok();
            if !f.removed_monomial.is_one() {
                let m = Polynomial::monomial(f.form.nvars(), f.removed_monomial, Scalar::one());
                writeln!(out, "removed factor: {m}").ok();
            }
            if f.non_reduced {
                writeln!(out, "note: the coefficients probably share a further common factor").ok();
            }
            Ok(EXIT_OK)
        }
        Command::LogBuild { data } => {
            writeln!(out, "{}", build_log_form(&resolve_log(&data, None)?)).ok();
            Ok(EXIT_OK)
        }
        Command::LogVerify { form, data } => {
            let w = input_form(&form)?;
            let d = resolve_log(&data, Some(w.nvars()))?;
            let c = verify_log_decomposition(&w, &d)?;
            match c.ratio {
                Some(r) => writeln!(out, "proportional: yes\nratio: {r}").ok(),
                None => writeln!(out, "proportional: no").ok(),
            };
            Ok(status_code(c.holds))
        }
        Command::Boundary { shape, lines, lambdas, alpha, special, check } => {
            let b = boundary_shape(shape, &lines, &lambdas, alpha.as_deref(), special, seed)?;
            let w = build_boundary_log_form(&b)?;
            writeln!(out, "{w}").ok();
            let o = match check {
                BoundaryCheck::None => return Ok(EXIT_OK),
                BoundaryCheck::Containment => boundary_containment(&b, budget)?,
                BoundaryCheck::Equality => boundary_equality(&b, budget)?,
            };
            writeln!(out, "{}", o.0).ok();
            if let Some(wit) = o.1 {
                writeln!(out, "witness: {wit}").ok();
            }
            Ok(claim_code(o.0))
        }
        Command::Family { family } => run_family(family, budget, out),
        Command::VerifyPaper { json, expect_errata, timings } => {
            let records = verify_paper_report(budget);
            let format = if json { ReportFormat::Json } else { ReportFormat::Text };
            out.push_str(&serialize_report(&records, format, timings));
            let mut code = EXIT_OK;
            for r in &records {
                let expected = KNOWN_ERRATA.iter().any(|(id, st)| *id == r.id && *st == r.status);
                let c = match r.status {
                    ClaimStatus::Verified => EXIT_OK,
                    _ if expect_errata && expected => EXIT_OK,
                    s => claim_code(s),
                };
                code = worse(code, c);
            }
            Ok(code)
        }
        Command::Dim { s } => {
            if s > 1_000_000 {
                return Err(usage("s is too large"));
            }
            writeln!(out, "{}", dimension_formula(s)).ok();
            Ok(EXIT_OK)
        }
        Command::CompleteEuler { dz1, dz2, dz3 } => {
            let given: Vec<(usize, String)> = [dz1, dz2, dz3].into_iter().enumerate().filter_map(|(i, t)| t.map(|t| (i, t))).collect();
            let [(i, a), (j, b)]: [_; 2] = given.try_into().map_err(|_| usage("give exactly two of --dz1, --dz2, --dz3"))?;
            let known = [(i, resolve_poly(&a, Some(3))?), (j, resolve_poly(&b, Some(3))?)];
            match complete_from_euler(known)? {
                EulerCompletion::Completed(w) => {
                    writeln!(out, "{w}").ok();
                    Ok(EXIT_OK)
                }
                EulerCompletion::Obstructed { slot, remainder } => {
                    writeln!(out, "no completion: z{} does not divide the sum, remainder {remainder}", slot + 1).ok();
                    Ok(EXIT_REFUTED)
                }
            }
        }
        Command::Catalog { key: None } => {
            for k in keys() {
                let e = named_form(k)?;
                writeln!(out, "{:<16} {:<9} {}", k, e.status, e.description).ok();
            }
            Ok(EXIT_OK)
        }
        Command::Catalog { key: Some(k) } => {
            let e = named_form(&k)?;
            writeln!(out, "{}\nstatus: {}\n{}", e.form, e.status, e.description).ok();
            if let Some(src) = e.source {
                writeln!(out, "source: {}", src.trim()).ok();
            }
            Ok(EXIT_OK)
        }
        Command::Props { cases, only, json } => {
            let outcomes = match only {
                Some(name) => vec![run_property(&name, seed, cases, budget)
                    .ok_or_else(|| usage(format!("unknown property `{name}`; known: {}", PROPERTY_NAMES.join(", "))))?],
                None => run_all(seed, cases, budget),
            };
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&outcomes).expect("plain data serializes")).ok();
            } else {
                for o in &outcomes {
                    let verdict = if o.passed() { "PASS" } else { "FAIL" };
                    writeln!(out, "{verdict} {:<10} {} cases, {} failures, {} inconclusive", o.name, o.cases, o.failures, o.inconclusive).ok();
                    if let Some(f) = &o.first_failure {
                        writeln!(out, "     first failure: {f}").ok();
                    }
                }
            }
            Ok(outcomes.iter().fold(EXIT_OK, |c, o| {
                worse(c, if o.failures > 0 { EXIT_REFUTED } else if o.inconclusive > 0 { EXIT_INCONCLUSIVE } else { EXIT_OK })
            }))
        }
        Command::Poly { op, expr, with, var, scalar: c, power, matrix: m, point, vars } => {
            let p = resolve_poly(&expr, vars)?;
            let other = || -> Result<Polynomial, Fail> {
                let q = resolve_poly(with.as_deref().ok_or_else(|| usage("--with is required"))?, None)?;
                let n = p.nvars().max(q.nvars());
                Ok(q.with_nvars(n)?)
            };
            let widen = |q: &Polynomial| -> Result<Polynomial, Fail> { Ok(p.with_nvars(p.nvars().max(q.nvars()))?) };
            match op {
                PolyOp::Print => writeln!(out, "{p}").ok(),
                PolyOp::Add => {
                    let q = other()?;
                    writeln!(out, "{}", widen(&q)?.try_add(&q)?).ok()
                }
                PolyOp::Sub => {
                    let q = other()?;
                    writeln!(out, "{}", widen(&q)?.try_sub(&q)?).ok()
                }
                PolyOp::Mul => {
                    let q = other()?;
                    writeln!(out, "{}", widen(&q)?.try_mul(&q)?).ok()
                }
                PolyOp::Neg => writeln!(out, "{}", -&p).ok(),
                PolyOp::Scale => writeln!(out, "{}", p.scale(&scalar(c.as_deref().ok_or_else(|| usage("--scalar is required"))?)?)).ok(),
                PolyOp::Pow => writeln!(out, "{}", p.pow(power.ok_or_else(|| usage("--power is required"))?)?).ok(),
                PolyOp::Diff => {
                    let i = var.filter(|&i| i >= 1).ok_or_else(|| usage("--var (one-based) is required"))?;
                    writeln!(out, "{}", p.partial_derivative(i - 1)?).ok()
                }
                PolyOp::Subst => writeln!(out, "{}", p.linear_substitute(&matrix(m.as_deref().ok_or_else(|| usage("--matrix is required"))?)?)?).ok(),
                PolyOp::Degree => match p.homogeneous_degree() {
                    Some(d) => writeln!(out, "{d}").ok(),
                    None => writeln!(out, "not homogeneous").ok(),
                },
                PolyOp::Eval => {
                    let pt = point.ok_or_else(|| usage("--point is required"))?;
                    let values = pt.split(',').map(scalar).collect::<Result<Vec<_>, _>>()?;
                    writeln!(out, "{}", p.evaluate(&values)?).ok()
                }
            };
            Ok(EXIT_OK)
        }
        Command::Form { op, form, with, matrix: m, by } => {
            let w = input_form(&form)?;
            let second = || -> Result<OneForm, Fail> {
                let v = resolve_form(with.as_deref().ok_or_else(|| usage("--with is required"))?, Some(w.nvars()))?;
                same_ambient(w.nvars(), v.nvars())?;
                Ok(v)
            };
            let need_matrix = || m.as_deref().ok_or_else(|| usage("--matrix is required")).and_then(matrix);
            match op {
                FormOp::Print => writeln!(out, "{w}").ok(),
                FormOp::D => writeln!(out, "{}", w.exterior_derivative()).ok(),
                FormOp::Radial => writeln!(out, "{}", w.radial_contraction()).ok(),
                FormOp::Wedge => writeln!(out, "{}", w.wedge(&second()?)).ok(),
                FormOp::WedgeD => writeln!(out, "{}", w.wedge(&w.exterior_derivative())).ok(),
                FormOp::Pullback => writeln!(out, "{}", w.pullback_linear(&need_matrix()?)?).ok(),
                FormOp::FromPlane => {
                    let pi = match m {
                        Some(_) => need_matrix()?,
                        None => crate::catalog::drop_last_coordinate(),
                    };
                    writeln!(out, "{}", w.pullback_from_plane(&pi)?).ok()
                }
                FormOp::Divide => {
                    let h = resolve_poly(by.as_deref().ok_or_else(|| usage("--by is required"))?, Some(w.nvars()))?;
                    writeln!(out, "{}", w.divide_by(&h)?).ok()
                }
                FormOp::Ratio => {
                    return Ok(match w.projective_ratio(&second()?)? {
                        Some(c) => {
                            writeln!(out, "proportional: yes\nratio: {c}").ok();
                            EXIT_OK
                        }
                        None => {
                            writeln!(out, "proportional: no").ok();
                            EXIT_REFUTED
                        }
                    })
                }
            };
            Ok(EXIT_OK)
        }
        Command::Groebner { ideal, order } => {
            let order = match order {
                OrderArg::Degrevlex => MonomialOrder::DegRevLex,
                OrderArg::Lex => MonomialOrder::Lex,
            };
            writeln!(out, "{}", resolve_ideal(&ideal, None)?.groebner(order, budget)?).ok();
            Ok(EXIT_OK)
        }
        Command::NormalForm { ideal, poly } => {
            let (i, f) = ideal_and_poly(&ideal, &poly)?;
            writeln!(out, "{}", i.groebner(MonomialOrder::DegRevLex, budget)?.normal_form(&f)?).ok();
            Ok(EXIT_OK)
        }
        Command::Member { ideal, poly, radical } => {
            let (i, f) = ideal_and_poly(&ideal, &poly)?;
            let yes = if radical { i.radical_contains(&f, budget)? } else { i.contains(&f, budget)? };
            writeln!(out, "{}", if yes { "member" } else { "not a member" }).ok();
            Ok(status_code(yes))
        }
        Command::Product { left, right } => {
            let (a, b) = ideal_pair(&left, &right)?;
            writeln!(out, "{}", a.product(&b)?).ok();
            Ok(EXIT_OK)
        }
        Command::Compare { left, right } => {
            let (a, b) = ideal_pair(&left, &right)?;
            compare(&a, &b, budget, out)
        }
    }
}

fn worse(a: i32, b: i32) -> i32 {
    // refuted outranks inconclusive
    let rank = |c: i32| match c {
        EXIT_REFUTED => 2,
        EXIT_INCONCLUSIVE => 1,
        _ => 0,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

fn claim_code(s: ClaimStatus) -> i32 {
    match s {
        ClaimStatus::Verified => EXIT_OK,
        ClaimStatus::Refuted | ClaimStatus::Erratum => EXIT_REFUTED,
        ClaimStatus::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn check(w: &OneForm, out: &mut String) -> Outcome {
    let report = w.check_projective();
    match report.foliation_degree {
        Some(d) => writeln!(out, "projective: yes (foliation degree {d})").ok(),
        None => {
            let reasons: Vec<String> = report
                .failures
                .iter()
                .map(|f| match f {
                    ProjectivityFailure::ZeroForm => "zero form".to_string(),
                    ProjectivityFailure::NotHomogeneous { slot, coefficient } => format!("dz{} coefficient {coefficient} is not homogeneous", slot + 1),
                    ProjectivityFailure::UnequalDegrees { slot, degree, reference_slot, reference_degree } => {
                        format!("dz{} has degree {degree}, dz{} has degree {reference_degree}", slot + 1, reference_slot + 1)
                    }
                    ProjectivityFailure::RadialContraction(p) => format!("radial contraction {p}"),
                })
                .collect();
            writeln!(out, "projective: no ({})", reasons.join("; ")).ok()
        }
    };
    let integrable = w.integrability();
    if integrable.integrable {
        writeln!(out, "integrable: yes").ok();
    } else {
        writeln!(out, "integrable: no\nwitness: {}", integrable.witness).ok();
    }
    Ok(status_code(report.passes() && integrable.integrable))
}

fn compare(a: &Ideal, b: &Ideal, budget: GroebnerBudget, out: &mut String) -> Outcome {
    same_ambient(a.nvars(), b.nvars())?;
    let c = a.variety_compare(b, budget)?;
    let relation = match c.relation {
        VarietyRelation::Equal => "equal",
        VarietyRelation::LeftInRight => "left-in-right",
        VarietyRelation::RightInLeft => "right-in-left",
        VarietyRelation::Incomparable => "incomparable",
    };
    writeln!(out, "zero sets: {relation}").ok();
    if let Some(p) = &c.left_witness {
        writeln!(out, "vanishes on the right but not the left: {p}").ok();
    }
    if let Some(p) = &c.right_witness {
        writeln!(out, "vanishes on the left but not the right: {p}").ok();
    }
    Ok(status_code(c.relation == VarietyRelation::Equal))
}

fn ideal_pair(left: &str, right: &str) -> Result<(Ideal, Ideal), Fail> {
    let (a, b) = (resolve_ideal(left, None)?, resolve_ideal(right, None)?);
    let n = a.nvars().max(b.nvars());
    Ok((resolve_ideal(left, Some(n))?, resolve_ideal(right, Some(n))?))
}

fn ideal_and_poly(ideal: &str, poly: &str) -> Result<(Ideal, Polynomial), Fail> {
    let (i, f) = (resolve_ideal(ideal, None)?, resolve_poly(poly, None)?);
    let n = i.nvars().max(f.nvars());
    Ok((resolve_ideal(ideal, Some(n))?, f.with_nvars(n)?))
}

fn boundary_shape(shape: u8, lines: &[String], lambdas: &[String], alpha: Option<&str>, special: bool, seed: u64) -> Result<BoundaryShape, Fail> {
    if special {
        return Ok(special_boundary_shape(shape)?);
    }
    if lines.is_empty() && alpha.is_none() && lambdas.is_empty() {
        return Ok(seeded_boundary_shape(shape, seed)?);
    }
    let want = [3usize, 2, 1][shape as usize - 1];
    if lines.len() != want || lambdas.len() != want {
        return Err(usage(format!("shape {shape} takes {want} --line and {want} --lambda values")));
    }
    let alpha = resolve_poly(alpha.ok_or_else(|| usage("--alpha is required"))?, Some(4))?;
    let ls = lines.iter().map(|l| resolve_poly(l, Some(4))).collect::<Result<Vec<_>, _>>()?;
    let lam = scalars(lambdas)?;
    Ok(match shape {
        1 => BoundaryShape::One { lines: [ls[0].clone(), ls[1].clone(), ls[2].clone()], lambdas: [lam[0].clone(), lam[1].clone(), lam[2].clone()], alpha },
        2 => BoundaryShape::Two { lines: [ls[0].clone(), ls[1].clone()], lambdas: [lam[0].clone(), lam[1].clone()], alpha },
        _ => BoundaryShape::Three { line: ls[0].clone(), lambda: lam[0].clone(), alpha },
    })
}

fn run_family(family: FamilyCommand, budget: GroebnerBudget, out: &mut String) -> Outcome {
    let (form, pair, sing) = match family {
        FamilyCommand::Rational { s, a, coeffs, sing } => {
            if s > 200 {
                return Err(usage("s is too large"));
            }
            let m = family_rational(s, scalar(&a)?, &scalars(&coeffs)?)?;
            (m.form, Some(m.first_integral), sing)
        }
        FamilyCommand::Log { shape, a, lambdas, sing } => {
            let shape: [u32; 3] = shape.try_into().map_err(|_| usage("--shape takes three entries s1,s2,s3"))?;
            if shape.iter().sum::<u32>() > 200 || shape.iter().any(|&s| s > 200) {
                return Err(usage("shape is too large"));
            }
            let lam = scalars(&lambdas)?;
            let lam: [Scalar; 3] = lam.try_into().map_err(|_| usage("--lambdas takes three entries"))?;
            let m = family_logarithmic(shape, scalar(&a)?, lam)?;
            (m.form, m.first_integral, sing)
        }
    };
    writeln!(out, "{form}").ok();
    let mut code = check(&form, out)?;
    if let Some(p) = pair {
        let holds = is_first_integral(&form, &p)?.holds;
        writeln!(out, "first integral ({}) / ({}): {}", p.numerator(), p.denominator(), if holds { "yes" } else { "no" }).ok();
        code = worse(code, status_code(holds));
    }
    if sing {
        let line = Ideal::coordinate(4, &[1, 2])?;
        code = worse(code, compare(&form.singular_ideal(), &line, budget, out)?);
    }
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("folium").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    /// The operation list of the library surface; each must be reachable from some subcommand.
    const OPERATIONS: &[&str] = &[
        "ringOps",
        "partialDerivative",
        "linearSubstitute",
        "homogeneousDegree",
        "evaluate",
        "exteriorDerivative",
        "wedge",
        "radialContraction",
        "checkProjective",
        "isIntegrable",
        "pullbackLinear",
        "pullbackFromP2",
        "dividePolynomialFactor",
        "singularIdeal",
        "projectiveEqual",
        "buchberger",
        "normalForm",
        "idealMembership",
        "radicalMembership",
        "idealProduct",
        "varietyEquals",
        "monomialWeight",
        "weightDecompose",
        "limitPoint",
        "fixingLattice",
        "destabilizingCheck",
        "isFirstIntegral",
        "foliationFromRational",
        "buildLogForm",
        "buildBoundaryLogForm",
        "verifyLogDecomposition",
        "namedForm",
        "completeFromEuler",
        "familyRational",
        "familyLogarithmic",
        "dimensionFormula",
        "verifyPaperReport",
        "parsePolynomial",
        "parseOneForm",
        "printCanonical",
        "serializeReport",
    ];

    /// One working invocation per subcommand.
    const EXAMPLES: &[(&str, &[&str], i32)] = &[
        ("check", &["check", "omega"], 0),
        ("sing", &["sing", "omega23", "--equals", "omega23"], 0),
        ("limit", &["limit", "omega", "--weights", "3,-1,-1,-1", "--dir", "infinity"], 0),
        ("decompose", &["decompose", "omega", "--weights", "1,1,-1,-1"], 0),
        ("monomial-weight", &["monomial-weight", "--monomial", "z1*z3*z4", "--slot", "1", "--weights", "3,-1,-1,-1"], 0),
        ("fix-lattice", &["fix-lattice", "omega"], 0),
        ("destabilize", &["destabilize", "omega", "--weights", "3,1,-1,-3"], 0),
        ("first-integral", &["first-integral", "omega12", "--pair", "omega12"], 0),
        ("foliation", &["foliation", "--num", "z1*z3^2 + z2^3", "--den", "z3^3"], 0),
        ("log-build", &["log-build", "omega12"], 0),
        ("log-verify", &["log-verify", "omega12", "--data", "omega12"], 0),
        ("boundary", &["boundary", "--shape", "2", "--special", "--check", "equality"], 0),
        ("family", &["family", "rational", "--s", "3", "--a", "1", "--coeffs", "1,0,2,1"], 0),
        ("verify-paper", &["verify-paper", "--expect-errata"], 0),
        ("dim", &["dim", "2"], 0),
        ("complete-euler", &["complete-euler", "--dz1", "z2^3", "--dz2", "-z1*z2^2"], 0),
        ("catalog", &["catalog", "nu2"], 0),
        ("props", &["props", "--cases", "5"], 0),
        ("poly", &["poly", "diff", "z1z3^2 + z2^3", "--var", "3"], 0),
        ("form", &["form", "ratio", "omegaF3", "--with", "omegaF3"], 0),
        ("groebner", &["groebner", "ideal(z1^2 - z2, z1*z2 - 1)"], 0),
        ("normal-form", &["normal-form", "ideal(z1, z2)", "--poly", "z1 + z3"], 0),
        ("member", &["member", "ideal(z1^2, z2)", "--poly", "z1", "--radical"], 0),
        ("product", &["product", "ideal(z1)", "ideal(z2)"], 0),
        ("compare", &["compare", "ideal(z1^2)", "ideal(z1)"], 0),
    ];

    #[test]
    fn every_operation_is_dispatched() {
        for op in OPERATIONS {
            assert!(DISPATCH.iter().any(|(_, ops)| ops.contains(op)), "{op} unreachable");
        }
        let names: Vec<String> = command().get_subcommands().map(|c| c.get_name().to_string()).collect();
        assert_eq!(names.len(), DISPATCH.len());
        for (name, _) in DISPATCH {
            assert!(names.iter().any(|n| n == name), "{name} missing from the command tree");
            assert!(EXAMPLES.iter().any(|(n, _, _)| n == name), "{name} has no example");
        }
    }

    #[test]
    fn examples_run() {
        for (name, args, code) in EXAMPLES {
            let (got, out, err) = call(args);
            assert_eq!(got, *code, "{name}: {out}{err}");
            assert!(!out.is_empty(), "{name}");
        }
    }

    #[test]
    fn printed_examples() {
        let (code, out, _) = call(&["dim", "2"]);
        assert_eq!((code, out.as_str()), (0, "44\n"));
        let (code, out, _) = call(&["limit", "omega", "--weights", "3,-1,-1,-1", "--dir", "infinity"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), named_form("omega1").unwrap().form.to_string());
        let (code, out, _) = call(&["limit", "omega", "--weights", "3,-1,-1,-1", "--dir", "zero"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), named_form("omega23").unwrap().form.to_string());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["verify-paper", "--json"]).0, EXIT_REFUTED);
        assert_eq!(call(&["check", "nu4"]).0, EXIT_REFUTED);
        assert_eq!(call(&["check", "--expr", "z1 dz2 +"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["dim", "-3"]).0, EXIT_USAGE);
        assert_eq!(call(&["limit", "omega", "--weights", "1,1", "--dir", "zero"]).0, EXIT_USAGE);
        assert_eq!(call(&["--max-reductions", "3", "sing", "omega", "--equals", "omega"]).0, EXIT_INCONCLUSIVE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn bad_input_never_panics() {
        let cases: &[&[&str]] = &[
            &["form", "wedge", "omega", "--with", "z5 dz1"],
            &["form", "pullback", "omega", "--matrix", "1,0;0,1"],
            &["form", "divide", "omega", "--by", "z1"],
            &["poly", "eval", "z1+z2", "--point", "1"],
            &["poly", "diff", "z1", "--var", "9"],
            &["monomial-weight", "--monomial", "z1+z2", "--slot", "1", "--weights", "1,-1"],
            &["monomial-weight", "--monomial", "z1", "--slot", "7", "--weights", "1,-1"],
            &["family", "rational", "--s", "0", "--a", "1", "--coeffs", "1"],
            &["family", "log", "--shape", "1,1", "--a", "1", "--lambdas", "1,2,3"],
            &["boundary", "--shape", "1", "--line", "z1", "--lambda", "1", "--alpha", "z2"],
            &["complete-euler", "--dz1", "z1"],
            &["catalog", "nope"],
            &["log-build", "1 : z1 ; 1 : z2"],
            &["first-integral", "omega", "--num", "z1", "--den", "z2^2"],
            &["compare", "ideal(z1)", "ideal(z1, z7)"],
        ];
        for args in cases {
            let (code, _, err) = call(args);
            assert_ne!(code, EXIT_OK, "{args:?}");
            assert!(err.starts_with("error:") || code == EXIT_REFUTED, "{args:?}: {err}");
        }
    }

    #[test]
    fn deterministic_output() {
        let a = call(&["props", "--cases", "20", "--json"]);
        let b = call(&["props", "--cases", "20", "--json"]);
        assert_eq!(a, b);
    }
}
