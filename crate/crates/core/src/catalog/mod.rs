//! Named forms, the two parametric families, and the claim ledger.

mod report;

use std::fmt;
use std::time::Duration;

use num_bigint::BigInt;
use num_integer::binomial;
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{LinearMap, Polynomial, Scalar};
use crate::forms::{FormError, OneForm};
use crate::ideals::{Ideal, IdealError};
use crate::integrals::{foliation_from_rational, build_log_form, IntegralError, LogData, RationalPair};
use crate::textio::{parse_ideal, parse_log_data, parse_one_form, parse_polynomial, parse_rational_pair, TextError};
use crate::torus::TorusError;

pub use report::{
    boundary_containment, boundary_equality, seeded_boundary_shape, seeded_four_planes, special_boundary_shape, verify_paper_report, Outcome,
    KNOWN_ERRATA, LEDGER_SEED,
};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error(transparent)]
    Text(#[from] TextError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Integral(#[from] IntegralError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error("unknown catalog key `{0}`")]
    UnknownKey(String),
    #[error("{0}")]
    InvalidParameters(String),
}

impl From<crate::textio::ParseError> for CatalogError {
    fn from(e: crate::textio::ParseError) -> Self {
        CatalogError::Text(e.into())
    }
}

impl From<crate::exactalg::AlgebraError> for CatalogError {
    fn from(e: crate::exactalg::AlgebraError) -> Self {
        CatalogError::Form(e.into())
    }
}

/// Outcome of one ledger claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Verified,
    Refuted,
    Inconclusive,
    /// A printed formula that fails a machine check; a repair may be recorded elsewhere.
    Erratum,
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimStatus::Verified => "verified",
            ClaimStatus::Refuted => "refuted",
            ClaimStatus::Inconclusive => "inconclusive",
            ClaimStatus::Erratum => "erratum",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimRecord {
    pub id: String,
    pub status: ClaimStatus,
    pub description: String,
    pub witness: Option<String>,
    pub elapsed: Duration,
}

/// Whether a catalog entry is transcribed as printed or computed from other entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryStatus {
    Verbatim,
    Derived,
}

impl fmt::Display for EntryStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntryStatus::Verbatim => "verbatim",
            EntryStatus::Derived => "derived",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedForm {
    pub key: &'static str,
    pub status: EntryStatus,
    pub description: &'static str,
    /// Fixture text for verbatim entries.
    pub source: Option<&'static str>,
    pub form: OneForm,
}

macro_rules! fixtures {
    ($($path:literal),* $(,)?) => {
        /// Every fixture file, by path relative to the fixture directory.
        pub const FIXTURES: &[(&str, &str)] = &[$(($path, include_str!(concat!("../../fixtures/", $path)))),*];
    };
}

fixtures!(
    "forms/corollary41.form",
    "forms/nu1-printed.form",
    "forms/nu2.form",
    "forms/nu3.form",
    "forms/nu4.form",
    "forms/omega.form",
    "forms/omega1.form",
    "forms/omega2.form",
    "forms/omega3.form",
    "forms/omegaF1.form",
    "forms/omegaF2.form",
    "forms/omegaF3.form",
    "integrals/omega.rat",
    "integrals/omega1-over-z1.rat",
    "integrals/omega12.rat",
    "integrals/omega13.rat",
    "integrals/omega2-over-z2.rat",
    "integrals/omega23.rat",
    "integrals/omega3-over-z3.rat",
    "integrals/omegaF1.rat",
    "integrals/omegaF2.rat",
    "integrals/omegaF3.rat",
    "log/omega12.log",
    "log/omega13.log",
    "log/omega23.log",
    "sing/line.ideal",
    "sing/omega.ideal",
    "sing/omega1-over-z1.ideal",
    "sing/omega12.ideal",
    "sing/omega13.ideal",
    "sing/omega2-over-z2.ideal",
    "sing/omega23.ideal",
    "sing/omega3-over-z3.ideal",
);

/// The `sha256sum` manifest of the fixture directory.
pub const FIXTURE_MANIFEST: &str = include_str!("../../fixtures/SHA256SUMS");

pub fn fixture(path: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(p, _)| *p == path).map(|(_, t)| *t)
}

struct Entry {
    key: &'static str,
    nvars: usize,
    status: EntryStatus,
    description: &'static str,
}

const fn verbatim(key: &'static str, nvars: usize, description: &'static str) -> Entry {
    Entry { key, nvars, status: EntryStatus::Verbatim, description }
}

const fn derived(key: &'static str, nvars: usize, description: &'static str) -> Entry {
    Entry { key, nvars, status: EntryStatus::Derived, description }
}

const ENTRIES: &[Entry] = &[
    derived("nu1", 3, "first plane form: the foliation with first integral (z1z3^2 + z2^3)/z3^3"),
    verbatim("nu1-printed", 3, "first plane form as printed (dz2 appears twice)"),
    verbatim("nu2", 3, "second plane form"),
    verbatim("nu3", 3, "third plane form as printed"),
    verbatim("nu4", 3, "fourth plane form as printed"),
    derived("nu3-euler", 3, "third plane form with the dz3 coefficient recomputed from the Euler relation"),
    verbatim("omega", 4, "the degree-two foliation with a three-dimensional orbit"),
    verbatim("omega1", 4, "first summand of omega"),
    verbatim("omega2", 4, "second summand of omega"),
    verbatim("omega3", 4, "third summand of omega"),
    derived("omega12", 4, "omega1 + omega2"),
    derived("omega13", 4, "omega1 + omega3"),
    derived("omega23", 4, "omega2 + omega3"),
    derived("omega1-over-z1", 4, "omega1 divided by z1"),
    derived("omega2-over-z2", 4, "omega2 divided by z2"),
    derived("omega3-over-z3", 4, "omega3 divided by z3"),
    verbatim("omegaF1", 4, "3f dz3 - z3 df with f = z1z3^2 + z3z4^2 + z2^3"),
    verbatim("omegaF2", 4, "3f dz3 - z3 df with f = z1z3^2 + z2z3z4 + z2^3"),
    verbatim("omegaF3", 4, "3f dz3 - z3 df with f = z1z3^2 + z2^3"),
    verbatim("corollary41", 4, "the form with first integral (z1z3^2 + z2z3z4 + z2^3)/z3^3"),
];

/// All catalog keys in a stable order.
pub fn keys() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.key).collect()
}

fn verbatim_form(key: &str, nvars: usize) -> Result<(OneForm, &'static str), CatalogError> {
    let text = fixture(&format!("forms/{key}.form")).ok_or_else(|| CatalogError::UnknownKey(key.into()))?;
    Ok((parse_one_form(text, Some(nvars))?, text))
}

fn named_sum(a: &str, b: &str) -> Result<OneForm, CatalogError> {
    Ok(named_form(a)?.form.try_add(&named_form(b)?.form)?)
}

fn named_quotient(key: &str, var: usize) -> Result<OneForm, CatalogError> {
    Ok(named_form(key)?.form.divide_by(&Polynomial::var(4, var)?)?)
}

/// Look up a catalog entry by key.
pub fn named_form(key: &str) -> Result<NamedForm, CatalogError> {
    let entry = ENTRIES.iter().find(|e| e.key == key).ok_or_else(|| CatalogError::UnknownKey(key.into()))?;
    let (form, source) = match entry.status {
        EntryStatus::Verbatim => {
            let (f, t) = verbatim_form(key, entry.nvars)?;
            (f, Some(t))
        }
        EntryStatus::Derived => {
            let form = match key {
                "nu1" => {
                    let pair = RationalPair::new(parse_polynomial("z1z3^2 + z2^3", Some(3))?, parse_polynomial("z3^3", Some(3))?)?;
                    foliation_from_rational(&pair)?.form
                }
                "nu3-euler" => {
                    let printed = named_form("nu3")?.form;
                    match complete_from_euler([(0, printed.coefficient(0).clone()), (1, printed.coefficient(1).clone())])? {
                        EulerCompletion::Completed(f) => f,
                        EulerCompletion::Obstructed { remainder, .. } => {
                            return Err(CatalogError::InvalidParameters(format!("no Euler completion: remainder {remainder}")))
                        }
                    }
                }
                "omega12" => named_sum("omega1", "omega2")?,
                "omega13" => named_sum("omega1", "omega3")?,
                "omega23" => named_sum("omega2", "omega3")?,
                "omega1-over-z1" => named_quotient("omega1", 0)?,
                "omega2-over-z2" => named_quotient("omega2", 1)?,
                "omega3-over-z3" => named_quotient("omega3", 2)?,
                other => unreachable!("derived entry {other} has no recipe"),
            };
            (form, None)
        }
    };
    Ok(NamedForm { key: entry.key, status: entry.status, description: entry.description, source, form })
}

/// Recorded singular-set claim for a catalog key, as a product of component ideals.
pub fn singular_set_claim(key: &str) -> Result<Option<Ideal>, CatalogError> {
    fixture(&format!("sing/{key}.ideal")).map(|t| parse_ideal(t, Some(4))).transpose().map_err(Into::into)
}

/// Recorded first integral for a catalog key.
pub fn first_integral_claim(key: &str) -> Result<Option<RationalPair>, CatalogError> {
    fixture(&format!("integrals/{key}.rat")).map(|t| parse_rational_pair(t, Some(4))).transpose().map_err(Into::into)
}

/// Recorded logarithmic product for a catalog key.
pub fn log_claim(key: &str) -> Result<Option<LogData>, CatalogError> {
    fixture(&format!("log/{key}.log")).map(|t| parse_log_data(t, Some(4))).transpose().map_err(Into::into)
}

/// Result of solving the Euler relation for the missing coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EulerCompletion {
    Completed(OneForm),
    /// `z_i A_i + z_j A_j` is not divisible by `z_k`; `remainder` is what is left.
    Obstructed { slot: usize, remainder: Polynomial },
}

/// Given two coefficients of a plane form, find the third from `z1 A1 + z2 A2 + z3 A3 = 0`.
pub fn complete_from_euler(known: [(usize, Polynomial); 2]) -> Result<EulerCompletion, CatalogError> {
    let [(i, ai), (j, aj)] = known;
    if i == j || i > 2 || j > 2 {
        return Err(CatalogError::InvalidParameters("need two distinct slots among 1..3".into()));
    }
    if ai.nvars() != 3 || aj.nvars() != 3 {
        return Err(CatalogError::InvalidParameters("plane forms live in 3 variables".into()));
    }
    let di = ai.homogeneous_degree();
    let dj = aj.homogeneous_degree();
    let degrees_ok = match (ai.is_zero(), aj.is_zero()) {
        (true, true) => false,
        (true, false) => dj.is_some(),
        (false, true) => di.is_some(),
        (false, false) => di.is_some() && di == dj,
    };
    if !degrees_ok {
        return Err(CatalogError::InvalidParameters("known coefficients must be homogeneous of one degree".into()));
    }
    let k = 3 - i - j;
    let s = &(&Polynomial::var(3, i)? * &ai) + &(&Polynomial::var(3, j)? * &aj);
    let (q, r) = s.div_rem(&Polynomial::var(3, k)?)?;
    if !r.is_zero() {
        return Ok(EulerCompletion::Obstructed { slot: k, remainder: r });
    }
    let mut coeffs = vec![Polynomial::zero(3); 3];
    coeffs[i] = ai;
    coeffs[j] = aj;
    coeffs[k] = -q;
    Ok(EulerCompletion::Completed(OneForm::new(coeffs)?))
}

/// Dimension of the space of degree-`s` foliations of the form above: `4 C(s+4,3) - C(s+5,3) - 1`.
pub fn dimension_formula(s: u64) -> BigInt {
    let b = |n: u64| binomial(BigInt::from(n), BigInt::from(3));
    BigInt::from(4) * b(s + 4) - b(s + 5) - 1
}

/// A member of the rational family indexed by `s`, `a` and the coefficients of `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFamilyMember {
    pub s: u32,
    pub a: Scalar,
    pub coefficients: Vec<Scalar>,
    pub form: OneForm,
    /// `(z1 z3^s - a z3 z4^s - Q) / z3^(s+1)`, which annihilates `form`.
    pub first_integral: RationalPair,
    /// `(z1 z3^s + a z3 z4^s + Q) / z3^(s+1)` as printed; kept for the erratum check.
    pub printed_first_integral: RationalPair,
}

fn mono(n: usize, exps: &[u32]) -> Result<Polynomial, CatalogError> {
    Ok(Polynomial::monomial(n, crate::exactalg::Monomial::from_exponents(exps)?, Scalar::one()))
}

/// Build `z3^(s+1) dz1 - z3 P dz2 + (-z1 z3^s + z2 P + s a z3 z4^s) dz3 - s a z3^2 z4^(s-1) dz4`
/// with `P = sum a_i z2^i z3^(s-i)`.
pub fn family_rational(s: u32, a: Scalar, coefficients: &[Scalar]) -> Result<RationalFamilyMember, CatalogError> {
    if s < 1 {
        return Err(CatalogError::InvalidParameters("s must be at least 1".into()));
    }
    if coefficients.len() != s as usize + 1 {
        return Err(CatalogError::InvalidParameters(format!("P needs {} coefficients, got {}", s + 1, coefficients.len())));
    }
    if coefficients[s as usize].is_zero() {
        return Err(CatalogError::InvalidParameters("the leading coefficient a_s must be nonzero".into()));
    }
    let m = |e: &[u32]| mono(4, e);
    let mut p = Polynomial::zero(4);
    let mut q = Polynomial::zero(4);
    for (i, c) in coefficients.iter().enumerate() {
        let i = i as u32;
        p = &p + &m(&[0, i, s - i, 0])?.scale(c);
        q = &q + &m(&[0, i + 1, s - i, 0])?.scale(&(c / &Scalar::from_int(i as i64 + 1)));
    }
    let z2 = m(&[0, 1, 0, 0])?;
    let z3 = m(&[0, 0, 1, 0])?;
    let sa = &Scalar::from_int(s as i64) * &a;
    let coeffs = vec![
        m(&[0, 0, s + 1, 0])?,
        -(&z3 * &p),
        &(&(&z2 * &p) - &m(&[1, 0, s, 0])?) + &m(&[0, 0, 1, s])?.scale(&sa),
        m(&[0, 0, 2, s - 1])?.scale(&-sa),
    ];
    let form = OneForm::new(coeffs)?;
    let x = &m(&[1, 0, s, 0])?;
    let y = &m(&[0, 0, 1, s])?.scale(&a);
    let den = m(&[0, 0, s + 1, 0])?;
    let first_integral = RationalPair::new(&(x - y) - &q, den.clone())?;
    let printed_first_integral = RationalPair::new(&(x + y) + &q, den)?;
    Ok(RationalFamilyMember { s, a, coefficients: coefficients.to_vec(), form, first_integral, printed_first_integral })
}

/// The plane form `z3^(s+1) dz1 - z3 P dz2 + (z2 P - z1 z3^s) dz3` of the `a = 0` member.
pub fn family_rational_plane(s: u32, coefficients: &[Scalar]) -> Result<OneForm, CatalogError> {
    let member = family_rational(s, Scalar::zero(), coefficients)?;
    let coeffs = member.form.coefficients()[..3].iter().map(|c| c.with_nvars(3)).collect::<Result<_, _>>()?;
    Ok(OneForm::new(coeffs)?)
}

/// The projection `(z1, z2, z3, z4) -> (z1, z2, z3)` as a `3 x 4` matrix.
pub fn drop_last_coordinate() -> LinearMap {
    LinearMap::from_int_rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]).expect("3 x 4")
}

/// A member of the logarithmic family built from `f_a`, `z2` and `z3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogFamilyMember {
    pub shape: [u32; 3],
    pub a: Scalar,
    pub lambdas: [Scalar; 3],
    /// `z2^s2 z3^s3 (z1 z2^(s1-1) + a z4^s1) + z2^N + z3^N` with `N = s1 + s2 + s3`.
    pub f: Polynomial,
    pub data: LogData,
    pub form: OneForm,
    /// `f^(-lambda1) / (z2^lambda2 z3^lambda3)` when `-lambda1`, `lambda2`, `lambda3` are positive integers.
    pub first_integral: Option<RationalPair>,
}

impl LogFamilyMember {
    pub fn degree(&self) -> u32 {
        self.shape.iter().sum()
    }

    /// Degree of the first integral, when there is one.
    pub fn first_integral_degree(&self) -> Option<u32> {
        self.first_integral.as_ref().map(RationalPair::degree)
    }
}

fn positive_integer(x: &Scalar) -> Option<u32> {
    x.to_i64().filter(|&v| x.is_integer() && v > 0).and_then(|v| u32::try_from(v).ok())
}

pub fn family_logarithmic(shape: [u32; 3], a: Scalar, lambdas: [Scalar; 3]) -> Result<LogFamilyMember, CatalogError> {
    let [s1, s2, s3] = shape;
    if shape.contains(&0) {
        return Err(CatalogError::InvalidParameters("s1, s2, s3 must be positive".into()));
    }
    let n = s1 + s2 + s3;
    let m = |e: &[u32]| mono(4, e);
    let inner = &m(&[1, s1 - 1, 0, 0])? + &m(&[0, 0, 0, s1])?.scale(&a);
    let f = &(&(&m(&[0, s2, s3, 0])? * &inner) + &m(&[0, n, 0, 0])?) + &m(&[0, 0, n, 0])?;
    let data = LogData::new(vec![f.clone(), m(&[0, 1, 0, 0])?, m(&[0, 0, 1, 0])?], lambdas.to_vec())?;
    let form = build_log_form(&data);
    let first_integral = match (positive_integer(&-lambdas[0].clone()), positive_integer(&lambdas[1]), positive_integer(&lambdas[2])) {
        (Some(e), Some(l2), Some(l3)) => Some(RationalPair::new(f.pow(e)?, m(&[0, l2, l3, 0])?)?),
        _ => None,
    };
    Ok(LogFamilyMember { shape, a, lambdas, f, data, form, first_integral })
}
