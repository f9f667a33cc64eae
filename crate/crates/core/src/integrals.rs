//! Rational first integrals and logarithmic forms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactalg::{AlgebraError, LinearMap, Monomial, Polynomial, Scalar};
use crate::forms::{FormError, OneForm, TwoForm, Wedge};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntegralError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("{0}")]
    InvalidPair(String),
    #[error("the ratio is constant, so it defines no foliation")]
    ConstantRatio,
    #[error("{0}")]
    InvalidLogData(String),
    #[error("weighted degree sum is {0}, expected 0")]
    WeightedDegree(Scalar),
    #[error("{what} must be homogeneous of degree {expected}")]
    DegreeMismatch { what: String, expected: u32 },
    #[error("radial contraction is {witness:?}; the exponents must satisfy {constraint}")]
    RadialFailure { constraint: String, witness: Polynomial },
}

/// A quotient `f / g` of homogeneous polynomials of equal degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPair {
    numerator: Polynomial,
    denominator: Polynomial,
}

impl RationalPair {
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Result<Self, IntegralError> {
        if numerator.nvars() != denominator.nvars() {
            return Err(AlgebraError::AmbientMismatch { left: numerator.nvars(), right: denominator.nvars() }.into());
        }
        if denominator.is_zero() {
            return Err(IntegralError::InvalidPair("denominator is zero".into()));
        }
        let dg = denominator
            .homogeneous_degree()
            .ok_or_else(|| IntegralError::InvalidPair("denominator is not homogeneous".into()))?;
        if !numerator.is_zero() {
            let df = numerator
                .homogeneous_degree()
                .ok_or_else(|| IntegralError::InvalidPair("numerator is not homogeneous".into()))?;
            if df != dg {
                return Err(IntegralError::InvalidPair(format!(
                    "numerator has degree {df}, denominator has degree {dg}"
                )));
            }
        }
        Ok(RationalPair { numerator, denominator })
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    pub fn nvars(&self) -> usize {
        self.numerator.nvars()
    }

    pub fn degree(&self) -> u32 {
        self.denominator.homogeneous_degree().expect("validated")
    }

    /// `g df - f dg`.
    pub fn differential(&self) -> OneForm {
        let (f, g) = (&self.numerator, &self.denominator);
        OneForm::exact(f)
            .mul_polynomial(g)
            .and_then(|a| a.try_sub(&OneForm::exact(g).mul_polynomial(f)?))
            .expect("shared ambient")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstIntegralCheck {
    pub holds: bool,
    /// `w ^ (g df - f dg)`; zero exactly when the check holds.
    pub witness: TwoForm,
}

/// `f/g` is constant on the leaves iff `w ^ (g df - f dg) = 0`.
pub fn is_first_integral(form: &OneForm, pair: &RationalPair) -> Result<FirstIntegralCheck, IntegralError> {
    if form.is_zero() {
        return Err(FormError::ZeroForm.into());
    }
    if form.nvars() != pair.nvars() {
        return Err(AlgebraError::AmbientMismatch { left: form.nvars(), right: pair.nvars() }.into());
    }
    let witness = form.wedge(&pair.differential());
    Ok(FirstIntegralCheck { holds: witness.is_zero(), witness })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFoliation {
    pub form: OneForm,
    /// The monomial factor divided out of `g df - f dg`.
    pub removed_monomial: Monomial,
    /// A nonmonomial common factor probably remains in the coefficients.
    pub non_reduced: bool,
}

/// The foliation with first integral `f/g`: `g df - f dg` with monomial and scalar content removed.
pub fn foliation_from_rational(pair: &RationalPair) -> Result<RationalFoliation, IntegralError> {
    let eta = pair.differential();
    if eta.is_zero() {
        return Err(IntegralError::ConstantRatio);
    }
    let nonzero = || eta.coefficients().iter().filter(|c| !c.is_zero());
    let common = nonzero().map(Polynomial::monomial_content).reduce(|a, b| a.gcd(&b)).expect("nonzero form");
    let content = nonzero().map(Polynomial::content).reduce(|a, b| crate::exactalg::rational_gcd(&a, &b)).expect("nonzero");
    let first = nonzero().next().expect("nonzero form");
    // keep the sign of the first nonzero coefficient's leading term
    let content = if first.leading_term().expect("nonzero").1.is_negative() { -content.abs() } else { content.abs() };
    let inv = content.recip().expect("nonzero content");
    let coeffs = eta
        .coefficients()
        .iter()
        .map(|c| c.div_monomial(&common).expect("common monomial").scale(&inv))
        .collect();
    let form = OneForm::new(coeffs)?;
    let non_reduced = probable_common_factor(&form, 0x5eed);
    Ok(RationalFoliation { form, removed_monomial: common, non_reduced })
}

/// Restrict the coefficients to a seeded random line and test for a common root.
///
/// A common factor survives restriction to every line; a codimension-two zero set misses a
/// random line, so a nonconstant gcd there is strong evidence of a common factor.
pub fn probable_common_factor(form: &OneForm, seed: u64) -> bool {
    let n = form.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<Vec<Scalar>> =
        (0..n).map(|_| vec![Scalar::one(), Scalar::from_int(rng.random_range(-97..=97))]).collect();
    let map = LinearMap::from_rows(rows).expect("n x 2");
    let mut g: Option<Vec<Scalar>> = None;
    for c in form.coefficients().iter().filter(|c| !c.is_zero()) {
        let restricted = c.substitute_map(&map).expect("n x 2 map");
        let u = dehomogenize(&restricted);
        g = Some(match g {
            None => u,
            Some(prev) => univariate_gcd(prev, u),
        });
    }
    g.is_some_and(|g| g.len() > 1)
}

/// Coefficients of `p(1, t)` by ascending power of `t`, trailing zeros trimmed.
fn dehomogenize(p: &Polynomial) -> Vec<Scalar> {
    let deg = p.terms().map(|(m, _)| m.exponent(1) as usize).max().unwrap_or(0);
    let mut out = vec![Scalar::zero(); deg + 1];
    for (m, c) in p.terms() {
        out[m.exponent(1) as usize] += c;
    }
    trim(out)
}

fn trim(mut v: Vec<Scalar>) -> Vec<Scalar> {
    while v.last().is_some_and(Scalar::is_zero) {
        v.pop();
    }
    v
}

fn univariate_gcd(mut a: Vec<Scalar>, mut b: Vec<Scalar>) -> Vec<Scalar> {
    while !b.is_empty() {
        let r = univariate_rem(a, &b);
        a = b;
        b = r;
    }
    a
}

fn univariate_rem(mut a: Vec<Scalar>, b: &[Scalar]) -> Vec<Scalar> {
    let lb = b.last().expect("nonzero divisor").clone();
    while a.len() >= b.len() {
        let shift = a.len() - b.len();
        let q = a.last().expect("nonempty") / &lb;
        for (i, bi) in b.iter().enumerate() {
            let d = &q * bi;
            a[shift + i] -= &d;
        }
        a.pop();
        a = trim(a);
    }
    a
}

/// Factors `f_i` with exponents `lambda_i` of a logarithmic form `sum lambda_i (prod f / f_i) df_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogData {
    factors: Vec<Polynomial>,
    lambdas: Vec<Scalar>,
}

impl LogData {
    pub fn new(factors: Vec<Polynomial>, lambdas: Vec<Scalar>) -> Result<Self, IntegralError> {
        if factors.is_empty() || factors.len() != lambdas.len() {
            return Err(IntegralError::InvalidLogData(format!(
                "{} factors and {} exponents",
                factors.len(),
                lambdas.len()
            )));
        }
        let n = factors[0].nvars();
        let mut sum = Scalar::zero();
        for (i, (f, l)) in factors.iter().zip(&lambdas).enumerate() {
            if f.nvars() != n {
                return Err(AlgebraError::AmbientMismatch { left: n, right: f.nvars() }.into());
            }
            if l.is_zero() {
                return Err(IntegralError::InvalidLogData(format!("exponent {} is zero", i + 1)));
            }
            let d = f
                .homogeneous_degree()
                .filter(|&d| d > 0)
                .ok_or_else(|| IntegralError::InvalidLogData(format!("factor {} is not a nonconstant form", i + 1)))?;
            if factors[..i].iter().any(|g| g.proportionality(f).is_some()) {
                return Err(IntegralError::InvalidLogData(format!("factor {} repeats an earlier one", i + 1)));
            }
            sum += &(l * &Scalar::from_int(d as i64));
        }
        if !sum.is_zero() {
            return Err(IntegralError::WeightedDegree(sum));
        }
        Ok(LogData { factors, lambdas })
    }

    pub fn factors(&self) -> &[Polynomial] {
        &self.factors
    }

    pub fn lambdas(&self) -> &[Scalar] {
        &self.lambdas
    }

    pub fn nvars(&self) -> usize {
        self.factors[0].nvars()
    }
}

/// `sum_i lambda_i (prod_{j != i} f_j) df_i`.
pub fn build_log_form(data: &LogData) -> OneForm {
    let n = data.nvars();
    let mut out = OneForm::zero(n);
    for (i, (f, l)) in data.factors.iter().zip(&data.lambdas).enumerate() {
        let cofactor = data
            .factors
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .fold(Polynomial::one(n), |acc, (_, g)| &acc * g);
        let term = OneForm::exact(f).mul_polynomial(&cofactor).expect("shared ambient").scale(l);
        out = out.try_add(&term).expect("shared ambient");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogDecompositionCheck {
    pub holds: bool,
    /// `c` with `form = c * build_log_form(data)`.
    pub ratio: Option<Scalar>,
}

pub fn verify_log_decomposition(form: &OneForm, data: &LogData) -> Result<LogDecompositionCheck, IntegralError> {
    let ratio = build_log_form(data).projective_ratio(form)?;
    Ok(LogDecompositionCheck { holds: ratio.is_some(), ratio })
}

/// Two nonzero forms define the same foliation iff their wedge vanishes.
pub fn same_foliation(a: &OneForm, b: &OneForm) -> Result<bool, IntegralError> {
    if a.is_zero() || b.is_zero() {
        return Err(FormError::ZeroForm.into());
    }
    if a.nvars() != b.nvars() {
        return Err(AlgebraError::AmbientMismatch { left: a.nvars(), right: b.nvars() }.into());
    }
    Ok(a.wedge(b).is_zero())
}

/// Degenerations of four-line logarithmic forms, with lines `L_i` and a homogeneous `alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundaryShape {
    /// `L1^2 L2 L3 (sum lambda_i dL_i / L_i + d(alpha / L1))`, `alpha` linear.
    One { lines: [Polynomial; 3], lambdas: [Scalar; 3], alpha: Polynomial },
    /// `L1^3 L2 (lambda1 dL1 / L1 + lambda2 dL2 / L2 + d(alpha / L1^2))`, `alpha` quadratic.
    Two { lines: [Polynomial; 2], lambdas: [Scalar; 2], alpha: Polynomial },
    /// `L1^4 (lambda1 dL1 / L1 + d(alpha / L1^3))`, `alpha` cubic.
    Three { line: Polynomial, lambda: Scalar, alpha: Polynomial },
}

impl BoundaryShape {
    pub fn index(&self) -> u8 {
        match self {
            BoundaryShape::One { .. } => 1,
            BoundaryShape::Two { .. } => 2,
            BoundaryShape::Three { .. } => 3,
        }
    }

    /// The linear condition on the exponents forced by a vanishing radial contraction.
    pub fn lambda_constraint(&self) -> &'static str {
        match self {
            BoundaryShape::One { .. } => "lambda1 + lambda2 + lambda3 = 0",
            BoundaryShape::Two { .. } => "lambda1 + lambda2 = 0",
            BoundaryShape::Three { .. } => "lambda1 = 0",
        }
    }

    fn lines(&self) -> Vec<&Polynomial> {
        match self {
            BoundaryShape::One { lines, .. } => lines.iter().collect(),
            BoundaryShape::Two { lines, .. } => lines.iter().collect(),
            BoundaryShape::Three { line, .. } => vec![line],
        }
    }

    fn alpha(&self) -> &Polynomial {
        match self {
            BoundaryShape::One { alpha, .. } | BoundaryShape::Two { alpha, .. } | BoundaryShape::Three { alpha, .. } => alpha,
        }
    }

    /// Components of the singular set: `V(L_i, L_j)` for the distinct lines and `V(L1, alpha)`.
    pub fn singular_components(&self) -> Vec<Vec<Polynomial>> {
        let lines = self.lines();
        let mut out = Vec::new();
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                out.push(vec![lines[i].clone(), lines[j].clone()]);
            }
        }
        out.push(vec![lines[0].clone(), self.alpha().clone()]);
        out
    }
}

/// Expanded polynomial form of a boundary shape; fails when the degrees are off or the
/// exponents violate the radial condition.
pub fn build_boundary_log_form(shape: &BoundaryShape) -> Result<OneForm, IntegralError> {
    let alpha_degree = shape.index() as u32;
    for (i, l) in shape.lines().iter().enumerate() {
        if l.homogeneous_degree() != Some(1) {
            return Err(IntegralError::DegreeMismatch { what: format!("L{}", i + 1), expected: 1 });
        }
    }
    let alpha = shape.alpha();
    if alpha.homogeneous_degree() != Some(alpha_degree) {
        return Err(IntegralError::DegreeMismatch { what: "alpha".into(), expected: alpha_degree });
    }
    let n = alpha.nvars();
    if shape.lines().iter().any(|l| l.nvars() != n) {
        return Err(AlgebraError::AmbientMismatch { left: n, right: shape.lines()[0].nvars() }.into());
    }
    let d = OneForm::exact;
    let term = |coef: &Polynomial, form: OneForm| form.mul_polynomial(coef).expect("shared ambient");
    let sum = |forms: Vec<OneForm>| forms.into_iter().reduce(|a, b| a.try_add(&b).expect("shared ambient")).expect("nonempty");
    let form = match shape {
        BoundaryShape::One { lines: [l1, l2, l3], lambdas: [a1, a2, a3], alpha } => {
            let l123 = &(l1 * l2) * l3;
            let l11 = l1 * l1;
            sum(vec![
                term(&l123, d(l1)).scale(a1),
                term(&(&l11 * l3), d(l2)).scale(a2),
                term(&(&l11 * l2), d(l3)).scale(a3),
                term(&l123, d(alpha)),
                term(&(&(alpha * l2) * l3), d(l1)).neg(),
            ])
        }
        BoundaryShape::Two { lines: [l1, l2], lambdas: [a1, a2], alpha } => {
            let l11 = l1 * l1;
            sum(vec![
                term(&(&l11 * l2), d(l1)).scale(a1),
                term(&(&l11 * l1), d(l2)).scale(a2),
                term(&(l1 * l2), d(alpha)),
                term(&(alpha * l2), d(l1)).scale(&Scalar::from_int(-2)),
            ])
        }
        BoundaryShape::Three { line: l1, lambda, alpha } => {
            let l111 = &(l1 * l1) * l1;
            sum(vec![
                term(&l111, d(l1)).scale(lambda),
                term(l1, d(alpha)),
                term(alpha, d(l1)).scale(&Scalar::from_int(-3)),
            ])
        }
    };
    let witness = form.radial_contraction();
    if !witness.is_zero() {
        return Err(IntegralError::RadialFailure { constraint: shape.lambda_constraint().into(), witness });
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::test_support::{p4, z};

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn conic() -> Polynomial {
        p4(&[(2, &[1, 0, 1, 0]), (-1, &[0, 2, 0, 0])])
    }

    fn omega12() -> OneForm {
        OneForm::new(vec![
            p4(&[(-1, &[1, 0, 1, 1]), (2, &[0, 2, 0, 1])]),
            p4(&[(-3, &[1, 1, 0, 1])]),
            p4(&[(3, &[2, 0, 0, 1])]),
            p4(&[(-2, &[2, 0, 1, 0]), (1, &[1, 2, 0, 0])]),
        ])
        .unwrap()
    }

    #[test]
    fn differential_of_cubic_pair() {
        let f = p4(&[(1, &[1, 0, 2, 0]), (1, &[0, 3, 0, 0])]);
        let g = p4(&[(1, &[0, 0, 3, 0])]);
        let eta = RationalPair::new(f, g).unwrap().differential();
        assert_eq!(eta.coefficient(0), &p4(&[(1, &[0, 0, 5, 0])]));
        assert_eq!(eta.coefficient(1), &p4(&[(3, &[0, 2, 3, 0])]));
        assert_eq!(eta.coefficient(2), &p4(&[(-1, &[1, 0, 4, 0]), (-3, &[0, 3, 2, 0])]));
        assert!(eta.coefficient(3).is_zero());
    }

    #[test]
    fn foliation_from_cubic_pair() {
        let f = p4(&[(1, &[1, 0, 2, 0]), (1, &[0, 3, 0, 0])]);
        let g = p4(&[(1, &[0, 0, 3, 0])]);
        let pair = RationalPair::new(f, g).unwrap();
        let r = foliation_from_rational(&pair).unwrap();
        assert_eq!(r.removed_monomial, Monomial::from_exponents(&[0, 0, 2]).unwrap());
        assert_eq!(r.form.coefficient(0), &p4(&[(1, &[0, 0, 3, 0])]));
        assert_eq!(r.form.coefficient(2), &p4(&[(-1, &[1, 0, 2, 0]), (-3, &[0, 3, 0, 0])]));
        assert!(!r.non_reduced);
        assert!(is_first_integral(&r.form, &pair).unwrap().holds);
        assert!(r.form.check_projective().passes());
    }

    #[test]
    fn foliation_from_linear_pairs() {
        let rot = OneForm::new(vec![z(2), -z(1), Polynomial::zero(4), Polynomial::zero(4)]).unwrap();
        let r = foliation_from_rational(&RationalPair::new(z(1), z(2)).unwrap()).unwrap();
        assert_eq!(r.form, rot);
        let r = foliation_from_rational(&RationalPair::new(&z(1) * &z(1), &z(1) * &z(2)).unwrap()).unwrap();
        assert_eq!(r.form, rot);
        assert!(matches!(
            foliation_from_rational(&RationalPair::new(z(1).scale(&s(2)), z(1)).unwrap()),
            Err(IntegralError::ConstantRatio)
        ));
    }

    #[test]
    fn non_reduced_flag() {
        // (z1 + z2) * (z2 dz1 - z1 dz2) keeps a linear common factor
        let h = &z(1) + &z(2);
        let pair = RationalPair::new(&z(1) * &h, &z(2) * &h).unwrap();
        let eta = pair.differential();
        assert!(probable_common_factor(&eta, 1));
        let r = foliation_from_rational(&RationalPair::new(z(1), z(2)).unwrap()).unwrap();
        assert!(!probable_common_factor(&r.form, 1));
    }

    #[test]
    fn pair_validation() {
        assert!(RationalPair::new(z(1), Polynomial::zero(4)).is_err());
        assert!(RationalPair::new(&z(1) * &z(1), z(2)).is_err());
        assert!(RationalPair::new(&z(1) + &(&z(1) * &z(2)), &z(2) * &z(2)).is_err());
    }

    #[test]
    fn first_integral_of_omega12() {
        let pair = RationalPair::new(p4(&[(1, &[4, 0, 0, 2])]), conic().pow(3).unwrap()).unwrap();
        assert!(is_first_integral(&omega12(), &pair).unwrap().holds);
        let wrong = RationalPair::new(p4(&[(1, &[4, 0, 0, 2])]), p4(&[(1, &[0, 0, 6, 0])])).unwrap();
        let check = is_first_integral(&omega12(), &wrong).unwrap();
        assert!(!check.holds && !check.witness.is_zero());
    }

    #[test]
    fn log_decomposition_ratio() {
        let data = LogData::new(vec![z(1), z(4), conic()], vec![s(4), s(2), s(-3)]).unwrap();
        let check = verify_log_decomposition(&omega12(), &data).unwrap();
        assert!(check.holds);
        assert_eq!(check.ratio, Some(Scalar::new(-1, 2).unwrap()));
    }

    #[test]
    fn four_planes() {
        let data = LogData::new(vec![z(1), z(2), z(3), z(4)], vec![s(1), s(1), s(-1), s(-1)]).unwrap();
        let w = build_log_form(&data);
        assert!(w.is_integrable());
        assert!(w.radial_contraction().is_zero());
    }

    #[test]
    fn log_data_validation() {
        assert!(matches!(
            LogData::new(vec![z(1), z(2)], vec![s(1), s(1)]),
            Err(IntegralError::WeightedDegree(v)) if v == s(2)
        ));
        assert!(LogData::new(vec![z(1), z(1).scale(&s(3))], vec![s(1), s(-1)]).is_err());
        assert!(LogData::new(vec![z(1)], vec![s(1), s(-1)]).is_err());
        assert!(LogData::new(vec![z(1), z(2)], vec![s(0), s(0)]).is_err());
    }

    #[test]
    fn shape_three_expansion() {
        let alpha = p4(&[(1, &[0, 3, 0, 0])]);
        let shape = BoundaryShape::Three { line: z(1), lambda: s(0), alpha: alpha.clone() };
        let w = build_boundary_log_form(&shape).unwrap();
        assert_eq!(w.coefficient(0), &p4(&[(-3, &[0, 3, 0, 0])]));
        assert_eq!(w.coefficient(1), &p4(&[(3, &[1, 2, 0, 0])]));
        let bad = BoundaryShape::Three { line: z(1), lambda: s(1), alpha };
        match build_boundary_log_form(&bad) {
            Err(IntegralError::RadialFailure { witness, .. }) => assert_eq!(witness, p4(&[(1, &[4, 0, 0, 0])])),
            other => panic!("expected radial failure, got {other:?}"),
        }
    }

    #[test]
    fn shapes_one_and_two_are_foliations() {
        let one = BoundaryShape::One {
            lines: [z(1), &z(2) + &z(3), &z(3) - &z(4)],
            lambdas: [s(1), s(2), s(-3)],
            alpha: &z(2) + &z(4),
        };
        let w = build_boundary_log_form(&one).unwrap();
        assert!(w.is_integrable());
        assert_eq!(w.check_projective().foliation_degree, Some(2));
        let two = BoundaryShape::Two { lines: [z(3), z(4)], lambdas: [s(1), s(-1)], alpha: &z(2) * &z(2) };
        assert!(build_boundary_log_form(&two).unwrap().is_integrable());
        let bad_degree = BoundaryShape::Two { lines: [z(3), z(4)], lambdas: [s(1), s(-1)], alpha: z(2) };
        assert!(matches!(build_boundary_log_form(&bad_degree), Err(IntegralError::DegreeMismatch { .. })));
    }

    #[test]
    fn same_foliation_up_to_polynomial_multiple() {
        let w = omega12();
        assert!(same_foliation(&w, &w.mul_polynomial(&z(3)).unwrap()).unwrap());
        let rot = OneForm::new(vec![z(2), -z(1), Polynomial::zero(4), Polynomial::zero(4)]).unwrap();
        assert!(!same_foliation(&w, &rot).unwrap());
    }
}
