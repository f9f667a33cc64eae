//! Exterior calculus of polynomial differential forms on the affine cone.
//!
//! A one-form `A_1 dz_1 + ... + A_n dz_n` defines a codimension-one foliation on projective
//! space when its coefficients are homogeneous of a common degree `s + 1`, its contraction
//! with the radial field `sum z_i d/dz_i` vanishes, and `w ^ dw = 0`. The foliation then has
//! degree `s` and its singular set is the common zero locus of the coefficients.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exactalg::{AlgebraError, LinearMap, Polynomial, Scalar};
use crate::ideals::Ideal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("the zero form has no projective class")]
    ZeroForm,
    #[error("coefficient of dz{} is not divisible; remainder {remainder:?}", slot + 1)]
    NotDivisible { slot: usize, remainder: Polynomial },
    #[error("linear map has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("form needs {expected} coefficients, got {got}")]
    WrongLength { expected: usize, got: usize },
}

/// A polynomial one-form; slot `i` holds the coefficient of `dz_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OneForm {
    coeffs: Vec<Polynomial>,
}

/// A two-form stored by strictly increasing index pairs; zero coefficients are not stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoForm {
    nvars: usize,
    coeffs: BTreeMap<(usize, usize), Polynomial>,
}

/// A three-form stored by strictly increasing index triples; zero coefficients are not stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThreeForm {
    nvars: usize,
    coeffs: BTreeMap<(usize, usize, usize), Polynomial>,
}

/// Graded exterior product.
pub trait Wedge<Rhs> {
    type Output;
    fn wedge(self, rhs: Rhs) -> Self::Output;
}

impl OneForm {
    /// One coefficient per variable; every coefficient must live in `coeffs.len()` variables.
    pub fn new(coeffs: Vec<Polynomial>) -> Result<Self, FormError> {
        let n = coeffs.len();
        if let Some(bad) = coeffs.iter().find(|c| c.nvars() != n) {
            return Err(AlgebraError::AmbientMismatch { left: n, right: bad.nvars() }.into());
        }
        Ok(OneForm { coeffs })
    }

    pub fn zero(nvars: usize) -> Self {
        OneForm { coeffs: vec![Polynomial::zero(nvars); nvars] }
    }

    /// The basis form `dz_{i+1}`.
    pub fn basis(nvars: usize, i: usize) -> Result<Self, FormError> {
        if i >= nvars {
            return Err(AlgebraError::VariableOutOfRange { index: i, nvars }.into());
        }
        let mut f = Self::zero(nvars);
        f.coeffs[i] = Polynomial::one(nvars);
        Ok(f)
    }

    /// The exact form `df`.
    pub fn exact(f: &Polynomial) -> Self {
        OneForm { coeffs: f.gradient() }
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficient(&self, slot: usize) -> &Polynomial {
        &self.coeffs[slot]
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn into_coefficients(self) -> Vec<Polynomial> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    fn check_ambient(&self, other: &OneForm) -> Result<(), FormError> {
        if self.nvars() == other.nvars() {
            Ok(())
        } else {
            Err(AlgebraError::AmbientMismatch { left: self.nvars(), right: other.nvars() }.into())
        }
    }

    pub fn try_add(&self, other: &OneForm) -> Result<OneForm, FormError> {
        self.check_ambient(other)?;
        Ok(OneForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn try_sub(&self, other: &OneForm) -> Result<OneForm, FormError> {
        self.check_ambient(other)?;
        Ok(OneForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, c: &Scalar) -> OneForm {
        OneForm { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn mul_polynomial(&self, f: &Polynomial) -> Result<OneForm, FormError> {
        let coeffs = self.coeffs.iter().map(|a| a.try_mul(f)).collect::<Result<_, _>>()?;
        Ok(OneForm { coeffs })
    }

    pub fn neg(&self) -> OneForm {
        OneForm { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    /// `dw`: the coefficient of `dz_i ^ dz_j` is `d_i A_j - d_j A_i`.
    pub fn exterior_derivative(&self) -> TwoForm {
        let n = self.nvars();
        let mut out = TwoForm::zero(n);
        for i in 0..n {
            for j in i + 1..n {
                let a = self.coeffs[j].partial_derivative(i).expect("index in range");
                let b = self.coeffs[i].partial_derivative(j).expect("index in range");
                out.insert(i, j, &a - &b);
            }
        }
        out
    }

    /// Interior product with the radial field: `sum z_i A_i`.
    pub fn radial_contraction(&self) -> Polynomial {
        let n = self.nvars();
        self.coeffs.iter().enumerate().fold(Polynomial::zero(n), |acc, (i, a)| {
            let zi = Polynomial::var(n, i).expect("index in range");
            &acc + &(&zi * a)
        })
    }

    /// The common degree of the nonzero coefficients, if they are all homogeneous of one degree.
    pub fn common_degree(&self) -> Option<u32> {
        let mut degree = None;
        for c in self.coeffs.iter().filter(|c| !c.is_zero()) {
            let d = c.homogeneous_degree()?;
            match degree {
                None => degree = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        degree
    }

    pub fn check_projective(&self) -> ProjectivityReport {
        let mut failures = Vec::new();
        if self.is_zero() {
            failures.push(ProjectivityFailure::ZeroForm);
        }
        let mut homogeneous = true;
        let mut degree: Option<(usize, u32)> = None;
        for (slot, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            match c.homogeneous_degree() {
                None => {
                    homogeneous = false;
                    failures.push(ProjectivityFailure::NotHomogeneous { slot, coefficient: c.clone() });
                }
                Some(d) => match degree {
                    None => degree = Some((slot, d)),
                    Some((first, e)) if e != d => {
                        homogeneous = false;
                        failures.push(ProjectivityFailure::UnequalDegrees {
                            slot,
                            degree: d,
                            reference_slot: first,
                            reference_degree: e,
                        });
                    }
                    _ => {}
                },
            }
        }
        let common_degree = if homogeneous { degree.map(|(_, d)| d) } else { None };
        let contraction = self.radial_contraction();
        let radial_zero = contraction.is_zero();
        if !radial_zero {
            failures.push(ProjectivityFailure::RadialContraction(contraction));
        }
        let foliation_degree = match common_degree {
            Some(d) if radial_zero => d.checked_sub(1),
            _ => None,
        };
        ProjectivityReport { homogeneous: homogeneous && degree.is_some(), common_degree, radial_zero, foliation_degree, failures }
    }

    pub fn integrability(&self) -> Integrability {
        let witness = self.wedge(&self.exterior_derivative());
        Integrability { integrable: witness.is_zero(), witness }
    }

    pub fn is_integrable(&self) -> bool {
        self.integrability().integrable
    }

    /// Pullback by `z -> M z`: coefficients are substituted and the differentials transform by
    /// the transpose, so the new coefficient of `dz_j` is `sum_i M_ij A_i(M z)`.
    pub fn pullback_linear(&self, map: &LinearMap) -> Result<OneForm, FormError> {
        if !map.is_square() {
            return Err(AlgebraError::ShapeMismatch(format!(
                "pullback needs a square matrix, got {}x{}",
                map.rows(),
                map.cols()
            ))
            .into());
        }
        self.pullback_map(map)
    }

    /// Pullback of a form on the plane along a surjective linear projection (`3 x n` matrix).
    pub fn pullback_from_plane(&self, projection: &LinearMap) -> Result<OneForm, FormError> {
        let rank = projection.rank();
        if rank != projection.rows() {
            return Err(FormError::RankDeficient { rank, expected: projection.rows() });
        }
        self.pullback_map(projection)
    }

    fn pullback_map(&self, map: &LinearMap) -> Result<OneForm, FormError> {
        if map.rows() != self.nvars() {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{}x{} matrix does not act on {} variables",
                map.rows(),
                map.cols(),
                self.nvars()
            ))
            .into());
        }
        let target = map.cols();
        let substituted: Vec<Polynomial> =
            self.coeffs.iter().map(|a| a.substitute_map(map)).collect::<Result<_, _>>()?;
        let coeffs = (0..target)
            .map(|j| {
                substituted.iter().enumerate().fold(Polynomial::zero(target), |acc, (i, a)| {
                    &acc + &a.scale(map.get(i, j))
                })
            })
            .collect();
        Ok(OneForm { coeffs })
    }

    /// Coefficient-wise exact division by `h`.
    pub fn divide_by(&self, h: &Polynomial) -> Result<OneForm, FormError> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(slot, a)| {
                let (q, r) = a.div_rem(h)?;
                if r.is_zero() {
                    Ok(q)
                } else {
                    Err(FormError::NotDivisible { slot, remainder: r })
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(OneForm { coeffs })
    }

    /// The ideal generated by the coefficients; its zero set is the singular set.
    pub fn singular_ideal(&self) -> Ideal {
        Ideal::new(self.nvars(), self.coeffs.clone()).expect("coefficients share the ambient")
    }

    /// `Some(c)` with `other = c * self` when the forms are scalar multiples.
    ///
    /// The candidate ratio is read off the smallest monomial of the first nonzero slot.
    pub fn projective_ratio(&self, other: &OneForm) -> Result<Option<Scalar>, FormError> {
        if self.is_zero() || other.is_zero() {
            return Err(FormError::ZeroForm);
        }
        self.check_ambient(other)?;
        let slot = self.coeffs.iter().position(|c| !c.is_zero()).expect("nonzero form");
        let (m, a) = self.coeffs[slot].trailing_term().expect("nonzero coefficient");
        let b = other.coeffs[slot].coefficient(m);
        if b.is_zero() {
            return Ok(None);
        }
        let c = &b / a;
        Ok((self.scale(&c) == *other).then_some(c))
    }

    pub fn projective_equal(&self, other: &OneForm) -> Result<bool, FormError> {
        Ok(self.projective_ratio(other)?.is_some())
    }
}

/// Diagnostic for the projective-foliation conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivityReport {
    pub homogeneous: bool,
    pub common_degree: Option<u32>,
    pub radial_zero: bool,
    pub foliation_degree: Option<u32>,
    pub failures: Vec<ProjectivityFailure>,
}

impl ProjectivityReport {
    pub fn passes(&self) -> bool {
        self.foliation_degree.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjectivityFailure {
    ZeroForm,
    NotHomogeneous { slot: usize, coefficient: Polynomial },
    UnequalDegrees { slot: usize, degree: u32, reference_slot: usize, reference_degree: u32 },
    RadialContraction(Polynomial),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Integrability {
    pub integrable: bool,
    /// `w ^ dw`; zero exactly when integrable.
    pub witness: ThreeForm,
}

impl TwoForm {
    pub fn zero(nvars: usize) -> Self {
        TwoForm { nvars, coeffs: BTreeMap::new() }
    }

    /// The basis two-form `dz_{i+1} ^ dz_{j+1}` (sign-adjusted when `i > j`).
    pub fn basis(nvars: usize, i: usize, j: usize) -> Self {
        let mut out = Self::zero(nvars);
        out.insert(i, j, Polynomial::one(nvars));
        out
    }

    /// Add `c dz_i ^ dz_j`, normalizing the index order.
    pub fn insert(&mut self, i: usize, j: usize, c: Polynomial) {
        assert!(i < self.nvars && j < self.nvars, "index out of range");
        if i == j || c.is_zero() {
            return;
        }
        let (key, c) = if i < j { ((i, j), c) } else { ((j, i), -c) };
        let sum = match self.coeffs.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert(key, sum);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coefficient(&self, i: usize, j: usize) -> Polynomial {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.coeffs.get(&(i, j)).cloned().unwrap_or_else(|| Polynomial::zero(self.nvars)),
            std::cmp::Ordering::Greater => -self.coefficient(j, i),
            std::cmp::Ordering::Equal => Polynomial::zero(self.nvars),
        }
    }

    /// Nonzero coefficients keyed by `(i, j)`, `i < j`.
    pub fn coefficients(&self) -> impl Iterator<Item = (&(usize, usize), &Polynomial)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn try_add(&self, other: &TwoForm) -> Result<TwoForm, FormError> {
        if self.nvars != other.nvars {
            return Err(AlgebraError::AmbientMismatch { left: self.nvars, right: other.nvars }.into());
        }
        let mut out = self.clone();
        for (&(i, j), c) in &other.coeffs {
            out.insert(i, j, c.clone());
        }
        Ok(out)
    }

    pub fn mul_polynomial(&self, f: &Polynomial) -> Result<TwoForm, FormError> {
        let mut out = TwoForm::zero(self.nvars);
        for (&(i, j), c) in &self.coeffs {
            out.insert(i, j, c.try_mul(f)?);
        }
        Ok(out)
    }

    /// `d(c dz_i ^ dz_j) = sum_k d_k c dz_k ^ dz_i ^ dz_j`.
    pub fn exterior_derivative(&self) -> ThreeForm {
        let mut out = ThreeForm::zero(self.nvars);
        for (&(i, j), c) in &self.coeffs {
            for k in (0..self.nvars).filter(|&k| k != i && k != j) {
                let dc = c.partial_derivative(k).expect("index in range");
                let (key, dc) = if k < i {
                    ((k, i, j), dc)
                } else if k < j {
                    ((i, k, j), -dc)
                } else {
                    ((i, j, k), dc)
                };
                out.add_term(key, dc);
            }
        }
        out
    }

    /// Pullback by `z -> M z` for a square `M`.
    pub fn pullback_linear(&self, map: &LinearMap) -> Result<TwoForm, FormError> {
        if !map.is_square() || map.rows() != self.nvars {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{}x{} matrix does not act on {} variables",
                map.rows(),
                map.cols(),
                self.nvars
            ))
            .into());
        }
        let n = self.nvars;
        let mut out = TwoForm::zero(n);
        for (&(i, j), c) in &self.coeffs {
            let c = c.substitute_map(map)?;
            for a in 0..n {
                for b in 0..n {
                    let m = map.get(i, a) * map.get(j, b);
                    if a != b && !m.is_zero() {
                        out.insert(a, b, c.scale(&m));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Interior product with the radial field; `dz_i ^ dz_j` maps to `z_i dz_j - z_j dz_i`.
    pub fn radial_contraction(&self) -> OneForm {
        let n = self.nvars;
        let mut coeffs = vec![Polynomial::zero(n); n];
        for (&(i, j), c) in &self.coeffs {
            let zi = Polynomial::var(n, i).expect("index in range");
            let zj = Polynomial::var(n, j).expect("index in range");
            coeffs[j] = &coeffs[j] + &(&zi * c);
            coeffs[i] = &coeffs[i] - &(&zj * c);
        }
        OneForm { coeffs }
    }
}

impl ThreeForm {
    pub fn zero(nvars: usize) -> Self {
        ThreeForm { nvars, coeffs: BTreeMap::new() }
    }

    fn add_term(&mut self, key: (usize, usize, usize), c: Polynomial) {
        if c.is_zero() {
            return;
        }
        let sum = match self.coeffs.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert(key, sum);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> Polynomial {
        self.coeffs.get(&(i, j, k)).cloned().unwrap_or_else(|| Polynomial::zero(self.nvars))
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Polynomial)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl Wedge<&OneForm> for &OneForm {
    type Output = TwoForm;

    /// Coefficient of `dz_i ^ dz_j` is `A_i B_j - A_j B_i`.
    fn wedge(self, rhs: &OneForm) -> TwoForm {
        assert_eq!(self.nvars(), rhs.nvars(), "wedge of forms in different ambients");
        let n = self.nvars();
        let mut out = TwoForm::zero(n);
        for i in 0..n {
            for j in i + 1..n {
                let c = &(&self.coeffs[i] * &rhs.coeffs[j]) - &(&self.coeffs[j] * &rhs.coeffs[i]);
                out.insert(i, j, c);
            }
        }
        out
    }
}

impl Wedge<&TwoForm> for &OneForm {
    type Output = ThreeForm;

    /// Coefficient of `dz_i ^ dz_j ^ dz_k` is `A_i B_jk - A_j B_ik + A_k B_ij`.
    fn wedge(self, rhs: &TwoForm) -> ThreeForm {
        assert_eq!(self.nvars(), rhs.nvars(), "wedge of forms in different ambients");
        let n = self.nvars();
        let mut out = ThreeForm::zero(n);
        for (&(j, k), b) in &rhs.coeffs {
            for (i, a) in self.coeffs.iter().enumerate() {
                if a.is_zero() || i == j || i == k {
                    continue;
                }
                let prod = a * b;
                // sort (i, j, k) with j < k already; count transpositions
                let (key, sign) = if i < j {
                    ((i, j, k), 1)
                } else if i < k {
                    ((j, i, k), -1)
                } else {
                    ((j, k, i), 1)
                };
                out.add_term(key, if sign > 0 { prod } else { -prod });
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::test_support::{p4, z};

    fn form(coeffs: [Polynomial; 4]) -> OneForm {
        OneForm::new(coeffs.to_vec()).unwrap()
    }

    fn omega_parts() -> (OneForm, OneForm, OneForm) {
        let w1 = form([
            p4(&[(-1, &[1, 0, 1, 1])]),
            Polynomial::zero(4),
            p4(&[(3, &[2, 0, 0, 1])]),
            p4(&[(-2, &[2, 0, 1, 0])]),
        ]);
        let w2 = form([
            p4(&[(2, &[0, 2, 0, 1])]),
            p4(&[(-3, &[1, 1, 0, 1])]),
            Polynomial::zero(4),
            p4(&[(1, &[1, 2, 0, 0])]),
        ]);
        let w3 = form([
            p4(&[(-1, &[0, 1, 2, 0])]),
            p4(&[(2, &[1, 0, 2, 0])]),
            p4(&[(-1, &[1, 1, 1, 0])]),
            Polynomial::zero(4),
        ]);
        (w1, w2, w3)
    }

    fn omega() -> OneForm {
        let (a, b, c) = omega_parts();
        a.try_add(&b).unwrap().try_add(&c).unwrap()
    }

    #[test]
    fn single_term_derivative() {
        let w = OneForm::new(vec![p4(&[(1, &[0, 0, 3, 0])]), Polynomial::zero(4), Polynomial::zero(4), Polynomial::zero(4)]).unwrap();
        let dw = w.exterior_derivative();
        assert_eq!(dw.coefficients().count(), 1);
        assert_eq!(dw.coefficient(0, 2), p4(&[(-3, &[0, 0, 2, 0])]));
        assert_eq!(dw.coefficient(2, 0), p4(&[(3, &[0, 0, 2, 0])]));
    }

    #[test]
    fn derivative_of_omega1_dz1_dz3() {
        let (w1, _, _) = omega_parts();
        assert_eq!(w1.exterior_derivative().coefficient(0, 2), p4(&[(7, &[1, 0, 0, 1])]));
    }

    #[test]
    fn d_of_exact_vanishes() {
        let f = p4(&[(1, &[1, 0, 2, 0]), (1, &[0, 3, 0, 0])]);
        assert!(OneForm::exact(&f).exterior_derivative().is_zero());
        assert!(OneForm::exact(&f).is_integrable());
    }

    #[test]
    fn wedge_basics() {
        let dz1 = OneForm::basis(4, 0).unwrap();
        let dz2 = OneForm::basis(4, 1).unwrap();
        assert_eq!(dz1.wedge(&dz2), TwoForm::basis(4, 0, 1));
        assert_eq!(dz2.wedge(&dz1), TwoForm::basis(4, 1, 0));
        assert!(omega().wedge(&omega()).is_zero());
    }

    #[test]
    fn theorem_forms_are_projective_and_integrable() {
        let (w1, w2, w3) = omega_parts();
        let w = omega();
        assert!(w.radial_contraction().is_zero());
        let report = w.check_projective();
        assert!(report.passes());
        assert_eq!(report.foliation_degree, Some(2));
        for f in [w.clone(), w1.try_add(&w2).unwrap(), w2.try_add(&w3).unwrap(), w1.try_add(&w3).unwrap()] {
            assert!(f.is_integrable());
        }
    }

    #[test]
    fn dz1_fails_projectivity_with_witness() {
        let r = OneForm::basis(4, 0).unwrap().check_projective();
        assert!(!r.passes());
        assert!(!r.radial_zero);
        assert!(r.failures.contains(&ProjectivityFailure::RadialContraction(z(1))));
    }

    #[test]
    fn mixed_degrees_are_reported() {
        let f = form([z(2), -&(&z(1) * &z(1)), Polynomial::zero(4), Polynomial::zero(4)]);
        let r = f.check_projective();
        assert!(!r.homogeneous);
        assert!(matches!(r.failures[0], ProjectivityFailure::UnequalDegrees { slot: 1, .. }));
    }

    #[test]
    fn torus_pullbacks_scale_by_printed_powers() {
        let t = Scalar::from_int(2);
        let diag = |n: [i32; 4]| LinearMap::diagonal(&n.map(|e| t.pow(e).unwrap()));
        let w = omega();
        assert_eq!(w.pullback_linear(&diag([3, 1, -1, -3])).unwrap(), w.scale(&Scalar::from_int(4)));
        let (w1, _, _) = omega_parts();
        assert_eq!(w1.pullback_linear(&diag([3, -1, -1, -1])).unwrap(), w1.scale(&Scalar::from_int(16)));
        assert_eq!(w.pullback_linear(&LinearMap::identity(4)).unwrap(), w);
        assert!(w.pullback_linear(&LinearMap::identity(3)).is_err());
    }

    #[test]
    fn plane_pullback() {
        let z3 = |i| Polynomial::var(3, i).unwrap();
        let eta = OneForm::new(vec![
            &z3(1) * &z3(2),
            -&(&z3(0) * &z3(2)),
            Polynomial::zero(3),
        ])
        .unwrap();
        let proj = LinearMap::from_int_rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]).unwrap();
        let lifted = eta.pullback_from_plane(&proj).unwrap();
        assert_eq!(lifted.nvars(), 4);
        assert_eq!(lifted.coefficient(0), &(&z(2) * &z(3)));
        assert!(lifted.coefficient(3).is_zero());
        // permuted projection moves the differential
        let dz3 = OneForm::basis(3, 2).unwrap();
        let perm = LinearMap::from_int_rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]).unwrap();
        assert_eq!(dz3.pullback_from_plane(&perm).unwrap(), OneForm::basis(4, 3).unwrap());
        let degenerate = LinearMap::from_int_rows(&[&[1, 0, 0, 0], &[1, 0, 0, 0], &[0, 0, 1, 0]]).unwrap();
        assert!(matches!(eta.pullback_from_plane(&degenerate), Err(FormError::RankDeficient { rank: 2, .. })));
    }

    #[test]
    fn dividing_out_hyperplanes() {
        let (w1, w2, _) = omega_parts();
        let q1 = w1.divide_by(&z(1)).unwrap();
        assert_eq!(q1.coefficient(0), &p4(&[(-1, &[0, 0, 1, 1])]));
        assert_eq!(q1.coefficient(2), &p4(&[(3, &[1, 0, 0, 1])]));
        assert_eq!(q1.coefficient(3), &p4(&[(-2, &[1, 0, 1, 0])]));
        let q2 = w2.divide_by(&z(2)).unwrap();
        assert_eq!(q2.coefficient(1), &p4(&[(-3, &[1, 0, 0, 1])]));
        match omega().divide_by(&z(4)) {
            Err(FormError::NotDivisible { slot, remainder }) => {
                // the dz1 coefficient already fails, before the dz2 one
                assert_eq!(slot, 0);
                assert_eq!(remainder, p4(&[(-1, &[0, 1, 2, 0])]));
            }
            other => panic!("expected non-divisibility, got {other:?}"),
        }
    }

    #[test]
    fn projective_ratio() {
        let w = omega();
        let two = w.scale(&Scalar::from_int(2));
        assert_eq!(two.projective_ratio(&w).unwrap(), Some(Scalar::new(1, 2).unwrap()));
        let (w1, w2, _) = omega_parts();
        assert_eq!(w1.projective_ratio(&w2).unwrap(), None);
        assert!(matches!(OneForm::zero(4).projective_ratio(&w), Err(FormError::ZeroForm)));
    }

    #[test]
    fn cartan_identity_on_omega() {
        // i_R dw = (d + 1) w for homogeneous w of degree d with i_R w = 0
        let w = omega();
        assert_eq!(w.exterior_derivative().radial_contraction(), w.scale(&Scalar::from_int(4)));
    }

    #[test]
    fn singular_ideal_vanishes_on_line() {
        let point = [Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::one()];
        assert!(omega()
            .singular_ideal()
            .generators()
            .iter()
            .all(|g| g.evaluate(&point).unwrap().is_zero()));
    }
    #[test]
    fn d_of_two_forms() {
        let w = omega();
        assert!(w.exterior_derivative().exterior_derivative().is_zero());
        // d(z1 z2 dz3∧dz4) = z2 dz1∧dz3∧dz4 + z1 dz2∧dz3∧dz4
        let mut eta = TwoForm::zero(4);
        eta.insert(2, 3, p4(&[(1, &[1, 1, 0, 0])]));
        let d = eta.exterior_derivative();
        assert_eq!(d.coefficient(0, 2, 3), z(2));
        assert_eq!(d.coefficient(1, 2, 3), z(1));
        // d(z2 dz1∧dz3) = -dz1∧dz2∧dz3
        let mut eta = TwoForm::zero(4);
        eta.insert(0, 2, z(2));
        assert_eq!(eta.exterior_derivative().coefficient(0, 1, 2), p4(&[(-1, &[0, 0, 0, 0])]));
    }

    #[test]
    fn two_form_pullback_commutes_with_d() {
        let m = LinearMap::from_int_rows(&[&[1, 2, 0, 0], &[0, 1, 0, -1], &[3, 0, 1, 0], &[0, 0, 1, 1]]).unwrap();
        let w = omega();
        let lhs = w.pullback_linear(&m).unwrap().exterior_derivative();
        let rhs = w.exterior_derivative().pullback_linear(&m).unwrap();
        assert_eq!(lhs, rhs);
        let swap = LinearMap::from_int_rows(&[&[0, 1], &[1, 0]]).unwrap();
        assert!(w.exterior_derivative().pullback_linear(&swap).is_err());
    }
}

