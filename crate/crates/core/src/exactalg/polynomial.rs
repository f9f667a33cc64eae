//! Sparse multivariate polynomials over the rationals.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::rational_gcd;
use super::{AlgebraError, LinearMap, Monomial, Scalar, MAX_VARS};

/// Result of a homogeneity query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial, which has no degree.
    Zero,
    Homogeneous(u32),
    Mixed,
}

impl Homogeneity {
    pub fn degree(self) -> Option<u32> {
        match self {
            Homogeneity::Homogeneous(d) => Some(d),
            _ => None,
        }
    }
}

/// A polynomial in `nvars` variables. Terms are kept sorted by descending degrevlex order
/// with no zero coefficients, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::monomial(nvars, Monomial::one(), c)
    }

    /// The variable `z_{i+1}` (zero-based index).
    pub fn var(nvars: usize, i: usize) -> Result<Self, AlgebraError> {
        if i >= nvars {
            return Err(AlgebraError::VariableOutOfRange { index: i, nvars });
        }
        Ok(Self::monomial(nvars, Monomial::var(i)?, Scalar::one()))
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Scalar) -> Self {
        debug_assert!(m.support_len() <= nvars);
        if c.is_zero() {
            Self::zero(nvars)
        } else {
            Polynomial { nvars, terms: vec![(m, c)] }
        }
    }

    /// Build from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        if nvars > MAX_VARS {
            return Err(AlgebraError::TooManyVariables(nvars));
        }
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            if m.support_len() > nvars {
                return Err(AlgebraError::VariableOutOfRange { index: m.support_len() - 1, nvars });
            }
            *acc.entry(m).or_insert_with(Scalar::zero) += &c;
        }
        Ok(Self::from_sorted_map(nvars, acc))
    }

    fn from_sorted_map(nvars: usize, acc: BTreeMap<Monomial, Scalar>) -> Self {
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { nvars, terms }
    }

    /// Terms already sorted descending and free of zeros.
    pub(crate) fn from_sorted_terms(nvars: usize, terms: Vec<(Monomial, Scalar)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending degrevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + ExactSizeIterator {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .binary_search_by(|(k, _)| m.cmp(k))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Scalar::zero())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    /// Smallest term under degrevlex.
    pub fn trailing_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.last().map(|(m, c)| (m, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => Homogeneity::Zero,
            Some(d) if degs.all(|e| e == d) => Homogeneity::Homogeneous(d),
            Some(_) => Homogeneity::Mixed,
        }
    }

    /// The common degree, if the polynomial is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        self.homogeneity().degree()
    }

    fn check_ambient(&self, other: &Polynomial) -> Result<(), AlgebraError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(AlgebraError::AmbientMismatch { left: self.nvars, right: other.nvars })
        }
    }

    /// Embed into a ring with `nvars >= self.nvars` variables.
    pub fn with_nvars(&self, nvars: usize) -> Result<Polynomial, AlgebraError> {
        if nvars < self.nvars {
            if self.terms.iter().any(|(m, _)| m.support_len() > nvars) {
                return Err(AlgebraError::AmbientMismatch { left: self.nvars, right: nvars });
            }
        } else if nvars > MAX_VARS {
            return Err(AlgebraError::TooManyVariables(nvars));
        }
        Ok(Polynomial { nvars, terms: self.terms.clone() })
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let neg = |c: &Scalar| if negate_other { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0, neg(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_other { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, neg(c))));
        Polynomial { nvars: self.nvars, terms: out }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_ambient(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_ambient(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.nvars));
        }
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(mb)?;
                let c = ca * cb;
                match acc.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += &c;
                    }
                }
            }
        }
        Ok(Self::from_sorted_map(self.nvars, acc))
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    /// Multiply by `c * m`; degrevlex is multiplicative so the order is preserved.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Result<Polynomial, AlgebraError> {
        if c.is_zero() {
            return Ok(Polynomial::zero(self.nvars));
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, a)| Ok((k.checked_mul(m)?, a * c)))
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        Ok(Polynomial { nvars: self.nvars, terms })
    }

    pub fn pow(&self, exp: u32) -> Result<Polynomial, AlgebraError> {
        let mut result = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Formal partial derivative with respect to the zero-based variable `i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Polynomial, AlgebraError> {
        if i >= self.nvars {
            return Err(AlgebraError::VariableOutOfRange { index: i, nvars: self.nvars });
        }
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| m.differentiate(i).map(|(e, m2)| (m2, c * &Scalar::from_int(e as i64))));
        Polynomial::from_terms(self.nvars, terms)
    }

    /// All partial derivatives, in variable order.
    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars)
            .map(|i| self.partial_derivative(i).expect("index in range"))
            .collect()
    }

    /// `p(M z)` for a square matrix of the ambient size.
    pub fn linear_substitute(&self, map: &LinearMap) -> Result<Polynomial, AlgebraError> {
        if !map.is_square() {
            return Err(AlgebraError::ShapeMismatch(format!(
                "substitution needs a square matrix, got {}x{}",
                map.rows(),
                map.cols()
            )));
        }
        self.substitute_map(map)
    }

    /// `p(M z)` where `M` is `nvars x k`; the result lives in `k` variables.
    pub fn substitute_map(&self, map: &LinearMap) -> Result<Polynomial, AlgebraError> {
        if map.rows() != self.nvars {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{}x{} matrix does not act on {} variables",
                map.rows(),
                map.cols(),
                self.nvars
            )));
        }
        let target = map.cols();
        if target > MAX_VARS {
            return Err(AlgebraError::TooManyVariables(target));
        }
        let images: Vec<Polynomial> = (0..self.nvars)
            .map(|i| {
                let terms = (0..target).map(|j| (Monomial::var(j).expect("j < MAX_VARS"), map.get(i, j).clone()));
                Polynomial::from_terms(target, terms)
            })
            .collect::<Result<_, _>>()?;
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(target)]; self.nvars];
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, image) in images.iter().enumerate() {
                let e = m.exponent(i) as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().expect("nonempty").try_mul(image)?;
                    powers[i].push(next);
                }
                if e > 0 {
                    term = term.try_mul(&powers[i][e])?;
                }
            }
            out = out.try_add(&term)?;
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar, AlgebraError> {
        if point.len() != self.nvars {
            return Err(AlgebraError::ShapeMismatch(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    v *= &x.pow(e as i32).expect("nonnegative exponent");
                }
            }
            total += &v;
        }
        Ok(total)
    }

    /// Rational content: gcd of numerators over lcm of denominators, signed like the leading
    /// coefficient. Zero for the zero polynomial.
    pub fn content(&self) -> Scalar {
        let g = self.terms.iter().fold(Scalar::zero(), |g, (_, c)| rational_gcd(&g, c));
        match self.leading_term() {
            Some((_, c)) if c.is_negative() => -g,
            _ => g,
        }
    }

    /// Integer coefficients with gcd 1 and a positive leading coefficient.
    pub fn primitive_part(&self) -> Polynomial {
        let c = self.content();
        match c.recip() {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading_term().and_then(|(_, c)| c.recip()) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter().map(|(m, _)| *m);
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(first, |g, m| g.gcd(&m)),
        }
    }

    /// Divide every term by a monomial that divides all of them.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| k.checked_div(m).map(|q| (q, c.clone())))
            .collect::<Option<Vec<_>>>()?;
        Some(Polynomial { nvars: self.nvars, terms })
    }

    /// Division with remainder by a single polynomial under degrevlex. The remainder is zero
    /// exactly when `divisor` divides `self`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial), AlgebraError> {
        self.check_ambient(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(AlgebraError::DivisionByZero)?;
        let (lm, lc) = (*lm, lc.clone());
        let mut quotient = Vec::new();
        let mut remainder = Vec::new();
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.first().cloned() {
            match m.checked_div(&lm) {
                Some(q) => {
                    let coef = &c / &lc;
                    p = p.merge(&divisor.mul_term(&q, &coef)?, true);
                    quotient.push((q, coef));
                }
                None => {
                    remainder.push((m, c));
                    p.terms.remove(0);
                }
            }
        }
        Ok((
            Polynomial::from_sorted_terms(self.nvars, quotient),
            Polynomial::from_sorted_terms(self.nvars, remainder),
        ))
    }

    /// Exact quotient, if `divisor` divides `self`.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Option<Polynomial>, AlgebraError> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// `Some(c)` with `other = c * self` when the two are scalar multiples (both nonzero).
    pub fn proportionality(&self, other: &Polynomial) -> Option<Scalar> {
        if self.is_zero() || other.is_zero() || self.terms.len() != other.terms.len() {
            return None;
        }
        let c = &other.terms[0].1 / &self.terms[0].1;
        let same = self
            .terms
            .iter()
            .zip(&other.terms)
            .all(|((ma, ca), (mb, cb))| ma == mb && &(ca * &c) == cb);
        same.then_some(c)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    /// Panics on an ambient mismatch; see [`Polynomial::try_add`].
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial ambient mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial ambient mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial ambient mismatch")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
