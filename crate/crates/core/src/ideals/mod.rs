//! Polynomial ideals, Gröbner bases, and radical-membership tests for singular-set claims.
//!
//! Varieties are compared as affine cones. All ideals built from foliation forms are
//! homogeneous, so cone equality is the same as equality of the projective zero sets.

mod groebner;

use std::fmt;

use thiserror::Error;

use crate::exactalg::{AlgebraError, Monomial, MonomialOrder, Polynomial, Scalar, MAX_VARS};

pub use groebner::GroebnerBudget;
use groebner::{buchberger_terms, from_terms, reduce, s_pairs_reduce, to_terms, Meter, Terms};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("inconclusive: {reason}")]
    Inconclusive { reason: String },
    #[error("no room for the auxiliary variable: ambient already has {0} variables")]
    NoAuxiliaryVariable(usize),
}

/// An ideal given by generators, stored primitive with positive leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ideal {
    nvars: usize,
    generators: Vec<Polynomial>,
}

impl Ideal {
    /// Zero generators are dropped, the rest normalized and deduplicated in order.
    /// An empty generator list is the zero ideal.
    pub fn new(nvars: usize, generators: Vec<Polynomial>) -> Result<Self, IdealError> {
        if nvars > MAX_VARS {
            return Err(AlgebraError::TooManyVariables(nvars).into());
        }
        let mut out: Vec<Polynomial> = Vec::with_capacity(generators.len());
        for g in generators {
            if g.nvars() != nvars {
                return Err(AlgebraError::AmbientMismatch { left: nvars, right: g.nvars() }.into());
            }
            if g.is_zero() {
                continue;
            }
            let g = g.primitive_part();
            if !out.contains(&g) {
                out.push(g);
            }
        }
        Ok(Ideal { nvars, generators: out })
    }

    pub fn unit(nvars: usize) -> Self {
        Ideal { nvars, generators: vec![Polynomial::one(nvars)] }
    }

    /// `(z_{i+1} : i in vars)`.
    pub fn coordinate(nvars: usize, vars: &[usize]) -> Result<Self, IdealError> {
        let gens = vars.iter().map(|&i| Polynomial::var(nvars, i)).collect::<Result<_, _>>()?;
        Self::new(nvars, gens)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    fn check_ambient(&self, other: &Ideal) -> Result<(), IdealError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(AlgebraError::AmbientMismatch { left: self.nvars, right: other.nvars }.into())
        }
    }

    /// Pairwise products of generators; its zero set is the union of the two zero sets.
    pub fn product(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        self.check_ambient(other)?;
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a.try_mul(b)?);
            }
        }
        Ideal::new(self.nvars, gens)
    }

    /// Product of a nonempty list of ideals.
    pub fn product_all<'a>(ideals: impl IntoIterator<Item = &'a Ideal>) -> Result<Ideal, IdealError> {
        let mut it = ideals.into_iter();
        let first = it.next().ok_or_else(|| AlgebraError::ShapeMismatch("empty product of ideals".into()))?;
        it.try_fold(first.clone(), |acc, i| acc.product(i))
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        self.check_ambient(other)?;
        let gens = self.generators.iter().chain(&other.generators).cloned().collect();
        Ideal::new(self.nvars, gens)
    }

    pub fn groebner(&self, order: MonomialOrder, budget: GroebnerBudget) -> Result<GroebnerBasis, IdealError> {
        buchberger(self, order, budget)
    }

    /// Strict ideal membership.
    pub fn contains(&self, f: &Polynomial, budget: GroebnerBudget) -> Result<bool, IdealError> {
        self.groebner(MonomialOrder::DegRevLex, budget)?.contains(f)
    }

    /// Does `f` vanish on the zero set of this ideal?
    pub fn radical_contains(&self, f: &Polynomial, budget: GroebnerBudget) -> Result<bool, IdealError> {
        self.groebner(MonomialOrder::DegRevLex, budget)?.radical_contains(f, budget)
    }

    /// Compare zero sets of `self` and `other`.
    pub fn variety_compare(&self, other: &Ideal, budget: GroebnerBudget) -> Result<VarietyComparison, IdealError> {
        self.check_ambient(other)?;
        let gl = self.groebner(MonomialOrder::DegRevLex, budget)?;
        let gr = other.groebner(MonomialOrder::DegRevLex, budget)?;
        // V(self) ⊆ V(other) iff every generator of other lies in rad(self)
        let left_witness = first_outside(&gl, other, budget)?;
        let right_witness = first_outside(&gr, self, budget)?;
        let relation = match (&left_witness, &right_witness) {
            (None, None) => VarietyRelation::Equal,
            (None, Some(_)) => VarietyRelation::LeftInRight,
            (Some(_), None) => VarietyRelation::RightInLeft,
            (Some(_), Some(_)) => VarietyRelation::Incomparable,
        };
        Ok(VarietyComparison { relation, left_witness, right_witness })
    }

    pub fn variety_equals(&self, other: &Ideal, budget: GroebnerBudget) -> Result<bool, IdealError> {
        Ok(self.variety_compare(other, budget)?.relation == VarietyRelation::Equal)
    }
}

fn first_outside(g: &GroebnerBasis, other: &Ideal, budget: GroebnerBudget) -> Result<Option<Polynomial>, IdealError> {
    for f in other.generators() {
        if !g.radical_contains(f, budget)? {
            return Ok(Some(f.clone()));
        }
    }
    Ok(None)
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Ideal").field(&self.generators).finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub enum VarietyRelation {
    Equal,
    LeftInRight,
    RightInLeft,
    Incomparable,
}

/// Outcome of a zero-set comparison. `left_witness` is a generator of the right ideal that
/// does not vanish on the left zero set, and symmetrically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyComparison {
    pub relation: VarietyRelation,
    pub left_witness: Option<Polynomial>,
    pub right_witness: Option<Polynomial>,
}

/// A reduced Gröbner basis with monic leading coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    elements: Vec<Terms>,
}

/// Reduced Gröbner basis of `ideal` in the given order.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder, budget: GroebnerBudget) -> Result<GroebnerBasis, IdealError> {
    let mut meter = Meter::new(budget);
    let gens = ideal.generators.iter().map(|g| to_terms(g, order)).collect();
    let elements = buchberger_terms(Vec::new(), gens, order, &mut meter)?;
    let gb = GroebnerBasis { nvars: ideal.nvars, order, elements };
    debug_assert!(gb.elements.len() > 16 || gb.verify_s_pairs());
    Ok(gb)
}

impl GroebnerBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0][0].0.is_one()
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.elements.iter().map(|t| from_terms(self.nvars, t)).collect()
    }

    /// Leading monomials in the basis order.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|t| t[0].0).collect()
    }

    pub fn as_ideal(&self) -> Ideal {
        Ideal::new(self.nvars, self.polynomials()).expect("basis shares the ambient")
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, IdealError> {
        if f.nvars() != self.nvars {
            return Err(AlgebraError::AmbientMismatch { left: self.nvars, right: f.nvars() }.into());
        }
        let mut meter = Meter::new(GroebnerBudget::UNLIMITED);
        let r = reduce(to_terms(f, self.order), &self.elements, self.order, &mut meter)?;
        Ok(from_terms(self.nvars, &r))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, IdealError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Rabinowitsch: `f` vanishes on V(G) iff `1` lies in `G + (1 - y f)` with a fresh last variable `y`.
    pub fn radical_contains(&self, f: &Polynomial, budget: GroebnerBudget) -> Result<bool, IdealError> {
        if self.contains(f)? {
            return Ok(true);
        }
        let n = self.nvars;
        if n >= MAX_VARS {
            return Err(IdealError::NoAuxiliaryVariable(n));
        }
        let lift = |p: &Polynomial| p.with_nvars(n + 1);
        let known = self
            .polynomials()
            .iter()
            .map(|p| Ok(to_terms(&lift(p)?, self.order)))
            .collect::<Result<Vec<_>, IdealError>>()?;
        let y = Polynomial::var(n + 1, n)?;
        let aux = &Polynomial::one(n + 1) - &(&y * &lift(f)?);
        let mut meter = Meter::new(budget);
        let out = buchberger_terms(known, vec![to_terms(&aux, self.order)], self.order, &mut meter)?;
        Ok(out.len() == 1 && out[0][0].0.is_one())
    }

    /// Every S-polynomial of the basis reduces to zero.
    pub fn verify_s_pairs(&self) -> bool {
        s_pairs_reduce(&self.elements, self.order)
    }

    /// The basis is reduced: leading monomials pairwise non-dividing, tails irreducible, monic.
    pub fn is_reduced(&self) -> bool {
        self.elements.iter().enumerate().all(|(i, g)| {
            g[0].1 == Scalar::one()
                && g.iter().all(|(m, _)| {
                    self.elements.iter().enumerate().all(|(k, h)| k == i || !h[0].0.divides(m))
                })
        })
    }
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroebnerBasis").field("order", &self.order).field("basis", &self.polynomials()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::test_support::{p4, pn, z};

    fn budget() -> GroebnerBudget {
        GroebnerBudget::default()
    }

    fn twisted_cubic() -> Ideal {
        Ideal::new(4, vec![
            p4(&[(1, &[0, 2, 0, 0]), (-2, &[1, 0, 1, 0])]),
            p4(&[(3, &[1, 0, 0, 1]), (-1, &[0, 1, 1, 0])]),
            p4(&[(2, &[0, 0, 2, 0]), (-3, &[0, 1, 0, 1])]),
        ])
        .unwrap()
    }

    #[test]
    fn generators_are_normalized() {
        let i = Ideal::new(4, vec![p4(&[(-2, &[1]), (4, &[0, 1])]), Polynomial::zero(4), p4(&[(1, &[1]), (-2, &[0, 1])])]).unwrap();
        assert_eq!(i.generators(), &[p4(&[(1, &[1]), (-2, &[0, 1])])]);
    }

    #[test]
    fn coordinate_ideal_is_its_own_basis() {
        let gb = buchberger(&Ideal::coordinate(4, &[0, 1]).unwrap(), MonomialOrder::DegRevLex, budget()).unwrap();
        assert_eq!(gb.polynomials(), vec![z(1), z(2)]);
    }

    #[test]
    fn twisted_cubic_basis_matches_oracle() {
        let gb = buchberger(&twisted_cubic(), MonomialOrder::DegRevLex, budget()).unwrap();
        let half = Scalar::new(3, 2).unwrap();
        let expected = vec![
            p4(&[(1, &[0, 2, 0, 0]), (-2, &[1, 0, 1, 0])]),
            p4(&[(1, &[0, 1, 1, 0]), (-3, &[1, 0, 0, 1])]),
            &p4(&[(1, &[0, 0, 2, 0])]) - &p4(&[(1, &[0, 1, 0, 1])]).scale(&half),
        ];
        assert_eq!(gb.polynomials(), expected);
        assert!(gb.verify_s_pairs());
        assert!(gb.is_reduced());
        let f = p4(&[(1, &[0, 2, 0, 0]), (-2, &[1, 0, 1, 0]), (1, &[0, 0, 0, 3])]);
        assert_eq!(gb.normal_form(&f).unwrap(), p4(&[(1, &[0, 0, 0, 3])]));
    }

    #[test]
    fn rabinowitsch_unit() {
        let y = pn(5, &[(1, &[0, 0, 0, 0, 1])]);
        let z1 = pn(5, &[(1, &[1])]);
        let i = Ideal::new(5, vec![z1.clone(), &Polynomial::one(5) - &(&z1 * &y)]).unwrap();
        let gb = buchberger(&i, MonomialOrder::DegRevLex, budget()).unwrap();
        assert!(gb.is_unit());
        assert_eq!(gb.polynomials(), vec![Polynomial::one(5)]);
    }

    #[test]
    fn normal_forms() {
        let gb = buchberger(&Ideal::coordinate(4, &[0, 1]).unwrap(), MonomialOrder::DegRevLex, budget()).unwrap();
        assert!(gb.normal_form(&(&z(1) * &z(2))).unwrap().is_zero());
        let gb1 = buchberger(&Ideal::coordinate(4, &[0]).unwrap(), MonomialOrder::DegRevLex, budget()).unwrap();
        assert_eq!(gb1.normal_form(&Polynomial::one(4)).unwrap(), Polynomial::one(4));
    }

    #[test]
    fn membership() {
        let i = Ideal::coordinate(4, &[0, 1]).unwrap();
        assert!(i.contains(&p4(&[(1, &[2, 0, 1, 0])]), budget()).unwrap());
        assert!(!i.contains(&z(4), budget()).unwrap());
        let sq = Ideal::new(4, vec![&z(1) * &z(1)]).unwrap();
        assert!(!sq.contains(&z(1), budget()).unwrap());
        assert!(sq.radical_contains(&z(1), budget()).unwrap());
        assert!(!i.radical_contains(&z(4), budget()).unwrap());
    }

    #[test]
    fn products() {
        let a = Ideal::coordinate(4, &[0, 1]).unwrap();
        let b = Ideal::coordinate(4, &[2, 3]).unwrap();
        let ab = a.product(&b).unwrap();
        assert_eq!(ab.generators(), &[&z(1) * &z(3), &z(1) * &z(4), &z(2) * &z(3), &z(2) * &z(4)]);
        assert_eq!(a.product(&Ideal::unit(4)).unwrap(), a);
    }

    #[test]
    fn variety_relations() {
        let z1 = Ideal::coordinate(4, &[0]).unwrap();
        let z1sq = Ideal::new(4, vec![&z(1) * &z(1)]).unwrap();
        assert_eq!(z1.variety_compare(&z1sq, budget()).unwrap().relation, VarietyRelation::Equal);
        let line = Ideal::coordinate(4, &[0, 1]).unwrap();
        let cmp = line.variety_compare(&z1, budget()).unwrap();
        assert_eq!(cmp.relation, VarietyRelation::LeftInRight);
        assert_eq!(cmp.right_witness, Some(z(2)));
        let other = Ideal::coordinate(4, &[2, 3]).unwrap();
        assert_eq!(line.variety_compare(&other, budget()).unwrap().relation, VarietyRelation::Incomparable);
    }

    #[test]
    fn lex_basis_of_twisted_cubic() {
        let gb = buchberger(&twisted_cubic(), MonomialOrder::Lex, budget()).unwrap();
        assert!(gb.verify_s_pairs());
        assert!(gb.is_reduced());
        for g in twisted_cubic().generators() {
            assert!(gb.contains(g).unwrap());
        }
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        let tight = GroebnerBudget { max_pairs: 1, max_reductions: 1 };
        assert!(matches!(buchberger(&twisted_cubic(), MonomialOrder::DegRevLex, tight), Err(IdealError::Inconclusive { .. })));
    }
}
