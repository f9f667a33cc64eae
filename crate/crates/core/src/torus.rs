//! Diagonal one-parameter subgroups `t -> diag(t^n1, ..., t^nk)` acting on one-forms.
//!
//! A term `c z^e dz_i` is scaled by `t^(<n, e> + n_i)` under pullback, so a form splits into
//! eigencomponents by that weight. Projective limits pick the extremal part; the affine orbit
//! goes to zero at `t -> 0` exactly when every weight is positive.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::exactalg::{Monomial, Polynomial};
use crate::forms::OneForm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("the zero form has no weights")]
    ZeroForm,
    #[error("weight entries sum to {0}, expected 0")]
    NonzeroSum(i64),
    #[error("weight vector has {got} entries, form has {expected} variables")]
    Length { expected: usize, got: usize },
    #[error("integer overflow in lattice computation")]
    Overflow,
}

/// Exponents `(n_1, ..., n_k)` of a diagonal subgroup; entries sum to zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(Vec<i64>);

impl WeightVector {
    pub fn new(entries: Vec<i64>) -> Result<Self, TorusError> {
        let sum = entries.iter().try_fold(0i64, |a, &b| a.checked_add(b)).ok_or(TorusError::Overflow)?;
        if sum != 0 {
            return Err(TorusError::NonzeroSum(sum));
        }
        Ok(WeightVector(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negated(&self) -> WeightVector {
        WeightVector(self.0.iter().map(|x| -x).collect())
    }

    /// gcd of the entries is 1.
    pub fn is_primitive(&self) -> bool {
        self.0.iter().fold(0i64, |g, &x| num_integer::Integer::gcd(&g, &x)) == 1
    }

    fn check_len(&self, nvars: usize) -> Result<(), TorusError> {
        if self.0.len() == nvars {
            Ok(())
        } else {
            Err(TorusError::Length { expected: nvars, got: self.0.len() })
        }
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `<n, exponents(m)> + n_slot`.
pub fn monomial_weight(m: &Monomial, slot: usize, n: &WeightVector) -> i64 {
    let dot: i64 = n.0.iter().enumerate().map(|(i, x)| x * m.exponent(i) as i64).sum();
    dot + n.0[slot]
}

/// Nonzero eigencomponents keyed by weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDecomposition {
    parts: BTreeMap<i64, OneForm>,
}

impl WeightDecomposition {
    pub fn parts(&self) -> &BTreeMap<i64, OneForm> {
        &self.parts
    }

    pub fn weights(&self) -> Vec<i64> {
        self.parts.keys().copied().collect()
    }

    pub fn min_weight(&self) -> i64 {
        *self.parts.keys().next().expect("nonempty decomposition")
    }

    pub fn max_weight(&self) -> i64 {
        *self.parts.keys().next_back().expect("nonempty decomposition")
    }

    pub fn part(&self, weight: i64) -> Option<&OneForm> {
        self.parts.get(&weight)
    }

    /// Sum of all parts; equals the decomposed form.
    pub fn total(&self) -> OneForm {
        let mut it = self.parts.values();
        let first = it.next().expect("nonempty decomposition").clone();
        it.fold(first, |acc, p| acc.try_add(p).expect("parts share the ambient"))
    }
}

pub fn weight_decompose(form: &OneForm, n: &WeightVector) -> Result<WeightDecomposition, TorusError> {
    n.check_len(form.nvars())?;
    if form.is_zero() {
        return Err(TorusError::ZeroForm);
    }
    let nv = form.nvars();
    let mut buckets: BTreeMap<i64, Vec<Vec<(Monomial, crate::exactalg::Scalar)>>> = BTreeMap::new();
    for (slot, c) in form.coefficients().iter().enumerate() {
        for (m, a) in c.terms() {
            let w = monomial_weight(m, slot, n);
            let slots = buckets.entry(w).or_insert_with(|| vec![Vec::new(); nv]);
            slots[slot].push((*m, a.clone()));
        }
    }
    let parts = buckets
        .into_iter()
        .map(|(w, slots)| {
            let coeffs = slots
                .into_iter()
                .map(|t| Polynomial::from_terms(nv, t).expect("terms from a valid form"))
                .collect();
            (w, OneForm::new(coeffs).expect("ambient preserved"))
        })
        .collect();
    Ok(WeightDecomposition { parts })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Direction {
    ToZero,
    ToInfinity,
}

impl std::str::FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "0" | "zero" | "to-zero" | "toZero" => Ok(Direction::ToZero),
            "inf" | "infinity" | "to-infinity" | "toInfinity" => Ok(Direction::ToInfinity),
            other => Err(format!("unknown direction `{other}` (use zero or inf)")),
        }
    }
}

/// Projective limit of `lambda(t) . form`: the minimal-weight part as `t -> 0`, the maximal one as `t -> oo`.
pub fn limit_point(form: &OneForm, n: &WeightVector, direction: Direction) -> Result<OneForm, TorusError> {
    let dec = weight_decompose(form, n)?;
    let w = match direction {
        Direction::ToZero => dec.min_weight(),
        Direction::ToInfinity => dec.max_weight(),
    };
    Ok(dec.parts[&w].clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Destabilization {
    pub driven_to_zero: bool,
    pub min_weight: i64,
}

/// Hilbert-Mumford test along `n`: the affine orbit tends to 0 as `t -> 0` iff every weight is positive.
pub fn destabilizing_check(form: &OneForm, n: &WeightVector) -> Result<Destabilization, TorusError> {
    let min_weight = weight_decompose(form, n)?.min_weight();
    Ok(Destabilization { driven_to_zero: min_weight > 0, min_weight })
}

/// Basis, in Hermite normal form, of the zero-sum weight vectors under which every term of the
/// form has the same weight. Empty when only the trivial subgroup fixes it.
pub fn fixing_lattice(form: &OneForm) -> Result<Vec<WeightVector>, TorusError> {
    if form.is_zero() {
        return Err(TorusError::ZeroForm);
    }
    let nv = form.nvars();
    let term_vector = |m: &Monomial, slot: usize| -> Vec<i128> {
        (0..nv).map(|i| m.exponent(i) as i128 + i128::from(i == slot)).collect()
    };
    let mut terms = form
        .coefficients()
        .iter()
        .enumerate()
        .flat_map(|(slot, c)| c.terms().map(move |(m, _)| (*m, slot)));
    let (m0, s0) = terms.next().expect("nonzero form");
    let base = term_vector(&m0, s0);
    let mut rows: Vec<Vec<i128>> = vec![vec![1; nv]];
    for (m, s) in terms {
        let v = term_vector(&m, s);
        let diff: Vec<i128> = v.iter().zip(&base).map(|(a, b)| a - b).collect();
        if diff.iter().any(|&x| x != 0) && !rows.contains(&diff) {
            rows.push(diff);
        }
    }
    let kernel = integer_kernel(&rows, nv)?;
    let basis = hermite_normal_form(kernel)?;
    basis
        .into_iter()
        .map(|v| {
            let entries = v.into_iter().map(|x| i64::try_from(x).map_err(|_| TorusError::Overflow)).collect::<Result<_, _>>()?;
            WeightVector::new(entries)
        })
        .collect()
}

/// A Z-basis of `{x in Z^n : A x = 0}` by unimodular column operations on `A`, tracked on an identity block.
fn integer_kernel(a: &[Vec<i128>], n: usize) -> Result<Vec<Vec<i128>>, TorusError> {
    // rows of `work` are [A^T row | identity row]; row operations on it are column operations on A
    let r = a.len();
    let mut work: Vec<Vec<i128>> = (0..n)
        .map(|j| {
            let mut row: Vec<i128> = a.iter().map(|ar| ar[j]).collect();
            row.extend((0..n).map(|k| i128::from(k == j)));
            row
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..r {
        if pivot_row == n {
            break;
        }
        loop {
            // smallest nonzero |entry| at or below pivot_row
            let Some(best) = (pivot_row..n).filter(|&i| work[i][col] != 0).min_by_key(|&i| work[i][col].abs()) else {
                break;
            };
            work.swap(pivot_row, best);
            let mut done = true;
            for i in pivot_row + 1..n {
                if work[i][col] != 0 {
                    let q = work[i][col] / work[pivot_row][col];
                    let pivot = work[pivot_row].clone();
                    for (x, p) in work[i].iter_mut().zip(&pivot) {
                        *x = x.checked_sub(q.checked_mul(*p).ok_or(TorusError::Overflow)?).ok_or(TorusError::Overflow)?;
                    }
                    if work[i][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                pivot_row += 1;
                break;
            }
        }
    }
    Ok(work.into_iter().filter(|row| row[..r].iter().all(|&x| x == 0)).map(|row| row[r..].to_vec()).collect())
}

/// Row-style Hermite normal form with positive pivots and reduced entries above them; zero rows dropped.
fn hermite_normal_form(mut rows: Vec<Vec<i128>>) -> Result<Vec<Vec<i128>>, TorusError> {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    let sub = |target: &mut Vec<i128>, q: i128, src: &[i128]| -> Result<(), TorusError> {
        for (x, s) in target.iter_mut().zip(src) {
            *x = x.checked_sub(q.checked_mul(*s).ok_or(TorusError::Overflow)?).ok_or(TorusError::Overflow)?;
        }
        Ok(())
    };
    for col in 0..n {
        if pivot_row == m {
            break;
        }
        loop {
            let Some(best) = (pivot_row..m).filter(|&i| rows[i][col] != 0).min_by_key(|&i| rows[i][col].abs()) else {
                break;
            };
            rows.swap(pivot_row, best);
            let mut done = true;
            for i in pivot_row + 1..m {
                if rows[i][col] != 0 {
                    let q = rows[i][col] / rows[pivot_row][col];
                    let src = rows[pivot_row].clone();
                    sub(&mut rows[i], q, &src)?;
                    done &= rows[i][col] == 0;
                }
            }
            if done {
                break;
            }
        }
        if rows.get(pivot_row).is_some_and(|r| r[col] != 0) {
            if rows[pivot_row][col] < 0 {
                for x in rows[pivot_row].iter_mut() {
                    *x = -*x;
                }
            }
            let src = rows[pivot_row].clone();
            for i in 0..pivot_row {
                let q = rows[i][col].div_euclid(src[col]);
                sub(&mut rows[i], q, &src)?;
            }
            pivot_row += 1;
        }
    }
    rows.truncate(pivot_row);
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::test_support::{p4, z};
    use crate::exactalg::{LinearMap, Scalar};

    fn wv(e: [i64; 4]) -> WeightVector {
        WeightVector::new(e.to_vec()).unwrap()
    }

    fn parts() -> [OneForm; 3] {
        let f = |c: [Polynomial; 4]| OneForm::new(c.to_vec()).unwrap();
        let zero = || Polynomial::zero(4);
        [
            f([p4(&[(-1, &[1, 0, 1, 1])]), zero(), p4(&[(3, &[2, 0, 0, 1])]), p4(&[(-2, &[2, 0, 1, 0])])]),
            f([p4(&[(2, &[0, 2, 0, 1])]), p4(&[(-3, &[1, 1, 0, 1])]), zero(), p4(&[(1, &[1, 2, 0, 0])])]),
            f([p4(&[(-1, &[0, 1, 2, 0])]), p4(&[(2, &[1, 0, 2, 0])]), p4(&[(-1, &[1, 1, 1, 0])]), zero()]),
        ]
    }

    fn omega() -> OneForm {
        let [a, b, c] = parts();
        a.try_add(&b).unwrap().try_add(&c).unwrap()
    }

    fn add(a: &OneForm, b: &OneForm) -> OneForm {
        a.try_add(b).unwrap()
    }

    #[test]
    fn weights_of_single_terms() {
        let m = Monomial::from_exponents(&[1, 0, 1, 1]).unwrap();
        assert_eq!(monomial_weight(&m, 0, &wv([3, 1, -1, -3])), 2);
        let m = Monomial::from_exponents(&[0, 2, 0, 1]).unwrap();
        assert_eq!(monomial_weight(&m, 0, &wv([3, -1, -1, -1])), 0);
        assert_eq!(monomial_weight(&m, 2, &wv([0, 0, 0, 0])), 0);
        assert!(matches!(WeightVector::new(vec![1, 1, 0, 0]), Err(TorusError::NonzeroSum(2))));
    }

    #[test]
    fn decompositions_match_theorem_display() {
        let [w1, w2, w3] = parts();
        let w = omega();
        let d = weight_decompose(&w, &wv([3, 1, -1, -3])).unwrap();
        assert_eq!(d.weights(), vec![2]);
        assert_eq!(d.part(2), Some(&w));
        let d = weight_decompose(&w, &wv([3, -1, -1, -1])).unwrap();
        assert_eq!(d.weights(), vec![0, 4]);
        assert_eq!(d.part(4), Some(&w1));
        assert_eq!(d.part(0), Some(&add(&w2, &w3)));
        let d = weight_decompose(&w, &wv([1, 1, -1, -1])).unwrap();
        assert_eq!(d.weights(), vec![0, 2]);
        assert_eq!(d.part(2), Some(&w2));
        assert_eq!(d.part(0), Some(&add(&w1, &w3)));
        assert_eq!(d.total(), w);
    }

    #[test]
    fn limits() {
        let [w1, w2, w3] = parts();
        let w = omega();
        assert_eq!(limit_point(&w, &wv([3, -1, -1, -1]), Direction::ToInfinity).unwrap(), w1);
        assert_eq!(limit_point(&w, &wv([1, 1, -1, -1]), Direction::ToZero).unwrap(), add(&w1, &w3));
        assert_eq!(limit_point(&w, &wv([1, 1, 1, -3]), Direction::ToInfinity).unwrap(), w3);
        assert_eq!(limit_point(&w, &wv([1, 1, 1, -3]), Direction::ToZero).unwrap(), add(&w1, &w2));
        for d in [Direction::ToZero, Direction::ToInfinity] {
            assert_eq!(limit_point(&w, &wv([3, 1, -1, -3]), d).unwrap(), w);
        }
    }

    #[test]
    fn fixing_lattices() {
        let [w1, w2, _] = parts();
        assert_eq!(fixing_lattice(&omega()).unwrap(), vec![wv([3, 1, -1, -3])]);
        let l = fixing_lattice(&add(&w1, &w2)).unwrap();
        assert_eq!(l, vec![wv([1, 0, -1, 0]), wv([0, 1, 2, -3])]);
        let rot = OneForm::new(vec![z(2), -z(1), Polynomial::zero(4), Polynomial::zero(4)]).unwrap();
        assert_eq!(fixing_lattice(&rot).unwrap().len(), 3);
    }

    #[test]
    fn instability() {
        let w = omega();
        let n = wv([3, 1, -1, -3]);
        assert_eq!(destabilizing_check(&w, &n).unwrap(), Destabilization { driven_to_zero: true, min_weight: 2 });
        assert_eq!(
            destabilizing_check(&w, &wv([3, -1, -1, -1])).unwrap(),
            Destabilization { driven_to_zero: false, min_weight: 0 }
        );
        assert_eq!(
            destabilizing_check(&w, &n.negated()).unwrap(),
            Destabilization { driven_to_zero: false, min_weight: -2 }
        );
    }

    #[test]
    fn parts_are_eigenvectors() {
        let n = wv([3, -1, -1, -1]);
        let t = Scalar::new(2, 3).unwrap();
        let diag = LinearMap::diagonal(&n.entries().iter().map(|&e| t.pow(e as i32).unwrap()).collect::<Vec<_>>());
        for (w, p) in weight_decompose(&omega(), &n).unwrap().parts() {
            assert_eq!(p.pullback_linear(&diag).unwrap(), p.scale(&t.pow(*w as i32).unwrap()));
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(weight_decompose(&OneForm::zero(4), &wv([0; 4])), Err(TorusError::ZeroForm)));
        assert!(matches!(weight_decompose(&omega(), &WeightVector::new(vec![1, -1]).unwrap()), Err(TorusError::Length { .. })));
    }
}
