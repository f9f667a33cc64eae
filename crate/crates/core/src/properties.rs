//! Seeded randomized checks of the algebraic identities the engine relies on.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactalg::{LinearMap, Monomial, MonomialOrder, Polynomial, Scalar};
use crate::forms::{OneForm, Wedge};
use crate::ideals::{GroebnerBudget, Ideal, IdealError};
use crate::textio::{parse_one_form, parse_polynomial, print_canonical};

/// Names accepted by [`run_property`], in report order.
pub const PROPERTY_NAMES: [&str; 7] = ["d-squared", "leibniz", "euler", "cartan", "pullback", "groebner", "round-trip"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// Cases abandoned because a Gröbner computation ran out of budget.
    pub inconclusive: usize,
    pub first_failure: Option<String>,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.inconclusive == 0
    }
}

const N: usize = 4;

pub fn random_scalar(rng: &mut impl Rng) -> Scalar {
    Scalar::new(rng.random_range(-5..=5), rng.random_range(1..=3)).expect("nonzero denominator")
}

fn random_exponents(rng: &mut impl Rng, nvars: usize, degree: u32, exact: bool) -> Vec<u32> {
    let total = if exact { degree } else { rng.random_range(0..=degree) };
    let mut e = vec![0u32; nvars];
    for _ in 0..total {
        e[rng.random_range(0..nvars)] += 1;
    }
    e
}

/// Up to `max_terms` terms of total degree at most `max_degree`.
pub fn random_polynomial(rng: &mut impl Rng, nvars: usize, max_degree: u32, max_terms: usize) -> Polynomial {
    let k = rng.random_range(0..=max_terms);
    let terms = (0..k).map(|_| {
        let m = Monomial::from_exponents(&random_exponents(rng, nvars, max_degree, false)).expect("small exponents");
        (m, random_scalar(rng))
    });
    Polynomial::from_terms(nvars, terms.collect::<Vec<_>>()).expect("terms fit the ambient")
}

/// A homogeneous polynomial of the given degree (possibly zero).
pub fn random_homogeneous(rng: &mut impl Rng, nvars: usize, degree: u32, max_terms: usize) -> Polynomial {
    let k = rng.random_range(0..=max_terms);
    let terms = (0..k).map(|_| {
        let m = Monomial::from_exponents(&random_exponents(rng, nvars, degree, true)).expect("small exponents");
        (m, random_scalar(rng))
    });
    Polynomial::from_terms(nvars, terms.collect::<Vec<_>>()).expect("terms fit the ambient")
}

pub fn random_form(rng: &mut impl Rng, nvars: usize, max_degree: u32, max_terms: usize) -> OneForm {
    OneForm::new((0..nvars).map(|_| random_polynomial(rng, nvars, max_degree, max_terms)).collect()).expect("shared ambient")
}

pub fn random_homogeneous_form(rng: &mut impl Rng, nvars: usize, degree: u32, max_terms: usize) -> OneForm {
    OneForm::new((0..nvars).map(|_| random_homogeneous(rng, nvars, degree, max_terms)).collect()).expect("shared ambient")
}

pub fn random_matrix(rng: &mut impl Rng, n: usize) -> LinearMap {
    LinearMap::from_rows((0..n).map(|_| (0..n).map(|_| Scalar::from_int(rng.random_range(-2..=2))).collect()).collect())
        .expect("square")
}

fn check(failure: &mut Option<String>, ok: bool, describe: impl FnOnce() -> String) -> bool {
    if !ok && failure.is_none() {
        *failure = Some(describe());
    }
    ok
}

/// One case of a named property; `Ok(false)` is a counterexample, `Err` an exhausted budget.
fn run_case(name: &str, rng: &mut ChaCha8Rng, budget: GroebnerBudget, failure: &mut Option<String>) -> Result<bool, IdealError> {
    Ok(match name {
        "d-squared" => {
            let f = random_polynomial(rng, N, 4, 5);
            let w = random_form(rng, N, 3, 3);
            let ok_f = OneForm::exact(&f).exterior_derivative().is_zero();
            let ok_w = w.exterior_derivative().exterior_derivative().is_zero();
            check(failure, ok_f && ok_w, || format!("f = {f}, w = {w}"))
        }
        "leibniz" => {
            let f = random_polynomial(rng, N, 2, 3);
            let w = random_form(rng, N, 2, 3);
            let lhs = w.mul_polynomial(&f).expect("shared ambient").exterior_derivative();
            let rhs = OneForm::exact(&f).wedge(&w).try_add(&w.exterior_derivative().mul_polynomial(&f).expect("shared ambient")).expect("shared ambient");
            check(failure, lhs == rhs, || format!("f = {f}, w = {w}"))
        }
        "euler" => {
            let k = rng.random_range(0..=5);
            let f = random_homogeneous(rng, N, k, 6);
            let euler = f.gradient().iter().enumerate().fold(Polynomial::zero(N), |acc, (i, g)| {
                &acc + &(&Polynomial::var(N, i).expect("index") * g)
            });
            check(failure, euler == f.scale(&Scalar::from_int(k as i64)), || format!("f = {f}"))
        }
        "cartan" => {
            let d = rng.random_range(0..=3);
            let w = random_homogeneous_form(rng, N, d, 3);
            let lie = w.exterior_derivative().radial_contraction().try_add(&OneForm::exact(&w.radial_contraction())).expect("shared ambient");
            check(failure, lie == w.scale(&Scalar::from_int(d as i64 + 1)), || format!("w = {w}"))
        }
        "pullback" => {
            let m = random_matrix(rng, N);
            let w = random_form(rng, N, 2, 3);
            let f = random_polynomial(rng, N, 3, 4);
            let pulled = w.pullback_linear(&m).expect("square");
            let ok_d = pulled.exterior_derivative() == w.exterior_derivative().pullback_linear(&m).expect("square");
            let ok_exact = OneForm::exact(&f).pullback_linear(&m).expect("square") == OneForm::exact(&f.linear_substitute(&m).expect("square"));
            let ok_radial = pulled.radial_contraction() == w.radial_contraction().linear_substitute(&m).expect("square");
            check(failure, ok_d && ok_exact && ok_radial, || format!("w = {w}, f = {f}, M = {:?}", m.rows()))
        }
        "groebner" => {
            let n = 3;
            let k = rng.random_range(1..=3);
            let gens: Vec<Polynomial> = (0..k).map(|_| random_polynomial(rng, n, 2, 3)).collect();
            let ideal = Ideal::new(n, gens.clone()).expect("shared ambient");
            let g = ideal.groebner(MonomialOrder::DegRevLex, budget)?;
            let mut ok = g.verify_s_pairs() && g.is_reduced();
            for p in &gens {
                ok &= g.normal_form(p)?.is_zero();
            }
            ok &= g.as_ideal().groebner(MonomialOrder::DegRevLex, budget)?.polynomials() == g.polynomials();
            check(failure, ok, || format!("generators {}", ideal))
        }
        "round-trip" => {
            let p = random_polynomial(rng, N, 4, 6);
            let w = random_form(rng, N, 3, 3);
            let (pt, wt) = (print_canonical(&p), print_canonical(&w));
            let ok_p = parse_polynomial(&pt, Some(N)).is_ok_and(|q| q == p);
            let ok_w = parse_one_form(&wt, Some(N)).is_ok_and(|v| v == w);
            let cut = rng.random_range(0..=wt.len());
            let prefix: String = wt.chars().take(cut).collect();
            let result = parse_one_form(&prefix, Some(N));
            let dangling = prefix.trim_end().ends_with(['+', '-', '*', '^', '/', '('])
                || prefix.matches('(').count() != prefix.matches(')').count();
            let ok_prefix = !dangling || result.is_err();
            check(failure, ok_p && ok_w && ok_prefix, || format!("p = {pt}, w = {wt}, prefix = {prefix:?}"))
        }
        other => panic!("unknown property {other}"),
    })
}

/// Run `cases` seeded cases of one property. Unknown names return `None`.
pub fn run_property(name: &str, seed: u64, cases: usize, budget: GroebnerBudget) -> Option<PropertyOutcome> {
    let name = *PROPERTY_NAMES.iter().find(|n| **n == name)?;
    let offset = PROPERTY_NAMES.iter().position(|n| *n == name).expect("listed") as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(offset));
    let mut outcome = PropertyOutcome { name, cases, failures: 0, inconclusive: 0, first_failure: None };
    for _ in 0..cases {
        match run_case(name, &mut rng, budget, &mut outcome.first_failure) {
            Ok(true) => {}
            Ok(false) => outcome.failures += 1,
            Err(_) => outcome.inconclusive += 1,
        }
    }
    Some(outcome)
}

pub fn run_all(seed: u64, cases: usize, budget: GroebnerBudget) -> Vec<PropertyOutcome> {
    PROPERTY_NAMES.iter().map(|n| run_property(n, seed, cases, budget).expect("listed")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_a_short_run() {
        for outcome in run_all(7, 40, GroebnerBudget::default()) {
            assert!(outcome.passed(), "{outcome:?}");
        }
        assert!(run_property("nope", 0, 1, GroebnerBudget::default()).is_none());
    }

    #[test]
    fn deterministic_for_a_seed() {
        let mut a = ChaCha8Rng::seed_from_u64(3);
        let mut b = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(random_form(&mut a, 4, 3, 3), random_form(&mut b, 4, 3, 3));
    }
}
