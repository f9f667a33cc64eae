//! Acceptance criteria 1-12. Prints one PASS/FAIL line per criterion and exits nonzero when a
//! criterion fails for a reason other than the documented shape-2/3 singular-set discrepancy.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use folium::catalog::{
    boundary_containment, boundary_equality, complete_from_euler, dimension_formula, family_logarithmic, family_rational, first_integral_claim, log_claim,
    named_form, seeded_boundary_shape, seeded_four_planes, singular_set_claim, special_boundary_shape, CatalogError, ClaimStatus, EulerCompletion, Outcome,
    LEDGER_SEED,
};
use folium::exactalg::{Polynomial, Scalar};
use folium::forms::OneForm;
use folium::ideals::{GroebnerBudget, Ideal, VarietyRelation};
use folium::integrals::{build_log_form, is_first_integral, verify_log_decomposition};
use folium::properties::run_all;
use folium::textio::parse_polynomial;
use folium::torus::{destabilizing_check, fixing_lattice, limit_point, weight_decompose, Direction, WeightVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria whose failure is known and recorded, with the sub-claims expected to fail.
const KNOWN_FAILURES: &[(u8, &[&str])] = &[(6, &["shape 2 generic equality", "shape 3 generic equality"])];

type Verdict = Result<String, Vec<String>>;

struct Check {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check { failures: Vec::new(), notes: Vec::new() }
    }

    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    fn finish(self) -> Verdict {
        if self.failures.is_empty() {
            Ok(self.notes.join("; "))
        } else {
            Err(self.failures)
        }
    }
}

fn form(key: &str) -> OneForm {
    named_form(key).unwrap_or_else(|e| panic!("{key}: {e}")).form
}

fn poly(text: &str) -> Polynomial {
    parse_polynomial(text, Some(4)).unwrap()
}

fn line() -> Ideal {
    Ideal::coordinate(4, &[1, 2]).unwrap()
}

fn sing_equal(w: &OneForm, claim: &Ideal, budget: GroebnerBudget) -> bool {
    matches!(w.singular_ideal().variety_compare(claim, budget), Ok(c) if c.relation == VarietyRelation::Equal)
}

fn weights(v: [i64; 4]) -> WeightVector {
    WeightVector::new(v.to_vec()).unwrap()
}

const SUMS: [&str; 4] = ["omega", "omega12", "omega13", "omega23"];

fn criterion1(_: GroebnerBudget) -> Verdict {
    let mut c = Check::new();
    for key in SUMS {
        let w = form(key);
        c.expect(w.check_projective().foliation_degree == Some(2), format!("{key} is not projective of degree 2"));
        c.expect(w.is_integrable(), format!("{key} is not integrable"));
    }
    let sum = form("omega1").try_add(&form("omega2")).unwrap().try_add(&form("omega3")).unwrap();
    c.expect(sum == form("omega"), "omega != omega1 + omega2 + omega3");
    c.finish()
}

fn criterion2(_: GroebnerBudget) -> Verdict {
    let mut c = Check::new();
    let w = form("omega");
    let lambdas = [[3, -1, -1, -1], [1, 1, -1, -1], [1, 1, 1, -3]];
    let rest = ["omega23", "omega13", "omega12"];
    for (i, l) in lambdas.into_iter().enumerate() {
        let n = weights(l);
        let own = form(&format!("omega{}", i + 1));
        let dec = weight_decompose(&w, &n).unwrap();
        c.expect(dec.weights().len() == 2, format!("lambda{} gives weights {:?}", i + 1, dec.weights()));
        c.expect(dec.part(dec.max_weight()) == Some(&own), format!("lambda{}: top part is not omega{}", i + 1, i + 1));
        c.expect(dec.part(dec.min_weight()) == Some(&form(rest[i])), format!("lambda{}: bottom part is not {}", i + 1, rest[i]));
        c.expect(limit_point(&w, &n, Direction::ToInfinity).unwrap() == own, format!("lambda{} limit at infinity", i + 1));
        c.expect(limit_point(&w, &n, Direction::ToZero).unwrap() == form(rest[i]), format!("lambda{} limit at zero", i + 1));
    }
    let d = destabilizing_check(&w, &weights([3, 1, -1, -3])).unwrap();
    c.expect(d.driven_to_zero && d.min_weight == 2, format!("destabilizing check gave {d:?}"));
    let lattice = fixing_lattice(&w).unwrap();
    c.expect(lattice == vec![weights([3, 1, -1, -3])], format!("fixing lattice {lattice:?}"));
    c.finish()
}

fn criterion3(budget: GroebnerBudget) -> Verdict {
    let mut c = Check::new();
    for key in SUMS {
        let claim = singular_set_claim(key).unwrap().unwrap();
        c.expect(sing_equal(&form(key), &claim, budget), format!("Sing({key}) differs from the recorded union"));
    }
    c.finish()
}

fn criterion4(_: GroebnerBudget) -> Verdict {
    let mut c = Check::new();
    for key in SUMS.into_iter().chain(["omega1-over-z1", "omega2-over-z2", "omega3-over-z3"]) {
        let pair = first_integral_claim(key).unwrap().unwrap();
        c.expect(is_first_integral(&form(key), &pair).unwrap().holds, format!("{key}: recorded first integral fails"));
    }
    for k in 1..=3 {
        let divided = form(&format!("omega{k}")).divide_by(&Polynomial::var(4, k - 1).unwrap()).unwrap();
        c.expect(divided == form(&format!("omega{k}-over-z{k}")), format!("omega{k}/z{k}"));
    }
    c.finish()
}

fn criterion5(_: GroebnerBudget) -> Verdict {
    let mut c = Check::new();
    for key in ["omega12", "omega13", "omega23"] {
        let data = log_claim(key).unwrap().unwrap();
        let check = verify_log_decomposition(&form(key), &data).unwrap();
        match check.ratio {
            Some(r) => c.note(format!("{key} ratio {r}")),
            None => c.expect(false, format!("{key} is not proportional to its logarithmic product")),
        }
    }
    c.finish()
}

fn criterion6(budget: GroebnerBudget) -> Verdict {
    let mut c = Check::new();
    let data = seeded_four_planes(LEDGER_SEED).unwrap();
    let sing = build_log_form(&data).singular_ideal();
    let l = data.factors();
    for i in 0..4 {
        for j in i + 1..4 {
            let pair = Ideal::new(4, vec![l[i].clone(), l[j].clone()]).unwrap();
            let inside = sing.generators().iter().all(|g| pair.radical_contains(g, budget).unwrap_or(false));
            c.expect(inside, format!("V(L{}, L{}) not in Sing", i + 1, j + 1));
        }
    }
    let shape1 = seeded_boundary_shape(1, LEDGER_SEED + 1).unwrap();
    c.expect(verified(boundary_equality(&shape1, budget)), "shape 1 generic equality");
    for index in [2u8, 3] {
        let seeded = seeded_boundary_shape(index, LEDGER_SEED + index as u64).unwrap();
        c.expect(verified(boundary_containment(&seeded, budget)), format!("shape {index} containment"));
        let special = special_boundary_shape(index).unwrap();
        c.expect(verified(boundary_equality(&special, budget)), format!("shape {index} special equality"));
        c.expect(verified(boundary_equality(&seeded, budget)), format!("shape {index} generic equality"));
    }
    c.finish()
}

fn verified(r: Result<Outcome, CatalogError>) -> bool {
    matches!(r, Ok((ClaimStatus::Verified, _)))
}

fn criterion7(budget: GroebnerBudget) -> Verdict {
    let mut c = Check::new();
    for k in 1..=3 {
        let key = format!("omegaF{k}");
        let w = form(&key);
        c.expect(w.check_projective().passes(), format!("{key} projectivity"));
        c.expect(w.is_integrable(), format!("{key} integrability"));
        c.expect(sing_equal(&w, &line(), budget), format!("{key} singular set"));
        let pair = first_integral_claim(&key).unwrap().unwrap();
        c.expect(pair.denominator() == &poly("z3^3"), format!("{key} denominator"));
        c.expect(is_first_integral(&w, &pair).unwrap().holds, format!("{key} first integral"));
    }
    let pulled = form("nu1").pullback_from_plane(&folium::catalog::drop_last_coordinate()).unwrap();
    match form("omegaF3").projective_ratio(&pulled).unwrap() {
        Some(r) => c.note(format!("omegaF3 = {r} x pullback of nu1")),
        None => c.expect(false, "omegaF3 is not the pullback of nu1"),
    }
    c.finish()
}

fn seeded_p(rng: &mut ChaCha8Rng, s: u32) -> Vec<Scalar> {
    let mut coeffs: Vec<Scalar> = (0..=s).map(|_| Scalar::from_int(rng.random_range(-3..=3))).collect();
    while coeffs[s as usize].is_zero() {
        coeffs[s as usize] = Scalar::from_int(rng.random_range(-3..=3));
    }
    coeffs
}

fn criterion8(budget: GroebnerBudget) -> Verdict {
    let mut c = Check::new();
    let mut rng = ChaCha8Rng::seed_from_u64(LEDGER_SEED);
    for s in 3..=5u32 {
        for a in [0i64, 1] {
            let coeffs = seeded_p(&mut rng, s);
            let m = family_rational(s, Scalar::from_int(a), &coeffs).unwrap();
            let tag = format!("s={s}, a={a}");
            c.expect(m.form.check_projective().foliation_degree == Some(s), format!("{tag}: projectivity"));
            c.expect(m.form.is_integrable(), format!("{tag}: integrability"));
            c.expect(is_first_integral(&m.form, &m.first_integral).unwrap().holds, format!("{tag}: first integral"));
            c.expect(sing_equal(&m.form, &line(), budget), format!("{tag}: singular set"));
            if a == 0 {
                c.expect(m.form.coefficient(3).is_zero(), format!("{tag}: dz4 coefficient"));
            }
        }
    }
    c.finish()
}

fn criterion9(budget: GroebnerBudget) -> Verdict {
    let mut c = Check::new();
    let mut rng = ChaCha8Rng::seed_from_u64(LEDGER_SEED + 9);
    for _ in 0..3 {
        let shape = [0; 3].map(|_| rng.random_range(1..=2u32));
        let n = shape.iter().sum::<u32>() as i64;
        let k = rng.random_range(1..=2i64);
        let l2 = rng.random_range(1..k * n);
        let lambdas = [-k, l2, k * n - l2].map(Scalar::from_int);
        let tag = format!("s={shape:?}, lambda=({}, {}, {})", -k, l2, k * n - l2);
        let m = family_logarithmic(shape, Scalar::one(), lambdas).unwrap();
        c.expect(m.form.is_integrable(), format!("{tag}: integrability"));
        c.expect(sing_equal(&m.form, &line(), budget), format!("{tag}: singular set"));
        match &m.first_integral {
            Some(p) => {
                c.expect(is_first_integral(&m.form, p).unwrap().holds, format!("{tag}: first integral"));
                let d = p.degree();
                c.expect(d as i64 == k * n, format!("{tag}: first integral degree {d}"));
                c.note(format!("{tag}: first integral degree {d} = lambda2 + lambda3"));
            }
            None => c.expect(false, format!("{tag}: no first integral")),
        }
    }
    c.finish()
}

fn criterion10(_: GroebnerBudget) -> Verdict {
    let mut c = Check::new();
    c.expect(form("nu2").radial_contraction().is_zero(), "nu2 radial contraction");
    for key in ["nu1-printed", "nu3", "nu4"] {
        let r = form(key).radial_contraction();
        c.expect(!r.is_zero(), format!("{key} radial contraction vanishes"));
        c.note(format!("{key}: {r}"));
    }
    c.expect(form("nu4").radial_contraction() == parse_polynomial("-2*z1*z2^3", Some(3)).unwrap(), "nu4 witness");
    let first_two = |key: &str| {
        let w = form(key);
        [(0, w.coefficient(0).clone()), (1, w.coefficient(1).clone())]
    };
    match complete_from_euler(first_two("nu3")).unwrap() {
        EulerCompletion::Completed(w) => {
            c.expect(w.coefficient(2) == &parse_polynomial("z2*(z2^2 + z3^2 - z1*z2)", Some(3)).unwrap(), "nu3 completion");
        }
        EulerCompletion::Obstructed { .. } => c.expect(false, "nu3 has no Euler completion"),
    }
    c.expect(matches!(complete_from_euler(first_two("nu4")).unwrap(), EulerCompletion::Obstructed { .. }), "nu4 completes");
    c.finish()
}

fn criterion11(_: GroebnerBudget) -> Verdict {
    let mut c = Check::new();
    c.expect(dimension_formula(2) == 44.into(), "dimension formula at 2");
    c.finish()
}

fn criterion12(budget: GroebnerBudget) -> Verdict {
    let mut c = Check::new();
    for o in run_all(LEDGER_SEED, 500, budget) {
        c.expect(o.passed() && o.cases >= 500, format!("{}: {} failures, {} inconclusive", o.name, o.failures, o.inconclusive));
    }
    c.finish()
}

type Criterion = fn(GroebnerBudget) -> Verdict;

const CRITERIA: [(u8, &str, Criterion, u64); 12] = [
    (1, "catalog forms are projective and integrable", criterion1, 1),
    (2, "torus weights, limits, destabilization, fixing lattice", criterion2, 1),
    (3, "singular sets of omega and the three sums", criterion3, 60),
    (4, "recorded first integrals", criterion4, 5),
    (5, "logarithmic decompositions", criterion5, 2),
    (6, "four-plane and boundary-shape singular sets", criterion6, 60),
    (7, "the three cubic first-integral forms", criterion7, 30),
    (8, "rational family members", criterion8, 60),
    (9, "logarithmic family members", criterion9, 60),
    (10, "printed plane-form errata", criterion10, 1),
    (11, "dimension formula", criterion11, 1),
    (12, "property suites", criterion12, 60),
];

fn main() -> ExitCode {
    let budget = GroebnerBudget::default();
    let mut unexpected = 0;
    for (id, title, run, limit) in CRITERIA {
        let start = Instant::now();
        let verdict = run(budget);
        let elapsed = start.elapsed();
        let slow = elapsed > Duration::from_secs(limit);
        match (&verdict, slow) {
            (Ok(notes), false) => {
                let notes = if notes.is_empty() { String::new() } else { format!(" ({notes})") };
                println!("criterion {id:>2}: PASS {title} [{:.2}s]{notes}", elapsed.as_secs_f64());
            }
            _ => {
                let mut failures = verdict.clone().err().unwrap_or_default();
                if slow {
                    failures.push(format!("took {:.1}s, limit {limit}s", elapsed.as_secs_f64()));
                }
                let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == id).map(|(_, f)| *f).unwrap_or(&[]);
                let expected = !failures.is_empty() && failures.iter().all(|f| known.contains(&f.as_str()));
                let tag = if expected { " (known, see decisions ledger)" } else { "" };
                println!("criterion {id:>2}: FAIL {title} [{:.2}s]{tag}: {}", elapsed.as_secs_f64(), failures.join("; "));
                if !expected {
                    unexpected += 1;
                }
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria failed unexpectedly");
        ExitCode::FAILURE
    }
}
