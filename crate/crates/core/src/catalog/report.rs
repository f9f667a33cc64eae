//! The ordered claim ledger.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::exactalg::Monomial;
use crate::forms::Wedge;
use crate::ideals::{GroebnerBudget, VarietyRelation};
use crate::integrals::{build_boundary_log_form, is_first_integral, verify_log_decomposition, BoundaryShape};
use crate::torus::{destabilizing_check, fixing_lattice, limit_point, weight_decompose, Direction, WeightVector};

/// Ledger entries whose non-verified status is documented, with the expected status.
pub const KNOWN_ERRATA: &[(&str, ClaimStatus)] = &[
    ("nu1-radial", ClaimStatus::Erratum),
    ("nu1-slot-repair", ClaimStatus::Erratum),
    ("nu3-radial", ClaimStatus::Erratum),
    ("nu3-euler-single-point", ClaimStatus::Erratum),
    ("nu4-radial", ClaimStatus::Erratum),
    ("nu4-euler", ClaimStatus::Erratum),
    ("sec3-shape2-generic", ClaimStatus::Refuted),
    ("sec3-shape3-generic", ClaimStatus::Refuted),
    ("ex4.4-printed-first-integral", ClaimStatus::Erratum),
    ("ex4.5-integral-degree", ClaimStatus::Erratum),
];

/// Seed for every randomly drawn instance in the ledger.
pub const LEDGER_SEED: u64 = 20_240_601;

pub type Outcome = (ClaimStatus, Option<String>);

struct Ledger {
    budget: GroebnerBudget,
    records: Vec<ClaimRecord>,
}

impl Ledger {
    fn claim(&mut self, id: impl Into<String>, description: impl Into<String>, check: impl FnOnce(GroebnerBudget) -> Result<Outcome, CatalogError>) {
        let start = Instant::now();
        let (status, witness) = match check(self.budget) {
            Ok(o) => o,
            Err(e) => (ClaimStatus::Inconclusive, Some(e.to_string())),
        };
        self.records.push(ClaimRecord { id: id.into(), status, description: description.into(), witness, elapsed: start.elapsed() });
    }
}

fn verified(ok: bool, witness: impl FnOnce() -> String) -> Outcome {
    if ok {
        (ClaimStatus::Verified, None)
    } else {
        (ClaimStatus::Refuted, Some(witness()))
    }
}

fn erratum_if(failed: bool, witness: String) -> Outcome {
    if failed {
        (ClaimStatus::Erratum, Some(witness))
    } else {
        (ClaimStatus::Verified, None)
    }
}

fn form(key: &str) -> Result<OneForm, CatalogError> {
    Ok(named_form(key)?.form)
}

fn poly(text: &str, n: usize) -> Result<Polynomial, CatalogError> {
    Ok(parse_polynomial(text, Some(n))?)
}

fn line_ideal() -> Result<Ideal, CatalogError> {
    Ok(singular_set_claim("line")?.expect("line fixture"))
}

fn to_space(plane: &OneForm) -> Result<OneForm, CatalogError> {
    Ok(plane.pullback_from_plane(&drop_last_coordinate())?)
}

/// Projective with the given foliation degree.
fn projective(w: &OneForm, degree: u32) -> Outcome {
    let report = w.check_projective();
    verified(report.passes() && report.foliation_degree == Some(degree), || {
        if report.passes() {
            format!("foliation degree {:?}", report.foliation_degree)
        } else {
            format!("{:?}", report.failures)
        }
    })
}

fn integrable(w: &OneForm) -> Outcome {
    let check = w.integrability();
    verified(check.integrable, || check.witness.to_string())
}

fn sing_equals(w: &OneForm, claim: &Ideal, budget: GroebnerBudget) -> Result<Outcome, CatalogError> {
    let cmp = w.singular_ideal().variety_compare(claim, budget)?;
    Ok(verified(cmp.relation == VarietyRelation::Equal, || {
        let wit = cmp.left_witness.as_ref().or(cmp.right_witness.as_ref()).map(|p| p.to_string()).unwrap_or_default();
        format!("{:?}; witness {wit}", cmp.relation)
    }))
}

fn first_integral(w: &OneForm, pair: &RationalPair) -> Result<Outcome, CatalogError> {
    let check = is_first_integral(w, pair)?;
    Ok(verified(check.holds, || check.witness.to_string()))
}

/// Run several checks and report the first failure.
fn all(outcomes: impl IntoIterator<Item = Result<Outcome, CatalogError>>) -> Result<Outcome, CatalogError> {
    for o in outcomes {
        let o = o?;
        if o.0 != ClaimStatus::Verified {
            return Ok(o);
        }
    }
    Ok((ClaimStatus::Verified, None))
}

/// Dimension of the space of constant vectors `v` with `i_v w = 0`.
fn constant_kernel_dimension(w: &OneForm) -> usize {
    let mut monomials: Vec<Monomial> = w.coefficients().iter().flat_map(|c| c.terms().map(|(m, _)| *m)).collect();
    monomials.sort();
    monomials.dedup();
    let rows: Vec<Vec<Scalar>> = monomials.iter().map(|m| w.coefficients().iter().map(|c| c.coefficient(m)).collect()).collect();
    if rows.is_empty() {
        return w.nvars();
    }
    w.nvars() - LinearMap::from_rows(rows).expect("rectangular").rank()
}

fn random_form(rng: &mut ChaCha8Rng, degree: u32, range: i64) -> Result<Polynomial, CatalogError> {
    loop {
        let mut p = Polynomial::zero(4);
        for a in 0..=degree {
            for b in 0..=degree - a {
                for c in 0..=degree - a - b {
                    let e = [a, b, c, degree - a - b - c];
                    let k = rng.random_range(-range..=range);
                    if k != 0 {
                        p = &p + &Polynomial::monomial(4, Monomial::from_exponents(&e)?, Scalar::from_int(k));
                    }
                }
            }
        }
        if !p.is_zero() {
            return Ok(p);
        }
    }
}

fn independent(lines: &[&Polynomial]) -> bool {
    let rows: Vec<Vec<Scalar>> =
        lines.iter().map(|l| (0..4).map(|i| l.coefficient(&Monomial::var(i).expect("index"))).collect()).collect();
    LinearMap::from_rows(rows).expect("rectangular").rank() == lines.len()
}

fn random_lines(rng: &mut ChaCha8Rng, k: usize) -> Result<Vec<Polynomial>, CatalogError> {
    loop {
        let lines = (0..k).map(|_| random_form(rng, 1, 3)).collect::<Result<Vec<_>, _>>()?;
        if independent(&lines.iter().collect::<Vec<_>>()) {
            return Ok(lines);
        }
    }
}

fn nonzero(rng: &mut ChaCha8Rng, range: i64) -> i64 {
    loop {
        let k = rng.random_range(-range..=range);
        if k != 0 {
            return k;
        }
    }
}

fn component_union(components: &[Vec<Polynomial>]) -> Result<Ideal, CatalogError> {
    let ideals = components.iter().map(|c| Ideal::new(4, c.clone())).collect::<Result<Vec<_>, _>>()?;
    Ok(Ideal::product_all(&ideals)?)
}

fn describe_polys(ps: &[Polynomial]) -> String {
    ps.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// Verify every recorded claim in a fixed order.
pub fn verify_paper_report(budget: GroebnerBudget) -> Vec<ClaimRecord> {
    let mut l = Ledger { budget, records: Vec::new() };
    plane_forms(&mut l);
    exceptional(&mut l);
    logarithmic(&mut l);
    line_singular_sets(&mut l);
    families(&mut l);
    l.records
}

fn plane_forms(l: &mut Ledger) {
    l.claim("dim-formula", "4 C(s+4,3) - C(s+5,3) - 1 equals 44 for s = 2", |_| {
        let d = dimension_formula(2);
        Ok(verified(d == BigInt::from(44), || d.to_string()))
    });
    l.claim("nu1-radial", "the printed first plane form is annihilated by the radial field", |_| {
        let r = form("nu1-printed")?.radial_contraction();
        Ok(erratum_if(!r.is_zero(), r.to_string()))
    });
    l.claim("nu1-slot-repair", "moving the repeated dz2 term to any single slot gives a projective form", |_| {
        let base = poly("z3^3", 3)?;
        let second = poly("-z1z2^2", 3)?;
        let moved = poly("z2^3 - z1z3^2", 3)?;
        let mut failures = Vec::new();
        for k in 0..3 {
            let mut coeffs = vec![base.clone(), second.clone(), Polynomial::zero(3)];
            coeffs[k] = &coeffs[k] + &moved;
            let r = OneForm::new(coeffs)?.radial_contraction();
            if !r.is_zero() {
                failures.push(format!("dz{}: {r}", k + 1));
            }
        }
        Ok(erratum_if(failures.len() == 3, failures.join("; ")))
    });
    l.claim("nu1-replacement", "the plane foliation with first integral (z1z3^2 + z2^3)/z3^3 is projective of degree 2 with a single singular point", |b| {
        let w = form("nu1")?;
        let pair = RationalPair::new(poly("z1z3^2 + z2^3", 3)?, poly("z3^3", 3)?)?;
        all([Ok(projective(&w, 2)), Ok(integrable(&w)), first_integral(&w, &pair), sing_equals(&to_space(&w)?, &line_ideal()?, b)])
    });
    l.claim("nu2-foliation", "the second plane form is projective of degree 2, its pullback has the line z2 = z3 = 0 as singular set", |b| {
        let w = form("nu2")?;
        all([Ok(projective(&w, 2)), Ok(integrable(&w)), sing_equals(&to_space(&w)?, &line_ideal()?, b)])
    });
    l.claim("nu3-radial", "the printed third plane form is annihilated by the radial field", |_| {
        let r = form("nu3")?.radial_contraction();
        Ok(erratum_if(!r.is_zero(), r.to_string()))
    });
    l.claim("nu3-euler", "the dz3 coefficient of the third plane form can be recomputed from the Euler relation", |_| {
        let w = form("nu3-euler")?;
        let o = projective(&w, 2);
        Ok(if o.0 == ClaimStatus::Verified { (o.0, Some(w.coefficient(2).to_string())) } else { o })
    });
    l.claim("nu3-euler-single-point", "the Euler-completed third plane form has a single singular point", |b| {
        let w = form("nu3-euler")?;
        let o = sing_equals(&to_space(&w)?, &line_ideal()?, b)?;
        let point = [1, 1, 0].map(Scalar::from_int);
        let vanishes = w.coefficients().iter().map(|c| c.evaluate(&point)).collect::<Result<Vec<_>, _>>()?.iter().all(Scalar::is_zero);
        Ok(match o.0 {
            ClaimStatus::Refuted if vanishes => (ClaimStatus::Erratum, Some("singular at (1:0:0) and (1:1:0)".into())),
            _ => o,
        })
    });
    l.claim("nu4-radial", "the printed fourth plane form is annihilated by the radial field", |_| {
        let r = form("nu4")?.radial_contraction();
        Ok(erratum_if(!r.is_zero(), r.to_string()))
    });
    l.claim("nu4-euler", "the dz3 coefficient of the fourth plane form can be recomputed from the Euler relation", |_| {
        let w = form("nu4")?;
        Ok(match complete_from_euler([(0, w.coefficient(0).clone()), (1, w.coefficient(1).clone())])? {
            EulerCompletion::Completed(f) => (ClaimStatus::Verified, Some(f.coefficient(2).to_string())),
            EulerCompletion::Obstructed { remainder, .. } => (ClaimStatus::Erratum, Some(remainder.to_string())),
        })
    });
}

fn exceptional(l: &mut Ledger) {
    l.claim("thm2.1-decomposition", "omega = omega1 + omega2 + omega3", |_| {
        let sum = form("omega1")?.try_add(&form("omega2")?)?.try_add(&form("omega3")?)?;
        let w = form("omega")?;
        Ok(verified(sum == w, || w.try_sub(&sum).map(|d| d.to_string()).unwrap_or_default()))
    });
    for key in ["omega", "omega12", "omega13", "omega23"] {
        l.claim(format!("thm2.1-projective-{key}"), format!("{key} is projective of degree 2"), |_| Ok(projective(&form(key)?, 2)));
        l.claim(format!("thm2.1-integrable-{key}"), format!("{key} is integrable"), |_| Ok(integrable(&form(key)?)));
    }
    l.claim("thm2.1-diagonal-action", "diag(a) rescales the summands by a1/a2, a2/a3, a3/a4 up to a common factor", |_| {
        let a = [2i64, 3, 5, 7];
        let diag = LinearMap::diagonal(&a.map(Scalar::from_int));
        let moved = form("omega")?.pullback_linear(&diag)?;
        let expected = form("omega1")?
            .scale(&Scalar::from_int(a[0] * a[0] * a[2] * a[3]))
            .try_add(&form("omega2")?.scale(&Scalar::from_int(a[0] * a[1] * a[1] * a[3])))?
            .try_add(&form("omega3")?.scale(&Scalar::from_int(a[0] * a[1] * a[2] * a[2])))?;
        Ok(verified(moved == expected, || moved.to_string()))
    });
    l.claim("thm2.1-weights", "lambda(3,1,-1) acts on omega by t^2", |_| {
        let dec = weight_decompose(&form("omega")?, &WeightVector::new(vec![3, 1, -1, -3])?)?;
        Ok(verified(dec.weights() == vec![2], || format!("weights {:?}", dec.weights())))
    });
    l.claim("thm2.1-unstable", "lambda(3,1,-1) drives omega to zero", |_| {
        let d = destabilizing_check(&form("omega")?, &WeightVector::new(vec![3, 1, -1, -3])?)?;
        Ok(verified(d.driven_to_zero && d.min_weight == 2, || format!("minimum weight {}", d.min_weight)))
    });
    l.claim("thm2.1-fix-lattice", "the diagonal subgroups fixing omega are the multiples of (3,1,-1,-3)", |_| {
        let lattice = fixing_lattice(&form("omega")?)?;
        let text = lattice.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        let ok = lattice.len() == 1 && lattice[0].entries() == [3, 1, -1, -3];
        Ok(if ok { (ClaimStatus::Verified, Some(text)) } else { (ClaimStatus::Refuted, Some(text)) })
    });
    let subgroups: [(&str, [i64; 4], &str, &str); 3] = [
        ("lambda1", [3, -1, -1, -1], "omega1", "omega23"),
        ("lambda2", [1, 1, -1, -1], "omega2", "omega13"),
        ("lambda3", [1, 1, 1, -3], "omega3", "omega12"),
    ];
    for (name, n, at_infinity, at_zero) in subgroups {
        l.claim(
            format!("thm2.1-limits-{name}"),
            format!("{name}(t) omega tends to {at_infinity} at infinity and to {at_zero} at zero"),
            move |_| {
                let w = form("omega")?;
                let n = WeightVector::new(n.to_vec())?;
                let inf = limit_point(&w, &n, Direction::ToInfinity)?;
                let zero = limit_point(&w, &n, Direction::ToZero)?;
                let ok = inf.projective_equal(&form(at_infinity)?)? && zero.projective_equal(&form(at_zero)?)?;
                Ok(verified(ok, || format!("infinity: {inf}; zero: {zero}")))
            },
        );
        l.claim(format!("thm2.1-fixed-{at_zero}"), format!("{name} fixes {at_zero}"), move |_| {
            let dec = weight_decompose(&form(at_zero)?, &WeightVector::new(n.to_vec())?)?;
            Ok(verified(dec.weights() == vec![0], || format!("weights {:?}", dec.weights())))
        });
    }
    for key in ["omega", "omega12", "omega13", "omega23", "omega1-over-z1", "omega2-over-z2", "omega3-over-z3"] {
        l.claim(format!("sec2-sing-{key}"), format!("singular set of {key} equals the recorded union"), |b| {
            let claim = singular_set_claim(key)?.ok_or_else(|| CatalogError::UnknownKey(key.into()))?;
            sing_equals(&form(key)?, &claim, b)
        });
        l.claim(format!("sec2-first-integral-{key}"), format!("recorded rational first integral of {key}"), |_| {
            let pair = first_integral_claim(key)?.ok_or_else(|| CatalogError::UnknownKey(key.into()))?;
            first_integral(&form(key)?, &pair)
        });
    }
    for key in ["omega1-over-z1", "omega2-over-z2", "omega3-over-z3"] {
        l.claim(format!("sec2-projective-{key}"), format!("{key} is a degree-1 foliation"), |_| {
            let w = form(key)?;
            all([Ok(projective(&w, 1)), Ok(integrable(&w))])
        });
    }
    for key in ["omega12", "omega13", "omega23"] {
        l.claim(format!("sec2-log-{key}"), format!("{key} is a multiple of the recorded logarithmic product"), |_| {
            let data = log_claim(key)?.ok_or_else(|| CatalogError::UnknownKey(key.into()))?;
            let check = verify_log_decomposition(&form(key)?, &data)?;
            Ok(match check.ratio {
                Some(c) => (ClaimStatus::Verified, Some(format!("ratio {c}"))),
                None => (ClaimStatus::Refuted, None),
            })
        });
    }
}

/// Four linearly independent seeded planes and nonzero residues summing to zero.
pub fn seeded_four_planes(seed: u64) -> Result<LogData, CatalogError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lines = random_lines(&mut rng, 4)?;
    loop {
        let first: Vec<i64> = (0..3).map(|_| nonzero(&mut rng, 5)).collect();
        let last = -first.iter().sum::<i64>();
        if last != 0 {
            let lambdas = first.into_iter().chain([last]).map(Scalar::from_int).collect();
            return Ok(LogData::new(lines, lambdas)?);
        }
    }
}

/// A seeded boundary shape with random small integer data satisfying the residue constraint.
pub fn seeded_boundary_shape(index: u8, seed: u64) -> Result<BoundaryShape, CatalogError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match index {
        1 => {
            let ls = random_lines(&mut rng, 4)?;
            let (a1, a2) = loop {
                let (a1, a2) = (nonzero(&mut rng, 5), nonzero(&mut rng, 5));
                if a1 + a2 != 0 {
                    break (a1, a2);
                }
            };
            Ok(BoundaryShape::One {
                lines: [ls[0].clone(), ls[1].clone(), ls[2].clone()],
                lambdas: [a1, a2, -(a1 + a2)].map(Scalar::from_int),
                alpha: ls[3].clone(),
            })
        }
        2 => {
            let ls = random_lines(&mut rng, 2)?;
            let alpha = random_form(&mut rng, 2, 3)?;
            let lam = Scalar::from_int(nonzero(&mut rng, 5));
            Ok(BoundaryShape::Two { lines: [ls[0].clone(), ls[1].clone()], lambdas: [lam.clone(), -lam], alpha })
        }
        3 => {
            let line = random_lines(&mut rng, 1)?.remove(0);
            Ok(BoundaryShape::Three { line, lambda: Scalar::zero(), alpha: random_form(&mut rng, 3, 3)? })
        }
        other => Err(CatalogError::InvalidParameters(format!("no boundary shape {other}"))),
    }
}

/// Special instances where the printed singular-set formula holds exactly.
pub fn special_boundary_shape(index: u8) -> Result<BoundaryShape, CatalogError> {
    let p = |t: &str| poly(t, 4);
    match index {
        2 => Ok(BoundaryShape::Two { lines: [p("z3")?, p("z4")?], lambdas: [Scalar::one(), -Scalar::one()], alpha: p("z2^2")? }),
        3 => Ok(BoundaryShape::Three { line: p("z1")?, lambda: Scalar::zero(), alpha: p("z1^2z2 + z3^3 + z4^3")? }),
        other => Err(CatalogError::InvalidParameters(format!("no special instance for shape {other}"))),
    }
}

/// `V(L1, alpha)` lies in the singular set, and the singular set meets `L1 = 0` exactly there.
pub fn boundary_containment(shape: &BoundaryShape, budget: GroebnerBudget) -> Result<Outcome, CatalogError> {
    let w = build_boundary_log_form(shape)?;
    let sing = w.singular_ideal();
    let union = component_union(&shape.singular_components())?;
    let mut missing = Vec::new();
    for c in sing.generators() {
        if !union.radical_contains(c, budget)? {
            missing.push(c.to_string());
        }
    }
    if !missing.is_empty() {
        return Ok((ClaimStatus::Refuted, Some(missing.join(", "))));
    }
    let l1 = shape.singular_components()[0][0].clone();
    let along = sing.sum(&Ideal::new(4, vec![l1.clone()])?)?;
    let cmp = along.variety_compare(&union.sum(&Ideal::new(4, vec![l1])?)?, budget)?;
    Ok(verified(cmp.relation == VarietyRelation::Equal, || format!("{:?}", cmp.relation)))
}

/// Singular set equals the printed union.
pub fn boundary_equality(shape: &BoundaryShape, budget: GroebnerBudget) -> Result<Outcome, CatalogError> {
    let w = build_boundary_log_form(shape)?;
    sing_equals(&w, &component_union(&shape.singular_components())?, budget)
}

fn logarithmic(l: &mut Ledger) {
    l.claim("sec3-l1111", "four generic planes: the singular set is the union of their pairwise intersections", |b| {
        let data = seeded_four_planes(LEDGER_SEED)?;
        let lines = data.factors();
        let mut comps = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                comps.push(vec![lines[i].clone(), lines[j].clone()]);
            }
        }
        let o = sing_equals(&build_log_form(&data), &component_union(&comps)?, b)?;
        Ok(if o.0 == ClaimStatus::Verified { (o.0, Some(describe_polys(lines))) } else { o })
    });
    l.claim("sec3-shape1", "first boundary shape: singular set is V(L1,L2) u V(L1,L3) u V(L2,L3) u V(L1,alpha)", |b| {
        boundary_equality(&seeded_boundary_shape(1, LEDGER_SEED + 1)?, b)
    });
    for index in [2u8, 3] {
        let printed = if index == 2 { "V(L1,L2) u V(L1,alpha)" } else { "V(L1,alpha)" };
        let seed = LEDGER_SEED + index as u64;
        l.claim(
            format!("sec3-shape{index}-containment"),
            format!("boundary shape {index}: {printed} lies in the singular set and is all of it along L1 = 0"),
            move |b| boundary_containment(&seeded_boundary_shape(index, seed)?, b),
        );
        l.claim(format!("sec3-shape{index}-generic"), format!("boundary shape {index}: the singular set equals {printed} for generic data"), move |b| {
            let o = boundary_equality(&seeded_boundary_shape(index, seed)?, b)?;
            Ok(match o {
                (ClaimStatus::Refuted, Some(w)) => (ClaimStatus::Refuted, Some(format!("extra singular points off L1 = 0: {w}"))),
                o => o,
            })
        });
        l.claim(format!("sec3-shape{index}-special"), format!("boundary shape {index}, special instance: the singular set equals {printed}"), move |b| {
            boundary_equality(&special_boundary_shape(index)?, b)
        });
    }
}

fn line_singular_sets(l: &mut Ledger) {
    for (k, key) in ["omegaF1", "omegaF2", "omegaF3"].into_iter().enumerate() {
        l.claim(format!("thm4.2-{key}"), format!("{key} is a degree-2 foliation whose singular set is the line z2 = z3 = 0"), |b| {
            let w = form(key)?;
            all([Ok(projective(&w, 2)), Ok(integrable(&w)), sing_equals(&w, &line_ideal()?, b)])
        });
        l.claim(format!("thm4.2-{key}-first-integral"), format!("f/z3^3 is a first integral of {key}"), |_| {
            let pair = first_integral_claim(key)?.ok_or_else(|| CatalogError::UnknownKey(key.into()))?;
            first_integral(&form(key)?, &pair)
        });
        let pullback = k == 2;
        l.claim(
            format!("thm4.2-{key}-pullback"),
            if pullback { format!("{key} is the pullback of the first plane form") } else { format!("{key} is not a linear pullback") },
            move |_| {
                let w = form(key)?;
                let kernel = constant_kernel_dimension(&w);
                if pullback {
                    let pulled = to_space(&form("nu1")?)?;
                    Ok(match pulled.projective_ratio(&w)? {
                        Some(c) => (ClaimStatus::Verified, Some(format!("ratio {c}"))),
                        None => (ClaimStatus::Refuted, Some(pulled.to_string())),
                    })
                } else {
                    Ok(verified(kernel == 0, || format!("constant vectors annihilating the form: dimension {kernel}")))
                }
            },
        );
    }
    l.claim("cor41-form", "the corollary's form is the second case of the classification", |_| {
        Ok(verified(form("corollary41")? == form("omegaF2")?, String::new))
    });
    l.claim("cor41-first-integral", "(z1z3^2 + z2z3z4 + z2^3)/z3^3 is a first integral of the corollary's form", |b| {
        let w = form("corollary41")?;
        let pair = first_integral_claim("omegaF2")?.expect("fixture");
        all([first_integral(&w, &pair), sing_equals(&w, &line_ideal()?, b)])
    });
    l.claim("cor42-first-integral", "(z1z3^2 + z3z4^2 + z2^3)/z3^3 is a first integral of the exceptional case", |_| {
        let pair = first_integral_claim("omegaF1")?.expect("fixture");
        first_integral(&form("omegaF1")?, &pair)
    });
}

fn families(l: &mut Ledger) {
    let mut rng = ChaCha8Rng::seed_from_u64(LEDGER_SEED + 4);
    for s in 3..=5u32 {
        for a in 0..=1i64 {
            let mut coeffs: Vec<Scalar> = (0..s).map(|_| Scalar::from_int(rng.random_range(-3..=3))).collect();
            coeffs.push(Scalar::from_int(nonzero(&mut rng, 3)));
            l.claim(
                format!("ex4.4-s{s}-a{a}"),
                format!("rational family, s = {s}, a = {a}: degree {s}, integrable, first integral, singular set the line z2 = z3 = 0"),
                move |b| {
                    let m = family_rational(s, Scalar::from_int(a), &coeffs)?;
                    let mut checks = vec![
                        Ok(projective(&m.form, s)),
                        Ok(integrable(&m.form)),
                        first_integral(&m.form, &m.first_integral),
                        sing_equals(&m.form, &line_ideal()?, b),
                    ];
                    if a == 0 {
                        let plane = family_rational_plane(s, &coeffs)?;
                        let pulled = to_space(&plane)?;
                        checks.push(Ok(verified(pulled == m.form, || pulled.to_string())));
                    }
                    let o = all(checks)?;
                    let p = m.form.coefficient(1).exact_div(&-poly("z3", 4)?)?.map(|p| p.to_string()).unwrap_or_default();
                    Ok(if o.0 == ClaimStatus::Verified { (o.0, Some(format!("P = {p}"))) } else { o })
                },
            );
        }
    }
    l.claim("ex4.4-printed-first-integral", "(z1 z3^s + a z3 z4^s + Q)/z3^(s+1) is a first integral (s = 3, a = 1, P = z2^3 + z3^3)", |_| {
        let one = Scalar::one();
        let zero = Scalar::zero();
        let m = family_rational(3, one.clone(), &[one.clone(), zero.clone(), zero, one])?;
        let check = is_first_integral(&m.form, &m.printed_first_integral)?;
        Ok(erratum_if(!check.holds, format!("{}; the sign-corrected pair works: {}", check.witness, is_first_integral(&m.form, &m.first_integral)?.holds)))
    });
    l.claim("ex4.4-s2-consistency", "for s = 2 the family member is 3f dz3 - z3 df for its own cubic f", |_| {
        let m = family_rational(2, Scalar::one(), &[Scalar::zero(), Scalar::zero(), Scalar::one()])?;
        let f = m.first_integral.numerator().clone();
        let z3 = poly("z3", 4)?;
        let wf = OneForm::exact(&f).mul_polynomial(&z3)?.neg().try_add(&OneForm::basis(4, 2)?.mul_polynomial(&f.scale(&Scalar::from_int(3)))?)?;
        Ok(match wf.projective_ratio(&m.form)? {
            Some(c) => (ClaimStatus::Verified, Some(format!("f = {f}, ratio {c}"))),
            None => (ClaimStatus::Refuted, Some(wf.wedge(&m.form).to_string())),
        })
    });
    let sets: [([u32; 3], i64, [i64; 3]); 4] =
        [([1, 1, 1], 1, [-1, 2, 1]), ([1, 1, 1], 0, [-1, 2, 1]), ([2, 1, 1], 1, [-1, 3, 1]), ([1, 2, 1], 1, [-2, 5, 3])];
    for (shape, a, lambdas) in sets {
        let [s1, s2, s3] = shape;
        let [l1, l2, l3] = lambdas;
        let n = s1 + s2 + s3;
        l.claim(
            format!("ex4.5-s{s1}{s2}{s3}-a{a}-l{}{l2}{l3}", -l1),
            format!("logarithmic family, s = ({s1},{s2},{s3}), a = {a}, lambda = ({l1},{l2},{l3}): degree {n}, singular set the line z2 = z3 = 0"),
            move |b| {
                let m = family_logarithmic(shape, Scalar::from_int(a), lambdas.map(Scalar::from_int))?;
                let pair = m.first_integral.clone().ok_or_else(|| CatalogError::InvalidParameters("no first integral".into()))?;
                let mut checks =
                    vec![Ok(projective(&m.form, n)), Ok(integrable(&m.form)), sing_equals(&m.form, &line_ideal()?, b), first_integral(&m.form, &pair)];
                if a == 0 {
                    let kernel = constant_kernel_dimension(&m.form);
                    checks.push(Ok(verified(m.form.coefficient(3).is_zero() && kernel == 1, || format!("kernel dimension {kernel}"))));
                }
                let o = all(checks)?;
                Ok(if o.0 == ClaimStatus::Verified { (o.0, Some(format!("first integral degree {}", pair.degree()))) } else { o })
            },
        );
    }
    l.claim("ex4.5-integral-degree", "the first integral f^(-lambda1)/(z2^lambda2 z3^lambda3) has degree lambda1 + lambda2", |_| {
        let m = family_logarithmic([1, 1, 1], Scalar::one(), [-1, 2, 1].map(Scalar::from_int))?;
        let computed = m.first_integral_degree().expect("integral exponents");
        let printed = &m.lambdas[0] + &m.lambdas[1];
        Ok(erratum_if(
            Scalar::from_int(computed as i64) != printed,
            format!("computed degree {computed} = lambda2 + lambda3, printed lambda1 + lambda2 = {printed}"),
        ))
    });
}
