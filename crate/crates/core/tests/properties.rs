use folium::exactalg::{LinearMap, Monomial, MonomialOrder, Polynomial, Scalar};
use folium::forms::{OneForm, Wedge};
use folium::ideals::{GroebnerBudget, Ideal};
use folium::textio::{parse_one_form, parse_polynomial, print_canonical};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Scalar::new(n, d).unwrap())
}

fn poly(nvars: usize, max_deg: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, nvars), scalar()), 0..5).prop_map(move |terms| {
        let terms: Vec<_> = terms.into_iter().map(|(e, c)| (Monomial::from_exponents(&e).unwrap(), c)).collect();
        Polynomial::from_terms(nvars, terms).unwrap()
    })
}

fn form(max_deg: u32) -> impl Strategy<Value = OneForm> {
    prop::collection::vec(poly(4, max_deg), 4).prop_map(|c| OneForm::new(c).unwrap())
}

fn homogeneous_form() -> impl Strategy<Value = (u32, OneForm)> {
    (0u32..=2).prop_flat_map(|d| {
        prop::collection::vec(prop::collection::vec((prop::collection::vec(0..4usize, d as usize), scalar()), 0..3), 4).prop_map(move |slots| {
            let coeffs = slots
                .into_iter()
                .map(|terms| {
                    let terms: Vec<_> = terms
                        .into_iter()
                        .map(|(vars, c)| {
                            let mut e = [0u32; 4];
                            vars.iter().for_each(|&v| e[v] += 1);
                            (Monomial::from_exponents(&e).unwrap(), c)
                        })
                        .collect();
                    Polynomial::from_terms(4, terms).unwrap()
                })
                .collect();
            (d, OneForm::new(coeffs).unwrap())
        })
    })
}

fn matrix() -> impl Strategy<Value = LinearMap> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 4)
        .prop_map(|rows| LinearMap::from_rows(rows.into_iter().map(|r| r.into_iter().map(Scalar::from_int).collect()).collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn d_squared_vanishes(f in poly(4, 3), w in form(2)) {
        prop_assert!(OneForm::exact(&f).exterior_derivative().is_zero());
        prop_assert!(w.exterior_derivative().exterior_derivative().is_zero());
    }

    #[test]
    fn leibniz(f in poly(4, 2), w in form(2)) {
        let lhs = w.mul_polynomial(&f).unwrap().exterior_derivative();
        let rhs = OneForm::exact(&f).wedge(&w).try_add(&w.exterior_derivative().mul_polynomial(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cartan_radial_identity((d, w) in homogeneous_form()) {
        let lie = w.exterior_derivative().radial_contraction().try_add(&OneForm::exact(&w.radial_contraction())).unwrap();
        prop_assert_eq!(lie, w.scale(&Scalar::from_int(d as i64 + 1)));
    }

    #[test]
    fn pullback_commutes_with_d(m in matrix(), w in form(2), f in poly(4, 2)) {
        prop_assert_eq!(w.pullback_linear(&m).unwrap().exterior_derivative(), w.exterior_derivative().pullback_linear(&m).unwrap());
        prop_assert_eq!(OneForm::exact(&f).pullback_linear(&m).unwrap(), OneForm::exact(&f.linear_substitute(&m).unwrap()));
    }

    #[test]
    fn substitution_composes(f in poly(4, 2), m in matrix(), n in matrix()) {
        let twice = f.linear_substitute(&m).unwrap().linear_substitute(&n).unwrap();
        prop_assert_eq!(twice, f.linear_substitute(&m.mul(&n).unwrap()).unwrap());
    }

    #[test]
    fn round_trip(p in poly(4, 4), w in form(3)) {
        prop_assert_eq!(parse_polynomial(&print_canonical(&p), Some(4)).unwrap(), p);
        prop_assert_eq!(parse_one_form(&print_canonical(&w), Some(4)).unwrap(), w);
    }

    #[test]
    fn prefixes_never_panic(w in form(3), cut in 0usize..200) {
        let text = print_canonical(&w);
        let prefix: String = text.chars().take(cut).collect();
        let result = parse_one_form(&prefix, Some(4));
        if prefix.trim_end().ends_with(['+', '-', '*', '^', '(']) {
            prop_assert!(result.is_err());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn groebner_basis_is_sound(gens in prop::collection::vec(poly(3, 2), 1..4)) {
        let ideal = Ideal::new(3, gens.clone()).unwrap();
        let g = ideal.groebner(MonomialOrder::DegRevLex, GroebnerBudget::default()).unwrap();
        prop_assert!(g.verify_s_pairs());
        prop_assert!(g.is_reduced());
        for p in &gens {
            prop_assert!(g.normal_form(p).unwrap().is_zero());
        }
        let again = g.as_ideal().groebner(MonomialOrder::DegRevLex, GroebnerBudget::default()).unwrap();
        prop_assert_eq!(again.polynomials(), g.polynomials());
    }
}
