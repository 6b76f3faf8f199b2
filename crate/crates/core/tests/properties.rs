mod common;

use common::*;
use pfaff::sysfile::{parse_system, print_system};
use pfaff::{buchberger, normal_form, Ideal, MonomialOrder, Polynomial, Rational, Ring};
use proptest::prelude::*;

fn xyz() -> Ring {
    Ring::new(&["x", "y", "z"]).unwrap()
}

/// Text of a polynomial in x, y, z with at most `terms` terms.
fn poly_text(max_exp: u32, terms: usize) -> impl Strategy<Value = String> {
    prop::collection::vec(
        (-6i64..=6, 1i64..=3, 0..=max_exp, 0..=max_exp, 0..=max_exp),
        0..=terms,
    )
    .prop_map(|ts| {
        if ts.is_empty() {
            return "0".to_string();
        }
        ts.iter()
            .map(|(n, d, a, b, c)| format!("({n}/{d})*x^{a}*y^{b}*z^{c}"))
            .collect::<Vec<_>>()
            .join(" + ")
    })
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-5i64..=5, 1i64..=4), 3).prop_map(|v| {
        v.into_iter()
            .map(|(n, d)| Rational::new(n.into(), d.into()))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_then_parse(text in poly_text(3, 5)) {
        let r = xyz();
        let p = poly(&text, &r);
        prop_assert_eq!(poly(&p.to_string(), &r), p);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly_text(2, 4), b in poly_text(2, 4), pt in point()) {
        let r = xyz();
        let (p, q) = (poly(&a, &r), poly(&b, &r));
        prop_assert_eq!((&p + &q).eval(&pt), p.eval(&pt) + q.eval(&pt));
        prop_assert_eq!((&p * &q).eval(&pt), p.eval(&pt) * q.eval(&pt));
        prop_assert_eq!((&p - &p).eval(&pt), Rational::from_integer(0.into()));
    }

    #[test]
    fn partial_derivative_leibniz(a in poly_text(3, 4), b in poly_text(3, 4), v in 0usize..3) {
        let r = xyz();
        let (p, q) = (poly(&a, &r), poly(&b, &r));
        let lhs = (&p * &q).partial(v);
        let rhs = &(&p.partial(v) * &q) + &(&p * &q.partial(v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn orders_agree_on_the_polynomial(text in poly_text(3, 5)) {
        let r = xyz();
        let p = poly(&text, &r);
        for order in [MonomialOrder::Lex, MonomialOrder::Block(1), MonomialOrder::Block(2)] {
            let q = p.with_order(&order).unwrap();
            let back = q.with_order(&MonomialOrder::Grevlex).unwrap();
            prop_assert_eq!(&back, &p);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn groebner_basis_is_canonical(gens in prop::collection::vec(poly_text(2, 3), 1..=3)) {
        let r = xyz();
        let ps: Vec<Polynomial> = gens.iter().map(|g| poly(g, &r)).collect();
        let mut reversed = ps.clone();
        reversed.reverse();
        let a = buchberger(&r, &ps, &limits()).unwrap();
        let b = buchberger(&r, &reversed, &limits()).unwrap();
        prop_assert_eq!(a.basis(), b.basis());
        for p in &ps {
            prop_assert!(normal_form(p, a.basis()).unwrap().is_zero());
        }
        // Products of generators stay inside; nothing in the basis is reducible.
        if ps.len() >= 2 {
            prop_assert!(a.contains(&(&ps[0] * &ps[1])).unwrap());
        }
        for (k, g) in a.basis().iter().enumerate() {
            let others: Vec<Polynomial> = a.basis().iter().enumerate()
                .filter(|(l, _)| *l != k).map(|(_, h)| h.clone()).collect();
            prop_assert_eq!(&normal_form(g, &others).unwrap(), g);
        }
    }

    #[test]
    fn lex_and_grevlex_describe_the_same_ideal(gens in prop::collection::vec(poly_text(2, 3), 1..=2)) {
        let r = xyz();
        let ps: Vec<Polynomial> = gens.iter().map(|g| poly(g, &r)).collect();
        let lex_ring = r.reordered(MonomialOrder::Lex).unwrap();
        let lex_gens: Vec<Polynomial> =
            ps.iter().map(|p| p.with_order(&MonomialOrder::Lex).unwrap()).collect();
        let lex = buchberger(&lex_ring, &lex_gens, &limits()).unwrap();
        let back: Vec<Polynomial> =
            lex.basis().iter().map(|p| p.with_order(&MonomialOrder::Grevlex).unwrap()).collect();
        let i = Ideal::new(&r, ps).unwrap();
        let j = Ideal::new(&r, back).unwrap();
        prop_assert!(i.ideal_equal(&j).unwrap());
    }

    #[test]
    fn radical_is_sound(gens in prop::collection::vec(poly_text(2, 2), 1..=2), extra in poly_text(1, 2)) {
        let r = xyz();
        let i = Ideal::new(&r, gens.iter().map(|g| poly(g, &r)).collect()).unwrap();
        let rad = i.radical().unwrap();
        prop_assert!(rad.contains_ideal(&i).unwrap());
        for g in rad.generators() {
            prop_assert!(rabinowitsch_oracle(&i, g));
        }
        let f = poly(&extra, &r);
        prop_assert_eq!(rad.contains(&f).unwrap(), rabinowitsch_oracle(&i, &f));
        prop_assert!(rad.dimension().unwrap() == i.dimension().unwrap());
    }

    #[test]
    fn saturation_and_intersection_contain_the_ideal(
        gens in prop::collection::vec(poly_text(2, 2), 1..=2),
        other in poly_text(2, 2),
        f in poly_text(1, 2),
    ) {
        let r = xyz();
        let i = Ideal::new(&r, gens.iter().map(|g| poly(g, &r)).collect()).unwrap();
        let j = Ideal::new(&r, vec![poly(&other, &r)]).unwrap();
        let f = poly(&f, &r);
        let sat = i.saturation(&f).unwrap();
        prop_assert!(sat.contains_ideal(&i).unwrap());
        let meet = i.intersect(&j).unwrap();
        prop_assert!(i.contains_ideal(&meet).unwrap());
        prop_assert!(j.contains_ideal(&meet).unwrap());
        for a in i.generators() {
            for b in j.generators() {
                prop_assert!(meet.contains(&(a * b)).unwrap());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn total_derivative_is_a_derivation(a in poly_text(2, 3), b in poly_text(2, 3), seed in 0u64..1000) {
        let mut rng = rng(seed);
        let ys = ["x", "y", "z"].map(String::from);
        let s = system(&random_autonomous_over(&mut rng, &ys, &["s".into(), "t".into()], 0));
        let s = s.restrict_to_unknowns().unwrap();
        let r = s.ring().clone();
        let (p, q) = (poly(&a, &r), poly(&b, &r));
        for j in 0..2 {
            let d = |h: &Polynomial| s.total_derivative(h, j).unwrap();
            prop_assert_eq!(d(&(&p * &q)), &(&d(&p) * &q) + &(&p * &d(&q)));
            prop_assert_eq!(d(&(&p + &q)), &d(&p) + &d(&q));
        }
    }

    #[test]
    fn system_files_round_trip(seed in 0u64..10_000, n in 1usize..=3, m in 1usize..=2, c in 0usize..=2) {
        let mut rng = rng(seed);
        let text = random_autonomous(&mut rng, n, m, c);
        let s = parse_system(&text).unwrap();
        let printed = print_system(&s);
        let t = parse_system(&printed).unwrap();
        prop_assert_eq!(t.f(), s.f());
        prop_assert_eq!(t.g(), s.g());
        prop_assert_eq!(print_system(&t), printed);
    }
}
