use cover13::exactring::{parse_poly, FieldSpec, MultiPoly, Ring, RingRef};
use proptest::prelude::*;

fn ring(f: FieldSpec) -> RingRef {
    Ring::standard(f, &["lam"]).unwrap()
}

/// Small random polynomial: (coefficient, exponents on x0,x1,x2,y0,lam) with
/// x2 allowed to go negative.
fn poly_strategy() -> impl Strategy<Value = Vec<(i64, i64, [i32; 5])>> {
    prop::collection::vec((-9i64..10, 1i64..4, (0i32..3, 0i32..3, -2i32..3, 0i32..2, 0i32..2)), 0..6)
        .prop_map(|v| v.into_iter().map(|(n, d, (a, b, c, e, l))| (n, d, [a, b, c, e, l])).collect())
}

fn build(r: &RingRef, spec: &[(i64, i64, [i32; 5])]) -> MultiPoly {
    let f = r.field();
    let idx = [0usize, 1, 2, 3, 10];
    let terms = spec.iter().map(|(n, d, e)| {
        let mut ex = vec![0; r.nvars()];
        for (k, i) in idx.iter().enumerate() {
            ex[*i] = e[k];
        }
        (ex, f.from_ratio(*n, *d).unwrap())
    });
    MultiPoly::from_terms(r, terms).unwrap()
}

fn fields() -> Vec<FieldSpec> {
    vec![FieldSpec::Rationals, FieldSpec::RationalsWithOmega, FieldSpec::PrimeField(31)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        for f in fields() {
            let r = ring(f);
            let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
        }
    }

    #[test]
    fn substitution_is_a_homomorphism(a in poly_strategy(), b in poly_strategy(), img in poly_strategy(), k in 1i64..30) {
        for f in fields() {
            let r = ring(f);
            let (a, b) = (build(&r, &a), build(&r, &b));
            // x2 must go to an invertible monomial; x0 and lam to anything
            let x1 = MultiPoly::var(&r, "x1").unwrap();
            let mut img = build(&r, &img);
            img = img.substitute(&[(2, x1.clone())]).unwrap();
            let x2img = x1.scale(&f.from_i64(k)).pow(2);
            let map = vec![(0, img), (2, x2img), (10, MultiPoly::var(&r, "y0").unwrap())];
            let s = |p: &MultiPoly| p.substitute(&map).unwrap();
            prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
            prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
        }
    }

    #[test]
    fn print_parse_round_trip(a in poly_strategy(), om in -3i64..4) {
        for f in fields() {
            let r = ring(f);
            let mut p = build(&r, &a);
            if f == FieldSpec::RationalsWithOmega {
                p = p.scale(&(&f.xi().unwrap() * &f.from_i64(om) + f.one()));
            }
            let q = parse_poly(&p.to_string(), &r).unwrap();
            prop_assert_eq!(q, p);
        }
    }

    #[test]
    fn fp_agrees_with_q_mod_p(a in poly_strategy(), b in poly_strategy()) {
        let rq = ring(FieldSpec::Rationals);
        let rp = ring(FieldSpec::PrimeField(31));
        let ints = |v: &[(i64, i64, [i32; 5])]| v.iter().map(|(n, _, e)| (*n, 1, *e)).collect::<Vec<_>>();
        let (aq, bq) = (build(&rq, &ints(&a)), build(&rq, &ints(&b)));
        let (ap, bp) = (build(&rp, &ints(&a)), build(&rp, &ints(&b)));
        prop_assert_eq!((&aq * &bq).convert(&rp).unwrap(), &ap * &bp);
        prop_assert_eq!((&aq - &bq).convert(&rp).unwrap(), &ap - &bp);
    }

    #[test]
    fn exact_division_recovers_factor(a in poly_strategy(), b in poly_strategy()) {
        let r = ring(FieldSpec::PrimeField(31));
        let (a, b) = (build(&r, &a), build(&r, &b));
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_divide(&b).unwrap(), a);
    }
}
