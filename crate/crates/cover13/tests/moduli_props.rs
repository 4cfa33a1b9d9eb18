use cover13::abelian13::{check_moduli_equation, random_admissible, SurfaceParams};
use cover13::exactring::{FieldSpec, Scalar};
use cover13::koszul::random_scalar;
use cover13::moduli::*;
use cover13_oracles::orbit::brute_force_equivalent;
use cover13_oracles::printed;
use cover13_oracles::{ModP, OField};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const F31: FieldSpec = FieldSpec::PrimeField(31);
const Q: FieldSpec = FieldSpec::Rationals;

fn to_modp(s: &Scalar) -> ModP {
    match s {
        Scalar::Fp { v, p } => ModP::new(*v as i64, *p),
        _ => panic!("prime field expected"),
    }
}

fn random3(f: FieldSpec, rng: &mut ChaCha8Rng) -> [Scalar; 3] {
    std::array::from_fn(|_| random_scalar(f, rng))
}

fn random_g(f: FieldSpec, rng: &mut ChaCha8Rng) -> Mat2 {
    loop {
        let g: Mat2 = std::array::from_fn(|_| std::array::from_fn(|_| random_scalar(f, rng)));
        if !mat2_det(&g).is_zero() {
            return g;
        }
    }
}

#[test]
fn distinctness_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..30 {
        let a: [Scalar; 4] = std::array::from_fn(|_| random_scalar(F31, &mut rng));
        assert_eq!(to_modp(&distinctness(&a)), printed::distinctness(&a.clone().map(|v| to_modp(&v))));
    }
}

#[test]
fn points_satisfy_the_printed_system() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut found = 0;
    for _ in 0..60 {
        let a: [Scalar; 4] = std::array::from_fn(|_| random_scalar(F31, &mut rng));
        match three_points(&a) {
            Ok(pts) => {
                found += 1;
                let ao = a.clone().map(|v| to_modp(&v));
                for p in &pts {
                    let r = printed::three_point_residuals(&ao, &to_modp(&p[0]), &to_modp(&p[1]));
                    assert!(r.iter().all(|x| x.is_zero()));
                }
                assert!((&(&pts[0][0] + &pts[1][0]) + &pts[2][0]).is_zero());
                assert!((&(&pts[0][1] + &pts[1][1]) + &pts[2][1]).is_zero());
                assert!(pts[0] != pts[1] && pts[1] != pts[2] && pts[0] != pts[2]);
            }
            Err(cover13::Error::IrrationalPoints(_)) => {}
            Err(e) => assert!(distinctness(&a).is_zero(), "{e}"),
        }
    }
    assert!(found > 5);
}

#[test]
fn bl_line_has_three_distinct_points() {
    // α = (0, λ, λ, 0) over F31: distinctness −3λ⁴
    for l in 1..31 {
        let a = [0, l, l, 0].map(|v| F31.from_i64(v));
        assert_eq!(distinctness(&a), &F31.from_i64(-3) * &F31.from_i64(l).pow(4));
        match three_points(&a) {
            Ok(_) | Err(cover13::Error::IrrationalPoints(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn normalization_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut done = 0;
    for _ in 0..20 {
        let a = random3(Q, &mut rng);
        let base = SurfaceParams::new(Q, [a[0].clone(), a[1].clone(), a[1].clone(), a[2].clone()], [0, 1, 1, 0].map(|v| Q.from_i64(v)));
        assert!(check_moduli_equation(&base).is_zero());
        let g = random_g(Q, &mut rng);
        let moved = transform_params(&base, &g).unwrap();
        assert!(check_moduli_equation(&moved).is_zero());
        let n = normalize_beta(&moved).unwrap();
        assert!(check_moduli_equation(&n.params).is_zero());
        assert_eq!(n.params.alpha[1], n.params.alpha[2]);
        // the normalized α lies on the S₃-orbit of the starting one
        let back = alpha3_of(&n.params).unwrap();
        assert!(orbit_equivalent(&a, &back).unwrap().equivalent);
        assert!(substitution_matches(&moved, &n.g, &n.params).unwrap());
        done += 1;
    }
    assert_eq!(done, 20);
}

#[test]
fn normalized_input_gives_identity() {
    let p = SurfaceParams::from_i64(Q, [2, 3, 3, 5], [0, 1, 1, 0]);
    let n = normalize_beta(&p).unwrap();
    assert_eq!(n.g, mat2_identity(Q));
    assert_eq!(n.params, p);
    let degenerate = SurfaceParams::from_i64(Q, [0; 4], [0; 4]);
    assert!(normalize_beta(&degenerate).is_err());
}

#[test]
fn substitution_matches_over_a_prime_field() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..5 {
        let p = random_admissible(F31, &mut rng);
        let g = random_g(F31, &mut rng);
        let q = transform_params(&p, &g).unwrap();
        assert!(substitution_matches(&p, &g, &q).unwrap());
        // a different matrix does not match
        let h = random_g(F31, &mut rng);
        if transform_params(&p, &h).unwrap() != q {
            assert!(!substitution_matches(&p, &h, &q).unwrap());
        }
    }
}

#[test]
fn delta_matches_oracle_and_orbits_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let a = random3(F31, &mut rng);
        let ao = a.clone().map(|v| to_modp(&v));
        let d = delta_coords(&a);
        assert_eq!(d.clone().map(|v| to_modp(&v)), printed::delta(&ao));
        let b = if rng.gen_bool(0.5) { s3_act(ELEMENTS[rng.gen_range(0..6)], &a).unwrap() } else { random3(F31, &mut rng) };
        let bo = b.clone().map(|v| to_modp(&v));
        assert_eq!(orbit_equivalent(&a, &b).unwrap().equivalent, brute_force_equivalent(&ao, &bo));
    }
}

use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn invariants_are_constant_on_orbits(a0 in -50i64..50, a1 in -50i64..50, a3 in -50i64..50, p in prop::sample::select(vec![0u64, 31, 109])) {
        let f = if p == 0 { Q } else { FieldSpec::PrimeField(p) };
        let a = [a0, a1, a3].map(|v| f.from_i64(v));
        let inv = moduli_invariants(&a);
        for (_, img) in orbit(&a).unwrap() {
            prop_assert_eq!(moduli_invariants(&img), inv.clone());
            prop_assert!(orbit_equivalent(&a, &img).unwrap().equivalent);
        }
    }

    #[test]
    fn bl_family_satisfies_the_moduli_equation(l in -100i64..100) {
        let p = cover13::abelian13::bl_params(Q, &Q.from_i64(l));
        prop_assert!(check_moduli_equation(&p).is_zero());
    }
}
