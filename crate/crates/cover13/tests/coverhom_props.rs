use cover13::coverhom::*;
use cover13::exactring::{FieldSpec, MultiPoly, PolyMatrix, RingRef, Scalar};
use cover13::koszul::{m3, random_scalar, random_symmetric, xbar};
use cover13_oracles::printed::{equations_c_u1, equations_c_u2, BetaTerm};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn from_terms(r: &RingRef, b: &BetaVector, terms: &[BetaTerm]) -> MultiPoly {
    let f = r.field();
    let mut acc = MultiPoly::zero(r);
    for t in terms {
        let mut e = vec![0; r.nvars()];
        e[..3].copy_from_slice(&t.x);
        let mono = MultiPoly::monomial(r, e, f.from_ratio(t.num, t.den).unwrap());
        acc = &acc + &(&mono * b.get(t.beta));
    }
    acc
}

fn printed(r: &RingRef, b: &BetaVector, table: [Vec<BetaTerm>; 4]) -> [MultiPoly; 4] {
    std::array::from_fn(|i| from_terms(r, b, &table[i]))
}

fn random_betas(r: &RingRef, rng: &mut ChaCha8Rng) -> BetaVector {
    let v: Vec<Scalar> = (0..10).map(|_| random_scalar(r.field(), rng)).collect();
    BetaVector::from_scalars(r, &v).unwrap()
}

#[test]
fn u2_and_u1_match_displayed_formulas() {
    let r = beta_ring(FieldSpec::Rationals, &[]).unwrap();
    let b = BetaVector::symbolic(&r).unwrap();
    let spec = CoverHomSpec::from_betas(b.clone());
    assert_eq!(local_equations(&spec, 2).unwrap().c, printed(&r, &b, equations_c_u2()));
    assert_eq!(local_equations(&spec, 1).unwrap().c, printed(&r, &b, equations_c_u1()));
    // the same U1 coefficients read directly off the global form
    let global = CoverHomSpec::from_certificates(lift_betas(&b)).unwrap();
    assert_eq!(local_equations(&global, 1).unwrap().c, printed(&r, &b, equations_c_u1()));
}

#[test]
fn arbitrary_certificates_agree_with_table() {
    let r = beta_ring(FieldSpec::PrimeField(31), &[]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let n: [PolyMatrix; 3] = std::array::from_fn(|_| random_symmetric(&r, 0, &mut rng));
        let spec = CoverHomSpec::from_certificates(n.clone()).unwrap();
        let b = betas_from_certificates(&n).unwrap();
        let tf = trace_free_normalize(&spec.global().unwrap()).unwrap();
        assert!(tf.closed_form_matches);
        assert_eq!(local_from_global(&tf.c, 2).unwrap(), equations_from_betas(&b).unwrap());
        let both = CoverHomSpec { betas: Some(b), ..spec };
        both.validate().unwrap();
    }
}

#[test]
fn random_specs_are_chart_consistent() {
    let r = beta_ring(FieldSpec::PrimeField(31), &[]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let spec = CoverHomSpec::from_betas(random_betas(&r, &mut rng));
        let rep = chart_consistency_check(&spec).unwrap();
        assert!(rep.pass, "{:?}", rep.witness);
    }
    let zero = CoverHomSpec::from_betas(BetaVector::zero(&r));
    assert!(chart_consistency_check(&zero).unwrap().pass);
}

#[test]
fn corrupted_u1_is_detected() {
    let r = beta_ring(FieldSpec::PrimeField(31), &[]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let spec = CoverHomSpec::from_betas(random_betas(&r, &mut rng));
    let u2 = local_equations(&spec, 2).unwrap();
    let mut u1 = local_equations(&spec, 1).unwrap();
    u1.c[2] = &u1.c[2] + &MultiPoly::var(&r, "x0").unwrap().pow(2);
    let rep = check_equation_sets(&[u2, u1]).unwrap();
    assert!(!rep.pass);
    assert!(rep.witness.unwrap().contains("c2"));
}

#[test]
fn perturbed_triples_normalize_to_the_same_morphism() {
    let r = beta_ring(FieldSpec::PrimeField(31), &[]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let m = m3(&r);
    for _ in 0..5 {
        let n: [PolyMatrix; 3] = std::array::from_fn(|_| random_symmetric(&r, 0, &mut rng));
        let c: [PolyMatrix; 3] = std::array::from_fn(|i| m.mul(&n[i]).mul(&m));
        let pert = random_symmetric(&r, 1, &mut rng);
        let cp: [PolyMatrix; 3] =
            std::array::from_fn(|i| c[i].add(&pert.scale_poly(&MultiPoly::var_idx(&r, i))));
        let out = annihilation_normalize(&cp).unwrap();
        for k in &out.c {
            assert!(k.mul(&xbar(&r)).is_zero());
        }
        let a = local_from_global(&normalize(&c).unwrap(), 2).unwrap();
        let b = local_from_global(&normalize(&cp).unwrap(), 2).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn trace_shift_round_trip() {
    let r = beta_ring(FieldSpec::PrimeField(31), &[]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let spec = CoverHomSpec::from_betas(random_betas(&r, &mut rng));
    let base = trace_free_normalize(&spec.global().unwrap()).unwrap().c;
    // s = M₃·w has Σ x_i s_i = 0
    let w = random_symmetric(&r, 1, &mut rng);
    let col = m3(&r).mul(&PolyMatrix::column(&r, (0..3).map(|i| w.get(i, 0).clone()).collect()));
    let s: [MultiPoly; 3] = std::array::from_fn(|i| col.get(i, 0).clone());
    let shifted = shift_annihilating(&base, &s).unwrap();
    assert_ne!(shifted, base);
    let back = trace_free_normalize(&shifted).unwrap();
    assert_eq!(back.c, base);
    // zero morphism
    let z: [PolyMatrix; 3] = std::array::from_fn(|_| PolyMatrix::zeros(&r, 3, 3));
    let tz = trace_free_normalize(&z).unwrap();
    assert!(tz.v.iter().all(|p| p.is_zero()));
}

#[test]
fn already_annihilating_input_is_untouched() {
    let r = beta_ring(FieldSpec::PrimeField(31), &[]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let spec = CoverHomSpec::from_betas(random_betas(&r, &mut rng));
    let g = spec.global().unwrap();
    let out = annihilation_normalize(&g).unwrap();
    assert_eq!(out.c, g);
    assert!(out.shift.iter().all(|p| p.is_zero()));
}

#[test]
fn invalid_triple_is_rejected() {
    let r = beta_ring(FieldSpec::PrimeField(31), &[]).unwrap();
    let mut c: [PolyMatrix; 3] = std::array::from_fn(|_| PolyMatrix::zeros(&r, 3, 3));
    c[0].set(0, 0, MultiPoly::one(&r));
    assert!(annihilation_normalize(&c).is_err());
    assert!(trace_free_normalize(&c).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parametrization_is_injective(a in prop::array::uniform10(0i64..31), b in prop::array::uniform10(0i64..31)) {
        let r = beta_ring(FieldSpec::PrimeField(31), &[]).unwrap();
        let ea = equations_from_betas(&betas_from_i64(&r, &a).unwrap()).unwrap();
        let eb = equations_from_betas(&betas_from_i64(&r, &b).unwrap()).unwrap();
        prop_assert_eq!(a == b, ea == eb);
    }

    #[test]
    fn normalization_is_idempotent(seed in 0u64..1000) {
        let r = beta_ring(FieldSpec::PrimeField(31), &[]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n: [PolyMatrix; 3] = std::array::from_fn(|_| random_symmetric(&r, 0, &mut rng));
        let m = m3(&r);
        let pert = random_symmetric(&r, 1, &mut rng);
        let c: [PolyMatrix; 3] = std::array::from_fn(|i| m.mul(&n[i]).mul(&m).add(&pert.scale_poly(&MultiPoly::var_idx(&r, i))));
        let once = normalize(&c).unwrap();
        prop_assert_eq!(normalize(&once).unwrap(), once);
    }

    #[test]
    fn local_algebra_is_associative(seed in 0u64..1000) {
        let r = beta_ring(FieldSpec::PrimeField(31), &[]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = CoverHomSpec::from_betas(random_betas(&r, &mut rng));
        for k in 0..3 {
            let alg = local_equations(&spec, k).unwrap().algebra();
            prop_assert!(alg.is_commutative());
            prop_assert!(alg.is_associative());
        }
    }
}
