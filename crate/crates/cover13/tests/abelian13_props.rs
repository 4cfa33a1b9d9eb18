use cover13::abelian13::branch::{cube_check, line_point, restrict_to_line, DEFAULT_BOUND};
use cover13::abelian13::fiber::{specialize_to_fiber, FMono, FPoly};
use cover13::abelian13::irregular::{irregular_ring, random_point, IrregularTable};
use cover13::abelian13::*;
use cover13::ambient::Presentation;
use cover13::exactring::interp::eval;
use cover13::exactring::{FieldSpec, MultiPoly, Ring, Scalar};
use cover13::koszul::random_scalar;
use cover13_oracles::printed;
use cover13_oracles::{Buchberger, ModP, OPoly};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const F31: FieldSpec = FieldSpec::PrimeField(31);
const F109: FieldSpec = FieldSpec::PrimeField(109);

fn to_modp(s: &Scalar) -> ModP {
    match s {
        Scalar::Fp { v, p } => ModP::new(*v as i64, *p),
        _ => panic!("prime field expected"),
    }
}

fn to_opoly(p: &FPoly) -> OPoly<ModP> {
    OPoly::from_terms(4, p.iter().map(|(m, c)| (m.to_vec(), to_modp(c))).collect())
}

fn nonzero_point(f: FieldSpec, rng: &mut ChaCha8Rng) -> [Scalar; 3] {
    loop {
        let p: [Scalar; 3] = std::array::from_fn(|_| random_scalar(f, rng));
        if p.iter().all(|v| !v.is_zero()) {
            return p;
        }
    }
}

#[test]
fn c_table_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let r = surface_ring(F31).unwrap();
    for _ in 0..10 {
        let p = random_params(F31, &mut rng);
        let c = c_table(&r, &p, 2).unwrap();
        let x = nonzero_point(F31, &mut rng);
        let mut pt = vec![F31.zero(); r.nvars()];
        pt[..3].clone_from_slice(&x);
        let xo = x.clone().map(|v| to_modp(&v));
        for i in 0..4 {
            let o = printed::c_block(&to_modp(&p.alpha[i]), &to_modp(&p.beta[i]), &xo);
            for j in 0..4 {
                assert_eq!(to_modp(&c[i][j].evaluate(&pt).unwrap()), o[j], "c{i}{j}");
            }
        }
    }
}

#[test]
fn d_vector_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let r = surface_ring(F31).unwrap();
    for _ in 0..10 {
        let vals: [[Scalar; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| random_scalar(F31, &mut rng)));
        let c = vals.clone().map(|row| row.map(|v| MultiPoly::constant(&r, v)));
        let d = d_vector(&c);
        let o = printed::d_vector(&vals.map(|row| row.map(|v| to_modp(&v))));
        for k in 0..9 {
            assert_eq!(to_modp(&d[k].constant_term()), o[k]);
        }
    }
}

#[test]
fn block_transport_agrees_with_closed_form_on_u2() {
    // the cover hom of block i reproduces the closed c-formulas
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let r = surface_ring(F31).unwrap();
    let p = random_params(F31, &mut rng);
    let closed = c_table(&r, &p, 2).unwrap();
    for i in 0..4 {
        let spec = cover13::coverhom::CoverHomSpec::from_betas(block_betas(&r, &p.alpha[i], &p.beta[i]).unwrap());
        let eq = cover13::coverhom::local_equations(&spec, 2).unwrap();
        assert_eq!(eq.c, closed[i]);
    }
}

#[test]
fn other_charts_define_the_same_ideal() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..3 {
        let p = random_admissible(F31, &mut rng);
        let u2 = build_ideal(&p, 2).unwrap();
        let pres = Presentation::euler_on(&u2.ring, 2).unwrap();
        let charts = pres.charts().unwrap();
        for k in 0..2 {
            let uk = build_ideal(&p, k).unwrap();
            assert!(uk.has_q_leading_parts());
            assert_eq!(uk.generator_degrees().unwrap(), vec![4; 9]);
            let map = pres.transition(&charts[k], &charts[2]);
            for g in &u2.generators {
                let moved = g.substitute(&map).unwrap();
                assert!(reduce_by_generators(&uk, &moved).unwrap().is_zero(), "chart {k}");
            }
        }
    }
}

#[test]
fn moduli_residual_matches_oracle_up_to_normalization() {
    // ours·3 equals the oracle's printed form with the outer coefficients 3 and 1/3 swapped
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..20 {
        let p = random_params(F31, &mut rng);
        let a = p.alpha.clone().map(|v| to_modp(&v));
        let b = p.beta.clone().map(|v| to_modp(&v));
        let nine = ModP::new(9, 31);
        use cover13_oracles::OField;
        // printed(α0/9, α1, α2, α3/9) = α0β3/3 − α1β2 + α2β1 − α3β0/3
        let scaled = [a[0].mul(&nine.inv()), a[1], a[2], a[3].mul(&nine.inv())];
        assert_eq!(to_modp(&check_moduli_equation(&p)), printed::moduli_as_printed(&scaled, &b));
    }
}

#[test]
fn fibers_agree_with_buchberger() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..3 {
        let p = random_admissible(F31, &mut rng);
        let id = build_ideal(&p, 2).unwrap();
        for _ in 0..3 {
            let x = nonzero_point(F31, &mut rng);
            let fa = fiber_algebra(&id, &x).unwrap();
            let gens: Vec<OPoly<ModP>> =
                id.generators.iter().map(|g| to_opoly(&specialize_to_fiber(&id, g, &x).unwrap())).collect();
            let gb = Buchberger::new(&gens);
            assert_eq!(gb.quotient_dim(50), Some(6));
            for _ in 0..50 {
                let m: FMono = std::array::from_fn(|_| rng.gen_range(0..3));
                let nf = fa.normal_form(&m);
                let mut diff = fa.to_poly(&nf);
                for c in diff.values_mut() {
                    *c = -&*c;
                }
                let e = diff.entry(m).or_insert_with(|| F31.zero());
                *e = &*e + &F31.one();
                assert!(gb.normal_form(&to_opoly(&diff)).is_zero(), "monomial {m:?}");
            }
        }
    }
}

#[test]
fn printed_moduli_equation_is_not_flat() {
    // a draw satisfying the printed coefficients but not ours
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut failures = 0;
    for _ in 0..6 {
        let mut p = random_params(F31, &mut rng);
        // solve 3α0β3 − α1β2 + α2β1 − 3α3β0 = 0 for α3
        p.beta[0] = F31.one();
        let three = F31.from_i64(3);
        let rest = &(&(&three * &(&p.alpha[0] * &p.beta[3])) - &(&p.alpha[1] * &p.beta[2])) + &(&p.alpha[2] * &p.beta[1]);
        p.alpha[3] = rest.div(&three).unwrap();
        if check_moduli_equation(&p).is_zero() {
            continue;
        }
        let id = build_ideal_unchecked(&p, 2).unwrap();
        let x = nonzero_point(F31, &mut rng);
        if fiber_algebra(&id, &x).is_err() {
            failures += 1;
        }
    }
    assert!(failures > 0);
}

#[test]
fn equivariance_and_negative_control() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for _ in 0..5 {
        let id = build_ideal(&random_admissible(F31, &mut rng), 2).unwrap();
        assert!(check_equivariance(&id).unwrap().iter().all(|r| r.pass));
    }
    let cone = build_ideal(&SurfaceParams::zero(F31), 2).unwrap();
    assert!(check_equivariance(&cone).unwrap().iter().all(|r| r.pass));
    let mut witnessed = false;
    for _ in 0..20 {
        let p = random_params(F31, &mut rng);
        if check_moduli_equation(&p).is_zero() {
            continue;
        }
        let rep = check_equivariance(&build_ideal_unchecked(&p, 2).unwrap()).unwrap();
        if rep.iter().any(|r| !r.pass && r.witness.is_some()) {
            witnessed = true;
            break;
        }
    }
    assert!(witnessed, "violating the moduli equation never broke equivariance");
}

#[test]
fn bl_sextic_matches_oracle_and_is_invariant() {
    let r = Ring::standard(F109, &["lambda"]).unwrap();
    let lam = MultiPoly::var(&r, "lambda").unwrap();
    let c = cover13::abelian13::bl_branch_sextic(&lam);
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..10 {
        let x = nonzero_point(F109, &mut rng);
        let l = random_scalar(F109, &mut rng);
        let mut pt = x.to_vec();
        pt.extend(std::iter::repeat(F109.zero()).take(r.nvars() - 4));
        pt.push(l.clone());
        let ours = c.evaluate(&pt).unwrap();
        assert_eq!(to_modp(&ours), printed::bl_sextic(&to_modp(&l), &x.clone().map(|v| to_modp(&v))));
    }
    let xi = F109.xi().unwrap();
    let v = |i: usize| MultiPoly::var_idx(&r, i);
    let sigma = vec![(0, v(1)), (1, v(2)), (2, v(0))];
    let iota = vec![(1, v(2)), (2, v(1))];
    let tau = vec![(1, v(1).scale(&xi)), (2, v(2).scale(&(&xi * &xi)))];
    for map in [sigma, iota, tau] {
        assert_eq!(c.substitute(&map).unwrap(), c);
    }
}

#[test]
fn branch_locus_is_three_times_the_sextic() {
    let lambda = F109.from_i64(2);
    let params = bl_params(F109, &lambda);
    assert_eq!(params.alpha[1], F109.from_i64(-3));
    let p = [3, 5, 7].map(|v| F109.from_i64(v));
    let q = [11, 2, 13].map(|v| F109.from_i64(v));
    let b = branch_on_line(&params, &p, &q, DEFAULT_BOUND).unwrap();
    let r = surface_ring(F109).unwrap();
    let c = cover13::abelian13::branch::bl_sextic_at(&r, &lambda);
    let check = cube_check(&b, &c, &p, &q).unwrap();
    assert!(check.cube_divides);
    assert!(check.x2_power.is_some(), "{check:?}");
    // zero sets agree away from x2 = 0
    let cl = restrict_to_line(&c, &p, &q).unwrap();
    let id = build_ideal(&params, 2).unwrap();
    for v in 0..109 {
        let s = F109.from_i64(v);
        let x = line_point(&p, &q, &s);
        if x[2].is_zero() {
            continue;
        }
        let on_c = eval(&cl, &s).is_zero();
        assert_eq!(eval(&b, &s).is_zero(), on_c, "s = {v}");
        if on_c {
            assert!(trace_discriminant(&fiber_algebra(&id, &x).unwrap()).is_zero());
        }
    }
}

#[test]
fn irregular_relation_matches_oracle_and_fibers_have_length_six() {
    let r = irregular_ring(F31).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..3 {
        let t = IrregularTable::random(&r, &mut rng);
        let id = build_irregular_ideal(&t).unwrap();
        let x = random_point(F31, &mut rng);
        let mut pt = vec![F31.zero(); r.nvars()];
        pt[..3].clone_from_slice(&x);
        let ev = |p: &MultiPoly| to_modp(&p.evaluate(&pt).unwrap());
        let o = printed::irregular_relation(&t.c1.clone().map(|p| ev(&p)), &t.c3.clone().map(|p| ev(&p)));
        assert_eq!(o, ModP::new(0, 31));
        let fa = fiber_algebra(&id, &x).unwrap();
        assert!(fa.is_associative() && fa.is_commutative());
        let gens: Vec<OPoly<ModP>> = id.generators.iter().map(|g| to_opoly(&specialize_to_fiber(&id, g, &x).unwrap())).collect();
        assert_eq!(Buchberger::new(&gens).quotient_dim(50), Some(6));
        // the z ↦ z + l·y change of basis keeps the fiber length
        let l = &MultiPoly::var_idx(&r, 0).scale(&F31.from_i64(2)) + &MultiPoly::var_idx(&r, 1);
        let shifted = cover13::abelian13::irregular::shift_z(&id, &l).unwrap();
        let sid = GradedIdeal { generators: shifted, ..id.clone() };
        let gens: Vec<OPoly<ModP>> = sid.generators.iter().map(|g| to_opoly(&specialize_to_fiber(&sid, g, &x).unwrap())).collect();
        assert_eq!(Buchberger::new(&gens).quotient_dim(50), Some(6));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn admissible_ideals_are_homogeneous_with_q_leading_parts(seed in any::<u64>(), chart in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_admissible(F31, &mut rng);
        prop_assert!(check_moduli_equation(&p).is_zero());
        let id = build_ideal(&p, chart).unwrap();
        prop_assert_eq!(id.generator_degrees().unwrap(), vec![4; 9]);
        prop_assert!(id.has_q_leading_parts());
    }

    #[test]
    fn admissible_fibers_have_length_six(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let id = build_ideal(&random_admissible(F31, &mut rng), 2).unwrap();
        let x = nonzero_point(F31, &mut rng);
        let fa = fiber_algebra(&id, &x).unwrap();
        prop_assert!(fa.is_associative() && fa.is_commutative());
        prop_assert_eq!(fa.traces()[0].clone(), F31.from_i64(6));
    }
}
