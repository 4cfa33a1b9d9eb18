use cover13::coverhom::beta_ring;
use cover13::exactring::{FieldSpec, Mat};
use cover13::heisenberg::*;
use cover13_oracles::printed::{iota_system_as_printed, iota_system_repaired, sigma_system, tau_system_as_printed};

const QW: FieldSpec = FieldSpec::RationalsWithOmega;
const F31: FieldSpec = FieldSpec::PrimeField(31);
const F7: FieldSpec = FieldSpec::PrimeField(7);

fn all_actions() -> Vec<GroupAction> {
    let mut v = Vec::new();
    for a in 0..3 {
        v.push(GroupAction::sigma(a));
        v.push(GroupAction::tau(a));
    }
    v.push(GroupAction::iota(0));
    v.push(GroupAction::iota(1));
    v
}

#[test]
fn sigma_matches_display() {
    for f in [QW, F31] {
        for a in 0..3 {
            let derived = derive_constraints(f, &GroupAction::sigma(a as i64)).unwrap();
            let shown = system_from_display(f, &sigma_system(a)).unwrap();
            assert!(derived.equivalent(&shown), "sigma a={a} over {f:?}: {:?}", derived.describe());
        }
    }
}

#[test]
fn iota_matches_repaired_display() {
    for f in [QW, F31] {
        for b in 0..2 {
            let derived = derive_constraints(f, &GroupAction::iota(b as i64)).unwrap();
            assert!(derived.equivalent(&system_from_display(f, &iota_system_repaired(b)).unwrap()));
            // the literal display differs in the β20 line
            assert!(!derived.equivalent(&system_from_display(f, &iota_system_as_printed(b)).unwrap()));
        }
    }
}

#[test]
fn tau_matches_display_with_swapped_labels() {
    for f in [QW, F31] {
        for c in 0..3u32 {
            let derived = derive_constraints(f, &GroupAction::tau(c as i64)).unwrap();
            let shown = system_from_display(f, &tau_system_as_printed((3 - c) % 3)).unwrap();
            assert!(derived.equivalent(&shown), "tau c={c}: {:?}", derived.describe());
        }
    }
}

#[test]
fn equivariant_families() {
    let fam = solve_equivariant(QW, &[GroupAction::sigma(0), GroupAction::iota(0), GroupAction::tau(0)]).unwrap();
    assert_eq!(fam.dimension, 2);
    // β0 = β1 = β2 and β012 span the family
    let mut names: Vec<Vec<String>> = fam.basis.iter().map(|v| v.iter().map(|(n, _)| n.clone()).collect()).collect();
    names.sort();
    assert_eq!(names, vec![vec!["b0".to_string(), "b1".into(), "b2".into()], vec!["b012".to_string()]]);
    for a in 0..3 {
        for b in 0..2 {
            for c in 0..3 {
                if a == 0 && b == 0 && c == 0 {
                    continue;
                }
                let acts = [GroupAction::sigma(a), GroupAction::iota(b), GroupAction::tau(c)];
                assert_eq!(solve_equivariant(QW, &acts).unwrap().dimension, 0, "{a}{b}{c}");
            }
        }
    }
}

#[test]
fn heisenberg_but_not_extended_family() {
    // the τ-twist that keeps β01, β12, β20 is the displayed label 1, i.e. c = 2
    let fam = solve_equivariant(QW, &[GroupAction::sigma(0), GroupAction::tau(2)]).unwrap();
    assert_eq!(fam.dimension, 1);
    let mut names: Vec<String> = fam.basis[0].iter().map(|(n, _)| n.clone()).collect();
    names.sort();
    assert_eq!(names, vec!["b01", "b12", "b20"]);
    assert!(fam.basis[0].iter().all(|(_, c)| c == "1"));
    let other = solve_equivariant(QW, &[GroupAction::sigma(0), GroupAction::tau(1)]).unwrap();
    let mut names: Vec<String> = other.basis[0].iter().map(|(n, _)| n.clone()).collect();
    names.sort();
    assert_eq!(names, vec!["b02", "b10", "b21"]);
}

#[test]
fn monomial_model() {
    for f in [QW, F31] {
        let s = monomial_model_check(f, &GroupAction::sigma(0)).unwrap();
        assert!(s.forward);
        let i = monomial_model_check(f, &GroupAction::iota(0)).unwrap();
        assert!(i.forward);
        let t = monomial_model_check(f, &GroupAction::tau(0)).unwrap();
        assert!(!t.forward && t.inverse);
    }
}

#[test]
fn dimensions_do_not_depend_on_the_field() {
    for act in all_actions() {
        let d: Vec<usize> = [QW, F31, F7].iter().map(|f| derive_constraints(*f, &act).unwrap().rank()).collect();
        assert!(d.windows(2).all(|w| w[0] == w[1]), "{act:?}: {d:?}");
    }
}

#[test]
fn induced_matrices_form_an_antihomomorphism() {
    // pulling back along f∘g is pulling back along f, then along g
    let r = beta_ring(F31, &[]).unwrap();
    let s = GroupAction::sigma(1).chart_map(&r).unwrap();
    let t = GroupAction::tau(2).chart_map(&r).unwrap();
    let a_s = induced_matrix(&r, &s).unwrap();
    let a_t = induced_matrix(&r, &t).unwrap();
    let a_st = induced_matrix(&r, &compose(&s, &t).unwrap()).unwrap();
    assert!(a_st.sub(&a_t.mul(&a_s)).is_zero());
}

#[test]
fn constraints_are_natural_under_rescaling() {
    let r = beta_ring(F31, &[]).unwrap();
    let f = r.field();
    let xi = f.xi().unwrap();
    let d = diagonal_rescaling(&r, [f.one(), xi.clone(), xi.pow(2)]).unwrap();
    let d_inv = diagonal_rescaling(&r, [f.one(), xi.pow(-1), xi.pow(-2)]).unwrap();
    let a_d = induced_matrix(&r, &d).unwrap();
    for act in all_actions() {
        let g = act.chart_map(&r).unwrap();
        // g′ = D⁻¹∘g∘D
        let conj = compose(&d_inv, &compose(&g, &d).unwrap()).unwrap();
        let a_g = induced_matrix(&r, &g).unwrap();
        let a_conj = induced_matrix(&r, &conj).unwrap();
        let expect = a_d.inverse().unwrap().mul(&a_g).mul(&a_d);
        assert!(a_conj.sub(&expect).is_zero(), "{act:?}");
        // so A(D)⁻¹ carries the fixed space of g onto that of g′
        let fixed = derive_constraints(F31, &act).unwrap().solutions();
        let moved = Mat::from_rows(F31, fixed.iter().map(|v| a_d.inverse().unwrap().mul_vec(v)).collect::<Vec<_>>());
        let conj_sys = ConstraintSystem::from_rows(
            F31,
            (0..10).map(|i| a_conj.sub(&Mat::identity(F31, 10)).row(i).to_vec()).collect(),
        );
        if fixed.is_empty() {
            assert_eq!(conj_sys.rank(), 10);
            continue;
        }
        assert_eq!(conj_sys.rank(), 10 - fixed.len());
        assert!(conj_sys.rows.mul(&moved.transpose()).is_zero());
    }
}

#[test]
fn two_twist_classification() {
    let rows = classify_all(QW).unwrap();
    for row in &rows {
        match (row.m, row.n) {
            (0, 0) => assert_eq!(row.dimension, 16),
            (m, n) if m == n => assert_eq!(row.dimension, 12),
            (0, _) => assert_eq!(row.label, CASE_ONLY_C1),
            (_, 0) => assert_eq!(row.label, CASE_ONLY_C2),
            _ => {
                assert_eq!(row.label, CASE_PROPORTIONAL);
                assert_eq!(row.proportional, Some(true));
            }
        }
    }
}
