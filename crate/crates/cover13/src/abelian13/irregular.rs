//! The irregular variant: weights (1, 2, 3) on (x, y, z), C0 = C2 = 0, and
//! the single relation c13·c30 − 3c12·c31 + 3c11·c32 − c10·c33 = 0.

use super::{assemble, GradedIdeal, IdealKind};
use crate::error::{Error, Result};
use crate::exactring::{Degree, FieldSpec, MultiPoly, Ring, RingRef, Scalar, VarSpec};
use crate::koszul::{random_scalar, ternary_monomials};

pub fn irregular_ring(field: FieldSpec) -> Result<RingRef> {
    let v: Vec<VarSpec> = vec![
        ("x0", 1, true),
        ("x1", 1, true),
        ("x2", 1, true),
        ("y0", 2, false),
        ("y1", 2, false),
        ("y2", 2, false),
        ("z0", 3, false),
        ("z1", 3, false),
        ("z2", 3, false),
    ];
    Ring::new(field, &v)
}

/// Fiber basis on the chart x2 ≠ 0.
pub const IRREGULAR_BASIS: [usize; 4] = [3, 4, 6, 7];

#[derive(Clone, Debug, PartialEq)]
pub struct IrregularTable {
    /// c_{1j}, forms of degree 2
    pub c1: [MultiPoly; 4],
    /// c_{3j}, forms of degree 4
    pub c3: [MultiPoly; 4],
}

pub fn irregular_relation(c1: &[MultiPoly; 4], c3: &[MultiPoly; 4]) -> MultiPoly {
    let three = MultiPoly::from_i64(c1[0].ring(), 3);
    let a = &(&c1[3] * &c3[0]) - &(&three * &(&c1[2] * &c3[1]));
    let b = &(&three * &(&c1[1] * &c3[2])) - &(&c1[0] * &c3[3]);
    &a + &b
}

fn random_form<R: rand::Rng>(ring: &RingRef, d: i64, rng: &mut R) -> MultiPoly {
    let mut p = MultiPoly::zero(ring);
    for t in ternary_monomials(d) {
        let mut e = vec![0; ring.nvars()];
        e[..3].copy_from_slice(&t);
        p.add_term(e, random_scalar(ring.field(), rng));
    }
    p
}

impl IrregularTable {
    pub fn zero(ring: &RingRef) -> Self {
        IrregularTable { c1: std::array::from_fn(|_| MultiPoly::zero(ring)), c3: std::array::from_fn(|_| MultiPoly::zero(ring)) }
    }

    /// Random forms with c10 = k·x2² (k ≠ 0) and c33 solved from the relation.
    pub fn random<R: rand::Rng>(ring: &RingRef, rng: &mut R) -> Self {
        let f = ring.field();
        let mut c1: [MultiPoly; 4] = std::array::from_fn(|_| random_form(ring, 2, rng));
        let mut k = random_scalar(f, rng);
        while k.is_zero() {
            k = random_scalar(f, rng);
        }
        let mut e = vec![0; ring.nvars()];
        e[2] = 2;
        c1[0] = MultiPoly::monomial(ring, e, k);
        let mut c3: [MultiPoly; 4] = std::array::from_fn(|_| random_form(ring, 4, rng));
        c3[3] = MultiPoly::zero(ring);
        // the relation is affine in c33 with coefficient −c10
        let rest = irregular_relation(&c1, &c3);
        c3[3] = rest.exact_divide(&c1[0]).expect("c10 is a monomial");
        IrregularTable { c1, c3 }
    }

    pub fn relation(&self) -> MultiPoly {
        irregular_relation(&self.c1, &self.c3)
    }

    pub fn ring(&self) -> &RingRef {
        self.c1[0].ring()
    }
}

fn require_degree(p: &MultiPoly, d: i64, name: &str) -> Result<()> {
    match p.weighted_degree() {
        Degree::Zero => Ok(()),
        Degree::Homogeneous(e) if e == d => Ok(()),
        _ => Err(Error::Precondition(format!("{name} must be a form of degree {d}"))),
    }
}

/// The nine generators q − wC + D with C0 = C2 = 0, on the chart x2 ≠ 0.
pub fn build_irregular_ideal(t: &IrregularTable) -> Result<GradedIdeal> {
    let ring = t.ring().clone();
    if ring.weights()[..9] != [1, 1, 1, 2, 2, 2, 3, 3, 3] {
        return Err(Error::Precondition("the irregular ring has weights (1, 2, 3)".into()));
    }
    for j in 0..4 {
        require_degree(&t.c1[j], 2, &format!("c1{j}"))?;
        require_degree(&t.c3[j], 4, &format!("c3{j}"))?;
    }
    let rel = t.relation();
    if !rel.is_zero() {
        return Err(Error::Degenerate(format!("relation c13c30 − 3c12c31 + 3c11c32 − c10c33 = {rel}")));
    }
    let zero: [MultiPoly; 4] = std::array::from_fn(|_| MultiPoly::zero(&ring));
    let c = [zero.clone(), t.c1.clone(), zero, t.c3.clone()];
    let generators = assemble(&ring, IRREGULAR_BASIS, &c);
    Ok(GradedIdeal { ring, kind: IdealKind::Irregular, chart: 2, basis: IRREGULAR_BASIS, generators, c, params: None })
}

/// z_i ↦ z_i + l·y_i on the generators, for a linear form l in the x's.
pub fn shift_z(ideal: &GradedIdeal, l: &MultiPoly) -> Result<Vec<MultiPoly>> {
    let r = &ideal.ring;
    let map: Vec<(usize, MultiPoly)> = (0..2)
        .map(|i| {
            let (y, z) = (ideal.basis[i], ideal.basis[2 + i]);
            (z, &MultiPoly::var_idx(r, z) + &(l * &MultiPoly::var_idx(r, y)))
        })
        .collect();
    ideal.generators.iter().map(|g| g.substitute(&map)).collect()
}

/// A random point with x2 ≠ 0.
pub fn random_point<R: rand::Rng>(field: FieldSpec, rng: &mut R) -> [Scalar; 3] {
    loop {
        let p: [Scalar; 3] = std::array::from_fn(|_| random_scalar(field, rng));
        if !p[2].is_zero() {
            return p;
        }
    }
}
